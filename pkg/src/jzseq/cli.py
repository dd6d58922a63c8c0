"""Command line interface and the JSON input/output formats.

Input documents describe a field, an algebra (structure constants or a
quiver), a subalgebra, a coefficient bimodule and degree/Tor bounds;
scalars are serialized as strings "num/den" so no precision is ever
ambiguous.  Identical inputs produce byte-identical machine reports.

Exit codes: 0 success, 1 invariant failure, 2 input error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from . import __version__
from .exactlin import QQ, GF, Matrix
from .algebra import (make_algebra, from_quiver, make_subalgebra,
                      regular_bimodule, Bimodule,
                      NotAssociative, NotUnital, NotClosed, UnitNotContained,
                      InfiniteDimensional)
from .relbar import hochschild_complex, relative_chain_complex
from .jzreport import jz, e1_page
from .torlab import check_hypothesis, nilpotency_index

SCHEMA_VERSION = 1

DEFAULT_BOUNDS = {"nmax": 4, "starmax": 4, "pmax": 3, "qmax": 3, "cap": 8}
DEFAULT_DEGREE = 6


class InputError(Exception):
    """Schema or consistency error in an input document; names the field."""

    def __init__(self, path, message):
        self.path = path
        super().__init__("%s: %s" % (path, message))


def parse_field(spec, path="field"):
    if spec == "Q":
        return QQ
    if isinstance(spec, str) and spec.startswith("Fp:"):
        try:
            p = int(spec[3:])
        except ValueError:
            raise InputError(path, "expected Fp:<prime>, got %r" % spec) from None
        try:
            return GF(p)
        except ValueError as exc:
            raise InputError(path, str(exc)) from None
    raise InputError(path, "expected \"Q\" or \"Fp:<prime>\", got %r" % (spec,))


def field_spec(field):
    return "Q" if field is QQ else "Fp:%d" % field.characteristic


def _scalar(field, value, path):
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise InputError(path, "expected an integer or a rational string, got %r" % (value,))
    try:
        return field.from_int(value) if isinstance(value, int) else field.from_str(value)
    except Exception:
        raise InputError(path, "cannot parse scalar %r" % (value,)) from None


def _vector(field, value, length, path):
    if not isinstance(value, list) or len(value) != length:
        raise InputError(path, "expected a list of length %d" % length)
    return [_scalar(field, v, "%s[%d]" % (path, i)) for i, v in enumerate(value)]


def _matrix(field, value, rows, cols, path):
    if not isinstance(value, list) or len(value) != rows:
        raise InputError(path, "expected %d rows" % rows)
    entries = {}
    for i, row in enumerate(value):
        vec = _vector(field, row, cols, "%s[%d]" % (path, i))
        for j, v in enumerate(vec):
            if v:
                entries[(i, j)] = v
    return Matrix.from_entries(field, rows, cols, entries)


class ResolvedInput:
    """A parsed, validated input document ready for computation."""

    __slots__ = ("name", "field", "algebra", "emb", "bimodule", "degree",
                 "bounds", "document")

    def __init__(self, name, field, algebra, emb, bimodule, degree, bounds, document):
        self.name = name
        self.field = field
        self.algebra = algebra
        self.emb = emb
        self.bimodule = bimodule
        self.degree = degree
        self.bounds = bounds
        self.document = document

    def __repr__(self):
        return "ResolvedInput(%r, dim A=%d, dim B=%d, N=%d)" % (
            self.name, self.algebra.dim, self.emb.dim_b, self.degree)


def _parse_algebra(field, doc, path="algebra"):
    if not isinstance(doc, dict):
        raise InputError(path, "expected an object")
    if "quiver" in doc:
        q = doc["quiver"]
        if not isinstance(q, dict):
            raise InputError(path + ".quiver", "expected an object")
        vertices = q.get("vertices")
        if not (isinstance(vertices, int) or isinstance(vertices, list)):
            raise InputError(path + ".quiver.vertices", "expected a count or list of names")
        arrows = q.get("arrows", [])
        if not isinstance(arrows, list):
            raise InputError(path + ".quiver.arrows", "expected a list")
        parsed_arrows = []
        for i, arr in enumerate(arrows):
            if not (isinstance(arr, list) and len(arr) == 3):
                raise InputError("%s.quiver.arrows[%d]" % (path, i),
                                 "expected [name, source, target]")
            parsed_arrows.append(tuple(arr))
        relations = q.get("relations", [])
        if not isinstance(relations, list):
            raise InputError(path + ".quiver.relations", "expected a list")
        cap = q.get("path_cap", 12)
        if not isinstance(cap, int) or cap < 1:
            raise InputError(path + ".quiver.path_cap", "expected a positive count")
        try:
            return from_quiver(vertices, parsed_arrows, relations, cap, field=field)
        except (InfiniteDimensional, ValueError) as exc:
            raise InputError(path + ".quiver", str(exc)) from None
    for key in ("dim", "mult", "unit"):
        if key not in doc:
            raise InputError("%s.%s" % (path, key), "missing")
    dim = doc["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise InputError(path + ".dim", "expected a positive count")
    labels = doc.get("basis_labels", ["e%d" % i for i in range(dim)])
    if not (isinstance(labels, list) and len(labels) == dim):
        raise InputError(path + ".basis_labels", "expected %d labels" % dim)
    mult_doc = doc["mult"]
    if not (isinstance(mult_doc, list) and len(mult_doc) == dim):
        raise InputError(path + ".mult", "expected %d rows of %d vectors" % (dim, dim))
    mult = {}
    for i, row in enumerate(mult_doc):
        if not (isinstance(row, list) and len(row) == dim):
            raise InputError("%s.mult[%d]" % (path, i), "expected %d vectors" % dim)
        for j, vec in enumerate(row):
            mult[(i, j)] = _vector(field, vec, dim, "%s.mult[%d][%d]" % (path, i, j))
    unit = _vector(field, doc["unit"], dim, path + ".unit")
    return make_algebra(dim, labels, mult, unit, field=field)


def _parse_bimodule(field, algebra, doc, path="bimodule"):
    if doc == "regular":
        return regular_bimodule(algebra)
    if not isinstance(doc, dict):
        raise InputError(path, "expected \"regular\" or an object")
    dim = doc.get("dim")
    if not isinstance(dim, int) or dim < 0:
        raise InputError(path + ".dim", "expected a count")
    for key in ("left", "right"):
        if key not in doc or not (isinstance(doc[key], list) and len(doc[key]) == algebra.dim):
            raise InputError("%s.%s" % (path, key),
                             "expected one %dx%d matrix per algebra basis element" % (dim, dim))
    left = [_matrix(field, doc["left"][i], dim, dim, "%s.left[%d]" % (path, i))
            for i in range(algebra.dim)]
    right = [_matrix(field, doc["right"][i], dim, dim, "%s.right[%d]" % (path, i))
             for i in range(algebra.dim)]
    return Bimodule(algebra, dim, left, right)


def parse_input_document(doc, degree_override=None, field_override=None):
    if not isinstance(doc, dict):
        raise InputError("input", "expected a JSON object")
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise InputError("schema_version", "expected %d, got %r" % (SCHEMA_VERSION, version))
    field = parse_field(field_override or doc.get("field", "Q"))
    try:
        algebra = _parse_algebra(field, doc.get("algebra"))
    except (NotAssociative, NotUnital) as exc:
        raise InputError("algebra", str(exc)) from None
    sub = doc.get("subalgebra")
    if not (isinstance(sub, list) and sub):
        raise InputError("subalgebra", "expected a nonempty list of coordinate vectors")
    cols = []
    for i, col in enumerate(sub):
        cols.append(dict(enumerate(_vector(field, col, algebra.dim, "subalgebra[%d]" % i))))
    cols = [{k: v for k, v in c.items() if v} for c in cols]
    try:
        emb = make_subalgebra(algebra, Matrix.from_cols(field, cols, algebra.dim))
    except (NotClosed, UnitNotContained, ValueError) as exc:
        raise InputError("subalgebra", str(exc)) from None
    bimodule = _parse_bimodule(field, algebra, doc.get("bimodule", "regular"))
    degree = degree_override or doc.get("degree", DEFAULT_DEGREE)
    if not isinstance(degree, int) or degree < 3:
        raise InputError("degree", "expected an integer >= 3")
    bounds = dict(DEFAULT_BOUNDS)
    extra = doc.get("bounds", {})
    if not isinstance(extra, dict):
        raise InputError("bounds", "expected an object")
    for k, v in extra.items():
        if k not in DEFAULT_BOUNDS:
            raise InputError("bounds.%s" % k, "unknown bound")
        if not isinstance(v, int) or v < 1:
            raise InputError("bounds.%s" % k, "expected a positive count")
        bounds[k] = v
    name = doc.get("name", "unnamed")
    return ResolvedInput(name, field, algebra, emb, bimodule, degree, bounds,
                         canonical_document(doc, field))


def canonical_document(doc, field=None):
    """Normalised copy of an input document: scalars as strings, defaults filled.

    canonical(canonical(x)) == canonical(x), which is the round-trip
    contract for the structured form.
    """
    field = field or parse_field(doc.get("field", "Q"))

    def scal(v, path):
        return field.to_str(_scalar(field, v, path))

    out = {"schema_version": SCHEMA_VERSION, "field": field_spec(field),
           "name": doc.get("name", "unnamed")}
    alg = doc["algebra"]
    if "quiver" in alg:
        q = alg["quiver"]
        out["algebra"] = {"quiver": {
            "vertices": q["vertices"],
            "arrows": [list(a) for a in q.get("arrows", [])],
            "relations": [list(r) for r in q.get("relations", [])],
            "path_cap": q.get("path_cap", 12)}}
    else:
        dim = alg["dim"]
        out["algebra"] = {
            "dim": dim,
            "basis_labels": list(alg.get("basis_labels", ["e%d" % i for i in range(dim)])),
            "mult": [[[scal(v, "algebra.mult") for v in vec] for vec in row]
                     for row in alg["mult"]],
            "unit": [scal(v, "algebra.unit") for v in alg["unit"]]}
    out["subalgebra"] = [[scal(v, "subalgebra") for v in col] for col in doc["subalgebra"]]
    bim = doc.get("bimodule", "regular")
    if bim == "regular":
        out["bimodule"] = "regular"
    else:
        out["bimodule"] = {
            "dim": bim["dim"],
            "left": [[[scal(v, "bimodule.left") for v in row] for row in mat]
                     for mat in bim["left"]],
            "right": [[[scal(v, "bimodule.right") for v in row] for row in mat]
                      for mat in bim["right"]]}
    out["degree"] = doc.get("degree", DEFAULT_DEGREE)
    bounds = dict(DEFAULT_BOUNDS)
    bounds.update(doc.get("bounds", {}))
    out["bounds"] = bounds
    return out


def machine_json(payload):
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def provenance(resolved):
    blob = json.dumps(resolved.document, sort_keys=True, separators=(",", ":"))
    return {"tool": "jzseq", "version": __version__,
            "field": field_spec(resolved.field),
            "degree": resolved.degree, "bounds": resolved.bounds,
            "input_sha256": hashlib.sha256(blob.encode()).hexdigest()}


# -- commands ----------------------------------------------------------------


def _dims_table(title, dims_by_degree):
    lines = [title, "  degree : " + "  ".join("%4d" % m for m in sorted(dims_by_degree)),
             "  dim    : " + "  ".join("%4d" % dims_by_degree[m] for m in sorted(dims_by_degree))]
    return "\n".join(lines)


def cmd_hh(resolved, fmt):
    N = resolved.degree
    cx = hochschild_complex(resolved.algebra, resolved.bimodule, N)
    dims = {m: cx.homology_dim(m) for m in range(0, N - 1)}
    if fmt == "json":
        return machine_json({"command": "hh", "provenance": provenance(resolved),
                             "homology": {str(m): d for m, d in dims.items()}}), 0
    return _dims_table("Hochschild homology H_m(A, X) for %r" % resolved.name, dims) + "\n", 0


def cmd_rel_hh(resolved, fmt):
    N = resolved.degree
    rc = relative_chain_complex(resolved.emb, resolved.bimodule, N)
    dims = {m: rc.complex.homology_dim(m) for m in range(0, N - 1)}
    if fmt == "json":
        return machine_json({"command": "rel-hh", "provenance": provenance(resolved),
                             "homology": {str(m): d for m, d in dims.items()}}), 0
    return _dims_table("relative Hochschild homology H_m(A|B, X) for %r" % resolved.name,
                       dims) + "\n", 0


def _jz_table(name, rep):
    lines = ["Jacobi-Zariski report for %r (degrees 1..%d)" % (name, rep.N - 1)]
    degs = rep.degrees()
    lines.append("  m          : " + "  ".join("%4d" % m for m in degs))
    lines.append("  H_m(B,X)   : " + "  ".join("%4d" % rep.h_B[m] for m in degs))
    lines.append("  H_m(A,X)   : " + "  ".join("%4d" % rep.h_A[m] for m in degs))
    lines.append("  H_m(A|B,X) : " + "  ".join("%4d" % rep.h_R[m] for m in degs))
    win = sorted(rep.g)
    lines.append("  rank I_m   : " + "  ".join("%4d" % rep.rank_I[m] for m in win))
    lines.append("  rank K_m   : " + "  ".join("%4d" % rep.rank_K[m] for m in win))
    lines.append("  gap g_m    : " + "  ".join("%4d" % rep.g[m] for m in win))
    lines.append("  gap hom h_m: " + "  ".join("%4d" % rep.h_gap[m] for m in win))
    lines.append("  gap identity g_m = h_m      : %s" % rep.gap_identity)
    lines.append("  connecting identity         : %s" % rep.connecting_identity)
    lines.append("  Tor hypothesis              : %r" % rep.hypothesis)
    lines.append("  E1 page                     : %r" % rep.e1)
    lines.append("  %r" % rep.flat)
    lines.append("  %r" % rep.bounded)
    lines.append("  %r" % rep.degree_one)
    return "\n".join(lines) + "\n"


def cmd_jz(resolved, fmt):
    b = resolved.bounds
    rep = jz(resolved.emb, resolved.bimodule, resolved.degree,
             nmax=b["nmax"], starmax=b["starmax"], pmax=b["pmax"],
             qmax=b["qmax"], cap=b["cap"])
    ok = (rep.all_identities_hold()
          and all(rep.degree_one.conclusions.values())
          and rep.flat.ok and rep.bounded.ok
          and (rep.e1_cross is None or all(rep.e1_cross.values())))
    code = 0 if ok else 1
    if fmt == "json":
        return machine_json({"command": "jz", "provenance": provenance(resolved),
                             "report": rep.to_dict()}), code
    return _jz_table(resolved.name, rep), code


def cmd_tor(resolved, fmt):
    b = resolved.bounds
    hyp = check_hypothesis(resolved.emb, b["nmax"], b["starmax"])
    page = e1_page(resolved.emb, resolved.bimodule, b["pmax"], b["qmax"])
    if fmt == "json":
        return machine_json({"command": "tor", "provenance": provenance(resolved),
                             "hypothesis": {"holds": hyp.ok,
                                            "witness": list(hyp.witness) if hyp.witness else None,
                                            "bounds": [hyp.nmax, hyp.starmax],
                                            "note": hyp.note},
                             "e1_page": page.to_dict()}), 0
    lines = ["Tor report for %r" % resolved.name,
             "  hypothesis: %r" % hyp,
             "  E1 page cells Tor^{B^e}_{p+q}(X, (A/B)^{(x)_B p}):"]
    for (p, q), v in sorted(page.cells.items()):
        lines.append("    p=%d q=%d : %d" % (p, q, v))
    return "\n".join(lines) + "\n", 0


def cmd_nilpotency(resolved, fmt):
    rep = nilpotency_index(resolved.emb, resolved.bounds["cap"])
    if fmt == "json":
        return machine_json({"command": "nilpotency", "provenance": provenance(resolved),
                             "dims": rep.dims, "index": rep.index, "cap": rep.cap}), 0
    return "nilpotency for %r: %r\n" % (resolved.name, rep), 0


def cmd_check(resolveds, fmt, corrupt=False):
    from .checks import run_suite
    lines = []
    failures = 0
    total = 0
    payload = []
    for resolved in resolveds:
        results = run_suite(resolved, corrupt=corrupt)
        for r in results:
            total += 1
            if not r.ok:
                failures += 1
            lines.append("[%s] %s :: %s%s" % ("PASS" if r.ok else "FAIL",
                                              resolved.name, r.name,
                                              "" if r.ok else " (%s)" % r.detail))
            payload.append({"fixture": resolved.name, "check": r.name,
                            "ok": r.ok, "detail": r.detail})
    if total == 0:
        lines.append("warning: 0 checks run")
    lines.append("%d checks, %d failures" % (total, failures))
    code = 0 if failures == 0 else 1
    if fmt == "json":
        return machine_json({"command": "check", "results": payload,
                             "total": total, "failures": failures}), code
    return "\n".join(lines) + "\n", code


def _load_document(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError("input", "cannot read %s (%s)" % (path, exc)) from None
    except json.JSONDecodeError as exc:
        raise InputError("input", "invalid JSON in %s: %s" % (path, exc)) from None


def build_parser():
    parser = argparse.ArgumentParser(
        prog="jzseq",
        description="Exact Hochschild homology of algebra extensions and the "
                    "Jacobi-Zariski long nearly exact sequence.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in [("hh", "Hochschild homology dimensions of A"),
                        ("rel-hh", "relative Hochschild homology dimensions of A over B"),
                        ("jz", "full Jacobi-Zariski report"),
                        ("tor", "Tor tables and hypothesis verdict"),
                        ("nilpotency", "tensor nilpotency of A/B over B"),
                        ("check", "run the invariant suites")]:
        p = sub.add_parser(name, help=help_)
        p.add_argument("--input", "-i", metavar="FILE", help="input JSON document")
        p.add_argument("--degree", type=int, default=None, metavar="N",
                       help="override the degree bound")
        p.add_argument("--field", default=None, metavar="Q|Fp:<p>",
                       help="override the ground field")
        p.add_argument("--format", choices=("table", "json"), default="table")
        if name == "check":
            p.add_argument("--corpus", action="store_true",
                           help="run on the shipped fixture corpus")
            p.add_argument("--self-test-corrupt", action="store_true",
                           help=argparse.SUPPRESS)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "check":
            if args.corpus:
                from .fixtures import corpus_documents
                docs = corpus_documents()
            elif args.input:
                docs = [_load_document(args.input)]
            else:
                docs = []
            resolveds = [parse_input_document(d, args.degree, args.field) for d in docs]
            out, code = cmd_check(resolveds, args.format,
                                  corrupt=getattr(args, "self_test_corrupt", False))
        else:
            if not args.input:
                raise InputError("input", "--input FILE is required")
            resolved = parse_input_document(_load_document(args.input),
                                            args.degree, args.field)
            runner = {"hh": cmd_hh, "rel-hh": cmd_rel_hh, "jz": cmd_jz,
                      "tor": cmd_tor, "nilpotency": cmd_nilpotency}[args.command]
            out, code = runner(resolved, args.format)
    except InputError as exc:
        sys.stderr.write("input error: %s\n" % exc)
        return 2
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
