"""Exact computation of Hochschild homology for algebra extensions B in A,
the relative theory, and the Jacobi-Zariski long nearly exact sequence."""

__version__ = "0.1.0"

from .exactlin import QQ, GF, Matrix, QuotientSpace, make_quotient, rank, kernel_basis
from .algebra import (FiniteDimAlgebra, Bimodule, SubalgebraEmbedding,
                      make_algebra, from_quiver, make_subalgebra,
                      enveloping, regular_bimodule, restrict_bimodule,
                      transported_S, whole_algebra_embedding)
from .complexes import ChainComplex, ChainMap, truncate, induced_map, subquotient_complex
from .relbar import (hochschild_complex, relative_chain_complex,
                     relative_resolution, section_independence)
from .fundamental import (build_fundamental, gap_complex, filtration,
                          spb_dims, L_n0, quotient_homology_vs_tor)
from .torlab import (TorRequest, tor, check_hypothesis, nilpotency_index, pd_upper)
from .jzreport import jz, e1_page, flat_case, bounded_case, degree_one_check

__all__ = [
    "QQ", "GF", "Matrix", "QuotientSpace", "make_quotient", "rank", "kernel_basis",
    "FiniteDimAlgebra", "Bimodule", "SubalgebraEmbedding",
    "make_algebra", "from_quiver", "make_subalgebra",
    "enveloping", "regular_bimodule", "restrict_bimodule",
    "transported_S", "whole_algebra_embedding",
    "ChainComplex", "ChainMap", "truncate", "induced_map", "subquotient_complex",
    "hochschild_complex", "relative_chain_complex",
    "relative_resolution", "section_independence",
    "build_fundamental", "gap_complex", "filtration",
    "spb_dims", "L_n0", "quotient_homology_vs_tor",
    "TorRequest", "tor", "check_hypothesis", "nilpotency_index", "pd_upper",
    "jz", "e1_page", "flat_case", "bounded_case", "degree_one_check",
    "__version__",
]
