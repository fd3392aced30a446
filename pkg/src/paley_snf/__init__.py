"""Smith and critical groups of Paley graphs.

Two independent routes are provided: direct Smith normal form of the
adjacency and Laplacian matrices, and closed-form predictions driven by
Jacobi-sum valuations and a transfer-matrix carry count.
"""

from .errors import InvalidInputError, NotInvertibleError, PaleyError, PrecisionError
from .graph import build_paley, laplacian, spanning_tree_count, srg_check
from .groups import AbelianGroup, compare, predict, predict_critical_group, predict_smith_group
from .linalg import cokernel, det_bareiss, local_divisors, smith_normal_form

__version__ = "0.1.0"

__all__ = [
    "AbelianGroup",
    "InvalidInputError",
    "NotInvertibleError",
    "PaleyError",
    "PrecisionError",
    "build_paley",
    "cokernel",
    "compare",
    "det_bareiss",
    "laplacian",
    "local_divisors",
    "predict",
    "predict_critical_group",
    "predict_smith_group",
    "smith_normal_form",
    "spanning_tree_count",
    "srg_check",
]
