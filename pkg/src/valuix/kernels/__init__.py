"""Hot-loop kernels with a compiled core and a pure-Python fallback.

Two operations dominate runtime: lattice scans over integer boxes (monomial
ideal extraction from facet inequalities) and Gaussian elimination mod p
(the generic-forms colength oracle).  If the Cython extension built, it is
used; otherwise the fallback in ``_fallback`` is selected.  Both expose the
same functions and must return identical results.
"""

try:
    from valuix.kernels._speedups import rank_modp, scan_min_generators

    BACKEND = "compiled"
except ImportError:  # extension not built
    from valuix.kernels._fallback import rank_modp, scan_min_generators

    BACKEND = "fallback"

from valuix.kernels import _fallback as fallback

__all__ = ["rank_modp", "scan_min_generators", "BACKEND", "fallback"]
