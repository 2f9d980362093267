"""regpet: regularized Petersson inner products of weakly holomorphic modular
forms, computed by independent routes and cross-validated.

Modules
-------
qseries      exact rational q-expansion arithmetic, classical bases, pairing
specfun      branch-aware exponential integrals, W_k, Bessel kernel, digamma
weil         finite quadratic modules and the Weil representation
kloosterman  Kloosterman sums and the Bessel-kernel series (route A)
cmtraces     CM traces, cycle integrals, the g_1 / G_1 coefficient tables
regprod      the regularized inner product (route B) and coefficient pairing
lseries      L-functions, the horocycle identity, Taylor-coefficient L-values
cocycle      Eichler integrals, the error of modularity, cocycle identities
acceptance   the cross-validation criteria in runnable form
"""

from .qseries import QSeries, classical_form, faber_basis, pairing, wh_basis

__version__ = "0.1.0"

__all__ = ["QSeries", "classical_form", "faber_basis", "pairing",
           "wh_basis", "__version__"]
