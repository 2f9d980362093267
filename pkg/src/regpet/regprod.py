"""The regularized Petersson inner product.

Route B evaluates the constant-term formula directly: with F_1 the part of the
fundamental domain below height 1,

    <f, g> = int_{F_1} f gbar v^{k-2} du dv
             + sum_{n>0} c_f(n) conj(c_g(n)) E_{2-k}(4 pi n)
             + c_f(0) conj(c_g(0)) / (1-k)
             + sum_{n>0} c_f(-n) conj(c_g(-n)) Re E_{2-k}(-4 pi n),

with the constant term dropped when k = 1.  Route C is the coefficient
pairing against the holomorphic part of a preimage under the xi-operator.

Because all series here have rational (hence real) coefficients, the
u-integral over F_1 is carried out exactly: f gbar collapses to groups
sum C_{s,m} e^{-2 pi s v} e^{2 pi i m u} with exact rational C_{s,m}, and the
u-average over {|u| <= 1/2, |u| >= sqrt(1-v^2)} has the closed form
-sin(2 pi m u_0)/(pi m).  What remains is a 1-dimensional v-integral whose
integrand becomes entire after v = cos(psi), so Gauss-Legendre panels converge
geometrically.  Self-products are manifestly real and hermitian symmetry is
exact by construction, not by cancellation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .qseries import QSeries, GridError, OrderError
from .specfun import exp_integral
from .weil import VectorForm

SQRT3_2 = math.sqrt(3.0) / 2.0


@dataclass
class ProductReport:
    """Inner-product value with per-route diagnostics."""
    value: complex
    err: float
    routes: dict[str, tuple[complex, float]] = field(default_factory=dict)
    parameters: dict = field(default_factory=dict)


def _coeff_groups(pairs) -> dict[tuple[Fraction, int], Fraction]:
    """Collapse sum_a f_a gbar_a to groups keyed by (s, m) = (x+y, x-y) where
    x, y are rational exponents; m must be an integer (1-periodicity in u)."""
    groups: dict[tuple[Fraction, int], Fraction] = {}
    for fx, gx, coeff in pairs:
        m = fx - gx
        if m.denominator != 1:
            raise GridError("pair of exponents differing by a non-integer")
        key = (fx + gx, int(m))
        groups[key] = groups.get(key, Fraction(0)) + coeff
    return groups


def _scalar_pairs(f: QSeries, g: QSeries):
    for nf, cf in f.coeffs.items():
        for ng, cg in g.coeffs.items():
            yield (Fraction(nf, f.denom), Fraction(ng, g.denom), cf * cg)


def _vector_pairs(F: VectorForm, G: VectorForm):
    N = F.module.level
    for a in F.module.elements:
        fa = F.component(a)
        ga = G.component(a)
        for nf, cf in fa.coeffs.items():
            for ng, cg in ga.coeffs.items():
                yield (Fraction(nf, N), Fraction(ng, N), cf * cg)


def _f1_integral(groups, k: float, tol: float = 1e-12, max_panels: int = 64):
    """int_{F_1} (sum C_{s,m} e^{-2 pi s v} e^{2 pi i m u}) v^{k-2} du dv via
    the exact u-average and v = cos(psi) Gauss-Legendre panels."""
    terms = []
    for (s, m), c in groups.items():
        cs = float(c)
        sf = float(s)
        # prune contributions below the noise floor at the lowest height
        if abs(cs) * math.exp(-2 * math.pi * sf * SQRT3_2) < 1e-24:
            continue
        terms.append((sf, m, cs))
    if not terms:
        return 0.0, 0.0
    s_arr = np.array([t[0] for t in terms])
    m_arr = np.array([t[1] for t in terms])
    c_arr = np.array([t[2] for t in terms])
    nonzero = m_arr != 0
    m_nz = m_arr[nonzero]
    peak = [0.0]  # largest |term| encountered: the rounding-noise scale

    def integrand(psi: np.ndarray) -> np.ndarray:
        v = np.cos(psi)
        u0 = np.sin(psi)
        ew = np.exp(-2 * math.pi * np.outer(s_arr, v))
        uavg = np.empty((len(terms), len(psi)))
        uavg[~nonzero, :] = 1.0 - 2.0 * u0
        if m_nz.size:
            uavg[nonzero, :] = -np.sin(2 * math.pi * np.outer(m_nz, u0)) \
                / (math.pi * m_nz)[:, None]
        pieces = c_arr[:, None] * ew * uavg
        peak[0] = max(peak[0], float(np.max(np.abs(pieces))))
        vals = pieces.sum(axis=0)
        return vals * v ** (k - 2) * u0  # jacobian dv = -sin(psi) dpsi

    x, w = np.polynomial.legendre.leggauss(32)
    psi_max = math.pi / 6

    def run(npanels: int) -> float:
        edges = np.linspace(0.0, psi_max, npanels + 1)
        total = 0.0
        for lo, hi in zip(edges[:-1], edges[1:]):
            mid, half = 0.5 * (hi + lo), 0.5 * (hi - lo)
            total += half * float(np.dot(w, integrand(mid + half * x)))
        return total

    prev = run(4)
    cur = prev
    npanels = 8
    while npanels <= max_panels:
        cur = run(npanels)
        noise = 3e-16 * peak[0] * psi_max
        if abs(cur - prev) <= tol * max(1.0, abs(cur)) + noise:
            return cur, abs(cur - prev) + noise
        prev = cur
        npanels *= 2
    return prev, abs(cur - prev) + 3e-16 * peak[0] * psi_max


def _regularized_sum(groups, k: Fraction, tol: float = 1e-16):
    """The three coefficient pieces of the constant-term formula.

    Returns (positive tail, constant term, principal-part term, err).
    """
    err = 0.0
    pos = 0.0
    # the diagonal m = 0 collects the products c_f(n) c_g(n) at s = 2n
    diag = sorted((s, c) for (s, m), c in groups.items() if m == 0)
    for s, c in diag:
        if s <= 0:
            continue
        n = s / 2  # exponent of the matched pair
        ev = exp_integral(2 - k, 4 * math.pi * float(n))
        term = float(c) * complex(ev.value).real
        pos += term
        err += abs(float(c)) * ev.abs_err
        if abs(term) < tol * (abs(pos) + 1e-300) and float(n) > 2:
            break
    const = 0.0
    c0 = dict(diag).get(Fraction(0))
    if c0:
        if k == 1:
            const = 0.0  # CT_{s=0} of 1/s vanishes: no constant contribution
        else:
            const = float(c0) / float(1 - k)
    neg = 0.0
    for s, c in diag:
        if s >= 0:
            continue
        n = -s / 2
        ev = exp_integral(2 - k, -4 * math.pi * float(n))
        neg += float(c) * complex(ev.value).real
        err += abs(float(c)) * ev.abs_err
    return pos, const, neg, err


def _assemble(groups, k: Fraction, quad_tol: float, params: dict) -> ProductReport:
    quad, qerr = _f1_integral(groups, float(k), quad_tol)
    pos, const, neg, serr = _regularized_sum(groups, k)
    value = quad + pos + const + neg
    report = ProductReport(complex(value), qerr + serr)
    report.routes["quadrature"] = (complex(value), qerr + serr)
    report.parameters = dict(params)
    report.parameters.update(
        {"F1_integral": quad, "positive_tail": pos,
         "constant_term": const, "principal_term": neg})
    return report


def product_route_B_scalar(f: QSeries, g: QSeries, k=None,
                           quad_tol: float = 1e-12) -> ProductReport:
    """Regularized <f, g> for scalar level-one forms of equal weight k."""
    if f.denom != 1 or g.denom != 1:
        raise GridError("scalar route B expects level-one series on grid 1")
    if k is None:
        k = f.weight
    k = Fraction(k)
    if g.weight is not None and f.weight is not None and f.weight != g.weight:
        raise ValueError("forms must share one weight")
    groups = _coeff_groups(_scalar_pairs(f, g))
    return _assemble(groups, k, quad_tol,
                     {"k": str(k), "orders": (f.order, g.order)})


def product_route_B_vector(F: VectorForm, G: VectorForm, k=None,
                           quad_tol: float = 1e-12) -> ProductReport:
    """Regularized <F, G> for vector forms on the same module; the dot product
    pairs equal components.  The scalar plus-space product is 3/2 times this."""
    if F.module is not G.module and F.module != G.module:
        raise GridError("vector forms must live on the same module")
    if F.dual != G.dual:
        raise ValueError("forms must transform under the same representation")
    if k is None:
        k = F.weight
    k = Fraction(k)
    groups = _coeff_groups(_vector_pairs(F, G))
    return _assemble(groups, k, quad_tol,
                     {"k": str(k), "level": F.module.level})


def product_route_C(f, G_plus: dict) -> complex:
    """{f, G} = sum_n c_f(n) c_G^+(-n): the pairing against the holomorphic
    part of a xi-preimage of g (Fourier-coefficient route).

    ``G_plus`` maps rational exponents to coefficients.  Coverage of the
    principal supports on both sides is checked.
    """
    if isinstance(f, VectorForm):
        N = f.module.level
        fcoeffs = {}
        for a in f.module.elements:
            for n, c in f.component(a).coeffs.items():
                fcoeffs[Fraction(n, N)] = fcoeffs.get(Fraction(n, N), 0) + c
        order = Fraction(f.order(), N)
    else:
        fcoeffs = {Fraction(n, f.denom): c for n, c in f.coeffs.items()}
        order = Fraction(f.order, f.denom)
    gp = {Fraction(n): complex(v) for n, v in G_plus.items()}
    # negative keys of G^+ are its principal part; f must be known there
    for n, v in gp.items():
        if v != 0 and n < 0 and -n >= order:
            raise OrderError(f"f not known at exponent {-n} needed for coverage")
    total = 0j
    for n, c in fcoeffs.items():
        total += complex(c) * gp.get(-n, 0j)  # absent key = zero coefficient
    return total


def branch_value(f: QSeries, g: QSeries, k=None, phi: float = 3 * math.pi / 4,
                 quad_tol: float = 1e-12) -> complex:
    """<f, g>_phi of the definition: the constant term of the continued
    integral on the branch phi, minus i times the imaginary parts of the
    principal-part exponential integrals.  Independent of phi (that is the
    content of the phi-independence theorem)."""
    if not (math.pi / 2 < phi < 3 * math.pi / 2) or phi == math.pi:
        raise ValueError("phi must lie in (pi/2, 3pi/2) minus pi")
    if k is None:
        k = f.weight
    k = Fraction(k)
    groups = _coeff_groups(_scalar_pairs(f, g))
    quad, qerr = _f1_integral(groups, float(k), quad_tol)
    pos, const, _, serr = _regularized_sum(groups, k)
    total = complex(quad + pos + const)
    for (s, m), c in groups.items():
        if m != 0 or s >= 0:
            continue
        n = -s / 2  # matched principal exponents: c_f(-n) c_g(-n)
        ev = exp_integral(2 - k, -4 * math.pi * float(n), phi=phi)
        # CT contribution E_{2-k,phi}(-4 pi n), then minus i Im(...)
        total += float(c) * (ev.value - 1j * complex(ev.value).imag)
    return total
