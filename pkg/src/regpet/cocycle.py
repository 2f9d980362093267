"""The nonholomorphic Eichler integral G_f, the error of modularity F_S, the
period relations, and the Eichler cocycle attached to a weakly holomorphic
form of even weight k <= 0 with trivial multiplier.

All objects are numeric evaluators at points of the upper half-plane; the
cocycle identities hold exactly in the theory and are checked here to
quadrature accuracy.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .qseries import QSeries
from .specfun import SpecValue, w_k

# generators of SL_2(Z)
S_MAT = (0, -1, 1, 0)
T_MAT = (1, 1, 0, 1)
I_MAT = (1, 0, 0, 1)


@dataclass(frozen=True)
class GroupElement:
    """2x2 integer matrix of determinant 1 with a generator word attached."""
    mat: tuple[int, int, int, int]
    word: str = ""

    def __post_init__(self):
        a, b, c, d = self.mat
        if a * d - b * c != 1:
            raise ValueError("matrix must have determinant 1")

    def apply(self, tau: complex) -> complex:
        a, b, c, d = self.mat
        return (a * tau + b) / (c * tau + d)

    def jac(self, tau: complex) -> complex:
        return self.mat[2] * tau + self.mat[3]

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        a, b, c, d = self.mat
        p, q, r, s = other.mat
        return GroupElement((a * p + b * r, a * q + b * s,
                             c * p + d * r, c * q + d * s),
                            self.word + other.word)

    def inv(self) -> "GroupElement":
        a, b, c, d = self.mat
        return GroupElement((d, -b, -c, a), f"({self.word})^-1")


S = GroupElement(S_MAT, "S")
T = GroupElement(T_MAT, "T")
I = GroupElement(I_MAT, "")
U = T * S  # order 3 up to center


def slash(h, weight, elements) -> "callable":
    """(h |_w M)(tau) = (c tau + d)^{-w} h(M tau), extended linearly to formal
    sums given as [(coefficient, GroupElement), ...]."""
    if isinstance(elements, GroupElement):
        elements = [(1, elements)]
    w = int(weight)

    def out(tau: complex) -> complex:
        total = 0j
        for coef, M in elements:
            total += coef * M.jac(tau) ** (-w) * h(M.apply(tau))
        return total

    return out


@dataclass
class CocycleEvaluator:
    """Cached data for the cocycle evaluators of one form.

    The form must be level one with even weight k <= 0 and rational
    coefficients (so f^c = f); T is the quadrature truncation height.
    """
    f: QSeries
    T: float = 10.0
    nodes: int = 48
    k: int = field(init=False)
    c0: float = field(init=False)

    def __post_init__(self):
        if self.f.denom != 1:
            raise ValueError("level-one series required")
        k = self.f.weight
        if k is None or Fraction(k).denominator != 1 or int(k) % 2 or k > 0:
            raise ValueError("weight must be an even integer <= 0")
        self.k = int(k)
        self.c0 = float(self.f.constant_term())
        tail = {n: c for n, c in self.f.coeffs.items() if n > 0}
        self._decaying = QSeries(tail, self.f.order, self.f.weight)
        self._principal = sorted((-n, float(c)) for n, c in
                                 self.f.coeffs.items() if n < 0)
        self._gl = np.polynomial.legendre.leggauss(self.nodes)

    # -- quadrature helpers ---------------------------------------------------

    def _line_integral(self, g, z0: complex, z1: complex, panels: int) -> complex:
        """integral of g along the straight segment z0 -> z1."""
        x, w = self._gl
        d = z1 - z0
        total = 0j
        edges = np.linspace(0.0, 1.0, panels + 1)
        for lo, hi in zip(edges[:-1], edges[1:]):
            mid, half = 0.5 * (hi + lo), 0.5 * (hi - lo)
            for xi, wi in zip(x, w):
                z = z0 + (mid + half * xi) * d
                total += half * wi * g(z)
        return total * d

    def _ray_integral(self, g, z0: complex, panels: int) -> complex:
        """integral of the decaying g along the vertical ray z0 -> z0 + iT."""
        return self._line_integral(g, z0, z0 + 1j * self.T, panels)


def g_f_eval(ev: CocycleEvaluator, tau: complex, panels: int = 10) -> SpecValue:
    """G_f(tau): the nonholomorphic part of a xi-preimage of f,

    G_f = -(2i)^{1-k} int_{-taubar}^{i inf} f_o^c(z) (z+tau)^{k-2} dz
          - (-4 pi)^{1-k} sum_{n>0} conj(c_f(-n)) n^{1-k} W_{2-k}(2 pi n v) q^n

    with f_o = f minus its principal part.  The constant term of f_o^c is
    integrated in closed form; the decaying remainder by panel quadrature.
    """
    k = ev.k
    tau = complex(tau)
    v = tau.imag
    z0 = -tau.conjugate()

    def g(z):
        return ev._decaying.eval(z) * (z + tau) ** (k - 2)

    coarse = ev._ray_integral(g, z0, panels)
    refined = ev._ray_integral(g, z0, panels * 2)
    # analytic pieces: constant term over the whole ray, decaying tail bound
    const_piece = ev.c0 * (2j * v) ** (k - 1) / (1 - k)
    tail = abs(float(ev.f.coeffs.get(1, 1))) * math.exp(-2 * math.pi * (v + ev.T)) \
        * (2 * v + ev.T) ** (k - 2) * 2
    pref = -1.0 / (2j) ** (k - 1)
    wsum = 0j
    werr = 0.0
    q = cmath.exp(2j * math.pi * tau)
    for n, c in ev._principal:
        wv = w_k(2 - k, 2 * math.pi * n * v)  # positive real argument
        coef = -c / n ** (k - 1) / (-4 * math.pi) ** (k - 1)
        wsum += coef * wv.value * q ** n
        werr += abs(coef) * wv.abs_err
    value = pref * (refined + const_piece) + wsum
    err = abs(pref) * (abs(refined - coarse) + tail) + werr
    return SpecValue(value, err + 1e-14 * abs(value))


def xi_residual(ev: CocycleEvaluator, tau: complex, step: float = 8e-6) -> float:
    """| 2 i v^{2-k} conj(d G_f / d taubar) - f(tau) |: G_f must be a
    xi-preimage of f (finite-difference probe)."""
    k = ev.k

    def G(t):
        return complex(g_f_eval(ev, t).value)

    du = (G(tau + step) - G(tau - step)) / (2 * step)
    dv = (G(tau + 1j * step) - G(tau - 1j * step)) / (2 * step)
    dbar = 0.5 * (du + 1j * dv)
    xi = 2j * tau.imag ** (2 - k) * dbar.conjugate()
    return abs(xi - ev.f.eval(tau))


def f_s_eval(ev: CocycleEvaluator, tau: complex, panels: int = 10) -> SpecValue:
    """The error of modularity F_S = F^+ |_{2-k} (S - I) by its closed formula
    (trivial multiplier, nu(S) = 1).  Defined off the imaginary axis, where
    the W-arguments stay clear of the real line.

    The W-values here are boundary values continued off the positive real
    axis, where the Gamma-form of W has its cut: the continuation entering
    the upper half-plane picks up the monodromy constant 2 pi i / Gamma(2-k)
    (for even k), the lower one stays principal.  Which piece crosses which
    way is decided by the sign of Re tau.
    """
    k = ev.k
    tau = complex(tau)
    if tau.real == 0:
        raise ValueError("F_S is evaluated off the imaginary axis")
    tk2 = tau ** (k - 2)
    wjump = 2j * math.pi / math.gamma(2 - k)

    def gg(z):
        fo = ev._decaying.eval(z) + ev.c0
        return fo * ((z + tau) ** (k - 2) - (z - 1 / tau) ** (k - 2) * tk2)

    integral = ev._line_integral(gg, 1j, 1j * (1 + ev.T), panels)
    refined = ev._line_integral(gg, 1j, 1j * (1 + ev.T), panels * 2)
    H = 1 + ev.T
    tail_const = ev.c0 * (-(1j * H + tau) ** (k - 1)
                          + tk2 * (1j * H - 1 / tau) ** (k - 1)) / (k - 1)
    tail_bound = abs(float(ev.f.coeffs.get(1, 1))) * math.exp(-2 * math.pi * H) * 4
    pref = -1.0 / (2j) ** (k - 1)
    wsum = 0j
    werr = 0.0
    for n, c in ev._principal:
        za = -math.pi * 1j * n * (tau + 1j)        # Im = -pi n Re(tau)
        zb = -math.pi * 1j * n * (1j - 1 / tau)    # Im = +pi n Re(tau)/|tau|^2
        wa = w_k(2 - k, za).value + (wjump if za.imag > 0 else 0.0)
        wb = w_k(2 - k, zb).value + (wjump if zb.imag > 0 else 0.0)
        coef = -c / n ** (k - 1) / (-4 * math.pi) ** (k - 1)
        wsum += coef * (cmath.exp(2j * math.pi * n * tau) * wa
                        - tk2 * cmath.exp(-2j * math.pi * n / tau) * wb)
        werr += abs(coef) * (abs(wa) + abs(wb) * abs(tk2)) * 1e-14
    value = pref * (refined + tail_const) + wsum
    err = abs(pref) * (abs(refined - integral) + tail_bound) + werr
    return SpecValue(value, err + 1e-14 * abs(value))


def f_s_from_g(ev: CocycleEvaluator, tau: complex) -> complex:
    """The definitionally independent route: F_S = -(G_f |_{2-k} (S - I))."""
    k = ev.k
    g_tau = complex(g_f_eval(ev, tau).value)
    g_s = tau ** (k - 2) * complex(g_f_eval(ev, S.apply(tau)).value)
    return -(g_s - g_tau)


def holomorphy_residual(ev: CocycleEvaluator, tau: complex,
                        step: float = 2e-5) -> float:
    """|d F_S / d taubar| by central differences; F_S is holomorphic."""
    def F(t):
        return complex(f_s_eval(ev, t).value)

    du = (F(tau + step) - F(tau - step)) / (2 * step)
    dv = (F(tau + 1j * step) - F(tau - 1j * step)) / (2 * step)
    return abs(0.5 * (du + 1j * dv))


def period_residuals(ev: CocycleEvaluator, taus) -> dict[str, float]:
    """Residuals of the period relations F_S | (S + I) = 0 and
    F_S | (U^2 + U + I) = 0, and of the cocycle property
    phi(ST) = phi(S) | T with phi reconstructed from the independent
    G_f route.  Maxima over the sample points."""
    w = 2 - ev.k

    def FS(t):
        return complex(f_s_eval(ev, t).value)

    s_plus = slash(FS, w, [(1, S), (1, I)])
    u_poly = slash(FS, w, [(1, U * U), (1, U), (1, I)])
    out = {"S+I": 0.0, "U^2+U+I": 0.0, "cocycle": 0.0}
    ST = S * T
    for tau in taus:
        tau = complex(tau)
        out["S+I"] = max(out["S+I"], abs(s_plus(tau)))
        out["U^2+U+I"] = max(out["U^2+U+I"], abs(u_poly(tau)))
        # phi(ST) from the G_f route vs (F_S | T) (phi(T) = 0)
        k = ev.k
        phi_st = -(ST.jac(tau) ** (k - 2) * complex(g_f_eval(ev, ST.apply(tau)).value)
                   - complex(g_f_eval(ev, tau).value))
        fs_t = slash(FS, w, T)(tau)
        out["cocycle"] = max(out["cocycle"], abs(phi_st - fs_t))
    return out


def eichler_relation_check(ev: CocycleEvaluator, tau: complex,
                           panels: int = 12) -> float:
    """Residual of the closed identity connecting G_f, the segment integral
    from i to -taubar, and the E_1 expansion, for Re tau > 0:

      -(2i)^{k-1} G_f(tau) + int_i^{-taubar} f^c (tau+z)^{k-2} dz
        - e^{3 pi i (k-1)/2} pi i / Gamma(2-k) *
          sum_n conj(c_f(-n)) (-2 pi n)^{1-k} q^n
      = int_i^{i inf} f_o^c (z+tau)^{k-2} dz
        + sum_n conj(c_f(-n)) i^{k-1} q^n (1-i tau)^{k-1}
          [ e^{2 pi n (1-i tau)} / Gamma(2-k) *
              sum_{l=0}^{m-1} (2 pi n (1-i tau))^l Gamma(1-k-l)
            + (2 pi n (1-i tau))^m / Gamma(2-k) * E_1(2 pi n (i tau - 1)) ]

    with 2-k = m + 1.  (The l-sum starts at l = 0; starting it at 1 breaks
    the identity already for k = 0, where the l = 0 term carries the whole
    e^{2 pi n (1 - i tau)} contribution.)
    """
    from .specfun import exp_integral

    k = ev.k
    tau = complex(tau)
    if tau.real <= 0:
        raise ValueError("the identity is stated for Re tau > 0")
    m = 1 - k  # 2 - k = m + 1
    q = cmath.exp(2j * math.pi * tau)

    gf = complex(g_f_eval(ev, tau, panels).value)

    def fc(z):
        return ev.f.eval(z)

    seg = ev._line_integral(lambda z: fc(z) * (tau + z) ** (k - 2),
                            1j, -tau.conjugate(), panels)
    lsum = 0j
    for n, c in ev._principal:
        lsum += c * (-2 * math.pi * n) ** (1 - k) * q ** n
    lhs = -(2j) ** (k - 1) * gf + seg \
        - cmath.exp(1.5j * math.pi * (k - 1)) * 1j * math.pi / math.gamma(2 - k) * lsum

    def gg(z):
        return (ev._decaying.eval(z) + ev.c0) * (z + tau) ** (k - 2)

    ray = ev._line_integral(gg, 1j, 1j * (1 + ev.T), panels)
    H = 1 + ev.T
    ray += -ev.c0 * (1j * H + tau) ** (k - 1) / (k - 1)
    rsum = 0j
    g2k = math.gamma(2 - k)
    for n, c in ev._principal:
        wfac = 2 * math.pi * n * (1 - 1j * tau)
        inner = 0j
        for ell in range(m):
            inner += wfac ** ell * math.gamma(1 - k - ell)
        inner *= cmath.exp(wfac) / g2k
        e1 = exp_integral(1, -wfac)  # E_1(2 pi n (i tau - 1))
        inner += wfac ** m / g2k * e1.value
        rsum += c * (1j) ** (k - 1) * q ** n * (1 - 1j * tau) ** (k - 1) * inner
    rhs = ray + rsum
    return abs(lhs - rhs)


def eichler_cocycle(f: QSeries, M: GroupElement, tau: complex,
                    tau0: complex = 2j, k=None, panels: int = 12) -> complex:
    """The explicit Eichler cocycle value

        E_k(f)(M)(tau) = (-1)^{1-k} int_{-conj(M^{-1} tau0)}^{-conj(tau0)}
                         f^c(z) (z + tau)^{k-2} dz

    along the straight segment (base point tau0 in H)."""
    if k is None:
        k = f.weight
    k = int(Fraction(k))
    z0 = -complex(M.inv().apply(tau0)).conjugate()
    z1 = -complex(tau0).conjugate()
    x, w = np.polynomial.legendre.leggauss(48)
    d = z1 - z0
    total = 0j
    edges = np.linspace(0.0, 1.0, panels + 1)
    for lo, hi in zip(edges[:-1], edges[1:]):
        mid, half = 0.5 * (hi + lo), 0.5 * (hi - lo)
        for xi, wi in zip(x, w):
            z = z0 + (mid + half * xi) * d
            total += half * wi * f.eval(z) * (z + tau) ** (k - 2)
    return (-1) ** (1 - k) * total * d
