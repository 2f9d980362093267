"""L-functions of weakly holomorphic forms, the horocycle integral identity,
the boundary function G_k, and its Taylor-coefficient L-value formula.

The completed L-function of g(tau) = sum_{m >= m_0} c(m) q^m of integral
weight k is, for fixed t_0 > 0,

  L*_g(s) = sum_{m != 0} c(m) Gamma(s, 2 pi m t_0) / (2 pi m)^s
          + i^k sum_{m != 0} c(m) Gamma(k - s, 2 pi m / t_0) / (2 pi m)^{k-s}
          - c(0) (i^k t_0^{s-k}/(k - s) + t_0^s / s),

independent of t_0.  Negative m give incomplete Gammas on the upper side of
the negative axis.  Differentiating in t_0 and using the modularity of g at
i t_0 shows that t_0-independence forces the power i^k (not i^s) in the
constant bracket; with i^k the bracket vanishes identically for weight 0, so
L*_g(0) is finite even when c(0) != 0, and the Taylor-coefficient identity
below holds with the matching i^k compensation term.  ``constant_mode='drop'``
discards the constant bracket altogether (for weight 0 the two modes agree).
The identity <g_1, g_1> = (3/4 pi) L*_{f_1}(0) holds for the real part under
either convention.
"""

from __future__ import annotations

import cmath
import math
from contextlib import nullcontext
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from .qseries import QSeries
from .specfun import SpecValue, _e_principal_mp, digamma, gamma_upper, w_k


@dataclass
class LValue:
    s: complex
    t0: float
    value: complex
    err: float


def _cpow(base: complex, expo: complex, mp=None) -> complex:
    """base^expo with the upper-side principal logarithm."""
    if mp is None:
        if base.imag == 0 and base.real < 0:
            lg = complex(math.log(-base.real), math.pi)
        else:
            lg = cmath.log(base)
        return cmath.exp(expo * lg)
    b = mp.mpc(base)
    lg = mp.log(-b) + mp.pi * 1j if (b.imag == 0 and b.real < 0) else mp.log(b)
    return mp.e ** (mp.mpc(expo) * lg)


def lstar(g: QSeries, s, t0: float = 1.0, constant_mode: str = "limit",
          dps: int | None = None) -> LValue:
    """Completed L-function of a weakly holomorphic form at half-integer s."""
    if g.denom != 1:
        raise ValueError("L-functions are implemented for level-one forms")
    if t0 <= 0:
        raise ValueError("t0 must be positive")
    s = Fraction(s)
    if s.denominator not in (1, 2):
        raise ValueError("s must be a half-integer")
    k = g.weight if g.weight is not None else Fraction(0)
    c0 = g.constant_term()
    if c0 != 0 and constant_mode == "limit" and k != 0:
        if s == 0:
            raise ZeroDivisionError("L* has a pole at s = 0 when c(0) != 0, k != 0")
        if s == k:
            raise ZeroDivisionError("L* has a pole at s = k when c(0) != 0")
    mp = mpmath if dps is not None else None
    ctx = mpmath.workdps(dps) if dps is not None else nullcontext()
    with ctx:
        total = mp.mpc(0) if mp else 0j
        err = 0.0
        sf = float(s)
        kf = float(k)
        i_pow_k = _cpow(1j, kf, mp)
        items = sorted(g.coeffs.items())
        running_small = 0
        for m, c in items:
            if m == 0 or c == 0:
                continue
            ga = gamma_upper(s, 2 * math.pi * m * t0, dps=dps)
            gb = gamma_upper(k - s, 2 * math.pi * m / t0, dps=dps)
            da = _cpow(complex(2 * math.pi * m), sf, mp)
            db = _cpow(complex(2 * math.pi * m), kf - sf, mp)
            term = (float(c) * (ga.value / da)
                    + i_pow_k * float(c) * (gb.value / db))
            total += term
            err += abs(float(c)) * (ga.abs_err / abs(complex(da))
                                    + gb.abs_err / abs(complex(db)))
            if m > max(3, -g.min_exp()) and abs(complex(term)) \
                    < 1e-18 * (abs(complex(total)) + 1e-300):
                running_small += 1
                if running_small >= 3:
                    break
        if constant_mode not in ("limit", "drop"):
            raise ValueError("constant_mode must be 'limit' or 'drop'")
        if c0 != 0 and constant_mode == "limit" and k != 0:
            bracket = (i_pow_k * t0 ** (sf - kf) / (kf - sf)
                       + t0 ** sf / sf)
            total -= float(c0) * bracket
        # for k = 0 the i^k bracket is identically zero: nothing to add
    return LValue(complex(sf), t0, total, err + 1e-15 * abs(complex(total)))


# -- the horocycle identity -----------------------------------------------------

def horocycle_theorem13(order: int = 48, npanels: int = 8, nodes: int = 64):
    """-(3/2 pi) Re int_i^{i+1} J(tau) psi(tau) dtau with J = j - 744.

    Returns (scalar_value, vector_value, err): the plus-space scalar product
    <g_1, g_1> and its vector-valued counterpart (2/3 of it).
    """
    from .qseries import faber_basis

    J = faber_basis(1, order) - 24
    x, w = np.polynomial.legendre.leggauss(nodes)

    def run(panels: int) -> complex:
        total = 0j
        edges = np.linspace(0.0, 1.0, panels + 1)
        for lo, hi in zip(edges[:-1], edges[1:]):
            mid, half = 0.5 * (hi + lo), 0.5 * (hi - lo)
            for xi, wi in zip(x, w):
                tau = complex(mid + half * xi, 1.0)
                total += half * wi * J.eval(tau) * digamma(tau).value
        return total

    coarse = run(max(1, npanels // 2))
    fine = run(npanels)
    scalar = -3.0 / (2 * math.pi) * fine.real
    err = 3.0 / (2 * math.pi) * abs(fine - coarse) + 1e-14 * abs(scalar)
    return scalar, 2.0 * scalar / 3.0, err


# -- the boundary function G_k and its Taylor coefficients ----------------------

def _require_gk_weight(k) -> int:
    k = Fraction(k)
    if k.denominator != 1 or k > -2 or int(k) % 2 != 0:
        raise ValueError("G_k is implemented for k in -2N (negative even)")
    return int(k)


def gk_eval(f: QSeries, tau, k=None, T: float = 10.0,
            dps: int | None = None, nodes: int = 48) -> SpecValue:
    """The part of the error of modularity that stays finite at 0:

    G_k(tau) = -(2i)^{1-k} int_i^{i inf} ftilde(z) [(z+tau)^{k-2} -
               (z tau - 1)^{k-2}] dz
             + e^{-pi i k} (4 pi)^{1-k} sum_{j=1}^{m0} conj(c_f(-j))/j^{k-1}
               e^{2 pi i j tau} W_{2-k}(-pi i j (tau + i)),

    with ftilde = f_o^c - conj(c_f(0)) (the decaying positive-frequency tail).
    """
    if k is None:
        k = f.weight
    k = _require_gk_weight(k)
    if dps is not None:
        with mpmath.workdps(dps):
            return _gk_eval_mp(f, mpmath.mpc(tau), k, T, nodes)
    tau = complex(tau)
    tail = {n: c for n, c in f.coeffs.items() if n > 0}
    ft = QSeries(tail, f.order, f.weight)

    def kernel(t: float) -> complex:
        z = 1j * t
        return ft.eval(z) * ((z + tau) ** (k - 2) - (z * tau - 1) ** (k - 2))

    x, w = np.polynomial.legendre.leggauss(nodes)

    def run(panels: int) -> complex:
        edges = np.linspace(1.0, 1.0 + T, panels + 1)
        total = 0j
        for lo, hi in zip(edges[:-1], edges[1:]):
            mid, half = 0.5 * (hi + lo), 0.5 * (hi - lo)
            total += half * sum(wi * kernel(mid + half * xi)
                                for xi, wi in zip(x, w))
        return 1j * total  # dz = i dt

    coarse = run(6)
    fine = run(12)
    integral = fine
    pref = -(2j) ** (1 - k)
    wsum = 0j
    werr = 0.0
    for n, c in sorted(f.coeffs.items()):
        if n >= 0:
            break
        j = -n
        wv = w_k(2 - k, -math.pi * 1j * j * (tau + 1j))
        coef = float(c) / j ** (k - 1) * cmath.exp(-1j * math.pi * k) \
            / (4 * math.pi) ** (k - 1)
        wsum += coef * cmath.exp(2j * math.pi * j * tau) * wv.value
        werr += abs(coef) * wv.abs_err
    tail_bound = abs(float(f.coeffs.get(1, 1))) * math.exp(-2 * math.pi * (1 + T)) * 4
    value = pref * integral + wsum
    err = abs(pref) * (abs(fine - coarse) + tail_bound) + werr + 1e-14 * abs(value)
    return SpecValue(value, err)


def _gk_eval_mp(f: QSeries, tau, k: int, T: float, nodes: int) -> SpecValue:
    mp = mpmath
    tau = mp.mpc(tau)
    tail = sorted((n, c) for n, c in f.coeffs.items() if n > 0)

    def ft(z):
        q = mp.e ** (2j * mp.pi * z)
        acc = mp.mpc(0)
        for n, c in tail:
            acc += (mp.mpf(c.numerator) / c.denominator) * q ** n
        return acc

    def kern(t):
        z = 1j * t
        return ft(z) * ((z + tau) ** (k - 2) - (z * tau - 1) ** (k - 2))

    integral = 1j * mp.quad(kern, mp.linspace(1, 1 + T, 9))
    pref = -(2j) ** mp.mpf(1 - k)
    wsum = mp.mpc(0)
    for n, c in sorted(f.coeffs.items()):
        if n >= 0:
            break
        j = -n
        # W_{2-k}(z) = (-2z)^{k-1} E_{2-k}(-2z) - pi i / Gamma(2-k), k even <= -2
        m2z = 2j * mp.pi * j * (tau + 1j)
        wval = m2z ** (k - 1) * _e_principal_mp(Fraction(2 - k), m2z, mp) \
            - mp.pi * 1j / mp.gamma(2 - k)
        coef = (mp.mpf(c.numerator) / c.denominator) / mp.mpf(j) ** (k - 1) \
            * mp.e ** (-1j * mp.pi * k) / (4 * mp.pi) ** (k - 1)
        wsum += coef * mp.e ** (2j * mp.pi * j * tau) * wval
    value = pref * integral + wsum
    err = float(abs(value)) * 10.0 ** (8 - mp.mp.dps) \
        + math.exp(-2 * math.pi * (1 + T)) * 10
    return SpecValue(value, err)


def _poly_derivative_at_zero(f, n: int, h: float, npts: int, dps: int):
    """a_n = f^{(n)}(0)/n! from a polynomial fit through f(i j h), j=1..npts."""
    mp = mpmath
    with mpmath.workdps(2 * dps):
        ys = [f(1j * mp.mpf(j) * h) for j in range(1, npts + 1)]
        xs = [1j * mp.mpf(j) * h for j in range(1, npts + 1)]
        V = mp.matrix(npts, npts)
        for i, xi in enumerate(xs):
            p = mp.mpc(1)
            for jj in range(npts):
                V[i, jj] = p
                p *= xi
        coef = mp.lu_solve(V, mp.matrix(ys))
        return coef[n]


def taylor_check(f: QSeries, n: int, k=None, dps: int = 50,
                 h: float = 0.02, t0: float = 1.0, gate: float = 1e-5):
    """Both sides of the Taylor-coefficient L-value identity at tau = 0.

    lhs: G_k^{(n)}(0)/n! by polynomial extrapolation along tau = i j h with a
    two-step-size consistency gate (h is halved until the two extrapolations
    agree to ``gate`` relative).
    rhs: the closed formula
         -(k-n-1)_n / (2^{k-1} i^{n+k} n!) * [ L*_{f^c}(n+1)
             + conj(c_f(0)) (i^k/(k-n-1) + 1/(n+1))
             - sum_j conj(c_f(-j)) Gamma(n+1, -2 pi j)/(-2 pi j)^{n+1} ]
         + 2^{2-2k+n} pi^{n-k+2} i^{n-1} / (Gamma(2-k) n!) *
               sum_j conj(c_f(-j)) / j^{k-n-1}.

    The constant-term compensation carries i^k, matching the t_0-independent
    completion of L*; the combination L* + compensation is exactly the pair of
    incomplete-Gamma sums, independent of both t_0 and the convention.

    Returns (lhs, rhs, info-dict).
    """
    if k is None:
        k = f.weight
    k = _require_gk_weight(k)
    if n < 0 or n > 4:
        raise ValueError("n in 0..4 supported")
    npts = 2 * n + 6
    info = {"h": h, "npts": npts, "dps": dps}

    def G(tau):
        return _gk_eval_mp(f, tau, k, 12.0, 0).value

    with mpmath.workdps(dps):
        mp = mpmath
        hh = mp.mpf(h)
        for attempt in range(4):
            a1 = _poly_derivative_at_zero(G, n, hh, npts, dps)
            a2 = _poly_derivative_at_zero(G, n, hh / 2, npts, dps)
            rel = float(abs(a1 - a2) / (abs(a2) + mp.mpf("1e-30")))
            info["h"] = float(hh)
            info["gate_rel"] = rel
            if rel < gate:
                break
            hh /= 2
        lhs = a2

        # rhs: L* of f^c = f (rational coefficients) at s = n+1
        lv = lstar(f, n + 1, t0=t0, constant_mode="limit", dps=dps)
        ls = lv.value
        c0 = f.constant_term()
        poch = mp.mpf(1)
        for i in range(n):
            poch *= (k - n - 1 + i)
        pref = -poch / (mp.mpf(2) ** (k - 1) * (1j) ** (n + k) * mp.factorial(n))
        bracket = ls
        if c0 != 0:
            bracket += float(c0) * ((1j) ** k / (k - n - 1)
                                    + mp.mpf(1) / (n + 1))
        for m, c in sorted(f.coeffs.items()):
            if m >= 0:
                break
            j = -m
            # Gamma(n+1, w) by the closed finite formula, entire in w
            wv = -2 * mp.pi * j
            s_fin = mp.mpc(0)
            t = mp.mpf(1)
            for r in range(n + 1):
                s_fin += t
                t *= wv / (r + 1)
            gamma_inc = mp.factorial(n) * mp.e ** (-wv) * s_fin
            bracket -= float(c) * gamma_inc / wv ** (n + 1)
        second = (mp.mpf(2) ** (2 - 2 * k + n) * mp.pi ** (n - k + 2)
                  * (1j) ** (n - 1) / (mp.gamma(2 - k) * mp.factorial(n)))
        ssum = mp.mpc(0)
        for m, c in sorted(f.coeffs.items()):
            if m >= 0:
                break
            j = -m
            ssum += float(c) / mp.mpf(j) ** (k - n - 1)
        rhs = pref * bracket + second * ssum
        info["rel_err"] = float(abs(lhs - rhs) / abs(rhs))
    return complex(lhs), complex(rhs), info
