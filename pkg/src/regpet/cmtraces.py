"""Binary quadratic forms, CM-point traces of singular moduli, geodesic cycle
integrals, and the coefficient tables of the weight-3/2 form g_1 and the
weight-1/2 form G_1 built from them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .qseries import QSeries, faber_basis
from .weil import VectorForm, z2_module


@dataclass(frozen=True)
class QuadForm:
    """Integral binary quadratic form a x^2 + b xy + c y^2."""
    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def value(self, x: complex, y: complex = 1) -> complex:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def cm_point(self) -> complex:
        """(-b + i sqrt(|D|)) / 2a for definite forms with a > 0."""
        if self.disc >= 0 or self.a <= 0:
            raise ValueError("CM point needs disc < 0 and a > 0")
        return complex(-self.b, math.sqrt(-self.disc)) / (2 * self.a)

    def stabilizer_order(self) -> int:
        """w(Q): 3 for forms equivalent to a multiple of the discriminant -3
        form, 2 for multiples of the discriminant -4 form, 1 otherwise.
        Imprimitive forms scale the discriminant by the squared content."""
        g = math.gcd(math.gcd(abs(self.a), abs(self.b)), abs(self.c))
        primitive_disc = self.disc // (g * g)
        if primitive_disc == -3:
            return 3
        if primitive_disc == -4:
            return 2
        return 1

    def translate(self, mat: tuple[int, int, int, int]) -> "QuadForm":
        """Q((x,y) * M) for M = (p, q, r, s) in SL_2(Z); preserves disc."""
        p, q, r, s = mat
        if p * s - q * r != 1:
            raise ValueError("matrix must have determinant 1")
        a = self.value(p, r)
        c = self.value(q, s)
        b = 2 * self.a * p * q + self.b * (p * s + q * r) + 2 * self.c * r * s
        return QuadForm(int(a), b, int(c))


@dataclass
class TraceValue:
    disc: int
    value: float
    kind: str  # "cm" | "cycle"
    est_err: float


def reduced_forms(D: int) -> list[QuadForm]:
    """One reduced representative per class of positive definite forms of
    discriminant D < 0: |b| <= a <= c with b >= 0 when |b| = a or a = c."""
    if D >= 0 or D % 4 not in (0, 1):
        raise ValueError("D must be negative and 0 or 1 mod 4")
    forms = []
    amax = math.isqrt(-D // 3) if D < -3 else 1
    for a in range(1, max(amax, 1) + 1):
        for b in range(-a, a + 1):
            if (b - D) % 2 != 0:
                continue
            num = b * b - D
            if num % (4 * a) != 0:
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if (abs(b) == a or a == c) and b < 0:
                continue
            forms.append(QuadForm(a, b, c))
    return sorted(forms, key=lambda f: (f.a, f.b, f.c))


def class_number(D: int) -> int:
    return len(reduced_forms(D))


def reduce_to_fundamental_domain(tau: complex) -> complex:
    """Translate tau into the standard fundamental domain by T and S moves."""
    for _ in range(10_000):
        tau = complex(tau.real - round(tau.real), tau.imag)
        if abs(tau) >= 1 - 1e-15:
            break
        tau = -1 / tau
    else:  # pragma: no cover
        raise RuntimeError("point reduction failed to terminate")
    return tau


def cm_trace(f: QSeries, D: int, dps: int | None = None) -> TraceValue:
    """tr_D(f) = sum over reduced Q of f(tau_Q)/w(Q) for D < 0; reduced CM
    points have v >= sqrt(3)/2, inside the series' fast-convergence region.

    Singular moduli grow like e^{pi sqrt(|D|)}, so recovering integrality to a
    fixed absolute tolerance at large |D| needs the extended path (``dps``).
    """
    if f.weight not in (0, None):
        raise ValueError("CM traces are for weight-0 functions")
    if dps is not None:
        import mpmath
        with mpmath.workdps(dps):
            total = mpmath.mpf(0)
            err = 0.0
            for form in reduced_forms(D):
                # the CM point must carry full working precision: the huge
                # j-derivative amplifies any rounding of sqrt(|D|)
                tau = mpmath.mpc(-form.b, mpmath.sqrt(-D)) / (2 * form.a)
                val = f.eval_mp(tau, mpmath)
                total += mpmath.re(val) / form.stabilizer_order()
                err += float(abs(mpmath.im(val))) \
                    + f.eval_tail_estimate(form.cm_point())
            # value stays an mpf: beyond |D| ~ 130 the trace exceeds 2^53
            return TraceValue(D, total, "cm", err)
    total = 0.0
    err = 0.0
    for form in reduced_forms(D):
        tau = form.cm_point()
        val = f.eval(tau)
        total += val.real / form.stabilizer_order()
        err += (abs(val.imag) + f.eval_tail_estimate(tau)
                + 5e-16 * abs(val)) / form.stabilizer_order()
    return TraceValue(D, total, "cm", err)


# -- indefinite classes and closed geodesics ----------------------------------

def _is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def _indefinite_reduced(d: int) -> list[QuadForm]:
    """All reduced indefinite forms of nonsquare discriminant d > 0:
    0 < b < sqrt(d) and sqrt(d) - b < 2|a| < sqrt(d) + b."""
    sq = math.sqrt(d)
    out = []
    for b in range(1, math.isqrt(d) + 1):
        if (d - b * b) % 4 != 0:
            continue
        ac = (b * b - d) // 4  # negative
        for a in range(1, b + math.isqrt(d)):
            if abs(2 * a - sq) >= b or ac % a != 0:
                continue
            c = ac // a
            out.append(QuadForm(a, b, c))
            out.append(QuadForm(-a, b, -c))
    return out


def _reduction_step(form: QuadForm, d: int) -> QuadForm:
    """rho(a,b,c) = (c, b', *) with b' = -b + 2 c s, s chosen so the result is
    reduced; the orbits of rho partition the reduced forms into class cycles."""
    a, b, c = form.a, form.b, form.c
    sq = math.sqrt(d)
    s = math.floor((b + sq) / (2 * abs(c)))
    if c < 0:
        s = -s
    b2 = -b + 2 * c * s
    c2 = (b2 * b2 - d) // (4 * c)
    return QuadForm(c, b2, c2)


def indefinite_class_reps(d: int) -> list[QuadForm]:
    """One representative per SL_2(Z)-class of discriminant d (nonsquare)."""
    if d <= 0 or d % 4 not in (0, 1):
        raise ValueError("d must be positive and 0 or 1 mod 4")
    if _is_square(d):
        raise ValueError("square discriminants are not supported")
    pool = {(f.a, f.b, f.c) for f in _indefinite_reduced(d)}
    reps = []
    while pool:
        start = QuadForm(*sorted(pool)[0])
        reps.append(start)
        form = start
        for _ in range(10_000):
            form = _reduction_step(form, d)
            key = (form.a, form.b, form.c)
            if key not in pool:
                raise RuntimeError(f"reduction left the reduced set at {key}")
            pool.discard(key)
            if key == (start.a, start.b, start.c):
                break
        else:  # pragma: no cover
            raise RuntimeError("reduction cycle failed to close")
    return reps


def pell_fundamental(d: int, bound: int = 10_000_000) -> tuple[int, int]:
    """Smallest (t, u), u >= 1, with t^2 - d u^2 = 4."""
    for u in range(1, bound):
        t2 = d * u * u + 4
        t = math.isqrt(t2)
        if t * t == t2:
            return t, u
    raise RuntimeError(f"no Pell solution for d={d} below the search bound")


def automorph(form: QuadForm, d: int) -> tuple[int, int, int, int]:
    """Generator of the stabilizer of Q: ((t+bu)/2, cu, -au, (t-bu)/2)."""
    t, u = pell_fundamental(d)
    return ((t + form.b * u) // 2, form.c * u,
            -form.a * u, (t - form.b * u) // 2)


def _moebius(mat, z: complex) -> complex:
    p, q, r, s = mat
    return (p * z + q) / (r * z + s)


def _gl_nodes(n: int):
    return np.polynomial.legendre.leggauss(n)


def cycle_integral(f: QSeries, form: QuadForm, d: int,
                   nodes: int = 24, theta0: float | None = None):
    """int over one period of Gamma_Q \\ C_Q of f(tau) dtau / Q(tau, 1).

    The geodesic semicircle is parametrized by angle; on it
    d tau / Q(tau,1) = sign(a) d theta / (sqrt(d) sin theta).  One period runs
    from a base point to its image under the automorph.  f is weight 0, so
    each sample point can be reduced into the fundamental domain first.
    """
    a = form.a
    center = -form.b / (2.0 * a)
    radius = math.sqrt(d) / (2.0 * abs(a))
    th0 = math.pi / 2 if theta0 is None else theta0
    p0 = complex(center + radius * math.cos(th0), radius * math.sin(th0))
    p1 = _moebius(automorph(form, d), p0)
    th1 = math.atan2((p1 - center).imag, (p1 - center).real)

    def kernel(theta):
        tau = complex(center + radius * math.cos(theta), radius * math.sin(theta))
        val = f.eval(reduce_to_fundamental_domain(tau))
        return val / math.sin(theta)

    sign = 1.0 if a > 0 else -1.0
    x, w = _gl_nodes(nodes)

    def integrate(npanels):
        edges = np.linspace(th0, th1, npanels + 1)
        acc = 0j
        for lo, hi in zip(edges[:-1], edges[1:]):
            mid, half = 0.5 * (hi + lo), 0.5 * (hi - lo)
            acc += half * sum(wi * kernel(mid + half * xi) for xi, wi in zip(x, w))
        return sign * acc / math.sqrt(d)

    coarse = integrate(8)
    fine = integrate(16)
    return fine, abs(fine - coarse)


def cycle_trace(f: QSeries, d: int) -> TraceValue:
    """tr_d(f) = (1/2 pi) sum over classes of the closed geodesic integral,
    for nonsquare d > 0 (square discriminants are out of scope)."""
    if _is_square(d):
        raise ValueError("square discriminants are not supported")
    total = 0j
    err = 0.0
    for rep in indefinite_class_reps(d):
        val, e = cycle_integral(f, rep, d)
        total += val
        err += e
    value = total.real / (2 * math.pi)
    err = (err + abs(total.imag)) / (2 * math.pi)
    return TraceValue(d, value, "cycle", err)


# -- the g_1 and G_1 coefficient tables ----------------------------------------

_J_CACHE: dict[int, QSeries] = {}


def j_minus_744(order: int = 36) -> QSeries:
    """J = j - 744 = f_1 - 24."""
    if order not in _J_CACHE:
        _J_CACHE[order] = faber_basis(1, order) - 24
    return _J_CACHE[order]


def g1_coefficients(n_max: int, round_tol: float = 1e-4) -> dict[int, int]:
    """B_1(n) for 0 <= n <= n_max: B_1(0) = -2, B_1(n) = -tr_{-n}(J) for
    n = 0, 3 mod 4; traces of singular moduli are integers, and the rounding
    residual is checked against ``round_tol``."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    out = {0: -2}
    J = j_minus_744()
    for n in range(3, n_max + 1):
        if n % 4 not in (0, 3):
            continue
        tr = cm_trace(J, -n)
        b = -tr.value
        nearest = round(b)
        if abs(b - nearest) > round_tol:
            raise ArithmeticError(
                f"trace for disc {-n} is {b}, not within {round_tol} of an integer")
        out[n] = int(nearest)
    return out


def g1_vector_form(n_max: int = 48) -> VectorForm:
    """The weight-3/2 form g_1 as a vector form for the Z/2Z module (dual
    support: exponents n/4 with n = 0, 3 mod 4), principal part q^{-1/4} e_1."""
    module = z2_module()
    coeffs = g1_coefficients(n_max)
    comp0 = {n: Fraction(v) for n, v in coeffs.items() if n % 4 == 0}
    comp1 = {n: Fraction(v) for n, v in coeffs.items() if n % 4 == 3}
    comp1[-1] = Fraction(1)
    order = n_max + 1
    return VectorForm(
        module,
        {(0,): QSeries(comp0, order, Fraction(3, 2), denom=4),
         (1,): QSeries(comp1, order, Fraction(3, 2), denom=4)},
        Fraction(3, 2), dual=True)


def G1_plus_coefficients(d_max: int) -> dict[int, float]:
    """Holomorphic-part coefficients tr_d(f_1) of the dual weight-1/2 form,
    for nonsquare 0 < d <= d_max, d = 0, 1 mod 4."""
    f1 = faber_basis(1, 36)
    out = {}
    for d in range(1, d_max + 1):
        if d % 4 not in (0, 1) or _is_square(d):
            continue
        out[d] = cycle_trace(f1, d).value
    return out
