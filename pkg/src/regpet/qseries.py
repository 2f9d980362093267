"""Exact Laurent q-expansion arithmetic and the classical level-one form bases.

Coefficients are exact rationals throughout; floating point enters only when a
series is evaluated at a point of the upper half-plane.  Exponents are stored
as integers n meaning q^(n/N) on the grid 1/N (N=1 for level one).
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import Mapping

Rational = Fraction | int


class GridError(ValueError):
    """Two series live on incompatible exponent grids."""


class OrderError(ValueError):
    """A series is not known to sufficient order for the requested operation."""


def _sigma(n: int, k: int) -> int:
    """Divisor power sum sigma_k(n)."""
    if n <= 0:
        raise ValueError("n must be positive")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d ** k
            if d * d != n:
                total += (n // d) ** k
        d += 1
    return total


class QSeries:
    """Truncated Laurent series sum_n c(n) q^(n/N) with exact rational c(n).

    ``order`` means the coefficients are known exactly for all exponents
    n < order; arithmetic never pretends to know more than the operands do.
    ``weight`` is a bookkeeping tag (half-integer as Fraction, or None).
    """

    __slots__ = ("denom", "coeffs", "order", "weight", "label")

    def __init__(self, coeffs: Mapping[int, Rational], order: int,
                 weight: Rational | None = 0, denom: int = 1, label: str = ""):
        if denom < 1:
            raise ValueError("denom must be a positive integer")
        self.denom = int(denom)
        self.coeffs = {int(n): Fraction(c) for n, c in coeffs.items()
                       if c != 0 and int(n) < order}
        for n in coeffs:
            if int(n) >= order and coeffs[n] != 0:
                raise OrderError(f"coefficient at exponent {n} >= order {order}")
        self.order = int(order)
        self.weight = None if weight is None else Fraction(weight)
        self.label = label

    # -- basic structure ----------------------------------------------------

    def min_exp(self) -> int:
        """Smallest stored exponent (0 for the zero series)."""
        return min(self.coeffs) if self.coeffs else 0

    def __getitem__(self, n: int) -> Fraction:
        if n >= self.order:
            raise OrderError(f"exponent {n} not known (order {self.order})")
        return self.coeffs.get(n, Fraction(0))

    def is_zero(self) -> bool:
        return not self.coeffs

    def principal_part(self) -> dict[int, Fraction]:
        return {n: c for n, c in self.coeffs.items() if n < 0}

    def constant_term(self) -> Fraction:
        return self[0] if self.order > 0 else Fraction(0)

    def __repr__(self) -> str:
        head = sorted(self.coeffs.items())[:4]
        terms = " + ".join(f"{c}*q^({n}/{self.denom})" if self.denom > 1
                           else f"{c}*q^{n}" for n, c in head)
        tag = self.label or f"weight {self.weight}"
        return f"QSeries({tag}: {terms} + O(q^({self.order}/{self.denom})))"

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return (self.denom == other.denom and self.order == other.order
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.denom, self.order, tuple(sorted(self.coeffs.items()))))

    # -- ring operations -----------------------------------------------------

    def _check_grid(self, other: "QSeries") -> None:
        if self.denom != other.denom:
            raise GridError(f"grid 1/{self.denom} vs 1/{other.denom}")

    def _combine_weight(self, other: "QSeries", mode: str) -> Fraction | None:
        if self.weight is None or other.weight is None:
            return None
        if mode == "add":
            if self.weight != other.weight:
                raise ValueError("cannot add series with different weight tags")
            return self.weight
        if mode == "mul":
            return self.weight + other.weight
        return self.weight - other.weight  # div

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QSeries({0: other}, self.order, self.weight, self.denom)
        self._check_grid(other)
        order = min(self.order, other.order)
        out = {n: c for n, c in self.coeffs.items() if n < order}
        for n, c in other.coeffs.items():
            if n < order:
                out[n] = out.get(n, Fraction(0)) + c
        return QSeries(out, order, self._combine_weight(other, "add"), self.denom)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return QSeries({n: -c for n, c in self.coeffs.items()}, self.order,
                       self.weight, self.denom, self.label)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QSeries({0: other}, self.order, self.weight, self.denom)
        return self.__add__(-other)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QSeries({n: c * other for n, c in self.coeffs.items()},
                           self.order, self.weight, self.denom)
        self._check_grid(other)
        if self.is_zero() or other.is_zero():
            return QSeries({}, min(self.order, other.order),
                           self._combine_weight(other, "mul"), self.denom)
        # exact truncation: a known below A with min a0, b known below B with
        # min b0 => the product is reliable below min(A + b0, B + a0)
        order = min(self.order + other.min_exp(), other.order + self.min_exp())
        out: dict[int, Fraction] = {}
        for na, ca in self.coeffs.items():
            for nb, cb in other.coeffs.items():
                n = na + nb
                if n < order:
                    out[n] = out.get(n, Fraction(0)) + ca * cb
        return QSeries(out, order, self._combine_weight(other, "mul"), self.denom)

    def __rmul__(self, other):
        return self.__mul__(other)

    def inverse(self) -> "QSeries":
        """Multiplicative inverse; requires a nonzero leading coefficient."""
        if self.is_zero():
            raise ZeroDivisionError("cannot invert the zero series")
        v = self.min_exp()
        lead = self.coeffs[v]
        rel = self.order - v          # relative precision of the input
        # write self = lead * q^v * (1 + h); invert the unit part by the
        # standard recurrence b_0 = 1, b_n = -sum_{j>=1} a_j b_{n-j}
        a = {n - v: c / lead for n, c in self.coeffs.items()}
        b = [Fraction(0)] * rel
        b[0] = Fraction(1)
        for n in range(1, rel):
            acc = Fraction(0)
            for j, aj in a.items():
                if 1 <= j <= n:
                    acc += aj * b[n - j]
            b[n] = -acc
        out = {i - v: bi / lead for i, bi in enumerate(b) if bi != 0}
        w = None if self.weight is None else -self.weight
        return QSeries(out, rel - v, w, self.denom)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return QSeries({n: c / Fraction(other) for n, c in self.coeffs.items()},
                           self.order, self.weight, self.denom)
        self._check_grid(other)
        return self * other.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            raise TypeError("only integer powers are supported")
        if e < 0:
            return self.inverse() ** (-e)
        if e == 0:
            return QSeries({0: 1}, self.order - self.min_exp(), 0, self.denom)
        # exponentiation by squaring; the mul bookkeeping tracks orders
        base = self
        acc = None
        while e > 0:
            if e & 1:
                acc = base if acc is None else acc * base
            e >>= 1
            if e:
                base = base * base
        return acc

    # -- evaluation ----------------------------------------------------------

    def eval(self, tau: complex) -> complex:
        """Evaluate at tau in the upper half-plane (float path)."""
        if tau.imag <= 0:
            raise ValueError("tau must lie in the upper half-plane")
        w = cmath.exp(2j * cmath.pi * tau / self.denom)
        lo = self.min_exp()
        acc = 0j
        # Horner over the dense exponent range [lo, order)
        for n in range(self.order - 1, lo - 1, -1):
            acc = acc * w + complex(self.coeffs.get(n, 0))
        return acc * w ** lo

    def eval_tail_estimate(self, tau: complex) -> float:
        """Crude bound on the truncation error of :meth:`eval`."""
        absw = abs(cmath.exp(2j * cmath.pi * tau / self.denom))
        tail = sorted(self.coeffs.items())[-3:]
        m = max((abs(float(c)) * absw ** n for n, c in tail), default=0.0)
        return 3.0 * max(m, absw ** self.order)

    def eval_mp(self, tau, mp):
        """Evaluate with an mpmath context (tau may be mpc)."""
        w = mp.e ** (2j * mp.pi * tau / self.denom)
        lo = self.min_exp()
        acc = mp.mpc(0)
        for n in range(self.order - 1, lo - 1, -1):
            c = self.coeffs.get(n, 0)
            acc = acc * w + (mp.mpf(c.numerator) / c.denominator if c else 0)
        return acc * w ** lo

    def to_json_dict(self) -> dict:
        w = self.weight
        weight = None if w is None else (int(w) if w.denominator == 1 else f"{w}")
        return {
            "denom": self.denom,
            "weight": weight,
            "coeffs": [[n, f"{c}"] for n, c in sorted(self.coeffs.items())],
            "order": self.order,
        }


# -- classical forms ---------------------------------------------------------

def eisenstein(k: int, order: int) -> QSeries:
    """Normalized Eisenstein series E_4 or E_6."""
    if k == 4:
        mult, power = 240, 3
    elif k == 6:
        mult, power = -504, 5
    else:
        raise ValueError("only E_4 and E_6 are supported")
    coeffs = {0: Fraction(1)}
    for n in range(1, order):
        coeffs[n] = Fraction(mult * _sigma(n, power))
    return QSeries(coeffs, order, k, label=f"E{k}")


def eta24(order: int) -> QSeries:
    """Delta = q prod (1-q^n)^24 via Euler's pentagonal number theorem."""
    euler = {0: Fraction(1)}
    m = 1
    while m * (3 * m - 1) // 2 < order:
        for p in (m * (3 * m - 1) // 2, m * (3 * m + 1) // 2):
            if p < order:
                euler[p] = Fraction((-1) ** m)
        m += 1
    prod = QSeries(euler, order, 0) ** 24
    shifted = {n + 1: c for n, c in prod.coeffs.items() if n + 1 < order}
    return QSeries(shifted, order, 12, label="eta24")


def delta(order: int) -> QSeries:
    """Delta = (E_4^3 - E_6^2)/1728."""
    e4 = eisenstein(4, order)
    e6 = eisenstein(6, order)
    d = (e4 ** 3 - e6 ** 2) * Fraction(1, 1728)
    return QSeries(d.coeffs, d.order, 12, label="Delta")


def j_invariant(order: int) -> QSeries:
    """j = E_4^3 / Delta = q^-1 + 744 + 196884 q + ..."""
    # Delta has leading exponent 1, so ask for enough input order.
    e4 = eisenstein(4, order + 3)
    d = delta(order + 3)
    j = e4 ** 3 / d
    out = {n: c for n, c in j.coeffs.items() if n < order}
    return QSeries(out, min(order, j.order), 0, label="j")


def _row_reduce(rows: list[QSeries], order: int) -> dict[int, QSeries]:
    """Exact reduced row echelon form, pivoting on the most negative exponent.

    Returns a map pivot-exponent -> series with unit pivot and zeros at every
    other pivot exponent.  Deterministic.
    """
    pivots: dict[int, QSeries] = {}
    work = list(rows)
    while True:
        work = [r for r in work if not r.is_zero()]
        if not work:
            break
        # take the row whose leading exponent is most negative
        work.sort(key=lambda r: r.min_exp())
        row = work.pop(0)
        p = row.min_exp()
        if p in pivots:
            work.append(row - pivots[p] * row.coeffs[p])
            continue
        row = row * (Fraction(1) / row.coeffs[p])
        pivots[p] = row
        # eliminate this pivot from the remaining rows
        work = [(r - row * r[p]) if (p < r.order and r[p] != 0) else r
                for r in work]
    # final full back-substitution pass (pivots found late must clear earlier rows)
    exps = sorted(pivots)
    for i, p in enumerate(exps):
        r = pivots[p]
        for pq in exps[i + 1:]:
            if pq < r.order and r[pq] != 0:
                r = r - pivots[pq] * r[pq]
        pivots[p] = r
    return pivots


def faber_basis(m: int, order: int) -> QSeries:
    """The weight-0 basis form f_m = q^-m + 24 sigma_1(m) + O(q)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if order < 1:
        raise OrderError("order must cover the constant term")
    work = order + m + 2
    j1 = j_invariant(work) - 744        # q^-1 + 0 + 196884 q + ...
    rows = [QSeries({0: 1}, work - m, 0)]
    p = QSeries({0: 1}, work, 0)
    for _ in range(m):
        p = p * j1
        rows.append(p)
    pivots = _row_reduce(rows, work)
    if -m not in pivots:
        raise OrderError(f"order too small to realize q^-{m}")
    base = pivots[-m]                   # q^-m + 0 + O(q) after reduction
    f = base + Fraction(24 * _sigma(m, 1))
    out = {n: c for n, c in f.coeffs.items() if n < order}
    return QSeries(out, min(order, f.order), 0, label=f"f{m}")


def _monomials(k: int, j: int, work: int) -> list[QSeries]:
    """All E4^a E6^b / Delta^j with 4a + 6b = k + 12j, as exact series."""
    w = k + 12 * j
    rows = []
    if w < 0:
        return rows
    e4 = eisenstein(4, work)
    e6 = eisenstein(6, work)
    dinv = delta(work) ** (-j) if j else QSeries({0: 1}, work, 0)
    for a in range(w // 4 + 1):
        rem = w - 4 * a
        if rem % 6 == 0:
            b = rem // 6
            rows.append((e4 ** a) * (e6 ** b) * dinv)
    return rows


def wh_basis(k: int, m: int, order: int) -> QSeries:
    """Weakly holomorphic basis element of even weight k <= 2 with principal
    part exactly q^-m (and the maximal achievable gap after it)."""
    if k % 2 != 0 or k > 2:
        raise ValueError("k must be an even integer <= 2")
    if m < 1:
        raise ValueError("m must be >= 1")
    work = order + 2 * m + 14
    rows = _monomials(k, m, work)
    if not rows:
        raise ValueError(f"no form with pole order {m} exists in weight {k}")
    pivots = _row_reduce(rows, work)
    if -m not in pivots:
        raise ValueError(f"no form with pole order {m} exists in weight {k}")
    base = pivots[-m]
    out = {n: c for n, c in base.coeffs.items() if n < order}
    return QSeries(out, min(order, base.order), k, label=f"wh({k},{m})")


def classical_form(family: str, order: int, m: int = 0, k: int = 0) -> QSeries:
    """Dispatch for the documented form labels."""
    if order < 1:
        raise OrderError("order must be >= 1")
    if family == "E4":
        return eisenstein(4, order)
    if family == "E6":
        return eisenstein(6, order)
    if family == "Delta":
        return delta(order)
    if family == "eta24":
        return eta24(order)
    if family == "j":
        return j_invariant(order)
    if family == "faber":
        return faber_basis(m, order)
    if family == "wh_basis":
        return wh_basis(k, m, order)
    if family == "weight2_basis":
        return wh_basis(2, m, order)
    raise ValueError(f"unsupported form label {family!r}")


def pairing(f: QSeries, g: QSeries) -> Fraction:
    """{f, g} = sum_n c_f(n) c_g(-n); exact, always a finite sum.

    Requires each series to be known past the other's principal part.
    """
    if f.denom != g.denom:
        raise GridError(f"grid 1/{f.denom} vs 1/{g.denom}")
    fmin, gmin = f.min_exp(), g.min_exp()
    if g.order <= -fmin or f.order <= -gmin:
        raise OrderError("insufficient order to evaluate all cross terms")
    total = Fraction(0)
    for n, c in f.coeffs.items():
        total += c * g.coeffs.get(-n, Fraction(0))
    return total
