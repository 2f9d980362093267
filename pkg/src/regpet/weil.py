"""Finite quadratic modules, Weil representation generator matrices, and the
vector <-> scalar plus-space correspondence.

Only modules built from cyclic factors with diagonal quadratic form are
supported; the application needs just A = Z/2Z with Q(x) = x^2/4.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .qseries import QSeries, GridError


def _e(x: Fraction) -> complex:
    """e(x) = exp(2 pi i x)."""
    return complex(np.exp(2j * np.pi * float(x)))


class DegenerateFormError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteQuadraticModule:
    """Finite abelian group with a nondegenerate Q/Z-valued quadratic form."""
    factors: tuple[tuple[int, Fraction], ...]   # (cyclic order, coefficient r_i)
    elements: tuple[tuple[int, ...], ...] = field(init=False)
    signature: int = field(init=False)
    level: int = field(init=False)

    def __post_init__(self):
        orders = [n for n, _ in self.factors]
        elems = tuple(itertools.product(*[range(n) for n in orders]))
        object.__setattr__(self, "elements", elems)
        # nondegeneracy: no nonzero x with (x, y) = 0 mod 1 for all y
        for x in elems[1:]:
            if all(self.bilinear(x, y) == 0 for y in elems):
                raise DegenerateFormError(f"degenerate at {x}")
        # Milgram: |A|^{-1/2} sum e(Q(a)) = e(sig/8)
        g = sum(_e(self.q(a)) for a in elems) / math.sqrt(len(elems))
        sig = None
        for s in range(8):
            if abs(g - _e(Fraction(s, 8))) < 1e-9:
                sig = s
                break
        if sig is None:
            raise DegenerateFormError(
                f"Gauss sum {g} is not an eighth root of unity")
        object.__setattr__(self, "signature", sig)
        lcm = 1
        for a in elems:
            lcm = lcm * self.q(a).denominator // math.gcd(lcm, self.q(a).denominator)
        level = next(n for n in range(1, lcm + 1)
                     if all((n * self.q(a)).denominator == 1 for a in elems))
        object.__setattr__(self, "level", level)

    def q(self, x: tuple[int, ...]) -> Fraction:
        """Q(x) mod 1."""
        total = sum((r * xi * xi for (n, r), xi in zip(self.factors, x)),
                    Fraction(0))
        return total % 1

    def add(self, x, y):
        return tuple((xi + yi) % n for (n, _), xi, yi in zip(self.factors, x, y))

    def neg(self, x):
        return tuple((-xi) % n for (n, _), xi in zip(self.factors, x))

    def bilinear(self, x, y) -> Fraction:
        """(x, y) = Q(x+y) - Q(x) - Q(y) mod 1."""
        return (self.q(self.add(x, y)) - self.q(x) - self.q(y)) % 1

    def to_json_dict(self) -> dict:
        return {
            "factors": [[n, str(r)] for n, r in self.factors],
            "order": len(self.elements),
            "signature": self.signature,
            "level": self.level,
            "Q": {repr(a): str(self.q(a)) for a in self.elements},
        }


def fqm_create(factors) -> FiniteQuadraticModule:
    """Build a module from cyclic factors [(n_i, r_i)], Q(x) = sum r_i x_i^2."""
    return FiniteQuadraticModule(tuple((int(n), Fraction(r)) for n, r in factors))


def z2_module() -> FiniteQuadraticModule:
    """A = Z/2Z with Q(x) = x^2/4: signature 1, level 4 (the plus-space module)."""
    return fqm_create([(2, Fraction(1, 4))])


def rho_matrices(module: FiniteQuadraticModule, dual: bool = False):
    """Weil representation generator matrices (T, S) as numpy arrays.

    rho(T) e_a = e(Q(a)) e_a;
    rho(S) e_a = e(-sig/8)/sqrt(|A|) sum_b e(-(a,b)) e_b.
    The dual representation is the entrywise conjugate.
    """
    elems = module.elements
    n = len(elems)
    T = np.diag([_e(module.q(a)) for a in elems])
    S = np.empty((n, n), dtype=complex)
    pref = _e(Fraction(-module.signature, 8)) / math.sqrt(n)
    for j, a in enumerate(elems):
        for i, b in enumerate(elems):
            S[i, j] = pref * _e(-module.bilinear(a, b))
    if dual:
        return T.conj(), S.conj()
    return T, S


@dataclass
class VectorForm:
    """Finite family of q-series indexed by module elements.

    Component exponents n (on the grid 1/N, N the level) must satisfy the
    T-eigenvalue support law n/N = Q(a) mod 1, or -Q(a) for the dual.
    """
    module: FiniteQuadraticModule
    components: dict[tuple[int, ...], QSeries]
    weight: Fraction
    dual: bool = False

    def __post_init__(self):
        self.weight = Fraction(self.weight)
        N = self.module.level
        for a, series in self.components.items():
            if a not in self.module.elements:
                raise KeyError(f"{a} is not a module element")
            if series.denom != N:
                raise GridError(f"component {a} on grid 1/{series.denom}, "
                                f"level is {N}")
            target = (-self.module.q(a) if self.dual else self.module.q(a)) % 1
            for n in series.coeffs:
                if Fraction(n, N) % 1 != target:
                    raise ValueError(
                        f"exponent {n}/{N} in component {a} violates the "
                        f"support law (should be {target} mod 1)")

    def order(self) -> int:
        return min((s.order for s in self.components.values()), default=0)

    def component(self, a) -> QSeries:
        N = self.module.level
        return self.components.get(
            a, QSeries({}, self.order(), self.weight, N))

    def is_zero(self) -> bool:
        return all(s.is_zero() for s in self.components.values())


def scalarize(form: VectorForm) -> QSeries:
    """F(tau) = sum_a F_a(N tau): exponent n/N of a component becomes n."""
    out: dict[int, Fraction] = {}
    order = form.order()
    for series in form.components.values():
        for n, c in series.coeffs.items():
            if n < order:
                out[n] = out.get(n, Fraction(0)) + c
    return QSeries(out, order, form.weight, denom=1, label="scalarized")


def plus_space_support_ok(scalar: QSeries, dual: bool) -> bool:
    """Kohnen plus-space law for the Z/2Z module: c(n) = 0 unless n (resp. -n
    for the dual) is a square modulo 4."""
    squares = {0, 1}
    for n in scalar.coeffs:
        r = (-n if dual else n) % 4
        if r not in squares:
            return False
    return True
