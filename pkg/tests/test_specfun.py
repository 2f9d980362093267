"""Special-function suite: branch bookkeeping, identities, and oracles.

mpmath at 40 digits serves as the independent high-precision oracle
throughout; quadrature oracles are spelled out where the identity under test
is itself Gamma-based.
"""

import cmath
import math
from fractions import Fraction

import mpmath as mp
import pytest

from regpet.specfun import (BranchCutError, SpecValue, bessel_F,
                            bessel_F_array, beta_half, digamma, ein,
                            exp_integral, gamma_upper, w_k, w_k_real,
                            whittaker_Mn, whittaker_Wn)

mp.mp.dps = 40


def mp_E(r, z):
    zz = mp.mpc(z)
    if zz.imag == 0 and zz.real < 0:
        zz = mp.mpc(zz.real, mp.mpf("1e-50"))
    r = Fraction(r)
    return mp.expint(mp.mpf(r.numerator) / r.denominator, zz)


QUAD_POINTS = [2 + 2j, -2 + 2j, -2 - 2j, 2 - 2j, -3 + 1e-9j, 0.4 + 0.1j,
               -7 + 1e-12j, 11 - 5j]


def test_exp_integral_against_mpmath():
    for r in (-2, Fraction(-3, 2), -1, Fraction(-1, 2), Fraction(1, 2),
              1, Fraction(3, 2), 2, 3, 12):
        for z in QUAD_POINTS + [-0.4, -2.0, -12.566, 0.3, 8.1, 60.0]:
            got = exp_integral(r, z)
            ref = mp_E(Fraction(r), z)
            rel = abs(complex(got.value) - complex(ref)) / max(float(abs(ref)), 1e-300)
            assert rel < 5e-12, (r, z, rel)
            assert got.abs_err >= 0


def test_es_at_zero():
    assert exp_integral(2, 0).value == pytest.approx(1.0)  # 1/(s-1) at s=2
    assert exp_integral(3, 0).value == pytest.approx(0.5)
    with pytest.raises(ZeroDivisionError):
        exp_integral(Fraction(1, 2), 0)


def test_e1_negative_axis_closed_form():
    # E_1(-x) = Ein(-x) - log x - i pi - gamma on the upper-side branch
    for x in (0.3, 1.0, 4.0):
        lhs = complex(exp_integral(1, -x).value)
        rhs = complex(ein(-x).value) - math.log(x) - 1j * math.pi \
            - 0.5772156649015328606
        assert abs(lhs - rhs) < 1e-13 * max(1, abs(rhs))


def test_imaginary_part_laws():
    # Im E_{m+c}(-x) = -pi x^{m+c-1}/Gamma(m+c); Im E_{-m}(-x) = 0
    for r in (Fraction(1, 2), 1, Fraction(3, 2), 2, 3, Fraction(7, 2)):
        for x in (0.5, 2.0, 9.0, 40.0):
            im = complex(exp_integral(r, -x).value).imag
            expect = -math.pi * x ** (float(r) - 1) / math.gamma(float(r))
            assert abs(im - expect) <= 1e-12 * abs(expect)
    for m in (0, 1, 2, 3):
        for x in (0.5, 7.0):
            assert complex(exp_integral(-m, -x).value).imag == 0


def test_re_e_half_quadrature_oracle():
    # Re E_{1/2}(-x) = -2 int_0^1 e^{x t^2} dt
    for x in (0.3, 1.7, 6.0):
        got = complex(exp_integral(Fraction(1, 2), -x).value).real
        oracle = float(-2 * mp.quad(lambda t: mp.e ** (x * t * t), [0, 1]))
        assert abs(got - oracle) < 1e-12 * abs(oracle)


def test_recurrence_grid():
    for r2 in range(-4, 7):  # r = -2 .. 3 in half-integer steps
        r = Fraction(r2, 2)
        for z in QUAD_POINTS:
            e_r = complex(exp_integral(r, z).value)
            e_r1 = complex(exp_integral(r + 1, z).value)
            res = abs(float(r) * e_r1 + z * e_r - cmath.exp(-z))
            assert res < 1e-12 * (1 + abs(cmath.exp(-z))), (r, z, res)


def test_branch_difference_purely_imaginary():
    for r in (Fraction(1, 2), 1, 2, Fraction(5, 2)):
        for n in range(1, 6):
            x = 4 * math.pi * n
            lo = complex(exp_integral(r, -x, phi=3 * math.pi / 4).value)
            hi = complex(exp_integral(r, -x, phi=5 * math.pi / 4).value)
            assert lo.real == hi.real  # branch jump is purely imaginary
            if not (Fraction(r).denominator == 1 and r <= 0):
                assert abs(lo.imag - hi.imag) > 0


def test_branch_angle_validation():
    with pytest.raises(ValueError):
        exp_integral(1, 1.0, phi=0.3)
    # the cut ray itself is rejected
    phi = 3 * math.pi / 4
    z = cmath.rect(2.0, phi)
    with pytest.raises(BranchCutError):
        exp_integral(1, z, phi=phi)
    # phi = pi is the principal branch
    v1 = exp_integral(1, -2.0, phi=math.pi).value
    v2 = exp_integral(1, -2.0).value
    assert v1 == v2


def test_branch_consistency_with_series_off_axis():
    # the phi-branch agrees with the principal branch away from the wedge
    for phi in (2.0, 4.0):
        for z in (1 + 1j, 2 - 1j):
            a = complex(exp_integral(Fraction(3, 2), z, phi=phi).value)
            b = complex(exp_integral(Fraction(3, 2), z).value)
            assert a == b


def test_gamma_upper_basics():
    # Gamma(1, z) = e^{-z}
    for z in (0.7, 2 - 3j, -4 + 1j):
        got = complex(gamma_upper(1, z).value)
        assert abs(got - cmath.exp(-z)) < 1e-13 * abs(cmath.exp(-z))
    # Gamma(1/2, 1) = sqrt(pi) erfc(1)
    got = complex(gamma_upper(Fraction(1, 2), 1.0).value)
    oracle = float(mp.sqrt(mp.pi) * mp.erfc(1))
    assert abs(got - oracle) < 1e-13
    # recurrence Gamma(r+1, z) = r Gamma(r, z) + z^r e^{-z} at r = -1, x > 0
    for x in (0.5, 3.0):
        g0 = complex(gamma_upper(0, x).value)
        gm1 = complex(gamma_upper(-1, x).value)
        rhs = -1 * gm1 + x ** -1 * math.exp(-x)
        assert abs(g0 - rhs) < 1e-12 * max(1, abs(g0))
    with pytest.raises(ZeroDivisionError):
        gamma_upper(0, 0)


def test_gamma_positive_integer_closed_form():
    for n in (1, 2, 5):
        for z in (2.0, -3.0 + 0j, 1 + 2j):
            got = complex(gamma_upper(n, z).value)
            acc = sum(complex(z) ** j / math.factorial(j) for j in range(n))
            expect = math.factorial(n - 1) * cmath.exp(-complex(z)) * acc
            assert abs(got - expect) < 1e-12 * max(1.0, abs(expect))


def test_w_k_closed_forms():
    # W_0(x) = e^{2x} for all real x != 0
    for x in (-3.0, -0.5, 0.5, 3.0):
        assert abs(complex(w_k(0, x).value) - math.exp(2 * x)) \
            < 1e-13 * math.exp(2 * x)
    # dual-path agreement for x > 0 across the documented weights
    for k in (0, -1, -2, Fraction(-1, 2), Fraction(-3, 2), 2):
        for x in (0.25, 0.8, 2.5, 5.0):
            a = complex(w_k_real(k, x).value)
            b = complex(w_k(k, complex(x, 0)).value)
            assert abs(a - b) <= 1e-11 * max(abs(b), 1e-10), (k, x)
    # x < 0: real-definition path, real value, matching Re of the Gamma form
    for x in (-0.7, -2.0):
        v = complex(w_k(2, x).value)
        assert v.imag == 0
        g = complex(gamma_upper(-1, -2 * x).value)
        assert abs(v.real - g.real) < 1e-12 * max(1, abs(g.real))
        # complex input with zero imaginary part takes the same real path
        assert complex(w_k(2, complex(x, 0)).value) == v
    with pytest.raises(BranchCutError):
        w_k(2, 0.0)


def test_w_minus_half_identity():
    # W_{-1/2}(x>0) = Gamma(3/2, -2x) - sqrt(pi)/2 (purely imaginary value)
    for x in (0.5, 1.5):
        v = complex(w_k(Fraction(-1, 2), complex(x, 0)).value)
        g = complex(gamma_upper(Fraction(3, 2), -2 * x).value)
        assert abs(v - (g - math.sqrt(math.pi) / 2)) < 1e-12 * max(1, abs(v))
        assert abs(v.real) < 1e-12 * abs(v)


def test_bessel_F():
    # small-x limit F -> 0 like x log x
    for x in (1e-6, 1e-4):
        v = complex(bessel_F(x).value).real
        assert abs(v) < 40 * x * abs(math.log(x))
    # independent high-precision oracle across the crossover
    for x in (0.5, 1.0, 5.99, 6.01, 42.0):
        got = complex(bessel_F(x).value).real
        ref = float(mp.pi * mp.bessely(1, x) + 2 * mp.besselj(0, x) / x)
        assert abs(got - ref) < 1e-12 * max(abs(ref), 1e-3), x
    # x = 100 against the oracle at 1e-10 relative
    got = complex(bessel_F(100.0).value).real
    ref = float(mp.pi * mp.bessely(1, 100) + 2 * mp.besselj(0, 100) / 100)
    assert abs(got - ref) < 1e-10 * abs(ref)
    import numpy as np
    xs = np.array([0.3, 2.0, 7.0, 55.0])
    arr = bessel_F_array(xs)
    for x, v in zip(xs, arr):
        assert v == pytest.approx(complex(bessel_F(float(x)).value).real, rel=1e-13)
    with pytest.raises(ValueError):
        bessel_F(0.0)


def test_digamma():
    g = 0.5772156649015328606
    assert complex(digamma(1).value) == pytest.approx(-g, abs=1e-14)
    assert complex(digamma(2).value) == pytest.approx(1 - g, abs=1e-14)
    for z in (0.5 + 1j, 13.7, -2.3 + 0.4j, 0.25):
        got = complex(digamma(z).value)
        ref = complex(mp.digamma(z))
        assert abs(got - ref) < 1e-13 * max(1, abs(ref))
    # recurrence psi(z+1) = psi(z) + 1/z
    for z in (0.3 + 0.9j, 5.5):
        a = complex(digamma(z + 1).value)
        b = complex(digamma(z).value) + 1 / complex(z)
        assert abs(a - b) < 1e-14 * max(1, abs(a))
    with pytest.raises(ZeroDivisionError):
        digamma(-3)


def test_whittaker_identities():
    # e^{2 pi n v} M_n(v) = n W_2(2 pi n v) to 1e-8
    for n in (1, 2):
        for v in (0.5, 1.0, 2.0):
            lhs = math.exp(2 * math.pi * n * v) * complex(whittaker_Mn(n, v).value)
            rhs = n * complex(w_k_real(2, 2 * math.pi * n * v).value)
            assert abs(lhs - rhs) < 1e-8 * abs(rhs), (n, v)
    # M_1(1) finite, vs the 30-digit quadrature oracle (the value is +4.137;
    # at small v the profile turns negative, e.g. M_1(0.1) ~ -0.026)
    m1 = complex(whittaker_Mn(1, 1).value)
    with mp.workdps(30):
        a = 4 * mp.pi
        d = lambda t: (1 - a * t) * mp.e ** (-a * t)
        oracle = mp.e ** (2 * mp.pi) * (
            mp.quad(lambda t: mp.log(1 - t) * d(t), [0, 1])
            + mp.quad(lambda t: mp.log(t - 1) * d(t), [1, mp.inf]))
    assert abs(m1 - complex(oracle)) < 1e-9
    assert complex(whittaker_Mn(1, 0.1).value).real < 0
    # W-profile real for n < 0
    for n in (-1, -2):
        val = whittaker_Wn(n, 0.7).value
        assert complex(val).imag == 0
    with pytest.raises(ValueError):
        whittaker_Wn(1, 0.5)


def test_beta_half_quadrature_oracles():
    for x in (0.4, 0.7, 1.5):
        b = complex(beta_half(x, "beta").value)
        oracle = complex(mp.quad(lambda t: mp.e ** (-x * t) / mp.sqrt(t),
                                 [1, mp.inf]))
        assert abs(b - oracle) < 1e-12 * abs(oracle)
        bc = complex(beta_half(x, "beta_c").value)
        oracle_c = complex(mp.quad(lambda t: mp.e ** (2 * x * t) / mp.sqrt(t),
                                   [0, 1]))
        assert abs(bc - oracle_c) < 1e-12 * abs(oracle_c)
        # the W-identity: beta_c(-2x) = -(-2x)^{-1/2} W_{1/2}(x)
        w12 = complex(w_k(Fraction(1, 2), complex(x, 0)).value)
        ident = -cmath.exp(-0.5 * (math.log(2 * x) + 1j * math.pi)) * w12
        assert abs(bc - ident) < 1e-12
    # monotone decay to zero
    vals = [complex(beta_half(x, "beta").value).real for x in (1, 2, 4, 8)]
    assert all(a > b > 0 for a, b in zip(vals, vals[1:]))
    with pytest.raises(ValueError):
        beta_half(-1.0)
    with pytest.raises(ValueError):
        beta_half(1.0, "bogus")


def test_branch_matches_ode_continuation():
    """E_{r,phi} against a fully independent analytic continuation: E_r
    satisfies z E_r' = (r-1) E_r - e^{-z}, integrated (RK4) along a circular
    arc that respects the phi-cut.  Points with arg in (phi, pi] must be
    reached clockwise through the lower half-plane for the phi-branch."""
    phi = 3 * math.pi / 4

    def ode_continue(r, radius, theta_target, steps=240):
        rr = float(Fraction(r))
        with mp.workdps(25):
            y = mp.expint(rr, mp.mpf(radius))

            def f(th, y):
                z = radius * mp.e ** (1j * th)
                return ((rr - 1) * y - mp.e ** (-z)) / z * (1j * z)

            h = mp.mpf(theta_target) / steps
            th = mp.mpf(0)
            for _ in range(steps):
                k1 = f(th, y)
                k2 = f(th + h / 2, y + h * k1 / 2)
                k3 = f(th + h / 2, y + h * k2 / 2)
                k4 = f(th + h, y + h * k3)
                y += h * (k1 + 2 * k2 + 2 * k3 + k4) / 6
                th += h
            return complex(y)

    for r in (2, Fraction(1, 2), Fraction(5, 2)):
        for radius, theta in ((2.5, 2.9), (2.5, -2.0)):
            mine = complex(exp_integral(r, radius * cmath.exp(1j * theta),
                                        phi=phi).value)
            th_path = theta - 2 * math.pi if theta > phi else theta
            oracle = ode_continue(r, radius, th_path)
            assert abs(mine - oracle) < 1e-7 * max(abs(oracle), 1e-10), (r, theta)


def test_extended_mode_agrees_with_float():
    for r, z in ((2, -12.566), (Fraction(1, 2), 3 + 1j), (1, -0.5)):
        a = complex(exp_integral(r, z).value)
        b = complex(exp_integral(r, z, dps=35).value)
        assert abs(a - b) < 1e-11 * max(1, abs(b))
    a = complex(w_k(2, 1 + 2j).value)
    b = complex(w_k(2, 1 + 2j, dps=35).value)
    assert abs(a - b) < 1e-11 * max(1, abs(b))


def test_specvalue_rejects_nan():
    with pytest.raises(ArithmeticError):
        SpecValue(float("nan"), 0.0)
    with pytest.raises(ArithmeticError):
        SpecValue(1.0, float("inf"))
