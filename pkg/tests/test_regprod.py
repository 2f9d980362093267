"""The regularized inner product: quadrature route, branch values, pairing."""

import math
from fractions import Fraction

import numpy as np
import pytest

from regpet.qseries import QSeries, GridError, OrderError, delta
from regpet.regprod import (ProductReport, branch_value, product_route_B_scalar,
                            product_route_B_vector, product_route_C)
from regpet.weil import VectorForm, z2_module


def direct_petersson_norm_delta(order=40, nodes=48, height=5.0):
    """Independent 2D oracle: the classical convergent Petersson integral of
    the discriminant form over the fundamental domain."""
    d = delta(order)
    x, w = np.polynomial.legendre.leggauss(nodes)
    total = 0.0
    for ui, wu in zip(x, w):
        u = 0.5 * ui
        vlo = math.sqrt(1 - u * u)
        # curved part
        for vi, wv in zip(x, w):
            v = 0.5 * ((1 + vlo) + (1 - vlo) * vi)
            dv = 0.5 * (1 - vlo)
            fv = d.eval(complex(u, v))
            total += 0.5 * wu * dv * wv * abs(fv) ** 2 * v ** 10
        # rectangle up to the truncation height
        for vi, wv in zip(x, w):
            v = 0.5 * ((1 + height) + (height - 1) * vi)
            dv = 0.5 * (height - 1)
            fv = d.eval(complex(u, v))
            total += 0.5 * wu * dv * wv * abs(fv) ** 2 * v ** 10
    return total


def test_cusp_form_matches_classical_integral():
    # all regularization terms vanish structurally for a cusp form
    d = delta(40)
    rb = product_route_B_scalar(d, d, 12)
    assert rb.parameters["constant_term"] == 0.0
    assert rb.parameters["principal_term"] == 0.0
    oracle = direct_petersson_norm_delta()
    assert rb.value.real == pytest.approx(oracle, rel=1e-8)
    assert abs(rb.value.imag) == 0.0


def test_degenerate_direction_mixed_pair():
    # cusp form against a weakly holomorphic form with no principal part:
    # correction terms vanish structurally and route B is the convergent
    # classical integral
    from regpet.qseries import eisenstein
    d = delta(40)
    g = eisenstein(4, 40) ** 3  # holomorphic, constant term 1, weight 12
    rb = product_route_B_scalar(d, g, 12)
    assert rb.parameters["constant_term"] == 0.0  # c_Delta(0) = 0
    assert rb.parameters["principal_term"] == 0.0
    import numpy as np
    x, w = np.polynomial.legendre.leggauss(48)
    total = 0.0
    for ui, wu in zip(x, w):
        u = 0.5 * ui
        vlo = math.sqrt(1 - u * u)
        for seg_lo, seg_hi in ((vlo, 1.0), (1.0, 6.0)):
            for vi, wv in zip(x, w):
                v = 0.5 * ((seg_lo + seg_hi) + (seg_hi - seg_lo) * vi)
                dv = 0.5 * (seg_hi - seg_lo)
                tau = complex(u, v)
                total += 0.5 * wu * dv * wv \
                    * (d.eval(tau) * g.eval(tau).conjugate()).real * v ** 10
    assert rb.value.real == pytest.approx(total, rel=1e-8)


def test_self_products_real(f1, f2):
    for f in (f1, f2):
        rb = product_route_B_scalar(f, f, 0)
        assert rb.value.imag == 0.0


def test_hermitian_symmetry(f1, f2):
    r12 = product_route_B_scalar(f1, f2, 0)
    r21 = product_route_B_scalar(f2, f1, 0)
    assert abs(r12.value - r21.value.conjugate()) < 1e-10
    assert isinstance(r12, ProductReport)
    assert r12.err < 1e-4


def test_sesquilinearity(f1, f2):
    r12 = product_route_B_scalar(f1, f2, 0).value
    r22 = product_route_B_scalar(f2, f2, 0).value
    combo = product_route_B_scalar(f1 * 3 + f2, f2, 0)
    assert abs(combo.value - (3 * r12 + r22)) <= 10 * combo.err + 1e-6


def test_weight_mismatch_rejected(f1):
    with pytest.raises(ValueError):
        product_route_B_scalar(f1, delta(20), 0)
    with pytest.raises(GridError):
        product_route_B_scalar(f1, QSeries({0: 1}, 4, 0, denom=4), 0)


def test_k1_constant_rule():
    # synthetic weight-1 series: the constant-term product contributes nothing
    f = QSeries({0: 2, 1: 1}, 24, weight=1)
    rb = product_route_B_scalar(f, f, 1)
    assert rb.parameters["constant_term"] == 0.0
    g = QSeries({0: 2, 1: 1}, 24, weight=0)
    rb0 = product_route_B_scalar(g, g, 0)
    assert rb0.parameters["constant_term"] == pytest.approx(4.0)


def test_branch_values(f1, f2):
    b1 = branch_value(f1, f2, 0, 3 * math.pi / 4)
    b2 = branch_value(f1, f2, 0, 5 * math.pi / 4)
    assert abs(b1 - b2) < 1e-10
    rb = product_route_B_scalar(f1, f2, 0)
    assert abs(b1.real - rb.value.real) < 1e-10
    with pytest.raises(ValueError):
        branch_value(f1, f2, 0, math.pi)


def test_vector_route(g1):
    rb = product_route_B_vector(g1, g1)
    assert rb.value.imag == 0.0
    # constant-term rule: 1/(1 - 3/2) = -2 against c(0) = -2 on e_0
    assert rb.parameters["constant_term"] == pytest.approx(4 * -2.0)
    zero = VectorForm(z2_module(), {}, Fraction(3, 2), dual=True)
    rbz = product_route_B_vector(zero, zero)
    assert rbz.value == 0


def test_vector_zero_and_dual_mismatch(g1):
    zero = VectorForm(z2_module(), {}, Fraction(3, 2), dual=False)
    with pytest.raises(ValueError):
        product_route_B_vector(g1, zero)


def test_route_C_examples(f1, g1):
    # single surviving cross term
    val = product_route_C(g1, {Fraction(1, 4): 2.5})
    assert val == pytest.approx(2.5)  # c(-1/4) = 1 pairs with it
    # zero table
    assert product_route_C(f1, {}) == 0
    # weight-0/weight-2 shape: {f_m, G} = -4 pi L_{n,m} for the table entry
    ell = -3.25
    val = product_route_C(f1, {1: -4 * math.pi * ell})
    assert val == pytest.approx(-4 * math.pi * ell)
    # coverage gap: G+ has a principal part deeper than f is known
    with pytest.raises(OrderError):
        product_route_C(f1, {-100: 1.0})


def test_route_C_matches_route_B(f1, f2, g1):
    # the pairing route against the quadrature route, with the harmonic
    # coefficient taken from the Kloosterman series
    from regpet.kloosterman import dit_coefficient
    est = dit_coefficient(2, 1, 50_000)
    rc = product_route_C(f1, {1: -4 * math.pi * est.value})
    rb = product_route_B_scalar(f1, f2, 0)
    assert abs(rc.real - rb.value.real) / abs(rb.value.real) < 1e-2
