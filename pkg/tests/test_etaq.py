import json

import pytest

from oracles import euler_product, partition_counts, poly_mul, triple_product_sum
from tspp5.errors import InternalIdentityFailure
from tspp5 import etaq
from tspp5.etaq import G, PHI_NEG, X, XI, EtaQuotientSpec, euler_e, expand, named_series, phi_neg, triple_product_m


def stretch(c, t, n):
    out = [0] * n
    for k, v in enumerate(c):
        if t * k < n:
            out[t * k] = v
    return out


def test_euler_first_terms():
    got = euler_e(16).coefficients(0, 16)
    assert got == [1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1, 0, 0, -1]


def test_euler_matches_literal_product():
    assert euler_e(300).coefficients(0, 300) == euler_product(300)


def test_euler_rejects_bad_prec():
    with pytest.raises(ValueError):
        euler_e(0)


def test_pentagonal_terms_sorted_and_bounded():
    exps = [e for e, _ in etaq.pentagonal_terms(1000)]
    assert exps == sorted(exps) and exps[-1] < 1000


def test_g_series_by_oracle():
    n = 120
    e2_cubed = stretch(poly_mul(poly_mul(euler_product(n), euler_product(n), n), euler_product(n), n), 2, n)
    want = poly_mul(e2_cubed, partition_counts(n, colors=2), n)
    assert expand(G, n).coefficients(0, n) == want
    # psi(q) times distinct-part partition counts gives the same head by hand
    assert want[:9] == [1, 2, 2, 4, 5, 6, 10, 12, 15]


def test_x_head():
    # X = E(q)^-4 E(q^2)^2 E(q^5)^4 E(q^10)^-2 computed by the oracle
    n = 60
    inv = partition_counts(n)
    e1_inv4 = poly_mul(poly_mul(inv, inv, n), poly_mul(inv, inv, n), n)
    e2 = stretch(euler_product(n), 2, n)
    e5 = stretch(euler_product(n), 5, n)
    p10 = stretch(partition_counts(n), 10, n)
    want = poly_mul(poly_mul(e1_inv4, poly_mul(e2, e2, n), n), poly_mul(poly_mul(e5, e5, n), poly_mul(e5, e5, n), n), n)
    want = poly_mul(want, poly_mul(p10, p10, n), n)
    got = expand(X, n)
    assert got.coefficients(0, n) == want
    assert want[:2] == [1, 4]


def test_xi_window_and_leading_term():
    f = expand(XI, 50)
    assert f.min_exp == -4 and f.prec == 50
    assert f.coefficient_at(-4) == 1


def test_expand_rejects_prec_below_prefix():
    with pytest.raises(ValueError):
        expand(XI, -4)


def test_phi_neg_theta_sum():
    got = phi_neg(30).coefficients(0, 30)
    want = [0] * 30
    want[0] = 1
    for k in range(1, 6):
        want[k * k] = 2 * (-1) ** k
    assert got == want
    assert phi_neg(30) == expand(PHI_NEG, 30)


def test_phi_neg_identity_failure_is_reported(monkeypatch):
    bogus = EtaQuotientSpec(((1, 2),))
    monkeypatch.setattr(etaq, "PHI_NEG", bogus)
    with pytest.raises(InternalIdentityFailure):
        phi_neg(20)


@pytest.mark.parametrize("which", [1, 2])
def test_triple_products_match_jacobi(which):
    assert triple_product_m(which, 400).coefficients(0, 400) == triple_product_sum(which, 400)


def test_m2_short_truncation():
    assert triple_product_m(2, 10).coefficients(0, 10) == [1, -1, 0, 0, 0, 0, 0, 0, 0, -1]


def test_triple_product_modular():
    exact = triple_product_m(1, 200)
    assert triple_product_m(1, 200, 25) == exact.reduce_mod(25)


def test_expand_modular_matches_exact():
    assert expand(X, 300, 625) == expand(X, 300).reduce_mod(625)


@pytest.mark.parametrize("factors", [((2, 1), (1, 1)), ((1, 1), (1, 2)), ((1, 0),), ((0, 1),)])
def test_spec_validation(factors):
    with pytest.raises(ValueError):
        EtaQuotientSpec(factors)


@pytest.mark.parametrize("spec", [XI, X, G, PHI_NEG])
def test_spec_json_round_trip(spec):
    data = spec.to_json()
    assert EtaQuotientSpec.from_json(data) == spec
    assert EtaQuotientSpec.from_json(json.dumps(data)) == spec


def test_named_series():
    assert named_series("M1", 50) == triple_product_m(1, 50)
    assert named_series("g", 50) == expand(G, 50)
    with pytest.raises(KeyError):
        named_series("nope", 10)
