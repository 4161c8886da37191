from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import rational_points, units
from vstlab.irreducibility import (
    burnside_dimension,
    decide,
    eta1_irreducible_predicate,
    eta2_irreducible_predicate,
    invariant_vector_check,
)
from vstlab.linalg import RingMatrix, identity, mat_mul, nullspace
from vstlab.reps import Eta2PrimeParams, conjugate_diag, rep_eta1_prime, rep_eta2_prime, specialize_rep
from vstlab.ring import GaussianRational, RingError, lp_eval, parse_laurent

G = GaussianRational
ONE = G(1)


def span_oracle(mats, length):
    # rank of all products of at most `length` generators
    n = mats[0].n
    layer = {identity(n, "gaussian")}
    seen = set(layer)
    for _ in range(length):
        layer = {mat_mul(a, g) for a in layer for g in mats} - seen
        seen |= layer
    rows = [[x for r in m.rows for x in r] for m in seen]
    return n * n - len(nullspace(rows, n * n))


def spec_mats(rep, t0):
    return specialize_rep(rep, t0).matrices()


def test_scalars_only():
    assert burnside_dimension([identity(3, "gaussian")]) == 1


def test_dimension_matches_product_oracle():
    for v, t0 in (("1", 3), ("t", 3), ("-1", Fraction(1, 2))):
        mats = spec_mats(rep_eta1_prime(3, v), t0)
        assert burnside_dimension(mats) == span_oracle(mats, 4)


def test_examples_eta1_prime():
    mats = spec_mats(rep_eta1_prime(3, "1"), 3)
    assert burnside_dimension(mats) < 9
    assert invariant_vector_check(mats, [ONE] * 3)
    assert burnside_dimension(spec_mats(rep_eta1_prime(3, "t"), 3)) == 9
    e1 = [ONE, G(0), G(0)]
    assert not invariant_vector_check(spec_mats(rep_eta1_prime(3, "t"), 2), e1)
    with pytest.raises(ValueError):
        invariant_vector_check(mats, [G(0)] * 3)


def test_decide_examples():
    r = decide(rep_eta1_prime(4, "1"), 5)
    assert r.verdict == "reducible" and r.witness == [ONE] * 4 and r.predicate == "reducible"
    r = decide(rep_eta1_prime(4, "t"), 3)
    assert r.verdict == "irreducible" and r.algebra_dimension == 16 and r.predicate == "irreducible"
    r = decide(rep_eta2_prime(3, Eta2PrimeParams("t", "1", "t", "t^2")), 2)
    assert r.predicate == "irreducible"
    assert r.to_json()["verdict"] in ("irreducible", "reducible")
    with pytest.raises(RingError):
        decide(rep_eta1_prime(3, "t"), 0)


def test_report_json_shape():
    r = decide(rep_eta1_prime(4, "t"), "3")
    assert r.to_json() == {
        "n": 4,
        "t0": "3",
        "algebra_dimension": 16,
        "verdict": "irreducible",
        "witness": None,
        "predicate": "irreducible",
    }


def test_predicates():
    P = parse_laurent
    assert not eta1_irreducible_predicate(P("1"))
    assert eta1_irreducible_predicate(P("-1"))
    assert eta1_irreducible_predicate(P("t"))
    assert not eta2_irreducible_predicate(Eta2PrimeParams("1", "0", "1", "1"))
    assert eta2_irreducible_predicate(Eta2PrimeParams("t", "5", "2", "1"))
    assert not eta2_irreducible_predicate(Eta2PrimeParams("t", "1", "0", "t"))


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([3, 4]), units, rational_points(), st.lists(units, min_size=4, max_size=4))
def test_dimension_is_conjugation_invariant(n, v, t0, d):
    rep = rep_eta1_prime(n, v)
    a = burnside_dimension(spec_mats(rep, t0))
    b = burnside_dimension(spec_mats(conjugate_diag(rep, d[:n]), t0))
    assert a == b


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([3, 4, 5]), rational_points())
def test_v_equal_one_gives_all_ones_witness(n, t0):
    r = decide(rep_eta1_prime(n, "1"), t0)
    assert r.verdict == "reducible" and r.witness == [ONE] * n
    assert invariant_vector_check(spec_mats(rep_eta1_prime(n, "1"), t0), r.witness)


# tuples with f = v, w + f^2 y / v = 1, v y + w = 1, i.e. f = v and w = 1 - v y
degenerate_eta2 = st.builds(
    lambda v, y: Eta2PrimeParams(v, 1 - v * y, y, v),
    units,
    st.sampled_from(["0", "1", "-1", "2", "t", "t - 1"]).map(parse_laurent),
)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([3, 4]), degenerate_eta2, rational_points())
def test_eta2_weighted_witness(n, p, t0):
    assert not eta2_irreducible_predicate(p)
    rep = rep_eta2_prime(n, p)
    v0 = lp_eval(p.v, t0)
    x = [v0 ** (n - 1 - k) for k in range(n)]
    assert invariant_vector_check(spec_mats(rep, t0), x)
    r = decide(rep, t0)
    assert r.verdict == "reducible" and invariant_vector_check(spec_mats(rep, t0), r.witness)


@pytest.mark.parametrize("n", [3, 4])
@pytest.mark.parametrize("v", ["-1", "t", "t^-1", "-t^2"])
def test_generic_direction_eta1(n, v, record_property):
    mismatches = []
    for t0 in (2, 3, Fraction(1, 2), 5):
        r = decide(rep_eta1_prime(n, v), t0)
        if r.algebra_dimension != n * n:
            mismatches.append((str(t0), r.algebra_dimension))
    record_property("specialization_mismatches", mismatches)
    # special points may degenerate; at least one sampled point must be generic
    assert len(mismatches) < 4
