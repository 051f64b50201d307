from fractions import Fraction as F

import pytest

from umbral import identities as ids
from umbral.algebra import Polynomial, X, binomial
from umbral.families import FamilyParams, hb
from umbral.identities import (
    IDENTITY_TAGS,
    Grid,
    OutOfStatedRange,
    check_identity,
    hb_four_ways,
    thm27_extended,
    verify_grid,
)

TINY = Grid(n_values=tuple(range(7)), nus=(F(1), F(-1, 3)), ks=(-1, 2), rs=(0, 3), lams=(F(1, 2),))


def test_fifteen_tags():
    assert len(IDENTITY_TAGS) == 15 == len(set(IDENTITY_TAGS))


def test_prop26_example():
    rep = check_identity("prop26", 2, FamilyParams(nu=1, k=1))
    assert rep.equal
    assert rep.lhs == rep.rhs == Polynomial([F(1, 6) - 1, 1, 1])


def test_lowering_example():
    rep = check_identity("lowering25", 1, FamilyParams(nu=F(5), k=-3))
    assert rep.equal
    assert rep.lhs == ids._stack([Polynomial([1])] * 3, 2)


def test_evaluation46_example():
    rep = check_identity("evaluation46", 0, FamilyParams(nu=F(1, 2), k=2))
    assert rep.equal
    assert rep.lhs == rep.rhs == Polynomial([1])


def test_frobenius_connection_example():
    rep = check_identity("frobenius_connection54", 1, FamilyParams(nu=1, k=1, r=1, lam=2))
    assert rep.equal
    assert rep.lhs == X + F(1, 2)


@pytest.mark.parametrize("tag,floor", [("rearranged40", 3), ("recurrence43", 2)])
def test_stated_floor(tag, floor):
    with pytest.raises(OutOfStatedRange):
        check_identity(tag, floor - 1, FamilyParams())
    assert check_identity(tag, floor, FamilyParams()).equal


def test_below_floor_is_informational():
    reps = verify_grid(["rearranged40"], TINY, informational=True)
    below = [r for r in reps if r.n < 3]
    assert below and all(r.informational for r in below)
    assert all(not r.informational and r.equal for r in reps if r.n >= 3)


def test_unknown_identity():
    with pytest.raises(KeyError):
        check_identity("thm99", 1, FamilyParams())


@pytest.mark.parametrize("tag", IDENTITY_TAGS)
def test_each_identity_on_tiny_grid(tag):
    reps = verify_grid([tag], TINY)
    assert reps
    bad = [r.describe() for r in reps if not r.equal]
    assert not bad


def test_report_invariants():
    rep = check_identity("thm29", 4, FamilyParams(nu=F(3), k=-2))
    assert rep.equal == (not rep.diff)
    assert rep.diff == rep.lhs - rep.rhs
    js = rep.to_json()
    assert js == {
        "identity": "thm29",
        "params": {"n": 4, "nu": "3", "k": -2},
        "equal": True,
        "diff_coefficients": [],
    }


def test_report_params_follow_axes():
    rep = check_identity("frobenius_connection54", 2, FamilyParams(nu=F(1, 2), k=0, r=2, lam=F(5, 7)))
    assert rep.to_json()["params"] == {"n": 2, "nu": "1/2", "k": 0, "r": 2, "lambda": "5/7"}


def test_empty_id_set():
    assert verify_grid([], "quick") == []


def test_grid_order_is_deterministic():
    a = [r.describe() for r in verify_grid(["thm30", "prop26"], TINY)]
    b = [r.describe() for r in verify_grid(["prop26", "thm30"], TINY)]
    assert a == b
    assert a[0].startswith("prop26")


def test_mutated_recipe_is_detected(monkeypatch):
    original = ids.IDENTITIES["thm30"]

    def corrupted(n, p):
        lhs, rhs = original.recipe(n, p)
        return lhs, rhs + Polynomial.monomial(min(n, 1), F(1, 1000))

    monkeypatch.setitem(ids.IDENTITIES, "thm30", ids.Identity("thm30", corrupted))
    rep = check_identity("thm30", 3, FamilyParams(nu=1, k=1))
    assert not rep.equal
    assert rep.diff == Polynomial([0, F(-1, 1000)])


# --- structural invariants ----------------------------------------------------------

@pytest.mark.parametrize("nu,k", [(F(1), 1), (F(-1), -3), (F(1, 2), 2), (F(3), 0)])
def test_thm27_sum_truncation(nu, k):
    for n in range(10):
        assert thm27_extended(n, nu, k, 5) == thm27_extended(n, nu, k, 0) == hb(n, nu, k)


def test_recurrence39_at_zero():
    for k in range(-2, 3):
        rep = check_identity("recurrence39", 0, FamilyParams(nu=F(7, 3), k=k))
        assert rep.equal and rep.lhs == X + F(1, 2) ** k


def test_bernoulli_connection_r0_collapses():
    # with r = 0 the coefficient of x^m is C(n, m) HB_{n-m}
    nu, k = F(1, 2), -1
    for n in range(10):
        rep = check_identity("bernoulli_connection50", n, FamilyParams(nu=nu, k=k, r=0))
        assert rep.equal
        expected = Polynomial([binomial(n, m) * hb(n - m, nu, k)[0] for m in range(n + 1)])
        assert rep.rhs == expected == ids._thm30_coeffs(n, nu, k)


def test_four_way_agreement_small():
    for n in range(12):
        a, b, c, d = hb_four_ways(n, F(-1), 3)
        assert a == b == c == d


def test_addition31_catches_wrong_shift():
    # sanity of the stacking: HB_n(x + 1) differs from HB_n(x) for n >= 1
    n = 3
    p = hb(n, 1, 1)
    assert ids._stack([p.shift(1)], n + 1) != ids._stack([p], n + 1)


def test_informational_skips_undefined_points():
    # recurrence43 needs HB_{n-2}, so n = 0, 1 have no meaning at all
    reps = verify_grid(["recurrence43"], TINY, informational=True)
    assert min(r.n for r in reps) == 2
    assert all(r.equal and not r.informational for r in reps)
