import pytest

from lowering.identities import (
    chains,
    check_splitting,
    check_commutation,
    check_scalar,
    check_transitions,
    check_product,
    check_closure,
    commutation_case,
    verify_identities,
)
from lowering.nabla import OracleContext
from lowering.seqgraph import make_seq
from lowering.weights import BranchingPair


@pytest.fixture(scope="module")
def ctx():
    return OracleContext.build(BranchingPair(3, (3, 2, 1, 0), (3, 1, 0)))


def test_commutation_case_selection():
    assert commutation_case(2, 1, 5, ()) == 1
    assert commutation_case(2, 1, 5, (2,)) == 2
    assert commutation_case(2, 1, 5, (3,)) == 3
    assert commutation_case(1, 1, 2, ()) == 4


def test_chains_are_ordered():
    got = chains(3, 2)
    assert ((1, 2),) in got and ((1, 2), (2, 3)) in got
    for chain in got:
        flat = [v for link in chain for v in link]
        assert flat == sorted(flat)
        assert all(a < b for a, b in chain)


def test_each_identity_holds(ctx):
    for report in verify_identities(ctx, m_max=2):
        assert report.ok, report.failures[:1]
        assert report.checked > 0
    assert check_closure(ctx).ok


def test_product_single_link_scalar(ctx):
    report = check_product(ctx, max_chains=1)
    assert report.ok and report.checked == len(chains(4, 1))


def test_scalar_reports_skips_when_f_lambda_vanishes(ctx, monkeypatch):
    monkeypatch.setattr(type(ctx), "f_lambda", lambda self: {})
    xs = [make_seq((1, 2, 2, ()))]
    report = check_scalar(ctx, xs)
    assert report.skipped == 1 and report.checked == 0


def test_failures_are_reported(ctx, monkeypatch):
    from lowering import identities

    true_k = identities.k_of_seq
    monkeypatch.setattr(identities, "k_of_seq", lambda pair, x: (true_k(pair, x) + 1) % pair.p)
    xs = [make_seq((1, 2, 2, ())), make_seq((1, 4, 4, (2,))), make_seq((2, 3, 3, ()))]
    report = check_scalar(ctx, xs)
    assert report.checked == 3 and len(report.failures) == 3 and not report.ok
    assert report.failures[0]["x"] == "(1,2,2,{})"


def test_small_model_identities():
    small = OracleContext.build(BranchingPair(2, (2, 1, 0), (1, 1)))
    assert check_commutation(small.model).ok
    assert check_transitions(small).ok
    assert check_splitting(small).ok
    assert "pass" in check_commutation(small.model).line()
