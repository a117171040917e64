from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from lowering import modp
from lowering.criteria import Kind, classify
from lowering.errors import InputError
from lowering.nabla import (
    OracleContext,
    apply_phi,
    apply_S,
    build_model,
    count_semistandard,
    find_f_mu,
    full_weight,
    normalize_polynomial,
    oracle_classify,
)
from lowering.seqgraph import all_sequences, make_seq, vanishes_thm1
from lowering.sweep import dominant_weights, interlacing_mus
from lowering.weights import BranchingPair


def weyl_dimension(lam):
    n = len(lam)
    value = Fraction(1)
    for a, b in combinations(range(n), 2):
        value *= Fraction(lam[a] - lam[b] + b - a, b - a)
    return int(value)


@pytest.fixture(scope="module")
def small():
    return OracleContext.build(BranchingPair(2, (2, 1, 0), (1, 1)))


def test_normalize():
    pair = BranchingPair(3, (2, 1, 0), (1, 1))
    assert normalize_polynomial(pair) == pair
    moved = normalize_polynomial(BranchingPair(3, (1, 0, -2), (0, -1)))
    assert moved.lam == (3, 2, 0) and moved.mu == (2, 1)


@pytest.mark.parametrize("lam,dim", [((1, 0), 2), ((1, 1, 0), 3), ((2, 1, 0), 8)])
def test_model_dimension_examples(lam, dim):
    assert build_model(2, lam).dimension == dim


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("lam", dominant_weights(3, 3, 5) + dominant_weights(4, 2, 4))
def test_model_dimension_matches_weyl_formula(p, lam):
    assert build_model(p, lam).dimension == weyl_dimension(lam) == count_semistandard(lam, len(lam))


def test_build_model_rejects_negative():
    with pytest.raises(InputError):
        build_model(2, (1, 0, -1))


def test_action_examples(small):
    model = small.model
    for v in model.basis_vectors():
        w = model.weight_of(v)
        for l in (1, 2):
            if w[l] == 0:
                assert not model.act_E(l, 1, v)
            twice = model.act_E(l, 1, model.act_E(l, 1, v))
            assert twice == modp.scale(model.act_E(l, 2, v), 2, 2)
        image = model.act_F(1, 3, v)
        if image:
            assert model.weight_of(image) == (w[0] - 1, w[1], w[2] + 1)


def test_F_chain(small):
    model, f = small.model, small.f
    assert model.act_F_chain(1, 3, (), f) == model.act_F(1, 3, f)
    assert model.act_F_chain(1, 3, (2,), f) == model.act_F(1, 2, model.act_F(2, 3, f))
    assert model.act_F_chain(2, 2, (), f) == f


@pytest.mark.parametrize("p,lam", [(2, (2, 1, 0)), (3, (3, 1, 0)), (2, (2, 1, 1, 0)), (3, (2, 2, 1, 0))])
def test_commutator_with_cartan(p, lam):
    model = build_model(p, lam)
    for v in model.basis_vectors():
        w = model.weight_of(v)
        for l in range(1, model.n):
            lhs = modp.add(model.act_E(l, 1, model.act_F(l, l + 1, v)),
                           modp.scale(model.act_F(l, l + 1, model.act_E(l, 1, v)), -1, p), p)
            assert lhs == modp.scale(v, w[l - 1] - w[l], p)


@pytest.mark.parametrize("p,lam", [(2, (2, 1, 0)), (3, (2, 1, 1, 0))])
def test_model_closed_under_action(p, lam):
    model = build_model(p, lam)
    for v in model.basis_vectors():
        for l in range(1, model.n):
            assert model.contains(model.act_E(l, 1, v))
            assert model.contains(model.act_F(l, l + 1, v))


def test_find_f_mu_examples(small):
    model = small.model
    assert len(model.high_weight_space(full_weight((2, 1, 0), (1, 1)))) == 1
    assert len(model.high_weight_space(full_weight((2, 1, 0), (2, 1)), levels=3)) == 1
    assert model.is_high_weight(find_f_mu(model, (2, 1)), levels=3)
    assert model.high_weight_space(full_weight((2, 1, 0), (0, 0))) == []


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("lam", [(3, 1, 0), (2, 2, 1, 0), (3, 2, 1, 0)])
def test_branching_dimensions(p, lam):
    model = build_model(p, lam)
    n = len(lam)
    for w in model.weights():
        mu = w[: n - 1]
        if list(mu) != sorted(mu, reverse=True):
            continue
        expected = 1 if all(lam[q] >= mu[q] >= lam[q + 1] for q in range(n - 1)) else 0
        assert len(model.high_weight_space(w)) == expected


def test_apply_S_examples(small):
    model = small.model
    ctx = OracleContext.build(BranchingPair(3, (4, 2, 0), (4, 1)))
    v = apply_S(ctx.model, 1, 2, (), ctx.f, (4, 1))
    assert v and ctx.model.weight_of(v) == (3, 2, 1)
    assert not apply_S(model, 1, 3, (2,), small.f, (1, 1))
    assert apply_S(model, 1, 3, (), small.f) == model.act_F(1, 3, small.f)
    with pytest.raises(InputError):
        apply_S(model, 1, 3, (), small.f, (2, 0))


def test_apply_phi_examples():
    ctx = OracleContext.build(BranchingPair(2, (3, 2, 1, 0), (3, 2, 0)))
    model, f = ctx.model, ctx.f
    assert apply_phi(model, make_seq((1, 3, 3, (2,))), f) == apply_S(model, 1, 3, (2,), f)
    assert apply_phi(model, make_seq((1, 2, 3, (2,))), f) == model.act_E(2, 1, apply_S(model, 1, 3, (2,), f))


def test_is_high_weight_examples():
    ctx = OracleContext.build(BranchingPair(3, (4, 2, 0), (3, 1)))
    assert ctx.model.is_high_weight(ctx.f)
    v = ctx.model.act_F(1, 2, ctx.f)
    assert v and not ctx.model.is_high_weight(v)


def test_oracle_examples(small):
    assert small.classify(1, 3, ()).kind is Kind.NONZERO_NOT_HIGH_WEIGHT
    assert small.classify(1, 3, (2,)).kind is Kind.ZERO
    ctx = OracleContext.build(BranchingPair(2, (3, 2, 1, 0), (3, 2, 0)))
    found = ctx.classify(1, 3, (2,))
    assert found.kind is Kind.NONZERO_HIGH_WEIGHT and found.nu == (2, 2, 1)


def test_scalar_freeness():
    ctx = OracleContext.build(BranchingPair(3, (3, 2, 1, 0), (2, 1, 1)))
    for i in range(1, 4):
        for j in range(i + 1, 5):
            base = ctx.classify(i, j, tuple(range(i + 1, j)))
            assert oracle_classify(ctx.model, ctx.pair.mu, i, j, tuple(range(i + 1, j)),
                                   modp.scale(ctx.f, 2, 3)) == base


@given(st.sampled_from([(p, lam, mu) for p in (2, 3) for lam in dominant_weights(4, 2, 4)
                        for mu in interlacing_mus(lam)]))
def test_closure_criterion_matches_operator(case):
    p, lam, mu = case
    ctx = OracleContext.build(BranchingPair(p, lam, mu))
    for x in all_sequences(4):
        assert vanishes_thm1(ctx.pair, x) == (not ctx.phi(x))


def test_dump_format(small):
    lines = small.model.dump().splitlines()
    assert lines[0] == "model p=2 lambda=2,1,0 dim=8"
    assert len(lines) == 9 and all(line.startswith("basis ") for line in lines[1:])


def test_criteria_agree_with_oracle_on_shifted_input():
    pair = BranchingPair(2, (1, 0, -1, -2), (1, -1, -2))
    ctx = OracleContext.build(pair)
    for i in range(1, 4):
        for j in range(i + 1, 5):
            for A in [(), tuple(range(i + 1, j))]:
                got = classify(pair, i, j, A)
                truth = ctx.classify(i, j, A)
                shift = ctx.pair.lam[0] - pair.lam[0]
                assert got.kind == truth.kind
                if got.nu is not None:
                    assert tuple(v + shift for v in got.nu) == truth.nu
