"""Acceptance suite: one test per criterion, each at exact tolerance.

Every test records a one-line verdict; the lines are printed in the pytest
terminal summary (and directly when this file is run as a script).
"""

import time

import pytest

from lowering.criteria import Kind, classify, enumerate_good_A
from lowering.nabla import OracleContext
from lowering.sweep import GroupResult, grid, identity_suite, run_grid, structural_checks, symbolic_suite
from lowering.weights import BranchingPair

VERDICTS: dict[int, str] = {}

GRID = grid((2, 3), (3, 4), max_first=3, max_size=6)


def verdict(number: int, ok: bool, text: str) -> None:
    line = f"ACCEPTANCE {number}: {'PASS' if ok else 'FAIL'} - {text}"
    VERDICTS[number] = line
    print(line)


@pytest.fixture(scope="module")
def grid_result() -> GroupResult:
    return run_grid(GRID, use_oracle=True, all_sequences_vs_operator=True)


def _counts(result, name):
    return result.checked[name], result.failed[name]


def test_1_three_way_agreement(grid_result):
    oracle = _counts(grid_result, "criteria_vs_oracle")
    closure = _counts(grid_result, "vanishing_vs_closure")
    words = _counts(grid_result, "closure_vs_operator")
    cases = len(grid_result.records)
    ok = oracle == (cases, 0) and closure == (cases, 0) and words[1] == 0 and cases > 0
    verdict(1, ok, f"{cases} cases, criteria/oracle disagreements={oracle[1]}, "
                   f"vanishing/closure disagreements={closure[1]}, "
                   f"closure vs operator word over {words[0]} sequences: {words[1]} disagreements")
    assert ok, grid_result.counterexamples[:3]


def test_2_lowered_vanishing_agreement(grid_result):
    checked, failed = _counts(grid_result, "lowered_vanishing")
    ok = checked > 0 and failed == 0
    verdict(2, ok, f"{checked} cases with j-1 in A, {failed} disagreements")
    assert ok, grid_result.counterexamples[:3]


def test_3_existence_consistency(grid_result):
    checked, failed = _counts(grid_result, "existence")
    checked_ii, failed_ii = _counts(grid_result, "existence_ii")
    ok = checked > 0 and failed == 0 and failed_ii == 0
    verdict(3, ok, f"{checked} (p,lambda,mu,i,j) existence checks, {failed} inconsistent; "
                   f"injection-family cross-check {checked_ii} checked, {failed_ii} inconsistent")
    assert ok, grid_result.counterexamples[:3]


def test_4_symbolic_suite():
    start = time.perf_counter()
    result = symbolic_suite(max_span=6, i_values=(1, 2, 3))
    elapsed = time.perf_counter() - start
    k_checked, k_failed = _counts(result, "k_def_eq_rec")
    h_checked, h_failed = _counts(result, "h_division_exact")
    ok = k_failed == 0 and h_failed == 0 and k_checked > 0 and elapsed <= 60
    verdict(4, ok, f"K definition==recursion {k_checked} checked, {k_failed} failed; "
                   f"exact H division {h_checked} checked, {h_failed} failed; {elapsed:.1f}s")
    assert ok


def test_5_identity_suite():
    groups = grid((2, 3), (3, 4), max_first=6, max_size=6)
    reports = identity_suite(groups)
    by_name = {r.name: r for r in reports}
    ok = all(r.ok and r.checked > 0 for r in reports) and len(reports) == 5
    ok = ok and by_name["scalar"].checked >= 100
    detail = "; ".join(f"{r.name} {r.checked} checked/{len(r.failures)} failed/{r.skipped} skipped"
                       for r in reports)
    verdict(5, ok, f"{len(groups)} models: {detail}")
    assert ok, [r.failures[:1] for r in reports if r.failures]


def test_6_structural_checks():
    result = GroupResult()
    for p, lam in grid((2, 3), (3, 4, 5), max_first=3, max_size=6):
        result.merge(structural_checks(p, lam))
    names = ("branching_dimension", "b_set_split", "pi_eq_pi_bar", "shift_invariance")
    ok = all(result.checked[name] > 0 and result.failed[name] == 0 for name in names)
    verdict(6, ok, ", ".join(f"{name} {result.checked[name]}/{result.failed[name]} failed"
                             for name in names))
    assert ok, result.counterexamples[:3]


GOLDEN = [
    (BranchingPair(2, (2, 1, 0), (1, 1)), 1, 3, (), Kind.NONZERO_NOT_HIGH_WEIGHT, None),
    (BranchingPair(2, (2, 1, 0), (1, 1)), 1, 3, (2,), Kind.ZERO, None),
    (BranchingPair(3, (4, 2, 0), (4, 1)), 1, 2, (), Kind.NONZERO_HIGH_WEIGHT, (3, 2)),
    (BranchingPair(2, (3, 2, 1, 0), (3, 2, 0)), 1, 3, (2,), Kind.NONZERO_HIGH_WEIGHT, (2, 2, 1)),
]


def test_7_golden_examples():
    misses = []
    for pair, i, j, A, kind, nu in GOLDEN:
        got = classify(pair, i, j, A)
        truth = OracleContext.build(pair).classify(i, j, A)
        for found in (got, truth):
            if found.kind is not kind or found.nu != nu:
                misses.append((pair, i, j, A, found))
    table = [(A, c.kind) for A, c in enumerate_good_A(GOLDEN[0][0], 1, 3)]
    if table != [((), Kind.NONZERO_NOT_HIGH_WEIGHT), ((2,), Kind.ZERO)]:
        misses.append(("table", table))
    ok = not misses
    verdict(7, ok, f"{len(GOLDEN)} golden cases checked against criteria and oracle, {len(misses)} mismatches")
    assert ok, misses


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-s"]))
