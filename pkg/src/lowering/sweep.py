"""Grid sweeps: criteria against the module oracle, the closure test and each
other, plus the symbolic and structural suites.

Work is split by (p, lam); each group builds its own model, so workers share
nothing but their immutable arguments. Results come back in grid order.
"""

from __future__ import annotations

import logging
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

from . import criteria, modp
from .criteria import Kind
from .errors import ConsistencyError
from .identities import IdentityReport, check_closure, verify_identities
from .nabla import OracleContext, build_model, full_weight, oracle_classify
from .polynomials import PolyRing, h_poly, k_poly_def, k_poly_rec, open_interval, subsets
from .records import ResultRecord
from .seqgraph import all_sequences, make_seq, vanishes_thm1
from .weights import BranchingPair, b_set, interlaces, mu_b_set

log = logging.getLogger(__name__)


def dominant_weights(n: int, max_first: int, max_size: int) -> list[tuple[int, ...]]:
    """Partitions with ``lam_n = 0``, ``lam_1 <= max_first``, ``|lam| <= max_size``."""
    out = []
    for head in product(range(max_first + 1), repeat=n - 1):
        lam = (*head, 0)
        if all(lam[q] >= lam[q + 1] for q in range(n - 1)) and sum(lam) <= max_size:
            out.append(lam)
    out.sort(key=lambda lam: (sum(lam), tuple(-v for v in lam)))
    return out


def interlacing_mus(lam: Sequence[int]) -> list[tuple[int, ...]]:
    ranges = [range(lam[q], lam[q + 1] - 1, -1) for q in range(len(lam) - 1)]
    return [tuple(mu) for mu in product(*ranges)]


def grid(ps: Iterable[int], ns: Iterable[int], max_first: int = 3,
         max_size: int = 6) -> list[tuple[int, tuple[int, ...]]]:
    return [(p, lam) for p in ps for n in ns for lam in dominant_weights(n, max_first, max_size)]


@dataclass
class GroupResult:
    """Outcome for one (p, lam) group."""

    records: list[ResultRecord] = field(default_factory=list)
    checked: Counter = field(default_factory=Counter)
    failed: Counter = field(default_factory=Counter)
    classes: Counter = field(default_factory=Counter)
    counterexamples: list[dict] = field(default_factory=list)

    def note(self, name: str, ok: bool, **detail) -> bool:
        self.checked[name] += 1
        if not ok:
            self.failed[name] += 1
            self.counterexamples.append({"check": name, **detail})
        return ok

    def merge(self, other: "GroupResult") -> "GroupResult":
        self.records.extend(other.records)
        self.checked.update(other.checked)
        self.failed.update(other.failed)
        self.classes.update(other.classes)
        self.counterexamples.extend(other.counterexamples)
        return self

    @property
    def disagreements(self) -> int:
        return sum(self.failed.values())

    def summary(self) -> dict:
        return {
            "cases": len(self.records),
            "classes": dict(sorted(self.classes.items())),
            "checks": {
                name: {"checked": self.checked[name], "failed": self.failed[name]}
                for name in sorted(self.checked)
            },
            "disagreements": self.disagreements,
        }


def _pair_detail(pair, **extra):
    return {"p": pair.p, "lambda": list(pair.lam), "mu": list(pair.mu), **extra}


def check_pair(pair: BranchingPair, ctx: OracleContext | None, result: GroupResult,
               all_sequences_vs_operator: bool = False) -> None:
    """Every cross-check for one branching pair. ``ctx=None`` skips the oracle."""
    n, p = pair.n, pair.p
    for i in range(1, n):
        for j in range(i + 1, n + 1):
            table = []
            for A in subsets(open_interval(i, j)):
                found = criteria.classify(pair, i, j, A)
                table.append((A, found))
                result.classes[found.kind.value] += 1
                checks: dict[str, bool] = {}
                detail = _pair_detail(pair, i=i, j=j, A=list(A))
                x = make_seq((i, j, j, A))
                checks["closure"] = result.note(
                    "vanishing_vs_closure", criteria.thm2_vanishes(pair, i, j, A) == vanishes_thm1(pair, x),
                    **detail)
                if ctx is not None:
                    truth = ctx.classify(i, j, A)
                    checks["oracle"] = result.note(
                        "criteria_vs_oracle", (truth.kind, truth.nu) == (found.kind, found.nu),
                        criteria=str(found.kind), oracle=str(truth.kind), **detail)
                    if p > 2:
                        rescaled = oracle_classify(ctx.model, pair.mu, i, j, A,
                                                   modp.scale(ctx.f, 2, p))
                        checks["scalar_free"] = result.note(
                            "scalar_freeness", rescaled == truth, **detail)
                if i < j - 1 < n - 1 and j - 1 in A:
                    y = make_seq((i, j - 1, j, A))
                    by_criterion = criteria.thm4_vanishes(pair, i, j, A)
                    by_closure = vanishes_thm1(pair, y)
                    ok = by_criterion == by_closure
                    if ctx is not None:
                        ok = ok and by_closure == (not ctx.phi(y))
                    checks["lowered"] = result.note("lowered_vanishing", ok, **detail)
                result.records.append(
                    ResultRecord.from_classification(pair, i, j, A, found, checks=checks))
            if j == i + 1 == n:
                continue
            try:
                good = criteria.exists(pair, i, j)
            except ConsistencyError as exc:
                # the constructed witness failed to re-classify
                result.note("existence", False, error=str(exc), **_pair_detail(pair, i=i, j=j))
                continue
            any_hw = any(c.kind is Kind.NONZERO_HIGH_WEIGHT for _, c in table)
            ok = (good is not None) == any_hw
            if good is not None:
                ok = ok and criteria.classify(pair, i, j, good.A).kind is Kind.NONZERO_HIGH_WEIGHT
            result.note("existence", ok, **_pair_detail(pair, i=i, j=j))
            if i < j - 1 < n - 1:
                result.note("existence_ii", criteria.exists_by_component_families(pair, i, j) == (good is not None),
                            **_pair_detail(pair, i=i, j=j))
    if ctx is not None and all_sequences_vs_operator:
        report = check_closure(ctx)
        result.checked["closure_vs_operator"] += report.checked
        result.failed["closure_vs_operator"] += len(report.failures)
        result.counterexamples.extend(report.failures)


def check_group(args: tuple) -> GroupResult:
    """Worker entry point: ``(p, lam, use_oracle, all_sequences_vs_operator)``."""
    p, lam, use_oracle, all_sequences_vs_operator = args
    result = GroupResult()
    model = build_model(p, lam) if use_oracle else None
    for mu in interlacing_mus(lam):
        pair = BranchingPair(p, lam, mu)
        ctx = OracleContext.build(pair, model) if use_oracle else None
        check_pair(pair, ctx, result, all_sequences_vs_operator)
    log.debug("group p=%s lam=%s: %d cases", p, lam, len(result.records))
    return result


def run_grid(groups: Sequence[tuple[int, tuple[int, ...]]], use_oracle: bool = True,
             all_sequences_vs_operator: bool = False, workers: int = 1) -> GroupResult:
    jobs = [(p, lam, use_oracle, all_sequences_vs_operator) for p, lam in groups]
    total = GroupResult()
    if workers <= 1:
        parts = map(check_group, jobs)
        for part in parts:
            total.merge(part)
        return total
    with ProcessPoolExecutor(max_workers=min(workers, os.cpu_count() or 1)) as pool:
        for part in pool.map(check_group, jobs):
            total.merge(part)
    return total


def symbolic_suite(max_span: int = 6, i_values: Iterable[int] = (1, 2)) -> GroupResult:
    """K by definition equals K by recursion; every H divides exactly."""
    result = GroupResult()
    for i in i_values:
        for j in range(i + 1, i + max_span + 1):
            ring = PolyRing(j)
            for A in subsets(open_interval(i, j)):
                detail = {"i": i, "j": j, "A": list(A)}
                result.note("k_def_eq_rec", k_poly_def(i, j, A, ring) == k_poly_rec(i, j, A, ring),
                            **detail)
                for B in subsets(open_interval(i, j)):
                    try:
                        h_poly(i, j, A, B, ring)
                        ok = True
                    except ConsistencyError:
                        ok = False
                    result.note("h_division_exact", ok, B=list(B), **detail)
    return result


def structural_checks(p: int, lam: Sequence[int], shifts: Sequence[int] = (1, 2, 3)) -> GroupResult:
    """Branching dimensions, the B-set splitting identity, pi versus pi_bar,
    and invariance under determinant twists."""
    result = GroupResult()
    lam = tuple(lam)
    n = len(lam)
    model = build_model(p, lam)
    for mu in product(*[range(lam[-1], lam[0] + 1)] * (n - 1)):
        if list(mu) != sorted(mu, reverse=True):
            continue
        dim = len(model.high_weight_space(full_weight(lam, mu)))
        result.note("branching_dimension", dim == (1 if interlaces(lam, mu) else 0),
                    p=p, **{"lambda": list(lam)}, mu=list(mu), dim=dim)
    for mu in interlacing_mus(lam):
        pair = BranchingPair(p, lam, mu)
        for i in range(1, n):
            for j in range(i, n):
                for k in range(1, j + 1):
                    lhs = set(b_set(pair, i, j, k))
                    rhs = set(b_set(pair, i, max(i, k))) | {
                        a for a in mu_b_set(pair, i, j) if k <= a < j}
                    result.note("b_set_split", lhs == rhs, **_pair_detail(pair, i=i, j=j, k=k))
        for i in range(1, n):
            for j in range(i + 2, n):
                for M in subsets(open_interval(i, j - 1)):
                    N = len(criteria.components(M))
                    for v in range(1, N + 1):
                        result.note("pi_eq_pi_bar",
                                    criteria.pi(pair, i, j, M, v) == criteria.pi_bar(pair, i, j, M, v),
                                    **_pair_detail(pair, i=i, j=j, M=list(M), v=v))
        for c in shifts:
            moved = pair.shifted(c)
            for i in range(1, n):
                for j in range(i + 1, n + 1):
                    for A in subsets(open_interval(i, j)):
                        a = criteria.classify(pair, i, j, A)
                        b = criteria.classify(moved, i, j, A)
                        same = a.kind == b.kind and (
                            a.nu is None or tuple(v + c for v in a.nu) == b.nu)
                        result.note("shift_invariance", same, **_pair_detail(pair, i=i, j=j, A=list(A), c=c))
    return result


def identity_group(args: tuple) -> list[IdentityReport]:
    """Worker entry point: ``(p, lam, m_max)``; the commutation check runs once per model."""
    p, lam, m_max = args
    model = build_model(p, lam)
    out: list[IdentityReport] = []
    for mu in interlacing_mus(lam):
        ctx = OracleContext.build(BranchingPair(p, lam, mu), model)
        reports = verify_identities(ctx, m_max=m_max, with_commutation=not out)
        if not out:
            out = reports
        else:
            for total, r in zip(out[1:], reports):
                total.merge(r)
    return out


def identity_suite(groups: Sequence[tuple[int, tuple[int, ...]]],
                   m_max: int | None = None, workers: int = 1) -> list[IdentityReport]:
    """Operator identities over every interlacing mu of each (p, lam)."""
    jobs = [(p, lam, m_max) for p, lam in groups]
    if workers <= 1:
        parts = list(map(identity_group, jobs))
    else:
        with ProcessPoolExecutor(max_workers=min(workers, os.cpu_count() or 1)) as pool:
            parts = list(pool.map(identity_group, jobs))
    totals = [IdentityReport(r.name) for r in parts[0]] if parts else []
    for part in parts:
        for total, r in zip(totals, part):
            total.merge(r)
    return totals
