"""Operator identities checked literally on the brute-force module model.

Each ``check_*`` function returns an :class:`IdentityReport`; a failure entry
is a JSON-ready dict describing the counterexample.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import modp
from .nabla import CostandardModel, OracleContext
from .polynomials import open_interval, subsets
from .seqgraph import Quad, all_sequences, format_seq, k_of_seq, transitions
from .weights import a_values


@dataclass
class IdentityReport:
    name: str
    checked: int = 0
    skipped: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def merge(self, other: "IdentityReport") -> "IdentityReport":
        self.checked += other.checked
        self.skipped += other.skipped
        self.failures.extend(other.failures)
        return self

    def line(self) -> str:
        status = "pass" if self.ok else "FAIL"
        return (
            f"{self.name}: {status} (checked={self.checked}, skipped={self.skipped}, "
            f"failures={len(self.failures)})"
        )


def commutation_case(l: int, i: int, j: int, A: Sequence[int]) -> int:
    """Which of the four commutation formulas applies to E_l and F^A_{i,j}."""
    left = l in A or l == i
    right = l + 1 in A or l + 1 == j
    return {(False, False): 1, (True, False): 2, (False, True): 3, (True, True): 4}[(left, right)]


def _commutation_rhs(model: CostandardModel, l, m, i, j, A, w) -> dict:
    p = model.p
    out = model.act_F_chain(i, j, A, model.act_E(l, m, w))
    case = commutation_case(l, i, j, A)
    if case == 1:
        return out
    low = [a for a in A if i < a < l]
    high = [a for a in A if l + 1 < a < j]
    u = model.act_F_chain(l + 1, j, high, model.act_E(l, m - 1, w))
    if case == 4:
        weight = model.weight_of(u)
        if weight is None:
            u = {}
        else:
            u = modp.scale(u, weight[l - 1] - weight[l] + 1 - m, p)
    u = model.act_F_chain(i, l, low, u)
    modp.axpy(out, -1 if case == 2 else 1, u, p)
    return out


def check_commutation(model: CostandardModel, m_max: int | None = None) -> IdentityReport:
    """The four commutation rules between E_l^{(m)} and F^A_{i,j}, on every
    basis vector."""
    report = IdentityReport("commutation")
    n = model.n
    if m_max is None:
        m_max = max(model.r, 1)
    basis = model.basis_vectors()
    for i in range(1, n):
        for j in range(i + 1, n + 1):
            for A in subsets(open_interval(i, j)):
                for l in range(1, n):
                    for m in range(1, m_max + 1):
                        for idx, w in enumerate(basis):
                            lhs = model.act_E(l, m, model.act_F_chain(i, j, A, w))
                            rhs = _commutation_rhs(model, l, m, i, j, A, w)
                            report.checked += 1
                            if lhs != rhs:
                                report.failures.append(
                                    {"identity": "commutation", "lambda": list(model.lam), "p": model.p,
                                     "i": i, "j": j, "A": list(A), "l": l, "m": m,
                                     "basis_index": idx, "case": commutation_case(l, i, j, A)}
                                )
    return report


def _group_exponents(ctx: OracleContext, spans: Iterable[tuple[int, int]]) -> list[int]:
    exps = list(a_values(ctx.pair))
    marked = set()
    for lo, hi in spans:
        marked.update(range(lo, hi))
    return [e + (1 if t in marked else 0) for t, e in enumerate(exps, start=1)]


def check_scalar(ctx: OracleContext, xs: Iterable[Sequence[Quad]]) -> IdentityReport:
    """``prod_t E_t^{(a_t + [t in G])} Phi(x) f = K(x) f_lam`` for each x."""
    report = IdentityReport("scalar")
    f_lam = ctx.f_lambda()
    if not f_lam:
        report.skipped += sum(1 for _ in xs)
        return report
    p = ctx.model.p
    for x in xs:
        word = _group_exponents(ctx, [(q.i, q.k) for q in x])
        lhs = ctx.model.act_divided_word(word, ctx.phi(x))
        scalar = k_of_seq(ctx.pair, x)
        report.checked += 1
        if lhs != modp.scale(f_lam, scalar, p):
            report.failures.append(
                {"identity": "scalar", "pair": _pair_json(ctx), "x": format_seq(x),
                 "K": scalar}
            )
    return report


def chains(n: int, max_chains: int) -> list[tuple[tuple[int, int], ...]]:
    """All ``d_1 < d'_1 <= d_2 < d'_2 <= ... <= n`` with at most max_chains links."""
    out = []

    def extend(prefix, start):
        if prefix:
            out.append(tuple(prefix))
        if len(prefix) == max_chains:
            return
        for d in range(start, n):
            for d2 in range(d + 1, n + 1):
                extend(prefix + [(d, d2)], d2)

    extend([], 1)
    return out


def check_product(ctx: OracleContext, max_chains: int = 2) -> IdentityReport:
    """``prod E_t^{(a_t + [t in G])} F_{d_1,d'_1} ... F_{d_r,d'_r} f = prod (mu_d - lam_{d+1}) f_lam``."""
    report = IdentityReport("product")
    f_lam = ctx.f_lambda()
    pair, model = ctx.pair, ctx.model
    all_chains = chains(pair.n, max_chains)
    if not f_lam:
        report.skipped += len(all_chains)
        return report
    for chain in all_chains:
        v = ctx.f
        for a, b in reversed(chain):
            v = model.act_F(a, b, v)
        lhs = model.act_divided_word(_group_exponents(ctx, chain), v)
        scalar = 1
        for d, _ in chain:
            scalar *= pair.mu_(d) - pair.lam_(d + 1)
        report.checked += 1
        if lhs != modp.scale(f_lam, scalar, model.p):
            report.failures.append(
                {"identity": "product", "pair": _pair_json(ctx), "chain": [list(c) for c in chain]}
            )
    return report


def check_transitions(ctx: OracleContext, xs: Iterable[Sequence[Quad]] | None = None) -> IdentityReport:
    """``E_l Phi(x) f = +- Phi(x') f`` along every transition of every x."""
    report = IdentityReport("transitions")
    n, p = ctx.pair.n, ctx.model.p
    if xs is None:
        xs = all_sequences(n, max_quads=1)
    for x in xs:
        image = ctx.phi(x)
        for l, rule, target in transitions(x, n):
            lhs = ctx.model.act_E(l, 1, image)
            rhs = ctx.phi(target)
            report.checked += 1
            if lhs != rhs and lhs != modp.scale(rhs, -1, p):
                report.failures.append(
                    {"identity": "transitions", "pair": _pair_json(ctx), "x": format_seq(x),
                     "l": l, "rule": rule, "target": format_seq(target)}
                )
    return report


def check_splitting(ctx: OracleContext) -> IdentityReport:
    """``Phi(x1 x2) f = 0`` iff ``Phi(x1) f = 0`` or ``Phi(x2) f = 0``."""
    report = IdentityReport("splitting")
    for x in all_sequences(ctx.pair.n, max_quads=2):
        if len(x) != 2:
            continue
        whole = not ctx.phi(x)
        parts = not ctx.phi(x[:1]) or not ctx.phi(x[1:])
        report.checked += 1
        if whole != parts:
            report.failures.append(
                {"identity": "splitting", "pair": _pair_json(ctx), "x": format_seq(x),
                 "whole_zero": whole, "part_zero": parts}
            )
    return report


def check_closure(ctx: OracleContext, xs: Iterable[Sequence[Quad]] | None = None) -> IdentityReport:
    """Residue-closure decision agrees with the literal operator word."""
    from .seqgraph import vanishes_thm1

    report = IdentityReport("closure_vs_operator")
    if xs is None:
        xs = all_sequences(ctx.pair.n)
    for x in xs:
        report.checked += 1
        if vanishes_thm1(ctx.pair, x) != (not ctx.phi(x)):
            report.failures.append(
                {"identity": "closure_vs_operator", "pair": _pair_json(ctx), "x": format_seq(x)}
            )
    return report


def verify_identities(ctx: OracleContext, scalar_sample: Sequence[Sequence[Quad]] | None = None,
                      m_max: int | None = None, with_commutation: bool = True) -> list[IdentityReport]:
    """Run every identity check for one oracle context. The commutation check depends only
    on the model, so callers sweeping many mu may skip it after the first."""
    if scalar_sample is None:
        scalar_sample = all_sequences(ctx.pair.n)
    first = check_commutation(ctx.model, m_max) if with_commutation else IdentityReport("commutation")
    return [
        first,
        check_scalar(ctx, scalar_sample),
        check_product(ctx),
        check_transitions(ctx),
        check_splitting(ctx),
    ]


def _pair_json(ctx: OracleContext) -> dict:
    return {"p": ctx.pair.p, "lambda": list(ctx.pair.lam), "mu": list(ctx.pair.mu)}
