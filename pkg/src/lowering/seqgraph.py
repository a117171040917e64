"""Sequences of quadruples (i, k, j, A), their rewrite rules and closure.

A sequence stands for the operator word
``E(k_1, j_1-1) S_{i_1,j_1}(A_1) ... E(k_s, j_s-1) S_{i_s,j_s}(A_s)``.
Vanishing of that word on the vector f_{mu,lam} is decided by residue
products over every sequence reachable through the rewrite rules.
"""

from __future__ import annotations

import re
from collections import deque
from typing import Callable, Iterable, NamedTuple, Sequence

from .errors import InputError
from .polynomials import eval_K
from .weights import BranchingPair, epsilon


class Quad(NamedTuple):
    i: int
    k: int
    j: int
    A: tuple[int, ...] = ()

    def __str__(self):
        inner = ",".join(map(str, self.A))
        return f"({self.i},{self.k},{self.j},{{{inner}}})"


SeqX = tuple  # tuple[Quad, ...]


class Transition(NamedTuple):
    label: int
    rule: int
    target: tuple


def make_seq(*quads: Iterable) -> tuple:
    """Build a sequence from plain ``(i, k, j, A)`` tuples."""
    return tuple(Quad(q[0], q[1], q[2], tuple(sorted(q[3]))) for q in quads)


def format_seq(x: Sequence[Quad]) -> str:
    return "".join(str(q) for q in x)


_QUAD_RE = re.compile(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*\{([^}]*)\}\s*\)")


def parse_seq(text: str) -> tuple:
    """Inverse of :func:`format_seq`."""
    quads = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _QUAD_RE.match(text, pos)
        if not m:
            raise InputError(f"cannot parse sequence at {text[pos:]!r}")
        A = tuple(sorted(int(a) for a in m.group(4).split(",") if a.strip()))
        quads.append(Quad(int(m.group(1)), int(m.group(2)), int(m.group(3)), A))
        pos = m.end()
    if not quads:
        raise InputError("empty sequence")
    return tuple(quads)


def encode(x: Sequence[Quad]) -> tuple[int, ...]:
    """Flat integer encoding, usable as a sort or memo key."""
    out = [len(x)]
    for q in x:
        out.extend((q.i, q.k, q.j, len(q.A), *q.A))
    return tuple(out)


def _quad_ok(q: Quad, n: int) -> bool:
    if list(q.A) != sorted(set(q.A)):
        return False
    if q.i == q.j:
        # the trivial factor S_{i,i}(empty) = 1
        return q.k == q.i and not q.A and 1 <= q.i <= n
    if not 1 <= q.i < q.j <= n:
        return False
    if any(not q.i < a < q.j for a in q.A):
        return False
    if not q.i <= q.k <= q.j:
        return False
    return q.j != n or q.k == n


def validate(x: Sequence[Quad], n: int) -> bool:
    """Membership in V_n (trivial factors i = k = j are tolerated)."""
    if not x:
        return False
    for q in x:
        if not _quad_ok(q, n):
            return False
    return all(x[t].j < x[t + 1].i for t in range(len(x) - 1))


def _require_valid(x, n):
    if not validate(x, n):
        raise InputError(f"{format_seq(x)} is not a valid sequence for n={n}")


def transitions(x: Sequence[Quad], n: int) -> list[Transition]:
    """Every ``x --l--> x'``, by ascending quad position then ascending l."""
    _require_valid(x, n)
    x = tuple(x)
    out: list[Transition] = []
    for pos, q in enumerate(x):
        i, k, j, A = q
        before, after = x[:pos], x[pos + 1 :]
        found = []
        if i < k < n:
            found.append((k - 1, 1, before + (Quad(i, k - 1, j, A),) + after))
        if i + 1 not in A and i < k - 1:
            found.append((i, 2, before + (Quad(i + 1, k, j, A),) + after))
        for l in range(i + 1, k - 1):
            if l in A and l + 1 not in A:
                left = Quad(i, l, l, tuple(a for a in A if a < l))
                right = Quad(l + 1, k, j, tuple(a for a in A if a > l + 1))
                found.append((l, 3, before + (left, right) + after))
        found.sort(key=lambda item: (item[0], item[1]))
        out.extend(Transition(l, rule, target) for l, rule, target in found)
    return out


def closure(
    x: Sequence[Quad],
    n: int,
    trace: Callable[[str], None] | None = None,
) -> list[tuple]:
    """All sequences reachable from ``x`` (``x`` first), in BFS order.

    ``trace`` receives one line per explored edge:
    ``parent<TAB>l<TAB>rule<TAB>child``.
    """
    x = tuple(x)
    _require_valid(x, n)
    seen = {encode(x)}
    order = [x]
    queue = deque([x])
    while queue:
        cur = queue.popleft()
        for l, rule, target in transitions(cur, n):
            if trace is not None:
                trace(f"{format_seq(cur)}\t{l}\t{rule}\t{format_seq(target)}")
            key = encode(target)
            if key not in seen:
                seen.add(key)
                order.append(target)
                queue.append(target)
    return order


def k_of_seq(pair: BranchingPair, x: Sequence[Quad]) -> int:
    """Product of the K-residues of the quads; trivial quads contribute 1."""
    _require_valid(x, pair.n)
    value = 1
    for q in x:
        if q.i == q.j:
            continue
        value = value * eval_K(pair, q.i, q.j, q.A, q.k) % pair.p
        if not value:
            return 0
    return value


def vanishes_thm1(pair: BranchingPair, x: Sequence[Quad]) -> bool:
    """True iff the operator word of ``x`` kills f_{mu,lam}: every sequence
    reachable from ``x`` has vanishing K-residue."""
    return all(k_of_seq(pair, y) == 0 for y in closure(x, pair.n))


def phi_weight(pair: BranchingPair, x: Sequence[Quad]) -> tuple[int, ...]:
    """Weight ``mu - sum(eps_{i_t} - eps_{k_t})`` of the image of f_{mu,lam}."""
    _require_valid(x, pair.n)
    n = pair.n
    nu = list(pair.mu)
    for q in x:
        for q_idx, (a, b) in enumerate(zip(epsilon(n, q.i), epsilon(n, q.k))):
            nu[q_idx] += b - a
    return tuple(nu)


def all_sequences(n: int, max_quads: int | None = None) -> list[tuple]:
    """Every element of V_n (non-trivial quads only), in encoding order."""
    singles = []
    for i in range(1, n):
        for j in range(i + 1, n + 1):
            inner = range(i + 1, j)
            ks = [n] if j == n else range(i, j + 1)
            for mask in range(1 << len(inner)):
                A = tuple(a for b, a in enumerate(inner) if mask >> b & 1)
                for k in ks:
                    singles.append(Quad(i, k, j, A))
    out = []

    def extend(prefix, last_j):
        if prefix:
            out.append(prefix)
        if max_quads is not None and len(prefix) >= max_quads:
            return
        for q in singles:
            if q.i > last_j:
                extend(prefix + (q,), q.j)

    extend((), 0)
    out.sort(key=encode)
    return out
