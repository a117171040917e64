"""Decidable vanishing and high-weight criteria for S_{i,j}(A) f_{mu,lam}.

Every "there is a weakly increasing (decreasing) injection" clause is decided
by :func:`find_injection`, an augmenting-path bipartite matching whose
witnesses are canonical (sources and targets are scanned in ascending order).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import permutations
from typing import Callable, Iterable, Sequence

from .errors import ConsistencyError, DomainError
from .polynomials import open_interval, subsets
from .weights import (
    BranchingPair,
    b_residue,
    b_set,
    c_set,
    epsilon,
    mu_b_residue,
    mu_b_set,
)


@dataclass(frozen=True)
class Injection:
    """A finite injective map with ``target >= source`` (increasing) or
    ``target <= source`` (decreasing) at every point."""

    mapping: tuple[tuple[int, int], ...]
    increasing: bool = True

    @property
    def domain(self) -> tuple[int, ...]:
        return tuple(s for s, _ in self.mapping)

    @property
    def image(self) -> tuple[int, ...]:
        return tuple(sorted(t for _, t in self.mapping))

    def as_dict(self) -> dict[int, int]:
        return dict(self.mapping)

    def inverse(self) -> "Injection":
        return Injection(tuple(sorted((t, s) for s, t in self.mapping)), not self.increasing)

    def is_valid(
        self,
        allowed: Callable[[int, int], bool] | None = None,
        codomain: Iterable[int] | None = None,
    ) -> bool:
        targets = [t for _, t in self.mapping]
        if len(set(targets)) != len(targets):
            return False
        for s, t in self.mapping:
            if (t < s) if self.increasing else (t > s):
                return False
            if allowed is not None and not allowed(s, t):
                return False
        if codomain is not None:
            codomain = set(codomain)
            if any(t not in codomain for t in targets):
                return False
        return True

    def __str__(self):
        return "{" + ",".join(f"{s}->{t}" for s, t in self.mapping) + "}"


def find_injection(
    sources: Iterable[int],
    allowed: Callable[[int, int], bool],
    codomain: Iterable[int],
    increasing: bool = True,
    cover: Iterable[int] = (),
) -> Injection | None:
    """A monotone injection ``sources -> codomain`` through allowed edges.

    When ``cover`` is given, the image must contain every element of it.
    Returns ``None`` when no such injection exists.
    """
    sources = sorted(set(sources))
    codomain = sorted(set(codomain))
    cover = sorted(set(cover))
    if any(t not in codomain for t in cover):
        return None
    adj = {
        s: [
            t
            for t in codomain
            if (t >= s if increasing else t <= s) and allowed(s, t)
        ]
        for s in sources
    }
    match_t: dict[int, int] = {}  # target -> source
    match_s: dict[int, int] = {}  # source -> target

    if cover:
        radj: dict[int, list[int]] = {t: [] for t in cover}
        for s in sources:
            for t in adj[s]:
                if t in radj:
                    radj[t].append(s)

        def augment_from_target(t, seen):
            for s in radj[t]:
                if s in seen:
                    continue
                seen.add(s)
                if s not in match_s or augment_from_target(match_s[s], seen):
                    match_s[s] = t
                    match_t[t] = s
                    return True
            return False

        for t in cover:
            if not augment_from_target(t, set()):
                return None
        # augmenting paths from the source side never unmatch a vertex, so the
        # covered targets stay covered below

    def augment(s, seen):
        for t in adj[s]:
            if t in seen:
                continue
            seen.add(t)
            if t not in match_t or augment(match_t[t], seen):
                match_t[t] = s
                match_s[s] = t
                return True
        return False

    for s in sources:
        if s not in match_s and not augment(s, set()):
            return None
    return Injection(tuple(sorted(match_s.items())), increasing)


def components(M: Iterable[int]) -> list[tuple[int, int]]:
    """Maximal runs ``[b..c]`` of consecutive integers in M, ascending."""
    out: list[tuple[int, int]] = []
    for a in sorted(set(M)):
        if out and a == out[-1][1] + 1:
            out[-1] = (out[-1][0], a)
        else:
            out.append((a, a))
    return out


def _check_subset(M, i, j, name="M") -> tuple[int, ...]:
    M = tuple(sorted(set(M)))
    if any(not i < a < j for a in M):
        raise DomainError(f"{name}={M} is not a subset of ({i}..{j})")
    return M


def _theta_problem(i, comps, v, j):
    N = len(comps)
    if not 1 <= v <= N + 1:
        raise DomainError(f"v={v} out of range 1..{N + 1}")
    b_v = comps[v - 1][0] if v <= N else j + 1
    domain = [i]
    for b, c in comps[: v - 1]:
        domain.extend(range(b, c + 1))
    return domain, range(i, b_v - 1), b_v


def _residue_edge(pair, k):
    return lambda s, t: b_residue(pair, s, t, k) == 0


def pi_witness(
    pair: BranchingPair, i: int, j: int, M: Sequence[int], v: int
) -> dict[int, Injection] | None:
    """The maps ``theta_k`` certifying condition pi(v) for M, or None."""
    n = pair.n
    if not 1 <= i < j <= n:
        raise DomainError(f"pi needs 1 <= i < j <= n, got i={i}, j={j}")
    M = _check_subset(M, i, j)
    domain, codomain, b_v = _theta_problem(i, components(M), v, j)
    ks = range(n, n + 1) if b_v - 1 == n else range(1, n + 1)
    out = {}
    for k in ks:
        theta = find_injection(domain, _residue_edge(pair, k), codomain)
        if theta is None:
            return None
        out[k] = theta
    return out


def pi(pair: BranchingPair, i: int, j: int, M: Sequence[int], v: int) -> bool:
    return pi_witness(pair, i, j, M, v) is not None


def _check_moving_range(pair, i, j):
    if not 1 <= i < j - 1 < pair.n - 1:
        raise DomainError(
            f"needs 1 <= i < j-1 < n-1, got i={i}, j={j}, n={pair.n}"
        )


def pi_bar_witness(
    pair: BranchingPair, i: int, j: int, M: Sequence[int], v: int
) -> dict[int, Injection] | None:
    _check_moving_range(pair, i, j)
    M = _check_subset(M, i, j - 1)
    domain, codomain, _ = _theta_problem(i, components(M), v, j)
    out = {}
    for k in range(1, j):
        theta = find_injection(domain, _residue_edge(pair, k), codomain)
        if theta is None:
            return None
        out[k] = theta
    return out


def pi_bar(pair: BranchingPair, i: int, j: int, M: Sequence[int], v: int) -> bool:
    return pi_bar_witness(pair, i, j, M, v) is not None


def thm2_vanishes(pair: BranchingPair, i: int, j: int, A: Sequence[int]) -> bool:
    """True iff S_{i,j}(A) f_{mu,lam} = 0."""
    if not 1 <= i < j <= pair.n:
        raise DomainError(f"needs 1 <= i < j <= n, got i={i}, j={j}")
    A = _check_subset(A, i, j, "A")
    M = [a for a in open_interval(i, j) if a not in A]
    N = len(components(M))
    return any(pi(pair, i, j, M, v) for v in range(1, N + 2))


def thm4_vanishes(pair: BranchingPair, i: int, j: int, A: Sequence[int]) -> bool:
    """True iff E_{j-1} S_{i,j}(A) f_{mu,lam} = 0 (requires j-1 in A)."""
    _check_moving_range(pair, i, j)
    A = _check_subset(A, i, j, "A")
    if j - 1 not in A:
        raise DomainError(f"j-1={j - 1} must belong to A={A}")
    M = [a for a in open_interval(i, j - 1) if a not in A]
    N = len(components(M))
    return any(pi_bar(pair, i, j, M, v) for v in range(1, N + 2))


class Kind(str, enum.Enum):
    ZERO = "Zero"
    NONZERO_NOT_HIGH_WEIGHT = "NonzeroNotHighWeight"
    NONZERO_HIGH_WEIGHT = "NonzeroHighWeight"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Classification:
    kind: Kind
    nu: tuple[int, ...] | None = None
    d: Injection | None = None
    thetas: dict[int, Injection] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if (self.kind is Kind.NONZERO_HIGH_WEIGHT) != (self.nu is not None):
            raise ConsistencyError("exactly the high-weight case carries nu")


def _high_weight_d(pair, i, j, A) -> Injection | None:
    # d : (i..j) \ A -> (i..j) with B(x, d(x)) = 0 and B(i, t) != 0 off Im d,
    # i.e. Im d must contain every zero of B(i, .) on [i..j)
    zeros = b_set(pair, i, j)
    if i in zeros:
        return None
    sources = [a for a in open_interval(i, j) if a not in A]
    return find_injection(sources, _residue_edge(pair, pair.n), open_interval(i, j), cover=zeros)


def _moved(pair, i, j) -> tuple[int, ...]:
    n = pair.n
    return tuple(m - a + b for m, a, b in zip(pair.mu, epsilon(n, i), epsilon(n, j)))


def thm3_classify(pair: BranchingPair, i: int, A: Sequence[int]) -> Classification:
    """Classify S_{i,n}(A) f_{mu,lam} (removing one node)."""
    n = pair.n
    if not 1 <= i < n:
        raise DomainError(f"needs 1 <= i < n, got i={i}")
    A = _check_subset(A, i, n, "A")
    if thm2_vanishes(pair, i, n, A):
        return Classification(Kind.ZERO)
    d = _high_weight_d(pair, i, n, A)
    if d is None:
        return Classification(Kind.NONZERO_NOT_HIGH_WEIGHT)
    return Classification(Kind.NONZERO_HIGH_WEIGHT, _moved(pair, i, n), d)


def thm5_classify(pair: BranchingPair, i: int, j: int, A: Sequence[int]) -> Classification:
    """Classify S_{i,j}(A) f_{mu,lam} for i < j-1 < n-1 (moving one node)."""
    _check_moving_range(pair, i, j)
    A = _check_subset(A, i, j, "A")
    if thm2_vanishes(pair, i, j, A):
        return Classification(Kind.ZERO)
    not_hw = Classification(Kind.NONZERO_NOT_HIGH_WEIGHT)
    if j - 1 not in A:
        return not_hw
    sources = [a for a in range(i, j) if a not in A]
    thetas = {}
    for k in range(1, j):
        theta = find_injection(sources, _residue_edge(pair, k), range(i, j))
        if theta is None:
            return not_hw
        thetas[k] = theta
    d = _high_weight_d(pair, i, j, A)
    if d is None:
        return not_hw
    return Classification(Kind.NONZERO_HIGH_WEIGHT, _moved(pair, i, j), d, thetas)


def thm6_classify(pair: BranchingPair, i: int) -> Classification:
    """Classify F_{i,i+1} f_{mu,lam} = S_{i,i+1}(empty) f_{mu,lam} for i+1 < n."""
    j = i + 1
    if not (1 <= i and j < pair.n):
        raise DomainError(f"needs 1 <= i and i+1 < n, got i={i}, n={pair.n}")
    if thm2_vanishes(pair, i, j, ()):
        return Classification(Kind.ZERO)
    if b_residue(pair, i, i) != 0 and mu_b_residue(pair, i, i) == 0:
        return Classification(Kind.NONZERO_HIGH_WEIGHT, _moved(pair, i, j))
    return Classification(Kind.NONZERO_NOT_HIGH_WEIGHT)


def classify(pair: BranchingPair, i: int, j: int, A: Sequence[int]) -> Classification:
    """Route (i, j) to the criterion whose hypotheses cover it."""
    n = pair.n
    if not 1 <= i < j <= n:
        raise DomainError(f"needs 1 <= i < j <= n, got i={i}, j={j}")
    if j == n:
        return thm3_classify(pair, i, A)
    A = _check_subset(A, i, j, "A")
    if j == i + 1:
        return thm6_classify(pair, i)
    return thm5_classify(pair, i, j, A)


@dataclass(frozen=True)
class GoodSet:
    """A set A making S_{i,j}(A) f_{mu,lam} a non-zero high weight vector."""

    A: tuple[int, ...]
    eps: Injection | None
    classification: Classification


def thm3_exists(pair: BranchingPair, i: int) -> GoodSet | None:
    n = pair.n
    if not 1 <= i < n:
        raise DomainError(f"needs 1 <= i < n, got i={i}")
    eps = find_injection(b_set(pair, i, n), lambda s, t: True, c_set(pair, i, n), increasing=False)
    if eps is None:
        return None
    A = tuple(a for a in open_interval(i, n) if a not in eps.image)
    found = thm3_classify(pair, i, A)
    if found.kind is not Kind.NONZERO_HIGH_WEIGHT:
        raise ConsistencyError(f"witness A={A} does not classify as high weight")
    return GoodSet(A, eps, found)


def thm5_exists(pair: BranchingPair, i: int, j: int) -> GoodSet | None:
    n = pair.n
    if not 1 <= i < j < n:
        raise DomainError(f"needs 1 <= i < j < n, got i={i}, j={j}, n={n}")
    if j == i + 1:
        if mu_b_residue(pair, i, i) == 0 and b_residue(pair, i, i) != 0:
            found = thm6_classify(pair, i)
            if found.kind is not Kind.NONZERO_HIGH_WEIGHT:
                raise ConsistencyError("F_{i,i+1} witness does not classify as high weight")
            return GoodSet((), None, found)
        return None
    if mu_b_residue(pair, i, j - 1) != 0 or b_residue(pair, i, j - 1) == 0:
        return None
    zeros = b_set(pair, i, j - 1)
    eps = find_injection(zeros, lambda s, t: True, c_set(pair, i, j - 1), increasing=False)
    if eps is None:
        return None
    if find_injection(zeros, lambda s, t: True, mu_b_set(pair, i, j - 1)) is None:
        return None
    A = tuple(a for a in open_interval(i, j) if a not in eps.image)
    found = thm5_classify(pair, i, j, A)
    if found.kind is not Kind.NONZERO_HIGH_WEIGHT:
        raise ConsistencyError(f"witness A={A} does not classify as high weight")
    return GoodSet(A, eps, found)


def exists(pair: BranchingPair, i: int, j: int) -> GoodSet | None:
    if j == pair.n:
        return thm3_exists(pair, i)
    return thm5_exists(pair, i, j)


def exists_by_component_families(pair: BranchingPair, i: int, j: int) -> bool:
    """The injection-family form of the existence criterion, by brute force
    over the decreasing injections. Test-only cross-check."""
    _check_moving_range(pair, i, j)
    zeros = b_set(pair, i, j)
    targets = c_set(pair, i, j - 1)
    for image in permutations(targets, len(zeros)):
        if any(t > s for s, t in zip(zeros, image)):
            continue
        dom = (i, *sorted(image))
        if all(
            find_injection(dom, lambda s, t: True, b_set(pair, i, j, k)) is not None
            for k in range(1, j)
        ):
            return True
    return False


def enumerate_good_A(
    pair: BranchingPair, i: int, j: int
) -> list[tuple[tuple[int, ...], Classification]]:
    """Classification of every A in (i..j), ordered by size then lex."""
    if not 1 <= i < j <= pair.n:
        raise DomainError(f"needs 1 <= i < j <= n, got i={i}, j={j}")
    return [(A, classify(pair, i, j, A)) for A in subsets(open_interval(i, j))]


def hall_increasing_exists(S: Iterable[int], T: Iterable[int]) -> bool:
    """Tail-count test for a weakly increasing injection S -> T."""
    S, T = sorted(S), sorted(T)
    for k in set(S):
        if sum(1 for s in S if s >= k) > sum(1 for t in T if t >= k):
            return False
    return True
