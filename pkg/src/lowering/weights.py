"""Weight pairs, residues mod p and the B/C residue functions.

All indices are 1-based to match the usual conventions for GL(n) weights:
``pair.lam_(q)`` is the q-th entry of lambda, ``pair.mu_(q)`` of mu.
Residues are returned as canonical integers in ``range(p)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DomainError, InputError


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def residue(i: int, j: int, p: int) -> int:
    """Canonical representative of ``(i - j) mod p``."""
    return (i - j) % p


def is_dominant(weight: Sequence[int]) -> bool:
    return all(weight[s] >= weight[s + 1] for s in range(len(weight) - 1))


def interlaces(lam: Sequence[int], mu: Sequence[int]) -> bool:
    """True iff ``lam[q] >= mu[q] >= lam[q+1]`` for every q."""
    if len(mu) != len(lam) - 1:
        raise InputError(
            f"mu must have length len(lambda) - 1, got {len(lam)} and {len(mu)}"
        )
    return all(lam[q] >= mu[q] >= lam[q + 1] for q in range(len(mu)))


@dataclass(frozen=True)
class BranchingPair:
    """A prime ``p`` with dominant ``lam`` (length n) and ``mu`` (length n-1)
    such that ``mu`` interlaces ``lam``."""

    p: int
    lam: tuple[int, ...]
    mu: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "lam", tuple(int(v) for v in self.lam))
        object.__setattr__(self, "mu", tuple(int(v) for v in self.mu))
        if not is_prime(self.p):
            raise InputError(f"p must be prime, got {self.p}")
        if len(self.lam) < 2:
            raise InputError("lambda must have length n >= 2")
        if not is_dominant(self.lam):
            raise InputError(f"lambda {self.lam} is not non-increasing")
        if not is_dominant(self.mu):
            raise InputError(f"mu {self.mu} is not non-increasing")
        if not interlaces(self.lam, self.mu):
            raise InputError(f"mu {self.mu} does not interlace lambda {self.lam}")

    @property
    def n(self) -> int:
        return len(self.lam)

    def lam_(self, q: int) -> int:
        return self.lam[q - 1]

    def mu_(self, q: int) -> int:
        return self.mu[q - 1]

    def shifted(self, c: int) -> "BranchingPair":
        """Twist by the c-th power of the determinant."""
        return BranchingPair(
            self.p,
            tuple(v + c for v in self.lam),
            tuple(v + c for v in self.mu),
        )

    def with_mu(self, mu: Sequence[int]) -> "BranchingPair":
        return BranchingPair(self.p, self.lam, tuple(mu))


def a_values(pair: BranchingPair) -> tuple[int, ...]:
    """Partial sums ``a_i = sum_{s <= i} (lam_s - mu_s)`` for i = 1..n-1."""
    out = []
    total = 0
    for s in range(pair.n - 1):
        total += pair.lam[s] - pair.mu[s]
        out.append(total)
    return tuple(out)


def k_range(n: int, last: int) -> range:
    """Admissible k for a residue or K-value whose right end is ``last``.

    ``last`` is t+1 for a single residue B(i, t) and j for K_{i,j}; when it
    equals n only k = n is allowed.
    """
    return range(n, n + 1) if last == n else range(1, n + 1)


def _check_k(n: int, last: int, k: int) -> None:
    if k not in k_range(n, last):
        raise DomainError(f"k={k} is not admissible (right end {last}, n={n})")


def b_residue(pair: BranchingPair, i: int, t: int, k: int | None = None) -> int:
    """``B^{mu,lam,k}(i, t)``; ``k=None`` means k = n."""
    n = pair.n
    if k is None:
        k = n
    if not 1 <= i <= t < n:
        raise DomainError(f"b_residue needs 1 <= i <= t < n, got i={i}, t={t}, n={n}")
    _check_k(n, t + 1, k)
    if k <= t:
        value = t - i + pair.mu_(i) - pair.mu_(t + 1)
    else:
        value = t - i + pair.mu_(i) - pair.lam_(t + 1)
    return value % pair.p


def mu_b_residue(pair: BranchingPair, i: int, t: int) -> int:
    """``B^mu(i, t) = t - i + mu_i - mu_{t+1}`` reduced mod p (needs t+1 < n)."""
    if not 1 <= i <= t < pair.n - 1:
        raise DomainError(f"B^mu(i, t) needs 1 <= i <= t < n-1, got i={i}, t={t}")
    return (t - i + pair.mu_(i) - pair.mu_(t + 1)) % pair.p


def c_residue(pair: BranchingPair, i: int, a: int) -> int:
    """``C^mu(i, a) = a - i + mu_i - mu_a`` reduced mod p."""
    if not 1 <= i < a < pair.n:
        raise DomainError(f"c_residue needs 1 <= i < a < n, got i={i}, a={a}")
    return (a - i + pair.mu_(i) - pair.mu_(a)) % pair.p


def b_set(pair: BranchingPair, i: int, j: int, k: int | None = None) -> tuple[int, ...]:
    """``{a : i <= a < j, B^{mu,lam,k}(i, a) = 0}``."""
    n = pair.n
    if k is None:
        k = n
    if not 1 <= i <= j <= n:
        raise DomainError(f"b_set needs 1 <= i <= j <= n, got i={i}, j={j}")
    if j == n and k != n:
        raise DomainError("b_set with j = n requires k = n")
    return tuple(a for a in range(i, j) if b_residue(pair, i, a, k) == 0)


def mu_b_set(pair: BranchingPair, i: int, j: int) -> tuple[int, ...]:
    """``{a : i <= a < j, B^mu(i, a) = 0}``; defined for j <= n-1."""
    if not 1 <= i <= j <= pair.n - 1:
        raise DomainError(f"B^mu set needs 1 <= i <= j <= n-1, got i={i}, j={j}")
    return tuple(a for a in range(i, j) if mu_b_residue(pair, i, a) == 0)


def c_set(pair: BranchingPair, i: int, j: int) -> tuple[int, ...]:
    """``{a : i < a < j, C^mu(i, a) = 0}``."""
    if not 1 <= i <= j <= pair.n:
        raise DomainError(f"c_set needs 1 <= i <= j <= n, got i={i}, j={j}")
    return tuple(a for a in range(i + 1, j) if c_residue(pair, i, a) == 0)


def epsilon(n: int, i: int) -> tuple[int, ...]:
    """Unit vector of length n-1; ``epsilon(n, n)`` is the zero vector."""
    return tuple(1 if q == i else 0 for q in range(1, n))
