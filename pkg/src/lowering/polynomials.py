"""Sparse integer polynomials and the H / K polynomials of lowering operators.

Variables are ``x_1..x_{n-1}, y_2..y_n`` in that order; a :class:`PolyRing`
fixes n. Polynomials are dicts from dense exponent tuples to Python ints.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import ConsistencyError, DomainError
from .weights import BranchingPair, k_range


class PolyRing:
    """The ring Z[x_1..x_{n-1}, y_2..y_n]."""

    _instances: dict[int, "PolyRing"] = {}

    def __new__(cls, n: int):
        if n < 2:
            raise DomainError(f"PolyRing needs n >= 2, got {n}")
        ring = cls._instances.get(n)
        if ring is None:
            ring = super().__new__(cls)
            ring.n = n
            ring.names = tuple(f"x{q}" for q in range(1, n)) + tuple(
                f"y{q}" for q in range(2, n + 1)
            )
            cls._instances[n] = ring
        return ring

    def __getnewargs__(self):
        return (self.n,)

    def __repr__(self):
        return f"PolyRing({self.n})"

    @property
    def nvars(self) -> int:
        return len(self.names)

    def x_index(self, q: int) -> int:
        if not 1 <= q < self.n:
            raise DomainError(f"x_{q} is not a variable of {self!r}")
        return q - 1

    def y_index(self, q: int) -> int:
        if not 2 <= q <= self.n:
            raise DomainError(f"y_{q} is not a variable of {self!r}")
        return self.n - 1 + q - 2

    def zero(self) -> "IntPolynomial":
        return IntPolynomial(self, {})

    def const(self, c: int) -> "IntPolynomial":
        return IntPolynomial(self, {(0,) * self.nvars: c})

    def var(self, index: int) -> "IntPolynomial":
        exps = [0] * self.nvars
        exps[index] = 1
        return IntPolynomial(self, {tuple(exps): 1})

    def x(self, q: int) -> "IntPolynomial":
        return self.var(self.x_index(q))

    def y(self, q: int) -> "IntPolynomial":
        return self.var(self.y_index(q))

    def linear(self, plus: int, minus: int) -> "IntPolynomial":
        """``v_plus - v_minus`` for variable indices ``plus != minus``."""
        a = [0] * self.nvars
        b = [0] * self.nvars
        a[plus] = 1
        b[minus] = 1
        return IntPolynomial(self, {tuple(a): 1, tuple(b): -1})


def _grlex_key(exps: tuple[int, ...]):
    return (sum(exps), exps)


class IntPolynomial:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: Mapping[tuple[int, ...], int]):
        self.ring = ring
        self.terms = {e: c for e, c in terms.items() if c}

    def _check(self, other: "IntPolynomial"):
        if other.ring is not self.ring:
            raise DomainError(f"cannot combine polynomials of {self.ring!r} and {other.ring!r}")

    def _coerce(self, other) -> "IntPolynomial":
        if isinstance(other, int):
            return self.ring.const(other)
        self._check(other)
        return other

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return IntPolynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial(self.ring, {e: c * other for e, c in self.terms.items()})
        self._check(other)
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return IntPolynomial(self.ring, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self.ring is other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring.n, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def leading(self) -> tuple[tuple[int, ...], int]:
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def reduce_mod(self, p: int) -> "IntPolynomial":
        return IntPolynomial(self.ring, {e: c % p for e, c in self.terms.items()})

    def evaluate(self, point: Sequence[int | None], modulus: int | None = None) -> int:
        """Value at ``point`` (one entry per variable; ``None`` = undefined).

        Using an undefined variable raises :class:`DomainError`.
        """
        total = 0
        for e, c in self.terms.items():
            value = c
            for idx, d in enumerate(e):
                if d:
                    v = point[idx]
                    if v is None:
                        raise DomainError(
                            f"variable {self.ring.names[idx]} is undefined at this point"
                        )
                    value *= v**d if modulus is None else pow(v, d, modulus)
            total += value
            if modulus is not None:
                total %= modulus
        return total

    def exact_div(self, divisor: "IntPolynomial") -> "IntPolynomial":
        """Quotient of an exact division; raises if there is a remainder."""
        self._check(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        binomial = _as_variable_difference(divisor)
        if binomial is not None:
            return _divide_by_difference(self, *binomial)
        lead_e, lead_c = divisor.leading()
        rest = dict(self.terms)
        quotient: dict[tuple[int, ...], int] = {}
        while rest:
            e = max(rest, key=_grlex_key)
            c = rest[e]
            shift = tuple(a - b for a, b in zip(e, lead_e))
            if min(shift) < 0 or c % lead_c:
                raise ConsistencyError("polynomial division is not exact")
            q = c // lead_c
            quotient[shift] = quotient.get(shift, 0) + q
            for de, dc in divisor.terms.items():
                te = tuple(a + b for a, b in zip(shift, de))
                v = rest.get(te, 0) - q * dc
                if v:
                    rest[te] = v
                else:
                    rest.pop(te, None)
        return IntPolynomial(self.ring, quotient)

    def dump(self) -> str:
        """Canonical text form, terms in decreasing graded-lex order."""
        if not self.terms:
            return "0"
        pieces = []
        for e in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[e]
            factors = [
                name if d == 1 else f"{name}^{d}"
                for name, d in zip(self.ring.names, e)
                if d
            ]
            mono = "*".join(factors)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"IntPolynomial({self.dump()!r}, n={self.ring.n})"


def _as_variable_difference(poly: IntPolynomial):
    if len(poly.terms) != 2:
        return None
    plus = minus = None
    for e, c in poly.terms.items():
        if sum(e) != 1 or c not in (1, -1):
            return None
        idx = e.index(1)
        if c == 1:
            plus = idx
        else:
            minus = idx
    if plus is None or minus is None:
        return None
    return plus, minus


def _divide_by_difference(poly: IntPolynomial, t: int, s: int) -> IntPolynomial:
    # synthetic division by (v_t - v_s) in the variable v_t
    by_degree: dict[int, dict[tuple[int, ...], int]] = {}
    for e, c in poly.terms.items():
        by_degree.setdefault(e[t], {})[e] = c
    quotient: dict[tuple[int, ...], int] = {}
    top = max(by_degree, default=0)
    for d in range(top, 0, -1):
        layer = by_degree.pop(d, {})
        below = by_degree.setdefault(d - 1, {})
        for e, c in layer.items():
            if not c:
                continue
            q = list(e)
            q[t] -= 1
            q = tuple(q)
            quotient[q] = quotient.get(q, 0) + c
            m = list(q)
            m[s] += 1
            m = tuple(m)
            below[m] = below.get(m, 0) + c
    if any(by_degree.get(0, {}).values()):
        raise ConsistencyError("polynomial division is not exact")
    return IntPolynomial(poly.ring, quotient)


def subsets(items: Iterable[int]) -> list[tuple[int, ...]]:
    """All subsets of ``items`` as sorted tuples, ordered by size then lex."""
    items = sorted(items)
    return [c for r in range(len(items) + 1) for c in combinations(items, r)]


def open_interval(i: int, j: int) -> tuple[int, ...]:
    return tuple(range(i + 1, j))


def predecessor(D: Iterable[int], i: int, t: int) -> int:
    """``max{s in D u {i} : s < t}``."""
    if t <= i:
        raise DomainError(f"predecessor needs t > i, got i={i}, t={t}")
    return max(s for s in (*D, i) if s < t)


def _check_subset(S: Sequence[int], i: int, j: int, name: str) -> tuple[int, ...]:
    S = tuple(sorted(set(S)))
    if any(not i < a < j for a in S):
        raise DomainError(f"{name}={S} is not a subset of ({i}..{j})")
    return S


def _default_ring(ring: PolyRing | None, j: int) -> PolyRing:
    ring = ring or PolyRing(max(j, 2))
    if ring.n < j:
        raise DomainError(f"{ring!r} lacks the variables needed for j={j}")
    return ring


def h_poly(
    i: int, j: int, A: Sequence[int], B: Sequence[int], ring: PolyRing | None = None
) -> IntPolynomial:
    """The polynomial H_{i,j}(A, B) in Z[x_i..x_{j-1}]."""
    ring = _default_ring(ring, j)
    A = _check_subset(A, i, j, "A")
    B = _check_subset(B, i, j, "B")
    return _h_poly(i, j, A, B, ring.n)


@lru_cache(maxsize=None)
def _h_poly(i, j, A, B, n) -> IntPolynomial:
    ring = PolyRing(n)
    # factors shared by numerator and denominator cancel term by term, so only
    # A \ B survives upstairs and B \ A downstairs
    up_set = [t for t in A if t not in B]
    down_set = [t for t in B if t not in A]
    terms = []
    common: set[tuple[int, int]] = set()
    for D in subsets(down_set):
        up = [(t, predecessor(D, i, t)) for t in up_set]
        down = {(t, predecessor(D, i, t)) for t in down_set}
        common |= down
        terms.append(((-1) ** len(D), up, down))

    def product(pairs):
        out = ring.const(1)
        for t, s in pairs:
            out = out * ring.linear(ring.x_index(t), ring.x_index(s))
        return out

    numerator = ring.zero()
    for sign, up, down in terms:
        numerator = numerator + product(up + sorted(common - down)) * sign
    for t, s in sorted(common):
        numerator = numerator.exact_div(ring.linear(ring.x_index(t), ring.x_index(s)))
    return numerator


def k_poly_def(
    i: int, j: int, A: Sequence[int], ring: PolyRing | None = None
) -> IntPolynomial:
    """K_{i,j}(A) expanded from its defining sum over B."""
    if j <= i:
        raise DomainError(f"K_{{i,j}} needs i < j, got i={i}, j={j}")
    ring = _default_ring(ring, j)
    A = _check_subset(A, i, j, "A")
    total = ring.zero()
    for B in subsets(open_interval(i, j)):
        term = _h_poly(i, j, A, B, ring.n)
        if term.is_zero():
            continue
        for t in (i, *B):
            term = term * (ring.y(t + 1) - ring.x(t))
        total = total + term
    return total


def k_poly_rec(
    i: int, j: int, A: Sequence[int], ring: PolyRing | None = None
) -> IntPolynomial:
    """K_{i,j}(A) via the two-case recursion on j."""
    if j <= i:
        raise DomainError(f"K_{{i,j}} needs i < j, got i={i}, j={j}")
    ring = _default_ring(ring, j)
    A = _check_subset(A, i, j, "A")
    return _k_poly_rec(i, j, A, ring.n)


@lru_cache(maxsize=None)
def _k_poly_rec(i, j, A, n) -> IntPolynomial:
    ring = PolyRing(n)
    if j == i + 1:
        return ring.y(j) - ring.x(i)
    if j - 1 not in A:
        return _k_poly_rec(i, j - 1, A, n)
    rest = tuple(a for a in A if a != j - 1)
    k = max(a for a in range(i, j) if a not in A)
    out = _k_poly_rec(i, j - 1, rest, n) * (ring.y(j) - ring.x(k))
    if k != i:
        out = out + _k_poly_rec(i, j - 1, tuple(sorted((k, *rest))), n)
    return out


def substitution(pair: BranchingPair, k: int) -> list[int | None]:
    """Residue point for x_q, y_q given by the pair and the split index k.

    ``x_q -> q - mu_q``, ``y_q -> q - lam_q - 1`` for q <= k and
    ``y_q -> q - mu_q - 1`` for k < q < n; ``y_n`` is undefined when k < n.
    """
    n, p = pair.n, pair.p
    if not 1 <= k <= n:
        raise DomainError(f"k must lie in [1..{n}], got {k}")
    point: list[int | None] = [(q - pair.mu_(q)) % p for q in range(1, n)]
    for q in range(2, n + 1):
        if q <= k:
            point.append((q - pair.lam_(q) - 1) % p)
        elif q < n:
            point.append((q - pair.mu_(q) - 1) % p)
        else:
            point.append(None)
    return point


def eval_K(pair: BranchingPair, i: int, j: int, A: Sequence[int], k: int | None = None) -> int:
    """``K^{mu,lam,k}_{i,j}(A)`` as a residue; ``k=None`` means k = n."""
    n = pair.n
    if k is None:
        k = n
    if not 1 <= i < j <= n:
        raise DomainError(f"eval_K needs 1 <= i < j <= n, got i={i}, j={j}")
    if k not in k_range(n, j):
        raise DomainError(f"k={k} is not admissible for j={j}, n={n}")
    poly = k_poly_rec(i, j, A, PolyRing(n))
    return poly.evaluate(substitution(pair, k), pair.p)


def eval_H_at_mu(pair: BranchingPair, i: int, j: int, A: Sequence[int], B: Sequence[int]) -> int:
    """Scalar by which H_{i,j}(A, B) acts on a vector of weight mu, mod p."""
    n = pair.n
    if not 1 <= i < j <= n:
        raise DomainError(f"eval_H_at_mu needs 1 <= i < j <= n, got i={i}, j={j}")
    poly = h_poly(i, j, A, B, PolyRing(n))
    point = substitution(pair, n)
    return poly.evaluate(point, pair.p)
