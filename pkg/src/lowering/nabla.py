"""Brute-force model of the costandard module over the field with p elements.

The module is realised inside the coordinate ring K[c_uv] of n x n matrices,
with gl_n acting by right translation: the root element X_ab replaces a
column index b by a, so E_l moves column l+1 -> l and F_{a,b} moves a -> b.
The span of the products of row-initial minors (one minor per column of the
Young diagram) is the costandard module of highest weight lambda. A monomial
is stored as its exponent matrix flattened row-major; its weight is the vector
of column sums.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from math import comb
from typing import Iterable, Sequence

from . import modp
from .criteria import Classification, Kind
from .errors import ConsistencyError, InputError
from .polynomials import PolyRing, h_poly, open_interval, subsets
from .seqgraph import Quad
from .weights import BranchingPair, a_values, is_dominant

log = logging.getLogger(__name__)

Monomial = tuple  # tuple[int, ...] of length n*n


def normalize_polynomial(pair: BranchingPair) -> BranchingPair:
    """Shift lambda and mu by the same constant so that lambda_n >= 0."""
    c = max(0, -pair.lam[-1])
    return pair.shifted(c) if c else pair


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        cur = start
        while not seen[cur]:
            seen[cur] = True
            cur = perm[cur]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def conjugate(lam: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(1 for part in lam if part > c) for c in range(max(lam, default=0)))


def count_semistandard(lam: Sequence[int], n: int, content: Sequence[int] | None = None) -> int:
    """Number of semistandard tableaux of shape lam with entries in 1..n,
    optionally with prescribed content. Enumerates row by row."""
    shape = [part for part in lam if part > 0]

    def rows_above_ok(row, prev):
        return prev is None or all(row[c] > prev[c] for c in range(len(row)))

    def weakly_increasing_rows(length, lo):
        # all weakly increasing tuples of the given length with entries lo..n
        if length == 0:
            yield ()
            return
        for first in range(lo, n + 1):
            for rest in weakly_increasing_rows(length - 1, first):
                yield (first, *rest)

    def count(r, prev, used):
        if r == len(shape):
            return 1 if content is None or list(used) == list(content) else 0
        total = 0
        for row in weakly_increasing_rows(shape[r], 1):
            if not rows_above_ok(row, prev):
                continue
            new_used = list(used)
            for e in row:
                new_used[e - 1] += 1
            if content is not None and any(u > c for u, c in zip(new_used, content)):
                continue
            total += count(r + 1, row, new_used)
        return total

    return count(0, None, [0] * n)


@dataclass
class CostandardModel:
    """Explicit basis and operator action for the costandard module."""

    p: int
    lam: tuple[int, ...]
    basis: dict[tuple[int, ...], list[dict]] = field(default_factory=dict)
    _move_cache: dict = field(default_factory=dict, repr=False)

    @property
    def n(self) -> int:
        return len(self.lam)

    @property
    def r(self) -> int:
        return sum(self.lam)

    @property
    def dimension(self) -> int:
        return sum(len(vs) for vs in self.basis.values())

    def weights(self) -> list[tuple[int, ...]]:
        return sorted(self.basis)

    def basis_vectors(self) -> list[dict]:
        return [v for w in self.weights() for v in self.basis[w]]

    def weight_of(self, v: dict) -> tuple[int, ...] | None:
        """Common weight of the monomials of ``v``; None if inhomogeneous."""
        n = self.n
        found = None
        for mono in v:
            w = tuple(sum(mono[u * n + c] for u in range(n)) for c in range(n))
            if found is None:
                found = w
            elif w != found:
                return None
        return found

    # -- operator action -------------------------------------------------

    def _move_monomial(self, mono: Monomial, src: int, dst: int, m: int):
        """Divided power X_{dst,src}^{(m)} on one monomial (1-based columns)."""
        key = (mono, src, dst, m)
        cached = self._move_cache.get(key)
        if cached is not None:
            return cached
        n = self.n
        rows = [u for u in range(n) if mono[u * n + src - 1]]
        out = []

        def place(idx, left, exps, coeff):
            if left == 0:
                out.append((tuple(exps), coeff))
                return
            if idx == len(rows):
                return
            u = rows[idx]
            have = exps[u * n + src - 1]
            for take in range(min(have, left), -1, -1):
                if take:
                    nxt = list(exps)
                    nxt[u * n + src - 1] -= take
                    nxt[u * n + dst - 1] += take
                    place(idx + 1, left - take, nxt, coeff * comb(have, take))
                else:
                    place(idx + 1, left, exps, coeff)

        place(0, m, list(mono), 1)
        result = [(e, c % self.p) for e, c in out if c % self.p]
        self._move_cache[key] = result
        return result

    def move(self, src: int, dst: int, m: int, v: dict) -> dict:
        if m == 0:
            return dict(v)
        out: dict = {}
        p = self.p
        for mono, c in v.items():
            for new, coeff in self._move_monomial(mono, src, dst, m):
                value = (out.get(new, 0) + c * coeff) % p
                if value:
                    out[new] = value
                else:
                    out.pop(new, None)
        return out

    def act_E(self, l: int, m: int, v: dict) -> dict:
        """Divided power E_l^{(m)}."""
        return self.move(l + 1, l, m, v)

    def act_F(self, a: int, b: int, v: dict, m: int = 1) -> dict:
        """Divided power F_{a,b}^{(m)}, a < b."""
        return self.move(a, b, m, v)

    def act_F_chain(self, i: int, j: int, B: Iterable[int], v: dict) -> dict:
        """F_{a_0,a_1} ... F_{a_k,a_{k+1}} for B u {i, j} = {a_0 < ... < a_{k+1}};
        the rightmost factor acts first. Identity when i == j."""
        if i == j:
            return dict(v)
        points = [i, *sorted(B), j]
        for a, b in reversed(list(zip(points, points[1:]))):
            v = self.act_F(a, b, v)
        return v

    def act_E_word(self, k: int, last: int, v: dict) -> dict:
        """E(k, last) = E_k E_{k+1} ... E_last; empty when k > last."""
        for l in range(last, k - 1, -1):
            v = self.act_E(l, 1, v)
        return v

    def act_divided_word(self, exponents: Sequence[int], v: dict) -> dict:
        """E_1^{(e_1)} ... E_{n-1}^{(e_{n-1})}; E_{n-1} acts first."""
        for l in range(len(exponents), 0, -1):
            v = self.act_E(l, exponents[l - 1], v)
        return v

    def h_scalar(self, i: int, j: int, A, B, weight: Sequence[int]) -> int:
        """H_{i,j}(A, B) on a vector of the given weight: the H polynomial at
        ``x_q = q - weight_q``."""
        ring = PolyRing(self.n)
        point = [(q - weight[q - 1]) % self.p for q in range(1, self.n)]
        point += [None] * (self.n - 1)
        return h_poly(i, j, A, B, ring).evaluate(point, self.p)

    # -- linear algebra --------------------------------------------------

    def weight_space_echelon(self, weight: tuple[int, ...]) -> modp.Echelon:
        ech = modp.Echelon(self.p)
        for idx, v in enumerate(self.basis.get(weight, [])):
            ech.insert(v, idx)
        return ech

    def high_weight_space(self, weight: Sequence[int], levels: int | None = None) -> list[dict]:
        """Basis of the vectors of ``weight`` killed by every E_l^{(m)} with
        l < levels (default n-1, i.e. the U(n-1)-high weight vectors)."""
        weight = tuple(weight)
        if levels is None:
            levels = self.n - 1
        space = self.basis.get(weight, [])
        ech = modp.Echelon(self.p)
        kernel = []
        for idx, v in enumerate(space):
            image = {}
            for l in range(1, levels):
                for m in range(1, self.r + 1):
                    for mono, c in self.act_E(l, m, v).items():
                        image[(l, m, mono)] = c
            relation = ech.insert(image, idx)
            if relation is not None:
                vec: dict = {}
                for tag, c in relation.items():
                    modp.axpy(vec, c, space[tag], self.p)
                kernel.append(vec)
        return kernel

    def is_high_weight(self, v: dict, levels: int | None = None) -> bool:
        if levels is None:
            levels = self.n - 1
        return all(
            not self.act_E(l, m, v) for l in range(1, levels) for m in range(1, self.r + 1)
        )

    def contains(self, v: dict) -> bool:
        w = self.weight_of(v)
        if w is None:
            return all(self.contains({k: c}) for k, c in v.items())
        return self.weight_space_echelon(w).contains(v)

    def dump(self) -> str:
        """Line-oriented snapshot: one ``basis`` line per vector."""
        lines = [f"model p={self.p} lambda={','.join(map(str, self.lam))} dim={self.dimension}"]
        for w in self.weights():
            for v in self.basis[w]:
                terms = " ".join(
                    f"{c}*[{''.join(map(str, mono))}]" for mono, c in sorted(v.items())
                )
                lines.append(f"basis {','.join(map(str, w))} {terms}")
        return "\n".join(lines)


def bideterminant(lam: Sequence[int], columns: Sequence[Sequence[int]], n: int, p: int) -> dict:
    """Product over the diagram columns of the minors with rows 1..len and
    the given column indices (1-based), reduced mod p."""
    vec = {(0,) * (n * n): 1}
    for cols in columns:
        size = len(cols)
        minor: dict = {}
        for perm in permutations(range(size)):
            exps = [0] * (n * n)
            for u in range(size):
                exps[u * n + cols[perm[u]] - 1] += 1
            key = tuple(exps)
            minor[key] = minor.get(key, 0) + _perm_sign(perm)
        new: dict = {}
        for m1, c1 in vec.items():
            for m2, c2 in minor.items():
                key = tuple(a + b for a, b in zip(m1, m2))
                new[key] = new.get(key, 0) + c1 * c2
        vec = new
    return modp.clean(vec, p)


def build_model(p: int, lam: Sequence[int]) -> CostandardModel:
    """Span all bideterminants, keep an independent subset per weight, and
    check the dimension against the semistandard tableau count."""
    lam = tuple(lam)
    n = len(lam)
    if not is_dominant(lam) or lam[-1] < 0:
        raise InputError(f"build_model needs a polynomial dominant weight, got {lam}")
    col_lengths = conjugate(lam)
    model = CostandardModel(p, lam)
    echelons: dict[tuple[int, ...], modp.Echelon] = {}
    choices = [list(combinations(range(1, n + 1), length)) for length in col_lengths]
    for columns in product(*choices):
        content = [0] * n
        for cols in columns:
            for c in cols:
                content[c - 1] += 1
        weight = tuple(content)
        vec = bideterminant(lam, columns, n, p)
        ech = echelons.setdefault(weight, modp.Echelon(p))
        if ech.insert(vec, len(model.basis.get(weight, []))) is None:
            model.basis.setdefault(weight, []).append(vec)
    expected = count_semistandard(lam, n)
    if model.dimension != expected:
        raise ConsistencyError(
            f"model for lambda={lam}, p={p} has dimension {model.dimension}, expected {expected}"
        )
    log.debug("built model p=%s lambda=%s dim=%s", p, lam, model.dimension)
    return model


def full_weight(lam: Sequence[int], mu: Sequence[int]) -> tuple[int, ...]:
    return (*mu, sum(lam) - sum(mu))


def find_f_mu(model: CostandardModel, mu: Sequence[int]) -> dict:
    """The U(n-1)-high weight vector of weight mu (unique up to scalar)."""
    space = model.high_weight_space(full_weight(model.lam, mu))
    if len(space) != 1:
        raise ConsistencyError(
            f"weight {tuple(mu)} has a {len(space)}-dimensional space of "
            f"U(n-1)-high weight vectors in the model for {model.lam}"
        )
    return space[0]


def apply_S(model: CostandardModel, i: int, j: int, A: Sequence[int], v: dict,
            mu: Sequence[int] | None = None) -> dict:
    """S_{i,j}(A) v = sum_B F^B_{i,j} H_{i,j}(A, B) v for a weight vector v."""
    if i == j:
        return dict(v)
    if not v:
        return {}
    weight = model.weight_of(v)
    if weight is None:
        raise InputError("apply_S needs a weight vector")
    if mu is not None and weight[: model.n - 1] != tuple(mu):
        raise InputError(f"vector has weight {weight}, expected mu={tuple(mu)}")
    out: dict = {}
    for B in subsets(open_interval(i, j)):
        scalar = model.h_scalar(i, j, A, B, weight)
        if scalar:
            modp.axpy(out, scalar, model.act_F_chain(i, j, B, v), model.p)
    return out


def apply_phi(model: CostandardModel, x: Sequence[Quad], v: dict) -> dict:
    """E(k_1, j_1-1) S_{i_1,j_1}(A_1) ... E(k_s, j_s-1) S_{i_s,j_s}(A_s) v."""
    for q in reversed(list(x)):
        if q.i == q.j:
            continue
        v = apply_S(model, q.i, q.j, q.A, v)
        v = model.act_E_word(q.k, q.j - 1, v)
        if not v:
            return {}
    return v


def oracle_classify(model: CostandardModel, mu: Sequence[int], i: int, j: int,
                    A: Sequence[int], f: dict | None = None) -> Classification:
    """Ground-truth classification of S_{i,j}(A) f_{mu,lam}."""
    if f is None:
        f = find_f_mu(model, mu)
    v = apply_S(model, i, j, A, f, mu)
    if not v:
        return Classification(Kind.ZERO)
    if model.is_high_weight(v):
        weight = model.weight_of(v)
        return Classification(Kind.NONZERO_HIGH_WEIGHT, weight[: model.n - 1])
    return Classification(Kind.NONZERO_NOT_HIGH_WEIGHT)


@dataclass
class OracleContext:
    """Model plus f_{mu,lam} for one normalized branching pair."""

    pair: BranchingPair
    model: CostandardModel
    f: dict

    @classmethod
    def build(cls, pair: BranchingPair, model: CostandardModel | None = None) -> "OracleContext":
        pair = normalize_polynomial(pair)
        if model is None:
            model = build_model(pair.p, pair.lam)
        return cls(pair, model, find_f_mu(model, pair.mu))

    def classify(self, i: int, j: int, A: Sequence[int]) -> Classification:
        return oracle_classify(self.model, self.pair.mu, i, j, A, self.f)

    def phi(self, x: Sequence[Quad]) -> dict:
        return apply_phi(self.model, x, self.f)

    def f_lambda(self) -> dict:
        return self.model.act_divided_word(a_values(self.pair), self.f)
