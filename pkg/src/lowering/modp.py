"""Sparse vectors and incremental row echelon form over the field with p elements.

Vectors are dicts mapping orderable keys to residues in ``range(p)`` with no
zero entries. Every stored row has its smallest key as pivot, so a vector is
independent of the rows iff its reduction is non-zero.
"""

from __future__ import annotations

from typing import Hashable, Mapping

Vector = dict


def clean(v: Mapping, p: int) -> dict:
    return {key: c % p for key, c in v.items() if c % p}


def axpy(y: dict, a: int, x: Mapping, p: int) -> None:
    """In place ``y += a * x``."""
    if not a:
        return
    for key, c in x.items():
        value = (y.get(key, 0) + a * c) % p
        if value:
            y[key] = value
        else:
            y.pop(key, None)


def add(x: Mapping, y: Mapping, p: int) -> dict:
    out = dict(x)
    axpy(out, 1, y, p)
    return out


def scale(x: Mapping, a: int, p: int) -> dict:
    a %= p
    if not a:
        return {}
    return {key: c * a % p for key, c in x.items()}


def proportional(x: Mapping, y: Mapping, p: int) -> int | None:
    """The scalar c with ``x == c * y``, or None. Zero vectors give 0."""
    if not y:
        return 0 if not x else None
    if set(x) != set(y) and x:
        return None
    key = next(iter(y))
    c = x.get(key, 0) * pow(y[key], -1, p) % p
    return c if scale(y, c, p) == dict(x) else None


class Echelon:
    """Incrementally maintained echelon basis with provenance tracking.

    Each row remembers which combination of the inserted vectors produced it,
    so dependent insertions yield kernel relations.
    """

    def __init__(self, p: int):
        self.p = p
        self.rows: dict[Hashable, tuple[dict, dict]] = {}

    def __len__(self):
        return len(self.rows)

    def _reduce(self, v: Mapping, combo: dict) -> tuple[dict, dict]:
        p = self.p
        v = clean(v, p)
        while v:
            key = min(v)
            row = self.rows.get(key)
            if row is None:
                break
            a = -v[key]
            axpy(v, a, row[0], p)
            axpy(combo, a, row[1], p)
        return v, combo

    def insert(self, v: Mapping, tag: Hashable) -> dict | None:
        """Add ``v``; returns None if it was independent, otherwise a kernel
        relation ``{tag: coefficient}`` among inserted vectors."""
        v, combo = self._reduce(v, {tag: 1})
        if not v:
            return combo
        key = min(v)
        inv = pow(v[key], -1, self.p)
        self.rows[key] = (scale(v, inv, self.p), scale(combo, inv, self.p))
        return None

    def express(self, v: Mapping) -> dict | None:
        """Coordinates of ``v`` in terms of inserted tags, or None if ``v`` is
        outside the span."""
        residual, combo = self._reduce(v, {})
        if residual:
            return None
        return scale(combo, -1, self.p)

    def contains(self, v: Mapping) -> bool:
        return not self._reduce(v, {})[0]
