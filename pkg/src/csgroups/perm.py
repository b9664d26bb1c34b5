"""Permutation arithmetic and breadth-first group closure.

Everything downstream computes on the two types defined here: a
``Permutation`` (a bijection on ``{0, ..., deg-1}``) and an
``ElementTable`` (the fully enumerated closure of a generating set).

Composition convention: ``compose(p, q)`` applies the *right* factor
first, i.e. the result maps ``i -> p(q(i))``.  All fixtures and tests
assume this convention.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

DEFAULT_CLOSURE_CAP = 5000


class DegreeMismatchError(ValueError):
    """Raised when permutations of different degrees are combined."""


class OrderCapExceededError(RuntimeError):
    """Raised when a closure grows past the configured element cap.

    Carries ``partial_count``, the number of elements found before
    giving up (a lower bound on the true order).
    """

    def __init__(self, cap: int, partial_count: int):
        super().__init__(f"order cap exceeded: cap={cap}, found at least {partial_count} elements")
        self.cap = cap
        self.partial_count = partial_count


class Permutation:
    """An immutable bijection on ``{0, ..., deg-1}``.

    ``images[i]`` is the image of point ``i``.  Hashable; equality is
    by image sequence.
    """

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a bijection on 0..{len(images) - 1}: {images}")
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("Permutation is immutable")

    @property
    def deg(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({format_cycles(self)})"

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycles of length >= 2, each starting at its least point."""
        seen = [False] * self.deg
        out: list[tuple[int, ...]] = []
        for start in range(self.deg):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            pt = self.images[start]
            while pt != start:
                seen[pt] = True
                cyc.append(pt)
                pt = self.images[pt]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out


def identity(deg: int) -> Permutation:
    return Permutation(range(deg))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Product applying ``q`` first: ``i -> p(q(i))``."""
    if p.deg != q.deg:
        raise DegreeMismatchError(f"degree mismatch: {p.deg} != {q.deg}")
    pi = p.images
    return Permutation(tuple(pi[j] for j in q.images))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.deg
    for i, v in enumerate(p.images):
        inv[v] = i
    return Permutation(inv)


def element_order(p: Permutation) -> int:
    """Least k >= 1 with p^k = identity; the lcm of the cycle lengths."""
    order = 1
    for cyc in p.cycles():
        order = math.lcm(order, len(cyc))
    return order


def from_cycles(deg: int, cycles: Iterable[Sequence[int]]) -> Permutation:
    """Permutation from disjoint cycles over 0-based points."""
    images = list(range(deg))
    for cyc in cycles:
        for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
            if images[a] != a:
                raise ValueError(f"cycles are not disjoint at point {a}")
            images[a] = b
    return Permutation(images)


def format_cycles(p: Permutation) -> str:
    cycs = p.cycles()
    if not cycs:
        return "()"
    return "".join("(" + ",".join(str(pt) for pt in cyc) + ")" for cyc in cycs)


class ElementTable:
    """Fully enumerated group of permutations, closed under the operations.

    ``elements[0]`` is the identity; the index of an element in
    ``elements`` is its canonical identifier everywhere else in the
    package.  Immutable after construction.
    """

    def __init__(self, elements: list[Permutation]):
        if not elements or not elements[0].is_identity():
            raise ValueError("elements[0] must be the identity")
        self.elements = elements
        self.deg = elements[0].deg
        self.lookup: dict[tuple[int, ...], int] = {p.images: i for i, p in enumerate(elements)}
        if len(self.lookup) != len(elements):
            raise ValueError("duplicate elements in table")
        # dense image matrix for vectorized composition/conjugation
        self.matrix = np.array([p.images for p in elements], dtype=np.int32)

    def __len__(self) -> int:
        return len(self.elements)

    def index_of(self, p: Permutation) -> int:
        try:
            return self.lookup[p.images]
        except KeyError:
            raise KeyError(f"permutation {format_cycles(p)} not in table") from None

    def __contains__(self, p: Permutation) -> bool:
        return p.images in self.lookup


def close(generators: Sequence[Permutation], cap: int = DEFAULT_CLOSURE_CAP) -> ElementTable:
    """Breadth-first closure of ``generators`` under composition.

    Raises ``OrderCapExceededError`` as soon as more than ``cap``
    elements are discovered.  An empty generator list needs an explicit
    degree; use ``close_with_degree``.
    """
    if not generators:
        raise ValueError("empty generator list; use close_with_degree")
    deg = generators[0].deg
    return close_with_degree(generators, deg, cap)


def close_with_degree(generators: Sequence[Permutation], deg: int,
                      cap: int = DEFAULT_CLOSURE_CAP) -> ElementTable:
    if cap < 1:
        raise ValueError("cap must be >= 1")
    for g in generators:
        if g.deg != deg:
            raise DegreeMismatchError(f"generator degree {g.deg} != {deg}")
    gens = [np.array(g.images, dtype=np.int32) for g in generators]
    ident = np.arange(deg, dtype=np.int32)
    seen: dict[bytes, int] = {ident.tobytes(): 0}
    rows: list[np.ndarray] = [ident]
    frontier = [ident]
    while frontier:
        fmat = np.stack(frontier)
        nxt: list[np.ndarray] = []
        for g in gens:
            # row-wise composition: (e * g)(i) = e[g[i]]
            prods = fmat[:, g]
            for row in prods:
                key = row.tobytes()
                if key not in seen:
                    if len(rows) >= cap:
                        raise OrderCapExceededError(cap, len(rows) + 1)
                    seen[key] = len(rows)
                    rows.append(row)
                    nxt.append(row)
        frontier = nxt
    return ElementTable([Permutation(row.tolist()) for row in rows])
