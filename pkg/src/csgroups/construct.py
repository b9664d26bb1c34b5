"""Group construction: named families, products, semidirect products,
and generator fixtures.

Groups are always realized as permutation groups; when no natural
small-degree action exists we fall back to the regular representation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .perm import (
    DEFAULT_CLOSURE_CAP,
    ElementTable,
    Permutation,
    close_with_degree,
    element_order,
    from_cycles,
    identity,
)

LEAF_KINDS = {"cyclic", "symmetric", "alternating", "dihedral", "quaternion8",
              "extraspecial_p3", "frobenius_pq"}


class ParameterError(ValueError):
    """Invalid parameters for a named group family."""


class ActionError(ValueError):
    """A claimed semidirect-product action is not a valid action."""


class FixtureError(ValueError):
    """Malformed fixture file."""


@dataclass(frozen=True)
class GroupSpec:
    """Provenance record: how a group was built."""

    kind: str
    parameters: tuple[int, ...] = ()
    children: tuple["GroupSpec", ...] = ()
    fixture_path: Optional[str] = None

    def label(self) -> str:
        if self.kind == "fixture":
            return Path(self.fixture_path or "fixture").stem
        if self.kind in ("direct_product", "semidirect_product"):
            sep = " x " if self.kind == "direct_product" else " : "
            return "(" + sep.join(c.label() for c in self.children) + ")"
        if self.parameters:
            return f"{self.kind}({','.join(str(p) for p in self.parameters)})"
        return self.kind


class FiniteGroup:
    """A fully enumerated permutation group.

    Elements are referred to by their index in ``table``; index 0 is the
    identity.  Immutable after construction; multiplication rows are
    memoized internally.
    """

    def __init__(self, table: ElementTable, generator_indices: Sequence[int],
                 name: str, spec: Optional[GroupSpec] = None):
        self.table = table
        self.generator_indices = list(generator_indices)
        self.name = name
        self.spec = spec
        self._mul_rows: dict[int, np.ndarray] = {}
        self._inv: Optional[np.ndarray] = None
        self._orders: Optional[np.ndarray] = None

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def deg(self) -> int:
        return self.table.deg

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"

    def element(self, i: int) -> Permutation:
        return self.table.elements[i]

    # -- index-level algebra -------------------------------------------------

    def _index_rows(self, images: np.ndarray) -> np.ndarray:
        lookup = self.table.lookup
        return np.fromiter((lookup[tuple(row)] for row in images.tolist()),
                           dtype=np.int32, count=len(images))

    def mul_row(self, i: int) -> np.ndarray:
        """Indices of ``i * j`` for every ``j``, memoized per ``i``."""
        row = self._mul_rows.get(i)
        if row is None:
            mat = self.table.matrix
            row = self._index_rows(mat[i][mat])
            self._mul_rows[i] = row
        return row

    def mul(self, i: int, j: int) -> int:
        row = self._mul_rows.get(i)
        if row is not None:
            return int(row[j])
        mat = self.table.matrix
        return self.table.lookup[tuple(mat[i][mat[j]].tolist())]

    @property
    def inv(self) -> np.ndarray:
        if self._inv is None:
            inv_images = np.argsort(self.table.matrix, axis=1).astype(np.int32)
            self._inv = self._index_rows(inv_images)
        return self._inv

    @property
    def element_orders(self) -> np.ndarray:
        if self._orders is None:
            self._orders = np.array([element_order(p) for p in self.table.elements],
                                    dtype=np.int64)
        return self._orders

    def conjugate(self, x: int, g: int) -> int:
        """Index of ``g^-1 x g``."""
        mat = self.table.matrix
        gi, xi, ginv = mat[g], mat[x], mat[int(self.inv[g])]
        return self.table.lookup[tuple(ginv[xi[gi]].tolist())]

    def conjugate_many(self, xs: np.ndarray, g: int) -> np.ndarray:
        """Indices of ``g^-1 x g`` for each x in ``xs`` (vectorized)."""
        mat = self.table.matrix
        gi, ginv = mat[g], mat[int(self.inv[g])]
        images = ginv[mat[xs][:, gi]]
        return self._index_rows(images)

    def conjugate_by_all(self, x: int) -> np.ndarray:
        """Indices of ``g^-1 x g`` for every g in the group (vectorized)."""
        mat = self.table.matrix
        xg = mat[x][mat]                                    # row g -> x*g images
        gxg = np.take_along_axis(mat[self.inv], xg, axis=1)  # g^-1 * (x*g)
        return self._index_rows(gxg)

    def commutator(self, x: int, y: int) -> int:
        """Index of ``x^-1 y^-1 x y``."""
        xy = self.mul(x, y)
        yx = self.mul(y, x)
        return self.mul(int(self.inv[yx]), xy)

    def power(self, x: int, k: int) -> int:
        k %= int(self.element_orders[x])
        result, base = 0, x
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def subgroup_closure(self, seed: Sequence[int]) -> frozenset[int]:
        """Element indices of the subgroup generated by ``seed``."""
        members = {0}
        frontier = [0]
        gens = sorted({int(s) for s in seed} | {int(self.inv[s]) for s in seed})
        while frontier:
            nxt = []
            for x in frontier:
                row = None
                for g in gens:
                    y = self.mul(x, g) if row is None else int(row[g])
                    if y not in members:
                        members.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(members)


# -- named families ----------------------------------------------------------


def _trivial(deg: int = 1) -> ElementTable:
    return ElementTable([identity(deg)])


def cyclic(n: int, cap: int = DEFAULT_CLOSURE_CAP) -> FiniteGroup:
    if n < 1:
        raise ParameterError(f"cyclic({n}): n must be >= 1")
    spec = GroupSpec("cyclic", (n,))
    if n == 1:
        return FiniteGroup(_trivial(), [], spec.label(), spec)
    gen = from_cycles(n, [tuple(range(n))])
    table = close_with_degree([gen], n, cap)
    return FiniteGroup(table, [table.index_of(gen)], spec.label(), spec)


def symmetric(n: int, cap: int = DEFAULT_CLOSURE_CAP) -> FiniteGroup:
    if n < 1:
        raise ParameterError(f"symmetric({n}): n must be >= 1")
    spec = GroupSpec("symmetric", (n,))
    if n == 1:
        return FiniteGroup(_trivial(), [], spec.label(), spec)
    gens = [from_cycles(n, [(0, 1)])]
    if n > 2:
        gens.append(from_cycles(n, [tuple(range(n))]))
    table = close_with_degree(gens, n, cap)
    return FiniteGroup(table, [table.index_of(g) for g in gens], spec.label(), spec)


def alternating(n: int, cap: int = DEFAULT_CLOSURE_CAP) -> FiniteGroup:
    if n < 3:
        raise ParameterError(f"alternating({n}): n must be >= 3")
    spec = GroupSpec("alternating", (n,))
    gens = [from_cycles(n, [(0, 1, 2)])]
    if n > 3:
        big = tuple(range(n)) if n % 2 == 1 else tuple(range(1, n))
        gens.append(from_cycles(n, [big]))
    table = close_with_degree(gens, n, cap)
    return FiniteGroup(table, [table.index_of(g) for g in gens], spec.label(), spec)


def dihedral(n: int, cap: int = DEFAULT_CLOSURE_CAP) -> FiniteGroup:
    """Dihedral group of order 2n acting on n points."""
    if n < 2:
        raise ParameterError(f"dihedral({n}): n must be >= 2")
    spec = GroupSpec("dihedral", (n,))
    rot = from_cycles(n, [tuple(range(n))])
    refl = Permutation([(n - i) % n for i in range(n)])
    table = close_with_degree([rot, refl], n, cap)
    return FiniteGroup(table, [table.index_of(rot), table.index_of(refl)],
                       spec.label(), spec)


def quaternion8(cap: int = DEFAULT_CLOSURE_CAP) -> FiniteGroup:
    """Q8 in its regular representation on the 8 units {±1, ±i, ±j, ±k}."""
    # points: 0:1, 1:-1, 2:i, 3:-i, 4:j, 5:-j, 6:k, 7:-k
    left_i = Permutation([2, 3, 1, 0, 6, 7, 5, 4])  # i*1=i, i*i=-1, i*j=k, i*k=-j
    left_j = Permutation([4, 5, 7, 6, 1, 0, 2, 3])  # j*1=j, j*i=-k, j*j=-1, j*k=i
    spec = GroupSpec("quaternion8")
    table = close_with_degree([left_i, left_j], 8, cap)
    return FiniteGroup(table, [table.index_of(left_i), table.index_of(left_j)],
                       spec.label(), spec)


def extraspecial_p3(p: int, cap: int = DEFAULT_CLOSURE_CAP) -> FiniteGroup:
    """Heisenberg group of order p^3 (odd p, exponent p), regular action.

    Elements are triples (a, b, c) over Z/p with
    (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b'); points are the p^3
    element triples and generators act by left multiplication.
    """
    if p < 3 or not _is_prime(p):
        raise ParameterError(f"extraspecial_p3({p}): p must be an odd prime "
                             "(use quaternion8/dihedral(4) for p=2)")

    def pt(a: int, b: int, c: int) -> int:
        return (a * p + b) * p + c

    def left_mult(a: int, b: int, c: int) -> Permutation:
        images = [0] * p ** 3
        for a2 in range(p):
            for b2 in range(p):
                for c2 in range(p):
                    images[pt(a2, b2, c2)] = pt((a + a2) % p, (b + b2) % p,
                                                (c + c2 + a * b2) % p)
        return Permutation(images)

    gens = [left_mult(1, 0, 0), left_mult(0, 1, 0)]
    spec = GroupSpec("extraspecial_p3", (p,))
    table = close_with_degree(gens, p ** 3, cap)
    return FiniteGroup(table, [table.index_of(g) for g in gens], spec.label(), spec)


def frobenius_pq(p: int, q: int, cap: int = DEFAULT_CLOSURE_CAP) -> FiniteGroup:
    """The Frobenius group C_p : C_q on p points (q | p-1 required)."""
    if not (_is_prime(p) and _is_prime(q)) or p == q:
        raise ParameterError(f"frobenius_pq({p},{q}): need distinct primes")
    if (p - 1) % q != 0:
        raise ParameterError(f"frobenius_pq({p},{q}): q must divide p-1")
    mult = pow(_primitive_root(p), (p - 1) // q, p)
    shift = Permutation([(i + 1) % p for i in range(p)])
    scale = Permutation([(i * mult) % p for i in range(p)])
    spec = GroupSpec("frobenius_pq", (p, q))
    table = close_with_degree([shift, scale], p, cap)
    return FiniteGroup(table, [table.index_of(shift), table.index_of(scale)],
                       spec.label(), spec)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _primitive_root(p: int) -> int:
    phi = p - 1
    factors = set()
    n, d = phi, 2
    while d * d <= n:
        while n % d == 0:
            factors.add(d)
            n //= d
        d += 1
    if n > 1:
        factors.add(n)
    for g in range(2, p):
        if all(pow(g, phi // f, p) != 1 for f in factors):
            return g
    raise ParameterError(f"no primitive root mod {p}")  # pragma: no cover


def make_named(spec: GroupSpec, cap: int = DEFAULT_CLOSURE_CAP) -> FiniteGroup:
    if spec.kind not in LEAF_KINDS:
        raise ParameterError(f"not a leaf kind: {spec.kind}")
    builders = {
        "cyclic": cyclic, "symmetric": symmetric, "alternating": alternating,
        "dihedral": dihedral, "extraspecial_p3": extraspecial_p3,
        "frobenius_pq": frobenius_pq,
    }
    if spec.kind == "quaternion8":
        return quaternion8(cap)
    return builders[spec.kind](*spec.parameters, cap=cap)


# -- products ----------------------------------------------------------------


def direct_product(G: FiniteGroup, H: FiniteGroup,
                   cap: int = DEFAULT_CLOSURE_CAP) -> FiniteGroup:
    """External direct product acting on the disjoint union of points."""
    dg, dh = G.deg, H.deg
    deg = dg + dh

    def lift_g(p: Permutation) -> Permutation:
        return Permutation(list(p.images) + list(range(dg, deg)))

    def lift_h(p: Permutation) -> Permutation:
        return Permutation(list(range(dg)) + [dg + i for i in p.images])

    gens = ([lift_g(G.element(i)) for i in G.generator_indices]
            + [lift_h(H.element(i)) for i in H.generator_indices])
    spec = GroupSpec("direct_product", children=(
        G.spec or GroupSpec("fixture", fixture_path=G.name),
        H.spec or GroupSpec("fixture", fixture_path=H.name)))
    table = close_with_degree(gens, deg, cap)
    name = f"{G.name} x {H.name}"
    return FiniteGroup(table, [table.index_of(g) for g in gens], name, spec)


def _extend_generator_map(N: FiniteGroup, gen_images: Sequence[int]) -> np.ndarray:
    """Extend generator images to a verified automorphism of N.

    Returns the automorphism as an index map, or raises ActionError if
    the extension is not a well-defined bijective homomorphism.
    """
    gens = N.generator_indices
    if len(gen_images) != len(gens):
        raise ActionError(f"expected {len(gens)} generator images, got {len(gen_images)}")
    phi = np.full(N.order, -1, dtype=np.int64)
    phi[0] = 0
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g, img in zip(gens, gen_images):
                y = N.mul(x, g)
                fy = N.mul(int(phi[x]), int(img))
                if phi[y] == -1:
                    phi[y] = fy
                    nxt.append(y)
                elif phi[y] != fy:
                    raise ActionError(f"generator images are inconsistent at element {y}")
        frontier = nxt
    if (phi == -1).any():
        raise ActionError("generator images do not generate the whole group")
    # homomorphism on (x, generator) pairs implies homomorphism everywhere
    for g, img in zip(gens, gen_images):
        for x in range(N.order):
            if phi[N.mul(x, g)] != N.mul(int(phi[x]), int(img)):
                raise ActionError(f"not a homomorphism at pair ({x}, {g})")
    if len(set(phi.tolist())) != N.order:
        raise ActionError("map is not a bijection")
    return phi


def semidirect_product(N: FiniteGroup, H: FiniteGroup,
                       action: Sequence[Sequence[int]],
                       cap: int = DEFAULT_CLOSURE_CAP) -> FiniteGroup:
    """External semidirect product N : H in its regular representation.

    ``action[k]`` lists, for the k-th generator of H, the images of the
    generators of N under the corresponding automorphism.  The claimed
    automorphisms are verified, as is compatibility with H's relations
    (the induced map on all of H must be single-valued).
    """
    if len(action) != len(H.generator_indices):
        raise ActionError(f"action must cover all {len(H.generator_indices)} H-generators")
    gen_autos = [_extend_generator_map(N, images) for images in action]

    # extend to a map h -> automorphism over H's Cayley graph and verify
    # consistency, which is exactly compatibility with H's relations
    ident = np.arange(N.order, dtype=np.int64)
    autos: dict[int, np.ndarray] = {0: ident}
    keys: dict[int, bytes] = {0: ident.tobytes()}
    frontier = [0]
    while frontier:
        nxt = []
        for h in frontier:
            for g, auto in zip(H.generator_indices, gen_autos):
                h2 = H.mul(h, g)
                # phi_{h*g}(n) = phi_h(phi_g(n))
                composed = autos[h][auto]
                if h2 not in autos:
                    autos[h2] = composed
                    keys[h2] = composed.tobytes()
                    nxt.append(h2)
                elif keys[h2] != composed.tobytes():
                    raise ActionError(f"action does not respect H's relations at element {h2}")
        frontier = nxt

    nn, nh = N.order, H.order
    if nn * nh > cap:
        from .perm import OrderCapExceededError
        raise OrderCapExceededError(cap, nn * nh)

    def point(n: int, h: int) -> int:
        return n * nh + h

    def left_mult(a: int, s: int) -> Permutation:
        # (a, s) * (n, h) = (a * phi_s(n), s * h)
        auto = autos[s]
        srow = [H.mul(s, h) for h in range(nh)]
        images = [0] * (nn * nh)
        for n in range(nn):
            an = N.mul(a, int(auto[n]))
            base = n * nh
            for h in range(nh):
                images[base + h] = point(an, srow[h])
        return Permutation(images)

    gens = ([left_mult(g, 0) for g in N.generator_indices]
            + [left_mult(0, g) for g in H.generator_indices])
    spec = GroupSpec("semidirect_product", children=(
        N.spec or GroupSpec("fixture", fixture_path=N.name),
        H.spec or GroupSpec("fixture", fixture_path=H.name)))
    table = close_with_degree(gens, nn * nh, cap)
    if len(table) != nn * nh:
        raise ActionError(f"semidirect closure has order {len(table)}, expected {nn * nh}")
    name = f"{N.name} : {H.name}"
    return FiniteGroup(table, [table.index_of(g) for g in gens], name, spec)


# -- fixtures ----------------------------------------------------------------

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycle_line(line: str, deg: int) -> Permutation:
    # points may be separated by commas, whitespace, or both
    compact = re.sub(r"\s+", ",", line.strip())
    compact = compact.replace("(,", "(").replace(",)", ")")
    if compact == "()":
        return identity(deg)
    if not re.fullmatch(r"(\([\d,]+\))+", compact):
        raise ValueError(f"bad cycle notation: {line!r}")
    cycles = []
    for body in _CYCLE_RE.findall(compact):
        pts = [int(tok) for tok in body.split(",") if tok]
        if any(pt < 1 or pt > deg for pt in pts):
            raise ValueError(f"point out of range 1..{deg} in {line!r}")
        cycles.append(tuple(pt - 1 for pt in pts))
    return from_cycles(deg, cycles)


def load_fixture(path: str | Path, cap: int = DEFAULT_CLOSURE_CAP) -> FiniteGroup:
    """Load a group from a generator fixture file.

    Grammar: ``name <label>`` line, ``degree <n>`` line, then one
    permutation per line in disjoint-cycle notation over 1-based points;
    ``()`` is the identity and ``#`` starts a comment.
    """
    path = Path(path)
    name: Optional[str] = None
    deg: Optional[int] = None
    gens: list[Permutation] = []
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if name is None:
                if not line.startswith("name "):
                    raise ValueError("expected 'name <label>'")
                name = line[5:].strip()
            elif deg is None:
                if not line.startswith("degree "):
                    raise ValueError("expected 'degree <n>'")
                deg = int(line[7:].strip())
                if deg < 1:
                    raise ValueError("degree must be >= 1")
            else:
                gens.append(parse_cycle_line(line, deg))
        except ValueError as exc:
            raise FixtureError(f"{path}:{lineno}: {exc}") from exc
    if name is None or deg is None:
        raise FixtureError(f"{path}: missing name/degree header")
    spec = GroupSpec("fixture", fixture_path=str(path))
    table = close_with_degree(gens, deg, cap) if gens else _trivial(deg)
    gen_idx = [table.index_of(g) for g in gens if not g.is_identity()]
    return FiniteGroup(table, gen_idx, name, spec)


def dump_fixture(G: FiniteGroup, path: str | Path,
                 comment: Optional[str] = None) -> None:
    """Write a group's generators in the fixture grammar (1-based points)."""
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"name {G.name}")
    lines.append(f"degree {G.deg}")
    for i in G.generator_indices:
        p = G.element(i)
        cycs = p.cycles()
        if not cycs:
            lines.append("()")
        else:
            lines.append("".join("(" + ",".join(str(pt + 1) for pt in c) + ")"
                                 for c in cycs))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
