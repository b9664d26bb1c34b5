"""Structural subgroup machinery: center, derived series, Sylow and
O_p, Fitting subgroups, quotients, normal-subgroup enumeration, Hall
subgroups, Frobenius detection, nilpotency class, and stripping of
abelian direct factors."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .classes import arithmetic_profile, conjugacy_classes, pi_part_of_element
from .construct import FiniteGroup, GroupSpec
from .perm import ElementTable, Permutation

DEFAULT_NORMAL_SUBGROUP_LIMIT = 10000


class EnumerationLimitError(RuntimeError):
    """Subgroup enumeration outgrew the configured limit; the structural
    analysis of the group is incomplete rather than silently truncated."""


class NotNilpotentError(ValueError):
    """Nilpotency class requested for a non-nilpotent group."""


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of an ambient group, stored as an element-index set."""

    members: frozenset[int]
    ambient: FiniteGroup
    tags: frozenset[str] = frozenset()

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def tagged(self, *tags: str) -> "Subgroup":
        return Subgroup(self.members, self.ambient, self.tags | frozenset(tags))

    def __le__(self, other: "Subgroup") -> bool:
        return self.members <= other.members


def subgroup(G: FiniteGroup, members: frozenset[int], *tags: str) -> Subgroup:
    return Subgroup(members, G, frozenset(tags))


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return subgroup(G, frozenset([0]))


def whole_group(G: FiniteGroup) -> Subgroup:
    return subgroup(G, frozenset(range(G.order)))


def generating_set(G: FiniteGroup, members: frozenset[int]) -> list[int]:
    """A small generating set for a subgroup, grown greedily."""
    if members == {0}:
        return []
    gens: list[int] = []
    have: frozenset[int] = frozenset([0])
    for x in sorted(members):
        if x not in have:
            gens.append(x)
            have = G.subgroup_closure(gens)
            if have == members:
                return gens
    raise ValueError("member set is not closed")


def is_normal(G: FiniteGroup, members: frozenset[int]) -> bool:
    gens = generating_set(G, members)
    return all(G.conjugate(x, g) in members
               for x in gens for g in G.generator_indices)


def normal_closure(G: FiniteGroup, seed: list[int]) -> frozenset[int]:
    """Smallest normal subgroup of G containing the seed elements."""
    gens = list(seed)
    members = G.subgroup_closure(gens)
    changed = True
    while changed:
        changed = False
        for x in list(gens):
            for g in G.generator_indices:
                y = G.conjugate(x, g)
                if y not in members:
                    gens.append(y)
                    members = G.subgroup_closure(gens)
                    changed = True
    return members


def center(G: FiniteGroup) -> Subgroup:
    """Z(G): elements commuting with every generator."""
    mat = G.table.matrix
    mask = np.ones(G.order, dtype=bool)
    for g in G.generator_indices:
        grow = mat[g]
        gx = grow[mat]        # g * x images for all x
        xg = mat[:, grow]     # x * g images for all x
        mask &= (gx == xg).all(axis=1)
    return subgroup(G, frozenset(np.nonzero(mask)[0].tolist()), "center")


def centralizer_of_set(G: FiniteGroup, xs: list[int]) -> frozenset[int]:
    mat = G.table.matrix
    mask = np.ones(G.order, dtype=bool)
    for x in xs:
        xrow = mat[x]
        mask &= (mat[:, xrow] == xrow[mat]).all(axis=1)
    return frozenset(np.nonzero(mask)[0].tolist())


def normalizer(G: FiniteGroup, members: frozenset[int]) -> frozenset[int]:
    gens = generating_set(G, members)
    mask = np.ones(G.order, dtype=bool)
    member_mask = np.zeros(G.order, dtype=bool)
    member_mask[list(members)] = True
    for x in gens:
        mask &= member_mask[G.conjugate_by_all(x)]
    return frozenset(np.nonzero(mask)[0].tolist())


def derived_subgroup(G: FiniteGroup, members: frozenset[int]) -> frozenset[int]:
    """Derived subgroup of the given subgroup (as a subset of G)."""
    gens = generating_set(G, members)
    comms = sorted({G.commutator(x, y) for x in gens for y in gens} - {0})
    if not comms:
        return frozenset([0])
    # [H,H] is normal in H: take the closure under H-conjugation
    sub = G.subgroup_closure(comms)
    changed = True
    while changed:
        changed = False
        for x in list(comms):
            for h in gens:
                y = G.conjugate(x, h)
                if y not in sub:
                    comms.append(y)
                    sub = G.subgroup_closure(comms)
                    changed = True
    return sub


def derived_series(G: FiniteGroup) -> tuple[list[Subgroup], bool]:
    """G >= G' >= G'' >= ... until stabilization; soluble iff it hits 1."""
    series = [whole_group(G)]
    while True:
        nxt = derived_subgroup(G, series[-1].members)
        if nxt == series[-1].members:
            break
        series.append(subgroup(G, nxt))
        if nxt == {0}:
            break
    return series, series[-1].members == {0}


def is_soluble(G: FiniteGroup) -> bool:
    return derived_series(G)[1]


def sylow(G: FiniteGroup, p: int) -> Subgroup:
    """A Sylow p-subgroup, grown by normalizer ascent.

    While |P| is short of the full p-part, some element of N_G(P) has a
    p-part outside P, and adjoining it keeps the join a p-group since P
    is normal in its normalizer.
    """
    target = arithmetic_profile(G.order).part(p)
    members: frozenset[int] = frozenset([0])
    if target == 1:
        return subgroup(G, members, f"sylow-{p}")
    while len(members) < target:
        candidates = normalizer(G, members) if len(members) > 1 else frozenset(range(G.order))
        extended = False
        for x in sorted(candidates - members):
            if int(G.element_orders[x]) % p != 0:
                continue
            y = pi_part_of_element(G, x, {p})
            if y not in members:
                members = G.subgroup_closure(generating_set(G, members) + [y])
                extended = True
                break
        if not extended:  # pragma: no cover - Sylow theory guarantees progress
            raise RuntimeError(f"sylow ascent stalled at order {len(members)}")
    return subgroup(G, members, f"sylow-{p}")


def core_p(G: FiniteGroup, p: int) -> Subgroup:
    """O_p(G): the intersection of all conjugates of one Sylow p-subgroup."""
    P = sylow(G, p)
    member_mask = np.zeros(G.order, dtype=bool)
    member_mask[list(P.members)] = True
    core = frozenset(x for x in P.members
                     if member_mask[G.conjugate_by_all(x)].all())
    return subgroup(G, core, f"core-{p}", "normal")


def fitting(G: FiniteGroup) -> Subgroup:
    """F(G): the join of the O_p(G) over the primes dividing |G|."""
    seed: set[int] = {0}
    for p in arithmetic_profile(G.order).primes:
        seed |= core_p(G, p).members
    members = G.subgroup_closure(sorted(seed))
    return subgroup(G, members, "fitting", "normal")


@dataclass
class Quotient:
    """A quotient group together with the projection data."""

    group: FiniteGroup
    projection: np.ndarray   # element index of G -> element index of G/N
    coset_of: np.ndarray     # element index of G -> coset point

    def preimage(self, members: frozenset[int]) -> frozenset[int]:
        mask = np.isin(self.projection, list(members))
        return frozenset(np.nonzero(mask)[0].tolist())


def quotient(G: FiniteGroup, N: Subgroup | frozenset[int]) -> Quotient:
    """G/N realized on the left cosets of N by translation."""
    members = N.members if isinstance(N, Subgroup) else N
    if not is_normal(G, members):
        raise ValueError("quotient by a non-normal subgroup")
    nlist = sorted(members)
    coset_of = np.full(G.order, -1, dtype=np.int64)
    reps: list[int] = []
    for x in range(G.order):
        if coset_of[x] == -1:
            cid = len(reps)
            reps.append(x)
            coset_of[G.mul_row(x)[nlist]] = cid
    k = len(reps)

    def action_of(g: int) -> Permutation:
        return Permutation([int(coset_of[G.mul(g, r)]) for r in reps])

    perms = [action_of(x) for x in range(G.order)]
    # enumerate the quotient directly; translation action is the full group
    seen: dict[tuple[int, ...], int] = {}
    elements: list[Permutation] = [Permutation(range(k))]
    seen[elements[0].images] = 0
    projection = np.zeros(G.order, dtype=np.int64)
    for x, p in enumerate(perms):
        idx = seen.get(p.images)
        if idx is None:
            idx = len(elements)
            seen[p.images] = idx
            elements.append(p)
        projection[x] = idx
    table = ElementTable(elements)
    gen_idx = sorted({int(projection[g]) for g in G.generator_indices} - {0})
    name = f"{G.name}/N{len(members)}"
    spec = GroupSpec("fixture", fixture_path=name)
    Q = FiniteGroup(table, gen_idx, name, spec)
    return Quotient(Q, projection, coset_of)


def fitting2(G: FiniteGroup) -> Subgroup:
    """F2(G): the preimage in G of F(G/F(G))."""
    F = fitting(G)
    if F.order == G.order:
        return subgroup(G, F.members, "fitting2", "normal")
    q = quotient(G, F)
    FQ = fitting(q.group)
    return subgroup(G, q.preimage(FQ.members), "fitting2", "normal")


def normal_subgroups(G: FiniteGroup,
                     limit: int = DEFAULT_NORMAL_SUBGROUP_LIMIT) -> list[Subgroup]:
    """All normal subgroups, as joins of conjugacy-class closures."""
    profile = conjugacy_classes(G)
    seeds: set[frozenset[int]] = {frozenset([0])}
    for rep, members in profile.classes:
        seeds.add(G.subgroup_closure(sorted(members)))
    found = set(seeds)
    if len(found) > limit:
        raise EnumerationLimitError(
            f"more than {limit} normal subgroups in {G.name}")
    frontier = list(seeds)
    while frontier:
        nxt = []
        for A in frontier:
            for B in seeds:
                if B <= A:
                    continue
                join = G.subgroup_closure(generating_set(G, A) + generating_set(G, B))
                if join not in found:
                    found.add(join)
                    nxt.append(join)
                    if len(found) > limit:
                        raise EnumerationLimitError(
                            f"more than {limit} normal subgroups in {G.name}")
        frontier = nxt
    return [subgroup(G, m, "normal") for m in sorted(found, key=lambda m: (len(m), sorted(m)))]


@dataclass(frozen=True)
class FrobeniusVerdict:
    is_frobenius: bool
    kernel: Optional[Subgroup] = None
    complement: Optional[Subgroup] = None


def is_frobenius(Q: FiniteGroup,
                 limit: int = DEFAULT_NORMAL_SUBGROUP_LIMIT) -> FrobeniusVerdict:
    """Search for a Frobenius kernel/complement pair.

    A proper nontrivial normal K qualifies iff centralizers of its
    nonidentity elements stay inside K; the complement is then a Hall
    subgroup for the complementary primes (kernel and complement have
    coprime orders).
    """
    n = Q.order
    for K in normal_subgroups(Q, limit):
        if K.order in (1, n):
            continue
        if n % K.order != 0:
            continue  # pragma: no cover - Lagrange makes this impossible
        if math.gcd(K.order, n // K.order) != 1:
            continue
        if not all(centralizer_of_set(Q, [k]) <= K.members
                   for k in K.members if k != 0):
            continue
        pi = set(arithmetic_profile(n // K.order).primes)
        H = hall(Q, pi)
        if H is not None and H.order == n // K.order and (H.members & K.members) == {0}:
            return FrobeniusVerdict(True, K.tagged("frobenius-kernel"),
                                    H.tagged("frobenius-complement"))
    return FrobeniusVerdict(False)


def subgroup_as_group(G: FiniteGroup, members: frozenset[int],
                      name: Optional[str] = None) -> tuple[FiniteGroup, dict[int, int]]:
    """Reify a subgroup as a standalone group on the same points.

    Returns the group and a map from new element indices back to the
    ambient indices.
    """
    order = sorted(members)
    order.remove(0)
    order = [0] + order
    elements = [G.element(i) for i in order]
    table = ElementTable(elements)
    gens = generating_set(G, frozenset(members))
    gen_idx = [table.index_of(G.element(g)) for g in gens]
    label = name or f"{G.name}|sub{len(members)}"
    H = FiniteGroup(table, gen_idx, label, GroupSpec("fixture", fixture_path=label))
    back = {new: old for new, old in enumerate(order)}
    return H, back


def minimal_normal_subgroups(G: FiniteGroup,
                             limit: int = DEFAULT_NORMAL_SUBGROUP_LIMIT) -> list[Subgroup]:
    nontrivial = [N for N in normal_subgroups(G, limit) if N.order > 1]
    return [N for N in nontrivial
            if not any(M.order > 1 and M.members < N.members for M in nontrivial)]


def _complement_abelian(G: FiniteGroup, M: Subgroup) -> Optional[Subgroup]:
    """Complement of an abelian normal M with gcd(|M|, |G/M|) = 1.

    Classical averaging construction: correct a transversal by the
    "average" of the associated factor set, which exists because |G/M|
    is invertible on M.
    """
    q = quotient(G, M)
    Q = q.group
    nq = Q.order
    if math.gcd(nq, M.order) != 1:
        return None
    # transversal r: Q -> G picking the least preimage
    r = [int(np.nonzero(q.projection == i)[0][0]) for i in range(nq)]
    inv = G.inv
    # u(a) = prod over s of factor set t(a, s) = r(a) r(s) r(as)^{-1}, in M
    exponent = 1
    for x in M.members:
        exponent = math.lcm(exponent, int(G.element_orders[x]))
    k = pow(nq, -1, exponent)
    corrected = []
    for a in range(nq):
        u = 0
        for s in range(nq):
            t = G.mul(G.mul(r[a], r[s]), int(inv[r[int(Q.mul(a, s))]]))
            u = G.mul(u, t)
        # c(a) = u(a)^{-1/|Q|} * r(a) gives a homomorphic transversal
        corrected.append(G.mul(G.power(int(inv[u]), k), r[a]))
    H = G.subgroup_closure(corrected)
    if len(H) == nq and (H & M.members) == {0}:
        return subgroup(G, H, "complement")
    return None  # pragma: no cover - averaging is exact for abelian kernels


def hall(G: FiniteGroup, pi: set[int] | frozenset[int],
         limit: int = DEFAULT_NORMAL_SUBGROUP_LIMIT) -> Optional[Subgroup]:
    """A Hall pi-subgroup, or None when the search cannot produce one.

    Recursive construction down a chief series; complete for soluble
    groups at this scale.  Non-soluble inputs may legitimately return
    None (Hall subgroups need not exist there).
    """
    pi = set(pi)
    target = 1
    for p, e in arithmetic_profile(G.order).prime_factors:
        if p in pi:
            target *= p ** e
    if target == 1:
        return trivial_subgroup(G).tagged("hall")
    if target == G.order:
        return whole_group(G).tagged("hall")
    if len(arithmetic_profile(target).prime_factors) == 1:
        return sylow(G, arithmetic_profile(target).primes[0]).tagged("hall")
    for M in minimal_normal_subgroups(G, limit):
        prof = arithmetic_profile(M.order)
        if len(prof.prime_factors) != 1:
            continue  # non-elementary-abelian minimal normal: not usable here
        p = prof.primes[0]
        q = quotient(G, M)
        HQ = hall(q.group, pi, limit)
        if HQ is None:
            continue
        pre = q.preimage(HQ.members)
        if p in pi:
            if len(pre) == target:
                return subgroup(G, pre, "hall")
            continue
        if len(pre) == G.order:
            comp = _complement_abelian(G, M)
            if comp is not None and comp.order == target:
                return comp.tagged("hall")
            continue
        K, back = subgroup_as_group(G, pre)
        HK = hall(K, pi, limit)
        if HK is not None and HK.order == target:
            return subgroup(G, frozenset(back[i] for i in HK.members), "hall")
    return None


def strip_abelian_factors(G: FiniteGroup,
                          limit: int = DEFAULT_NORMAL_SUBGROUP_LIMIT
                          ) -> tuple[FiniteGroup, Subgroup]:
    """Split G = H x A with A a maximal-order central direct factor.

    Returns H reified as a group (the class-size-carrying core) and A.
    The witness is one maximal choice; no canonicity is claimed.
    """
    Z = center(G)
    if Z.order == G.order:
        H, _ = subgroup_as_group(G, frozenset([0]), name=f"{G.name}|core")
        return H, subgroup(G, Z.members, "abelian-factor")
    normals = normal_subgroups(G, limit)
    by_order: dict[int, list[Subgroup]] = {}
    for N in normals:
        by_order.setdefault(N.order, []).append(N)
    for A_members in sorted(_abelian_subgroups(G, Z.members),
                            key=len, reverse=True):
        need = G.order // len(A_members)
        for H in by_order.get(need, []):
            if (H.members & A_members) == {0}:
                core, _ = subgroup_as_group(G, H.members, name=f"{G.name}|core")
                return core, subgroup(G, A_members, "abelian-factor")
    raise RuntimeError("no decomposition found; the trivial factor always works")


def _abelian_subgroups(G: FiniteGroup, members: frozenset[int]) -> set[frozenset[int]]:
    """All subgroups of an abelian subgroup, by closing cyclic joins."""
    cyclics = {G.subgroup_closure([x]) for x in members}
    cyclics.add(frozenset([0]))
    found = set(cyclics)
    frontier = list(cyclics)
    while frontier:
        nxt = []
        for A in frontier:
            for B in cyclics:
                join = G.subgroup_closure(sorted(A | B))
                if join not in found:
                    found.add(join)
                    nxt.append(join)
        frontier = nxt
    return found


def is_nilpotent(G: FiniteGroup) -> bool:
    """Cheap check: nilpotent iff every Sylow subgroup is normal."""
    return all(is_normal(G, sylow(G, p).members)
               for p in arithmetic_profile(G.order).primes)


def nilpotency_class(G: FiniteGroup) -> int:
    """Length of the lower central series down to the trivial subgroup."""
    if G.order == 1:
        return 0
    if not is_nilpotent(G):
        raise NotNilpotentError(f"{G.name} is not nilpotent")
    ggens = G.generator_indices
    current = frozenset(range(G.order))
    k = 0
    while current != {0}:
        gens = generating_set(G, current)
        comms = sorted({G.commutator(x, g) for x in gens for g in ggens} - {0})
        current = normal_closure(G, comms) if comms else frozenset([0])
        k += 1
    return k


@dataclass
class StructureReport:
    """One-stop structural summary used by the theorem verdicts."""

    center: Subgroup
    derived_series: list[Subgroup]
    soluble: bool
    fitting: Subgroup
    fitting2: Subgroup
    sylows: dict[int, Subgroup]
    nilpotency_class: Optional[int]


def structure_report(G: FiniteGroup,
                     limit: int = DEFAULT_NORMAL_SUBGROUP_LIMIT) -> StructureReport:
    series, soluble = derived_series(G)
    F = fitting(G)
    F2 = fitting2(G)
    sylows = {p: sylow(G, p) for p in arithmetic_profile(G.order).primes}
    nil_class: Optional[int] = None
    if all(is_normal(G, P.members) for P in sylows.values()):
        nil_class = nilpotency_class(G)
    return StructureReport(center(G), series, soluble, F, F2, sylows, nil_class)
