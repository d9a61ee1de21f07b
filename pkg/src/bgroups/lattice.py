"""Subgroup lattices: all subgroups, conjugacy classes, normalizers, Möbius function."""

from __future__ import annotations

import numpy as np

from .groups import FiniteGroup, GroupError, Subgroup, is_prime, members_of


class SubgroupLattice:
    """All subgroups of ``group``, sorted by ``(order, members)``.

    Conjugacy classes are numbered in the order of their first member, so
    class representatives are also sorted by order; this is the order of the
    transitive basis of the Burnside ring.
    """

    def __init__(self, group: FiniteGroup, subgroup_bits):
        self.group = group
        G = group
        bits = sorted(set(subgroup_bits), key=lambda b: (b.bit_count(), members_of(b)))
        self.subgroups = [Subgroup(G, b) for b in bits]
        self.index = {b: i for i, b in enumerate(bits)}
        n = len(bits)
        if bits[0] != 1 or bits[-1] != G.all_bits:
            raise GroupError("lattice must contain the trivial subgroup and the group")

        # down[i]: subgroups contained in subgroup i, as a bitset over indices
        self.down = [0] * n
        self.up = [0] * n
        for i, bi in enumerate(bits):
            oi = bi.bit_count()
            d = 0
            for j in range(i + 1):
                bj = bits[j]
                if bj & bi == bj and oi % bj.bit_count() == 0:
                    d |= 1 << j
            self.down[i] = d
            for j in members_of(d):
                self.up[j] |= 1 << i

        self.class_of = [-1] * n
        self.classes: list[list[int]] = []
        for i, b in enumerate(bits):
            if self.class_of[i] >= 0:
                continue
            c = len(self.classes)
            orbit = {b}
            todo = [b]
            while todo:
                x = todo.pop()
                for g in G.generators:
                    y = G.conjugate_bits(x, g)
                    if y not in orbit:
                        orbit.add(y)
                        todo.append(y)
            members = sorted(self.index[x] for x in orbit)
            for j in members:
                self.class_of[j] = c
            self.classes.append(members)
        self.reps = [c[0] for c in self.classes]
        self._normalizers: dict[int, Subgroup] = {}
        self._mobius: np.ndarray | None = None

    def __len__(self) -> int:
        return len(self.subgroups)

    def __repr__(self) -> str:
        return f"<SubgroupLattice of {self.group.name}: {len(self)} subgroups, {len(self.classes)} classes>"

    # -- lookups -----------------------------------------------------------

    def index_of(self, H: Subgroup | int) -> int:
        b = H.bits if isinstance(H, Subgroup) else H
        try:
            return self.index[b]
        except KeyError:
            raise GroupError("not a subgroup of this lattice's group") from None

    def class_index(self, H: Subgroup | int) -> int:
        return self.class_of[self.index_of(H)]

    def rep(self, c: int) -> Subgroup:
        return self.subgroups[self.reps[c]]

    @property
    def class_reps(self) -> list[Subgroup]:
        return [self.subgroups[i] for i in self.reps]

    def class_label(self, c: int) -> str:
        order = self.subgroups[self.reps[c]].order
        k = sum(1 for d in range(c) if self.subgroups[self.reps[d]].order == order)
        return f"{order}:{k}"

    def class_labels(self) -> list[str]:
        return [self.class_label(c) for c in range(len(self.classes))]

    def class_of_label(self, label: str) -> int:
        for c in range(len(self.classes)):
            if self.class_label(c) == label:
                return c
        raise GroupError(f"no subgroup class {label!r}")

    def leq(self, i: int, j: int) -> bool:
        return bool(self.down[j] >> i & 1)

    def normalizer(self, i: int) -> Subgroup:
        N = self._normalizers.get(i)
        if N is None:
            N = self._normalizers[i] = Subgroup(self.group, self.group.normalizer_bits(self.subgroups[i].bits))
        return N

    # -- Möbius function -----------------------------------------------------

    @property
    def mobius_table(self) -> np.ndarray:
        """``mu[X, H]`` for all index pairs (zero unless ``X <= H``)."""
        if self._mobius is None:
            n = len(self.subgroups)
            mu = np.zeros((n, n), dtype=np.int64)
            for h in range(n):
                strict = members_of(self.down[h] & ~(1 << h))
                if strict:
                    mu[:, h] = -mu[:, strict].sum(axis=1)
                mu[h, h] = 1
            self._mobius = mu
        return self._mobius

    def mobius(self, X: int, H: int) -> int:
        if not self.leq(X, H):
            raise GroupError("mobius(X, H) needs X <= H")
        return int(self.mobius_table[X, H])

    # -- normal structure ----------------------------------------------------

    def normal_subgroups(self) -> list[Subgroup]:
        return [self.subgroups[c[0]] for c in self.classes if len(c) == 1]

    def minimal_normal_subgroups(self) -> list[Subgroup]:
        if self.group.order == 1:
            raise GroupError("the trivial group has no minimal normal subgroup")
        normals = [N for N in self.normal_subgroups() if N.order > 1]
        return [N for N in normals if not any(M < N for M in normals)]

    def complements(self, N: Subgroup) -> list[Subgroup]:
        if not self.group.is_normal(N.bits):
            raise GroupError("subgroup is not normal")
        target = self.group.order // N.order
        return [K for K in self.subgroups if K.order == target and K.bits & N.bits == 1]

    def maximal_subgroups(self) -> list[Subgroup]:
        top = len(self.subgroups) - 1
        out = []
        for i in members_of(self.down[top] & ~(1 << top)):
            if self.up[i] & ~(1 << i) == 1 << top:
                out.append(self.subgroups[i])
        return out

    def frattini_subgroup(self) -> Subgroup:
        bits = self.group.all_bits
        for M in self.maximal_subgroups():
            bits &= M.bits
        return Subgroup(self.group, bits)


def _cyclic_join_closure(G: FiniteGroup) -> list[int]:
    cyclic: dict[int, int] = {}
    for x in range(G.order):
        b = G.closure_bits([x])
        cyclic.setdefault(b, x)
    cyc_items = sorted(cyclic.items(), key=lambda kv: (kv[0].bit_count(), kv[1]))

    known: set[int] = set()
    queue: list[int] = []

    def add_class(b: int) -> None:
        if b in known:
            return
        orbit = [b]
        known.add(b)
        for y in orbit:
            for g in G.generators:
                z = G.conjugate_bits(y, g)
                if z not in known:
                    known.add(z)
                    orbit.append(z)
        queue.append(b)

    for b, _ in cyc_items:
        add_class(b)
    while queue:
        A = queue.pop()
        for cb, x in cyc_items:
            if A >> x & 1:
                continue
            add_class(G.closure_bits([x], A))
    return list(known)


def enumerate_subgroups(G: FiniteGroup) -> SubgroupLattice:
    """The subgroup lattice of ``G`` (cached on the group).

    Subgroups of a nested subgroup or of a quotient are read off the lattice
    of the parent when that is already known; otherwise every subgroup is
    found as an iterated join of cyclic subgroups.
    """
    L = G._cache.get("lattice")
    if L is not None:
        return L
    bits = None
    root = G.root
    if root is not G and "lattice" in root._cache:
        rb = G.root_bits
        bits = [G.lower_bits(b) for b in root._cache["lattice"].index if b & rb == b]
    elif G.projection is not None and "lattice" in G.projection.source._cache:
        proj = G.projection
        nb = proj.kernel.bits
        bits = [proj.image_bits(b) for b in proj.source._cache["lattice"].index if b & nb == nb]
    if bits is None:
        bits = _cyclic_join_closure(G)
    L = SubgroupLattice(G, bits)
    G._cache["lattice"] = L
    return L


def is_elementary_abelian(G: FiniteGroup, H: Subgroup) -> bool:
    mul = G.mul
    ms = H.members
    orders = {G.element_order(x) for x in ms if x != 0}
    if len(orders) > 1:
        return False
    if orders and not is_prime(next(iter(orders))):
        return False
    return all(mul[a][b] == mul[b][a] for a in ms for b in ms)
