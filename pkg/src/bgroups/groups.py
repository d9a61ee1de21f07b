"""Concrete finite groups stored as Cayley tables with permutation witnesses.

Elements are integer ids ``0 .. order-1`` with ``0`` the identity.  Subsets of
a group (subgroups, cosets) are Python ints used as bitsets over those ids.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

DEFAULT_ORDER_CAP = 2000


class GroupError(ValueError):
    """Raised for invalid group constructions (bad input, cap exceeded, ...)."""


def order_cap() -> int:
    env = os.environ.get("BGROUPS_MAX_ORDER")
    return int(env) if env else DEFAULT_ORDER_CAP


def bits_of(ids: Iterable[int]) -> int:
    b = 0
    for i in ids:
        b |= 1 << i
    return b


def members_of(bits: int) -> list[int]:
    out = []
    i = 0
    while bits:
        low = bits & -bits
        i = low.bit_length() - 1
        out.append(i)
        bits ^= low
    return out


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# Permutations


class Permutation:
    """A bijection of ``{0, ..., d-1}`` given by its image list.

    Composition follows function notation: ``(a * b)(x) == a(b(x))``.
    """

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise GroupError(f"not a bijection: {images}")
        self.images = images

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int | None = None) -> Permutation:
        cycles = [tuple(c) for c in cycles]
        pts = [p for c in cycles for p in c]
        if len(pts) != len(set(pts)):
            raise GroupError(f"cycles are not disjoint: {cycles}")
        if degree is None:
            degree = max(pts, default=-1) + 1
        if pts and max(pts) >= degree:
            raise GroupError("cycle point outside the domain")
        images = list(range(degree))
        for c in cycles:
            for k, p in enumerate(c):
                images[p] = c[(k + 1) % len(c)]
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def extend(self, degree: int) -> Permutation:
        return Permutation(self.images + tuple(range(self.degree, degree)))

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: Permutation) -> Permutation:
        a = self.images
        return Permutation(tuple(a[i] for i in other.images))

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cyc = [start]
            seen.add(start)
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self.images[x]
            out.append(tuple(cyc))
        return out

    def cycle_string(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({self.cycle_string()}, degree={self.degree})"


# ---------------------------------------------------------------------------
# Groups


class FiniteGroup:
    """A finite group given by its multiplication table.

    ``mul[a][b]`` is the id of ``a*b``; ``perm_rep[a]`` is a faithful
    permutation witness of element ``a``.  Groups are immutable; derived data
    is memoised in ``_cache``.

    Groups created by :meth:`subgroup_group` remember the *root* group they
    sit in (``root`` and ``root_ids``) so that the subgroup lattices and
    Burnside operations of nested subgroups can share one coordinate system.
    Groups created by :func:`quotient` carry their ``projection``.
    """

    def __init__(
        self,
        mul: Sequence[Sequence[int]],
        perm_rep: Sequence[Permutation],
        generators: Sequence[int] | None = None,
        name: str | None = None,
    ):
        self.mul = tuple(tuple(row) for row in mul)
        self.order = len(self.mul)
        if self.order == 0:
            raise GroupError("empty group")
        self.perm_rep = tuple(perm_rep)
        inv = [0] * self.order
        for a, row in enumerate(self.mul):
            for b, c in enumerate(row):
                if c == 0:
                    inv[a] = b
                    break
        self.inv = tuple(inv)
        self.identity = 0
        self.name = name
        self.root: FiniteGroup = self
        self.root_ids: tuple[int, ...] | None = None
        self.projection: GroupHom | None = None
        self._cache: dict = {}
        if generators is None:
            generators = self._greedy_generators(self.all_bits)
        self.generators = list(generators)

    # -- basic structure -------------------------------------------------

    def __repr__(self) -> str:
        return f"<FiniteGroup {self.name or '?'} order={self.order}>"

    def __len__(self) -> int:
        return self.order

    @property
    def all_bits(self) -> int:
        return (1 << self.order) - 1

    @property
    def degree(self) -> int:
        return self.perm_rep[0].degree

    def element_order(self, a: int) -> int:
        orders = self._cache.get("element_orders")
        if orders is None:
            orders = []
            mul = self.mul
            for x in range(self.order):
                n, y = 1, x
                while y != 0:
                    y = mul[y][x]
                    n += 1
                orders.append(n)
            self._cache["element_orders"] = orders
        return orders[a]

    def power(self, a: int, k: int) -> int:
        r = 0
        for _ in range(k % self.element_order(a)):
            r = self.mul[r][a]
        return r

    def conjugate(self, x: int, g: int) -> int:
        """``g x g^-1``."""
        return self.mul[self.mul[g][x]][self.inv[g]]

    def conjugate_bits(self, bits: int, g: int) -> int:
        """``g S g^-1`` for a subset ``S`` given as a bitset."""
        out = 0
        mul, gi = self.mul, self.inv[g]
        row = mul[g]
        for x in members_of(bits):
            out |= 1 << mul[row[x]][gi]
        return out

    def closure_bits(self, gens: Iterable[int], start: int = 1) -> int:
        """Bitset of the subgroup generated by ``gens`` and the subgroup ``start``."""
        gens = [g for g in gens if g != 0]
        if start != 1:
            gens += self.generating_set(start)
        bits = start | 1
        todo = members_of(bits)
        mul = self.mul
        while todo:
            x = todo.pop()
            row = mul[x]
            for s in gens:
                y = row[s]
                if not bits >> y & 1:
                    bits |= 1 << y
                    todo.append(y)
        return bits

    def _greedy_generators(self, bits: int) -> list[int]:
        cand = sorted(members_of(bits), key=lambda x: (-self.element_order(x), x)) if self.order > 1 else []
        gens: list[int] = []
        cur = 1
        for x in cand:
            if cur == bits:
                break
            if not cur >> x & 1:
                gens.append(x)
                cur = self.closure_bits(gens)
        return gens

    def generating_set(self, bits: int) -> list[int]:
        """A small generating set of the subgroup ``bits``, chosen greedily."""
        cache = self._cache.setdefault("gensets", {})
        gens = cache.get(bits)
        if gens is None:
            gens = cache[bits] = self._greedy_generators(bits)
        return gens

    # -- subgroups -------------------------------------------------------

    def subgroup(self, elements: Iterable[int] | int) -> Subgroup:
        """Subgroup generated by the given ids (or bitset)."""
        if isinstance(elements, int):
            bits = elements
            if self.closure_bits([], bits) != bits:
                raise GroupError("bitset is not a subgroup")
        else:
            bits = self.closure_bits(list(elements))
        return Subgroup(self, bits)

    @property
    def whole(self) -> Subgroup:
        return Subgroup(self, self.all_bits)

    @property
    def trivial(self) -> Subgroup:
        return Subgroup(self, 1)

    def is_normal(self, H: Subgroup | int) -> bool:
        bits = H.bits if isinstance(H, Subgroup) else H
        gens = self.generating_set(bits)
        for g in self.generators:
            for h in gens:
                if not bits >> self.conjugate(h, g) & 1:
                    return False
        return True

    def normalizer_bits(self, bits: int) -> int:
        gens = self.generating_set(bits)
        out = 0
        for g in range(self.order):
            if all(bits >> self.conjugate(h, g) & 1 for h in gens):
                out |= 1 << g
        return out

    def commutator_bits(self, a_bits: int, b_bits: int) -> int:
        """Bitset of ``[A, B]`` for subgroups ``A``, ``B``."""
        mul, inv = self.mul, self.inv
        comms = set()
        bs = members_of(b_bits)
        for a in members_of(a_bits):
            for b in bs:
                comms.add(mul[mul[a][b]][mul[inv[a]][inv[b]]])
        # normal closure in <A, B>
        bits = self.closure_bits(comms)
        amb = self.generating_set(a_bits) + self.generating_set(b_bits)
        while True:
            extra = {self.conjugate(x, g) for x in members_of(bits) for g in amb}
            new = self.closure_bits(extra, bits)
            if new == bits:
                return bits
            bits = new

    def conjugacy_classes(self) -> list[list[int]]:
        """Element conjugacy classes, ordered by minimal element."""
        cls = self._cache.get("conj_classes")
        if cls is None:
            seen = 0
            cls = []
            for x in range(self.order):
                if seen >> x & 1:
                    continue
                orbit = [x]
                seen |= 1 << x
                for y in orbit:
                    for g in self.generators:
                        z = self.conjugate(y, g)
                        if not seen >> z & 1:
                            seen |= 1 << z
                            orbit.append(z)
                cls.append(sorted(orbit))
            self._cache["conj_classes"] = cls
        return cls

    # -- nested subgroups as groups ---------------------------------------

    def lift_bits(self, bits: int) -> int:
        """Translate a bitset over this group's ids to ids of its root."""
        if self.root_ids is None:
            return bits
        return bits_of(self.root_ids[i] for i in members_of(bits))

    def _root_to_local(self) -> dict[int, int]:
        loc = self._cache.get("root_to_local")
        if loc is None:
            loc = self._cache["root_to_local"] = {r: i for i, r in enumerate(self.root_ids)}
        return loc

    def lower_bits(self, root_bits: int) -> int:
        """Inverse of :meth:`lift_bits` (root bits must lie inside this group)."""
        if self.root_ids is None:
            return root_bits
        loc = self._root_to_local()
        return bits_of(loc[r] for r in members_of(root_bits))

    def local_id(self, root_id: int) -> int:
        if self.root_ids is None:
            return root_id
        return self._root_to_local()[root_id]

    @property
    def root_bits(self) -> int:
        return self.lift_bits(self.all_bits)

    def subgroup_group(self, H: Subgroup | int) -> FiniteGroup:
        """The subgroup ``H`` as a group in its own right.

        The result is cached per root group, so the same subgroup always
        yields the same :class:`FiniteGroup` object.
        """
        bits = H.bits if isinstance(H, Subgroup) else H
        root = self.root
        rbits = self.lift_bits(bits)
        if rbits == root.all_bits:
            return root
        cache = root._cache.setdefault("subgroup_groups", {})
        K = cache.get(rbits)
        if K is None:
            ids = members_of(rbits)
            local = {r: i for i, r in enumerate(ids)}
            rmul = root.mul
            mul = [[local[rmul[a][b]] for b in ids] for a in ids]
            perm = [root.perm_rep[a] for a in ids]
            gens = [local[g] for g in root.generating_set(rbits)]
            name = f"{root.name}[{len(ids)}:{_label_hint(root, rbits)}]"
            K = FiniteGroup(mul, perm, gens, name=name)
            K.root = root
            K.root_ids = tuple(ids)
            K._cache["root_to_local"] = local
            cache[rbits] = K
        return K

    def embedding(self) -> GroupHom:
        """Inclusion of this group into its root."""
        ids = self.root_ids if self.root_ids is not None else tuple(range(self.order))
        return GroupHom(self, self.root, ids)


def _label_hint(root: FiniteGroup, bits: int) -> str:
    return format(bits, "x")


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of ``parent`` stored as a bitset over element ids."""

    parent: FiniteGroup = field(compare=False, repr=False)
    bits: int

    @property
    def order(self) -> int:
        return self.bits.bit_count()

    @property
    def members(self) -> list[int]:
        return members_of(self.bits)

    def __contains__(self, x: int) -> bool:
        return bool(self.bits >> x & 1)

    def __le__(self, other: Subgroup) -> bool:
        return self.bits & other.bits == self.bits

    def __lt__(self, other: Subgroup) -> bool:
        return self <= other and self.bits != other.bits

    def __and__(self, other: Subgroup) -> Subgroup:
        return Subgroup(self.parent, self.bits & other.bits)

    def is_normal(self) -> bool:
        return self.parent.is_normal(self.bits)

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, bits={self.bits:#x})"


class GroupHom:
    """A homomorphism given by its table of images."""

    def __init__(self, source: FiniteGroup, target: FiniteGroup, images: Sequence[int]):
        self.source = source
        self.target = target
        self.map = tuple(images)
        if len(self.map) != source.order:
            raise GroupError("image table has wrong length")

    def __call__(self, x: int) -> int:
        return self.map[x]

    def image_bits(self, bits: int) -> int:
        return bits_of(self.map[x] for x in members_of(bits))

    @property
    def kernel(self) -> Subgroup:
        return Subgroup(self.source, bits_of(x for x, y in enumerate(self.map) if y == 0))

    def is_homomorphism(self) -> bool:
        sm, tm, f = self.source.mul, self.target.mul, self.map
        return all(f[sm[a][b]] == tm[f[a]][f[b]] for a in range(self.source.order) for b in range(self.source.order))

    def is_bijective(self) -> bool:
        return self.source.order == self.target.order and len(set(self.map)) == self.source.order

    def inverse(self) -> GroupHom:
        if not self.is_bijective():
            raise GroupError("homomorphism is not bijective")
        inv = [0] * self.target.order
        for x, y in enumerate(self.map):
            inv[y] = x
        return GroupHom(self.target, self.source, inv)

    def __mul__(self, other: GroupHom) -> GroupHom:
        """Composition ``self o other``."""
        return GroupHom(other.source, self.target, [self.map[y] for y in other.map])


# ---------------------------------------------------------------------------
# Constructors


def group_from_generators(
    gens: Sequence[Permutation], name: str | None = None, cap: int | None = None, degree: int | None = None
) -> FiniteGroup:
    """Close a list of permutations under composition."""
    cap = order_cap() if cap is None else cap
    if gens:
        d = max(g.degree for g in gens)
        if degree is not None:
            d = max(d, degree)
        gens = [g.extend(d) for g in gens]
    else:
        d = degree or 1
    ident = tuple(range(d))
    elems = [ident]
    index = {ident: 0}
    gimgs = [g.images for g in gens]
    i = 0
    while i < len(elems):
        x = elems[i]
        for s in gimgs:
            y = tuple(x[j] for j in s)
            if y not in index:
                index[y] = len(elems)
                elems.append(y)
                if len(elems) > cap:
                    raise GroupError(f"group order exceeds cap {cap}")
        i += 1
    mul = [[index[tuple(a[j] for j in b)] for b in elems] for a in elems]
    gen_ids = []
    for s in gimgs:
        k = index[s]
        if k != 0 and k not in gen_ids:
            gen_ids.append(k)
    G = FiniteGroup(mul, [Permutation(e) for e in elems], None, name=name)
    G._cache["input_generators"] = gen_ids
    return G


def group_from_table(mul: Sequence[Sequence[int]], name: str | None = None) -> FiniteGroup:
    """Group from a Cayley table, with the left regular permutation action."""
    n = len(mul)
    perms = [Permutation([mul[a][x] for x in range(n)]) for a in range(n)]
    return FiniteGroup(mul, perms, None, name=name)


def direct_product(G: FiniteGroup, H: FiniteGroup, name: str | None = None) -> FiniteGroup:
    n, m = G.order, H.order
    cap = order_cap()
    if n * m > cap:
        raise GroupError(f"group order exceeds cap {cap}")
    gm, hm = G.mul, H.mul
    mul = [[gm[a // m][b // m] * m + hm[a % m][b % m] for b in range(n * m)] for a in range(n * m)]
    dg = G.degree
    perms = []
    for a in range(n):
        pa = G.perm_rep[a].images
        for b in range(m):
            pb = H.perm_rep[b].images
            perms.append(Permutation(pa + tuple(dg + i for i in pb)))
    gens = [g * m for g in G.generators] + list(H.generators)
    if name is None and G.name and H.name:
        name = f"{G.name}x{H.name}"
    return FiniteGroup(mul, perms, gens, name=name)


def quotient(G: FiniteGroup, N: Subgroup | int) -> tuple[FiniteGroup, GroupHom]:
    """``G/N`` acting regularly on its cosets, with the projection ``G -> G/N``.

    Results are cached on ``G`` per normal subgroup.
    """
    bits = N.bits if isinstance(N, Subgroup) else N
    cache = G._cache.setdefault("quotients", {})
    if bits in cache:
        return cache[bits]
    if not G.is_normal(bits):
        raise GroupError("subgroup is not normal")
    label = [-1] * G.order
    reps = []
    nmem = members_of(bits)
    for g in range(G.order):
        if label[g] < 0:
            k = len(reps)
            reps.append(g)
            row = G.mul[g]
            for x in nmem:
                label[row[x]] = k
    q = len(reps)
    mul = [[label[G.mul[a][b]] for b in reps] for a in reps]
    perms = [Permutation(mul[a]) for a in range(q)]
    gens = []
    for g in G.generators:
        k = label[g]
        if k != 0 and k not in gens:
            gens.append(k)
    name = f"{G.name}/N{bits.bit_count()}"
    Q = FiniteGroup(mul, perms, gens, name=name)
    proj = GroupHom(G, Q, label)
    Q.projection = proj
    Q._cache["coset_reps"] = reps
    cache[bits] = (Q, proj)
    return Q, proj


def factor_through(s: GroupHom, t: GroupHom) -> GroupHom:
    """Given surjective ``s: G -> A`` and ``t: G -> B`` with ker s <= ker t,
    return the unique ``f: A -> B`` with ``f o s = t``."""
    if s.source is not t.source:
        raise GroupError("homomorphisms have different sources")
    img = [-1] * s.target.order
    for x, a in enumerate(s.map):
        b = t.map[x]
        if img[a] < 0:
            img[a] = b
        elif img[a] != b:
            raise GroupError("kernel of s is not contained in kernel of t")
    if min(img) < 0:
        raise GroupError("s is not surjective")
    return GroupHom(s.target, t.target, img)


def conjugation_hom(A: FiniteGroup, g: int, B: FiniteGroup) -> GroupHom:
    """``x -> g x g^-1`` from ``A`` onto ``B`` (both subgroups of one root,
    ``g`` a root element, ``B = gAg^-1``)."""
    root = A.root
    if B.root is not root:
        raise GroupError("groups do not share a root")
    src = A.root_ids or tuple(range(A.order))
    loc = B._root_to_local() if B.root_ids is not None else None
    images = []
    for r in src:
        y = root.conjugate(r, g)
        images.append(loc[y] if loc is not None else y)
    return GroupHom(A, B, images)


# ---------------------------------------------------------------------------
# Predicates


def center(G: FiniteGroup) -> Subgroup:
    mul = G.mul
    bits = 0
    for z in range(G.order):
        if all(mul[z][g] == mul[g][z] for g in G.generators):
            bits |= 1 << z
    return Subgroup(G, bits)


def is_abelian(G: FiniteGroup) -> bool:
    return center(G).order == G.order


def derived_series(G: FiniteGroup) -> list[int]:
    series = [G.all_bits]
    while True:
        nxt = G.commutator_bits(series[-1], series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)


def lower_central_series(G: FiniteGroup) -> list[int]:
    series = [G.all_bits]
    while True:
        nxt = G.commutator_bits(series[-1], G.all_bits)
        if nxt == series[-1]:
            return series
        series.append(nxt)


def is_solvable(G: FiniteGroup) -> bool:
    return derived_series(G)[-1] == 1


def is_nilpotent(G: FiniteGroup) -> bool:
    return lower_central_series(G)[-1] == 1


def p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def is_nilpotent_sylow(G: FiniteGroup) -> bool:
    """Nilpotency via normality of every Sylow subgroup.

    A Sylow p-subgroup is normal iff it is the unique one, iff the p-elements
    of G number exactly ``|G|_p``.
    """
    for p in prime_factors(G.order):
        count = sum(1 for x in range(G.order) if p_part(G.element_order(x), p) == G.element_order(x))
        if count != p_part(G.order, p):
            return False
    return True


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise GroupError(f"{p} is not prime")


def sylow_subgroup(G: FiniteGroup, p: int) -> Subgroup:
    _check_prime(p)
    target = p_part(G.order, p)
    P = 1
    while P.bit_count() < target:
        N = G.normalizer_bits(P)
        for x in members_of(N & ~P):
            m, y = 1, x
            while not P >> y & 1:
                y = G.mul[y][x]
                m += 1
            if p_part(m, p) == m:
                P = G.closure_bits([x], P)
                break
        else:  # pragma: no cover - impossible by Sylow theory
            raise AssertionError("failed to grow a p-subgroup")
    return Subgroup(G, P)


def p_core(G: FiniteGroup, p: int) -> Subgroup:
    """``O_p(G)``: the intersection of the conjugates of a Sylow p-subgroup."""
    P = sylow_subgroup(G, p).bits
    core = P
    for g in range(G.order):
        core &= G.conjugate_bits(P, g)
        if core == 1:
            break
    return Subgroup(G, core)


def is_cyclic(G: FiniteGroup) -> bool:
    return any(G.element_order(x) == G.order for x in range(G.order))


def is_cyclic_mod_p(G: FiniteGroup, p: int) -> bool:
    Q, _ = quotient(G, p_core(G, p))
    return is_cyclic(Q)


# ---------------------------------------------------------------------------
# Isomorphism


def isomorphism_invariants(G: FiniteGroup) -> tuple:
    """Cheap invariants preserved by isomorphism."""
    inv = G._cache.get("iso_invariants")
    if inv is None:
        orders = Counter(G.element_order(x) for x in range(G.order))
        classes = Counter((len(c), G.element_order(c[0])) for c in G.conjugacy_classes())
        derived = G.commutator_bits(G.all_bits, G.all_bits).bit_count()
        inv = (G.order, sorted(orders.items()), derived, sorted(classes.items()))
        G._cache["iso_invariants"] = inv
    return inv


def _class_size_table(G: FiniteGroup) -> list[int]:
    t = G._cache.get("class_size_of")
    if t is None:
        t = [0] * G.order
        for c in G.conjugacy_classes():
            for x in c:
                t[x] = len(c)
        G._cache["class_size_of"] = t
    return t


def are_isomorphic(G: FiniteGroup, H: FiniteGroup) -> GroupHom | None:
    """Return an isomorphism ``G -> H`` or ``None``.

    Invariants are screened first; then generator images are searched by
    backtracking, each partial assignment being extended along the Cayley
    graph of the subgroup generated so far and rejected on the first
    inconsistency.
    """
    if isomorphism_invariants(G) != isomorphism_invariants(H):
        return None
    if G.order == 1:
        return GroupHom(G, H, [0])
    gens = G.generating_set(G.all_bits)
    gcs, hcs = _class_size_table(G), _class_size_table(H)
    cands = []
    for s in gens:
        key = (G.element_order(s), gcs[s])
        cands.append([y for y in range(H.order) if (H.element_order(y), hcs[y]) == key])

    gm, hm = G.mul, H.mul
    n = G.order

    def extend(fmap: list[int], used: int, k: int) -> tuple[list[int], int] | None:
        # propagate along every edge x -> x*s of the Cayley graph of <gens[:k+1]>
        act = gens[: k + 1]
        todo = [x for x in range(n) if fmap[x] >= 0]
        while todo:
            x = todo.pop()
            fx = fmap[x]
            for s in act:
                y = gm[x][s]
                fy = hm[fx][fmap[s]]
                if fmap[y] < 0:
                    if used >> fy & 1:
                        return None
                    fmap[y] = fy
                    used |= 1 << fy
                    todo.append(y)
                elif fmap[y] != fy:
                    return None
        return fmap, used

    def search(k: int, fmap: list[int], used: int) -> list[int] | None:
        if k == len(gens):
            return fmap
        s = gens[k]
        for y in cands[k]:
            if used >> y & 1:
                continue
            trial = fmap[:]
            trial[s] = y
            res = extend(trial, used | (1 << y), k)
            if res is None:
                continue
            out = search(k + 1, *res)
            if out is not None:
                return out
        return None

    start = [-1] * n
    start[0] = 0
    found = search(0, start, 1)
    if found is None:
        return None
    return GroupHom(G, H, found)


def double_cosets(G: FiniteGroup, H: Subgroup | int, K: Subgroup | int) -> list[int]:
    """One representative per double coset ``HgK``, the least id in each."""
    hb = H.bits if isinstance(H, Subgroup) else H
    kb = K.bits if isinstance(K, Subgroup) else K
    hs, ks = members_of(hb), members_of(kb)
    mul = G.mul
    seen = 0
    reps = []
    for g in range(G.order):
        if seen >> g & 1:
            continue
        reps.append(g)
        for h in hs:
            hg = mul[h][g]
            row = mul[hg]
            for k in ks:
                seen |= 1 << row[k]
    return reps


def double_coset_bits(G: FiniteGroup, H: Subgroup | int, g: int, K: Subgroup | int) -> int:
    hb = H.bits if isinstance(H, Subgroup) else H
    kb = K.bits if isinstance(K, Subgroup) else K
    mul = G.mul
    return bits_of(mul[mul[h][g]][k] for h in members_of(hb) for k in members_of(kb))
