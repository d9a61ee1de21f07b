"""The Burnside ring of a finite group, its marks, idempotents and biset operations.

Elements are stored as exact rational coefficient vectors over the transitive
basis ``[G/H]``, ``H`` running over the conjugacy-class representatives of
the subgroup lattice (in lattice class order).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .groups import FiniteGroup, GroupError, GroupHom, Subgroup, members_of, quotient
from .lattice import SubgroupLattice, enumerate_subgroups


@dataclass(frozen=True)
class MarksTable:
    """``matrix[h][k] = |(G/K)^H|`` for class representatives ``H``, ``K``."""

    labels: tuple[str, ...]
    matrix: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.labels)


def marks_table(G: FiniteGroup) -> MarksTable:
    """Table of marks of ``G``.

    Uses ``|(G/K)^H| = |N_G(H)| / |K| * #{H' ~ H : H' <= K}``.
    """
    L = enumerate_subgroups(G)
    cached = G._cache.get("marks")
    if cached is not None:
        return cached
    n = len(L.classes)
    class_bits = []
    for members in L.classes:
        b = 0
        for i in members:
            b |= 1 << i
        class_bits.append(b)
    rows = []
    for h in range(n):
        hi = L.reps[h]
        nh = L.normalizer(hi).order
        row = []
        for k in range(n):
            ki = L.reps[k]
            cnt = (L.down[ki] & class_bits[h]).bit_count()
            num = nh * cnt
            q, r = divmod(num, L.subgroups[ki].order)
            assert r == 0
            row.append(q)
        rows.append(tuple(row))
    M = MarksTable(tuple(L.class_labels()), tuple(rows))
    G._cache["marks"] = M
    return M


def _marks_inverse_columns(G: FiniteGroup) -> list[dict[int, Fraction]]:
    """Column ``h`` holds the coefficients of the element with marks = indicator of ``h``."""
    cols = G._cache.get("marks_inverse")
    if cols is None:
        M = marks_table(G).matrix
        n = len(M)
        cols = []
        for h in range(n):
            c = [Fraction(0)] * n
            # upper triangular back substitution; only rows <= h can be nonzero
            for r in range(h, -1, -1):
                s = Fraction(1 if r == h else 0)
                row = M[r]
                for k in range(r + 1, h + 1):
                    if row[k] and c[k]:
                        s -= row[k] * c[k]
                c[r] = s / row[r]
            cols.append({r: c[r] for r in range(h + 1) if c[r]})
        G._cache["marks_inverse"] = cols
    return cols


class BurnsideElement:
    """An element of the rational Burnside algebra of ``group``."""

    __slots__ = ("group", "coeffs", "_marks")

    def __init__(self, group: FiniteGroup, coeffs: Iterable):
        self.group = group
        self.coeffs = tuple(Fraction(c) for c in coeffs)
        if len(self.coeffs) != len(self.lattice.classes):
            raise GroupError("coefficient vector does not match the subgroup classes")
        self._marks = None

    @property
    def lattice(self) -> SubgroupLattice:
        return enumerate_subgroups(self.group)

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, G: FiniteGroup) -> BurnsideElement:
        return cls(G, [0] * len(enumerate_subgroups(G).classes))

    @classmethod
    def basis(cls, G: FiniteGroup, H: int | Subgroup) -> BurnsideElement:
        """The transitive G-set ``[G/H]``."""
        L = enumerate_subgroups(G)
        c = L.class_index(H) if isinstance(H, Subgroup) else H
        v = [0] * len(L.classes)
        v[c] = 1
        return cls(G, v)

    @classmethod
    def one(cls, G: FiniteGroup) -> BurnsideElement:
        return cls.basis(G, len(enumerate_subgroups(G).classes) - 1)

    @classmethod
    def from_marks(cls, G: FiniteGroup, marks: Sequence) -> BurnsideElement:
        cols = _marks_inverse_columns(G)
        n = len(cols)
        if len(marks) != n:
            raise GroupError("marks vector has the wrong length")
        c = [Fraction(0)] * n
        for h, m in enumerate(marks):
            if m:
                m = Fraction(m)
                for r, x in cols[h].items():
                    c[r] += m * x
        return cls(G, c)

    # -- arithmetic ------------------------------------------------------------

    def _check(self, other: BurnsideElement) -> None:
        if other.group is not self.group:
            raise GroupError("elements live over different groups")

    def __add__(self, other: BurnsideElement) -> BurnsideElement:
        self._check(other)
        return BurnsideElement(self.group, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: BurnsideElement) -> BurnsideElement:
        self._check(other)
        return BurnsideElement(self.group, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> BurnsideElement:
        return BurnsideElement(self.group, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, BurnsideElement):
            return multiply(self, other)
        if isinstance(other, (int, Fraction)):
            return BurnsideElement(self.group, [a * other for a in self.coeffs])
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return BurnsideElement(self.group, [a * other for a in self.coeffs])
        return NotImplemented

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BurnsideElement):
            return NotImplemented
        return self.group is other.group and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((id(self.group), self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def to_marks(self) -> tuple[Fraction, ...]:
        if self._marks is None:
            M = marks_table(self.group).matrix
            d = math.lcm(*(c.denominator for c in self.coeffs))
            ints = [(c * d).numerator for c in self.coeffs]
            nz = [(k, x) for k, x in enumerate(ints) if x]
            self._marks = tuple(Fraction(sum(M[h][k] * x for k, x in nz), d) for h in range(len(M)))
        return self._marks

    def __repr__(self) -> str:
        labels = self.lattice.class_labels()
        terms = [f"{c}[{lab}]" for c, lab in zip(self.coeffs, labels) if c]
        return f"<B({self.group.name}): {' + '.join(terms) or '0'}>"

    # -- serialization -----------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "group": self.group.name,
            "basis": self.lattice.class_labels(),
            "coeffs": [f"{c.numerator}/{c.denominator}" for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: dict, group: FiniteGroup | None = None) -> BurnsideElement:
        if group is None:
            from .catalog import build_group

            group = build_group(data["group"])
        L = enumerate_subgroups(group)
        if list(data["basis"]) != L.class_labels():
            raise GroupError("basis labels do not match the group's subgroup classes")
        return cls(group, [Fraction(c) for c in data["coeffs"]])


def to_marks(u: BurnsideElement) -> tuple[Fraction, ...]:
    return u.to_marks()


def from_marks(G: FiniteGroup, v: Sequence) -> BurnsideElement:
    return BurnsideElement.from_marks(G, v)


def multiply(u: BurnsideElement, v: BurnsideElement) -> BurnsideElement:
    """Ring product, computed pointwise on marks."""
    u._check(v)
    return BurnsideElement.from_marks(u.group, [a * b for a, b in zip(u.to_marks(), v.to_marks())])


def idempotent(G: FiniteGroup, H: int | Subgroup) -> BurnsideElement:
    """Primitive idempotent ``e_H^G`` by the Gluck-Yoshida formula.

    ``e_H^G = 1/|N_G(H)| * sum_{X <= H} |X| mu(X, H) [G/X]``; ``H`` is a class
    index (meaning its representative) or any subgroup.
    """
    L = enumerate_subgroups(G)
    hi = L.reps[H] if isinstance(H, int) else L.index_of(H)
    mu = L.mobius_table
    nh = L.normalizer(hi).order
    coeffs = [Fraction(0)] * len(L.classes)
    for x in members_of(L.down[hi]):
        m = int(mu[x, hi])
        if m:
            coeffs[L.class_of[x]] += Fraction(L.subgroups[x].order * m, nh)
    return BurnsideElement(G, coeffs)


def m_coefficient(G: FiniteGroup, N: Subgroup | int) -> Fraction:
    """``m_{G,N} = 1/|G| * sum_{X <= G, XN = G} |X| mu(X, G)``."""
    nb = N.bits if isinstance(N, Subgroup) else N
    if not G.is_normal(nb):
        raise GroupError("subgroup is not normal")
    L = enumerate_subgroups(G)
    top = len(L) - 1
    mu = L.mobius_table
    no = nb.bit_count()
    total = 0
    for i, X in enumerate(L.subgroups):
        xo = X.order
        if xo * no == G.order * (X.bits & nb).bit_count():
            m = int(mu[i, top])
            if m:
                total += xo * m
    return Fraction(total, G.order)


# ---------------------------------------------------------------------------
# Biset operations.  Each is a linear map sending basis elements to
# nonnegative integer combinations of basis elements.


class BasisMap:
    """A linear map between Burnside groups given on the transitive basis."""

    def __init__(self, source: FiniteGroup, target: FiniteGroup, images: list[dict[int, int]]):
        self.source = source
        self.target = target
        self.images = images

    def __call__(self, u: BurnsideElement) -> BurnsideElement:
        if u.group is not self.source:
            raise GroupError("element does not live over the map's source group")
        out = [Fraction(0)] * len(enumerate_subgroups(self.target).classes)
        for c, img in zip(u.coeffs, self.images):
            if c:
                for t, k in img.items():
                    out[t] += k * c
        return BurnsideElement(self.target, out)

    def matrix(self) -> np.ndarray:
        """Integer matrix, rows indexed by target classes, columns by source classes."""
        n = len(enumerate_subgroups(self.target).classes)
        A = np.zeros((n, len(self.images)), dtype=np.int64)
        for j, img in enumerate(self.images):
            for t, k in img.items():
                A[t, j] = k
        return A


def _cached_map(G: FiniteGroup, key, build):
    cache = G._cache.setdefault("basis_maps", {})
    m = cache.get(key)
    if m is None:
        m = cache[key] = build()
    return m


def restriction_map(G: FiniteGroup, K: Subgroup | int) -> BasisMap:
    """``Res_K^G``: the K-orbits on each coset space ``G/X``, counted explicitly."""
    kb = K.bits if isinstance(K, Subgroup) else K

    def build() -> BasisMap:
        if G.closure_bits([], kb) != kb:
            raise GroupError("not a subgroup")
        T = G.subgroup_group(kb)
        LT = enumerate_subgroups(T)
        L = enumerate_subgroups(G)
        kgens = G.generating_set(kb)
        mul = G.mul
        images = []
        for X in L.class_reps:
            xs = X.members
            label = [-1] * G.order
            reps = []
            for g in range(G.order):
                if label[g] < 0:
                    row = mul[g]
                    for x in xs:
                        label[row[x]] = len(reps)
                    reps.append(g)
            seen = [False] * len(reps)
            img: dict[int, int] = {}
            for c0 in range(len(reps)):
                if seen[c0]:
                    continue
                seen[c0] = True
                todo = [c0]
                while todo:
                    c = todo.pop()
                    for k in kgens:
                        d = label[mul[k][reps[c]]]
                        if not seen[d]:
                            seen[d] = True
                            todo.append(d)
                g = reps[c0]
                stab = kb & G.conjugate_bits(X.bits, g)
                t = LT.class_index(T.lower_bits(G.lift_bits(stab)))
                img[t] = img.get(t, 0) + 1
            images.append(img)
        return BasisMap(G, T, images)

    return _cached_map(G, ("res", kb), build)


def induction_map(A: FiniteGroup, G: FiniteGroup) -> BasisMap:
    """``Ind_A^G`` for ``A`` a subgroup of ``G`` (both nested in one root group)."""
    if A.root is not G.root or A.root_bits & G.root_bits != A.root_bits:
        raise GroupError("source is not a subgroup of the target")

    def build() -> BasisMap:
        LA, LG = enumerate_subgroups(A), enumerate_subgroups(G)
        images = []
        for X in LA.class_reps:
            t = LG.class_index(G.lower_bits(A.lift_bits(X.bits)))
            images.append({t: 1})
        return BasisMap(A, G, images)

    return _cached_map(A, ("ind", id(G)), build)


def inflation_map(Q: FiniteGroup, G: FiniteGroup) -> BasisMap:
    """``Inf_{G/N}^G`` where ``Q`` was produced by :func:`quotient` from ``G``."""
    if Q.projection is None or Q.projection.source is not G:
        raise GroupError("not a quotient of the given group")

    def build() -> BasisMap:
        proj = Q.projection.map
        LQ, LG = enumerate_subgroups(Q), enumerate_subgroups(G)
        images = []
        for Y in LQ.class_reps:
            pre = 0
            yb = Y.bits
            for g, q in enumerate(proj):
                if yb >> q & 1:
                    pre |= 1 << g
            images.append({LG.class_index(pre): 1})
        return BasisMap(Q, G, images)

    return _cached_map(Q, ("inf",), build)


def deflation_map(G: FiniteGroup, N: Subgroup | int) -> BasisMap:
    """``Def_{G/N}^G``: ``[G/X] -> [(G/N)/(XN/N)]``."""
    nb = N.bits if isinstance(N, Subgroup) else N

    def build() -> BasisMap:
        Q, proj = quotient(G, nb)
        L, LQ = enumerate_subgroups(G), enumerate_subgroups(Q)
        images = [{LQ.class_index(proj.image_bits(X.bits)): 1} for X in L.class_reps]
        return BasisMap(G, Q, images)

    return _cached_map(G, ("def", nb), build)


def transport_map(phi: GroupHom) -> BasisMap:
    """``Iso(phi)`` for a group isomorphism ``phi``."""
    if not phi.is_bijective():
        raise GroupError("transport needs a bijective homomorphism")
    S, T = phi.source, phi.target
    LS, LT = enumerate_subgroups(S), enumerate_subgroups(T)
    images = [{LT.class_index(phi.image_bits(X.bits)): 1} for X in LS.class_reps]
    return BasisMap(S, T, images)


def restrict(u: BurnsideElement, K: Subgroup | int) -> BurnsideElement:
    return restriction_map(u.group, K)(u)


def induce(u: BurnsideElement, G: FiniteGroup) -> BurnsideElement:
    return induction_map(u.group, G)(u)


def inflate(u: BurnsideElement, G: FiniteGroup) -> BurnsideElement:
    return inflation_map(u.group, G)(u)


def deflate(u: BurnsideElement, N: Subgroup | int) -> BurnsideElement:
    return deflation_map(u.group, N)(u)


def transport(u: BurnsideElement, phi: GroupHom) -> BurnsideElement:
    return transport_map(phi)(u)
