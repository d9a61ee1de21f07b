"""Named small groups, the group-spec mini-language, and the fixed catalog.

Grammar::

    expr := atom ("x" atom)*
    atom := "C"n | "D"n | "Q"n | "S"n | "A"n
          | "SL(2,3)" | "SL(2,5)" | "PSL(2,7)" | "C3:C4" | "C7:C3" | "C5:C4"
          | "perm:" cycles ("," cycles)*

``Dn`` is dihedral of order ``2n``; ``Qn`` is dicyclic (generalized
quaternion when ``n`` is a power of two) of order ``n``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache

from .groups import (
    FiniteGroup,
    GroupError,
    Permutation,
    are_isomorphic,
    direct_product,
    group_from_generators,
    group_from_table,
    order_cap,
)


class GroupSpecError(GroupError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


# ---------------------------------------------------------------------------
# Constructors

cyc = Permutation.from_cycles


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("cyclic group needs n >= 1")
    if n == 1:
        return group_from_generators([], name="C1")
    return group_from_generators([cyc([tuple(range(n))])], name=f"C{n}")


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order ``2n`` acting on an ``n``-gon (``n >= 3``)."""
    if n < 1:
        raise GroupError("dihedral group needs n >= 1")
    if n == 1:
        G = cyclic(2)
    elif n == 2:
        G = group_from_generators([cyc([(0, 1)]), cyc([(2, 3)])])
    else:
        rot = cyc([tuple(range(n))])
        ref = Permutation([(-i) % n for i in range(n)])
        G = group_from_generators([rot, ref])
    G.name = f"D{n}"
    return G


def dicyclic(n: int) -> FiniteGroup:
    """Dicyclic group of order ``n`` (``4 | n``): ``<a, x | a^{2m}, x^2 = a^m, x a x^-1 = a^-1>``."""
    if n < 4 or n % 4:
        raise GroupError("dicyclic group needs order divisible by 4")
    m2 = n // 2
    m = m2 // 2

    def idx(i: int, j: int) -> int:
        return j * m2 + i % m2

    mul = [[0] * n for _ in range(n)]
    for j in (0, 1):
        for i in range(m2):
            for l in (0, 1):
                for k in range(m2):
                    e = i + (k if j == 0 else -k)
                    f = j + l
                    if f == 2:
                        e += m
                        f = 0
                    mul[idx(i, j)][idx(k, l)] = idx(e, f)
    return group_from_table(mul, name=f"Q{n}")


def symmetric(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("symmetric group needs n >= 1")
    if n == 1:
        gens = []
    elif n == 2:
        gens = [cyc([(0, 1)])]
    else:
        gens = [cyc([(0, 1)]), cyc([tuple(range(n))])]
    return group_from_generators(gens, name=f"S{n}", degree=n)


def alternating(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("alternating group needs n >= 1")
    if n <= 2:
        gens = []
    elif n == 3:
        gens = [cyc([(0, 1, 2)])]
    else:
        long = tuple(range(n)) if n % 2 else tuple(range(1, n))
        gens = [cyc([(0, 1, 2)]), cyc([long])]
    return group_from_generators(gens, name=f"A{n}", degree=n)


def _matrix_generators(p: int):
    return [((1, 1), (0, 1)), ((1, 0), (1, 1))]


def special_linear(p: int) -> FiniteGroup:
    """``SL(2, p)`` acting on the nonzero vectors of ``F_p^2``."""
    vecs = [(a, b) for a in range(p) for b in range(p) if (a, b) != (0, 0)]
    pos = {v: i for i, v in enumerate(vecs)}
    gens = []
    for (a, b), (c, d) in _matrix_generators(p):
        gens.append(Permutation([pos[((a * x + b * y) % p, (c * x + d * y) % p)] for x, y in vecs]))
    return group_from_generators(gens, name=f"SL(2,{p})")


def projective_special_linear(p: int) -> FiniteGroup:
    """``PSL(2, p)`` acting on the projective line over ``F_p``."""
    pts = [(1, x) for x in range(p)] + [(0, 1)]  # (1, x) ~ x, (0, 1) ~ infinity

    def normalize(v):
        x, y = v[0] % p, v[1] % p
        if x:
            inv = pow(x, -1, p)
            return (1, y * inv % p)
        return (0, 1)

    pos = {v: i for i, v in enumerate(pts)}
    gens = []
    for (a, b), (c, d) in _matrix_generators(p):
        gens.append(Permutation([pos[normalize((a * x + b * y, c * x + d * y))] for x, y in pts]))
    return group_from_generators(gens, name=f"PSL(2,{p})")


def affine_semidirect(p: int, k: int, name: str) -> FiniteGroup:
    """``C_p : C_k`` as ``x -> a x + b`` on ``F_p`` with ``a`` of order ``k``."""
    a = next(g for g in range(2, p) if pow(g, k, p) == 1 and all(pow(g, j, p) != 1 for j in range(1, k)))
    G = group_from_generators([cyc([tuple(range(p))]), Permutation([a * x % p for x in range(p)])])
    G.name = name
    return G


def _c3_c4() -> FiniteGroup:
    G = dicyclic(12)
    G.name = "C3:C4"
    return G


NAMED = {
    "SL(2,3)": (lambda: special_linear(3), 24),
    "SL(2,5)": (lambda: special_linear(5), 120),
    "PSL(2,7)": (lambda: projective_special_linear(7), 168),
    "C3:C4": (_c3_c4, 12),
    "C7:C3": (lambda: affine_semidirect(7, 3, "C7:C3"), 21),
    "C5:C4": (lambda: affine_semidirect(5, 4, "C5:C4"), 20),
}

FAMILIES = {
    "C": (cyclic, lambda n: n),
    "D": (dihedral, lambda n: 2 * n),
    "Q": (dicyclic, lambda n: n),
    "S": (symmetric, math.factorial),
    "A": (alternating, lambda n: max(1, math.factorial(n) // 2)),
}


# ---------------------------------------------------------------------------
# Specs


@dataclass(frozen=True)
class Atom:
    kind: str  # family letter, "named" or "perm"
    value: object  # n, name, or tuple of generator cycle tuples

    def __str__(self) -> str:
        if self.kind == "named":
            return str(self.value)
        if self.kind == "perm":
            parts = []
            for gen in self.value:
                parts.append("".join("(" + " ".join(map(str, c)) + ")" for c in gen) or "()")
            return "perm:" + ",".join(parts)
        return f"{self.kind}{self.value}"

    def expected_order(self) -> int | None:
        if self.kind == "named":
            return NAMED[self.value][1]
        if self.kind == "perm":
            return None
        return FAMILIES[self.kind][1](self.value)

    def build(self) -> FiniteGroup:
        if self.kind == "named":
            return NAMED[self.value][0]()
        if self.kind == "perm":
            perms = [cyc(g) for g in self.value]
            degree = max((p.degree for p in perms), default=1)
            return group_from_generators(perms, name=str(self), degree=degree)
        return FAMILIES[self.kind][0](self.value)


@dataclass(frozen=True)
class GroupSpec:
    atoms: tuple[Atom, ...]

    @property
    def expression(self) -> str:
        return "x".join(str(a) for a in self.atoms)

    def __str__(self) -> str:
        return self.expression

    def expected_order(self) -> int | None:
        total = 1
        for a in self.atoms:
            o = a.expected_order()
            if o is None:
                return None
            total *= o
        return total

    def resolve(self) -> FiniteGroup:
        return build_group(self.expression)


_NUM = re.compile(r"\d+")
_CYCLE = re.compile(r"\(\s*(\d+(?:\s+\d+)*)?\s*\)")


def parse_group_spec(text: str) -> GroupSpec:
    s = text.strip()
    atoms = []
    pos = 0
    while True:
        atom, pos = _parse_atom(s, pos, text)
        atoms.append(atom)
        if pos == len(s):
            break
        if s[pos] != "x":
            raise GroupSpecError("expected 'x' or end of input", text, pos)
        pos += 1
    return GroupSpec(tuple(atoms))


def _parse_atom(s: str, pos: int, text: str) -> tuple[Atom, int]:
    for name in sorted(NAMED, key=len, reverse=True):
        if s.startswith(name, pos):
            return Atom("named", name), pos + len(name)
    if s.startswith("perm:", pos):
        pos += len("perm:")
        gens = []
        while True:
            cycles = []
            start = pos
            while pos < len(s) and s[pos] == "(":
                m = _CYCLE.match(s, pos)
                if not m:
                    raise GroupSpecError("malformed cycle", text, pos)
                if m.group(1):
                    cycles.append(tuple(int(t) for t in m.group(1).split()))
                pos = m.end()
            if pos == start:
                raise GroupSpecError("expected a cycle", text, pos)
            gens.append(tuple(cycles))
            if pos < len(s) and s[pos] == ",":
                pos += 1
                continue
            break
        try:
            for g in gens:
                cyc(g)
        except GroupError as exc:
            raise GroupSpecError(str(exc), text, pos) from None
        return Atom("perm", tuple(gens)), pos
    if pos < len(s) and s[pos] in FAMILIES:
        m = _NUM.match(s, pos + 1)
        if not m:
            raise GroupSpecError("expected a number", text, pos + 1)
        n = int(m.group())
        if n < 1:
            raise GroupSpecError("expected a positive number", text, pos + 1)
        return Atom(s[pos], n), m.end()
    raise GroupSpecError("unknown group", text, pos)


@lru_cache(maxsize=None)
def _build(expression: str, cap: int) -> FiniteGroup:
    spec = parse_group_spec(expression)
    expected = spec.expected_order()
    if expected is not None and expected > cap:
        raise GroupError(f"group order {expected} exceeds cap {cap}")
    G = spec.atoms[0].build()
    for a in spec.atoms[1:]:
        G = direct_product(G, a.build())
    if G.order > cap:
        raise GroupError(f"group order {G.order} exceeds cap {cap}")
    G.name = spec.expression
    return G


def build_group(text: str) -> FiniteGroup:
    """Parse and construct a group; results are memoised per canonical expression."""
    return _build(parse_group_spec(text).expression, order_cap())


# ---------------------------------------------------------------------------
# Catalog


def _catalog_names() -> list[str]:
    names = [f"C{n}" for n in range(1, 37)]
    names += [f"C{n}xC{n}" for n in (1, 2, 3, 5, 6, 10)]
    names += ["C4xC4"]
    names += ["x".join(["C2"] * k) for k in range(1, 5)]
    names += ["S3", "S4", "S5", "A4", "A5"]
    names += [f"D{n}" for n in range(1, 13)]
    names += ["Q8", "Q16"]
    names += ["SL(2,3)", "SL(2,5)", "PSL(2,7)", "C3:C4", "C7:C3", "C5:C4"]
    names += ["D4xC2", "A4xC2"]
    out = []
    for n in names:
        if n not in out:
            out.append(n)
    return out


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    order: int

    def build(self) -> FiniteGroup:
        return build_group(self.name)


CATALOG: tuple[CatalogEntry, ...] = tuple(
    CatalogEntry(n, parse_group_spec(n).expected_order()) for n in _catalog_names()
)


def catalog(max_order: int | None = None) -> list[CatalogEntry]:
    return [e for e in CATALOG if max_order is None or e.order <= max_order]


def identify(G: FiniteGroup) -> str | None:
    """Name of the first catalog entry isomorphic to ``G``, if any."""
    for e in CATALOG:
        if e.order == G.order and are_isomorphic(G, e.build()) is not None:
            return e.name
    return None


def describe(G: FiniteGroup) -> str:
    """Catalog name of ``G`` if one matches, otherwise a ``perm:`` spec of its generators."""
    name = identify(G)
    if name is not None:
        return name
    gens = [G.perm_rep[g].cycle_string() for g in G.generators]
    return "perm:" + ",".join(gens or ["()"])
