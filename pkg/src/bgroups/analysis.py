"""B-groups, the largest B-group quotient, restriction kernels and the verification checks."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .burnside import (
    BurnsideElement,
    deflate,
    idempotent,
    induce,
    inflate,
    m_coefficient,
    marks_table,
    restrict,
)
from .groups import (
    FiniteGroup,
    Subgroup,
    are_isomorphic,
    direct_product,
    group_from_generators,
    Permutation,
    is_cyclic_mod_p,
    is_nilpotent,
    is_prime,
    is_solvable,
    prime_factors,
    quotient,
)
from .intlattice import integer_kernel, lattice_coordinates
from .lattice import enumerate_subgroups, is_elementary_abelian

NILPOTENT = "nilpotent"
SOLVABLE = "solvable"
_PREDICATES = {NILPOTENT: is_nilpotent, SOLVABLE: is_solvable}


class BetaConsistencyError(AssertionError):
    """Two admissible choices of N gave non-isomorphic quotients, or β(G) is not a B-group."""


# ---------------------------------------------------------------------------
# B-groups and β


def is_b_group(G: FiniteGroup) -> bool:
    """True iff ``m_{G,N} = 0`` for every minimal normal subgroup ``N``."""
    if G.order == 1:
        return True
    L = enumerate_subgroups(G)
    return all(m_coefficient(G, N) == 0 for N in L.minimal_normal_subgroups())


def is_b_group_by_definition(G: FiniteGroup) -> bool:
    L = enumerate_subgroups(G)
    return all(m_coefficient(G, N) == 0 for N in L.normal_subgroups() if N.order > 1)


def beta_candidates(G: FiniteGroup) -> list[Subgroup]:
    """Normal subgroups maximal under inclusion among those with ``m_{G,N} != 0``."""
    L = enumerate_subgroups(G)
    nonzero = [N for N in L.normal_subgroups() if m_coefficient(G, N) != 0]
    return [N for N in nonzero if not any(N < M for M in nonzero)]


def beta_kernel(G: FiniteGroup) -> Subgroup:
    """A normal subgroup ``N`` of largest order with ``m_{G,N} != 0``."""
    L = enumerate_subgroups(G)
    for N in sorted(L.normal_subgroups(), key=lambda N: -N.order):
        if m_coefficient(G, N) != 0:
            return N
    raise AssertionError("m_{G,1} = 1, so some normal subgroup qualifies")


def beta(G: FiniteGroup, check: bool = False) -> FiniteGroup:
    """The largest quotient of ``G`` that is a B-group.

    With ``check=True`` every inclusion-maximal admissible ``N`` is tried and
    the quotients are compared up to isomorphism; the result is also checked
    to be a B-group.
    """
    N = beta_kernel(G)
    Q, _ = quotient(G, N)
    if check:
        for M in beta_candidates(G):
            if M.bits == N.bits:
                continue
            QM, _ = quotient(G, M)
            if are_isomorphic(Q, QM) is None:
                raise BetaConsistencyError(f"beta({G.name}) depends on the choice of N")
        if not is_b_group(Q):
            raise BetaConsistencyError(f"beta({G.name}) is not a B-group")
    return Q


# ---------------------------------------------------------------------------
# Restriction kernels L(G) (nilpotent) and Ker rho_G (solvable)


def tagged_classes(G: FiniteGroup, tag: str) -> list[int]:
    """Indices of subgroup classes whose representative is nilpotent (or solvable)."""
    pred = _PREDICATES[tag]
    key = ("tagged", tag)
    out = G._cache.get(key)
    if out is None:
        L = enumerate_subgroups(G)
        out = [c for c, H in enumerate(L.class_reps) if pred(G.subgroup_group(H))]
        G._cache[key] = out
    return out


def in_kernel(u: BurnsideElement, tag: str) -> bool:
    """Membership in the restriction kernel: marks vanish on every tagged class."""
    marks = u.to_marks()
    return all(marks[c] == 0 for c in tagged_classes(u.group, tag))


@dataclass
class KernelBasis:
    group: FiniteGroup
    subgroup_class: str
    basis: list[BurnsideElement]
    vectors: list[list[int]] = field(repr=False)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, u: BurnsideElement) -> bool:
        """Lattice membership by solving for integer coordinates in the basis."""
        if u.group is not self.group:
            return False
        return lattice_coordinates(self.vectors, u.coeffs) is not None


def kernel_basis(G: FiniteGroup, tag: str = NILPOTENT) -> KernelBasis:
    """Integer basis of the kernel of restriction to all nilpotent (solvable) subgroups.

    An element vanishes on restriction to ``H`` iff all its marks at subgroups
    of ``H`` vanish, so the kernel is cut out by the mark rows of the tagged
    classes; its basis is computed by integer elimination.
    """
    key = ("kernel", tag)
    kb = G._cache.get(key)
    if kb is None:
        M = marks_table(G).matrix
        rows = [list(M[c]) for c in tagged_classes(G, tag)]
        vecs = integer_kernel(rows, len(M))
        kb = KernelBasis(G, tag, [BurnsideElement(G, v) for v in vecs], vecs)
        G._cache[key] = kb
    return kb


# ---------------------------------------------------------------------------
# Reports


@dataclass
class VerificationReport:
    group: str
    order: int
    check: str
    status: str  # pass | fail | skipped
    witness: dict | None = None
    millis: float = 0.0

    def to_dict(self) -> dict:
        return {
            "group": self.group,
            "order": self.order,
            "check": self.check,
            "status": self.status,
            "witness": self.witness,
            "millis": round(self.millis, 3),
        }

    @property
    def kind(self) -> str | None:
        """``"bug"`` or ``"counterexample"`` for failures."""
        if self.status != "fail" or not self.witness:
            return None
        return self.witness.get("kind")


def group_witness(G: FiniteGroup) -> dict:
    """Enough data to rebuild ``G`` independently: its permutation generators."""
    return {
        "name": G.name,
        "order": G.order,
        "degree": G.degree,
        "generators": [G.perm_rep[g].cycle_string() for g in G.generators],
    }


def subgroup_witness(G: FiniteGroup, H: Subgroup) -> dict:
    L = enumerate_subgroups(G)
    return {
        "class": L.class_label(L.class_index(H)),
        "order": H.order,
        "generators": [G.perm_rep[g].cycle_string() for g in G.generating_set(H.bits)],
    }


def element_witness(u: BurnsideElement) -> dict:
    d = u.to_json()
    d["marks"] = [str(m) for m in u.to_marks()]
    return d


def _timed(check: str, fn: Callable[[FiniteGroup], tuple[str, dict | None]]):
    def run(G: FiniteGroup) -> VerificationReport:
        t0 = time.perf_counter()
        status, witness = fn(G)
        if status == "fail" and witness is None:
            witness = {"kind": "bug"}
        return VerificationReport(G.name or "?", G.order, check, status, witness, (time.perf_counter() - t0) * 1000)

    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


def _fail(kind: str, G: FiniteGroup, **data) -> tuple[str, dict]:
    w = {"kind": kind, "group": group_witness(G)}
    w.update(data)
    return "fail", w


# ---------------------------------------------------------------------------
# Checks


def _restriction_deflation(G: FiniteGroup):
    L = enumerate_subgroups(G)
    top = len(L.classes) - 1
    e = idempotent(G, top)
    for c in range(top):
        H = L.rep(c)
        r = restrict(e, H)
        if not r.is_zero():
            return _fail("bug", G, clause="restriction", subgroup=subgroup_witness(G, H), value=element_witness(r))
    for N in L.normal_subgroups():
        Q, _ = quotient(G, N)
        lhs = deflate(e, N)
        m = m_coefficient(G, N)
        rhs = m * idempotent(Q, len(enumerate_subgroups(Q).classes) - 1)
        if lhs != rhs:
            return _fail(
                "bug", G, clause="deflation", subgroup=subgroup_witness(G, N), m=str(m),
                deflated=element_witness(lhs), expected=element_witness(rhs),
            )
    return "pass", None


def _complement_formula(G: FiniteGroup):
    if G.order == 1:
        return "pass", None
    L = enumerate_subgroups(G)
    checked = 0
    for N in L.minimal_normal_subgroups():
        if not is_elementary_abelian(G, N):
            continue
        checked += 1
        m = m_coefficient(G, N)
        k = len(L.complements(N))
        other = 1 - Fraction(k, N.order)
        if m != other:
            return _fail("bug", G, subgroup=subgroup_witness(G, N), mobius_sum=str(m), complement_formula=str(other))
    return "pass", {"minimal_abelian_normals": checked} if checked else None


def _primes_to_check(n: int) -> list[int]:
    ps = prime_factors(n)
    q = 2
    while q in ps:
        q += 1
        while not is_prime(q):
            q += 1
    return ps + [q]


def _cyclic_mod_p_agreement(G: FiniteGroup):
    B = beta(G)
    for p in _primes_to_check(G.order):
        a, b = is_cyclic_mod_p(G, p), is_cyclic_mod_p(B, p)
        if a != b:
            return _fail("bug", G, prime=p, group_cyclic_mod_p=a, beta_cyclic_mod_p=b, beta=group_witness(B))
    return "pass", None


def _beta_witness(G: FiniteGroup, B: FiniteGroup) -> dict:
    N = beta_kernel(G)
    return {
        "group": group_witness(G),
        "beta_kernel": subgroup_witness(G, N),
        "m": str(m_coefficient(G, N)),
        "beta_order": B.order,
        "beta_nilpotent": is_nilpotent(B),
        "beta_solvable": is_solvable(B),
    }


def _nilpotent_beta(G: FiniteGroup):
    B = beta(G)
    g_nil, b_nil = is_nilpotent(G), is_nilpotent(B)
    solv = is_solvable(G)
    if g_nil != b_nil:
        kind = "bug" if solv else "counterexample"
        w = _beta_witness(G, B)
        w["kind"] = kind
        w["group_nilpotent"] = g_nil
        return "fail", w
    if not solv:
        w = _beta_witness(G, B)
        w["group_nilpotent"] = g_nil
        return "pass", w
    return "pass", None


def _kernel_closure(G: FiniteGroup, tag: str):
    """Closure of the restriction kernel under Res, Ind, Inf and Def."""
    L = enumerate_subgroups(G)
    LG = kernel_basis(G, tag)
    top = len(L.classes) - 1
    pred = _PREDICATES[tag]
    for c in range(top):
        K = L.rep(c)
        KG = G.subgroup_group(K)
        for u in LG.basis:
            r = restrict(u, K)
            if not in_kernel(r, tag):
                return _fail("bug", G, operation="Res", subgroup=subgroup_witness(G, K),
                             element=element_witness(u), image=element_witness(r))
        for v in kernel_basis(KG, tag).basis:
            w = induce(v, G)
            if not in_kernel(w, tag):
                return _fail("bug", G, operation="Ind", subgroup=subgroup_witness(G, K),
                             element=element_witness(v), image=element_witness(w))
    for N in L.normal_subgroups():
        if N.order == 1:
            continue
        Q, _ = quotient(G, N)
        for v in kernel_basis(Q, tag).basis:
            w = inflate(v, G)
            if not in_kernel(w, tag):
                return _fail("bug", G, operation="Inf", subgroup=subgroup_witness(G, N),
                             element=element_witness(v), image=element_witness(w))
        for u in LG.basis:
            d = deflate(u, N)
            if not in_kernel(d, tag):
                kind = "bug" if pred is is_solvable or is_solvable(G.subgroup_group(N)) else "counterexample"
                return _fail(kind, G, operation="Def", subgroup=subgroup_witness(G, N),
                             element=element_witness(u), image=element_witness(d))
    return "pass", {"rank": LG.rank} if LG.rank else None


def _nilpotent_kernel_closure(G: FiniteGroup):
    return _kernel_closure(G, NILPOTENT)


def _solvable_beta(G: FiniteGroup):
    B = beta(G)
    g_sol, b_sol = is_solvable(G), is_solvable(B)
    if g_sol != b_sol:
        w = _beta_witness(G, B)
        w["kind"] = "bug" if g_sol else "counterexample"
        return "fail", w
    status, w = _kernel_closure(G, SOLVABLE)
    if status == "fail":
        return status, w
    if not g_sol:
        w = _beta_witness(G, B) | (w or {})
        return "pass", w
    return "pass", w


check_restriction_deflation = _timed("theorem-2-3", _restriction_deflation)
check_complement_formula = _timed("complements", _complement_formula)
check_baumann = _timed("baumann", _cyclic_mod_p_agreement)
check_conjecture_a = _timed("conjecture-a", _nilpotent_beta)
check_kernel_closure = _timed("conjecture-b", _nilpotent_kernel_closure)
check_thevenaz = _timed("thevenaz", _solvable_beta)

CHECKS: dict[str, Callable[[FiniteGroup], VerificationReport]] = {
    "theorem-2-3": check_restriction_deflation,
    "complements": check_complement_formula,
    "baumann": check_baumann,
    "conjecture-a": check_conjecture_a,
    "conjecture-b": check_kernel_closure,
    "thevenaz": check_thevenaz,
}


def squarefree_square_type(G: FiniteGroup) -> int | None:
    """``n`` if ``G`` is isomorphic to ``C_n x C_n`` with ``n`` squarefree, else ``None``."""
    n = round(G.order ** 0.5)
    if n * n != G.order or any((n // p) % p == 0 for p in prime_factors(n)):
        return None
    if n == 1:
        return 1
    cyc = Permutation.from_cycles([tuple(range(n))])
    Cn = group_from_generators([cyc])
    return n if are_isomorphic(G, direct_product(Cn, Cn)) is not None else None


def check_nilpotent_bgroup_classification(groups: list[FiniteGroup]) -> VerificationReport:
    """Nilpotent B-groups among ``groups`` are exactly the ``C_n x C_n``, ``n`` squarefree."""
    t0 = time.perf_counter()
    computed = sorted(G.name for G in groups if is_nilpotent(G) and is_b_group(G))
    expected = sorted(G.name for G in groups if squarefree_square_type(G) is not None)
    status, witness = "pass", {"nilpotent_b_groups": computed}
    if computed != expected:
        status = "fail"
        witness = {
            "kind": "bug",
            "computed_only": sorted(set(computed) - set(expected)),
            "expected_only": sorted(set(expected) - set(computed)),
        }
    return VerificationReport("catalog", len(groups), "classification", status, witness,
                              (time.perf_counter() - t0) * 1000)
