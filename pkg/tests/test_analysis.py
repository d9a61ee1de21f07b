import random
from fractions import Fraction

import pytest

from bgroups import analysis
from bgroups.analysis import (
    NILPOTENT,
    SOLVABLE,
    beta,
    beta_candidates,
    beta_kernel,
    in_kernel,
    is_b_group,
    is_b_group_by_definition,
    kernel_basis,
    squarefree_square_type,
)
from bgroups.burnside import BurnsideElement, deflate, idempotent, induce, m_coefficient
from bgroups.catalog import CATALOG, build_group, catalog, describe
from bgroups.groups import are_isomorphic, is_nilpotent, quotient
from bgroups.lattice import enumerate_subgroups

from conftest import SMALL

UP_TO_48 = [e.name for e in catalog(48)]


@pytest.mark.parametrize("name, expected", [("C1", True), ("C2xC2", True), ("C4", False), ("S4", True),
                                            ("S3", True), ("Q8", False), ("D4", False), ("C6xC6", True)])
def test_is_b_group_examples(name, expected):
    assert is_b_group(build_group(name)) is expected


@pytest.mark.parametrize("name", UP_TO_48)
def test_minimal_normal_reduction(name):
    G = build_group(name)
    assert is_b_group(G) == is_b_group_by_definition(G)


@pytest.mark.parametrize(
    "name, expected",
    [("C1", "C1"), ("C4", "C1"), ("C12", "C1"), ("D4", "C2xC2"), ("D8", "C2xC2"), ("Q8", "C2xC2"),
     ("S3", "S3"), ("S4", "S4"), ("A5", "A5"), ("C6xC6", "C6xC6")],
)
def test_beta_examples(name, expected):
    B = beta(build_group(name), check=True)
    assert are_isomorphic(B, build_group(expected)) is not None
    assert describe(B) == expected


@pytest.mark.parametrize("entry", CATALOG, ids=lambda e: e.name)
def test_beta_is_well_defined_b_group_and_idempotent(entry):
    G = entry.build()
    B = beta(G, check=True)
    assert is_b_group(B)
    assert are_isomorphic(beta(B), B) is not None
    N = beta_kernel(G)
    assert m_coefficient(G, N) != 0
    assert any(M.bits == N.bits for M in beta_candidates(G))


@pytest.mark.parametrize("name", UP_TO_48)
def test_nonzero_m_iff_same_beta(name):
    G = build_group(name)
    B = beta(G)
    for M in enumerate_subgroups(G).normal_subgroups():
        Q, _ = quotient(G, M)
        same = are_isomorphic(beta(Q), B) is not None
        assert (m_coefficient(G, M) != 0) == same


@pytest.mark.parametrize("name", SMALL)
def test_b_group_quotients_factor_through_beta(name):
    G = build_group(name)
    B = beta(G)
    qb = [quotient(B, M)[0] for M in enumerate_subgroups(B).normal_subgroups()]
    for N in enumerate_subgroups(G).normal_subgroups():
        Q, _ = quotient(G, N)
        if is_b_group(Q):
            assert any(are_isomorphic(Q, R) is not None for R in qb)


@pytest.mark.parametrize("name", SMALL)
def test_deflated_induced_idempotents(name):
    # Def_{G/N} Ind_X^G e_X^X = m_{X, X cap N} Ind_{XN/N}^{G/N} e_{XN/N}^{XN/N}
    G = build_group(name)
    L = enumerate_subgroups(G)
    for N in L.normal_subgroups():
        Q, proj = quotient(G, N)
        for X in L.class_reps:
            A = G.subgroup_group(X)
            eX = idempotent(A, len(enumerate_subgroups(A).classes) - 1)
            lhs = deflate(induce(eX, G), N)
            m = m_coefficient(A, A.lower_bits(X.bits & N.bits))
            Y = Q.subgroup_group(proj.image_bits(X.bits))
            eY = idempotent(Y, len(enumerate_subgroups(Y).classes) - 1)
            assert lhs == m * induce(eY, Q)


@pytest.mark.parametrize("entry", CATALOG, ids=lambda e: e.name)
def test_scaled_top_idempotent_in_kernel(entry):
    G = entry.build()
    u = idempotent(G, len(enumerate_subgroups(G).classes) - 1) * G.order
    assert u.is_integral()
    if not is_nilpotent(G):
        assert in_kernel(u, NILPOTENT)
        assert kernel_basis(G, NILPOTENT).contains(u)


@pytest.mark.parametrize("entry", CATALOG, ids=lambda e: e.name)
def test_kernel_rank_and_solvable_kernel_inside(entry):
    G = entry.build()
    L = enumerate_subgroups(G)
    nil, sol = kernel_basis(G, NILPOTENT), kernel_basis(G, SOLVABLE)
    nonnil = sum(1 for H in L.class_reps if not is_nilpotent(G.subgroup_group(H)))
    assert nil.rank == nonnil
    for v in sol.basis:
        assert nil.contains(v)
    for v in nil.basis:
        assert v.is_integral() and in_kernel(v, NILPOTENT)


def test_kernel_examples():
    S3 = kernel_basis(build_group("S3"), NILPOTENT)
    assert S3.rank == 1
    assert S3.vectors[0] in ([1, -2, -1, 2], [-1, 2, 1, -2])
    assert kernel_basis(build_group("S3"), SOLVABLE).rank == 0
    assert kernel_basis(build_group("S4"), NILPOTENT).rank == 3
    assert kernel_basis(build_group("D4"), NILPOTENT).rank == 0
    assert kernel_basis(build_group("A5"), SOLVABLE).rank == 1


@pytest.mark.parametrize("name", ["S3", "S4", "A4", "D6", "A5", "SL(2,3)"])
def test_kernel_membership_two_ways(name):
    G = build_group(name)
    kb = kernel_basis(G, NILPOTENT)
    rng = random.Random(7)
    n = len(enumerate_subgroups(G).classes)
    for trial in range(40):
        u = BurnsideElement.zero(G)
        for v in kb.basis:
            u = u + v * rng.randint(-4, 4)
        if trial % 2:
            u = u + BurnsideElement.basis(G, rng.randrange(n)) * rng.randint(1, 3)
        if trial % 5 == 0:
            u = u * Fraction(1, 2)
        assert kb.contains(u) == (in_kernel(u, NILPOTENT) and u.is_integral())


def test_kernel_closure_example():
    G = build_group("S3")
    C3 = next(N for N in enumerate_subgroups(G).normal_subgroups() if N.order == 3)
    assert deflate(kernel_basis(G).basis[0], C3).is_zero()


@pytest.mark.parametrize("n, expected", [("C1", 1), ("C2xC2", 2), ("C6xC6", 6), ("C4xC4", None), ("C4", None),
                                         ("Q8", None), ("C3xC3", 3), ("C36", None)])
def test_squarefree_square_type(n, expected):
    assert squarefree_square_type(build_group(n)) == expected


def test_classification_report():
    groups = [e.build() for e in CATALOG]
    r = analysis.check_nilpotent_bgroup_classification(groups)
    assert r.status == "pass"
    found = set(r.witness["nilpotent_b_groups"])
    assert {"C2xC2", "C6xC6", "C3xC3"} <= found
    assert not {"C4", "C4xC4", "Q8", "D4", "D8"} & found


@pytest.mark.parametrize("check", list(analysis.CHECKS))
@pytest.mark.parametrize("name", ["C1", "C2", "S3", "D4", "S4", "A5"])
def test_checks_pass_with_schema(check, name):
    r = analysis.CHECKS[check](build_group(name))
    d = r.to_dict()
    assert set(d) == {"group", "order", "check", "status", "witness", "millis"}
    assert d["check"] == check and d["group"] == name and d["order"] == build_group(name).order
    assert d["status"] == "pass" and d["millis"] >= 0 and r.kind is None


def test_nonsolvable_witness_retained():
    for name in ["A5", "S5", "SL(2,5)", "PSL(2,7)"]:
        r = analysis.check_conjecture_a(build_group(name))
        assert r.status == "pass"
        w = r.witness
        assert w["beta_solvable"] is False and w["beta_nilpotent"] is False and w["group_nilpotent"] is False
        assert w["group"]["generators"] and w["beta_kernel"]["order"] >= 1


def test_complement_formula_examples():
    for p in (2, 3, 5, 7):
        G = build_group(f"C{p}")
        L = enumerate_subgroups(G)
        assert m_coefficient(G, G.whole) == 1 - Fraction(len(L.complements(G.whole)), p) == 1 - Fraction(1, p)
    S4 = build_group("S4")
    L = enumerate_subgroups(S4)
    V4 = next(N for N in L.normal_subgroups() if N.order == 4)
    assert len(L.complements(V4)) == 4 and m_coefficient(S4, V4) == 0


def test_failure_kinds_are_classified(monkeypatch):
    trivial = build_group("C1")
    monkeypatch.setattr(analysis, "beta", lambda G, check=False: trivial)
    assert analysis.check_conjecture_a(build_group("S3")).kind == "bug"
    r = analysis.check_conjecture_a(build_group("A5"))
    assert r.status == "fail" and r.kind == "counterexample"
    assert r.witness["group"]["order"] == 60
