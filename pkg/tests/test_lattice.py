import pytest

from bgroups.catalog import CATALOG, build_group
from bgroups.groups import GroupError
from bgroups.lattice import enumerate_subgroups, is_elementary_abelian

from conftest import SMALL, TINY
from oracles import mobius_by_definition


@pytest.mark.parametrize(
    "name, n, k",
    [("C1", 1, 1), ("S3", 6, 4), ("S4", 30, 11), ("A5", 59, 9), ("SL(2,5)", 76, 12), ("PSL(2,7)", 179, 15)],
)
def test_subgroup_counts(name, n, k):
    L = enumerate_subgroups(build_group(name))
    assert (len(L), len(L.classes)) == (n, k)


@pytest.mark.parametrize("entry", CATALOG, ids=lambda e: e.name)
def test_lattice_structure(entry):
    G = entry.build()
    L = enumerate_subgroups(G)
    keys = [(H.order, H.members) for H in L.subgroups]
    assert keys == sorted(keys)
    assert L.subgroups[0].order == 1 and L.subgroups[-1].order == G.order
    for c, members in enumerate(L.classes):
        N = L.normalizer(members[0])
        assert len(members) * N.order == G.order
        for i in members:
            assert L.class_of[i] == c
    for i, H in enumerate(L.subgroups):
        assert G.closure_bits([], H.bits) == H.bits
        for j in range(len(L)):
            assert L.leq(i, j) == (H.bits & ~L.subgroups[j].bits == 0)


def test_mobius_examples():
    L = enumerate_subgroups(build_group("S3"))
    assert L.mobius(0, len(L) - 1) == 3
    for i in range(len(L)):
        assert L.mobius(i, i) == 1
    with pytest.raises(GroupError):
        L.mobius(len(L) - 1, 0)


@pytest.mark.parametrize("name", TINY + ["S4"])
def test_mobius_matches_interval_recursion(name):
    L = enumerate_subgroups(build_group(name))
    top = len(L) - 1
    for x in range(len(L)):
        if L.leq(x, top):
            assert L.mobius(x, top) == mobius_by_definition(L, x, top)
    mu = L.mobius_table
    for x in range(len(L)):
        for h in range(len(L)):
            if L.leq(x, h) and x != h:
                assert sum(int(mu[x, z]) for z in range(len(L)) if L.leq(x, z) and L.leq(z, h)) == 0


@pytest.mark.parametrize("name", ["A5", "S5"])
def test_mobius_counts_generating_pairs(name):
    # sum_H mu(H, G) |H|^2 counts the pairs that generate G
    G = build_group(name)
    L = enumerate_subgroups(G)
    top = len(L) - 1
    eulerian = sum(L.mobius(i, top) * H.order ** 2 for i, H in enumerate(L.subgroups))
    direct = sum(1 for a in range(G.order) for b in range(G.order) if G.closure_bits([a, b]) == G.all_bits)
    assert eulerian == direct


def _orders(subs):
    return sorted(H.order for H in subs)


def test_normal_subgroups():
    assert _orders(enumerate_subgroups(build_group("S3")).normal_subgroups()) == [1, 3, 6]
    assert _orders(enumerate_subgroups(build_group("S4")).normal_subgroups()) == [1, 4, 12, 24]
    L = enumerate_subgroups(build_group("C12"))
    assert len(L.normal_subgroups()) == len(L)


def test_minimal_normal_subgroups():
    assert _orders(enumerate_subgroups(build_group("C5")).minimal_normal_subgroups()) == [5]
    assert _orders(enumerate_subgroups(build_group("S4")).minimal_normal_subgroups()) == [4]
    assert _orders(enumerate_subgroups(build_group("C2xC2")).minimal_normal_subgroups()) == [2, 2, 2]
    with pytest.raises(GroupError):
        enumerate_subgroups(build_group("C1")).minimal_normal_subgroups()


@pytest.mark.parametrize("name", SMALL)
def test_minimal_normal_solvable_are_elementary_abelian(name):
    from bgroups.groups import is_solvable

    G = build_group(name)
    if G.order == 1 or not is_solvable(G):
        return
    for N in enumerate_subgroups(G).minimal_normal_subgroups():
        assert is_elementary_abelian(G, N)


def test_complements():
    S3 = build_group("S3")
    L = enumerate_subgroups(S3)
    assert [K.order for K in L.complements(S3.whole)] == [1]
    C3 = next(N for N in L.normal_subgroups() if N.order == 3)
    assert _orders(L.complements(C3)) == [2, 2, 2]
    C4 = build_group("C4")
    L4 = enumerate_subgroups(C4)
    assert L4.complements(L4.subgroups[1]) == []
    with pytest.raises(GroupError):
        L.complements(L.subgroups[1])


def test_frattini():
    assert enumerate_subgroups(build_group("C4")).frattini_subgroup().order == 2
    assert enumerate_subgroups(build_group("S3")).frattini_subgroup().order == 1
    assert enumerate_subgroups(build_group("Q8")).frattini_subgroup().order == 2


def test_subgroup_group_lattice_agrees_with_fresh_build():
    S4 = build_group("S4")
    L = enumerate_subgroups(S4)
    for H in L.class_reps:
        A = S4.subgroup_group(H)
        gens = [S4.perm_rep[g].cycle_string() for g in S4.generating_set(H.bits)]
        fresh = build_group("perm:" + ",".join(gens)) if gens else build_group("C1")
        LA = enumerate_subgroups(A)
        LF = enumerate_subgroups(fresh)
        assert (len(LA), len(LA.classes)) == (len(LF), len(LF.classes))
