from fractions import Fraction

import numpy as np
import pytest

from wzwcat.localmods import LocalCategoryData, local_category
from wzwcat.modular import ModularData


def _in_root_lattice(rs, lam):
    # alpha_j has Dynkin labels row_j(A), so lam = A^T c with integer c
    # exactly when lam lies in the root lattice
    c = np.linalg.solve(np.array(rs.cartan, dtype=float).T,
                        np.array(lam, dtype=float))
    return np.max(np.abs(c - np.rint(c))) < 1e-9


def test_so5_level2_is_pointed_rank5():
    loc = local_category("B", 2, 2)
    assert loc.subgroup_order == 2
    assert loc.rank == 5
    assert all(abs(d - 1.0) < 1e-9 for d in loc.qdims)
    part = loc.pointed_part()
    assert part["rank"] == 5
    assert part["structure"] == (5,)
    assert loc.closure_residual < 1e-9


def test_sl2_level4_three_pieces():
    loc = local_category("A", 1, 4)
    assert loc.local_weight_count == 3  # 0, 2, 4
    assert loc.rank == 3               # {0,4} merges, 2 splits in two
    assert loc.pointed_part()["structure"] == (3,)
    splits = sorted(s.split for s in loc.simples)
    assert splits == [1, 2, 2]


def test_sl4_level4_census():
    loc = local_category("A", 3, 4)
    assert loc.subgroup_order == 2
    assert loc.local_weight_count == 19
    assert loc.rank == 14
    assert loc.pointed_rank == 2
    assert loc.pointed_part()["structure"] == (2,)
    # the non-unit invertible is a fermion
    tw = [t for i, t in enumerate(loc.twists) if i in loc.pointed_indices]
    assert sorted(a.t for a in tw) == [0, 1]
    assert loc.adjoint_rank() == 8
    md = loc.md
    assert abs(loc.global_dim - md.global_dim / 4.0) < 1e-6 * md.global_dim


def test_sl3_level3_is_so8_level1():
    # central charge 4 and four invertibles: the (2,2) pointed category
    loc = local_category("A", 2, 3)
    assert loc.rank == 4
    assert all(abs(d - 1.0) < 1e-9 for d in loc.qdims)
    assert loc.pointed_part()["structure"] == (2, 2)
    assert loc.md.central_charge == 4


def test_sl4_level2_exceptional_adjoint():
    # the one type A level where the adjoint weight's local module is not
    # simple: it splits into two invertible pieces which, with the unit,
    # form a Z/3
    loc = local_category("A", 3, 2)
    assert loc.subgroup_order == 2
    assert loc.rank == 6
    assert all(abs(d - 1.0) < 1e-9 for d in loc.qdims)
    idx = loc.md.alcove.index
    beta = idx[(1, 0, 1)]
    pieces = [s for s in loc.simples if s.rep == beta]
    assert [s.split for s in pieces] == [2, 2]
    assert {s.twist.t for s in pieces} == {Fraction(4, 3)}
    # grading by split invertibles is ambiguous, so adjoint_rank refuses
    with pytest.raises(ValueError):
        loc.adjoint_rank()


def test_global_dim_quotient_and_closure():
    for series, rank, k in (("A", 1, 8), ("B", 2, 4), ("B", 2, 8),
                            ("A", 2, 6), ("D", 4, 2)):
        loc = local_category(series, rank, k)
        h = loc.subgroup_order
        assert h > 1
        md = loc.md
        assert abs(loc.global_dim - md.global_dim / h ** 2) \
            < 1e-6 * md.global_dim
        assert loc.closure_residual < 1e-6


def test_locality_is_root_lattice_membership():
    # over the full center, a weight orbit is local iff the weight sits in
    # the root lattice
    for k in (2, 6, 12):
        loc = local_category("B", 2, k)
        md = loc.md
        local_weights = {md.weights[i] for orb in loc.local_orbits
                         for i in orb}
        lattice = {lam for lam in md.weights
                   if _in_root_lattice(md.rs, lam)}
        assert local_weights == lattice


def test_locality_is_sublattice_congruence_sl4():
    # the Tannakian subgroup of sl4 at level 4 is only half the center, so
    # locality is the coarser condition: even tetrality a1 + a3
    loc = local_category("A", 3, 4)
    md = loc.md
    local_weights = {md.weights[i] for orb in loc.local_orbits for i in orb}
    assert len(local_weights) == 19
    expected = {lam for lam in md.weights if (lam[0] + lam[2]) % 2 == 0}
    assert local_weights == expected


def test_so5_local_rank_formula():
    # rank of C(so5, 2n)^0 is (n+1)(n+4)/2
    for n in range(1, 5):
        loc = local_category("B", 2, 2 * n)
        assert loc.rank == (n + 1) * (n + 4) // 2


def test_free_fusion_aggregates():
    loc = local_category("A", 1, 4)
    idx = loc.md.alcove.index
    out = loc.free_fusion(idx[(1,)], idx[(1,)])
    # unit orbit once; the split orbit of spin 1 with multiplicity 2
    assert out == {idx[(0,)]: 1, idx[(2,)]: 2}
    # representative independence: 3 = J.1 gives the same aggregate
    assert loc.free_fusion(idx[(3,)], idx[(1,)]) == out
    assert loc.free_fusion(idx[(3,)], idx[(3,)]) == out

    so5 = local_category("B", 2, 4)
    idx = so5.md.alcove.index
    sq = so5.free_fusion(idx[(0, 2)], idx[(0, 2)])
    assert sq[idx[(0, 0)]] == 1


def test_free_fusion_dimension_bookkeeping():
    # sum of mult * (qdim/stab) over target orbits = product of qdims
    for series, rank, k in (("A", 1, 4), ("B", 2, 4), ("A", 3, 4)):
        loc = local_category(series, rank, k)
        md, cg = loc.md, loc.currents
        free = [i for i in range(md.rank)
                if cg.stabilizer_order(loc.subgroup, i) == 1]
        stab = {orb[0]: len(loc.subgroup) // len(orb) for orb in loc.orbits}
        for a in free[:4]:
            for b in free[:4]:
                out = loc.free_fusion(a, b)
                rhs = sum(c * float(md.qdims[r]) / stab[r]
                          for r, c in out.items())
                lhs = float(md.qdims[a] * md.qdims[b])
                assert abs(lhs - rhs) < 1e-8 * max(1.0, lhs)


def test_free_fusion_rejects_fixed_points():
    loc = local_category("A", 1, 4)
    idx = loc.md.alcove.index
    with pytest.raises(ValueError):
        loc.free_fusion(idx[(2,)], idx[(1,)])


def test_subgroup_validation():
    md = ModularData("A", 3, 4)
    idx = md.alcove.index
    j, j2, j3 = idx[(4, 0, 0)], idx[(0, 4, 0)], idx[(0, 0, 4)]
    with pytest.raises(ValueError, match="Tannakian"):
        # J itself is a fermion, so {1, J, J^2, J^3} is not admissible
        LocalCategoryData(md, subgroup=(0, j, j2, j3))
    with pytest.raises(ValueError, match="closed"):
        LocalCategoryData(md, subgroup=(0, j))


def test_trivial_subgroup_reproduces_ambient():
    md = ModularData("B", 2, 3)  # odd level: no Tannakian current
    loc = LocalCategoryData(md)
    assert loc.subgroup_order == 1
    assert loc.rank == md.rank
    assert np.allclose(loc.qdims, md.qdims)
