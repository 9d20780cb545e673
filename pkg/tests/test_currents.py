from fractions import Fraction

import pytest

from wzwcat.currents import CurrentGroup, NotInvertibleError, current_action
from wzwcat.modular import ModularData


def _index(md, weight):
    return md.alcove.index[tuple(weight)]


def test_invertible_counts_match_centers():
    # order of the invertible group = |Z(G)| for these (series, rank, k)
    expect = {
        ("A", 1, 4): 2, ("A", 2, 3): 3, ("A", 3, 4): 4, ("A", 4, 2): 5,
        ("B", 2, 3): 2, ("B", 3, 2): 2, ("C", 3, 2): 2,
        ("D", 4, 1): 4, ("D", 5, 1): 4,
        ("G", 2, 2): 1, ("F", 4, 1): 1,
    }
    for (series, rank, k), n in expect.items():
        cg = CurrentGroup(ModularData(series, rank, k))
        assert cg.order == n, (series, rank, k)
        assert cg.indices[0] == 0


def test_group_structure():
    assert CurrentGroup(ModularData("A", 3, 4)).group_id() == (4,)
    assert CurrentGroup(ModularData("A", 4, 2)).group_id() == (5,)
    assert CurrentGroup(ModularData("A", 1, 3)).group_id() == (2,)
    assert CurrentGroup(ModularData("D", 4, 1)).group_id() == (2, 2)
    assert CurrentGroup(ModularData("D", 5, 1)).group_id() == (4,)
    assert CurrentGroup(ModularData("G", 2, 2)).group_id() == ()


def test_a_series_action_closed_form():
    # generator k*omega_1 rotates affine labels: a -> (k-sum(a), a_1, ...)
    for rank, k in ((2, 3), (3, 4)):
        md = ModularData("A", rank, k)
        cg = CurrentGroup(md)
        gen = _index(md, (k,) + (0,) * (rank - 1))
        perm = cg.actions[gen]
        for i, lam in enumerate(md.weights):
            rotated = (k - sum(lam),) + lam[:-1]
            assert md.weights[perm[i]] == rotated


def test_b_series_action_closed_form():
    # vector current swaps the affine node with node 1
    for rank, k in ((2, 4), (3, 2)):
        md = ModularData("B", rank, k)
        cg = CurrentGroup(md)
        j = next(i for i in cg.indices if i != 0)
        comarks = md.rs.comarks
        for i, lam in enumerate(md.weights):
            a0 = k - sum(c * a for c, a in zip(comarks, lam))
            image = (a0,) + lam[1:]
            assert md.weights[cg.actions[j][i]] == image


def test_so5_twist_parity():
    # theta(J) = (-1)^k, so the vector current is Tannakian iff k is even
    for k in range(1, 5):
        cg = CurrentGroup(ModularData("B", 2, k))
        j = next(i for i in cg.indices if i != 0)
        assert cg.twist(j).t == Fraction(k % 2)
        assert len(cg.maximal_tannakian()) == (2 if k % 2 == 0 else 1)


def test_sl4_level4_tannakian():
    md = ModularData("A", 3, 4)
    cg = CurrentGroup(md)
    assert [len(s) for s in cg.subgroups()] == [1, 2, 4]
    # only J^2 = (0,4,0) has trivial twist; J itself has theta = -1
    tann = cg.tannakian_subgroups()
    assert [len(s) for s in tann] == [1, 2]
    assert cg.maximal_tannakian() == (0, _index(md, (0, 4, 0)))
    j = _index(md, (4, 0, 0))
    assert cg.twist(j).t == Fraction(1)


def test_d4_level2_full_tannakian():
    # all three simple currents of so8 have trivial twist at k=2, and the
    # bicharacter is trivial on the whole (2,2) group
    cg = CurrentGroup(ModularData("D", 4, 2))
    assert cg.group_id() == (2, 2)
    assert len(cg.maximal_tannakian()) == 4


def test_orbit_stabilizer_lagrange():
    md = ModularData("A", 3, 4)
    cg = CurrentGroup(md)
    full = tuple(cg.indices)
    for i in range(md.rank):
        orb = cg.orbit(full, i)
        assert len(orb) * cg.stabilizer_order(full, i) == cg.order
    # (1,1,1) is fixed by the whole Z/4
    fixed = _index(md, (1, 1, 1))
    assert cg.orbit(full, fixed) == (fixed,)
    assert cg.stabilizer_order(full, fixed) == 4
    # the unit's orbit is the group itself
    assert cg.orbit(full, 0) == cg.indices


def test_element_orders():
    md = ModularData("A", 3, 4)
    cg = CurrentGroup(md)
    orders = sorted(cg.element_order(j) for j in cg.indices)
    assert orders == [1, 2, 4, 4]


def test_noninvertible_rejected():
    md = ModularData("A", 1, 2)
    with pytest.raises(NotInvertibleError):
        current_action(md, 1)  # the Ising sigma row is not a permutation
