from fractions import Fraction

import pytest

from equivl.errors import CatalogueDepth, CompatibilityFailure, DegreeBoundViolation, InvalidGroupData
from equivl.spaces import HomologyClass, cap
from equivl.towers import (
    GroupData,
    adjoint_matrix,
    assemble_inverse_limit,
    check_biinvariant_orientable,
    cohomological_stabilization,
    fundamental_family,
    point_equivariant_homology,
    stable_k,
    tower_dims,
    tower_orientable,
)


def test_orientability_verdicts(cat):
    o2 = check_biinvariant_orientable(cat.group("O2"))
    assert not o2.orientable
    assert o2.witness == ((0, 1), (1, 0))
    assert o2.determinants[-1] == -1
    for name in ("trivial", "trivial_O2", "S1", "Z2", "Z4", "T2", "SU2", "SO3"):
        assert check_biinvariant_orientable(cat.group(name)).orientable, name
    assert "discrete" in check_biinvariant_orientable(cat.group("Z4")).reason
    assert "connected" in check_biinvariant_orientable(cat.group("S1")).reason


def test_adjoint_of_reflection(cat):
    O2 = cat.group("O2")
    assert adjoint_matrix(O2, O2.component_reps[1]) == ((-1,),)


def test_group_validation():
    rot = [[0, -1], [1, 0]]
    with pytest.raises(InvalidGroupData):
        GroupData("bad", 1, 3, (rot,))
    with pytest.raises(InvalidGroupData):
        GroupData("bad", 1, 2, (rot,), ([[0, 1], [1, 0]],), connected=False)
    with pytest.raises(InvalidGroupData):
        GroupData("bad", 0, 2, (), ([[1, 0], [0, 1]], [[2, 0], [0, 1]]), connected=False)
    # a Lie algebra that is not Ad-closed under the extra component
    skew = [[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]
    swap = [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]
    g = GroupData("lopsided", 1, 4, (skew,), ([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], swap),
                  connected=False)
    with pytest.raises(InvalidGroupData):
        check_biinvariant_orientable(g)


def test_dimension_formulas(cat, s1):
    assert tower_dims(s1, 4) == (9, 8)
    assert [tower_dims(s1, k)[1] for k in range(1, 9)] == [2 * k for k in range(1, 9)]
    assert [tower_dims(s1, k)[0] for k in range(1, 9)] == [2 * k + 1 for k in range(1, 9)]
    assert all(s1.base(k).dimension == 2 * k for k in range(1, 9))
    assert tower_dims(cat.tower("trivial"), 3) == (0, 0)
    assert tower_dims(cat.tower("Z2"), 5) == (5, 5)
    for t in (s1, cat.tower("Z2"), cat.tower("trivial")):
        ks = sorted(t.stages)
        assert all(t.base(k + 1).dimension - t.base(k).dimension == t.n for k in ks[:-1])
    with pytest.raises(ValueError):
        tower_dims(s1, 0)


def test_rp_orientability(cat):
    Z2 = cat.tower("Z2")
    assert [tower_orientable(Z2, k) for k in range(1, 9)] == [k % 2 == 1 for k in range(1, 9)]
    assert all(tower_orientable(cat.tower("S1"), k) for k in range(1, 9))


def test_stable_k():
    assert stable_k(0, 0) == 2
    assert stable_k(0, -2) == 3
    assert stable_k(0, -4) == 5
    assert stable_k(4, 0) == 5
    assert stable_k(0, 3) == 2


def test_cohomological_stabilization(s1):
    rows = cohomological_stabilization(s1)
    assert rows and all(ok for *_, ok in rows)
    assert {(k, i) for k, i, *_ in rows} == {(k, i) for k in range(1, 8) for i in range(k)}
    # the range is sharp at k = 2: degree 2 gains u_2
    f = s1.restriction(2).pullback
    assert f.source.rank_in_degree(2) == 1 and f.target.rank_in_degree(2) == 2


@pytest.mark.parametrize("j, rank, k0, first", [
    (0, 1, 2, "[BS1_2]"),
    (-1, 0, 2, None),
    (-2, 1, 3, "tau_3"),
    (-3, 0, 4, None),
    (-4, 1, 5, "tau_5^2"),
    (-5, 0, 6, None),
    (-6, 1, 7, "tau_7^3"),
    (-7, 0, 8, None),
])
def test_point_homology(s1, j, rank, k0, first):
    ph = point_equivariant_homology(s1, j)
    assert (ph.rank, ph.stable_k) == (rank, k0)
    if first:
        names = ph.generator_names()
        assert names[0] == first
        assert len(names) == 9 - k0
        assert ph.verified is True
    else:
        assert ph.generators == []


def test_point_homology_sequences(s1):
    assert point_equivariant_homology(s1, 0).generator_names() == [f"[BS1_{k}]" for k in range(2, 9)]
    assert point_equivariant_homology(s1, -2).generator_names() == [f"tau_{k}" for k in range(3, 9)]
    assert point_equivariant_homology(s1, -4).generator_names() == [f"tau_{k}^2" for k in range(5, 9)]
    assert point_equivariant_homology(s1, 0).generator_names(stable=True)[0] == "[pt]_S1"


def test_point_homology_vanishes_above_zero(s1):
    for j in range(1, 5):
        assert point_equivariant_homology(s1, j).rank == 0


def test_point_homology_depth(s1):
    with pytest.raises(CatalogueDepth):
        point_equivariant_homology(s1, -8)


def test_fundamental_family_assembles(s1):
    cls = assemble_inverse_limit(fundamental_family(s1, range(1, 9)), s1, 0)
    assert cls.verified
    assert cls.support() == [0]
    k, value = cls.stable_value(0)
    assert k == 2 and value.render(True) == "[pt]_S1"


def test_perturbed_family_fails(s1):
    for bad in (2, 4, 6):
        fam = fundamental_family(s1, range(2, 9))
        B = s1.base(bad)
        fam[bad] = fam[bad] + cap(B.ring.gen("t"), B.fundamental_class())
        with pytest.raises(CompatibilityFailure) as err:
            assemble_inverse_limit(fam, s1, 0)
        # stage bad - 1 sees the extra tau first, unless it is the bottom stage
        assert err.value.k == max(bad - 1, 2)
        assert err.value.degree == -2


def test_zero_family(s1):
    cls = assemble_inverse_limit({k: HomologyClass.zero(s1.base(k)) for k in range(2, 6)}, s1, 0)
    assert cls.verified and cls.is_zero() and cls.support() == []


def test_degree_bound_violation(s1):
    # the fundamental family read as a class of a negative-dimensional space
    with pytest.raises(DegreeBoundViolation):
        assemble_inverse_limit(fundamental_family(s1, range(2, 5)), s1, -1)


def test_inverse_limit_needs_two_stages(s1):
    with pytest.raises(ValueError):
        assemble_inverse_limit(fundamental_family(s1, [3]), s1, 0)


def test_value_at_and_stable_values(s1):
    ks = range(2, 9)
    fam = {k: fundamental_family(s1, [k])[k] + cap(s1.base(k).ring.gen("t") ** 2, s1.base(k).fundamental_class())
           for k in ks}
    cls = assemble_inverse_limit(fam, s1, 0)
    assert cls.support() == [0, -4]
    k, v = cls.stable_value(-4)
    assert k == 5 and v.render(True) == "tau^2"
    assert cls.value_at(-4, 3) == cap(s1.base(3).ring.gen("t") ** 2, s1.base(3).fundamental_class())
    assert Fraction(1) in cls.value_at(0, 8).coeffs.values()
