import pytest

from equivl.errors import (
    MissingTangent,
    OddCodimensionUnsupported,
    OrientationRequired,
    UnsupportedCap,
    UnsupportedDuality,
)
from equivl.exact_algebra import RingMap, RingPresentation
from equivl.spaces import (
    HomologyClass,
    SpaceMap,
    SpaceModel,
    SphereBundle,
    bundle_transfer,
    cap,
    cross,
    factor_projection,
    gysin_restrict,
    intersection_signature,
    kronecker,
    kunneth_model,
    lclass_manifold,
    poincare_dual,
    poincare_dual_inv,
    split_cross,
)

from .test_charclass import cpn


def to_point(B, pt):
    return SpaceMap(B, pt, RingMap(pt.ring, B.ring, {}))


def test_cap_examples(cat):
    CP2 = cat.space("CP2")
    R, fund = CP2.ring, CP2.fundamental_class()
    assert cap(R.one(), fund) == fund
    point = cap(R.gen("t^2"), fund)
    assert point == HomologyClass(CP2, {"t^2": 1})
    assert kronecker(R.one(), point) == 1
    assert cap(R.gen("t"), cap(R.gen("t"), fund)) == cap(R.gen("t^2"), fund)


def test_duality_examples(cat):
    CP2 = cat.space("CP2")
    R = CP2.ring
    assert poincare_dual(CP2, R.one()) == CP2.fundamental_class()
    h2 = poincare_dual(CP2, R.gen("t"))
    assert h2.degrees == {2} and CP2.label("t") == "[CP1]"
    assert poincare_dual_inv(poincare_dual(CP2, R.gen("t^2"))) == R.gen("t^2")


def test_gysin_on_circle_tower(s1):
    for k in range(1, 8):
        beta = s1.restriction(k)
        small, big = s1.base(k), s1.base(k + 1)
        assert gysin_restrict(beta, big.fundamental_class()) == small.fundamental_class()
        assert gysin_restrict(beta, HomologyClass.zero(big)).is_zero()
        # t_{k+1} restricts to t_k, so tau_{k+1}^i goes to tau_k^i while tau_k^i is nonzero
        for i in range(1, k + 1):
            tau_big = cap(big.ring.gen("t") ** i, big.fundamental_class())
            tau_small = cap(small.ring.gen("t") ** i, small.fundamental_class())
            assert gysin_restrict(beta, tau_big) == tau_small
    assert s1.restriction(3).pullback(s1.base(4).ring.gen("t")) == s1.base(3).ring.gen("t")


def test_gysin_rejects_odd_codimension(cat):
    S2, S3 = cat.space("S2"), cat.space("S3")
    pt = cat.space("pt")
    incl = SpaceMap(pt, S3, RingMap(S3.ring, pt.ring, {}))
    with pytest.raises(OddCodimensionUnsupported):
        gysin_restrict(incl, S3.fundamental_class())
    incl2 = SpaceMap(pt, S2, RingMap(S2.ring, pt.ring, {}))
    assert gysin_restrict(incl2, S2.fundamental_class()) == pt.fundamental_class()


def test_gysin_needs_orientations(cat):
    Z2 = cat.tower("Z2")
    rp = Z2.base(2)
    assert not rp.orientable
    pt = cat.space("pt")
    incl = SpaceMap(pt, rp, RingMap(rp.ring, pt.ring, {}))
    with pytest.raises(OrientationRequired):
        gysin_restrict(incl, HomologyClass(rp, {"1": 1}))


def test_bundle_transfer_examples(cat, s1):
    CP2, S2, pt = cat.space("CP2"), cat.space("S2"), cat.space("pt")
    P = kunneth_model(CP2, S2)
    proj = factor_projection(P, 1)
    assert bundle_transfer(proj, S2.fundamental_class()) == P.fundamental_class()
    assert bundle_transfer(proj, cap(S2.ring.gen("s"), S2.fundamental_class())) == \
        cross(CP2.fundamental_class(), HomologyClass(S2, {"s": 1}))
    for k in s1.stages:
        B = s1.base(k)
        assert bundle_transfer(to_point(B, pt), pt.fundamental_class()) == B.fundamental_class()


def test_kunneth_examples(cat):
    CP2, S2, pt = cat.space("CP2"), cat.space("S2"), cat.space("pt")
    A = kunneth_model(CP2, pt)
    assert A.dimension == 4 and [len(A.ring.names_in_degree(p)) for p in range(5)] == [1, 0, 1, 0, 1]
    assert cross(CP2.fundamental_class(), S2.fundamental_class()) == kunneth_model(CP2, S2).fundamental_class()
    assert lclass_manifold(kunneth_model(CP2, CP2)) == cross(lclass_manifold(CP2), lclass_manifold(CP2))
    z = cross(lclass_manifold(CP2), S2.fundamental_class())
    assert split_cross(z, lclass_manifold(CP2)) == S2.fundamental_class()
    with pytest.raises(ValueError):
        split_cross(lclass_manifold(kunneth_model(CP2, S2)) + z, CP2.fundamental_class())


def test_lclass_examples(cat):
    CP2, S2, pt = cat.space("CP2"), cat.space("S2"), cat.space("pt")
    assert lclass_manifold(S2) == S2.fundamental_class()
    assert lclass_manifold(pt) == pt.fundamental_class()
    L = lclass_manifold(CP2)
    assert L == CP2.fundamental_class() + HomologyClass(CP2, {"t^2": 1})
    assert L.render() == "[CP2] + [pt]"


@pytest.mark.parametrize("pair", [("CP2",), ("CP2", "CP2")])
def test_degree_zero_l_is_signature(cat, pair):
    M = cat.space(pair[0]) if len(pair) == 1 else kunneth_model(cat.space(pair[0]), cat.space(pair[1]))
    L = lclass_manifold(M)
    assert sum(L.component(0).coeffs.values()) == intersection_signature(M) == 1


def test_lclass_needs_tangent():
    ring = RingPresentation("H(S2')", 2, [("s", 2)], {0: ["1"], 2: ["s"]})
    bare = SpaceModel("S2'", 2, ring, {"s": 1})
    with pytest.raises(MissingTangent):
        lclass_manifold(bare)


def test_singular_models_refuse_duality(cat):
    CP2 = cat.space("CP2")
    ring = RingPresentation("H(Sigma)", 0, [], {0: ["1"]})
    sing = SpaceModel("Sigma", 2, ring, kind="singular", homology_basis={"[Sigma]": 2, "[p]": 0},
                      fundamental="[Sigma]", l_homology={"[Sigma]": 1})
    with pytest.raises(UnsupportedDuality):
        lclass_manifold(sing)
    with pytest.raises(UnsupportedCap):
        cap(ring.one(), sing.fundamental_class())
    # wrong-way maps of products with a singular factor work factor by factor
    P = kunneth_model(sing, CP2)
    proj = factor_projection(P, 0)
    assert P.kind == "singular"
    assert proj.codomain is sing


def test_hopf_bundle_is_a_sphere():
    for n in (1, 2, 3):
        base = cpn(n)
        E = SphereBundle(base, base.ring.gen("t"), 1)
        ranks = [E.model.ring.rank_in_degree(p) for p in range(2 * n + 2)]
        assert ranks == [1] + [0] * (2 * n) + [1]
        assert E.model.orientable
        assert bundle_transfer(E.projection, base.fundamental_class()) == E.model.fundamental_class()


def test_trivial_sphere_bundle_over_s2(cat):
    S2 = cat.space("S2")
    E = SphereBundle(S2, S2.ring.zero(), 3)
    assert [E.model.ring.rank_in_degree(p) for p in range(6)] == [1, 0, 1, 1, 0, 1]
    with pytest.raises(ValueError):
        SphereBundle(S2, S2.ring.gen("s"), 2)
