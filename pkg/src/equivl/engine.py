"""Stage-k equivariant L-classes and the structural identities between them.

Every mode computes the stage classes L^G_{*,k}(X) on the stage models
X_G(k); assembly into an inverse-limit class always goes through the Gysin
certificate in :func:`equivl.towers.assemble_inverse_limit`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .charclass import BundleModel, inverse_l_class, l_class
from .errors import (
    FailedAxiomCheck,
    MissingTangent,
    MissingVerticalBundle,
    OrientationRequired,
    RouteDisagreement,
    UncataloguedPair,
    UnresolvableStage,
    UnsupportedCap,
)
from .spaces import (
    HomologyClass,
    SpaceMap,
    SpaceModel,
    bundle_transfer,
    cap,
    cross,
    factor_projection,
    kunneth_map,
    kunneth_model,
    lclass,
    poincare_dual,
    split_cross,
    tensor_element,
)
from .towers import (
    BorelTower,
    GroupData,
    InverseLimitClass,
    StageData,
    _identity,
    assemble_inverse_limit,
    stable_k,
)

MODES = ("point", "trivial", "free", "explicit")
DEFAULT_DEPTH = 8


@dataclass(eq=False)
class ActionStage:
    """Data of one stage X_G(k) with its projection q_k to BG_k."""

    k: int
    model: SpaceModel
    q: SpaceMap
    restriction: Optional[SpaceMap] = None  # X_G(k) -> X_G(k+1)
    vertical: Optional[BundleModel] = None  # (TX)_G(k)
    quotient_map: Optional[SpaceMap] = None  # X_G(k) -> X/G, free actions


@dataclass(eq=False)
class ActionSpec:
    name: str
    tower: BorelTower
    space: SpaceModel
    mode: str
    quotient: Optional[SpaceModel] = None
    stages: dict = field(default_factory=dict)
    provenance: str = "user"

    def __post_init__(self):
        self._resolved = {}
        self.stages = dict(sorted(self.stages.items()))
        self.validate()

    @property
    def m(self) -> int:
        return self.space.dimension

    def validate(self):
        if self.mode not in MODES:
            raise FailedAxiomCheck(f"{self.name}: unknown mode {self.mode!r}")
        if self.mode == "point" and self.space.dimension != 0:
            raise FailedAxiomCheck(f"{self.name}: point mode needs a 0-dimensional space")
        if self.mode == "free":
            if self.quotient is None:
                raise FailedAxiomCheck(f"{self.name}: free action without quotient model")
            if self.quotient.dimension != self.m - self.tower.d:
                raise FailedAxiomCheck(f"{self.name}: quotient has dimension {self.quotient.dimension}, "
                                       f"expected {self.m - self.tower.d}")
        if self.mode in ("free", "explicit") and not self.stages:
            raise FailedAxiomCheck(f"{self.name}: {self.mode} mode needs stage models")
        for k, st in self.stages.items():
            expected = self.m + self.tower.n * k + self.tower.shift
            if st.model.dimension != expected:
                raise FailedAxiomCheck(f"{self.name}: X_G({k}) has dimension {st.model.dimension}, expected {expected}")
            if st.q.domain is not st.model or st.q.codomain is not self.tower.base(k):
                raise FailedAxiomCheck(f"{self.name}: projection at stage {k} has the wrong ends")
            if st.restriction is not None:
                nxt = self.stages.get(k + 1)
                if nxt is None or st.restriction.domain is not st.model or st.restriction.codomain is not nxt.model:
                    raise FailedAxiomCheck(f"{self.name}: restriction at stage {k} has the wrong ends")
            if self.mode == "free" and (st.quotient_map is None or st.quotient_map.codomain is not self.quotient):
                raise FailedAxiomCheck(f"{self.name}: stage {k} lacks the map to the quotient")

    def available_stages(self) -> list:
        if self.mode in ("point", "trivial"):
            return list(self.tower.stages)
        return [k for k in self.stages if k in self.tower.stages]

    def __repr__(self):
        return f"ActionSpec({self.name!r}, {self.mode}, tower={self.tower.name}, X={self.space.name})"


def resolve_stage(a: ActionSpec, k: int) -> ActionStage:
    if k in a._resolved:
        return a._resolved[k]
    t = a.tower
    if k not in t.stages:
        raise UnresolvableStage(f"{a.name}: tower {t.name} has no stage {k}")
    base = t.base(k)
    has_next = k + 1 in t.stages and t.stages[k].restriction is not None
    if a.mode == "point":
        st = ActionStage(k, base, SpaceMap.identity(base), t.restriction(k) if has_next else None,
                         BundleModel.trivial(base, 0))
    elif a.mode == "trivial":
        X = a.space
        P = kunneth_model(base, X)
        restr = kunneth_map(t.restriction(k), SpaceMap.identity(X)) if has_next else None
        vertical = None
        if X.tangent_pontryagin is not None:
            vertical = BundleModel(P, tensor_element(P, base.ring.one(), X.tangent_pontryagin), X.dimension)
        st = ActionStage(k, P, factor_projection(P, 0), restr, vertical)
    else:
        if k not in a.stages:
            raise UnresolvableStage(f"{a.name}: no stage model for k={k}")
        st = a.stages[k]
    a._resolved[k] = st
    return st


def _require_orientations(a: ActionSpec, k: int):
    if not a.space.orientable:
        raise OrientationRequired(f"{a.space.name} is not orientable")
    if not a.tower.base(k).orientable:
        raise OrientationRequired(f"stage {k} of {a.tower.name} is not orientable")


def stage_k_class(a: ActionSpec, k: int) -> HomologyClass:
    """L^G_{*,k}(X) by the route attached to the mode."""
    st = resolve_stage(a, k)
    _require_orientations(a, k)
    if a.mode == "point":
        return st.model.fundamental_class()
    if a.mode == "trivial":
        return cross(a.tower.base(k).fundamental_class(), lclass(a.space))
    if a.mode == "free":
        return bundle_transfer(st.quotient_map, lclass(a.quotient))
    return definition_route(a, k)


def definition_route(a: ActionSpec, k: int) -> HomologyClass:
    """q_k^* L^*(TBG_k)^{-1} cap L_*(X_G(k))."""
    _require_orientations(a, k)
    st = resolve_stage(a, k)
    base = a.tower.base(k)
    if base.tangent_pontryagin is None:
        raise MissingTangent(f"stage {k} of {a.tower.name} carries no tangent data")
    correction = st.q.pullback(inverse_l_class(l_class(base.tangent)))
    return cap(correction, lclass(st.model))


def manifold_route(a: ActionSpec, k: int) -> HomologyClass:
    """L^*((TM)_G(k)) cap [M_G(k)]."""
    st = resolve_stage(a, k)
    if st.vertical is None:
        raise MissingVerticalBundle(f"{a.name}: stage {k} has no vertical tangent bundle")
    return poincare_dual(st.model, l_class(st.vertical))


def default_k_range(a: ActionSpec, j_min: Optional[int] = None) -> list:
    """[2, min(8, stable_k(m, j_min))], widened to two stages and clipped to
    what the catalogue resolves."""
    avail = set(a.available_stages())
    j_low = 0 if j_min is None else j_min
    lo = 2 if 2 in avail else min(avail)
    hi = max(lo + 1, min(DEFAULT_DEPTH, stable_k(a.m, j_low)))
    ks = [k for k in range(lo, hi + 1) if k in avail]
    if len(ks) < 2:
        raise UnresolvableStage(f"{a.name}: fewer than two consecutive stages available in [{lo}, {hi}]")
    return ks


def full_k_range(a: ActionSpec) -> list:
    return sorted(a.available_stages())


def _restrictions(a: ActionSpec, ks) -> dict:
    out = {}
    for k in ks:
        if k + 1 in ks:
            st = resolve_stage(a, k)
            if st.restriction is None:
                raise UnresolvableStage(f"{a.name}: no restriction from stage {k + 1} to {k}")
            out[k] = st.restriction
    return out


def _ks(a, k_range, j_min=None):
    return sorted(k_range) if k_range is not None else default_k_range(a, j_min)


def equivariant_l_class(a: ActionSpec, k_range=None, j_min: Optional[int] = None) -> InverseLimitClass:
    ks = _ks(a, k_range, j_min)
    stages = {k: stage_k_class(a, k) for k in ks}
    return assemble_inverse_limit(stages, a.tower, a.m, _restrictions(a, ks), spec=a)


def manifold_equiv_l(a: ActionSpec, k_range=None) -> InverseLimitClass:
    """Assemble the manifold-case route and compare it with the class itself."""
    ks = _ks(a, k_range)
    stages = {k: manifold_route(a, k) for k in ks}
    cls = assemble_inverse_limit(stages, a.tower, a.m, _restrictions(a, ks), spec=a)
    for k in ks:
        other = stage_k_class(a, k)
        if other != stages[k]:
            raise RouteDisagreement(f"{a.name}: manifold route and stage class differ at k={k}: "
                                    f"{stages[k]} vs {other}")
    return cls


def explicit_from(a: ActionSpec, name: Optional[str] = None) -> ActionSpec:
    """Re-present a point or trivial action with explicit product stage models."""
    if a.mode not in ("point", "trivial"):
        raise UnresolvableStage(f"{a.name}: only point and trivial actions have canonical stage models")
    stages = {k: resolve_stage(a, k) for k in a.available_stages()}
    return ActionSpec(name or f"{a.name} (explicit)", a.tower, a.space, "explicit",
                      stages=stages, provenance="derived")


def equivariant_fundamental_class(a: ActionSpec, k_range=None) -> InverseLimitClass:
    ks = _ks(a, k_range)
    stages = {}
    for k in ks:
        st = resolve_stage(a, k)
        _require_orientations(a, k)
        stages[k] = st.model.fundamental_class()
    return assemble_inverse_limit(stages, a.tower, a.m, _restrictions(a, ks), spec=a)


def top_component(cls: InverseLimitClass) -> dict:
    """The equivariant-degree-m component of any assembled class."""
    return cls.top_component()


def top_degree_law(cls: InverseLimitClass, fundamental: InverseLimitClass) -> bool:
    return all(cls.stages[k].component(cls.stage_degree(cls.m, k)) == fundamental.stages[k]
               for k in cls.stages if k in fundamental.stages)


def free_degree_law(a: ActionSpec, cls: InverseLimitClass) -> bool:
    """Support of a free-action class = support of L_*(X/G) shifted by d."""
    if a.mode != "free":
        raise ValueError("free-action law applies to free actions only")
    expected = {i + a.tower.d for i in lclass(a.quotient).degrees}
    return set(cls.support()) == expected


# --------------------------------------------------------------------------
# products

def product_group(g: GroupData, h: GroupData) -> GroupData:
    n1, n2 = g.n, h.n

    def block(a, b):
        n = n1 + n2
        rows = [[0] * n for _ in range(n)]
        for i in range(n1):
            for j in range(n1):
                rows[i][j] = a[i][j]
        for i in range(n2):
            for j in range(n2):
                rows[n1 + i][n1 + j] = b[i][j]
        return rows

    zero1 = [[0] * n1 for _ in range(n1)]
    zero2 = [[0] * n2 for _ in range(n2)]
    lie = [block(x, zero2) for x in g.lie_algebra_basis] + [block(zero1, y) for y in h.lie_algebra_basis]
    reps = [block(x, y) for x in g.component_reps for y in h.component_reps]
    return GroupData(f"{g.name}x{h.name}", g.dimension + h.dimension, n1 + n2, lie, reps,
                     g.connected and h.connected, g.bookkeeping_only or h.bookkeeping_only, "derived")


@lru_cache(maxsize=None)
def product_tower(s: BorelTower, t: BorelTower) -> BorelTower:
    """Stagewise product BG_k x BG'_k; the shift is the sum of the shifts."""
    stages = {}
    common = [k for k in s.stages if k in t.stages]
    for k in common:
        base = kunneth_model(s.base(k), t.base(k))
        restr = None
        if k + 1 in common and s.stages[k].restriction is not None and t.stages[k].restriction is not None:
            restr = kunneth_map(s.restriction(k), t.restriction(k))
        stages[k] = StageData(k, base, restr)
    tower = BorelTower(f"{s.name} x {t.name}", product_group(s.group, t.group), {},
                       n=s.n + t.n, shift=s.shift + t.shift, kind="product", provenance="derived", check=False)
    # restriction maps need the final stage objects, which exist only now
    tower.stages = stages
    tower.validate()
    return tower


@dataclass(eq=False)
class ProductResult:
    cls: InverseLimitClass
    direct_checked: list  # stages where the direct route was computed and agreed
    direct_unavailable: list


def product_action(a: ActionSpec, b: ActionSpec, ks) -> ActionSpec:
    """The product action on X x X' with explicit product stages."""
    T = product_tower(a.tower, b.tower)
    stages = {}
    for k in ks:
        sa, sb = resolve_stage(a, k), resolve_stage(b, k)
        model = kunneth_model(sa.model, sb.model)
        q = kunneth_map(sa.q, sb.q)
        restr = None
        if k + 1 in ks:
            restr = kunneth_map(sa.restriction, sb.restriction)
        vertical = None
        if sa.vertical is not None and sb.vertical is not None:
            vertical = BundleModel(model, tensor_element(model, sa.vertical.total_pontryagin,
                                                         sb.vertical.total_pontryagin))
        stages[k] = ActionStage(k, model, q, restr, vertical)
    space = kunneth_model(a.space, b.space)
    return ActionSpec(f"{a.name} x {b.name}", T, space, "explicit", stages=stages, provenance="derived")


def product_class(a: ActionSpec, b: ActionSpec, k_range=None) -> ProductResult:
    """Stagewise cross product, certified against the product action where
    the direct stage computation is available."""
    if k_range is None:
        common = set(a.available_stages()) & set(b.available_stages())
        lo = 2 if 2 in common else min(common)
        hi = max(lo + 1, min(DEFAULT_DEPTH, stable_k(a.m + b.m, 0)))
        ks = sorted(k for k in common if lo <= k <= hi)
    else:
        ks = sorted(k_range)
    T = product_tower(a.tower, b.tower)
    stages = {k: cross(stage_k_class(a, k), stage_k_class(b, k)) for k in ks}
    restrictions = {}
    for k in ks:
        if k + 1 in ks:
            restrictions[k] = kunneth_map(resolve_stage(a, k).restriction, resolve_stage(b, k).restriction)
    cls = assemble_inverse_limit(stages, T, a.m + b.m, restrictions)
    direct = product_action(a, b, ks)
    cls.spec = direct
    checked, unavailable = [], []
    for k in ks:
        try:
            value = definition_route(direct, k)
        except (MissingTangent, UnsupportedCap):
            unavailable.append(k)
            continue
        if value != stages[k]:
            raise RouteDisagreement(f"product of {a.name} and {b.name}: direct stage {k} class {value} "
                                    f"differs from the cross product {stages[k]}")
        checked.append(k)
    return ProductResult(cls, checked, unavailable)


# --------------------------------------------------------------------------
# change of group

@dataclass(eq=False)
class SubgroupPair:
    """G' c G with the tower of EG_k/G' and the projections pi_k: EG_k/G' -> BG_k."""

    name: str
    group: GroupData
    subgroup: GroupData
    big_tower: BorelTower
    tower: BorelTower
    projections: dict
    provenance: str = "user"

    def __post_init__(self):
        for k, p in self.projections.items():
            if p.codomain is not self.big_tower.base(k) or p.domain is not self.tower.base(k):
                raise FailedAxiomCheck(f"{self.name}: projection at stage {k} has the wrong ends")
        fiber = self.group.dimension - self.subgroup.dimension
        if self.tower.n != self.big_tower.n or self.tower.shift != self.big_tower.shift + fiber:
            raise FailedAxiomCheck(f"{self.name}: subgroup tower does not share the embedding of {self.group.name}")

    def projection(self, k: int) -> SpaceMap:
        if k not in self.projections:
            raise UncataloguedPair(f"{self.name}: no projection at stage {k}")
        return self.projections[k]


@dataclass(eq=False)
class RestrictedOrigin:
    pair: SubgroupPair
    source: ActionSpec


def restrict_group(cls: InverseLimitClass, pair: SubgroupPair) -> InverseLimitClass:
    """Transfer each stage along pi_k (x id_X) into the subgroup's stage models."""
    a = cls.spec
    if not isinstance(a, ActionSpec) or a.tower is not pair.big_tower:
        raise UncataloguedPair(f"{pair.name} does not start at the tower of this class")
    if a.mode not in ("point", "trivial"):
        raise UncataloguedPair(f"{pair.name}: no catalogued stage maps for {a.mode} actions")
    stages, restrictions = {}, {}
    ks = sorted(cls.stages)
    for k in ks:
        p = pair.projection(k)
        if a.mode == "trivial":
            p = kunneth_map(p, SpaceMap.identity(a.space))
        stages[k] = bundle_transfer(p, cls.stages[k])
        if k + 1 in cls.stages:
            r = pair.tower.restriction(k)
            restrictions[k] = kunneth_map(r, SpaceMap.identity(a.space)) if a.mode == "trivial" else r
    out = assemble_inverse_limit(stages, pair.tower, cls.m, restrictions)
    out.spec = RestrictedOrigin(pair, a)
    return out


def identify_with_space(raw: InverseLimitClass) -> HomologyClass:
    """Read a class restricted to the trivial subgroup as a class on X via
    [E'_k] x y = raw_k; every stage must give the same y."""
    origin = raw.spec
    if not isinstance(origin, RestrictedOrigin):
        raise UncataloguedPair("class was not produced by restrict_group")
    if not is_trivial_group(origin.pair.subgroup):
        raise UncataloguedPair(f"{origin.pair.name}: identification needs the trivial subgroup")
    X = origin.source.space
    values = {}
    for k, z in raw.stages.items():
        E = raw.tower.base(k)
        if origin.source.mode == "trivial":
            values[k] = split_cross(z, E.fundamental_class())
        else:
            if set(z.coeffs) - {"1"}:
                raise ValueError(f"stage {k} class is not a multiple of [{E.name}]")
            values[k] = X.fundamental_class() * z["1"]
    first = next(iter(values.values()))
    for k, v in values.items():
        if v != first:
            raise RouteDisagreement(f"identified values differ between stages: k={k} gives {v}, expected {first}")
    return first


def is_trivial_group(g: GroupData) -> bool:
    return g.dimension == 0 and len(g.component_reps) == 1 and g.component_reps[0] == _identity(g.n)
