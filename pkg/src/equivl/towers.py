"""Group data, Borel-construction towers and inverse limits of stage homology."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

from .charclass import BundleModel, whitney_sum
from .errors import (
    CatalogueDepth,
    CompatibilityFailure,
    DegreeBoundViolation,
    FailedAxiomCheck,
    InvalidGroupData,
)
from .exact_algebra import determinant, rank, solve
from .spaces import HomologyClass, SpaceMap, SpaceModel, gysin_restrict, poincare_dual

Matrix = tuple


def as_matrix(rows) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def _matmul(a, b):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))) for i in range(len(a)))


def _transpose(a):
    return tuple(zip(*a)) if a else ()


def _identity(n):
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


# --------------------------------------------------------------------------
# groups

@dataclass(frozen=True)
class GroupData:
    """A compact group embedded in O(n): Lie algebra basis and one matrix per
    connected component (identity first)."""

    name: str
    dimension: int
    n: int
    lie_algebra_basis: tuple = ()
    component_reps: tuple = ()
    connected: bool = True
    bookkeeping_only: bool = False
    provenance: str = "user"

    def __post_init__(self):
        object.__setattr__(self, "lie_algebra_basis", tuple(as_matrix(m) for m in self.lie_algebra_basis))
        object.__setattr__(self, "component_reps", tuple(as_matrix(m) for m in self.component_reps)
                           or (_identity(self.n),))
        self.validate()

    def validate(self):
        n = self.n
        if n < 0 or (n % 2 and not self.bookkeeping_only):
            raise InvalidGroupData(f"{self.name}: embedding dimension {n} must be even")
        if n == 0 and self.dimension:
            raise InvalidGroupData(f"{self.name}: only the trivial group embeds in O(0)")
        if len(self.lie_algebra_basis) != self.dimension:
            raise InvalidGroupData(f"{self.name}: {len(self.lie_algebra_basis)} Lie algebra matrices for dimension {self.dimension}")
        for m in self.lie_algebra_basis + self.component_reps:
            if len(m) != n or any(len(row) != n for row in m):
                raise InvalidGroupData(f"{self.name}: matrices must be {n}x{n}")
        if self.component_reps[0] != _identity(n):
            raise InvalidGroupData(f"{self.name}: first component representative must be the identity")
        for g in self.component_reps:
            if _matmul(g, _transpose(g)) != _identity(n):
                raise InvalidGroupData(f"{self.name}: component representative is not orthogonal")
        if self.connected and len(self.component_reps) > 1:
            raise InvalidGroupData(f"{self.name}: connected group with several components")
        if self.dimension and rank([_flatten(x) for x in self.lie_algebra_basis]) != self.dimension:
            raise InvalidGroupData(f"{self.name}: Lie algebra basis is linearly dependent")

    @property
    def shift(self) -> int:
        """a = n(n-1)/2 - d."""
        return self.n * (self.n - 1) // 2 - self.dimension


def _flatten(m):
    return [x for row in m for x in row]


def adjoint_matrix(group: GroupData, g: Matrix) -> Matrix:
    """Matrix of v -> g v g^-1 in the Lie algebra basis."""
    basis = group.lie_algebra_basis
    cols_in = [_flatten(x) for x in basis]
    system = [[col[r] for col in cols_in] for r in range(len(cols_in[0]))]
    ginv = _transpose(g)
    columns = []
    for x in basis:
        image = _flatten(_matmul(_matmul(g, x), ginv))
        coords = solve(system, image)
        if coords is None:
            raise InvalidGroupData(f"{group.name}: Lie algebra basis is not closed under Ad")
        columns.append(coords)
    return tuple(tuple(columns[c][r] for c in range(len(columns))) for r in range(len(columns)))


@dataclass(frozen=True)
class OrientabilityVerdict:
    group: str
    orientable: bool
    witness: Optional[Matrix] = None
    determinants: tuple = ()
    reason: str = ""


def check_biinvariant_orientable(group: GroupData) -> OrientabilityVerdict:
    """Bi-invariant orientability: Ad(g) must preserve orientation on every
    component.  Connected and discrete groups pass without computation."""
    if group.dimension:
        for g in group.component_reps:
            adjoint_matrix(group, g)
    if group.dimension == 0:
        return OrientabilityVerdict(group.name, True, reason="discrete group")
    if group.connected:
        return OrientabilityVerdict(group.name, True, reason="connected group")
    dets = []
    for g in group.component_reps:
        det = determinant(adjoint_matrix(group, g))
        dets.append(det)
        if det < 0:
            return OrientabilityVerdict(group.name, False, g, tuple(dets),
                                        "adjoint action reverses orientation")
    return OrientabilityVerdict(group.name, True, determinants=tuple(dets),
                                reason="adjoint action preserves orientation on every component")


# --------------------------------------------------------------------------
# towers

@dataclass(eq=False)
class StageData:
    k: int
    base: SpaceModel
    restriction: Optional[SpaceMap] = None  # BG_k -> BG_{k+1}
    normal: Optional[BundleModel] = None    # normal bundle of BG_k in BG_{k+1}


@dataclass(eq=False)
class BorelTower:
    """Stage models BG_k of the approximations EG_k/G.

    ``shift`` is the degree offset a of the stage homology; standard towers
    have a = n(n-1)/2 - d, product towers carry the sum of the factor shifts.
    """

    name: str
    group: GroupData
    stages: Mapping
    n: Optional[int] = None
    shift: Optional[int] = None
    kind: str = "standard"
    provenance: str = "user"
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        if self.n is None:
            self.n = self.group.n
        if self.shift is None:
            self.shift = self.group.shift
        self.stages = dict(sorted(self.stages.items()))
        if self.check:
            self.validate()

    @property
    def d(self) -> int:
        return self.group.dimension

    def validate(self):
        if self.kind == "standard" and self.shift != self.group.shift:
            raise FailedAxiomCheck(f"{self.name}: shift {self.shift} != n(n-1)/2 - d = {self.group.shift}")
        for k, st in self.stages.items():
            expected = self.n * k + self.shift
            if st.base.dimension != expected:
                raise FailedAxiomCheck(f"{self.name}: stage {k} has dimension {st.base.dimension}, expected {expected}")
            if st.restriction is not None:
                nxt = self.stages.get(k + 1)
                if nxt is None:
                    raise FailedAxiomCheck(f"{self.name}: restriction at stage {k} without stage {k + 1}")
                if st.restriction.domain is not st.base or st.restriction.codomain is not nxt.base:
                    raise FailedAxiomCheck(f"{self.name}: restriction at stage {k} has the wrong ends")
                if (st.normal is not None and st.base.tangent_pontryagin is not None
                        and nxt.base.tangent_pontryagin is not None):
                    pulled = st.restriction.pullback(nxt.base.tangent_pontryagin)
                    summed = whitney_sum(st.base.tangent, st.normal).total_pontryagin
                    if pulled != summed:
                        raise FailedAxiomCheck(f"{self.name}: restricted tangent bundle at stage {k} "
                                               "is not the tangent plus normal bundle")

    def stage(self, k: int) -> StageData:
        if k not in self.stages:
            raise CatalogueDepth(f"{self.name}: stage {k} is not catalogued (have {min(self.stages)}..{max(self.stages)})")
        return self.stages[k]

    def base(self, k: int) -> SpaceModel:
        return self.stage(k).base

    def restriction(self, k: int) -> SpaceMap:
        st = self.stage(k)
        if st.restriction is None:
            raise CatalogueDepth(f"{self.name}: no restriction from stage {k + 1} to {k}")
        return st.restriction

    def stage_degree(self, j: int, k: int, m: int = 0) -> int:
        """Degree in H_*(X_G(k)) representing equivariant degree j."""
        return j + self.n * k + self.shift

    def equivariant_degree(self, i: int, k: int) -> int:
        return i - self.n * k - self.shift

    @property
    def max_stage(self) -> int:
        return max(self.stages)


def tower_dims(t: BorelTower, k: int) -> tuple:
    """(dim EG_k, dim BG_k)."""
    if k < 1:
        raise ValueError("k must be positive")
    base = t.n * k + t.shift
    return base + t.d, base


def tower_orientable(t: BorelTower, k: int) -> bool:
    base = t.base(k)
    top = base.ring.names_in_degree(base.dimension)
    return any(base.evaluation.get(n, 0) for n in top)


def stable_k(m: int, j: int) -> int:
    """First stage realizing the equivariant group in degree j."""
    return max(2, m - j + 1)


def gysin_matrix(incl: SpaceMap, i: int):
    """Matrix of the Gysin restriction H_{i+n}(big) -> H_i(small) in PD bases.

    Rows: basis of H_i(small) (duals in degree dim small - i); columns:
    basis of H_{i+n}(big)."""
    small, big = incl.domain, incl.codomain
    n = big.dimension - small.dimension
    src = big.ring.names_in_degree(big.dimension - i - n)
    dst = small.ring.names_in_degree(small.dimension - i)
    cols = []
    for name in src:
        image = gysin_restrict(incl, HomologyClass(big, {name: 1}))
        cols.append([image[d] for d in dst])
    return [[cols[c][r] for c in range(len(src))] for r in range(len(dst))], src, dst


def cohomological_stabilization(t: BorelTower) -> list:
    """For every catalogued restriction beta_k and degree i < k: is
    beta_k^*: H^i(BG_{k+1}) -> H^i(BG_k) an isomorphism?  Returns rows
    ``(k, i, rank_source, rank_target, invertible)``."""
    rows = []
    for k, st in t.stages.items():
        if st.restriction is None:
            continue
        f = st.restriction.pullback
        for i in range(0, k):
            mat = f.matrix(i)
            src = f.source.rank_in_degree(i)
            dst = f.target.rank_in_degree(i)
            ok = src == dst and (src == 0 or rank(mat) == src)
            rows.append((k, i, src, dst, ok))
    return rows


@dataclass(eq=False)
class PointHomology:
    """The equivariant homology of a point in one degree."""

    tower: BorelTower
    j: int
    rank: int
    stable_k: int
    generators: list  # [(k, HomologyClass)] from the stable stage upward
    verified: Optional[bool]

    def generator_names(self, stable=False) -> list:
        return [g.render(stable) for _, g in self.generators]


def point_equivariant_homology(t: BorelTower, j: int) -> PointHomology:
    k = stable_k(0, j)
    base = t.base(k)
    i = t.stage_degree(j, k)
    if i < 0 or i > base.dimension:
        return PointHomology(t, j, 0, k, [], _stage_iso(t, k, i))
    r = base.homology_rank(i)
    gens = []
    names = base.ring.names_in_degree(base.dimension - i)
    if r == 1:
        current = HomologyClass(base, {names[0]: 1})
        gens.append((k, current))
        kk = k
        while kk + 1 in t.stages and t.stages[kk].restriction is not None:
            incl = t.stages[kk].restriction
            mat, src, _ = gysin_matrix(incl, i + (kk - k) * t.n)
            if not src:
                break
            coords = solve(mat, [current[d] for d in incl.domain.ring.names_in_degree(incl.domain.dimension - i - (kk - k) * t.n)])
            if coords is None:
                break
            current = HomologyClass(incl.codomain, dict(zip(src, coords)))
            kk += 1
            gens.append((kk, current))
    else:
        gens = [(k, HomologyClass(base, {n: 1})) for n in names]
    return PointHomology(t, j, r, k, gens, _stage_iso(t, k, i))


def _stage_iso(t: BorelTower, k: int, i: int) -> Optional[bool]:
    """Is beta_k^!: H_{i+n}(BG_{k+1}) -> H_i(BG_k) an isomorphism?  None when
    stage k+1 is not catalogued."""
    st = t.stages.get(k)
    if st is None or st.restriction is None:
        return None
    small = st.base
    big = st.restriction.codomain
    if i < 0 or i > small.dimension:
        return big.homology_rank(i + t.n) == 0
    mat, src, dst = gysin_matrix(st.restriction, i)
    return len(src) == len(dst) and (not src or rank(mat) == len(src))


# --------------------------------------------------------------------------
# inverse limits

@dataclass(eq=False)
class InverseLimitClass:
    """A Gysin-compatible family of stage classes.

    ``stages[k]`` lives on the stage-k model; ``restrictions[k]`` embeds the
    stage-k model into the stage-(k+1) model.
    """

    tower: BorelTower
    m: int
    stages: dict
    restrictions: dict
    verified: bool = False
    spec: object = None

    def equivariant_degree(self, stage_degree: int, k: int) -> int:
        return self.tower.equivariant_degree(stage_degree, k)

    def stage_degree(self, j: int, k: int) -> int:
        return self.tower.stage_degree(j, k)

    def component(self, j: int) -> dict:
        return {k: x.component(self.stage_degree(j, k)) for k, x in self.stages.items()}

    def support(self) -> list:
        js = set()
        for k, x in self.stages.items():
            js |= {self.equivariant_degree(i, k) for i in x.degrees}
        return sorted(js, reverse=True)

    def stable_value(self, j: int):
        """``(k, class)`` at the first stable stage present, or None."""
        k0 = stable_k(self.m, j)
        for k in sorted(self.stages):
            if k >= k0:
                return k, self.stages[k].component(self.stage_degree(j, k))
        return None

    def value_at(self, j: int, k: int) -> HomologyClass:
        return self.stages[k].component(self.stage_degree(j, k))

    def top_component(self) -> dict:
        return self.component(self.m)

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.stages.values())

    def __eq__(self, other):
        if not isinstance(other, InverseLimitClass):
            return NotImplemented
        return self.stages.keys() == other.stages.keys() and all(self.stages[k] == other.stages[k] for k in self.stages)

    __hash__ = None


def assemble_inverse_limit(stages: Mapping, t: BorelTower, m: int, restrictions: Optional[Mapping] = None,
                           spec=None) -> InverseLimitClass:
    """Certify xi_k^!(stage_{k+1}) = stage_k for all consecutive supplied pairs
    and the vanishing above degree m."""
    stages = dict(sorted(stages.items()))
    ks = list(stages)
    if len(ks) < 2 or not any(k + 1 in stages for k in ks):
        raise ValueError("need at least two consecutive stages")
    if restrictions is None:
        restrictions = {k: t.restriction(k) for k in ks if k + 1 in stages}
    for k in ks:
        if k + 1 not in stages:
            continue
        incl = restrictions[k]
        image = gysin_restrict(incl, stages[k + 1])
        if image != stages[k]:
            diff = image - stages[k]
            bad = max(diff.degrees)
            j = t.equivariant_degree(bad, k)
            raise CompatibilityFailure(
                f"stage {k + 1} does not restrict to stage {k} in equivariant degree {j}", k, j)
    for k, x in stages.items():
        for i in x.degrees:
            j = t.equivariant_degree(i, k)
            if j > m:
                raise DegreeBoundViolation(f"nonzero component in equivariant degree {j} > {m} at stage {k}", j)
    return InverseLimitClass(t, m, stages, dict(restrictions), True, spec)


def fundamental_family(t: BorelTower, ks) -> dict:
    return {k: poincare_dual(t.base(k), t.base(k).ring.one()) for k in ks}
