"""Closed oriented space models and their homology.

Homology of a manifold model is carried by Poincare duals: a class is
stored as the cohomology element ``a`` with class ``a cap [M]``.  Singular
models carry an abstract homology basis with prescribed L-class data.
All wrong-way maps are conjugates of pullbacks by duality.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Mapping, Optional

from .charclass import BundleModel, l_class
from .errors import (
    FailedAxiomCheck,
    MissingTangent,
    OddCodimensionUnsupported,
    OrientationRequired,
    RingMismatch,
    UnsupportedCap,
    UnsupportedDuality,
)
from .exact_algebra import (
    GradedElement,
    RingMap,
    RingPresentation,
    TensorRing,
    format_combination,
    format_rational,
    nullspace,
    rank,
    signature,
    solve,
    split_tensor_name,
    tensor_map,
    tensor_name,
)

MANIFOLD = "manifold"
SINGULAR = "singular"


@dataclass(eq=False)
class SpaceModel:
    """A closed space of dimension ``dimension`` with rational cohomology
    ``ring`` and orientation ``evaluation`` on top-degree basis elements.

    ``homology_names`` renders Poincare duals of basis elements (the key
    ``"1"`` names the fundamental class); ``labels`` gives optional
    stage-independent names used when reading off inverse limits.
    """

    name: str
    dimension: int
    ring: RingPresentation
    evaluation: Mapping = field(default_factory=dict)
    kind: str = MANIFOLD
    tangent_pontryagin: Optional[GradedElement] = None
    orientable: Optional[bool] = None
    homology_basis: Mapping = field(default_factory=dict)
    fundamental: Optional[str] = None
    l_homology: Optional[Mapping] = None
    module_action: Optional[Mapping] = None
    homology_names: Mapping = field(default_factory=dict)
    labels: Mapping = field(default_factory=dict)
    factors: Optional[tuple] = None
    provenance: str = "user"
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        self.evaluation = MappingProxyType({n: Fraction(c) for n, c in self.evaluation.items() if c})
        has_top = any(self.evaluation.values())
        if self.orientable is None:
            self.orientable = has_top if self.kind == MANIFOLD else True
        if self.check:
            self.validate()

    # ----------------------------------------------------------------
    @property
    def is_manifold(self) -> bool:
        return self.kind == MANIFOLD

    def validate(self):
        m = self.dimension
        if self.kind not in (MANIFOLD, SINGULAR):
            raise FailedAxiomCheck(f"{self.name}: unknown kind {self.kind!r}")
        if self.is_manifold and self.ring.top_degree != m:
            raise FailedAxiomCheck(f"{self.name}: ring top degree {self.ring.top_degree} != dimension {m}")
        for n in self.evaluation:
            if not self.ring.has(n) or self.ring.degree(n) != m:
                raise FailedAxiomCheck(f"{self.name}: evaluation on {n!r}, which is not a degree-{m} basis element")
        if self.is_manifold and bool(self.evaluation) != bool(self.orientable):
            raise FailedAxiomCheck(f"{self.name}: orientable flag disagrees with the evaluation")
        if self.is_manifold and self.orientable:
            for p in range(m + 1):
                mat = self.pairing_matrix(p)
                size = self.ring.rank_in_degree(p)
                if size != self.ring.rank_in_degree(m - p) or rank(mat) != size:
                    raise FailedAxiomCheck(f"{self.name}: Poincare pairing degenerate in degree {p}")
        if self.tangent_pontryagin is not None:
            BundleModel(self, self.tangent_pontryagin)
        if self.kind == SINGULAR:
            if self.fundamental is None or self.homology_basis.get(self.fundamental) != m:
                raise FailedAxiomCheck(f"{self.name}: singular model needs a degree-{m} fundamental class")

    def evaluate(self, x: GradedElement) -> Fraction:
        """Integration against the orientation: only the top-degree part counts."""
        return sum((c * self.evaluation.get(n, 0) for n, c in x.coeffs.items()), Fraction(0))

    def pairing_matrix(self, p: int):
        rows = self.ring.names_in_degree(p)
        cols = self.ring.names_in_degree(self.dimension - p)
        return [[self.evaluate(self.ring.gen(a) * self.ring.gen(b)) for b in cols] for a in rows]

    @property
    def tangent(self) -> BundleModel:
        if self.tangent_pontryagin is None:
            raise MissingTangent(f"{self.name} has no tangent data")
        return BundleModel(self, self.tangent_pontryagin, self.dimension)

    # homology bookkeeping ------------------------------------------
    def homology_degree(self, name: str) -> int:
        if self.is_manifold:
            return self.dimension - self.ring.degree(name)
        return self.homology_basis[name]

    def homology_names_list(self) -> tuple:
        if self.is_manifold:
            return self.ring.names
        return tuple(self.homology_basis)

    def homology_rank(self, i: int) -> int:
        if self.is_manifold:
            return self.ring.rank_in_degree(self.dimension - i)
        return sum(1 for d in self.homology_basis.values() if d == i)

    def label(self, name: str, stable: bool = False) -> str:
        table = self.labels if stable else self.homology_names
        if name in table:
            return table[name]
        if stable and name in self.homology_names:
            return self.homology_names[name]
        if self.factors is not None:
            a, b = split_tensor_name(name)
            return f"{self.factors[0].label(a, stable)} x {self.factors[1].label(b, stable)}"
        if not self.is_manifold:
            return name
        return f"[{self.name}]" if name == "1" else f"PD({name})"

    def fundamental_class(self) -> HomologyClass:
        if not self.orientable:
            raise OrientationRequired(f"{self.name} is not orientable")
        if self.is_manifold:
            return HomologyClass(self, {"1": 1})
        return HomologyClass(self, {self.fundamental: 1})

    def __repr__(self):
        return f"SpaceModel({self.name!r}, dim={self.dimension}, {self.kind})"


class HomologyClass:
    """A rational homology class of a space model.  Immutable."""

    __slots__ = ("space", "coeffs")

    def __init__(self, space: SpaceModel, coeffs: Mapping = None):
        names = space.homology_names_list()
        order = {n: i for i, n in enumerate(names)}
        clean = {}
        for n, c in (coeffs or {}).items():
            c = Fraction(c)
            if not c:
                continue
            if n not in order:
                raise KeyError(f"{n!r} is not a homology basis element of {space.name}")
            clean[n] = c
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "coeffs", MappingProxyType(dict(sorted(clean.items(), key=lambda kv: order[kv[0]]))))

    def __setattr__(self, key, value):
        raise AttributeError("HomologyClass is immutable")

    @classmethod
    def zero(cls, space):
        return cls(space, {})

    @property
    def dual(self) -> GradedElement:
        if not self.space.is_manifold:
            raise UnsupportedDuality(f"{self.space.name} is singular")
        return self.space.ring.element(self.coeffs)

    def degree_of(self, name: str) -> int:
        return self.space.homology_degree(name)

    @property
    def degrees(self) -> set:
        return {self.degree_of(n) for n in self.coeffs}

    def component(self, i: int) -> HomologyClass:
        return HomologyClass(self.space, {n: c for n, c in self.coeffs.items() if self.degree_of(n) == i})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, name):
        return self.coeffs.get(name, Fraction(0))

    def _check(self, other):
        if self.space is not other.space and self.space.name != other.space.name:
            raise RingMismatch(f"classes on {self.space.name} and {other.space.name}")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for n, c in other.coeffs.items():
            out[n] = out.get(n, 0) + c
        return HomologyClass(self.space, out)

    def __neg__(self):
        return HomologyClass(self.space, {n: -c for n, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        s = Fraction(scalar)
        return HomologyClass(self.space, {n: c * s for n, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, HomologyClass):
            return NotImplemented
        same = self.space is other.space or self.space.name == other.space.name
        return same and dict(self.coeffs) == dict(other.coeffs)

    def __hash__(self):
        return hash((self.space.name, tuple(self.coeffs.items())))

    def render(self, stable: bool = False) -> str:
        return format_combination(self.coeffs, lambda n: self.space.label(n, stable))

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"HomologyClass({self.space.name}: {self.render()})"

    def to_doc(self) -> dict:
        return {"space": self.space.name, "coefficients": {n: format_rational(c) for n, c in self.coeffs.items()}}


@dataclass(eq=False)
class SpaceMap:
    """A map f: ``domain`` -> ``codomain`` recorded by its cohomology pullback
    ``pullback``: H^*(codomain) -> H^*(domain).  ``normal`` optionally holds
    normal-bundle data of an inclusion."""

    domain: SpaceModel
    codomain: SpaceModel
    pullback: RingMap
    normal: Optional[BundleModel] = None
    factors: Optional[tuple] = field(default=None, repr=False)

    def __post_init__(self):
        if not self.pullback.source.same_as(self.codomain.ring) or not self.pullback.target.same_as(self.domain.ring):
            raise RingMismatch(f"pullback does not match {self.domain.name} -> {self.codomain.name}")

    @classmethod
    def identity(cls, space: SpaceModel) -> SpaceMap:
        return cls(space, space, RingMap.identity(space.ring))

    def then(self, other: SpaceMap) -> SpaceMap:
        """Composite ``other o self``."""
        if other.domain is not self.codomain and other.domain.name != self.codomain.name:
            raise RingMismatch("maps do not compose")
        return SpaceMap(self.domain, other.codomain, self.pullback.compose(other.pullback))

    def __repr__(self):
        return f"SpaceMap({self.domain.name} -> {self.codomain.name})"


# --------------------------------------------------------------------------
# products and duality

def cap(a: GradedElement, x: HomologyClass) -> HomologyClass:
    space = x.space
    if not a.ring.same_as(space.ring):
        raise RingMismatch(f"cap: {a.ring.name} does not act on {space.name}")
    if space.is_manifold:
        return HomologyClass(space, (a * x.dual).coeffs)
    if space.module_action is None:
        raise UnsupportedCap(f"{space.name} has no catalogued module action")
    out = {}
    for c_name, ca in a.coeffs.items():
        for h_name, ch in x.coeffs.items():
            if c_name == "1":
                image = {h_name: 1}
            else:
                image = space.module_action.get((c_name, h_name), {})
            for n, cn in image.items():
                out[n] = out.get(n, 0) + ca * ch * Fraction(cn)
    return HomologyClass(space, out)


def poincare_dual(space: SpaceModel, a: GradedElement) -> HomologyClass:
    """a cap [M]."""
    if not space.is_manifold:
        raise UnsupportedDuality(f"{space.name} is singular")
    if not space.orientable:
        raise OrientationRequired(f"{space.name} is not orientable")
    return cap(a, space.fundamental_class())


def poincare_dual_inv(x: HomologyClass) -> GradedElement:
    if not x.space.is_manifold:
        raise UnsupportedDuality(f"{x.space.name} is singular")
    return x.dual


def kronecker(a: GradedElement, x: HomologyClass) -> Fraction:
    """<a, x> for manifold models."""
    return x.space.evaluate(a * x.dual)


def gysin_restrict(incl: SpaceMap, x: HomologyClass) -> HomologyClass:
    """Wrong-way map of an inclusion X c Y: H_{i}(Y) -> H_{i-n}(X)."""
    small, big = incl.domain, incl.codomain
    if x.space is not big and x.space.name != big.name:
        raise RingMismatch(f"class lives on {x.space.name}, inclusion ends at {big.name}")
    if _is_identity(incl):
        return x
    if not (small.is_manifold and big.is_manifold) and incl.factors is not None:
        return _factorwise(incl, x, gysin_restrict)
    n = big.dimension - small.dimension
    if n % 2:
        raise OddCodimensionUnsupported(f"codimension {n} of {small.name} in {big.name} is odd")
    for s in (small, big):
        if not s.orientable:
            raise OrientationRequired(f"{s.name} is not orientable")
    return poincare_dual(small, incl.pullback(poincare_dual_inv(x)))


def bundle_transfer(p: SpaceMap, x: HomologyClass) -> HomologyClass:
    """Transfer of an oriented fiber bundle E -> B: H_i(B) -> H_{i+f}(E)."""
    total, base = p.domain, p.codomain
    if x.space is not base and x.space.name != base.name:
        raise RingMismatch(f"class lives on {x.space.name}, bundle base is {base.name}")
    if _is_identity(p):
        return x
    if not (total.is_manifold and base.is_manifold) and p.factors is not None:
        return _factorwise(p, x, bundle_transfer)
    if not total.orientable or not base.orientable:
        raise OrientationRequired(f"transfer {total.name} -> {base.name} needs oriented spaces")
    return poincare_dual(total, p.pullback(poincare_dual_inv(x)))


def _is_identity(f: SpaceMap) -> bool:
    return f.domain is f.codomain and all(img == f.domain.ring.gen(n) for n, img in f.pullback.images.items())


def _factorwise(f: SpaceMap, x: HomologyClass, op) -> HomologyClass:
    """Apply a wrong-way map of a product map f x g factor by factor; used
    when a factor is singular and duality is unavailable on the product."""
    first, second = f.factors
    A, B = x.space.factors
    out = HomologyClass.zero(f.domain)
    for name, c in x.coeffs.items():
        a, b = split_tensor_name(name)
        out = out + cross(op(first, HomologyClass(A, {a: 1})), op(second, HomologyClass(B, {b: 1}))) * c
    return out


@lru_cache(maxsize=None)
def kunneth_model(A: SpaceModel, B: SpaceModel) -> SpaceModel:
    """The product A x B with tensor cohomology and product orientation."""
    ring = TensorRing(A.ring, B.ring, f"{A.ring.name} x {B.ring.name}")
    evaluation = {}
    for a, ca in A.evaluation.items():
        for b, cb in B.evaluation.items():
            evaluation[tensor_name(a, b)] = ca * cb
    tangent = None
    if A.tangent_pontryagin is not None and B.tangent_pontryagin is not None:
        tangent = _tensor_element(ring, A.tangent_pontryagin, B.tangent_pontryagin)
    kind = MANIFOLD if A.is_manifold and B.is_manifold else SINGULAR
    basis, l_hom, fundamental = {}, None, None
    if kind == SINGULAR:
        for a in A.homology_names_list():
            for b in B.homology_names_list():
                basis[tensor_name(a, b)] = A.homology_degree(a) + B.homology_degree(b)
        fundamental = tensor_name(_fund_name(A), _fund_name(B))
        la, lb = lclass(A), lclass(B)
        l_hom = {tensor_name(a, b): ca * cb for a, ca in la.coeffs.items() for b, cb in lb.coeffs.items()}
    return SpaceModel(
        name=f"{A.name} x {B.name}",
        dimension=A.dimension + B.dimension,
        ring=ring,
        evaluation=evaluation,
        kind=kind,
        tangent_pontryagin=tangent,
        orientable=A.orientable and B.orientable,
        homology_basis=basis,
        fundamental=fundamental,
        l_homology=l_hom,
        factors=(A, B),
        provenance="derived",
        check=False,
    )


def _fund_name(space):
    return "1" if space.is_manifold else space.fundamental


def _tensor_element(ring: TensorRing, x: GradedElement, y: GradedElement) -> GradedElement:
    return ring.element({tensor_name(a, b): ca * cb for a, ca in x.coeffs.items() for b, cb in y.coeffs.items()})


def tensor_element(space: SpaceModel, x: GradedElement, y: GradedElement) -> GradedElement:
    """x (x) y in the cohomology of a product model."""
    return _tensor_element(space.ring, x, y)


def kunneth_map(f: SpaceMap, g: SpaceMap) -> SpaceMap:
    """f x g between product models."""
    dom = kunneth_model(f.domain, g.domain)
    cod = kunneth_model(f.codomain, g.codomain)
    return SpaceMap(dom, cod, tensor_map(f.pullback, g.pullback, cod.ring, dom.ring), factors=(f, g))


def factor_projection(product: SpaceModel, side: int) -> SpaceMap:
    """Projection of A x B onto A (side 0) or B (side 1)."""
    A, B = product.factors
    factor = (A, B)[side]
    images = {}
    for n in factor.ring.names:
        images[n] = product.ring.gen(tensor_name(n, "1") if side == 0 else tensor_name("1", n))
    return SpaceMap(product, factor, RingMap(factor.ring, product.ring, images, check=False))


def cross(x: HomologyClass, y: HomologyClass) -> HomologyClass:
    """Homology cross product, landing in ``kunneth_model(x.space, y.space)``."""
    P = kunneth_model(x.space, y.space)
    return HomologyClass(P, {tensor_name(a, b): ca * cb for a, ca in x.coeffs.items() for b, cb in y.coeffs.items()})


def split_cross(z: HomologyClass, x: HomologyClass) -> HomologyClass:
    """Solve ``cross(x, y) = z`` for y, where x is a class on the first factor.
    Raises ValueError when z is not of that form."""
    A, B = z.space.factors
    pivot = next(iter(x.coeffs))
    cx = x.coeffs[pivot]
    y = HomologyClass(B, {split_tensor_name(n)[1]: c / cx for n, c in z.coeffs.items()
                          if split_tensor_name(n)[0] == pivot})
    if cross(x, y) != z:
        raise ValueError(f"{z!r} is not a cross product with {x!r}")
    return y


def lclass_manifold(M: SpaceModel) -> HomologyClass:
    """L_*(M) = L^*(TM) cap [M]."""
    if not M.is_manifold:
        raise UnsupportedDuality(f"{M.name} is singular; its L-class is catalogue data")
    if M.tangent_pontryagin is None:
        raise MissingTangent(f"{M.name} has no tangent data")
    return poincare_dual(M, l_class(M.tangent))


def lclass(X: SpaceModel) -> HomologyClass:
    """Goresky-MacPherson L-class: computed for manifolds, prescribed otherwise."""
    if X.is_manifold:
        return lclass_manifold(X)
    if X.l_homology is None:
        raise MissingTangent(f"{X.name} carries no L-class data")
    return HomologyClass(X, X.l_homology)


def intersection_signature(M: SpaceModel) -> int:
    """Signature of the middle-degree cup-product form (0 unless 4 | dim)."""
    if M.dimension % 4:
        return 0
    return signature(M.pairing_matrix(M.dimension // 2))


# --------------------------------------------------------------------------
# sphere bundles

class SphereBundle:
    """Rational cohomology of the unit sphere bundle S(E) -> B of an oriented
    vector bundle of rank ``fiber_dim + 1`` with Euler class ``euler``.

    By the Gysin sequence H^*(S(E)) = H^*(B)/(e) + s(ker e) where s raises
    degree by ``fiber_dim``; even classes act on s(ker e) through H^*(B) and
    products of two s-classes vanish for degree reasons in every case the
    construction accepts.
    """

    def __init__(self, base: SpaceModel, euler: GradedElement, fiber_dim: int,
                 bundle_pontryagin: Optional[GradedElement] = None, name: Optional[str] = None,
                 homology_names: Optional[Mapping] = None, labels: Optional[Mapping] = None):
        if fiber_dim % 2 == 0:
            raise ValueError("sphere bundle construction needs odd fiber dimension")
        r = fiber_dim + 1
        if euler and euler.homogeneous_degree != r:
            raise ValueError(f"Euler class must have degree {r}")
        self.base, self.euler, self.fiber_dim = base, euler, fiber_dim
        ring = base.ring
        top = base.dimension
        self._coker = {}
        self._image = {}
        self._kernel = {}
        for p in range(top + 1):
            names = ring.names_in_degree(p)
            if not names:
                continue
            image = [(euler * ring.gen(b)).vector(names) for b in ring.names_in_degree(p - r)] if p >= r else []
            image = [v for v in image if any(v)]
            chosen = []
            span = list(image)
            for i, n in enumerate(names):
                unit = [Fraction(int(j == i)) for j in range(len(names))]
                if rank(span + [unit]) > rank(span) if span else True:
                    chosen.append(n)
                    span.append(unit)
            self._coker[p] = chosen
            self._image[p] = image
            above = ring.names_in_degree(p + r)
            if above:
                mat = [[(euler * ring.gen(b))[t] for b in names] for t in above]
                kern = nullspace(mat, len(names))
            else:
                kern = [[Fraction(int(j == i)) for j in range(len(names))] for i in range(len(names))]
            self._kernel[p] = kern

        basis, self._odd_names = {}, {}
        for p, chosen in self._coker.items():
            basis.setdefault(p, []).extend(chosen)
        for p, kern in self._kernel.items():
            names = ring.names_in_degree(p)
            for v in kern:
                label = "S[" + format_combination({n: c for n, c in zip(names, v) if c}) + "]"
                self._odd_names[(p, tuple(v))] = label
                basis.setdefault(p + fiber_dim, []).append(label)
        self._odd_list = {p: [self._odd_names[(p, tuple(v))] for v in kern] for p, kern in self._kernel.items()}

        products = {}
        even = [n for p in sorted(self._coker) for n in self._coker[p]]
        odd = [(p, n) for p in sorted(self._odd_list) for n in self._odd_list[p]]
        for i, a in enumerate(even):
            for b in even[i:]:
                if a == "1" or b == "1":
                    continue
                products[(a, b)] = self._reduce(ring.gen(a) * ring.gen(b))
            for p, s in odd:
                if a == "1":
                    continue
                k = self._kernel_vector(p, s)
                products[(a, s)] = self._sigma(ring.gen(a) * k)
        total_top = top + fiber_dim
        for i, (p, s) in enumerate(odd):
            for q, t in odd[i:]:
                if p + q + 2 * fiber_dim <= total_top:
                    raise ValueError("odd classes of the sphere bundle could multiply nontrivially")
        gens = [(g, d) for g, d in ring.generators if g in even] + [(s, p + fiber_dim) for p, s in odd]
        self.ring = RingPresentation(f"S({name or base.name})", total_top, gens, basis, products)
        top_odd = self._odd_list.get(top, [])
        evaluation = {}
        for s in top_odd:
            evaluation[s] = base.evaluate(self._kernel_vector(top, s))
        self.projection_ring_map = RingMap(ring, self.ring, {b: self.reduce(ring.gen(b)) for b in ring.names})
        tangent = None
        if base.tangent_pontryagin is not None and bundle_pontryagin is not None:
            tangent = self.projection_ring_map(base.tangent_pontryagin * bundle_pontryagin)
        self.model = SpaceModel(
            name=name or f"S({base.name})",
            dimension=total_top,
            ring=self.ring,
            evaluation=evaluation,
            tangent_pontryagin=tangent,
            homology_names=homology_names or {},
            labels=labels or {},
            provenance="derived",
        )
        self.projection = SpaceMap(self.model, base, self.projection_ring_map)

    # ----------------------------------------------------------------
    def _kernel_vector(self, p, label) -> GradedElement:
        names = self.base.ring.names_in_degree(p)
        for (q, v), lab in self._odd_names.items():
            if q == p and lab == label:
                return self.base.ring.element(dict(zip(names, v)))
        raise KeyError(label)

    def _reduce(self, x: GradedElement) -> dict:
        out = {}
        for p in x.degrees:
            names = self.base.ring.names_in_degree(p)
            chosen = self._coker[p]
            image = self._image[p]
            cols = [[Fraction(int(n == c)) for n in names] for c in chosen] + image
            mat = [[col[r] for col in cols] for r in range(len(names))]
            sol = solve(mat, x.degree_part(p).vector(names))
            for c, v in zip(chosen, sol):
                if v:
                    out[c] = out.get(c, 0) + v
        return out

    def reduce(self, x: GradedElement) -> GradedElement:
        """Image of a base class under the projection pullback."""
        return self.ring.element(self._reduce(x))

    def _sigma(self, k: GradedElement) -> dict:
        out = {}
        for p in k.degrees:
            names = self.base.ring.names_in_degree(p)
            kern = self._kernel[p]
            mat = [[v[r] for v in kern] for r in range(len(names))]
            sol = solve(mat, k.degree_part(p).vector(names))
            if sol is None:
                raise FailedAxiomCheck("class is not in the kernel of the Euler class")
            for lab, c in zip(self._odd_list[p], sol):
                if c:
                    out[lab] = out.get(lab, 0) + c
        return out

    def sigma(self, k: GradedElement) -> GradedElement:
        return self.ring.element(self._sigma(k))

    def induced(self, bigger: SphereBundle, beta: SpaceMap) -> SpaceMap:
        """Map S(E) -> S(E') covering ``beta``: B -> B' with beta^* e' = e."""
        if beta.pullback(bigger.euler) != self.euler:
            raise FailedAxiomCheck("restriction does not carry Euler class to Euler class")
        images = {}
        for p, names in bigger._coker.items():
            for b in names:
                images[b] = self.reduce(beta.pullback(bigger.base.ring.gen(b)))
        for p, labels in bigger._odd_list.items():
            for lab in labels:
                images[lab] = self.sigma(beta.pullback(bigger._kernel_vector(p, lab)))
        return SpaceMap(self.model, bigger.model, RingMap(bigger.ring, self.ring, images))
