"""Seeded randomized property suites over the catalogue.

Run standalone with ``python -m equivl.properties [--seed S] [--cases N]``;
each suite draws N cases and the exit code is 1 if any case fails.
"""
from __future__ import annotations

import argparse
import random
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import engine as E
from .catalogue import Catalogue, default_catalogue
from .charclass import BundleModel, inverse_l_class, l_class, pullback_bundle, whitney_sum
from .errors import CompatibilityFailure
from .spaces import (
    HomologyClass,
    cap,
    gysin_restrict,
    kunneth_model,
    poincare_dual,
    poincare_dual_inv,
)
from .towers import assemble_inverse_limit

DEFAULT_SEED = 20240611
DEFAULT_CASES = 250


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, condition: bool, what: str):
        self.cases += 1
        if not condition:
            self.failures.append(what)


# --------------------------------------------------------------------------
# pools drawn from the catalogue

def _rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-9, 9), rng.randint(1, 5))


def random_element(rng: random.Random, ring, degrees=None):
    names = [n for n in ring.names if degrees is None or ring.degree(n) in degrees]
    picked = rng.sample(names, rng.randint(0, len(names))) if names else []
    return ring.element({n: _rational(rng) for n in picked})


def random_pontryagin(rng: random.Random, ring):
    fours = [p for p in ring.basis if p and p % 4 == 0]
    return ring.one() + random_element(rng, ring, fours)


def manifold_models(cat: Catalogue) -> list:
    """Orientable manifold models: shipped spaces, tower stages, action stages
    and a few products."""
    seen = {}

    def add(s):
        if s.is_manifold and s.orientable:
            seen.setdefault(s.name, s)

    for s in cat.spaces.values():
        add(s)
    for t in cat.towers.values():
        for st in t.stages.values():
            add(st.base)
    for a in cat.actions.values():
        for k in a.available_stages():
            add(E.resolve_stage(a, k).model)
    s1 = cat.tower("S1")
    add(kunneth_model(cat.space("CP2"), cat.space("CP2")))
    add(kunneth_model(s1.base(2), s1.base(3)))
    return list(seen.values())


def all_rings(cat: Catalogue) -> list:
    rings = {}
    for s in manifold_models(cat):
        rings.setdefault(s.ring.name, s.ring)
    for t in cat.towers.values():
        for st in t.stages.values():
            rings.setdefault(st.base.ring.name, st.base.ring)
    return list(rings.values())


def _window(rng: random.Random, ks: list, shortest: int = 2) -> list:
    runs = [ks[i:j] for i in range(len(ks)) for j in range(i + shortest, len(ks) + 1)
            if ks[i:j] == list(range(ks[i], ks[i] + j - i))]
    return rng.choice(runs)


# --------------------------------------------------------------------------
# suites

def ring_axioms(cat: Catalogue, rng: random.Random, cases: int) -> SuiteResult:
    res = SuiteResult("ring axioms")
    rings = all_rings(cat)
    for _ in range(cases):
        R = rng.choice(rings)
        a, b, c = (random_element(rng, R) for _ in range(3))
        res.check(a * b == b * a, f"{R.name}: commutativity")
        res.check((a * b) * c == a * (b * c), f"{R.name}: associativity")
        res.check(R.one() * a == a, f"{R.name}: unit")
        res.check(a * (b + c) == a * b + a * c, f"{R.name}: distributivity")
        x, y = rng.choice(R.names), rng.choice(R.names)
        prod = R.gen(x) * R.gen(y)
        res.check(prod.is_zero() or prod.homogeneous_degree == R.degree(x) + R.degree(y), f"{R.name}: grading")
    return res


def duality(cat: Catalogue, rng: random.Random, cases: int) -> SuiteResult:
    res = SuiteResult("duality round trips and cap associativity")
    models = manifold_models(cat)
    for _ in range(cases):
        M = rng.choice(models)
        a = random_element(rng, M.ring)
        res.check(poincare_dual_inv(poincare_dual(M, a)) == a, f"{M.name}: PD round trip")
        x = HomologyClass(M, random_element(rng, M.ring).coeffs)
        res.check(poincare_dual(M, poincare_dual_inv(x)) == x, f"{M.name}: PD^-1 round trip")
        b, c = random_element(rng, M.ring), random_element(rng, M.ring)
        res.check(cap(b * c, x) == cap(b, cap(c, x)), f"{M.name}: (b c) cap x = b cap (c cap x)")
    return res


def l_multiplicativity(cat: Catalogue, rng: random.Random, cases: int) -> SuiteResult:
    res = SuiteResult("L-multiplicativity and naturality")
    bases = [M for M in manifold_models(cat) if M.ring.top_degree >= 4 and M.ring.even]
    s1 = cat.tower("S1")
    links = [k for k in s1.stages if s1.stages[k].restriction is not None]
    for _ in range(cases):
        M = rng.choice(bases)
        xi = BundleModel(M, random_pontryagin(rng, M.ring))
        eta = BundleModel(M, random_pontryagin(rng, M.ring))
        lx, ly = l_class(xi), l_class(eta)
        res.check(l_class(whitney_sum(xi, eta)) == lx * ly, f"{M.name}: L(xi + eta) = L(xi) L(eta)")
        res.check(inverse_l_class(lx) * lx == M.ring.one(), f"{M.name}: L^-1 L = 1")
        k = rng.choice(links)
        f = s1.restriction(k)
        big = BundleModel(f.codomain, random_pontryagin(rng, f.codomain.ring))
        res.check(l_class(pullback_bundle(f.pullback, big, f.domain)) == f.pullback(l_class(big)),
                  f"S1 stage {k}: L(f^* xi) = f^* L(xi)")
    return res


def _chains(cat: Catalogue) -> list:
    """Consecutive embedding pairs (k -> k+1 -> k+2) of towers and actions."""
    out = []
    for t in cat.towers.values():
        for k in t.stages:
            if k + 1 in t.stages and t.stages[k].restriction is not None and t.stages[k + 1].restriction is not None:
                f, g = t.restriction(k), t.restriction(k + 1)
                if (f.codomain.dimension - f.domain.dimension) % 2 == 0 and f.domain.orientable \
                        and f.codomain.orientable and g.codomain.orientable:
                    out.append((f"{t.name}[{k}]", f, g))
    for a in cat.actions.values():
        ks = a.available_stages()
        for k in ks:
            if k + 2 in ks:
                f, g = E.resolve_stage(a, k).restriction, E.resolve_stage(a, k + 1).restriction
                if f is not None and g is not None and f.domain.is_manifold and g.codomain.is_manifold:
                    out.append((f"{a.name}[{k}]", f, g))
    return out


def gysin_functoriality(cat: Catalogue, rng: random.Random, cases: int) -> SuiteResult:
    res = SuiteResult("Gysin functoriality on tower triples")
    chains = _chains(cat)
    for _ in range(cases):
        label, f, g = rng.choice(chains)
        x = HomologyClass(g.codomain, random_element(rng, g.codomain.ring).coeffs)
        stepwise = gysin_restrict(f, gysin_restrict(g, x))
        composite = gysin_restrict(f.then(g), x)
        res.check(stepwise == composite, f"{label}: (g f)^! = f^! g^!")
    return res


def degree_bound(cat: Catalogue, rng: random.Random, cases: int) -> SuiteResult:
    res = SuiteResult("degree-bound law and compatibility mutations")
    specs = [a for a in cat.actions.values() if len(a.available_stages()) >= 2]
    cache = {}
    for _ in range(cases):
        a = rng.choice(specs)
        ks = _window(rng, E.full_k_range(a))
        key = (a.name, tuple(ks))
        if key not in cache:
            cache[key] = E.equivariant_l_class(a, ks)
        cls = cache[key]
        res.check(max(cls.support(), default=a.m) <= a.m, f"{a.name} {ks}: support above {a.m}")

        # a random compatible family restricted down from the top stage
        restr = {k: E.resolve_stage(a, k).restriction for k in ks[:-1]}
        top = E.resolve_stage(a, ks[-1]).model
        family = {ks[-1]: HomologyClass(top, random_element(rng, top.ring).coeffs)}
        for k in reversed(ks[:-1]):
            family[k] = gysin_restrict(restr[k], family[k + 1])
        fam = assemble_inverse_limit(family, a.tower, a.m, restr)
        res.check(max(fam.support(), default=a.m) <= a.m, f"{a.name} {ks}: random family above {a.m}")

        # perturbing a non-top stage must break the certificate at that stage
        k = rng.choice(ks[:-1])
        model = family[k].space
        bump = HomologyClass(model, {rng.choice(model.ring.names): Fraction(rng.choice([-2, -1, 1, 2]))})
        family[k] = family[k] + bump
        # the pair (k-1, k) breaks first unless the bump dies under restriction
        first = k - 1 if k - 1 in family and gysin_restrict(restr[k - 1], bump) else k
        try:
            assemble_inverse_limit(family, a.tower, a.m, restr)
            res.check(False, f"{a.name} {ks}: perturbation at k={k} was certified")
        except CompatibilityFailure as exc:
            res.check(exc.k == first, f"{a.name} {ks}: failure reported at k={exc.k}, expected k={first}")
    return res


SUITES = (ring_axioms, duality, l_multiplicativity, gysin_functoriality, degree_bound)


def run_all(seed: int = DEFAULT_SEED, cases: int = DEFAULT_CASES, cat: Catalogue = None) -> list:
    cat = cat or default_catalogue()
    results = []
    for i, suite in enumerate(SUITES):
        rng = random.Random(seed * 100 + i)
        start = time.perf_counter()
        r = suite(cat, rng, cases)
        r.seconds = time.perf_counter() - start
        results.append(r)
    return results


def main(argv=None) -> int:
    p = argparse.ArgumentParser(prog="python -m equivl.properties", description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--cases", type=int, default=DEFAULT_CASES, help="draws per suite")
    args = p.parse_args(argv)
    results = run_all(args.seed, args.cases)
    for r in results:
        status = "ok" if r.ok else f"FAILED ({len(r.failures)})"
        print(f"{r.name:45s} {r.cases:6d} checks  {r.seconds:6.2f}s  {status}")
        for f in r.failures[:5]:
            print(f"    {f}")
    total = sum(r.cases for r in results)
    bad = sum(len(r.failures) for r in results)
    print(f"total: {total} checks, {bad} failures, seed {args.seed}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
