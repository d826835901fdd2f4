"""Multiplicative sequences and the L-class calculus of vector bundles.

Polynomials in the Pontryagin generators p_1..p_D are plain dicts mapping an
exponent tuple ``(e_1, .., e_D)`` to a Fraction; ``p_i`` has weight ``i``
(cohomological degree ``4i``).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

from .errors import NotInvertible, RingMismatch
from .exact_algebra import (
    GradedElement,
    PowerSeries,
    RingMap,
    format_rational,
    series_l_genus,
    solve,
)

DEFAULT_DEPTH = 6


# --------------------------------------------------------------------------
# partitions and polynomial helpers

@lru_cache(maxsize=None)
def partitions(n: int, largest: Optional[int] = None) -> tuple:
    """Partitions of ``n`` as non-increasing tuples."""
    if largest is None:
        largest = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def _poly_mul(a: dict, b: dict, weight, cap: int) -> dict:
    out = {}
    for ea, ca in a.items():
        wa = weight(ea)
        for eb, cb in b.items():
            if wa + weight(eb) > cap:
                continue
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def _p_weight(e) -> int:
    return sum((i + 1) * x for i, x in enumerate(e))


def _x_weight(e) -> int:
    return sum(e)


def _partition_exponent(mu, nvars: int) -> tuple:
    """Exponent tuple of p_{mu_1} p_{mu_2} ... in nvars generators."""
    e = [0] * nvars
    for part in mu:
        e[part - 1] += 1
    return tuple(e)


def format_ppoly(poly: dict) -> str:
    """Render like ``7/45 p2 - 1/45 p1^2``."""
    if not poly:
        return "0"
    terms = sorted(poly.items(), key=lambda kv: tuple(reversed(kv[0])), reverse=True)
    pieces = []
    for e, c in terms:
        mono = " ".join(
            (f"p{i + 1}" if x == 1 else f"p{i + 1}^{x}") for i, x in enumerate(e) if x
        )
        if not mono:
            body = format_rational(abs(c))
        else:
            body = mono if abs(c) == 1 else f"{format_rational(abs(c))} {mono}"
        pieces.append(("-" if c < 0 else "+", body))
    text = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


# --------------------------------------------------------------------------
# the two construction routes

def multiplicative_polynomials(series: PowerSeries, depth: int) -> list:
    """K_0..K_depth of the genus ``series`` via formal roots.

    For weight j, introduce j roots x_i of weight one (enough to separate
    all symmetric functions of weight j), expand prod_i Q(x_i) and rewrite
    the weight-j piece in elementary symmetric functions e_i = p_i by
    solving the linear system on monomial symmetric functions.
    """
    D = depth
    q = series.truncate(D).coefficients
    result = [{(0,) * D: Fraction(1)}]
    for j in range(1, D + 1):
        lams = partitions(j)
        # coefficient of x^lam in prod_i Q(x_i) is prod_parts q[part]
        rhs = []
        for lam in lams:
            c = Fraction(1)
            for part in lam:
                c *= q[part]
            rhs.append(c)
        matrix = [[Fraction(_elementary_coefficient(mu, lam)) for mu in lams] for lam in lams]
        coeffs = solve(matrix, rhs)
        result.append({_partition_exponent(mu, D): c for mu, c in zip(lams, coeffs) if c})
    return result


@lru_cache(maxsize=None)
def _elementary_coefficient(mu: tuple, lam: tuple) -> int:
    """Coefficient of x^lam in e_mu = prod_r e_{mu_r}: the number of 0-1
    matrices with row sums ``mu`` and column sums ``lam``."""
    if not mu:
        return int(not any(lam))
    first, rest = mu[0], mu[1:]
    total = 0
    for cols in _subsets(len(lam), first):
        if all(lam[c] for c in cols):
            left = list(lam)
            for c in cols:
                left[c] -= 1
            total += _elementary_coefficient(rest, tuple(sorted(left, reverse=True)))
    return total


def _subsets(n, k, start=0):
    if k == 0:
        yield ()
        return
    for i in range(start, n - k + 1):
        for rest in _subsets(n, k - 1, i + 1):
            yield (i,) + rest


def multiplicative_polynomials_newton(series: PowerSeries, depth: int) -> list:
    """K_0..K_depth via power sums: K = exp(sum_i a_i s_i), a = log Q,
    with the power sums s_i written in p_j = e_j by Newton's identities."""
    D = depth
    zero = (0,) * D
    if D == 0:
        return [{(): Fraction(1)}]
    a = series.truncate(D).log().coefficients

    def p(i):
        e = [0] * D
        e[i - 1] = 1
        return {tuple(e): Fraction(1)}

    def add(x, y, s=1):
        out = dict(x)
        for e, c in y.items():
            out[e] = out.get(e, 0) + s * c
        return {e: c for e, c in out.items() if c}

    power = [None]
    for k in range(1, D + 1):
        # s_k = (-1)^(k-1) k e_k + sum_{i=1}^{k-1} (-1)^(i-1) e_i s_{k-i}
        s = {e: (-1) ** (k - 1) * k * c for e, c in p(k).items()}
        for i in range(1, k):
            s = add(s, _poly_mul(p(i), power[k - i], _p_weight, D), (-1) ** (i - 1))
        power.append(s)

    f = {}
    for i in range(1, D + 1):
        if a[i]:
            f = add(f, {e: a[i] * c for e, c in power[i].items()})
    total = {zero: Fraction(1)}
    term = {zero: Fraction(1)}
    for n in range(1, D + 1):
        term = {e: c / n for e, c in _poly_mul(term, f, _p_weight, D).items()}
        total = add(total, term)
    return [
        {e: c for e, c in total.items() if _p_weight(e) == j}
        for j in range(D + 1)
    ]


@dataclass(frozen=True)
class MultiplicativeSequence:
    genus_series: PowerSeries
    polynomials: tuple

    @property
    def depth(self) -> int:
        return len(self.polynomials) - 1

    def evaluate(self, pontryagin: list, up_to: int) -> GradedElement:
        """sum_j K_j(p_1, ..) for j <= up_to; ``pontryagin[i-1]`` is p_i."""
        if up_to > self.depth:
            raise ValueError(f"sequence cached to depth {self.depth}, need {up_to}")
        ring = pontryagin[0].ring if pontryagin else None
        total = ring.one()
        powers = {}

        def pw(i, e):
            if (i, e) not in powers:
                powers[(i, e)] = pontryagin[i] ** e if i < len(pontryagin) else (ring.one() if e == 0 else ring.zero())
            return powers[(i, e)]

        for j in range(1, up_to + 1):
            for expo, c in self.polynomials[j].items():
                term = ring.one() * c
                for i, e in enumerate(expo):
                    if e:
                        term = term * pw(i, e)
                    if not term:
                        break
                total = total + term
        return total


@lru_cache(maxsize=None)
def l_sequence(depth: int = DEFAULT_DEPTH) -> MultiplicativeSequence:
    series = series_l_genus(depth)
    polys = multiplicative_polynomials(series, depth)
    return MultiplicativeSequence(series, tuple(_trim(p, depth) for p in polys))


def _trim(poly, depth):
    return {e[:depth]: c for e, c in poly.items()}


def l_polynomials(D: int) -> list:
    """L_0..L_D in p_1..p_D (formal-roots route)."""
    return list(l_sequence(max(D, 0)).polynomials)


def l_polynomials_newton(D: int) -> list:
    """L_0..L_D in p_1..p_D (power-sum route)."""
    return multiplicative_polynomials_newton(series_l_genus(D), D)


# --------------------------------------------------------------------------
# bundles

@dataclass(frozen=True)
class BundleModel:
    """Rational Pontryagin data of an (oriented) vector bundle over ``base``."""

    base: object
    total_pontryagin: GradedElement
    rank: Union[int, str] = "stable"
    euler: Optional[GradedElement] = None
    oriented: bool = True
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if not self.total_pontryagin.ring.same_as(self.base.ring):
            raise RingMismatch("Pontryagin class must live in the base ring")
        if self.total_pontryagin.constant_term != 1:
            raise ValueError("total Pontryagin class must have constant term 1")
        if any(d % 4 for d in self.total_pontryagin.degrees):
            raise ValueError("Pontryagin classes live in degrees divisible by 4")
        if self.euler is not None and self.euler:
            if self.rank == "stable" or self.euler.homogeneous_degree != self.rank:
                raise ValueError("Euler class degree must equal the rank")

    def pontryagin(self, i: int) -> GradedElement:
        return self.total_pontryagin.degree_part(4 * i)

    @classmethod
    def trivial(cls, base, rank: Union[int, str] = "stable") -> BundleModel:
        return cls(base, base.ring.one(), rank)


def l_class(bundle: BundleModel, up_to_degree: Optional[int] = None) -> GradedElement:
    ring = bundle.base.ring
    top = ring.top_degree if up_to_degree is None else up_to_degree
    D = top // 4
    seq = l_sequence(max(D, DEFAULT_DEPTH))
    ps = [bundle.pontryagin(i) for i in range(1, D + 1)]
    if not ps:
        return ring.one()
    return seq.evaluate(ps, D).truncate(top)


def inverse_l_class(c: GradedElement) -> GradedElement:
    """Inverse of a class with constant term 1 in the (nilpotent-truncated) ring."""
    if c.constant_term != 1:
        raise NotInvertible(f"constant term {c.constant_term} != 1")
    ring = c.ring
    nil = c - ring.one()
    out = ring.one()
    term = ring.one()
    # (1 + n)^(-1) = sum (-n)^i; terminates because n raises degree
    for _ in range(ring.top_degree + 1):
        term = term * (-nil)
        if not term:
            break
        out = out + term
    return out


def whitney_sum(a: BundleModel, b: BundleModel) -> BundleModel:
    if a.base is not b.base and not a.base.ring.same_as(b.base.ring):
        raise RingMismatch("Whitney sum needs a common base")
    rank = a.rank + b.rank if isinstance(a.rank, int) and isinstance(b.rank, int) else "stable"
    euler = a.euler * b.euler if a.euler is not None and b.euler is not None else None
    return BundleModel(a.base, a.total_pontryagin * b.total_pontryagin, rank, euler, a.oriented and b.oriented)


def pullback_bundle(f: RingMap, b: BundleModel, target_space) -> BundleModel:
    """Pull ``b`` back along the map whose cohomology map is ``f``."""
    if not f.source.same_as(b.base.ring):
        raise RingMismatch("pullback: ring map does not start at the bundle's base")
    if not f.target.same_as(target_space.ring):
        raise RingMismatch("pullback: ring map does not end at the target space")
    euler = f(b.euler) if b.euler is not None else None
    return BundleModel(target_space, f(b.total_pontryagin), b.rank, euler, b.oriented)
