"""Exact rational arithmetic: truncated power series, small linear algebra
over Q, and finitely presented graded-commutative rings given by explicit
multiplication tables.

Nothing in this module touches floating point.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct
from math import factorial
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .errors import FailedAxiomCheck, InvalidSeries, MalformedDocument, RingMismatch

Rational = Fraction


# --------------------------------------------------------------------------
# rationals

def parse_rational(value) -> Fraction:
    """Parse ``"p/q"``, ``"p"``, an int or a Fraction.  Floats are refused."""
    if isinstance(value, bool):
        raise MalformedDocument(f"not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedDocument(f"not a rational: {value!r}") from exc
    raise MalformedDocument(f"not a rational: {value!r}")


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


# --------------------------------------------------------------------------
# linear algebra over Q

def _copy(matrix):
    return [[Fraction(x) for x in row] for row in matrix]


def row_reduce(matrix):
    """Reduced row echelon form.  Returns ``(rref, pivot_columns)``."""
    m = _copy(matrix)
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(matrix) -> int:
    if not matrix or not matrix[0]:
        return 0
    return len(row_reduce(matrix)[1])


def solve(matrix, rhs):
    """One solution of ``matrix @ x = rhs`` or None when inconsistent."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    if rows == 0:
        return [Fraction(0)] * cols
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    red, pivots = row_reduce(aug)
    if cols in pivots:
        return None
    x = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        x[c] = red[i][cols]
    return x


def nullspace(matrix, ncols=None):
    """Basis of the right kernel, one vector per free column."""
    if not matrix:
        n = ncols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    cols = len(matrix[0])
    red, pivots = row_reduce(matrix)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -red[i][f]
        basis.append(v)
    return basis


def determinant(matrix) -> Fraction:
    m = _copy(matrix)
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if m[i][c]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] / m[c][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det


def signature(symmetric) -> int:
    """Signature of a symmetric rational matrix, by congruence diagonalization."""
    m = _copy(symmetric)
    n = len(m)
    sig = 0
    active = list(range(n))
    while active:
        i = next((i for i in active if m[i][i]), None)
        if i is None:
            pair = next(((a, b) for a in active for b in active if a != b and m[a][b]), None)
            if pair is None:
                break
            a, b = pair
            # row/col a += row/col b makes the diagonal entry 2*m[a][b]
            for c in range(n):
                m[a][c] += m[b][c]
            for r in range(n):
                m[r][a] += m[r][b]
            i = a
        d = m[i][i]
        sig += 1 if d > 0 else -1
        for r in active:
            if r != i and m[r][i]:
                f = m[r][i] / d
                for c in range(n):
                    m[r][c] -= f * m[i][c]
                for c in range(n):
                    m[c][r] -= f * m[c][i]
        active.remove(i)
    return sig


# --------------------------------------------------------------------------
# truncated power series

class PowerSeries:
    """Coefficients ``q_0 .. q_max_order``; nothing beyond max_order exists."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable):
        coeffs = tuple(Fraction(c) for c in coefficients)
        if not coeffs:
            raise InvalidSeries("a series needs at least the constant term")
        self.coefficients = coeffs

    @property
    def max_order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, i):
        return self.coefficients[i]

    def __len__(self):
        return len(self.coefficients)

    def __iter__(self):
        return iter(self.coefficients)

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def __repr__(self):
        return f"PowerSeries({[format_rational(c) for c in self.coefficients]})"

    def truncate(self, max_order: int) -> PowerSeries:
        c = list(self.coefficients[: max_order + 1])
        c += [Fraction(0)] * (max_order + 1 - len(c))
        return PowerSeries(c)

    def __add__(self, other):
        n = min(self.max_order, other.max_order)
        return PowerSeries(a + b for a, b in zip(self.coefficients[: n + 1], other.coefficients))

    def __neg__(self):
        return PowerSeries(-a for a in self.coefficients)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            return PowerSeries(a * other for a in self.coefficients)
        n = min(self.max_order, other.max_order)
        a, b = self.coefficients, other.coefficients
        return PowerSeries(sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(n + 1))

    __rmul__ = __mul__

    def derivative(self) -> PowerSeries:
        c = [i * a for i, a in enumerate(self.coefficients)][1:]
        return PowerSeries(c or [0])

    def integral(self) -> PowerSeries:
        """Antiderivative with zero constant term; max_order grows by one."""
        return PowerSeries([Fraction(0)] + [a / (i + 1) for i, a in enumerate(self.coefficients)])

    def log(self) -> PowerSeries:
        if self.coefficients[0] != 1:
            raise InvalidSeries("log needs constant term 1")
        if self.max_order == 0:
            return PowerSeries([0])
        shorter = series_invert(self.truncate(self.max_order - 1))
        return (self.derivative() * shorter).integral()

    def exp(self) -> PowerSeries:
        if self.coefficients[0] != 0:
            raise InvalidSeries("exp needs constant term 0")
        a = self.coefficients
        e = [Fraction(1)]
        # e' = a' e  =>  k e_k = sum_i i a_i e_{k-i}
        for k in range(1, len(a)):
            e.append(sum(i * a[i] * e[k - i] for i in range(1, k + 1)) / k)
        return PowerSeries(e)


def series_invert(s: PowerSeries) -> PowerSeries:
    """Multiplicative inverse of a series with constant term 1."""
    if s.coefficients[0] != 1:
        raise InvalidSeries(f"constant term is {s.coefficients[0]}, expected 1")
    a = s.coefficients
    r = [Fraction(1)]
    for k in range(1, len(a)):
        r.append(-sum(a[i] * r[k - i] for i in range(1, k + 1)))
    return PowerSeries(r)


@lru_cache(maxsize=None)
def series_l_genus(max_order: int) -> PowerSeries:
    """Coefficients of sqrt(x)/tanh(sqrt(x)) in x (x has degree 4).

    tanh(t)/t = (sinh t / t) / cosh t is formed in the variable x = t^2 from the
    factorial series, then inverted.
    """
    if max_order < 0:
        raise InvalidSeries("max_order must be non-negative")
    sinh_over_t = PowerSeries(Fraction(1, factorial(2 * i + 1)) for i in range(max_order + 1))
    cosh = PowerSeries(Fraction(1, factorial(2 * i)) for i in range(max_order + 1))
    tanh_over_t = sinh_over_t * series_invert(cosh)
    return series_invert(tanh_over_t)


# --------------------------------------------------------------------------
# graded rings

def _clean(coeffs: Mapping) -> dict:
    return {k: Fraction(v) for k, v in coeffs.items() if v}


class RingPresentation:
    """A finitely presented graded-commutative Q-algebra with a stored
    multiplication table on a named basis.

    ``basis`` maps degree -> ordered basis names; degree 0 must be exactly
    ``["1"]``.  ``products`` maps ordered name pairs to coefficient dicts;
    missing pairs are completed by commutativity and the unit law, anything
    still missing is zero.
    """

    def __init__(self, name, top_degree, generators, basis, products=None, *, check=True):
        self.name = name
        self.top_degree = int(top_degree)
        self.generators = tuple((g, int(d)) for g, d in generators)
        self.basis = MappingProxyType({int(p): tuple(ns) for p, ns in sorted(basis.items()) if ns})
        self._degree = {n: p for p, ns in self.basis.items() for n in ns}
        self.names = tuple(n for p in sorted(self.basis) for n in self.basis[p])
        self._index = {n: i for i, n in enumerate(self.names)}
        if len(self._degree) != len(self.names):
            raise FailedAxiomCheck(f"{name}: duplicate basis names")
        self._table = self._complete(products or {})
        if check:
            self.validate()

    # structure ---------------------------------------------------------
    def _complete(self, products):
        table = {}
        for (a, b), value in products.items():
            for n in (a, b):
                if n not in self._degree:
                    raise MalformedDocument(f"{self.name}: unknown basis element {n!r} in product table")
            value = _clean(value)
            if (a, b) in table and table[(a, b)] != value:
                raise FailedAxiomCheck(f"{self.name}: {a}*{b} != {b}*{a}", (a, b))
            table[(a, b)] = value
            if (b, a) in products and _clean(products[(b, a)]) != value:
                raise FailedAxiomCheck(f"{self.name}: {a}*{b} != {b}*{a}", (a, b))
            table[(b, a)] = value
        for n in self.names:
            if ("1", n) in table and table[("1", n)] != {n: 1}:
                raise FailedAxiomCheck(f"{self.name}: unit law fails on {n}", ("1", n))
            table[("1", n)] = {n: Fraction(1)}
            table[(n, "1")] = {n: Fraction(1)}
        return table

    def degree(self, name: str) -> int:
        return self._degree[name]

    def has(self, name: str) -> bool:
        return name in self._degree

    def index(self, name: str) -> int:
        return self._index[name]

    def names_in_degree(self, p: int) -> tuple:
        return self.basis.get(p, ())

    def rank_in_degree(self, p: int) -> int:
        return len(self.basis.get(p, ()))

    @property
    def even(self) -> bool:
        return all(p % 2 == 0 for p in self.basis)

    def basis_product(self, a: str, b: str) -> Mapping:
        return self._table.get((a, b), {})

    def same_as(self, other) -> bool:
        return self is other or (
            isinstance(other, RingPresentation) and self.name == other.name and self.names == other.names
        )

    # element constructors ------------------------------------------------
    def element(self, coeffs=None) -> GradedElement:
        return GradedElement(self, coeffs or {})

    def one(self) -> GradedElement:
        return GradedElement(self, {"1": 1})

    def zero(self) -> GradedElement:
        return GradedElement(self, {})

    def gen(self, name: str) -> GradedElement:
        return GradedElement(self, {name: 1})

    # validation ------------------------------------------------------------
    def validate(self):
        if self.basis.get(0) != ("1",):
            raise FailedAxiomCheck(f"{self.name}: degree 0 basis must be exactly ['1']")
        for p in self.basis:
            if p < 0 or p > self.top_degree:
                raise FailedAxiomCheck(f"{self.name}: basis degree {p} outside [0, {self.top_degree}]")
        for g, d in self.generators:
            if d <= 0:
                raise FailedAxiomCheck(f"{self.name}: generator {g} must have positive degree")
            if g in self._degree and self._degree[g] != d:
                raise FailedAxiomCheck(f"{self.name}: generator {g} listed in degree {d}")
        for (a, b), value in self._table.items():
            target = self._degree[a] + self._degree[b]
            for n in value:
                if self._degree[n] != target:
                    raise FailedAxiomCheck(f"{self.name}: {a}*{b} is not homogeneous of degree {target}", (a, b))
            if self._degree[a] % 2 and self._degree[b] % 2 and value:
                # odd classes are admitted only where no Koszul sign can ever be observed
                raise FailedAxiomCheck(f"{self.name}: nonzero product of odd classes {a}*{b}", (a, b))
        self.check_associativity()

    def check_associativity(self):
        names = self.names
        deg = self._degree
        for a, b, c in iproduct(names, repeat=3):
            if "1" in (a, b, c) or deg[a] + deg[b] + deg[c] > self.top_degree:
                continue
            left = self.gen(a) * self.gen(b) * self.gen(c)
            right = self.gen(a) * (self.gen(b) * self.gen(c))
            if left != right:
                raise FailedAxiomCheck(f"{self.name}: ({a}*{b})*{c} != {a}*({b}*{c})", (a, b, c))

    def __repr__(self):
        return f"RingPresentation({self.name!r}, top_degree={self.top_degree}, rank={len(self.names)})"


class TensorRing(RingPresentation):
    """Tensor product of two rings with basis names ``a|b`` (unit ``1``).

    At least one factor must be concentrated in even degrees so that the
    Koszul sign of the tensor multiplication is always +1.
    """

    def __init__(self, left: RingPresentation, right: RingPresentation, name=None):
        if not (left.even or right.even):
            raise RingMismatch("tensor product needs one factor concentrated in even degrees")
        self.left = left
        self.right = right
        basis = {}
        self._pairs = {}
        for a in left.names:
            for b in right.names:
                n = tensor_name(a, b)
                self._pairs[n] = (a, b)
                basis.setdefault(left.degree(a) + right.degree(b), []).append(n)
        gens = [(tensor_name(g, "1"), d) for g, d in left.generators]
        gens += [(tensor_name("1", g), d) for g, d in right.generators]
        super().__init__(name or f"{left.name} x {right.name}", left.top_degree + right.top_degree,
                         gens, basis, {}, check=False)

    def pair(self, name: str):
        return self._pairs[name]

    @lru_cache(maxsize=None)
    def basis_product(self, a: str, b: str) -> Mapping:
        if a == "1":
            return {b: Fraction(1)}
        if b == "1":
            return {a: Fraction(1)}
        a1, a2 = self._pairs[a]
        b1, b2 = self._pairs[b]
        left = self.left.basis_product(a1, b1)
        right = self.right.basis_product(a2, b2)
        out = {}
        for x, cx in left.items():
            for y, cy in right.items():
                out[tensor_name(x, y)] = cx * cy
        return out

    def __hash__(self):
        return id(self)

    def __eq__(self, other):
        return self is other


def tensor_name(a: str, b: str) -> str:
    """Basis name of ``a (x) b``; nested tensor names are parenthesized."""
    if a == "1" and b == "1":
        return "1"
    wrap = lambda x: f"({x})" if "|" in x else x
    return f"{wrap(a)}|{wrap(b)}"


def split_tensor_name(name: str):
    """Inverse of :func:`tensor_name`."""
    if name == "1":
        return "1", "1"
    depth = 0
    for i, ch in enumerate(name):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "|" and depth == 0:
            unwrap = lambda x: x[1:-1] if x.startswith("(") and x.endswith(")") else x
            return unwrap(name[:i]), unwrap(name[i + 1:])
    raise MalformedDocument(f"not a tensor basis name: {name!r}")


class GradedElement:
    """A rational combination of basis names of one ring.  Immutable."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: RingPresentation, coeffs: Mapping = None):
        clean = {}
        for name, c in (coeffs or {}).items():
            c = Fraction(c)
            if not c:
                continue
            if not ring.has(name):
                raise KeyError(f"{name!r} is not a basis element of {ring.name}")
            clean[name] = c
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "coeffs", MappingProxyType(dict(sorted(clean.items(), key=lambda kv: ring.index(kv[0])))))

    def __setattr__(self, key, value):
        raise AttributeError("GradedElement is immutable")

    # queries ---------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, name) -> Fraction:
        return self.coeffs.get(name, Fraction(0))

    @property
    def support(self) -> tuple:
        return tuple(self.coeffs)

    @property
    def degrees(self) -> set:
        return {self.ring.degree(n) for n in self.coeffs}

    @property
    def homogeneous_degree(self):
        """The common degree of the support, None when inhomogeneous or zero."""
        ds = self.degrees
        return ds.pop() if len(ds) == 1 else None

    @property
    def constant_term(self) -> Fraction:
        return self.coeffs.get("1", Fraction(0))

    def degree_part(self, p: int) -> GradedElement:
        return GradedElement(self.ring, {n: c for n, c in self.coeffs.items() if self.ring.degree(n) == p})

    def truncate(self, max_degree: int) -> GradedElement:
        return GradedElement(self.ring, {n: c for n, c in self.coeffs.items() if self.ring.degree(n) <= max_degree})

    def vector(self, names: Sequence[str]) -> list:
        return [self[n] for n in names]

    # arithmetic ------------------------------------------------------------
    def _check(self, other):
        if not self.ring.same_as(other.ring):
            raise RingMismatch(f"elements of {self.ring.name} and {other.ring.name}")

    def __add__(self, other):
        if not isinstance(other, GradedElement):
            other = self.ring.one() * other
        self._check(other)
        out = dict(self.coeffs)
        for n, c in other.coeffs.items():
            out[n] = out.get(n, 0) + c
        return GradedElement(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return GradedElement(self.ring, {n: -c for n, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, GradedElement):
            return ring_multiply(self, other)
        other = Fraction(other)
        return GradedElement(self.ring, {n: c * other for n, c in self.coeffs.items()})

    def __rmul__(self, other):
        return self * other

    def __pow__(self, e: int):
        out = self.ring.one()
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, GradedElement):
            return self.ring.same_as(other.ring) and dict(self.coeffs) == dict(other.coeffs)
        if isinstance(other, (int, Fraction)):
            return dict(self.coeffs) == ({"1": Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash((self.ring.name, tuple(self.coeffs.items())))

    def __repr__(self):
        return f"GradedElement({self.ring.name}: {self})"

    def __str__(self):
        return format_combination(self.coeffs)


def format_combination(coeffs: Mapping, render=lambda n: n) -> str:
    if not coeffs:
        return "0"
    parts = []
    for name, c in coeffs.items():
        label = render(name)
        if name == "1" and label == "1":
            term = format_rational(abs(c))
        elif abs(c) == 1:
            term = label
        else:
            term = f"{format_rational(abs(c))} {label}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, term))
    first_sign, first = parts[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, term in parts[1:]:
        text += f" {sign} {term}"
    return text


def ring_multiply(a: GradedElement, b: GradedElement) -> GradedElement:
    """Bilinear extension of the basis multiplication table."""
    if not a.ring.same_as(b.ring):
        raise RingMismatch(f"cannot multiply elements of {a.ring.name} and {b.ring.name}")
    ring = a.ring
    out = {}
    top = ring.top_degree
    for x, cx in a.coeffs.items():
        dx = ring.degree(x)
        for y, cy in b.coeffs.items():
            if dx + ring.degree(y) > top:
                continue
            for z, cz in ring.basis_product(x, y).items():
                out[z] = out.get(z, 0) + cx * cy * cz
    return GradedElement(ring, out)


class RingMap:
    """Degree-preserving unital algebra map given on basis elements.

    Convention: ``images[name]`` is the image of a basis element of
    ``source`` as an element of ``target``.  For a continuous map f: X -> Y
    the induced map f^* has source H^*(Y) and target H^*(X).
    """

    def __init__(self, source: RingPresentation, target: RingPresentation, images: Mapping, *, check=True):
        self.source = source
        self.target = target
        imgs = {}
        for name in source.names:
            img = images.get(name)
            if img is None:
                img = target.one() if name == "1" else target.zero()
            elif not isinstance(img, GradedElement):
                img = target.element(img)
            imgs[name] = img
        self.images = MappingProxyType(imgs)
        if check:
            self.validate()

    @classmethod
    def identity(cls, ring: RingPresentation) -> RingMap:
        return cls(ring, ring, {n: ring.gen(n) for n in ring.names}, check=False)

    def validate(self):
        src, tgt = self.source, self.target
        if self.images["1"] != tgt.one():
            raise FailedAxiomCheck(f"ring map {src.name} -> {tgt.name} is not unital")
        for n, img in self.images.items():
            p = src.degree(n)
            if img and (img.degrees != {p}):
                raise FailedAxiomCheck(f"ring map {src.name} -> {tgt.name}: image of {n} not in degree {p}")
        names = src.names
        for i, a in enumerate(names):
            for b in names[i:]:
                if self(src.gen(a) * src.gen(b)) != self.images[a] * self.images[b]:
                    raise FailedAxiomCheck(
                        f"ring map {src.name} -> {tgt.name} not multiplicative on {a}*{b}", (a, b))

    def __call__(self, x: GradedElement) -> GradedElement:
        if not x.ring.same_as(self.source):
            raise RingMismatch(f"ring map expects {self.source.name}, got {x.ring.name}")
        out = self.target.zero()
        for n, c in x.coeffs.items():
            out = out + self.images[n] * c
        return out

    def compose(self, first: RingMap) -> RingMap:
        """``self o first``: apply ``first`` and then ``self``."""
        if not first.target.same_as(self.source):
            raise RingMismatch("ring maps do not compose")
        return RingMap(first.source, self.target, {n: self(img) for n, img in first.images.items()}, check=False)

    def matrix(self, degree: int):
        """Matrix of the map in ``degree`` (rows: target basis, columns: source basis)."""
        cols = self.source.names_in_degree(degree)
        rows = self.target.names_in_degree(degree)
        return [[self.images[c][r] for c in cols] for r in rows]

    def __repr__(self):
        return f"RingMap({self.source.name} -> {self.target.name})"


def tensor_map(f: RingMap, g: RingMap, source: TensorRing, target: TensorRing) -> RingMap:
    """``f (x) g`` between tensor rings."""
    images = {}
    for name in source.names:
        a, b = source.pair(name)
        fa, gb = f.images[a], g.images[b]
        out = {}
        for x, cx in fa.coeffs.items():
            for y, cy in gb.coeffs.items():
                out[tensor_name(x, y)] = cx * cy
        images[name] = target.element(out)
    return RingMap(source, target, images, check=False)


# --------------------------------------------------------------------------
# documents

def element_from_doc(ring: RingPresentation, doc) -> GradedElement:
    if not isinstance(doc, Mapping):
        raise MalformedDocument(f"graded element must be an object, got {doc!r}")
    try:
        return GradedElement(ring, {n: parse_rational(c) for n, c in doc.items()})
    except KeyError as exc:
        raise MalformedDocument(str(exc)) from exc


def element_to_doc(x: GradedElement) -> dict:
    return {n: format_rational(c) for n, c in x.coeffs.items()}


def load_ring(doc) -> RingPresentation:
    """Build and validate a ring from its JSON document."""
    try:
        name = doc["name"]
        top = int(doc["top_degree"])
        gens = [(g["name"], int(g["degree"])) for g in doc.get("generators", [])]
        basis = {int(p): list(ns) for p, ns in doc["basis"].items()}
        raw = doc.get("products", {})
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedDocument(f"ring document: {exc}") from exc
    products = {}
    for key, value in raw.items():
        if key.count("*") != 1:
            raise MalformedDocument(f"product key must look like 'a*b': {key!r}")
        a, b = (s.strip() for s in key.split("*"))
        if not isinstance(value, Mapping):
            raise MalformedDocument(f"product {key!r} must be an object")
        products[(a, b)] = {n: parse_rational(c) for n, c in value.items()}
    return RingPresentation(name, top, gens, basis, products)


def ring_to_doc(ring: RingPresentation) -> dict:
    products = {}
    names = ring.names
    for i, a in enumerate(names):
        if a == "1":
            continue
        for b in names[i:]:
            if ring.degree(a) + ring.degree(b) > ring.top_degree:
                continue
            value = ring.basis_product(a, b)
            if value:
                products[f"{a}*{b}"] = {n: format_rational(c) for n, c in value.items()}
    return {
        "name": ring.name,
        "top_degree": ring.top_degree,
        "generators": [{"name": g, "degree": d} for g, d in ring.generators],
        "basis": {str(p): list(ns) for p, ns in ring.basis.items()},
        "products": products,
    }


def truncated_polynomial_ring(name: str, generator: str, degree: int, height: int) -> RingPresentation:
    """Q[x]/(x^(height+1)) with deg x = ``degree``."""
    def mono(i):
        return "1" if i == 0 else (generator if i == 1 else f"{generator}^{i}")
    basis = {degree * i: [mono(i)] for i in range(height + 1)}
    products = {}
    for i in range(1, height + 1):
        for j in range(i, height + 1):
            products[(mono(i), mono(j))] = {mono(i + j): 1} if i + j <= height else {}
    return RingPresentation(name, degree * height, [(generator, degree)], basis, products)
