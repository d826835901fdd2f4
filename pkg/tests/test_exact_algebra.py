from fractions import Fraction

import pytest
import sympy

from equivl.errors import FailedAxiomCheck, InvalidSeries, MalformedDocument, RingMismatch
from equivl.exact_algebra import (
    PowerSeries,
    determinant,
    format_rational,
    load_ring,
    nullspace,
    parse_rational,
    rank,
    ring_multiply,
    ring_to_doc,
    series_invert,
    series_l_genus,
    signature,
    solve,
    truncated_polynomial_ring,
)


def sympy_l_genus(n):
    # coefficients of t/tanh(t) in t^2, straight from sympy
    t = sympy.symbols("t")
    poly = sympy.series(t / sympy.tanh(t), t, 0, 2 * n + 2).removeO()
    return [Fraction(str(poly.coeff(t, 2 * i))) for i in range(n + 1)]


def bernoulli_l_genus(n):
    # q_i = 2^(2i) B_(2i) / (2i)!
    return [Fraction(2 ** (2 * i)) * Fraction(str(sympy.bernoulli(2 * i))) / sympy.factorial(2 * i)
            for i in range(n + 1)]


def test_rational_parsing():
    assert parse_rational("6/4") == Fraction(3, 2)
    assert parse_rational(-3) == -3
    assert format_rational(Fraction(-2, 4)) == "-1/2"
    assert format_rational(Fraction(5)) == "5"


def test_l_genus_small_orders():
    assert list(series_l_genus(0)) == [1]
    assert list(series_l_genus(2)) == [1, Fraction(1, 3), Fraction(-1, 45)]
    assert list(series_l_genus(3)) == [1, Fraction(1, 3), Fraction(-1, 45), Fraction(2, 945)]


@pytest.mark.parametrize("n", [4, 8, 12])
def test_l_genus_against_oracles(n):
    ours = list(series_l_genus(n))
    assert ours == sympy_l_genus(n)
    assert ours == bernoulli_l_genus(n)


def test_l_genus_defining_identity():
    # Q(t^2) * tanh(t) = t, with tanh taken from exp
    n = 6
    q = series_l_genus(n)
    t = sympy.symbols("t")
    tanh = sympy.series(sympy.tanh(t), t, 0, 2 * n + 2).removeO()
    product = sympy.expand(sum(sympy.Rational(q[i].numerator, q[i].denominator) * t ** (2 * i)
                               for i in range(n + 1)) * tanh)
    for e in range(2 * n + 2):
        assert product.coeff(t, e) == (1 if e == 1 else 0)


def test_series_invert():
    assert list(series_invert(PowerSeries([1]))) == [1]
    assert list(series_invert(PowerSeries([1, 1, 0, 0, 0]))) == [1, -1, 1, -1, 1]
    inv = series_invert(PowerSeries([1, Fraction(1, 3), Fraction(-1, 45)]))
    # multiplying back pins the quadratic term: (1/3)^2 + 1/45 = 2/15
    assert list(inv) == [1, Fraction(-1, 3), Fraction(2, 15)]
    assert list(PowerSeries([1, Fraction(1, 3), Fraction(-1, 45)]) * inv) == [1, 0, 0]


def test_series_invert_involution():
    s = series_l_genus(7)
    assert series_invert(series_invert(s)) == s


def test_series_invert_rejects_bad_constant():
    with pytest.raises(InvalidSeries):
        series_invert(PowerSeries([2, 1]))


def test_series_log_exp_round_trip():
    s = series_l_genus(6)
    assert s.log().exp() == s


def test_truncated_ring_products():
    R = truncated_polynomial_ring("Q[t]/t^3", "t", 2, 2)
    one, t = R.one(), R.gen("t")
    assert ring_multiply(one, t) == t
    assert ring_multiply(t, t) == R.gen("t^2")
    assert ring_multiply(t, R.gen("t^2")).is_zero()
    assert [list(R.names_in_degree(p)) for p in (0, 2, 4)] == [["1"], ["t"], ["t^2"]]


def test_graded_element_basics():
    R = truncated_polynomial_ring("Q[t]/t^4", "t", 2, 3)
    x = R.element({"1": 1, "t": Fraction(1, 2), "t^2": 0})
    assert x.support == ("1", "t")
    assert x.homogeneous_degree is None
    assert x.degree_part(2).homogeneous_degree == 2
    assert x.constant_term == 1
    assert (x - x).is_zero()


def test_ring_mismatch():
    A = truncated_polynomial_ring("A", "t", 2, 2)
    B = truncated_polynomial_ring("B", "s", 2, 2)
    with pytest.raises(RingMismatch):
        ring_multiply(A.gen("t"), B.gen("s"))


def test_load_ring_round_trip():
    R = truncated_polynomial_ring("Q[t]/t^5", "t", 2, 4)
    again = load_ring(ring_to_doc(R))
    assert again.names == R.names
    assert all(again.basis_product(a, b) == R.basis_product(a, b) for a in R.names for b in R.names)


def test_load_ring_rejects_non_associative_table():
    doc = {
        "name": "broken", "top_degree": 8,
        "generators": [{"name": "t", "degree": 2}, {"name": "u", "degree": 4}],
        "basis": {"0": ["1"], "2": ["t"], "4": ["t^2", "u"], "6": ["t u"], "8": ["t^2 u"]},
        "products": {"t*t": {"t^2": "1"}, "t*u": {"t u": "1"}, "t*t^2": {"t u": "1"},
                     "t*t u": {"t^2 u": "1"}, "t^2*u": {"t^2 u": "2"}, "t^2*t^2": {"t^2 u": "1"}},
    }
    with pytest.raises(FailedAxiomCheck) as err:
        load_ring(doc)
    assert err.value.triple is not None


def test_load_ring_rejects_bad_documents():
    with pytest.raises(MalformedDocument):
        load_ring({"name": "x", "top_degree": 2, "generators": [], "basis": {"0": ["1"]},
                   "products": {"1*y": {"y": "1"}}})
    with pytest.raises(FailedAxiomCheck):
        load_ring({"name": "x", "top_degree": 2, "generators": [], "basis": {"0": ["1", "e"]}})


def test_s1_stage_four_ring(s1):
    # the BS1_4 ring carries the monomials listed in the circle-group table
    R = s1.base(4).ring
    assert set(R.names) == {"1", "t", "t^2", "u", "t u", "t^2 u"}
    again = load_ring(ring_to_doc(R))
    assert again.names == R.names


def test_linear_algebra_against_sympy():
    m = [[Fraction(2), Fraction(1), Fraction(0)], [Fraction(1), Fraction(3), Fraction(1)],
         [Fraction(0), Fraction(1), Fraction(4)]]
    sm = sympy.Matrix(m)
    assert determinant(m) == Fraction(str(sm.det()))
    assert rank(m) == sm.rank()
    x = solve(m, [Fraction(1), Fraction(2), Fraction(3)])
    assert [Fraction(str(v)) for v in sm.LUsolve(sympy.Matrix([1, 2, 3]))] == x
    singular = [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]
    (v,) = nullspace(singular)
    assert singular[0][0] * v[0] + singular[0][1] * v[1] == 0
    assert signature([[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]]) == 0
    assert signature([[Fraction(1)]]) == 1
