import numpy as np
import pytest
import sympy as sp

from gfadm import (
    Polynomial,
    SingularDivisionError,
    UnsupportedBackendError,
    adomian_coefficients,
    adomian_polynomial_rows,
    parse_expression,
)
from gfadm.adomian import build_tableau


class TestPointwise:
    def test_classical_square_polynomials(self):
        y0, y1, y2 = 1.3, -0.4, 0.25
        rows = adomian_coefficients(parse_expression("y1^2"), 0.0,
                                    [y0, y1, y2], [0, 0, 0])
        expected = [y0**2, 2 * y0 * y1, y1**2 + 2 * y0 * y2]
        assert np.allclose(rows, expected, atol=1e-13)

    def test_example1_row0(self):
        rows = adomian_coefficients(parse_expression("-1*y1^2-0.4*y1*y2"),
                                    0.0, [1.0], [2.0])
        assert rows == pytest.approx([-1.8], abs=1e-14)

    def test_bilinear(self):
        rows = adomian_coefficients(parse_expression("y1*y2"), 0.0,
                                    [1, 0.1, 0], [2, 0.2, 0])
        assert np.allclose(rows, [2, 0.4, 0.02], atol=1e-14)

    def test_length_mismatch(self):
        with pytest.raises(UnsupportedBackendError):
            adomian_coefficients(parse_expression("y1"), 0.0, [1, 2], [1])

    def test_singular_division_carries_location(self):
        with pytest.raises(SingularDivisionError) as exc:
            adomian_coefficients(parse_expression("1/(y1-1)"), 0.25, [1.0], [0.0])
        assert exc.value.location == pytest.approx(0.25)


def _sympy_rows(text, y1_terms, y2_terms):
    lam = sp.symbols("lam")
    y1 = sum(sp.Float(t, 20) * lam**j for j, t in enumerate(y1_terms))
    y2 = sum(sp.Float(t, 20) * lam**j for j, t in enumerate(y2_terms))
    u, v = sp.symbols("u v")
    f = sp.sympify(text.replace("y1", "u").replace("y2", "v"))
    n = len(y1_terms)
    expanded = sp.expand(f.subs({u: y1, v: y2}))
    return [float(expanded.coeff(lam, k)) for k in range(n)]


@pytest.mark.parametrize("seed", range(20))
def test_bruteforce_oracle_equivalence(seed):
    rng = np.random.default_rng(seed)
    monomials = ["1", "y1", "y2", "x", "y1^2", "y1*y2", "y2^2", "y1^3",
                 "y1^2*y2", "y1*y2^2", "y2^3"]
    # random polynomial of total degree <= 3
    picks = rng.choice(len(monomials), size=4, replace=False)
    coefs = np.round(rng.uniform(-2, 2, size=4), 6)
    text = " + ".join(f"{c}*{monomials[i]}" for c, i in zip(coefs, picks))
    n = int(rng.integers(1, 5))
    y1_terms = list(np.round(rng.uniform(-1.5, 1.5, size=n + 1), 6))
    y2_terms = list(np.round(rng.uniform(-1.5, 1.5, size=n + 1), 6))
    x = float(np.round(rng.uniform(0, 1), 6))

    ours = adomian_coefficients(parse_expression(text), x, y1_terms, y2_terms)
    theirs = _sympy_rows(text.replace("x", repr(x)), y1_terms, y2_terms)
    scale = max(1.0, float(np.max(np.abs(theirs))))
    assert np.max(np.abs(np.array(ours) - theirs)) <= 1e-11 * scale


def test_linearity():
    g = parse_expression("y1^2 + x*y2")
    h = parse_expression("y1*y2 - 0.3*y2^2")
    s = parse_expression("y1^2 + x*y2 + y1*y2 - 0.3*y2^2")
    y1_terms, y2_terms = [1.0, 0.2, -0.1], [0.5, 0.4, 0.3]
    a_g = adomian_coefficients(g, 0.7, y1_terms, y2_terms)
    a_h = adomian_coefficients(h, 0.7, y1_terms, y2_terms)
    a_s = adomian_coefficients(s, 0.7, y1_terms, y2_terms)
    assert np.allclose(np.array(a_g) + a_h, a_s, atol=1e-12)


def test_substitution_consistency():
    # with all mass in term 0, row 0 is f(y0) and higher rows vanish
    f = parse_expression("y1^2*y2 - y2^3 + x")
    rows = adomian_coefficients(f, 0.3, [1.7, 0, 0, 0], [0.6, 0, 0, 0])
    from gfadm import eval_scalar
    assert rows[0] == pytest.approx(eval_scalar(f, 0.3, 1.7, 0.6), abs=1e-13)
    assert np.allclose(rows[1:], 0.0, atol=1e-14)


class TestPolynomialRows:
    def test_matches_pointwise(self):
        f = parse_expression("y1^2 - 0.4*y1*y2")
        y1_terms = [Polynomial([1.0]), Polynomial([0.0, 0.0, 0.5])]
        y2_terms = [Polynomial([2.0]), Polynomial([0.0, 1.0])]
        rows = adomian_polynomial_rows(f, y1_terms, y2_terms)
        for x in (0.0, 0.3, 0.9):
            pointwise = adomian_coefficients(
                f, x, [t(x) for t in y1_terms], [t(x) for t in y2_terms])
            assert np.allclose([r(x) for r in rows], pointwise, atol=1e-12)

    def test_division_rejected(self):
        f = parse_expression("y1/(1+y2)")
        with pytest.raises(UnsupportedBackendError):
            adomian_polynomial_rows(f, [Polynomial([1.0])], [Polynomial([1.0])])


def test_build_tableau_triangular():
    f1 = parse_expression("y1*y2")
    f2 = parse_expression("y1^2")
    grid = np.linspace(0, 1, 5)
    y1_rows = np.vstack([np.ones(5), 0.1 * grid])
    y2_rows = np.vstack([2 * np.ones(5), 0.2 * grid])
    tab = build_tableau(f1, f2, grid, y1_rows, y2_rows)
    assert tab.rows1.shape == (2, 5)
    # row 0 is f at the zeroth terms
    assert np.allclose(tab.rows1[0], 2.0)
    assert np.allclose(tab.rows2[0], 1.0)
    # row 1 of y1*y2: y10*y21 + y11*y20
    assert np.allclose(tab.rows1[1], 0.2 * grid + 0.2 * grid)
    assert np.all(np.isfinite(tab.rows1)) and np.all(np.isfinite(tab.rows2))
