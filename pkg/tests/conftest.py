import sys
from pathlib import Path

import pytest
import sympy

sys.path.insert(0, str(Path(__file__).parent))

from oikomplex import catalog  # noqa: E402

ROOT = Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "fixtures"
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)


def sym_var(v):
    return sympy.Symbol(str(v))


def to_sympy(p):
    """Polynomial -> sympy expression with one symbol per variable text."""
    if not hasattr(p, "terms"):
        return sympy.Rational(p)
    expr = sympy.Integer(0)
    for m, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for v, e in m:
            term *= sym_var(v) ** e
        expr += term
    return expr


def matrix_to_sympy(mat, rows=None, cols=None):
    if not mat:
        return sympy.zeros(rows or 0, cols or 0)
    return sympy.Matrix([[to_sympy(a) for a in row] for row in mat])


@pytest.fixture
def generic_phi():
    return catalog.generic_3xw()


@pytest.fixture
def koszul_x1_phi():
    return catalog.koszul_x1()


@pytest.fixture
def non_acyclic_phi():
    return catalog.koszul_non_acyclic()
