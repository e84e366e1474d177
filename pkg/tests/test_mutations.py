"""Which check catches which seeded convention error.

d∘d=0 alone is too weak for several of them: negating or transposing the splice
sign rescales a whole differential by ±1, and ordinary instead of divided powers
is a diagonal change of basis, so the result is still a complex. Those are caught
by the classical oracle instead; a dropped divided-power term breaks exactness.
"""

import random
from fractions import Fraction

import pytest
import sympy

import oracles
from conftest import matrix_to_sympy
from oikomplex import catalog, complexes
from oikomplex.complexes import be_at_width, classical_be
from oikomplex.verify import check_dd_zero, probe_component

ORIG_SPLICE = complexes.splice_sign


def _transposed_sign(I, J):
    rest = tuple(j for j in J if j not in I)
    return -1 if sum(1 for a in rest for b in I if a > b) % 2 else 1


def _drop_term(c, t):
    return 0 if c[t] >= 2 else c[t]


def _oracle_mismatch(seed=2, cases=40):
    rng = random.Random(seed)
    for _ in range(cases):
        r, n, i = rng.randint(1, 3), rng.randint(1, 5), rng.randint(0, 2)
        A = [[Fraction(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(n)] for _ in range(r)]
        _, mats = oracles.be_oracle(sympy.Matrix(A), i)
        if [matrix_to_sympy(d) for d in classical_be(A, i).differentials] != mats:
            return True
    return False


def _dd_fails_somewhere(phi, imax=2, wmax=5):
    return any(not check_dd_zero(be_at_width(phi, i, w)).passed for i in range(imax + 1) for w in range(wmax + 1))


def test_unmutated_constructor_agrees_with_oracle():
    assert not _oracle_mismatch()


def test_dropped_splice_sign_breaks_dd(monkeypatch):
    monkeypatch.setattr(complexes, "splice_sign", lambda I, J: 1)
    res = check_dd_zero(be_at_width(catalog.generic_3xw(), 1, 4))
    assert not res.passed and res.witness["width"] == 4


@pytest.mark.parametrize("attr, replacement", [
    ("splice_sign", lambda I, J: -ORIG_SPLICE(I, J)),
    ("splice_sign", _transposed_sign),
    ("divided_power_coefficient", lambda c, t: 1),
], ids=["negated splice", "transposed splice", "ordinary powers"])
def test_rescaling_mutations_keep_dd_but_fail_oracle(monkeypatch, attr, replacement):
    monkeypatch.setattr(complexes, attr, replacement)
    assert not _dd_fails_somewhere(catalog.generic_3xw())
    assert _oracle_mismatch()


def test_dropped_divided_power_term_breaks_exactness(monkeypatch):
    phi = catalog.generic_3xw()
    assert probe_component(be_at_width(phi, 0, 5), 2, 0, phi.algebra.variables_at_width(5))["exact"]
    monkeypatch.setattr(complexes, "divided_power_coefficient", _drop_term)
    C = be_at_width(phi, 0, 5)
    assert check_dd_zero(C).passed
    probe = probe_component(C, 2, 0, phi.algebra.variables_at_width(5))
    assert not probe["exact"]
    assert _oracle_mismatch()
