from itertools import combinations, combinations_with_replacement, product
from math import comb

import pytest

import oracles
from oikomplex.errors import AlgebraMismatchError, NotWidthZeroError
from oikomplex.free_mod import FreeOIModule
from oikomplex.multilinear import (
    FreeDecomposition, Witness, certify_rank_identity, compress_label, dual_width0, sym_decompose,
    tensor_decompose, wedge_decompose, wedge_min_width,
)
from oikomplex.oi_algebra import AlgebraSignature
from oikomplex.oi_cat import enumerate_hom

SIG = AlgebraSignature((1,))


def free(text):
    return FreeOIModule.parse(SIG, text)


def test_tensor_two_three():
    dec = tensor_decompose(free("2"), free("3"))
    assert dec.width_multiplicities() == {3: 3, 4: 12, 5: 10}
    assert dec.rank == 25
    rep = certify_rank_identity(dec, lambda w: comb(w, 2) * comb(w, 3), wmax=10)
    assert rep.passed
    assert rep.identity == "C(w,2)*C(w,3) = 3*C(w,3) + 12*C(w,4) + 10*C(w,5)"


def test_tensor_with_unit_and_small_case():
    F = free("2:1,1")
    dec = tensor_decompose(free("0"), F)
    assert dec.summands == [(1, 0, 1), (2, 1, 1)]
    assert tensor_decompose(free("1"), free("1")).width_multiplicities() == {1: 1, 2: 2}
    assert tensor_decompose(free("1"), free("1")).width_multiplicities() == oracles.brute_tensor_widths(1, 1, 6)


def test_tensor_shifts_add_and_algebra_mismatch():
    dec = tensor_decompose(free("1:2"), free("1:3"))
    assert {a for _, a, _ in dec.summands} == {5}
    with pytest.raises(AlgebraMismatchError):
        tensor_decompose(free("1"), FreeOIModule.parse(AlgebraSignature((2,)), "1"))


def test_wedge_two_of_three():
    dec = wedge_decompose(free("3"), 2)
    assert dec.rank == 31
    assert dec.width_multiplicities() == {4: 6, 5: 15, 6: 10}
    assert dec.summary() == "widths {4:6, 5:15, 6:10}, rank 31"
    assert certify_rank_identity(dec, lambda w: comb(comb(w, 3), 2), wmax=12).passed


@pytest.mark.parametrize("i", range(6))
def test_wedge_of_width_one_is_free_of_width_i(i):
    assert wedge_decompose(free("1"), i).summands == [(i, 0, 1)]


def test_wedge_zero_is_the_algebra():
    dec = wedge_decompose(free("2,3"), 0)
    assert dec.summands == [(0, 0, 1)]


def test_wedge_width_range():
    for d in range(1, 4):
        for i in range(1, 5):
            if d * i > 9:
                continue
            widths = wedge_decompose(free(str(d)), i).width_multiplicities()
            assert min(widths) == wedge_min_width(d, i)
            assert max(widths) == d * i


def test_sym_examples():
    for r in range(1, 4):
        for q in range(4):
            dec = sym_decompose(free(",".join(["0"] * r)), q)
            assert dec.rank == comb(r - 1 + q, q)
            assert set(dec.width_multiplicities()) <= {0}
    assert sym_decompose(free("2,1"), 1).summands == [(1, 0, 1), (2, 0, 1)]
    assert sym_decompose(free("1"), 2).width_multiplicities() == {1: 1, 2: 1}


FIXTURE_MODULES = ["1", "2", "3", "1,1", "1,2", "0,1", "2:1,0:-1"]


@pytest.mark.parametrize("text", FIXTURE_MODULES)
@pytest.mark.parametrize("i", [0, 1, 2, 3])
def test_wedge_and_sym_match_brute_force(text, i):
    F = free(text)
    dec_w, dec_s = wedge_decompose(F, i), sym_decompose(F, i)
    for w in range(8):
        basis = F.basis_at_width(w)
        full = lambda S: len(set().union(*(set(k.morphism.image) for k in S))) == w
        assert sum(m for n, m in dec_w.width_multiplicities().items() if n == w) == sum(
            1 for S in combinations(basis, i) if full(S))
        assert sum(m for n, m in dec_s.width_multiplicities().items() if n == w) == sum(
            1 for S in combinations_with_replacement(basis, i) if full(S))
        assert dec_w.rank_at_width(w) == comb(len(basis), i)
        assert dec_s.rank_at_width(w) == (comb(len(basis) + i - 1, i) if i else 1)


def test_rank_one_counts_against_independent_oracle():
    for d, i in [(1, 3), (2, 2), (3, 2), (2, 3)]:
        assert wedge_decompose(free(str(d)), i).width_multiplicities() == oracles.brute_wedge_widths(d, 1, i, d * i)
        assert sym_decompose(free(str(d)), i).width_multiplicities() == oracles.brute_sym_widths(d, 1, i, d * i)
    assert wedge_decompose(free("1,1"), 2).width_multiplicities() == oracles.brute_wedge_widths(1, 2, 2, 4)


def _pushed_labels(dec, w):
    out = []
    for g in dec.witnesses:
        for eps in enumerate_hom(g.width, w):
            out.append(g.push(eps))
    return out


@pytest.mark.parametrize("text", ["1", "2", "1,2", "0,1"])
@pytest.mark.parametrize("i", [1, 2, 3])
def test_pushed_witnesses_are_a_basis(text, i):
    """Pushforwards of distinct witnesses never collide, and together they give every basis element."""
    F = free(text)
    for kind, dec, pick in [("wedge", wedge_decompose(F, i), combinations),
                            ("sym", sym_decompose(F, i), combinations_with_replacement)]:
        for w in range(6):
            labels = _pushed_labels(dec, w)
            assert len(labels) == len(set(labels)), (kind, w)
            assert set(labels) == set(pick(F.basis_at_width(w), i)), (kind, w)


def test_tensor_pushed_witnesses_are_a_basis():
    F, G = free("1,2"), free("2")
    dec = tensor_decompose(F, G)
    for w in range(6):
        labels = _pushed_labels(dec, w)
        assert len(labels) == len(set(labels))
        assert set(labels) == set(product(F.basis_at_width(w), G.basis_at_width(w)))


def test_compress_label_roundtrip():
    F = free("2")
    for S in combinations(F.basis_at_width(5), 2):
        eps, wit = compress_label(S, 5)
        assert Witness(eps.source, 0, wit).push(eps) == S
        assert eps.source == len(set(S[0].morphism.image) | set(S[1].morphism.image))


def test_identity_negative_control():
    dec = tensor_decompose(free("2"), free("3"))
    bad = FreeDecomposition(dec.algebra, "broken", dec.witnesses[:-1], dec.width_rank, dec.lhs)
    rep = certify_rank_identity(bad, wmax=10)
    assert not rep.passed and rep.first_failure == 5


def test_dual_width_zero():
    G = free("0,0,0")
    D = dual_width0(G)
    assert D.dual.rank == 3 and D.dual.is_width_zero_generated()
    assert [g.label for g in D.dual.generators] == ["f1*", "f2*", "f3*"]
    assert [[D.pairing(i, j) for j in range(3)] for i in range(3)] == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert dual_width0(free("0:1")).dual.generators[0].degree == -1
    with pytest.raises(NotWidthZeroError):
        dual_width0(free("1"))


def test_json_form():
    dec = wedge_decompose(free("3"), 2)
    assert dec.to_json() == {"summands": [[4, 0, 6], [5, 0, 15], [6, 0, 10]],
                             "identity": "C(C(w,3),2) = 6*C(w,4) + 15*C(w,5) + 10*C(w,6)"}
