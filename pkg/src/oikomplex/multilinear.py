"""Free bases of tensor products, exterior powers and symmetric powers of free OI-modules.

A basis element of such a construction in width w is described by a *label*
built from BasisKeys of the underlying free modules.  A label is a generator
(a witness) when the union of the images of all its morphisms is all of [w];
every other basis element is the push-forward of exactly one witness along the
inclusion of its image union.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement
from math import comb

from .errors import AlgebraMismatchError, NotWidthZeroError
from .free_mod import FreeOIModule, Generator
from .oi_cat import BasisKey, OIMorphism, enumerate_hom, factor_through_image


# -- labels ------------------------------------------------------------------


def push_label(label, eps: OIMorphism):
    if isinstance(label, BasisKey):
        return label.push(eps)
    return tuple(push_label(x, eps) for x in label)


def label_keys(label):
    if isinstance(label, BasisKey):
        yield label
    else:
        for x in label:
            yield from label_keys(x)


def label_image(label) -> set:
    return {k for key in label_keys(label) for k in key.morphism.image}


def compress_label(label, w: int):
    """(eps, witness label) with push_label(witness, eps) == label and full image."""
    keys = list(label_keys(label))
    eps, compressed = factor_through_image([k.morphism for k in keys])
    if not keys:
        eps = OIMorphism(0, w, ())
    # rebuild the nested label with the compressed keys, in traversal order
    it = iter(BasisKey(k.generator, m) for k, m in zip(keys, compressed))

    def rebuild(lab):
        if isinstance(lab, BasisKey):
            return next(it)
        return tuple(rebuild(x) for x in lab)

    return eps, rebuild(label)


@dataclass(frozen=True)
class Witness:
    width: int
    degree: int
    label: tuple

    def push(self, eps: OIMorphism):
        return push_label(self.label, eps)


@dataclass
class FreeDecomposition:
    """A free OI-module given by explicit witness generators.

    `width_rank(w)` is the rank of the construction in width w computed directly
    (not from the witnesses); `lhs` is its human-readable form.
    """

    algebra: object
    description: str
    witnesses: list
    width_rank: object = None
    lhs: str = ""
    extra: dict = field(default_factory=dict)

    @property
    def rank(self) -> int:
        return len(self.witnesses)

    @property
    def summands(self) -> list:
        """Sorted (generator width, degree shift, multiplicity) triples."""
        counts = Counter((g.width, g.degree) for g in self.witnesses)
        return [(n, a, m) for (n, a), m in sorted(counts.items())]

    def width_multiplicities(self) -> dict:
        counts = Counter(g.width for g in self.witnesses)
        return dict(sorted(counts.items()))

    def rank_at_width(self, w: int) -> int:
        return sum(m * comb(w, n) for n, m in self.width_multiplicities().items())

    def as_free_module(self) -> FreeOIModule:
        return FreeOIModule(
            self.algebra,
            tuple(Generator(g.width, g.degree, f"b{j}") for j, g in enumerate(self.witnesses, 1)),
        )

    def rhs(self) -> str:
        terms = [
            (f"{m}*C(w,{n})" if m != 1 else f"C(w,{n})")
            for n, m in self.width_multiplicities().items()
        ]
        return " + ".join(terms) if terms else "0"

    def identity_text(self) -> str:
        return f"{self.lhs or 'rank(w)'} = {self.rhs()}"

    def summary(self) -> str:
        mult = ", ".join(f"{n}:{m}" for n, m in self.width_multiplicities().items())
        return f"widths {{{mult}}}, rank {self.rank}"

    def to_json(self) -> dict:
        return {"summands": [list(s) for s in self.summands], "identity": self.identity_text()}


def _as_decomposition(F) -> FreeDecomposition:
    if isinstance(F, FreeDecomposition):
        return F
    wits = [Witness(g.width, g.degree, F.generator_key(j)) for j, g in enumerate(F.generators, 1)]
    return FreeDecomposition(F.algebra, str(F), wits, F.rank_at_width, _free_rank_text(F))


def _free_rank_text(F) -> str:
    return " + ".join(f"C(w,{g.width})" for g in F.generators) or "0"


def _paren(s: str) -> str:
    return s if s.startswith("C(") and s.count("C(") == 1 else f"({s})"


def _tensor_witnesses(left, right):
    out = []
    for a in left:
        for b in right:
            u, v = a.width, b.width
            for w in range(max(u, v), u + v + 1):
                for mu in enumerate_hom(u, w):
                    for nu in enumerate_hom(v, w):
                        if len(set(mu.image) | set(nu.image)) == w:
                            out.append(Witness(w, a.degree + b.degree, (a.push(mu), b.push(nu))))
    return out


def tensor_decompose(F, G) -> FreeDecomposition:
    """F (x) G for free modules (or decompositions) over the same algebra.

    Witnesses are pairs (mu_* a, nu_* b) of generators a, b with
    im(mu) u im(nu) = [w]; shifts add.
    """
    left, right = _as_decomposition(F), _as_decomposition(G)
    if left.algebra != right.algebra:
        raise AlgebraMismatchError("tensor product of modules over different algebras")
    lr, rr = left.width_rank, right.width_rank
    return FreeDecomposition(
        left.algebra,
        f"({left.description}) ⊗ ({right.description})",
        _tensor_witnesses(left.witnesses, right.witnesses),
        lambda w: lr(w) * rr(w),
        f"{_paren(left.lhs)}*{_paren(right.lhs)}",
    )


def _flatten_pair(w: Witness) -> Witness:
    a, b = w.label
    return Witness(w.width, w.degree, tuple(a) + tuple(b))


def _rank_one_power(F: FreeOIModule, j: int, i: int, symmetric: bool) -> list:
    d = F.generators[j - 1].width
    deg = F.generators[j - 1].degree
    pick = combinations_with_replacement if symmetric else combinations
    out = []
    for w in range(0, d * i + 1):
        hom = enumerate_hom(d, w)
        if not symmetric and len(hom) < i:
            continue
        for tup in pick(hom, i):
            if len(set().union(*(m.image for m in tup))) == w:
                out.append(Witness(w, deg * i, tuple(BasisKey(j, m) for m in tup)))
    return out


def _power_witnesses(F: FreeOIModule, gens: list, i: int, symmetric: bool) -> list:
    if not gens:
        return [Witness(0, 0, ())] if i == 0 else []
    first, rest = gens[0], gens[1:]
    if not rest:
        return _rank_one_power(F, first, i, symmetric)
    out = []
    # summand order: exponent k on the tail ascending
    for k in range(i + 1):
        head = _power_witnesses(F, [first], i - k, symmetric)
        tail = _power_witnesses(F, rest, k, symmetric)
        out.extend(_flatten_pair(t) for t in _tensor_witnesses(head, tail))
    return out


def wedge_decompose(F: FreeOIModule, i: int) -> FreeDecomposition:
    """Exterior power: witnesses are strictly increasing tuples of basis keys with full image."""
    if i < 0:
        raise ValueError("exterior power index must be non-negative")
    wits = _power_witnesses(F, list(range(1, F.rank + 1)), i, symmetric=False)
    return FreeDecomposition(
        F.algebra, f"Λ^{i}({F})", wits, lambda w: comb(F.rank_at_width(w), i),
        f"C({_free_rank_text(F)},{i})",
    )


def sym_decompose(F: FreeOIModule, q: int) -> FreeDecomposition:
    """Symmetric power: witnesses are weakly increasing tuples of basis keys with full image."""
    if q < 0:
        raise ValueError("symmetric power index must be non-negative")
    wits = _power_witnesses(F, list(range(1, F.rank + 1)), q, symmetric=True)
    return FreeDecomposition(
        F.algebra, f"S_{q}({F})", wits, lambda w: multichoose(F.rank_at_width(w), q),
        f"C({_free_rank_text(F)}+{q - 1},{q})",
    )


def multichoose(n: int, q: int) -> int:
    """Number of degree-q monomials in n variables."""
    return 1 if q == 0 else comb(n + q - 1, q)


def wedge_min_width(d: int, i: int):
    """Smallest w with C(w, d) >= i; None when Λ^i F^{OI,d} is zero."""
    if d == 0:
        return 0 if i <= 1 else None
    w = 0
    while comb(w, d) < i:
        w += 1
    return w


@dataclass(frozen=True)
class DualData:
    module: FreeOIModule
    dual: FreeOIModule
    iso: tuple  # (label of g_j, label of g_j^*)

    def pairing(self, i: int, j: int) -> int:
        """g_i^*(e_id0 (x) g_j)."""
        return 1 if i == j else 0


def dual_width0(G: FreeOIModule) -> DualData:
    """The dual of a width-0 generated free module, with the isomorphism g_j -> g_j^*."""
    if not G.is_width_zero_generated():
        bad = [g.width for g in G.generators if g.width]
        raise NotWidthZeroError(
            f"dual is only available for width-0 generated modules (generator widths {bad})"
        )
    dual = FreeOIModule(
        G.algebra, tuple(Generator(0, -g.degree, f"{g.label}*") for g in G.generators)
    )
    return DualData(G, dual, tuple((g.label, h.label) for g, h in zip(G.generators, dual.generators)))


@dataclass
class IdentityReport:
    passed: bool
    identity: str
    wmax: int
    first_failure: int | None = None
    values: list = field(default_factory=list)


def certify_rank_identity(decomp: FreeDecomposition, rank_formula=None, wmax: int = 10) -> IdentityReport:
    """Check sum_n mult_n * C(w, n) == rank_formula(w) for 0 <= w <= wmax."""
    formula = rank_formula or decomp.width_rank
    values = []
    for w in range(wmax + 1):
        lhs, rhs = formula(w), decomp.rank_at_width(w)
        values.append((w, lhs, rhs))
        if lhs != rhs:
            return IdentityReport(False, decomp.identity_text(), wmax, w, values)
    return IdentityReport(True, decomp.identity_text(), wmax, None, values)
