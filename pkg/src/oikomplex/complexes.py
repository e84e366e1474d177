"""OI Koszul and Buchsbaum-Eisenbud complexes, instantiated width by width.

Every module of these complexes is, in width w, spanned by labels (J, c):
J is a strictly increasing tuple of positions in the canonical basis of F(w)
(an exterior monomial) and c an exponent vector over the generators of G (a
monomial of S(G) or, on the left of the splice map, of S(G*)).  Since G is
generated in width 0, an OI-morphism only moves the F-part of a label.
"""

from __future__ import annotations

import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .errors import NotWidthZeroError, WidthMismatchError
from .free_mod import ModuleMorphism
from .multilinear import dual_width0, sym_decompose, tensor_decompose, wedge_decompose
from .oi_cat import OIMorphism, enumerate_hom
from .polyring import Polynomial, determinant


@dataclass
class ModuleBasis:
    name: str
    labels: list
    degrees: list
    dual: bool = False

    @property
    def rank(self) -> int:
        return len(self.labels)

    def index(self) -> dict:
        return {lab: k for k, lab in enumerate(self.labels)}


@dataclass
class WidthComplex:
    """C_0 <- C_1 <- ... ; differentials[h - 1] is d_h: C_h -> C_{h-1} (rows C_{h-1}, columns C_h)."""

    width: int
    modules: list
    differentials: list
    f_basis: list = field(default_factory=list)
    g_labels: list = field(default_factory=list)
    kind: str = ""

    @property
    def ranks(self) -> list:
        return [m.rank for m in self.modules]

    @property
    def length(self) -> int:
        return len(self.differentials)

    def d(self, h: int) -> list:
        return self.differentials[h - 1]

    def label_text(self, h: int, label) -> str:
        J, c = label
        mod = self.modules[h]
        fs = "∧".join(_f_name(self.f_basis[j]) if self.f_basis else f"f{j + 1}" for j in J) or "1"
        gname = (lambda t: f"{self.g_labels[t]}*" if mod.dual else self.g_labels[t]) if self.g_labels else (
            lambda t: f"g{t + 1}*" if mod.dual else f"g{t + 1}")
        gs = "·".join(f"{gname(t)}^{e}" if e > 1 else gname(t) for t, e in enumerate(c) if e) or "1"
        if self.kind == "koszul":
            return fs
        if mod.dual:
            top = "∧".join(f"{g}*" for g in self.g_labels) if self.g_labels else "Λ^rG*"
            return f"{top}⊗{gs}⊗{fs}"
        return f"{fs}⊗{gs}"

    def to_json(self) -> dict:
        return {
            "width": self.width,
            "kind": self.kind,
            "ranks": self.ranks,
            "degrees": [list(m.degrees) for m in self.modules],
            "labels": [[self.label_text(h, lab) for lab in m.labels] for h, m in enumerate(self.modules)],
            "matrices": [[[str(a) for a in row] for row in d] for d in self.differentials],
        }


def _f_name(key) -> str:
    return f"f{key.generator}({','.join(map(str, key.morphism.image))})"


def _zeros(rows: int, cols: int, width: int) -> list:
    return [[Polynomial.zero(width) for _ in range(cols)] for _ in range(rows)]


def _drop(J, pos):
    return J[:pos] + J[pos + 1:]


# -- Koszul --------------------------------------------------------------------


def _check_codomain_is_algebra(phi: ModuleMorphism):
    gens = phi.codomain.generators
    if len(gens) != 1 or gens[0].width != 0 or gens[0].degree != 0:
        raise ValueError(f"the Koszul complex needs a morphism into A, got codomain {phi.codomain}")


def koszul_at_width(phi: ModuleMorphism, w: int, D: int | None = None) -> WidthComplex:
    """Width-w component of K(phi): Λ^d F(w) with d -> sum_j (-1)^(j+1) phi(e_kj) (omit j)."""
    _check_codomain_is_algebra(phi)
    keys = phi.domain.basis_at_width(w)
    n = len(keys)
    top = n if D is None else min(D, n)
    values = phi.matrix_at_width(w)[0] if n else []
    fdeg = [phi.domain.key_degree(k) for k in keys]
    modules = []
    for d in range(top + 1):
        labels = [(J, ()) for J in combinations(range(n), d)]
        modules.append(ModuleBasis(f"Λ^{d}F", labels, [sum(fdeg[j] for j in J) for J, _ in labels]))
    diffs = []
    for d in range(1, top + 1):
        rows, cols = modules[d - 1], modules[d]
        row_index = rows.index()
        mat = _zeros(rows.rank, cols.rank, w)
        for col, (J, _) in enumerate(cols.labels):
            for pos, j in enumerate(J):
                a = values[j]
                if a:
                    r = row_index[(_drop(J, pos), ())]
                    mat[r][col] = mat[r][col] + (a if pos % 2 == 0 else -a)
        diffs.append(mat)
    return WidthComplex(w, modules, diffs, keys, [], "koszul")


# -- Buchsbaum-Eisenbud ----------------------------------------------------------


def compositions(total: int, parts: int):
    """Exponent vectors of the given length and sum, in lexicographic order."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def splice_sign(I, J) -> int:
    """Sign of the permutation taking J = (j_1 < ...) to (I, J minus I), both parts increasing."""
    rest = [j for j in J if j not in I]
    inversions = sum(1 for a in I for b in rest if b < a)
    return -1 if inversions % 2 else 1


def divided_power_coefficient(c, t: int) -> int:
    """g_t acting on prod (g_s^*)^{c_s} lowers c_t by one with this multiplicity."""
    return c[t]


def classical_be(A, i: int, f_degrees=None, g_degrees=None, width: int = 0) -> WidthComplex:
    """BE^i of an r x n matrix A (entries Polynomials in `width`, or rationals).

    Homological degree h <= i holds Λ^h F ⊗ S_{i-h} G; degree i+1+p holds
    Λ^r G* ⊗ S_p G* ⊗ Λ^{r+i+p} F.  Trailing zero modules are dropped.
    """
    if i < 0:
        raise ValueError("BE index must be non-negative")
    r = len(A)
    n = len(A[0]) if r else len(f_degrees or [])
    A = [[a if isinstance(a, Polynomial) else Polynomial.constant(a, width) for a in row] for row in A]
    if any(len(row) != n for row in A):
        raise ValueError("ragged matrix")
    if any(a.width != width for row in A for a in row):
        raise WidthMismatchError(f"matrix entries must live in width {width}")
    fdeg = list(f_degrees) if f_degrees is not None else [0] * n
    gdeg = list(g_degrees) if g_degrees is not None else [0] * r
    # Λ^r G* sits in degree -sum(gdeg): the unique twist making the splice map degree 0
    twist = -sum(gdeg)

    modules = []
    for h in range(i + 1):
        labels = [(J, c) for J in combinations(range(n), h) for c in compositions(i - h, r)]
        degs = [sum(fdeg[j] for j in J) + sum(e * gdeg[t] for t, e in enumerate(c)) for J, c in labels]
        modules.append(ModuleBasis(f"Λ^{h}F⊗S_{i - h}G", labels, degs))
    for p in range(max(n - r - i + 1, 0)):
        q = r + i + p
        labels = [(J, c) for c in compositions(p, r) for J in combinations(range(n), q)]
        degs = [twist - sum(e * gdeg[t] for t, e in enumerate(c)) + sum(fdeg[j] for j in J) for J, c in labels]
        modules.append(ModuleBasis(f"Λ^{r}G*⊗S_{p}G*⊗Λ^{q}F", labels, degs, dual=True))
    while len(modules) > 1 and modules[-1].rank == 0:
        modules.pop()

    minors = {}

    def minor(I):
        if I not in minors:
            m = determinant([[A[t][j] for j in I] for t in range(r)])
            minors[I] = m if isinstance(m, Polynomial) else Polynomial.constant(m, width)
        return minors[I]

    diffs = []
    for h in range(1, len(modules)):
        rows, cols = modules[h - 1], modules[h]
        row_index = rows.index()
        mat = _zeros(rows.rank, cols.rank, width)

        def add(label, col, value):
            k = row_index[label]
            mat[k][col] = mat[k][col] + value

        for col, (J, c) in enumerate(cols.labels):
            if h <= i:
                for pos, j in enumerate(J):
                    rest = _drop(J, pos)
                    for t in range(r):
                        a = A[t][j]
                        if a:
                            c2 = c[:t] + (c[t] + 1,) + c[t + 1:]
                            add((rest, c2), col, a if pos % 2 == 0 else -a)
            elif h == i + 1:
                for I in combinations(J, r):
                    m = minor(I)
                    if m:
                        rest = tuple(j for j in J if j not in I)
                        add((rest, c), col, m.scale(splice_sign(I, J)))
            else:
                for t in range(r):
                    if not c[t]:
                        continue
                    coef = divided_power_coefficient(c, t)
                    c2 = c[:t] + (c[t] - 1,) + c[t + 1:]
                    for pos, j in enumerate(J):
                        a = A[t][j]
                        if a:
                            add((_drop(J, pos), c2), col, a.scale(coef if pos % 2 == 0 else -coef))
        diffs.append(mat)
    return WidthComplex(width, modules, diffs, [], [], "be")


def be_at_width(phi: ModuleMorphism, i: int, w: int) -> WidthComplex:
    G = phi.codomain
    if not G.is_width_zero_generated():
        raise NotWidthZeroError(f"BE complexes need a width-0 generated codomain, got {G}")
    keys = phi.domain.basis_at_width(w)
    fdeg = [phi.domain.key_degree(k) for k in keys]
    gdeg = [g.degree for g in G.generators]
    if len(set(gdeg)) > 1:
        warnings.warn(
            f"codomain generators have mixed degree shifts {gdeg}; the twist of Λ^r G* is taken as "
            f"{-sum(gdeg)} and gradedness is checked, not assumed",
            stacklevel=2,
        )
    C = classical_be(phi.matrix_at_width(w), i, fdeg, gdeg, width=w)
    C.f_basis = keys
    C.g_labels = [g.label for g in G.generators]
    return C


# -- OI-level assembly -----------------------------------------------------------


@dataclass
class OIComplexSpec:
    kind: str  # "koszul" or "be"
    phi: ModuleMorphism
    i: int = 0
    truncation: int | None = None

    def __post_init__(self):
        if self.kind not in ("koszul", "be"):
            raise ValueError(f"unknown complex kind {self.kind!r}")
        if self.kind == "be" and not self.phi.codomain.is_width_zero_generated():
            raise NotWidthZeroError("BE complexes need a width-0 generated codomain")
        if self.kind == "koszul":
            _check_codomain_is_algebra(self.phi)


def width_component(spec: OIComplexSpec, w: int) -> WidthComplex:
    if spec.kind == "koszul":
        return koszul_at_width(spec.phi, w, spec.truncation)
    return be_at_width(spec.phi, spec.i, w)


@dataclass
class Transition:
    """Action of eps: w -> w' on the bases of one module: source index -> (target index, sign)."""

    eps: OIMorphism
    degree: int
    images: dict
    monotone: bool


def module_transition(C: WidthComplex, C2: WidthComplex, h: int, eps: OIMorphism) -> Transition:
    if eps.source != C.width or eps.target != C2.width:
        raise WidthMismatchError(f"{eps} does not go from width {C.width} to {C2.width}")
    position = {k: idx for idx, k in enumerate(C2.f_basis)}
    f_map = [position[k.push(eps)] for k in C.f_basis]
    target_index = C2.modules[h].index()
    images, monotone = {}, True
    for src, (J, c) in enumerate(C.modules[h].labels):
        pushed = [f_map[j] for j in J]
        inversions = sum(1 for a in range(len(pushed)) for b in range(a + 1, len(pushed)) if pushed[a] > pushed[b])
        if inversions:
            monotone = False
        images[src] = (target_index[(tuple(sorted(pushed)), c)], -1 if inversions % 2 else 1)
    return Transition(eps, h, images, monotone)


@dataclass
class OIComplex:
    spec: OIComplexSpec
    components: list
    transitions: dict  # (w, eps) -> list of Transition, one per shared degree

    @property
    def wmax(self) -> int:
        return len(self.components) - 1


def _component_job(args):
    spec, w = args
    return width_component(spec, w)


def assemble_oi_complex(spec: OIComplexSpec, wmax: int, jobs: int = 1) -> OIComplex:
    """Width components for 0..wmax and the basis transitions along every eps: w -> w+1.

    Components are independent; with jobs > 1 they are built in worker processes
    and the result is identical to the serial one.
    """
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            comps = list(pool.map(_component_job, [(spec, w) for w in range(wmax + 1)]))
    else:
        comps = [width_component(spec, w) for w in range(wmax + 1)]
    transitions = {}
    for w in range(wmax):
        C, C2 = comps[w], comps[w + 1]
        shared = min(len(C.modules), len(C2.modules))
        for eps in enumerate_hom(w, w + 1):
            transitions[(w, eps)] = [module_transition(C, C2, h, eps) for h in range(shared)]
    return OIComplex(spec, comps, transitions)


def oi_module_decomposition(spec: OIComplexSpec, h: int):
    """Free decomposition of the OI-module in homological degree h."""
    phi = spec.phi
    F = phi.domain
    if spec.kind == "koszul":
        return wedge_decompose(F, h)
    G = phi.codomain
    r, i = G.rank, spec.i
    if h <= i:
        return tensor_decompose(wedge_decompose(F, h), sym_decompose(G, i - h))
    p = h - i - 1
    dual = dual_width0(G).dual
    return tensor_decompose(tensor_decompose(wedge_decompose(dual, r), sym_decompose(dual, p)),
                            wedge_decompose(F, r + i + p))


def en_rank(n: int, r: int, p: int) -> int:
    """Rank of Λ^r G* ⊗ S_p G* ⊗ Λ^{r+p} F for rank F = n, rank G = r."""
    return comb(n, r + p) * comb(r - 1 + p, p)
