"""Finitely generated free OI-modules over a polynomial OI-algebra, and morphisms between them.

A free module is a list of generators (width n_j, internal degree a_j), i.e.
F^{OI,n_1}(-a_1) + ... + F^{OI,n_r}(-a_r).  Its width-w component has the basis
pi_*(f_j) for pi in Hom(n_j, w), indexed by `BasisKey(j, pi)`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import comb

from .errors import AlgebraMismatchError, ParseError, WidthMismatchError
from .oi_algebra import AlgebraSignature
from .oi_cat import BasisKey, OIMorphism, enumerate_hom, identity
from .polyring import Polynomial, degree, is_homogeneous, parse_polynomial, push_forward


@dataclass(frozen=True)
class Generator:
    width: int
    degree: int = 0
    label: str = ""


@dataclass(frozen=True)
class FreeOIModule:
    algebra: AlgebraSignature
    generators: tuple

    def __post_init__(self):
        gens = tuple(
            g if isinstance(g, Generator) else Generator(*g) for g in self.generators
        )
        gens = tuple(
            g if g.label else Generator(g.width, g.degree, f"f{j}")
            for j, g in enumerate(gens, start=1)
        )
        object.__setattr__(self, "generators", gens)

    @classmethod
    def from_widths(cls, algebra, widths, degrees=None, prefix="f"):
        degrees = degrees or [0] * len(widths)
        return cls(
            algebra,
            tuple(Generator(n, a, f"{prefix}{j}") for j, (n, a) in enumerate(zip(widths, degrees), 1)),
        )

    @classmethod
    def parse(cls, algebra, text: str, prefix="f") -> "FreeOIModule":
        """"2:1,3:-1" means F^{OI,2} with generator degree 1 plus F^{OI,3} with degree -1."""
        widths, degs = [], []
        for item in text.split(","):
            item = item.strip()
            if not item:
                continue
            n, _, a = item.partition(":")
            try:
                widths.append(int(n))
                degs.append(int(a) if a else 0)
            except ValueError:
                raise ParseError(f"cannot parse free module generator {item!r}") from None
        return cls.from_widths(algebra, widths, degs, prefix)

    @property
    def rank(self) -> int:
        return len(self.generators)

    def rank_at_width(self, w: int) -> int:
        return sum(comb(w, g.width) for g in self.generators)

    def is_width_zero_generated(self) -> bool:
        return all(g.width == 0 for g in self.generators)

    def basis_at_width(self, w: int) -> list:
        return [
            BasisKey(j, pi)
            for j, g in enumerate(self.generators, start=1)
            for pi in enumerate_hom(g.width, w)
        ]

    def generator_key(self, j: int) -> BasisKey:
        return BasisKey(j, identity(self.generators[j - 1].width))

    def key_degree(self, key: BasisKey) -> int:
        return self.generators[key.generator - 1].degree

    def __str__(self):
        parts = []
        for g in self.generators:
            s = f"F^{{OI,{g.width}}}"
            if g.degree:
                s += f"({-g.degree:+d})"
            parts.append(s)
        return " ⊕ ".join(parts) if parts else "0"


def basis_at_width(F: FreeOIModule, w: int) -> list:
    return F.basis_at_width(w)


@dataclass
class ModuleElement:
    module: FreeOIModule
    width: int
    coords: dict = field(default_factory=dict)

    def __post_init__(self):
        self.coords = {k: c for k, c in self.coords.items() if c}
        for k, c in self.coords.items():
            if k.morphism.target != self.width or c.width != self.width:
                raise WidthMismatchError(f"coordinate {k} does not live in width {self.width}")
            if k.morphism.source != self.module.generators[k.generator - 1].width:
                raise ValueError(f"{k} is not a basis element of {self.module}")

    @classmethod
    def basis(cls, module, key: BasisKey) -> "ModuleElement":
        w = key.morphism.target
        return cls(module, w, {key: Polynomial.constant(1, w)})

    def is_zero(self) -> bool:
        return not self.coords

    def __add__(self, other):
        if other.width != self.width:
            raise WidthMismatchError(f"width {self.width} vs {other.width}")
        coords = dict(self.coords)
        for k, c in other.coords.items():
            coords[k] = coords[k] + c if k in coords else c
        return ModuleElement(self.module, self.width, coords)

    def scale(self, a) -> "ModuleElement":
        return ModuleElement(self.module, self.width, {k: c * a for k, c in self.coords.items()})

    def __eq__(self, other):
        if not isinstance(other, ModuleElement):
            return NotImplemented
        return self.width == other.width and self.coords == other.coords

    def __str__(self):
        if not self.coords:
            return "0"
        return " + ".join(f"({c})*e[{k}]" for k, c in sorted(self.coords.items()))


def element_push_forward(m: ModuleElement, eps: OIMorphism) -> ModuleElement:
    """sum a_k e_k  ->  sum eps_*(a_k) e_{eps o k}."""
    if m.width != eps.source:
        raise WidthMismatchError(f"element of width {m.width} pushed along {eps}")
    return ModuleElement(
        m.module,
        eps.target,
        {k.push(eps): push_forward(c, eps) for k, c in m.coords.items()},
    )


class ModuleMorphism:
    """A morphism of free OI-modules, stored by the images of the domain generators."""

    def __init__(self, domain: FreeOIModule, codomain: FreeOIModule, images):
        if domain.algebra != codomain.algebra:
            raise AlgebraMismatchError("domain and codomain live over different algebras")
        images = list(images)
        if len(images) != domain.rank:
            raise ValueError(f"need {domain.rank} generator images, got {len(images)}")
        for j, (g, im) in enumerate(zip(domain.generators, images), start=1):
            if im.width != g.width:
                raise WidthMismatchError(f"image of generator {j} must live in width {g.width}")
            if im.module != codomain:
                raise ValueError(f"image of generator {j} is not an element of the codomain")
        self.domain = domain
        self.codomain = codomain
        self.images = images
        self._matrices = {}

    @property
    def algebra(self) -> AlgebraSignature:
        return self.domain.algebra

    def __eq__(self, other):
        if not isinstance(other, ModuleMorphism):
            return NotImplemented
        return (self.domain, self.codomain, self.images) == (other.domain, other.codomain, other.images)

    def image_of_key(self, key: BasisKey) -> ModuleElement:
        return element_push_forward(self.images[key.generator - 1], key.morphism)

    def matrix_at_width(self, w: int) -> list:
        """Rows: codomain basis at w; columns: domain basis at w; canonical order on both."""
        if w not in self._matrices:
            rows = self.codomain.basis_at_width(w)
            cols = self.domain.basis_at_width(w)
            row_index = {k: r for r, k in enumerate(rows)}
            mat = [[Polynomial.zero(w) for _ in cols] for _ in rows]
            for c, key in enumerate(cols):
                for rk, a in self.image_of_key(key).coords.items():
                    mat[row_index[rk]][c] = a
            self._matrices[w] = mat
        return [list(row) for row in self._matrices[w]]

    def __repr__(self):
        return f"ModuleMorphism({self.domain} -> {self.codomain})"


def apply(phi: ModuleMorphism, m: ModuleElement) -> ModuleElement:
    """A(w)-linear extension of phi(pi_*(f_j)) = pi_*(phi(f_j))."""
    if m.module != phi.domain:
        raise ValueError("element is not in the domain of the morphism")
    out = ModuleElement(phi.codomain, m.width)
    for key, a in m.coords.items():
        out = out + phi.image_of_key(key).scale(a)
    return out


def matrix_at_width(phi: ModuleMorphism, w: int) -> list:
    return phi.matrix_at_width(w)


def graded_defects(phi: ModuleMorphism, grading=None) -> list:
    """Coordinates of generator images that violate degree-0 homogeneity.

    The coordinate of phi(f_j) at g_k must be homogeneous of degree a_j - b_k.
    """
    grading = grading or phi.algebra.grading
    bad = []
    for j, (g, im) in enumerate(zip(phi.domain.generators, phi.images), start=1):
        for key, a in im.coords.items():
            want = g.degree - phi.codomain.key_degree(key)
            if not is_homogeneous(a, grading) or degree(a, grading) != want:
                bad.append((j, key, a, want))
    return bad


def is_graded(phi: ModuleMorphism) -> bool:
    return not graded_defects(phi)


@dataclass
class NaturalityReport:
    passed: bool
    checked: int
    witness: dict | None = None


def check_naturality(phi: ModuleMorphism, wmax: int, matrices=None) -> NaturalityReport:
    """Check eps_* o phi(w) == phi(w') o eps_* on every basis element, for all eps: w -> w' <= wmax.

    `matrices` optionally overrides phi's width-w matrices (a dict w -> matrix),
    which is how hand-entered width-wise data is validated.
    """
    def mat(w):
        if matrices is not None and w in matrices:
            return matrices[w]
        return phi.matrix_at_width(w)

    checked = 0
    for w in range(wmax + 1):
        cols_w = phi.domain.basis_at_width(w)
        rows_w = phi.codomain.basis_at_width(w)
        m_w = mat(w)
        for w2 in range(w, wmax + 1):
            cols_2 = {k: c for c, k in enumerate(phi.domain.basis_at_width(w2))}
            rows_2 = phi.codomain.basis_at_width(w2)
            m_2 = mat(w2)
            for eps in enumerate_hom(w, w2):
                row_map = {r: rows_2.index(k.push(eps)) for r, k in enumerate(rows_w)}
                for c, key in enumerate(cols_w):
                    checked += 1
                    lhs = {}
                    for r in range(len(rows_w)):
                        a = m_w[r][c]
                        if a:
                            lhs[row_map[r]] = push_forward(a, eps)
                    c2 = cols_2[key.push(eps)]
                    rhs = {r: m_2[r][c2] for r in range(len(rows_2)) if m_2[r][c2]}
                    if lhs != rhs:
                        return NaturalityReport(
                            False, checked, {"eps": str(eps), "basis_key": str(key), "width": w}
                        )
    return NaturalityReport(True, checked)


# -- JSON ----------------------------------------------------------------------


def morphism_to_json(phi: ModuleMorphism) -> dict:
    return {
        "algebra": phi.algebra.cli_form(),
        "domain": [[g.width, g.degree] for g in phi.domain.generators],
        "codomain": [[g.width, g.degree] for g in phi.codomain.generators],
        "images": [
            [{"key": str(k), "poly": str(c)} for k, c in sorted(im.coords.items())]
            for im in phi.images
        ],
    }


def morphism_from_json(data, algebra: AlgebraSignature | None = None) -> ModuleMorphism:
    """Build a morphism from its JSON form; malformed input raises ParseError naming the field."""
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ParseError(f"morphism file is not valid JSON (line {exc.lineno}): {exc.msg}") from None
    for fld in ("algebra", "domain", "codomain", "images"):
        if fld not in data:
            raise ParseError(f"morphism JSON is missing field {fld!r}")
    sig = AlgebraSignature.parse(str(data["algebra"]))
    if algebra is not None and algebra != sig:
        raise AlgebraMismatchError(f"morphism is over {sig}, expected {algebra}")

    def gens(name, prefix):
        try:
            return FreeOIModule(sig, tuple(Generator(int(n), int(a), f"{prefix}{j}")
                                           for j, (n, a) in enumerate(data[name], start=1)))
        except (TypeError, ValueError) as exc:
            raise ParseError(f"field {name!r}: {exc}") from None

    dom, cod = gens("domain", "f"), gens("codomain", "g")
    if len(data["images"]) != dom.rank:
        raise ParseError(f"field 'images': expected {dom.rank} entries, got {len(data['images'])}")
    images = []
    for j, (g, entries) in enumerate(zip(dom.generators, data["images"]), start=1):
        coords = {}
        for t, entry in enumerate(entries):
            where = f"field 'images'[{j - 1}][{t}]"
            try:
                key = BasisKey.parse(entry["key"])
                poly = parse_polynomial(entry["poly"], g.width)
            except (KeyError, TypeError) as exc:
                raise ParseError(f"{where}: missing {exc}") from None
            except ParseError as exc:
                raise ParseError(f"{where}: {exc}") from None
            if key.morphism.target != g.width or not 1 <= key.generator <= cod.rank:
                raise ParseError(f"{where}: key {key} is not a width-{g.width} basis element of the codomain")
            if not all(sig.contains(v) for v in poly.variables()):
                raise ParseError(f"{where}: polynomial uses a variable outside {sig}")
            coords[key] = coords[key] + poly if key in coords else poly
        try:
            images.append(ModuleElement(cod, g.width, coords))
        except ValueError as exc:
            raise ParseError(f"field 'images'[{j - 1}]: {exc}") from None
    return ModuleMorphism(dom, cod, images)
