"""Morphisms of the standard worked examples, built programmatically.

The JSON files under fixtures/ are generated from these by scripts/make_fixtures.py.
"""

from __future__ import annotations

from .free_mod import FreeOIModule, Generator, ModuleElement, ModuleMorphism
from .oi_algebra import AlgebraSignature
from .oi_cat import BasisKey, OIMorphism, identity


def _algebra_target(sig):
    return FreeOIModule(sig, (Generator(0, 0, "1"),))


def _zero_key(j, w):
    return BasisKey(j, OIMorphism(0, w, ()))


def koszul_morphism(sig: AlgebraSignature, domain, images) -> ModuleMorphism:
    """phi: F -> A with phi(f_j) = images[j] (a Polynomial in width n_j)."""
    A = _algebra_target(sig)
    elems = [ModuleElement(A, g.width, {_zero_key(1, g.width): p}) for g, p in zip(domain.generators, images)]
    return ModuleMorphism(domain, A, elems)


def generic_column_morphism(c: int, d: int = 1, degree: int = 1) -> ModuleMorphism:
    """F^{OI,d}(-degree) -> A^c over X^{OI,d}^{⊗c}, generator sent to (x[1; id_d], ..., x[c; id_d]).

    In width w the matrix is the generic c x C(w, d) matrix (x[i; pi]).
    """
    sig = AlgebraSignature((d,) * c)
    F = FreeOIModule(sig, (Generator(d, degree, "f1"),))
    G = FreeOIModule(sig, tuple(Generator(0, 0, f"g{i}") for i in range(1, c + 1)))
    image = ModuleElement(G, d, {_zero_key(i, d): sig.x(i, identity(d).image, d) for i in range(1, c + 1)})
    return ModuleMorphism(F, G, [image])


def generic_3xw() -> ModuleMorphism:
    """Generic 3 x w matrix: F^{OI,1}(-1) -> A^3 over X^{OI,1}^{⊗3}."""
    return generic_column_morphism(3, 1)


def koszul_x1() -> ModuleMorphism:
    """F^{OI,1}(-1) -> A over X^{OI,1}, e_id -> x_1."""
    sig = AlgebraSignature((1,))
    F = FreeOIModule(sig, (Generator(1, 1, "f1"),))
    return koszul_morphism(sig, F, [sig.x(1, (1,), 1)])


def koszul_xd(d: int = 2) -> ModuleMorphism:
    """F^{OI,d}(-1) -> A over X^{OI,d}, e_id -> x[1; id_d]."""
    sig = AlgebraSignature((d,))
    F = FreeOIModule(sig, (Generator(d, 1, "f1"),))
    return koszul_morphism(sig, F, [sig.x(1, identity(d).image, d)])


def koszul_x2_y3() -> ModuleMorphism:
    """F^{OI,2}(-1) + F^{OI,3}(-1) -> A over X^{OI,2} ⊗ X^{OI,3}: e_id2 -> x_id2, e_id3 -> y_id3."""
    sig = AlgebraSignature((2, 3))
    F = FreeOIModule(sig, (Generator(2, 1, "f1"), Generator(3, 1, "f2")))
    return koszul_morphism(sig, F, [sig.x(1, (1, 2), 2), sig.x(2, (1, 2, 3), 3)])


def koszul_non_acyclic() -> ModuleMorphism:
    """F^{OI,2}(-1) -> A over X^{OI,1}, e_id -> x_2 in A(2)."""
    sig = AlgebraSignature((1,))
    F = FreeOIModule(sig, (Generator(2, 1, "f1"),))
    return koszul_morphism(sig, F, [sig.x(1, (2,), 2)])


def be_generic(c: int = 2, d: int = 2) -> ModuleMorphism:
    return generic_column_morphism(c, d)


def be_generic_2_3(c: int = 4) -> ModuleMorphism:
    """F^{OI,2}(-1) + F^{OI,3}(-1) -> A^c over X^{OI,2}^{⊗c} ⊗ X^{OI,3}^{⊗c}.

    e_id2 -> (x[1; id_2], ..., x[c; id_2]) and e_id3 -> (y[1; id_3], ..., y[c; id_3]),
    where y[i; -] is the variable of factor c + i.
    """
    sig = AlgebraSignature((2,) * c + (3,) * c)
    F = FreeOIModule(sig, (Generator(2, 1, "f1"), Generator(3, 1, "f2")))
    G = FreeOIModule(sig, tuple(Generator(0, 0, f"g{i}") for i in range(1, c + 1)))
    x = ModuleElement(G, 2, {_zero_key(i, 2): sig.x(i, (1, 2), 2) for i in range(1, c + 1)})
    y = ModuleElement(G, 3, {_zero_key(i, 3): sig.x(c + i, (1, 2, 3), 3) for i in range(1, c + 1)})
    return ModuleMorphism(F, G, [x, y])
