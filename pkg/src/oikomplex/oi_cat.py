"""The skeleton of OI: order-preserving injections [n] -> [w].

Morphisms are stored by their image, a strictly increasing tuple of 1-based
indices.  All enumerations are in lexicographic order of images.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .errors import CompositionError, ParseError


@dataclass(frozen=True, order=True)
class OIMorphism:
    source: int
    target: int
    image: tuple

    def __post_init__(self):
        img = tuple(self.image)
        object.__setattr__(self, "image", img)
        if self.source < 0 or self.target < 0:
            raise ValueError("widths must be non-negative")
        if len(img) != self.source:
            raise ValueError(f"image {img} does not have length {self.source}")
        prev = 0
        for k in img:
            if not prev < k <= self.target:
                raise ValueError(f"image {img} is not strictly increasing inside [1, {self.target}]")
            prev = k

    def __call__(self, k: int) -> int:
        return self.image[k - 1]

    def __str__(self):
        return f"{self.source}->{self.target}:[{','.join(map(str, self.image))}]"

    @classmethod
    def parse(cls, text: str) -> "OIMorphism":
        m = _MORPHISM_RE.fullmatch(text.strip())
        if m is None:
            raise ParseError(f"cannot parse OI-morphism {text!r}")
        body = m.group(3).strip()
        image = tuple(int(t) for t in body.split(",")) if body else ()
        try:
            return cls(int(m.group(1)), int(m.group(2)), image)
        except ValueError as exc:
            raise ParseError(str(exc)) from None

    def is_identity(self) -> bool:
        return self.source == self.target


_MORPHISM_RE = re.compile(r"(\d+)\s*->\s*(\d+)\s*:\s*\[([\d,\s]*)\]")


def identity(w: int) -> OIMorphism:
    return OIMorphism(w, w, tuple(range(1, w + 1)))


@lru_cache(maxsize=None)
def _hom(n: int, w: int) -> tuple:
    return tuple(OIMorphism(n, w, img) for img in combinations(range(1, w + 1), n))


def enumerate_hom(n: int, w: int) -> list:
    """All C(w, n) morphisms n -> w, images in lexicographic order."""
    if n < 0 or w < 0:
        raise ValueError("widths must be non-negative")
    return list(_hom(n, w))


def compose(outer: OIMorphism, inner: OIMorphism) -> OIMorphism:
    """outer o inner."""
    if outer.source != inner.target:
        raise CompositionError(
            f"cannot compose {outer} after {inner}: {outer.source} != {inner.target}"
        )
    img = outer.image
    return OIMorphism(inner.source, outer.target, tuple(img[k - 1] for k in inner.image))


def inclusion_onto(subset, w: int) -> OIMorphism:
    """The unique morphism |S| -> w with image S."""
    s = tuple(sorted(subset))
    return OIMorphism(len(s), w, s)


def factor_through_image(morphisms):
    """Compress a family of morphisms with common target onto the union of their images.

    Returns ``(eps, compressed)`` with ``eps`` the inclusion of the union and
    ``compose(eps, compressed[k]) == morphisms[k]`` for every k.
    """
    morphisms = list(morphisms)
    if not morphisms:
        return identity(0), []
    w = morphisms[0].target
    if any(m.target != w for m in morphisms):
        raise CompositionError("morphisms do not share a target")
    union = sorted(set().union(*(m.image for m in morphisms)))
    eps = inclusion_onto(union, w)
    position = {k: pos for pos, k in enumerate(union, start=1)}
    compressed = [
        OIMorphism(m.source, len(union), tuple(position[k] for k in m.image)) for m in morphisms
    ]
    return eps, compressed


@dataclass(frozen=True)
class BasisKey:
    """The basis element pi_*(f_j) of a free OI-module: generator j (1-based) pushed along pi.

    Sorting BasisKeys uses the canonical enumeration order of width-w bases:
    generator index ascending, then image lexicographically ascending.  The
    comparison relation used for the monotonicity argument is `basis_greater`.
    """

    generator: int
    morphism: OIMorphism

    def sort_key(self):
        return (self.generator, self.morphism.image)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return f"{self.generator}:{self.morphism}"

    @classmethod
    def parse(cls, text: str) -> "BasisKey":
        head, sep, rest = text.strip().partition(":")
        if not sep or not head.strip().isdigit():
            raise ParseError(f"cannot parse basis key {text!r}")
        return cls(int(head), OIMorphism.parse(rest))

    def push(self, eps: OIMorphism) -> "BasisKey":
        return BasisKey(self.generator, compose(eps, self.morphism))


def basis_greater(a: BasisKey, b: BasisKey) -> bool:
    """(pi, j) > (tau, k) iff j < k, or j == k and im(pi) > im(tau) lexicographically."""
    if a.generator != b.generator:
        return a.generator < b.generator
    return a.morphism.image > b.morphism.image
