"""Polynomial OI-algebras X^{OI,d1} (x) ... (x) X^{OI,dc}, represented by their signature."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import ParseError
from .oi_cat import OIMorphism, enumerate_hom
from .polyring import Polynomial, Variable


@dataclass(frozen=True)
class AlgebraSignature:
    """Factor widths (d_1, ..., d_c) and per-factor variable degrees (default all 1).

    In width w the algebra is the polynomial ring in the variables x[i; pi] with
    pi in Hom(d_i, w).
    """

    factor_widths: tuple
    degrees: tuple = None

    def __post_init__(self):
        fw = tuple(int(d) for d in self.factor_widths)
        if not fw:
            raise ValueError("an algebra needs at least one factor")
        if any(d < 0 for d in fw):
            raise ValueError("factor widths must be non-negative")
        degs = (1,) * len(fw) if self.degrees is None else tuple(int(d) for d in self.degrees)
        if len(degs) != len(fw):
            raise ValueError("one degree per factor")
        object.__setattr__(self, "factor_widths", fw)
        object.__setattr__(self, "degrees", degs)

    @property
    def num_factors(self) -> int:
        return len(self.factor_widths)

    def __str__(self):
        return "⊗".join(f"X({d})" for d in self.factor_widths)

    def cli_form(self) -> str:
        return ",".join(map(str, self.factor_widths))

    @classmethod
    def parse(cls, text: str) -> "AlgebraSignature":
        """Accepts "1,1,1" or "X(1)⊗X(1)⊗X(1)"."""
        s = text.strip().replace("X(", "").replace(")", "").replace("⊗", ",")
        try:
            return cls(tuple(int(t) for t in s.split(",") if t.strip()))
        except ValueError as exc:
            raise ParseError(f"cannot parse algebra signature {text!r}: {exc}") from None

    def num_variables(self, w: int) -> int:
        return sum(comb(w, d) for d in self.factor_widths)

    def variables_at_width(self, w: int) -> list:
        return [
            Variable(i, pi)
            for i, d in enumerate(self.factor_widths, start=1)
            for pi in enumerate_hom(d, w)
        ]

    def variable(self, factor: int, image, width: int) -> Variable:
        d = self.factor_widths[factor - 1]
        return Variable(factor, OIMorphism(d, width, tuple(image)))

    def x(self, factor: int, image, width: int) -> Polynomial:
        """The polynomial x[factor; image] in the given width."""
        return Polynomial.var(self.variable(factor, image, width))

    def grading(self, v: Variable) -> int:
        return self.degrees[v.factor - 1]

    def contains(self, v: Variable) -> bool:
        return 1 <= v.factor <= self.num_factors and v.morphism.source == self.factor_widths[v.factor - 1]


def variables_at_width(sig: AlgebraSignature, w: int) -> list:
    return sig.variables_at_width(w)
