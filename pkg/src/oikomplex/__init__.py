"""Free OI-modules over polynomial OI-algebras, their multilinear constructions,
and the OI Koszul and Buchsbaum-Eisenbud complexes, with exact verification."""

from .oi_cat import BasisKey, OIMorphism, compose, enumerate_hom, identity, inclusion_onto
from .polyring import Polynomial, Variable, determinant, evaluate, push_forward
from .oi_algebra import AlgebraSignature
from .free_mod import FreeOIModule, Generator, ModuleElement, ModuleMorphism
from .multilinear import (
    FreeDecomposition, certify_rank_identity, dual_width0, sym_decompose, tensor_decompose, wedge_decompose,
)
from .complexes import (
    OIComplexSpec, WidthComplex, assemble_oi_complex, be_at_width, classical_be, koszul_at_width,
)
from .verify import VerificationReport, probe_generic_acyclicity, verify_oi_complex

__version__ = "0.1.0"
