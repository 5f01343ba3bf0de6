"""Exact local A^1-degrees of endomorphisms of punctured affine space."""
from .ekl import EKLForm, bezoutian, divided_difference_matrix, ekl_gram, jacobian_consistency
from .endo import (
    EndoCandidate,
    Flavor,
    LocalAlgebra,
    ValidatedEndo,
    classify_flavor,
    local_algebra,
    nullhomotopy_report,
    validate,
)
from .fields import RATIONALS, Field, Fp, legendre, make_field, scalar_arith
from .groebner import (
    GroebnerBasis,
    Staircase,
    buchberger,
    contains_one,
    minimal_power_in_ideal,
    normal_form,
    quotient_staircase,
    radical_membership,
)
from .gw import (
    DiagonalForm,
    GWInvariants,
    SymForm,
    brute_force_isotropic_fp,
    diagonalize,
    ekl_obstruction,
    gw_equal,
    gw_invariants,
    hasse_invariant,
    hilbert_symbol,
    isotropic,
    witt_decompose,
)
from .parser import parse_poly
from .pipeline import AnalysisReport, JobSpec, analyze
from .poly import Order, Poly, PolyRing

__version__ = "0.1.0"
