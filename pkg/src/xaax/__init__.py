"""Exact solutions of the matrix equations XA - AX = f(X) and f(XA - AX) = X."""

from .critical import (CriticalForm, commutant_nilpotents, critical_family,
                       derive_critical_form, existence_check, solve_jordan_block,
                       solve_nonderogatory, witness_solution)
from .errors import XaaxError
from .family import Slot, SolutionFamily
from .inverse import (Dim3Params, InverseSpec, SquareParams, dim3_family, kostant_check,
                      reduce_inverse, solve_exp, square_family)
from .jordan import JordanStructure, generalized_eigenspaces, jordan_structure
from .matrix import Matrix, block_diag, diag, identity, jordan_block, zeros
from .multipoly import MultiPoly
from .regular import (chain_partition, compute_Pr, normalize_regular, solve_chain_diag,
                      solve_chain_general, solve_log, solve_regular, sylvester_solve)
from .scalar import GaussianRational, I, as_scalar, format_scalar, parse_scalar
from .series import TaylorSpec, series_reversion
from .verify import VerificationReport, verify_direct, verify_inverse, verify_mixed

__all__ = [
    "CriticalForm",
    "commutant_nilpotents",
    "critical_family",
    "derive_critical_form",
    "existence_check",
    "solve_jordan_block",
    "solve_nonderogatory",
    "witness_solution",
    "XaaxError",
    "Slot",
    "SolutionFamily",
    "Dim3Params",
    "InverseSpec",
    "SquareParams",
    "dim3_family",
    "kostant_check",
    "reduce_inverse",
    "solve_exp",
    "square_family",
    "JordanStructure",
    "generalized_eigenspaces",
    "jordan_structure",
    "Matrix",
    "block_diag",
    "diag",
    "identity",
    "jordan_block",
    "zeros",
    "MultiPoly",
    "chain_partition",
    "compute_Pr",
    "normalize_regular",
    "solve_chain_diag",
    "solve_chain_general",
    "solve_log",
    "solve_regular",
    "sylvester_solve",
    "GaussianRational",
    "I",
    "as_scalar",
    "format_scalar",
    "parse_scalar",
    "TaylorSpec",
    "series_reversion",
    "VerificationReport",
    "verify_direct",
    "verify_inverse",
    "verify_mixed",
]

__version__ = "0.1.0"
