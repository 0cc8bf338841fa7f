"""Exact Duflo maps, transported star products and their operator identities."""
from .lie import LieAlgebra, validate, catalog, ad_generic, trace_power
from .poly import Poly, Jet, jet_exp, jet_log, jet_inverse, matrix_series_tr_log, pairing
from .enveloping import PBWElement, pbw_product, symmetrize, unsymmetrize, adjoint_on_U
from .duflo import (WheelCoefficients, StarContext, q_jet, tau_jet, mult_distribution,
                    eta, kappa, kappa_inv, star, poisson_bracket)
from .operators import DiffOp, apply_right
from .invariants import adjoint_derivation, ad_on_S, invariant_basis, centrality_check
from .diffops import (extract_right_star_operator, D_p_apply, T_p_apply, lemma1_check,
                      annihilates_invariants, r_ideal_membership, RightAction)

__version__ = "0.1.0"
