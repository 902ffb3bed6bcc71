"""Finite-model workbench for adjustment algebras.

States evolve by x -> x + phi(x) under a monoid action, with an ordered
evaluation psi. The package checks the axioms exhaustively, runs the dynamics,
builds the reachability category, computes homology of the transition graph,
and model-checks branching-time formulas.
"""

from ._backend import BACKEND, compiled_available
from .algebra import (AdjustmentMonoid, AxiomReport, EvalOrder, EvalValue, FiniteAlpayAlgebra, Witness,
                      net_sum, validate_algebra)
from .builtins import builtin
from .category import (SmallCategorySpec, category_law_audit, certify_embedding, embed_category,
                       extremal_objects, hom_set, homomorphism_audit, naturality_audit)
from .dot import export_dot
from .dynamics import phi_infinity, run_trajectory, theorem1_audit
from .errors import (FormulaSyntaxError, IllFormedError, OrderMismatchError, PreconditionError, SpecError,
                     UnknownIdentifierError, WorkbenchError)
from .generate import RandomAlgebraParams, random_algebra
from .homology import EdgePolicy, TwoCell, build_complex, conjecture4_probe, graph_oracle, homology_report
from .logic import check_claim, format_formula, model_check, parse_formula
from .serialize import load_category_spec, load_spec, load_two_cells, save_category_spec, save_spec
from .snf import smith_normal_form

__version__ = "0.1.0"
