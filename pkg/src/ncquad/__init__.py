"""Newton-Cotes rules in divided-difference form with realistic error estimates."""

from .composite import (
    CompositeOutput,
    CompositePlan,
    SweepRow,
    convergence_sweep,
    integrate,
    plan,
    plan_for_step,
    sweep_cases,
)
from .diagnostics import GCheckReport, check_condition, g_function
from .divdiff import DegeneratePanelError, ExtendedPanel, Panel, divided_difference, extend, full_table
from .exact_poly import (
    RationalPoly,
    WeightSet,
    compute_weights,
    integrate_poly,
    basis_integrals,
    newton_basis,
    nodal_weights,
)
from .expr import DomainError, ExprSyntaxError, compile_expr, evaluate, parse
from .jets import TaylorJet, derivatives, jet_eval
from .precision import DEFAULT_DIGITS, working
from .rules import (
    EstimateUnavailable,
    RuleOutput,
    apply_rule,
    is_realistic,
    realistic_error,
    simple_rule,
    theoretical_error_Qn,
)

__version__ = "0.1.0"
