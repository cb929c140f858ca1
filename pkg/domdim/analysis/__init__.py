"""Closed-form predictions and the tree conditions behind them."""

from domdim.analysis.conditions import (
    ClauseResult,
    ConditionReport,
    Witness,
    check_conditions,
    check_conditions_doublestar,
    check_conditions_star,
)
from domdim.analysis.predict import (
    Prediction,
    ScopeError,
    Verdict,
    generic_bound,
    predict,
    predict_An_quotient,
    predict_hereditary,
    predict_tree,
    reconcile,
    truncated_formula,
)

__all__ = [
    "ClauseResult",
    "ConditionReport",
    "Prediction",
    "ScopeError",
    "Verdict",
    "Witness",
    "check_conditions",
    "check_conditions_doublestar",
    "check_conditions_star",
    "generic_bound",
    "predict",
    "predict_An_quotient",
    "predict_hereditary",
    "predict_tree",
    "reconcile",
    "truncated_formula",
]
