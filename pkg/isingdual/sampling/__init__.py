"""Importance sampling module"""
from .base import Assignment, BaseEstimator, Domain, EstimateReport, block_generator
from .registry import EstimatorRegistry, register_estimator
from .primal import (
    PrimalEstimator,
    complete_chords,
    draw_branch_assignment,
    estimate_primal,
    lift_to_spins,
)
from .dual import DualEstimator, complete_branches, draw_chord_assignment, estimate_dual
