"""Exact enumeration oracles"""
from .exact import (
    brute_force_log_Z,
    brute_force_log_Zd,
    brute_force_log_ZM,
    closed_form_periodic_chain_log_Z,
    exact_chi_square_dual,
    exact_chi_square_primal,
    is_single_cycle,
)
