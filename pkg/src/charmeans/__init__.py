"""Cubic and quartic Dirichlet character families, their Gauss sums and mean values."""

from .characters import CharacterTable, admissible_moduli, character_from_q, distinct_S, enumerate_q, set_S
from .eisenstein import OMEGA, EisInt, cubic_symbol, euler_phi_w, factor_primary_w, gcd_w, make_primary_w, norm_w, split_prime_w
from .errors import BudgetExceeded, CapacityError, DomainError
from .gauss_sums import g_symbol, phase_etilde, poisson_discrepancy, residues_mod, tau_char
from .gaussian import I, GaussInt, euler_phi_i, factor_primary_i, gcd_i, lambda0, make_primary_i, norm_i, quartic_symbol, split_prime_i
from .mean_values import S_total, SumReport, compute_constant, euler_factor, main_term_predict, power_part, transition_scan

__version__ = "0.1.0"
