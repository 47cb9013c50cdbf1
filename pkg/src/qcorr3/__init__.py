"""Geometric quantum discord and total quantum correlation of three qubits
in independent non-Markovian amplitude-damping reservoirs."""

from .discord import DiscordReport, gqd_brute_force, gqd_k, gqd_two_qubit, project_measure, tqc
from .dynamics import ReservoirParams, evolve_three, kraus_oracle, p_t, p_t_numeric, p_t_zeros
from .qstate import bloch_parts, coeff_tensor, reduce_two_qubit, rho_from_coeff
from .states import GhzSpec, WSpec, make_ghz, make_state, make_w

__version__ = "0.1.0"
