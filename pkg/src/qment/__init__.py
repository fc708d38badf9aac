"""Multipartite entanglement of qudit states, quantum codes and unitaries."""

from .enumerators import (enumerate_projector, mds_weight_distribution, qm_from_weights,
                          rains_unitary, shor_laflamme, subspace_average_qm)
from .epower import UnitaryOperator, entangling_power_exact, entangling_power_mc
from .gf4 import AdditiveCode, Gf4, Gf4Vec, builtin, from_generators, read_code, write_code
from .kicked_rotor import epower_sweep, rotor_unitary, standard_map
from .stabilizer import code_projector, stabilized_state, stabilizer_from_code
from .states import StateVector, ghz, lubkin_average, meyer_wallach_q, q_m, w_state

__version__ = "0.1.0"

__all__ = [
    "AdditiveCode", "Gf4", "Gf4Vec", "StateVector", "UnitaryOperator", "builtin",
    "code_projector", "entangling_power_exact", "entangling_power_mc", "enumerate_projector",
    "epower_sweep", "from_generators", "ghz", "lubkin_average", "mds_weight_distribution",
    "meyer_wallach_q", "q_m", "qm_from_weights", "rains_unitary", "read_code",
    "rotor_unitary", "shor_laflamme", "stabilized_state", "stabilizer_from_code",
    "standard_map", "subspace_average_qm", "w_state", "write_code",
]
