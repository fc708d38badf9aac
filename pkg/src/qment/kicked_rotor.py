"""Classical standard map and the quantum kicked rotor on a torus.

Position states |q_j>, q_j = (j + 1/2) / N, are split into n = log_D N qudits
with qudit 0 the most significant digit of j, so low qudits resolve coarse
position scales.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .epower import UnitaryOperator, entangling_power_exact, entangling_power_mc
from .states import lubkin_average

TWO_PI = 2 * math.pi


@dataclass(frozen=True)
class ClassicalState:
    q: float
    p: float

    def __post_init__(self):
        object.__setattr__(self, "q", self.q % 1.0)
        object.__setattr__(self, "p", self.p % 1.0)


def standard_map(q, p, k: float):
    """One kick then free flight; q is advanced with the updated momentum."""
    p = (p + k / TWO_PI * np.sin(TWO_PI * q)) % 1.0
    q = (q + p) % 1.0
    return q, p


def classical_step(s: ClassicalState, k: float) -> ClassicalState:
    q, p = standard_map(s.q, s.p, k)
    return ClassicalState(float(q), float(p))


def jacobian_det(q: float, p: float, k: float, h: float = 1e-6) -> float:
    """Central-difference Jacobian determinant of one step (unwrapped coordinates)."""

    def step(x, y):
        y2 = y + k / TWO_PI * math.sin(TWO_PI * x)
        return x + y2, y2

    cols = []
    for dx, dy in ((h, 0.0), (0.0, h)):
        a = step(q + dx, p + dy)
        b = step(q - dx, p - dy)
        cols.append(((a[0] - b[0]) / (2 * h), (a[1] - b[1]) / (2 * h)))
    (a, c), (b, d) = cols
    return a * d - b * c


def phase_portrait(k: float, n_trajectories: int, n_steps: int,
                   rng: np.random.Generator) -> np.ndarray:
    """Rows (trajectory_id, step, q, p) from uniformly random initial points.

    Step 0 is the initial condition.
    """
    if n_trajectories < 1 or n_steps < 1:
        raise ValueError("need at least one trajectory and one step")
    q = rng.random(n_trajectories)
    p = rng.random(n_trajectories)
    rows = []
    ids = np.arange(n_trajectories)
    for t in range(n_steps + 1):
        rows.append(np.column_stack([ids, np.full(n_trajectories, t), q, p]))
        q, p = standard_map(q, p, k)
    out = np.concatenate(rows)
    return out[np.lexsort((out[:, 1], out[:, 0]))]


def occupancy(q: np.ndarray, p: np.ndarray, bins: int = 32) -> float:
    """Fraction of cells in a bins x bins grid on the torus visited by the points."""
    h, _, _ = np.histogram2d(q, p, bins=bins, range=[[0, 1], [0, 1]])
    return float(np.count_nonzero(h)) / bins**2


def rotor_unitary(N: int, k: float) -> np.ndarray:
    """Floquet operator: column j is kick phase at q_j times the Gauss-sum free propagator.

    Normalized by N^-1/2 so that it is unitary; the k = 0 matrix then has
    positive real trace.
    """
    if N < 2 or N % 2:
        raise ValueError(f"the quantized kicked rotor needs an even dimension, got N={N}")
    j = np.arange(N)
    qj = (j + 0.5) / N
    kick = np.exp(-1j * k * N / TWO_PI * np.cos(TWO_PI * qj))
    diff = j[:, None] - j[None, :]  # l - j
    # (l - j)^2 mod 2N keeps the phase argument small
    free = np.exp(1j * np.pi * ((diff * diff) % (2 * N)) / N) / math.sqrt(N)
    U = free * kick[None, :]
    err = np.max(np.abs(U.conj().T @ U - np.eye(N)))
    if err > 1e-9:
        raise ArithmeticError(f"rotor propagator is not unitary ({err:.3g})")
    return U


def rotor_operator(n_qubits: int, k: float) -> UnitaryOperator:
    return UnitaryOperator(2, n_qubits, rotor_unitary(2**n_qubits, k))


def epower_sweep(n_qubits: int, k_values: Sequence[float], m_values: Sequence[int],
                 t_max: int, method: str = "exact", rng: np.random.Generator | None = None,
                 samples: int = 500, t_min: int = 1, workers: int = 1) -> list[dict]:
    """Entangling power of the iterates U^t, t = t_min..t_max, for each k and m.

    Each row carries the random-state baseline for its m.
    """
    if method not in ("exact", "mc"):
        raise ValueError("method must be 'exact' or 'mc'")
    if method == "mc" and rng is None:
        raise ValueError("the Monte Carlo method needs a random generator")
    rows = []
    for k in k_values:
        U = rotor_operator(n_qubits, k)
        Ut = U.power(t_min) if t_min > 0 else UnitaryOperator(2, n_qubits, np.eye(2**n_qubits))
        for t in range(t_min, t_max + 1):
            for m in m_values:
                base = lubkin_average(2, n_qubits, m)
                if method == "exact":
                    ep, se = entangling_power_exact(Ut, m), None
                else:
                    ep, se = entangling_power_mc(Ut, m, samples, rng, workers)
                rows.append({"k": float(k), "m": int(m), "t": t, "e_p": ep,
                             "std_error": se, "baseline": base})
            Ut = U @ Ut
    return rows
