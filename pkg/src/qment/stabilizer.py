"""Qubit stabilizer groups, code projectors and stabilized states from GF(4) codes."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .error_basis import MultiDisplacement, apply_displacement, check_dim, displacement, phi_map
from .gf4 import AdditiveCode
from .states import StateVector

PROJECTOR_MAX_DIM = 2**12
_PHASES = (1, 1j, -1, -1j)


class NotSelfOrthogonalError(ValueError):
    def __init__(self, code: AdditiveCode, pair: tuple[int, int]):
        i, j = pair
        g = code.generators
        super().__init__(
            f"generators {i} ({g[i]}) and {j} ({g[j]}) have nonzero trace inner product")
        self.pair = pair


def hermitizing_phase(op: MultiDisplacement) -> complex:
    """Phase c in {1, i} such that c * op is Hermitian (c and -c both work)."""
    total = 1
    for mu, nu in op.labels:
        M = displacement(op.D, mu, nu)
        p = next((p for p in _PHASES if np.allclose(p * M, (p * M).conj().T, atol=1e-12)), None)
        if p is None:
            raise ValueError(f"no phase makes D({mu},{nu}) Hermitian")
        total *= p
    total = complex(np.round(total))
    return total if total in (1, 1j) else -total


@dataclass(frozen=True)
class StabilizerGroup:
    n: int
    generators: tuple[MultiDisplacement, ...]
    phases: tuple[complex, ...]
    signs: tuple[int, ...]

    @property
    def order(self) -> int:
        return 2 ** len(self.generators)

    def apply(self, i: int, psi: np.ndarray) -> np.ndarray:
        """Hermitized generator i (without its sign) applied to ``psi``."""
        return self.phases[i] * apply_displacement(self.generators[i].labels, 2, psi)

    def generator_matrix(self, i: int) -> np.ndarray:
        return self.phases[i] * self.generators[i].matrix()

    def with_signs(self, signs: Sequence[int]) -> StabilizerGroup:
        return StabilizerGroup(self.n, self.generators, self.phases, _check_signs(signs, self))


def _check_signs(signs, group_or_len) -> tuple[int, ...]:
    k = len(group_or_len.generators) if isinstance(group_or_len, StabilizerGroup) else group_or_len
    signs = tuple(int(s) for s in signs)
    if len(signs) != k or any(s not in (1, -1) for s in signs):
        raise ValueError(f"need {k} signs, each +1 or -1")
    return signs


def stabilizer_from_code(code: AdditiveCode, signs: Sequence[int] | None = None) -> StabilizerGroup:
    bad = code.orthogonality_violation()
    if bad is not None:
        raise NotSelfOrthogonalError(code, bad)
    gens = tuple(phi_map(g) for g in code.generators)
    phases = tuple(hermitizing_phase(g) for g in gens)
    signs = _check_signs(signs if signs is not None else [1] * len(gens), len(gens))
    return StabilizerGroup(code.n, gens, phases, signs)


def _project(group: StabilizerGroup, X: np.ndarray) -> np.ndarray:
    for i, s in enumerate(group.signs):
        X = (X + s * group.apply(i, X)) / 2
    return X


def code_projector(group: StabilizerGroup) -> np.ndarray:
    """Product of (I + s_i g_i) / 2 over the generators."""
    N = check_dim(2, group.n, PROJECTOR_MAX_DIM)
    P = _project(group, np.eye(N, dtype=complex))
    K = 2 ** (group.n - len(group.generators))
    if np.max(np.abs(P @ P - P)) > 1e-10 or abs(np.trace(P) - K) > 1e-8:
        raise ArithmeticError("stabilizer projector is not idempotent or has the wrong rank")
    return P


def group_elements(group: StabilizerGroup):
    """Yield (eigenvalue, matrix) for every element of the stabilizer group."""
    mats = [group.generator_matrix(i) for i in range(len(group.generators))]
    N = 2**group.n
    for bits in itertools.product((0, 1), repeat=len(mats)):
        E = np.eye(N, dtype=complex)
        lam = 1
        for b, M, s in zip(bits, mats, group.signs):
            if b:
                E = E @ M
                lam *= s
        yield lam, E


def projector_by_group_average(group: StabilizerGroup) -> np.ndarray:
    """(1/|S|) sum_E lambda(E)^-1 E, summed over all group elements."""
    check_dim(2, group.n, PROJECTOR_MAX_DIM)
    total = sum(E / lam for lam, E in group_elements(group))
    return total / group.order


def stabilized_state(group: StabilizerGroup) -> StateVector:
    """The unique joint eigenvector of a maximal (n-generator) stabilizer group."""
    if len(group.generators) != group.n:
        raise ValueError(
            f"{len(group.generators)} generators on {group.n} qubits: code space has rank "
            f"{2 ** (group.n - len(group.generators))}, not 1")
    N = check_dim(2, group.n)
    for j in range(N):
        e = np.zeros(N, dtype=complex)
        e[j] = 1
        v = _project(group, e)
        norm = np.linalg.norm(v)
        if norm > 1e-6:
            v /= norm
            first = v[np.flatnonzero(np.abs(v) > 1e-10)[0]]
            v *= abs(first) / first
            return StateVector(2, group.n, v)
    raise ArithmeticError("stabilizer group projects every basis state to zero")
