"""Pure states of n qudits, reduced density operators and the Q_m measures.

Subsystems are given as collections of 0-based qudit positions.  Basis index
``j = sum_i x_i D^(n-1-i)``, i.e. qudit 0 is the most significant digit.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

NORM_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class StateVector:
    D: int
    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        object.__setattr__(self, "amplitudes", amps)
        if self.D < 2 or self.n < 1:
            raise ValueError(f"bad dimensions D={self.D}, n={self.n}")
        if amps.size != self.D**self.n:
            raise ValueError(f"{amps.size} amplitudes for D^n = {self.D**self.n}")
        norm = np.linalg.norm(amps)
        if abs(norm - 1) > NORM_TOL:
            raise ValueError(f"state is not normalized (|psi| = {norm!r})")

    @classmethod
    def normalized(cls, D: int, n: int, amplitudes) -> StateVector:
        a = np.asarray(amplitudes, dtype=complex).reshape(-1)
        return cls(D, n, a / np.linalg.norm(a))

    @property
    def dim(self) -> int:
        return self.D**self.n

    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape((self.D,) * self.n)

    def __eq__(self, other):
        if not isinstance(other, StateVector):
            return NotImplemented
        return (self.D, self.n) == (other.D, other.n) and np.array_equal(
            self.amplitudes, other.amplitudes)

    def to_json(self) -> dict:
        return {"D": self.D, "n": self.n,
                "re": self.amplitudes.real.tolist(), "im": self.amplitudes.imag.tolist()}

    @classmethod
    def from_json(cls, obj: dict) -> StateVector:
        amps = np.asarray(obj["re"], dtype=float) + 1j * np.asarray(obj["im"], dtype=float)
        return cls(int(obj["D"]), int(obj["n"]), amps)


def save_state(psi: StateVector, path: str | Path) -> None:
    Path(path).write_text(json.dumps(psi.to_json()))


def load_state(path: str | Path) -> StateVector:
    return StateVector.from_json(json.loads(Path(path).read_text()))


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """Reduced state on the qudits ``keep`` (each of dimension ``dims[i]``)."""

    keep: tuple[int, ...]
    dims: tuple[int, ...]
    matrix: np.ndarray

    def purity(self) -> float:
        return float(np.sum(np.abs(self.matrix) ** 2))

    def check(self, tol: float = 1e-10) -> None:
        M = self.matrix
        if np.max(np.abs(M - M.conj().T)) > tol:
            raise ValueError("density operator is not Hermitian")
        if abs(np.trace(M) - 1) > tol:
            raise ValueError("density operator does not have unit trace")
        if np.linalg.eigvalsh(M).min() < -tol:
            raise ValueError("density operator has a negative eigenvalue")


def _subset(S: Iterable[int], n: int) -> tuple[int, ...]:
    S = tuple(sorted(set(int(i) for i in S)))
    if not S:
        raise ValueError("subsystem must be nonempty")
    if S[0] < 0 or S[-1] >= n:
        raise ValueError(f"subsystem {S} out of range for n={n}")
    return S


def _split(amps: np.ndarray, D: int, n: int, S: Sequence[int]) -> np.ndarray:
    """Batch of amplitude arrays (B, D^n) -> matrices (B, D^|S|, D^(n-|S|))."""
    rest = [i for i in range(n) if i not in S]
    t = amps.reshape((amps.shape[0],) + (D,) * n)
    t = t.transpose([0] + [i + 1 for i in S] + [i + 1 for i in rest])
    return t.reshape(amps.shape[0], D ** len(S), D ** len(rest))


def batch_purities(amps: np.ndarray, D: int, n: int, S: Sequence[int]) -> np.ndarray:
    """tr rho_S^2 for each row of ``amps``."""
    M = _split(np.atleast_2d(amps), D, n, S)
    if M.shape[1] <= M.shape[2]:
        G = M @ M.conj().transpose(0, 2, 1)
    else:
        G = M.conj().transpose(0, 2, 1) @ M
    return np.sum(G.real**2 + G.imag**2, axis=(1, 2))


def partial_trace(psi: StateVector, keep: Iterable[int]) -> DensityOperator:
    """rho_S = tr_{S'} |psi><psi| for the qudits in ``keep``."""
    S = _subset(keep, psi.n)
    M = _split(psi.amplitudes[None, :], psi.D, psi.n, S)[0]
    return DensityOperator(S, (psi.D,) * len(S), M @ M.conj().T)


def reduce_operator(A: np.ndarray, D: int, n: int, keep: Iterable[int]) -> np.ndarray:
    """Partial trace tr_{S'} A of an operator on (C^D)^n, keeping qudits S."""
    S = _subset(keep, n)
    rest = [i for i in range(n) if i not in S]
    t = np.asarray(A).reshape((D,) * (2 * n))
    t = t.transpose(list(S) + [n + i for i in S] + rest + [n + i for i in rest])
    k, r = D ** len(S), D ** len(rest)
    return np.einsum("abjj->ab", t.reshape(k, k, r, r))


def purity(psi: StateVector, S: Iterable[int]) -> float:
    return float(batch_purities(psi.amplitudes, psi.D, psi.n, _subset(S, psi.n))[0])


def subsystem_linear_entropy(psi: StateVector, S: Iterable[int]) -> float:
    S = _subset(S, psi.n)
    if len(S) > psi.n - 1:
        raise ValueError("subsystem must leave at least one qudit traced out")
    dmin = psi.D ** min(len(S), psi.n - len(S))
    return dmin / (dmin - 1) * (1 - purity(psi, S))


def _check_m(m: int, n: int) -> None:
    if not 1 <= m <= n // 2:
        raise ValueError(f"m must satisfy 1 <= m <= floor(n/2) = {n // 2}, got {m}")


def subsets(n: int, m: int) -> list[tuple[int, ...]]:
    """All size-m subsets of range(n) in lexicographic order."""
    return list(itertools.combinations(range(n), m))


def qm_from_purity_sum(total: float, D: int, n: int, m: int) -> float:
    """Affine map from sum_{|S|=m} tr rho_S^2 to Q_m."""
    return D**m / (D**m - 1) * (1 - total / math.comb(n, m))


def q_m(psi: StateVector, m: int) -> float:
    """Average normalized linear entropy over all bipartitions into m | n - m qudits."""
    _check_m(m, psi.n)
    total = math.fsum(purity(psi, S) for S in subsets(psi.n, m))
    return qm_from_purity_sum(total, psi.D, psi.n, m)


def batch_q_m(amps: np.ndarray, D: int, n: int, m: int) -> np.ndarray:
    """Q_m for each row of a (B, D^n) amplitude array."""
    _check_m(m, n)
    parts = np.stack([batch_purities(amps, D, n, S) for S in subsets(n, m)])
    total = parts.sum(axis=0)
    return D**m / (D**m - 1) * (1 - total / math.comb(n, m))


def meyer_wallach_q(psi: StateVector) -> float:
    """Meyer-Wallach Q from the projections iota_j(0) psi, iota_j(1) psi."""
    if psi.D != 2:
        raise ValueError("the Meyer-Wallach measure is defined for qubits")
    t = psi.tensor()
    terms = []
    for j in range(psi.n):
        u = np.take(t, 0, axis=j).reshape(-1)
        v = np.take(t, 1, axis=j).reshape(-1)
        terms.append(np.vdot(u, u).real * np.vdot(v, v).real - abs(np.vdot(u, v)) ** 2)
    return 4 / psi.n * math.fsum(terms)


def basis_state(D: int, digits: Sequence[int]) -> StateVector:
    n = len(digits)
    a = np.zeros(D**n, dtype=complex)
    a[int(np.ravel_multi_index(tuple(digits), (D,) * n))] = 1
    return StateVector(D, n, a)


def product_state(factors: Sequence[np.ndarray]) -> StateVector:
    factors = [np.asarray(f, dtype=complex) for f in factors]
    D = factors[0].size
    out = np.ones(1, dtype=complex)
    for f in factors:
        if f.size != D:
            raise ValueError("all factors must have the same dimension")
        out = np.kron(out, f / np.linalg.norm(f))
    return StateVector(D, len(factors), out)


def ghz(D: int, n: int) -> StateVector:
    """(1/sqrt D) sum_j |j>^n."""
    if D < 2 or n < 2:
        raise ValueError("GHZ states need D >= 2 and n >= 2")
    a = np.zeros(D**n, dtype=complex)
    rep = sum(D**k for k in range(n))
    a[np.arange(D) * rep] = 1 / math.sqrt(D)
    return StateVector(D, n, a)


def w_state(n: int) -> StateVector:
    """Equal superposition of the n single-excitation qubit basis states."""
    if n < 2:
        raise ValueError("W states need n >= 2")
    a = np.zeros(2**n, dtype=complex)
    a[2 ** np.arange(n)] = 1 / math.sqrt(n)
    return StateVector(2, n, a)


def q_m_ghz_closed(D: int, n: int, m: int, exact: bool = False):
    _check_m(m, n)
    val = 1 - Fraction(D ** (m - 1) - 1, D**m - 1)
    return val if exact else float(val)


def q_m_w_closed(n: int, m: int, exact: bool = False):
    _check_m(m, n)
    val = Fraction(2 ** (m + 1), 2**m - 1) * Fraction((n - m) * m, n * n)
    return val if exact else float(val)


def lubkin_average(D: int, n: int, m: int, exact: bool = False):
    """Haar average of Q_m over all pure states of n qudits."""
    _check_m(m, n)
    val = 1 - Fraction(D**m + 1, D**n + 1)
    return val if exact else float(val)


def haar_state(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unit vector in C^dim (normalized complex Gaussian)."""
    if dim < 1:
        raise ValueError("dim must be >= 1")
    z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return z / np.linalg.norm(z)


def haar_states(dim: int, count: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal((count, dim)) + 1j * rng.standard_normal((count, dim))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def check_orthonormal(basis: np.ndarray, tol: float = 1e-8) -> np.ndarray:
    basis = np.asarray(basis, dtype=complex)
    if basis.ndim != 2:
        raise ValueError("basis must be a 2-D array of columns")
    gram = basis.conj().T @ basis
    dev = np.max(np.abs(gram - np.eye(basis.shape[1]))) if basis.size else 0.0
    if dev > tol:
        raise ValueError(f"basis columns are not orthonormal (Gram deviation {dev:.3g})")
    return basis


def haar_state_in_subspace(basis_columns: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    B = check_orthonormal(basis_columns)
    return B @ haar_state(B.shape[1], rng)


def haar_states_in_subspace(basis_columns: np.ndarray, count: int,
                            rng: np.random.Generator) -> np.ndarray:
    B = check_orthonormal(basis_columns)
    return haar_states(B.shape[1], count, rng) @ B.T


def random_state(D: int, n: int, rng: np.random.Generator) -> StateVector:
    return StateVector(D, n, haar_state(D**n, rng))
