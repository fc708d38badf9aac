"""Multipartite entangling power of unitaries on (C^D)^n.

The exact route expands the product of symmetrizers over sites into 2^n swap
patterns A.  Each pattern contributes tr[(M M^dag)^2], where M is U viewed as
a matrix from (outputs in S, inputs in A) to everything else, so no operator
on the doubled space is ever formed.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .states import _check_m, _subset, batch_q_m, haar_states, lubkin_average, subsets

EXACT_MAX_DIM = 2**20
MC_CHUNK = 2048


@dataclass(frozen=True, eq=False)
class UnitaryOperator:
    D: int
    n: int
    matrix: np.ndarray

    def __post_init__(self):
        U = np.asarray(self.matrix, dtype=complex)
        object.__setattr__(self, "matrix", U)
        N = self.D**self.n
        if U.shape != (N, N):
            raise ValueError(f"matrix of shape {U.shape} for D^n = {N}")
        err = np.max(np.abs(U.conj().T @ U - np.eye(N)))
        if err > 1e-9:
            raise ValueError(f"matrix is not unitary (max |U^dag U - I| = {err:.3g})")

    @classmethod
    def qubits(cls, matrix) -> UnitaryOperator:
        N = np.asarray(matrix).shape[0]
        n = N.bit_length() - 1
        if 2**n != N:
            raise ValueError(f"dimension {N} is not a power of two")
        return cls(2, n, matrix)

    def __matmul__(self, other: UnitaryOperator) -> UnitaryOperator:
        return UnitaryOperator(self.D, self.n, self.matrix @ other.matrix)

    def power(self, t: int) -> UnitaryOperator:
        return UnitaryOperator(self.D, self.n, np.linalg.matrix_power(self.matrix, t))


CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
CZ = np.diag([1, 1, 1, -1]).astype(complex)
SWAP = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary: QR of a complex Ginibre matrix with R's phases removed."""
    if dim < 1:
        raise ValueError("dim must be >= 1")
    Z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / math.sqrt(2)
    Q, R = np.linalg.qr(Z)
    d = np.diag(R)
    return Q * (d / np.abs(d))


def random_local_unitary(D: int, n: int, rng: np.random.Generator) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for _ in range(n):
        out = np.kron(out, haar_unitary(D, rng))
    return out


def _check_exact(U: UnitaryOperator) -> None:
    if U.D ** (2 * U.n) > EXACT_MAX_DIM:
        raise ValueError(f"exact entangling power needs D^(2n) <= {EXACT_MAX_DIM}")


def _operator_purity(t: np.ndarray, rows: list[int], D: int) -> float:
    cols = [a for a in range(t.ndim) if a not in rows]
    M = t.transpose(rows + cols).reshape(D ** len(rows), D ** len(cols))
    G = M @ M.conj().T if M.shape[0] <= M.shape[1] else M.conj().T @ M
    return float(np.sum(G.real**2 + G.imag**2))


def subset_average_purity(U: UnitaryOperator, S: Iterable[int]) -> float:
    """Average of tr rho_S^2 over U applied to Haar-random product states."""
    _check_exact(U)
    D, n = U.D, U.n
    S = list(_subset(S, n))
    t = U.matrix.reshape((D,) * (2 * n))
    terms = []
    for r in range(n + 1):
        for A in itertools.combinations(range(n), r):
            terms.append(_operator_purity(t, S + [n + a for a in A], D))
    return math.fsum(terms) / (D * (D + 1)) ** n


def entangling_power_exact(U: UnitaryOperator, m: int) -> float:
    _check_m(m, U.n)
    total = math.fsum(subset_average_purity(U, S) for S in subsets(U.n, m))
    D = U.D
    return D**m / (D**m - 1) * (1 - total / math.comb(U.n, m))


def haar_product_states(D: int, n: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """(count, D^n) array of products of independent single-qudit Haar states."""
    out = np.ones((count, 1), dtype=complex)
    for _ in range(n):
        f = haar_states(D, count, rng)
        out = (out[:, :, None] * f[:, None, :]).reshape(count, -1)
    return out


def sample_qm(U: UnitaryOperator, m: int, samples: int, rng: np.random.Generator,
              workers: int = 1) -> np.ndarray:
    """Q_m of U applied to ``samples`` Haar product states.

    Samples are drawn in fixed-size chunks, each with its own child generator,
    so the result depends only on the seed and not on ``workers``.
    """
    _check_m(m, U.n)
    sizes = [MC_CHUNK] * (samples // MC_CHUNK)
    if samples % MC_CHUNK:
        sizes.append(samples % MC_CHUNK)
    children = rng.spawn(len(sizes))
    UT = U.matrix.T

    def run(job):
        size, child = job
        psi = haar_product_states(U.D, U.n, size, child) @ UT
        return batch_q_m(psi, U.D, U.n, m)

    jobs = list(zip(sizes, children))
    if workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, jobs))
    else:
        parts = [run(j) for j in jobs]
    return np.concatenate(parts)


def entangling_power_mc(U: UnitaryOperator, m: int, samples: int, rng: np.random.Generator,
                        workers: int = 1) -> tuple[float, float]:
    """Monte Carlo estimate of the entangling power: (mean, standard error)."""
    if samples < 2:
        raise ValueError("need at least 2 samples")
    q = sample_qm(U, m, samples, rng, workers)
    return float(q.mean()), float(q.std(ddof=1) / math.sqrt(samples))


def unitary_average_closed(D: int, n: int, m: int, exact: bool = False):
    """Haar average of the entangling power over U(D^n); equals the random-state average."""
    return lubkin_average(D, n, m, exact=exact)
