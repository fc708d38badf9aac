"""Displacement (Weyl) operator basis on n qudits of dimension D.

Multi-qudit labels are pairs of integer vectors ``(mu, nu)``; qudit 1 is the
leftmost Kronecker factor and the most significant digit of a basis index.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .gf4 import Gf4Vec

MAX_DIM = 2**14


class DimensionCapError(ValueError):
    pass


def check_dim(D: int, n: int, cap: int = MAX_DIM) -> int:
    if D < 2:
        raise ValueError(f"local dimension must be >= 2, got {D}")
    if n < 1:
        raise ValueError(f"need at least one qudit, got n={n}")
    N = D**n
    if N > cap:
        raise DimensionCapError(f"D^n = {D}^{n} = {N} exceeds the cap {cap}")
    return N


def weyl_x(D: int) -> np.ndarray:
    """Cyclic shift X|j> = |j+1 mod D>."""
    if D < 2:
        raise ValueError("D must be >= 2")
    return np.roll(np.eye(D, dtype=complex), 1, axis=0)


def weyl_z(D: int) -> np.ndarray:
    """Clock Z|j> = exp(2 pi i j / D)|j>."""
    if D < 2:
        raise ValueError("D must be >= 2")
    return np.diag(np.exp(2j * np.pi * np.arange(D) / D))


def displacement(D: int, mu: int, nu: int) -> np.ndarray:
    """D(mu, nu) = exp(i pi mu nu / D) X^mu Z^nu."""
    if not (0 <= mu < D and 0 <= nu < D):
        raise ValueError(f"labels ({mu}, {nu}) out of range for D={D}")
    X = np.linalg.matrix_power(weyl_x(D), mu)
    Z = np.linalg.matrix_power(weyl_z(D), nu)
    return np.exp(1j * np.pi * mu * nu / D) * (X @ Z)


Label = tuple[int, int]


@dataclass(frozen=True)
class MultiDisplacement:
    D: int
    labels: tuple[Label, ...]

    def __post_init__(self):
        for mu, nu in self.labels:
            if not (0 <= mu < self.D and 0 <= nu < self.D):
                raise ValueError(f"label ({mu}, {nu}) out of range for D={self.D}")

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def weight(self) -> int:
        return md_weight(self.labels)

    @property
    def mu(self) -> tuple[int, ...]:
        return tuple(m for m, _ in self.labels)

    @property
    def nu(self) -> tuple[int, ...]:
        return tuple(v for _, v in self.labels)

    def matrix(self) -> np.ndarray:
        return multi_displacement(self.D, self.labels)


def md_weight(labels: Iterable[Label]) -> int:
    return sum(1 for mu, nu in labels if (mu, nu) != (0, 0))


def multi_displacement(D: int, labels: Sequence[Label]) -> np.ndarray:
    check_dim(D, len(labels))
    out = np.ones((1, 1), dtype=complex)
    for mu, nu in labels:
        out = np.kron(out, displacement(D, mu, nu))
    return out


@lru_cache(maxsize=32)
def _digits(D: int, n: int) -> np.ndarray:
    """Row j holds the base-D digits of j, most significant first."""
    idx = np.arange(D**n)
    return np.stack([(idx // D ** (n - 1 - k)) % D for k in range(n)], axis=1)


@lru_cache(maxsize=32)
def _add_table(D: int, n: int) -> np.ndarray:
    """add[x, y] = index of the digitwise sum x + y mod D."""
    dg = _digits(D, n)
    s = (dg[:, None, :] + dg[None, :, :]) % D
    w = D ** np.arange(n - 1, -1, -1)
    t = s @ w
    t.flags.writeable = False
    return t


@lru_cache(maxsize=32)
def label_weights(D: int, n: int) -> np.ndarray:
    """weights[m, v] for flattened digit vectors m = mu, v = nu."""
    dg = _digits(D, n)
    w = ((dg[:, None, :] != 0) | (dg[None, :, :] != 0)).sum(axis=2)
    w.flags.writeable = False
    return w


@lru_cache(maxsize=32)
def label_phases(D: int, n: int) -> np.ndarray:
    """prod_k exp(i pi mu_k nu_k / D) for flattened (mu, nu)."""
    dg = _digits(D, n)
    return np.exp(1j * np.pi * (dg @ dg.T) / D)


def unflatten_label(D: int, n: int, m: int, v: int) -> tuple[Label, ...]:
    dg = _digits(D, n)
    return tuple((int(a), int(b)) for a, b in zip(dg[m], dg[v]))


def flatten_label(D: int, labels: Sequence[Label]) -> tuple[int, int]:
    m = v = 0
    for mu, nu in labels:
        m = m * D + mu
        v = v * D + nu
    return m, v


def displacement_traces(A: np.ndarray, D: int, n: int) -> np.ndarray:
    """T[m, v] = tr[D(mu, nu) A] for all labels, flattened as in ``flatten_label``.

    Uses that X^mu Z^nu is monomial: for fixed mu the traces over nu form a
    D-ary n-dimensional Fourier transform of one shifted diagonal of A.
    """
    N = check_dim(D, n)
    A = np.asarray(A)
    if A.shape != (N, N):
        raise ValueError(f"operator of shape {A.shape}, expected {(N, N)}")
    add = _add_table(D, n)
    rows = np.arange(N)
    # v_mu[y] = A[y, y + mu]
    diag = A[rows[None, :], add.T]  # diag[mu, y]
    shape = (N,) + (D,) * n
    f = np.fft.ifftn(diag.reshape(shape), axes=tuple(range(1, n + 1))).reshape(N, N) * N
    return label_phases(D, n) * f


def expand_operator(A: np.ndarray, D: int, n: int, tol: float | None = None
                    ) -> dict[tuple[Label, ...], complex]:
    """Coefficients c = D^-n tr[D(mu,nu)^dag A] keyed by per-qudit labels.

    With ``tol`` set, coefficients of modulus <= tol are omitted.
    """
    N = D**n
    # tr[Dg^dag A] = conj(tr[Dg A^dag])
    coeffs = np.conj(displacement_traces(np.conj(np.asarray(A)).T, D, n)) / N
    out = {}
    for m, v in itertools.product(range(N), range(N)):
        c = complex(coeffs[m, v])
        if tol is None or abs(c) > tol:
            out[unflatten_label(D, n, m, v)] = c
    return out


def reconstruct(coeffs: dict[tuple[Label, ...], complex], D: int, n: int) -> np.ndarray:
    N = check_dim(D, n)
    out = np.zeros((N, N), dtype=complex)
    for labels, c in coeffs.items():
        out += c * multi_displacement(D, labels)
    return out


def phi_map(x: Gf4Vec, D: int = 2) -> MultiDisplacement:
    """GF(4)^n -> qubit displacement labels: w -> X, W -> Z, 1 -> iXZ = Y."""
    if D != 2:
        raise ValueError("the GF(4) correspondence is defined for qubits only")
    return MultiDisplacement(2, tuple(x.labels()))


def apply_displacement(labels: Sequence[Label], D: int, psi: np.ndarray) -> np.ndarray:
    """D(mu, nu) applied to the leading axis of ``psi`` without forming the matrix."""
    n = len(labels)
    N = check_dim(D, n)
    psi = np.asarray(psi)
    m, v = flatten_label(D, labels)
    dg = _digits(D, n)
    phase = np.exp(1j * np.pi * int(dg[m] @ dg[v]) / D) * np.exp(2j * np.pi * (dg @ dg[v]) / D)
    out = np.empty(psi.shape, dtype=complex)
    # X^mu sends |x> to |x + mu>
    target = ((dg + dg[m]) % D) @ (D ** np.arange(n - 1, -1, -1))
    scaled = psi * phase.reshape((N,) + (1,) * (psi.ndim - 1))
    out[target] = scaled
    return out
