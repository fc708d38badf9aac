"""Slow, independent reference implementations used to validate the library.

Nothing here imports qment; every quantity is built from dense matrices or
brute-force enumeration.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np

# Table 1 rows: (n, d, A, printed Q_1..Q_floor(n/2)) for extremal/optimal codes.
TABLE1 = [
    (2, 2, (1, 0, 3), ("1",)),
    (3, 2, (1, 0, 3, 4), ("1",)),
    (4, 2, (1, 0, 6, 0, 9), ("1", "2/3")),
    (4, 2, (1, 0, 2, 8, 5), ("1", "8/9")),
    (5, 3, (1, 0, 0, 10, 15, 6), ("1", "1")),
    (6, 4, (1, 0, 0, 0, 45, 0, 18), ("1", "1", "1")),
    (7, 3, (1, 0, 0, 7, 21, 42, 42, 15), ("1", "1", "34/35")),
    (7, 3, (1, 0, 0, 3, 29, 42, 34, 19), ("1", "1", "242/245")),
    (8, 4, (1, 0, 0, 0, 42, 0, 168, 0, 45), ("1", "1", "1", "24/25")),
    (8, 4, (1, 0, 0, 0, 26, 64, 72, 64, 29), ("1", "1", "1", "512/525")),
    (9, 4, (1, 0, 0, 0, 26, 48, 136, 160, 93, 48), ("1", "1", "1", "932/945")),
    (9, 4, (1, 0, 0, 0, 18, 72, 120, 144, 117, 40), ("1", "1", "1", "104/105")),
    (10, 4, (1, 0, 0, 0, 30, 0, 300, 0, 585, 0, 108), ("1", "1", "1", "104/105", "212/217")),
    (11, 5, (1, 0, 0, 0, 0, 66, 198, 330, 495, 550, 330, 78), ("1", "1", "1", "1", "216/217")),
    (12, 6, (1, 0, 0, 0, 0, 0, 396, 0, 1485, 0, 1980, 0, 234), ("1",) * 5 + ("146/147",)),
    (13, 5, (1, 0, 0, 0, 0, 15, 236, 356, 1197, 1530, 2012, 1956, 650, 239),
     ("1",) * 4 + ("13294/13299", "26938/27027")),
]

TABLE1_BY_N = {2: TABLE1[0], 3: TABLE1[1], 5: TABLE1[4], 6: TABLE1[5]}


# ---- GF(4) as polynomials over GF(2) modulo x^2 + x + 1, w = x ----------

def bits_to_poly(a: int, b: int) -> tuple[int, int]:
    """a w + b w^2 with w^2 = w + 1  ->  (constant, linear) coefficients."""
    return (b, a ^ b)


def poly_to_bits(c0: int, c1: int) -> tuple[int, int]:
    # c0 + c1 w = a w + b (w + 1)  ->  b = c0, a = c1 + c0
    return (c1 ^ c0, c0)


def poly_mul(x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
    a0, a1 = x
    b0, b1 = y
    c0 = a0 & b0
    c1 = (a0 & b1) ^ (a1 & b0)
    c2 = a1 & b1
    # x^2 = x + 1
    return (c0 ^ c2, c1 ^ c2)


def poly_trace(x: tuple[int, int]) -> int:
    # Tr(x) = x + x^2
    s = poly_mul(x, x)
    t = (x[0] ^ s[0], x[1] ^ s[1])
    assert t[1] == 0
    return t[0]


def poly_conj(x: tuple[int, int]) -> tuple[int, int]:
    return poly_mul(x, x)


def trace_product(x, y) -> int:
    """sum_i Tr(x_i conj(y_i)) over GF(2) on bit-pair vectors."""
    total = 0
    for (a, b), (c, d) in zip(x, y):
        total ^= poly_trace(poly_mul(bits_to_poly(a, b), poly_conj(bits_to_poly(c, d))))
    return total


def span_gf2(rows: list[tuple]) -> set[tuple]:
    """All GF(2) combinations of bit-pair vectors."""
    out = set()
    n = len(rows[0]) if rows else 0
    for coeffs in itertools.product((0, 1), repeat=len(rows)):
        v = [(0, 0)] * n
        for c, r in zip(coeffs, rows):
            if c:
                v = [(a ^ x, b ^ y) for (a, b), (x, y) in zip(v, r)]
        out.add(tuple(v))
    return out


def weight(v) -> int:
    return sum(1 for a, b in v if a or b)


# ---- dense qubit Paulis ---------------------------------------------------

_I = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI = {(0, 0): _I, (1, 0): _X, (0, 1): _Z, (1, 1): _Y}


def pauli(labels) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for lab in labels:
        out = np.kron(out, PAULI[tuple(lab)])
    return out


def dense_displacement(D: int, mu: int, nu: int) -> np.ndarray:
    """exp(i pi mu nu / D) X^mu Z^nu from explicit matrix elements."""
    M = np.zeros((D, D), dtype=complex)
    w = np.exp(2j * np.pi / D)
    for j in range(D):
        M[(j + mu) % D, j] = w ** (nu * j)
    return np.exp(1j * np.pi * mu * nu / D) * M


def all_qudit_labels(D: int, n: int):
    return itertools.product(itertools.product(range(D), range(D)), repeat=n)


def dense_multi(D: int, labels) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for mu, nu in labels:
        out = np.kron(out, dense_displacement(D, mu, nu))
    return out


# ---- dense states and partial traces ------------------------------------

def reduced_density(psi: np.ndarray, D: int, n: int, S) -> np.ndarray:
    """rho_S by summing outer products over basis states of the complement."""
    S = sorted(S)
    R = [i for i in range(n) if i not in S]
    t = np.asarray(psi).reshape((D,) * n)
    k = D ** len(S)
    rho = np.zeros((k, k), dtype=complex)
    for env in itertools.product(range(D), repeat=len(R)):
        idx = [slice(None)] * n
        for axis, val in zip(R, env):
            idx[axis] = val
        v = t[tuple(idx)].reshape(-1)
        rho += np.outer(v, v.conj())
    return rho


def q_m_dense(psi: np.ndarray, D: int, n: int, m: int) -> float:
    subs = list(itertools.combinations(range(n), m))
    pur = [np.trace(reduced_density(psi, D, n, S) @ reduced_density(psi, D, n, S)).real
           for S in subs]
    return D**m / (D**m - 1) * (1 - sum(pur) / len(subs))


def brennen_q(psi: np.ndarray, n: int) -> float:
    """Q_1 for qubits as 2 - (2/n) sum_k tr rho_k^2."""
    return 2 - 2 / n * sum(np.trace(np.linalg.matrix_power(reduced_density(psi, 2, n, [k]), 2)).real
                          for k in range(n))


def partial_trace_op(A: np.ndarray, D: int, n: int, keep) -> np.ndarray:
    """tr over the complement of ``keep`` of an operator, by explicit index loops."""
    keep = sorted(keep)
    R = [i for i in range(n) if i not in keep]
    k = D ** len(keep)
    out = np.zeros((k, k), dtype=complex)
    dims = (D,) * n
    for a, b in itertools.product(range(k), repeat=2):
        da = np.unravel_index(a, (D,) * len(keep)) if keep else ()
        db = np.unravel_index(b, (D,) * len(keep)) if keep else ()
        s = 0
        for env in itertools.product(range(D), repeat=len(R)):
            ra, rb = [0] * n, [0] * n
            for ax, v in zip(keep, da):
                ra[ax] = v
            for ax, v in zip(keep, db):
                rb[ax] = v
            for ax, v in zip(R, env):
                ra[ax] = rb[ax] = v
            s += A[np.ravel_multi_index(ra, dims), np.ravel_multi_index(rb, dims)]
        out[a, b] = s
    return out


# ---- enumerators by brute force ------------------------------------------

def shor_laflamme_dense(P: np.ndarray, D: int, n: int):
    K = np.trace(P).real
    A = np.zeros(n + 1)
    B = np.zeros(n + 1)
    for labels in all_qudit_labels(D, n):
        E = dense_multi(D, labels)
        w = sum(1 for lab in labels if lab != (0, 0))
        A[w] += abs(np.trace(E @ P)) ** 2
        B[w] += np.trace(E @ P @ E.conj().T @ P).real
    return A / K**2, B / K


def random_projector(dim: int, K: int, rng: np.random.Generator) -> np.ndarray:
    Z = rng.standard_normal((dim, K)) + 1j * rng.standard_normal((dim, K))
    Q, _ = np.linalg.qr(Z)
    return Q @ Q.conj().T


def random_isometry(dim: int, K: int, rng: np.random.Generator) -> np.ndarray:
    Z = rng.standard_normal((dim, K)) + 1j * rng.standard_normal((dim, K))
    Q, _ = np.linalg.qr(Z)
    return Q


# ---- entangling power through the doubled-space swap operator -----------

def swap_pair(D: int, n: int, pairs) -> np.ndarray:
    """Permutation on (C^D)^(2n) exchanging site i with site n + i for i in ``pairs``."""
    N = D ** (2 * n)
    perm = list(range(2 * n))
    for i in pairs:
        perm[i], perm[n + i] = perm[n + i], perm[i]
    M = np.zeros((N, N))
    dims = (D,) * (2 * n)
    for idx in itertools.product(range(D), repeat=2 * n):
        out = [idx[perm[a]] for a in range(2 * n)]
        M[np.ravel_multi_index(out, dims), np.ravel_multi_index(idx, dims)] = 1
    return M


def entangling_power_dense(U: np.ndarray, D: int, n: int, m: int) -> float:
    """D^m/(D^m-1) (1 - C(n,m)^-1 sum_S tr[U^(x2) Omega U^dag(x2) T_S])."""
    Omega = np.eye(D ** (2 * n))
    for i in range(n):
        Omega = Omega @ (np.eye(D ** (2 * n)) + swap_pair(D, n, [i]))
    Omega /= (D * (D + 1)) ** n
    UU = np.kron(U, U)
    rho2 = UU @ Omega @ UU.conj().T
    subs = list(itertools.combinations(range(n), m))
    total = sum(np.trace(rho2 @ swap_pair(D, n, S)).real for S in subs)
    return D**m / (D**m - 1) * (1 - total / len(subs))


def lubkin(D: int, n: int, m: int) -> Fraction:
    return 1 - Fraction(D**m + 1, D**n + 1)


def standard_map_loop(q: float, p: float, k: float) -> tuple[float, float]:
    p2 = math.fmod(p + k / (2 * math.pi) * math.sin(2 * math.pi * q), 1.0) % 1.0
    return math.fmod(q + p2, 1.0) % 1.0, p2
