"""Quantum weight enumerators of code projectors and what they imply for Q_m.

Two independent routes are provided: the Shor-Laflamme enumerators (A, B),
computed by exhaustive sums over displacement labels, and the Rains unitary
enumerators (A', B'), computed from partial traces.  ``primed_from_unprimed``
links the two.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Sequence

import numpy as np

from .error_basis import _add_table, check_dim, displacement_traces, label_weights
from .states import _check_m, reduce_operator, subsets

MAX_LABELS = 2**14
TOL = 1e-9


def _is_exact(seq) -> bool:
    return all(isinstance(a, (int, Rational)) and not isinstance(a, bool) for a in seq)


def check_projector(P: np.ndarray, D: int, n: int, K: int | None = None,
                    tol: float = 1e-8) -> int:
    """Validate a projector on (C^D)^n; returns its rank K."""
    N = check_dim(D, n)
    P = np.asarray(P)
    if P.shape != (N, N):
        raise ValueError(f"projector of shape {P.shape}, expected {(N, N)}")
    if np.max(np.abs(P @ P - P)) > tol or np.max(np.abs(P - P.conj().T)) > tol:
        raise ValueError("operator is not an orthogonal projector")
    rank = int(round(np.trace(P).real))
    if K is not None and K != rank:
        raise ValueError(f"tr P = {rank} but K = {K}")
    if rank < 1:
        raise ValueError("projector has rank 0")
    return rank


def _check_label_cap(D: int, n: int) -> None:
    if D ** (2 * n) > MAX_LABELS:
        raise ValueError(
            f"exhaustive label sums need D^(2n) <= {MAX_LABELS}; use rains_unitary instead")


def shor_laflamme(P: np.ndarray, K: int, D: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    """A_i = K^-2 sum_{wt=i} |tr[E P]|^2, B_i = K^-1 sum_{wt=i} tr[E P E^dag P]."""
    _check_label_cap(D, n)
    check_projector(P, D, n, K)
    P = np.asarray(P, dtype=complex)
    N = D**n
    wts = label_weights(D, n).ravel()

    T = displacement_traces(P, D, n)
    A = np.bincount(wts, weights=np.abs(T.ravel()) ** 2, minlength=n + 1) / K**2

    # tr[E P E^dag P] for E = D(mu, nu): group P[r, c] P[c+mu, r+mu] by r - c,
    # then Fourier transform over the difference to get every nu at once.
    add = _add_table(D, n)
    cols = np.arange(N)
    Bmat = np.empty((N, N))
    for mu in range(N):
        shift = add[:, mu]
        F = P * P[np.ix_(shift, shift)].T
        G = F[add, cols[:, None]].sum(axis=0)
        Bmat[mu] = (np.fft.ifftn(G.reshape((D,) * n)).ravel() * N).real
    B = np.bincount(wts, weights=Bmat.ravel(), minlength=n + 1) / K
    return A, B


def shor_laflamme_naive(P: np.ndarray, K: int, D: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Dense-matrix reference for ``shor_laflamme`` (small n only)."""
    import itertools

    from .error_basis import multi_displacement

    A = np.zeros(n + 1)
    B = np.zeros(n + 1)
    single = [(a, b) for a in range(D) for b in range(D)]
    for labels in itertools.product(single, repeat=n):
        E = multi_displacement(D, labels)
        w = sum(1 for lab in labels if lab != (0, 0))
        A[w] += abs(np.trace(E @ P)) ** 2
        B[w] += np.trace(E @ P @ E.conj().T @ P).real
    return A / K**2, B / K


def _frob2(M: np.ndarray) -> float:
    return float(np.sum(M.real**2 + M.imag**2))


def rains_unitary(P: np.ndarray, K: int, D: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    """A'_i = K^-2 sum_{|S|=i} tr[(tr_{S'} P)^2], B'_i = K^-1 sum_{|S|=i} tr[(tr_S P)^2]."""
    check_projector(P, D, n, K)
    Ap = np.zeros(n + 1)
    Bp = np.zeros(n + 1)
    Ap[0] = Bp[n] = float(K) ** 2
    Bp[0] = Ap[n] = _frob2(P)
    full = set(range(n))
    for i in range(1, n):
        sa, sb = [], []
        for S in subsets(n, i):
            sa.append(_frob2(reduce_operator(P, D, n, S)))
            sb.append(_frob2(reduce_operator(P, D, n, full - set(S))))
        Ap[i] = math.fsum(sa)
        Bp[i] = math.fsum(sb)
    return Ap / K**2, Bp / K


def primed_from_unprimed(A: Sequence, D: int, n: int) -> list:
    """A'_m = D^-m sum_{i<=m} C(n-i, m-i) A_i (exact when A is rational)."""
    if len(A) != n + 1:
        raise ValueError(f"need n+1 = {n + 1} enumerator entries, got {len(A)}")
    if _is_exact(A):
        return [Fraction(sum(math.comb(n - i, m - i) * A[i] for i in range(m + 1)), D**m)
                for m in range(n + 1)]
    A = np.asarray(A, dtype=float)
    return [math.fsum(math.comb(n - i, m - i) * A[i] for i in range(m + 1)) / D**m
            for m in range(n + 1)]


def qm_from_weights(A: Sequence, D: int, n: int, m: int, tol: float = 1e-12):
    """Q_m of a pure state (K = 1 code) from its weight distribution.

    Both the primed-enumerator and the direct weight expression are evaluated
    and must agree.  Rational input gives a ``Fraction``.
    """
    _check_m(m, n)
    if len(A) != n + 1:
        raise ValueError(f"need n+1 = {n + 1} weights, got {len(A)}")
    if abs(A[0] - 1) > tol:
        raise ValueError(f"A_0 = {A[0]} but a normalized enumerator has A_0 = 1")
    exact = _is_exact(A)
    one = Fraction(1) if exact else 1.0
    Dm = D**m
    Apm = primed_from_unprimed(A, D, n)[m]
    via_primed = one * Dm / (Dm - 1) * (1 - Fraction(math.factorial(m) * math.factorial(n - m),
                                                     math.factorial(n)) * Apm)
    terms = [Fraction(math.comb(n - i, m - i), math.comb(n, m)) * A[i] for i in range(1, m + 1)]
    direct = one - (sum(terms) if exact else math.fsum(float(t) for t in terms)) / (Dm - 1)
    if exact:
        if via_primed != direct:
            raise ArithmeticError(f"weight formulas disagree: {via_primed} != {direct}")
        return direct
    if abs(via_primed - direct) > tol:
        raise ArithmeticError(f"weight formulas disagree: {via_primed} != {direct}")
    return float(direct)


def code_average_qm(A: Sequence, B: Sequence, K: int, D: int, n: int, m: int):
    """Average Q_m over Haar-random states of a K-dimensional code."""
    _check_m(m, n)
    exact = _is_exact(A) and _is_exact(B)
    terms = [Fraction(math.comb(n - i, m - i), math.comb(n, m)) * (K * A[i] + B[i])
             if exact else math.comb(n - i, m - i) / math.comb(n, m) * (K * A[i] + B[i])
             for i in range(1, m + 1)]
    total = sum(terms) if exact else math.fsum(terms)
    if exact:
        return 1 - Fraction(1, (D**m - 1) * (K + 1)) * total
    return 1 - total / ((D**m - 1) * (K + 1))


def code_average_qm_primed(Ap: Sequence, Bp: Sequence, K: int, D: int, n: int, m: int) -> float:
    """Same average expressed through the Rains enumerators A'_m, B'_m."""
    _check_m(m, n)
    c = math.factorial(m) * math.factorial(n - m) / math.factorial(n)
    return D**m / (D**m - 1) * (1 - c / (K + 1) * (K * Ap[m] + Bp[m]))


def subspace_average_qm(P: np.ndarray, D: int, n: int, m: int) -> float:
    """Exact Haar average of Q_m over the range of the projector P."""
    _check_m(m, n)
    K = check_projector(P, D, n)
    full = set(range(n))
    acc = []
    for S in subsets(n, m):
        acc.append(_frob2(reduce_operator(P, D, n, S)))
        acc.append(_frob2(reduce_operator(P, D, n, full - set(S))))
    c = math.factorial(m) * math.factorial(n - m) / (math.factorial(n) * K * (K + 1))
    return D**m / (D**m - 1) * (1 - c * math.fsum(acc))


@dataclass
class EnumeratorSet:
    n: int
    D: int
    K: int
    A: np.ndarray
    B: np.ndarray
    A_primed: np.ndarray
    B_primed: np.ndarray

    def check(self, tol: float = TOL) -> list[str]:
        """Return the list of violated enumerator identities (empty when consistent)."""
        bad = []
        for name in ("A", "B", "A_primed", "B_primed"):
            if abs(getattr(self, name)[0] - 1) > tol:
                bad.append(f"{name}_0 != 1")
        if np.any(self.A < -tol) or np.any(self.B - self.A < -tol):
            bad.append("B_i >= A_i >= 0 violated")
        if np.any(self.A_primed < -tol) or np.any(self.B_primed - self.A_primed < -tol):
            bad.append("B'_i >= A'_i >= 0 violated")
        if np.max(np.abs(self.K * self.A_primed - self.B_primed[::-1])) > tol:
            bad.append("K A'_i != B'_(n-i)")
        if self.K == 1 and np.max(np.abs(self.A - self.B)) > tol:
            bad.append("B != A for K = 1")
        return bad

    def report(self) -> dict:
        d, pure = min_distance_and_purity(self)
        Q = [code_average_qm(self.A, self.B, self.K, self.D, self.n, m)
             for m in range(1, self.n // 2 + 1)]
        return {"n": self.n, "D": self.D, "K": self.K,
                "A": [float(x) for x in self.A], "B": [float(x) for x in self.B],
                "A_primed": [float(x) for x in self.A_primed],
                "B_primed": [float(x) for x in self.B_primed],
                "d": d, "pure": pure, "Q": [float(q) for q in Q]}


def enumerate_projector(P: np.ndarray, D: int, n: int, K: int | None = None) -> EnumeratorSet:
    K = check_projector(P, D, n, K)
    A, B = shor_laflamme(P, K, D, n)
    Ap, Bp = rains_unitary(P, K, D, n)
    return EnumeratorSet(n, D, K, A, B, Ap, Bp)


def min_distance_and_purity(enums: EnumeratorSet, tol: float = TOL) -> tuple[int, bool]:
    """Minimum distance and purity read off the Shor-Laflamme enumerators.

    K > 1: d is the largest value with B_i = A_i for all 0 < i < d.  K = 1:
    codes are pure by convention, so d is the first positive weight with
    A_i != 0 (n + 1 if none).  d = 1 means nothing nontrivial is detected and
    is reported as impure.
    """
    A, B, n = np.asarray(enums.A), np.asarray(enums.B), enums.n
    if enums.K == 1:
        nz = [i for i in range(1, n + 1) if abs(A[i]) > tol]
        d = nz[0] if nz else n + 1
        return d, d > 1
    d = 1
    while d <= n and abs(B[d] - A[d]) <= tol:
        d += 1
    pure = d > 1 and all(abs(A[i]) <= tol for i in range(1, d))
    return d, pure


@dataclass(frozen=True)
class MdsWeights:
    n: int
    D: int
    d: int
    A: tuple
    feasible: bool

    def as_ints(self) -> tuple[int, ...]:
        if not all(a.denominator == 1 for a in self.A):
            raise ValueError("weight distribution is not integral")
        return tuple(int(a) for a in self.A)


def mds_weight_distribution(n: int, D: int) -> MdsWeights:
    """Weight distribution forced on a pure ((n, 1, floor(n/2)+1))_D code.

    ``feasible`` is False when some A_i is negative, i.e. no such code exists.
    """
    if n < 2 or D < 2:
        raise ValueError("need n >= 2 and D >= 2")
    d = n // 2 + 1
    A = [Fraction(0)] * (n + 1)
    A[0] = Fraction(1)
    for i in range(d, n + 1):
        s = sum(Fraction((-1) ** (i - j) * (Fraction(D) ** (2 * j - n) - 1),
                         math.factorial(j) * math.factorial(i - j)) for j in range(d, i + 1))
        A[i] = Fraction(math.factorial(n), math.factorial(n - i)) * s
    return MdsWeights(n, D, d, tuple(A), all(a >= 0 for a in A))


def mds_existence_bound(D: int, parity: str) -> int:
    """Largest n (of the given parity) allowed for a pure ((n,1,floor(n/2)+1))_D code."""
    if D < 2:
        raise ValueError("D must be >= 2")
    if parity == "even":
        return 2 * (D * D - 1)
    if parity == "odd":
        return 2 * D * (D + 1) - 1
    raise ValueError("parity must be 'even' or 'odd'")
