"""Additive codes over GF(4).

Field elements are stored as bit pairs ``(a, b)`` meaning ``a*w + b*W`` where
``w`` is a primitive element and ``W = w**2 = 1 + w`` its conjugate.  With
this encoding addition is XOR and a vector over GF(4)^n splits into two
n-bit masks ``mu`` (the ``w`` parts) and ``nu`` (the ``W`` parts), which are
exactly the X and Z labels of the associated Pauli operator.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

ENUMERATION_CAP = 2**24


class CodeTooLargeError(ValueError):
    """Raised when exhaustive codeword enumeration would exceed the cap."""


class Gf4(enum.IntEnum):
    ZERO = 0
    OMEGA = 1
    OMEGA_BAR = 2
    ONE = 3

    @property
    def bits(self) -> tuple[int, int]:
        return self.value & 1, self.value >> 1

    @property
    def symbol(self) -> str:
        return _SYMBOLS[self]

    def __add__(self, other):  # characteristic 2
        if isinstance(other, Gf4):
            return Gf4(self.value ^ other.value)
        return NotImplemented

    __sub__ = __add__

    def __mul__(self, other):
        if isinstance(other, Gf4):
            return gf4_mul(self, other)
        return NotImplemented


_SYMBOLS = {Gf4.ZERO: "0", Gf4.ONE: "1", Gf4.OMEGA: "w", Gf4.OMEGA_BAR: "W"}
_FROM_SYMBOL = {v: k for k, v in _SYMBOLS.items()}

# discrete log base w of the nonzero elements
_LOG = {Gf4.ONE: 0, Gf4.OMEGA: 1, Gf4.OMEGA_BAR: 2}
_EXP = {0: Gf4.ONE, 1: Gf4.OMEGA, 2: Gf4.OMEGA_BAR}


def gf4_mul(x: Gf4, y: Gf4) -> Gf4:
    x, y = Gf4(x), Gf4(y)
    if x is Gf4.ZERO or y is Gf4.ZERO:
        return Gf4.ZERO
    return _EXP[(_LOG[x] + _LOG[y]) % 3]


def gf4_conj(x: Gf4) -> Gf4:
    """Frobenius conjugation x -> x**2 (swaps w and W, fixes 0 and 1)."""
    a, b = Gf4(x).bits
    return Gf4(b | (a << 1))


def gf2_trace(x: Gf4) -> int:
    """Tr(x) = x + x**2, which is 1 exactly on w and W."""
    s = Gf4(x) + gf4_mul(x, x)
    assert s in (Gf4.ZERO, Gf4.ONE)
    return 1 if s is Gf4.ONE else 0


def parse_symbol(s: str | Gf4 | int) -> Gf4:
    if isinstance(s, Gf4):
        return s
    if isinstance(s, (int, np.integer)):
        return Gf4(int(s))
    try:
        return _FROM_SYMBOL[s]
    except KeyError:
        raise ValueError(f"unknown GF(4) symbol {s!r}; expected one of 0 1 w W") from None


@dataclass(frozen=True)
class Gf4Vec:
    """Vector in GF(4)^n; coordinate ``i`` lives in bit ``i`` of both masks."""

    n: int
    mu: int = 0
    nu: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative length")
        full = (1 << self.n) - 1
        if self.mu & ~full or self.nu & ~full:
            raise ValueError("bit masks exceed vector length")

    @classmethod
    def from_symbols(cls, symbols: Iterable[str | Gf4 | int] | str) -> Gf4Vec:
        if isinstance(symbols, str):
            symbols = symbols.split() if " " in symbols.strip() else list(symbols.strip())
        elems = [parse_symbol(s) for s in symbols]
        mu = nu = 0
        for i, e in enumerate(elems):
            a, b = e.bits
            mu |= a << i
            nu |= b << i
        return cls(len(elems), mu, nu)

    @classmethod
    def from_packed(cls, n: int, word: int) -> Gf4Vec:
        full = (1 << n) - 1
        return cls(n, int(word) & full, int(word) >> n)

    @property
    def packed(self) -> int:
        """The 2n-bit integer ``mu | nu << n``."""
        return self.mu | (self.nu << self.n)

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, i: int) -> Gf4:
        if not -self.n <= i < self.n:
            raise IndexError(i)
        i %= self.n
        return Gf4(((self.mu >> i) & 1) | (((self.nu >> i) & 1) << 1))

    def __iter__(self):
        return (self[i] for i in range(self.n))

    def __add__(self, other: Gf4Vec) -> Gf4Vec:
        _check_lengths(self, other)
        return Gf4Vec(self.n, self.mu ^ other.mu, self.nu ^ other.nu)

    def scale(self, c: Gf4) -> Gf4Vec:
        return Gf4Vec.from_symbols([gf4_mul(c, x) for x in self])

    def delete(self, i: int) -> Gf4Vec:
        return Gf4Vec.from_symbols([x for j, x in enumerate(self) if j != i])

    @property
    def weight(self) -> int:
        return (self.mu | self.nu).bit_count()

    def labels(self) -> list[tuple[int, int]]:
        """Per-coordinate (mu, nu) displacement labels."""
        return [((self.mu >> i) & 1, (self.nu >> i) & 1) for i in range(self.n)]

    def __str__(self) -> str:
        return " ".join(x.symbol for x in self)


def _check_lengths(x: Gf4Vec, y: Gf4Vec) -> None:
    if x.n != y.n:
        raise ValueError(f"length mismatch: {x.n} != {y.n}")


def trace_inner_product(x: Gf4Vec, y: Gf4Vec) -> int:
    """x * y = sum_i Tr(x_i conj(y_i)) over GF(2)."""
    _check_lengths(x, y)
    s = 0
    for xi, yi in zip(x, y):
        s ^= gf2_trace(gf4_mul(xi, gf4_conj(yi)))
    return s


def symplectic_product(x: Gf4Vec, y: Gf4Vec) -> int:
    """Bitwise form of the trace inner product: mu_x.nu_y + nu_x.mu_y mod 2."""
    _check_lengths(x, y)
    return ((x.mu & y.nu) ^ (x.nu & y.mu)).bit_count() & 1


# GF(2) linear algebra on integer bit rows


def _xor_basis_insert(basis: dict[int, int], v: int) -> int:
    """Reduce ``v`` against ``basis`` (keyed by leading bit); return remainder."""
    while v:
        top = v.bit_length() - 1
        if top not in basis:
            return v
        v ^= basis[top]
    return 0


def _rref(rows: Sequence[int], width: int) -> tuple[list[int], list[int]]:
    rows = [r for r in rows]
    pivots: list[int] = []
    r = 0
    for col in range(width):
        bit = 1 << col
        sel = next((i for i in range(r, len(rows)) if rows[i] & bit), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i] & bit:
                rows[i] ^= rows[r]
        pivots.append(col)
        r += 1
    return rows[:r], pivots


def gf2_rank(rows: Sequence[int], width: int) -> int:
    return len(_rref(rows, width)[1])


def gf2_nullspace(rows: Sequence[int], width: int) -> list[int]:
    """Basis of {x : parity(x & r) = 0 for every row r}."""
    red, pivots = _rref(rows, width)
    pivot_set = set(pivots)
    basis = []
    for f in range(width):
        if f in pivot_set:
            continue
        v = 1 << f
        for row, p in zip(red, pivots):
            if (row >> f) & 1:
                v |= 1 << p
        basis.append(v)
    return basis


def _popcount(a: np.ndarray) -> np.ndarray:
    return np.bitwise_count(a).astype(np.int64)


class CodeType(enum.Enum):
    TYPE_I = "TypeI"
    TYPE_II = "TypeII"


@dataclass(frozen=True)
class AdditiveCode:
    """Additive subgroup of GF(4)^n spanned over GF(2) by ``generators``.

    Generators are kept in the order given, with GF(2)-dependent rows dropped,
    so row indices refer to the generator matrix as written.
    """

    n: int
    generators: tuple[Gf4Vec, ...] = field(default=())
    name: str = field(default="", compare=False)

    @property
    def k_classical(self) -> int:
        return len(self.generators)

    @property
    def size(self) -> int:
        return 2 ** len(self.generators)

    def codewords(self, cap: int = ENUMERATION_CAP) -> np.ndarray:
        """All codewords as packed 2n-bit integers (uint64)."""
        if self.size > cap:
            raise CodeTooLargeError(f"|C| = 2^{self.k_classical} exceeds cap {cap}")
        return self._codewords

    @cached_property
    def _codewords(self) -> np.ndarray:
        if 2 * self.n > 64:
            raise CodeTooLargeError("packed words need 2n <= 64")
        words = np.zeros(1, dtype=np.uint64)
        for g in self.generators:
            words = np.concatenate([words, words ^ np.uint64(g.packed)])
        return words

    def _weights(self, words: np.ndarray) -> np.ndarray:
        mask = np.uint64((1 << self.n) - 1)
        return _popcount((words & mask) | (words >> np.uint64(self.n)))

    def weight_distribution(self, cap: int = ENUMERATION_CAP) -> tuple[int, ...]:
        w = self._weights(self.codewords(cap))
        return tuple(int(c) for c in np.bincount(w, minlength=self.n + 1))

    def minimum_weight(self, cap: int = ENUMERATION_CAP) -> int:
        """Smallest nonzero codeword weight; ``n + 1`` when C = {0}."""
        w = self._weights(self.codewords(cap))[1:]
        return int(w.min()) if w.size else self.n + 1

    def dual(self) -> AdditiveCode:
        n = self.n
        full = (1 << n) - 1
        # x * c = parity(packed(x) & swap(packed(c)))
        swapped = [g.nu | (g.mu << n) for g in self.generators]
        basis = gf2_nullspace(swapped, 2 * n)
        rows = [Gf4Vec(n, v & full, v >> n) for v in basis]
        return AdditiveCode(n, tuple(rows), name=f"{self.name}^perp" if self.name else "")

    def contains(self, x: Gf4Vec) -> bool:
        _check_lengths(x, Gf4Vec(self.n))
        basis: dict[int, int] = {}
        for g in self.generators:
            r = _xor_basis_insert(basis, g.packed)
            basis[r.bit_length() - 1] = r
        return _xor_basis_insert(basis, x.packed) == 0

    def same_codewords(self, other: AdditiveCode) -> bool:
        if self.n != other.n or self.k_classical != other.k_classical:
            return False
        return all(self.contains(g) for g in other.generators)

    def orthogonality_violation(self) -> tuple[int, int] | None:
        """First generator pair (i, j) with nonzero trace inner product."""
        gens = self.generators
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                if symplectic_product(gens[i], gens[j]):
                    return i, j
        return None

    def is_self_orthogonal(self) -> bool:
        return self.orthogonality_violation() is None

    def is_self_dual(self) -> bool:
        return self.k_classical == self.n and self.is_self_orthogonal()

    def distance(self, cap: int = ENUMERATION_CAP) -> int:
        """Quantum minimum distance of a self-orthogonal code.

        Minimum weight of C^perp \\ C, or the minimum weight of C itself for a
        self-dual code.
        """
        if not self.is_self_orthogonal():
            raise ValueError("distance is defined for self-orthogonal codes")
        if self.is_self_dual():
            return self.minimum_weight(cap)
        dual = self.dual()
        words = dual.codewords(cap)
        outside = words[~np.isin(words, self.codewords(cap))]
        return int(self._weights(outside).min())

    def is_pure(self, d: int | None = None, cap: int = ENUMERATION_CAP) -> bool:
        """No nonzero vector of weight < d in C^perp (d defaults to ``distance``)."""
        if d is None:
            d = self.distance(cap)
        w = self._weights(self.dual().codewords(cap))[1:]
        return bool(np.all(w >= d))

    def code_type(self, cap: int = ENUMERATION_CAP) -> CodeType:
        if not self.is_self_dual():
            raise ValueError("code type is defined for self-dual codes only")
        w = self._weights(self.codewords(cap))
        return CodeType.TYPE_II if np.all(w % 2 == 0) else CodeType.TYPE_I

    def shorten(self, row: int, col: int) -> AdditiveCode:
        """Delete one generator row and one coordinate column."""
        if self.n <= 1:
            raise ValueError("cannot shorten a code of length <= 1")
        if not 0 <= row < self.k_classical or not 0 <= col < self.n:
            raise IndexError(f"row {row} / column {col} out of range")
        rows = [g.delete(col) for i, g in enumerate(self.generators) if i != row]
        return from_generators(rows, n=self.n - 1)

    def matrix(self) -> list[list[Gf4]]:
        return [list(g) for g in self.generators]

    def __str__(self) -> str:
        return format_code(self)


def from_generators(rows: Iterable[Gf4Vec | str | Sequence], n: int | None = None,
                    name: str = "") -> AdditiveCode:
    vecs = [r if isinstance(r, Gf4Vec) else Gf4Vec.from_symbols(r) for r in rows]
    if n is None:
        if not vecs:
            raise ValueError("length must be given for an empty generator list")
        n = vecs[0].n
    if n < 1:
        raise ValueError("codes need length >= 1")
    basis: dict[int, int] = {}
    kept = []
    for v in vecs:
        if v.n != n:
            raise ValueError(f"generator of length {v.n} in a length-{n} code")
        r = _xor_basis_insert(basis, v.packed)
        if r:
            basis[r.bit_length() - 1] = r
            kept.append(v)
    return AdditiveCode(n, tuple(kept), name=name)


def full_space(n: int) -> AdditiveCode:
    rows = [Gf4Vec(n, 1 << i, 0) for i in range(n)] + [Gf4Vec(n, 0, 1 << i) for i in range(n)]
    return AdditiveCode(n, tuple(rows), name=f"GF(4)^{n}")


def zero_code(n: int) -> AdditiveCode:
    return AdditiveCode(n, (), name="zero")


_HEXACODE = [
    "1 0 0 1 w w",
    "0 1 0 w 1 w",
    "0 0 1 w w 1",
    "w 0 0 w W W",
    "0 w 0 W w W",
    "0 0 w W W w",
]
_EPR2 = ["1 1", "w w"]
_TRIAD3 = ["1 1 0", "w w w", "1 0 1"]


def builtin(name: str) -> AdditiveCode:
    """Named self-dual codes: hexacode [[6,0,4]], epr2 [[2,0,2]], triad3 [[3,0,2]],
    short5 [[5,0,3]] (hexacode with its first row and column deleted)."""
    if name == "hexacode":
        return from_generators(_HEXACODE, name=name)
    if name == "epr2":
        return from_generators(_EPR2, name=name)
    if name == "triad3":
        return from_generators(_TRIAD3, name=name)
    if name == "short5":
        c = builtin("hexacode").shorten(0, 0)
        return AdditiveCode(c.n, c.generators, name=name)
    raise KeyError(f"unknown built-in code {name!r}; known: {', '.join(BUILTIN_NAMES)}")


BUILTIN_NAMES = ("epr2", "triad3", "short5", "hexacode")


def extremal_bound(n: int, code_type: CodeType | str) -> int:
    """Upper bound on the minimum weight of a self-dual additive code of length n."""
    code_type = CodeType(code_type)
    if n <= 1:
        raise ValueError("bounds hold for n > 1")
    q = n // 6
    if code_type is CodeType.TYPE_II:
        if n % 2:
            raise ValueError("Type II codes have even length")
        return 2 * q + 2
    if n % 6 == 0:
        return 2 * q + 1
    if n % 6 == 5:
        return 2 * q + 3
    return 2 * q + 2


# text format: "n=<int>" then one generator per line


def format_code(code: AdditiveCode) -> str:
    lines = [f"n={code.n}"] + [str(g) for g in code.generators]
    return "\n".join(lines) + "\n"


def parse_code(text: str, name: str = "") -> AdditiveCode:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or not lines[0].replace(" ", "").startswith("n="):
        raise ValueError("code file must start with a line 'n=<int>'")
    n = int(lines[0].replace(" ", "")[2:])
    rows = []
    for ln in lines[1:]:
        syms = ln.split()
        if len(syms) != n:
            raise ValueError(f"generator {ln!r} has {len(syms)} symbols, expected {n}")
        rows.append(Gf4Vec.from_symbols(syms))
    return from_generators(rows, n=n, name=name)


def read_code(path: str | Path) -> AdditiveCode:
    path = Path(path)
    return parse_code(path.read_text(), name=path.stem)


def write_code(code: AdditiveCode, path: str | Path) -> None:
    Path(path).write_text(format_code(code))
