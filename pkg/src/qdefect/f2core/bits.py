"""Bit-packed vectors and matrices over F2.

Bits are stored little-endian in ``uint64`` words: column ``j`` lives in word
``j // 64`` at bit ``j % 64``.  Padding bits past ``n_cols`` are always zero,
so word-level equality, XOR and popcount are exact.  Both types are
immutable; the backing arrays are marked read-only.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

import numpy as np

WORD = 64


def n_words(n: int) -> int:
    return max(1, (n + WORD - 1) // WORD)


def pack_dense(dense: np.ndarray, n: int) -> np.ndarray:
    """Pack a (m, n) 0/1 array into (m, n_words(n)) uint64 words."""
    dense = np.asarray(dense, dtype=np.uint8) & 1
    m = dense.shape[0]
    width = n_words(n) * WORD
    padded = np.zeros((m, width), dtype=np.uint8)
    padded[:, :n] = dense
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view(np.uint64).reshape(m, n_words(n)).copy()


def unpack_words(words: np.ndarray, n: int) -> np.ndarray:
    words = np.ascontiguousarray(words, dtype=np.uint64)
    m = words.shape[0]
    as_bytes = words.view(np.uint8).reshape(m, words.shape[1] * 8)
    return np.unpackbits(as_bytes, axis=1, bitorder="little")[:, :n]


def _frozen(words: np.ndarray) -> np.ndarray:
    words = np.ascontiguousarray(words, dtype=np.uint64)
    words.setflags(write=False)
    return words


class BitVector:
    """A length-``n`` binary vector."""

    __slots__ = ("_words", "n")

    def __init__(self, words: np.ndarray, n: int):
        words = np.asarray(words, dtype=np.uint64).reshape(-1)
        if words.shape[0] != n_words(n):
            raise ValueError(f"expected {n_words(n)} words for length {n}, got {words.shape[0]}")
        self._words = _frozen(words)
        self.n = n

    @classmethod
    def zeros(cls, n: int) -> "BitVector":
        return cls(np.zeros(n_words(n), dtype=np.uint64), n)

    @classmethod
    def from_bits(cls, bits: Sequence[int] | np.ndarray) -> "BitVector":
        bits = np.asarray(bits, dtype=np.uint8).reshape(1, -1)
        n = bits.shape[1]
        return cls(pack_dense(bits, n)[0], n)

    @classmethod
    def from_support(cls, support: Iterable[int], n: int) -> "BitVector":
        dense = np.zeros(n, dtype=np.uint8)
        for j in support:
            if not 0 <= j < n:
                raise IndexError(f"index {j} out of range for length {n}")
            dense[j] ^= 1
        return cls.from_bits(dense)

    @classmethod
    def from_string(cls, text: str) -> "BitVector":
        return cls.from_bits([int(ch) for ch in text if ch in "01"])

    @property
    def words(self) -> np.ndarray:
        return self._words

    @property
    def bits(self) -> np.ndarray:
        return unpack_words(self._words.reshape(1, -1), self.n)[0]

    @property
    def weight(self) -> int:
        return int(np.bitwise_count(self._words).sum())

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(int(j) for j in np.flatnonzero(self.bits))

    def any(self) -> bool:
        return bool(self._words.any())

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, j: int) -> int:
        if not 0 <= j < self.n:
            raise IndexError(j)
        return int((int(self._words[j // WORD]) >> (j % WORD)) & 1)

    def _check(self, other: "BitVector") -> None:
        if other.n != self.n:
            raise ValueError(f"length mismatch: {self.n} vs {other.n}")

    def __xor__(self, other: "BitVector") -> "BitVector":
        self._check(other)
        return BitVector(self._words ^ other._words, self.n)

    __add__ = __xor__

    def __and__(self, other: "BitVector") -> "BitVector":
        self._check(other)
        return BitVector(self._words & other._words, self.n)

    def dot(self, other: "BitVector") -> int:
        self._check(other)
        return int(np.bitwise_count(self._words & other._words).sum()) & 1

    def restrict(self, cols: Sequence[int]) -> "BitVector":
        """Puncture to ``cols`` (kept in the given order)."""
        return BitVector.from_bits(self.bits[list(cols)])

    def embed(self, cols: Sequence[int], n: int) -> "BitVector":
        """Zero-pad a vector indexed by ``cols`` back to length ``n``."""
        if len(cols) != self.n:
            raise ValueError("column list length must equal vector length")
        dense = np.zeros(n, dtype=np.uint8)
        dense[list(cols)] = self.bits
        return BitVector.from_bits(dense)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitVector):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self._words, other._words))

    def __hash__(self) -> int:
        return hash((self.n, self._words.tobytes()))

    def __repr__(self) -> str:
        return f"BitVector('{''.join(map(str, self.bits))}')"


class BitMatrix:
    """An ``n_rows x n_cols`` binary matrix; rows are generators or codewords."""

    __slots__ = ("_words", "n_cols")

    def __init__(self, words: np.ndarray, n_cols: int):
        words = np.asarray(words, dtype=np.uint64)
        if words.ndim != 2 or words.shape[1] != n_words(n_cols):
            raise ValueError(f"bad word array shape {words.shape} for {n_cols} columns")
        self._words = _frozen(words)
        self.n_cols = n_cols

    # construction -----------------------------------------------------------

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int) -> "BitMatrix":
        return cls(np.zeros((n_rows, n_words(n_cols)), dtype=np.uint64), n_cols)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls.from_dense(np.eye(n, dtype=np.uint8))

    @classmethod
    def from_dense(cls, dense, n_cols: int | None = None) -> "BitMatrix":
        dense = np.asarray(dense, dtype=np.uint8)
        if dense.ndim == 1:
            dense = dense.reshape(1, -1) if dense.size else dense.reshape(0, n_cols or 0)
        if n_cols is None:
            n_cols = dense.shape[1]
        if dense.shape[0] == 0:
            return cls.zeros(0, n_cols)
        return cls(pack_dense(dense, n_cols), n_cols)

    @classmethod
    def from_rows(cls, rows: Iterable[BitVector], n_cols: int | None = None) -> "BitMatrix":
        rows = list(rows)
        if not rows:
            if n_cols is None:
                raise ValueError("n_cols required for an empty row list")
            return cls.zeros(0, n_cols)
        n = rows[0].n
        if any(r.n != n for r in rows):
            raise ValueError("rows have unequal lengths")
        if n_cols is not None and n_cols != n:
            raise ValueError("n_cols does not match row length")
        return cls(np.stack([r.words for r in rows]), n)

    @classmethod
    def from_supports(cls, supports: Iterable[Iterable[int]], n_cols: int) -> "BitMatrix":
        return cls.from_rows((BitVector.from_support(s, n_cols) for s in supports), n_cols)

    @classmethod
    def from_strings(cls, *rows: str) -> "BitMatrix":
        return cls.from_rows(BitVector.from_string(r) for r in rows)

    @classmethod
    def stack(cls, *mats: "BitMatrix") -> "BitMatrix":
        n = mats[0].n_cols
        if any(m.n_cols != n for m in mats):
            raise ValueError("column counts differ")
        return cls(np.concatenate([m.words for m in mats], axis=0), n)

    # views ------------------------------------------------------------------

    @property
    def words(self) -> np.ndarray:
        return self._words

    @property
    def n_rows(self) -> int:
        return self._words.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_rows, self.n_cols)

    def to_dense(self) -> np.ndarray:
        return unpack_words(self._words, self.n_cols)

    def row(self, i: int) -> BitVector:
        return BitVector(self._words[i], self.n_cols)

    @property
    def rows(self) -> list[BitVector]:
        return [self.row(i) for i in range(self.n_rows)]

    def __iter__(self) -> Iterator[BitVector]:
        return iter(self.rows)

    def __len__(self) -> int:
        return self.n_rows

    def supports(self) -> list[tuple[int, ...]]:
        dense = self.to_dense()
        return [tuple(int(j) for j in np.flatnonzero(r)) for r in dense]

    def row_weights(self) -> np.ndarray:
        return np.bitwise_count(self._words).sum(axis=1).astype(np.int64)

    def col_weights(self) -> np.ndarray:
        return self.to_dense().sum(axis=0).astype(np.int64)

    def max_row_weight(self) -> int:
        return int(self.row_weights().max()) if self.n_rows else 0

    # structural operations ----------------------------------------------------

    def select_rows(self, idx: Sequence[int]) -> "BitMatrix":
        return BitMatrix(self._words[list(idx)].reshape(len(idx), self._words.shape[1]), self.n_cols)

    def delete_rows(self, idx: Iterable[int]) -> "BitMatrix":
        drop = set(idx)
        return self.select_rows([i for i in range(self.n_rows) if i not in drop])

    def select_cols(self, cols: Sequence[int]) -> "BitMatrix":
        cols = list(cols)
        for j in cols:
            if not 0 <= j < self.n_cols:
                raise IndexError(f"column {j} out of range for {self.n_cols} columns")
        return BitMatrix.from_dense(self.to_dense()[:, cols], len(cols))

    def transpose(self) -> "BitMatrix":
        return BitMatrix.from_dense(self.to_dense().T, self.n_rows)

    @property
    def T(self) -> "BitMatrix":
        return self.transpose()

    def mul_transpose(self, other: "BitMatrix") -> np.ndarray:
        """Return ``self @ other.T`` over F2 as a dense 0/1 array."""
        if other.n_cols != self.n_cols:
            raise ValueError("column counts differ")
        anded = self._words[:, None, :] & other.words[None, :, :]
        return (np.bitwise_count(anded).sum(axis=2) & 1).astype(np.uint8)

    def syndrome(self, v: BitVector) -> BitVector:
        """``self @ v`` over F2."""
        if v.n != self.n_cols:
            raise ValueError("vector length does not match column count")
        bits = np.bitwise_count(self._words & v.words[None, :]).sum(axis=1) & 1
        return BitVector.from_bits(bits) if self.n_rows else BitVector.zeros(0)

    def combine(self, coeffs: BitVector) -> BitVector:
        """``coeffs @ self`` over F2: XOR of the selected rows."""
        if coeffs.n != self.n_rows:
            raise ValueError("coefficient length does not match row count")
        sel = self._words[coeffs.bits.astype(bool)]
        if sel.shape[0] == 0:
            return BitVector.zeros(self.n_cols)
        return BitVector(np.bitwise_xor.reduce(sel, axis=0), self.n_cols)

    def xor_all(self) -> BitVector:
        return self.combine(BitVector.from_bits(np.ones(self.n_rows, dtype=np.uint8)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.n_cols == other.n_cols and bool(np.array_equal(self._words, other._words))

    def __hash__(self) -> int:
        return hash((self.n_cols, self._words.shape, self._words.tobytes()))

    def __repr__(self) -> str:
        return f"BitMatrix({self.n_rows}x{self.n_cols})"


def complement(cols: Iterable[int], n: int) -> tuple[int, ...]:
    """Sorted complement ``{0..n-1} \\ cols``."""
    s = index_set(cols, n)
    drop = set(s)
    return tuple(j for j in range(n) if j not in drop)


def index_set(cols: Iterable[int], n: int) -> tuple[int, ...]:
    """Normalise an iterable of column indices to a sorted, duplicate-free tuple."""
    out = sorted(set(int(j) for j in cols))
    if out and (out[0] < 0 or out[-1] >= n):
        raise IndexError(f"index set {out} not contained in range({n})")
    return tuple(out)
