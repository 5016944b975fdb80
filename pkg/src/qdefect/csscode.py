"""CSS codes: validation, encoded-qubit count, exact distances, logical
operators, cleaning and erasability."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

import numpy as np

from .errors import NotErasable, NotOrthogonal
from .f2core import (
    DEFAULT_BUDGET,
    BitMatrix,
    BitVector,
    complement,
    dual_basis,
    in_rowspace,
    index_set,
    independent_rows,
    inverse,
    min_weight_nontrivial,
    puncture,
    rank,
    shorten,
)

INFINITE = math.inf
"""Distance of a code with an empty minimisation domain (``k = 0``)."""


@dataclass(frozen=True, eq=False)
class CssCode:
    """``css(P, Q)``: rows of ``P`` are X-type generators, rows of ``Q`` Z-type."""

    P: BitMatrix
    Q: BitMatrix
    name: str = ""
    rank_P: int = field(init=False)
    rank_Q: int = field(init=False)
    k: int = field(init=False)

    def __post_init__(self):
        if self.P.n_cols != self.Q.n_cols:
            raise ValueError(f"P has {self.P.n_cols} columns but Q has {self.Q.n_cols}")
        prod = self.P.mul_transpose(self.Q)
        bad = np.argwhere(prod)
        if bad.size:
            raise NotOrthogonal(int(bad[0][0]), int(bad[0][1]))
        object.__setattr__(self, "rank_P", rank(self.P))
        object.__setattr__(self, "rank_Q", rank(self.Q))
        object.__setattr__(self, "k", self.n - self.rank_P - self.rank_Q)

    @property
    def n(self) -> int:
        return self.P.n_cols

    @property
    def H_X(self) -> BitMatrix:
        return self.P

    @property
    def H_Z(self) -> BitMatrix:
        return self.Q

    @property
    def max_weight(self) -> int:
        """Largest generator weight ``w``."""
        return max(self.P.max_row_weight(), self.Q.max_row_weight())

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<CssCode{label} n={self.n} k={self.k}>"


def new_css(P: BitMatrix, Q: BitMatrix, name: str = "") -> CssCode:
    return CssCode(P, Q, name)


class LogicalBasis(NamedTuple):
    xlogs: BitMatrix  # k rows in C_Q^perp \ C_P
    zlogs: BitMatrix  # k rows in C_P^perp \ C_Q

    @property
    def k(self) -> int:
        return self.xlogs.n_rows


class CssDistances(NamedTuple):
    d_X: float
    d_Z: float
    x_witness: BitVector | None
    z_witness: BitVector | None

    @property
    def d(self) -> float:
        return min(self.d_X, self.d_Z)


def _extend_basis(base: BitMatrix, candidates: BitMatrix) -> BitMatrix:
    """Rows of ``candidates`` that extend ``rowspace(base)``, greedily in order."""
    stacked = BitMatrix.stack(base, candidates)
    order = independent_rows(base) + list(range(base.n_rows, stacked.n_rows))
    keep = [i - base.n_rows for i in independent_rows(stacked, order) if i >= base.n_rows]
    return candidates.select_rows(keep)


def logical_basis(code: CssCode) -> LogicalBasis:
    """Canonical logical operators with pairing ``xlogs @ zlogs.T = I``."""
    n = code.n
    if code.k == 0:
        empty = BitMatrix.zeros(0, n)
        return LogicalBasis(empty, empty)
    xlogs = _extend_basis(code.P, dual_basis(code.Q))
    zlogs = _extend_basis(code.Q, dual_basis(code.P))
    pairing = BitMatrix.from_dense(xlogs.mul_transpose(zlogs))
    # Z' = (pairing^-1)^T Z gives X Z'^T = I
    N = inverse(pairing).transpose()
    zd = (N.to_dense().astype(np.int64) @ zlogs.to_dense().astype(np.int64)) & 1
    return LogicalBasis(xlogs, BitMatrix.from_dense(zd, n))


def css_distances(code: CssCode, *, budget: int = DEFAULT_BUDGET, threads: int = 1) -> CssDistances:
    """Exact ``d_X`` and ``d_Z``; both are :data:`INFINITE` when ``k = 0``."""
    if code.k == 0:
        return CssDistances(INFINITE, INFINITE, None, None)
    logs = logical_basis(code)
    dx = min_weight_nontrivial(logs.xlogs, code.P, budget=budget, threads=threads)
    dz = min_weight_nontrivial(logs.zlogs, code.Q, budget=budget, threads=threads)
    return CssDistances(dx.weight, dz.weight, dx.witness, dz.witness)


class Erasability(NamedTuple):
    erasable: bool
    witness: BitVector | None  # logical operator supported on A, when not erasable
    side: str | None  # "X" or "Z": type of the witness


def _supported_logical(dual_of: BitMatrix, stab: BitMatrix, A: tuple[int, ...], n: int) -> BitVector | None:
    """A codeword of ``rowspace(dual_of)^perp`` supported on ``A`` outside ``rowspace(stab)``."""
    if not A:
        return None
    local = shorten(dual_basis(dual_of), A)
    for row in local:
        v = row.embed(A, n)
        if v.any() and in_rowspace(stab, v) is None:
            return v
    return None


def is_erasable(code: CssCode, A: Iterable[int], sides: str = "XZ") -> Erasability:
    """Whether no nontrivial logical operator is supported on ``A``.

    ``sides`` selects which logical types are checked: ``"X"`` looks for
    elements of ``C_Q^perp \\ C_P`` on ``A`` (what shortening ``Q`` needs),
    ``"Z"`` for ``C_P^perp \\ C_Q``; the default checks both.
    """
    A = index_set(A, code.n)
    if "X" in sides:
        w = _supported_logical(code.Q, code.P, A, code.n)
        if w is not None:
            return Erasability(False, w, "X")
    if "Z" in sides:
        w = _supported_logical(code.P, code.Q, A, code.n)
        if w is not None:
            return Erasability(False, w, "Z")
    return Erasability(True, None, None)


def _clean(logs: BitMatrix, stab: BitMatrix, A: tuple[int, ...], side: str) -> BitMatrix:
    if not A or logs.n_rows == 0:
        return logs
    stab_A = puncture(stab, A)
    out = []
    for i, row in enumerate(logs):
        x = in_rowspace(stab_A, row.restrict(A))
        if x is None:
            raise NotErasable(f"{side}-logical {i} cannot be moved off A", row, side)
        out.append(row ^ stab.combine(x))
    return BitMatrix.from_rows(out, logs.n_cols)


def clean_logicals(code: CssCode, A: Iterable[int], basis: LogicalBasis | None = None) -> LogicalBasis:
    """Move every logical representative off ``A`` by adding stabilizers."""
    A = index_set(A, code.n)
    check = is_erasable(code, A)
    if not check.erasable:
        raise NotErasable(
            f"a {check.side}-type logical operator is supported on A", check.witness, check.side
        )
    basis = basis or logical_basis(code)
    return LogicalBasis(
        _clean(basis.xlogs, code.P, A, "X"),
        _clean(basis.zlogs, code.Q, A, "Z"),
    )


def code_complement(code: CssCode, A: Iterable[int]) -> tuple[int, ...]:
    return complement(A, code.n)
