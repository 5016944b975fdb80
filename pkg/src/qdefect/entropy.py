"""Entanglement entropy of stabilizer states across a cut, the cut
perimeter, the generalized topological entropy ``gamma = L - Upsilon``,
and stability of defects under small deformations of the removed set."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .csscode import CssCode, clean_logicals, css_distances, is_erasable, logical_basis
from .defect import DefectReport, defect_matrices
from .errors import NotErasable
from .f2core import BitMatrix, complement, index_set, puncture, rank, shorten


@dataclass(frozen=True, eq=False)
class SymplecticGroup:
    """Pauli group generated by the rows of ``generators`` (``X`` part in
    columns ``0..n-1``, ``Z`` part in ``n..2n-1``).  Signs are ignored."""

    generators: BitMatrix
    n: int

    def __post_init__(self):
        if self.generators.n_cols != 2 * self.n:
            raise ValueError(f"expected {2 * self.n} columns, got {self.generators.n_cols}")
        bad = np.argwhere(np.triu(self.commutation_matrix(), 1))
        if bad.size:
            i, j = (int(t) for t in bad[0])
            raise ValueError(f"generators {i} and {j} anticommute")

    def commutation_matrix(self) -> np.ndarray:
        d = self.generators.to_dense()
        x, z = d[:, : self.n].astype(np.int64), d[:, self.n :].astype(np.int64)
        return ((x @ z.T + z @ x.T) & 1).astype(np.uint8)

    @property
    def rank(self) -> int:
        return rank(self.generators)

    @property
    def is_pure(self) -> bool:
        return self.rank == self.n

    @classmethod
    def from_paulis(cls, *paulis: str) -> "SymplecticGroup":
        """Generators from strings over ``IXYZ``, e.g. ``("XX", "ZZ")``."""
        n = len(paulis[0])
        dense = np.zeros((len(paulis), 2 * n), dtype=np.uint8)
        for i, p in enumerate(paulis):
            if len(p) != n:
                raise ValueError("Pauli strings have unequal lengths")
            for j, ch in enumerate(p.upper()):
                if ch in "XY":
                    dense[i, j] = 1
                if ch in "ZY":
                    dense[i, n + j] = 1
                if ch not in "IXYZ":
                    raise ValueError(f"bad Pauli letter {ch!r}")
        return cls(BitMatrix.from_dense(dense, 2 * n), n)

    @classmethod
    def from_css(cls, P: BitMatrix, Q: BitMatrix) -> "SymplecticGroup":
        n = P.n_cols
        zx = np.zeros((P.n_rows, n), dtype=np.uint8)
        zz = np.zeros((Q.n_rows, n), dtype=np.uint8)
        top = np.concatenate([P.to_dense(), zx], axis=1)
        bottom = np.concatenate([zz, Q.to_dense()], axis=1)
        return cls(BitMatrix.from_dense(np.concatenate([top, bottom]), 2 * n), n)


def state_from_code(code: CssCode, A: Iterable[int] = ()) -> SymplecticGroup:
    """A stabilizer state of ``code``: its generators plus ``k`` Z-type logicals.

    The logicals are cleaned off ``A`` first, so they lie in ``S_B``.
    """
    A = index_set(A, code.n)
    zlogs = clean_logicals(code, A).zlogs if A else logical_basis(code).zlogs
    return SymplecticGroup.from_css(code.P, BitMatrix.stack(code.Q, zlogs))


@dataclass
class CutDecomposition:
    A: tuple[int, ...]
    B: tuple[int, ...]
    rank_S: int
    rank_SA: int
    rank_SB: int
    rank_SAB: int
    upsilon: int
    perimeter_L: int | None = None
    perimeter_X: int | None = None
    gamma: int | None = None
    extras: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "n": len(self.A) + len(self.B),
            "A": list(self.A),
            "rank_S": self.rank_S,
            "rank_SA": self.rank_SA,
            "rank_SB": self.rank_SB,
            "rank_SAB": self.rank_SAB,
            "upsilon": self.upsilon,
            "perimeter_L": self.perimeter_L,
            "perimeter_X": self.perimeter_X,
            "gamma": self.gamma,
        }


def _side_rank(G: BitMatrix, cols: tuple[int, ...], n: int) -> int:
    both = tuple(cols) + tuple(n + j for j in cols)
    return rank(shorten(G, both)) if both else 0


def decompose_cut(S: SymplecticGroup, A: Iterable[int]) -> CutDecomposition:
    """Ranks of ``S_A``, ``S_B``, ``S_AB`` and ``Upsilon = rank(S_AB) / 2``."""
    A = index_set(A, S.n)
    B = complement(A, S.n)
    r = S.rank
    ra = _side_rank(S.generators, A, S.n)
    rb = _side_rank(S.generators, B, S.n)
    rab = r - ra - rb
    if rab % 2:
        raise ValueError(f"split subgroup has odd rank {rab}; the group is not a pure stabilizer state")
    return CutDecomposition(A, B, r, ra, rb, rab, rab // 2)


def perimeter(Q: BitMatrix, A: Iterable[int]) -> int:
    """Number of rows of ``Q`` meeting both ``A`` and its complement."""
    A = index_set(A, Q.n_cols)
    if not A:
        return 0
    d = Q.to_dense().astype(bool)
    inside = d[:, list(A)].any(axis=1)
    outside = d[:, list(complement(A, Q.n_cols))].any(axis=1)
    return int(np.count_nonzero(inside & outside))


def gamma(code: CssCode, A: Iterable[int], *, x_side: bool = False) -> CutDecomposition:
    """``gamma = L - Upsilon`` for the cleaned code state; never clamped."""
    A = index_set(A, code.n)
    dec = decompose_cut(state_from_code(code, A), A)
    dec.perimeter_L = perimeter(code.Q, A)
    if x_side:
        dec.perimeter_X = perimeter(code.P, A)
    dec.gamma = dec.perimeter_L - dec.upsilon
    return dec


@dataclass(frozen=True)
class KappaBound:
    kappa: int
    gamma: int
    applicable: bool  # d' > w, the regime where the bound is claimed

    @property
    def holds(self) -> bool:
        return self.kappa <= self.gamma


def check_kappa_bound(report: DefectReport) -> KappaBound:
    """``kappa <= gamma(A)`` for the removed set of a defect report."""
    g = gamma(report.parent, report.A).gamma
    dp = report.d_prime
    applicable = dp is not None and dp > report.w
    return KappaBound(report.kappa, g, applicable)


# ---------------------------------------------------------------------------
# deformations


@dataclass
class DeformationStep:
    step: int
    move: int | None
    A: tuple[int, ...]
    kappa: int | None
    gamma: int | None
    in_guarantee: bool

    def ok(self, kappa0: int) -> bool | None:
        if not self.in_guarantee:
            return None
        return self.kappa == kappa0 and self.gamma is not None and self.gamma >= self.kappa


@dataclass
class DeformationReport:
    u0: int
    w: int
    d_prime: float
    kappa0: int
    steps: list[DeformationStep]

    @property
    def first_violation(self) -> int | None:
        for s in self.steps:
            if s.ok(self.kappa0) is False:
                return s.step
        return None

    @property
    def stable(self) -> bool:
        return self.first_violation is None

    def to_dict(self) -> dict:
        dp = None if math.isinf(self.d_prime) else int(self.d_prime)
        return {
            "u0": self.u0,
            "w": self.w,
            "d_prime": dp,
            "kappa0": self.kappa0,
            "stable": self.stable,
            "first_violation": self.first_violation,
            "steps": [
                {
                    "step": s.step,
                    "move": s.move,
                    "size_A": len(s.A),
                    "kappa": s.kappa,
                    "gamma": s.gamma,
                    "in_guarantee": s.in_guarantee,
                    "ok": s.ok(self.kappa0),
                }
                for s in self.steps
            ],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["step", "move", "size_A", "kappa", "gamma", "in_guarantee", "ok"])
        for row in self.to_dict()["steps"]:
            writer.writerow(["" if v is None else v for v in row.values()])
        return buf.getvalue()


def deformation_stability(
    code: CssCode,
    A: Iterable[int],
    moves: Sequence[int],
    w: int | None = None,
    *,
    u0: int,
    drop_rows: Sequence[int] | None = None,
    d_prime: float | None = None,
    budget: int | None = None,
    threads: int = 1,
) -> DeformationReport:
    """Track ``kappa`` and ``gamma`` while ``A`` changes one qubit at a time.

    Each move toggles one qubit (added if absent, removed if present).  The
    promoted generator ``u0`` and the reduced matrix ``Q'`` stay fixed.  A
    prefix of ``M`` moves is inside the guarantee when ``M + w < d'``, with
    ``d'`` the exact distance of the starting defect code unless given.
    """
    kw = {"threads": threads} if budget is None else {"budget": budget, "threads": threads}
    A0 = index_set(A, code.n)
    w = code.max_weight if w is None else w
    protect = [i for i, s in enumerate(code.Q.supports()) if set(s) & set(A0)]
    _, _, Qp = defect_matrices(code, u0, protect, drop_rows)
    Pq = CssCode(code.P, Qp)

    def kappa_at(At):
        if not is_erasable(Pq, At, "X").erasable:
            return None
        B = complement(At, code.n)
        return CssCode(puncture(code.P, B), shorten(Qp, B)).k - code.k

    def gamma_at(At):
        try:
            return gamma(code, At).gamma
        except NotErasable:
            return None

    kappa0 = kappa_at(A0)
    if kappa0 is None:
        raise NotErasable("initial A is not erasable once u0 is removed", None, "X")
    if d_prime is None:
        B0 = complement(A0, code.n)
        d_prime = css_distances(CssCode(puncture(code.P, B0), shorten(Qp, B0)), **kw).d
    steps = [DeformationStep(0, None, A0, kappa0, gamma_at(A0), w < d_prime)]
    current = set(A0)
    for t, q in enumerate(moves, start=1):
        if not 0 <= q < code.n:
            raise IndexError(f"move {t}: qubit {q} out of range")
        current ^= {q}
        At = tuple(sorted(current))
        inside = t + w < d_prime
        k_t, g_t = kappa_at(At), gamma_at(At)
        if inside and (k_t is None or g_t is None):
            raise NotErasable(f"step {t}: A is not erasable", None, None)
        steps.append(DeformationStep(t, q, At, k_t, g_t, inside))
    return DeformationReport(u0, w, d_prime, kappa0, steps)
