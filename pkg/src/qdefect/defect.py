"""Qubit removal with gauge fixing, the defect construction, defect
distances, and verifiers for the defect-distance lower bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations, islice
from typing import Iterable, Sequence

import numpy as np

from .csscode import INFINITE, CssCode, css_distances, is_erasable
from .errors import (
    ConditionFailed,
    Inconsistent,
    NoSupportedRepresentative,
    NotErasable,
    PreconditionFailed,
)
from .f2core import (
    DEFAULT_BUDGET,
    BitMatrix,
    BitVector,
    MinWeight,
    complement,
    in_rowspace,
    index_set,
    left_kernel,
    min_weight_in_coset,
    min_weight_with_syndrome,
    puncture,
    rank,
    shorten,
    shorten_with_map,
)
from .tanner import TannerGraph, ball, build_tanner, locally_independent_radius, rows_independent


# ---------------------------------------------------------------------------
# qubit removal


@dataclass(frozen=True, eq=False)
class GaugeFixedCode:
    """``css(P[B], Q_B)`` obtained by removing the qubits ``A`` from ``base``.

    Columns of ``result`` are the qubits of ``B`` in increasing order.
    ``row_map`` sends each row of ``base.Q`` that avoids ``A`` to its row in
    ``result.Q``.
    """

    base: CssCode
    A: tuple[int, ...]
    B: tuple[int, ...]
    result: CssCode
    row_map: dict[int, int] = field(default_factory=dict)


def gauge_fix_remove(code: CssCode, A: Iterable[int], *, sides: str = "XZ") -> GaugeFixedCode:
    """Remove an erasable set ``A``; keeps ``k`` and never lowers ``d_Z``."""
    A = index_set(A, code.n)
    check = is_erasable(code, A, sides)
    if not check.erasable:
        raise NotErasable(f"A supports a {check.side}-type logical operator", check.witness, check.side)
    B = complement(A, code.n)
    QB, kept = shorten_with_map(code.Q, B)
    result = CssCode(puncture(code.P, B), QB, f"{code.name}-{len(A)}" if code.name else "")
    return GaugeFixedCode(code, A, B, result, {old: new for new, old in enumerate(kept)})


# ---------------------------------------------------------------------------
# defect distances


def _supported_representative(Qprime: BitMatrix, u0: BitVector, B: tuple[int, ...]) -> BitVector:
    """``(u0 + a Q')[B]`` for some ``a`` making the vector vanish on ``A``."""
    A = complement(B, Qprime.n_cols)
    if not A:
        return u0
    x = in_rowspace(puncture(Qprime, A), u0.restrict(A))
    if x is None:
        raise NoSupportedRepresentative("no combination of u0 with rows of Q' vanishes on A")
    return (u0 ^ Qprime.combine(x)).restrict(B)


def dz0(
    Qprime: BitMatrix,
    u0: BitVector,
    B: Iterable[int],
    *,
    budget: int = DEFAULT_BUDGET,
    threads: int = 1,
) -> MinWeight:
    """Minimum weight of ``u0 + a Q'`` over combinations supported on ``B``.

    The witness is indexed by ``B``.
    """
    B = index_set(B, Qprime.n_cols)
    z = _supported_representative(Qprime, u0, B)
    return min_weight_in_coset(z, shorten(Qprime, B), budget=budget, threads=threads)


def dx0(
    Qprime: BitMatrix,
    u0: BitVector,
    B: Iterable[int],
    *,
    budget: int = DEFAULT_BUDGET,
    threads: int = 1,
) -> MinWeight:
    """Minimum weight of the new X-type logical of ``css(., Q'_B)``.

    Minimises ``wgt(b)`` over ``b`` indexed by ``B`` with ``Q'_B b^T = 0``
    and odd overlap with the ``B``-supported representative of ``u0``.
    """
    B = index_set(B, Qprime.n_cols)
    z = _supported_representative(Qprime, u0, B)
    QB = shorten(Qprime, B)
    M = BitMatrix.stack(QB, BitMatrix.from_rows([z]))
    s = BitVector.from_support([M.n_rows - 1], M.n_rows)
    return min_weight_with_syndrome(M, s, budget=budget, threads=threads)


# ---------------------------------------------------------------------------
# full-rank generator selection


def drop_dependent_rows(
    Q: BitMatrix,
    u0: int,
    protect: Iterable[int],
    g: TannerGraph | None = None,
) -> tuple[list[int], bool]:
    """Pick rows to delete so that the remaining rows of ``Q`` are independent.

    Only rows outside ``protect`` are deleted.  Candidates are tried by
    decreasing weight, then decreasing Tanner distance from ``u0``, then
    index; a candidate is deleted when the rows left still span the same
    space.  Returns ``(deleted, full_rank)``.
    """
    g = g or build_tanner(Q)
    protect = set(protect) | {u0}
    dist = g.distances(("u", u0))
    weights = Q.row_weights()
    far = max(dist.values()) + 1
    cands = sorted(
        (i for i in range(Q.n_rows) if i not in protect),
        key=lambda i: (-int(weights[i]), -dist.get(("u", i), far), i),
    )
    target = rank(Q)
    alive = set(range(Q.n_rows))
    deleted: list[int] = []
    for i in cands:
        if len(alive) == target:
            break
        trial = sorted(alive - {i})
        if rank(Q.select_rows(trial)) == target:
            alive.discard(i)
            deleted.append(i)
    return deleted, len(alive) == target


# ---------------------------------------------------------------------------
# the defect construction


@dataclass(eq=False)
class DefectReport:
    parent: CssCode
    u0: int
    R1: int
    A: tuple[int, ...]
    B: tuple[int, ...]
    dropped_rows: list[int]
    gauge_code: CssCode
    defect_code: CssCode
    kappa: int
    w: int
    dz0: float
    dx0: float
    dz0_witness: BitVector | None = None
    dx0_witness: BitVector | None = None
    d_X_parent: float | None = None
    d_Z_parent: float | None = None
    d_X_gauge: float | None = None
    d_Z_gauge: float | None = None
    d_X_defect: float | None = None
    d_Z_defect: float | None = None
    R2: int | None = None
    bounds: dict = field(default_factory=dict)

    @property
    def dz_prime(self) -> float | None:
        return None if self.d_Z_gauge is None else min(self.d_Z_gauge, self.dz0)

    @property
    def dx_prime(self) -> float | None:
        return None if self.d_X_gauge is None else min(self.d_X_gauge, self.dx0)

    @property
    def d_prime(self) -> float | None:
        if self.dx_prime is None:
            return None
        return min(self.dx_prime, self.dz_prime)

    @property
    def distances_consistent(self) -> bool | None:
        """Whether exhaustive defect-code distances agree with ``min(d, d^(0))``."""
        if self.d_X_defect is None or self.d_X_gauge is None:
            return None
        return (self.d_X_defect, self.d_Z_defect) == (self.dx_prime, self.dz_prime)

    def to_dict(self) -> dict:
        def num(x):
            if x is None or (isinstance(x, float) and math.isinf(x)):
                return None
            return int(x)

        def on_B(v):
            return None if v is None else [self.B[j] for j in v.support]

        return {
            "parent": {"name": self.parent.name, "n": self.parent.n, "k": self.parent.k},
            "u0": self.u0,
            "R1": self.R1,
            "R2": self.R2,
            "A": list(self.A),
            "dropped_rows": list(self.dropped_rows),
            "w": self.w,
            "defect_code": {"n": self.defect_code.n, "k": self.defect_code.k},
            "kappa": self.kappa,
            "dz0": num(self.dz0),
            "dx0": num(self.dx0),
            "d_X_parent": num(self.d_X_parent),
            "d_Z_parent": num(self.d_Z_parent),
            "d_X_gauge": num(self.d_X_gauge),
            "d_Z_gauge": num(self.d_Z_gauge),
            "dx_prime": num(self.dx_prime),
            "dz_prime": num(self.dz_prime),
            "d_prime": num(self.d_prime),
            "d_X_defect": num(self.d_X_defect),
            "d_Z_defect": num(self.d_Z_defect),
            "distances_consistent": self.distances_consistent,
            "bounds": dict(self.bounds),
            "witnesses": {"dz0": on_B(self.dz0_witness), "dx0": on_B(self.dx0_witness)},
        }


def _promoted_rows(code: CssCode, u0: int, protect, drop_rows, g):
    if drop_rows is None:
        dropped, ok = drop_dependent_rows(code.Q, u0, protect, g)
        if not ok:
            raise ConditionFailed("rows near u0 are linearly dependent; no full-rank generator set avoids them")
    else:
        dropped = sorted(set(drop_rows))
        if u0 in dropped:
            raise ValueError("u0 cannot be among the dropped rows")
    Q1_rows = [i for i in range(code.Q.n_rows) if i not in set(dropped)]
    return dropped, Q1_rows


def defect_matrices(code: CssCode, u0: int, protect: Iterable[int] = (), drop_rows=None, g=None):
    """``(dropped, Q1, Q')``: full-rank generators and ``Q1`` without ``u0``."""
    g = g or build_tanner(code.Q)
    dropped, Q1_rows = _promoted_rows(code, u0, protect, drop_rows, g)
    Q1 = code.Q.select_rows(Q1_rows)
    Qp = code.Q.select_rows([i for i in Q1_rows if i != u0])
    if rank(Qp) != rank(Q1) - 1:
        raise ConditionFailed(f"row {u0} is not linearly independent of the remaining generators")
    return dropped, Q1, Qp


def removal_condition(code: CssCode, Qp: BitMatrix, u0: int, A: tuple[int, ...]) -> dict:
    """Both forms of the step-(iii) condition for promoting ``u0``."""
    u = code.Q.row(u0)
    cheap = in_rowspace(puncture(Qp, A), u.restrict(A)) is not None
    erasable = is_erasable(CssCode(code.P, Qp), A, "X").erasable
    return {"u0_in_rowspace_on_A": cheap, "A_erasable_without_u0": erasable}


def construct_defect(
    code: CssCode,
    u0: int,
    R1: int,
    *,
    A: Iterable[int] | None = None,
    drop_rows: Sequence[int] | None = None,
    distances: bool = True,
    verify: bool = True,
    budget: int = DEFAULT_BUDGET,
    threads: int = 1,
) -> DefectReport:
    """Remove ``A`` (default: qubits of the radius-``2 R1`` ball around ``u0``),
    gauge fix by shortening, and promote row ``u0`` of ``Q`` to a logical.

    Dependent rows of ``Q`` outside the ball are dropped first (see
    :func:`drop_dependent_rows`) unless ``drop_rows`` is given.
    """
    if not 0 <= u0 < code.Q.n_rows:
        raise IndexError(f"no row {u0} in Q")
    g = build_tanner(code.Q)
    W = ball(g, u0, 2 * R1)
    A = W.value_nodes() if A is None else index_set(A, code.n)
    B = complement(A, code.n)
    dropped, Q1, Qp = defect_matrices(code, u0, W.check_nodes(), drop_rows, g)

    cond = removal_condition(code, Qp, u0, A)
    if not all(cond.values()):
        raise ConditionFailed("u0 cannot be promoted after removing A", {"A": list(A), **cond})

    gauge = CssCode(puncture(code.P, B), shorten(Q1, B))
    defect = CssCode(puncture(code.P, B), shorten(Qp, B), f"defect({code.name})" if code.name else "")
    u = code.Q.row(u0)
    z = dz0(Qp, u, B, budget=budget, threads=threads)
    x = dx0(Qp, u, B, budget=budget, threads=threads)
    report = DefectReport(
        parent=code,
        u0=u0,
        R1=R1,
        A=A,
        B=B,
        dropped_rows=dropped,
        gauge_code=gauge,
        defect_code=defect,
        kappa=defect.k - code.k,
        w=code.max_weight,
        dz0=z.weight,
        dx0=x.weight,
        dz0_witness=z.witness,
        dx0_witness=x.witness,
        bounds={"condition": cond},
    )
    if distances:
        dp = css_distances(code, budget=budget, threads=threads)
        dg = css_distances(gauge, budget=budget, threads=threads)
        dd = css_distances(defect, budget=budget, threads=threads)
        report.d_X_parent, report.d_Z_parent = dp.d_X, dp.d_Z
        report.d_X_gauge, report.d_Z_gauge = dg.d_X, dg.d_Z
        report.d_X_defect, report.d_Z_defect = dd.d_X, dd.d_Z
        report.bounds["stmt1"] = bool(
            gauge.k == code.k
            and dp.d_X - len(A) <= dg.d_X <= dp.d_X
            and dg.d_Z >= dp.d_Z
        )
    if verify:
        try:
            s2 = verify_statement2(code, u0, R1, A=A, budget=budget, threads=threads)
            report.R2 = s2.R2
            report.bounds["stmt2"] = s2.holds
        except PreconditionFailed as exc:
            report.bounds["stmt2"] = None
            report.bounds["stmt2_precondition"] = exc.which
        try:
            s3 = verify_statement3(code, u0, R1, budget=budget, threads=threads)
            report.bounds["stmt3"] = s3.holds
        except PreconditionFailed as exc:
            report.bounds["stmt3"] = None
            report.bounds["stmt3_precondition"] = exc.which
    return report


def construct_defects(code: CssCode, steps: Sequence[tuple[int, int]], **kwargs) -> list[DefectReport]:
    """Promote several generators one at a time.

    Each ``(u0, R1)`` refers to a row of the current code's ``Q``; every
    round re-checks its condition on the code left by the previous round.
    """
    reports = []
    current = code
    for u0, R1 in steps:
        rep = construct_defect(current, u0, R1, **kwargs)
        reports.append(rep)
        current = rep.defect_code
    return reports


# ---------------------------------------------------------------------------
# lower bound on the X distance


@dataclass
class Statement2Report:
    u0: int
    R1: int
    R2: int
    A: tuple[int, ...]
    dropped_rows: list[int]
    relation: list[int]
    min_weight: int
    min_weight_B: int
    witness: BitVector
    witness_B: BitVector
    shells_ok: bool

    @property
    def holds(self) -> bool:
        return self.min_weight >= self.R2 and self.min_weight_B >= self.R2 - self.R1

    @property
    def saturated(self) -> bool:
        return self.min_weight_B == self.R2 - self.R1

    def to_dict(self) -> dict:
        return {
            "statement": 2,
            "u0": self.u0,
            "R1": self.R1,
            "R2": self.R2,
            "A": list(self.A),
            "dropped_rows": list(self.dropped_rows),
            "relation": list(self.relation),
            "min_weight": self.min_weight,
            "min_weight_B": self.min_weight_B,
            "bound": self.R2,
            "bound_B": self.R2 - self.R1,
            "holds": self.holds,
            "saturated": self.saturated,
            "shells_ok": self.shells_ok,
            "witness": list(self.witness.support),
            "witness_B": list(self.witness_B.support),
        }


def _relation_through(Q: BitMatrix, u0: int, inside: set[int], max_enum: int = 16) -> list[int] | None:
    """Linear relation among rows of ``Q`` involving ``u0`` with the fewest rows in ``inside``."""
    K = left_kernel(Q)
    if K.n_rows == 0:
        return None
    dense = K.to_dense()
    if K.n_rows <= max_enum:
        best = None
        for mask in range(1, 1 << K.n_rows):
            sel = [i for i in range(K.n_rows) if (mask >> i) & 1]
            rel = np.bitwise_xor.reduce(dense[sel], axis=0)
            if not rel[u0]:
                continue
            rows = [int(j) for j in np.flatnonzero(rel)]
            key = (sum(1 for j in rows if j in inside), len(rows), rows)
            if best is None or key < best:
                best = key
        return None if best is None else best[2]
    for rel in dense:
        if rel[u0]:
            return [int(j) for j in np.flatnonzero(rel)]
    return None


def _shells_ok(dist: dict, witness: BitVector, R2: int, mask: set[int] | None = None) -> bool:
    hit = {dist.get(("v", j)) for j in witness.support if mask is None or j in mask}
    return all(d in hit for d in range(1, 2 * R2, 2))


def verify_statement2(
    code: CssCode,
    u0: int,
    R1: int,
    R2: int | None = None,
    *,
    A: Iterable[int] | None = None,
    budget: int = DEFAULT_BUDGET,
    threads: int = 1,
) -> Statement2Report:
    """Exhaustively check ``wgt(b) >= R2`` and ``wgt(b[B]) >= R2 - R1`` for
    every ``b`` whose syndrome under the full-rank ``Q1`` is the indicator
    of ``u0``.

    ``R2`` defaults to the largest radius whose ball has independent rows.
    """
    Q = code.Q
    g = build_tanner(Q)
    W = ball(g, u0, 2 * R1)
    A = W.value_nodes() if A is None else index_set(A, code.n)
    if not set(A) <= set(W.value_nodes()):
        raise ValueError("A must lie inside the radius-2 R1 ball")
    others = Q.delete_rows([u0])
    if in_rowspace(others, Q.row(u0)) is None:
        raise PreconditionFailed("a", f"row {u0} is not involved in any linear relation")
    if R2 is None:
        R2 = locally_independent_radius(g, Q, u0, g.n_checks + g.n_values)
    partial = {"u0": u0, "R1": R1, "R2": R2}
    if R2 <= R1:
        raise PreconditionFailed("b", f"no R2 > R1 = {R1} with locally independent rows (got {R2})", partial)
    W2 = ball(g, u0, 2 * R2)
    if not rows_independent(Q, W2.check_nodes()):
        raise PreconditionFailed("b", f"rows within radius {2 * R2} are dependent", partial)
    relation = _relation_through(Q, u0, set(W2.check_nodes())) or []
    dropped, ok = drop_dependent_rows(Q, u0, W.check_nodes(), g)
    if not ok:
        raise PreconditionFailed("b", "cannot reach full row rank by dropping rows outside the ball", partial)
    keep = [i for i in range(Q.n_rows) if i not in set(dropped)]
    Q1 = Q.select_rows(keep)
    s = BitVector.from_support([keep.index(u0)], Q1.n_rows)
    B = complement(A, code.n)
    full = min_weight_with_syndrome(Q1, s, budget=budget, threads=threads)
    onB = min_weight_with_syndrome(Q1, s, mask=B, budget=budget, threads=threads)
    dist = g.distances(("u", u0))
    shells = _shells_ok(dist, full.witness, R2) and _shells_ok(dist, onB.witness, R2)
    return Statement2Report(
        u0, R1, R2, A, dropped, relation, int(full.weight), int(onB.weight), full.witness, onB.witness, shells
    )


# ---------------------------------------------------------------------------
# expansion and the Z-distance lower bound


@dataclass
class ExpansionProfile:
    f_actual: dict[int, int]
    witnesses: dict[int, tuple[int, ...]]

    @property
    def monotone_ok(self) -> bool:
        ms = sorted(self.f_actual)
        return all(self.f_actual[a] < self.f_actual[b] for a, b in zip(ms, ms[1:]))

    def to_dict(self) -> dict:
        return {
            "f": {str(m): v for m, v in sorted(self.f_actual.items())},
            "monotone_ok": self.monotone_ok,
            "witnesses": {str(m): list(v) for m, v in sorted(self.witnesses.items())},
        }


def _batched(it, size):
    it = iter(it)
    while True:
        chunk = list(islice(it, size))
        if not chunk:
            return
        yield chunk


def expansion_profile(Q: BitMatrix, m_max: int, *, budget: int = DEFAULT_BUDGET) -> ExpansionProfile:
    """Exact ``f(m) = min wgt(sum of m distinct rows)`` for ``m = 1..m_max``."""
    r = Q.n_rows
    m_max = min(m_max, r)
    total = sum(math.comb(r, m) for m in range(1, m_max + 1))
    if total > budget:
        from .errors import BudgetExceeded

        raise BudgetExceeded(total, budget)
    words = Q.words
    f: dict[int, int] = {}
    wit: dict[int, tuple[int, ...]] = {}
    for m in range(1, m_max + 1):
        best, best_rows = None, None
        for chunk in _batched(combinations(range(r), m), 1 << 14):
            idx = np.array(chunk, dtype=np.int64)
            x = np.bitwise_xor.reduce(words[idx], axis=1)
            w = np.bitwise_count(x).sum(axis=1)
            j = int(np.argmin(w))
            if best is None or int(w[j]) < best:
                best, best_rows = int(w[j]), tuple(int(i) for i in chunk[j])
        f[m], wit[m] = best, best_rows
    return ExpansionProfile(f, wit)


@dataclass
class Statement3Report:
    u0: int
    R1: int
    A: tuple[int, ...]
    dz0: float
    dz0_witness: BitVector | None
    profile: ExpansionProfile
    trivial_maximum: bool
    condition: dict

    @property
    def bound(self) -> int:
        return self.profile.f_actual[self.R1]

    @property
    def holds(self) -> bool:
        return self.dz0 >= self.bound

    def to_dict(self) -> dict:
        dz = None if math.isinf(self.dz0) else int(self.dz0)
        return {
            "statement": 3,
            "u0": self.u0,
            "R1": self.R1,
            "A": list(self.A),
            "dz0": dz,
            "bound": self.bound,
            "slack": None if dz is None else dz - self.bound,
            "holds": self.holds,
            "profile": self.profile.to_dict(),
            "trivial_maximum": self.trivial_maximum,
            "condition": dict(self.condition),
        }


def verify_statement3(
    code: CssCode,
    u0: int,
    R1: int,
    *,
    m_max: int | None = None,
    budget: int = DEFAULT_BUDGET,
    threads: int = 1,
) -> Statement3Report:
    """Check ``dz0 >= f(R1)`` for ``A`` the qubits of the radius-``2 R1`` ball.

    ``m_max`` bounds the expansion profile; it defaults to the number of
    rows inside that ball (at least ``max(2, R1)``).
    """
    if R1 < 1:
        raise ValueError("R1 must be a natural number")
    Q = code.Q
    g = build_tanner(Q)
    W = ball(g, u0, 2 * R1)
    A = W.value_nodes()
    B = complement(A, code.n)
    if m_max is None:
        m_max = max(2, R1, len(W.check_nodes()))
    m_max = min(m_max, Q.n_rows)
    profile = expansion_profile(Q, m_max, budget=budget)
    trivial = not Q.xor_all().any()
    Qp = Q.delete_rows([u0])
    cond = removal_condition(code, Qp, u0, A)
    partial = {"u0": u0, "R1": R1, "A": list(A), "profile": profile.to_dict(), "trivial_maximum": trivial, "condition": cond}
    if not all(cond.values()):
        raise PreconditionFailed("a", "A is not erasable once u0 is removed", partial)
    f_ok = profile.monotone_ok and (m_max < 2 or profile.f_actual[2] >= 1) and R1 <= m_max
    if not f_ok:
        why = "f has a trivial maximum" if trivial else "f is not strictly increasing"
        try:
            z = dz0(Qp, Q.row(u0), B, budget=budget, threads=threads)
            partial["dz0"] = None if math.isinf(z.weight) else int(z.weight)
        except (NoSupportedRepresentative, Inconsistent):
            partial["dz0"] = None
        raise PreconditionFailed("b", why, partial)
    z = dz0(Qp, Q.row(u0), B, budget=budget, threads=threads)
    return Statement3Report(u0, R1, A, z.weight, z.witness, profile, trivial, cond)
