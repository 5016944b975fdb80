"""Acceptance criteria 1-9.

Each test carries a ``criterion`` marker; ``conftest.py`` prints one
PASS/FAIL line per criterion at the end of the run.  Reference numbers come
from the integer-bitset oracles in ``oracles.py``.
"""

import random
import time
from itertools import combinations

import numpy as np
import pytest

import oracles
import test_cli
from qdefect.cli import main
from qdefect.csscode import css_distances, is_erasable
from qdefect.defect import (
    construct_defect,
    expansion_profile,
    gauge_fix_remove,
    verify_statement2,
    verify_statement3,
)
from qdefect.entropy import SymplecticGroup, check_kappa_bound, decompose_cut, gamma
from qdefect.errors import ConditionFailed
from qdefect.f2core import BitMatrix, dual_basis, puncture, rank, shorten
from qdefect.families import hypergraph_product, planar_surface, toric, with_boundary_row


def criterion(number, title):
    return pytest.mark.criterion(number, title)


@pytest.fixture(scope="module")
def reports():
    t5 = toric(5)
    aux = gauge_fix_remove(t5, t5.Q.row(0).support)
    return {
        "toric4": construct_defect(toric(4), 5, 1, verify=False),
        "planar5": construct_defect(planar_surface(5), 7, 1, verify=False),
        "planar4": construct_defect(planar_surface(4), 5, 1, verify=False),
        "toric5_single": construct_defect(t5, 12, 1, verify=False),
        "toric5_two_holes": construct_defect(aux.result, aux.row_map[12], 1, verify=False),
    }


@criterion(1, "puncture/shorten rank identity")
def test_rank_identity():
    rng = random.Random(1)
    start = time.perf_counter()
    for _ in range(250):
        n = rng.randint(1, 16)
        m = rng.randint(0, n)
        G = BitMatrix.from_dense(np.array([[rng.randint(0, 1) for _ in range(n)] for _ in range(m)], dtype=np.uint8), n)
        H = dual_basis(G)
        B = sorted(rng.sample(range(n), rng.randint(0, n)))
        assert rank(puncture(G, B)) + rank(shorten(H, B)) == len(B)
        if n <= 10:
            g_rows, h_rows = oracles.rows_of(G), oracles.dual(oracles.rows_of(G), n)
            assert oracles.puncture_rank(g_rows, B) + oracles.shorten_rank(h_rows, B) == len(B)
    assert time.perf_counter() - start < 5


@criterion(2, "family parameters")
def test_family_parameters():
    start = time.perf_counter()
    cases = [
        (toric(2), (8, 2, 2)),
        (toric(3), (18, 2, 3)),
        (toric(4), (32, 2, 4)),
        (hypergraph_product(BitMatrix.from_strings("11"), BitMatrix.from_strings("11")), (5, 1, 2)),
    ]
    for code, (n, k, d) in cases:
        dist = css_distances(code)
        assert (code.n, code.k, dist.d) == (n, k, d)
        P, Q = oracles.rows_of(code.P), oracles.rows_of(code.Q)
        assert oracles.css_distance_logical_cosets(P, Q, n) == (dist.d_X, dist.d_Z)
        if n <= 12:
            assert oracles.css_distance_bruteforce(P, Q, n) == (dist.d_X, dist.d_Z)
            assert oracles.css_distance_cosets(P, Q, n) == (dist.d_X, dist.d_Z)
    assert time.perf_counter() - start < 60


@criterion(3, "erasure and gauge fixing keep k and bound the distances")
def test_statement1():
    rng = random.Random(3)
    checked = 0
    for L in (3, 4):
        code = toric(L)
        d = css_distances(code)
        done = 0
        while done < 12:
            A = sorted(rng.sample(range(code.n), rng.randint(1, 3)))
            if not is_erasable(code, A).erasable:
                continue
            gf = gauge_fix_remove(code, A)
            dp = css_distances(gf.result)
            assert gf.result.k == code.k
            assert d.d_X - len(A) <= dp.d_X <= d.d_X
            assert dp.d_Z >= d.d_Z
            P, Q = oracles.rows_of(gf.result.P), oracles.rows_of(gf.result.Q)
            assert oracles.css_distance_logical_cosets(P, Q, gf.result.n) == (dp.d_X, dp.d_Z)
            done += 1
        checked += done
    assert checked >= 20


@criterion(4, "single-qubit removal on toric(4)")
def test_single_qubit_removal():
    code = toric(4)
    w = code.max_weight
    touching = [i for i in range(code.Q.n_rows) if code.Q.row(i)[0]]
    gf = gauge_fix_remove(code, [0])
    new_rows = [i for i in range(gf.result.Q.n_rows) if i not in gf.row_map.values()]
    assert len(new_rows) == len(touching) - 1 == 1
    assert gf.result.Q.row(new_rows[0]).weight == 2 * w - 2 == 6
    assert rank(gf.result.Q) == oracles.shorten_rank(oracles.rows_of(code.Q), gf.B)


def _min_weight_on_B(rows, n, target, A):
    """Minimum ``wgt(b[B])`` over all ``b`` with syndrome ``target``; ``b[A]`` is free."""
    col_syn = [sum(((r >> j) & 1) << i for i, r in enumerate(rows)) for j in range(n)]
    free = oracles.span([col_syn[a] for a in A])
    B = [j for j in range(n) if j not in set(A)]
    for k in range(len(B) + 1):
        for sub in combinations(B, k):
            s = 0
            for j in sub:
                s ^= col_syn[j]
            if s ^ target in free:
                return k
    return float("inf")


def _check_statement2(code, u0, R1):
    rep = verify_statement2(code, u0, R1)
    keep = [i for i in range(code.Q.n_rows) if i not in rep.dropped_rows]
    rows = oracles.rows_of(code.Q.select_rows(keep))
    target = 1 << keep.index(u0)
    assert rep.min_weight == oracles.min_weight_syndrome(rows, code.n, target)
    assert rep.min_weight_B == _min_weight_on_B(rows, code.n, target, rep.A)
    assert rep.min_weight >= rep.R2 and rep.min_weight_B >= rep.R2 - R1
    assert rep.holds and rep.shells_ok
    return rep


@criterion(5, "syndrome weight around a promoted row")
def test_statement2():
    rep = _check_statement2(toric(3), 0, 0)
    assert rep.R2 == 1
    sat = _check_statement2(with_boundary_row(planar_surface(5)), 7, 1)
    assert sat.saturated and sat.min_weight_B == sat.R2 - 1


@criterion(6, "expansion bound on planar(4)")
def test_statement3(reports):
    code = planar_surface(4)
    rep = verify_statement3(code, 5, 1, m_max=4)
    prof = expansion_profile(code.Q, 4)
    rows = oracles.rows_of(code.Q)
    exact = {m: oracles.expansion_exact(rows, m) for m in range(1, 5)}
    assert prof.f_actual == exact
    assert all(exact[m] < exact[m + 1] for m in range(1, 4))
    assert rep.dz0 >= prof.f_actual[1]
    assert rep.holds
    assert reports["planar4"].dz0 == rep.dz0


@criterion(7, "stabilizer entropy and the kappa bound")
def test_entropy(reports):
    bell = decompose_cut(SymplecticGroup.from_paulis("XX", "ZZ"), [0])
    assert bell.upsilon == 1
    rng = random.Random(7)
    for _ in range(110):
        n = rng.randint(1, 10)
        tab = oracles.random_stabilizer_state(n, rng)
        S = SymplecticGroup(BitMatrix.from_dense(np.array(tab, dtype=np.uint8), 2 * n), n)
        A = sorted(rng.sample(range(n), rng.randint(0, n)))
        B = [j for j in range(n) if j not in A]
        ab, ba = decompose_cut(S, A), decompose_cut(S, B)
        assert ab.upsilon == ba.upsilon == len(A) - ab.rank_SA
        assert ab.upsilon == oracles.entropy_by_elements(tab, n, A)
    for rep in reports.values():
        assert check_kappa_bound(rep).holds
    seen_zero = 0
    for code in (planar_surface(4), planar_surface(5), toric(4)):
        for u in range(code.Q.n_rows):
            A = code.Q.row(u).support
            if gamma(code, A).gamma != 0:
                continue
            seen_zero += 1
            try:
                rep = construct_defect(code, u, 1, verify=False)
            except ConditionFailed:
                continue
            assert not (rep.kappa > 0 and rep.d_prime > rep.w)
    assert seen_zero > 0


@criterion(8, "two-hole toric(5) defect")
def test_two_hole_toric5(reports):
    start = time.perf_counter()
    rep = reports["toric5_two_holes"]
    assert rep.kappa == 1
    dist = css_distances(rep.defect_code)
    # frozen from the exhaustive search; the split (gauge, dx0/dz0) form must agree
    assert rep.d_prime == min(dist.d_X, dist.d_Z) == 2
    assert rep.distances_consistent
    assert (rep.dx_prime, rep.dz_prime) == (dist.d_X, dist.d_Z)
    single = reports["toric5_single"]
    assert single.dx0 <= single.w
    assert time.perf_counter() - start < 600


@criterion(9, "CLI determinism")
def test_cli_determinism(tmp_path, capsys):
    bundles = test_cli.make_bundles(tmp_path)
    for golden, argv, exit_code, _ in test_cli.CASES:
        argv = test_cli.expand(argv, bundles)
        outs = []
        for threads in ("1", "1", "4"):
            assert main(argv + ["--threads", threads]) == exit_code
            outs.append(capsys.readouterr().out)
        assert outs[0] == outs[1] == outs[2] == (test_cli.GOLDEN / golden).read_text()
    for golden, argv in test_cli.TEXT_CASES:
        argv = test_cli.expand(argv, bundles)
        outs = []
        for _ in range(2):
            assert main(argv) == 0
            outs.append(capsys.readouterr().out)
        assert outs[0] == outs[1] == (test_cli.GOLDEN / golden).read_text()
