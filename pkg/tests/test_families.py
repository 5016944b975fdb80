import pytest

import oracles
from qdefect.csscode import css_distances
from qdefect.errors import InfeasibleSpec
from qdefect.f2core import BitMatrix, rank
from qdefect.families import (
    FAMILIES,
    RegularMatrixSpec,
    cycle_matrix,
    hypergraph_product,
    planar_qubit,
    planar_surface,
    random_regular_matrix,
    toric,
    with_boundary_row,
)


@pytest.mark.parametrize("L", [2, 3, 4])
def test_toric_parameters(L):
    code = toric(L)
    d = css_distances(code)
    assert (code.n, code.k, d.d_X, d.d_Z) == (2 * L * L, 2, L, L)
    assert set(code.P.row_weights()) == {4} and set(code.Q.row_weights()) == {4}
    assert set(code.Q.col_weights()) == {2}


@pytest.mark.parametrize("L", [2, 3, 4])
def test_planar_parameters(L):
    code = planar_surface(L)
    d = css_distances(code)
    assert (code.n, code.k, d.d_X, d.d_Z) == (L * L + (L - 1) ** 2, 1, L, L)


def test_toric_index_map():
    code = toric(3)
    # plaquette with corner (1, 2): h(1,2), h(2,2), v(1,2), v(1,0)
    assert code.Q.row(5).support == tuple(sorted([5, 8, 9 + 5, 9 + 3]))
    # star at (0, 0): h(0,0), h(0,2), v(0,0), v(2,0)
    assert code.P.row(0).support == tuple(sorted([0, 2, 9, 15]))


def test_planar_index_map_and_boundary():
    L = 4
    code = planar_surface(L)
    assert planar_qubit(L, "h", 1, 2) == 6
    assert planar_qubit(L, "v", 0, 1) == 16
    top = [planar_qubit(L, "h", 0, c) for c in range(L)]
    cw = code.Q.col_weights()
    assert all(cw[q] == 1 for q in top)


def test_with_boundary_row_adds_dependent_row():
    code = planar_surface(3)
    ext = with_boundary_row(code)
    assert ext.Q.n_rows == code.Q.n_rows + 1
    assert ext.k == code.k
    assert rank(ext.Q) == rank(code.Q)


def test_qhp_small_cases():
    rep = BitMatrix.from_strings("11")
    assert hypergraph_product(rep, rep).n == 5
    code = hypergraph_product(cycle_matrix(3), cycle_matrix(3))
    d = css_distances(code)
    assert (code.n, code.k, d.d_X, d.d_Z) == (18, 2, 3, 3)
    want = oracles.css_distance_cosets(oracles.rows_of(code.P), oracles.rows_of(code.Q), code.n)
    assert (d.d_X, d.d_Z) == want


def test_qhp_size_arithmetic():
    H1 = BitMatrix.from_strings("110", "011")
    H2 = BitMatrix.from_strings("1100", "0110", "0011")
    code = hypergraph_product(H1, H2)
    assert code.n == 3 * 4 + 2 * 3


def test_regular_matrix_is_regular_and_seeded():
    spec = RegularMatrixSpec(3, 2, 4, 6, seed=5)
    H = random_regular_matrix(spec)
    assert set(H.row_weights()) == {3} and set(H.col_weights()) == {2}
    assert random_regular_matrix(spec) == H
    other = random_regular_matrix(RegularMatrixSpec(3, 2, 4, 6, seed=6))
    assert other.shape == H.shape


def test_regular_matrix_frozen_sample():
    # regression value for the documented Mersenne-Twister configuration model
    H = random_regular_matrix(RegularMatrixSpec(2, 2, 4, 4, seed=0))
    assert H.supports() == [(1, 2), (1, 3), (0, 2), (0, 3)]


@pytest.mark.parametrize(
    "args",
    [(3, 2, 4, 5), (0, 1, 1, 1), (3, 3, 2, 2), (2, 2, 1, 1)],
)
def test_infeasible_specs(args):
    with pytest.raises(InfeasibleSpec):
        RegularMatrixSpec(*args)


def test_small_sizes_rejected():
    with pytest.raises(ValueError):
        toric(1)
    with pytest.raises(ValueError):
        planar_surface(1)


def test_family_listing():
    assert set(FAMILIES) == {"toric", "planar", "qhp", "regular", "qhp-regular"}
