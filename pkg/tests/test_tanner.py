import pytest

from qdefect.f2core import BitMatrix
from qdefect.families import planar_surface, toric
from qdefect.tanner import (
    ball,
    ball_qubits,
    build_tanner,
    locally_independent_radius,
    rows_independent,
    to_dot,
)


def test_degrees_match_weights():
    code = toric(3)
    g = build_tanner(code.Q)
    assert g.n_checks == 9 and g.n_values == 18
    assert all(g.degree(("u", i)) == 4 for i in range(9))
    assert all(g.degree(("v", j)) == 2 for j in range(18))
    assert len(g.edges()) == int(code.Q.row_weights().sum())


def test_adjacency_is_exact():
    Q = BitMatrix.from_strings("1100", "0111")
    g = build_tanner(Q)
    assert set(g.edges()) == {(0, 0), (0, 1), (1, 1), (1, 2), (1, 3)}
    assert g.neighbors(("v", 1)) == (("u", 0), ("u", 1))


def test_ball_nesting_and_parity():
    g = build_tanner(planar_surface(4).Q)
    prev = set()
    for R in range(6):
        b = ball(g, 5, R)
        assert ("u", 5) in b
        assert prev <= set(b.nodes)
        for node, d in b.dist.items():
            assert (node[0] == "u") == (d % 2 == 0)
        prev = set(b.nodes)


def test_ball_qubits_is_row_support_for_radius_two():
    code = toric(4)
    assert ball_qubits(code.Q, 3, 1) == code.Q.row(3).support
    assert ball_qubits(code.Q, 3, 0) == ()


def test_negative_radius_and_unknown_node():
    g = build_tanner(toric(2).Q)
    with pytest.raises(ValueError):
        ball(g, 0, -1)
    with pytest.raises(KeyError):
        g.distances(("u", 99))


def test_locally_independent_radius():
    single = BitMatrix.from_strings("111")
    assert locally_independent_radius(build_tanner(single), single, 0, 5) == 5
    dup = BitMatrix.from_strings("1100", "1100", "0011")
    assert locally_independent_radius(build_tanner(dup), dup, 0, 5) == 0
    zero = BitMatrix.from_strings("000", "110")
    assert locally_independent_radius(build_tanner(zero), zero, 0, 3) == -1
    Q = toric(3).Q
    assert locally_independent_radius(build_tanner(Q), Q, 0, 10) == 1


def test_rows_independent():
    Q = toric(3).Q
    assert rows_independent(Q, range(8))
    assert not rows_independent(Q, range(9))


def test_dot_output():
    g = build_tanner(BitMatrix.from_strings("11"))
    text = to_dot(g, ball(g, 0, 0))
    assert text.startswith("graph tanner {") and "u0 -- v1;" in text
    assert "fillcolor" in text.splitlines()[1]
