import random

import numpy as np
import pytest

import oracles
from qdefect.csscode import CssCode
from qdefect.defect import construct_defect, gauge_fix_remove
from qdefect.entropy import (
    SymplecticGroup,
    check_kappa_bound,
    decompose_cut,
    deformation_stability,
    gamma,
    perimeter,
    state_from_code,
)
from qdefect.errors import ConditionFailed, NotErasable
from qdefect.f2core import BitMatrix
from qdefect.families import planar_surface, toric


def group_of(tab, n):
    return SymplecticGroup(BitMatrix.from_dense(np.array(tab, dtype=np.uint8), 2 * n), n)


def test_bell_pair():
    dec = decompose_cut(SymplecticGroup.from_paulis("XX", "ZZ"), [0])
    assert (dec.rank_SA, dec.rank_SB, dec.rank_SAB, dec.upsilon) == (0, 0, 2, 1)


def test_product_state():
    S = SymplecticGroup.from_paulis("ZI", "IZ")
    for A in ([], [0], [1], [0, 1]):
        assert decompose_cut(S, A).upsilon == 0


def test_anticommuting_generators_rejected():
    with pytest.raises(ValueError):
        SymplecticGroup.from_paulis("XI", "ZI")
    with pytest.raises(ValueError):
        SymplecticGroup.from_paulis("XQ")


def test_y_letters():
    S = SymplecticGroup.from_paulis("YY", "XX")
    assert S.is_pure
    assert decompose_cut(S, [1]).upsilon == 1


def test_mixed_odd_split_is_refused():
    with pytest.raises(ValueError):
        decompose_cut(SymplecticGroup.from_paulis("XX"), [0])


def test_random_states_against_element_oracle():
    rng = random.Random(99)
    cuts = 0
    while cuts < 120:
        n = rng.randint(1, 8)
        tab = oracles.random_stabilizer_state(n, rng)
        S = group_of(tab, n)
        assert S.is_pure
        A = sorted(rng.sample(range(n), rng.randint(0, n)))
        B = [j for j in range(n) if j not in A]
        d_ab, d_ba = decompose_cut(S, A), decompose_cut(S, B)
        assert d_ab.rank_SAB % 2 == 0
        assert d_ab.upsilon == d_ba.upsilon
        assert d_ab.upsilon == len(A) - d_ab.rank_SA == len(B) - d_ab.rank_SB
        assert d_ab.upsilon == oracles.entropy_by_elements(tab, n, A)
        assert d_ab.rank_SA + d_ab.rank_SB + d_ab.rank_SAB == n
        cuts += 1


def test_state_from_code():
    code = toric(3)
    A = code.Q.row(0).support
    S = state_from_code(code, A)
    assert S.rank == 18
    zpart = S.generators.to_dense()[code.P.n_rows + code.Q.n_rows :, code.n :]
    assert not zpart[:, list(A)].any()
    dec = decompose_cut(S, A)
    assert dec.upsilon == len(A) - dec.rank_SA == 3


def test_state_from_k0_code():
    code = CssCode(BitMatrix.from_strings("11"), BitMatrix.from_strings("11"))
    S = state_from_code(code)
    assert S.rank == 2 and S.generators.n_rows == 2


def test_state_from_code_requires_erasable():
    with pytest.raises(NotErasable):
        state_from_code(toric(3), [0, 1, 2])


def test_perimeter():
    Q = toric(3).Q
    assert perimeter(Q, []) == 0
    assert perimeter(Q, [0]) == 2
    assert perimeter(Q, Q.row(0).support) == 4
    one = BitMatrix.from_strings("1100", "0011")
    assert perimeter(one, [0, 1]) == 0


def test_gamma_values():
    assert gamma(toric(4), toric(4).Q.row(0).support).gamma == 1
    assert gamma(toric(3), toric(3).Q.row(4).support).gamma == 1
    p = planar_surface(5)
    assert gamma(p, p.Q.row(7).support).gamma == 1
    # a plaquette on the smooth boundary: no hidden relation
    assert gamma(p, p.Q.row(2).support).gamma == 0
    product = CssCode(BitMatrix.zeros(0, 2), BitMatrix.from_strings("10", "01"))
    assert gamma(product, [0]).gamma == 0


def test_gamma_x_side():
    dec = gamma(toric(3), toric(3).Q.row(0).support, x_side=True)
    assert dec.perimeter_X == 4  # the four corner stars


def all_reports():
    t5 = toric(5)
    gf = gauge_fix_remove(t5, t5.Q.row(0).support)
    return [
        construct_defect(toric(4), 5, 1, verify=False),
        construct_defect(gf.result, gf.row_map[12], 1, verify=False),
        construct_defect(planar_surface(5), 7, 1, verify=False),
        construct_defect(planar_surface(4), 5, 1, verify=False),
    ]


def test_kappa_at_most_gamma_on_defects():
    for rep in all_reports():
        kb = check_kappa_bound(rep)
        assert kb.kappa == 1 and kb.gamma >= 1 and kb.holds


def test_gamma_zero_regions_never_give_degenerate_defects():
    p = planar_surface(4)
    for u in range(p.Q.n_rows):
        A = p.Q.row(u).support
        if gamma(p, A).gamma != 0:
            continue
        try:
            rep = construct_defect(p, u, 1, verify=False)
        except ConditionFailed:
            continue
        assert not (rep.kappa > 0 and rep.d_prime > rep.w)


def test_empty_moves_are_stable():
    code = toric(4)
    rep = deformation_stability(code, code.Q.row(5).support, [], u0=5)
    assert rep.stable and len(rep.steps) == 1


def test_sliding_hole_keeps_kappa():
    code = toric(5)
    A = code.Q.row(12).support
    moves = [18, 13]  # toward plaquette 13
    rep = deformation_stability(code, A, moves, u0=12)
    assert [s.kappa for s in rep.steps] == [1, 1, 1]
    assert all(s.gamma >= s.kappa for s in rep.steps)
    # d' = 3 < w + 1, so no prefix is inside the guarantee
    assert not any(s.in_guarantee for s in rep.steps)
    assert rep.to_csv().splitlines()[0] == "step,move,size_A,kappa,gamma,in_guarantee,ok"


def test_guarantee_boundary():
    code = toric(4)
    A = code.Q.row(5).support
    rep = deformation_stability(code, A, [6, 6, 6], w=0, d_prime=2, u0=5)
    assert [s.in_guarantee for s in rep.steps] == [True, True, False, False]
    assert rep.to_dict()["steps"][3]["ok"] is None


def test_violation_is_reported():
    code = toric(4)
    A = code.Q.row(5).support
    # force the check on; once the hole is gone gamma = 0 < kappa = 1
    rep = deformation_stability(code, A, list(A), w=0, d_prime=10, u0=5)
    assert rep.first_violation == 4
    assert not rep.stable


def test_unerasable_step_inside_guarantee_raises():
    code = toric(3)
    with pytest.raises(NotErasable):
        deformation_stability(code, code.Q.row(4).support, [0, 1, 2], w=0, d_prime=20, u0=4)
