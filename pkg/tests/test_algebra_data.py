from __future__ import annotations

from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qrep.algebra_data import AlgebraKind, det, fundamental_gram, root_system, weyl_orbit
from qrep.errors import InvalidParameter

RANK2 = [AlgebraKind.A2, AlgebraKind.B2, AlgebraKind.D2, AlgebraKind.G2]


@pytest.mark.parametrize(
    "kind, sym, w, grading, step, shifts, order",
    [
        ("A2", ((2, -1), (-1, 2)), (1, 1), (1, 1), 1, (1, 1), 6),
        ("B2", ((2, -2), (-2, 4)), (1, 2), (1, 2), 2, (0, 1), 8),
        ("G2", ((2, -3), (-3, 6)), (1, 3), (1, 3), 1, (-1, 3), 12),
        ("D2", ((2, 0), (0, 2)), (1, 1), (1, 1), 2, (1, 1), 4),
    ],
)
def test_rank_two_tables(kind, sym, w, grading, step, shifts, order):
    rs = root_system(kind)
    assert rs.sym_cartan == sym
    assert rs.symmetrizers == w
    assert tuple(rs.grading) == grading
    assert rs.level_step == step
    assert (rs.shift1, rs.shift2) == shifts
    assert len(rs.weyl_group) == order
    assert rs.rho == (1, 1)


def test_symmetrised_cartan_is_diag_w_times_k():
    for kind in RANK2:
        rs = root_system(kind)
        for i, j in product(range(2), repeat=2):
            assert rs.sym_cartan[i][j] == rs.symmetrizers[i] * rs.cartan[i][j]
            assert rs.sym_cartan[i][j] == rs.sym_cartan[j][i]


def test_a1_table():
    rs = root_system("A1")
    assert rs.cartan == ((2,),)
    assert len(rs.weyl_group) == 2


def test_c2_folds_onto_b2():
    assert AlgebraKind.parse("C2") is AlgebraKind.B2
    assert AlgebraKind.parse("c2") is AlgebraKind.B2
    assert root_system("C2") == root_system("B2")


def test_unknown_tag_rejected():
    with pytest.raises(InvalidParameter):
        AlgebraKind.parse("E8")


def test_positive_root_counts():
    assert [len(root_system(k).positive_roots) for k in ("A2", "B2", "G2", "D2")] == [3, 4, 6, 2]


@pytest.mark.parametrize("kind", RANK2 + [AlgebraKind.A1])
def test_weyl_group_closed_with_identity_and_unit_determinants(kind):
    rs = root_system(kind)
    group = set(rs.weyl_group)
    n = rs.rank
    identity = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    assert identity in group
    for a in group:
        assert det(a) in (1, -1)
        for b in group:
            prod = tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))
            assert prod in group


@pytest.mark.parametrize("kind", RANK2)
def test_weyl_group_preserves_weight_inner_product(kind):
    rs = root_system(kind)
    m = fundamental_gram(rs)
    for wm in rs.weyl_group:
        lhs = [[sum(Fraction(wm[k][i]) * m[k][l] * wm[l][j] for k in range(2) for l in range(2)) for j in range(2)] for i in range(2)]
        assert lhs == [list(r) for r in m]


def test_orbit_of_regular_and_fixed_weights():
    a2 = root_system("A2")
    orbit = weyl_orbit(a2, (1, 1))
    assert len(orbit) == 6
    assert sum(s for _, s in orbit) == 0
    zero = weyl_orbit(a2, (0, 0))
    assert [w for w, _ in zero] == [(0, 0)] * 6
    assert sorted(s for _, s in zero) == [-1, -1, -1, 1, 1, 1]


def _brute_force_orbit(cartan, weight):
    # independent closure under the simple reflections lambda -> lambda - lambda_i * alpha_i
    n = len(weight)
    seen = {tuple(weight)}
    todo = [tuple(weight)]
    while todo:
        lam = todo.pop()
        for i in range(n):
            nxt = tuple(lam[k] - lam[i] * cartan[k][i] for k in range(n))
            if nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
    return seen


def test_b2_rho_orbit_is_regular():
    rs = root_system("B2")
    orbit = {w for w, _ in weyl_orbit(rs, rs.rho)}
    assert len(orbit) == 8
    assert orbit == _brute_force_orbit(rs.cartan, rs.rho)


@given(st.sampled_from(["A2", "B2", "G2"]), st.integers(-4, 4), st.integers(-4, 4))
def test_orbit_matches_brute_force_closure(kind, a, b):
    rs = root_system(kind)
    assert {w for w, _ in weyl_orbit(rs, (a, b))} == _brute_force_orbit(rs.cartan, (a, b))
