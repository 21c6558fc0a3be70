from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qrep.errors import InvalidParameter
from qrep.rank_one import build_d2, build_q_generators, build_rank_one


def test_trivial_representation():
    rep = build_rank_one(0, 0.3)
    assert rep.xplus.shape == (1, 1)
    assert not rep.xplus.any()
    assert rep.h.tolist() == [[0.0]]


@pytest.mark.parametrize("t", [0.01, 0.3, 2.0])
def test_spinor_entry_is_one(t):
    assert np.allclose(build_rank_one(1, t).xplus, [[0, 1], [0, 0]], atol=1e-15)


def test_spin_one_entries():
    t = 0.3
    rep = build_rank_one(2, t)
    value = math.sqrt(math.sinh(t) * math.sinh(2 * t)) / math.sinh(t)
    assert rep.xplus[0, 1] == pytest.approx(value, rel=1e-15)
    assert rep.xplus[1, 2] == pytest.approx(value, rel=1e-15)
    comm = rep.xplus @ rep.xminus - rep.xminus @ rep.xplus
    assert np.allclose(comm, np.diag(np.sinh(t * np.diag(rep.h)) / math.sinh(t)), rtol=1e-14, atol=1e-14)


def test_invalid_parameters():
    with pytest.raises(InvalidParameter):
        build_rank_one(2, 0.0)
    with pytest.raises(InvalidParameter):
        build_rank_one(-1, 0.3)
    with pytest.raises(InvalidParameter):
        build_d2((1, 1), -0.5)


def test_q_generators_of_trivial_rep():
    # Q^- = T^- - R/(2 sinh t) carries the minus sign on its diagonal
    qp, qm = build_q_generators(build_rank_one(0, 0.3))
    assert qp[0, 0] == pytest.approx(1 / (2 * math.sinh(0.3)))
    assert qm[0, 0] == pytest.approx(-1 / (2 * math.sinh(0.3)))


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 8), st.floats(1e-3, 2.0))
def test_rank_one_relations(twice_l, t):
    rep = build_rank_one(twice_l, t)
    h = np.diag(rep.h)
    assert np.array_equal(h, np.arange(twice_l, -twice_l - 1, -2))
    assert np.array_equal(rep.xplus, rep.xminus.T)
    comm = rep.xplus @ rep.xminus - rep.xminus @ rep.xplus
    want = np.diag(np.sinh(t * h) / math.sinh(t))
    assert np.max(np.abs(comm - want)) <= 1e-12 * max(1.0, np.max(np.abs(want)))
    r = np.diag(np.exp(t * h))
    assert np.allclose(r @ rep.xplus, math.exp(2 * t) * rep.xplus @ r, rtol=1e-12, atol=1e-300)
    qp, qm = build_q_generators(rep)
    lhs = math.exp(t) * qp @ qm - math.exp(-t) * qm @ qp
    rhs = -np.eye(rep.dim) / (2 * math.sinh(t))
    assert np.max(np.abs(lhs - rhs)) <= 1e-9 * max(np.max(np.abs(math.exp(t) * qp @ qm)), 1.0)
    # undo the shift and the quarter conjugation
    quarter = np.diag(np.exp(t * h / 4))
    assert np.allclose(qp - r / (2 * math.sinh(t)), quarter @ rep.xplus @ quarter, rtol=1e-12, atol=1e-12)


def test_classical_limit_is_second_order():
    def err(t):
        rep = build_rank_one(4, t)
        comm = rep.xplus @ rep.xminus - rep.xminus @ rep.xplus
        return np.max(np.abs(comm - rep.h))

    assert err(2e-3) / err(1e-3) == pytest.approx(4.0, abs=0.05)


def test_d2_products():
    g = build_d2((1, 1), 0.3)
    assert g.dim == 4
    assert not (g.xp1 @ g.xp2 - g.xp2 @ g.xp1).any()
    triv = build_d2((0, 0), 0.3)
    assert triv.dim == 1
    spinor = build_d2((1, 0), 0.3)
    assert np.array_equal(spinor.xp1, build_rank_one(1, 0.3).xplus)
    assert not spinor.xp2.any()
