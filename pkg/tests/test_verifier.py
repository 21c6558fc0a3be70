from __future__ import annotations

import numpy as np
import pytest

from qrep.assembler import build_generators
from qrep.errors import CapExceeded, DimensionMismatch
from qrep.rank_one import rank_one_generators
from qrep.verifier import build_oracle, check_relations, classical_trace_gap, compare_invariants


def test_rank_one_relations_hold():
    report = check_relations(rank_one_generators(4, 0.5))
    assert set(report.groups()) == {"cartan_action", "ladder", "qform", "qq"}
    assert report.max_relative() <= 1e-12
    assert report.passed


@pytest.mark.parametrize("kind, hw", [("A2", (1, 2)), ("B2", (2, 0)), ("G2", (0, 1))])
def test_rank_two_relations_hold(kind, hw):
    report = check_relations(build_generators(kind, hw, 0.7))
    assert report.max_relative() <= 1e-10
    assert all(v <= 1e-10 for v in report.relative().values())


def test_corrupted_generator_fails_ladder():
    g = build_generators("A2", (1, 1), 0.3)
    g.xplus[0][np.nonzero(g.xplus[0])[0][0], np.nonzero(g.xplus[0])[1][0]] *= 1.1
    report = check_relations(g)
    assert max(res / sc for res, sc in report.groups()["ladder"].values()) > 1e-3
    assert not report.passed


@pytest.mark.parametrize("kind, hw, dim", [("G2", (1, 0), 7), ("B2", (1, 1), 16), ("A2", (1, 0), 3), ("A2", (2, 1), 15)])
def test_oracle_dimensions(kind, hw, dim):
    assert build_oracle(kind, hw, 0.3).dim == dim


@pytest.mark.parametrize("kind", ["A2", "B2", "G2"])
def test_oracle_matches_pipeline_dimension(kind):
    for p in range(3):
        for q in range(3 - p):
            g = build_generators(kind, (p, q), 0.25)
            if g.dim > 30:  # the word-basis oracle grows quickly with dimension
                continue
            assert build_oracle(kind, (p, q), 0.25).dim == g.dim


def test_oracle_satisfies_relations():
    assert check_relations(build_oracle("B2", (0, 1), 0.4)).max_relative() <= 1e-10


def test_invariant_comparison():
    g = build_generators("A2", (2, 1), 0.3)
    o = build_oracle("A2", (2, 1), 0.3)
    assert compare_invariants(g, o, [()]) == 0.0
    assert compare_invariants(g, o, [("xp1", "xm1")]) <= 1e-8
    assert compare_invariants(g, o) <= 1e-8


def test_invariants_separate_inequivalent_deformations():
    g = build_generators("A2", (1, 1), 0.3)
    other = build_generators("A2", (1, 1), 0.31)
    assert compare_invariants(g, other) > 1e-4


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        compare_invariants(build_generators("A2", (1, 0), 0.3), build_generators("A2", (1, 1), 0.3))


def test_oracle_cap():
    with pytest.raises(CapExceeded):
        build_oracle("A2", (2, 1), 0.3, cap=10)


def test_classical_trace_gap_small():
    g = build_generators("A2", (1, 1), 1e-3)
    assert classical_trace_gap(g, 0) <= 1e-4
    assert classical_trace_gap(g, 1) <= 1e-4
