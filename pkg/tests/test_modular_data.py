from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fusionforge.errors import (
    BadTwist,
    NonIntegerFusion,
    NotSelfDual,
    NotSimpleCurrent,
    UnknownLabel,
)
from fusionforge.families import affine_sl2, lattice, sl2_fusion_rule, virasoro_minimal
from fusionforge.modular_data import (
    ModularData,
    Statistics,
    check_axioms,
    classify_simple_current,
    find_label_matching,
    monodromy_phase,
    qdim,
    tensor_product,
    verlinde_fusion,
)


def sl2_S(k):
    n = k + 2
    return np.array([[math.sqrt(2 / n) * math.sin(math.pi * (i + 1) * (j + 1) / n) for j in range(k + 1)]
                     for i in range(k + 1)])


@given(st.integers(1, 12))
def test_sl2_matches_closed_forms(k):
    md = affine_sl2(k)
    assert np.allclose(md.S, sl2_S(k), atol=1e-12)
    assert md.h == tuple(Fraction(l * (l + 2), 4 * (k + 2)) for l in range(k + 1))
    assert md.central_charge == Fraction(3 * k, k + 2)
    N = verlinde_fusion(md)
    for i, j, t in itertools.product(range(k + 1), repeat=3):
        assert N[i, j, t] == sl2_fusion_rule(k, i, j, t)


@given(st.integers(1, 10), st.data())
def test_sl2_quantum_dimensions(k, data):
    lam = data.draw(st.integers(0, k))
    md = affine_sl2(k)
    want = math.sin(math.pi * (lam + 1) / (k + 2)) / math.sin(math.pi / (k + 2))
    assert qdim(md, lam) == pytest.approx(want, abs=1e-12)


def test_vir35_weights_and_s_matrix():
    md = virasoro_minimal(3, 5)
    assert md.central_charge == Fraction(-3, 5)
    assert md.rank == 4
    for s in range(1, 5):
        assert md.h[md.index(f"(1,{s})")] == Fraction((5 - 3 * s) ** 2 - 4, 60)
    for s, t in itertools.product(range(1, 5), repeat=2):
        want = (-1) ** (s + t) * math.sqrt(2 / 5) * math.sin(3 * math.pi * s * t / 5)
        assert md.S[md.index(f"(1,{s})"), md.index(f"(1,{t})")].real == pytest.approx(want, abs=1e-12)


def test_ising_data():
    md = virasoro_minimal(3, 4)
    assert md.labels == ("(1,1)", "(1,2)", "(1,3)")
    assert md.h == (0, Fraction(1, 16), Fraction(1, 2))
    r = 1 / math.sqrt(2)
    assert np.allclose(md.S, [[0.5, r, 0.5], [r, 0, -r], [0.5, -r, 0.5]], atol=1e-12)


def test_nonunitary_vacuum_row_is_positive():
    md = virasoro_minimal(2, 5)
    assert md.S[0, 0].real > 0
    assert check_axioms(md).passed


@given(st.integers(1, 12))
def test_rank_one_lattice(n):
    md, L = lattice([[2 * n]])
    d = 2 * n
    want = np.array([[np.exp(2j * np.pi * a * b / d) for b in range(d)] for a in range(d)]) / math.sqrt(d)
    assert np.allclose(md.S, want, atol=1e-12)
    assert md.h == tuple(Fraction(min(a, d - a) ** 2, 2 * d) for a in range(d))
    N = verlinde_fusion(md)
    for a, b in itertools.product(range(d), repeat=2):
        assert md.fuse(a, b) == {(a + b) % d: 1}
        assert N[a, b].sum() == 1


def test_monodromy_of_sl2_current():
    k = 5
    md = affine_sl2(k)
    for lam in range(k + 1):
        assert monodromy_phase(md, k, lam) == Fraction(lam, 2) % 1


@pytest.mark.parametrize(
    "desc, current, expected",
    [
        ("sl2", 4, Statistics.Z_VOA),
        ("sl2", 2, Statistics.HALF_Z_VOSA),
        ("ising", "(1,3)", Statistics.HALF_Z_VOSA),
    ],
)
def test_classify_simple_current(desc, current, expected):
    md = affine_sl2(current) if desc == "sl2" else virasoro_minimal(3, 4)
    assert classify_simple_current(md, current) is expected


def test_classify_rejects_bad_currents():
    with pytest.raises(NotSimpleCurrent):
        classify_simple_current(affine_sl2(2), 1)
    with pytest.raises(BadTwist):
        classify_simple_current(affine_sl2(3), 3)  # weight 3/4
    md, _ = lattice([[6]])
    with pytest.raises(NotSelfDual):
        classify_simple_current(md, 1)


def test_unknown_label():
    md = affine_sl2(2)
    with pytest.raises(UnknownLabel):
        md.index("7")
    with pytest.raises(UnknownLabel):
        md.index(5)


def test_tensor_product_is_kronecker():
    a, b = affine_sl2(1), virasoro_minimal(3, 4)
    t = tensor_product(a, b)
    assert t.rank == 6
    assert t.labels[4] == "(1,(1,2))"
    assert np.allclose(t.S, np.kron(a.S, b.S))
    assert t.central_charge == a.central_charge + b.central_charge
    assert t.h[4] == a.h[1] + b.h[1]
    assert np.array_equal(t.N, verlinde_fusion(t))


def test_check_axioms_reports_failures():
    md = affine_sl2(2)
    broken = ModularData("broken", md.labels, md.central_charge, md.h, md.S * 1.1)
    rep = check_axioms(broken)
    assert not rep.passed
    assert not rep["S unitary"].passed

    # a symmetric unitary matrix whose Verlinde coefficients are not integers
    th = 0.3
    R = np.array([[math.cos(th), math.sin(th)], [math.sin(th), -math.cos(th)]])
    odd = ModularData("odd", ("0", "1"), 1, (0, Fraction(1, 4)), R)
    rep = check_axioms(odd)
    assert not rep.passed
    assert not rep["Verlinde integrality"].passed
    with pytest.raises(NonIntegerFusion):
        verlinde_fusion(odd)


def test_label_matching_finds_permutation():
    md = virasoro_minimal(3, 5)
    perm = [0, 3, 1, 2]
    shuffled = ModularData(
        "shuffled",
        [md.labels[p] for p in perm],
        md.central_charge,
        [md.h[p] for p in perm],
        md.S[np.ix_(perm, perm)],
    )
    match = find_label_matching(shuffled, md)
    assert match == perm
    assert find_label_matching(affine_sl2(2), virasoro_minimal(3, 4)) is None  # different twists
