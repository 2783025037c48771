from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fusionforge import fixtures, setups
from fusionforge.coset import (
    build_setup,
    coset_count,
    coset_fusion,
    coset_modular_data,
    coset_ST,
    reconstruct_v_fusion,
)
from fusionforge.errors import InconsistentAction, WeightMismatch
from fusionforge.families import affine_sl2, lattice
from fusionforge.lattice import Lattice
from fusionforge.modular_data import check_axioms, find_label_matching


@given(st.integers(1, 6))
@settings(max_examples=6)
def test_parafermion_cosets(k):
    setup = fixtures.parafermion_setup(k)
    assert coset_count(setup) == k * (k + 1) // 2
    C = coset_modular_data(setup)
    assert C.central_charge == Fraction(2 * (k - 1), k + 2)
    assert check_axioms(C).passed
    assert np.array_equal(reconstruct_v_fusion(setup, C.N), setup.V.N)


@pytest.mark.parametrize("k", [1, 2])
def test_n2_cosets(k):
    setup = fixtures.n2_setup(k)
    assert coset_count(setup) == 2 * (k + 1) * (k + 2)
    C = coset_modular_data(setup)
    assert C.central_charge == Fraction(3 * k, k + 2)
    assert check_axioms(C).passed
    assert np.array_equal(reconstruct_v_fusion(setup, C.N), setup.V.N)


def test_diag_toy_is_the_antidiagonal_lattice():
    setup = fixtures.diag_toy_setup()
    C = coset_modular_data(setup)
    assert C.rank == 4 and C.central_charge == 1
    target, _ = lattice([[4]])
    perm = find_label_matching(C, target)
    assert perm is not None
    assert np.allclose(target.S[np.ix_(perm, perm)], C.S, atol=1e-12)


def test_trivial_lattice_factor_passes_through():
    setup = setups.load_coset("passthrough")
    C = coset_modular_data(setup)
    ising = fixtures.ising()
    perm = find_label_matching(C, ising)
    assert perm is not None
    assert np.allclose(ising.S[np.ix_(perm, perm)], C.S, atol=1e-12)


def test_coset_t_is_diagonal_and_unimodular():
    _, T = coset_ST(fixtures.n2_setup(2))
    assert np.allclose(T, np.diag(np.diag(T)))
    assert np.allclose(np.abs(np.diag(T)), 1)


def _sl2_over_four(weights, action=None, currents=None):
    L = Lattice.from_gram([[4]])
    return build_setup("x", affine_sl2(2), L, weights, [L.index_of([2])], currents=currents, action=action)


def test_setup_validation():
    with pytest.raises(InconsistentAction):
        _sl2_over_four([0, 1], currents={2: "2"})
    with pytest.raises(InconsistentAction):
        _sl2_over_four([1, 1, 2], currents={2: "2"})
    with pytest.raises(InconsistentAction):
        _sl2_over_four([0, 1, 1], currents={2: "2"})
    # currents must cover N'/L
    L = Lattice.from_gram([[8]])
    with pytest.raises(InconsistentAction):
        build_setup("x", affine_sl2(2), L, [0, 1, 2], [L.index_of([4])])


def test_fusion_must_respect_weights():
    # the action is consistent, but 1 x 1 -> 2 lands on the wrong lattice class
    setup = _sl2_over_four([0, 1, 1], action={2: (0, 1, 2)})
    with pytest.raises(WeightMismatch):
        coset_fusion(setup)
