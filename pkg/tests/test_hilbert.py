"""Hilbert bases, the brute-force oracle, normality, witnesses."""

import pytest

from thmc.design import Model, distinct_columns
from thmc.hilbert import (
    RangeExceeded,
    check_normality,
    hilbert_basis,
    hilbert_basis_bruteforce_oracle,
    nonnormality_witness,
)
from thmc.intlinalg import IntLattice
from thmc.polyhedra import cone_facets


def test_hb_model_d_T4():
    result = hilbert_basis(Model.D, 3, 4)
    assert result.count == 20 and result.normal
    assert set(result.elements) == set(distinct_columns(Model.D, 3, 4))


def test_hb_model_c_T4():
    result = hilbert_basis(Model.C, 3, 4)
    assert result.count == 24 and result.normal


def test_hb_model_d_T9():
    result = hilbert_basis(Model.D, 3, 9)
    assert result.count == 123 and result.normal


def test_hb_elements_in_lattice_and_cone():
    result = hilbert_basis(Model.D, 3, 5)
    cols = distinct_columns(Model.D, 3, 5)
    lat = IntLattice.from_vectors(6, cols)
    hrep = cone_facets(cols)
    for v in result.elements:
        assert lat.contains(v)
        assert all(sum(a * b for a, b in zip(h, v)) >= 0 for h in hrep.inequalities)


def test_hb_minimality_pairwise():
    result = hilbert_basis(Model.D, 3, 5)
    elems = set(result.elements)
    for a in elems:
        for b in elems:
            s = tuple(x + y for x, y in zip(a, b))
            assert s not in elems


def test_range_cap():
    with pytest.raises(RangeExceeded):
        hilbert_basis(Model.D, 3, 16)
    # the cap is configurable: model (b) defaults to T <= 10 but runs fine above
    with pytest.raises(RangeExceeded):
        hilbert_basis(Model.B, 2, 12)
    assert not hilbert_basis(Model.B, 2, 12, max_T=12).normal


def test_normality_examples():
    assert check_normality(Model.D, 3, 6)
    assert check_normality(Model.C, 3, 5)
    assert not check_normality(Model.B, 2, 4)


def test_nonnormal_b_witness_is_basis_element():
    result = hilbert_basis(Model.B, 2, 4)
    assert (1, 0, 0, 2) in result.elements
    assert (1, 0, 0, 2) not in set(distinct_columns(Model.B, 2, 4))


def test_model_a_S2_normal_small_range():
    for T in (3, 4, 5, 6, 7, 8):
        assert check_normality(Model.A, 2, T)


@pytest.mark.slow
def test_model_a_S2_normal_default_range():
    # the sweep the two-state normality conjecture rests on (default cap 30)
    for T in range(3, 31):
        assert check_normality(Model.A, 2, T)


def test_oracle_empty_cap():
    assert hilbert_basis_bruteforce_oracle(Model.D, 3, 4, 0) == ()


def test_oracle_agrees_with_main_T4():
    cap = 3
    main = hilbert_basis(Model.D, 3, 4)
    capped = tuple(sorted(v for v in main.elements if sum(v) <= cap * 3))
    assert capped == hilbert_basis_bruteforce_oracle(Model.D, 3, 4, cap)


def test_oracle_agrees_with_main_c_T4():
    cap = 2
    main = hilbert_basis(Model.C, 3, 4)
    capped = tuple(sorted(v for v in main.elements if sum(v) <= cap * 4))
    assert capped == hilbert_basis_bruteforce_oracle(Model.C, 3, 4, cap)


def test_witness_a_3_4():
    w = nonnormality_witness(Model.A, 3, 4)
    assert w.h == (1, 0, 1, 1, 1, 0, 0, 0, 1, 0, 2, 1)


def test_witness_a_3_6():
    w = nonnormality_witness(Model.A, 3, 6)
    assert w.h == (1, 0, 1, 3, 1, 0, 0, 0, 1, 0, 2, 3)


def test_witness_b_2_5():
    w = nonnormality_witness(Model.B, 2, 5)
    assert w.h == (1, 0, 0, 3)


def test_witness_b_3_4():
    w = nonnormality_witness(Model.B, 3, 4)
    assert sum(w.h) == 3
    assert w.h[0] == 1  # the (1,1) transition coordinate


def test_witness_a_4_5():
    w = nonnormality_witness(Model.A, 4, 5)
    assert len(w.h) == 4 + 16
    # only states 1..3 participate; all state-4 coordinates are zero
    assert w.h[3] == 0


def test_witness_rejects_wrong_models():
    with pytest.raises(ValueError):
        nonnormality_witness(Model.D, 3, 5)
    with pytest.raises(ValueError):
        nonnormality_witness(Model.A, 2, 5)  # printed witness needs S >= 3


def test_hb_export_formats():
    result = hilbert_basis(Model.D, 3, 4)
    csv = result.to_csv()
    assert len(csv.strip().splitlines()) == 20
    summary = result.summary()
    assert summary["count"] == 20 and summary["normal"] is True
