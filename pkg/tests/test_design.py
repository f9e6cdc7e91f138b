"""Design matrix construction, sufficient statistics, probability map."""

from fractions import Fraction

import pytest

from thmc.design import (
    LoopViolation,
    Model,
    ParameterSet,
    SizeCapExceeded,
    ZeroNormalizer,
    build_design_matrix,
    column_of_word,
    distinct_columns,
    evaluate_path_probability,
    iter_columns,
    row_labels,
    sufficient_statistic,
    toric_model_map,
)
from thmc.words import PathMultiset, iter_words


def test_column_examples():
    assert column_of_word(Model.A, 2, (2, 1, 2, 2)) == (0, 1, 0, 1, 1, 1)
    assert column_of_word(Model.D, 3, (1, 2, 1, 2)) == (2, 0, 1, 0, 0, 0)
    assert column_of_word(Model.B, 2, (1, 1, 1, 1)) == (3, 0, 0, 0)
    assert column_of_word(Model.C, 3, (1, 2, 1, 2)) == (1, 0, 0, 2, 0, 1, 0, 0, 0)


def test_loop_violation():
    with pytest.raises(LoopViolation):
        column_of_word(Model.D, 3, (1, 1, 2, 3))


def test_row_label_order():
    labels = row_labels(Model.A, 2)
    assert labels == (("init", 1), ("init", 2), ("trans", 1, 1), ("trans", 1, 2), ("trans", 2, 1), ("trans", 2, 2))
    labels_d = row_labels(Model.D, 3)
    assert labels_d == tuple(("trans", i, j) for i, j in [(1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2)])


@pytest.mark.parametrize(
    "model,S,T,shape",
    [(Model.A, 2, 4, (6, 16)), (Model.B, 2, 4, (4, 16)), (Model.C, 3, 4, (9, 24)), (Model.D, 3, 4, (6, 24))],
)
def test_shapes(model, S, T, shape):
    assert build_design_matrix(model, S, T).shape == shape


@pytest.mark.parametrize("model,S,T", [(Model.A, 2, 4), (Model.B, 3, 4), (Model.C, 3, 5), (Model.D, 3, 6)])
def test_column_sum_invariant(model, S, T):
    matrix = build_design_matrix(model, S, T)
    expected = T if model.has_initial else T - 1
    assert all(sum(col) == expected for col in matrix.columns)


def test_size_cap():
    with pytest.raises(SizeCapExceeded):
        build_design_matrix(Model.B, 4, 20)


def test_sufficient_statistic_examples():
    W = PathMultiset.of([(1, 2, 1, 2)], S=3, no_loops=True)
    assert sufficient_statistic(Model.D, W) == (2, 0, 1, 0, 0, 0)
    W = PathMultiset.of([(1, 1, 1, 1), (2, 2, 2, 2)], S=2)
    assert sufficient_statistic(Model.B, W) == (3, 0, 0, 3)
    # hand count: 1212 has transitions 12,21,12; 2121 has 21,12,21
    W = PathMultiset.of([(1, 2, 1, 2), (2, 1, 2, 1)], S=3, no_loops=True)
    assert sufficient_statistic(Model.D, W) == (3, 0, 3, 0, 0, 0)


def test_sufficient_statistic_linearity():
    W1 = PathMultiset.of([(1, 2, 1, 2)], S=3, no_loops=True)
    W2 = PathMultiset.of([(2, 3, 2, 3), (1, 2, 1, 2)], S=3, no_loops=True)
    merged = PathMultiset(S=3, T=4, no_loops=True, counts={(1, 2, 1, 2): 2, (2, 3, 2, 3): 1})
    combined = tuple(a + b for a, b in zip(sufficient_statistic(Model.D, W1), sufficient_statistic(Model.D, W2)))
    assert sufficient_statistic(Model.D, merged) == combined


def test_path_probability_identity_parameters():
    params = ParameterSet.uniform(2)
    for w in iter_words(2, 4, False):
        assert evaluate_path_probability(params, w) == 1


def test_path_probability_uniform_chain():
    half = Fraction(1, 2)
    params = ParameterSet(gamma=(half, half), beta=((half, half), (half, half)), c=Fraction(1))
    assert evaluate_path_probability(params, (1, 1, 1, 1)) == Fraction(1, 16)


def test_probability_exponents_match_design_column():
    # the monomial exponent of each parameter equals the design-column entry
    S, T = 2, 4
    for w in iter_words(S, T, False):
        col = column_of_word(Model.A, S, w)
        labels = row_labels(Model.A, S)
        exponents = []
        for label in labels:
            if label[0] == "init":
                exponents.append(1 if w[0] == label[1] else 0)
            else:
                exponents.append(sum(1 for a, b in zip(w, w[1:]) if (a, b) == (label[1], label[2])))
        assert tuple(exponents) == col


def test_toric_model_map_uniform():
    matrix = build_design_matrix(Model.B, 2, 3)
    probs = toric_model_map(matrix, [Fraction(1)] * 4)
    assert len(set(probs)) == 1 and sum(probs) == 1


def test_toric_model_map_monomial_weights():
    matrix = build_design_matrix(Model.B, 2, 4)
    probs = toric_model_map(matrix, [Fraction(2), Fraction(1), Fraction(1), Fraction(1)])
    idx = matrix.words.index((1, 1, 1, 1))
    monomials = [2 ** col[0] for col in matrix.columns]
    assert probs[idx] == Fraction(8, sum(monomials))


def test_toric_model_map_sums_to_one():
    import random

    rng = random.Random(7)
    matrix = build_design_matrix(Model.D, 3, 4)
    for _ in range(100):
        theta = [Fraction(rng.randint(1, 9), rng.randint(1, 9)) for _ in matrix.rows]
        assert sum(toric_model_map(matrix, theta)) == 1


def test_toric_model_map_zero_normalizer():
    matrix = build_design_matrix(Model.B, 2, 3)
    with pytest.raises(ZeroNormalizer):
        toric_model_map(matrix, [Fraction(0)] * 4)


@pytest.mark.parametrize("model,S,T", [(Model.D, 3, 5), (Model.D, 3, 8), (Model.C, 3, 5), (Model.C, 3, 7)])
def test_distinct_columns_fast_path_matches_streaming(model, S, T):
    streamed = sorted({col for _, col in iter_columns(model, S, T)})
    assert list(distinct_columns(model, S, T)) == streamed


@pytest.mark.parametrize("model,T", [(Model.A, 4), (Model.A, 6), (Model.B, 5), (Model.B, 7)])
def test_distinct_columns_fast_path_with_loops_S2(model, T):
    streamed = sorted({col for _, col in iter_columns(model, 2, T)})
    assert list(distinct_columns(model, 2, T)) == streamed


def test_csv_export_layout():
    matrix = build_design_matrix(Model.B, 2, 3)
    lines = matrix.to_csv().strip().splitlines()
    assert lines[0].startswith(",111,112,")
    assert lines[1].startswith("11,")
    assert len(lines) == 5
