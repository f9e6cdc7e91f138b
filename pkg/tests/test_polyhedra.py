"""Cone facets, polytope vertices, f-vectors, dilation and balance checks."""

from fractions import Fraction

import pytest

from thmc.design import Model, distinct_columns
from thmc.polyhedra import (
    DegenerateInput,
    check_degree_balance,
    classify_vertices,
    cone_facets,
    f_vector,
    in_cone_lp,
    in_dilation_lp,
    integer_points_equal_columns,
    linear_feasible,
    middle_class_decomposition,
    model_d_columns,
    nonnegativity_normals,
    normals_from_block_text,
    normals_to_block_text,
    polytope_vertices,
    vertices_by_facet_rank,
    verify_dilation_slice,
)


def test_lp_feasible_basic():
    cols = [(1, 0), (0, 1)]
    assert linear_feasible(cols, (2, 3))
    assert not linear_feasible(cols, (-1, 0))
    assert linear_feasible(cols, (Fraction(1, 2), Fraction(1, 2)), coefficient_sum=1)
    assert not linear_feasible(cols, (1, 1), coefficient_sum=1)


def test_polytope_vertices_single_point():
    assert polytope_vertices([(1, 2, 3)]).points == ((1, 2, 3),)


def test_polytope_vertices_T4():
    assert len(polytope_vertices(model_d_columns(4)).points) == 20


def test_nonvertex_column_T5():
    # (0,1,0,1,1,1) = ((0,2,0,0,2,0) + (0,0,0,2,0,2)) / 2
    verts = polytope_vertices(model_d_columns(5)).points
    assert (0, 1, 0, 1, 1, 1) not in verts
    assert (0, 2, 0, 0, 2, 0) in verts and (0, 0, 0, 2, 0, 2) in verts
    assert len(verts) == 27


@pytest.mark.parametrize("T", [4, 5, 6])
def test_vertex_routes_agree(T):
    cols = model_d_columns(T)
    hrep = cone_facets(cols)
    by_lp = set(polytope_vertices(cols).points)
    by_rank = set(vertices_by_facet_rank(cols, hrep))
    assert by_lp == by_rank


def test_cone_facets_orthant():
    hrep = cone_facets([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert set(hrep.inequalities) == set(nonnegativity_normals(3))
    assert hrep.equations == ()


def test_cone_facets_degenerate():
    with pytest.raises(DegenerateInput):
        cone_facets([(0, 0, 0)])


def test_cone_facets_T4_block():
    hrep = cone_facets(model_d_columns(4))
    nontrivial = set(hrep.inequalities) - set(nonnegativity_normals(6))
    # the printed block's first column, read down
    assert (2, -1, -1, -1, 2, 2) in nontrivial
    assert len(nontrivial) == 6 and len(hrep.inequalities) == 12


def test_cone_facets_counts_match_fvector_tail():
    for T in (5, 6, 7):
        assert len(cone_facets(model_d_columns(T)).inequalities) == 24


def test_facets_are_valid_and_irredundant():
    cols = model_d_columns(5)
    hrep = cone_facets(cols)
    for h in hrep.inequalities:
        assert all(sum(a * b for a, b in zip(h, c)) >= 0 for c in cols)
    # an inequality is redundant iff it is a nonneg combination of the
    # others (plus the span equations); certify each is not, by exact LP
    normals = list(hrep.inequalities)
    eqs = list(hrep.equations) + [tuple(-x for x in e) for e in hrep.equations]
    for i, h in enumerate(normals):
        others = normals[:i] + normals[i + 1 :] + eqs
        assert not linear_feasible(others, h)


def test_facets_independent_of_input_order():
    cols = list(model_d_columns(5))
    assert cone_facets(cols) == cone_facets(list(reversed(cols)))


def test_f_vector_simplex():
    fv = f_vector([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert fv.counts == (3, 3)


def test_f_vector_tables_small():
    assert f_vector(model_d_columns(4)).counts == (20, 69, 90, 51, 12)
    assert f_vector(distinct_columns(Model.C, 3, 4)).counts == (24, 156, 434, 606, 444, 162, 24)


def test_dilation_identity_samples():
    rep = verify_dilation_slice(4, 2, 60, seed=2)
    assert rep.ok and rep.agreements == 60


def test_dilation_sum_of_columns():
    cols = model_d_columns(4)
    x = tuple(a + b for a, b in zip(cols[0], cols[7]))
    assert in_dilation_lp(cols, x, 2)
    assert in_cone_lp(cols, x)


def test_integer_points_equal_columns_small():
    assert integer_points_equal_columns(4)
    assert integer_points_equal_columns(5)


def test_imbalanced_point_outside():
    # sum = T-1 but one state is out-heavy by 2: violates the degree balance
    T = 5
    x = (2, 2, 0, 0, 0, 0)
    k, ok = check_degree_balance(x, T)
    assert k == 1 and not ok
    assert not in_dilation_lp(model_d_columns(T), x, 1)


def test_check_degree_balance_columns():
    for T in (4, 6):
        for col in model_d_columns(T):
            k, ok = check_degree_balance(col, T)
            assert k == 1 and ok


def test_check_degree_balance_sums():
    import random

    rng = random.Random(9)
    for T in (4, 6, 8):
        cols = model_d_columns(T)
        for k in (2, 3, 4):
            x = [0] * 6
            for _ in range(k):
                c = cols[rng.randrange(len(cols))]
                x = [a + b for a, b in zip(x, c)]
            got_k, ok = check_degree_balance(x, T)
            assert got_k == k and ok


def test_classify_vertices_T13():
    rep = classify_vertices(13)
    assert rep.p == 6
    assert rep.ok
    ms = {m for _, m, _ in rep.classes}
    assert all(m <= 2 or m >= rep.p - 2 for m in ms)


def test_middle_class_graph_is_not_vertex():
    # the worked 13-long word sits in class (3, 2) and splits as (y + z) / 2
    from thmc.design import column_of_word
    from thmc.stategraph import classify_Gmn, graph_of_transition_vector

    x = column_of_word(Model.D, 3, (1, 2, 1, 2, 1, 2, 1, 2, 3, 1, 2, 3, 1))
    cls = classify_Gmn(graph_of_transition_vector(x, 3))
    assert (cls.m, cls.n) == (3, 2)
    y, z = middle_class_decomposition(x, 13)
    assert tuple((a + b) // 2 for a, b in zip(y, z)) == x
    ycls = classify_Gmn(graph_of_transition_vector(y, 3))
    zcls = classify_Gmn(graph_of_transition_vector(z, 3))
    assert {ycls.m, zcls.m} == {0, 6}
    cols = model_d_columns(13)
    assert tuple(y) in cols and tuple(z) in cols
    verts = set(vertices_by_facet_rank(cols, cone_facets(cols)))
    assert x not in verts


def test_vertices_have_one_two_cycle_type():
    # a column with two distinct two-cycle types is never a vertex
    from thmc.stategraph import classify_Gmn, graph_of_transition_vector

    for T in (5, 6, 7):
        cols = model_d_columns(T)
        verts = set(vertices_by_facet_rank(cols, cone_facets(cols)))
        for col in cols:
            cls = classify_Gmn(graph_of_transition_vector(col, 3))
            if not cls.member_of_script_G:
                assert col not in verts


def test_model_a_cone_has_span_equation():
    from thmc.design import distinct_columns as dc

    cols = dc(Model.A, 2, 4)
    hrep = cone_facets(cols)
    assert len(hrep.equations) == 1
    for e in hrep.equations:
        assert all(sum(a * b for a, b in zip(e, c)) == 0 for c in cols)


def test_normals_block_text_roundtrip():
    normals = [(2, 2, 2, -1, -1, -1), (-1, -1, -1, 2, 2, 2)]
    text = normals_to_block_text(normals)
    assert normals_from_block_text(text) == tuple(sorted(normals))


def test_hrep_vrep_json():
    cols = model_d_columns(4)
    hrep = cone_facets(cols)
    verts = polytope_vertices(cols)
    assert '"inequalities"' in hrep.to_json()
    assert '"points"' in verts.to_json()
    assert hrep.grading_sum == 3
