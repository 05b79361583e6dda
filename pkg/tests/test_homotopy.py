import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from dualcx.complex import DeltaComplex, euler_characteristic, simplicial_closure
from dualcx.generate import random_complex
from dualcx.homotopy import (
    BudgetExhausted,
    CollapseStep,
    IdentifiedFaceError,
    NotFreeFaceError,
    betti,
    boundary_columns,
    collapse_sequence,
    cone_map,
    cone_over,
    elementary_collapse,
    free_pairs,
    is_boundary,
    is_collapsible,
    is_cone_with_apex,
    rank_q,
)


def sympy_betti(c):
    """Independent oracle: dense boundary matrices, rank by sympy."""
    top = c.dimension
    index = {d: {s: k for k, s in enumerate(c.of_dim(d))} for d in range(top + 1)}
    ranks = [0] * (top + 2)
    for d in range(1, top + 1):
        rows, cols = len(index[d - 1]), len(index[d])
        m = sympy.zeros(rows, cols)
        for j, s in enumerate(c.of_dim(d)):
            for i, f in enumerate(c.faces(s)):
                m[index[d - 1][f], j] += (-1) ** i
        ranks[d] = m.rank()
    return tuple(len(index[d]) - ranks[d] - ranks[d + 1] for d in range(top + 1))


def test_collapse_filled_triangle(filled_triangle):
    path = elementary_collapse(filled_triangle, CollapseStep(3, 6))
    assert path.f_vector() == (3, 2)
    point = elementary_collapse(elementary_collapse(path, (0, 4)), (1, 5))
    assert point.f_vector() == (1,)


def test_triangle_boundary_has_no_free_face(triangle_boundary):
    assert free_pairs(triangle_boundary) == []
    with pytest.raises(NotFreeFaceError):
        elementary_collapse(triangle_boundary, (0, 3))
    assert is_collapsible(triangle_boundary) is None


def test_identified_face_blocks_collapse():
    # a disk whose boundary edge e is glued to itself: faces [e, e, l]
    c = DeltaComplex([(0, 0, []), (1, 0, []), (2, 1, [1, 0]), (3, 1, [0, 0]), (4, 2, [2, 2, 3])])
    with pytest.raises(IdentifiedFaceError):
        elementary_collapse(c, (2, 4))


def test_collapse_rejects_non_maximal_coface(filled_triangle):
    with pytest.raises(NotFreeFaceError):
        elementary_collapse(filled_triangle, (0, 3))


def test_is_collapsible_filled_triangle(filled_triangle):
    steps = is_collapsible(filled_triangle)
    assert len(steps) == 3
    assert len(collapse_sequence(filled_triangle, steps)) == 1


def test_budget_is_reported_distinctly():
    c = cone_over(cone_over(simplicial_closure([(0, 1), (1, 2), (2, 0)])))
    with pytest.raises(BudgetExhausted):
        is_collapsible(c, budget=1)


def test_cone_examples(triangle_boundary):
    two = simplicial_closure([(0,), (1,)])
    c = cone_over(two)
    assert c.f_vector() == (3, 2)
    disk = cone_over(triangle_boundary)
    assert disk.f_vector() == (4, 6, 3)
    assert euler_characteristic(disk) == 1
    assert cone_over(DeltaComplex()).f_vector() == (1,)


def test_cone_apex_detection(filled_triangle, triangle_boundary, banana):
    assert all(is_cone_with_apex(filled_triangle, v) for v in (0, 1, 2))
    assert not any(is_cone_with_apex(triangle_boundary, v) for v in (0, 1, 2))
    assert not is_cone_with_apex(banana, 0)
    with pytest.raises(Exception):
        is_cone_with_apex(filled_triangle, 3)


def test_betti_examples(filled_triangle, triangle_boundary, banana):
    assert betti(filled_triangle) == (1, 0, 0)
    assert betti(triangle_boundary) == (1, 1)
    both = banana.extended([(4, 0, [])])
    assert betti(both) == (2, 1)


def test_rank_q_matches_sympy_on_random_matrices():
    rng = random.Random(3)
    for _ in range(60):
        rows, cols = rng.randint(1, 7), rng.randint(1, 7)
        dense = [[rng.choice([-2, -1, 0, 0, 1, 3]) for _ in range(cols)] for _ in range(rows)]
        columns = [{i: dense[i][j] for i in range(rows) if dense[i][j]} for j in range(cols)]
        assert rank_q(columns) == sympy.Matrix(dense).rank()


def test_is_boundary(triangle_boundary, filled_triangle):
    # the cycle 3 - 4 + 5 generates H_1 of the hollow triangle
    cycle = {3: 1, 4: -1, 5: 1}
    assert not is_boundary(triangle_boundary, cycle, 1)
    assert is_boundary(filled_triangle, cycle, 1)


def test_boundary_of_boundary_is_zero():
    c = cone_over(simplicial_closure([(0, 1, 2), (2, 3)]))
    for d in range(2, c.dimension + 1):
        for col in boundary_columns(c, d):
            total = {}
            for f, x in col.items():
                for i, g in enumerate(c.faces(f)):
                    total[g] = total.get(g, 0) + x * (-1) ** i
            assert not any(total.values())


@pytest.mark.parametrize("seed", range(40))
def test_betti_agrees_with_sympy(seed):
    c = random_complex(random.Random(seed))
    assert betti(c) == sympy_betti(c)


@pytest.mark.parametrize("seed", range(25))
def test_cone_over_desk_complex_collapses(seed):
    base = random_complex(random.Random(1000 + seed), max_simplices=20)
    cone, apex, join = cone_map(base)
    steps = is_collapsible(cone)
    assert steps is not None
    assert betti(cone) == (1,) + (0,) * cone.dimension
    assert is_cone_with_apex(cone, apex)
    assert len(join) == len(base)


def padded(b, n=6):
    return tuple(b) + (0,) * (n - len(b))


tops = st.lists(st.lists(st.integers(0, 5), min_size=1, max_size=4), min_size=1, max_size=5)


@settings(max_examples=60, deadline=None)
@given(tops)
def test_every_legal_collapse_preserves_betti(top):
    c = simplicial_closure(top)
    b = padded(betti(c))
    for step in free_pairs(c):
        assert padded(betti(elementary_collapse(c, step))) == b


@settings(max_examples=60, deadline=None)
@given(tops)
def test_collapsible_implies_trivial_homology(top):
    c = simplicial_closure(top)
    steps = is_collapsible(c)
    if steps is not None:
        assert betti(c) == (1,) + (0,) * c.dimension
        assert euler_characteristic(c) == 1
