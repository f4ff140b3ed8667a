import pytest

import matgeom as mg


def test_field_tables():
    f4 = mg.Field.make(4)
    assert f4.mul(2, 2) == 3
    assert f4.add(2, 2) == 0
    assert mg.Field.make(5).inv(2) == 3


def test_relations_and_counts():
    zero = mg.Matrix(3, 2, 2, [0, 0, 0, 0])
    e11 = mg.Matrix(3, 2, 2, [1, 0, 0, 0])
    eye = mg.Matrix(3, 2, 2, [1, 0, 0, 1])
    assert mg.is_adjacent(zero, e11)
    assert mg.is_dis(zero, eye)
    assert [mg.count_by_rank(3, 2, 2, r) for r in range(3)] == [1, 32, 48]
    assert mg.Matrix.from_index(3, 2, 2, 3).entries == [0, 1, 0, 0]


def test_witness_and_separation():
    zero = mg.Matrix(3, 2, 2, [0, 0, 0, 0])
    e11 = mg.Matrix(3, 2, 2, [1, 0, 0, 0])
    eye = mg.Matrix(3, 2, 2, [1, 0, 0, 1])
    r, verified = mg.adjacency_witness(zero, e11)
    assert verified and r.entries == [2, 0, 0, 0]
    x = mg.separating_X(zero, eye, e11)
    assert mg.is_dis(x, e11) and not mg.is_dis(x, zero) and not mg.is_dis(x, eye)
    assert mg.adjacent_via_dis(zero, e11)
    assert not mg.adjacent_via_dis(zero, eye)


def test_decompose_round_trip():
    f = mg.random_preserver(4, 2, 2, seed=7)
    table = mg.to_table(f)
    ok, cex = mg.certify_dis(4, 2, 2, table)
    assert ok and cex is None
    assert mg.decompose(4, 2, 2, table) == f

    table[0], table[1] = table[1], table[0]
    ok, (a, b) = mg.certify_dis(4, 2, 2, table)
    assert not ok
    with pytest.raises(mg.DecomposeError):
        mg.decompose(4, 2, 2, table)


def test_grassmann():
    assert mg.grassmann_point_count(3, 2, 2) == 130
    points = mg.enumerate_points(3, 2, 2)
    assert sum(not p.at_infinity() for p in points) == 81
    e11 = mg.Matrix(3, 2, 2, [1, 0, 0, 0])
    zero = mg.Matrix(3, 2, 2, [0, 0, 0, 0])
    assert mg.from_matrix(e11).adjacent(mg.from_matrix(zero))


def test_errors():
    with pytest.raises(mg.PreconditionError):
        mg.random_preserver(2, 2, 2, seed=0)
    with pytest.raises(ValueError):
        mg.Matrix(3, 2, 2, [0, 0, 0, 3])
