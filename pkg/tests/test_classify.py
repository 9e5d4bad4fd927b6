import pytest

from hyperbinary.classify import Pi1, TreeParams, classify, in_T, tree_params, two_adic_split
from hyperbinary.graph import build_graph, cyclomatic_number


def test_classify_examples():
    c = classify(9)
    assert c.is_tree and c.tree_params == TreeParams(1, 1, "+")
    assert len(build_graph(9).nodes) == 3 and len(build_graph(9).arcs) == 2
    c = classify(12)
    assert (c.is_tree, c.cyclomatic, c.in_T, c.pi1) == (False, 1, True, Pi1(1))
    assert c.pi1.kind == "Z" and c.pi1.is_abelian
    assert classify(21).in_T


def test_classify_18_free_rank_two():
    c = classify(18)
    assert c.cyclomatic == 2 and c.pi1.kind == "free" and not c.pi1.is_abelian
    assert str(c.pi1) == "free rank 2"


def test_tree_params_reconstruct_n():
    for n in range(1, 20000):
        p = tree_params(n)
        if p is not None:
            assert p.value() == n


def test_tree_params_collision_reports_plus_form():
    # n + 1 = 3 * 2^s matches (s, 0, +) and (s, 1, -)
    for s in range(6):
        n = 3 * 2**s - 1
        assert tree_params(n) == TreeParams(s, 0, "+")
        assert TreeParams(s, 1, "-").value() == n


def test_mersenne_numbers_are_minus_form_with_t_zero():
    for s in range(1, 10):
        assert tree_params(2**s - 1) == TreeParams(s, 0, "-")


def test_two_adic_split():
    assert two_adic_split(12) == (2, 3)
    assert two_adic_split(7) == (0, 7)


def test_in_T():
    assert [n for n in range(1, 200) if in_T(n)] == [10, 12, 21, 25, 43, 51, 87, 103, 175]


@pytest.mark.parametrize("n", range(1, 1500))
def test_classify_agrees_with_graph(n):
    c = classify(n)  # raises InvariantViolation on disagreement
    assert c.structurally_verified
    assert c.is_tree == (c.cyclomatic == 0)
    assert (c.pi1.rank == 1) == (c.cyclomatic == 1)
    assert c.pi1.is_abelian == (c.cyclomatic <= 1)


def test_classify_above_work_bound_uses_closed_forms():
    c = classify(10, work_bound=1)
    assert not c.structurally_verified and c.cyclomatic == 1 and c.in_T
    c = classify(2**40 + 2**3 - 1, work_bound=1)
    assert c.is_tree and c.cyclomatic == 0 and c.pi1 == Pi1(0)
    c = classify(18, work_bound=1)
    assert c.cyclomatic is None and c.pi1 is None
    assert cyclomatic_number(build_graph(18)) == 2
