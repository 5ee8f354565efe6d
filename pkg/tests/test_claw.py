import numpy as np
import pytest

from clawbench.claw import (CapacityError, ClawProblem, concat_multi,
                            find_claw_sorted, find_claws_exhaustive,
                            find_claws_sorted, side_table)


def table_problem(f_tabs, g_tabs, domain_bits, range_bits):
    f_fam = tuple((lambda x, t=np.asarray(t, np.uint32): t[x])
                  for t in f_tabs)
    g_fam = tuple((lambda x, t=np.asarray(t, np.uint32): t[x])
                  for t in g_tabs)
    return ClawProblem(domain_bits=domain_bits, range_bits=range_bits,
                       f_family=f_fam, g_family=g_fam)


def test_single_equation_example():
    # f(2) == g(1) == 7 is the only claw
    problem = table_problem([[5, 1, 7, 2]], [[4, 7, 0, 6]], 2, 3)
    assert find_claws_exhaustive(problem) == [(2, 1)]
    claws, evals = find_claws_sorted(problem)
    assert claws == [(2, 1)]
    assert evals == 2 * 4


def test_concat_multi_layout():
    problem = table_problem([[5, 1, 7, 2], [0, 0, 3, 0]],
                            [[4, 7, 0, 6], [1, 3, 2, 2]], 2, 3)
    combined = concat_multi(problem)
    # top bit selects the side; equation 1 sits in the most significant bits
    assert combined(2) == (7 << 3) | 3          # f side, x=2
    assert combined(4 + 1) == (7 << 3) | 3      # g side, x=1
    assert find_claws_exhaustive(problem) == [(2, 1)]


def test_no_claw():
    problem = table_problem([[0, 1]], [[2, 3]], 1, 2)
    assert find_claws_exhaustive(problem) == []
    claw, evals = find_claw_sorted(problem)
    assert claw is None
    assert evals == 4


def test_multiple_claws_sorted_value_order():
    # values: f = [3, 0, 3], pad domain to 4 with distinct fillers
    problem = table_problem([[3, 0, 3, 5]], [[3, 6, 0, 7]], 2, 3)
    exhaustive = find_claws_exhaustive(problem)
    claws, _ = find_claws_sorted(problem)
    assert set(claws) == set(exhaustive)
    # sorted-value order: value 0 first (f(1), g(2)), then value 3
    assert claws == [(1, 2), (0, 0), (2, 0)]


def test_sorted_matches_exhaustive_on_random_instances():
    rng = np.random.default_rng(0)
    for trial in range(100):
        f_tab = rng.integers(0, 256, size=256)
        g_tab = rng.integers(0, 256, size=256)
        problem = table_problem([f_tab], [g_tab], 8, 8)
        claws, evals = find_claws_sorted(problem)
        assert evals == 512
        assert set(claws) == set(find_claws_exhaustive(problem))


def test_capacity_guards():
    problem = table_problem([np.zeros(1 << 13, np.uint32)],
                            [np.zeros(1 << 13, np.uint32)], 13, 8)
    with pytest.raises(CapacityError):
        find_claws_exhaustive(problem)
    # sorted path allows more, but the combined range must fit 64 bits
    wide = ClawProblem(domain_bits=2, range_bits=16,
                       f_family=(lambda x: x,) * 5,
                       g_family=(lambda x: x,) * 5)
    with pytest.raises(CapacityError):
        side_table(wide, 0)


def test_family_length_mismatch_rejected():
    with pytest.raises(ValueError):
        ClawProblem(domain_bits=2, range_bits=3,
                    f_family=(lambda x: x,), g_family=())
