import math

import numpy as np
import pytest

from clawbench.claw import CapacityError
from clawbench.grover import (GroverInstance, grover_iterations,
                              grover_run_statevector, grover_sample,
                              grover_success_prob, marked_probability)


def test_iteration_counts():
    assert grover_iterations(4, 1) == 1
    assert grover_iterations(1 << 16, 1) == 201
    assert grover_iterations(256, 1) == int(math.pi / 4 * 16)  # 12
    with pytest.raises(ValueError):
        grover_iterations(4, 0)


def test_closed_form_edge_cases():
    # R=0 leaves the uniform superposition: success M/N
    assert grover_success_prob(8, 2, 0) == pytest.approx(0.25)
    # N=4, M=1, R=1 is exact
    assert grover_success_prob(4, 1, 1) == pytest.approx(1.0, abs=1e-15)


def test_statevector_matches_closed_form_n4():
    prob, ledger = marked_probability(GroverInstance(4, (2,), 1))
    assert prob == pytest.approx(1.0, abs=1e-12)
    assert ledger.oracle_queries == 1


def test_statevector_matches_closed_form_randomized():
    rng = np.random.default_rng(7)
    for _ in range(50):
        n = int(rng.integers(4, 1 << 12))
        m = int(rng.integers(1, 5))
        marked = tuple(int(x) for x in rng.choice(n, size=m, replace=False))
        inst = GroverInstance(n, marked)
        prob, _ = marked_probability(inst)
        want = grover_success_prob(n, len(inst.marked), inst.iterations)
        assert prob == pytest.approx(want, abs=1e-9)


def test_norm_preserved():
    log = []
    inst = GroverInstance(512, (3, 100), 10)
    grover_run_statevector(inst, norm_log=log)
    assert len(log) == 2 * inst.iterations
    assert max(abs(v - 1.0) for v in log) < 1e-12


def test_capacity_guard():
    with pytest.raises(CapacityError):
        grover_run_statevector(GroverInstance(1 << 21, (0,), 1))


def test_sample_finds_marked_item():
    target = 137
    idx, ledger = grover_sample(lambda x: x == target, 1 << 10, seed=0)
    assert idx == target
    assert ledger.oracle_queries == grover_iterations(1 << 10, 1)


def test_sample_beyond_statevector_guard_uses_closed_form():
    n = 1 << 22
    idx, ledger = grover_sample(lambda x: x == 5, n, seed=1, marked=[5])
    assert ledger.oracle_queries == grover_iterations(n, 1)
    # closed-form success here is ~1, so the sample lands on the target
    assert idx == 5
