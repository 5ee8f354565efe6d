"""Grover search: closed-form success law and an exact statevector simulator.

The simulator works on the amplitude vector directly: the phase oracle
flips marked amplitudes, and the diffusion about the uniform state is the
rank-1 update 2|phi><phi| - I (never materialized as a matrix).  One
oracle application is charged to the query ledger per iteration.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .claw import CapacityError

STATEVECTOR_LIMIT = 1 << 20


def grover_iterations(n_items, n_marked):
    """Default iteration count floor((pi/4) * sqrt(N/M))."""
    if n_marked <= 0:
        raise ValueError("no marked element")
    if n_marked > n_items:
        raise ValueError("more marked elements than items")
    return int(math.pi / 4 * math.sqrt(n_items / n_marked))


def grover_success_prob(n_items, n_marked, iterations):
    """Closed form sin^2((2R+1) * asin(sqrt(M/N)))."""
    if n_marked <= 0:
        raise ValueError("no marked element")
    if n_marked > n_items:
        raise ValueError("more marked elements than items")
    theta = math.asin(math.sqrt(n_marked / n_items))
    return math.sin((2 * iterations + 1) * theta) ** 2


@dataclass
class GroverInstance:
    n_items: int
    marked: tuple                    # marked indices
    iterations: int | None = None    # None -> floor((pi/4) sqrt(N/M))
    seed: int | None = None

    def __post_init__(self):
        self.marked = tuple(sorted(set(self.marked)))
        if self.iterations is None:
            self.iterations = grover_iterations(self.n_items, len(self.marked))


@dataclass
class QueryLedger:
    oracle_queries: int = 0
    notes: dict = field(default_factory=dict)

    def charge(self, n=1):
        if n < 0:
            raise ValueError("ledger is monotone nondecreasing")
        self.oracle_queries += n


def grover_run_statevector(inst, norm_log=None):
    """Exact measurement distribution after R iterations.

    Returns (probabilities, ledger); the ledger charges one oracle query
    per iteration.  If norm_log is a list, the state norm is appended
    after every operator application.
    """
    n = inst.n_items
    if n > STATEVECTOR_LIMIT:
        raise CapacityError(f"statevector refused for N={n} > {STATEVECTOR_LIMIT}")
    if not inst.marked:
        raise ValueError("no marked element")
    marked = np.array(inst.marked)
    amp = np.full(n, 1 / math.sqrt(n))
    ledger = QueryLedger()
    for _ in range(inst.iterations):
        amp[marked] = -amp[marked]
        ledger.charge(1)
        if norm_log is not None:
            norm_log.append(float(np.linalg.norm(amp)))
        amp = 2 * amp.mean() - amp
        if norm_log is not None:
            norm_log.append(float(np.linalg.norm(amp)))
    return amp ** 2, ledger


def marked_probability(inst):
    probs, ledger = grover_run_statevector(inst)
    return float(probs[list(inst.marked)].sum()), ledger


def grover_sample(predicate, n_items, seed, iterations=None, marked=None):
    """Run Grover on a predicate oracle and sample one measurement outcome.

    For N within the statevector guard the exact distribution is sampled.
    Beyond it, the closed-form two-class distribution (marked vs not) is
    used instead - exact by symmetry, but it needs the marked set, which
    is then collected by a classical predicate scan charged to the
    ledger's notes (not to the quantum query count).

    Returns (index, ledger).  The caller verifies the sample classically.
    """
    rng = np.random.default_rng(seed)
    if n_items <= STATEVECTOR_LIMIT:
        marked = [x for x in range(n_items) if predicate(x)]
        inst = GroverInstance(n_items, tuple(marked), iterations)
        probs, ledger = grover_run_statevector(inst)
        ledger.notes["classical_evals"] = n_items
        idx = int(rng.choice(n_items, p=probs / probs.sum()))
        return idx, ledger
    if marked is None:
        marked = [x for x in range(n_items) if predicate(x)]
    if not marked:
        raise ValueError("no marked element")
    if iterations is None:
        iterations = grover_iterations(n_items, len(marked))
    p_hit = grover_success_prob(n_items, len(marked), iterations)
    ledger = QueryLedger(oracle_queries=iterations,
                         notes={"classical_evals": n_items})
    if rng.random() < p_hit:
        return int(rng.choice(marked)), ledger
    unmarked_draw = int(rng.integers(0, n_items - len(marked)))
    marked_set = set(marked)
    idx = 0
    seen = 0
    for idx in range(n_items):
        if idx not in marked_set:
            if seen == unmarked_draw:
                break
            seen += 1
    return idx, ledger
