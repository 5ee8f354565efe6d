"""Claw finding: problem container, multi-equation reduction, classical oracles.

A claw of two function families (f_i), (g_i) over u-bit inputs is a pair
(x1, x2) with f_i(x1) == g_i(x2) for every i.  The multi-equation case is
reduced to a single function F over u+1 bits: the extra top bit selects
the f side (0) or g side (1), and each side concatenates its family's
outputs into one v*w-bit value.  The two half-domains J1 = [0, N) and
J2 = [N, 2N) are then disjoint, as the subset-walk search requires.
"""

from dataclasses import dataclass

import numpy as np


class CapacityError(RuntimeError):
    """A table or state vector would exceed the configured desk-scale guard."""


@dataclass
class ClawProblem:
    domain_bits: int          # u, per side
    range_bits: int           # v, per equation
    f_family: tuple           # w callables, each maps u-bit word(s) -> v-bit
    g_family: tuple
    expected_unique: bool = False

    def __post_init__(self):
        if len(self.f_family) != len(self.g_family):
            raise ValueError("f and g families must have equal length")
        if not self.f_family:
            raise ValueError("need at least one equation")

    @property
    def eq_count(self):
        return len(self.f_family)

    @property
    def n_side(self):
        return 1 << self.domain_bits


def concat_multi(problem):
    """Combined function F over u+1 bits -> v*w bits.

    F(0||x) = f_1(x)||...||f_w(x), F(1||x) = g_1(x)||...||g_w(x); the
    concatenation packs equation 1 into the most significant v bits.
    """
    u, v = problem.domain_bits, problem.range_bits
    n = problem.n_side

    def combined(j):
        c = j >> u
        x = j & (n - 1)
        fam = problem.g_family if c else problem.f_family
        out = 0
        for fn in fam:
            out = (out << v) | int(fn(x))
        return out

    return combined


def side_table(problem, side):
    """Evaluate one side's combined outputs over the full u-bit domain.

    Returns a uint64 array of length 2^u; this is the 2^u-evaluation table
    the classical searches work from.
    """
    if problem.range_bits * problem.eq_count > 63:
        raise CapacityError("combined range exceeds 64 bits")
    fam = problem.f_family if side == 0 else problem.g_family
    xs = np.arange(problem.n_side, dtype=np.uint32)
    out = np.zeros(problem.n_side, dtype=np.uint64)
    for fn in fam:
        out = (out << np.uint64(problem.range_bits)) | fn(xs).astype(np.uint64)
    return out


def find_claws_exhaustive(problem, max_bits=12):
    """All claws by full pairwise scan, ascending (x1, x2) order.

    The ground-truth oracle: every (x1, x2) pair is compared directly,
    independent of the sorted-match search path.
    """
    u = problem.domain_bits
    if u > max_bits:
        raise CapacityError(f"exhaustive scan refused for u={u} > {max_bits}")
    f_tab = side_table(problem, 0)
    g_tab = side_table(problem, 1)
    eq = f_tab[:, None] == g_tab[None, :]
    pairs = np.argwhere(eq)
    return [(int(a), int(b)) for a, b in pairs]


def find_claws_sorted(problem, max_bits=24):
    """Sort-and-match search over both 2^u-entry value tables.

    Returns (claws, evaluations); claws come in sorted-value order with
    lexicographic (x1, x2) tie-break, and evaluations == 2^(u+1) exactly.
    """
    u = problem.domain_bits
    if u > max_bits:
        raise CapacityError(f"sorted match refused for u={u} > {max_bits}")
    f_tab = side_table(problem, 0)
    g_tab = side_table(problem, 1)
    evals = 2 * problem.n_side

    f_order = np.argsort(f_tab, kind="stable")
    g_order = np.argsort(g_tab, kind="stable")
    f_sorted = f_tab[f_order]
    g_sorted = g_tab[g_order]

    claws = []
    i = j = 0
    nf, ng = len(f_sorted), len(g_sorted)
    while i < nf and j < ng:
        if f_sorted[i] < g_sorted[j]:
            i += 1
        elif f_sorted[i] > g_sorted[j]:
            j += 1
        else:
            value = f_sorted[i]
            i2 = i
            while i2 < nf and f_sorted[i2] == value:
                i2 += 1
            j2 = j
            while j2 < ng and g_sorted[j2] == value:
                j2 += 1
            block = sorted((int(a), int(b))
                           for a in f_order[i:i2] for b in g_order[j:j2])
            claws.extend(block)
            i, j = i2, j2
    return claws, evals


def find_claw_sorted(problem, max_bits=24):
    """First claw in sorted-value order, or None.  Returns (claw, evals)."""
    claws, evals = find_claws_sorted(problem, max_bits)
    return (claws[0] if claws else None), evals
