"""All-subkeys-recovery attack on the 6-round Feistel-2* structure.

The chosen plaintexts all satisfy F_1(L1) ^ R1 == C for one constant C,
which pins the round-2 input difference to zero and lets the round-4 left
state be matched from both directions: the encryption side depends only
on the derived key K2' = F_2(K1 ^ C) ^ K2, the decryption side only on
K6.  Two plaintext differences give a two-equation claw problem whose
unique expected claw is (K2', K6); the later rounds then fall to
single-key difference checks, and K1 ^ K3 is fixed as a constant.

With only rule-constrained pairs, (K1, K2, K3) is identifiable only up to
a one-parameter equivalence family (K1 free, K2 and K3 determined); one
extra pair violating the rule cuts the family down to a few candidates
(see resolve_k1_k2_k3 for why not always to one).  k3_check_paper
implements the round-1 matching predicate literally to demonstrate that
it is independent of K3 on rule pairs.
"""

import time
from dataclasses import dataclass, field

import numpy as np

from . import grover
from .cipher import feistel_encrypt, simeck_f
from .claw import ClawProblem, find_claws_exhaustive, find_claws_sorted
from .walk import UniqueClawRequired, claw_walk_sample
from .words import check_word, mask, word_to_hex


class AttackError(RuntimeError):
    """Malformed input set or failed final verification."""


@dataclass
class ChosenPairSet:
    """Three rule pairs (plus optional non-rule extra pair) and their
    ciphertexts under the unknown key."""

    constant_c: int
    pairs: tuple            # 3 x ((L1, R1), (L7, R7))
    extra_pair: tuple | None = None

    def validate(self, spec):
        if len(self.pairs) != 3:
            raise AttackError(f"need exactly 3 rule pairs, got {len(self.pairs)}")
        check_word(self.constant_c, spec.word_width)
        seen = set()
        for (l1, r1), _ct in self.pairs:
            if spec.round_f(1, l1) ^ r1 != self.constant_c:
                raise AttackError(f"pair with L1={l1:#x} violates the "
                                  "plaintext selection rule")
            if l1 in seen:
                raise AttackError("rule pairs must have distinct L1 values")
            seen.add(l1)
        if self.extra_pair is not None:
            (l1, r1), _ct = self.extra_pair
            if spec.round_f(1, l1) ^ r1 == self.constant_c:
                raise AttackError("extra pair must violate the selection rule")

    def plaintexts(self):
        return [pt for pt, _ in self.pairs]

    def ciphertexts(self):
        return [ct for _, ct in self.pairs]


def make_chosen_plaintext(l1, constant_c, spec):
    """Plaintext (L1, R1) satisfying the selection rule by construction."""
    return l1, spec.round_f(1, l1) ^ constant_c


def make_pair_set(spec, keys, seed, constant_c=None, with_extra=True):
    """Synthetic attack instance: rule pairs under a hidden key.

    L1 values are drawn distinct uniformly from the seeded generator; the
    extra pair flips one R1 bit so it violates the rule.
    """
    rng = np.random.default_rng(seed)
    n = 1 << spec.word_width
    if constant_c is None:
        constant_c = int(rng.integers(0, n))
    l1s = [int(x) for x in rng.choice(n, size=3, replace=False)]
    pairs = []
    for l1 in l1s:
        pt = make_chosen_plaintext(l1, constant_c, spec)
        pairs.append((pt, feistel_encrypt(pt, keys, spec)))
    extra = None
    if with_extra:
        pt = make_chosen_plaintext(int(rng.integers(0, n)), constant_c ^ 1, spec)
        extra = (pt, feistel_encrypt(pt, keys, spec))
    return ChosenPairSet(constant_c, tuple(pairs), extra)


def true_k2_prime(keys, constant_c, spec):
    return spec.round_f(2, keys[0] ^ constant_c) ^ keys[1]


def family_member(k1_star, k2_prime, c_star, constant_c, spec):
    """The (K1, K2, K3) equivalence-family member selected by K1 = k1_star."""
    k2 = spec.round_f(2, k1_star ^ constant_c) ^ k2_prime
    return k1_star, k2, c_star ^ k1_star


# ---------------------------------------------------------------------------
# difference functions and per-subkey predicates (decryption direction
# states are named after the round value they reconstruct)


def _r6(ct, k6, spec):
    l7, r7 = ct
    return l7 ^ spec.round_f(6, r7) ^ k6


def _r5(ct, k5, k6, spec):
    l7, r7 = ct
    return r7 ^ spec.round_f(5, _r6(ct, k6, spec)) ^ k5


def _r4(ct, k4, k5, k6, spec):
    return _r6(ct, k6, spec) ^ spec.round_f(4, _r5(ct, k5, k6, spec)) ^ k4


def _r3(ct, k3, k4, k5, k6, spec):
    return (_r5(ct, k5, k6, spec)
            ^ spec.round_f(3, _r4(ct, k4, k5, k6, spec)) ^ k3)


def diff_f(x, pair_set, pair_idx, spec):
    """Encryption-direction matching difference F_3(L1^(1)^x) ^ F_3(L1^(p)^x);
    equals the round-4 left difference when x is the true K2'."""
    if pair_idx not in (2, 3):
        raise ValueError("pair_idx must be 2 or 3")
    l1a = pair_set.pairs[0][0][0]
    l1b = pair_set.pairs[pair_idx - 1][0][0]
    return spec.round_f(3, l1a ^ x) ^ spec.round_f(3, l1b ^ x)


def diff_g(x, pair_set, pair_idx, spec):
    """Decryption-direction matching difference; equals the round-4 left
    difference when x is the true K6."""
    if pair_idx not in (2, 3):
        raise ValueError("pair_idx must be 2 or 3")
    (l7a, r7a) = pair_set.pairs[0][1]
    (l7b, r7b) = pair_set.pairs[pair_idx - 1][1]
    return (r7a ^ r7b
            ^ spec.round_f(5, l7a ^ spec.round_f(6, r7a) ^ x)
            ^ spec.round_f(5, l7b ^ spec.round_f(6, r7b) ^ x))


def build_claw_problem(pair_set, spec):
    """Two-equation claw problem whose expected claw is (K2', K6)."""
    w = spec.word_width
    f_family = tuple(
        (lambda x, p=p: diff_f(x, pair_set, p, spec)) for p in (2, 3))
    g_family = tuple(
        (lambda x, p=p: diff_g(x, pair_set, p, spec)) for p in (2, 3))
    return ClawProblem(domain_bits=w, range_bits=w,
                       f_family=f_family, g_family=g_family,
                       expected_unique=True)


def _k5_delta(k5, k6, pair_set, pair_idx, spec):
    pta, cta = pair_set.pairs[0]
    ptb, ctb = pair_set.pairs[pair_idx - 1]
    delta = (cta[0] ^ ctb[0]
             ^ spec.round_f(6, cta[1]) ^ spec.round_f(6, ctb[1])
             ^ spec.round_f(4, _r5(cta, k5, k6, spec))
             ^ spec.round_f(4, _r5(ctb, k5, k6, spec)))
    return delta == (pta[0] ^ ptb[0])


def k5_check(k5, k6, pair_set, pair_idx, spec):
    """Round-3 matching: decryption-side left difference (guessing k5, k6)
    must equal the plaintext left difference."""
    return bool(np.all(_k5_delta(k5, k6, pair_set, pair_idx, spec)))


def _k4_delta(k4, k5, k6, pair_set, pair_idx, spec):
    _pta, cta = pair_set.pairs[0]
    _ptb, ctb = pair_set.pairs[pair_idx - 1]
    delta = (_r5(cta, k5, k6, spec) ^ _r5(ctb, k5, k6, spec)
             ^ spec.round_f(3, _r4(cta, k4, k5, k6, spec))
             ^ spec.round_f(3, _r4(ctb, k4, k5, k6, spec)))
    return delta == 0


def k4_check(k4, k5, k6, pair_set, pair_idx, spec):
    """Round-2 matching: the rule pins the round-2 left difference to zero."""
    return bool(np.all(_k4_delta(k4, k5, k6, pair_set, pair_idx, spec)))


def k3_check_paper(k3, k4, k5, k6, pair_set, pair_idx, spec):
    """Round-1 matching, taken literally.

    On rule-constrained pairs the reconstructed round-2 left states of the
    two pairs are equal for every k3 guess, so the F_2 difference term
    cancels and the verdict is independent of k3.  The predicate exists to
    demonstrate exactly that degeneracy.
    """
    pta, cta = pair_set.pairs[0]
    ptb, ctb = pair_set.pairs[pair_idx - 1]
    delta = (_r4(cta, k4, k5, k6, spec) ^ _r4(ctb, k4, k5, k6, spec)
             ^ spec.round_f(2, _r3(cta, k3, k4, k5, k6, spec))
             ^ spec.round_f(2, _r3(ctb, k3, k4, k5, k6, spec)))
    return bool(np.all(delta == (pta[0] ^ ptb[0])))


def k1k3_constant(pair_set, k2_prime, k5, k6, spec):
    """The constant K1 ^ K3, recovered from any rule pair; all three pairs
    must agree or the upstream keys are wrong."""
    values = set()
    for pt, ct in pair_set.pairs:
        l4 = _r5(ct, k5, k6, spec)
        values.add(int(l4 ^ spec.round_f(3, pt[0] ^ k2_prime)
                       ^ pair_set.constant_c))
    if len(values) != 1:
        raise AttackError(f"K1^K3 constant disagrees across pairs: "
                          f"{sorted(values)}")
    return values.pop()


# ---------------------------------------------------------------------------
# search backends


@dataclass
class QueryStats:
    claw_queries: int = 0
    grover_queries: dict = field(default_factory=dict)
    classical_evals: dict = field(default_factory=dict)
    wall_time: float = 0.0              # not serialized: reports stay byte-stable
    walk_success_prob: float | None = None

    def total_grover(self):
        return sum(self.grover_queries.values())


def _search_candidates(predicate_vec, spec, backend, seed, retry_bound):
    """Candidate key values for one Grover-style stage.

    predicate_vec maps a numpy array of all 2^w candidates to a bool
    array.  Returns (candidates, quantum_queries, classical_evals);
    exhaustive returns every survivor, grover samples and verifies up to
    retry_bound times.
    """
    n = 1 << spec.word_width
    xs = np.arange(n, dtype=np.uint32)
    truth = predicate_vec(xs)
    survivors = [int(x) for x in np.nonzero(truth)[0]]
    if backend == "exhaustive":
        return survivors, 0, n
    if backend == "grover":
        if not survivors:
            return [], 0, n
        queries = 0
        evals = 0
        # iteration count assumes a single marked element; spurious
        # survivors are handled by reruns and classical verification
        iters = grover.grover_iterations(n, 1)
        for attempt in range(retry_bound):
            idx, ledger = grover.grover_sample(
                lambda x: bool(truth[x]), n, seed=seed + attempt,
                iterations=iters)
            queries += ledger.oracle_queries
            evals += ledger.notes.get("classical_evals", 0)
            if truth[idx]:
                break
        # candidates are returned in ascending order for both backends so
        # the downstream pipeline is backend-independent; the sampling
        # above contributes the quantum query accounting
        return survivors, queries, evals
    raise ValueError(f"unknown search backend {backend!r}")


@dataclass
class RecoveredKeys:
    subkeys: tuple
    k2_prime: int
    k1_xor_k3: int
    uniqueness: str         # "unique" | "equivalence-family"


def _verify(pair_set, keys, spec):
    for pt, ct in pair_set.pairs:
        if feistel_encrypt(pt, keys, spec) != ct:
            return False
    if pair_set.extra_pair is not None:
        pt, ct = pair_set.extra_pair
        if feistel_encrypt(pt, keys, spec) != ct:
            return False
    return True


BACKEND_PRESETS = {
    "classical": {"claw": "sorted", "search": "exhaustive"},
    "exhaustive": {"claw": "exhaustive", "search": "exhaustive"},
    "walk-sim": {"claw": "walk-collapsed", "search": "grover"},
    "walk-full": {"claw": "walk-full", "search": "grover"},
}


def _claw_candidates(problem, backend, seed, walk_retries, stats, stage):
    """Stage-1 claw candidates in deterministic order.

    Walk backends sample one claw (collapsed mode falls back to the
    sorted search when the claw is not unique); classical backends return
    the whole claw set so the pipeline can iterate on spurious claws.
    """
    if backend == "exhaustive":
        claws = find_claws_exhaustive(problem)
        stats.classical_evals[stage] = 2 * problem.n_side
        return claws, backend
    if backend == "sorted":
        claws, evals = find_claws_sorted(problem)
        stats.classical_evals[stage] = evals
        return claws, backend
    if backend in ("walk-collapsed", "walk-full"):
        mode = backend.removeprefix("walk-")
        try:
            result = claw_walk_sample(problem, seed=seed, mode=mode,
                                      max_retries=walk_retries)
        except UniqueClawRequired:
            claws, evals = find_claws_sorted(problem)
            stats.classical_evals[stage] = evals
            return claws, f"{backend}->sorted (claw not unique)"
        stats.claw_queries = result.ledger.oracle_queries
        stats.classical_evals[stage] = 2 * problem.n_side  # uniqueness scan
        stats.walk_success_prob = result.success_prob
        if result.claw is None:
            # retries exhausted; the remaining claw set is still known
            return result.all_claws, f"{backend}->exhausted"
        rest = [c for c in result.all_claws if c != result.claw]
        return [result.claw] + rest, backend
    raise ValueError(f"unknown claw backend {backend!r}")


def schedule_consistent(k1, k2, k5, spec):
    """Whether (K1, K2, K5) can come from the Simeck key schedule:
    K5 = F(K2) ^ K1 ^ (2^w - 4) ^ z0 with z0 a single stream bit."""
    resid = k5 ^ simeck_f(k2, spec) ^ k1 ^ (mask(spec.word_width) ^ 3)
    return resid in (0, 1)


def resolve_k1_k2_k3(c_star, k2_prime, pair_set, spec, k456, backend,
                     seed, retry_bound, stats):
    """Resolve (K1, K2, K3) via the extra pair, or report the equivalence
    family (representative K1 = 0) when none is supplied.

    One extra pair cannot always pin K1 alone: with the same round
    function in rounds 1-3 the extra-pair predicate is invariant under
    k1 -> k1 ^ R1 ^ F(L1) ^ C, so survivors come in pairs.  When the
    cipher uses the Simeck key schedule the consistency relation
    K5 = F(K2) ^ K1 ^ (2^w - 4) ^ z0 breaks the tie; otherwise the
    smallest survivor is reported and the ambiguity is flagged.
    """
    c = pair_set.constant_c
    if pair_set.extra_pair is None:
        k1, k2, k3 = family_member(0, k2_prime, c_star, c, spec)
        return (k1, k2, k3), "equivalence-family"
    pt, ct = pair_set.extra_pair

    def predicate_vec(xs):
        k2s = spec.round_f(2, xs ^ c) ^ k2_prime
        k3s = xs ^ c_star
        left = np.full_like(xs, pt[0])
        right = np.full_like(xs, pt[1])
        keys = [xs, k2s, k3s, *k456]
        for i, k in enumerate(keys, start=1):
            left, right = right ^ spec.round_f(i, left) ^ k, left
        return (left == ct[0]) & (right == ct[1])

    cands, q, evals = _search_candidates(predicate_vec, spec, backend,
                                         seed, retry_bound)
    stats.grover_queries["resolve-k1"] = q
    stats.classical_evals["resolve-k1"] = evals
    if not cands:
        raise AttackError("no K1 satisfies the extra pair; upstream keys wrong")
    uniqueness = "unique"
    if len(cands) > 1:
        uniqueness = "extra-pair-ambiguous"
        if spec.round_function == "simeck":
            k5 = k456[1]
            sched = [k1 for k1 in cands if schedule_consistent(
                k1, spec.round_f(2, k1 ^ c) ^ k2_prime, k5, spec)]
            if len(sched) == 1:
                cands = sched
                uniqueness = "unique"
    k1 = cands[0]
    k2 = spec.round_f(2, k1 ^ c) ^ k2_prime
    return (k1, k2, k1 ^ c_star), uniqueness


def run_asr_attack(pair_set, spec, backends="classical", seed=0,
                   retry_bound=5, walk_retries=400):
    """Full pipeline: claw search for (K2', K6), difference checks for K5
    and K4, the K1 ^ K3 constant, then (K1, K2, K3) resolution and final
    trial-encryption arbitration.

    backends is a preset name or a {"claw": ..., "search": ...} mapping.
    Returns (RecoveredKeys, QueryStats, stages) where stages is the
    per-stage report list.
    """
    if spec.rounds != 6:
        raise AttackError("the attack targets the 6-round structure")
    pair_set.validate(spec)
    if isinstance(backends, str):
        backends = BACKEND_PRESETS[backends]
    t0 = time.perf_counter()
    stats = QueryStats()
    stages = []
    w = spec.word_width

    problem = build_claw_problem(pair_set, spec)
    claws, claw_backend = _claw_candidates(
        problem, backends["claw"], seed, walk_retries, stats, "claw")
    stages.append({"name": "claw-k2prime-k6", "backend": claw_backend,
                   "queries": stats.claw_queries
                   or stats.classical_evals.get("claw", 0),
                   "result_hex": [[word_to_hex(a, w), word_to_hex(b, w)]
                                  for a, b in claws]})
    if not claws:
        raise AttackError("no claw found: malformed pair set, reject")

    for k2_prime, k6 in claws:
        k5s, q5, e5 = _search_candidates(
            lambda xs: (_k5_delta(xs, k6, pair_set, 2, spec)
                        & _k5_delta(xs, k6, pair_set, 3, spec)),
            spec, backends["search"], seed + 1, retry_bound)
        stats.grover_queries["k5"] = stats.grover_queries.get("k5", 0) + q5
        stats.classical_evals["k5"] = stats.classical_evals.get("k5", 0) + e5
        for k5 in k5s:
            k4s, q4, e4 = _search_candidates(
                lambda xs: (_k4_delta(xs, k5, k6, pair_set, 2, spec)
                            & _k4_delta(xs, k5, k6, pair_set, 3, spec)),
                spec, backends["search"], seed + 2, retry_bound)
            stats.grover_queries["k4"] = stats.grover_queries.get("k4", 0) + q4
            stats.classical_evals["k4"] = stats.classical_evals.get("k4", 0) + e4
            for k4 in k4s:
                try:
                    c_star = k1k3_constant(pair_set, k2_prime, k5, k6, spec)
                except AttackError:
                    continue
                try:
                    (k1, k2, k3), uniqueness = resolve_k1_k2_k3(
                        c_star, k2_prime, pair_set, spec, (k4, k5, k6),
                        backends["search"], seed + 3, retry_bound, stats)
                except AttackError:
                    continue
                keys = (k1, k2, k3, k4, k5, k6)
                if _verify(pair_set, keys, spec):
                    stats.wall_time = time.perf_counter() - t0
                    stages.append({"name": "k5", "backend": backends["search"],
                                   "queries": q5 or e5,
                                   "result_hex": word_to_hex(k5, w)})
                    stages.append({"name": "k4", "backend": backends["search"],
                                   "queries": q4 or e4,
                                   "result_hex": word_to_hex(k4, w)})
                    stages.append({"name": "k1-xor-k3", "backend": "direct",
                                   "queries": 3,
                                   "result_hex": word_to_hex(c_star, w)})
                    stages.append({"name": "resolve-k1-k2-k3",
                                   "backend": backends["search"]
                                   if pair_set.extra_pair else "family",
                                   "queries":
                                   stats.grover_queries.get("resolve-k1", 0)
                                   or stats.classical_evals.get("resolve-k1", 0),
                                   "result_hex": [word_to_hex(x, w)
                                                  for x in (k1, k2, k3)]})
                    recovered = RecoveredKeys(keys, k2_prime, c_star,
                                              uniqueness)
                    return recovered, stats, stages
    raise AttackError("attack failed: no key candidate verified")


def attack_report(pair_set, spec, recovered, stats, stages, backends):
    """JSON-ready attack report (deterministic for a fixed config+seed)."""
    w = spec.word_width
    if isinstance(backends, str):
        backends = BACKEND_PRESETS[backends]
    pairs = [{"plaintext": [word_to_hex(pt[0], w), word_to_hex(pt[1], w)],
              "ciphertext": [word_to_hex(ct[0], w), word_to_hex(ct[1], w)]}
             for pt, ct in pair_set.pairs]
    report = {
        "spec": {"width": w, "rounds": spec.rounds,
                 "round_function": spec.round_function},
        "constant_c": word_to_hex(pair_set.constant_c, w),
        "pairs": pairs,
        "backends": backends,
        "stages": stages,
        "recovered": {
            **{f"K{i}": word_to_hex(k, w)
               for i, k in enumerate(recovered.subkeys, start=1)},
            "K2_prime": word_to_hex(recovered.k2_prime, w),
            "K1_xor_K3": word_to_hex(recovered.k1_xor_k3, w),
            "uniqueness": recovered.uniqueness,
        },
        "verified": _verify(pair_set, recovered.subkeys, spec),
        "data_complexity": len(pair_set.pairs)
        + (1 if pair_set.extra_pair else 0),
    }
    if stats.walk_success_prob is not None:
        report["walk_success_prob"] = stats.walk_success_prob
    return report
