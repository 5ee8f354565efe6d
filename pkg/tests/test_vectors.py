"""The bundled reference worked example is internally consistent in its
derived form, and every divergence from the printed form is recorded."""

from clawbench import vectors
from clawbench.attack import true_k2_prime
from clawbench.cipher import (FeistelSpec, feistel_encrypt,
                              simeck_key_schedule)


def test_subkeys_from_master_example_variant():
    keys = simeck_key_schedule(vectors.MASTER_KEY, 6, vectors.SPEC, "example")
    assert keys == vectors.SUBKEYS
    assert keys[:4] == vectors.MASTER_KEY


def test_subkeys_standard_variant_differ_in_last_bit():
    keys = simeck_key_schedule(vectors.MASTER_KEY, 6, vectors.SPEC, "standard")
    assert keys == vectors.SUBKEYS_STANDARD
    assert keys[:4] == vectors.MASTER_KEY
    assert keys[4] == vectors.SUBKEYS[4] ^ 1
    assert keys[5] == vectors.SUBKEYS[5] ^ 1


def test_plaintexts_satisfy_selection_rule():
    spec = vectors.SPEC
    for l1, r1 in vectors.PLAINTEXTS:
        assert spec.round_f(1, l1) ^ r1 == vectors.CONSTANT_C
    # the printed row 2 violates the rule; the derived row fixes one nibble
    l1, r1 = vectors.PLAINTEXTS_PRINTED[1]
    assert spec.round_f(1, l1) ^ r1 != vectors.CONSTANT_C
    assert vectors.PLAINTEXTS[1] == (l1, r1 ^ 0x8000)


def test_ciphertexts_are_encryptions_of_plaintexts():
    for pt, ct in zip(vectors.PLAINTEXTS, vectors.CIPHERTEXTS):
        assert feistel_encrypt(pt, vectors.SUBKEYS, vectors.SPEC) == ct


def test_printed_ciphertext_rows_2_3_do_not_decrypt_sensibly():
    derived = [feistel_encrypt(pt, vectors.SUBKEYS, vectors.SPEC)
               for pt in vectors.PLAINTEXTS]
    assert derived[0] == vectors.CIPHERTEXTS_PRINTED[0]
    assert derived[1] != vectors.CIPHERTEXTS_PRINTED[1]
    assert derived[2] != vectors.CIPHERTEXTS_PRINTED[2]


def test_extra_pair_violates_rule_and_encrypts():
    spec = vectors.SPEC
    (l1, r1), ct = vectors.EXTRA_PAIR
    assert spec.round_f(1, l1) ^ r1 != vectors.CONSTANT_C
    assert feistel_encrypt((l1, r1), vectors.SUBKEYS, spec) == ct


def test_derived_attack_constants():
    spec = vectors.SPEC
    assert true_k2_prime(vectors.SUBKEYS, vectors.CONSTANT_C,
                         spec) == vectors.K2_PRIME
    assert vectors.SUBKEYS[0] ^ vectors.SUBKEYS[2] == vectors.K1_XOR_K3


def test_typo_log_covers_every_divergence():
    entries = {t["entry"] for t in vectors.KNOWN_TYPOS}
    assert entries == {"subkey k5", "subkey k6", "plaintext row 2 R1",
                       "ciphertext row 2", "ciphertext row 3"}
