"""Reference worked example: 6-round Simeck32/64 attack vectors.

These are the published tables the end-to-end demo reproduces: a master
key, the six expanded subkeys, three rule-constrained plaintexts
(simeck_f(L1) ^ R1 == 0xFFEE) and their ciphertexts.

The printed tables are not fully self-consistent, so each table is kept
in two forms: *_PRINTED exactly as published, and the derived form that
the cipher core actually produces.  Derived values govern everywhere;
KNOWN_TYPOS records every divergence so reports can log both values.

Divergences, all re-derived here and checked by tests/test_vectors.py:

* Subkeys 5 and 6 as printed (05A9, FE40) correspond to the key-schedule
  z-stream starting five steps into the LFSR (cipher.z_sequence variant
  "example").  The standard Simeck32/64 schedule - the one matching the
  official test vector - yields 05A8, FE41 instead.
* Plaintext row 2 prints R1 = FCDD, which violates the selection rule;
  the rule forces 7CDD (single leading-nibble typo).
* Ciphertext rows 2 and 3 as printed are not the encryptions of any of
  the printed plaintexts under the printed subkeys.  The derived rows
  are recomputed with the corrected row-2 plaintext.
"""

from .cipher import FeistelSpec

SPEC = FeistelSpec(word_width=16, rounds=6)

CONSTANT_C = 0xFFEE

# master key words in (k, t0, t1, t2) order
MASTER_KEY = (0xB0AE, 0xC7E9, 0xC3CE, 0xE6C3)

SUBKEYS_PRINTED = (0xB0AE, 0xC7E9, 0xC3CE, 0xE6C3, 0x05A9, 0xFE40)
SUBKEYS = SUBKEYS_PRINTED            # schedule variant "example" reproduces them
SUBKEYS_STANDARD = (0xB0AE, 0xC7E9, 0xC3CE, 0xE6C3, 0x05A8, 0xFE41)

PLAINTEXTS_PRINTED = (
    (0xCDF5, 0xE8B4),
    (0xC191, 0xFCDD),   # R1 violates the selection rule
    (0xD0C4, 0x4EE7),
)
PLAINTEXTS = (
    (0xCDF5, 0xE8B4),
    (0xC191, 0x7CDD),   # rule-corrected
    (0xD0C4, 0x4EE7),
)

CIPHERTEXTS_PRINTED = (
    (0xBE3A, 0x8ECF),
    (0x79F4, 0x5174),
    (0xB468, 0xCA34),
)
# encryptions of PLAINTEXTS under SUBKEYS
CIPHERTEXTS = (
    (0xBE3A, 0x8ECF),
    (0x544D, 0xF9EA),
    (0x63CB, 0x541A),
)

# one extra pair NOT satisfying the selection rule, for unique K1 resolution
EXTRA_PAIR = ((0x0000, 0x0000), (0xBEDD, 0x19A8))

# derived attack-side quantities
K2_PRIME = 0x1169            # F(K1 ^ C) ^ K2
K1_XOR_K3 = 0x7360

KNOWN_TYPOS = (
    {"entry": "subkey k5", "printed": "05A8 (standard schedule)",
     "derived": "05A9", "note": "z-stream offset; see module docstring"},
    {"entry": "subkey k6", "printed": "FE41 (standard schedule)",
     "derived": "FE40", "note": "z-stream offset; see module docstring"},
    {"entry": "plaintext row 2 R1", "printed": "FCDD", "derived": "7CDD",
     "note": "selection rule forces F(L1) ^ R1 == FFEE"},
    {"entry": "ciphertext row 2", "printed": "79F4|5174", "derived": "544D|F9EA",
     "note": "recomputed from corrected plaintext under the printed subkeys"},
    {"entry": "ciphertext row 3", "printed": "B468|CA34", "derived": "63CB|541A",
     "note": "recomputed under the printed subkeys"},
)
