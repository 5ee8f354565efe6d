"""Walk through the bundled reference worked example.

Expands the master key, encrypts the three rule-constrained plaintexts,
and prints where the printed tables diverge from the derived values.
"""

from clawbench import vectors
from clawbench.cipher import feistel_encrypt, simeck_key_schedule
from clawbench.words import block_to_hex, word_to_hex


def main():
    spec = vectors.SPEC
    print("master key:", " ".join(word_to_hex(x, 16)
                                  for x in vectors.MASTER_KEY))
    keys = simeck_key_schedule(vectors.MASTER_KEY, 6, spec)
    for i, k in enumerate(keys, 1):
        print(f"  k{i} = {word_to_hex(k, 16)}")

    print("\nrule-constrained plaintexts (F(L1) ^ R1 == "
          f"{word_to_hex(vectors.CONSTANT_C, 16)}):")
    for pt in vectors.PLAINTEXTS:
        ct = feistel_encrypt(pt, keys, spec)
        print(f"  {block_to_hex(pt, 16)}  ->  {block_to_hex(ct, 16)}")

    print("\nextra non-rule pair:",
          block_to_hex(vectors.EXTRA_PAIR[0], 16), "->",
          block_to_hex(vectors.EXTRA_PAIR[1], 16))

    print("\nprinted-table divergences (derived values govern):")
    for typo in vectors.KNOWN_TYPOS:
        print(f"  {typo['entry']}: printed {typo['printed']} -> "
              f"derived {typo['derived']}  [{typo['note']}]")


if __name__ == "__main__":
    main()
