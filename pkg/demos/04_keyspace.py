#!/usr/bin/env python3
"""How many cipher configurations protect one image?

Per 8x8 block there are 4 rotations and C(128,9) ways to pick the
transform subset, and each component's blocks can be permuted n! ways.
The count is astronomically beyond brute force for any real image.
"""

import math

import cipherjpeg as cj

for w, h in [(16, 16), (192, 128), (512, 512), (1920, 1080)]:
    r = cj.keyspace(w, h)
    print(f"{w}x{h}: blocks Y={r.n_y} U={r.n_u} V={r.n_v} -> "
          f"log2(key space) = {r.log2_bits:,.0f} bits")

print()
r = cj.keyspace(192, 128)
digits = int(r.log2_bits * math.log10(2)) + 1
print(f"the 192x128 key space written out has {digits:,} decimal digits;")
print("a 256-bit master key is the binding limit in practice.")
