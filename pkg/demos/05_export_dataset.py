#!/usr/bin/env python3
"""Build a labeled toy corpus and export its cipher-image dataset.

The export encrypts every image under one key, decodes the cipher JPEG
back to pixels, and writes PNGs plus a manifest CSV.  That manifest is
the hand-off point to the retrieval model, which learns to rank these
scrambled images without ever seeing a plain one.
"""

from pathlib import Path

import cipherjpeg as cj
from cipherjpeg.cli import main

corpus = Path("demo_out/toy_corpus")
export = Path("demo_out/toy_cipher_dataset")

n_classes, per_class = 10, 12
for label in range(n_classes):
    cls_dir = corpus / f"class{label:02d}"
    cls_dir.mkdir(parents=True, exist_ok=True)
    for i in range(per_class):
        cj.write_png(cls_dir / f"{i:03d}.png",
                     cj.synthetic_class_image(label, i, 96, 64))
print(f"built {n_classes} classes x {per_class} images under {corpus}")

status = main([
    "export-dataset", str(corpus),
    "--key", "feed" + "00" * 30,
    "--qf", "50",
    "--out", str(export),
])
assert status == 0

manifest = (export / "manifest.csv").read_text().strip().split("\n")
print(f"manifest rows: {len(manifest) - 1}  (header: {manifest[0]})")
print("first entries:")
for line in manifest[1:4]:
    print(" ", line)
