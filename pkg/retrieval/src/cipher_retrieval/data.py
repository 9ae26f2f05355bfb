"""Dataset manifests, splits and class-balanced batch sampling.

Consumes the cipher-dataset layout written by `cipherjpeg
export-dataset`: a directory of PNGs plus `manifest.csv` with header
`path,label,width,height,qf`, paths relative to the manifest.
"""

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import torch
from PIL import Image


@dataclass
class ManifestEntry:
    path: Path
    label: str
    width: int
    height: int
    qf: int


def load_manifest(manifest_path) -> list:
    manifest_path = Path(manifest_path)
    root = manifest_path.parent
    entries = []
    with open(manifest_path, newline="") as fh:
        for row in csv.DictReader(fh):
            entries.append(ManifestEntry(
                path=root / row["path"], label=row["label"],
                width=int(row["width"]), height=int(row["height"]),
                qf=int(row["qf"])))
    if not entries:
        raise ValueError(f"empty manifest: {manifest_path}")
    return entries


def stratified_split(entries, train_fraction=0.7, seed=0):
    """Per-class 70/30 split, seeded."""
    rng = np.random.default_rng(seed)
    by_label = {}
    for e in entries:
        by_label.setdefault(e.label, []).append(e)
    train, test = [], []
    for label in sorted(by_label):
        group = by_label[label]
        order = rng.permutation(len(group))
        cut = int(round(train_fraction * len(group)))
        train.extend(group[i] for i in order[:cut])
        test.extend(group[i] for i in order[cut:])
    return train, test


class CipherImages:
    """Loads and caches the images of one split as a single tensor."""

    def __init__(self, entries, classes=None):
        if classes is None:
            classes = sorted({e.label for e in entries})
        self.classes = list(classes)
        index = {c: i for i, c in enumerate(self.classes)}
        arrays, labels = [], []
        for e in entries:
            with Image.open(e.path) as im:
                arr = np.asarray(im.convert("RGB"), dtype=np.float32) / 255.0
            arrays.append(arr.transpose(2, 0, 1))
            labels.append(index[e.label])
        self.images = torch.from_numpy(np.stack(arrays))
        self.labels = torch.tensor(labels, dtype=torch.long)

    def __len__(self):
        return len(self.labels)

    def channel_stats(self):
        mean = self.images.mean(dim=(0, 2, 3))
        std = self.images.std(dim=(0, 2, 3)).clamp_min(1e-6)
        return mean, std

    def normalized(self, mean, std):
        return (self.images - mean[:, None, None]) / std[:, None, None]


def balanced_batches(labels, batch_classes, batch_per_class, rng):
    """Yield index batches of P classes x Q instances for one epoch.

    Classes (and instances within a class) are drawn without replacement
    until a full P x Q batch can no longer be formed.
    """
    by_class = {}
    for i, y in enumerate(labels.tolist()):
        by_class.setdefault(y, []).append(i)
    pools = {y: list(rng.permutation(idx)) for y, idx in by_class.items()}
    while True:
        avail = [y for y, pool in pools.items() if len(pool) >= batch_per_class]
        if len(avail) < batch_classes:
            return
        chosen = rng.permutation(avail)[:batch_classes]
        batch = []
        for y in chosen:
            pool = pools[y]
            batch.extend(int(pool.pop()) for _ in range(batch_per_class))
        yield batch
