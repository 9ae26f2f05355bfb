"""Shared fixtures: a labeled toy corpus exported through the cipherjpeg CLI.

The corpus is generated here with numpy + PIL only; the cipher dataset
is produced by invoking `cipherjpeg export-dataset` in a subprocess, so
this package touches the codec exclusively through its command-line
interface and the manifest/PNG files it writes.
"""

import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest
from PIL import Image

N_CLASSES = 10
PER_CLASS = 50
WIDTH, HEIGHT = 96, 64

CLASS_PARAMS = [
    (110, -40, 10, 1.0), (150, 35, -10, 1.8), (95, 10, 45, 1.2),
    (160, -15, -40, 1.5), (125, 45, 35, 1.1), (140, -45, -25, 1.9),
    (105, 25, -45, 1.4), (155, -30, 40, 1.0), (120, 0, 0, 2.0),
    (135, 40, 15, 1.3),
]


def _spectral(rng, h, w, alpha):
    fy = np.fft.fftfreq(h)[:, None]
    fx = np.fft.fftfreq(w)[None, :]
    radius = np.sqrt(fy * fy + fx * fx)
    radius[0, 0] = 1.0
    spec = rng.normal(size=(h, w)) + 1j * rng.normal(size=(h, w))
    field = np.real(np.fft.ifft2(spec / radius ** alpha))
    field -= field.mean()
    sd = field.std()
    return field / sd if sd > 0 else field


def class_image(label, index, width=WIDTH, height=HEIGHT):
    mean_l, cb0, cr0, alpha = CLASS_PARAMS[label]
    rng = np.random.default_rng(7_000_000 + label * 1000 + index)
    luma = mean_l + 25 * _spectral(rng, height, width, alpha)
    cb = cb0 + 10 * _spectral(rng, height, width, alpha)
    cr = cr0 + 10 * _spectral(rng, height, width, alpha)
    r = luma + 1.402 * cr
    g = luma - 0.344136 * cb - 0.714136 * cr
    b = luma + 1.772 * cb
    rgb = np.stack([r, g, b], axis=2)
    return np.clip(np.rint(rgb), 0, 255).astype(np.uint8)


@pytest.fixture(scope="session")
def cipher_dataset(tmp_path_factory):
    """Path to the manifest of a 10x50 exported cipher dataset."""
    root = tmp_path_factory.mktemp("toy")
    corpus = root / "corpus"
    for label in range(N_CLASSES):
        cls_dir = corpus / f"c{label:02d}"
        cls_dir.mkdir(parents=True)
        for i in range(PER_CLASS):
            Image.fromarray(class_image(label, i)).save(cls_dir / f"{i:03d}.png")
    out = root / "exported"
    subprocess.run(
        [sys.executable, "-m", "cipherjpeg.cli", "export-dataset", str(corpus),
         "--key", "ee" * 32, "--qf", "50", "--out", str(out)],
        check=True, capture_output=True)
    manifest = out / "manifest.csv"
    assert manifest.is_file()
    return manifest
