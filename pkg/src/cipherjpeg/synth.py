"""Deterministic natural-statistics test images.

Corpus images mix a 1/f^alpha random field (the classic power-spectrum
model of photographs) with a few soft-edged geometric structures and
fine texture, in luma/chroma space.  Seeded generation keeps every test
and demo reproducible without shipping any image files.
"""

import numpy as np


def _spectral_field(rng, height, width, alpha):
    fy = np.fft.fftfreq(height)[:, None]
    fx = np.fft.fftfreq(width)[None, :]
    radius = np.sqrt(fy * fy + fx * fx)
    radius[0, 0] = 1.0
    spectrum = rng.normal(size=(height, width)) + 1j * rng.normal(size=(height, width))
    field = np.real(np.fft.ifft2(spectrum / radius ** alpha))
    field -= field.mean()
    sd = field.std()
    return field / sd if sd > 0 else field


def _soft_ellipse(height, width, cy, cx, ry, rx, sharpness=8.0):
    yy = (np.arange(height)[:, None] - cy) / ry
    xx = (np.arange(width)[None, :] - cx) / rx
    d = np.sqrt(yy * yy + xx * xx)
    return 1.0 / (1.0 + np.exp(sharpness * (d - 1.0)))


def synthetic_image(width: int, height: int, seed: int) -> np.ndarray:
    """One RGB uint8 image with photograph-like statistics."""
    rng = np.random.default_rng(seed)
    mean_luma = rng.uniform(100.0, 156.0)
    luma = mean_luma + 36.0 * _spectral_field(rng, height, width, rng.uniform(1.1, 1.6))
    cb = 18.0 * _spectral_field(rng, height, width, rng.uniform(1.4, 2.0))
    cr = 18.0 * _spectral_field(rng, height, width, rng.uniform(1.4, 2.0))

    for _ in range(rng.integers(2, 5)):
        mask = _soft_ellipse(
            height, width,
            cy=rng.uniform(0, height), cx=rng.uniform(0, width),
            ry=rng.uniform(height / 8, height / 2),
            rx=rng.uniform(width / 8, width / 2),
        )
        luma += mask * rng.uniform(-45.0, 45.0)
        cb += mask * rng.uniform(-25.0, 25.0)
        cr += mask * rng.uniform(-25.0, 25.0)

    luma += rng.normal(scale=3.0, size=(height, width))

    r = luma + 1.402 * cr
    g = luma - 0.344136 * cb - 0.714136 * cr
    b = luma + 1.772 * cb
    rgb = np.stack([r, g, b], axis=2)
    return np.clip(np.rint(rgb), 0, 255).astype(np.uint8)


# Class palette for labeled toy corpora: (luma mean, cb shift, cr shift,
# texture alpha, structure count).  Chosen far apart so class identity
# survives block-level scrambling.
CLASS_PARAMS = [
    (110, -40, 10, 1.0, 2),
    (150, 35, -10, 1.8, 2),
    (95, 10, 45, 1.2, 5),
    (160, -15, -40, 1.5, 3),
    (125, 45, 35, 1.1, 6),
    (140, -45, -25, 1.9, 1),
    (105, 25, -45, 1.4, 4),
    (155, -30, 40, 1.0, 5),
    (120, 0, 0, 2.0, 8),
    (135, 40, 15, 1.3, 1),
]


def synthetic_class_image(label: int, index: int, width: int, height: int) -> np.ndarray:
    """Image `index` of class `label` for retrieval toy datasets."""
    mean_luma, cb_shift, cr_shift, alpha, n_shapes = \
        CLASS_PARAMS[label % len(CLASS_PARAMS)]
    rng = np.random.default_rng(1_000_003 * (label + 1) + index)
    luma = mean_luma + 25.0 * _spectral_field(rng, height, width, alpha)
    cb = cb_shift + 10.0 * _spectral_field(rng, height, width, alpha)
    cr = cr_shift + 10.0 * _spectral_field(rng, height, width, alpha)
    for _ in range(n_shapes):
        mask = _soft_ellipse(
            height, width,
            cy=rng.uniform(0, height), cx=rng.uniform(0, width),
            ry=rng.uniform(height / 10, height / 3),
            rx=rng.uniform(width / 10, width / 3),
        )
        luma += mask * rng.uniform(-30.0, 30.0)
    luma += rng.normal(scale=2.0, size=(height, width))
    r = luma + 1.402 * cr
    g = luma - 0.344136 * cb - 0.714136 * cr
    b = luma + 1.772 * cb
    rgb = np.stack([r, g, b], axis=2)
    return np.clip(np.rint(rgb), 0, 255).astype(np.uint8)
