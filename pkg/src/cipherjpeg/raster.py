"""Raster file I/O: PPM (P6) and PNG in, PNG and PPM out."""

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import InvalidInputError


def read_image(path) -> np.ndarray:
    try:
        with Image.open(path) as im:
            rgb = np.asarray(im.convert("RGB"))
    except (UnidentifiedImageError, OSError) as exc:
        raise InvalidInputError(f"cannot read raster image {path}: {exc}") from exc
    if rgb.size == 0:
        raise InvalidInputError(f"empty image: {path}")
    return rgb


def write_png(path, rgb: np.ndarray) -> None:
    Image.fromarray(rgb, mode="RGB").save(path, format="PNG")


def write_ppm(path, rgb: np.ndarray) -> None:
    h, w = rgb.shape[:2]
    with open(path, "wb") as fh:
        fh.write(f"P6\n{w} {h}\n255\n".encode("ascii"))
        fh.write(rgb.astype(np.uint8).tobytes())
