"""Color conversion, padding and 4:2:0 resampling.

Full-range BT.601 both ways.  Images are padded to multiples of 16 by
edge replication before conversion so the luma grid always holds whole
16x16 MCUs; decoders crop back to the declared size.
"""

import numpy as np

from .errors import InvalidInputError


def pad_to_multiple_of_16(rgb: np.ndarray) -> np.ndarray:
    if rgb.ndim != 3 or rgb.shape[2] != 3:
        raise InvalidInputError("expected an RGB array of shape (h, w, 3)")
    h, w = rgb.shape[:2]
    if h == 0 or w == 0:
        raise InvalidInputError("image has zero size")
    pad_h = (-h) % 16
    pad_w = (-w) % 16
    if pad_h == 0 and pad_w == 0:
        return rgb
    return np.pad(rgb, ((0, pad_h), (0, pad_w), (0, 0)), mode="edge")


def rgb_to_yuv(rgb: np.ndarray):
    """RGB (h,w,3) uint8 -> (y, u, v) uint8 planes, chroma box-filtered 2x2.

    Dimensions must already be multiples of 16.
    """
    if rgb.ndim != 3 or rgb.shape[2] != 3:
        raise InvalidInputError("expected an RGB array of shape (h, w, 3)")
    h, w = rgb.shape[:2]
    if h == 0 or w == 0:
        raise InvalidInputError("image has zero size")
    if h % 16 or w % 16:
        raise InvalidInputError("dimensions must be multiples of 16 (pad first)")
    r = rgb[:, :, 0].astype(np.float64)
    g = rgb[:, :, 1].astype(np.float64)
    b = rgb[:, :, 2].astype(np.float64)
    y = 0.299 * r + 0.587 * g + 0.114 * b
    u = -0.168736 * r - 0.331264 * g + 0.5 * b + 128.0
    v = 0.5 * r - 0.418688 * g - 0.081312 * b + 128.0
    u = _box_half(u)
    v = _box_half(v)
    return _to_u8(y), _to_u8(u), _to_u8(v)


def yuv_to_rgb(y: np.ndarray, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Inverse of rgb_to_yuv; chroma upsampled by pixel replication."""
    yf = y.astype(np.float64)
    uf = _upsample2(u.astype(np.float64) - 128.0)
    vf = _upsample2(v.astype(np.float64) - 128.0)
    r = yf + 1.402 * vf
    g = yf - 0.344136 * uf - 0.714136 * vf
    b = yf + 1.772 * uf
    return np.stack([_to_u8(r), _to_u8(g), _to_u8(b)], axis=2)


def _box_half(plane: np.ndarray) -> np.ndarray:
    h, w = plane.shape
    return 0.25 * (plane[0:h:2, 0:w:2] + plane[1:h:2, 0:w:2]
                   + plane[0:h:2, 1:w:2] + plane[1:h:2, 1:w:2])


def _upsample2(plane: np.ndarray) -> np.ndarray:
    return np.repeat(np.repeat(plane, 2, axis=0), 2, axis=1)


def _to_u8(plane: np.ndarray) -> np.ndarray:
    return np.clip(np.rint(plane), 0, 255).astype(np.uint8)
