"""8x8 blocking, level shift and quantization."""

import numpy as np

from .errors import InvalidInputError

# Baseline Huffman categories cap DC differences at 11 bits and AC values
# at 10 bits; levels themselves stay well inside int16.
LEVEL_MIN = -32768
LEVEL_MAX = 32767


def split_blocks(plane: np.ndarray) -> np.ndarray:
    """Plane (h,w) -> blocks (n,8,8) float64 in raster order, shifted by -128."""
    h, w = plane.shape
    if h % 8 or w % 8:
        raise InvalidInputError("plane dimensions must be multiples of 8")
    blocks = (plane.astype(np.float64) - 128.0).reshape(h // 8, 8, w // 8, 8)
    return blocks.transpose(0, 2, 1, 3).reshape(-1, 8, 8)


def merge_blocks(blocks: np.ndarray, width: int, height: int) -> np.ndarray:
    """Exact inverse of split_blocks; rounds and clips back to uint8."""
    bh, bw = height // 8, width // 8
    if blocks.shape[0] != bh * bw:
        raise InvalidInputError("block count does not match plane size")
    plane = blocks.reshape(bh, bw, 8, 8).transpose(0, 2, 1, 3).reshape(height, width)
    return np.clip(np.rint(plane + 128.0), 0, 255).astype(np.uint8)


def quantize(coefs: np.ndarray, qtable: np.ndarray) -> np.ndarray:
    """Round half away from zero, so negated coefficients negate exactly."""
    x = coefs / qtable
    levels = np.sign(x) * np.floor(np.abs(x) + 0.5)
    return np.clip(levels, LEVEL_MIN, LEVEL_MAX).astype(np.int32)


def dequantize(levels: np.ndarray, qtable: np.ndarray) -> np.ndarray:
    return levels.astype(np.float64) * qtable
