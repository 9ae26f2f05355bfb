"""End-to-end encryption and decryption during JPEG compression.

Per component, the keyed stages run in a fixed canonical order that
decryption replays from the master key alone:

  1. select_nine           (63 bits)
  2. per block, raster order:
       rotation code       (2 bits)
       row/column pick     (two uniform-in-9 draws)
  3. block permutation     (Fisher-Yates over the component's blocks)

Any reordering of these draws breaks decryption.  Rotation happens on
the spatial block before the transform; permutation reorders the
quantized blocks just before DPCM and entropy coding.
"""

from dataclasses import dataclass

import numpy as np

from . import bank as bank_mod
from .blocks import dequantize, merge_blocks, quantize, split_blocks
from .color import pad_to_multiple_of_16, rgb_to_yuv, yuv_to_rgb
from .dct import DCT, inverse_transform2d_batch, transform2d_batch
from .errors import InvalidInputError, UnsupportedFeatureError
from .jfif import CodecConfig, DecodedJpeg, decode_jfif, entropy_encode
from .keys import (KeyStream, MasterKey, derive_component_keys,
                   derive_permutation, invert_permutation)
from .tables import quant_tables

FULL_ROTATIONS = (0, 1, 2, 3)


@dataclass
class ComponentCipherState:
    selection: list       # nine bank indices
    rotations: np.ndarray  # per-block rotation code, raster order
    pair_rows: np.ndarray  # per-block bank index for the row transform
    pair_cols: np.ndarray
    permutation: list     # permuted[i] = original[permutation[i]]
    bits_consumed: int


def derive_cipher_state(mk: MasterKey, padded_width: int, padded_height: int,
                        rotation_codes=FULL_ROTATIONS) -> dict:
    """Replay the canonical draw order for each component.

    `rotation_codes` restricts the angle set (diagnostic use); the two
    rotation bits are always drawn, then mapped by index modulo the set
    size, so restricting angles does not shift later draws.
    """
    if padded_width % 16 or padded_height % 16:
        raise InvalidInputError("padded dimensions must be multiples of 16")
    keys = derive_component_keys(mk)
    counts = {
        "Y": (padded_width // 8) * (padded_height // 8),
        "U": (padded_width // 16) * (padded_height // 16),
        "V": (padded_width // 16) * (padded_height // 16),
    }
    states = {}
    for tag in ("Y", "U", "V"):
        ks = KeyStream(keys[tag])
        n = counts[tag]
        selection = bank_mod.select_nine(ks)
        rotations = np.empty(n, dtype=np.int64)
        rows = np.empty(n, dtype=np.int64)
        cols = np.empty(n, dtype=np.int64)
        for i in range(n):
            rotations[i] = rotation_codes[ks.next_bits(2) % len(rotation_codes)]
            r, c = bank_mod.pick_pair(ks, selection)
            rows[i] = r
            cols[i] = c
        permutation = derive_permutation(ks, n)
        states[tag] = ComponentCipherState(
            selection=selection, rotations=rotations,
            pair_rows=rows, pair_cols=cols, permutation=permutation,
            bits_consumed=ks.bits_consumed,
        )
    return states


def rotate_block(block: np.ndarray, code: int) -> np.ndarray:
    """Counter-clockwise spatial rotation by 90 degrees x code."""
    if code not in (0, 1, 2, 3):
        raise InvalidInputError("rotation code must be in {0,1,2,3}")
    return np.rot90(block, k=code)


def _rotate_batch(blocks: np.ndarray, codes: np.ndarray, inverse=False) -> np.ndarray:
    out = blocks.copy()
    for code in (1, 2, 3):
        sel = codes == code
        if np.any(sel):
            k = (4 - code) % 4 if inverse else code
            out[sel] = np.rot90(blocks[sel], k=k, axes=(1, 2))
    return out


def _cipher_quantize_plane(plane, state, qtable):
    blocks = split_blocks(plane)
    blocks = _rotate_batch(blocks, state.rotations)
    bank = bank_mod.get_bank()
    coefs = transform2d_batch(blocks, bank[state.pair_rows], bank[state.pair_cols])
    levels = quantize(coefs, qtable)
    return levels[np.asarray(state.permutation)]


def _plain_quantize_plane(plane, qtable):
    blocks = split_blocks(plane)
    n = len(blocks)
    dcts = np.broadcast_to(DCT, (n, 8, 8))
    coefs = transform2d_batch(blocks, dcts, dcts)
    return quantize(coefs, qtable)


def _cipher_reconstruct_plane(levels, state, qtable, width, height):
    inv = invert_permutation(state.permutation)
    levels = levels[np.asarray(inv)]
    coefs = dequantize(levels, qtable)
    bank = bank_mod.get_bank()
    blocks = inverse_transform2d_batch(coefs, bank[state.pair_rows], bank[state.pair_cols])
    blocks = _rotate_batch(blocks, state.rotations, inverse=True)
    return merge_blocks(blocks, width, height)


def _plain_reconstruct_plane(levels, qtable, width, height):
    coefs = dequantize(levels, qtable)
    n = len(coefs)
    dcts = np.broadcast_to(DCT, (n, 8, 8))
    blocks = inverse_transform2d_batch(coefs, dcts, dcts)
    return merge_blocks(blocks, width, height)


def _check_size(rgb):
    if rgb.ndim != 3 or rgb.shape[2] != 3:
        raise InvalidInputError("expected an RGB array of shape (h, w, 3)")
    h, w = rgb.shape[:2]
    if h == 0 or w == 0:
        raise InvalidInputError("image has zero size")
    if h > 65535 or w > 65535:
        raise UnsupportedFeatureError("image dimensions exceed baseline limits")


def encrypt_image(rgb: np.ndarray, mk: MasterKey, cfg: CodecConfig,
                  rotation_codes=FULL_ROTATIONS, with_stats=False):
    """Encrypt an RGB image into a format-compliant JFIF stream."""
    _check_size(rgb)
    height, width = rgb.shape[:2]
    padded = pad_to_multiple_of_16(rgb)
    ph, pw = padded.shape[:2]
    y, u, v = rgb_to_yuv(padded)
    states = derive_cipher_state(mk, pw, ph, rotation_codes)
    qy, qc = quant_tables(cfg.qf)
    comps = [
        _cipher_quantize_plane(y, states["Y"], qy),
        _cipher_quantize_plane(u, states["U"], qc),
        _cipher_quantize_plane(v, states["V"], qc),
    ]
    stream = entropy_encode(comps, width, height, cfg)
    if with_stats:
        stats = {
            "width": width, "height": height, "qf": cfg.qf,
            "key_bits": {tag: states[tag].bits_consumed for tag in states},
        }
        return stream, stats
    return stream


def decrypt_image(stream: bytes, mk: MasterKey,
                  rotation_codes=FULL_ROTATIONS) -> np.ndarray:
    """Invert every keyed stage and return the decoded RGB image.

    A wrong key raises no error: the stream carries nothing to verify a
    key against, so decryption simply yields scrambled pixels.
    """
    dec = decode_jfif(stream)
    states = derive_cipher_state(mk, dec.padded_width, dec.padded_height,
                                 rotation_codes)
    y = _cipher_reconstruct_plane(dec.components[0], states["Y"], dec.quant_luma,
                                  dec.padded_width, dec.padded_height)
    u = _cipher_reconstruct_plane(dec.components[1], states["U"], dec.quant_chroma,
                                  dec.padded_width // 2, dec.padded_height // 2)
    v = _cipher_reconstruct_plane(dec.components[2], states["V"], dec.quant_chroma,
                                  dec.padded_width // 2, dec.padded_height // 2)
    rgb = yuv_to_rgb(y, u, v)
    return rgb[:dec.height, :dec.width]


def encode_plain(rgb: np.ndarray, cfg: CodecConfig) -> bytes:
    """Standard JPEG path: identity cipher state."""
    _check_size(rgb)
    height, width = rgb.shape[:2]
    padded = pad_to_multiple_of_16(rgb)
    y, u, v = rgb_to_yuv(padded)
    qy, qc = quant_tables(cfg.qf)
    comps = [
        _plain_quantize_plane(y, qy),
        _plain_quantize_plane(u, qc),
        _plain_quantize_plane(v, qc),
    ]
    return entropy_encode(comps, width, height, cfg)


def decode_image(stream: bytes) -> np.ndarray:
    """Plain baseline decode (no key) of any stream this codec wrote."""
    dec = decode_jfif(stream)
    y = _plain_reconstruct_plane(dec.components[0], dec.quant_luma,
                                 dec.padded_width, dec.padded_height)
    u = _plain_reconstruct_plane(dec.components[1], dec.quant_chroma,
                                 dec.padded_width // 2, dec.padded_height // 2)
    v = _plain_reconstruct_plane(dec.components[2], dec.quant_chroma,
                                 dec.padded_width // 2, dec.padded_height // 2)
    rgb = yuv_to_rgb(y, u, v)
    return rgb[:dec.height, :dec.width]
