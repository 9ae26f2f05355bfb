"""cipherjpeg: format-compliant encrypted JPEG codec and analysis toolkit.

Images are encrypted during JPEG compression by rotating each 8x8 block,
replacing the DCT with keyed sign-flipped orthogonal transforms, and
permuting the quantized blocks, all driven by a SHA-256 key schedule.
The output is a standard baseline JFIF file that any JPEG decoder parses
cleanly; only the key holder recovers the image.
"""

from .analysis import (KeySpaceReport, RdPoint, SymbolHistogram, bpp,
                       extract_histogram, extract_histograms, hist_distance,
                       keyspace, leakage_csv, leakage_distances, psnr,
                       rd_curve)
from .bank import build_bank, get_bank, pick_pair, select_nine
from .blocks import dequantize, merge_blocks, quantize, split_blocks
from .color import pad_to_multiple_of_16, rgb_to_yuv, yuv_to_rgb
from .dct import DCT, dct_matrix, inverse_transform2d, transform2d
from .errors import (CipherJpegError, EncodeRangeError, InvalidInputError,
                     InvalidTransformError, JfifParseError,
                     UnsupportedFeatureError)
from .jfif import CodecConfig, DecodedJpeg, decode_jfif, entropy_encode
from .keys import (KeyStream, MasterKey, derive_component_keys,
                   derive_permutation, invert_permutation)
from .pipeline import (FULL_ROTATIONS, decode_image, decrypt_image,
                       derive_cipher_state, encode_plain, encrypt_image,
                       rotate_block)
from .raster import read_image, write_png, write_ppm
from .synth import synthetic_class_image, synthetic_image

__version__ = "0.1.0"

__all__ = [
    "CodecConfig", "DecodedJpeg", "KeySpaceReport", "KeyStream", "MasterKey",
    "RdPoint", "SymbolHistogram", "CipherJpegError", "EncodeRangeError",
    "InvalidInputError", "InvalidTransformError", "JfifParseError",
    "UnsupportedFeatureError", "DCT", "FULL_ROTATIONS", "bpp", "build_bank",
    "decode_image", "decode_jfif", "decrypt_image", "dequantize",
    "derive_cipher_state", "derive_component_keys", "derive_permutation",
    "dct_matrix", "encode_plain", "encrypt_image", "entropy_encode",
    "extract_histogram", "extract_histograms", "get_bank", "hist_distance",
    "invert_permutation", "inverse_transform2d", "keyspace",
    "leakage_csv", "leakage_distances", "merge_blocks", "pad_to_multiple_of_16", "pick_pair",
    "psnr", "quantize", "rd_curve", "read_image", "rgb_to_yuv",
    "rotate_block", "select_nine", "split_blocks", "synthetic_class_image",
    "synthetic_image", "transform2d", "write_png", "write_ppm", "yuv_to_rgb",
]
