"""Security and compression evaluation.

Four symbol histograms measure statistical leakage between a plain
stream and its cipher stream:

  DCC  quantized DC values after DPCM decoding
  DCH  DC size-category Huffman symbols as coded
  ACC  quantized AC values (zero gets its own bin)
  ACH  AC run/size Huffman symbols as coded (EOB and ZRL included)

All four aggregate the three color components and normalize to relative
frequencies; leakage is the Euclidean distance over the union of bins.
PSNR/BPP points reproduce the rate-distortion comparison, and the key
space is evaluated with exact integer arithmetic.
"""

import math
from dataclasses import dataclass
from decimal import Decimal, getcontext

import numpy as np

from .errors import InvalidInputError
from .jfif import decode_jfif

HISTOGRAM_KINDS = ("DCC", "DCH", "ACC", "ACH")


@dataclass
class SymbolHistogram:
    kind: str
    bins: dict  # symbol -> relative frequency


@dataclass
class RdPoint:
    qf: int
    bpp: float
    psnr: float


@dataclass
class KeySpaceReport:
    n_y: int
    n_u: int
    n_v: int
    exact_value: int
    log2_bits: float


def _normalize(counts: dict, kind: str) -> SymbolHistogram:
    total = sum(counts.values())
    if total == 0:
        raise InvalidInputError("empty symbol stream")
    return SymbolHistogram(kind, {k: v / total for k, v in counts.items()})


def extract_histogram(stream: bytes, kind: str) -> SymbolHistogram:
    return extract_histograms(stream)[kind]


def extract_histograms(stream: bytes) -> dict:
    """All four histograms from one decode pass."""
    dec = decode_jfif(stream)
    counts = {kind: {} for kind in HISTOGRAM_KINDS}

    for comp in dec.components:
        flat = comp.reshape(-1, 64)
        dc = flat[:, 0]
        vals, n = np.unique(dc, return_counts=True)
        for value, c in zip(vals.tolist(), n.tolist()):
            counts["DCC"][value] = counts["DCC"].get(value, 0) + c
        ac = flat[:, 1:]
        vals, n = np.unique(ac, return_counts=True)
        for value, c in zip(vals.tolist(), n.tolist()):
            counts["ACC"][value] = counts["ACC"].get(value, 0) + c
    for syms in dec.dc_symbols:
        for s in syms:
            counts["DCH"][s] = counts["DCH"].get(s, 0) + 1
    for syms in dec.ac_symbols:
        for s in syms:
            counts["ACH"][s] = counts["ACH"].get(s, 0) + 1

    return {kind: _normalize(c, kind) for kind, c in counts.items()}


def hist_distance(a: SymbolHistogram, b: SymbolHistogram) -> float:
    if a.kind != b.kind:
        raise InvalidInputError(f"histogram kinds differ: {a.kind} vs {b.kind}")
    keys = sorted(set(a.bins) | set(b.bins))  # fixed order: exactly symmetric
    return math.sqrt(sum((a.bins.get(k, 0.0) - b.bins.get(k, 0.0)) ** 2
                         for k in keys))


def leakage_distances(plain_stream: bytes, cipher_stream: bytes) -> dict:
    """{kind: distance} between the two streams' histograms."""
    ha = extract_histograms(plain_stream)
    hb = extract_histograms(cipher_stream)
    return {kind: hist_distance(ha[kind], hb[kind]) for kind in HISTOGRAM_KINDS}


def leakage_csv(results: dict) -> str:
    """Long-format CSV (image_id,kind,distance) for corpus leakage runs.

    `results` maps image id -> {kind: distance}.
    """
    lines = ["image_id,kind,distance"]
    for image_id in sorted(results):
        for kind in HISTOGRAM_KINDS:
            lines.append(f"{image_id},{kind},{results[image_id][kind]:.6f}")
    return "\n".join(lines) + "\n"


def psnr(a: np.ndarray, b: np.ndarray) -> float:
    if a.shape != b.shape:
        raise InvalidInputError("images must have identical shape")
    mse = np.mean((a.astype(np.float64) - b.astype(np.float64)) ** 2)
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(255.0 ** 2 / mse)


def bpp(stream: bytes, width: int, height: int) -> float:
    if width < 1 or height < 1:
        raise InvalidInputError("dimensions must be positive")
    return 8.0 * len(stream) / (width * height)


def rd_curve(images, qfs, key=None, rotation_codes=None) -> list:
    """Average BPP/PSNR per quality factor.

    Plain path without a key; encrypt-then-decrypt path with one.
    """
    from .jfif import CodecConfig
    from .pipeline import (FULL_ROTATIONS, decode_image, encode_plain,
                           encrypt_image, decrypt_image)

    images = list(images)
    if not images:
        raise InvalidInputError("empty image corpus")
    if rotation_codes is None:
        rotation_codes = FULL_ROTATIONS
    points = []
    for qf in qfs:
        cfg = CodecConfig(qf=qf)
        bpps, psnrs = [], []
        for img in images:
            h, w = img.shape[:2]
            if key is None:
                stream = encode_plain(img, cfg)
                recon = decode_image(stream)
            else:
                stream = encrypt_image(img, key, cfg, rotation_codes)
                recon = decrypt_image(stream, key, rotation_codes)
            bpps.append(bpp(stream, w, h))
            psnrs.append(psnr(img, recon))
        points.append(RdPoint(qf=qf, bpp=float(np.mean(bpps)),
                              psnr=float(np.mean(psnrs))))
    return points


def rd_curve_csv(points) -> str:
    lines = ["qf,bpp,psnr"]
    for p in points:
        p_str = "inf" if math.isinf(p.psnr) else f"{p.psnr:.6f}"
        lines.append(f"{p.qf},{p.bpp:.6f},{p_str}")
    return "\n".join(lines) + "\n"


def keyspace_term(n: int) -> int:
    """Configurations for one component of n blocks: 4^n * C(128,9)^n * n!."""
    if n < 1:
        raise InvalidInputError("block count must be >= 1")
    return (4 ** n) * (math.comb(128, 9) ** n) * math.factorial(n)


def keyspace(width: int, height: int) -> KeySpaceReport:
    """Exact size of the cipher configuration space for one image.

    rotations x transform selections x per-component permutations:
    4^n * C(128,9)^n * n_Y! * n_U! * n_V!, with n summed over components
    and block counts taken from the padded 4:2:0 geometry.
    """
    if width < 1 or height < 1:
        raise InvalidInputError("dimensions must be positive")
    pw = width + ((-width) % 16)
    ph = height + ((-height) % 16)
    n_y = (pw // 8) * (ph // 8)
    n_u = n_v = (pw // 16) * (ph // 16)
    n = n_y + n_u + n_v
    exact = (4 ** n) * (math.comb(128, 9) ** n) \
        * math.factorial(n_y) * math.factorial(n_u) * math.factorial(n_v)
    return KeySpaceReport(n_y=n_y, n_u=n_u, n_v=n_v,
                          exact_value=exact, log2_bits=_log2_exact(exact))


def _log2_exact(n: int) -> float:
    getcontext().prec = 50
    return float(Decimal(n).ln() / Decimal(2).ln())


def _int_to_decimal_str(n: int) -> str:
    import sys
    try:
        return str(n)
    except ValueError:  # beyond the int->str conversion guard
        old = sys.get_int_max_str_digits()
        sys.set_int_max_str_digits(0)
        try:
            return str(n)
        finally:
            sys.set_int_max_str_digits(old)


def keyspace_text(report: KeySpaceReport) -> str:
    return (
        f"blocks: Y={report.n_y} U={report.n_u} V={report.n_v}\n"
        f"log2(key space) = {report.log2_bits:.6f} bits\n"
        f"exact value:\n{_int_to_decimal_str(report.exact_value)}\n"
    )
