"""Baseline JFIF writer and parser.

Fixed layout: SOI, APP0, DQT (luma), DQT (chroma), SOF0, DHT x4, SOS,
entropy data, EOI.  Single interleaved 4:2:0 scan, standard Annex-K
Huffman tables, 8-bit samples.  The parser recovers the quantized levels
exactly as encoded and also records the Huffman symbols it read, which
the leakage analysis consumes.
"""

import struct
from dataclasses import dataclass, field

import numpy as np

from . import tables as T
from .bitio import BitReader, BitWriter
from .errors import EncodeRangeError, JfifParseError, UnsupportedFeatureError

SOI, EOI = 0xFFD8, 0xFFD9
APP0, DQT, SOF0, DHT, SOS = 0xFFE0, 0xFFDB, 0xFFC0, 0xFFC4, 0xFFDA

MAX_DIM = 65535
MAX_DC_CAT = 11
MAX_AC_CAT = 10


@dataclass
class CodecConfig:
    qf: int = 50

    def __post_init__(self):
        if not 1 <= self.qf <= 100:
            raise ValueError("quality factor must be in [1, 100]")


@dataclass
class DecodedJpeg:
    width: int
    height: int
    padded_width: int
    padded_height: int
    quant_luma: np.ndarray
    quant_chroma: np.ndarray
    components: list          # [y, u, v] int32 arrays (n, 8, 8), raster order
    dc_symbols: list          # per component: list of DC size categories
    ac_symbols: list          # per component: list of AC run/size byte symbols
    mcu_count: int = 0
    stream_length: int = 0


def _padded(n: int) -> int:
    return n + ((-n) % 16)


def _category(v: int) -> int:
    return int(v).bit_length() if v >= 0 else int(-v).bit_length()


def _amplitude(v: int, cat: int) -> int:
    return v if v >= 0 else v + (1 << cat) - 1


def _extend(bits: int, cat: int) -> int:
    if cat == 0:
        return 0
    if bits >= (1 << (cat - 1)):
        return bits
    return bits - (1 << cat) + 1


def _encode_block(zz, pred, dc_table, ac_table, writer):
    dc = int(zz[0])
    diff = dc - pred
    cat = _category(diff)
    if cat > MAX_DC_CAT:
        raise EncodeRangeError(f"DC difference {diff} exceeds baseline range")
    code, length = dc_table.encode(cat)
    writer.write(code, length)
    if cat:
        writer.write(_amplitude(diff, cat), cat)

    run = 0
    for k in range(1, 64):
        v = int(zz[k])
        if v == 0:
            run += 1
            continue
        while run > 15:
            code, length = ac_table.encode(0xF0)
            writer.write(code, length)
            run -= 16
        cat = _category(v)
        if cat > MAX_AC_CAT:
            raise EncodeRangeError(f"AC coefficient {v} exceeds baseline range")
        code, length = ac_table.encode((run << 4) | cat)
        writer.write(code, length)
        writer.write(_amplitude(v, cat), cat)
        run = 0
    if run:
        code, length = ac_table.encode(0x00)
        writer.write(code, length)
    return dc


def _segment(marker: int, payload: bytes) -> bytes:
    return struct.pack(">HH", marker, len(payload) + 2) + payload


def _app0_segment() -> bytes:
    return _segment(APP0, b"JFIF\x00" + bytes([1, 1, 0]) + struct.pack(">HHBB", 1, 1, 0, 0))


def _dqt_segment(table_id: int, qtable: np.ndarray) -> bytes:
    zz = qtable.flatten()[T.ZIGZAG]
    return _segment(DQT, bytes([table_id]) + bytes(int(v) for v in zz))


def _sof0_segment(width: int, height: int) -> bytes:
    payload = struct.pack(">BHHB", 8, height, width, 3)
    payload += bytes([1, 0x22, 0])   # Y: 2x2 sampling, quant table 0
    payload += bytes([2, 0x11, 1])   # U
    payload += bytes([3, 0x11, 1])   # V
    return _segment(SOF0, payload)


def _dht_segment(table_class: int, table_id: int, bits, values) -> bytes:
    payload = bytes([(table_class << 4) | table_id]) + bytes(bits) + bytes(values)
    return _segment(DHT, payload)


def _sos_segment() -> bytes:
    payload = bytes([3, 1, 0x00, 2, 0x11, 3, 0x11, 0, 63, 0])
    return _segment(SOS, payload)


def entropy_encode(components, width: int, height: int, cfg: CodecConfig) -> bytes:
    """Quantized component blocks (raster order) -> complete JFIF stream."""
    if not 1 <= width <= MAX_DIM or not 1 <= height <= MAX_DIM:
        raise UnsupportedFeatureError("image dimensions exceed baseline limits")
    pw, ph = _padded(width), _padded(height)
    ybw, cbw = pw // 8, pw // 16
    mcus_x, mcus_y = pw // 16, ph // 16
    y_blocks, u_blocks, v_blocks = components
    if len(y_blocks) != ybw * (ph // 8) or len(u_blocks) != cbw * (ph // 16) \
            or len(v_blocks) != len(u_blocks):
        raise ValueError("component block counts do not match image size")

    qy, qc = T.quant_tables(cfg.qf)
    zz_y = np.asarray(y_blocks).reshape(-1, 64)[:, T.ZIGZAG]
    zz_u = np.asarray(u_blocks).reshape(-1, 64)[:, T.ZIGZAG]
    zz_v = np.asarray(v_blocks).reshape(-1, 64)[:, T.ZIGZAG]

    writer = BitWriter()
    preds = [0, 0, 0]
    for my in range(mcus_y):
        for mx in range(mcus_x):
            for dy in (0, 1):
                for dx in (0, 1):
                    idx = (2 * my + dy) * ybw + (2 * mx + dx)
                    preds[0] = _encode_block(zz_y[idx], preds[0],
                                             T.DC_LUMA_TABLE, T.AC_LUMA_TABLE, writer)
            idx = my * cbw + mx
            preds[1] = _encode_block(zz_u[idx], preds[1],
                                     T.DC_CHROMA_TABLE, T.AC_CHROMA_TABLE, writer)
            preds[2] = _encode_block(zz_v[idx], preds[2],
                                     T.DC_CHROMA_TABLE, T.AC_CHROMA_TABLE, writer)
    writer.flush()

    out = bytearray()
    out += struct.pack(">H", SOI)
    out += _app0_segment()
    out += _dqt_segment(0, qy)
    out += _dqt_segment(1, qc)
    out += _sof0_segment(width, height)
    out += _dht_segment(0, 0, T.DC_LUMA_BITS, T.DC_LUMA_VALUES)
    out += _dht_segment(1, 0, T.AC_LUMA_BITS, T.AC_LUMA_VALUES)
    out += _dht_segment(0, 1, T.DC_CHROMA_BITS, T.DC_CHROMA_VALUES)
    out += _dht_segment(1, 1, T.AC_CHROMA_BITS, T.AC_CHROMA_VALUES)
    out += _sos_segment()
    out += writer.getvalue()
    out += struct.pack(">H", EOI)
    return bytes(out)


def _decode_block(reader, dc_table, ac_table, pred, dc_syms, ac_syms):
    zz = np.zeros(64, dtype=np.int32)
    cat = reader.read_symbol(dc_table)
    dc_syms.append(cat)
    diff = _extend(reader.read_bits(cat), cat) if cat else 0
    dc = pred + diff
    zz[0] = dc
    k = 1
    while k < 64:
        sym = reader.read_symbol(ac_table)
        ac_syms.append(sym)
        if sym == 0x00:
            break
        if sym == 0xF0:
            k += 16
            continue
        run, size = sym >> 4, sym & 0x0F
        k += run
        if k > 63 or size == 0:
            raise JfifParseError("AC run overflows block", offset=reader.pos)
        zz[k] = _extend(reader.read_bits(size), size)
        k += 1
    block = np.empty(64, dtype=np.int32)
    block[T.ZIGZAG] = zz
    return block.reshape(8, 8), dc


def decode_jfif(data: bytes) -> DecodedJpeg:
    """Parse a stream produced by this codec (plain or encrypted).

    Returns the quantized levels exactly as encoded, in raster order per
    component, together with the coded Huffman symbols.
    """
    if len(data) < 4 or data[0] != 0xFF or data[1] != 0xD8:
        raise JfifParseError("missing SOI marker", offset=0)
    pos = 2
    qtables = {}
    htables = {}
    sof = None

    while True:
        if pos + 4 > len(data):
            raise JfifParseError("unexpected end of stream", offset=pos)
        if data[pos] != 0xFF:
            raise JfifParseError(f"expected marker, found 0x{data[pos]:02X}", offset=pos)
        marker = (data[pos] << 8) | data[pos + 1]
        if marker == 0xFFFF or marker == 0xFF00:
            raise JfifParseError("invalid marker", offset=pos)
        seg_start = pos + 2
        length = struct.unpack(">H", data[seg_start:seg_start + 2])[0]
        if length < 2 or seg_start + length > len(data):
            raise JfifParseError("segment overruns stream", offset=pos)
        payload = data[seg_start + 2:seg_start + length]
        pos = seg_start + length

        if marker in (0xFFC2, 0xFFC1, 0xFFC3, 0xFFC5, 0xFFC6, 0xFFC7,
                      0xFFC9, 0xFFCA, 0xFFCB, 0xFFCD, 0xFFCE, 0xFFCF):
            raise UnsupportedFeatureError("only baseline sequential SOF0 is supported")
        if marker == 0xFFDD:
            raise UnsupportedFeatureError("restart intervals are not supported")

        if marker == DQT:
            off = 0
            while off < len(payload):
                pq, tq = payload[off] >> 4, payload[off] & 0x0F
                if pq != 0:
                    raise UnsupportedFeatureError("16-bit quantization tables unsupported")
                if off + 65 > len(payload):
                    raise JfifParseError("short DQT payload", offset=seg_start)
                zz = np.frombuffer(payload[off + 1:off + 65], dtype=np.uint8)
                table = np.empty(64, dtype=np.int64)
                table[T.ZIGZAG] = zz
                qtables[tq] = table.reshape(8, 8)
                off += 65
        elif marker == DHT:
            off = 0
            while off < len(payload):
                tc, th = payload[off] >> 4, payload[off] & 0x0F
                bits = list(payload[off + 1:off + 17])
                count = sum(bits)
                values = list(payload[off + 17:off + 17 + count])
                if len(values) != count:
                    raise JfifParseError("short DHT payload", offset=seg_start)
                htables[(tc, th)] = T.HuffmanTable(bits, values)
                off += 17 + count
        elif marker == SOF0:
            precision, height, width, ncomp = struct.unpack(">BHHB", payload[:6])
            if precision != 8 or ncomp != 3:
                raise UnsupportedFeatureError("only 8-bit 3-component images supported")
            comps = []
            for i in range(3):
                cid, sampling, tq = payload[6 + 3 * i:9 + 3 * i]
                comps.append((cid, sampling >> 4, sampling & 0x0F, tq))
            if comps[0][1:3] != (2, 2) or comps[1][1:3] != (1, 1) or comps[2][1:3] != (1, 1):
                raise UnsupportedFeatureError("only 4:2:0 subsampling supported")
            sof = (width, height, comps)
        elif marker == SOS:
            if sof is None:
                raise JfifParseError("SOS before SOF0", offset=pos)
            ncomp = payload[0]
            if ncomp != 3:
                raise UnsupportedFeatureError("only full interleaved scans supported")
            scan_tables = []
            for i in range(3):
                _, ids = payload[1 + 2 * i:3 + 2 * i]
                scan_tables.append((ids >> 4, ids & 0x0F))
            break
        # APPn / COM / others: skipped

    width, height, comps = sof
    if width < 1 or height < 1:
        raise JfifParseError("bad frame dimensions", offset=0)
    pw, ph = _padded(width), _padded(height)
    ybw, cbw = pw // 8, pw // 16
    mcus_x, mcus_y = pw // 16, ph // 16

    try:
        dc_y = htables[(0, scan_tables[0][0])]
        ac_y = htables[(1, scan_tables[0][1])]
        dc_c = htables[(0, scan_tables[1][0])]
        ac_c = htables[(1, scan_tables[1][1])]
        q_y = qtables[comps[0][3]]
        q_c = qtables[comps[1][3]]
    except KeyError:
        raise JfifParseError("scan references undefined table", offset=pos) from None

    y_lv = np.zeros((ybw * (ph // 8), 8, 8), dtype=np.int32)
    u_lv = np.zeros((cbw * (ph // 16), 8, 8), dtype=np.int32)
    v_lv = np.zeros_like(u_lv)
    dc_syms = [[], [], []]
    ac_syms = [[], [], []]
    preds = [0, 0, 0]

    reader = BitReader(data, pos)
    for my in range(mcus_y):
        for mx in range(mcus_x):
            for dy in (0, 1):
                for dx in (0, 1):
                    idx = (2 * my + dy) * ybw + (2 * mx + dx)
                    y_lv[idx], preds[0] = _decode_block(
                        reader, dc_y, ac_y, preds[0], dc_syms[0], ac_syms[0])
            idx = my * cbw + mx
            u_lv[idx], preds[1] = _decode_block(
                reader, dc_c, ac_c, preds[1], dc_syms[1], ac_syms[1])
            v_lv[idx], preds[2] = _decode_block(
                reader, dc_c, ac_c, preds[2], dc_syms[2], ac_syms[2])
    reader.align()

    pos = reader.pos
    while pos + 1 < len(data) and data[pos] == 0xFF and data[pos + 1] == 0xFF:
        pos += 1
    if pos + 2 > len(data) or data[pos] != 0xFF or data[pos + 1] != 0xD9:
        raise JfifParseError("missing EOI marker", offset=pos)

    return DecodedJpeg(
        width=width, height=height, padded_width=pw, padded_height=ph,
        quant_luma=q_y, quant_chroma=q_c,
        components=[y_lv, u_lv, v_lv],
        dc_symbols=dc_syms, ac_symbols=ac_syms,
        mcu_count=mcus_x * mcus_y, stream_length=len(data),
    )


def guess_quality(quant_luma: np.ndarray):
    """Quality factor whose IJG-scaled luma table matches, or None."""
    for qf in range(1, 101):
        if np.array_equal(T.scaled_quant_table(T.LUMA_QUANT, qf), quant_luma):
            return qf
    return None
