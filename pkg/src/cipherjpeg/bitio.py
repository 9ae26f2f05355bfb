"""Bit-level I/O for JPEG entropy-coded segments (0xFF byte stuffing)."""

from .errors import JfifParseError


class BitWriter:
    def __init__(self):
        self._out = bytearray()
        self._acc = 0
        self._nbits = 0

    def write(self, value: int, nbits: int):
        if nbits == 0:
            return
        self._acc = (self._acc << nbits) | (value & ((1 << nbits) - 1))
        self._nbits += nbits
        while self._nbits >= 8:
            self._nbits -= 8
            byte = (self._acc >> self._nbits) & 0xFF
            self._out.append(byte)
            if byte == 0xFF:
                self._out.append(0x00)
        self._acc &= (1 << self._nbits) - 1

    def flush(self):
        """Pad the final partial byte with 1 bits."""
        if self._nbits:
            pad = 8 - self._nbits
            self.write((1 << pad) - 1, pad)

    def getvalue(self) -> bytes:
        return bytes(self._out)


class BitReader:
    """Reads entropy-coded data in place, unstuffing 0xFF 0x00 pairs.

    Stops at any real marker (0xFF followed by nonzero); reading past it
    raises.  `pos` is the absolute offset of the next unread byte.
    """

    def __init__(self, data: bytes, start: int):
        self._data = data
        self.pos = start
        self._acc = 0
        self._nbits = 0

    def _fill(self):
        data = self._data
        if self.pos >= len(data):
            raise JfifParseError("entropy data truncated", offset=self.pos)
        byte = data[self.pos]
        if byte == 0xFF:
            if self.pos + 1 >= len(data):
                raise JfifParseError("entropy data truncated", offset=self.pos)
            nxt = data[self.pos + 1]
            if nxt == 0x00:
                self.pos += 2
            else:
                raise JfifParseError(
                    f"marker 0xFF{nxt:02X} inside entropy data", offset=self.pos
                )
        else:
            self.pos += 1
        self._acc = (self._acc << 8) | byte
        self._nbits += 8

    def read_bit(self) -> int:
        if self._nbits == 0:
            self._fill()
        self._nbits -= 1
        bit = (self._acc >> self._nbits) & 1
        self._acc &= (1 << self._nbits) - 1
        return bit

    def read_bits(self, n: int) -> int:
        while self._nbits < n:
            self._fill()
        self._nbits -= n
        value = self._acc >> self._nbits
        self._acc &= (1 << self._nbits) - 1
        return value

    def read_symbol(self, table) -> int:
        code = 0
        decodes = table.decodes
        for length in range(1, 17):
            code = (code << 1) | self.read_bit()
            sym = decodes.get((length, code))
            if sym is not None:
                return sym
        raise JfifParseError("invalid Huffman code", offset=self.pos)

    def align(self):
        """Discard bits up to the next byte boundary (end of scan)."""
        self._acc = 0
        self._nbits = 0
