"""Key schedule: per-component keys and a deterministic keyed bit source.

A 256-bit master key is split into one key per color component with
SHA-256(master || tag).  Each component key then drives a counter-mode
SHA-256 stream: block i is SHA-256(key || i_be64), consumed
most-significant-bit first.  The same key and the same sequence of calls
always reproduce the same bits, on any platform.
"""

import hashlib
import hmac

COMPONENT_TAGS = ("Y", "U", "V")


class MasterKey:
    """A 256-bit secret, entered as 64 hex characters."""

    __slots__ = ("_bytes",)

    def __init__(self, key_bytes: bytes):
        if not isinstance(key_bytes, (bytes, bytearray)) or len(key_bytes) != 32:
            raise ValueError("master key must be exactly 32 bytes")
        self._bytes = bytes(key_bytes)

    @classmethod
    def from_hex(cls, text: str) -> "MasterKey":
        text = text.strip().lower()
        if len(text) != 64:
            raise ValueError("master key must be 64 hex characters")
        try:
            return cls(bytes.fromhex(text))
        except ValueError:
            raise ValueError("master key must be 64 hex characters") from None

    @property
    def key_bytes(self) -> bytes:
        return self._bytes

    def __eq__(self, other):
        if not isinstance(other, MasterKey):
            return NotImplemented
        return hmac.compare_digest(self._bytes, other._bytes)

    def __hash__(self):
        return hash(self._bytes)

    def __repr__(self):
        return "MasterKey(<32 bytes>)"


def derive_component_keys(mk: MasterKey) -> dict:
    """Return {"Y": bytes32, "U": bytes32, "V": bytes32}."""
    return {
        tag: hashlib.sha256(mk.key_bytes + tag.encode("ascii")).digest()
        for tag in COMPONENT_TAGS
    }


class KeyStream:
    """Deterministic bit source: SHA-256(key || counter_be64), MSB first.

    Single consumer; create one stream per component.  `bits_consumed`
    counts every bit handed out, for key-budget bookkeeping.
    """

    def __init__(self, component_key: bytes):
        if len(component_key) != 32:
            raise ValueError("component key must be 32 bytes")
        self._key = component_key
        self._counter = 0
        self._acc = 0
        self._nbits = 0
        self.bits_consumed = 0

    def _refill(self):
        block = hashlib.sha256(
            self._key + self._counter.to_bytes(8, "big")
        ).digest()
        self._counter += 1
        self._acc = (self._acc << 256) | int.from_bytes(block, "big")
        self._nbits += 256

    def next_bits(self, n: int) -> int:
        if not 1 <= n <= 64:
            raise ValueError("bit count must be in [1, 64]")
        while self._nbits < n:
            self._refill()
        self._nbits -= n
        value = self._acc >> self._nbits
        self._acc &= (1 << self._nbits) - 1
        self.bits_consumed += n
        return value

    def next_uniform(self, m: int) -> int:
        """Unbiased draw from [0, m) by rejection sampling ceil(log2 m)-bit words."""
        if m < 1:
            raise ValueError("modulus must be >= 1")
        if m == 1:
            return 0
        k = (m - 1).bit_length()
        while True:
            v = self.next_bits(k)
            if v < m:
                return v


def derive_permutation(ks: KeyStream, n: int) -> list:
    """Keyed Fisher-Yates shuffle of [0, n).

    Canonical order: for i = n-1 down to 1, draw j = next_uniform(i+1)
    and swap positions i and j.
    """
    if n < 1:
        raise ValueError("permutation length must be >= 1")
    perm = list(range(n))
    for i in range(n - 1, 0, -1):
        j = ks.next_uniform(i + 1)
        perm[i], perm[j] = perm[j], perm[i]
    return perm


def invert_permutation(perm: list) -> list:
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return inv
