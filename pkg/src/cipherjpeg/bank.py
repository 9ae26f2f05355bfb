"""The 128-matrix orthogonal transform set and keyed selection.

Matrix k applies the 7-bit expansion of k as signs on the first seven
DCT basis rows (MSB -> row 0), leaving row 7 fixed.  Index 0 is the
plain DCT.  Sign flips keep every coefficient magnitude equal to the
DCT's, so compression efficiency is untouched, while the DC row taking
part in the flips makes cipher DC statistics diverge from the plain
image's.
"""

import numpy as np

from .dct import DCT
from .keys import KeyStream

BANK_SIZE = 128
SELECTION_SIZE = 9
SELECTION_BITS = 63  # nine 7-bit indices


def build_bank() -> np.ndarray:
    signs = np.ones((BANK_SIZE, 8))
    for k in range(BANK_SIZE):
        for row in range(7):
            if (k >> (6 - row)) & 1:
                signs[k, row] = -1.0
    bank = signs[:, :, None] * DCT[None, :, :]
    bank.setflags(write=False)
    return bank


_BANK = build_bank()


def get_bank() -> np.ndarray:
    return _BANK


def select_nine(ks: KeyStream) -> list:
    """Consume exactly 63 bits: nine 7-bit bank indices, repeats allowed."""
    return [ks.next_bits(7) for _ in range(SELECTION_SIZE)]


def pick_pair(ks: KeyStream, selection: list):
    """Two uniform draws over the selection: row transform, then column."""
    r = ks.next_uniform(SELECTION_SIZE)
    c = ks.next_uniform(SELECTION_SIZE)
    return selection[r], selection[c]
