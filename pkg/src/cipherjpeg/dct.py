"""8x8 orthogonal block transforms.

The DCT-II matrix is constructed so that C[u, 7-x] == (-1)**u * C[u, x]
holds bit-exactly, and all 2-D transforms reduce over their contraction
axis with a fixed pairwise tree that is invariant under index reversal
((p0+p7)+(p1+p6)) + ((p2+p5)+(p3+p4)).  Together these make the
coefficients of a 180-degree-rotated block exactly the sign-flipped
coefficients of the original, so sign-symmetric quantization reproduces
the plain-JPEG levels bit for bit.
"""

import numpy as np

from .errors import InvalidTransformError

ORTHO_TOL = 1e-10


def dct_matrix() -> np.ndarray:
    c = np.empty((8, 8))
    c[0, :] = 0.5 / np.sqrt(2.0)
    for u in range(1, 8):
        for x in range(4):
            v = 0.5 * np.cos((2 * x + 1) * u * np.pi / 16.0)
            c[u, x] = v
            c[u, 7 - x] = v if u % 2 == 0 else -v
    return c


DCT = dct_matrix()
DCT.setflags(write=False)


def _pairsum8(p: np.ndarray, axis: int) -> np.ndarray:
    p = np.moveaxis(p, axis, 0)
    q0 = p[0] + p[7]
    q1 = p[1] + p[6]
    q2 = p[2] + p[5]
    q3 = p[3] + p[4]
    return (q0 + q1) + (q2 + q3)


def check_orthogonal(t: np.ndarray, tol: float = ORTHO_TOL) -> None:
    if t.shape != (8, 8):
        raise InvalidTransformError("transform must be 8x8")
    dev = np.max(np.abs(t @ t.T - np.eye(8)))
    if dev > tol:
        raise InvalidTransformError(
            f"matrix is not orthogonal: max |T Tt - I| = {dev:.3e}"
        )


def transform2d(block: np.ndarray, t_row: np.ndarray, t_col: np.ndarray,
                validate: bool = True) -> np.ndarray:
    """t_row @ block @ t_col.T with the reversal-symmetric reduction."""
    if validate:
        check_orthogonal(t_row)
        check_orthogonal(t_col)
    m = _pairsum8(t_row[:, :, None] * block[None, :, :], axis=1)
    return _pairsum8(m[:, None, :] * t_col[None, :, :], axis=2)


def inverse_transform2d(coef: np.ndarray, t_row: np.ndarray, t_col: np.ndarray,
                        validate: bool = True) -> np.ndarray:
    """Inverse of transform2d for orthogonal pairs: t_row.T @ coef @ t_col."""
    if validate:
        check_orthogonal(t_row)
        check_orthogonal(t_col)
    m = _pairsum8(t_row[:, :, None] * coef[:, None, :], axis=0)
    return _pairsum8(m[:, :, None] * t_col[None, :, :], axis=1)


def transform2d_batch(blocks: np.ndarray, t_rows: np.ndarray,
                      t_cols: np.ndarray) -> np.ndarray:
    """Per-block transform pairs; blocks (n,8,8), t_rows/t_cols (n,8,8)."""
    m = _pairsum8(t_rows[:, :, :, None] * blocks[:, None, :, :], axis=2)
    return _pairsum8(m[:, :, None, :] * t_cols[:, None, :, :], axis=3)


def inverse_transform2d_batch(coefs: np.ndarray, t_rows: np.ndarray,
                              t_cols: np.ndarray) -> np.ndarray:
    m = _pairsum8(t_rows[:, :, :, None] * coefs[:, :, None, :], axis=1)
    return _pairsum8(m[:, :, :, None] * t_cols[:, None, :, :], axis=2)
