import numpy as np
import pytest

from cipherjpeg import DCT, InvalidTransformError, inverse_transform2d, transform2d
from cipherjpeg.dct import dct_matrix


def test_dct_row0_closed_form():
    assert np.allclose(DCT[0], 1.0 / (2.0 * np.sqrt(2.0)), rtol=0, atol=0)


def test_dct_orthogonality():
    assert np.max(np.abs(DCT @ DCT.T - np.eye(8))) <= 1e-12


def test_dct_reversal_symmetry_is_bit_exact():
    c = dct_matrix()
    for u in range(8):
        sign = 1.0 if u % 2 == 0 else -1.0
        assert np.array_equal(c[u, ::-1], sign * c[u])


def test_constant_block_concentrates_in_dc():
    coef = transform2d(np.full((8, 8), 64.0), DCT, DCT)
    assert abs(coef[0, 0] - 512.0) <= 1e-9
    ac = coef.copy()
    ac[0, 0] = 0.0
    assert np.max(np.abs(ac)) <= 1e-9


def test_identity_transform_is_identity():
    rng = np.random.default_rng(0)
    b = rng.normal(size=(8, 8))
    assert np.array_equal(transform2d(b, np.eye(8), np.eye(8)), b)


def test_frobenius_norm_preserved():
    rng = np.random.default_rng(1)
    for _ in range(50):
        b = rng.normal(scale=100, size=(8, 8))
        coef = transform2d(b, DCT, DCT)
        assert abs(np.linalg.norm(coef) - np.linalg.norm(b)) <= 1e-9


def test_inverse_round_trip():
    rng = np.random.default_rng(2)
    for _ in range(50):
        b = rng.uniform(-128, 127, size=(8, 8))
        coef = transform2d(b, DCT, DCT)
        back = inverse_transform2d(coef, DCT, DCT)
        assert np.max(np.abs(back - b)) <= 1e-9


def test_non_orthogonal_matrix_rejected():
    bad = DCT.copy()
    bad[3, 3] += 1e-6
    b = np.zeros((8, 8))
    with pytest.raises(InvalidTransformError):
        transform2d(b, bad, DCT)
    with pytest.raises(InvalidTransformError):
        inverse_transform2d(b, DCT, bad)


def test_rot180_coefficients_are_exact_sign_flips():
    # the pairwise reduction makes this equality exact, which in turn
    # makes restricted-key decryption pixel-identical to plain JPEG
    rng = np.random.default_rng(3)
    signs = (-1.0) ** (np.arange(8)[:, None] + np.arange(8)[None, :])
    for _ in range(200):
        b = rng.integers(-128, 128, size=(8, 8)).astype(np.float64)
        plain = transform2d(b, DCT, DCT, validate=False)
        rotated = transform2d(b[::-1, ::-1], DCT, DCT, validate=False)
        assert np.array_equal(rotated, signs * plain)
