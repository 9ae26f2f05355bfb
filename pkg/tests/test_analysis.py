import math

import numpy as np
import pytest

import mpmath

from cipherjpeg import (CodecConfig, InvalidInputError, MasterKey, bpp,
                        encode_plain, encrypt_image, extract_histogram,
                        extract_histograms, hist_distance, keyspace,
                        leakage_distances, psnr, rd_curve, synthetic_image)
from cipherjpeg.analysis import (HISTOGRAM_KINDS, SymbolHistogram,
                                 keyspace_term, keyspace_text, rd_curve_csv)

QF = CodecConfig(qf=50)


def test_histograms_normalize():
    img = synthetic_image(96, 96, seed=60)
    hists = extract_histograms(encode_plain(img, QF))
    for kind in HISTOGRAM_KINDS:
        total = sum(hists[kind].bins.values())
        assert abs(total - 1.0) <= 1e-9
        assert all(f >= 0 for f in hists[kind].bins.values())


def test_gray_image_dch_concentrates_on_category_zero():
    # constant 200 gray: Y DC level 36 at QF50 -> one category-6 symbol,
    # every other block difference is zero
    img = np.full((128, 192, 3), 200, dtype=np.uint8)
    h = extract_histogram(encode_plain(img, QF), "DCH")
    total = 384 + 96 + 96
    assert h.bins == {0: (total - 1) / total, 6: 1 / total}


def test_distance_identical_is_zero():
    img = synthetic_image(64, 64, seed=61)
    stream = encode_plain(img, QF)
    for kind in HISTOGRAM_KINDS:
        h = extract_histogram(stream, kind)
        assert hist_distance(h, h) == 0.0


def test_distance_disjoint_single_bins():
    a = SymbolHistogram("DCC", {5: 1.0})
    b = SymbolHistogram("DCC", {-3: 1.0})
    assert abs(hist_distance(a, b) - math.sqrt(2)) <= 1e-12


def test_distance_kind_mismatch():
    with pytest.raises(InvalidInputError):
        hist_distance(SymbolHistogram("DCC", {0: 1.0}),
                      SymbolHistogram("ACC", {0: 1.0}))


def test_distance_symmetry_and_nonnegativity():
    rng = np.random.default_rng(62)
    for _ in range(20):
        a = SymbolHistogram("ACH", {int(k): float(v) for k, v in
                                    zip(rng.integers(0, 50, 8), rng.dirichlet(np.ones(8)))})
        b = SymbolHistogram("ACH", {int(k): float(v) for k, v in
                                    zip(rng.integers(0, 50, 8), rng.dirichlet(np.ones(8)))})
        assert hist_distance(a, b) == hist_distance(b, a) >= 0.0


def test_plain_vs_cipher_distances_positive(master_key):
    img = synthetic_image(192, 128, seed=63)
    d = leakage_distances(encode_plain(img, QF), encrypt_image(img, master_key, QF))
    assert all(v > 0 for v in d.values())


def test_leakage_csv_long_format(master_key):
    from cipherjpeg import leakage_csv
    img = synthetic_image(64, 64, seed=67)
    d = leakage_distances(encode_plain(img, QF), encrypt_image(img, master_key, QF))
    lines = leakage_csv({"img0": d}).strip().split("\n")
    assert lines[0] == "image_id,kind,distance"
    assert len(lines) == 5
    assert lines[1].startswith("img0,DCC,")


def test_psnr_closed_forms():
    a = np.zeros((8, 8, 3), dtype=np.uint8)
    assert psnr(a, a) == math.inf
    b = np.full_like(a, 255)
    assert psnr(a, b) == 0.0
    c = np.full_like(a, 1)
    assert abs(psnr(a, c) - 10 * math.log10(255 ** 2)) <= 1e-12


def test_psnr_shape_mismatch():
    with pytest.raises(InvalidInputError):
        psnr(np.zeros((8, 8, 3)), np.zeros((8, 16, 3)))


def test_bpp_arithmetic():
    assert bpp(b"\x00" * 1000, 100, 80) == 1.0
    with pytest.raises(InvalidInputError):
        bpp(b"", 0, 8)


def test_bpp_nondecreasing_in_quality():
    img = synthetic_image(128, 96, seed=64)
    values = [bpp(encode_plain(img, CodecConfig(qf=qf)), 128, 96)
              for qf in range(10, 91, 10)]
    assert all(b2 >= b1 for b1, b2 in zip(values, values[1:]))


def test_rd_curve_single_image_single_qf():
    img = synthetic_image(96, 96, seed=65)
    stream = encode_plain(img, CodecConfig(qf=40))
    from cipherjpeg import decode_image
    points = rd_curve([img], [40])
    assert len(points) == 1
    assert points[0].qf == 40
    assert points[0].bpp == bpp(stream, 96, 96)
    assert abs(points[0].psnr - psnr(img, decode_image(stream))) <= 1e-12


def test_rd_curve_nine_point_grid(master_key):
    img = synthetic_image(96, 96, seed=66)
    points = rd_curve([img], range(10, 91, 10), key=master_key)
    assert [p.qf for p in points] == list(range(10, 91, 10))


def test_rd_curve_empty_corpus():
    with pytest.raises(InvalidInputError):
        rd_curve([], [50])


def test_rd_csv_serializes_infinity():
    img = np.full((64, 64, 3), 128, dtype=np.uint8)  # lossless at any QF
    csv = rd_curve_csv(rd_curve([img], [50]))
    lines = csv.strip().split("\n")
    assert lines[0] == "qf,bpp,psnr"
    assert lines[1].endswith(",inf")


def test_keyspace_exact_structure():
    r = keyspace(192, 128)
    assert (r.n_y, r.n_u, r.n_v) == (384, 96, 96)
    expected = (4 ** 576) * (math.comb(128, 9) ** 576) \
        * math.factorial(384) * math.factorial(96) * math.factorial(96)
    assert r.exact_value == expected
    assert r.exact_value == keyspace_term(384) * keyspace_term(96) * keyspace_term(96)
    assert "384" in keyspace_text(r)


def test_keyspace_degenerate_single_block():
    assert keyspace_term(1) == 4 * math.comb(128, 9)


def test_keyspace_log2_matches_independent_oracle():
    r = keyspace(192, 128)
    mpmath.mp.dps = 60
    oracle = float(mpmath.log(mpmath.mpf(r.exact_value), 2))
    assert r.log2_bits == oracle


def test_keyspace_reproducible():
    assert keyspace(192, 128).exact_value == keyspace(192, 128).exact_value
    assert keyspace(8, 8).n_y == 4  # padded to one 16x16 MCU
