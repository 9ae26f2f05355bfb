#!/usr/bin/env python3
"""Walk through the basic cipher loop: encrypt, inspect, decrypt.

The encrypted file is a perfectly ordinary baseline JPEG -- any viewer
opens it, it just shows scrambled blocks.  Only the right key restores
the picture.
"""

from pathlib import Path

import cipherjpeg as cj

out = Path("demo_out")
out.mkdir(exist_ok=True)

img = cj.synthetic_image(320, 208, seed=2024)
cj.write_png(out / "plain.png", img)
print(f"plain image: {img.shape[1]}x{img.shape[0]}")

key = cj.MasterKey.from_hex("c0ffee" + "00" * 29)
cfg = cj.CodecConfig(qf=60)

stream, stats = cj.encrypt_image(img, key, cfg, with_stats=True)
(out / "cipher.jpg").write_bytes(stream)
print(f"cipher stream: {len(stream)} bytes "
      f"({cj.bpp(stream, img.shape[1], img.shape[0]):.3f} bpp)")
print(f"key bits consumed per component: {stats['key_bits']}")

# what anyone without the key sees: a standard JPEG decode of the cipher
scrambled = cj.decode_image(stream)
cj.write_png(out / "cipher_view.png", scrambled)
print(f"cipher viewed without key: PSNR {cj.psnr(img, scrambled):.2f} dB")

# the key holder's view
recovered = cj.decrypt_image(stream, key)
cj.write_png(out / "decrypted.png", recovered)
print(f"decrypted with correct key: PSNR {cj.psnr(img, recovered):.2f} dB")

# a wrong key silently yields noise -- format compliance means the
# stream carries nothing to check a key against
wrong = cj.decrypt_image(stream, cj.MasterKey.from_hex("ff" * 32))
cj.write_png(out / "wrong_key.png", wrong)
print(f"decrypted with wrong key:   PSNR {cj.psnr(img, wrong):.2f} dB")

baseline = cj.decode_image(cj.encode_plain(img, cfg))
print(f"plain JPEG at the same QF:  PSNR {cj.psnr(img, baseline):.2f} dB")
print(f"\noutputs in {out}/")
