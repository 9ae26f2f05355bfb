"""Batch command-line surface.

Exit status contract: 0 success, 1 I/O or parse failure, 2 usage or
validation failure.  Key material comes from --key or the CIPHERJPEG_KEY
environment variable and is never written to any output artifact.
"""

import argparse
import concurrent.futures
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import analysis
from .errors import CipherJpegError, InvalidInputError
from .jfif import CodecConfig
from .keys import MasterKey
from .pipeline import decode_image, decrypt_image, encrypt_image
from .raster import read_image, write_png

RASTER_SUFFIXES = {".png", ".ppm"}


def _master_key(args) -> MasterKey:
    text = args.key or os.environ.get("CIPHERJPEG_KEY")
    if not text:
        raise ValueError("no key given (use --key or CIPHERJPEG_KEY)")
    return MasterKey.from_hex(text)


def _corpus_files(root: Path):
    files = [p for p in sorted(root.rglob("*")) if p.suffix.lower() in RASTER_SUFFIXES]
    if not files:
        raise InvalidInputError(f"no PPM/PNG images under {root}")
    return files


def cmd_encrypt(args) -> int:
    mk = _master_key(args)
    cfg = CodecConfig(qf=args.qf)
    rgb = read_image(args.input)
    stream, stats = encrypt_image(rgb, mk, cfg, with_stats=True)
    Path(args.output).write_bytes(stream)
    if args.manifest:
        with open(args.manifest, "w") as fh:
            json.dump(stats, fh, indent=2)
    h, w = rgb.shape[:2]
    print(f"{args.output}: {len(stream)} bytes, "
          f"{analysis.bpp(stream, w, h):.4f} bpp")
    return 0


def cmd_decrypt(args) -> int:
    mk = _master_key(args)
    stream = Path(args.input).read_bytes()
    rgb = decrypt_image(stream, mk)
    write_png(args.output, rgb)
    print(f"{args.output}: {rgb.shape[1]}x{rgb.shape[0]}")
    return 0


def _pair_distances(paths):
    plain_path, cipher_path = paths
    d = analysis.leakage_distances(Path(plain_path).read_bytes(),
                                   Path(cipher_path).read_bytes())
    return [d[k] for k in analysis.HISTOGRAM_KINDS]


def cmd_analyze(args) -> int:
    plain, cipher = Path(args.plain), Path(args.cipher)
    print(",".join(analysis.HISTOGRAM_KINDS))
    if plain.is_dir() != cipher.is_dir():
        raise InvalidInputError("plain and cipher must both be files or both directories")
    if not plain.is_dir():
        row = _pair_distances((plain, cipher))
        print(",".join(f"{v:.5g}" for v in row))
        return 0
    names = sorted(p.name for p in plain.iterdir() if p.is_file())
    pairs = [(plain / n, cipher / n) for n in names if (cipher / n).is_file()]
    if not pairs:
        raise InvalidInputError("no matching stream pairs between the directories")
    rows = _parallel_map(_pair_distances, pairs, args.jobs)
    for name, row in zip(names, rows):
        print(name + "," + ",".join(f"{v:.5g}" for v in row))
    mean = np.mean(np.asarray(rows), axis=0)
    print("mean," + ",".join(f"{v:.5g}" for v in mean))
    return 0


def cmd_curve(args) -> int:
    qfs = [int(q) for q in args.qf_list.split(",")]
    for qf in qfs:
        CodecConfig(qf=qf)
    key = _master_key(args) if (args.key or os.environ.get("CIPHERJPEG_KEY")) else None
    images = [read_image(p) for p in _corpus_files(Path(args.corpus))]
    points = analysis.rd_curve(images, qfs, key=key)
    csv = analysis.rd_curve_csv(points)
    if args.out:
        Path(args.out).write_text(csv)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(csv)
    return 0


def cmd_keyspace(args) -> int:
    report = analysis.keyspace(args.width, args.height)
    sys.stdout.write(analysis.keyspace_text(report))
    return 0


def _export_one(task):
    src, rel, out_dir, key_hex, qf = task
    try:
        rgb = read_image(src)
        stream = encrypt_image(rgb, MasterKey.from_hex(key_hex), CodecConfig(qf=qf))
        decoded = decode_image(stream)
        dest = Path(out_dir) / rel
        dest.parent.mkdir(parents=True, exist_ok=True)
        write_png(dest, decoded)
        h, w = decoded.shape[:2]
        return (str(rel), w, h, None)
    except (CipherJpegError, OSError, ValueError) as exc:
        return (str(rel), 0, 0, str(exc))


def cmd_export_dataset(args) -> int:
    mk = _master_key(args)
    corpus = Path(args.corpus)
    classes = sorted(p for p in corpus.iterdir() if p.is_dir())
    if not classes:
        raise InvalidInputError(f"no class subdirectories under {corpus}")
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    tasks = []
    for cls in classes:
        for src in sorted(cls.iterdir()):
            if src.suffix.lower() in RASTER_SUFFIXES:
                rel = Path(cls.name) / (src.stem + ".png")
                tasks.append((src, rel, out_dir, mk.key_bytes.hex(), args.qf))
    if not tasks:
        raise InvalidInputError(f"no PPM/PNG images under {corpus}")

    results = _parallel_map(_export_one, tasks, args.jobs)
    failures = 0
    rows = ["path,label,width,height,qf"]
    for rel, w, h, err in results:
        if err is not None:
            failures += 1
            print(f"skipped {rel}: {err}", file=sys.stderr)
            continue
        label = Path(rel).parts[0]
        rows.append(f"{rel},{label},{w},{h},{args.qf}")
    (out_dir / "manifest.csv").write_text("\n".join(rows) + "\n")
    print(f"exported {len(rows) - 1} images to {out_dir} "
          f"({failures} failures)")
    return 1 if failures else 0


def _parallel_map(fn, items, jobs):
    if jobs and jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(item) for item in items]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cipherjpeg",
        description="Format-compliant encrypted JPEG codec and analysis toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_key(p):
        p.add_argument("--key", help="64-hex master key (or set CIPHERJPEG_KEY)")

    p = sub.add_parser("encrypt", help="encrypt a PPM/PNG image to JFIF")
    p.add_argument("input")
    p.add_argument("output")
    add_key(p)
    p.add_argument("--qf", type=int, default=50)
    p.add_argument("--manifest", help="write a JSON sidecar with size/key-bit counts")
    p.set_defaults(func=cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt a JFIF stream to PNG")
    p.add_argument("input")
    p.add_argument("output")
    add_key(p)
    p.set_defaults(func=cmd_decrypt)

    p = sub.add_parser("analyze", help="histogram leakage between plain and cipher")
    p.add_argument("plain")
    p.add_argument("cipher")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("curve", help="BPP-PSNR curve over a corpus")
    p.add_argument("corpus")
    p.add_argument("--qf-list", default="10,20,30,40,50,60,70,80,90")
    add_key(p)
    p.add_argument("--out", help="CSV output path (default: stdout)")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("keyspace", help="exact key-space size for an image size")
    p.add_argument("width", type=int)
    p.add_argument("height", type=int)
    p.set_defaults(func=cmd_keyspace)

    p = sub.add_parser("export-dataset",
                       help="encrypt a labeled corpus and export decoded cipher images")
    p.add_argument("corpus", help="directory with one subdirectory per class")
    add_key(p)
    p.add_argument("--qf", type=int, default=50)
    p.add_argument("--out", required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_export_dataset)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (CipherJpegError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
