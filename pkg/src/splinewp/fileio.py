"""On-disk formats: PGM images, the coefficient-forest container, restoration bundles, traces and manifests.

The forest container layout is documented byte by byte in ``docs/FORMAT.md``.
"""

import csv
import json
import platform
import struct
from pathlib import Path

import numpy as np

from .forest import CoeffForest, check_order, frequency_index, level_nodes


class FormatError(OSError):
    """A file exists but its content does not follow the expected format."""


# -- PGM -------------------------------------------------------------------


def _pgm_tokens(data, count):
    """Read ``count`` header tokens after the magic, skipping comments; return tokens and payload offset."""
    tokens, i = [], 2
    while len(tokens) < count:
        if i >= len(data):
            raise FormatError("truncated PGM header")
        c = data[i : i + 1]
        if c == b"#":
            while i < len(data) and data[i : i + 1] not in (b"\n", b"\r"):
                i += 1
        elif c.isspace():
            i += 1
        else:
            j = i
            while j < len(data) and not data[j : j + 1].isspace() and data[j : j + 1] != b"#":
                j += 1
            tokens.append(data[i:j])
            i = j
    # exactly one whitespace byte separates the header from the raster
    return tokens, i + 1


def read_pgm(path):
    """Read a binary (P5) PGM; 8-bit gives ``uint8``, 16-bit gives ``uint16``."""
    data = Path(path).read_bytes()
    if data[:2] != b"P5":
        raise FormatError(f"{path}: not a binary PGM (P5) file")
    tokens, offset = _pgm_tokens(data, 3)
    try:
        width, height, maxval = (int(t) for t in tokens)
    except ValueError as exc:
        raise FormatError(f"{path}: malformed PGM header") from exc
    if not 0 < maxval < 65536 or width <= 0 or height <= 0:
        raise FormatError(f"{path}: bad PGM header values")
    dtype = np.dtype("u1") if maxval < 256 else np.dtype(">u2")
    need = width * height * dtype.itemsize
    raster = data[offset : offset + need]
    if len(raster) != need:
        raise FormatError(f"{path}: raster has {len(raster)} bytes, expected {need}")
    img = np.frombuffer(raster, dtype=dtype).reshape(height, width)
    return img.astype(np.uint8 if maxval < 256 else np.uint16)


def write_pgm(path, image):
    """Write an 8-bit P5 PGM; values are rounded and clipped to ``[0, 255]``."""
    img = np.clip(np.rint(np.asarray(image, dtype=float)), 0, 255).astype(np.uint8)
    if img.ndim != 2:
        raise ValueError("PGM images must be 2D")
    h, w = img.shape
    Path(path).write_bytes(b"P5\n%d %d\n255\n" % (w, h) + img.tobytes())


def to_full_range(a):
    """Affinely map ``a`` onto ``0..255`` (constant input maps to 0)."""
    a = np.asarray(a, dtype=float)
    lo, hi = a.min(), a.max()
    if hi == lo:
        return np.zeros(a.shape, dtype=np.uint8)
    return np.rint(255.0 * (a - lo) / (hi - lo)).astype(np.uint8)


# -- forest container ------------------------------------------------------

MAGIC = b"SPLWPFOR"
VERSION = 1
_HEADER = struct.Struct("<8sHBBIIIII")
_TREE_TAGS = {"": 0, "+": 1, "-": 2}
_TAG_NAMES = {v: k for k, v in _TREE_TAGS.items()}
_ORDERINGS = {"frequency": 0, "natural": 1}


def _band_positions(m, ndim, ordering):
    """Frequency-ordered nodes of level ``m`` listed in storage order."""
    if ordering == "frequency":
        return level_nodes(m, ndim)
    idx = [frequency_index(m, k) for k in range(2**m)]
    if ndim == 1:
        return [(m, l) for l in idx]
    return [(m, j, l) for j in idx for l in idx]


def write_forest(path, forest, ordering="frequency"):
    if ordering not in _ORDERINGS:
        raise ValueError(f"ordering must be one of {tuple(_ORDERINGS)}")
    r = check_order(forest.order)
    n0, n1 = (forest.n, forest.n) if forest.ndim == 2 else (forest.n, 1)
    parts = [
        _HEADER.pack(
            MAGIC, VERSION, forest.ndim, int(forest.is_complex), forest.n, forest.levels, r, n0, n1
        ),
        struct.pack("<BB", _ORDERINGS[ordering], len(forest.trees)),
    ]
    dtype = np.dtype("<c16") if forest.is_complex else np.dtype("<f8")
    for tag, tree in forest.trees.items():
        parts.append(struct.pack("<B", _TREE_TAGS[tag]))
        for m in range(1, forest.levels + 1):
            for node in _band_positions(m, forest.ndim, ordering):
                parts.append(np.ascontiguousarray(tree[node], dtype=dtype).tobytes())
    Path(path).write_bytes(b"".join(parts))


def read_forest(path):
    data = Path(path).read_bytes()
    if len(data) < _HEADER.size + 2:
        raise FormatError(f"{path}: too short for a forest container")
    magic, version, ndim, is_complex, n, levels, r, n0, n1 = _HEADER.unpack_from(data, 0)
    if magic != MAGIC:
        raise FormatError(f"{path}: bad magic {magic!r}")
    if version != VERSION:
        raise FormatError(f"{path}: unsupported container version {version}")
    if ndim not in (1, 2):
        raise FormatError(f"{path}: bad dimension field {ndim}")
    ordering_code, ntrees = struct.unpack_from("<BB", data, _HEADER.size)
    orderings = {v: k for k, v in _ORDERINGS.items()}
    if ordering_code not in orderings:
        raise FormatError(f"{path}: unknown ordering tag {ordering_code}")
    ordering = orderings[ordering_code]
    dtype = np.dtype("<c16") if is_complex else np.dtype("<f8")
    kind = ("q" if is_complex else "") + ("wp2d" if ndim == 2 else "wp1d")
    pos = _HEADER.size + 2
    trees = {}
    try:
        for _ in range(ntrees):
            (code,) = struct.unpack_from("<B", data, pos)
            pos += 1
            tree = {}
            for m in range(1, levels + 1):
                side = n >> m
                shape = (side, side) if ndim == 2 else (side,)
                count = side**ndim
                for node in _band_positions(m, ndim, ordering):
                    arr = np.frombuffer(data, dtype=dtype, count=count, offset=pos)
                    tree[node] = arr.astype(complex if is_complex else float).reshape(shape)
                    pos += count * dtype.itemsize
            trees[_TAG_NAMES[code]] = tree
    except (struct.error, ValueError, KeyError) as exc:
        raise FormatError(f"{path}: truncated or corrupt payload") from exc
    if pos != len(data):
        raise FormatError(f"{path}: {len(data) - pos} trailing bytes")
    return CoeffForest(kind, n, levels, 2 * r, trees)


# -- restoration bundle ----------------------------------------------------


def read_kernel(path):
    """Whitespace-separated kernel rows; ``#`` starts a comment."""
    try:
        k = np.loadtxt(path, ndmin=2, comments="#")
    except ValueError as exc:
        raise FormatError(f"{path}: kernel is not a numeric matrix") from exc
    return k


def write_kernel(path, kernel):
    np.savetxt(path, np.asarray(kernel, dtype=float), fmt="%.17g")


def read_params(path):
    """Parse ``key = value`` lines (``#`` comments); numeric values are converted."""
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise FormatError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key] = _parse_value(value)
    return out


def _parse_value(value):
    for cast in (int, float):
        try:
            return cast(value)
        except ValueError:
            pass
    return value


def write_params(path, params):
    Path(path).write_text("".join(f"{k}={_fmt(v)}\n" for k, v in params.items()))


def _fmt(v):
    return f"{v:.6g}" if isinstance(v, float) else str(v)


def write_trace(path, trace):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["iteration", "objective", "psnr"])
        for k, obj, q in trace:
            w.writerow([k, f"{obj:.6g}", f"{q:.6g}"])


def read_trace(path):
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    return [(int(r["iteration"]), float(r["objective"]), float(r["psnr"])) for r in rows]


# -- manifest --------------------------------------------------------------


def write_manifest(path, command, config, seed, version):
    manifest = {
        "command": command,
        "library_version": version,
        "seed": seed,
        "numpy_version": np.__version__,
        "python_version": platform.python_version(),
        "config": config,
    }
    Path(path).write_text(json.dumps(manifest, indent=1, sort_keys=True, default=str) + "\n")
    return manifest
