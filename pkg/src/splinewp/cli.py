"""Command-line interface: ``splinewp <subcommand> ...``.

Exit codes: 0 success, 2 validation error, 3 I/O error, 4 numerical failure.
"""

import argparse
import sys
from pathlib import Path

import numpy as np

from . import __version__, fileio
from .analysis import COSTS, denoise
from .forest import level_nodes
from .qwp1d import qwp_multi_level_forward, qwp_multi_level_inverse
from .qwp2d import atom2d, exact_angle_count, forward2d, inverse2d, orientation_classes, symmetric_extend
from .restoration import CGDivergence, SbiParams, gaussian_kernel, sbi_restore
from .spectral import psnr
from .wp1d import multi_level_forward, multi_level_inverse, wp2d_forward, wp2d_inverse

EXIT_OK, EXIT_VALIDATION, EXIT_IO, EXIT_NUMERIC = 0, 2, 3, 4


class ValidationError(ValueError):
    pass


def g6(x):
    return f"{x:.6g}"


# -- input helpers ---------------------------------------------------------


def _load_signal(path):
    """PGM gives a 2D image, ``.npy`` any array, anything else is read as whitespace-separated text."""
    path = Path(path)
    if path.suffix.lower() == ".pgm":
        return fileio.read_pgm(path).astype(float)
    if path.suffix.lower() == ".npy":
        return np.load(path)
    try:
        return np.loadtxt(path, comments="#")
    except ValueError as exc:
        raise fileio.FormatError(f"{path}: not a numeric text file") from exc


def _save_signal(path, x):
    path = Path(path)
    if path.suffix.lower() == ".pgm":
        fileio.write_pgm(path, x)
    elif path.suffix.lower() == ".npy":
        np.save(path, x)
    else:
        np.savetxt(path, np.atleast_1d(x), fmt="%.6g")


def _manifest(args, out, extra=None):
    config = {k: v for k, v in vars(args).items() if k != "func"}
    if extra:
        config.update(extra)
    fileio.write_manifest(f"{out}.manifest.json", args.command, config, args.seed, __version__)


def _load_mask(spec, shape, seed):
    if spec is None:
        return None
    if spec.startswith("random:"):
        keep = float(spec.split(":", 1)[1])
        if not 0 < keep <= 1:
            raise ValidationError("random mask keep-fraction must lie in (0, 1]")
        return (np.random.default_rng(seed).random(shape) < keep).astype(float)
    mask = fileio.read_pgm(spec)
    if mask.shape != shape:
        raise ValidationError(f"mask shape {mask.shape} does not match image shape {shape}")
    return (mask != 0).astype(float)


def _load_kernel(spec):
    if spec is None:
        return None
    if spec.startswith("gaussian"):
        parts = spec.split(":")
        size = int(parts[1]) if len(parts) > 1 else 5
        sigma = float(parts[2]) if len(parts) > 2 else 0.5
        return gaussian_kernel(size, sigma)
    return fileio.read_kernel(spec)


# -- subcommands -----------------------------------------------------------


def cmd_transform(args):
    x = _load_signal(args.input)
    if args.extend:
        if x.ndim != 2:
            raise ValidationError("--extend applies to images only")
        x = symmetric_extend(x)
    if x.ndim == 1:
        forest = (qwp_multi_level_forward if args.kind == "qwp" else multi_level_forward)(x, args.levels, args.order)
    elif x.ndim == 2:
        forest = (forward2d if args.kind == "qwp" else wp2d_forward)(x, args.levels, args.order)
    else:
        raise ValidationError("input must be 1D or 2D")
    fileio.write_forest(args.out, forest, args.ordering)
    m = args.levels
    nodes = level_nodes(m, forest.ndim)
    print(f"# {forest.kind} N={forest.n} levels={m} order={forest.order} bands={len(nodes) * len(forest.trees)}")
    print("tree\tband\tenergy")
    for tag in forest.tags:
        for node in nodes:
            band = ",".join(str(v) for v in node[1:])
            print(f"{tag or '.'}\t{band}\t{g6(float(np.sum(np.abs(forest.trees[tag][node]) ** 2)))}")
    _manifest(args, args.out)


def cmd_reconstruct(args):
    forest = fileio.read_forest(args.input)
    level = args.levels or forest.levels
    if forest.kind == "wp1d":
        x = multi_level_inverse(forest, level)
    elif forest.kind == "qwp1d":
        x = qwp_multi_level_inverse(forest, level)
    elif forest.kind == "wp2d":
        x = wp2d_inverse(forest, level)
    else:
        x = inverse2d(forest, level)
    if args.crop:
        x = x[: args.crop, : args.crop] if x.ndim == 2 else x[: args.crop]
    _save_signal(args.out, x)
    _manifest(args, args.out)


def _raster_name(kind, m, j, l, sign):
    tree = "p" if sign == "+" else "m"
    return f"{kind}_{tree}_m{m}_j{j}_l{l}"


def cmd_atlas(args):
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    m, N = args.levels, args.size
    if 2 ** (m + 2) > N:
        raise ValidationError(f"atlas size {N} too small for level {m}")
    for sign in ("+", "-"):
        for j in range(2**m):
            for l in range(2**m):
                atom = atom2d(m, j, l, sign, N, args.order)
                base = (m, j, l, sign)
                fileio.write_pgm(out / (_raster_name("vt", *base) + ".pgm"), fileio.to_full_range(np.fft.fftshift(atom.real)))
                fileio.write_pgm(out / (_raster_name("th", *base) + ".pgm"), fileio.to_full_range(np.fft.fftshift(atom.imag)))
                mag = np.fft.fftshift(np.abs(atom.spectrum))
                fileio.write_pgm(out / (_raster_name("spec", *base) + ".pgm"), fileio.to_full_range(mag))
                mag.astype("<f8").tofile(out / (_raster_name("spec", *base) + ".f64"))
    classes = orientation_classes(m, N, args.order)
    lines = [
        f"level {m}",
        f"order {args.order}",
        f"size {N}",
        f"directions {len(classes)}",
        f"exact_angles {exact_angle_count(m)}",
    ]
    for (tree, diag), members in sorted(classes.items()):
        lines.append(f"class {tree} {diag} " + " ".join(f"{j},{l}" for _, j, l in members))
    (out / "census.txt").write_text("\n".join(lines) + "\n")
    print(f"directions {len(classes)}")
    _manifest(args, out / "atlas")


def _bundle_params(args):
    """Explicit flags win over the params file, which wins over the defaults."""
    file_params = fileio.read_params(args.params) if args.params else {}
    defaults = {"lambda": 1.0, "mu": 0.05, "sbi_iters": 50, "cg_iters": 30, "order": 6, "levels": 3}
    merged = dict(defaults)
    merged.update({k: v for k, v in file_params.items() if k in defaults})
    for key, attr in [("lambda", "lam"), ("mu", "mu"), ("sbi_iters", "sbi_iters"), ("cg_iters", "cg_iters"), ("order", "order"), ("levels", "levels")]:
        value = getattr(args, attr)
        if value is not None:
            merged[key] = value
    return merged


def cmd_denoise(args):
    x = _load_signal(args.input)
    if x.ndim != 2:
        raise ValidationError("denoise expects a PGM image")
    reference = _load_signal(args.reference) if args.reference else None
    if args.noise_sigma:
        reference = x if reference is None else reference
        x = x + args.noise_sigma * np.random.default_rng(args.seed).standard_normal(x.shape)
    rank = args.rank_L if args.rank_L is not None else int(0.95 * x.size * (4 if args.extend else 1))
    out, report = denoise(x, args.order, args.levels, rank, args.cost, not args.tensor, reference, args.extend)
    fileio.write_pgm(args.out, out)
    Path(f"{args.out}.report.txt").write_text(report.to_text())
    Path(f"{args.out}.report.json").write_text(report.to_json() + "\n")
    print(report.to_text(), end="")
    _manifest(args, args.out, {"rank_L": rank})


def cmd_inpaint(args):
    f = _load_signal(args.input)
    if f.ndim != 2:
        raise ValidationError("inpaint expects a PGM image")
    n = f.shape[0]
    p = _bundle_params(args)
    mask = _load_mask(args.mask, f.shape, args.seed)
    kernel = _load_kernel(args.kernel)
    reference = _load_signal(args.reference) if args.reference else None
    if args.extend:
        f = symmetric_extend(f)
        mask = None if mask is None else symmetric_extend(mask)
        reference = None if reference is None else symmetric_extend(reference)
    params = SbiParams(float(p["lambda"]), float(p["mu"]), int(p["sbi_iters"]), int(p["cg_iters"]))
    result = sbi_restore(f, kernel, mask, params, int(p["order"]), int(p["levels"]), reference)
    if not np.all(np.isfinite(result.u)):
        raise CGDivergence("restoration produced non-finite values")
    fileio.write_pgm(args.out, result.u[:n, :n])
    fileio.write_trace(f"{args.out}.trace.csv", result.trace)
    last = result.trace[-1]
    print(f"iterations {last[0]}\nobjective {g6(last[1])}\npsnr {g6(last[2])}")
    _manifest(args, args.out, {"resolved_params": p})


def cmd_psnr(args):
    a, b = _load_signal(args.reference), _load_signal(args.test)
    value = psnr(a, b)
    text = g6(value)
    print(text)
    if args.out:
        Path(args.out).write_text(text + "\n")
        _manifest(args, args.out)


# -- parser ----------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="splinewp", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, levels=4, order=4):
        sp.add_argument("--order", type=int, default=order, help="spline order 2r (even, 2..24)")
        sp.add_argument("--levels", type=int, default=levels, help="decomposition depth M")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--extend", action="store_true", help="mirror the image to 2N x 2N first")

    sp = sub.add_parser("transform", help="forward transform into a forest container")
    sp.add_argument("input")
    sp.add_argument("--out", required=True)
    sp.add_argument("--kind", choices=("qwp", "wp"), default="qwp")
    sp.add_argument("--ordering", choices=("frequency", "natural"), default="frequency")
    common(sp)
    sp.set_defaults(func=cmd_transform)

    sp = sub.add_parser("reconstruct", help="inverse transform of a forest container")
    sp.add_argument("input")
    sp.add_argument("--out", required=True)
    sp.add_argument("--levels", type=int, default=None, help="level to reconstruct from (default: deepest)")
    sp.add_argument("--crop", type=int, default=None, help="keep the leading N samples per axis")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_reconstruct)

    sp = sub.add_parser("atlas", help="render 2D qWP waveforms and spectra of one level")
    sp.add_argument("--out", required=True, help="output directory")
    sp.add_argument("--size", type=int, default=128)
    common(sp, levels=2)
    sp.set_defaults(func=cmd_atlas)

    sp = sub.add_parser("denoise", help="best-basis hard-threshold denoising")
    sp.add_argument("input")
    sp.add_argument("--out", required=True)
    sp.add_argument("--cost", choices=COSTS, default="entropy")
    sp.add_argument("--rank-L", dest="rank_L", type=int, default=None, help="threshold rank (default 95%% of N^2)")
    sp.add_argument("--tensor", action="store_true", help="use the non-directional tensor WP")
    sp.add_argument("--reference", default=None)
    sp.add_argument("--noise-sigma", type=float, default=0.0, help="add seeded Gaussian noise first")
    common(sp)
    sp.set_defaults(func=cmd_denoise)

    sp = sub.add_parser("inpaint", help="split Bregman deblurring and inpainting")
    sp.add_argument("input")
    sp.add_argument("--out", required=True)
    sp.add_argument("--mask", default=None, help="mask PGM (0 = missing) or random:KEEP_FRACTION")
    sp.add_argument("--kernel", default=None, help="kernel text file or gaussian[:size[:sigma]]")
    sp.add_argument("--params", default=None, help="key=value parameter file")
    sp.add_argument("--lambda", dest="lam", type=float, default=None)
    sp.add_argument("--mu", type=float, default=None)
    sp.add_argument("--sbi-iters", dest="sbi_iters", type=int, default=None)
    sp.add_argument("--cg-iters", dest="cg_iters", type=int, default=None)
    sp.add_argument("--reference", default=None)
    sp.add_argument("--order", type=int, default=None)
    sp.add_argument("--levels", type=int, default=None, help="qWP level whose atoms form the frame")
    sp.add_argument("--seed", type=int, default=0, help="seed for random:KEEP masks")
    sp.add_argument("--extend", action="store_true", help="mirror the image to 2N x 2N first")
    sp.set_defaults(func=cmd_inpaint)

    sp = sub.add_parser("psnr", help="PSNR between two images")
    sp.add_argument("reference")
    sp.add_argument("test")
    sp.add_argument("--out", default=None)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_psnr)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    np.seterr(all="ignore")
    try:
        args.func(args)
    except (CGDivergence, FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, TypeError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
