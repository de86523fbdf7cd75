"""Command-line front end.

Exit codes: 0 success, 2 invalid input, 3 a verification check failed,
4 file-system error.
"""
from __future__ import annotations

import argparse
import os
import sys
import time

import numpy as np

from . import __version__, atoms, conformal, helicity, kernel
from .core import build_cone_quadrature
from .files import (ValidationError, complex_pairs, from_pairs, read_json, to_json_text,
                    validate, write_csv, write_json)
from .fourier import ConeCoefficients

EXIT_OK, EXIT_INPUT, EXIT_CHECK, EXIT_IO = 0, 2, 3, 4


def _manifest(command: str, params: dict, **extra) -> dict:
    out = {"command": command, "version": __version__, "params": params}
    out.update(extra)
    return out


def _write_sidecar(path: str, manifest: dict, started: float):
    manifest = dict(manifest, wall_clock_s=round(time.perf_counter() - started, 6))
    with open(path + ".manifest.json", "w") as fh:
        fh.write(to_json_text(manifest) + "\n")


def _thread_limit():
    value = os.environ.get("EMW_THREADS")
    if not value:
        return None
    try:
        n = int(value)
    except ValueError as exc:
        raise ValidationError("EMW_THREADS must be a positive integer") from exc
    if n < 1:
        raise ValidationError("EMW_THREADS must be a positive integer")
    from threadpoolctl import threadpool_limits
    return threadpool_limits(limits=n)


# -- commands ---------------------------------------------------------------

def cmd_mother(args) -> int:
    started = time.perf_counter()
    if args.nr < 2 or args.nt < 2:
        raise ValidationError("nr and nt must be at least 2")
    if not args.r_max > 0 or not args.t_max > args.t_min:
        raise ValidationError("need r_max > 0 and t_max > t_min")
    r = np.linspace(0.0, args.r_max, args.nr)
    t = np.linspace(args.t_min, args.t_max, args.nt)
    R, T = np.meshgrid(r, t, indexing="ij")
    psi = kernel.mother_scalar(R, T)
    rows = np.stack([R.ravel(), T.ravel(), psi.real.ravel(), psi.imag.ravel()], axis=1)
    write_csv(args.out, ["r", "t", "re_psi", "im_psi"], rows)
    stem, ext = os.path.splitext(args.out)
    slice_path = f"{stem}_t0{ext or '.csv'}"
    psi0 = kernel.mother_scalar(r, 0.0).real
    write_csv(slice_path, ["r", "psi0"], np.stack([r, psi0], axis=1))
    params = {"r_max": args.r_max, "t_min": args.t_min, "t_max": args.t_max,
              "nr": args.nr, "nt": args.nt}
    _write_sidecar(args.out, _manifest("mother", params, outputs=[args.out, slice_path]),
                   started)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verification import run_checks
    started = time.perf_counter()
    pi_fn = None
    if args.tamper_pi:
        eps = args.tamper_pi
        pi_fn = lambda p: helicity.pi_matrix(p) + eps * np.ones((3, 3))  # noqa: E731
    results = run_checks(args.tier, pi_fn=pi_fn)
    tol_scale = args.tol if args.tol else 1.0
    width = max(len(r.name) for r in results)
    failed = []
    for r in results:
        ok = np.isfinite(r.value) and r.value <= r.tolerance * tol_scale
        if not ok:
            failed.append(r.name)
        print(f"{r.name:<{width}}  {'PASS' if ok else 'FAIL'}  value={r.value:.3e}  "
              f"tol={r.tolerance * tol_scale:.1e}  ({r.seconds:.2f} s)")
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    if failed:
        print("failed: " + ", ".join(failed))
    if args.out:
        manifest = _manifest("verify", {"tier": args.tier, "tamper_pi": args.tamper_pi,
                                        "tol_scale": tol_scale},
                             tier=args.tier, checks=[r.as_dict() for r in results],
                             failed=failed)
        manifest["wall_clock_s"] = round(time.perf_counter() - started, 6)
        with open(args.out, "w") as fh:
            fh.write(to_json_text(manifest) + "\n")
    return EXIT_CHECK if failed else EXIT_OK


def _grid_manifest(args) -> dict:
    if args.kind == "lattice":
        return {"kind": "lattice", "s_count": args.s_count, "x_count": args.x_count,
                "box_factor": args.box_factor, "s_ref": args.s_ref,
                "both_branches": not args.single_branch}
    if args.kind == "log":
        return {"kind": "log", "box": args.box, "s_min": args.s_min, "s_max": args.s_max,
                "s_count": args.s_count, "x_count": args.x_count, "s_ref": args.s_ref,
                "both_branches": not args.single_branch}
    if args.probe is None:
        raise ValidationError("a focused grid needs --probe x1 x2 x3 x0")
    return {"kind": "focused", "probe": list(args.probe), "s_count": args.s_count,
            "angular_count": args.angular_count, "radial_order": args.radial_order,
            "s_ref": args.s_ref, "ratio": 3.0, "both_branches": not args.single_branch}


def cmd_grid(args) -> int:
    manifest = _grid_manifest(args)
    validate(manifest, "grid")
    grid = _build_grid(manifest)
    write_json(args.out, manifest, "grid")
    print(f"{len(grid)} nodes, hash {grid.digest}")
    return EXIT_OK


def _build_grid(manifest: dict) -> atoms.EuclideanGrid:
    try:
        return atoms.grid_from_manifest(manifest)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"bad grid description: {exc}") from exc


def cmd_field(args) -> int:
    """Write a wavelet-superposition field, or its cone coefficients."""
    started = time.perf_counter()
    labels = np.asarray(args.label, dtype=float).reshape(-1, 8)
    vectors = np.asarray(args.vector, dtype=float).reshape(-1, 6)
    if len(labels) != len(vectors):
        raise ValidationError("give one --vector per --label")
    z = labels[:, 0::2] + 1j * labels[:, 1::2]
    u = vectors[:, 0::2] + 1j * vectors[:, 1::2]
    try:
        field = atoms.WaveletSuperposition(z, u)
        from .core import tube_branch
        if np.any(tube_branch(field.labels) == 0):
            raise ValueError("labels must lie in the tube")
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc
    params = {"labels": labels.tolist(), "vectors": vectors.tolist()}
    if args.quadrature is None:
        obj = {"format": "emw.field/1", "kind": "wavelet_superposition",
               "labels": complex_pairs(field.labels), "vectors": complex_pairs(field.vectors)}
    else:
        radial, angular, omega_max, hint = args.quadrature
        q = build_cone_quadrature(int(radial), int(angular), omega_max, hint)
        coeffs = field.coefficients(q)
        obj = {"format": "emw.field/1", "kind": "cone_coefficients", "quadrature": q.manifest,
               "nodes": [{"p": list(p), "f": f} for p, f in
                         zip(q.momenta.tolist(), complex_pairs(coeffs.values))]}
        params["quadrature"] = q.manifest
    obj["manifest"] = _manifest("field", params)
    write_json(args.out, obj, "field")
    _write_sidecar(args.out, obj["manifest"], started)
    return EXIT_OK


def _load_field(path: str):
    obj = read_json(path, "field")
    if obj["kind"] == "wavelet_superposition":
        try:
            return atoms.WaveletSuperposition(from_pairs(obj["labels"]),
                                              from_pairs(obj["vectors"]))
        except ValueError as exc:
            raise ValidationError(str(exc)) from exc
    qm = obj["quadrature"]
    q = build_cone_quadrature(qm["radial"], qm["angular"], qm["omega_max"], qm["scale_hint"])
    p = np.asarray([n["p"] for n in obj["nodes"]], dtype=float)
    if p.shape != q.momenta.shape or not np.allclose(p, q.momenta, rtol=1e-12, atol=1e-12):
        raise ValidationError("coefficient nodes do not match the declared quadrature")
    return ConeCoefficients(q, from_pairs([n["f"] for n in obj["nodes"]]))


def cmd_analyze(args) -> int:
    started = time.perf_counter()
    field = _load_field(args.field)
    gm = read_json(args.grid, "grid")
    grid = _build_grid(gm)
    samples = atoms.restrict_R_E(field, grid)
    manifest = _manifest("analyze", {"field": os.path.basename(args.field)},
                         grid_hashes=[grid.digest])
    obj = {"format": "emw.samples/1", "grid": gm, "grid_hash": grid.digest,
           "values": complex_pairs(samples.values), "manifest": manifest}
    write_json(args.out, obj, "samples")
    _write_sidecar(args.out, manifest, started)
    return EXIT_OK


def _load_samples(path: str) -> atoms.EuclideanSamples:
    obj = read_json(path, "samples")
    grid = _build_grid(obj["grid"])
    if grid.digest != obj["grid_hash"]:
        raise ValidationError("grid hash in the samples file does not match its grid")
    try:
        return atoms.EuclideanSamples(grid, from_pairs(obj["values"]))
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc


def cmd_synthesize(args) -> int:
    started = time.perf_counter()
    phi = _load_samples(args.phi)
    points = np.asarray(read_json(args.probes, "probes")["points"], dtype=float)
    values = atoms.construct_R_E_star(phi, points)
    manifest = _manifest("synthesize", {"phi": os.path.basename(args.phi),
                                        "probes": os.path.basename(args.probes)},
                         grid_hashes=[phi.grid.digest])
    obj = {"format": "emw.field_values/1", "points": points.tolist(),
           "values": complex_pairs(values), "manifest": manifest}
    write_json(args.out, obj, "field_values")
    _write_sidecar(args.out, manifest, started)
    return EXIT_OK


def cmd_transform(args) -> int:
    started = time.perf_counter()
    grid = _build_grid(read_json(args.grid, "grid"))
    move = {}
    if args.boost is not None:
        move["v"] = list(args.boost)
    if args.scale is not None:
        move["scale"] = args.scale
    if args.translate is not None:
        move["translate"] = list(args.translate)
    validate(move, "transform")
    try:
        if "v" in move:
            out = conformal.boost_grid(grid, conformal.Boost(move["v"]))
        elif "scale" in move:
            out = conformal.scale_grid(grid, move["scale"])
        else:
            out = conformal.translate_grid(grid, move["translate"])
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc
    manifest = _manifest("transform", move, grid_hashes=[grid.digest])
    obj = {"format": "emw.labels/1", "labels": complex_pairs(out.labels),
           "weights": out.weights.tolist(),
           "center_velocity": conformal.center_velocity(out.labels).tolist(),
           "source_hash": grid.digest, "transform": move, "manifest": manifest}
    write_json(args.out, obj, "labels")
    _write_sidecar(args.out, manifest, started)
    return EXIT_OK


# -- argument parsing -------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="emw", description="Electromagnetic wavelet toolkit")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mother", help="sample the scalar mother wavelet Psi(r, t) to CSV")
    p.add_argument("--r-max", type=float, default=5.0)
    p.add_argument("--t-min", type=float, default=-5.0)
    p.add_argument("--t-max", type=float, default=5.0)
    p.add_argument("--nr", type=int, default=101)
    p.add_argument("--nt", type=int, default=101)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_mother)

    p = sub.add_parser("verify", help="run the identity checks")
    p.add_argument("--tier", choices=["fast", "full"], default="fast")
    p.add_argument("--tol", type=float, default=None,
                   help="multiply every tolerance by this factor")
    p.add_argument("--tamper-pi", type=float, default=0.0, metavar="EPS",
                   help="perturb the projector by EPS (negative control)")
    p.add_argument("--out", default=None, help="write the run manifest here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("grid", help="write a Euclidean grid description")
    p.add_argument("--kind", choices=["lattice", "log", "focused"], default="lattice")
    p.add_argument("--s-count", type=int, default=8)
    p.add_argument("--x-count", type=int, default=16)
    p.add_argument("--box-factor", type=float, default=4.0)
    p.add_argument("--box", type=float, default=6.0)
    p.add_argument("--s-min", type=float, default=0.25)
    p.add_argument("--s-max", type=float, default=4.0)
    p.add_argument("--s-ref", type=float, default=1.0)
    p.add_argument("--probe", type=float, nargs=4, default=None)
    p.add_argument("--angular-count", type=int, default=8)
    p.add_argument("--radial-order", type=int, default=6)
    p.add_argument("--single-branch", action="store_true",
                   help="keep only s > 0 nodes")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("field", help="write a field built from wavelets")
    p.add_argument("--label", type=float, nargs=8, action="append", required=True,
                   metavar="RE_IM", help="complex label as re/im pairs of x1 x2 x3 x0")
    p.add_argument("--vector", type=float, nargs=6, action="append", required=True,
                   metavar="RE_IM", help="complex 3-vector as re/im pairs")
    p.add_argument("--quadrature", type=float, nargs=4, default=None,
                   metavar=("RADIAL", "ANGULAR", "OMEGA_MAX", "SCALE_HINT"),
                   help="store cone coefficients on this quadrature instead")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_field)

    p = sub.add_parser("analyze", help="sample a field's extension on a grid")
    p.add_argument("--field", required=True)
    p.add_argument("--grid", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("synthesize", help="rebuild a field at probe points from samples")
    p.add_argument("--phi", required=True)
    p.add_argument("--probes", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_synthesize)

    p = sub.add_parser("transform", help="move grid labels by a boost, scaling or translation")
    p.add_argument("--grid", required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--boost", type=float, nargs=3, metavar=("VX", "VY", "VZ"))
    g.add_argument("--scale", type=float)
    g.add_argument("--translate", type=float, nargs=4, metavar=("X1", "X2", "X3", "X0"))
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_transform)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        limiter = _thread_limit()
        try:
            return args.func(args)
        finally:
            if limiter is not None:
                limiter.restore_original_limits()
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
