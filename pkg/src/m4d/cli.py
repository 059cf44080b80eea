"""Command-line interface.

    m4d check <file.m4d>
    m4d build <file.m4d | gallery-id> [--res R[,R...]] [--project MODE]
              [--d F] [--rotor l0,l1,l2,l3,r0,r1,r2,r3] [-o DIR]
    m4d verify <gallery-id | all> [--json]
    m4d export-scene <file.m4d | gallery-id> [-o OUT.json] [--res R[,R...]]
                     [--with-fixtures]
    m4d gallery list
    m4d gallery export <id> [-o DIR]

Projection modes: dop (default), persp, ortho:<plane> with plane a string of
two or three axis letters (e.g. ortho:xy, ortho:xyz for the w = 0 shadow).

Exit codes: 0 success, 1 usage, 2 parse/build error (diagnostics on stderr),
3 verification failure, 4 I/O error.  Outputs are deterministic: identical
inputs and flags produce byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from m4d import gallery, verify
from m4d.dsl import ParseError, parse_program
from m4d.expr import UnboundParamError
from m4d.minkowski import DimensionOverflowError, SharedParameterError
from m4d.objio import write_obj
from m4d.paramset import NameCollisionError, ZeroNormAtSampleError
from m4d.projection import PerspectiveConfig, Rotor4
from m4d.quat import Quaternion, norm, scale
from m4d.scene import Scene, from_program, make_fixtures, scene_to_json
from m4d.tessellate import (
    DEFAULT_CURVE_RES,
    DEFAULT_SURFACE_RES,
    GridEvalError,
    boundary_grids,
    project_grid,
    sample,
)

EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_VERIFY = 3
EXIT_IO = 4

EXPORT_DEFAULT_RES = {1: 129, 2: 33, 3: 9}


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _load_scene(ref: str) -> Scene:
    if ref in gallery.entry_ids():
        return gallery.scene(ref)
    if not os.path.exists(ref):
        raise CliError(f"no such file or gallery entry: {ref!r}", EXIT_IO)
    try:
        with open(ref, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {ref!r}: {exc}", EXIT_IO) from exc
    name = os.path.splitext(os.path.basename(ref))[0]
    try:
        return from_program(parse_program(text), name=name)
    except ParseError as exc:
        raise CliError(f"{ref}:{exc}", EXIT_PARSE) from exc
    except (SharedParameterError, DimensionOverflowError, NameCollisionError, UnboundParamError) as exc:
        raise CliError(f"{ref}: {exc}", EXIT_PARSE) from exc


def _resolutions_for(dim: int, flag: list[int] | None, defaults: dict[int, int] | None = None) -> tuple:
    if dim == 0:
        return ()
    if flag:
        if len(flag) == dim:
            return tuple(flag)
        if len(flag) == 1:
            return (flag[0],) * dim
    if defaults is not None:
        return (defaults[dim],) * dim
    return ((DEFAULT_CURVE_RES,) if dim == 1 else (DEFAULT_SURFACE_RES,) * dim)


def _parse_res(text: str | None) -> list[int] | None:
    if text is None:
        return None
    try:
        res = [int(x) for x in text.split(",")]
    except ValueError:
        raise CliError(f"bad --res value {text!r}", EXIT_USAGE) from None
    if any(r < 2 for r in res):
        raise CliError("resolutions must be >= 2", EXIT_USAGE)
    return res


def _parse_rotor(text: str | None) -> Rotor4 | None:
    if text is None:
        return None
    parts = text.split(",")
    if len(parts) != 8:
        raise CliError("--rotor needs 8 comma-separated numbers", EXIT_USAGE)
    try:
        vals = [float(x) for x in parts]
    except ValueError:
        raise CliError(f"bad --rotor value {text!r}", EXIT_USAGE) from None
    left = Quaternion(*vals[:4])
    right = Quaternion(*vals[4:])
    for q, side in ((left, "left"), (right, "right")):
        n = norm(q)
        if abs(n - 1.0) > 1e-6:
            raise CliError(f"--rotor {side} factor has norm {n!r}; must be unit within 1e-6", EXIT_USAGE)
    return Rotor4(scale(left, 1.0 / norm(left)), scale(right, 1.0 / norm(right)))


def _grids_for_build(scene: Scene, names: list[str], res_flag: list[int] | None, defaults=None):
    """(label, grid) pairs; 3-parameter sets contribute their boundary faces."""
    out = []
    for name in names:
        ps = scene.sets[name]
        dim = len(ps.params)
        res = _resolutions_for(dim, res_flag, defaults)
        if dim == 3:
            for face in boundary_grids(ps, res):
                out.append((f"{name}:{face.fixed_param}={face.fixed_value!r}", face.grid))
        else:
            out.append((name, sample(ps, res, source_ref=name)))
    return out


def cmd_check(args) -> int:
    try:
        _load_scene(args.file)
    except CliError as exc:
        print(str(exc), file=sys.stderr)
        return exc.code
    print(f"{args.file}: ok")
    return 0


def cmd_build(args) -> int:
    scene = _load_scene(args.input)
    res_flag = _parse_res(args.res)
    rotor = _parse_rotor(args.rotor)
    mode = args.project or scene.projection.mode
    if mode == "perspective":
        mode = "persp"
    d = args.d if args.d is not None else (scene.projection.d or 2.0) if scene.projection.mode == "perspective" else 2.0
    names = list(scene.sets) if args.all_sets else scene.result_names()
    try:
        labeled = _grids_for_build(scene, names, res_flag)
    except (ZeroNormAtSampleError, GridEvalError) as exc:
        print(f"sampling failed: {exc}", file=sys.stderr)
        return EXIT_PARSE
    os.makedirs(args.outdir, exist_ok=True)
    written = []
    if mode == "dop":
        meshes_z, meshes_w = [], []
        for label, grid in labeled:
            mz, mw = project_grid(grid, "dop", rotor=rotor)
            meshes_z.append(mz)
            meshes_w.append(mw)
        for suffix, meshes in (("dop_z", meshes_z), ("dop_w", meshes_w)):
            path = os.path.join(args.outdir, f"{scene.name}_{suffix}.obj")
            write_obj(path, meshes)
            written.append(path)
    elif mode == "persp":
        cfg = PerspectiveConfig(d=d)
        meshes = [project_grid(grid, "perspective", cfg=cfg, rotor=rotor) for _, grid in labeled]
        path = os.path.join(args.outdir, f"{scene.name}_persp.obj")
        write_obj(path, meshes)
        written.append(path)
    elif mode.startswith("ortho:"):
        plane = mode.split(":", 1)[1]
        meshes = [project_grid(grid, "ortho", plane=plane, rotor=rotor) for _, grid in labeled]
        path = os.path.join(args.outdir, f"{scene.name}_ortho_{plane}.obj")
        write_obj(path, meshes)
        written.append(path)
    else:
        raise CliError(f"unknown projection mode {mode!r}", EXIT_USAGE)
    for path in written:
        print(path)
    return 0


def cmd_verify(args) -> int:
    if args.target == "all":
        outcomes = verify.run_all()
    elif args.target in gallery.entry_ids():
        outcomes = verify.run_entry(args.target)
    else:
        raise CliError(f"unknown gallery entry {args.target!r}", EXIT_USAGE)
    ok = all(o.as_expected for o in outcomes)
    if args.json:
        print(json.dumps([o.to_json() for o in outcomes], indent=2))
    else:
        for o in outcomes:
            status = "ok" if o.as_expected else "UNEXPECTED"
            kind = "pass" if o.report.passed else "fail"
            expected = "pass" if o.check.expect_pass else "fail"
            print(
                f"[{o.check.entry_id}] {o.report.check_id}: {kind} "
                f"(expected {expected}, residual {o.report.max_residual:.3e}, "
                f"tol {o.report.tolerance:.1e}, {o.report.samples_tested} samples) {status}"
            )
        entries = sorted({o.check.entry_id for o in outcomes}, key=gallery.entry_ids().index)
        good = sum(1 for e in entries if all(o.as_expected for o in outcomes if o.check.entry_id == e))
        print(f"{good}/{len(entries)} entries pass")
    return 0 if ok else EXIT_VERIFY


def cmd_export_scene(args) -> int:
    scene = _load_scene(args.input)
    res_flag = _parse_res(args.res)
    labeled = []
    for name in scene.sets:
        ps = scene.sets[name]
        res = _resolutions_for(len(ps.params), res_flag, EXPORT_DEFAULT_RES)
        grid = sample(ps, res, source_ref=name)
        labeled.append({"setName": name, "resolutions": list(res), "points": grid.points.reshape(-1).tolist()})
    doc = scene_to_json(scene, labeled)
    out = args.output or f"{scene.name}.json"
    try:
        with open(out, "w", encoding="ascii", newline="\n") as fh:
            json.dump(doc, fh, indent=1)
            fh.write("\n")
    except OSError as exc:
        raise CliError(f"cannot write {out!r}: {exc}", EXIT_IO) from exc
    print(out)
    if args.with_fixtures:
        fixtures = make_fixtures(scene)
        fix_path = out[:-5] + ".fixtures.json" if out.endswith(".json") else out + ".fixtures.json"
        with open(fix_path, "w", encoding="ascii", newline="\n") as fh:
            json.dump(fixtures, fh, indent=1)
            fh.write("\n")
        print(fix_path)
    return 0


def cmd_gallery(args) -> int:
    if args.action == "list":
        for eid in gallery.entry_ids():
            entry = gallery.get(eid)
            print(f"{eid}: {entry.figure_ref}")
        return 0
    entry = gallery.get(args.id) if args.id in gallery.entry_ids() else None
    if entry is None:
        raise CliError(f"unknown gallery entry {args.id!r}", EXIT_USAGE)
    os.makedirs(args.outdir, exist_ok=True)
    path = os.path.join(args.outdir, f"{entry.id}.m4d")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(entry.dsl_source)
    print(path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="m4d", description="Minkowski quaternionic point sets in R^4")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="parse a scene file and report diagnostics")
    p.add_argument("file")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("build", help="sample, project, and write OBJ meshes")
    p.add_argument("input", help=".m4d file or gallery entry id")
    p.add_argument("--res", help="per-parameter sample counts, e.g. 64,64")
    p.add_argument("--project", help="dop | persp | ortho:<plane>")
    p.add_argument("--d", type=float, help="perspective focal distance")
    p.add_argument("--rotor", help="8 comma-separated floats: left then right unit quaternion")
    p.add_argument("--all-sets", action="store_true", help="include operand sets, not only results")
    p.add_argument("-o", "--outdir", default=".")
    p.set_defaults(fn=cmd_build)

    p = sub.add_parser("verify", help="run the numerical checks")
    p.add_argument("target", help="gallery entry id or 'all'")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("export-scene", help="write Scene JSON (schema v1) for the viewer")
    p.add_argument("input", help=".m4d file or gallery entry id")
    p.add_argument("-o", "--output")
    p.add_argument("--res", help="per-parameter sample counts for baked grids")
    p.add_argument("--with-fixtures", action="store_true", help="also write conformance fixtures")
    p.set_defaults(fn=cmd_export_scene)

    p = sub.add_parser("gallery", help="list or export built-in scenes")
    p.add_argument("action", choices=("list", "export"))
    p.add_argument("id", nargs="?")
    p.add_argument("-o", "--outdir", default=".")
    p.set_defaults(fn=cmd_gallery)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "gallery" and args.action == "export" and not args.id:
        parser.error("gallery export needs an entry id")
    try:
        return args.fn(args)
    except CliError as exc:
        print(f"m4d: {exc}", file=sys.stderr)
        return exc.code
    except OSError as exc:
        print(f"m4d: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
