"""Numerical checks for the exact identities of the gallery geometry.

Every check walks a sampled grid, tracks the largest residual and the
parameter assignment where it occurs (ties resolved to the lowest lattice
index), and reports pass iff max residual <= tolerance.  Reports are
reproducible: the same grid always yields the same report.

Default tolerances: 1e-10 for derived identities (rulings, circle fits,
projected residuals), 1e-12 for direct substitution identities.

The registry at the bottom binds check ids to gallery entries.  Negative
controls are registered with expect_pass=False and guard against vacuously
passing oracles; the torus-membership test for the cone/sphere intersection
uses the 45-degree rotated frame p=(x+y)/sqrt2, q=(z+w)/sqrt2, r=(x-y)/sqrt2,
s=(z-w)/sqrt2, which is this artifact's concrete reading of where that torus
sits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from m4d import gallery
from m4d.dsl import parse_program
from m4d.expr import Add, Const, Div, Expr, Mul, ParamRef, Sub, compile_exprs
from m4d.paramset import ParamSet
from m4d.projection import Rotor4, rotate4
from m4d.quat import Quaternion
from m4d.scene import from_program
from m4d.tessellate import (
    SampleGrid,
    boundary_grids,
    iso_slices,
    project_grid,
    sample,
    to_polyline,
)

TOL_DIRECT = 1e-12
TOL_DERIVED = 1e-10


class DegenerateLineError(ValueError):
    """Ruling check on a lattice line whose endpoints coincide."""


class NotClosedError(ValueError):
    """Circle-family check on a lattice line that is not closed."""


@dataclass(frozen=True)
class CheckReport:
    check_id: str
    max_residual: float
    argmax_assignment: dict[str, float]
    tolerance: float
    passed: bool
    samples_tested: int

    def __post_init__(self):
        if self.passed != (self.max_residual <= self.tolerance):
            raise ValueError("pass flag inconsistent with residual/tolerance")

    def to_json(self) -> dict:
        return {
            "checkId": self.check_id,
            "maxResidual": self.max_residual,
            "argmaxAssignment": dict(self.argmax_assignment),
            "tolerance": self.tolerance,
            "pass": self.passed,
            "samplesTested": self.samples_tested,
        }


def _report(check_id: str, residual: float, argmax: dict, tol: float, samples: int) -> CheckReport:
    residual = float(residual)
    argmax = {k: float(v) for k, v in argmax.items()}
    return CheckReport(check_id, residual, argmax, tol, residual <= tol, samples)


def merge_reports(check_id: str, reports: list[CheckReport], tol: float) -> CheckReport:
    worst = max(reports, key=lambda r: r.max_residual)
    samples = sum(r.samples_tested for r in reports)
    return _report(check_id, worst.max_residual, worst.argmax_assignment, tol, samples)


# ---------------------------------------------------------------------------
# generic checks

def check_implicit(g: SampleGrid, residual_expr: Expr, tol: float, check_id: str = "implicit") -> CheckReport:
    """Max |residual(x, y, z, w)| over all lattice points."""
    fn = compile_exprs([residual_expr], ["x", "y", "z", "w"])
    worst = -1.0
    arg: dict = {}
    for flat, p in enumerate(g.points):
        r = abs(fn(p[0], p[1], p[2], p[3])[0])
        if r > worst:
            worst = r
            arg = _flat_assignment(g, flat)
    return _report(check_id, worst, arg, tol, len(g.points))


def check_pointwise_map(
    g: SampleGrid,
    target: ParamSet,
    reparam: dict[str, Expr],
    rotor: Rotor4,
    tol: float,
    check_id: str = "pointwise-map",
) -> CheckReport:
    """Max 4-D distance between grid points and rotate4(target(reparam(...)))."""
    order = sorted(reparam)
    re_fn = compile_exprs([reparam[k] for k in order], list(g.param_names))
    tgt_fn = compile_exprs(list(target.coords), target.param_names(), target.constants)
    tgt_order = target.param_names()
    worst = -1.0
    arg: dict = {}
    for flat, p in enumerate(g.points):
        src = _flat_assignment(g, flat)
        mapped = dict(zip(order, re_fn(*(src[n] for n in g.param_names))))
        q = Quaternion(*tgt_fn(*(mapped[n] for n in tgt_order)))
        img = rotate4(q, rotor)
        r = math.sqrt(
            (p[0] - img.a0) ** 2 + (p[1] - img.a1) ** 2 + (p[2] - img.a2) ** 2 + (p[3] - img.a3) ** 2
        )
        if r > worst:
            worst = r
            arg = src
    return _report(check_id, worst, arg, tol, len(g.points))


def check_torus_radii(
    g: SampleGrid,
    pairs: tuple[tuple[int, int], tuple[int, int]],
    radii2: tuple[float, float],
    tol: float,
    check_id: str = "torus-membership",
) -> CheckReport:
    """Membership in the torus {sum of squares over each coordinate pair fixed}."""
    worst = -1.0
    arg: dict = {}
    for flat, p in enumerate(g.points):
        r = 0.0
        for (i, j), c in zip(pairs, radii2):
            r = max(r, abs(p[i] * p[i] + p[j] * p[j] - c))
        if r > worst:
            worst = r
            arg = _flat_assignment(g, flat)
    return _report(check_id, worst, arg, tol, len(g.points))


def check_torus_membership(g: SampleGrid, frame: str, tol: float, check_id: str = "torus-membership") -> CheckReport:
    """Clifford torus membership in the standard or 45-degree rotated frame.

    standard:  |x^2 + z^2 - 1/2| and |y^2 + w^2 - 1/2|
    rotated45: the same for p=(x+y)/sqrt2, q=(z+w)/sqrt2 and r=(x-y)/sqrt2,
               s=(z-w)/sqrt2.
    """
    if frame == "standard":
        return check_torus_radii(g, ((0, 2), (1, 3)), (0.5, 0.5), tol, check_id)
    if frame != "rotated45":
        raise ValueError(f"unknown frame {frame!r}")
    sq = math.sqrt(2.0)
    worst = -1.0
    arg: dict = {}
    for flat, (x, y, z, w) in enumerate(g.points):
        p = (x + y) / sq
        q = (z + w) / sq
        r_ = (x - y) / sq
        s = (z - w) / sq
        res = max(abs(p * p + q * q - 0.5), abs(r_ * r_ + s * s - 0.5))
        if res > worst:
            worst = res
            arg = _flat_assignment(g, flat)
    return _report(check_id, worst, arg, tol, len(g.points))


def check_projection_residual(
    g: SampleGrid,
    plane: str,
    residual_expr: Expr,
    tol: float,
    check_id: str = "projection-residual",
) -> CheckReport:
    """Project onto the given axis plane, then evaluate the residual over the
    image coordinates (named by their axis letters)."""
    mesh = project_grid(g, "ortho", plane=plane)
    names = list(plane)
    fn = compile_exprs([residual_expr], names)
    worst = -1.0
    arg: dict = {}
    for flat, v in enumerate(mesh.vertices):
        r = abs(fn(*(v[k] for k in range(len(names))))[0])
        if r > worst:
            worst = r
            arg = _flat_assignment(g, flat)
    return _report(check_id, worst, arg, tol, len(g.points))


def check_ruling(g: SampleGrid, along_param: str, tol: float, check_id: str = "ruling") -> CheckReport:
    """Collinearity of every lattice line that varies along_param.

    Residual is the largest 4-D distance from a line sample to the straight
    line through its first and last points.
    """
    axis = _axis_of(g, along_param)
    worst = -1.0
    arg: dict = {}
    samples = 0
    for fixed in _other_indices(g, axis):
        line = g.lattice_line(axis, fixed)
        first, last = line[0], line[-1]
        d = last - first
        dn = float(np.sqrt((d * d).sum()))
        if dn <= 1e-12:
            raise DegenerateLineError(f"line endpoints coincide at fixed index {fixed}")
        d = d / dn
        rel = line - first
        proj = rel @ d
        perp = rel - np.outer(proj, d)
        dist = np.sqrt((perp * perp).sum(axis=1))
        samples += len(line)
        k = int(np.argmax(dist))
        r = float(dist[k])
        if r > worst:
            worst = r
            arg = _line_assignment(g, axis, fixed, k)
    return _report(check_id, worst, arg, tol, samples)


def check_circle_family(
    g: SampleGrid,
    along_param: str,
    tol: float,
    check_id: str = "circle-family",
    closed_tol: float = 1e-9,
) -> CheckReport:
    """Each closed lattice line along along_param must be a circle in R^4:
    samples equidistant from their mean and coplanar (third singular value of
    the centered points below tolerance)."""
    axis = _axis_of(g, along_param)
    worst = -1.0
    arg: dict = {}
    samples = 0
    for fixed in _other_indices(g, axis):
        line = g.lattice_line(axis, fixed)
        gap = float(np.sqrt(((line[0] - line[-1]) ** 2).sum()))
        if gap > closed_tol:
            raise NotClosedError(f"line at fixed index {fixed} is not closed (gap {gap!r})")
        pts = line[:-1]  # drop duplicated endpoint
        center = pts.mean(axis=0)
        centered = pts - center
        radii = np.sqrt((centered * centered).sum(axis=1))
        radial = np.abs(radii - radii.mean())
        svals = np.linalg.svd(centered, compute_uv=False)
        planar = float(svals[2])
        samples += len(pts)
        k = int(np.argmax(radial))
        r = max(float(radial[k]), planar)
        if r > worst:
            worst = r
            arg = _line_assignment(g, axis, fixed, k)
    return _report(check_id, worst, arg, tol, samples)


def check_open_curves(
    g: SampleGrid,
    along_param: str,
    min_gap: float,
    check_id: str = "open-curves",
) -> CheckReport:
    """Every lattice line along along_param must stay open: first/last points
    at least min_gap apart.  Residual is the worst shortfall, tolerance 0."""
    axis = _axis_of(g, along_param)
    worst = -1.0
    arg: dict = {}
    samples = 0
    for fixed in _other_indices(g, axis):
        line = g.lattice_line(axis, fixed)
        gap = float(np.sqrt(((line[0] - line[-1]) ** 2).sum()))
        shortfall = max(0.0, min_gap - gap)
        samples += len(line)
        if shortfall > worst:
            worst = shortfall
            arg = _line_assignment(g, axis, fixed, 0)
    return _report(check_id, worst, arg, 0.0, samples)


# ---------------------------------------------------------------------------
# lattice helpers

def _flat_assignment(g: SampleGrid, flat: int) -> dict[str, float]:
    idx = []
    for r in reversed(g.resolutions):
        idx.append(flat % r)
        flat //= r
    return g.assignment_at(tuple(reversed(idx)))


def _axis_of(g: SampleGrid, param: str) -> int:
    try:
        return g.param_names.index(param)
    except ValueError:
        raise ValueError(f"{param!r} is not a parameter of this grid") from None


def _other_indices(g: SampleGrid, axis: int):
    import itertools

    ranges = [range(r) for k, r in enumerate(g.resolutions) if k != axis]
    yield from itertools.product(*ranges)


def _line_assignment(g: SampleGrid, axis: int, fixed: tuple[int, ...], k: int) -> dict[str, float]:
    idx = list(fixed[:axis]) + [k] + list(fixed[axis:])
    return g.assignment_at(tuple(idx))


# ---------------------------------------------------------------------------
# registry binding check ids to gallery entries

@dataclass(frozen=True)
class RegisteredCheck:
    check_id: str
    entry_id: str
    description: str
    expect_pass: bool
    runner: Callable[[], CheckReport]
    negative_min_residual: float = 0.0


@dataclass(frozen=True)
class CheckOutcome:
    check: RegisteredCheck
    report: CheckReport

    @property
    def as_expected(self) -> bool:
        if self.check.expect_pass:
            return self.report.passed
        ok = not self.report.passed
        if self.check.negative_min_residual > 0.0:
            ok = ok and self.report.max_residual > self.check.negative_min_residual
        return ok

    def to_json(self) -> dict:
        doc = self.report.to_json()
        doc["entry"] = self.check.entry_id
        doc["expectedPass"] = self.check.expect_pass
        doc["asExpected"] = self.as_expected
        return doc


@lru_cache(maxsize=None)
def _scene(entry_id: str):
    return gallery.scene(entry_id)


@lru_cache(maxsize=None)
def _grid(entry_id: str, set_name: str, res: tuple) -> SampleGrid:
    return sample(_scene(entry_id).sets[set_name], res, source_ref=set_name)


def _expr_norm1() -> Expr:
    x, y, z, w = ParamRef("x"), ParamRef("y"), ParamRef("z"), ParamRef("w")
    return Sub(Add(Add(Add(Mul(x, x), Mul(y, y)), Mul(z, z)), Mul(w, w)), Const(1.0))


def _expr_cone() -> Expr:
    x, y, z, w = ParamRef("x"), ParamRef("y"), ParamRef("z"), ParamRef("w")
    return Add(Mul(x, y), Mul(z, w))


# -- clifford-sum ------------------------------------------------------

def _cs_norm1() -> CheckReport:
    return check_implicit(_grid("clifford-sum", "c", (64, 64)), _expr_norm1(), TOL_DIRECT, "cs-norm1")


def _cs_torus_standard() -> CheckReport:
    return check_torus_membership(_grid("clifford-sum", "c", (64, 64)), "standard", TOL_DIRECT, "cs-torus-standard")


def _cs_ortho_xz_circle() -> CheckReport:
    x, z = ParamRef("x"), ParamRef("z")
    residual = Sub(Add(Mul(x, x), Mul(z, z)), Const(0.5))
    return check_projection_residual(
        _grid("clifford-sum", "c", (64, 64)), "xz", residual, TOL_DIRECT, "cs-ortho-xz-circle"
    )


# -- clifford-prod -----------------------------------------------------

def _cp_norm1() -> CheckReport:
    return check_implicit(_grid("clifford-prod", "d", (64, 64)), _expr_norm1(), TOL_DIRECT, "cp-norm1")


def _cp_circles(along: str, check_id: str) -> CheckReport:
    return check_circle_family(_grid("clifford-prod", "d", (64, 64)), along, TOL_DERIVED, check_id)


# -- clifford-rotation -------------------------------------------------

_TORUS_ALIGN_ROTOR = Rotor4(Quaternion(0.5, 0.5, 0.5, 0.5), Quaternion(1, 0, 0, 0))


def _rotation_reparam(with_offset: bool) -> dict[str, Expr]:
    u1, u2 = ParamRef("u1"), ParamRef("u2")
    v1 = Div(Add(u1, u2), Const(2.0))
    v2 = Div(Sub(u1, u2), Const(2.0))
    if with_offset:
        v2 = Add(v2, Const(math.pi / 4.0))
    return {"v1": v1, "v2": v2}


def _cr_rotation(check_id: str, with_offset: bool) -> CheckReport:
    sc = _scene("clifford-rotation")
    g = _grid("clifford-rotation", "c", (64, 64))
    return check_pointwise_map(g, sc.sets["d"], _rotation_reparam(with_offset), _TORUS_ALIGN_ROTOR, TOL_DIRECT, check_id)


# -- quad-cone ---------------------------------------------------------

def _qc_boundary_faces(res: int = 64):
    return boundary_grids(_scene("quad-cone").sets["c"], (res, res, res))


def _qc_implicit() -> CheckReport:
    reports = [
        check_implicit(f.grid, _expr_cone(), TOL_DIRECT, "qc-implicit") for f in _qc_boundary_faces()
    ]
    return merge_reports("qc-implicit", reports, TOL_DIRECT)


def _qc_fixed_u_planar() -> CheckReport:
    reports = []
    for f in _qc_boundary_faces():
        if f.fixed_param != "u":
            continue
        pts = f.grid.points
        centered = pts - pts.mean(axis=0)
        svals = np.linalg.svd(centered, compute_uv=False)
        residual = float(svals[2])
        reports.append(_report("qc-fixed-u-planar", residual, {"u": f.fixed_value}, TOL_DERIVED, len(pts)))
    return merge_reports("qc-fixed-u-planar", reports, TOL_DERIVED)


def _qc_fixed_v_bilinear() -> CheckReport:
    reports = []
    for f in _qc_boundary_faces():
        if f.fixed_param == "u":
            continue
        arr = f.grid.points.reshape(f.grid.resolutions + (4,))
        d2a = arr[2:, :, :] - 2 * arr[1:-1, :, :] + arr[:-2, :, :]
        d2b = arr[:, 2:, :] - 2 * arr[:, 1:-1, :] + arr[:, :-2, :]
        residual = max(float(np.abs(d2a).max()), float(np.abs(d2b).max()))
        reports.append(
            _report("qc-fixed-v-bilinear", residual, {f.fixed_param: f.fixed_value}, TOL_DERIVED, arr.size // 4)
        )
    return merge_reports("qc-fixed-v-bilinear", reports, TOL_DERIVED)


def _qc_marked_point_rulings() -> CheckReport:
    """The marked sample (u, v1, v2) = (-0.6, 0.4, 0.5) lies on the three
    straight lattice rulings through its lattice node (21 samples per axis
    puts the marked values exactly on the lattice)."""
    from m4d.paramset import eval_point

    sc = _scene("quad-cone")
    c = sc.sets["c"]
    g = _grid("quad-cone", "c", (21, 21, 21))
    marked = {"u": -0.6, "v1": 0.4, "v2": 0.5}
    node = (4, 14, 15)
    point = np.array(eval_point(c, marked).components())
    worst = -1.0
    samples = 0
    for axis in range(3):
        fixed = tuple(node[k] for k in range(3) if k != axis)
        line = g.lattice_line(axis, fixed)
        first, last = line[0], line[-1]
        d = last - first
        d = d / float(np.sqrt((d * d).sum()))
        rel = line - first
        perp = rel - np.outer(rel @ d, d)
        line_residual = float(np.sqrt((perp * perp).sum(axis=1)).max())
        relp = point - first
        point_residual = float(np.sqrt(((relp - (relp @ d) * d) ** 2).sum()))
        worst = max(worst, line_residual, point_residual)
        samples += len(line) + 1
    return _report("qc-marked-point-rulings", worst, marked, TOL_DERIVED, samples)


# -- cone-sphere -------------------------------------------------------

def _csp_grid() -> SampleGrid:
    return _grid("cone-sphere", "torus", (64, 64))


def _csp_implicit() -> CheckReport:
    return check_implicit(_csp_grid(), _expr_cone(), TOL_DIRECT, "csp-implicit")


def _csp_norm1() -> CheckReport:
    return check_implicit(_csp_grid(), _expr_norm1(), TOL_DIRECT, "csp-norm1")


def _csp_torus_rot45() -> CheckReport:
    return check_torus_membership(_csp_grid(), "rotated45", TOL_DERIVED, "csp-torus-rot45")


# -- hopf-3sphere ------------------------------------------------------

def _hs_norm1() -> CheckReport:
    return check_implicit(_grid("hopf-3sphere", "c", (64, 64, 64)), _expr_norm1(), TOL_DIRECT, "hs-norm1")


def _hs_slices_torus() -> CheckReport:
    sc = _scene("hopf-3sphere")
    values = [k * math.pi / 8.0 for k in range(9)]
    slices = iso_slices(sc.sets["c"], "v1", values, (64, 64))
    reports = []
    for v1, sl in zip(values, slices):
        r1 = math.cos(v1) ** 2
        r2 = math.sin(v1) ** 2
        rep = check_torus_radii(sl, ((0, 1), (2, 3)), (r1, r2), TOL_DIRECT, "hs-slices-torus")
        arg = dict(rep.argmax_assignment)
        arg["v1"] = v1
        reports.append(_report("hs-slices-torus", rep.max_residual, arg, TOL_DIRECT, rep.samples_tested))
    return merge_reports("hs-slices-torus", reports, TOL_DIRECT)


def _hs_standard_negative() -> CheckReport:
    # the full 3-sphere is not a torus; e.g. (1,0,0,0) gives x^2+z^2 = 1
    return check_torus_membership(
        _grid("hopf-3sphere", "c", (33, 33, 33)), "standard", TOL_DIRECT, "hs-standard-negative"
    )


# -- pluecker ----------------------------------------------------------

def _pl_grid() -> SampleGrid:
    return _grid("pluecker", "c", (33, 257))


def _pl_conoid_residual() -> CheckReport:
    x, y, z = ParamRef("x"), ParamRef("y"), ParamRef("z")
    residual = Sub(Mul(Mul(x, x), Sub(Const(1.0), Mul(y, y))), Mul(Mul(z, z), Mul(y, y)))
    return check_projection_residual(_pl_grid(), "xyz", residual, TOL_DERIVED, "pl-conoid-residual")


def _pl_rulings_u() -> CheckReport:
    return check_ruling(_pl_grid(), "u", TOL_DERIVED, "pl-rulings-u")


def _pl_circles_v() -> CheckReport:
    return check_circle_family(_pl_grid(), "v", TOL_DERIVED, "pl-circles-v")


_PL_ARC_SRC = """\
set c1(u in -1..1) = (1, -u, 0, 0)
set c2(v in -pi..0) = (0, cos(v), 0, sin(v))
set c = c1 (*) c2
"""


def _pl_rulings_v_negative() -> CheckReport:
    # circular arcs (open, so the chord line exists) are nowhere straight
    arc = from_program(parse_program(_PL_ARC_SRC)).sets["c"]
    g = sample(arc, (9, 65))
    return check_ruling(g, "v", TOL_DERIVED, "pl-rulings-v-negative")


# -- line-helix / butterfly ---------------------------------------------

def _lh_rulings_u() -> CheckReport:
    return check_ruling(_grid("line-helix", "d", (33, 257)), "u", TOL_DERIVED, "lh-rulings-u")


def _lh_open_v() -> CheckReport:
    # first coordinates of the v-ends differ by 2t = 4; demand a gap >= 1
    return check_open_curves(_grid("line-helix", "d", (33, 257)), "v", 1.0, "lh-open-v")


def _bf_rulings_u() -> CheckReport:
    return check_ruling(_grid("butterfly", "d", (33, 257)), "u", TOL_DERIVED, "bf-rulings-u")


# -- cube ---------------------------------------------------------------

_CUBE_EDGE_RES = 16


def _cube_meshes():
    sc = _scene("cube")
    out = []
    for name in sc.sets:
        g = _grid("cube", name, (_CUBE_EDGE_RES,))
        mz, mw = project_grid(g, "dop")
        out.append((name, mz, mw))
    return out


def _cube_shared_shadow() -> CheckReport:
    worst = -1.0
    samples = 0
    for name, mz, mw in _cube_meshes():
        diff = np.abs(mz.vertices[:, :2] - mw.vertices[:, :2]).max()
        worst = max(worst, float(diff))
        samples += len(mz.vertices)
    return _report("cube-dop-shared-shadow", worst, {}, 0.0, samples)


def _cube_parallelism() -> CheckReport:
    groups: dict[str, list] = {"ex": [], "ey": [], "ez": []}
    for name, mz, mw in _cube_meshes():
        groups[name[:2]].append((mz, mw))
    worst = -1.0
    samples = 0
    for members in groups.values():
        for img in (0, 1):
            dirs = []
            for meshes in members:
                v = meshes[img].vertices
                d = v[-1] - v[0]
                length = float(np.sqrt((d * d).sum()))
                if length <= 1e-12:
                    continue  # edge projects to a point; trivially parallel
                dirs.append(d / length)
            for d in dirs[1:]:
                cross = np.cross(dirs[0], d)
                worst = max(worst, float(np.abs(cross).max()))
                samples += 1
    return _report("cube-dop-parallelism", max(worst, 0.0), {}, TOL_DERIVED, samples)


def _cube_boxes() -> CheckReport:
    """Both DOP images are axis-aligned box wireframes over the same (x, y)
    extent: along each edge image, the non-varying coordinates stay put, and
    the two images' (x, y) bounding boxes coincide."""
    worst = 0.0
    samples = 0
    boxes = [[], []]
    for name, mz, mw in _cube_meshes():
        for img, mesh in enumerate((mz, mw)):
            v = mesh.vertices
            d = v[-1] - v[0]
            for k in range(3):
                if abs(d[k]) <= 1e-12:
                    worst = max(worst, float(np.abs(v[:, k] - v[0, k]).max()))
            boxes[img].append(v)
            samples += len(v)
    for img in (0, 1):
        boxes[img] = np.concatenate(boxes[img])
    bz = boxes[0][:, :2]
    bw = boxes[1][:, :2]
    worst = max(
        worst,
        float(np.abs(bz.min(axis=0) - bw.min(axis=0)).max()),
        float(np.abs(bz.max(axis=0) - bw.max(axis=0)).max()),
    )
    return _report("cube-dop-boxes", worst, {}, TOL_DIRECT, samples)


# ---------------------------------------------------------------------------

def _registry() -> dict[str, RegisteredCheck]:
    checks = [
        RegisteredCheck("cube-dop-shared-shadow", "cube", "both DOP images share their (x, y) shadow exactly", True, _cube_shared_shadow),
        RegisteredCheck("cube-dop-parallelism", "cube", "DOP preserves parallel edge families", True, _cube_parallelism),
        RegisteredCheck("cube-dop-boxes", "cube", "DOP images are axis-aligned boxes over one shadow", True, _cube_boxes),
        RegisteredCheck("cs-norm1", "clifford-sum", "sum torus lies on the unit 3-sphere", True, _cs_norm1),
        RegisteredCheck("cs-torus-standard", "clifford-sum", "x^2+z^2 = y^2+w^2 = 1/2 on the sum torus", True, _cs_torus_standard),
        RegisteredCheck("cs-ortho-xz-circle", "clifford-sum", "(x, z) shadow is the circle of radius sqrt(2)/2", True, _cs_ortho_xz_circle),
        RegisteredCheck("cp-norm1", "clifford-prod", "product torus lies on the unit 3-sphere", True, _cp_norm1),
        RegisteredCheck("cp-circles-u", "clifford-prod", "iso-u curves are circles", True, lambda: _cp_circles("u", "cp-circles-u")),
        RegisteredCheck("cp-circles-v", "clifford-prod", "iso-v curves are circles", True, lambda: _cp_circles("v", "cp-circles-v")),
        RegisteredCheck("cr-rotation-identity", "clifford-rotation", "left rotor (1/2,1/2,1/2,1/2) with the half-sum reparametrization maps d onto c", True, lambda: _cr_rotation("cr-rotation-identity", True)),
        RegisteredCheck("cr-rotation-negative", "clifford-rotation", "dropping the pi/4 offset breaks the rotation identity", False, lambda: _cr_rotation("cr-rotation-negative", False), negative_min_residual=0.1),
        RegisteredCheck("qc-implicit", "quad-cone", "xy + zw = 0 on the cone boundary", True, _qc_implicit),
        RegisteredCheck("qc-fixed-u-planar", "quad-cone", "fixed-u boundary faces are planar", True, _qc_fixed_u_planar),
        RegisteredCheck("qc-fixed-v-bilinear", "quad-cone", "fixed-v1/v2 faces are hyperbolic paraboloid patches", True, _qc_fixed_v_bilinear),
        RegisteredCheck("qc-marked-point-rulings", "quad-cone", "marked sample lies on three straight lattice rulings", True, _qc_marked_point_rulings),
        RegisteredCheck("csp-implicit", "cone-sphere", "intersection stays on the cone", True, _csp_implicit),
        RegisteredCheck("csp-norm1", "cone-sphere", "intersection stays on the unit 3-sphere", True, _csp_norm1),
        RegisteredCheck("csp-torus-rot45", "cone-sphere", "intersection is a Clifford torus in the rotated frame", True, _csp_torus_rot45),
        RegisteredCheck("hs-norm1", "hopf-3sphere", "Hopf parametrization lies on the unit 3-sphere", True, _hs_norm1),
        RegisteredCheck("hs-slices-torus", "hopf-3sphere", "v1 slices are tori with radii |cos v1|, |sin v1|", True, _hs_slices_torus),
        RegisteredCheck("hs-standard-negative", "hopf-3sphere", "the full 3-sphere is not a torus", False, _hs_standard_negative, negative_min_residual=0.4),
        RegisteredCheck("pl-conoid-residual", "pluecker", "w = 0 shadow satisfies the conoid equation", True, _pl_conoid_residual),
        RegisteredCheck("pl-rulings-u", "pluecker", "iso-u lattice lines are straight", True, _pl_rulings_u),
        RegisteredCheck("pl-circles-v", "pluecker", "iso-v lattice lines are circles", True, _pl_circles_v),
        RegisteredCheck("pl-rulings-v-negative", "pluecker", "circle arcs must fail the ruling check", False, _pl_rulings_v_negative, negative_min_residual=0.1),
        RegisteredCheck("lh-rulings-u", "line-helix", "iso-u lattice lines are straight", True, _lh_rulings_u),
        RegisteredCheck("lh-open-v", "line-helix", "helix curves do not close", True, _lh_open_v),
        RegisteredCheck("bf-rulings-u", "butterfly", "iso-u lattice lines are straight", True, _bf_rulings_u),
    ]
    return {c.check_id: c for c in checks}


REGISTRY = _registry()


def run_check(check_id: str) -> CheckOutcome:
    check = REGISTRY[check_id]
    return CheckOutcome(check, check.runner())


def run_entry(entry_id: str) -> list[CheckOutcome]:
    entry = gallery.get(entry_id)
    return [run_check(cid) for cid in entry.verification_ids]


def run_all() -> list[CheckOutcome]:
    out = []
    for entry_id in gallery.entry_ids():
        out.extend(run_entry(entry_id))
    return out
