"""Lattice sampling of parametric sets and conversion to renderable meshes.

Sampling evaluates the compiled coordinate expressions point by point in
parameter-major (row-major) order; the k-th sample of a parameter equals
lo + k*(hi-lo)/(res-1), with the final sample exactly hi.  Evaluation is
sequential and deterministic: the same set and resolutions always produce the
same bits.

Projection keeps the lattice topology: every vertex of the source grid has an
image vertex, and quad/segment indices are identical across projection modes
except that faces touching perspective-clipped vertices are dropped.  Clipped
vertices (0 < |a2| <= epsilon) are flagged in the "clipped" attribute and
their position falls back to the bounded (a0, a1, a3) image; they are never
extrapolated and never referenced by retained faces.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from m4d.expr import DomainError, compile_exprs
from m4d.paramset import ParamSet, ZeroNormAtSampleError, eval_point, freeze_params
from m4d.projection import PerspectiveConfig, Rotor4, _AXIS_INDEX
from m4d.quat import ZERO_TOLERANCE, Quaternion

DEFAULT_SURFACE_RES = 64
DEFAULT_CURVE_RES = 256
CLOSED_CURVE_TOL = 1e-9


class DimensionMismatchError(ValueError):
    pass


class UnknownParamError(ValueError):
    pass


class GridEvalError(ValueError):
    """Evaluation failure during sampling, with the lattice index attached."""

    def __init__(self, index: tuple[int, ...], assignment: dict[str, float], cause: Exception):
        super().__init__(f"evaluation failed at lattice index {index} ({assignment!r}): {cause}")
        self.index = index
        self.assignment = assignment
        self.cause = cause


@dataclass(frozen=True)
class SampleGrid:
    param_names: tuple[str, ...]
    resolutions: tuple[int, ...]
    axis_values: tuple[tuple[float, ...], ...]
    points: np.ndarray  # (N, 4) float64, row-major over resolutions
    source_ref: str = ""

    def __post_init__(self):
        n = 1
        for r in self.resolutions:
            n *= r
        if self.points.shape != (n, 4):
            raise ValueError(f"lattice size {self.points.shape} does not match resolutions {self.resolutions}")

    @property
    def dim(self) -> int:
        return len(self.resolutions)

    def flat_index(self, idx: tuple[int, ...]) -> int:
        flat = 0
        for i, r in zip(idx, self.resolutions):
            flat = flat * r + i
        return flat

    def point(self, idx: tuple[int, ...]) -> Quaternion:
        return Quaternion(*self.points[self.flat_index(idx)])

    def lattice_line(self, axis: int, fixed: tuple[int, ...]) -> np.ndarray:
        """Points along one axis with the other indices fixed (in axis order)."""
        shape = self.resolutions + (4,)
        arr = self.points.reshape(shape)
        sel: list = list(fixed[:axis]) + [slice(None)] + list(fixed[axis:])
        return arr[tuple(sel)]

    def assignment_at(self, idx: tuple[int, ...]) -> dict[str, float]:
        return {n: self.axis_values[k][idx[k]] for k, n in enumerate(self.param_names)}


def axis_samples(lo: float, hi: float, res: int) -> tuple[float, ...]:
    step = (hi - lo) / (res - 1)
    return tuple(hi if i == res - 1 else lo + i * step for i in range(res))


def sample(s: ParamSet, resolutions, source_ref: str = "") -> SampleGrid:
    """Evaluate s over the rectangular lattice given by resolutions."""
    resolutions = tuple(int(r) for r in resolutions)
    if len(resolutions) != len(s.params):
        raise DimensionMismatchError(
            f"{len(s.params)} parameters but {len(resolutions)} resolutions"
        )
    if any(r < 2 for r in resolutions):
        raise ValueError(f"resolutions must be >= 2, got {resolutions}")
    names = s.param_names()
    axes = tuple(axis_samples(p.lo, p.hi, r) for p, r in zip(s.params, resolutions))
    coord_fn = compile_exprs(list(s.coords), names, s.constants)
    guard_fn = compile_exprs(list(s.guards), names, s.constants) if s.guards else None
    tol2 = ZERO_TOLERANCE * ZERO_TOLERANCE
    n = 1
    for r in resolutions:
        n *= r
    pts = np.empty((n, 4), dtype=np.float64)
    if not resolutions:
        pts[0] = eval_point(s, {}).components()
        return SampleGrid((), (), (), pts, source_ref)
    flat = 0
    for idx in itertools.product(*(range(r) for r in resolutions)):
        values = tuple(axes[k][i] for k, i in enumerate(idx))
        try:
            if guard_fn is not None:
                for g in guard_fn(*values):
                    if g <= tol2:
                        raise ZeroNormAtSampleError(dict(zip(names, values)))
            pts[flat] = coord_fn(*values)
        except ZeroNormAtSampleError:
            raise
        except DomainError as exc:
            raise GridEvalError(idx, dict(zip(names, values)), exc) from exc
        flat += 1
    return SampleGrid(tuple(names), resolutions, axes, pts, source_ref)


def iso_slices(s: ParamSet, param: str, values, resolutions) -> list[SampleGrid]:
    """Sample the (dim-1)-dimensional slices with param frozen at each value."""
    if param not in s.param_names():
        raise UnknownParamError(f"{param!r} is not a parameter of this set")
    out = []
    for v in values:
        frozen = freeze_params(s, {param: float(v)})
        out.append(sample(frozen, resolutions, source_ref=f"{param}={v!r}"))
    return out


# ---------------------------------------------------------------------------
# topology

@dataclass(frozen=True)
class PolylineTopo:
    indices: tuple[int, ...]
    closed: bool

    def segments(self) -> tuple[tuple[int, int], ...]:
        segs = list(zip(self.indices, self.indices[1:]))
        if self.closed:
            segs.append((self.indices[-1], self.indices[0]))
        return tuple(segs)


@dataclass(frozen=True)
class QuadTopo:
    faces: tuple[tuple[int, int, int, int], ...]


def to_polyline(g: SampleGrid) -> PolylineTopo:
    if g.dim != 1:
        raise DimensionMismatchError(f"polyline needs a 1-dimensional grid, got {g.dim}")
    first = g.points[0]
    last = g.points[-1]
    closed = float(np.sqrt(((first - last) ** 2).sum())) <= CLOSED_CURVE_TOL
    return PolylineTopo(tuple(range(g.resolutions[0])), closed)


def to_quadmesh(g: SampleGrid) -> QuadTopo:
    if g.dim != 2:
        raise DimensionMismatchError(f"quad mesh needs a 2-dimensional grid, got {g.dim}")
    m, n = g.resolutions
    faces = []
    for i in range(m - 1):
        for j in range(n - 1):
            faces.append((i * n + j, i * n + j + 1, (i + 1) * n + j + 1, (i + 1) * n + j))
    return QuadTopo(tuple(faces))


@dataclass(frozen=True)
class BoundaryFace:
    fixed_param: str
    fixed_value: float
    grid: SampleGrid


def boundary_mesh(g: SampleGrid) -> list[BoundaryFace]:
    """The six parameter-box faces of a 3-dimensional grid as 2-dim grids."""
    if g.dim != 3:
        raise DimensionMismatchError(f"boundary mesh needs a 3-dimensional grid, got {g.dim}")
    arr = g.points.reshape(g.resolutions + (4,))
    faces = []
    for axis in range(3):
        rest = [k for k in range(3) if k != axis]
        for side in (0, g.resolutions[axis] - 1):
            sel: list = [slice(None)] * 3
            sel[axis] = side
            sub = np.ascontiguousarray(arr[tuple(sel)].reshape(-1, 4))
            sub_grid = SampleGrid(
                tuple(g.param_names[k] for k in rest),
                tuple(g.resolutions[k] for k in rest),
                tuple(g.axis_values[k] for k in rest),
                sub,
                source_ref=g.source_ref,
            )
            faces.append(BoundaryFace(g.param_names[axis], g.axis_values[axis][side], sub_grid))
    return faces


def boundary_grids(s: ParamSet, resolutions) -> list[BoundaryFace]:
    """Boundary faces sampled directly (no interior volume evaluation)."""
    resolutions = tuple(int(r) for r in resolutions)
    if len(s.params) != 3 or len(resolutions) != 3:
        raise DimensionMismatchError("boundary sampling needs a 3-parameter set")
    faces = []
    for axis, p in enumerate(s.params):
        rest_res = tuple(resolutions[k] for k in range(3) if k != axis)
        for value in (p.lo, p.hi):
            frozen = freeze_params(s, {p.name: value})
            faces.append(BoundaryFace(p.name, value, sample(frozen, rest_res)))
    return faces


# ---------------------------------------------------------------------------
# projection of grids

@dataclass(frozen=True)
class Mesh3:
    vertices: np.ndarray  # (N, 3)
    topology: PolylineTopo | QuadTopo
    attributes: dict[str, np.ndarray] = field(default_factory=dict)
    # quad faces with (numerically) zero projected area; kept in the face
    # list, so DOP/perspective/ortho meshes of one grid stay index-compatible
    degenerate_faces: tuple[int, ...] = ()

    def active_segments(self) -> tuple[tuple[int, int], ...]:
        if not isinstance(self.topology, PolylineTopo):
            raise DimensionMismatchError("mesh has no polyline topology")
        clipped = self.attributes.get("clipped")
        segs = self.topology.segments()
        if clipped is None:
            return segs
        return tuple((i, j) for i, j in segs if not clipped[i] and not clipped[j])

    def active_faces(self) -> tuple[tuple[int, int, int, int], ...]:
        if not isinstance(self.topology, QuadTopo):
            raise DimensionMismatchError("mesh has no quad topology")
        clipped = self.attributes.get("clipped")
        if clipped is None:
            return self.topology.faces
        return tuple(f for f in self.topology.faces if not any(clipped[i] for i in f))


def _np_rotate(points: np.ndarray, rotor: Rotor4) -> np.ndarray:
    """Vectorized left*p*right; elementwise ops match quat.mul bit for bit."""
    l0, l1, l2, l3 = rotor.left.components()
    p0, p1, p2, p3 = points[:, 0], points[:, 1], points[:, 2], points[:, 3]
    t0 = l0 * p0 - l1 * p1 - l2 * p2 - l3 * p3
    t1 = l0 * p1 + l1 * p0 + l2 * p3 - l3 * p2
    t2 = l0 * p2 - l1 * p3 + l2 * p0 + l3 * p1
    t3 = l0 * p3 + l1 * p2 - l2 * p1 + l3 * p0
    r0, r1, r2, r3 = rotor.right.components()
    out = np.empty_like(points)
    out[:, 0] = t0 * r0 - t1 * r1 - t2 * r2 - t3 * r3
    out[:, 1] = t0 * r1 + t1 * r0 + t2 * r3 - t3 * r2
    out[:, 2] = t0 * r2 - t1 * r3 + t2 * r0 + t3 * r1
    out[:, 3] = t0 * r3 + t1 * r2 - t2 * r1 + t3 * r0
    return out


def _topology_for(g: SampleGrid):
    if g.dim == 1:
        return to_polyline(g)
    if g.dim == 2:
        return to_quadmesh(g)
    raise DimensionMismatchError(
        f"project_grid handles 1- and 2-dimensional grids, got {g.dim}; "
        "project boundary_mesh faces for 3-dimensional sets"
    )


def _degenerate_faces(vertices: np.ndarray, topo, tol: float = 1e-14) -> tuple[int, ...]:
    if not isinstance(topo, QuadTopo) or not topo.faces:
        return ()
    faces = np.asarray(topo.faces)
    a = vertices[faces[:, 0]]
    b = vertices[faces[:, 1]]
    c = vertices[faces[:, 2]]
    d = vertices[faces[:, 3]]
    # quad area = half the cross product of the diagonals
    cross = np.cross(c - a, d - b)
    area = 0.5 * np.sqrt((cross * cross).sum(axis=1))
    return tuple(int(i) for i in np.nonzero(area <= tol)[0])


def _base_attributes(g: SampleGrid) -> dict[str, np.ndarray]:
    attrs: dict[str, np.ndarray] = {}
    if not g.dim:
        return attrs
    grids = np.meshgrid(*(np.asarray(v) for v in g.axis_values), indexing="ij")
    for name, mesh in zip(g.param_names, grids):
        attrs[name] = mesh.reshape(-1)
    return attrs


def project_grid(
    g: SampleGrid,
    mode: str,
    cfg: PerspectiveConfig | None = None,
    plane: str = "xy",
    rotor: Rotor4 | None = None,
):
    """Project a sampled grid; returns a Mesh3, or a (z, w) pair for dop.

    mode is "dop", "perspective", or "ortho"; ortho takes a plane of two or
    three axis letters (three letters drop the remaining coordinate, e.g.
    "xyz" is the projection onto the hyperplane w = 0).
    """
    if g.points.size == 0:
        raise ValueError("empty grid")
    pts = _np_rotate(g.points, rotor) if rotor is not None else g.points
    topo = _topology_for(g)
    attrs = _base_attributes(g)
    x, y, z, w = pts[:, 0], pts[:, 1], pts[:, 2], pts[:, 3]
    if mode == "dop":
        vz = np.stack([x, y, -z], axis=1)
        vw = np.stack([x, y, w], axis=1)
        az = dict(attrs)
        aw = dict(attrs)
        az["clipped"] = np.zeros(len(pts), dtype=np.float64)
        aw["clipped"] = np.zeros(len(pts), dtype=np.float64)
        return (
            Mesh3(vz, topo, az, _degenerate_faces(vz, topo)),
            Mesh3(vw, topo, aw, _degenerate_faces(vw, topo)),
        )
    if mode == "perspective":
        cfg = cfg or PerspectiveConfig()
        clipped = (np.abs(z) <= cfg.epsilon) & (z != 0.0)
        safe = np.where((z == 0.0) | clipped, 1.0, z)
        v = np.stack([cfg.d * x / safe, cfg.d * y / safe, cfg.d * w / safe], axis=1)
        fallback = (z == 0.0) | clipped
        v[fallback, 0] = x[fallback]
        v[fallback, 1] = y[fallback]
        v[fallback, 2] = w[fallback]
        attrs["clipped"] = clipped.astype(np.float64)
        return Mesh3(v, topo, attrs, _degenerate_faces(v, topo))
    if mode == "ortho":
        if not (2 <= len(plane) <= 3) or any(a not in _AXIS_INDEX for a in plane):
            raise ValueError(f"bad ortho plane {plane!r}")
        cols = [pts[:, _AXIS_INDEX[a]] for a in plane]
        while len(cols) < 3:
            cols.append(np.zeros(len(pts), dtype=np.float64))
        attrs["clipped"] = np.zeros(len(pts), dtype=np.float64)
        v = np.stack(cols, axis=1)
        return Mesh3(v, topo, attrs, _degenerate_faces(v, topo))
    raise ValueError(f"unknown projection mode {mode!r}")
