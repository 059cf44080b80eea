import math
import random

import numpy as np
import pytest

from m4d.dsl import parse_program
from m4d.paramset import ZeroNormAtSampleError
from m4d.projection import PerspectiveConfig, Rotor4, rotate4
from m4d.quat import Quaternion
from m4d.scene import from_program
from m4d.tessellate import (
    DimensionMismatchError,
    GridEvalError,
    Mesh3,
    SampleGrid,
    UnknownParamError,
    axis_samples,
    boundary_grids,
    boundary_mesh,
    iso_slices,
    project_grid,
    sample,
    to_polyline,
    to_quadmesh,
)


def build(src: str, name=None):
    scene = from_program(parse_program(src))
    return scene.sets[name if name else next(reversed(scene.sets))]


CIRCLE = "set d1(u in 0..2*pi) = (cos(u), sin(u), 0, 0)\n"
CONE = (
    "set c1(u in -1..1) = (1, 0, 0, u)\n"
    "set c2(v1 in -1..1, v2 in -1..1) = (0, v1, 0, v2)\n"
    "set c = c1 (*) c2\n"
)
HELIX = (
    "const t = 2\n"
    "set d2(v in -2*pi..2*pi) = (t*v/(2*pi), cos(v), 0, sin(v))\n"
)
PLUECKER = (
    "set c1(u in -1..1) = (1, -u, 0, 0)\n"
    "set c2(v in -pi..pi) = (0, cos(v), 0, sin(v))\n"
    "set c = c1 (*) c2\n"
)
HOPF = (
    "set c1(u in 0..2*pi) = (cos(u), sin(u), 0, 0)\n"
    "set c2(v1 in 0..pi, v2 in 0..2*pi) = (cos(v1), 0, sin(v1)*cos(v2), sin(v1)*sin(v2))\n"
    "set c = c1 (*) c2\n"
)


class TestSample:
    def test_circle_resolution_five(self):
        g = sample(build(CIRCLE), (5,))
        assert g.resolutions == (5,)
        want_u = (0.0, math.pi / 2, math.pi, 3 * math.pi / 2, 2 * math.pi)
        assert g.axis_values[0] == pytest.approx(want_u, abs=0)
        assert float(np.linalg.norm(g.points[0] - g.points[-1])) <= 1e-15

    def test_endpoints_bit_exact(self):
        vals = axis_samples(-1.0, 1.0, 7)
        assert vals[0] == -1.0
        assert vals[-1] == 1.0
        vals = axis_samples(0.0, 2 * math.pi, 64)
        assert vals[-1] == 2 * math.pi

    def test_cone_center_maps_to_origin(self):
        g = sample(build(CONE, "c"), (3, 3, 3))
        assert g.points.shape == (27, 4)
        center = g.point((1, 1, 1))
        assert center == Quaternion(0.0, 0.0, 0.0, 0.0)

    def test_helix_endpoint_coords(self):
        g = sample(build(HELIX, "d2"), (9,))
        t = 2.0
        assert g.points[0][0] == -t
        assert g.points[-1][0] == t

    def test_zero_dim_single_point(self):
        from m4d.paramset import constant_set

        g = sample(constant_set(Quaternion(1, 2, 3, 4)), ())
        assert g.resolutions == ()
        assert g.points.shape == (1, 4)

    def test_matches_eval_point_bitwise(self):
        s = build(HOPF, "c")
        g = sample(s, (5, 4, 6))
        from m4d.paramset import eval_point

        rng = random.Random(3)
        for _ in range(25):
            idx = tuple(rng.randrange(r) for r in g.resolutions)
            assert g.point(idx) == eval_point(s, g.assignment_at(idx))

    def test_deterministic(self):
        s = build(HOPF, "c")
        g1 = sample(s, (5, 5, 5))
        g2 = sample(s, (5, 5, 5))
        assert np.array_equal(g1.points, g2.points)

    def test_domain_error_carries_index(self):
        s = build("set a(u in -1..1) = (sqrt(u), 0, 0, 0)\n")
        with pytest.raises(GridEvalError) as ei:
            sample(s, (5,))
        assert ei.value.index == (0,)
        assert ei.value.assignment == {"u": -1.0}

    def test_zero_norm_guard_fires(self):
        src = "set a(u in -1..1) = (u, 0, 0, 0)\nset b(v in 0..1) = (1, v, 0, 0)\nset d = a (\\) b\n"
        with pytest.raises(ZeroNormAtSampleError):
            sample(build(src, "d"), (3, 3))

    def test_resolution_validation(self):
        with pytest.raises(DimensionMismatchError):
            sample(build(CIRCLE), (5, 5))
        with pytest.raises(ValueError):
            sample(build(CIRCLE), (1,))


class TestTopology:
    def test_closed_circle(self):
        topo = to_polyline(sample(build(CIRCLE), (64,)))
        assert topo.closed
        assert len(topo.segments()) == 64

    def test_helix_not_closed(self):
        topo = to_polyline(sample(build(HELIX, "d2"), (64,)))
        assert not topo.closed
        assert len(topo.segments()) == 63

    def test_quadmesh_counts(self):
        g = sample(build(PLUECKER, "c"), (5, 7))
        topo = to_quadmesh(g)
        assert len(topo.faces) == 4 * 6
        assert max(i for f in topo.faces for i in f) == 34

    def test_dimension_mismatch(self):
        g2 = sample(build(PLUECKER, "c"), (5, 7))
        with pytest.raises(DimensionMismatchError):
            to_polyline(g2)
        g1 = sample(build(CIRCLE), (5,))
        with pytest.raises(DimensionMismatchError):
            to_quadmesh(g1)
        with pytest.raises(DimensionMismatchError):
            boundary_mesh(g2)


class TestBoundary:
    def test_six_faces(self):
        g = sample(build(CONE, "c"), (9, 9, 9))
        faces = boundary_mesh(g)
        assert len(faces) == 6
        assert sorted({f.fixed_param for f in faces}) == ["u", "v1", "v2"]

    def test_fixed_u_faces_planar(self):
        g = sample(build(CONE, "c"), (9, 9, 9))
        for f in boundary_mesh(g):
            if f.fixed_param != "u":
                continue
            pts = f.grid.points
            centered = pts - pts.mean(axis=0)
            svals = np.linalg.svd(centered, compute_uv=False)
            assert svals[2] <= 1e-10

    def test_fixed_v_faces_bilinear(self):
        g = sample(build(CONE, "c"), (9, 9, 9))
        for f in boundary_mesh(g):
            if f.fixed_param == "u":
                continue
            arr = f.grid.points.reshape(f.grid.resolutions + (4,))
            d2a = arr[2:, :, :] - 2 * arr[1:-1, :, :] + arr[:-2, :, :]
            d2b = arr[:, 2:, :] - 2 * arr[:, 1:-1, :] + arr[:, :-2, :]
            assert float(np.abs(d2a).max()) <= 1e-10
            assert float(np.abs(d2b).max()) <= 1e-10

    def test_boundary_grids_match_boundary_mesh(self):
        s = build(CONE, "c")
        g = sample(s, (5, 5, 5))
        via_volume = boundary_mesh(g)
        direct = boundary_grids(s, (5, 5, 5))
        for a, b in zip(via_volume, direct):
            assert a.fixed_param == b.fixed_param
            assert a.fixed_value == b.fixed_value
            assert np.array_equal(a.grid.points, b.grid.points)


class TestIsoSlices:
    def test_hopf_slice_is_torus(self):
        s = build(HOPF, "c")
        (g,) = iso_slices(s, "v1", [math.pi / 4], (33, 33))
        x, y, z, w = g.points.T
        assert float(np.abs(x * x + y * y - 0.5).max()) <= 1e-12
        assert float(np.abs(z * z + w * w - 0.5).max()) <= 1e-12

    def test_degenerate_slice(self):
        s = build(HOPF, "c")
        (g,) = iso_slices(s, "v1", [0.0], (17, 17))
        x, y, z, w = g.points.T
        assert float(np.abs(z).max()) == 0.0
        assert float(np.abs(w).max()) == 0.0
        assert float(np.abs(x * x + y * y - 1.0).max()) <= 1e-12

    def test_unknown_param(self):
        with pytest.raises(UnknownParamError):
            iso_slices(build(HOPF, "c"), "nope", [0.0], (5, 5))


class TestProjectGrid:
    def test_conoid_residual_on_w0_shadow(self):
        g = sample(build(PLUECKER, "c"), (33, 65))
        mesh = project_grid(g, "ortho", plane="xyz")
        x, y, z = mesh.vertices.T
        residual = x * x * (1 - y * y) - z * z * y * y
        assert float(np.abs(residual).max()) <= 1e-10

    def test_perspective_doubling_at_half_depth(self):
        src = "set p(a in 0..1, b in 0..1) = (a, b, 1, a+b)\n"
        g = sample(build(src), (5, 5))
        mesh = project_grid(g, "perspective", cfg=PerspectiveConfig(d=2.0))
        want = np.stack([g.points[:, 0] * 2, g.points[:, 1] * 2, g.points[:, 3] * 2], axis=1)
        assert np.array_equal(mesh.vertices, want)

    def test_dop_pair_shares_topology_and_xy(self):
        g = sample(build(PLUECKER, "c"), (9, 9))
        mz, mw = project_grid(g, "dop")
        assert mz.topology == mw.topology
        assert np.array_equal(mz.vertices[:, :2], mw.vertices[:, :2])

    def test_topology_projection_invariant(self):
        g = sample(build(PLUECKER, "c"), (7, 9))
        mz, _ = project_grid(g, "dop")
        mp = project_grid(g, "perspective", cfg=PerspectiveConfig(d=3.0))
        mo = project_grid(g, "ortho", plane="xy")
        assert mz.topology == mp.topology == mo.topology
        assert len(mz.vertices) == len(mp.vertices) == len(mo.vertices)

    def test_perspective_clipping_flags_and_drops(self):
        src = "set p(a in -1..1, b in 0..1) = (1, b, a, 0)\n"
        g = sample(build(src), (3, 3))  # middle row sits exactly on a2 = 0
        cfg = PerspectiveConfig(d=2.0, epsilon=0.5)
        mesh = project_grid(g, "perspective", cfg=cfg)
        assert mesh.attributes["clipped"].sum() == 0  # a2 = 0 rows use the exact branch
        src2 = "set p(a in 0..1, b in 0..1) = (1, b, 0.25 + a, 0)\n"
        g2 = sample(build(src2), (3, 3))
        mesh2 = project_grid(g2, "perspective", cfg=cfg)
        assert mesh2.attributes["clipped"].sum() == 3.0
        assert len(mesh2.active_faces()) == 2

    def test_rotor_applied_before_projection(self):
        g = sample(build(CIRCLE), (9,))
        rotor = Rotor4(Quaternion(0.5, 0.5, 0.5, 0.5), Quaternion(1, 0, 0, 0))
        mesh = project_grid(g, "ortho", plane="xy", rotor=rotor)
        for k in (0, 3, 7):
            q = rotate4(Quaternion(*g.points[k]), rotor)
            assert mesh.vertices[k][0] == q.a0
            assert mesh.vertices[k][1] == q.a1

    def test_param_attributes_present(self):
        g = sample(build(PLUECKER, "c"), (5, 7))
        mesh = project_grid(g, "ortho", plane="xy")
        assert set(("u", "v")) <= set(mesh.attributes)
        assert mesh.attributes["u"][0] == -1.0
        assert mesh.attributes["v"][6] == math.pi


class TestDegenerateFaces:
    def test_edge_on_projection_flags_all_faces(self):
        # the plane (0, v1, 0, v2) collapses to a line under ortho (x, y)
        g = sample(build("set p(v1 in -1..1, v2 in -1..1) = (0, v1, 0, v2)\n"), (5, 5))
        mesh = project_grid(g, "ortho", plane="xy")
        assert len(mesh.degenerate_faces) == 16
        assert len(mesh.active_faces()) == 16  # kept, only flagged

    def test_regular_projection_flags_nothing(self):
        g = sample(build(PLUECKER, "c"), (5, 9))
        mz, mw = project_grid(g, "dop")
        assert mz.degenerate_faces == ()
        assert mw.degenerate_faces == ()
