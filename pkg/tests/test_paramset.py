import math

import pytest

from m4d import quat
from m4d.dsl import parse_program
from m4d.expr import Const, UnboundParamError
from m4d.paramset import (
    NameCollisionError,
    ParamInterval,
    ParamSet,
    constant_set,
    dimension,
    eval_point,
    freeze_params,
    rename_params,
)
from m4d.quat import Quaternion
from m4d.scene import from_program


def set_from_source(src: str, name: str | None = None) -> ParamSet:
    scene = from_program(parse_program(src))
    key = name if name is not None else next(reversed(scene.sets))
    return scene.sets[key]


HOPF_SRC = """\
set c1(u in 0..2*pi) = (cos(u), sin(u), 0, 0)
set c2(v1 in 0..pi, v2 in 0..2*pi) = (cos(v1), 0, sin(v1)*cos(v2), sin(v1)*sin(v2))
set c = c1 (*) c2
"""


class TestEvalPoint:
    def test_hopf_origin_point(self):
        hopf = set_from_source(HOPF_SRC, "c")
        p = eval_point(hopf, {"u": 0.0, "v1": 0.0, "v2": 0.0})
        assert p == Quaternion(1.0, 0.0, 0.0, 0.0)

    def test_cone_line_at_0_7(self):
        line = set_from_source("set c1(u in -1..1) = (1, 0, 0, u)\n")
        assert eval_point(line, {"u": 0.7}) == Quaternion(1.0, 0.0, 0.0, 0.7)

    def test_constant_set_empty_assignment(self):
        q = Quaternion(0.5, -1.0, 2.0, 0.0)
        assert eval_point(constant_set(q), {}) == q

    def test_outside_interval_is_allowed(self):
        line = set_from_source("set c1(u in -1..1) = (1, 0, 0, u)\n")
        assert eval_point(line, {"u": 5.0}).a3 == 5.0

    def test_missing_param_raises(self):
        line = set_from_source("set c1(u in -1..1) = (1, 0, 0, u)\n")
        with pytest.raises(UnboundParamError):
            eval_point(line, {})

    def test_deterministic(self):
        hopf = set_from_source(HOPF_SRC, "c")
        env = {"u": 1.234, "v1": 0.778, "v2": 2.5}
        assert eval_point(hopf, env) == eval_point(hopf, env)


class TestDimension:
    def test_plane_is_two_dimensional(self):
        plane = set_from_source("set c2(v1 in -1..1, v2 in -1..1) = (0, v1, 0, v2)\n")
        assert dimension(plane) == 2

    def test_constant_is_zero_dimensional(self):
        assert dimension(constant_set(quat.ONE)) == 0

    def test_four_dims_rejected(self):
        with pytest.raises(ValueError):
            ParamSet(
                tuple(ParamInterval(n, 0.0, 1.0) for n in "abcd"),
                (Const(0.0),) * 4,
            )


class TestRename:
    def test_substitution_invariance(self):
        circle = set_from_source("set c(u in 0..2*pi) = (cos(u), sin(u), 0, 0)\n")
        renamed = rename_params(circle, {"u": "s"})
        assert eval_point(renamed, {"s": math.pi / 2}) == eval_point(circle, {"u": math.pi / 2})

    def test_round_trip_is_identity(self):
        circle = set_from_source("set c(u in 0..2*pi) = (cos(u), sin(u), 0, 0)\n")
        back = rename_params(rename_params(circle, {"u": "s"}), {"s": "u"})
        assert back == circle

    def test_collision_with_constant(self):
        s = set_from_source("const t = 2\nset c(u in 0..1) = (t*u, 0, 0, 0)\n", "c")
        with pytest.raises(NameCollisionError):
            rename_params(s, {"u": "t"})

    def test_non_injective_rejected(self):
        plane = set_from_source("set c2(v1 in -1..1, v2 in -1..1) = (0, v1, 0, v2)\n")
        with pytest.raises(NameCollisionError):
            rename_params(plane, {"v1": "x", "v2": "x"})


class TestFreeze:
    def test_freeze_lowers_dimension(self):
        hopf = set_from_source(HOPF_SRC, "c")
        slice2d = freeze_params(hopf, {"v1": math.pi / 4})
        assert dimension(slice2d) == 2
        p = eval_point(slice2d, {"u": 0.3, "v2": 1.1})
        q = eval_point(hopf, {"u": 0.3, "v1": math.pi / 4, "v2": 1.1})
        assert p == q

    def test_unknown_param_rejected(self):
        line = set_from_source("set c1(u in -1..1) = (1, 0, 0, u)\n")
        with pytest.raises(NameCollisionError):
            freeze_params(line, {"nope": 1.0})
