import itertools
import math

import pytest

from m4d import quat
from m4d.dsl import parse_program
from m4d.minkowski import (
    DimensionOverflowError,
    SharedParameterError,
    mdiff,
    mdiv_left,
    mdiv_right,
    mprod,
    msum,
)
from m4d.paramset import ZeroNormAtSampleError, constant_set, dimension, eval_point, rename_params
from m4d.quat import Quaternion
from m4d.scene import from_program

SQ2 = math.sqrt(2.0) / 2.0


def sets_from(src: str):
    return from_program(parse_program(src)).sets


CLIFFORD_SUM_SRC = """\
set c1(u in 0..2*pi) = (-(sqrt(2)/2)*cos(u), 0, -(sqrt(2)/2)*sin(u), 0)
set c2(v in 0..2*pi) = (0, (sqrt(2)/2)*cos(v), 0, -(sqrt(2)/2)*sin(v))
"""

CLIFFORD_PROD_SRC = """\
set d1(u in 0..2*pi) = (cos(u), sin(u), 0, 0)
set d2(v in 0..2*pi) = (0, cos(v), 0, sin(v))
"""

CONE_SRC = """\
set c1(u in -1..1) = (1, 0, 0, u)
set c2(v1 in -1..1, v2 in -1..1) = (0, v1, 0, v2)
"""


def grid_assignments(s, res):
    axes = []
    for p, r in zip(s.params, res):
        axes.append([(p.name, p.lo + i * (p.hi - p.lo) / (r - 1) if i < r - 1 else p.hi) for i in range(r)])
    for combo in itertools.product(*axes):
        yield dict(combo)


class TestMsum:
    def test_clifford_torus_parametrization(self):
        sets = sets_from(CLIFFORD_SUM_SRC)
        c = msum(sets["c1"], sets["c2"])
        for u, v in [(0.0, 0.0), (0.4, 2.2), (math.pi, 0.9), (5.0, 6.0)]:
            p = eval_point(c, {"u": u, "v": v})
            expect = Quaternion(-SQ2 * math.cos(u), SQ2 * math.cos(v), -SQ2 * math.sin(u), -SQ2 * math.sin(v))
            assert max(abs(a - b) for a, b in zip(p.components(), expect.components())) <= 1e-15

    def test_additive_identity(self):
        sets = sets_from(CLIFFORD_SUM_SRC)
        s = msum(sets["c1"], constant_set(quat.ZERO))
        for u in (0.0, 1.0, 2.5):
            assert eval_point(s, {"u": u}) == eval_point(sets["c1"], {"u": u})

    def test_dimension_overflow(self):
        sets = sets_from(CONE_SRC)
        other = rename_params(sets["c2"], {"v1": "w1", "v2": "w2"})
        with pytest.raises(DimensionOverflowError):
            msum(sets["c2"], other)

    def test_shared_parameter_rejected(self):
        sets = sets_from(CLIFFORD_PROD_SRC)
        with pytest.raises(SharedParameterError):
            msum(sets["d1"], sets["d1"])

    def test_pointwise_equals_quat_add_exactly(self):
        sets = sets_from(CLIFFORD_SUM_SRC)
        s = msum(sets["c1"], sets["c2"])
        for env in grid_assignments(s, (7, 9)):
            a = eval_point(sets["c1"], {"u": env["u"]})
            b = eval_point(sets["c2"], {"v": env["v"]})
            assert eval_point(s, env) == quat.add(a, b)


class TestMdiff:
    def test_subtract_zero(self):
        sets = sets_from(CLIFFORD_SUM_SRC)
        s = mdiff(sets["c1"], constant_set(quat.ZERO))
        assert eval_point(s, {"u": 0.3}) == eval_point(sets["c1"], {"u": 0.3})

    def test_sum_then_subtract_operand(self):
        # freeze B's parameter, subtract the constant contribution, recover A
        from m4d.paramset import freeze_params

        sets = sets_from(CLIFFORD_SUM_SRC)
        total = msum(sets["c1"], sets["c2"])
        beta = 1.2345
        frozen = freeze_params(total, {"v": beta})
        bq = eval_point(sets["c2"], {"v": beta})
        diff = mdiff(frozen, constant_set(bq))
        for u in (0.0, 0.7, 3.1):
            got = eval_point(diff, {"u": u})
            a = eval_point(sets["c1"], {"u": u})
            oracle = quat.sub(quat.add(a, bq), bq)  # same arithmetic path
            assert got == oracle
            assert max(abs(x - y) for x, y in zip(got.components(), a.components())) <= 1e-12

    def test_self_difference_of_renamed_copy(self):
        sets = sets_from(CLIFFORD_PROD_SRC)
        copy = rename_params(sets["d1"], {"u": "s"})
        z = mdiff(sets["d1"], copy)
        for u in (0.0, 1.0, 4.4):
            p = eval_point(z, {"u": u, "s": u})
            assert p == quat.ZERO


class TestMprod:
    def test_clifford_product_at_origin_params(self):
        sets = sets_from(CLIFFORD_PROD_SRC)
        d = mprod(sets["d1"], sets["d2"])
        assert eval_point(d, {"u": 0.0, "v": 0.0}) == Quaternion(0.0, 1.0, 0.0, 0.0)

    def test_clifford_product_components(self):
        sets = sets_from(CLIFFORD_PROD_SRC)
        d = mprod(sets["d1"], sets["d2"])
        for u, v in [(0.3, 1.7), (2.0, 5.1)]:
            p = eval_point(d, {"u": u, "v": v})
            expect = (
                -math.cos(v) * math.sin(u),
                math.cos(u) * math.cos(v),
                -math.sin(u) * math.sin(v),
                math.cos(u) * math.sin(v),
            )
            assert max(abs(a - b) for a, b in zip(p.components(), expect)) <= 1e-15

    def test_line_times_plane_is_cone(self):
        sets = sets_from(CONE_SRC)
        c = mprod(sets["c1"], sets["c2"])
        assert dimension(c) == 3
        for env in grid_assignments(c, (5, 5, 5)):
            p = eval_point(c, env)
            u, v1, v2 = env["u"], env["v1"], env["v2"]
            assert p == Quaternion(-u * v2, v1, u * v1, v2)

    def test_neutral_element(self):
        sets = sets_from(CLIFFORD_PROD_SRC)
        s = mprod(constant_set(quat.ONE), sets["d2"])
        for v in (0.0, 0.5, 4.0):
            assert eval_point(s, {"v": v}) == eval_point(sets["d2"], {"v": v})

    def test_brute_force_lattice_oracle(self):
        # coarse lattices: derived-set samples equal pairwise quat products exactly
        sets = sets_from(CLIFFORD_PROD_SRC)
        d = mprod(sets["d1"], sets["d2"])
        for env in grid_assignments(d, (9, 7)):
            a = eval_point(sets["d1"], {"u": env["u"]})
            b = eval_point(sets["d2"], {"v": env["v"]})
            assert eval_point(d, env) == quat.mul(a, b)

    def test_set_level_noncommutativity(self):
        sets = sets_from(CLIFFORD_PROD_SRC)
        ab = mprod(sets["d1"], sets["d2"])
        ba = mprod(sets["d2"], sets["d1"])
        diffs = [
            max(
                abs(x - y)
                for x, y in zip(eval_point(ab, env).components(), eval_point(ba, env).components())
            )
            for env in grid_assignments(ab, (5, 5))
        ]
        assert max(diffs) > 0.1

    def test_dimension_additivity(self):
        sets = sets_from(CONE_SRC)
        c = mprod(sets["c1"], sets["c2"])
        assert dimension(c) == dimension(sets["c1"]) + dimension(sets["c2"])


class TestDivision:
    def test_left_division_recovers_right_factor(self):
        sets = sets_from(CLIFFORD_PROD_SRC)
        prod = mprod(sets["d1"], sets["d2"])
        # (d1^-1) (x) (d1 (x) d2) needs distinct params for the two operands
        d1_fresh = rename_params(sets["d1"], {"u": "u"})
        with pytest.raises(SharedParameterError):
            mdiv_left(d1_fresh, prod)
        # 0-dim divisor: freeze d1 at a sample of parameter values
        for u in (0.0, 0.9, 2.4):
            a = eval_point(sets["d1"], {"u": u})
            div = mdiv_left(constant_set(a), prod)
            for v in (0.0, 1.3):
                got = eval_point(div, {"u": u, "v": v})
                oracle = quat.divide_left(a, eval_point(prod, {"u": u, "v": v}))
                assert max(abs(x - y) for x, y in zip(got.components(), oracle.components())) <= 1e-15
                b = eval_point(sets["d2"], {"v": v})
                assert max(abs(x - y) for x, y in zip(got.components(), b.components())) <= 1e-12

    def test_unit_constant_left_division(self):
        sets = sets_from(CLIFFORD_PROD_SRC)
        div = mdiv_left(constant_set(quat.ONE), sets["d2"])
        for v in (0.0, 2.2):
            got = eval_point(div, {"v": v})
            want = eval_point(sets["d2"], {"v": v})
            assert max(abs(x - y) for x, y in zip(got.components(), want.components())) <= 1e-15

    def test_right_division_matches_quat(self):
        sets = sets_from(CLIFFORD_PROD_SRC)
        div = mdiv_right(sets["d2"], sets["d1"])
        for u, v in [(0.5, 1.0), (2.0, 0.1)]:
            got = eval_point(div, {"u": u, "v": v})
            oracle = quat.divide_right(eval_point(sets["d2"], {"v": v}), eval_point(sets["d1"], {"u": u}))
            assert max(abs(x - y) for x, y in zip(got.components(), oracle.components())) <= 1e-12

    def test_zero_norm_divisor_detected_at_sampling(self):
        sets = sets_from("set a(u in -1..1) = (u, 0, 0, 0)\nset b(v in 0..1) = (1, v, 0, 0)\n")
        div = mdiv_left(sets["a"], sets["b"])
        with pytest.raises(ZeroNormAtSampleError) as ei:
            eval_point(div, {"u": 0.0, "v": 0.5})
        assert ei.value.assignment == {"u": 0.0, "v": 0.5}
        # nonzero samples evaluate fine
        assert eval_point(div, {"u": 0.5, "v": 0.5})
