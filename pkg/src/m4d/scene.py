"""Scene assembly: turn a parsed program into live parametric sets.

JSON export/import of scenes (schema version 1) lives here as well; grids are
baked by the caller (see tessellate) and passed in flat row-major form.
"""

from __future__ import annotations

import math
import random
import zlib
from dataclasses import dataclass, field

from m4d import minkowski
from m4d.dsl import ConstDef, DerivedDef, Directive, RangeDef, SceneProgram, SetDef
from m4d.expr import expr_from_json, expr_to_json, free_params
from m4d.paramset import ParamInterval, ParamSet, eval_point
from m4d.projection import PerspectiveConfig, Rotor4, dop, perspective, rotate4
from m4d.quat import Quaternion

_MINK_FN = {
    "(+)": minkowski.msum,
    "(-)": minkowski.mdiff,
    "(*)": minkowski.mprod,
    "(\\)": minkowski.mdiv_left,
    "(/)": minkowski.mdiv_right,
}

SCENE_SCHEMA_VERSION = 1


class SceneFormatError(ValueError):
    """Scene JSON does not match schema version 1."""


@dataclass
class Scene:
    name: str
    sets: dict[str, ParamSet] = field(default_factory=dict)  # insertion order = definition order
    base_defs: list[SetDef] = field(default_factory=list)
    derived_defs: list[DerivedDef] = field(default_factory=list)
    constants: dict[str, float] = field(default_factory=dict)
    ranges: dict[str, tuple[float, float]] = field(default_factory=dict)
    projection: Directive = Directive("dop")
    check_ids: list[str] = field(default_factory=list)

    def operand_names(self) -> set[str]:
        out = set()
        for d in self.derived_defs:
            out.add(d.lhs)
            out.add(d.rhs)
        return out

    def result_names(self) -> list[str]:
        """Sets not consumed by any derived definition, in definition order."""
        used = self.operand_names()
        return [n for n in self.sets if n not in used]


def from_program(program: SceneProgram, name: str = "scene") -> Scene:
    """Build every set of the program; raises the minkowski/paramset errors

    (SharedParameterError, DimensionOverflowError, ...) for invalid
    combinations, which parse_program cannot rule out.
    """
    scene = Scene(name)
    for stmt in program.statements:
        if isinstance(stmt, ConstDef):
            scene.constants[stmt.name] = stmt.value
        elif isinstance(stmt, RangeDef):
            scene.ranges[stmt.name] = (stmt.lo, stmt.hi)
        elif isinstance(stmt, SetDef):
            used = set()
            for e in stmt.coords:
                used |= free_params(e)
            consts = {n: v for n, v in scene.constants.items() if n in used}
            params = tuple(ParamInterval(n, lo, hi) for n, lo, hi in stmt.params)
            scene.sets[stmt.name] = ParamSet(params, stmt.coords, consts)
            scene.base_defs.append(stmt)
        elif isinstance(stmt, DerivedDef):
            fn = _MINK_FN[stmt.op]
            scene.sets[stmt.name] = fn(scene.sets[stmt.lhs], scene.sets[stmt.rhs])
            scene.derived_defs.append(stmt)
        elif isinstance(stmt, Directive):
            scene.projection = stmt
    return scene


# ---------------------------------------------------------------------------
# Scene JSON (schema version 1)

def scene_to_json(scene: Scene, grids: list[dict] | None = None) -> dict:
    """Schema v1 document.  grids entries: {"setName", "resolutions", "points"}.

    Points are the flat row-major float64 coordinates (x0, y0, z0, w0, x1, ...).
    """
    sets_json = []
    for sd in scene.base_defs:
        ps = scene.sets[sd.name]
        sets_json.append(
            {
                "name": sd.name,
                "params": [{"name": p.name, "lo": p.lo, "hi": p.hi} for p in ps.params],
                "constants": [
                    {
                        "name": n,
                        "value": v,
                        "min": scene.ranges.get(n, (v, v))[0],
                        "max": scene.ranges.get(n, (v, v))[1],
                    }
                    for n, v in ps.constants.items()
                ],
                "coords": [expr_to_json(e) for e in ps.coords],
            }
        )
    derived_json = [{"name": d.name, "op": d.op, "lhs": d.lhs, "rhs": d.rhs} for d in scene.derived_defs]
    grids_json = [
        {
            "setName": g["setName"],
            "resolutions": list(g["resolutions"]),
            "points": list(g["points"]),
            "layout": "row-major",
        }
        for g in grids or []
    ]
    projections: dict = {"dop": {}}
    if scene.projection.mode == "perspective":
        projections["perspective"] = {"d": scene.projection.d}
    else:
        projections["perspective"] = {"d": 2.0}
    return {
        "m4dScene": SCENE_SCHEMA_VERSION,
        "sets": sets_json,
        "derived": derived_json,
        "grids": grids_json,
        "projections": projections,
        "checks": list(scene.check_ids),
    }


def scene_from_json(doc: dict, name: str = "scene") -> Scene:
    """Rebuild a Scene (sets re-derived from the ASTs) from a schema v1 document."""
    if not isinstance(doc, dict) or "m4dScene" not in doc:
        raise SceneFormatError("not a scene document (missing m4dScene)")
    if doc["m4dScene"] != SCENE_SCHEMA_VERSION:
        raise SceneFormatError(f"unsupported scene version {doc['m4dScene']!r}")
    scene = Scene(name)
    try:
        for s in doc["sets"]:
            params = tuple(ParamInterval(p["name"], float(p["lo"]), float(p["hi"])) for p in s["params"])
            constants = {c["name"]: float(c["value"]) for c in s["constants"]}
            for c in s["constants"]:
                scene.ranges[c["name"]] = (float(c["min"]), float(c["max"]))
                scene.constants[c["name"]] = float(c["value"])
            coords = tuple(expr_from_json(e) for e in s["coords"])
            scene.sets[s["name"]] = ParamSet(params, coords, constants)
            scene.base_defs.append(SetDef(s["name"], tuple((p.name, p.lo, p.hi) for p in params), coords))
        for d in doc["derived"]:
            dd = DerivedDef(d["name"], d["op"], d["lhs"], d["rhs"])
            scene.sets[dd.name] = _MINK_FN[dd.op](scene.sets[dd.lhs], scene.sets[dd.rhs])
            scene.derived_defs.append(dd)
        persp = doc.get("projections", {}).get("perspective", {})
        if "d" in persp:
            scene.projection = Directive("perspective", float(persp["d"]))
        scene.check_ids = [str(c) for c in doc.get("checks", [])]
    except (KeyError, TypeError, IndexError) as exc:
        raise SceneFormatError(f"malformed scene document: {exc}") from exc
    return scene


# ---------------------------------------------------------------------------
# conformance fixtures (consumed by the viewer test suite)

_FIXTURE_ROTOR = Rotor4(
    Quaternion(0.5, 0.5, 0.5, 0.5),
    Quaternion(math.cos(0.35), 0.0, 0.0, math.sin(0.35)),
)


def make_fixtures(scene: Scene, per_set: int = 20) -> dict:
    """Deterministic evaluation/projection fixtures for cross-implementation
    conformance.  Assignments come from a generator seeded by the scene and
    set names, so repeated exports are byte-identical."""
    d = scene.projection.d if scene.projection.mode == "perspective" else 2.0
    cfg = PerspectiveConfig(d=d)
    evaluations = []
    persp = []
    dop_fixtures = []
    rotor_fixtures = []
    for name, ps in scene.sets.items():
        rng = random.Random(zlib.crc32(f"{scene.name}:{name}".encode()))
        for _ in range(per_set):
            env = {p.name: p.lo + (p.hi - p.lo) * rng.random() for p in ps.params}
            point = eval_point(ps, env)
            evaluations.append({"set": name, "env": env, "point": list(point.components())})
            if abs(point.a2) > 1e-6:
                img = perspective(point, cfg)
                persp.append({"point": list(point.components()), "d": d, "image": list(img.as_tuple())})
            z_img, w_img = dop(point)
            dop_fixtures.append(
                {
                    "point": list(point.components()),
                    "zImage": list(z_img.as_tuple()),
                    "wImage": list(w_img.as_tuple()),
                }
            )
            rotated = rotate4(point, _FIXTURE_ROTOR)
            rotor_fixtures.append(
                {
                    "point": list(point.components()),
                    "left": list(_FIXTURE_ROTOR.left.components()),
                    "right": list(_FIXTURE_ROTOR.right.components()),
                    "image": list(rotated.components()),
                }
            )
    return {
        "scene": scene.name,
        "tolerance": 1e-9,
        "evaluations": evaluations,
        "perspective": persp,
        "dop": dop_fixtures,
        "rotor": rotor_fixtures,
    }
