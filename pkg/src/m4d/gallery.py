"""Built-in scene gallery.

Each entry ships as a .m4d source file under gallery_data/ together with the
ids of the numerical checks (module verify) that its geometry must satisfy.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from m4d.dsl import parse_program
from m4d.scene import Scene, from_program


class UnknownEntryError(KeyError):
    pass


@dataclass(frozen=True)
class GalleryEntry:
    id: str
    dsl_source: str
    figure_ref: str
    verification_ids: tuple[str, ...]


_CATALOG: tuple[tuple[str, str, tuple[str, ...]], ...] = (
    ("cube", "3-cube wireframe in DOP and 4-D perspective", (
        "cube-dop-shared-shadow",
        "cube-dop-parallelism",
        "cube-dop-boxes",
    )),
    ("clifford-sum", "Clifford torus as a sum of two circles", (
        "cs-norm1",
        "cs-torus-standard",
        "cs-ortho-xz-circle",
    )),
    ("clifford-prod", "Clifford torus as a product of two circles", (
        "cp-norm1",
        "cp-circles-u",
        "cp-circles-v",
    )),
    ("clifford-rotation", "rotation aligning the product torus with the sum torus", (
        "cr-rotation-identity",
        "cr-rotation-negative",
    )),
    ("quad-cone", "quadratic cone xy + zw = 0 with three rulings", (
        "qc-implicit",
        "qc-fixed-u-planar",
        "qc-fixed-v-bilinear",
        "qc-marked-point-rulings",
    )),
    ("cone-sphere", "intersection of the quadratic cone with the unit 3-sphere", (
        "csp-implicit",
        "csp-norm1",
        "csp-torus-rot45",
    )),
    ("hopf-3sphere", "unit 3-sphere in Hopf coordinates with torus slices", (
        "hs-norm1",
        "hs-slices-torus",
        "hs-standard-negative",
    )),
    ("pluecker", "line times circle; w = 0 shadow is Pluecker's conoid", (
        "pl-conoid-residual",
        "pl-rulings-u",
        "pl-circles-v",
        "pl-rulings-v-negative",
    )),
    ("line-helix", "line times helix: ruled, non-closing surface", (
        "lh-rulings-u",
        "lh-open-v",
    )),
    ("butterfly", "line times helix at t = 2*pi over eight turns", (
        "bf-rulings-u",
    )),
)


def _load_source(entry_id: str) -> str:
    path = resources.files("m4d").joinpath("gallery_data", f"{entry_id}.m4d")
    return path.read_text(encoding="utf-8")


def entry_ids() -> list[str]:
    return [e[0] for e in _CATALOG]


def get(entry_id: str) -> GalleryEntry:
    for eid, figure, checks in _CATALOG:
        if eid == entry_id:
            source = _load_source(eid)
            parse_program(source)  # entries must always parse cleanly
            return GalleryEntry(eid, source, figure, checks)
    raise UnknownEntryError(entry_id)


def scene(entry_id: str) -> Scene:
    entry = get(entry_id)
    sc = from_program(parse_program(entry.dsl_source), name=entry.id)
    sc.check_ids = list(entry.verification_ids)
    return sc
