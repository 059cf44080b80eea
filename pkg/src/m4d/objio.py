"""Wavefront OBJ output, restricted to the plain statement subset

    v x y z     vertices
    f i j k l   quad faces (1-based)
    l i j       polyline segments (1-based)

Multiple meshes concatenate into one file with a shared index space.  Floats
print in shortest round-trip form, so identical meshes always produce
identical bytes.  Faces and segments incident to clipped vertices are
omitted; the vertices themselves stay, keeping indices stable across
projection modes.
"""

from __future__ import annotations

from m4d.tessellate import Mesh3, PolylineTopo, QuadTopo


def obj_text(meshes: list[Mesh3]) -> str:
    chunks: list[str] = []
    offset = 0
    for mesh in meshes:
        for v in mesh.vertices:
            chunks.append(f"v {float(v[0])!r} {float(v[1])!r} {float(v[2])!r}\n")
        if isinstance(mesh.topology, PolylineTopo):
            for i, j in mesh.active_segments():
                chunks.append(f"l {offset + i + 1} {offset + j + 1}\n")
        elif isinstance(mesh.topology, QuadTopo):
            for a, b, c, d in mesh.active_faces():
                chunks.append(f"f {offset + a + 1} {offset + b + 1} {offset + c + 1} {offset + d + 1}\n")
        else:
            raise TypeError(f"unsupported topology {mesh.topology!r}")
        offset += len(mesh.vertices)
    return "".join(chunks)


def write_obj(path, meshes: list[Mesh3]) -> None:
    text = obj_text(meshes)
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(text)
