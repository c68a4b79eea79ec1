"""3D geometric primitives: points, sticks, chains, intersection predicates,
embedding checks and generic projection search.

All coordinates are plain float 3-tuples in model units; constructions are
normalized so stick lengths are O(1), which keeps the absolute tolerance
TAU_GEOM meaningful everywhere.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

Vec3 = tuple[float, float, float]

TAU_GEOM = 1e-9
SPIRAL_STEP = 1e-3       # radians per trial in the genericity search
SPIRAL_BUDGET = 10_000
_GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


class GeometryError(ValueError):
    """Invalid or degenerate geometric input."""


class NonGenericProjectionError(GeometryError):
    """Projection direction fails the genericity certificate."""


# ---------------------------------------------------------------------------
# vector helpers
# ---------------------------------------------------------------------------

def v_add(a: Vec3, b: Vec3) -> Vec3:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def v_sub(a: Vec3, b: Vec3) -> Vec3:
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def v_scale(a: Vec3, s: float) -> Vec3:
    return (a[0] * s, a[1] * s, a[2] * s)


def v_dot(a: Vec3, b: Vec3) -> float:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def v_cross(a: Vec3, b: Vec3) -> Vec3:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def v_norm(a: Vec3) -> float:
    return math.sqrt(v_dot(a, a))


def v_unit(a: Vec3) -> Vec3:
    n = v_norm(a)
    if n < TAU_GEOM:
        raise GeometryError("cannot normalize a near-zero vector")
    return (a[0] / n, a[1] / n, a[2] / n)


def v_dist(a: Vec3, b: Vec3) -> float:
    return v_norm(v_sub(a, b))


def v_lerp(a: Vec3, b: Vec3, t: float) -> Vec3:
    return (
        a[0] + (b[0] - a[0]) * t,
        a[1] + (b[1] - a[1]) * t,
        a[2] + (b[2] - a[2]) * t,
    )


def _finite(p) -> bool:
    return all(isinstance(x, (int, float)) and math.isfinite(x) for x in p)


# ---------------------------------------------------------------------------
# chains and links
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Chain:
    """Ordered polygonal chain; when closed, the last vertex joins the first."""

    vertices: tuple[Vec3, ...]
    closed: bool = False

    def __post_init__(self):
        verts = tuple(tuple(float(x) for x in p) for p in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if len(verts) < 2:
            raise GeometryError("chain needs at least two vertices")
        if self.closed and len(verts) < 3:
            raise GeometryError("closed chain needs at least three vertices")
        for p in verts:
            if not _finite(p):
                raise GeometryError("non-finite vertex coordinate")
        pairs = list(zip(verts, verts[1:]))
        if self.closed:
            pairs.append((verts[-1], verts[0]))
        for a, b in pairs:
            if v_dist(a, b) < TAU_GEOM:
                raise GeometryError("zero-length stick (consecutive vertices coincide)")

    def edges(self) -> list[tuple[Vec3, Vec3]]:
        out = list(zip(self.vertices, self.vertices[1:]))
        if self.closed:
            out.append((self.vertices[-1], self.vertices[0]))
        return out

    @property
    def stick_count(self) -> int:
        return len(self.vertices) if self.closed else len(self.vertices) - 1


@dataclass(frozen=True)
class PolyLink:
    """A collection of closed polygonal components."""

    components: tuple[Chain, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        for c in comps:
            if not c.closed:
                raise GeometryError("PolyLink components must be closed chains")

    @property
    def stick_count(self) -> int:
        return sum(c.stick_count for c in self.components)

    def all_edges(self) -> list[tuple[int, int, Vec3, Vec3]]:
        """(component, edge index, start, end) for every stick."""
        out = []
        for ci, comp in enumerate(self.components):
            for ei, (a, b) in enumerate(comp.edges()):
                out.append((ci, ei, a, b))
        return out


# ---------------------------------------------------------------------------
# segment intersection
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SegmentIntersection:
    kind: str                     # disjoint | shared-endpoint | crossing | degenerate
    point: Vec3 | None = None
    params: tuple[float, float] | None = None
    distance: float = math.inf


def _closest_params(p0: Vec3, p1: Vec3, q0: Vec3, q1: Vec3) -> tuple[float, float]:
    """Clamped closest-approach parameters (s, t) between two segments."""
    d1 = v_sub(p1, p0)
    d2 = v_sub(q1, q0)
    r = v_sub(p0, q0)
    a = v_dot(d1, d1)
    e = v_dot(d2, d2)
    f = v_dot(d2, r)
    c = v_dot(d1, r)
    b = v_dot(d1, d2)
    denom = a * e - b * b
    if denom > TAU_GEOM * a * e:
        s = max(0.0, min(1.0, (b * f - c * e) / denom))
    else:
        s = 0.0  # near-parallel: fix s then optimize t, then re-optimize s
    t = (b * s + f) / e
    if t < 0.0:
        t = 0.0
        s = max(0.0, min(1.0, -c / a))
    elif t > 1.0:
        t = 1.0
        s = max(0.0, min(1.0, (b - c) / a))
    return s, t


def _collinear_overlap(p0, p1, q0, q1, tol) -> bool:
    d1 = v_sub(p1, p0)
    len1 = v_norm(d1)
    u = v_scale(d1, 1.0 / len1)
    # both q endpoints must lie on the p line
    for q in (q0, q1):
        w = v_sub(q, p0)
        perp = v_sub(w, v_scale(u, v_dot(w, u)))
        if v_norm(perp) > tol:
            return False
    t0 = v_dot(v_sub(q0, p0), u)
    t1 = v_dot(v_sub(q1, p0), u)
    lo, hi = min(t0, t1), max(t0, t1)
    return min(hi, len1) - max(lo, 0.0) > tol


def segment_intersect_3d(
    p0: Vec3, p1: Vec3, q0: Vec3, q1: Vec3, tol: float = TAU_GEOM
) -> SegmentIntersection:
    """Classify the intersection of two 3D segments under tolerance `tol`.

    shared-endpoint is reported only when the segments meet exactly at a
    common endpoint (and nowhere else); collinear overlaps classify as
    crossing since they always violate an embedding.
    """
    if v_dist(p0, p1) < tol or v_dist(q0, q1) < tol:
        return SegmentIntersection(kind="degenerate")

    s, t = _closest_params(p0, p1, q0, q1)
    cp = v_lerp(p0, p1, s)
    cq = v_lerp(q0, q1, t)
    dist = v_dist(cp, cq)
    if dist > tol:
        return SegmentIntersection(kind="disjoint", distance=dist)

    if _collinear_overlap(p0, p1, q0, q1, tol):
        return SegmentIntersection(kind="crossing", point=cp, params=(s, t), distance=dist)

    at_p_end = min(s, 1.0 - s) * v_dist(p0, p1) < tol
    at_q_end = min(t, 1.0 - t) * v_dist(q0, q1) < tol
    if at_p_end and at_q_end:
        return SegmentIntersection(
            kind="shared-endpoint", point=cp, params=(s, t), distance=dist
        )
    return SegmentIntersection(kind="crossing", point=cp, params=(s, t), distance=dist)


# ---------------------------------------------------------------------------
# embedding check
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EmbeddingReport:
    ok: bool
    message: str = ""
    pair: tuple[tuple[int, int], tuple[int, int]] | None = None

    def __bool__(self) -> bool:
        return self.ok


def _adjacent(link: PolyLink, e1: tuple[int, int], e2: tuple[int, int]) -> bool:
    ci, i = e1
    cj, j = e2
    if ci != cj:
        return False
    n = link.components[ci].stick_count
    return (abs(i - j) == 1) or (link.components[ci].closed and abs(i - j) == n - 1)


def check_embedded(link: PolyLink, tol: float = TAU_GEOM) -> EmbeddingReport:
    """True iff non-adjacent sticks are disjoint and adjacent sticks meet only
    at their shared vertex."""
    edges = link.all_edges()
    for comp in link.components:
        if len(comp.vertices) < 3:
            raise GeometryError("embedding check requires components with >= 3 vertices")
    for idx1 in range(len(edges)):
        ci, i, a0, a1 = edges[idx1]
        for idx2 in range(idx1 + 1, len(edges)):
            cj, j, b0, b1 = edges[idx2]
            res = segment_intersect_3d(a0, a1, b0, b1, tol)
            if _adjacent(link, (ci, i), (cj, j)):
                if res.kind != "shared-endpoint":
                    return EmbeddingReport(
                        ok=False,
                        message=f"adjacent sticks ({ci},{i}) and ({cj},{j}) meet badly: {res.kind}",
                        pair=((ci, i), (cj, j)),
                    )
            else:
                if res.kind != "disjoint":
                    return EmbeddingReport(
                        ok=False,
                        message=f"sticks ({ci},{i}) and ({cj},{j}) intersect: {res.kind}",
                        pair=((ci, i), (cj, j)),
                    )
    return EmbeddingReport(ok=True)


# ---------------------------------------------------------------------------
# projections
# ---------------------------------------------------------------------------

def projection_frame(direction: Vec3) -> tuple[Vec3, Vec3, Vec3]:
    """Deterministic orthonormal frame (u, v, w) with w = direction."""
    w = v_unit(direction)
    axes = [(1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0)]
    a = min(axes, key=lambda ax: abs(v_dot(ax, w)))
    u = v_unit(v_cross(a, w))
    v = v_cross(w, u)
    return u, v, w


def project_point(p: Vec3, frame: tuple[Vec3, Vec3, Vec3]) -> tuple[float, float, float]:
    """(x, y, depth) of p in the projection frame; larger depth is nearer."""
    u, v, w = frame
    return (v_dot(p, u), v_dot(p, v), v_dot(p, w))


def _seg2_cross(a0, a1, b0, b1):
    """Transverse 2D crossing of open segments; returns (s, t) or None."""
    d1 = (a1[0] - a0[0], a1[1] - a0[1])
    d2 = (b1[0] - b0[0], b1[1] - b0[1])
    den = d1[0] * d2[1] - d1[1] * d2[0]
    if abs(den) < 1e-14:
        return None
    r = (b0[0] - a0[0], b0[1] - a0[1])
    s = (r[0] * d2[1] - r[1] * d2[0]) / den
    t = (r[0] * d1[1] - r[1] * d1[0]) / den
    if 0.0 <= s <= 1.0 and 0.0 <= t <= 1.0:
        return (s, t)
    return None


@dataclass(frozen=True)
class GenericityReport:
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def projection_genericity(
    link: PolyLink, direction: Vec3, sep: float = 1e-7
) -> GenericityReport:
    """Certificate: distinct projected vertices, no vertex on a non-adjacent
    projected edge, no triple points, no parallel overlapping shadows, and no
    stick parallel to the view direction."""
    frame = projection_frame(direction)
    edges = link.all_edges()

    pts2 = []
    for comp in link.components:
        for p in comp.vertices:
            x, y, _ = project_point(p, frame)
            pts2.append((x, y))
    for i in range(len(pts2)):
        for j in range(i + 1, len(pts2)):
            if math.hypot(pts2[i][0] - pts2[j][0], pts2[i][1] - pts2[j][1]) < sep:
                return GenericityReport(False, "projected vertices coincide")

    shadows = []
    for ci, ei, a, b in edges:
        ax, ay, ad = project_point(a, frame)
        bx, by, bd = project_point(b, frame)
        if math.hypot(bx - ax, by - ay) < sep:
            return GenericityReport(False, "stick parallel to the view direction")
        shadows.append(((ci, ei), (ax, ay, ad), (bx, by, bd)))

    # vertex on non-adjacent edge shadow
    vert_ids = []
    k = 0
    for ci, comp in enumerate(link.components):
        n = len(comp.vertices)
        for vi in range(n):
            vert_ids.append((ci, vi))
        k += n
    for (ci, vi), (px, py) in zip(vert_ids, pts2):
        for (cj, ej), (ax, ay, _), (bx, by, _) in shadows:
            if ci == cj:
                n = link.components[ci].stick_count
                touches = vi == ej or vi == (ej + 1) % len(link.components[ci].vertices)
                if link.components[ci].closed and ej == n - 1 and vi == 0:
                    touches = True
                if touches:
                    continue
            dx, dy = bx - ax, by - ay
            ln2 = dx * dx + dy * dy
            t = max(0.0, min(1.0, ((px - ax) * dx + (py - ay) * dy) / ln2))
            qx, qy = ax + t * dx, ay + t * dy
            if math.hypot(px - qx, py - qy) < sep:
                return GenericityReport(False, "projected vertex lies on a non-adjacent edge")

    # pairwise crossings: collect, reject near-parallel overlaps and triples
    cross_pts = []
    for i in range(len(shadows)):
        (id1, (ax, ay, _), (bx, by, _)) = shadows[i]
        for j in range(i + 1, len(shadows)):
            (id2, (cx, cy, _), (dx_, dy_, _)) = shadows[j]
            if _adjacent(link, id1, id2):
                continue
            d1 = (bx - ax, by - ay)
            d2 = (dx_ - cx, dy_ - cy)
            den = d1[0] * d2[1] - d1[1] * d2[0]
            l1 = math.hypot(*d1)
            l2 = math.hypot(*d2)
            if abs(den) < sep * l1 * l2:
                # near-parallel: only a problem when the shadows nearly overlap
                w = (cx - ax, cy - ay)
                perp = abs(w[0] * d1[1] - w[1] * d1[0]) / l1
                t0 = (w[0] * d1[0] + w[1] * d1[1]) / (l1 * l1)
                t1 = ((dx_ - ax) * d1[0] + (dy_ - ay) * d1[1]) / (l1 * l1)
                if perp < sep and min(max(t0, t1), 1.0) - max(min(t0, t1), 0.0) > 0:
                    return GenericityReport(False, "parallel overlapping shadows")
                continue
            hit = _seg2_cross((ax, ay), (bx, by), (cx, cy), (dx_, dy_))
            if hit is not None:
                s, t = hit
                if min(s, 1 - s) * l1 < sep or min(t, 1 - t) * l2 < sep:
                    return GenericityReport(False, "crossing at a projected vertex")
                cross_pts.append((ax + s * (bx - ax), ay + s * (by - ay)))
    for i in range(len(cross_pts)):
        for j in range(i + 1, len(cross_pts)):
            if math.hypot(
                cross_pts[i][0] - cross_pts[j][0], cross_pts[i][1] - cross_pts[j][1]
            ) < sep:
                return GenericityReport(False, "three edges project through a common point")
    return GenericityReport(True)


def find_generic_projection(link: PolyLink, preferred: Vec3 = (0.0, 0.0, 1.0)) -> Vec3:
    """Deterministic spiral search for a generic view direction near `preferred`."""
    w = v_unit(preferred)
    if projection_genericity(link, w):
        return w
    u, v, _ = projection_frame(w)
    for k in range(1, SPIRAL_BUDGET + 1):
        polar = k * SPIRAL_STEP
        azim = k * _GOLDEN_ANGLE
        d = v_add(
            v_scale(w, math.cos(polar)),
            v_add(
                v_scale(u, math.sin(polar) * math.cos(azim)),
                v_scale(v, math.sin(polar) * math.sin(azim)),
            ),
        )
        d = v_unit(d)
        if projection_genericity(link, d):
            return d
    raise NonGenericProjectionError(
        "no generic projection found within the search budget (pathological geometry)"
    )


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def link_to_geometry_dict(link: PolyLink) -> dict:
    return {"components": [[list(p) for p in c.vertices] for c in link.components]}


def link_from_geometry_dict(data: dict) -> PolyLink:
    comps = tuple(
        Chain(tuple(tuple(float(x) for x in p) for p in verts), closed=True)
        for verts in data["components"]
    )
    return PolyLink(components=comps)


def write_geometry_json(link: PolyLink, path: str) -> None:
    with open(path, "w") as f:
        json.dump(link_to_geometry_dict(link), f)
        f.write("\n")


def read_geometry_json(path: str) -> PolyLink:
    with open(path) as f:
        return link_from_geometry_dict(json.load(f))


def write_obj(link: PolyLink, path: str) -> None:
    lines = []
    offset = 1
    for ci, comp in enumerate(link.components):
        lines.append(f"o component_{ci}")
        for p in comp.vertices:
            lines.append("v " + " ".join(f"{x:.12g}" for x in p))
        idx = list(range(offset, offset + len(comp.vertices)))
        if comp.closed:
            idx.append(offset)
        lines.append("l " + " ".join(str(i) for i in idx))
        offset += len(comp.vertices)
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")


def write_csv(link: PolyLink, path: str) -> None:
    rows = ["component,vertex,x,y,z"]
    for ci, comp in enumerate(link.components):
        for vi, p in enumerate(comp.vertices):
            rows.append(f"{ci},{vi}," + ",".join(f"{x:.12g}" for x in p))
    with open(path, "w") as f:
        f.write("\n".join(rows) + "\n")
