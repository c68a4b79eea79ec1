"""Link diagrams as combinatorial objects.

A diagram is a list of crossings, each holding the four incident arc labels
in counterclockwise order starting from the incoming under-arc, plus which
slot carries the incoming over-arc.  Everything else (strand traversal,
faces, alternation, bigons, bracket polynomial, determinants) derives from
that structure.  Diagrams come from two independent sources: geometric
extraction of a projected stick link, and the purely combinatorial builder
for standard 2-bridge diagrams, so the two can be compared as oracles.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import cached_property

from .geom import (
    NonGenericProjectionError,
    PolyLink,
    Vec3,
    project_point,
    projection_frame,
    projection_genericity,
    _seg2_cross,
)

DEFAULT_BRACKET_BUDGET = 20
BRACKET_BUDGET_ENV = "SUPERCOIL_BRACKET_BUDGET"

# Laurent polynomials in A: exponent -> integer coefficient
Laurent = dict[int, int]

LOOP_VALUE: Laurent = {2: -1, -2: -1}  # delta = -A^2 - A^-2


class DiagramError(ValueError):
    """Structurally invalid diagram."""


class BracketBudgetError(DiagramError):
    """State sum would exceed the crossing budget."""


def bracket_budget() -> int:
    raw = os.environ.get(BRACKET_BUDGET_ENV)
    if raw is None:
        return DEFAULT_BRACKET_BUDGET
    return int(raw)


# ---------------------------------------------------------------------------
# Laurent helpers
# ---------------------------------------------------------------------------

def laurent_add(p: Laurent, q: Laurent) -> Laurent:
    r = dict(p)
    for e, c in q.items():
        r[e] = r.get(e, 0) + c
        if r[e] == 0:
            del r[e]
    return r


def laurent_mul(p: Laurent, q: Laurent) -> Laurent:
    r: Laurent = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = e1 + e2
            r[e] = r.get(e, 0) + c1 * c2
    return {e: c for e, c in r.items() if c != 0}


def laurent_pow(p: Laurent, n: int) -> Laurent:
    out: Laurent = {0: 1}
    for _ in range(n):
        out = laurent_mul(out, p)
    return out


def laurent_monomial(exponent: int, coeff: int = 1) -> Laurent:
    return {exponent: coeff} if coeff else {}

def laurent_key(p: Laurent) -> tuple:
    return tuple(sorted(p.items()))


def laurent_str(p: Laurent) -> str:
    if not p:
        return "0"
    return " ".join(f"{e}:{c}" for e, c in sorted(p.items()))


def laurent_mirror(p: Laurent) -> Laurent:
    """A -> A^-1, the bracket of the mirror diagram."""
    return {-e: c for e, c in p.items()}


# ---------------------------------------------------------------------------
# crossings and diagrams
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Crossing:
    """Four arc labels CCW from the incoming under-arc, plus over-in slot."""

    slots: tuple[int, int, int, int]
    over_in_slot: int  # 1 or 3

    def __post_init__(self):
        if self.over_in_slot not in (1, 3):
            raise DiagramError("over_in_slot must be 1 or 3")

    @property
    def under_in(self) -> int:
        return self.slots[0]

    @property
    def under_out(self) -> int:
        return self.slots[2]

    @property
    def over_in(self) -> int:
        return self.slots[self.over_in_slot]

    @property
    def over_out(self) -> int:
        return self.slots[4 - self.over_in_slot]

    @property
    def sign(self) -> int:
        return 1 if self.over_in_slot == 3 else -1


class Diagram:
    """A 4-valent planar diagram with over/under data.

    `outer_face` optionally marks the unbounded face (as an index into
    `faces`); bounded-face predicates such as bigon counting use it.
    """

    def __init__(self, crossings: list[Crossing], free_loops: int = 0,
                 outer_sector: tuple[int, int] | None = None):
        self.crossings = tuple(crossings)
        self.free_loops = free_loops
        self._outer_sector = outer_sector
        self._validate()

    # -- structure ----------------------------------------------------------

    def _validate(self):
        seen: dict[int, list[tuple[int, int]]] = {}
        for ci, x in enumerate(self.crossings):
            for s, arc in enumerate(x.slots):
                seen.setdefault(arc, []).append((ci, s))
        for arc, ends in seen.items():
            if len(ends) != 2:
                raise DiagramError(f"arc {arc} appears {len(ends)} times, expected 2")
        self._arc_ends = seen
        # each arc must have exactly one incoming and one outgoing occurrence
        for arc, ends in seen.items():
            roles = []
            for ci, s in ends:
                x = self.crossings[ci]
                roles.append("in" if (s == 0 or s == x.over_in_slot) else "out")
            if sorted(roles) != ["in", "out"]:
                raise DiagramError(f"arc {arc} has inconsistent flow: {roles}")

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def arcs(self) -> list[int]:
        return sorted(self._arc_ends)

    @property
    def pd_code(self) -> list[tuple[int, int, int, int]]:
        return [x.slots for x in self.crossings]

    @property
    def signs(self) -> list[int]:
        return [x.sign for x in self.crossings]

    @property
    def writhe(self) -> int:
        return sum(self.signs)

    def _arc_in_end(self, arc: int) -> tuple[int, int]:
        for ci, s in self._arc_ends[arc]:
            x = self.crossings[ci]
            if s == 0 or s == x.over_in_slot:
                return ci, s
        raise DiagramError(f"arc {arc} has no incoming end")

    @cached_property
    def components(self) -> list[list[int]]:
        """Arc cycles, one per link component that meets a crossing."""
        comps = []
        unvisited = set(self._arc_ends)
        while unvisited:
            start = min(unvisited)
            cycle = []
            arc = start
            while True:
                cycle.append(arc)
                unvisited.discard(arc)
                ci, s = self._arc_in_end(arc)
                x = self.crossings[ci]
                out_slot = 2 if s == 0 else 4 - x.over_in_slot
                arc = x.slots[out_slot]
                if arc == start:
                    break
            comps.append(cycle)
        return comps

    @property
    def n_components(self) -> int:
        return len(self.components) + self.free_loops

    def component_of_arc(self) -> dict[int, int]:
        out = {}
        for k, cyc in enumerate(self.components):
            for a in cyc:
                out[a] = k
        return out

    def strand_sequence(self, comp: list[int]) -> list[tuple[int, str]]:
        """(crossing index, 'over'|'under') visits along a component cycle."""
        seq = []
        for arc in comp:
            ci, s = self._arc_in_end(arc)
            seq.append((ci, "under" if s == 0 else "over"))
        return seq

    # -- faces ---------------------------------------------------------------

    @cached_property
    def faces(self) -> list[list[tuple[int, int]]]:
        """Face orbits as lists of (crossing, slot) darts."""
        other_end = {}
        for arc, ends in self._arc_ends.items():
            (a, b) = ends
            other_end[a] = b
            other_end[b] = a
        darts = [(ci, s) for ci in range(len(self.crossings)) for s in range(4)]
        seen = set()
        faces = []
        for d0 in darts:
            if d0 in seen:
                continue
            orbit = []
            d = d0
            while True:
                orbit.append(d)
                seen.add(d)
                cj, sj = other_end[d]
                d = (cj, (sj + 1) % 4)
                if d == d0:
                    break
            faces.append(orbit)
        return faces

    def face_arcs(self, face: list[tuple[int, int]]) -> list[int]:
        return [self.crossings[c].slots[s] for (c, s) in face]

    @cached_property
    def outer_face(self) -> int | None:
        """Index of the marked unbounded face, when known."""
        if self._outer_sector is None:
            return None
        # the face wrapping the sector between slots k and k+1 is the orbit
        # holding dart (crossing, k+1)
        ci, k = self._outer_sector
        dart = (ci, (k + 1) % 4)
        for fi, face in enumerate(self.faces):
            if dart in face:
                return fi
        raise DiagramError("marked outer sector not found in any face")

    def euler_check(self) -> bool:
        """V - E + F = 2 for a connected diagram with at least one crossing."""
        if not self.crossings:
            return True
        v = len(self.crossings)
        e = 2 * len(self.crossings)
        f = len(self.faces)
        return v - e + f == 2 and self.is_connected()

    def is_connected(self) -> bool:
        if not self.crossings:
            return self.free_loops <= 1
        if self.free_loops:
            return False
        adj: dict[int, set[int]] = {ci: set() for ci in range(len(self.crossings))}
        for arc, ends in self._arc_ends.items():
            (c1, _), (c2, _) = ends
            adj[c1].add(c2)
            adj[c2].add(c1)
        stack = [0]
        seen = {0}
        while stack:
            c = stack.pop()
            for d in adj[c]:
                if d not in seen:
                    seen.add(d)
                    stack.append(d)
        return len(seen) == len(self.crossings)

    # -- serialization -------------------------------------------------------

    def to_pd_dict(self) -> dict:
        return {"crossings": [list(x.slots) for x in self.crossings],
                "signs": self.signs}


# ---------------------------------------------------------------------------
# predicates
# ---------------------------------------------------------------------------

def is_alternating(d: Diagram) -> bool:
    """True iff over/under alternates along every strand."""
    for comp in d.components:
        seq = d.strand_sequence(comp)
        n = len(seq)
        if n % 2 == 1:
            return False
        for i in range(n):
            if seq[i][1] == seq[(i + 1) % n][1]:
                return False
    return True


def count_bigons(d: Diagram) -> int:
    """Bounded faces enclosed by exactly two arcs at two distinct crossings.

    The unbounded face is excluded when the diagram knows it; this matters
    only for the (2, c) plat whose outer region happens to be a 2-gon.
    """
    total = 0
    for fi, face in enumerate(d.faces):
        if len(face) != 2 or fi == d.outer_face:
            continue
        (c1, _), (c2, _) = face
        arcs = d.face_arcs(face)
        if c1 != c2 and arcs[0] != arcs[1]:
            total += 1
    return total


# ---------------------------------------------------------------------------
# bracket polynomial
# ---------------------------------------------------------------------------

class _RollbackUnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}
        self.size = {x: 1 for x in items}
        self.trail: list[tuple] = []

    def find(self, x):
        while self.parent[x] != x:
            x = self.parent[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            self.trail.append(None)
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.trail.append((rb, ra))
        return True

    def undo(self):
        op = self.trail.pop()
        if op is not None:
            rb, ra = op
            self.parent[rb] = rb
            self.size[ra] -= self.size[rb]


def kauffman_bracket(d: Diagram, budget: int | None = None) -> Laurent:
    """Bracket state sum over all smoothings, loop value -A^2 - A^-2."""
    cap = bracket_budget() if budget is None else budget
    if d.n_crossings > cap:
        raise BracketBudgetError(
            f"{d.n_crossings} crossings exceeds the bracket budget of {cap}"
        )
    arcs = d.arcs
    if not d.crossings:
        return laurent_pow(LOOP_VALUE, max(d.free_loops - 1, 0))

    uf = _RollbackUnionFind(arcs)
    total: Laurent = {}
    crossings = d.crossings
    n = len(crossings)

    def merges_for(x: Crossing, smoothing: str) -> list[tuple[int, int]]:
        a, b, c, cc = x.slots
        if smoothing == "A":
            return [(a, b), (c, cc)]
        return [(a, cc), (b, c)]

    def recurse(i: int, a_minus_b: int, merged: int):
        nonlocal total
        if i == n:
            # loops = arcs - merges that actually joined classes, counted per state
            loops = len(arcs) - merged + d.free_loops
            term = laurent_mul(
                laurent_monomial(a_minus_b),
                laurent_pow(LOOP_VALUE, loops - 1),
            )
            total = laurent_add(total, term)
            return
        x = crossings[i]
        for smoothing, delta in (("A", 1), ("B", -1)):
            joined = 0
            for (p, q) in merges_for(x, smoothing):
                if uf.union(p, q):
                    joined += 1
            recurse(i + 1, a_minus_b + delta, merged + joined)
            for _ in range(2):
                uf.undo()

    recurse(0, 0, 0)
    return total


def normalized_bracket(d: Diagram, writhe: int | None = None,
                       budget: int | None = None) -> Laurent:
    """(-A^3)^(-w) <D> for the traversal orientation (or a supplied writhe)."""
    w = d.writhe if writhe is None else writhe
    raw = kauffman_bracket(d, budget=budget)
    factor = laurent_monomial(-3 * w, 1 if w % 2 == 0 else -1)
    return laurent_mul(raw, factor)


def _orientation_writhes(d: Diagram) -> list[int]:
    """Writhes over all relative orientations of the components."""
    comps = d.components
    comp_of = d.component_of_arc()
    base = d.writhe
    if len(comps) <= 1:
        return [base]
    # flipping one component negates signs of crossings between it and the rest
    out = set()
    for mask in range(2 ** (len(comps) - 1)):
        flipped = {k + 1 for k in range(len(comps) - 1) if (mask >> k) & 1}
        w = 0
        for x in d.crossings:
            cu = comp_of[x.under_in]
            co = comp_of[x.over_in]
            s = x.sign
            if (cu in flipped) != (co in flipped):
                s = -s
            w += s
        out.add(w)
    return sorted(out)


def bracket_invariant_set(d: Diagram, budget: int | None = None) -> frozenset:
    """Normalized bracket values over all component orientation choices.

    Two diagrams of the same link (with matching component orientations up to
    reversal) share at least one value; for comparisons we use set equality.
    """
    raw = kauffman_bracket(d, budget=budget)
    out = set()
    for w in _orientation_writhes(d):
        factor = laurent_monomial(-3 * w, 1 if w % 2 == 0 else -1)
        out.add(laurent_key(laurent_mul(raw, factor)))
    return frozenset(out)


# ---------------------------------------------------------------------------
# determinants
# ---------------------------------------------------------------------------

def _eval_at_zeta8(p: Laurent) -> tuple[int, int, int, int]:
    """Evaluate at A = exp(i*pi/4) in Z[zeta_8], basis (1, z, z^2, z^3)."""
    comp = [0, 0, 0, 0]
    for e, c in p.items():
        k = e % 8
        sign = 1
        if k >= 4:
            k -= 4
            sign = -1
        comp[k] += sign * c
    return tuple(comp)


def _zeta8_mul(u, v):
    out = [0] * 4
    for i, a in enumerate(u):
        if not a:
            continue
        for j, b in enumerate(v):
            if not b:
                continue
            k = i + j
            s = 1
            if k >= 4:
                k -= 4
                s = -1
            out[k] += s * a * b
    return tuple(out)


def _zeta8_conj(u):
    # conj(z^k) = z^-k = -z^(4-k) for k=1..3
    a, b, c, d = u
    return (a, -d, -c, -b)


def determinant(d: Diagram, budget: int | None = None) -> int:
    """|Jones at t=-1| via the bracket evaluated at A = exp(i*pi/4)."""
    raw = kauffman_bracket(d, budget=budget)
    v = _eval_at_zeta8(raw)
    m = _zeta8_mul(v, _zeta8_conj(v))
    if m[1] or m[2] or m[3] or m[0] < 0:
        raise DiagramError("bracket modulus is not a rational integer")
    r = math.isqrt(m[0])
    if r * r != m[0]:
        raise DiagramError("bracket modulus squared is not a perfect square")
    return r


def _bareiss_det(mat: list[list[int]]) -> int:
    n = len(mat)
    if n == 0:
        return 1
    m = [row[:] for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def goeritz_determinant(d: Diagram) -> int:
    """Link determinant from the Goeritz matrix of a checkerboard coloring.

    Works for any connected diagram, with cost polynomial in the crossing
    number, so it backs verification of builds beyond the bracket budget.
    """
    if not d.crossings:
        return 1 if d.free_loops <= 1 else 0
    if not d.is_connected():
        raise DiagramError("Goeritz determinant requires a connected diagram")

    faces = d.faces
    # sector (c, k) lies between slots k and k+1 and is wrapped by the face
    # orbit containing dart (c, k+1)
    sector_face: dict[tuple[int, int], int] = {}
    for fi, face in enumerate(faces):
        for (ci, s) in face:
            sector_face[(ci, (s - 1) % 4)] = fi

    # checkerboard 2-coloring: the two faces flanking any arc differ
    color = {0: 0}
    stack = [0]
    adj: dict[int, set[int]] = {fi: set() for fi in range(len(faces))}
    for arc, ends in d._arc_ends.items():
        (c1, s1), _ = ends
        f1 = sector_face[(c1, s1)]
        f2 = sector_face[(c1, (s1 - 1) % 4)]
        adj[f1].add(f2)
        adj[f2].add(f1)
    while stack:
        f = stack.pop()
        for g in adj[f]:
            if g not in color:
                color[g] = 1 - color[f]
                stack.append(g)
            elif color[g] == color[f]:
                raise DiagramError("diagram is not checkerboard colorable")

    whites = [fi for fi in range(len(faces)) if color[fi] == 0]
    white_index = {fi: i for i, fi in enumerate(whites)}
    k = len(whites)
    g = [[0] * k for _ in range(k)]
    for ci in range(len(d.crossings)):
        sectors = [sector_face[(ci, s)] for s in range(4)]
        # whites occupy one opposite pair; sectors (1,3) are the A-regions
        if color[sectors[1]] == 0:
            w1, w2 = sectors[1], sectors[3]
            eta = 1
        else:
            w1, w2 = sectors[0], sectors[2]
            eta = -1
        i, j = white_index[w1], white_index[w2]
        if i == j:
            continue
        g[i][j] += eta
        g[j][i] += eta
        g[i][i] -= eta
        g[j][j] -= eta
    reduced = [row[1:] for row in g[1:]]
    return abs(_bareiss_det(reduced))


# ---------------------------------------------------------------------------
# geometric extraction
# ---------------------------------------------------------------------------

def extract_diagram(link: PolyLink, direction: Vec3) -> Diagram:
    """Diagram of the stick link projected along `direction`.

    Crossings are the transverse double points of the projection; over/under
    is decided by depth along the view direction, slots are ordered
    counterclockwise in the projection plane from the incoming under-arc.
    """
    cert = projection_genericity(link, direction)
    if not cert:
        raise NonGenericProjectionError(f"projection not generic: {cert.reason}")
    frame = projection_frame(direction)

    edges = []  # (comp, idx, (x0,y0), (x1,y1), depth0, depth1)
    for ci, comp in enumerate(link.components):
        for ei, (a, b) in enumerate(comp.edges()):
            ax, ay, ad = project_point(a, frame)
            bx, by, bd = project_point(b, frame)
            edges.append((ci, ei, (ax, ay), (bx, by), ad, bd))

    def adjacent(e1, e2):
        ci, i = e1[0], e1[1]
        cj, j = e2[0], e2[1]
        if ci != cj:
            return False
        n = link.components[ci].stick_count
        return abs(i - j) == 1 or abs(i - j) == n - 1

    hits = []  # (crossing id, over edge key, s_over, under edge key, t_under, point)
    events: dict[tuple[int, int], list[tuple[float, int, str]]] = {
        (e[0], e[1]): [] for e in edges
    }
    cid = 0
    for i in range(len(edges)):
        for j in range(i + 1, len(edges)):
            e1, e2 = edges[i], edges[j]
            if adjacent(e1, e2):
                continue
            hit = _seg2_cross(e1[2], e1[3], e2[2], e2[3])
            if hit is None:
                continue
            s, t = hit
            d1 = e1[4] + s * (e1[5] - e1[4])
            d2 = e2[4] + t * (e2[5] - e2[4])
            if d1 > d2:
                over, s_o, under, t_u = e1, s, e2, t
            else:
                over, s_o, under, t_u = e2, t, e1, s
            px = e1[2][0] + s * (e1[3][0] - e1[2][0])
            py = e1[2][1] + s * (e1[3][1] - e1[2][1])
            hits.append((cid, over, s_o, under, t_u, (px, py)))
            events[(over[0], over[1])].append((s_o, cid, "over"))
            events[(under[0], under[1])].append((t_u, cid, "under"))
            cid += 1

    # traversal: assign arcs per component
    free_loops = 0
    arc_counter = 0
    # per crossing record of (in_arc, out_arc) per role and 2D directions
    cross_info: dict[int, dict] = {
        c[0]: {"point": c[5]} for c in hits
    }
    for ci, comp in enumerate(link.components):
        seq = []  # ordered incidences along the component
        for ei in range(comp.stick_count):
            evs = sorted(events[(ci, ei)])
            edge = next(e for e in edges if e[0] == ci and e[1] == ei)
            (x0, y0), (x1, y1) = edge[2], edge[3]
            direction2 = (x1 - x0, y1 - y0)
            for t, cid_, role in evs:
                seq.append((cid_, role, direction2))
        if not seq:
            free_loops += 1
            continue
        n = len(seq)
        arcs = [arc_counter + k for k in range(n)]
        arc_counter += n
        for k, (cid_, role, dir2) in enumerate(seq):
            in_arc = arcs[(k - 1) % n]
            out_arc = arcs[k]
            info = cross_info[cid_]
            info[role] = {"in": in_arc, "out": out_arc, "dir": dir2}

    crossings = []
    for cid_ in sorted(cross_info):
        info = cross_info[cid_]
        du = info["under"]["dir"]
        do = info["over"]["dir"]
        base = math.atan2(-du[1], -du[0])  # under-in dart direction

        def rel(angle):
            return (angle - base) % (2 * math.pi)

        darts = [
            (0.0, info["under"]["in"]),
            (rel(math.atan2(du[1], du[0])), info["under"]["out"]),
            (rel(math.atan2(-do[1], -do[0])), info["over"]["in"]),
            (rel(math.atan2(do[1], do[0])), info["over"]["out"]),
        ]
        darts.sort()
        slots = tuple(arc for _, arc in darts)
        over_in_slot = next(
            s for s in range(4)
            if darts[s][1] == info["over"]["in"] and s != 0
        )
        if darts[2][1] != info["under"]["out"]:
            raise DiagramError("transversality violated in slot ordering")
        crossings.append(Crossing(slots=slots, over_in_slot=over_in_slot))

    return Diagram(crossings, free_loops=free_loops)


# ---------------------------------------------------------------------------
# building diagrams from unoriented crossing data
# ---------------------------------------------------------------------------

def diagram_from_unoriented(
    protos: list[tuple[tuple[int, int, int, int], int]],
    outer_sector: tuple[int, int] | None = None,
    free_loops: int = 0,
) -> Diagram:
    """Orient and normalize unoriented crossing data.

    Each proto-crossing is (slots CCW, under_slot_parity) where the under
    strand occupies slots {p, p+2} for parity p in {0, 1}.  Strands are
    traversed (entering slot s exits slot s+2), each crossing's tuple is
    rotated so slot 0 is the incoming under-arc, and arcs are relabeled in
    traversal order per component.
    """
    ends: dict[int, list[tuple[int, int]]] = {}
    for ci, (slots, _) in enumerate(protos):
        for s, arc in enumerate(slots):
            ends.setdefault(arc, []).append((ci, s))
    for arc, occ in ends.items():
        if len(occ) != 2:
            raise DiagramError(f"arc {arc} appears {len(occ)} times, expected 2")

    entry_slot: dict[tuple[int, int], bool] = {}  # dart -> strand enters here
    arc_label: dict[int, int] = {}                # arc -> traversal-order label
    counter = 0
    visited_arcs: set[int] = set()
    for start_arc in sorted(ends):
        if start_arc in visited_arcs:
            continue
        # orient this component: flow start_arc toward its first-listed end
        arc = start_arc
        head = ends[arc][0]
        while True:
            visited_arcs.add(arc)
            counter += 1
            arc_label[arc] = counter
            entry_slot[head] = True
            ci, s = head
            exit_dart = (ci, (s + 2) % 4)
            nxt = protos[ci][0][(s + 2) % 4]
            e1, e2 = ends[nxt]
            head = e2 if e1 == exit_dart else e1
            arc = nxt
            if arc == start_arc:
                break

    crossings = []
    sector_map: dict[tuple[int, int], tuple[int, int]] = {}
    for ci, (slots, parity) in enumerate(protos):
        under_candidates = [s for s in (parity, parity + 2) if entry_slot.get((ci, s))]
        if len(under_candidates) != 1:
            raise DiagramError(f"crossing {ci} has inconsistent strand flow")
        u = under_candidates[0]
        rotated = tuple(arc_label[slots[(u + k) % 4]] for k in range(4))
        over_entries = [k for k in (1, 3) if entry_slot.get((ci, (u + k) % 4))]
        if len(over_entries) != 1:
            raise DiagramError(f"crossing {ci} has inconsistent over-strand flow")
        crossings.append(Crossing(slots=rotated, over_in_slot=over_entries[0]))
        for k in range(4):
            sector_map[(ci, (u + k) % 4)] = (ci, k)

    outer = sector_map[outer_sector] if outer_sector is not None else None
    return Diagram(crossings, free_loops=free_loops, outer_sector=outer)


# ---------------------------------------------------------------------------
# standard 2-bridge diagrams
# ---------------------------------------------------------------------------

def standard_diagram(spec, mirror: bool = False) -> Diagram:
    """Reduced alternating standard diagram of the 2-bridge link of `spec`.

    Built as the row of integral twist boxes: odd-position entries grow the
    tangle to the east, even-position entries to the south, then the numerator
    closure joins the four open ends.  Wholly combinatorial; serves as the
    oracle against geometric builds.
    """
    from .link import ConwaySpec  # local import to avoid a cycle

    if not isinstance(spec, ConwaySpec):
        spec = ConwaySpec(tuple(spec))

    label = iter(range(1, 10 ** 9))
    a_top = next(label)
    a_bot = next(label)
    nw, ne, sw, se = a_top, a_top, a_bot, a_bot
    protos: list[tuple[list[int], int]] = []  # (slots CCW, under parity)

    def twist_east(top_under: bool):
        nonlocal ne, se
        out_top, out_bot = next(label), next(label)
        # slots CCW: (W-top, W-bottom, E-bottom, E-top); strand W-top/E-bottom
        # is the parity-0 diagonal
        protos.append(([ne, se, out_bot, out_top], 0 if top_under else 1))
        ne, se = out_top, out_bot

    def twist_south(left_under: bool):
        nonlocal sw, se
        out_l, out_r = next(label), next(label)
        # slots CCW: (N-left, S-left, S-right, N-right); N-left/S-right is
        # the parity-0 diagonal
        protos.append(([sw, out_l, out_r, se], 0 if left_under else 1))
        sw, se = out_l, out_r

    for i, c in enumerate(spec.c_list):
        for _ in range(c):
            if i % 2 == 0:
                twist_east(top_under=not mirror)
            else:
                twist_south(left_under=not mirror)

    # numerator closure: merge the dangling top pair and bottom pair
    parent: dict[int, int] = {}

    def find(x):
        while parent.get(x, x) != x:
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    union(nw, ne)
    union(sw, se)

    merged = [(tuple(find(s) for s in slots), parity) for slots, parity in protos]
    # the region west of the first crossing lies in the unbounded face
    return diagram_from_unoriented(merged, outer_sector=(0, 0))


# ---------------------------------------------------------------------------
# flype oracle
# ---------------------------------------------------------------------------

def min_bigons_over_flypes(spec) -> int:
    """Brute-force minimum bigon count over flype redistributions.

    End tangles are fixed; each intermediate tangle either stays whole
    (c_i - 1 bigons) or splits into two twist regions c_i' + c_i'' with both
    parts >= 1 (c_i' - 1 + c_i'' - 1 bigons).  For n = 1 there are no
    intermediate tangles and the count is c - 1.
    """
    from .link import ConwaySpec

    if not isinstance(spec, ConwaySpec):
        spec = ConwaySpec(tuple(spec))
    if any(c < 2 for c in spec.c_list):
        raise ValueError("bigon oracle requires every c_i >= 2")

    cs = spec.c_list
    n = spec.n
    if n == 1:
        return cs[0] - 1
    total = (cs[0] - 1) + (cs[-1] - 1)
    for c in cs[1:-1]:
        options = {c - 1}
        for c1 in range(1, c):
            c2 = c - c1
            options.add((c1 - 1) + (c2 - 1))
        total += min(options)
    return total
