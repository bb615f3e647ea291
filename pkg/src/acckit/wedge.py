"""Kaleidoscope wedges and their dihedral expansion into full arrangements.

A wedge of dihedral order m is the fundamental domain of an arrangement with
the symmetry of a regular m-gon.  Its two edges lie on mirror lines meeting
at the apex with angle pi/m; beams bounce between the edges like light in a
kaleidoscope.  Expansion reflects the wedge 2m times around the apex and
reconstructs every pseudoline combinatorially: no coordinates appear
anywhere, only ray indices, rank orders along the rays, and chord
interleaving on the wedge boundary.

Ray convention: the 2m reflected wedge images are indexed 0..2m-1 around the
apex with alternating orientation, wedge w spanning rays w and w+1 (mod 2m).
Even rays carry images of the bottom edge, odd rays images of the top edge,
and opposite rays r and r+m form the full mirror line r mod m.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .structure import IncidenceStructure, ValidationReport, validate

TOP = "T"
BOTTOM = "B"


@dataclass(frozen=True)
class BounceEvent:
    """One bounce of a beam: the edge it hits and its rank along that edge.

    Rank counts positions from infinity toward the apex; rank 1 is the point
    farthest from the apex.  Equal (side, rank) keys in different beams name
    the same geometric point.
    """

    side: str
    rank: int

    def __post_init__(self):
        if self.side not in (TOP, BOTTOM):
            raise ValueError(f"side must be {TOP!r} or {BOTTOM!r}, got {self.side!r}")
        if self.rank < 1:
            raise ValueError(f"rank must be >= 1, got {self.rank}")

    @property
    def key(self) -> tuple[str, int]:
        return (self.side, self.rank)


@dataclass(frozen=True)
class BeamSpec:
    """A beam: its name and bounce events in order, ending at the
    terminating bounce after which the beam retraces its path."""

    name: str
    events: tuple[BounceEvent, ...]

    def __init__(self, name: str, events):
        events = tuple(events)
        if not name or any(c.isspace() for c in name):
            raise ValueError(f"beam name must be a nonempty token, got {name!r}")
        if not events:
            raise ValueError(f"beam {name!r} must have at least one bounce")
        if events[0].side != TOP:
            raise ValueError(f"beam {name!r} must bounce first on the top edge")
        for a, b in zip(events, events[1:]):
            if a.side == b.side:
                raise ValueError(f"beam {name!r} bounce sides must alternate")
        keys = [e.key for e in events]
        if len(set(keys)) != len(keys):
            raise ValueError(f"beam {name!r} repeats a (side, rank) point")
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "events", events)


@dataclass(frozen=True)
class WedgeSpec:
    """Dihedral order m (wedge angle pi/m) plus the beams inside the wedge."""

    m: int
    beams: tuple[BeamSpec, ...]

    def __init__(self, m: int, beams=()):
        beams = tuple(beams)
        if m < 2:
            raise ValueError(f"dihedral order must be >= 2, got {m}")
        names = [b.name for b in beams]
        if len(set(names)) != len(names):
            raise ValueError("beam names must be unique")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "beams", beams)


# Line labels.


@dataclass(frozen=True)
class Mirror:
    index: int


@dataclass(frozen=True)
class BeamCopy:
    beam: str
    copy: int


@dataclass(frozen=True)
class LineAtInfinity:
    pass


# Vertex labels.


@dataclass(frozen=True)
class Apex:
    pass


@dataclass(frozen=True)
class Bounce:
    ray: int
    rank: int


@dataclass(frozen=True)
class Crossing:
    wedge: int


@dataclass(frozen=True)
class Ideal:
    mirror: int


LineLabel = Mirror | BeamCopy | LineAtInfinity
VertexLabel = Apex | Bounce | Crossing | Ideal


@dataclass(frozen=True)
class ExpandedArrangement:
    """Expansion result: the incidence structure plus provenance labels.

    line_labels[i] describes curve id i; vertex_labels[j] describes
    structure.vertices[j].  The structure always passes validation with
    alpha = 1; expansion raises instead of returning anything weaker.
    """

    structure: IncidenceStructure
    line_labels: tuple[LineLabel, ...]
    vertex_labels: tuple[VertexLabel, ...]

    @property
    def m(self) -> int:
        return sum(1 for lab in self.line_labels if isinstance(lab, Mirror))

    def apex_degree(self) -> int:
        for vertex, label in zip(self.structure.vertices, self.vertex_labels):
            if isinstance(label, Apex):
                return len(vertex)
        raise AssertionError("expansion always has an apex vertex")

    def curves_by_label(self) -> dict[str, list[int]]:
        """Curve ids grouped into label classes: mirror, beam:<name>, infinity."""
        groups: dict[str, list[int]] = {}
        for cid, label in enumerate(self.line_labels):
            if isinstance(label, Mirror):
                key = "mirror"
            elif isinstance(label, BeamCopy):
                key = f"beam:{label.beam}"
            else:
                key = "infinity"
            groups.setdefault(key, []).append(cid)
        return groups


class ExpansionError(Exception):
    """Base for failures while expanding a wedge."""


class SelfCrossingBeam(ExpansionError):
    def __init__(self, beam: str, s1: int, s2: int):
        self.beam = beam
        self.segments = (s1, s2)
        super().__init__(f"beam {beam!r} segments {s1} and {s2} cross inside the wedge")


class NonClosingBeam(ExpansionError):
    def __init__(self, beam: str, mirrors: tuple[int, int]):
        self.beam = beam
        self.mirrors = mirrors
        super().__init__(
            f"beam {beam!r} copy reaches infinity at mirrors {mirrors[0]} and "
            f"{mirrors[1]}; a pseudoline must close through a single ideal point"
        )


class ValidationFailed(ExpansionError):
    def __init__(self, report: ValidationReport):
        self.report = report
        super().__init__(f"expanded arrangement failed validation with {len(report.violations)} violation(s)")


class _Expansion:
    """Shared machinery behind expand() and wedge_paths().

    Beam segment s in wedge image w is the atom (beam, w, s); pseudolines are
    the connected components of the gluing graph over atoms.
    """

    def __init__(self, spec: WedgeSpec):
        self.spec = spec
        self.m = spec.m
        self.nw = 2 * spec.m
        self.sizes = [len(b.events) for b in spec.beams]
        self.offsets: list[int] = []
        total = 0
        for size in self.sizes:
            self.offsets.append(total)
            total += self.nw * size
        self.parent = list(range(total))
        # One entry per glue: (atom_a, atom_b, ray, rank, terminating).
        self.glues: list[tuple[int, int, int, int, bool]] = []
        self._build_glues()
        self._collect_components()
        self._find_crossings()

    # Ray geometry (purely combinatorial).

    def bottom_ray(self, w: int) -> int:
        return w if w % 2 == 0 else (w + 1) % self.nw

    def top_ray(self, w: int) -> int:
        return (w + 1) % self.nw if w % 2 == 0 else w

    def ray_of(self, w: int, side: str) -> int:
        return self.top_ray(w) if side == TOP else self.bottom_ray(w)

    def across(self, w: int, ray: int) -> int:
        """The wedge on the other side of one of w's boundary rays."""
        if ray == w:
            return (w - 1) % self.nw
        if ray == (w + 1) % self.nw:
            return (w + 1) % self.nw
        raise AssertionError(f"ray {ray} does not bound wedge {w}")

    def atom(self, bi: int, w: int, s: int) -> int:
        return self.offsets[bi] + w * self.sizes[bi] + s

    # Union-find.

    def _find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def _union(self, a: int, b: int):
        ra, rb = self._find(a), self._find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)

    def _build_glues(self):
        for bi, beam in enumerate(self.spec.beams):
            t = self.sizes[bi]
            for i, event in enumerate(beam.events, start=1):
                if i < t:
                    for w in range(self.nw):
                        ray = self.ray_of(w, event.side)
                        w2 = self.across(w, ray)
                        self.glues.append(
                            (self.atom(bi, w, i - 1), self.atom(bi, w2, i), ray, event.rank, False)
                        )
                else:
                    # Terminating bounce: the retrace is the mirror image, so
                    # the last segment glues to its own reflection across the
                    # terminating ray.  Each unordered wedge pair once.
                    seen: set[tuple[int, int]] = set()
                    for w in range(self.nw):
                        ray = self.ray_of(w, event.side)
                        w2 = self.across(w, ray)
                        key = (min(w, w2), max(w, w2))
                        if key in seen:
                            continue
                        seen.add(key)
                        self.glues.append(
                            (self.atom(bi, w, t - 1), self.atom(bi, w2, t - 1), ray, event.rank, True)
                        )
        for a, b, _, _, _ in self.glues:
            self._union(a, b)

    def _collect_components(self):
        """Group per-beam components, check closure, assign curve ids.

        Every component is a path whose two loose ends are entry segments
        (s = 0); the entry runs parallel to the wedge's bottom edge and so
        reaches infinity at the bottom mirror's ideal point.  Both ends must
        land on the same mirror or the curve fails to close projectively.
        """
        self.component_ends: dict[int, list[int]] = {}
        for bi in range(len(self.spec.beams)):
            for w in range(self.nw):
                root = self._find(self.atom(bi, w, 0))
                self.component_ends.setdefault(root, []).append(w)

        self.root_to_curve: dict[int, int] = {}
        self.root_ideal: dict[int, int] = {}
        self.copy_counts: list[int] = []
        next_id = self.m
        for bi, beam in enumerate(self.spec.beams):
            roots = sorted(
                {self._find(self.atom(bi, w, 0)) for w in range(self.nw)},
                key=lambda r: min(self.component_ends[r]),
            )
            self.copy_counts.append(len(roots))
            for copy, root in enumerate(roots):
                ends = self.component_ends[root]
                mirrors = sorted({self.bottom_ray(w) % self.m for w in ends})
                if len(mirrors) != 1:
                    raise NonClosingBeam(beam.name, (mirrors[0], mirrors[-1]))
                self.root_to_curve[root] = next_id
                self.root_ideal[root] = mirrors[0]
                next_id += 1
        self.infinity_id = next_id
        self.n = next_id + 1

    def curve_of(self, bi: int, w: int, s: int) -> int:
        return self.root_to_curve[self._find(self.atom(bi, w, s))]

    def _find_crossings(self):
        """Interleaving segment pairs inside the fundamental wedge.

        Boundary cycle: apex, bottom ray outward (decreasing rank), bottom
        ideal, top ideal, top ray inward (increasing rank), back to the
        apex.  Chords strictly interleaving on this cycle cross once inside
        the wedge; chords sharing an endpoint meet on the boundary instead.
        """
        bottom_ranks: set[int] = set()
        top_ranks: set[int] = set()
        for beam in self.spec.beams:
            for event in beam.events:
                (top_ranks if event.side == TOP else bottom_ranks).add(event.rank)

        position: dict[object, int] = {}
        index = 0
        for rank in sorted(bottom_ranks, reverse=True):
            position[(BOTTOM, rank)] = index
            index += 1
        position["bottom-ideal"] = index
        index += 1
        position["top-ideal"] = index
        index += 1
        for rank in sorted(top_ranks):
            position[(TOP, rank)] = index
            index += 1
        cycle_size = index

        chords: list[tuple[int, int, int, int]] = []  # (beam, segment, posA, posB)
        for bi, beam in enumerate(self.spec.beams):
            for s in range(self.sizes[bi]):
                start = position["bottom-ideal"] if s == 0 else position[beam.events[s - 1].key]
                end = position[beam.events[s].key]
                chords.append((bi, s, start, end))

        self.crossing_pairs: list[tuple[int, int, int, int]] = []
        for (b1, s1, a1, a2), (b2, s2, c1, c2) in combinations(chords, 2):
            if {a1, a2} & {c1, c2}:
                continue
            if _interleave(a1, a2, c1, c2, cycle_size):
                if b1 == b2:
                    raise SelfCrossingBeam(self.spec.beams[b1].name, s1, s2)
                self.crossing_pairs.append((b1, s1, b2, s2))

    def arrangement(self) -> ExpandedArrangement:
        m, nw = self.m, self.nw

        line_labels: list[LineLabel] = [Mirror(i) for i in range(m)]
        for bi, beam in enumerate(self.spec.beams):
            for copy in range(self.copy_counts[bi]):
                line_labels.append(BeamCopy(beam.name, copy))
        line_labels.append(LineAtInfinity())

        records: list[tuple[tuple[int, ...], VertexLabel]] = []
        records.append((tuple(range(m)), Apex()))

        bounce_members: dict[tuple[int, int], set[int]] = {}
        for a, b, ray, rank, _ in self.glues:
            curve = self.root_to_curve[self._find(a)]
            bounce_members.setdefault((ray, rank), set()).add(curve)
        for (ray, rank), members in sorted(bounce_members.items()):
            ids = sorted(members | {ray % m})
            records.append((tuple(ids), Bounce(ray, rank)))

        ideal_members: dict[int, set[int]] = {i: set() for i in range(m)}
        for root, curve in self.root_to_curve.items():
            ideal_members[self.root_ideal[root]].add(curve)
        for mi in range(m):
            ids = sorted(ideal_members[mi] | {mi, self.infinity_id})
            records.append((tuple(ids), Ideal(mi)))

        for w in range(nw):
            for b1, s1, b2, s2 in self.crossing_pairs:
                ids = sorted({self.curve_of(b1, w, s1), self.curve_of(b2, w, s2)})
                records.append((tuple(ids), Crossing(w)))

        records.sort(key=lambda rec: rec[0])
        structure = IncidenceStructure(1, self.n, [ids for ids, _ in records])
        report = validate(structure)
        if not report.valid:
            raise ValidationFailed(report)
        return ExpandedArrangement(
            structure=structure,
            line_labels=tuple(line_labels),
            vertex_labels=tuple(label for _, label in records),
        )

    def paths(self) -> list[tuple[str, int, list[tuple[str, int, int]]]]:
        """Ordered boundary traversal of every pseudoline copy.

        Returns (beam name, copy index, waypoints); each waypoint is
        ("ideal", entry ray, 0) or ("bounce", ray, rank) in traversal order
        from one ideal end to the other.  Used by the renderer.
        """
        adjacency: dict[int, list[tuple[int, int, int, int]]] = {}
        for gi, (a, b, ray, rank, _) in enumerate(self.glues):
            adjacency.setdefault(a, []).append((gi, b, ray, rank))
            adjacency.setdefault(b, []).append((gi, a, ray, rank))

        result = []
        for bi, beam in enumerate(self.spec.beams):
            roots = sorted(
                {self._find(self.atom(bi, w, 0)) for w in range(self.nw)},
                key=lambda r: min(self.component_ends[r]),
            )
            for copy, root in enumerate(roots):
                w_start, w_end = sorted(self.component_ends[root])[:2]
                waypoints: list[tuple[str, int, int]] = [
                    ("ideal", self.bottom_ray(w_start), 0)
                ]
                current = self.atom(bi, w_start, 0)
                used_glues: set[int] = set()
                while True:
                    step = None
                    for gi, other, ray, rank in adjacency.get(current, []):
                        if gi not in used_glues:
                            step = (gi, other, ray, rank)
                            break
                    if step is None:
                        break
                    gi, other, ray, rank = step
                    used_glues.add(gi)
                    waypoints.append(("bounce", ray, rank))
                    current = other
                waypoints.append(("ideal", self.bottom_ray(w_end), 0))
                result.append((beam.name, copy, waypoints))
        return result


def _interleave(a1: int, a2: int, b1: int, b2: int, size: int) -> bool:
    """True when chords {a1,a2} and {b1,b2} strictly separate each other on a
    cycle of the given size.  All four positions must be distinct."""
    span = (a2 - a1) % size
    p1 = (b1 - a1) % size
    p2 = (b2 - a1) % size
    return (0 < p1 < span) != (0 < p2 < span)


def expand(spec: WedgeSpec) -> ExpandedArrangement:
    """Expand a wedge into the full dihedrally symmetric arrangement.

    Deterministic and purely combinatorial.  Raises SelfCrossingBeam when two
    segments of one beam interleave inside a wedge, NonClosingBeam when a
    pseudoline copy fails to close through a single ideal point, and
    ValidationFailed when the assembled structure is not a genuine alpha = 1
    incidence structure.
    """
    return _Expansion(spec).arrangement()


def wedge_paths(spec: WedgeSpec) -> list[tuple[str, int, list[tuple[str, int, int]]]]:
    """Boundary traversals of each expanded pseudoline copy (see _Expansion.paths)."""
    return _Expansion(spec).paths()
