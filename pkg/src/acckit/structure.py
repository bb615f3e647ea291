"""Incidence structures over abstract curves, with validation and exact statistics.

An incidence structure records n curves (ids 0..n-1) and a sequence of
vertices, each vertex being a set of at least two curve ids.  A structure is
*valid* for its declared ``alpha`` when every unordered pair of curves
appears together in exactly ``alpha`` vertices, no two vertices carry the
same id set, every curve appears somewhere, and the bipartite membership
graph is connected.

All arithmetic in this module is exact integer arithmetic.
"""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Union


@dataclass(frozen=True)
class IncidenceStructure:
    """n curves plus vertex records, each a sorted tuple of distinct curve ids.

    The constructor normalizes vertex id order and rejects data that cannot
    describe any structure at all (ids out of range, duplicate ids inside a
    vertex, empty vertices).  Semantic problems such as wrong pair
    multiplicities or disconnection are the job of :func:`validate`, which
    reports them instead of raising.
    """

    alpha: int
    n: int
    vertices: tuple[tuple[int, ...], ...]

    def __init__(self, alpha: int, n: int, vertices: Iterable[Iterable[int]]):
        if alpha < 1:
            raise ValueError(f"alpha must be >= 1, got {alpha}")
        if n < 0:
            raise ValueError(f"curve count must be >= 0, got {n}")
        normalized = []
        for vertex in vertices:
            ids = sorted(vertex)
            if not ids:
                raise ValueError("empty vertex record")
            for a, b in zip(ids, ids[1:]):
                if a == b:
                    raise ValueError(f"duplicate id {a} within a vertex")
            if ids[0] < 0 or ids[-1] >= n:
                bad = ids[0] if ids[0] < 0 else ids[-1]
                raise ValueError(f"curve id {bad} out of range 0..{n - 1}")
            normalized.append(tuple(ids))
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "vertices", tuple(normalized))

    def canonical(self) -> "IncidenceStructure":
        """Same structure with vertices sorted lexicographically."""
        return IncidenceStructure(self.alpha, self.n, sorted(self.vertices))


@dataclass(frozen=True)
class PairMultiplicity:
    """A curve pair covered by `observed` vertices instead of alpha."""

    pair: tuple[int, int]
    observed: int


@dataclass(frozen=True)
class DuplicateVertex:
    """Two vertex records (by index) with identical id sets."""

    indices: tuple[int, int]


@dataclass(frozen=True)
class Disconnected:
    """Bipartite membership graph splits into this many components."""

    components: int


@dataclass(frozen=True)
class SmallVertex:
    """Vertex record (by index) with fewer than two curve ids."""

    index: int


@dataclass(frozen=True)
class UnusedCurve:
    """Curve id that appears in no vertex."""

    id: int


Violation = Union[PairMultiplicity, DuplicateVertex, Disconnected, SmallVertex, UnusedCurve]


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    violations: tuple[Violation, ...]


class InvalidStructureError(ValueError):
    """Raised by operations whose precondition is a valid structure."""

    def __init__(self, report: ValidationReport):
        self.report = report
        kinds = Counter(type(v).__name__ for v in report.violations)
        summary = ", ".join(f"{name} x{count}" for name, count in sorted(kinds.items()))
        super().__init__(f"invalid incidence structure: {summary}")


def validate(s: IncidenceStructure) -> ValidationReport:
    """Check every structure axiom and report all violations found.

    Violations are data, not errors; the report is deterministic for a given
    input.  Requires n >= 2 since pair multiplicity is meaningless below
    that.
    """
    if s.n < 2:
        raise ValueError(f"validation requires at least 2 curves, got {s.n}")

    violations: list[Violation] = []

    for index, vertex in enumerate(s.vertices):
        if len(vertex) < 2:
            violations.append(SmallVertex(index))

    seen: dict[tuple[int, ...], int] = {}
    for index, vertex in enumerate(s.vertices):
        if vertex in seen:
            violations.append(DuplicateVertex((seen[vertex], index)))
        else:
            seen[vertex] = index

    used: set[int] = set()
    for vertex in s.vertices:
        used.update(vertex)
    for cid in range(s.n):
        if cid not in used:
            violations.append(UnusedCurve(cid))

    pair_counts: Counter[tuple[int, int]] = Counter()
    for vertex in s.vertices:
        for pair in combinations(vertex, 2):
            pair_counts[pair] += 1
    for i in range(s.n):
        for j in range(i + 1, s.n):
            observed = pair_counts.get((i, j), 0)
            if observed != s.alpha:
                violations.append(PairMultiplicity((i, j), observed))

    components = _component_count(s)
    if components > 1:
        violations.append(Disconnected(components))

    return ValidationReport(valid=not violations, violations=tuple(violations))


def _component_count(s: IncidenceStructure) -> int:
    """Components of the bipartite graph on curves and vertex records."""
    curve_nodes = s.n
    total = curve_nodes + len(s.vertices)
    if total == 0:
        return 0
    adjacency: list[list[int]] = [[] for _ in range(total)]
    for vi, vertex in enumerate(s.vertices):
        vnode = curve_nodes + vi
        for cid in vertex:
            adjacency[cid].append(vnode)
            adjacency[vnode].append(cid)
    seen = [False] * total
    components = 0
    for start in range(total):
        if seen[start]:
            continue
        components += 1
        queue = deque([start])
        seen[start] = True
        while queue:
            node = queue.popleft()
            for other in adjacency[node]:
                if not seen[other]:
                    seen[other] = True
                    queue.append(other)
    return components


@dataclass(frozen=True)
class Stats:
    """Exact integer statistics of a valid structure.

    tk maps vertex degree k to the number of vertices of that exact degree.
    r is the maximum number of vertices on any single curve.  ld maps d to
    the number of curve pairs whose alpha common vertices have minimum
    degree d.
    """

    tk: dict[int, int]
    r: int
    curve_degrees: tuple[int, ...]
    vertex_degrees: tuple[int, ...]
    ld: dict[int, int]

    def tk_total_weighted(self) -> int:
        """Sum of tk[k] * C(k, 2); equals alpha * C(n, 2) on valid input."""
        return sum(count * math.comb(k, 2) for k, count in self.tk.items())

    def ld_total(self) -> int:
        """Sum of all ld values; equals C(n, 2) on valid input."""
        return sum(self.ld.values())


def compute_stats(s: IncidenceStructure) -> Stats:
    """Compute tk, r, degree sequences, and the pair-minimum-degree profile.

    Rejects invalid structures with :class:`InvalidStructureError`.
    """
    report = validate(s)
    if not report.valid:
        raise InvalidStructureError(report)

    vertex_degrees = tuple(len(v) for v in s.vertices)
    curve_degrees = [0] * s.n
    for vertex in s.vertices:
        for cid in vertex:
            curve_degrees[cid] += 1

    tk: Counter[int] = Counter(vertex_degrees)

    # Minimum common-vertex degree per pair: one pass over vertices, since
    # each pair occurs in exactly alpha of them.
    pair_min: dict[tuple[int, int], int] = {}
    for vertex, degree in zip(s.vertices, vertex_degrees):
        for pair in combinations(vertex, 2):
            prev = pair_min.get(pair)
            if prev is None or degree < prev:
                pair_min[pair] = degree
    ld: Counter[int] = Counter(pair_min.values())

    return Stats(
        tk=dict(sorted(tk.items())),
        r=max(curve_degrees),
        curve_degrees=tuple(curve_degrees),
        vertex_degrees=vertex_degrees,
        ld=dict(sorted(ld.items())),
    )
