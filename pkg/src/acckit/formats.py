"""Text formats: .acc incidence structures and .wedge kaleidoscope specs.

Both formats are UTF-8, newline separated, with '#' starting comment lines.
Canonical .acc output sorts vertices lexicographically and uses single
spaces and a trailing newline, so equal structures serialize to identical
bytes.  Canonical .wedge output keeps beams in input order.

.acc:
    acc 1
    alpha <int>
    lines <int>
    v <id> <id> ...        one line per vertex, ids strictly increasing

.wedge:
    wedge 1
    m <int>
    beam <name> <S><rank> ...   with S in {T, B}, e.g. "beam red T1 B2"
"""

from __future__ import annotations

from .structure import IncidenceStructure
from .wedge import BeamSpec, BounceEvent, WedgeSpec


class ParseError(ValueError):
    """Malformed input text; carries the offending line number."""

    def __init__(self, line: int, cause: str):
        self.line = line
        self.cause = cause
        super().__init__(f"line {line}: {cause}")


def _significant_lines(text: str):
    """Yield (line_number, stripped_line), skipping blanks and comments."""
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield number, line


def parse_structure(text: str) -> IncidenceStructure:
    lines = list(_significant_lines(text))
    if not lines:
        raise ParseError(1, "empty input, expected 'acc 1' header")

    number, header = lines[0]
    if header != "acc 1":
        raise ParseError(number, f"bad header {header!r}, expected 'acc 1'")

    if len(lines) < 2 or not lines[1][1].startswith("alpha "):
        raise ParseError(lines[1][0] if len(lines) > 1 else number, "expected 'alpha <int>'")
    number, line = lines[1]
    alpha = _parse_int(line.split(" ", 1)[1], number, "alpha")
    if alpha < 1:
        raise ParseError(number, f"alpha must be >= 1, got {alpha}")

    if len(lines) < 3 or not lines[2][1].startswith("lines "):
        raise ParseError(lines[2][0] if len(lines) > 2 else number, "expected 'lines <int>'")
    number, line = lines[2]
    n = _parse_int(line.split(" ", 1)[1], number, "line count")
    if n < 0:
        raise ParseError(number, f"line count must be >= 0, got {n}")

    vertices: list[tuple[int, ...]] = []
    for number, line in lines[3:]:
        tokens = line.split()
        if tokens[0] != "v":
            raise ParseError(number, f"expected vertex line 'v <id> ...', got {line!r}")
        ids = [_parse_int(tok, number, "curve id") for tok in tokens[1:]]
        if len(ids) < 2:
            raise ParseError(number, "vertex must contain at least 2 curve ids")
        for a, b in zip(ids, ids[1:]):
            if a == b:
                raise ParseError(number, f"duplicate id {a} within vertex")
            if a > b:
                raise ParseError(number, "vertex ids must be strictly increasing")
        if ids[0] < 0 or ids[-1] >= n:
            bad = ids[0] if ids[0] < 0 else ids[-1]
            raise ParseError(number, f"curve id {bad} out of range 0..{n - 1}")
        vertices.append(tuple(ids))

    return IncidenceStructure(alpha, n, vertices)


def serialize_structure(s: IncidenceStructure) -> str:
    """Canonical .acc text: vertices sorted lexicographically."""
    out = [f"acc 1", f"alpha {s.alpha}", f"lines {s.n}"]
    for vertex in sorted(s.vertices):
        out.append("v " + " ".join(str(cid) for cid in vertex))
    return "\n".join(out) + "\n"


def parse_wedge(text: str) -> WedgeSpec:
    lines = list(_significant_lines(text))
    if not lines:
        raise ParseError(1, "empty input, expected 'wedge 1' header")

    number, header = lines[0]
    if header != "wedge 1":
        raise ParseError(number, f"bad header {header!r}, expected 'wedge 1'")

    if len(lines) < 2 or not lines[1][1].startswith("m "):
        raise ParseError(lines[1][0] if len(lines) > 1 else number, "expected 'm <int>'")
    number, line = lines[1]
    m = _parse_int(line.split(" ", 1)[1], number, "dihedral order")

    beams: list[BeamSpec] = []
    for number, line in lines[2:]:
        tokens = line.split()
        if tokens[0] != "beam":
            raise ParseError(number, f"expected beam line 'beam <name> ...', got {line!r}")
        if len(tokens) < 3:
            raise ParseError(number, "beam needs a name and at least one bounce")
        name = tokens[1]
        events = []
        for token in tokens[2:]:
            if len(token) < 2 or token[0] not in ("T", "B"):
                raise ParseError(number, f"bad bounce token {token!r}, expected T<rank> or B<rank>")
            rank = _parse_int(token[1:], number, "bounce rank")
            try:
                events.append(BounceEvent(token[0], rank))
            except ValueError as exc:
                raise ParseError(number, str(exc)) from exc
        try:
            beams.append(BeamSpec(name, events))
        except ValueError as exc:
            raise ParseError(number, str(exc)) from exc

    try:
        return WedgeSpec(m, beams)
    except ValueError as exc:
        raise ParseError(lines[1][0], str(exc)) from exc


def serialize_wedge(spec: WedgeSpec) -> str:
    """Canonical .wedge text: beams in input order, single spaces."""
    out = ["wedge 1", f"m {spec.m}"]
    for beam in spec.beams:
        tokens = " ".join(f"{e.side}{e.rank}" for e in beam.events)
        out.append(f"beam {beam.name} {tokens}")
    return "\n".join(out) + "\n"


def _parse_int(token: str, line: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(line, f"bad {what} {token!r}, expected an integer") from None
