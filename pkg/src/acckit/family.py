"""The counterexample family of wedges plus small fixture generators.

family_wedge(j) builds the wedge of dihedral order 6j+2 whose expansion has
18j+7 pseudolines with no pseudoline on more than 8j+2 vertices.  Two beams,
red and blue, bounce 3j+1 times each; every third blue bounce lands on a red
bounce point (blue bounce 3i coincides with red bounce i for i <= j).

The rank interleaving for j = 1 was fixed once by exhaustive search over all
orderings of the base bounce points consistent with the beam structure,
keeping the unique order whose expansion is a valid alpha = 1 arrangement of
25 curves with maximum curve degree 10.  Larger cases extend that base
ordinally: each new red bounce lands strictly closer to the apex than every
earlier point, blue bounce 3i reuses red bounce i's point, and the two new
blue bounces (3i-1 and 3i+1, through which the blue beam crosses the red
extension) slot in together just farther from the apex than red bounce i+1,
again the unique placement that survives expansion.
"""

from __future__ import annotations

from .structure import IncidenceStructure, compute_stats
from .wedge import (
    BOTTOM,
    TOP,
    BeamCopy,
    BeamSpec,
    BounceEvent,
    ExpandedArrangement,
    LineAtInfinity,
    Mirror,
    WedgeSpec,
)

# Base bounce-point order for j = 1, farthest from the apex first.
# Keys: ("r", i) is red bounce i, ("b", i) blue bounce i; blue bounce 3
# coincides with red bounce 1 and so never appears as its own key.
_BASE_TOP: tuple[tuple[str, int], ...] = (("b", 1), ("r", 1), ("r", 3))
_BASE_BOTTOM: tuple[tuple[str, int], ...] = (("b", 2), ("b", 4), ("r", 2), ("r", 4))


def reference_family_counts(k: int) -> tuple[int, int]:
    """Curve count and maximum curve degree of the earlier known dihedral
    family at parameter k: 6k+7 curves, none on more than 3k+2 vertices for
    even k (3k+3 for odd k).

    Recorded for comparison only; that family's wedge is known just
    pictorially, so there is no generator for it here.  The family built by
    :func:`family_wedge` caps the degree lower, at (4n-10)/9 instead of
    roughly n/2.
    """
    if k < 0:
        raise ValueError(f"parameter must be >= 0, got {k}")
    curves = 6 * k + 7
    max_degree = 3 * k + 2 if k % 2 == 0 else 3 * k + 3
    return curves, max_degree


def _side(i: int) -> str:
    """Bounce i of either beam hits the top edge for odd i."""
    return TOP if i % 2 == 1 else BOTTOM


def _blue_key(i: int, j: int) -> tuple[str, int]:
    if i % 3 == 0 and i // 3 <= j:
        return ("r", i // 3)
    return ("b", i)


def family_point_order(j: int) -> tuple[list[tuple[str, int]], list[tuple[str, int]]]:
    """Bounce-point keys on the top and bottom edge, farthest first."""
    if j < 1:
        raise ValueError(f"family index must be >= 1, got {j}")
    top = list(_BASE_TOP)
    bottom = list(_BASE_BOTTOM)
    for i in range(2, j + 1):
        for idx in (3 * i - 1, 3 * i, 3 * i + 1):
            lst = top if _side(idx) == TOP else bottom
            lst.append(("r", idx))
        # Blue bounce 3i coincides with red bounce i, so the step adds two
        # blue points, both on red bounce i+1's side.  They land together
        # just farther from the apex than red bounce i+1, the unique slot
        # (found by exhaustive search, fixed thereafter) whose expansion
        # stays a valid arrangement with the right maximum degree.
        lst = top if _side(3 * i + 1) == TOP else bottom
        slot = lst.index(("r", i + 1))
        lst[slot:slot] = [("b", 3 * i - 1), ("b", 3 * i + 1)]
    return top, bottom


def family_wedge(j: int) -> WedgeSpec:
    """Wedge of dihedral order 6j+2 generating the 18j+7 curve arrangement."""
    top, bottom = family_point_order(j)
    rank = {key: pos + 1 for pos, key in enumerate(top)}
    rank.update({key: pos + 1 for pos, key in enumerate(bottom)})

    t = 3 * j + 1
    red_events = [BounceEvent(_side(i), rank[("r", i)]) for i in range(1, t + 1)]
    blue_events = [BounceEvent(_side(i), rank[_blue_key(i, j)]) for i in range(1, t + 1)]
    return WedgeSpec(
        m=6 * j + 2,
        beams=(BeamSpec("red", red_events), BeamSpec("blue", blue_events)),
    )


def per_class_max_degrees(arr: ExpandedArrangement) -> dict[str, int]:
    """Maximum curve degree per symmetry class of an expanded arrangement.

    Mirrors split by index parity, which for even dihedral order separates
    the two mirror symmetry classes (even mirrors carry the bottom-edge
    images, odd mirrors the top-edge images).
    """
    stats = compute_stats(arr.structure)
    maxima: dict[str, int] = {}
    for cid, label in enumerate(arr.line_labels):
        if isinstance(label, Mirror):
            key = "mirror-even" if label.index % 2 == 0 else "mirror-odd"
        elif isinstance(label, LineAtInfinity):
            key = "infinity"
        elif isinstance(label, BeamCopy):
            key = label.beam
        degree = stats.curve_degrees[cid]
        if degree > maxima.get(key, -1):
            maxima[key] = degree
    return maxima


def gen_pencil(n: int) -> IncidenceStructure:
    """All n curves through one point."""
    if n < 3:
        raise ValueError(f"pencil needs n >= 3, got {n}")
    return IncidenceStructure(1, n, [range(n)])


def gen_near_pencil(n: int) -> IncidenceStructure:
    """n-1 concurrent curves plus one transversal meeting each separately."""
    if n < 3:
        raise ValueError(f"near-pencil needs n >= 3, got {n}")
    vertices = [tuple(range(n - 1))]
    vertices.extend((i, n - 1) for i in range(n - 1))
    return IncidenceStructure(1, n, vertices)


def gen_simple_cyclic(n: int) -> IncidenceStructure:
    """Simple arrangement: every pair of curves crosses at its own point."""
    if n < 3:
        raise ValueError(f"simple arrangement needs n >= 3, got {n}")
    vertices = [(i, k) for i in range(n) for k in range(i + 1, n)]
    return IncidenceStructure(1, n, vertices)
