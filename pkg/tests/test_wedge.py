"""Expansion machinery tests: gluing, closure, crossings, labels."""

from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from acckit import (
    Apex,
    BeamCopy,
    BeamSpec,
    Bounce,
    BounceEvent,
    Crossing,
    ExpansionError,
    Ideal,
    LineAtInfinity,
    Mirror,
    NonClosingBeam,
    SelfCrossingBeam,
    WedgeSpec,
    compute_stats,
    expand,
    family_wedge,
    serialize_structure,
    validate,
    wedge_paths,
)


def test_bounce_event_validation():
    with pytest.raises(ValueError):
        BounceEvent("X", 1)
    with pytest.raises(ValueError):
        BounceEvent("T", 0)


def test_beam_spec_validation():
    with pytest.raises(ValueError, match="at least one"):
        BeamSpec("a", [])
    with pytest.raises(ValueError, match="top edge"):
        BeamSpec("a", [BounceEvent("B", 1)])
    with pytest.raises(ValueError, match="alternate"):
        BeamSpec("a", [BounceEvent("T", 1), BounceEvent("T", 2)])
    with pytest.raises(ValueError, match="repeats"):
        BeamSpec("a", [BounceEvent("T", 1), BounceEvent("B", 1), BounceEvent("T", 1)])
    with pytest.raises(ValueError, match="name"):
        BeamSpec("two words", [BounceEvent("T", 1)])


def test_wedge_spec_validation():
    with pytest.raises(ValueError, match=">= 2"):
        WedgeSpec(1)
    beam = BeamSpec("a", [BounceEvent("T", 1)])
    with pytest.raises(ValueError, match="unique"):
        WedgeSpec(4, (beam, beam))


def test_minimal_kaleidoscope():
    arr = expand(WedgeSpec(2))
    s = arr.structure
    assert s.n == 3
    assert s.vertices == ((0, 1), (0, 2), (1, 2))
    assert arr.line_labels == (Mirror(0), Mirror(1), LineAtInfinity())
    labels = set(arr.vertex_labels)
    assert labels == {Apex(), Ideal(0), Ideal(1)}
    assert validate(s).valid


def test_family_j1_structure():
    arr = expand(family_wedge(1))
    s = arr.structure
    stats = compute_stats(s)
    assert s.n == 25
    assert len(s.vertices) == 81
    assert stats.r == 10
    assert arr.apex_degree() == 8
    assert stats.tk == {2: 36, 3: 32, 5: 8, 6: 4, 8: 1}
    assert stats.ld == {2: 36, 3: 96, 5: 80, 6: 60, 8: 28}


def test_family_j1_labels():
    arr = expand(family_wedge(1))
    line_kinds = Counter(type(label).__name__ for label in arr.line_labels)
    assert line_kinds == {"Mirror": 8, "BeamCopy": 16, "LineAtInfinity": 1}
    copies = Counter(label.beam for label in arr.line_labels if isinstance(label, BeamCopy))
    assert copies == {"red": 8, "blue": 8}

    vertex_kinds = Counter(type(label).__name__ for label in arr.vertex_labels)
    assert vertex_kinds == {"Apex": 1, "Bounce": 56, "Ideal": 8, "Crossing": 16}

    # The apex vertex holds exactly the mirrors.
    apex_index = next(i for i, lab in enumerate(arr.vertex_labels) if isinstance(lab, Apex))
    assert arr.structure.vertices[apex_index] == tuple(range(8))


def test_family_j1_bounce_ray_classes():
    arr = expand(family_wedge(1))
    # Odd rays carry top-edge images (3 ranks), even rays bottom-edge
    # images (4 ranks).
    per_ray = Counter(lab.ray for lab in arr.vertex_labels if isinstance(lab, Bounce))
    for ray, count in per_ray.items():
        assert count == (3 if ray % 2 == 1 else 4)
    assert set(per_ray) == set(range(16))


def test_family_j1_ideal_degrees():
    arr = expand(family_wedge(1))
    s = arr.structure
    for vertex, label in zip(s.vertices, arr.vertex_labels):
        if isinstance(label, Ideal):
            # Beams enter parallel to the bottom edge, so only even mirrors
            # collect closing pseudolines.
            expected = 6 if label.mirror % 2 == 0 else 2
            assert len(vertex) == expected
            assert s.n - 1 in vertex  # the line at infinity
            assert label.mirror in vertex


def test_family_j2_counts():
    arr = expand(family_wedge(2))
    stats = compute_stats(arr.structure)
    assert arr.structure.n == 43
    assert stats.r == 18
    assert arr.apex_degree() == 14


def test_expansion_deterministic():
    a = serialize_structure(expand(family_wedge(2)).structure)
    b = serialize_structure(expand(family_wedge(2)).structure)
    assert a == b


def test_self_crossing_beam_detected():
    beam = BeamSpec(
        "z",
        [BounceEvent("T", 2), BounceEvent("B", 1), BounceEvent("T", 1), BounceEvent("B", 2)],
    )
    with pytest.raises(SelfCrossingBeam):
        expand(WedgeSpec(4, (beam,)))


def test_non_closing_beam_detected():
    # A single bounce closes only when the two entry rays coincide mod m,
    # which fails for odd dihedral order.
    beam = BeamSpec("z", [BounceEvent("T", 1)])
    with pytest.raises(NonClosingBeam):
        expand(WedgeSpec(3, (beam,)))


def test_validation_failure_on_coincident_beams():
    # Two beams with identical bounce sequences produce coincident
    # pseudolines, which cannot have single crossings.
    red = BeamSpec("red", [BounceEvent("T", 1), BounceEvent("B", 1)])
    blue = BeamSpec("blue", [BounceEvent("T", 1), BounceEvent("B", 1)])
    with pytest.raises(ExpansionError):
        expand(WedgeSpec(4, (red, blue)))


def test_beam_copy_count_is_m_per_beam():
    for j in (1, 2, 3):
        spec = family_wedge(j)
        arr = expand(spec)
        copies = Counter(label.beam for label in arr.line_labels if isinstance(label, BeamCopy))
        assert copies == {"red": spec.m, "blue": spec.m}


def test_wedge_paths_shape():
    spec = family_wedge(1)
    paths = wedge_paths(spec)
    assert len(paths) == 16
    for name, copy, waypoints in paths:
        assert waypoints[0][0] == "ideal"
        assert waypoints[-1][0] == "ideal"
        # Entry rays are opposite rays of one mirror line.
        assert waypoints[0][1] % 8 == waypoints[-1][1] % 8
        # One terminating bounce plus twice the other bounces.
        assert len(waypoints) == 2 + 2 * 4 - 1
        assert all(kind == "bounce" for kind, _, _ in waypoints[1:-1])


def test_wedge_paths_bounce_rays_distinct():
    for name, copy, waypoints in wedge_paths(family_wedge(1)):
        rays = [ray for kind, ray, _ in waypoints if kind == "bounce"]
        assert len(set(rays)) == len(rays)


@st.composite
def small_wedges(draw):
    m = draw(st.integers(min_value=2, max_value=5))
    beam_count = draw(st.integers(min_value=0, max_value=2))
    beams = []
    for bi in range(beam_count):
        length = draw(st.integers(min_value=1, max_value=4))
        events = []
        used = set()
        for i in range(length):
            side = "T" if i % 2 == 0 else "B"
            rank = draw(st.integers(min_value=1, max_value=4))
            if (side, rank) in used:
                break
            used.add((side, rank))
            events.append(BounceEvent(side, rank))
        if events:
            beams.append(BeamSpec(f"b{bi}", events))
    return WedgeSpec(m, beams)


@settings(derandomize=True, max_examples=120)
@given(small_wedges())
def test_expansion_never_returns_invalid(spec):
    """Expansion either raises a documented error or yields a valid
    alpha = 1 structure with coherent labels."""
    try:
        arr = expand(spec)
    except ExpansionError:
        return
    assert validate(arr.structure).valid
    assert arr.structure.alpha == 1
    mirrors = [lab for lab in arr.line_labels if isinstance(lab, Mirror)]
    assert len(mirrors) == spec.m
    assert sum(isinstance(lab, LineAtInfinity) for lab in arr.line_labels) == 1
    assert len(arr.vertex_labels) == len(arr.structure.vertices)
