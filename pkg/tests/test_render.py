"""SVG output tests: well-formedness, element counts, determinism."""

import xml.etree.ElementTree as ET
from fractions import Fraction

import pytest

from acckit import RenderOptions, WedgeSpec, family_wedge, render_arrangement, render_wedge

SVG_NS = "{http://www.w3.org/2000/svg}"


def _count(svg_text, tag, cls_prefix=None):
    root = ET.fromstring(svg_text)
    found = 0
    for element in root.iter(f"{SVG_NS}{tag}"):
        if cls_prefix is None or element.get("class", "").startswith(cls_prefix):
            found += 1
    return found


def test_wedge_svg_family():
    svg = render_wedge(family_wedge(1))
    ET.fromstring(svg)
    assert _count(svg, "path", "mirror-ray") == 2
    assert _count(svg, "polyline") == 2


def test_wedge_svg_no_beams():
    svg = render_wedge(WedgeSpec(2))
    assert _count(svg, "path", "mirror-ray") == 2
    assert _count(svg, "polyline") == 0


def test_wedge_svg_deterministic():
    assert render_wedge(family_wedge(2)) == render_wedge(family_wedge(2))


def test_arrangement_polyline_counts():
    svg = render_arrangement(family_wedge(1))
    ET.fromstring(svg)
    assert _count(svg, "polyline") == 25
    svg = render_arrangement(family_wedge(2))
    assert _count(svg, "polyline") == 43


def test_arrangement_minimal_kaleidoscope():
    # Two diameters plus the bounding circle.
    svg = render_arrangement(WedgeSpec(2))
    assert _count(svg, "polyline", "mirror") == 2
    assert _count(svg, "polyline", "line-infinity") == 1
    assert _count(svg, "polyline") == 3


def test_arrangement_classes():
    svg = render_arrangement(family_wedge(1))
    assert _count(svg, "polyline", "mirror") == 8
    assert _count(svg, "polyline", "line-infinity") == 1
    assert _count(svg, "polyline", "beam beam-red") == 8
    assert _count(svg, "polyline", "beam beam-blue") == 8


def test_arrangement_deterministic():
    assert render_arrangement(family_wedge(1)) == render_arrangement(family_wedge(1))


def test_arrangement_propagates_expansion_errors():
    from acckit import BeamSpec, BounceEvent, NonClosingBeam

    beam = BeamSpec("z", [BounceEvent("T", 1)])
    with pytest.raises(NonClosingBeam):
        render_arrangement(WedgeSpec(3, (beam,)))


def test_options_validation():
    with pytest.raises(ValueError):
        RenderOptions(radius_ratio=Fraction(3, 2))
    with pytest.raises(ValueError):
        RenderOptions(radius_ratio=Fraction(1))
    with pytest.raises(ValueError):
        RenderOptions(radius_base=Fraction(0))
    with pytest.raises(ValueError):
        RenderOptions(size=0)


def test_radius_map_monotone():
    opts = RenderOptions()
    radii = [opts.radius(rank) for rank in range(1, 8)]
    assert all(a > b for a, b in zip(radii, radii[1:]))


def test_custom_strokes_and_labels():
    opts = RenderOptions(stroke_classes={"beam:red": "#000001"}, show_labels=True)
    svg = render_wedge(family_wedge(1), opts)
    assert "#000001" in svg
    assert "<text" in svg
    ET.fromstring(svg)


def test_rendering_does_not_mutate():
    spec = family_wedge(1)
    before = spec.beams
    render_arrangement(spec)
    assert spec.beams == before


def test_xml_hostile_beam_name_escaped():
    from acckit import BeamSpec, BounceEvent

    beam = BeamSpec('a"b&c<d', [BounceEvent("T", 1)])
    svg = render_wedge(WedgeSpec(2, (beam,)))
    ET.fromstring(svg)
