import re

import pytest

from gridcurve import catalog
from gridcurve.gridmodel import prototiles
from gridcurve.lsystem import expand, expand_tagged
from gridcurve.render import (
    AREA,
    BY_ANCESTOR,
    BY_LETTER,
    BY_ORIENTATION,
    LINE,
    RenderStyle,
    check_svg,
    render_area,
    render_line,
    render_points,
)
from gridcurve.words import parse_word


def polygon_areas(svg):
    out = []
    for m in re.finditer(r'points="([^"]+)"', svg):
        pts = [tuple(map(float, p.split(","))) for p in m.group(1).split()]
        area = 0.0
        for i in range(len(pts)):
            x1, y1 = pts[i]
            x2, y2 = pts[(i + 1) % len(pts)]
            area += x1 * y2 - x2 * y1
        out.append(abs(area) / 2)
    return out


def test_line_terdragon_motif():
    tri = catalog.grid("triangle")
    svg = render_line(parse_word("F+F-F"), tri, RenderStyle())
    assert check_svg(svg)
    assert svg.count("<path") == 1
    path = re.search(r'd="([^"]+)"', svg).group(1)
    assert path.count("L") == 3  # three segments
    assert path.count("A") == 2  # two fillets


def test_line_sharp_corners():
    tri = catalog.grid("triangle")
    svg = render_line(parse_word("F+F-F"), tri, RenderStyle(corner_radius=0))
    path = re.search(r'd="([^"]+)"', svg).group(1)
    assert "A" not in path


def test_line_empty_word():
    from gridcurve.words import Word

    tri = catalog.grid("triangle")
    svg = render_line(Word(()), tri, RenderStyle())
    assert check_svg(svg)
    assert "<path" not in svg


def test_ancestor_coloring_r13():
    cs = catalog.curveset("tri-r13-1")
    w, tags = expand_tagged(cs, parse_word("F"), 2)
    style = RenderStyle(color_scheme=BY_ANCESTOR, palette=tuple(
        f"#0000{i:02x}" for i in range(13)
    ))
    svg = render_line(w, cs.grid, style, tags=tags)
    assert check_svg(svg)
    paths = re.findall(r"<path [^>]*>", svg)
    assert len(paths) == 13  # 13 contiguous color runs
    for p in paths:
        d = re.search(r'd="([^"]+)"', p).group(1)
        assert d.count("L") == 13  # of 13 edges each


def test_area_single_edge_half_cell():
    sq = catalog.grid("square")
    style = RenderStyle(mode=AREA, scale=10.0)
    svg = render_area(parse_word("F"), sq, style)
    areas = polygon_areas(svg)
    assert len(areas) == 1
    assert areas[0] == pytest.approx(0.5 * 10.0 * 10.0, rel=1e-6)


def test_area_dtriangle_half_density():
    # the half-curve of order 3 visits each segment in one direction only,
    # painting one of the two side-thirds: half of any covered region stays
    # empty.  Each left-triangle is a third of a cell.
    import math

    cs = catalog.curveset("dtri-r3")
    cell = math.sqrt(3) / 4
    for k in (1, 2):
        w = expand(cs, parse_word("A", 6), k)
        svg = render_area(w, cs.grid, RenderStyle(mode=AREA, scale=1000.0))
        areas = polygon_areas(svg)
        assert len(areas) == 3 ** k
        assert sum(areas) / 1000.0 ** 2 == pytest.approx(3 ** k * cell / 3, rel=1e-6)


def test_area_partition_dsquare_tile():
    cs = catalog.curveset("dsq-r4")
    tile = parse_word("[A+]^4", 4)
    w = expand(cs, tile, 1)
    style = RenderStyle(mode=AREA, scale=1000.0)
    svg = render_area(w, cs.grid, style)
    areas = polygon_areas(svg)
    assert len(areas) == 16
    # the sixteen left-triangles tile the 2x2 square
    assert sum(areas) / 1000.0 ** 2 == pytest.approx(4.0, rel=1e-6)


def test_orientation_coloring_3446():
    grid = catalog.grid("3446-3464")
    cs = catalog.curveset("3446-r31")
    w = expand(cs, parse_word("A", 12), 1)
    style = RenderStyle(mode=AREA, color_scheme=BY_ORIENTATION)
    svg = render_area(w, grid, style)
    fills = set(re.findall(r'fill="([^"]+)"', svg))
    assert len(fills) == 6  # directions modulo a half turn


def test_area_borders():
    cs = catalog.curveset("dsq-r4")
    w = expand(cs, parse_word("A", 4), 1)
    with_borders = render_area(w, cs.grid, RenderStyle(mode=AREA, draw_borders=True))
    without = render_area(w, cs.grid, RenderStyle(mode=AREA))
    assert "stroke" in with_borders and "stroke" not in without


def test_render_points_cloud():
    svg = render_points([0 + 0j, 1 + 1j, -1 + 0.5j])
    assert check_svg(svg)
    assert svg.count("<polygon") == 3


def test_svg_structure_many():
    for name in ("terdragon", "ju19", "dsq-r5"):
        cs = catalog.curveset(name)
        seed = cs.letters[0]
        w = expand(cs, parse_word(seed, cs.n), 2)
        svg = render_line(w, cs.grid, RenderStyle())
        assert check_svg(svg)
        allowed = {"svg", "g", "path", "polygon"}
        for tag in re.findall(r"<(\w+)[ >]", svg):
            assert tag in allowed


def test_style_validation():
    with pytest.raises(ValueError):
        RenderStyle(corner_radius=0.7)
    with pytest.raises(ValueError):
        RenderStyle(mode="volume")
    with pytest.raises(ValueError):
        RenderStyle(color_scheme="mood")
