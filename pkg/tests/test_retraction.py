"""Retraction onto the spine: images, scales, traces, seam continuity."""

import pytest
from hypothesis import given, strategies as st

from fig8plan.errors import SingularityError
from fig8plan.geometry import (
    FlatCoord,
    config_dist,
    config_to_flat,
    configuration,
    flat_to_config,
    path_min_separation,
)
from fig8plan.retraction import (
    region_corner,
    retract,
    retract_flat,
    spine_config,
    spine_image,
)
from fig8plan.spine import ChainPoint, chain_to_config, dist_chain, on_spine, vertex_point

coords = st.floats(min_value=0.001, max_value=0.999, allow_nan=False)


def test_region_corner():
    assert region_corner(FlatCoord("AA", 0.1, 0.3)) == (0, 1)
    assert region_corner(FlatCoord("AA", 0.3, 0.1)) == (1, 0)
    assert region_corner(FlatCoord("BB", 0.7, 0.9)) == (0, 1)
    assert region_corner(FlatCoord("AB", 0.2, 0.3)) == (0, 0)
    assert region_corner(FlatCoord("AB", 0.7, 0.2)) == (1, 0)
    assert region_corner(FlatCoord("BA", 0.6, 0.8)) == (1, 1)


def test_retract_flat_frozen_same_circle():
    image, scale = retract_flat(FlatCoord("AA", 0.1, 0.3))
    assert image == FlatCoord("AA", 0.0625, 0.5625)
    assert scale == pytest.approx(0.625)


def test_retract_flat_frozen_mixed():
    image, scale = retract_flat(FlatCoord("AB", 0.2, 0.3))
    assert image.square == "AB"
    assert image.a == pytest.approx(1.0 / 3.0)
    assert image.b == 0.5
    assert scale == pytest.approx(5.0 / 3.0)


def test_retract_far_corner_pulls_inward():
    # Beyond the sub-diagonal the scale drops below 1: the image sits between
    # the input and the reference corner.
    image, scale = retract_flat(FlatCoord("AA", 0.7, 0.9))
    assert scale == pytest.approx(0.625)
    assert image.a == pytest.approx(0.4375)
    assert image.b == pytest.approx(0.9375)


def test_spine_points_are_fixed():
    for f in (
        FlatCoord("AB", 0.3, 0.5),
        FlatCoord("AB", 0.5, 0.8),
        FlatCoord("AA", 0.2, 0.7),
        FlatCoord("BB", 0.9, 0.4),
    ):
        image, scale = retract_flat(f)
        assert scale == 1.0
        assert abs(image.a - f.a) < 1e-12 and abs(image.b - f.b) < 1e-12
        assert image.square == f.square


def test_center_state_rule():
    # A robot parked at the center stays; the free robot goes to its pole.
    r = retract(configuration("A", 0.0, "B", 0.3))
    assert r.point == vertex_point("HB")
    assert r.flat == FlatCoord("AB", 0.0, 0.5)
    r = retract(configuration("A", 0.3, "A", 0.0))
    assert r.point == vertex_point("VA")
    assert r.flat == FlatCoord("AB", 0.5, 0.0)


def test_singularity_guards():
    with pytest.raises(SingularityError):
        retract_flat(FlatCoord("AB", 1e-13, 1e-13))
    with pytest.raises(SingularityError):
        retract_flat(FlatCoord("AA", 1e-13, 1.0 - 1e-13))
    with pytest.raises(SingularityError):
        retract_flat(FlatCoord("AA", 0.3, 0.3 + 1e-13))
    # Clear of the guards, nearby points still retract.
    retract_flat(FlatCoord("AA", 0.3, 0.3 + 1e-9))


@given(st.sampled_from(("AA", "BB")), coords, coords)
def test_same_circle_image_on_spine(square, a, b):
    if abs(a - b) < 1e-6 or abs(a - b) > 1.0 - 1e-6:
        return
    f = FlatCoord(square, a, b)
    image, scale = retract_flat(f)
    assert on_spine(image)
    assert 0.5 < scale
    again, rescale = retract_flat(image)
    assert rescale == 1.0
    assert abs(again.a - image.a) < 1e-12 and abs(again.b - image.b) < 1e-12


@given(st.sampled_from(("AB", "BA")), coords, coords)
def test_mixed_image_on_spine(square, a, b):
    f = FlatCoord(square, a, b)
    image, scale = retract_flat(f)
    assert on_spine(image)
    assert scale >= 1.0
    again, rescale = retract_flat(image)
    assert rescale == 1.0
    assert abs(again.a - image.a) < 1e-12 and abs(again.b - image.b) < 1e-12


@given(st.sampled_from(("AA", "BB", "AB", "BA")), coords, coords)
def test_trace_runs_input_to_image_collision_free(square, a, b):
    if square in ("AA", "BB") and (abs(a - b) < 1e-6 or abs(a - b) > 1.0 - 1e-6):
        return
    c = flat_to_config(FlatCoord(square, a, b))
    r = retract(c)
    assert config_dist(r.trace.start, c) < 1e-9
    assert config_dist(r.trace.end, flat_to_config(r.flat)) < 1e-9
    assert path_min_separation(r.trace, n=64) > 0.0


def test_trace_is_constant_on_spine():
    c = chain_to_config(ChainPoint("H1", 0.3))
    r = retract(c)
    assert r.scale == 1.0
    assert config_dist(r.trace.start, r.trace.end) < 1e-12


def test_gluing_continuity_center_seam():
    # Robot 1 crosses the center from circle A to circle B; the images must
    # stay close even though the charts jump between squares.
    delta = 1e-6
    r2 = ("B", 0.75)
    x = spine_image(configuration("A", delta, *r2))
    y = spine_image(configuration("B", delta, *r2))
    gap = config_dist(configuration("A", delta, *r2), configuration("B", delta, *r2))
    assert dist_chain(x, y) <= 50.0 * gap


def test_gluing_continuity_same_circle_seam():
    # Robot 2 crosses the center while robot 1 stays on circle A: the chart
    # square flips between AA and AB.
    delta = 1e-6
    x = spine_image(configuration("A", 0.3, "A", 1.0 - delta))
    y = spine_image(configuration("A", 0.3, "B", delta))
    gap = 2.0 * delta
    assert dist_chain(x, y) <= 50.0 * gap


def test_gluing_continuity_across_diagonal_band():
    # Nearby points on either side of a sub-diagonal retract to nearby images.
    delta = 1e-6
    x = spine_image(configuration("A", 0.2, "A", 0.7 - delta))
    y = spine_image(configuration("A", 0.2, "A", 0.7 + delta))
    assert dist_chain(x, y) <= 50.0 * (2.0 * delta)


def test_spine_config_matches_point():
    c = configuration("A", 0.1, "A", 0.3)
    assert spine_config(c) == chain_to_config(spine_image(c))
