import math

import numpy as np
import pytest

from shocklab import errors
from shocklab.flux import (
    AnalyticFluxSpec,
    TripletClass,
    approximate_pw_affine,
    chord_slope_check,
    classify_triplet,
    convex_modify,
    convex_modify_onesided,
    eval_chord,
    eval_tangent,
    hull,
    make_flux,
)


def burgers_mesh(h=0.01, lo=-2.0, hi=2.0, corners=(0.0, 1.0)):
    return approximate_pw_affine(
        AnalyticFluxSpec("burgers", lo, hi, h, corners=tuple(corners))
    )


def neg_cubic_mesh(h=0.01, lo=-3.0, hi=3.0, corners=(-1.0, -0.5, 0.0, 2.0)):
    return approximate_pw_affine(
        AnalyticFluxSpec("neg_cubic", lo, hi, h, corners=tuple(corners))
    )


def double_well_mesh(h=0.01, lo=-3.0, hi=3.0):
    c = math.sqrt(2.0 / 3.0)
    return approximate_pw_affine(
        AnalyticFluxSpec("double_well", lo, hi, h, corners=(-2.0, -c, 0.0, c, 2.0))
    )


V_FLUX = make_flux([-2, -1, 0, 1, 2], [4, 1, 0, 1, 4])


def test_make_flux_slopes_by_hand():
    assert V_FLUX.slopes == (-3.0, -1.0, 1.0, 3.0)


def test_make_flux_flat_segment():
    fl = make_flux([0, 1], [0, 0])
    assert fl.slopes == (0.0,)
    assert fl(0.5) == 0.0


def test_make_flux_rejects_duplicates():
    with pytest.raises(errors.NonMonotoneBreakpoints):
        make_flux([0, 1, 1], [0, 1, 2])
    with pytest.raises(errors.LengthMismatch):
        make_flux([0, 1, 2], [0, 1])


def test_eval_outside_interval_errors():
    with pytest.raises(errors.StateOutOfRange):
        V_FLUX(5.0)


def test_approximate_burgers_nodes():
    fl = approximate_pw_affine(AnalyticFluxSpec("burgers", -2, 2, 1.0, corners=(0.0, 1.0, 2.0)))
    assert fl.breakpoints == (-2.0, -1.0, 0.0, 1.0, 2.0)
    assert fl.values == (2.0, 0.5, 0.0, 0.5, 2.0)


def test_approximate_neg_cubic_values():
    fl = approximate_pw_affine(AnalyticFluxSpec("neg_cubic", -3, 3, 3.0, corners=(-1.0, 0.0, 2.0)))
    assert fl.breakpoints == (-3.0, -1.0, 0.0, 2.0, 3.0)
    assert fl.values == (27.0, 1.0, 0.0, -8.0, -27.0)


def test_approximate_mesh_subsumed_by_corners():
    fl = approximate_pw_affine(
        AnalyticFluxSpec("burgers", 0.0, 1.0, 1.0, corners=(0.0, 0.5, 1.0))
    )
    assert fl.breakpoints == (0.0, 0.5, 1.0)


def test_approximate_rejects_bad_mesh():
    with pytest.raises(errors.EmptyMesh):
        approximate_pw_affine(AnalyticFluxSpec("burgers", -1, 1, 0.0))


def test_chord_burgers_symmetric():
    fl = burgers_mesh()
    assert eval_chord(fl, -1.0, 1.0, 0.0) == pytest.approx(0.5, abs=1e-12)


def test_chord_at_endpoint_is_nodal_value():
    assert eval_chord(V_FLUX, -1.0, 1.0, -1.0) == 1.0


def test_chord_neg_cubic():
    fl = neg_cubic_mesh()
    assert eval_chord(fl, -0.5, 2.0, 0.0) == pytest.approx(-1.5, abs=1e-12)


def test_chord_degenerate():
    with pytest.raises(errors.DegenerateChord):
        eval_chord(V_FLUX, 1.0, 1.0, 0.0)


def test_tangent_neg_cubic_tangency():
    fl = neg_cubic_mesh(h=0.005)
    # tangent from -1 touches the graph again at 2
    assert eval_tangent(fl, -1.0, 2.0) == pytest.approx(-8.0, abs=0.1)
    assert eval_tangent(fl, -0.5, 2.0) == pytest.approx(-1.75, abs=0.05)
    assert eval_tangent(fl, -0.5, -0.5) == fl(-0.5)


def test_tangent_boundary_point():
    with pytest.raises(errors.BoundaryPoint):
        eval_tangent(V_FLUX, -2.0, 0.0)


def test_classify_burgers_convex_convex():
    fl = burgers_mesh()
    rng = np.random.default_rng(3)
    pairs = [(0.0, 0.0), (-1.0, 1.0), (0.3, 0.7)]
    pairs += [tuple(sorted(rng.uniform(fl.lo, fl.hi, 2))) for _ in range(40)]
    for c, d in pairs:
        assert classify_triplet(fl, c, d).kind is TripletClass.CONVEX_CONVEX


def test_classify_neg_cubic_convex_concave():
    fl = neg_cubic_mesh()
    assert classify_triplet(fl, 0.0, 0.0).kind is TripletClass.CONVEX_CONCAVE


def test_classify_double_well():
    fl = double_well_mesh()
    c = math.sqrt(2.0 / 3.0)
    assert classify_triplet(fl, -c, c).kind is TripletClass.CONVEX_CONVEX
    # squeezing the triplet into the concave well breaks convexity
    assert classify_triplet(fl, -0.1, 0.1).kind is TripletClass.NEITHER


def test_classify_out_of_range():
    with pytest.raises(errors.COutOfRange):
        classify_triplet(V_FLUX, -5.0, 0.0)


def test_chord_slope_check_double_well():
    fl = double_well_mesh()
    c = math.sqrt(2.0 / 3.0)
    assert chord_slope_check(fl, -2.0, 2.0, -c, c) is True
    # premise shape violated: alpha not left of C
    assert chord_slope_check(fl, -0.5, 0.5, -c, c) is False


def test_chord_slope_check_burgers_trivial():
    fl = burgers_mesh()
    assert chord_slope_check(fl, -1.0, 1.0, 0.0, 0.0) is True


def test_chord_slope_check_wrong_triplet():
    fl = neg_cubic_mesh()
    with pytest.raises(errors.WrongTriplet):
        chord_slope_check(fl, -2.0, 2.5, 0.0, 0.0)


def test_convex_modify_double_well_case_b1_plus_b2_zero():
    fl = double_well_mesh(h=0.005)
    out = convex_modify(fl, -2.0, 2.0)
    # exact construction has x1=-1, x2=1, Q(x) = 2x^2 - 6; the mesh version
    # carries O(h) tangent-slope error
    assert out(-1.0) == pytest.approx(-4.0, abs=0.05)
    assert out(1.0) == pytest.approx(-4.0, abs=0.05)
    assert out(0.0) == pytest.approx(-6.0, abs=0.05)
    assert out.is_convex(tol=1e-9)
    # untouched outside (alpha, beta)
    for x in (-2.5, -2.0, 2.0, 2.5):
        assert out(x) == fl(x)


def test_convex_modify_convex_flux_stays_below():
    fl = burgers_mesh(h=0.002)
    out = convex_modify(fl, -1.0, 1.0)
    xs = np.linspace(-1.5, 1.5, 101)
    assert all(out(x) <= fl(x) + 1e-12 for x in xs)
    for x in (-1.5, 1.5):
        assert out(x) == fl(x)


def test_convex_modify_rejects_chord_violation():
    # f(C) sits above the chord over [-1, 1], so the premise fails
    with pytest.raises(errors.ChordSlopeViolated):
        convex_modify(double_well_mesh(), -1.0, 1.0)


def test_convex_modify_onesided_neg_cubic():
    fl = neg_cubic_mesh(h=0.005)
    out = convex_modify_onesided(fl, 0.0)
    for p in (0.5, 1.0, 2.0):
        assert out(p) == pytest.approx(p * p, abs=0.02)
    for p in (-2.0, -1.0, -0.3):
        assert out(p) == pytest.approx(fl(p), abs=1e-12)


def test_hull_double_well_upper_chord():
    fl = double_well_mesh()
    h = hull(fl, 0.0, 2.0, "upper")
    assert h.breakpoints == (0.0, 2.0)
    assert h.values == (0.0, 0.0)


def test_hull_of_convex_is_identity():
    fl = burgers_mesh(h=0.25)
    h = hull(fl, -1.0, 1.0, "lower")
    assert h.breakpoints == tuple(x for x in fl.breakpoints if -1 <= x <= 1)
    assert all(h(x) == fl(x) for x in h.breakpoints)


def test_hull_v_shape():
    fl = make_flux([-1, 0, 1], [1, 0, 1])
    lo = hull(fl, -1, 1, "lower")
    up = hull(fl, -1, 1, "upper")
    assert lo.breakpoints == (-1.0, 0.0, 1.0)
    assert up.breakpoints == (-1.0, 1.0)
    assert up.values == (1.0, 1.0)


def test_hull_empty_interval():
    with pytest.raises(errors.EmptyInterval):
        hull(V_FLUX, 1.0, 1.0, "lower")


def test_hull_idempotent_and_extremal():
    rng = np.random.default_rng(7)
    for _ in range(50):
        n = rng.integers(3, 12)
        bp = np.sort(rng.uniform(-3, 3, n))
        while np.min(np.diff(bp)) < 1e-3:
            bp = np.sort(rng.uniform(-3, 3, n))
        vals = rng.uniform(-2, 2, n)
        fl = make_flux(bp, vals)
        a, b = fl.lo, fl.hi
        for side in ("lower", "upper"):
            h1 = hull(fl, a, b, side)
            h2 = hull(h1, a, b, side)
            assert h1.breakpoints == h2.breakpoints
            assert h1.values == h2.values
            sgn = 1.0 if side == "lower" else -1.0
            for x in fl.breakpoints:
                assert sgn * (h1(x) - fl(x)) <= 1e-9
            assert all(
                sgn * (s2 - s1) > 0 for s1, s2 in zip(h1.slopes, h1.slopes[1:])
            )


def test_convex_modify_slope_monotonicity_invariant():
    fl = double_well_mesh(h=0.02)
    out = convex_modify(fl, -2.2, 2.2)
    assert all(s2 >= s1 - 1e-9 for s1, s2 in zip(out.slopes, out.slopes[1:]))
    for x in fl.breakpoints:
        if not -2.2 < x < 2.2:
            assert out(x) == fl(x)


def test_chord_slope_consequence_on_lattice():
    # whenever the premise holds the derivative sandwich must follow
    fl = double_well_mesh()
    assert chord_slope_check(fl, -2.0, 2.0, -math.sqrt(2 / 3), math.sqrt(2 / 3))
    m = (fl(-2.0) - fl(2.0)) / (-4.0)
    assert fl.left_slope(-2.0) < m < fl.left_slope(2.0)


def test_flux_json_roundtrip():
    d = V_FLUX.to_json()
    fl = make_flux(d["breakpoints"], d["values"])
    assert fl == V_FLUX
