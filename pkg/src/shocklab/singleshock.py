"""Decide the single-shock emergence conditions for a flux/data configuration,
compute analytic collision-time bounds, and certify emergence empirically.

The decision layer checks, on the breakpoint lattice:
  * the standing hypothesis: slope-band preimages on both convex branches
    collapse onto [a1, a2] and [b2, b1], plus the width ordering
    a2 + (b1 - b2) < C <= D < b2 - (a2 - a1);
  * the strict chord conditions over [C, D] (three secant lines, including
    the width-shifted pair) and, for convex-concave triplets, the tangent
    clearance at the far branch.

Certification then runs front tracking with the orientation implied by the
verdict and reports the earliest persistent range separation, the empirical
gamma = T0 / |A - B|, and the chord-speed-gap bound when it is finite.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import (
    HypothesisNotChecked,
    NoRootInInterval,
    NotATriplet,
    ValidationError,
)
from .flux import Flux, TripletClass, classify_triplet, eval_chord, eval_tangent
from .step import StepFunction, assemble_initial_data
from .tracking import EmergenceReport, init_state, run_until_single_front

STRICT_TOL = 1e-10  # relative margin below which an inequality counts as boundary


@dataclass(frozen=True)
class HypothesisParams:
    """Band parameters a1 <= a2 < C <= D < b2 <= b1.

    The constructor only enforces the weak ordering; the strict gaps are part
    of the width conditions, so violations (e.g. a2 == C) surface as check
    failures rather than construction errors.
    """

    a1: float
    a2: float
    C: float
    D: float
    b2: float
    b1: float

    def __post_init__(self):
        if not (self.a1 <= self.a2 <= self.C <= self.D <= self.b2 <= self.b1):
            raise ValidationError(
                "hypothesis", "need a1 <= a2 <= C <= D <= b2 <= b1"
            )

    @property
    def shifted_pair(self) -> tuple[float, float]:
        return self.a2 + (self.b1 - self.b2), self.b2 - (self.a2 - self.a1)


@dataclass(frozen=True)
class Witness:
    condition: str
    theta: float | None
    lhs: float
    rhs: float
    at_boundary: bool

    def to_json(self) -> dict:
        return {
            "condition": self.condition,
            "theta": self.theta,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "at_boundary": self.at_boundary,
        }


@dataclass(frozen=True)
class HypothesisReport:
    passed: bool
    triplet: TripletClass
    failures: tuple[Witness, ...]


class VerdictKind(Enum):
    SATISFIED_I = "I"
    SATISFIED_II1 = "II.1"
    SATISFIED_II2 = "II.2"
    VIOLATED = "violated"


@dataclass(frozen=True)
class ConditionVerdict:
    kind: VerdictKind
    witnesses: tuple[Witness, ...]

    @property
    def satisfied(self) -> bool:
        return self.kind is not VerdictKind.VIOLATED

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "witnesses": [w.to_json() for w in self.witnesses],
        }


def _strict_less(lhs: float, rhs: float) -> tuple[bool, bool]:
    """(strictly less, within boundary tolerance)."""
    tol = STRICT_TOL * (1.0 + max(abs(lhs), abs(rhs)))
    return lhs < rhs - tol, abs(lhs - rhs) <= tol


def check_hypothesis_H(fl: Flux, hp: HypothesisParams) -> HypothesisReport:
    """Verify the slope-preimage identities and width ordering on the lattice."""
    kind = classify_triplet(fl, hp.C, hp.D)
    if kind.kind is TripletClass.NEITHER:
        raise NotATriplet("flux is not convex-convex or convex-concave at (C, D)")
    failures: list[Witness] = []

    def band(x1: float, x2: float) -> tuple[float, float]:
        s1, s2 = fl.left_slope(x1), fl.left_slope(x2)
        return min(s1, s2), max(s1, s2)

    pos_tol = 1e-12 * fl._scale()

    def preimage_check(lo_band, x_lo, x_hi, region, label):
        for x in region:
            s = fl.left_slope(x)
            in_band = lo_band[0] - 1e-12 <= s <= lo_band[1] + 1e-12
            in_interval = x_lo - pos_tol <= x <= x_hi + pos_tol
            if in_band != in_interval:
                failures.append(Witness(label, x, s, lo_band[0], False))

    left_region = [x for x in fl.breakpoints if fl.lo < x < hp.C]
    preimage_check(band(hp.a1, hp.a2), hp.a1, hp.a2, left_region, "slope-preimage-left")
    right_region = [x for x in fl.breakpoints if hp.D < x <= fl.hi]
    preimage_check(band(hp.b1, hp.b2), hp.b2, hp.b1, right_region, "slope-preimage-right")

    lo_shift, hi_shift = hp.shifted_pair
    ok, boundary = _strict_less(lo_shift, hp.C)
    if not ok:
        failures.append(Witness("width-left", None, lo_shift, hp.C, boundary))
    ok, boundary = _strict_less(hp.D, hi_shift)
    if not ok:
        failures.append(Witness("width-right", None, hp.D, hi_shift, boundary))
    return HypothesisReport(not failures, kind.kind, tuple(failures))


def _thetas(fl: Flux, hp: HypothesisParams) -> list[float]:
    return sorted({hp.C, hp.D, *fl.nodes_in(hp.C, hp.D)})


def _chord_conditions(
    fl: Flux, hp: HypothesisParams, want_below: bool
) -> list[Witness]:
    """Strict comparison of f against the three secant lines on [C, D]."""
    lo_shift, hi_shift = hp.shifted_pair
    pairs = [("a1-b1", hp.a1, hp.b1), ("a2-b2", hp.a2, hp.b2), ("shifted", lo_shift, hi_shift)]
    failures = []
    for theta in _thetas(fl, hp):
        f_theta = fl(theta)
        for name, a, b in pairs:
            line = eval_chord(fl, a, b, theta)
            lhs, rhs = (f_theta, line) if want_below else (line, f_theta)
            ok, boundary = _strict_less(lhs, rhs)
            if not ok:
                failures.append(Witness(f"chord-{name}", theta, f_theta, line, boundary))
    return failures


def check_main_conditions(fl: Flux, hp: HypothesisParams) -> ConditionVerdict:
    """Decide which emergence condition the configuration satisfies.

    Convex-convex triplets are tested against the below-chords condition;
    convex-concave triplets against above-chords plus tangent clearance
    (condition 1), then below-chords plus the mirrored tangent clearance
    (condition 2).  Failures carry the offending theta and both sides.
    """
    hrep = check_hypothesis_H(fl, hp)
    if not hrep.passed:
        return ConditionVerdict(VerdictKind.VIOLATED, hrep.failures)
    if hrep.triplet is TripletClass.CONVEX_CONVEX:
        failures = _chord_conditions(fl, hp, want_below=True)
        if not failures:
            return ConditionVerdict(VerdictKind.SATISFIED_I, ())
        return ConditionVerdict(VerdictKind.VIOLATED, tuple(failures))

    # convex-concave: condition 1, then condition 2
    fail1 = _chord_conditions(fl, hp, want_below=False)
    tang1 = eval_tangent(fl, hp.a1, hp.b2)
    ok, boundary = _strict_less(fl(hp.b2), tang1)
    if not ok:
        fail1.append(Witness("tangent-a1-at-b2", hp.b2, tang1, fl(hp.b2), boundary))
    if not fail1:
        return ConditionVerdict(VerdictKind.SATISFIED_II1, ())

    fail2 = _chord_conditions(fl, hp, want_below=True)
    tang2 = eval_tangent(fl, hp.b1, hp.a2)
    ok, boundary = _strict_less(tang2, fl(hp.a2))
    if not ok:
        fail2.append(Witness("tangent-b1-at-a2", hp.a2, tang2, fl(hp.a2), boundary))
    if not fail2:
        return ConditionVerdict(VerdictKind.SATISFIED_II2, ())
    return ConditionVerdict(VerdictKind.VIOLATED, tuple(fail1 + fail2))


def compute_alpha0(
    fl: Flux, beta2: float, lo: float | None = None, hi: float | None = None
) -> float:
    """Base point whose tangent line passes through (beta2, f(beta2)).

    The tangent-line value at beta2 is constant on each flux segment, so the
    gap function is a nondecreasing step over segments: return a point of an
    exactly-tangent segment when one exists, otherwise the breakpoint where
    the gap changes sign.
    """
    lo = fl.lo if lo is None else lo
    hi = beta2 if hi is None else hi
    target = fl(beta2)
    scale = 1.0 + abs(target)
    gaps: list[tuple[float, float, float]] = []   # (segment left, segment right, gap)
    for i, s in enumerate(fl.slopes):
        x0, x1 = fl.breakpoints[i], fl.breakpoints[i + 1]
        if x1 <= lo or x0 >= hi:
            continue
        gap = fl(x1) + s * (beta2 - x1) - target
        gaps.append((x0, x1, gap))
    for x0, x1, gap in gaps:
        if abs(gap) <= 1e-8 * scale:
            return 0.5 * (x0 + x1)
    for (l0, l1, g0), (r0, r1, g1) in zip(gaps, gaps[1:]):
        if g0 < 0 <= g1:
            return r0
    raise NoRootInInterval(f"no tangent through ({beta2}, {target}) based in [{lo}, {hi}]")


def _lattice(fl: Flux, lo: float, hi: float) -> list[float]:
    pts = {lo, hi} | set(fl.nodes_in(lo, hi))
    return sorted(pts)


def speed_gap_bound(
    fl: Flux,
    left_range: tuple[float, float],
    right_range: tuple[float, float],
    mid_range: tuple[float, float],
    A: float,
    B: float,
) -> float | None:
    """Collision-time bound (B - A) / (s_left - s_right), or None.

    s_left is the slowest chord joining the left family to a mid state;
    s_right the fastest chord joining a mid state to the right family.  When
    the gap is positive the boundary waves must meet by the returned time.
    """
    lefts = _lattice(fl, *left_range)
    rights = _lattice(fl, *right_range)
    mids = _lattice(fl, *mid_range)
    s_left = min(
        (fl(p) - fl(q)) / (p - q) for p in lefts for q in mids if p != q
    )
    s_right = max(
        (fl(p) - fl(q)) / (p - q) for p in mids for q in rights if p != q
    )
    if s_left <= s_right:
        return None
    return (B - A) / (s_left - s_right)


def analytic_T0_bound(
    fl: Flux,
    hp: HypothesisParams,
    data_range: tuple[float, float],
    A: float,
    B: float,
) -> float | None:
    """Bound for the left-high orientation: fast [b2, b1] states chase slow
    [a1, a2] states through the data range."""
    return speed_gap_bound(fl, (hp.b2, hp.b1), (hp.a1, hp.a2), data_range, A, B)


def ranges_for(kind: VerdictKind, hp: HypothesisParams):
    """(left range, right range) of u- / u+ for a satisfied verdict."""
    if kind is VerdictKind.SATISFIED_II1:
        return (hp.a1, hp.a2), (hp.b2, hp.b1)
    return (hp.b2, hp.b1), (hp.a1, hp.a2)


def certify(
    fl: Flux,
    hp: HypothesisParams,
    A: float,
    B: float,
    u_minus: StepFunction,
    ubar: StepFunction,
    u_plus: StepFunction,
    t_max: float | None = None,
    verdict: ConditionVerdict | None = None,
) -> EmergenceReport:
    """Run the emergence check for a configuration with satisfied conditions.

    Raises HypothesisNotChecked when the conditions are violated; otherwise
    simulates to t_max (default 100 |A - B|), detects persistent separation,
    and attaches the empirical gamma plus the finite analytic bound when the
    chord-speed gap is positive.
    """
    if verdict is None:
        verdict = check_main_conditions(fl, hp)
    if not verdict.satisfied:
        raise HypothesisNotChecked(
            f"conditions violated: {[w.condition for w in verdict.witnesses]}"
        )
    left_range, right_range = ranges_for(verdict.kind, hp)

    def in_rng(v, rng):
        tol = 1e-12 * (1.0 + abs(v))
        return rng[0] - tol <= v <= rng[1] + tol

    for v in u_minus.values:
        if not in_rng(v, left_range):
            raise ValidationError("u_minus", f"value {v} outside {left_range}")
    for v in u_plus.values:
        if not in_rng(v, right_range):
            raise ValidationError("u_plus", f"value {v} outside {right_range}")

    u0 = assemble_initial_data(A, B, u_minus, ubar, u_plus)
    span = abs(B - A)
    horizon = 100.0 * span if t_max is None else t_max
    state = init_state(fl, u0)
    report = run_until_single_front(state, left_range, right_range, horizon)

    data_lo = min(u0.values)
    data_hi = max(u0.values)
    if verdict.kind is VerdictKind.SATISFIED_II1:
        # the chord-speed induction requires the middle data to stay inside
        # the left family (at or below a2); outside it no bound is claimed
        mid = (min(*u_minus.values, *ubar.values), max(*u_minus.values, *ubar.values))
        if mid[1] <= hp.a2 + 1e-12 * (1.0 + abs(hp.a2)):
            t_tilde = speed_gap_bound(fl, left_range, right_range, mid, A, B)
        else:
            t_tilde = None
    else:
        t_tilde = analytic_T0_bound(fl, hp, (data_lo, data_hi), A, B)

    if t_tilde is not None:
        # the chord-speed bound must dominate the measured collapse time
        if report.emerged:
            assert report.t0 <= t_tilde + 1e-9 * (1.0 + t_tilde), (
                f"measured T0={report.t0} exceeds the analytic bound {t_tilde}"
            )
        else:
            assert horizon < t_tilde, (
                f"no emergence by t={horizon} despite bound {t_tilde}"
            )

    gamma = None
    if report.emerged and span > 0:
        gamma = report.t0 / span
    return EmergenceReport(
        emerged=report.emerged,
        left_range=left_range,
        right_range=right_range,
        horizon=report.horizon,
        t0=report.t0,
        x0=report.x0,
        r_samples=report.r_samples,
        final_speed=report.final_speed,
        gamma=gamma,
        t_tilde=t_tilde,
        events=report.events,
    )
