"""Event-driven exact evolution of piecewise-constant data (front tracking).

States live on a finite lattice ({flux breakpoints} plus the data values) and
are compared exactly; only positions and times are floating point.  Each
initial jump is replaced by its Riemann fan; fronts travel at constant speed
until two or more meet, where the outermost states pose a fresh Riemann
problem whose fan replaces the incoming fronts.  For piecewise-affine flux
and finitely many jumps the event count is finite; a hard guard fences
adversarial float drift.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass

from .errors import EventOverflow, StateOutOfRange
from .flux import Flux
from .riemann import Front, solve_riemann
from .step import StepFunction, step

PARALLEL_TOL = 1e-14      # speed differences below this never collide
MAX_EVENTS = 10 ** 6


@dataclass(eq=False)
class _LiveFront:
    fid: int
    x0: float
    t0: float
    speed: float
    left: float
    right: float

    def pos(self, t: float) -> float:
        return self.x0 + self.speed * (t - self.t0)

    def freeze(self) -> Front:
        return Front(self.speed, self.left, self.right)


@dataclass(frozen=True)
class EventRecord:
    t: float
    x: float
    incoming: tuple[Front, ...]
    outgoing: tuple[Front, ...]

    def to_json(self) -> dict:
        pack = lambda f: {"l": f.left, "r": f.right, "s": f.speed}
        return {
            "t": self.t,
            "x": self.x,
            "in": [pack(f) for f in self.incoming],
            "out": [pack(f) for f in self.outgoing],
        }


@dataclass(frozen=True)
class EventPreview:
    time: float
    x: float
    fronts: tuple[Front, ...]


@dataclass(frozen=True)
class EmergenceReport:
    emerged: bool
    left_range: tuple[float, float]
    right_range: tuple[float, float]
    horizon: float
    t0: float | None = None
    x0: float | None = None
    r_samples: tuple[tuple[float, float], ...] = ()
    final_speed: float | None = None
    gamma: float | None = None
    t_tilde: float | None = None
    events: int = 0

    def to_json(self) -> dict:
        return {
            "emerged": self.emerged,
            "T0": self.t0,
            "x0": self.x0,
            "gamma": self.gamma,
            "T_tilde": self.t_tilde,
            "horizon": self.horizon,
            "left_range": list(self.left_range),
            "right_range": list(self.right_range),
            "final_speed": self.final_speed,
            "events": self.events,
            "r_samples": [{"t": t, "x": x} for t, x in self.r_samples],
        }


class SimState:
    """Single-owner mutable simulation state."""

    def __init__(self, flux: Flux, fronts: list[_LiveFront], t: float = 0.0):
        self.flux = flux
        self.t = t
        self.fronts = fronts
        self.events_processed = 0
        self.event_log: list[EventRecord] = []
        self.eps_x = 1e-9 * (flux.hi - flux.lo)
        self.max_events = MAX_EVENTS
        self._heap: list[tuple[float, float, int, int, int]] = []
        self._seq = itertools.count()
        self._alive: dict[int, _LiveFront] = {f.fid: f for f in fronts}
        self._fid = itertools.count(len(fronts))
        self._constant_value = fronts[0].left if fronts else 0.0
        self.births: dict[int, _LiveFront] = dict(self._alive)
        self.deaths: dict[int, float] = {}
        for i in range(len(fronts) - 1):
            self._schedule(fronts[i], fronts[i + 1])

    # -- scheduling --------------------------------------------------------

    def _collision(self, a: _LiveFront, b: _LiveFront) -> tuple[float, float] | None:
        ds = a.speed - b.speed
        if ds <= PARALLEL_TOL:
            return None
        gap = b.pos(self.t) - a.pos(self.t)
        t_hit = self.t + max(gap, 0.0) / ds
        return t_hit, a.pos(t_hit)

    def _schedule(self, a: _LiveFront, b: _LiveFront) -> None:
        hit = self._collision(a, b)
        if hit is not None:
            heapq.heappush(self._heap, (hit[0], hit[1], next(self._seq), a.fid, b.fid))

    def _adjacent(self, fa: int, fb: int) -> int | None:
        """Index of front fa if fa, fb are alive and adjacent, else None."""
        a = self._alive.get(fa)
        b = self._alive.get(fb)
        if a is None or b is None:
            return None
        i = self.fronts.index(a)
        if i + 1 < len(self.fronts) and self.fronts[i + 1] is b:
            return i
        return None

    def _peek(self) -> tuple[float, float, int, int] | None:
        """Earliest valid heap entry as (t, x, fid_a, fid_b); drops stale ones."""
        while self._heap:
            t_hit, x_hit, _, fa, fb = self._heap[0]
            if self._adjacent(fa, fb) is None:
                heapq.heappop(self._heap)
                continue
            return t_hit, x_hit, fa, fb
        return None

    def _group(self, t_hit: float, x_hit: float, i: int) -> tuple[int, int]:
        """Maximal contiguous block of fronts sitting within eps_x of the hit."""
        j = i + 1
        while i - 1 >= 0 and abs(self.fronts[i - 1].pos(t_hit) - x_hit) <= self.eps_x:
            i -= 1
        while j + 1 < len(self.fronts) and abs(self.fronts[j + 1].pos(t_hit) - x_hit) <= self.eps_x:
            j += 1
        return i, j

    def _process(self, t_hit: float, x_hit: float, fa: int, fb: int) -> None:
        if self.events_processed >= self.max_events:
            raise EventOverflow(f"more than {self.max_events} events")
        i = self._adjacent(fa, fb)
        assert i is not None
        self.t = t_hit
        i, j = self._group(t_hit, x_hit, i)
        block = self.fronts[i : j + 1]
        fan = solve_riemann(self.flux, block[0].left, block[-1].right)
        born = [
            _LiveFront(next(self._fid), x_hit, t_hit, f.speed, f.left, f.right)
            for f in fan
        ]
        for f in block:
            del self._alive[f.fid]
            self.deaths[f.fid] = t_hit
        self.fronts[i : j + 1] = born
        for f in born:
            self._alive[f.fid] = f
            self.births[f.fid] = f
        if not self.fronts:
            self._constant_value = block[0].left
        self.events_processed += 1
        self.event_log.append(
            EventRecord(t_hit, x_hit, tuple(f.freeze() for f in block), tuple(fan))
        )
        # new adjacencies: block edges only (fan speeds increase, so no inner events)
        if born:
            if i - 1 >= 0:
                self._schedule(self.fronts[i - 1], born[0])
            k = i + len(born)
            if k < len(self.fronts):
                self._schedule(born[-1], self.fronts[k])
        elif 0 < i <= len(self.fronts) - 1:
            self._schedule(self.fronts[i - 1], self.fronts[i])

    # -- queries -----------------------------------------------------------

    def profile(self, t: float | None = None) -> StepFunction:
        """Piecewise-constant snapshot, zero-width pieces merged."""
        t = self.t if t is None else t
        if not self.fronts:
            return StepFunction((), (self._constant_value,))
        pos: list[float] = []
        vals: list[float] = [self.fronts[0].left]
        for f in self.fronts:
            x = f.pos(t)
            if pos and x <= pos[-1]:
                vals[-1] = f.right
            else:
                pos.append(x)
                vals.append(f.right)
        return step(vals, pos)

    def front_snapshot(self, t: float | None = None) -> list[tuple[float, float, float, float]]:
        t = self.t if t is None else t
        return [(f.pos(t), f.speed, f.left, f.right) for f in self.fronts]

    def tv(self) -> float:
        return self.profile().tv()


def init_state(fl: Flux, u0: StepFunction) -> SimState:
    """Replace each initial jump by its Riemann fan and prime the event queue."""
    tol = 1e-12 * fl._scale()
    for v in u0.values:
        if not fl.contains(v, tol):
            raise StateOutOfRange(f"data value {v} outside working interval")
    fronts: list[_LiveFront] = []
    fid = itertools.count()
    for i, x in enumerate(u0.positions):
        for f in solve_riemann(fl, u0.values[i], u0.values[i + 1]):
            fronts.append(_LiveFront(next(fid), x, 0.0, f.speed, f.left, f.right))
    state = SimState(fl, fronts)
    state._constant_value = u0.values[0]
    return state


def next_event(s: SimState) -> EventPreview | None:
    """Earliest future collision with its eps_x group, or None."""
    head = s._peek()
    if head is None:
        return None
    t_hit, x_hit, fa, fb = head
    i = s._adjacent(fa, fb)
    i, j = s._group(t_hit, x_hit, i)
    return EventPreview(t_hit, x_hit, tuple(f.freeze() for f in s.fronts[i : j + 1]))


def advance(s: SimState, t_target: float) -> StepFunction:
    """Process events chronologically up to t_target; return the profile there."""
    if t_target < s.t:
        raise ValueError(f"cannot rewind from {s.t} to {t_target}")
    while True:
        head = s._peek()
        if head is None or head[0] > t_target:
            break
        s._process(*head)
    s.t = t_target
    return s.profile(t_target)


def _in_range(v: float, rng: tuple[float, float]) -> bool:
    tol_lo = 1e-12 * (1.0 + abs(rng[0]))
    tol_hi = 1e-12 * (1.0 + abs(rng[1]))
    return rng[0] - tol_lo <= v <= rng[1] + tol_hi


def _separating_front(s: SimState, left_range, right_range) -> int | None:
    """Leftmost front index splitting left-range pieces from right-range pieces."""
    if not s.fronts:
        return None
    vals = [s.fronts[0].left] + [f.right for f in s.fronts]
    n = len(s.fronts)
    left_ok = [False] * (n + 2)
    right_ok = [False] * (n + 2)
    acc = True
    for i in range(n + 1):
        acc = acc and _in_range(vals[i], left_range)
        left_ok[i] = acc
    acc = True
    for i in range(n, -1, -1):
        acc = acc and _in_range(vals[i], right_range)
        right_ok[i] = acc
    for k in range(n):
        if left_ok[k] and right_ok[k + 1]:
            return k
    return None


def run_until_single_front(
    s: SimState,
    left_range: tuple[float, float],
    right_range: tuple[float, float],
    t_max: float,
) -> EmergenceReport:
    """Simulate to t_max and locate the earliest persistent range separation.

    Reports the first event time T0 after which one front index splits every
    piece left of it (values inside left_range) from every piece right of it
    (values inside right_range) at each later event up to t_max.
    """
    if t_max <= 0:
        raise ValueError("t_max must be positive")

    def check() -> tuple[float, bool, float | None, float | None]:
        k = _separating_front(s, left_range, right_range)
        if k is None:
            return (s.t, False, None, None)
        f = s.fronts[k]
        return (s.t, True, f.pos(s.t), f.speed)

    checks = [check()]
    while True:
        head = s._peek()
        if head is None or head[0] > t_max:
            break
        s._process(*head)
        checks.append(check())
    s.t = t_max
    # earliest check from which separation never breaks again
    first_good = None
    for rec in reversed(checks):
        if not rec[1]:
            break
        first_good = rec
    if first_good is None:
        return EmergenceReport(
            emerged=False,
            left_range=left_range,
            right_range=right_range,
            horizon=t_max,
            events=s.events_processed,
        )
    t0 = first_good[0]
    samples = [(t, x) for t, ok, x, _ in checks if ok and t >= t0]
    last_t, _, last_x, last_speed = checks[-1]
    samples.append((t_max, last_x + last_speed * (t_max - last_t)))
    return EmergenceReport(
        emerged=True,
        left_range=left_range,
        right_range=right_range,
        horizon=t_max,
        t0=t0,
        x0=samples[0][1],
        r_samples=tuple(samples),
        final_speed=last_speed,
        events=s.events_processed,
    )
