"""Scenario ingestion, presets, execution and artifact emission.

A scenario is a single JSON object naming a flux (inline table or analytic
recipe), the three-piece initial data around [A, B], optional hypothesis
parameters, and run controls.  Random middle data expands deterministically
from its seed, so identical files produce byte-identical reports (wall-clock
metadata is isolated in one sub-object).
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ParseError, ValidationError
from .flux import AnalyticFluxSpec, Flux, approximate_pw_affine, make_flux
from .singleshock import HypothesisParams, certify, check_main_conditions
from .step import StepFunction, assemble_initial_data, constant, step
from .tracking import advance, init_state


@dataclass(frozen=True)
class Scenario:
    name: str
    flux: Flux
    A: float
    B: float
    u_minus: StepFunction
    u_plus: StepFunction
    ubar: StepFunction
    hypothesis: HypothesisParams | None
    t_max: float
    snapshots: tuple[float, ...]

    def initial_data(self) -> StepFunction:
        return assemble_initial_data(self.A, self.B, self.u_minus, self.ubar, self.u_plus)


def random_steps(k: int, lo: float, hi: float, seed: int, A: float, B: float) -> StepFunction:
    """k i.i.d. uniform values at equispaced jumps on (A, B)."""
    rng = np.random.default_rng(seed)
    vals = rng.uniform(lo, hi, k)
    pos = [A + (B - A) * i / k for i in range(1, k)]
    return step([float(v) for v in vals], pos)


def _parse_step(obj, field: str, A: float, B: float) -> StepFunction:
    if isinstance(obj, (int, float)):
        return constant(float(obj))
    if not isinstance(obj, dict):
        raise ValidationError(field, "expected a number or an object")
    if "random" in obj:
        r = obj["random"]
        try:
            return random_steps(int(r["steps"]), float(r["lo"]), float(r["hi"]), int(r["seed"]), A, B)
        except KeyError as e:
            raise ValidationError(f"{field}.random", f"missing key {e}")
    try:
        return step([float(v) for v in obj["values"]], [float(x) for x in obj["positions"]])
    except KeyError as e:
        raise ValidationError(field, f"missing key {e}")


def _parse_flux(obj, field: str = "flux") -> Flux:
    if not isinstance(obj, dict):
        raise ValidationError(field, "expected an object")
    if "breakpoints" in obj:
        return make_flux(obj["breakpoints"], obj["values"])
    try:
        spec = AnalyticFluxSpec(
            kind=obj["kind"],
            lo=float(obj["lo"]),
            hi=float(obj["hi"]),
            mesh=float(obj["mesh"]),
            corners=tuple(float(c) for c in obj.get("corners", ())),
            params=tuple((k, float(v)) for k, v in sorted(obj.get("params", {}).items())),
        )
    except KeyError as e:
        raise ValidationError(field, f"missing key {e}")
    return approximate_pw_affine(spec)


def scenario_from_dict(raw: dict, name: str = "scenario") -> Scenario:
    if "preset" in raw:
        base = preset(raw["preset"])
        return base
    try:
        data = raw["data"]
        A, B = float(data["A"]), float(data["B"])
    except KeyError as e:
        raise ValidationError("data", f"missing key {e}")
    if A > B:
        raise ValidationError("data.A", "need A <= B")
    fl = _parse_flux(raw.get("flux"), "flux")
    u_minus = _parse_step(data.get("u_minus", 0.0), "data.u_minus", A, B)
    u_plus = _parse_step(data.get("u_plus", 0.0), "data.u_plus", A, B)
    ubar = _parse_step(data.get("ubar", 0.0), "data.ubar", A, B)
    if A == B and ubar.positions:
        raise ValidationError("data.ubar", "A == B leaves no room for middle data")
    hp = None
    if raw.get("hypothesis"):
        h = raw["hypothesis"]
        try:
            hp = HypothesisParams(
                float(h["a1"]), float(h["a2"]), float(h["C"]),
                float(h["D"]), float(h["b2"]), float(h["b1"]),
            )
        except KeyError as e:
            raise ValidationError("hypothesis", f"missing key {e}")
    run = raw.get("run", {})
    t_max = float(run.get("t_max", 100.0 * max(B - A, 1.0)))
    snapshots = tuple(float(t) for t in run.get("snapshots", ()))
    for v in (*u_minus.values, *u_plus.values, *ubar.values):
        if not fl.contains(v, 1e-12 * fl._scale()):
            raise ValidationError("data", f"value {v} outside flux working interval")
    return Scenario(raw.get("name", name), fl, A, B, u_minus, u_plus, ubar, hp, t_max, snapshots)


def load_scenario(path: str | Path) -> Scenario:
    path = Path(path)
    try:
        raw = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise ParseError(f"{path}: {e}")
    return scenario_from_dict(raw, name=path.stem)


def emit_scenario(s: Scenario) -> dict:
    """Canonical JSON form; load(emit(s)) reproduces s exactly."""
    out = {
        "name": s.name,
        "flux": s.flux.to_json(),
        "data": {
            "A": s.A,
            "B": s.B,
            "u_minus": s.u_minus.to_json(),
            "u_plus": s.u_plus.to_json(),
            "ubar": s.ubar.to_json(),
        },
        "run": {"t_max": s.t_max, "snapshots": list(s.snapshots)},
    }
    if s.hypothesis is not None:
        hp = s.hypothesis
        out["hypothesis"] = {
            "a1": hp.a1, "a2": hp.a2, "C": hp.C, "D": hp.D, "b2": hp.b2, "b1": hp.b1,
        }
    return out


# ---------------------------------------------------------------------------
# presets
# ---------------------------------------------------------------------------

def _preset_burgers_shock(seed: int = 11) -> Scenario:
    fl = approximate_pw_affine(
        AnalyticFluxSpec("burgers", -3.0, 3.0, 0.05, corners=(-1.0, 0.0, 1.0, 2.0))
    )
    return Scenario(
        name="burgers_shock",
        flux=fl,
        A=0.0,
        B=1.0,
        u_minus=constant(1.0),
        u_plus=constant(0.0),
        ubar=random_steps(8, 0.0, 1.0, seed, 0.0, 1.0),
        hypothesis=HypothesisParams(0.0, 0.0, 0.25, 0.75, 1.0, 1.0),
        t_max=50.0,
        snapshots=(0.0, 1.0, 5.0, 20.0),
    )


def _preset_neg_cubic_ii1(seed: int = 23) -> Scenario:
    fl = approximate_pw_affine(
        AnalyticFluxSpec("neg_cubic", -3.0, 3.0, 0.05, corners=(-1.5, -1.0, -0.5, 0.0, 2.0, 2.5))
    )
    return Scenario(
        name="neg_cubic_ii1",
        flux=fl,
        A=0.0,
        B=1.0,
        u_minus=constant(-0.5),
        u_plus=constant(2.0),
        ubar=random_steps(6, -1.5, 2.5, seed, 0.0, 1.0),
        hypothesis=HypothesisParams(-0.5, -0.5, 0.0, 0.0, 2.0, 2.0),
        t_max=50.0,
        snapshots=(0.0, 1.0, 5.0),
    )


def _preset_double_well_i(seed: int = 37) -> Scenario:
    c = math.sqrt(2.0 / 3.0)
    fl = approximate_pw_affine(
        AnalyticFluxSpec(
            "double_well", -3.2, 3.2, 0.05,
            corners=(-2.6, -2.5, -2.4, -2.0, -c, 0.0, c, 2.0, 2.4, 2.5, 2.6),
        )
    )
    return Scenario(
        name="double_well_i",
        flux=fl,
        A=0.0,
        B=1.0,
        u_minus=constant(2.5),
        u_plus=constant(-2.5),
        ubar=random_steps(6, -1.0, 1.0, seed, 0.0, 1.0),
        hypothesis=HypothesisParams(-2.6, -2.5, -c, c, 2.5, 2.6),
        t_max=60.0,
        snapshots=(0.0, 1.0, 5.0),
    )


def _preset_buckley_leverett(seed: int = 5, r: float = 1.0, h: float = 0.01) -> Scenario:
    fl = approximate_pw_affine(
        AnalyticFluxSpec(
            "buckley_leverett", -0.2, 1.2, h,
            corners=(0.0, 0.45, 0.5, 0.52, 0.55, 1.0),
            params=(("r", r),),
        )
    )
    return Scenario(
        name="buckley_leverett",
        flux=fl,
        A=0.0,
        B=1.0,
        u_minus=constant(0.55),
        u_plus=constant(0.0),
        ubar=random_steps(5, 0.0, 0.55, seed, 0.0, 1.0),
        hypothesis=HypothesisParams(0.0, 0.0, 0.45, 0.52, 0.55, 0.55),
        t_max=60.0,
        snapshots=(0.0, 2.0, 10.0),
    )


def _preset_counterexample_1(seed: int = 0) -> Scenario:
    c = math.sqrt(2.0 / 3.0)
    fl = approximate_pw_affine(
        AnalyticFluxSpec("double_well", -3.0, 3.0, 0.05, corners=(-2.0, -c, 0.0, c, 2.0))
    )
    return Scenario(
        name="counterexample_1",
        flux=fl,
        A=0.0,
        B=1.0,
        u_minus=constant(2.0),
        u_plus=constant(-2.0),
        ubar=constant(0.0),
        hypothesis=HypothesisParams(-2.0, -2.0, -c, c, 2.0, 2.0),
        t_max=100.0,
        snapshots=(0.0, 25.0, 50.0, 100.0),
    )


def _counterexample_2_flux(eta: float = 0.1, h: float = 0.05) -> Flux:
    """neg_cubic mesh with the nodes inside (-1-eta, -1+eta) removed.

    The bridging segment is then exactly collinear with the chord from its
    right end to (2, f(2)), which makes the tangency of the second
    counterexample exact on the lattice.
    """
    spec = AnalyticFluxSpec(
        "neg_cubic", -3.0, 3.0, h, corners=(-1.5, -1.0 - eta, -1.0 + eta, 0.0, 2.0)
    )
    base = approximate_pw_affine(spec)
    keep = [
        (x, v)
        for x, v in zip(base.breakpoints, base.values)
        if not (-1.0 - eta < x < -1.0 + eta)
    ]
    return make_flux([x for x, _ in keep], [v for _, v in keep])


def _preset_counterexample_2(seed: int = 0) -> Scenario:
    eta = 0.1
    fl = _counterexample_2_flux(eta=eta)
    return Scenario(
        name="counterexample_2",
        flux=fl,
        A=0.0,
        B=1.0,
        u_minus=constant(-1.5),
        u_plus=constant(2.0),
        ubar=constant(-1.0),
        hypothesis=HypothesisParams(-1.0 + eta, -1.0 + eta, 0.0, 0.0, 2.0, 2.0),
        t_max=100.0,
        snapshots=(0.0, 25.0, 50.0, 100.0),
    )


PRESETS = {
    "burgers_shock": _preset_burgers_shock,
    "neg_cubic_ii1": _preset_neg_cubic_ii1,
    "double_well_i": _preset_double_well_i,
    "buckley_leverett": _preset_buckley_leverett,
    "counterexample_1": _preset_counterexample_1,
    "counterexample_2": _preset_counterexample_2,
}


def preset(name: str, **kwargs) -> Scenario:
    if name not in PRESETS:
        raise ValidationError("preset", f"unknown preset {name!r} (have {sorted(PRESETS)})")
    return PRESETS[name](**kwargs)


# ---------------------------------------------------------------------------
# execution and artifacts
# ---------------------------------------------------------------------------

def _profile_csv(profile: StepFunction) -> str:
    lines = ["x_left,x_right,value"]
    for lo, hi, v in profile.pieces():
        l = "" if math.isinf(lo) else repr(lo)
        r = "" if math.isinf(hi) else repr(hi)
        lines.append(f"{l},{r},{v!r}")
    return "\n".join(lines) + "\n"


def run_scenario(s: Scenario, out_dir: str | Path) -> dict:
    """Execute one scenario; write profile CSVs, the event log, the front
    trajectory table, and the report JSON.  Returns the report dict.

    Report keys: verdict, kind, witnesses, T0, x0, gamma, T_tilde, horizon,
    r_samples, plus bookkeeping; wall-clock timing is isolated under "meta".
    """
    t_start = time.perf_counter()
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    u0 = s.initial_data()
    state = init_state(s.flux, u0)

    report: dict = {
        "name": s.name,
        "verdict": "unchecked",
        "kind": None,
        "witnesses": [],
        "T0": None,
        "x0": None,
        "gamma": None,
        "T_tilde": None,
        "horizon": s.t_max,
        "r_samples": [],
    }
    if s.hypothesis is not None:
        verdict = check_main_conditions(s.flux, s.hypothesis)
        report["kind"] = verdict.kind.value
        report["witnesses"] = [w.to_json() for w in verdict.witnesses]
        if verdict.satisfied:
            emergence = certify(
                s.flux, s.hypothesis, s.A, s.B, s.u_minus, s.ubar, s.u_plus,
                t_max=s.t_max, verdict=verdict,
            )
            report["verdict"] = "emerged" if emergence.emerged else "not_emerged"
            report["T0"] = emergence.t0
            report["x0"] = emergence.x0
            report["gamma"] = emergence.gamma
            report["T_tilde"] = emergence.t_tilde
            report["horizon"] = emergence.horizon
            report["r_samples"] = [{"t": t, "x": x} for t, x in emergence.r_samples]
            report["final_speed"] = emergence.final_speed
            # reuse the certified run's state for snapshots
            state = init_state(s.flux, u0)
        else:
            report["verdict"] = "violated"

    for t in sorted(s.snapshots):
        profile = u0 if t == 0.0 else advance(state, t)
        (out / f"{s.name}_profile_t{t:g}.csv").write_text(_profile_csv(profile))
    advance(state, max(s.t_max, *s.snapshots) if s.snapshots else s.t_max)

    with (out / f"{s.name}_events.ndjson").open("w") as fh:
        for rec in state.event_log:
            fh.write(json.dumps(rec.to_json(), sort_keys=True) + "\n")

    with (out / f"{s.name}_fronts.csv").open("w") as fh:
        fh.write("front_id,t,x\n")
        t_end_default = state.t
        for fid, f in sorted(state.births.items()):
            t_end = state.deaths.get(fid, t_end_default)
            fh.write(f"{fid},{f.t0!r},{f.x0!r}\n")
            fh.write(f"{fid},{t_end!r},{f.pos(t_end)!r}\n")

    report["events"] = state.events_processed
    report["meta"] = {"wall_s": time.perf_counter() - t_start}
    (out / f"{s.name}_report.json").write_text(json.dumps(report, sort_keys=True, indent=2))
    return report


def run_batch(paths: list[str | Path], out_dir: str | Path, jobs: int = 1) -> list[dict]:
    scenarios = [load_scenario(p) for p in paths]
    if jobs <= 1:
        return [run_scenario(s, out_dir) for s in scenarios]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(lambda s: run_scenario(s, out_dir), scenarios))
