"""Single-shock certificates for the built-in scenario presets.

For each preset with satisfied conditions the certifier runs front tracking,
reports the first persistent separation time T0, the empirical gamma =
T0 / |A - B|, and the chord-speed-gap bound when it is finite.
"""

from shocklab import certify, check_main_conditions
from shocklab.scenario import preset

for name in ("burgers_shock", "double_well_i", "neg_cubic_ii1", "buckley_leverett"):
    s = preset(name)
    verdict = check_main_conditions(s.flux, s.hypothesis)
    print(f"\n== {name}: condition {verdict.kind.value}")
    if not verdict.satisfied:
        for w in verdict.witnesses:
            print(f"   witness {w.condition} at theta={w.theta}: {w.lhs:.4g} vs {w.rhs:.4g}")
        continue
    rep = certify(
        s.flux, s.hypothesis, s.A, s.B, s.u_minus, s.ubar, s.u_plus,
        t_max=s.t_max, verdict=verdict,
    )
    bound = f"{rep.t_tilde:.4g}" if rep.t_tilde is not None else "unbounded"
    print(f"   emerged={rep.emerged}  T0={rep.t0:.6g}  x0={rep.x0:.6g}  "
          f"gamma={rep.gamma:.6g}  T_tilde={bound}")
    print(f"   separating front speed {rep.final_speed:.6g}, "
          f"{rep.events} interactions, horizon {rep.horizon:g}")
