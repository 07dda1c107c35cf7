"""Sharpness of the emergence conditions: two configurations that fail them.

The first (double-well flux, states 2 | 0 | -2) is frozen forever: both jumps
are stationary entropy shocks and the chord condition fails with equality at
the middle state.  The second (cubic flux, states -1.5 | -1 | 2) keeps a
rarefaction fan travelling parallel to a tangential contact: the gap between
them stays exactly B - A and the tangent clearance fails with equality.
"""

from shocklab import check_main_conditions, init_state, run_until_single_front
from shocklab.scenario import preset
from shocklab.tracking import advance

for name in ("counterexample_1", "counterexample_2"):
    s = preset(name)
    verdict = check_main_conditions(s.flux, s.hypothesis)
    print(f"\n== {name}: verdict {verdict.kind.value}")
    for w in verdict.witnesses:
        flag = " (at boundary)" if w.at_boundary else ""
        print(f"   {w.condition} at theta={w.theta}: {w.lhs:.6g} vs {w.rhs:.6g}{flag}")

    u0 = s.initial_data()
    state = init_state(s.flux, u0)
    lr = (min(s.u_minus.values), max(s.u_minus.values))
    rr = (min(s.u_plus.values), max(s.u_plus.values))
    rep = run_until_single_front(state, lr, rr, 100.0)
    print(f"   emerged: {rep.emerged}   events: {rep.events}")
    if name == "counterexample_1":
        print(f"   profile at t=100 equals the data: {advance(state, 100.0) == u0}")
    else:
        snap = state.front_snapshot(100.0)
        fan_edge = [x for x, _, _, r in snap if r == -1.0][0]
        contact = [x for x, _, l, _ in snap if l == -1.0][0]
        print(f"   fan-edge/contact gap at t=100: {contact - fan_edge:.12f} (B - A = 1)")
