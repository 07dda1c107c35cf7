"""Riemann fans for convex, V-shaped and double-well fluxes.

The entropy solution of a single jump is read off a hull construction: lower
convex hull for an upward jump, upper concave hull for a downward one.  This
script prints the resulting wave fans for a few instructive data pairs.
"""

import math

from shocklab import AnalyticFluxSpec, approximate_pw_affine, hull, make_flux, solve_riemann


def show(fl, name, pairs):
    print(f"\n== {name}")
    for u_l, u_r in pairs:
        fan = solve_riemann(fl, u_l, u_r)
        kinds = "empty" if not len(fan) else ", ".join(
            f"{f.left:+.3g}->{f.right:+.3g} @ s={f.speed:+.4g}" for f in fan
        )
        print(f"  {u_l:+.2f} | {u_r:+.2f}:  {len(fan)} front(s): {kinds}")


v_flux = make_flux([-2, -1, 0, 1, 2], [4, 1, 0, 1, 4])
show(v_flux, "V-shaped flux (every wave is a contact)", [(1, -1), (-1, 1), (-2, 2)])

burgers = approximate_pw_affine(AnalyticFluxSpec("burgers", -2, 2, 0.25, corners=(0.0, 1.0)))
show(burgers, "Burgers mesh (shock down, contact staircase up)", [(1, 0), (-1, 1)])

c = math.sqrt(2 / 3)
dw = approximate_pw_affine(
    AnalyticFluxSpec("double_well", -3, 3, 0.05, corners=(-2.0, -c, 0.0, c, 2.0))
)
show(dw, "double-well flux", [(2, 0), (0, -2), (-2, 2), (2.5, -2.5)])

print("\nUpper hull of the double-well flux on [0, 2] (the zero chord):")
h = hull(dw, 0.0, 2.0, "upper")
print(f"  breakpoints {h.breakpoints}, values {h.values}")
