"""Tour of the exact intersection ring on a Weierstrass elliptic threefold.

Everything is a fractions.Fraction; nothing here ever rounds.  Run as

    python demos/01_ring_basics.py
"""

from fractions import Fraction

from weierfm import exp_divisor, get_preset, pullback, x_integrate, x_mul

# A threefold needs only a numerical model of its base surface.  The
# general_demo preset is P^1 x P^1: rank-2 hyperbolic lattice, canonical
# class (-2, -2), so all the correction terms below are visibly nonzero.
demo = get_preset("general_demo").model
theta = demo.theta()
fiber = demo.fiber()

print("== the two basic classes ==")
print("section meets a fiber once:   ∫ Θ·f  =", x_integrate(x_mul(theta, fiber)))
print("fibers never meet each other: f·f = 0 is", x_mul(fiber, fiber).is_zero())

# The single relation of the ring: the section squares to itself times the
# pulled-back canonical class of the base.
lhs = x_mul(theta, theta)
rhs = x_mul(theta, pullback(demo.canonical_surface()))
print("\n== the section relation ==")
print("Θ² = Θ·p*K_S holds:", lhs == rhs)
print("∫ Θ³ = K_S·K_S =", x_integrate(x_mul(lhs, theta)))

# Divisors a·Θ + p*delta exponentiate exactly; the cubic term already
# carries K_S² through the folded-in section relation.
print("\n== exp of the section divisor ==")
e = exp_divisor(demo.divisor_x(a=1))
print(f"exp(Θ) = Θ·p*({e.alpha.r} + [{e.alpha.d[0]}, {e.alpha.d[1]}] "
      f"+ {e.alpha.s}·pt) + p*({e.beta.r})")

# On a base with trivial canonical class the same computation collapses.
k3 = get_preset("k3_quartic").model
print("\n== same computation over the quartic K3 ==")
print("∫ Θ³ =", x_integrate(x_mul(x_mul(k3.theta(), k3.theta()), k3.theta())))
h = k3.divisor_surface((Fraction(1),))
print("∫ Θ·p*(H²) =", x_integrate(x_mul(k3.theta(), pullback(h * h))))
