"""
Polynomial paths and homotopies
===============================

The path object of a dg algebra is A[t, dt].  Evaluations at t = 0, 1 are the
two endpoints, the constant inclusion is a quasi-isomorphism, and a homotopy
between morphisms f, g : A -> B is a morphism A -> B[t, dt] restricting to f
and g at the endpoints.  Integration over [0, 1] turns a homotopy into a
chain homotopy (the Stokes identity below).
"""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from hodgepath import (FreeCdga, FreeMorphism, Generator, Homotopy,
                       betti_numbers, compose, delta, integrate, keyed,
                       path_of, structural_map, verify_homotopy)

B = FreeCdga([Generator("b1", 1)], N=5, name="B")
P = path_of(B, budget=6)
k = keyed(P)
print("P(B) is cohomologically the same as B:", betti_numbers(P, 4))

# structural maps by name: t -> 1 - t, t -> t s
print("symmetry(t)  =", structural_map("symmetry", k.t()))
print("coproduct(dt) =", structural_map("coproduct", k.dt()))

# a genuinely non-constant self-homotopy of the identity of B:
# c1 |-> b1 + (t - t^2) dt is closed and restricts to b1 at both endpoints
C = FreeCdga([Generator("c1", 1)], N=5, name="C")
wiggle = k.t() * k.dt() - k.t() * k.t() * k.dt()
h_map = FreeMorphism(C, k, {"c1": k.include(B.generator("b1")) + wiggle},
                     name="h")
f = compose(delta(P, 0), h_map)
g = compose(delta(P, 1), h_map)
h = Homotopy(f, g, h_map)
print("homotopy verifies:", verify_homotopy(h, f, g).ok)

# integration: t^i dt |-> +-1/(i+1); the wiggle integrates to 1/2 - 1/3
print("integral of the wiggle:", integrate(wiggle))

# Stokes: d(int h) + int(d h) = g - f on every generator
c = C.generator("c1")
lhs = integrate(h_map(c)).d() + integrate(h_map(c.d()))
print("stokes identity:", lhs == g(c) - f(c))
