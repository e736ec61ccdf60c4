"""On the (non-proper) star graph, tips running off to infinity do not
produce a new horofunction: the limit is the distance to the centre."""

from fractions import Fraction

from horolib import horo, spaces as sp

S = sp.star_graph()
tips = [(n, n) for n in range(1, 41)]
for z in [(3, Fraction(1)), (7, Fraction(5, 2)), (12, Fraction(12))]:
    est = horo.horofunction_limit_estimate(S, tips, z)
    print(f"z = {z}: limit {est.value} (converged={est.converged}), d(z, centre) = {sp.distance(S, z, S.basepoint)}")
