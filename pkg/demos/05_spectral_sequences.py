"""
Filtered complexes: spectral pages, decalage, filtered paths
============================================================

A weight filtration on a dg algebra induces spectral pages E_r computed here
as exact subquotients.  The two-term complex below has a d_1 isomorphism, so
its second page collapses to the unit class.  Decalage shifts a degree-n
class by n when the differential permits, and the weight-shifted path spreads
each page of the base across the polynomial direction.
"""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from hodgepath import TableBasisElement, TableCdga, r_path, spectral_page
from hodgepath.filtered import FilteredComplex, SpectralSequence, decalage
from hodgepath.scalars import Scalar

two_term = TableCdga([TableBasisElement("one", 0, weight=0),
                      TableBasisElement("u", 0, weight=1),
                      TableBasisElement("v", 1, weight=0)], N=4, unit="one",
                     differentials={"u": {"v": Scalar(1)}}, name="two-term")

print("E1 entries:", spectral_page(two_term, 1))
print("E2 entries:", spectral_page(two_term, 2))
ss = SpectralSequence(FilteredComplex(two_term, "W"))
print("nonzero d_1 at:", ss.d_r_is_zero(1))
print("page-turn checks (r = 0..2):",
      [ss.verify_page_turn(r) == [] for r in range(3)])

print("decalage levels:", {n: lv for n, lv in
                           decalage(FilteredComplex(two_term, "W")).levels.items()})

# the page of a weight-shifted path is the base page times the t-direction
A = TableCdga([TableBasisElement("one", 0, weight=0),
               TableBasisElement("x2", 2, weight=1)], N=4, unit="one", name="A")
P1 = r_path(A, 1, budget=3)
print("E1 of the base:", spectral_page(A, 1, bound=2))
print("E1 of its 1-path:", spectral_page(P1, 1, bound=2))
