"""The A' bimodule structure coming from a basepoint.

A basepoint on the diagram lets v+ and v- act on the complex by merging in
a small circle.  We check the module axioms, look at the slide map phi and
compare actions at two basepoints separated by a crossing.
"""

from chronokh.complex import assemble
from chronokh.corpus import load
from chronokh.modstruct import algebra_axioms, bimodule_axioms, slide_invariance_check, slide_map
from chronokh.scalars import EVEN, ODD

print("A' axioms over the full ring:", algebra_axioms())

D = load("trefoil")
C = assemble(D)
bp = min(D.occurrences)
print(f"\nbimodule axioms for trefoil at arc {bp}:", bimodule_axioms(C, bp).as_dict())

phi = slide_map()
for s in (EVEN, ODD):
    print(f"\nslide map in {s.name}:", phi.report(s))

a, b = D.components[0][:2]
for s in (ODD, EVEN):
    r = slide_invariance_check(D, a, b, s)
    print(f"\n{s.name}: moving the basepoint from arc {a} to arc {b}")
    print(" literally equal on homology:", r.literal_equal, " isomorphic:", r.isomorphic, " witness:", r.witness)
