"""Disjoint unions and connected sums.

For a disjoint union, the complex is the tensor product of the factors only
after a twist by unit scalars; the untwisted identity is not a chain map.
For a connected sum, tensoring over the algebra A' recovers the homology of
the composite diagram.
"""

from chronokh.complex import assemble, homology
from chronokh.composite import tensor_over_aprime, union_complex
from chronokh.corpus import load
from chronokh.scalars import EVEN, ODD

T, H = load("trefoil"), load("hopf")
U = union_complex(T, H)
print("trefoil + Hopf link")
print(" comparison map bijective:", U.bijective())
print(" twisted comparison is a chain map over the full ring:", U.comparison_ok())
print(" untwisted identity is a chain map:", U.naive_ok())

T1 = T.with_basepoints(1)
CT, CTm = assemble(T1), assemble(T1.mirror())
for s in (EVEN, ODD):
    granny = homology(tensor_over_aprime(CT.specialize(s), CT.specialize(s)))
    square = homology(tensor_over_aprime(CT.specialize(s), CTm.specialize(s)))
    print(f"\n{s.name}: T (x)_A' T = granny:", granny == homology(assemble(load("granny")).specialize(s)))
    print(f"{s.name}: T (x)_A' mirror(T) = square:", square == homology(assemble(load("square")).specialize(s)))
    print(" granny homology:", granny.collapsed())
