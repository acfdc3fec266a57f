"""
Triples the (e,e,e) tree never reaches
======================================

Every increasing triple either descends to (1,1,1) under the inverse
step or gets stuck at a germ. The stuck ones are exactly the triples
missing from the tree.
"""

from tripstern import enumerate_forbidden, germ_of, multiplicity_census
from tripstern.germs import germ_chain, partition_check

print([tuple(t) for t in germ_chain((2, 5, 9))])
print(germ_of((2, 5, 9)), germ_of((2, 3, 4)))

print("forbidden, sum <= 12:", [tuple(t) for t in enumerate_forbidden(12)])

report = partition_check(40)
print("partition ok:", report.ok, " germs:", len(report.germs))

census = multiplicity_census(14)
print("each triple appears twice, on one level:", census.ok)
