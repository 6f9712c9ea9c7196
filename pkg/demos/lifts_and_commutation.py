"""
Slot lifts of a quotient matrix and their commutation pattern
=============================================================

A 2x2 quotient matrix acts on any one slot of a 2x2x2 tensor; each
action is an 8x8 matrix on the flattened tensor.  This script prints
all three slot lifts plus the diagonal cell-size lift and shows which
pairs commute.
"""

from eqcube.exact_linalg import (commutes, diag_lift, kron_lift, materialize)
from eqcube.quotient import cell_sizes, validate_quotient

Q = validate_quotient([[0, 3], [1, 2]], 3)
sizes = cell_sizes(Q)
print(f"matrix {Q.rows}, dimension {Q.n}, cell sizes {sizes}")

# one lift per tensor slot, plus the diagonal size lift
L1, L2, L3 = (kron_lift(Q.rows, p) for p in (1, 2, 3))
D = diag_lift(sizes)

for name, lift in (("slot 1", L1), ("slot 2", L2), ("slot 3", L3),
                   ("diagonal", D)):
    print(f"\n{name} lift as a dense 8x8 matrix:")
    for row in materialize(lift):
        print("  " + " ".join(f"{v}" for v in row))

# the slot lifts commute pairwise; the diagonal lift commutes with the
# slot-2 and slot-3 lifts but not with slot 1 (the anchored slot)
names = ("L1", "L2", "L3", "D")
lifts = (L1, L2, L3, D)
print("\ncommutation table (x = commutes):")
print("     " + "  ".join(f"{n:>2}" for n in names))
for na, a in zip(names, lifts):
    cells = "   ".join("x" if commutes(a, b) else "." for b in lifts)
    print(f"  {na:>2}  {cells}")

# the failing pair obeys a transposed relation instead: D L1 = L1^T D
from eqcube.exact_linalg import mat_mul
d1, dd = materialize(L1), materialize(D)
assert mat_mul(dd, d1) == mat_mul(materialize(L1.T), dd)
print("\nD * L1 equals L1^T * D: the diagonal lift swaps the slot-1 "
      "lift with its transpose")
