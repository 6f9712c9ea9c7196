"""
Three-variable polynomials computed three independent ways
==========================================================

Each table index (r1, r2, r3) has a unique polynomial in the three slot
variables (plus the dimension n) that maps the level-0 tensor to the
table entry.  Three unrelated computations produce it: the recursion
itself, a closed-form signed sum, and a generating-function coefficient.
"""

from eqcube.krawtchouk import (classical_krawtchouk, eval_at_lifts,
                               genfun_coeff, poly_direct, poly_recursive,
                               N, X)
from eqcube.quotient import validate_quotient
from eqcube.recursion import TRIANGLE, build_table

# the canonical table through total degree 3
print("polynomials through total degree 3:")
for s in range(4):
    for r1 in range(s + 1):
        for r2 in range(s - r1 + 1):
            t = (r1, r2, s - r1 - r2)
            print(f"  P^{t} = {poly_recursive(*t).render()}")

# all three routes agree exactly, coefficient by coefficient
for t in [(1, 1, 1), (0, 2, 2), (2, 2, 1), (3, 1, 1)]:
    assert poly_recursive(*t) == poly_direct(*t) == genfun_coeff(*t)
print("\nrecursion = signed sum = generating function on spot checks")

# substituting the lifts of a concrete matrix reproduces table entries
Q = validate_quotient([[0, 3], [1, 2]], 3)
table = build_table(Q, TRIANGLE)
t = (0, 1, 1)
image = eval_at_lifts(poly_recursive(*t), Q)
print(f"\nP^{t} at the lifts of {Q.rows}: {list(image.entries)}")
assert image == table.entries[t]

# one index on, two off: the classical single-variable polynomial in
# half the co-distance
r = 3
axis = poly_recursive(r, 0, 0)
classical = classical_krawtchouk(r).substitute_x((N - X) / 2)
assert axis == classical
print(f"P^{(r, 0, 0)} equals the degree-{r} classical polynomial "
      f"in (n - x)/2")

# beyond the dimension the image vanishes although the operator does not
from eqcube.krawtchouk import lift_image_is_zero
t = (2, 1, 1)
assert eval_at_lifts(poly_recursive(*t), Q).is_zero()
assert not lift_image_is_zero(poly_recursive(*t), Q)
print(f"\nat index sum {sum(t)} = n + 1 the level-0 image is zero but "
      f"P^{t}(L1, L2, L3) is a nonzero matrix")
