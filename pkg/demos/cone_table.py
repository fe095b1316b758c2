"""Print the weighted L2 cohomology of a cone over a 3-dimensional link."""

from fractions import Fraction

from qale.cli import cone_line

betti = {0: 1, 1: 2, 2: 2, 3: 1}  # a palindromic link
d = 4
for a in (Fraction(-1), Fraction(-1, 2), Fraction(0), Fraction(1, 2)):
    row = [cone_line(k, d, a, Fraction(0), betti=betti) for k in range(d + 1)]
    print(f"a = {str(a):>4}: " + " | ".join(row))
