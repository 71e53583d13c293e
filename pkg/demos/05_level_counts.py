"""Level-set counting: blockade sizes, component bounds, and the potential
identity, each cross-checked against brute enumeration."""
from fractions import Fraction

from gridpursuit.counts import (
    aggregate_potential,
    best_level_bound,
    count_level,
    harmonic,
    level_closed_form,
    level_counts,
    min_large_component_exact,
    special_forms,
)

# the wall of the 3d blockade sits on the middle level set
for n in (3, 5, 7, 9):
    m = 3 * (n - 1) // 2
    print(f"n={n}: middle level of the {n}^3 box holds {count_level((n,n,n), m)} "
          f"vertices (= (3n^2+1)/4 = {(3*n*n+1)//4})")

# the inclusion-exclusion closed form agrees with enumeration on the
# whole range a blockade descends through
a, n = 4, 5
m = a * (n - 1) // 2
print(f"\n{a}-dimensional wall sizes, side {n}, levels {m}..0:")
print(" ", [level_closed_form(a, b, n) for b in range(m, -1, -1)])
print("  enumerated:", [count_level((n,) * a, b) for b in range(m, -1, -1)])

# closed forms for the special boxes (here: the c <= 1 cube case)
print("\nlevel counts of the 7^3 box by closed form:",
      [special_forms("d", 7, m, "level") for m in range(1, 7)])

# level cuts bound the surviving component; brute force meets the bound
# on equal-sided boxes
dims, cops = (4, 4), 4
m, bound = best_level_bound(cops, dims)
exact = min_large_component_exact(cops, dims)
print(f"\n{cops} removals from the {dims} box: best level cut m={m} "
      f"guarantees a component of {bound}; exhaustive optimum is {exact}")

# one pursuer's total potential across the hypercube, two exact ways
n = 12
value = aggregate_potential(n)
print(f"\naggregate potential on cube({n}): {value} "
      f"= 1 - n + (n+1)*H_n = {1 - n + (n + 1) * harmonic(n)}")
print(f"partition of the 5^3 box at its middle level: {level_counts((5,5,5), 6)}")
