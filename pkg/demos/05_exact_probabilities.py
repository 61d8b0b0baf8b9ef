"""
Exact excursion laws from a finite description of the walk
==========================================================

A jump law lists up-probabilities near the origin plus one constant tail
per side, so return probabilities, excursion laws, exit probabilities and
height distributions all come out in closed form.  In rational mode every
value is an exact fraction; the probability of an excursion depends only
on its level numbers.
"""

from fractions import Fraction

from excursionkit import (
    JumpLaw,
    LevelNumbers,
    boundary,
    class_prob,
    excursion_prob,
    from_values,
    height_tail,
    height_unique,
    level_numbers,
    ruin_prob,
)

law = JumpLaw.from_table(
    {-1: Fraction(2, 5), 0: Fraction(1, 2), 1: Fraction(2, 3)},
    p_plus=Fraction(2, 5), p_minus=Fraction(1, 2),
)
data = boundary(law)
print("hitting probabilities beta_i:")
for i in (3, 2, 1, -1, -2, -3):
    print(f"  beta({i:+d}) = {data.beta(i)}")
print("return probability beta0 =", data.beta0)

# two excursions with equal level numbers have equal probability
x = from_values([0, 1, 2, 3, 2, 1, 2, 1, 0])
y = from_values([0, 1, 2, 1, 2, 3, 2, 1, 0])
assert level_numbers(x) == level_numbers(y)
print("\nP(x | positive) =", excursion_prob(law, x))
print("P(y | positive) =", excursion_prob(law, y), "(same class, same value)")
print("whole class    =", class_prob(law, LevelNumbers.of(1, 2, 1)))

# exit probabilities of an interval, from the scale martingale
up, down = ruin_prob(law, c=1, r=-2, s=4)
print("\nfrom 1: hit 4 before -2 with", up, ", -2 first with", down)

# height of the fair walk's excursion: tails 1/s, unique peaks 1/(2s^2)
half = JumpLaw.homogeneous(Fraction(1, 2))
print("\nfair walk heights:")
for s in (1, 2, 3, 4, 5):
    print(f"  P(H >= {s}) = {height_tail(half, s)},  "
          f"P(unique peak, H = {s}) = {height_unique(half, s)}")

basel = sum(height_unique(JumpLaw.homogeneous(0.5), s) for s in range(1, 20001))
print(f"sum over s of P(unique peak, H = s) = {basel:.6f}  (pi^2/12 = 0.822467)")
