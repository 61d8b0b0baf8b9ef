"""
Sampling excursions conditioned to be finite
============================================

A drifting walk may never return to 0, so sampling its excursion law by
rejection can hang.  Reweighting the transition probabilities by the
hitting probabilities of 0 gives a walk that returns almost surely and
whose excursions follow the conditioned law exactly; the sampler below is
deterministic in (seed, n) and bit-identical for any worker count.
"""

from fractions import Fraction

from excursionkit import (
    JumpLaw,
    boundary,
    conditional_excursion_prob,
    doob_law,
    height_tail,
    level_process_histogram,
    sample_excursion,
)
from excursionkit.montecarlo import (
    empirical_short_law,
    estimate_from_batch,
    height_at_least,
    summarize,
)

law = JumpLaw.homogeneous(Fraction(3, 10))  # drifts down; positive side safe
t = doob_law(law)
print("conditioned up-probabilities:")
for i in range(-3, 4):
    print(f"  state {i:+d}: {t.p(i)}")

# a few reproducible draws
for i in range(5):
    x = sample_excursion(law, seed=7, index=i)
    print("draw", i, "->", x.value_string())

# estimates vs exact closed forms on one shared batch of draws
batch = summarize(law, 200_000, seed=7)
beta1 = boundary(law).beta(1)
for s in (2, 3, 4):
    report = estimate_from_batch(
        batch, height_at_least(s), exact=height_tail(law, s) / beta1
    )
    print(f"P(H >= {s} | positive): estimate {report.estimate:.5f}  "
          f"exact {report.exact:.5f}  z = {report.z:+.2f}")

# empirical short-excursion law vs the exact conditioned law
emp = empirical_short_law(batch, theta_cap=6)
print("\nshort excursions, empirical vs exact:")
for x, freq in sorted(emp.items(), key=lambda kv: -kv[1]):
    if x is None:
        continue
    exact = float(conditional_excursion_prob(law, x))
    print(f"  {x.value_string():<14} {freq:.5f} vs {exact:.5f}")

# per-level counts of the unique-peak draws: rotation reverses the level
# order of each draw, so the rotated level-1 counts follow the counts one
# step below the original peak
plain = level_process_histogram(law, 20_000, "unique-max", seed=11)
rotated = level_process_histogram(law, 20_000, "vervaat-of-unique-max", seed=11)


def fmt(dist):
    return {v: round(f, 4) for v, f in sorted(dist.items())}


print("\nlevel-1 count distribution, unique-peak draws:", fmt(plain["levels"][1]))
print("level-1 distribution after rotation:          ", fmt(rotated["levels"][1]))
