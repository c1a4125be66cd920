"""
How tight is the pattern lower bound?
=====================================

Compare the number of RC-graphs with 1 + p_132 + p_1432 over S_6 and
print the permutations where the bound is attained.
"""

from collections import Counter
from itertools import permutations

from pipedream import count_pattern, nu

n = 6
gap = Counter()
tight = []
for w in permutations(range(1, n + 1)):
    bound = 1 + count_pattern("132", w) + count_pattern("1432", w)
    value = nu(w)
    assert value >= bound
    gap[value - bound] += 1
    if value == bound:
        tight.append("".join(map(str, w)))

print("gap -> number of permutations")
for g in sorted(gap)[:10]:
    print(f"{g:5d} {gap[g]:5d}")
print(len(tight), "permutations attain the bound, e.g.", tight[:8])
