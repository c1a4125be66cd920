"""
Pattern coefficients
====================

Write nu_w = 1 + sum_u c_u p_u(w) and solve for the c_u size by size.
All of them come out nonnegative, and the largest at each size sits on a
layered permutation.
"""

from pipedream.schubert import build_coefficients, max_coefficient_report

table = build_coefficients(7)

for m in range(3, 8):
    print(f"size {m}: {len(table.nonzero(m))} nonzero coefficients")

print()
print("n  max   argmax")
for m in range(3, 8):
    rep = max_coefficient_report(m, table)
    print(f"{m}  {rep['max']:<5d} {' '.join(rep['argmax'])}  layered={rep['layered']}")

# a few of the size-5 ones
size5 = sorted(table.nonzero(5).items(), key=lambda kv: -kv[1])
print()
print(size5[:6])
