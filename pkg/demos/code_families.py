#!/usr/bin/env python3
"""Tour of the two code families: construction, parameters, duality.

Run: python3 demos/code_families.py
"""

from bermanpir import (
    BermanParams,
    BitVector,
    build,
    dimension_formula,
    min_distance_formula,
    recursive_membership,
)

print("=== One member in detail: DBer(3,1,2) ===")
params = BermanParams.parse("DBer(3,1,2)")
code = build(params)
print(f"{params.name}: length {code.length}, dimension {code.dimension}")
print("canonical generator:")
print(code.generator)

print()
print("Three construction routes agree:")
print(f"  dimension formula      -> {dimension_formula(params)}")
print(f"  brute-force distance   -> {code.min_distance_bruteforce()}")
print(f"  distance formula       -> {min_distance_formula(params)}")

v = BitVector.from01("000111000")
print(f"  recursive membership of {v}: {recursive_membership(params, v)}")
print(f"  generator membership of {v}: {code.contains(v)}")

print()
print("=== Duality: the two families are orthogonal complements ===")
for name in ("Ber(2,1,3)", "Ber(3,0,2)", "Ber(3,1,2)", "Ber(4,1,2)"):
    p = BermanParams.parse(name)
    match = build(p).dual() == build(p.dual)
    print(f"  dual({p.name}) == {p.dual.name}: {match}")

print()
print("=== Parameter landscape at n=3, m=3 (27 coordinates) ===")
print(f"{'member':>12}  {'dim':>3}  {'d_min':>5}")
for kind in ("Ber", "DBer"):
    for r in range(4):
        p = BermanParams.parse(f"{kind}(3,{r},3)")
        dim = dimension_formula(p)
        dist = "-" if p.is_zero_code else min_distance_formula(p)
        print(f"{p.name:>12}  {dim:>3}  {dist:>5}")
