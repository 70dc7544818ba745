"""Walk from the initial seed to a cluster variable and meet it again as a character.

Run: python3 demos/01_seeds_and_characters.py
"""
from qca import arcat
from qca.character import character, x_delta
from qca.seed import explore, initial_seed, is_sink_or_source, mutate, mutate_sequence

td = arcat.build_data(2)
print(f"rank {td.size} quiver, Lambda = B:")
for row in td.lam.matrix:
    print("   ", row)

s0 = initial_seed(td.lam, td.b)
print("\nmutating twice in the same direction gives the seed back:",
      mutate(mutate(s0, 2), 2) == s0)

# a sink at the initial seed: mutating at it produces the character of a projective
s1 = mutate_sequence(s0, [1])
print("\nnew variable after mu_1:")
print("   ", s1.vars[0])

res = character(td, arcat.Proj(1))
print("\ncharacter of P_1 (one line per subrepresentation dimension vector):")
for t in res.terms:
    print(f"    e={t.e}  count={t.count.coeffs}  v^{t.v_exponent}  X^{t.exponent}")

print("\nwithin 3 arbitrary mutations:", res.element in {x for s in explore(s0, 3) for x in s.vars})
# mutating only at sinks and sources walks along the transjective component
pool = {x: s for s in explore(s0, 12, is_sink_or_source) for x in s.vars}
print("along sink/source mutations:", res.element in pool, "via", pool[res.element].history)

print("\nX_delta, the generic character of the homogeneous mouth modules:")
print("   ", x_delta(td))
print("bar invariant:", x_delta(td).is_bar_invariant())
