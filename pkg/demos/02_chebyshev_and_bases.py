"""Chebyshev polynomials in X_delta, the two bar-invariant bases, and positivity.

Run: python3 demos/02_chebyshev_and_bases.py
"""
from qca import arcat
from qca.basisgen import enumerate_basis, parse_box, positivity_probe
from qca.character import char_of, x_delta
from qca.chebyshev import cheb_first, cheb_second, eval_at

td = arcat.build_data(2)
xd = x_delta(td)

for m in range(1, 5):
    print(f"F_{m}(x) = {cheb_first(m)}    S_{m}(x) = {cheb_second(m)}")

# S_m(X_delta) is the character of the homogeneous band module of quasi-length m
for m in (1, 2, 3):
    print(f"S_{m}(X_delta) == X_(band of length {m}):",
          eval_at(cheb_second(m), xd) == char_of(td, arcat.HomRegular(m)))

box = parse_box("-1..1", td.size)
B = enumerate_basis(td, box, "B")
S = enumerate_basis(td, box, "S")
print(f"\nbasis elements with index in {box}: {len(B)} (atomic), {len(S)} (second kind)")
kinds = {}
for b in B:
    kinds[b.kind] = kinds.get(b.kind, 0) + 1
print("kinds:", kinds)

f2 = eval_at(cheb_first(2), xd)
rep = positivity_probe(td, f2, 2)
print(f"\nF_2(X_delta) expanded in {rep.seeds} clusters within depth 2; nonnegative everywhere: {rep.ok}")
