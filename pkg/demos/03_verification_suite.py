"""Run a few verification families and look at one deliberately broken identity.

Run: python3 demos/03_verification_suite.py
"""
from qca import verify

rep = verify.run_suite(2, "P3.2,C3.3,L3.5,T3.8")
print(f"{len(rep.results)} checks in {rep.seconds:.1f}s")
for r in rep.results:
    print(f"  {'ok  ' if r.passed else 'FAIL'} {r.id:18s} {r.detail}")

print("\nnegative controls perturb a true identity and must fail with a nonzero difference:")
for r in verify.run_suite(2, "negative").results:
    print(f"  {'ok  ' if r.passed else 'fail'} {r.id:18s} diff has {len(r.diff.terms)} terms")
