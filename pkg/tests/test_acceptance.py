"""Acceptance criteria, one test each.

Each test records a PASS/FAIL line that is printed in the terminal summary.
"""
import json
import subprocess
import sys
import time
from contextlib import contextmanager

import pytest

from conftest import ACCEPTANCE
from qca import arcat, ffrep, verify
from qca.character import character, x_delta

SMALL_DIM = 6  # objects up to this total dimension are also re-counted by brute force


@contextmanager
def criterion(k, title, part=""):
    ok = False
    try:
        yield
        ok = True
    finally:
        ACCEPTANCE[(k, part)] = (ok, title)
        print(f"{'PASS' if ok else 'FAIL'} criterion {k}{part}: {title}")


def run_families(n, families):
    rep = verify.run_suite(n, ",".join(families))
    assert rep.results, f"no checks selected for {families} at n={n}"
    bad = [(r.id, r.detail) for r in rep.results if not r.passed]
    assert not bad, bad
    return {r.family for r in rep.results}


def test_criterion_01_mutation_is_an_involution():
    with criterion(1, "mu_k mu_k = id at depth <= 3, n = 1, 2"):
        t = time.perf_counter()
        for n in (1, 2):
            run_families(n, ["S.involution"])
        assert time.perf_counter() - t < 30


def test_criterion_02_compatibility_survives_mutation():
    with criterion(2, "B^T Lambda = 2 Id after mutation, n <= 3"):
        for n in (1, 2, 3):
            run_families(n, ["S.compatible"])


def test_criterion_03_characters_are_cluster_variables():
    with criterion(3, "preprojective and preinjective characters are cluster variables, n = 2"):
        t = time.perf_counter()
        rep = verify.run_suite(2, "T2.1")
        assert len(rep.results) == 24 and rep.ok, [r.id for r in rep.results if not r.passed]
        assert time.perf_counter() - t < 300


def test_criterion_04_tube_mouth_product_identity():
    with criterion(4, "exceptional tube product identity and its consequence, n = 2, 3"):
        for n in (2, 3):
            assert run_families(n, ["P3.2", "C3.3"]) == {"P3.2", "C3.3"}


def test_criterion_05_exchange_relations_and_chebyshev_identities():
    with criterion(5, "tube exchange relations (l <= 3), Chebyshev identities (m <= 5), shift identities (|m| <= 2), n = 2"):
        t = time.perf_counter()
        rep = verify.run_suite(2, "L3.5,L3.6,T3.8,T3.10")
        assert rep.ok, [r.id for r in rep.results if not r.passed]
        assert len(rep.results) == 5 + 5 + 20 + 20
        assert time.perf_counter() - t < 300


def test_criterion_06_bar_invariance():
    with criterion(6, "bar invariance of X_delta products, n = 2"):
        td = arcat.build_data(2)
        assert x_delta(td).is_bar_invariant()
        rep = verify.run_suite(2, "P3.5")
        assert rep.ok, [r.id for r in rep.results if not r.passed]
        ids = {r.id for r in rep.results}
        for m in range(1, 5):
            for i in (1, 2, 3):
                assert f"P3.5.F{m}.E({i})" in ids and f"P3.5.S{m}.E({i})" in ids
        for i in range(4):
            assert any(x.startswith(f"P3.5.i{i}.") for x in ids)


def test_criterion_07_second_kind_and_band_modules():
    with criterion(7, "S_m(X_delta) X_E is a band character, m <= 3, n = 2"):
        rep = verify.run_suite(2, "P4.9")
        assert rep.ok, [r.id for r in rep.results if not r.passed]
        ids = {r.id for r in rep.results}
        assert {f"P4.9.m{m}" for m in (1, 2, 3)} <= ids
        assert {f"P4.9.m{m}.E{i}" for m in (1, 2, 3) for i in (1, 2, 3)} <= ids


def test_criterion_08_positivity_probes():
    with criterion(8, "positivity of F_m(X_delta) and 20 basis elements at depth <= 3, n = 2"):
        t = time.perf_counter()
        rep = verify.run_suite(2, "T4.6,T4.8.pos")
        assert rep.ok, [(r.id, r.detail) for r in rep.results if not r.passed]
        ids = {r.id for r in rep.results}
        assert {f"T4.6.pos.F{m}" for m in range(1, 5)} <= ids
        sample = next(r for r in rep.results if r.id == "T4.6.pos.basis")
        assert "20" in sample.detail
        assert time.perf_counter() - t < 600


def test_criterion_09_standard_monomial_shape():
    with criterion(9, "leading term of rigid characters in the standard monomial basis"):
        rep = verify.run_suite(2, "L4.4")
        assert rep.ok, [r.id for r in rep.results if not r.passed]
        assert len(rep.results) >= 24


def test_criterion_10_dimension_vectors_and_shift_automorphism():
    with criterion(10, "dimension vector identities (n <= 3), sigma(X_delta) = X_delta, sigma multiplicative"):
        for n in (1, 2, 3):
            rep = verify.run_suite(n, "A1")
            assert len(rep.results) == 4 and rep.ok
            assert all("100 instances" in r.detail for r in rep.results if r.id == "A1.1")
        run_families(2, ["P3.7"])
        rep = verify.run_suite(2, "A2.mult")
        assert len(rep.results) == 20 and rep.ok


def _all_tables(td):
    for row in arcat.catalog(td, 2, 2):
        obj = arcat.parse_obj(row["canonical"])
        if arcat.is_shifted(obj):
            continue
        yield obj, ffrep.grassmannian_table(td, obj)


def test_criterion_11_interpolation_integrity():
    with criterion(11, "every count polynomial is checked; X_delta counts are 1"):
        for n in (1, 2):
            td = arcat.build_data(n)
            for obj, table in _all_tables(td):
                assert table
                for e, poly in table.items():
                    assert poly.checked, (obj, e)
                    if poly.method == "interpolation":
                        assert len(poly.samples) >= poly.degree + 2
                # the structured methods must agree with sampled brute force
                if sum(arcat.object_dim(td, obj)) <= SMALL_DIM:
                    for e, poly in table.items():
                        assert ffrep.count_polynomial_sampled(td, obj, e).coeffs == poly.coeffs, (obj, e)
            res = character(td, arcat.HomRegular(1))
            assert res.terms and all(t.count.coeffs == (1,) for t in res.terms)
        # the extra sample does catch a degree bound that is too small
        with pytest.raises(ffrep.InterpolationMismatch):
            ffrep.fit_counts(lambda s: s * s + 1, 1, "interpolation")


def _cli(*args, timeout):
    t = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "qca", *args], capture_output=True, text=True, timeout=timeout)
    return proc, time.perf_counter() - t


def test_criterion_12_full_default_suite(tmp_path):
    with criterion(12, "verify --n 2 --suite all exits 0 in under 10 minutes"):
        out = tmp_path / "report.json"
        proc, secs = _cli("verify", "--n", "2", "--suite", "all", "--json", str(out), timeout=900)
        assert proc.returncode == 0, proc.stderr
        assert secs < 600
        rep = json.loads(out.read_text())
        assert rep["failed"] == 0 and rep["passed"] > 400


@pytest.mark.slow
def test_criterion_12_n3_smoke_behind_slow_flag():
    with criterion(12, "n = 3 smoke subset under 15 minutes behind --slow", "b"):
        proc, _ = _cli("verify", "--n", "3", "--suite", "smoke", timeout=60)
        assert proc.returncode == 2
        proc, secs = _cli("verify", "--n", "3", "--suite", "smoke", "--slow", timeout=900)
        assert proc.returncode == 0, proc.stderr
        assert secs < 900
        fams = {r["family"] for r in json.loads(proc.stdout)["results"]}
        assert {"S", "P3.2", "C3.3", "A1"} <= fams
