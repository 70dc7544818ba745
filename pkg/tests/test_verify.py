import pytest

from qca import verify


def test_spec_examples():
    assert verify.run_check("P3.2", n=2).passed
    assert verify.run_check("L3.5.1", n=2).passed


def test_negative_controls_fail_with_a_diff():
    rep = verify.run_suite(2, "negative")
    assert rep.results and not any(r.passed for r in rep.results)
    for r in rep.results:
        assert r.diff is not None and not r.diff.is_zero()
        assert r.to_json_obj()["status"] == "fail"


def test_empty_filter_gives_empty_report():
    rep = verify.run_suite(2, "no-such-family")
    assert rep.results == [] and rep.ok
    assert rep.to_json_obj()["passed"] == 0


def test_unknown_check():
    with pytest.raises(verify.UnknownCheck):
        verify.run_check("X9.9")


def test_parameter_override_reaches_the_builder():
    r = verify.run_check("T3.8.1.m1", n=2, m=3)
    assert r.passed
    r = verify.run_check("A1.1", n=2, samples=5, seed=3)
    assert r.passed and "5 instances" in r.detail


def test_checks_are_data():
    specs = verify.checks_for(2, ["P3.2", "T3.10"])
    assert {s.family for s in specs} == {"P3.2", "T3.10"}
    assert len({s.id for s in specs}) == len(specs)
    for s in specs:
        assert s.n == 2 and callable(s.builder)


def test_report_is_deterministic_and_sorted():
    a = verify.run_suite(2, "L3.6,P3.1").to_json_obj()
    b = verify.run_suite(2, "L3.6,P3.1").to_json_obj()
    strip = lambda rep: [(r["id"], r["status"], r["detail"]) for r in rep["results"]]
    assert strip(a) == strip(b)
    ids = [r["id"] for r in a["results"]]
    assert ids == sorted(ids)


def test_crashing_builder_is_a_failure():
    spec = verify.CheckSpec("BROKEN", "X", 2, (), (), lambda td: 1 / 0)
    r = verify.run_spec(spec)
    assert not r.passed and "ZeroDivisionError" in r.detail


def test_n1_smoke_suite():
    rep = verify.run_suite(1, "smoke")
    assert rep.ok, [r.id for r in rep.results if not r.passed]


def test_n1_families_that_apply():
    # statements that need an exceptional tube or P_3 are skipped at n = 1; the rest must pass
    rep = verify.run_suite(1, "all")
    fams = {r.family for r in rep.results}
    assert not fams & {"P3.2", "C3.3", "L4.3", "T2.2", "T2.3"}
    assert {"L3.5", "L3.6", "T3.8", "P3.7", "T3.10", "P4.9", "T4.6"} <= fams
    assert rep.ok, [r.id for r in rep.results if not r.passed]
