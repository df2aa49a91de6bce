import pytest

from qsmanin.report import CheckResult, failed, from_residual, passed, skipped, summarize
from qsmanin.scalars import EXACT
from qsmanin.suites import (SUITES, ConfigError, SuiteConfig, _combine, build_report,
                            classical_oracle, run, run_suite)


def test_config_defaults():
    cfg = SuiteConfig()
    assert (cfg.m, cfg.n, cfg.k, cfg.D) == (1, 1, 3, 3)
    assert cfg.fields() == [EXACT]
    assert cfg.to_json()["suites"] == list(SUITES)


@pytest.mark.parametrize("kwargs", [
    dict(m=0, n=0), dict(m=-1), dict(backend="gpu"), dict(suites=("nope",)), dict(k=0),
    dict(trunc=0), dict(m=3, n=2), dict(m=2, n=2, k=9), dict(m=2, n=2, trunc=9),
    dict(backend="modular", primes=()), dict(degree_cap=0),
])
def test_config_rejects(kwargs):
    with pytest.raises(ConfigError):
        SuiteConfig(**kwargs)


def test_degree_cap_override_lifts_size_table():
    cfg = SuiteConfig(m=3, n=2, k=2, degree_cap=3)
    assert cfg.cap == 3 and cfg.D == 2


def test_modular_fields_follow_seed_and_primes():
    cfg = SuiteConfig(backend="modular", seed=4, primes=(10007, 10009))
    assert [F.prime for F in cfg.fields()] == [10007, 10009]
    assert cfg.fields() == SuiteConfig(backend="modular", seed=4, primes=(10007, 10009)).fields()


def test_combine_requires_unanimity():
    a = [passed("x", k=1), passed("y", k=1), skipped("z", "why")]
    b = [passed("x", k=1), failed("y", "M[1,1]", k=1), skipped("z", "why")]
    out = {r.name: r for r in _combine([("f1", a), ("f2", b)])}
    assert out["x"].status == "pass" and out["x"].params["fields"] == ["f1", "f2"]
    assert out["y"].status == "fail" and "f2" in out["y"].detail
    assert out["z"].status == "skip"
    mixed = _combine([("f1", [passed("w")]), ("f2", [skipped("w", "?")])])
    assert mixed[0].status == "fail"


def test_report_records():
    assert from_residual("r", []).status == "pass"
    assert from_residual("r", [1]).status == "fail"
    assert summarize([passed("a"), failed("b", "x"), skipped("c", "d")]) == {
        "pass": 1, "fail": 1, "skip": 1, "total": 3}
    with pytest.raises(ValueError):
        CheckResult("a", status="maybe")


@pytest.mark.parametrize("suite", SUITES)
def test_each_suite_passes_at_11(suite):
    cfg = SuiteConfig(m=1, n=1, k=2, suites=(suite,))
    results = run_suite(suite, cfg)
    assert results
    assert all(r.status != "fail" for r in results), [r for r in results if r.status == "fail"]


def test_modular_run_agrees():
    cfg = SuiteConfig(m=2, n=1, k=2, backend="modular", seed=3,
                      suites=("relations", "berezinian"))
    report = build_report(cfg, run(cfg))
    assert report["summary"]["fail"] == 0
    once = {"q_one_routes", "classical_oracle_2x2", "classical_oracle_3x3"}
    for c in report["checks"]:
        # field-independent checks run on the first field only
        assert len(c["params"]["fields"]) == (1 if c["name"] in once else 3)


def test_report_is_deterministic_apart_from_timing():
    cfg = SuiteConfig(m=1, n=1, k=2, suites=("tensor", "minors"))

    def strip(rep):
        for c in rep["checks"]:
            c.pop("time_ms")
        return rep

    assert strip(build_report(cfg, run(cfg))) == strip(build_report(cfg, run(cfg)))


def test_minor_skips_are_hypothesis_skips():
    cfg = SuiteConfig(m=2, n=1, k=2, suites=("minors",))
    skips = [r for r in run_suite("minors", cfg) if r.status == "skip"]
    assert skips and all("hypothesis not met" in r.detail for r in skips)


def test_classical_oracle():
    out = classical_oracle(0)
    assert [r.name for r in out] == ["classical_oracle_2x2", "classical_oracle_3x3"]
    assert out[0].params["instances"] == 256 and out[1].params["instances"] >= 20
    assert all(r.status == "pass" for r in out)
