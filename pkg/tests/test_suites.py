import pytest

from cbpoints.scalar import field_new, split_seed
from cbpoints.suites import (ROUNDTRIP_CASES, SUITES, TY_CASES, davis_eisenbud_trial,
                             random_lengths, reproduce_command, run_suite)
from cbpoints.generate import LENGTH_BOUND
from cbpoints.scalar import Rng

F = field_new(32003)

LIGHT = {"chasles": 3, "davis-eisenbud": 11, "cb-oracle": 5, "twisted-cubic": 2, "conic-cb": 3,
         "plane-h1": 3, "plane-cubic-cb": 3, "ty-necessity": 5, "classify-roundtrip": 6,
         "metamorphic": 1}


def test_required_suite_names_present():
    required = {"chasles", "davis-eisenbud", "cb-oracle", "twisted-cubic", "conic-cb",
                "plane-h1", "plane-cubic-cb", "ty-necessity", "tables"}
    assert required <= set(SUITES)


@pytest.mark.parametrize("name", sorted(LIGHT))
def test_light_runs_pass(name):
    rep = run_suite(name, LIGHT[name], F, seed=2)
    assert rep.passes + len(rep.failures) == rep.trials == LIGHT[name]
    assert rep.ok, rep.render()


def test_tables_suite_failure_is_reproducible():
    rep = run_suite("tables", 1, F, seed=0)
    assert not rep.ok and len(rep.failures) == 1
    f = rep.failures[0]
    assert f.command == reproduce_command("tables", F, 0, 0)
    assert len(rep.warnings) == 6


def test_only_replays_the_same_trial():
    full = run_suite("cb-oracle", 4, F, seed=9)
    single = run_suite("cb-oracle", 0, F, seed=9, only=3)
    assert single.trials == 1 and single.passes == 1
    assert full.ok


def test_failures_carry_split_seed(monkeypatch):
    def flaky(index, seed, field):
        return "boom" if index == 2 else None
    monkeypatch.setitem(SUITES, "flaky", flaky)
    rep = run_suite("flaky", 4, F, seed=5)
    assert [f.trial for f in rep.failures] == [2]
    assert rep.failures[0].seed == split_seed(5, 2)
    assert rep.failures[0].command.endswith("--seed 5 --only 2")
    assert "FAIL trial 2" in rep.render()


def test_crashing_trial_is_a_failure(monkeypatch):
    def crash(index, seed, field):
        raise RuntimeError("bad")
    monkeypatch.setitem(SUITES, "crash", crash)
    rep = run_suite("crash", 2, F, seed=0)
    assert len(rep.failures) == 2 and "RuntimeError" in rep.failures[0].detail


def test_workers_give_identical_report():
    a = run_suite("chasles", 3, F, seed=1)
    b = run_suite("chasles", 3, F, seed=1, workers=2)
    assert (a.passes, a.failures) == (b.passes, b.failures)


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope", 1, F, 0)


def test_davis_eisenbud_violation_schedule():
    # 220 trials contain exactly 20 violating configurations
    assert sum(i % 11 == 10 for i in range(220)) == 20
    assert davis_eisenbud_trial(10, split_seed(0, 10), F) is None


def test_random_lengths_respect_total():
    rng = Rng(3)
    for case in TY_CASES:
        t = LENGTH_BOUND[case] - 1
        assert sum(random_lengths(case, t, t, rng)) == t
    assert ROUNDTRIP_CASES[-1] == "OnQuadric"
