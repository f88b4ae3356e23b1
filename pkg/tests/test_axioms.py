import json
from fractions import Fraction as F

import pytest

from cocycle_entropy import axioms as ax

SMALL = ax.SuiteConfig(samples=60, continuity_samples=30)


@pytest.fixture(scope="module")
def reports():
    cfg = ax.SuiteConfig()
    return {c.name: (c, ax.run_suite(c, cfg)) for c in ax.builtin_candidates()}


class TestVerdicts:
    def test_shannon_passes_everything(self, reports):
        _, r = reports["shannon"]
        assert r.all_pass
        assert r.conclusion_distance <= 1e-9

    @pytest.mark.parametrize("name", ["renyi(alpha=0.5)", "renyi(alpha=2)", "tsallis(q=2)"])
    def test_cocycle_failures(self, reports, name):
        _, r = reports[name]
        rec = r.record("cocycle")
        assert not rec.passed
        assert rec.max_residual >= 1e-2
        assert r.record("symmetric").passed

    def test_scaled_shannon_fails_only_normalization(self, reports):
        _, r = reports["scaled-shannon(factor=2)"]
        assert r.failed() == ["normalized"]
        assert r.record("normalized").max_residual == 2.0

    def test_discrimination(self, reports):
        for name, (_, r) in reports.items():
            if name == "shannon":
                continue
            assert any(not a.passed and a.max_residual >= 1e-2 for a in r.axioms), name

    def test_consistency_with_characterization(self, reports):
        for name, (_, r) in reports.items():
            strict = all(r.record(a).max_residual <= 1e-9 for a in ("homogeneous", "symmetric", "cocycle", "normalized"))
            if strict:
                assert r.conclusion_distance <= 1e-6, name


class TestWitnesses:
    def test_witness_fidelity(self, reports):
        for c, r in reports.values():
            for rec in r.axioms:
                again = ax.evaluate_witness(c, rec.name, rec.witness)
                assert abs(again - rec.max_residual) <= 1e-12

    def test_renyi_grouping_anchor(self):
        c = ax.renyi(2)
        w = {"groups": [["1/4", "1/4"], ["1/2"]]}
        assert ax.evaluate_witness(c, "cocycle", w) == pytest.approx(0.0849625007211562, abs=1e-12)

    def test_exactly_five_records(self, reports):
        for _, r in reports.values():
            assert tuple(a.name for a in r.axioms) == ax.AXIOMS


class TestConclusion:
    def test_shannon(self):
        assert ax.conclusion_check(ax.shannon(), SMALL) <= 1e-9

    def test_renyi2_distance_at_anchor(self):
        d, w = ax.conclusion_witness(ax.renyi(2), SMALL)
        assert d >= 0.05

    def test_scaled(self):
        assert ax.conclusion_check(ax.scaled_shannon(2), SMALL) >= 2


class TestReproducibility:
    def test_byte_identical(self):
        a = ax.run_suite(ax.tsallis(2), SMALL).to_json()
        b = ax.run_suite(ax.tsallis(2), SMALL).to_json()
        assert a == b

    def test_parallel_matches_serial(self):
        serial = ax.run_suite(ax.renyi(0.5), SMALL).to_json()
        par = ax.run_suite(ax.renyi(0.5), ax.SuiteConfig(samples=60, continuity_samples=30, workers=4)).to_json()
        assert serial == par

    def test_seed_changes_samples(self):
        a = ax.run_suite(ax.renyi(2), SMALL)
        b = ax.run_suite(ax.renyi(2), ax.SuiteConfig(seed=1, samples=60, continuity_samples=30))
        assert a.record("homogeneous").witness != b.record("homogeneous").witness


class TestReportFormat:
    def test_schema(self):
        doc = json.loads(ax.run_suite(ax.shannon(), SMALL).to_json())
        assert set(doc) == {"candidate", "seed", "axioms", "conclusion_distance"}
        assert doc["seed"] == ax.DEFAULT_SEED
        for rec in doc["axioms"]:
            assert {"name", "pass", "max_residual", "witness"} <= set(rec)

    def test_oracle_failure_is_recorded(self):
        def broken(p):
            if len(p) > 2:
                raise RuntimeError("boom")
            return 1.0

        r = ax.run_suite(ax.Candidate("broken", broken), SMALL)
        rec = r.record("cocycle")
        assert not rec.passed
        assert "boom" in rec.error
        assert json.loads(r.to_json())["axioms"][2]["max_residual"] is None


class TestSampling:
    def test_scalars_in_range(self):
        import random

        rng = random.Random(0)
        for _ in range(2000):
            c = ax._scalar(rng)
            assert F(1, 10) <= c <= 10

    def test_perturbation_preserves_simplex(self):
        import random

        rng = random.Random(0)
        cfg = ax.SuiteConfig()
        for _ in range(500):
            p = ax._simplex_point(rng, cfg, rng.randint(2, 6))
            q = ax._perturb(rng, p, cfg.delta)
            assert sum(q) == 1 and min(q) >= 0
            assert sum(abs(a - b) for a, b in zip(p, q)) <= 2 * cfg.delta
