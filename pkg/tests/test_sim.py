import math

import numpy as np
import pytest

from prodcss import sim
from prodcss.build import SpcParams, spc
from prodcss.css import PauliVector, syndromes
from prodcss.decode import BpConfig
from prodcss.meta import spc3_metacheck


@pytest.fixture(scope="module")
def spc21():
    return spc(SpcParams(2, 1))


class TestChannelSpec:
    def test_validation(self):
        with pytest.raises(ValueError):
            sim.ChannelSpec(kind="nope")
        with pytest.raises(ValueError):
            sim.erasure(1.5)
        with pytest.raises(ValueError):
            sim.depolarizing(0.8)
        with pytest.raises(ValueError):
            sim.depolarizing_readout(0.1, 0.9)

    def test_params(self):
        ch = sim.depolarizing_readout(0.02, 0.001)
        assert ch.param1 == 0.02 and ch.param2 == 0.001


class TestSampleError:
    def test_zero_beta(self):
        rng = sim.trial_rng(0, 0)
        e, erased, _, _ = sim.sample_error(sim.erasure(0.0), 50, rng)
        assert e.weight == 0 and erased.size == 0

    def test_erased_support_contains_error(self):
        rng = sim.trial_rng(1, 0)
        for t in range(20):
            e, erased, _, _ = sim.sample_error(sim.erasure(0.3), 64, sim.trial_rng(1, t))
            assert set(np.nonzero(e.symbols)[0]) <= set(erased.tolist())

    def test_full_depolarizing_uniform(self):
        # epsilon = 3/4 puts every qubit uniformly over I, X, Y, Z.
        counts = np.zeros(4)
        for t in range(200):
            e, _, _, _ = sim.sample_error(
                sim.depolarizing(0.75), 100, sim.trial_rng(2, t)
            )
            counts += np.bincount(e.symbols, minlength=4)
        freq = counts / counts.sum()
        assert np.all(np.abs(freq - 0.25) < 0.02)

    def test_depolarizing_marginals(self):
        eps = 0.1
        n = 100000
        e, _, _, _ = sim.sample_error(sim.depolarizing(eps), n, sim.trial_rng(3, 0))
        counts = np.bincount(e.symbols, minlength=4)
        sigma = math.sqrt(n * (eps / 3) * (1 - eps / 3))
        for s in (1, 2, 3):
            assert abs(counts[s] - n * eps / 3) < 3 * sigma

    def test_readout_flips(self):
        ch = sim.depolarizing_readout(0.01, 0.5)
        _, _, esx, esz = sim.sample_error(ch, 10, sim.trial_rng(4, 0), mx=2000, mz=2000)
        assert esx.shape == (2000,) and esz.shape == (2000,)
        assert 800 < esx.sum() < 1200


class TestRunTrial:
    def test_zero_error_succeeds(self, spc21):
        runner = sim.TrialRunner(spc21, "erasure-ml", sim.erasure(0.0))
        out = runner.run_trial(sim.trial_rng(5, 0))
        assert not out.failed and out.residual_weight == 0

    def test_decoder_channel_compatibility(self, spc21):
        with pytest.raises(ValueError):
            sim.TrialRunner(spc21, "erasure-ml", sim.depolarizing(0.1))
        with pytest.raises(ValueError):
            sim.TrialRunner(spc21, "bp", sim.erasure(0.1))
        with pytest.raises(ValueError):
            sim.TrialRunner(spc21, "bp-extended", sim.depolarizing(0.1))

    def test_erasure_failures_have_zero_syndrome_residual(self, spc21):
        runner = sim.TrialRunner(spc21, "erasure-ml", sim.erasure(0.4))
        code = spc21
        for t in range(200):
            rng = sim.trial_rng(6, t)
            e, erased, _, _ = sim.sample_error(sim.erasure(0.4), code.n, rng)
            from prodcss.decode import decode_erasure

            sx, sz = syndromes(code, e)
            est = decode_erasure(code, erased, sx, sz)
            residual = e + est
            rx, rz = syndromes(code, residual)
            assert not rx.any() and not rz.any()


class TestRunPoint:
    def test_zero_beta_rate_zero(self, spc21):
        pt = sim.run_point(spc21, "erasure-ml", sim.erasure(0.0), 50, seed=1)
        assert pt.failures == 0 and pt.rate == 0.0

    def test_reproducible(self, spc21):
        a = sim.run_point(spc21, "erasure-ml", sim.erasure(0.2), 300, seed=9)
        b = sim.run_point(spc21, "erasure-ml", sim.erasure(0.2), 300, seed=9)
        assert a.failures == b.failures
        c = sim.run_point(spc21, "erasure-ml", sim.erasure(0.2), 300, seed=10)
        assert a.failures != c.failures or a.seed != c.seed

    def test_parallel_matches_serial(self, spc21):
        serial = sim.run_point(spc21, "bp", sim.depolarizing(0.05), 150, seed=3, jobs=1)
        par = sim.run_point(spc21, "bp", sim.depolarizing(0.05), 150, seed=3, jobs=2)
        assert serial.failures == par.failures

    def test_stderr(self, spc21):
        pt = sim.run_point(spc21, "erasure-ml", sim.erasure(0.2), 400, seed=4)
        r = pt.rate
        assert abs(pt.stderr - math.sqrt(r * (1 - r) / 400)) < 1e-15

    def test_monotonicity(self, spc21):
        lo = sim.run_point(spc21, "erasure-ml", sim.erasure(0.05), 100000, seed=21)
        hi = sim.run_point(spc21, "erasure-ml", sim.erasure(0.2), 100000, seed=22)
        assert hi.rate - lo.rate > 6 * (lo.stderr + hi.stderr)

    def test_low_beta_scaling_near_distance(self, spc21):
        # d = 4 code: log-log slope of the erasure rate near small beta.
        lo = sim.run_point(spc21, "erasure-ml", sim.erasure(0.05), 200000, seed=23)
        hi = sim.run_point(spc21, "erasure-ml", sim.erasure(0.1), 200000, seed=24)
        slope = math.log(hi.rate / lo.rate) / math.log(2.0)
        assert 3.0 <= slope <= 5.0

    def test_extended_point_runs(self):
        code = spc(SpcParams(3, 1))
        mc = (spc3_metacheck(1, "x"), spc3_metacheck(1, "z"))
        pt = sim.run_point(
            code,
            "bp-extended",
            sim.depolarizing_readout(0.01, 1e-3),
            100,
            seed=5,
            metachecks=mc,
        )
        assert pt.trials == 100
        assert 0 <= pt.failures <= 5


class TestCsv:
    def test_roundtrip_format(self, tmp_path, spc21):
        pts = [
            sim.run_point(spc21, "erasure-ml", sim.erasure(b), 50, seed=6)
            for b in (0.1, 0.2)
        ]
        path = tmp_path / "out.csv"
        sim.write_csv(path, "spc21", pts)
        lines = path.read_text().splitlines()
        assert lines[0] == sim.CSV_HEADER
        assert len(lines) == 3
        fields = lines[1].split(",")
        assert fields[0] == "spc21"
        assert fields[1] == "erasure-ml"
        assert float(fields[3]) == 0.1
        assert int(fields[5]) == 50

    def test_seventeen_digit_floats(self, tmp_path, spc21):
        beta = 0.276601156872496
        pt = sim.run_point(spc21, "erasure-ml", sim.erasure(beta), 10, seed=7)
        path = tmp_path / "out.csv"
        sim.write_csv(path, "c", [pt])
        field = path.read_text().splitlines()[1].split(",")[3]
        assert float(field) == beta
        digits = field.replace("0.", "")
        assert len(digits) == 17
