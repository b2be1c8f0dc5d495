"""Smoke tests for the Python bindings and the CLI front end."""

import json
import math
import os
import subprocess
import sys

import numpy as np
import pytest

import bergtoep

CLI = os.environ.get("BERGTOEP_CLI", "")


def test_kernel_value():
    z = np.array([[0.5 + 0j]])
    k = bergtoep.bergman_kernel(z, z, 2.0)
    assert abs(k - 16.0 / 9.0) < 1e-12


def test_haar_unitary_and_domain():
    u = bergtoep.haar_unitary(3, seed=7)
    assert np.allclose(u @ u.conj().T, np.eye(3), atol=1e-12)
    z = bergtoep.sample_domain(2, seed=11)
    assert bergtoep.in_domain(z)
    assert bergtoep.spectral_norm(z) < 1.0
    # deterministic substreams
    assert np.array_equal(bergtoep.sample_domain(2, seed=11), z)


def test_decompose():
    comps = bergtoep.decompose(2, 2)
    mus = sorted(tuple(c["mu"]) for c in comps)
    assert mus == [(1, 1), (2, 0)]
    dims = {tuple(c["mu"]): len(c["basis"]) for c in comps}
    assert dims[(2, 0)] == 9
    assert dims[(1, 1)] == 1


def test_symbol_classify_and_eval():
    s = bergtoep.Symbol("tr(G)", 2)
    assert s.kind == "UUInvariant"
    z = np.diag([0.6, 0.3]).astype(complex)
    assert abs(s.eval(z) - 0.45) < 1e-12
    with pytest.raises(bergtoep.SymbolSyntaxError):
        bergtoep.Symbol("s1*(", 2)


def test_invariance_check():
    s = bergtoep.Symbol("G[1,2]", 2)
    ok = bergtoep.invariance_check(s, "unl", seed=3, trials=20)
    bad = bergtoep.invariance_check(s, "unr", seed=3, trials=20)
    assert ok["max_rel_deviation"] <= 1e-10
    assert bad["max_rel_deviation"] > 1e-2


def test_toeplitz_disk_eigenvalue():
    batch = bergtoep.SampleBatch(1, 3.0, nsamples=50000, seed=5)
    sym = bergtoep.Symbol("s1^2", 1)
    block = bergtoep.toeplitz_block(sym, [2], batch)
    expect = 3.0 / 5.0  # (k+1)/(k+lambda) at k=2, lambda=3
    assert block.matrix.shape == (1, 1)
    assert abs(block.matrix[0, 0] - expect) < 5 * block.noise_bound + 1e-3
    assert block.scalar_defect() == pytest.approx(0.0)


def test_toeplitz_scalar_action():
    batch = bergtoep.SampleBatch(2, 5.0, nsamples=20000, seed=5)
    sym = bergtoep.Symbol("tr(G)", 2)
    block = bergtoep.toeplitz_block(sym, [1, 0], batch)
    assert block.matrix.shape == (4, 4)
    assert block.scalar_defect() < 0.1


def test_batch_inner_and_normalizer():
    batch = bergtoep.SampleBatch(1, 3.0, nsamples=20000, seed=6)
    one = bergtoep.Symbol("1", 1)
    value, stderr = batch.inner(one, one)
    assert value == pytest.approx(1.0)
    c, c_err = batch.normalizer()
    assert abs(c - 2.0) < 4 * c_err


@pytest.mark.skipif(not CLI, reason="BERGTOEP_CLI not set")
class TestCli:
    def run(self, *args):
        return subprocess.run([CLI, *args], capture_output=True, text=True)

    def test_decompose_exit0_and_deterministic(self, tmp_path):
        out1, out2 = tmp_path / "a", tmp_path / "b"
        for out in (out1, out2):
            r = self.run("decompose", "--n", "2", "--dmax", "2", "--out", str(out))
            assert r.returncode == 0
        assert (out1 / "report.json").read_bytes() == (out2 / "report.json").read_bytes()
        report = json.loads((out1 / "report.json").read_text())
        d2 = [d for d in report["degrees"] if d["d"] == 2][0]
        assert d2["dim_Pd"] == 10

    def test_symbol_check_exit_codes(self, tmp_path):
        ok = self.run("symbol-check", "--n", "2", "--symbol", "G[1,2]",
                      "--group", "unl", "--out", str(tmp_path / "ok"))
        assert ok.returncode == 0
        fail = self.run("symbol-check", "--n", "2", "--symbol", "G[1,2]",
                        "--group", "unr", "--out", str(tmp_path / "fail"))
        assert fail.returncode == 1
        syntax = self.run("symbol-check", "--n", "2", "--symbol", "s1*(",
                          "--out", str(tmp_path / "bad"))
        assert syntax.returncode == 4
        assert "position 4" in syntax.stderr

    def test_config_error_exit3(self, tmp_path):
        r = self.run("decompose", "--n", "2", "--lambda", "2",
                     "--out", str(tmp_path / "x"))
        assert r.returncode == 3

    def test_toeplitz_block_csv(self, tmp_path):
        out = tmp_path / "t"
        r = self.run("toeplitz", "--n", "1", "--lambda", "3", "--symbol", "s1^2",
                     "--mu", "1", "--samples", "20000", "--out", str(out))
        assert r.returncode == 0
        lines = (out / "block.csv").read_text().strip().splitlines()
        assert lines[0] == "row,col,re,im,stderr"
        row, col, re, im, stderr = lines[1].split(",")
        assert abs(float(re) - 2.0 / 4.0) < 5 * float(stderr) + 1e-3
        report = json.loads((out / "report.json").read_text())
        assert report["records"][0]["metric"] == "scalar_defect"

    def test_verify_disk_oracle(self, tmp_path):
        r = self.run("verify", "--suite", "disk-oracle", "--samples", "50000",
                     "--out", str(tmp_path / "v"))
        assert r.returncode == 0
        report = json.loads((tmp_path / "v" / "report.json").read_text())
        assert all(rec["verdict"] == "pass" for rec in report["records"])
