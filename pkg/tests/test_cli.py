"""CLI surface: wiring, determinism, seeds, and exit codes (0/1/2)."""

import subprocess
import sys

import numpy as np
import pytest

from qamsim import Field, PatternBank, normalize, save_bank, save_state
from qamsim.cli import main


def run_cli(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def workspace(tmp_path, make_pgm, capsys):
    """Two one-hot 2x2 images plus a bank built from them via the CLI."""
    img_a = make_pgm("a.pgm", [255, 0, 0, 0], 2, 2)
    img_b = make_pgm("b.pgm", [0, 255, 0, 0], 2, 2)
    bank = tmp_path / "bank.txt"
    code = main(
        ["bank-build", "--out", str(bank), "--label", "A", str(img_a), "--label", "B", str(img_b)]
    )
    capsys.readouterr()
    assert code == 0
    return {"a": img_a, "b": img_b, "bank": bank, "dir": tmp_path}


@pytest.fixture(autouse=True)
def _no_ambient_seed(monkeypatch):
    monkeypatch.delenv("QAM_SEED", raising=False)


class TestBankBuild:
    def test_reports_shape(self, workspace, capsys):
        code, out, _ = run_cli(
            [
                "bank-build",
                "--out",
                str(workspace["dir"] / "bank2.txt"),
                "--label",
                "A",
                str(workspace["a"]),
            ],
            capsys,
        )
        assert code == 0
        assert "1 patterns, dim 4" in out

    def test_bank_file_loadable(self, workspace):
        from qamsim import load_bank

        bank = load_bank(workspace["bank"])
        assert bank.labels == ("A", "B")
        assert bank.dim == 4
        assert bank.field is Field.REAL

    def test_duplicate_label_is_data_error(self, workspace, capsys):
        code, _, err = run_cli(
            [
                "bank-build",
                "--out",
                str(workspace["dir"] / "dup.txt"),
                "--label",
                "A",
                str(workspace["a"]),
                "--label",
                "A",
                str(workspace["b"]),
            ],
            capsys,
        )
        assert code == 2
        assert "error" in err


class TestRecognize:
    def test_deterministic_wiring(self, workspace, capsys):
        code, out, _ = run_cli(
            ["recognize", "--bank", str(workspace["bank"]), "--input", str(workspace["a"])],
            capsys,
        )
        assert code == 0
        assert out.splitlines()[0] == "label=A channel=0 score=1.0"

    def test_sampled_single_shot(self, workspace, capsys):
        code, out, _ = run_cli(
            [
                "recognize",
                "--bank",
                str(workspace["bank"]),
                "--input",
                str(workspace["b"]),
                "--mode",
                "sampled",
                "--seed",
                "5",
            ],
            capsys,
        )
        assert code == 0
        assert "label=B channel=1 score=1.0" in out

    def test_sampled_many_shots(self, workspace, capsys):
        code, out, _ = run_cli(
            [
                "recognize",
                "--bank",
                str(workspace["bank"]),
                "--input",
                str(workspace["a"]),
                "--mode",
                "sampled",
                "--samples",
                "500",
                "--seed",
                "5",
            ],
            capsys,
        )
        assert code == 0
        assert "label=A channel=0 score=1.0" in out

    def test_multicopy_prints_pass_rates(self, workspace, capsys):
        code, out, _ = run_cli(
            [
                "recognize",
                "--bank",
                str(workspace["bank"]),
                "--input",
                str(workspace["a"]),
                "--mode",
                "multicopy",
                "--copies",
                "200",
                "--seed",
                "1",
            ],
            capsys,
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0].startswith("label=A channel=0 score=")
        assert lines[1].startswith("pass_rates=")
        rates = [float(x) for x in lines[1].split("=", 1)[1].split(",")]
        assert rates[0] == pytest.approx(1.0)

    def test_sampled_rejects_non_orthogonal_bank(self, tmp_path, make_pgm, capsys):
        w0 = np.array([1.0, 0.0])
        w1 = normalize([1.0, 1.0])
        bank = PatternBank(["x", "y"], [w0, w1], field=Field.REAL)
        bank_path = tmp_path / "skew.txt"
        save_bank(bank, bank_path)
        state_path = tmp_path / "s.txt"
        save_state(np.array([1.0, 0.0]), state_path)
        code, _, err = run_cli(
            [
                "recognize",
                "--bank",
                str(bank_path),
                "--input",
                str(state_path),
                "--mode",
                "sampled",
            ],
            capsys,
        )
        assert code == 2
        assert "orthogonal" in err


class TestMeasure:
    def test_byte_identical_reruns(self, workspace, capsys):
        argv = [
            "measure",
            "--bank",
            str(workspace["bank"]),
            "--input",
            str(workspace["a"]),
            "--samples",
            "10000",
            "--seed",
            "7",
        ]
        code1, out1, _ = run_cli(argv, capsys)
        code2, out2, _ = run_cli(argv, capsys)
        assert code1 == code2 == 0
        assert out1 == out2
        assert out1.splitlines()[0] == "outcome_label,count,empirical_frequency,exact_probability"

    def test_histogram_content(self, workspace, capsys):
        _, out, _ = run_cli(
            [
                "measure",
                "--bank",
                str(workspace["bank"]),
                "--input",
                str(workspace["a"]),
                "--samples",
                "100",
                "--seed",
                "0",
            ],
            capsys,
        )
        lines = out.splitlines()
        assert lines[1] == "A,100,1.0,1.0"
        assert lines[2] == "B,0,0.0,0.0"
        assert lines[3] == "RESIDUAL,0,0.0,0.0"


class TestCorrect:
    def test_writes_corrected_state(self, workspace, tmp_path, make_pgm, capsys):
        noisy = make_pgm("noisy.pgm", [200, 10, 3, 0], 2, 2)
        out_path = tmp_path / "fixed.txt"
        code, out, _ = run_cli(
            [
                "correct",
                "--images",
                str(workspace["a"]),
                str(workspace["b"]),
                "--input",
                str(noisy),
                "--out",
                str(out_path),
            ],
            capsys,
        )
        assert code == 0
        assert out_path.exists()
        lines = out.splitlines()
        assert lines[0].startswith("in_span_fraction=")
        assert lines[1].startswith("residual_norm=")
        frac = float(lines[0].split("=")[1])
        assert 0.0 < frac <= 1.0

    def test_default_output_path(self, workspace, make_pgm, capsys):
        noisy = make_pgm("noisy2.pgm", [100, 50, 0, 0], 2, 2)
        code, _, _ = run_cli(
            [
                "correct",
                "--images",
                str(workspace["a"]),
                str(workspace["b"]),
                "--input",
                str(noisy),
            ],
            capsys,
        )
        assert code == 0
        assert (workspace["dir"] / "noisy2.pgm.corrected.txt").exists()

    def test_out_of_span_is_data_error(self, workspace, make_pgm, capsys):
        outside = make_pgm("outside.pgm", [0, 0, 9, 0], 2, 2)
        code, _, err = run_cli(
            [
                "correct",
                "--images",
                str(workspace["a"]),
                str(workspace["b"]),
                "--input",
                str(outside),
            ],
            capsys,
        )
        assert code == 2
        assert "span" in err


class TestChain:
    def test_analytic_and_sampled(self, tmp_path, capsys):
        f1 = tmp_path / "f1.txt"
        f2 = tmp_path / "f2.txt"
        chi = tmp_path / "chi.txt"
        save_state(normalize([1.0, 1.0]), f1)
        save_state(np.array([0.0, 1.0]), f2)
        save_state(np.array([1.0, 0.0]), chi)
        code, out, _ = run_cli(
            [
                "chain",
                "--filters",
                str(f1),
                str(f2),
                "--input",
                str(chi),
                "--samples",
                "20000",
                "--seed",
                "3",
            ],
            capsys,
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0].startswith("survival_probability=")
        assert float(lines[0].split("=")[1]) == pytest.approx(0.25, abs=1e-12)
        sampled = float(lines[1].split("=")[1])
        assert abs(sampled - 0.25) < 3 * np.sqrt(0.25 * 0.75 / 20000)

    def test_analytic_only_without_samples(self, tmp_path, capsys):
        f1 = tmp_path / "f.txt"
        chi = tmp_path / "c.txt"
        save_state(np.array([1.0, 0.0]), f1)
        save_state(np.array([1.0, 0.0]), chi)
        code, out, _ = run_cli(
            ["chain", "--filters", str(f1), "--input", str(chi)], capsys
        )
        assert code == 0
        assert out == "survival_probability=1.0\n"


class TestStats:
    def test_scaling_band(self, capsys):
        code, out, _ = run_cli(
            ["stats", "--dims", "16,256,4096", "--trials", "10000", "--seed", "1"],
            capsys,
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "dim,trials,mean_abs_overlap,mean_sq_overlap,scaled_mean_sq,seed"
        assert len(lines) == 4
        for line in lines[1:]:
            scaled = float(line.split(",")[4])
            assert 0.9 < scaled < 1.1

    def test_deterministic(self, capsys):
        argv = ["stats", "--dims", "8,32", "--trials", "3000", "--seed", "2"]
        _, out1, _ = run_cli(argv, capsys)
        _, out2, _ = run_cli(argv, capsys)
        assert out1 == out2

    def test_workers_flag_invariant(self, capsys):
        base = ["stats", "--dims", "16", "--trials", "6000", "--seed", "4"]
        _, out1, _ = run_cli(base, capsys)
        _, out2, _ = run_cli(base + ["--workers", "3"], capsys)
        assert out1 == out2

    def test_row_seeds_increment(self, capsys):
        _, out, _ = run_cli(["stats", "--dims", "8,8", "--trials", "100", "--seed", "10"], capsys)
        rows = [line.split(",") for line in out.splitlines()[1:]]
        assert rows[0][5] == "10" and rows[1][5] == "11"
        assert rows[0][2] != rows[1][2]


class TestGram:
    def test_matrix_output(self, workspace, capsys):
        code, out, _ = run_cli(["gram", "--bank", str(workspace["bank"])], capsys)
        assert code == 0
        assert out.splitlines() == ["label,A,B", "A,1.0,0.0", "B,0.0,1.0"]


class TestSeeds:
    def test_env_seed_used_as_default(self, workspace, capsys, monkeypatch):
        argv = [
            "measure",
            "--bank",
            str(workspace["bank"]),
            "--input",
            str(workspace["a"]),
            "--samples",
            "500",
        ]
        monkeypatch.setenv("QAM_SEED", "99")
        _, out_env, _ = run_cli(argv, capsys)
        monkeypatch.delenv("QAM_SEED")
        _, out_flag, _ = run_cli(argv + ["--seed", "99"], capsys)
        assert out_env == out_flag

    def test_explicit_flag_beats_env(self, workspace, capsys, monkeypatch):
        argv = [
            "recognize",
            "--bank",
            str(workspace["bank"]),
            "--input",
            str(workspace["a"]),
            "--mode",
            "multicopy",
            "--copies",
            "50",
        ]
        monkeypatch.setenv("QAM_SEED", "1")
        _, out_env_only, _ = run_cli(argv, capsys)
        _, out_override, _ = run_cli(argv + ["--seed", "2"], capsys)
        _, out_direct, _ = run_cli(argv + ["--seed", "1"], capsys)
        assert out_override != out_env_only or out_direct == out_env_only
        assert out_direct == out_env_only

    def test_garbage_env_seed_is_data_error(self, workspace, capsys, monkeypatch):
        monkeypatch.setenv("QAM_SEED", "not-a-number")
        code, _, err = run_cli(
            [
                "measure",
                "--bank",
                str(workspace["bank"]),
                "--input",
                str(workspace["a"]),
                "--samples",
                "10",
            ],
            capsys,
        )
        assert code == 2
        assert "QAM_SEED" in err


class TestExitCodes:
    @pytest.mark.parametrize(
        "argv",
        [
            [],
            ["no-such-command"],
            ["recognize"],
            ["recognize", "--bank", "b", "--input", "i", "--mode", "psychic"],
            ["stats", "--dims", "4,banana", "--trials", "10"],
            ["stats", "--dims", "8", "--trials", "0"],
            ["measure", "--bank", "b", "--input", "i", "--samples", "-5"],
            ["bank-build", "--out", "x"],
        ],
    )
    def test_usage_errors_exit_1(self, argv, capsys):
        assert main(argv) == 1
        capsys.readouterr()

    def test_help_exits_0(self, capsys):
        assert main(["--help"]) == 0
        capsys.readouterr()

    def test_missing_file_exits_2(self, capsys):
        code, _, err = run_cli(
            ["gram", "--bank", "/definitely/not/here.txt"], capsys
        )
        assert code == 2
        assert err.startswith("qamsim: error:")

    def test_malformed_bank_exits_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.txt"
        bad.write_text("this is not a bank\n")
        code, _, err = run_cli(["gram", "--bank", str(bad)], capsys)
        assert code == 2
        assert "error" in err


class TestSubprocess:
    def test_console_script_byte_identical(self, workspace, tmp_path):
        argv = [
            sys.executable,
            "-m",
            "qamsim.cli",
            "measure",
            "--bank",
            str(workspace["bank"]),
            "--input",
            str(workspace["a"]),
            "--samples",
            "2000",
            "--seed",
            "42",
        ]
        r1 = subprocess.run(argv, capture_output=True, check=True)
        r2 = subprocess.run(argv, capture_output=True, check=True)
        assert r1.stdout == r2.stdout
        assert r1.stdout.startswith(b"outcome_label,count")
