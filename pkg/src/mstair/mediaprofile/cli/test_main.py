"""
Tests for the ``mediaprofile`` command line: subcommands, exit codes and the
end-to-end planted-signal acceptance run.
"""

from __future__ import annotations

import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from mstair.mediaprofile.cli.main import cli, main


def _synth(root: Path, *extra: str) -> Path:
    """Write a synthetic corpus plus a fast-grid config; return the config path."""
    assert main(["-q", "synth", str(root), *extra]) == 0
    config = root / "mediaprofile.toml"
    with config.open("a", encoding="utf-8") as fh:
        fh.write('grid = [{kind = "linear", C = 1.0}]\nk_outer = 2\nk_inner = 2\n')
    return config


# ---------- help and synth ----------


def test_help_lists_subcommands() -> None:
    result = CliRunner().invoke(cli, ["--help"])
    assert result.exit_code == 0
    for name in ("extract", "train", "evaluate", "ablate", "report", "stats", "synth"):
        assert name in result.output


def test_synth_writes_a_usable_config(tmp_path: Path) -> None:
    result = CliRunner().invoke(cli, ["-q", "synth", str(tmp_path / "w"), "--n-media", "14"])
    assert result.exit_code == 0, result.output
    config = tmp_path / "w" / "mediaprofile.toml"
    assert result.output.strip() == str(config)
    text = config.read_text(encoding="utf-8")
    assert "corpus = " in text and "embeddings = " in text


def test_stats_prints_json(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    config = _synth(tmp_path / "w", "--n-media", "14")
    capsys.readouterr()
    assert main(["-q", "--config", str(config), "stats"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["n_media"] == 14
    assert doc["coverage"]["wikipedia"] == 1.0


# ---------- pipeline through the CLI ----------


@pytest.mark.integration
def test_extract_evaluate_report(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    config = _synth(tmp_path / "w", "--n-media", "14")
    base = ["-q", "--config", str(config)]

    assert main([*base, "extract"]) == 0
    assert "14 row(s)" in capsys.readouterr().out
    assert main([*base, "evaluate", "--task", "factuality,bias7"]) == 0
    assert main([*base, "ablate", "--task", "factuality"]) == 0
    capsys.readouterr()
    assert main([*base, "report"]) == 0
    out = capsys.readouterr().out
    assert out.index("### Results for factuality") < out.index("### Ablation for factuality")
    assert out.index("### Ablation for factuality") < out.index("### Results for bias7")
    assert "7-way predictions folded to 3-way:" in out


@pytest.mark.integration
def test_train_and_predict(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    config = _synth(tmp_path / "w", "--n-media", "14")
    base = ["-q", "--config", str(config)]
    assert main([*base, "extract"]) == 0
    assert main([*base, "train", "--task", "bias3"]) == 0
    model = tmp_path / "w" / "results" / "models" / "bias3.json"
    assert model.is_file()
    capsys.readouterr()
    assert main([*base, "predict", str(model), "--task", "bias3"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 14
    assert all(line.split("\t")[1] in {"Left", "Center", "Right"} for line in lines)


# ---------- exit codes ----------


class TestExitCodes:
    def test_unknown_task_is_usage_error(self, tmp_path: Path) -> None:
        config = _synth(tmp_path / "w", "--n-media", "14")
        assert main(["-q", "--config", str(config), "evaluate", "--task", "sentiment"]) == 1

    def test_unknown_option_is_usage_error(self) -> None:
        assert main(["extract", "--no-such-flag"]) == 1

    def test_missing_config_file_is_usage_error(self, tmp_path: Path) -> None:
        assert main(["-q", "--config", str(tmp_path / "absent.toml"), "stats"]) == 1

    def test_evaluate_before_extract_is_usage_error(self, tmp_path: Path) -> None:
        config = _synth(tmp_path / "w", "--n-media", "14")
        assert main(["-q", "--config", str(config), "evaluate"]) == 1

    def test_missing_corpus_is_data_error(self, tmp_path: Path) -> None:
        assert main(["-q", "stats", "--corpus", str(tmp_path / "absent.csv")]) == 2

    def test_corrupt_report_is_data_error(
        self, tmp_path: Path, caplog: pytest.LogCaptureFixture
    ) -> None:
        bad = tmp_path / "reports" / "ablation-bias7.json"
        bad.parent.mkdir(parents=True)
        bad.write_text("[]", encoding="utf-8")
        assert main(["report", "--output-dir", str(tmp_path)]) == 2
        assert "ablation-bias7.json" in caplog.text

    def test_stale_cache_is_data_error(self, tmp_path: Path) -> None:
        config = _synth(tmp_path / "w", "--n-media", "14")
        assert main(["-q", "--config", str(config), "extract"]) == 0
        assert main(["-q", "--config", str(config), "evaluate", "--enable-url-ngrams"]) == 2


# ---------- acceptance ----------


@pytest.mark.slow
def test_planted_signal_is_recovered_and_ablation_detects_it(
    tmp_path: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    root = tmp_path / "w"
    assert main(["-q", "synth", str(root), "--n-media", "60", "--planted", "wikipedia"]) == 0
    config = root / "mediaprofile.toml"
    with config.open("a", encoding="utf-8") as fh:
        fh.write('grid = "coarse"\n')
    base = ["-q", "--config", str(config)]
    assert main([*base, "extract"]) == 0
    assert main([*base, "evaluate", "--task", "factuality,bias7"]) == 0
    assert main([*base, "ablate", "--task", "factuality"]) == 0

    reports = root / "results" / "reports"
    for task in ("factuality", "bias7"):
        doc = json.loads((reports / f"results-{task}.json").read_text(encoding="utf-8"))
        full = doc["rows"][0]["pooled"]["macro_f1"]
        assert full - doc["baseline"]["macro_f1"] >= 0.20, task

    ablation = json.loads((reports / "ablation-factuality.json").read_text(encoding="utf-8"))
    by_label = {row["label"]: row["pooled"]["macro_f1"] for row in ablation["rows"]}
    assert by_label["Full"] - by_label["Full w/o wikipedia"] >= 0.05
