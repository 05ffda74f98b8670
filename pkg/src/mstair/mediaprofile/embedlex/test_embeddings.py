"""
Tests for word2vec loading and embedding averages.
"""

from __future__ import annotations

import logging
from pathlib import Path

import numpy as np
import pytest

from mstair.mediaprofile.base.errors import EmbeddingParseError
from mstair.mediaprofile.embedlex.embeddings import (
    EmbeddingTable,
    avg_embedding,
    load_embeddings,
    read_embedding_header,
)


def _write_text(path: Path, *lines: str) -> Path:
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def _write_binary(path: Path, rows: dict[str, list[float]]) -> Path:
    dim = len(next(iter(rows.values())))
    blob = bytearray(f"{len(rows)} {dim}\n".encode())
    for token, vec in rows.items():
        blob += token.encode("utf-8") + b" " + np.asarray(vec, dtype="<f4").tobytes() + b"\n"
    path.write_bytes(bytes(blob))
    return path


# ---------- Loading ----------


class TestLoadText:
    def test_two_words(self, tmp_path: Path) -> None:
        path = _write_text(tmp_path / "e.txt", "2 3", "cat 1 2 3", "dog 0.5 -1 0")
        table = load_embeddings(path)
        assert table.dim == 3 and len(table) == 2
        np.testing.assert_allclose(table.get("dog"), [0.5, -1.0, 0.0])

    def test_oov_lookup_is_absent(self, tmp_path: Path) -> None:
        table = load_embeddings(_write_text(tmp_path / "e.txt", "1 2", "cat 1 2"))
        assert table.get("bird") is None
        assert "bird" not in table

    def test_case_sensitive(self, tmp_path: Path) -> None:
        table = load_embeddings(_write_text(tmp_path / "e.txt", "1 2", "Cat 1 2"))
        assert "Cat" in table and "cat" not in table

    def test_short_row_is_parse_error(self, tmp_path: Path) -> None:
        path = _write_text(tmp_path / "e.txt", "1 3", "cat 1 2")
        with pytest.raises(EmbeddingParseError) as info:
            load_embeddings(path)
        assert str(path) in str(info.value)

    def test_non_finite_is_parse_error(self, tmp_path: Path) -> None:
        path = _write_text(tmp_path / "e.txt", "1 2", "cat 1 nan")
        with pytest.raises(EmbeddingParseError, match="non-finite"):
            load_embeddings(path)

    def test_bad_header(self, tmp_path: Path) -> None:
        with pytest.raises(EmbeddingParseError, match="header"):
            load_embeddings(_write_text(tmp_path / "e.txt", "cat 1 2"))

    def test_duplicate_keeps_first(
        self, tmp_path: Path, caplog: pytest.LogCaptureFixture
    ) -> None:
        with caplog.at_level(logging.WARNING):
            table = load_embeddings(_write_text(tmp_path / "e.txt", "2 1", "cat 1", "cat 9"))
        assert len(table) == 1
        assert "announces 2 tokens, kept 1" in caplog.text
        assert table.get("cat")[0] == 1.0  # type: ignore[index]

    def test_header_count_above_rows_is_truncation(self, tmp_path: Path) -> None:
        path = _write_text(tmp_path / "e.txt", "5 1", "cat 1")
        with pytest.raises(EmbeddingParseError, match="fewer than the 5 entries"):
            load_embeddings(path)

    def test_rows_past_header_count_are_ignored(self, tmp_path: Path) -> None:
        table = load_embeddings(_write_text(tmp_path / "e.txt", "1 1", "cat 1", "dog 2"))
        assert "cat" in table and "dog" not in table

    def test_vectors_are_float64(self, tmp_path: Path) -> None:
        table = load_embeddings(_write_text(tmp_path / "e.txt", "1 2", "cat 0.25 -4"))
        assert table.vectors.dtype == np.float64
        np.testing.assert_array_equal(table.get("cat"), [0.25, -4.0])

    def test_vectors_are_read_only(self, tmp_path: Path) -> None:
        table = load_embeddings(_write_text(tmp_path / "e.txt", "1 2", "cat 1 2"))
        with pytest.raises(ValueError):
            table.vectors[0, 0] = 5.0


class TestLoadBinary:
    def test_round_values(self, tmp_path: Path) -> None:
        path = _write_binary(tmp_path / "e.bin", {"cat": [1.0, 2.0, 3.0], "dog": [0.5, 0, -2]})
        table = load_embeddings(path)
        assert table.dim == 3 and len(table) == 2
        np.testing.assert_array_equal(table.get("cat"), [1.0, 2.0, 3.0])
        np.testing.assert_array_equal(table.get("dog"), [0.5, 0.0, -2.0])

    def test_format_flag_overrides_suffix(self, tmp_path: Path) -> None:
        path = _write_binary(tmp_path / "vectors.dat", {"cat": [1.0, 2.0]})
        assert load_embeddings(path, binary=True).get("cat") is not None

    def test_truncated(self, tmp_path: Path) -> None:
        path = tmp_path / "e.bin"
        path.write_bytes(b"2 4\ncat " + np.zeros(4, dtype="<f4").tobytes() + b"\ndog \x00")
        with pytest.raises(EmbeddingParseError, match="truncated"):
            load_embeddings(path)

    def test_header_only_read(self, tmp_path: Path) -> None:
        path = _write_binary(tmp_path / "e.bin", {"cat": [1.0, 2.0], "dog": [3.0, 4.0]})
        assert read_embedding_header(path) == (2, 2)


# ---------- Averages ----------


class TestAvgEmbedding:
    @pytest.fixture
    def table(self) -> EmbeddingTable:
        return EmbeddingTable.from_mapping(
            {"w": [1.0, 2.0, 3.0], "a": [0.0, 0.0, 0.0], "b": [2.0, 4.0, 6.0]}
        )

    def test_empty_is_zero(self, table: EmbeddingTable) -> None:
        np.testing.assert_array_equal(avg_embedding([], table), np.zeros(3))

    def test_all_oov_is_zero(self, table: EmbeddingTable) -> None:
        np.testing.assert_array_equal(avg_embedding(["zzz", "yyy"], table), np.zeros(3))

    def test_singleton(self, table: EmbeddingTable) -> None:
        np.testing.assert_array_equal(avg_embedding(["w"], table), [1.0, 2.0, 3.0])

    def test_pair_mean(self, table: EmbeddingTable) -> None:
        np.testing.assert_allclose(avg_embedding(["a", "b"], table), [1.0, 2.0, 3.0], atol=1e-12)

    def test_oov_skipped(self, table: EmbeddingTable) -> None:
        np.testing.assert_allclose(avg_embedding(["a", "zzz", "b"], table), [1.0, 2.0, 3.0])

    def test_permutation_and_duplication(self, table: EmbeddingTable) -> None:
        tokens = ["w", "a", "b", "a"]
        base = avg_embedding(tokens, table)
        np.testing.assert_allclose(avg_embedding(list(reversed(tokens)), table), base)
        np.testing.assert_allclose(avg_embedding(tokens * 2, table), base)

    def test_from_mapping_rejects_ragged(self) -> None:
        with pytest.raises(ValueError, match="expected 2"):
            EmbeddingTable.from_mapping({"a": [1.0, 2.0], "b": [1.0]})
