from __future__ import annotations

import pytest

from capote import ConfigurationError, Gazetteer, Lexicon, ScorerConfig
from capote.resources import default_gazetteer, default_lexicon, load_resources


def test_lexicon_from_file_parses_and_checksums(tmp_path) -> None:
    path = tmp_path / "lex.tsv"
    path.write_text("# comment\ngood\t1\t0.8\nBAD\t-1\t0.5\n", encoding="utf-8")
    lexicon = Lexicon.from_file(path)
    assert lexicon.get("good") == (1, 0.8)
    assert lexicon.get("bad") == (-1, 0.5)
    assert len(lexicon.checksum) == 64


def test_lexicon_rejects_bad_polarity(tmp_path) -> None:
    path = tmp_path / "lex.tsv"
    path.write_text("good\t2\t0.8\n", encoding="utf-8")
    with pytest.raises(ConfigurationError, match="polarity"):
        Lexicon.from_file(path)


def test_lexicon_rejects_out_of_range_intensity(tmp_path) -> None:
    path = tmp_path / "lex.tsv"
    path.write_text("good\t1\t1.5\n", encoding="utf-8")
    with pytest.raises(ConfigurationError, match="intensity"):
        Lexicon.from_file(path)


def test_lexicon_rejects_duplicates(tmp_path) -> None:
    path = tmp_path / "lex.tsv"
    path.write_text("good\t1\t0.8\nGood\t1\t0.4\n", encoding="utf-8")
    with pytest.raises(ConfigurationError, match="duplicate"):
        Lexicon.from_file(path)


def test_lexicon_missing_file() -> None:
    with pytest.raises(ConfigurationError, match="not found"):
        Lexicon.from_file("/no/such/lexicon.tsv")


def test_gazetteer_from_file_dedupes_case_insensitively(tmp_path) -> None:
    path = tmp_path / "gaz.txt"
    path.write_text("NHS\nnhs\nUnited Nations\n\n", encoding="utf-8")
    gazetteer = Gazetteer.from_file(path)
    assert gazetteer.names == ("NHS", "United Nations")
    assert len(gazetteer.checksum) == 64


def test_scorer_config_defaults_and_overrides() -> None:
    config = ScorerConfig()
    assert config.actor_ref_count == 100
    assert config.sentiment_threshold == pytest.approx(0.1)
    assert config.burst_sigma == pytest.approx(2.0)
    assert config.with_overrides(emotion_gain=5.0).emotion_gain == pytest.approx(5.0)


def test_scorer_config_validation() -> None:
    with pytest.raises(ValueError):
        ScorerConfig(actor_ref_count=0)
    with pytest.raises(ValueError):
        ScorerConfig(sentiment_threshold=1.0)


def test_scorer_config_from_file(tmp_path) -> None:
    path = tmp_path / "scoring.cfg"
    path.write_text(
        "# tuning\nactor_ref_count = 50\nsentiment_threshold = 0.2\nburst_sigma = 1.5\n",
        encoding="utf-8",
    )
    config = ScorerConfig.from_file(path)
    assert config.actor_ref_count == 50
    assert config.sentiment_threshold == pytest.approx(0.2)
    assert config.burst_sigma == pytest.approx(1.5)
    assert config.span_ref_days == 365


def test_scorer_config_rejects_unknown_key(tmp_path) -> None:
    path = tmp_path / "scoring.cfg"
    path.write_text("actor_ref = 50\n", encoding="utf-8")
    with pytest.raises(ConfigurationError, match="unknown key"):
        ScorerConfig.from_file(path)


def test_default_resources_load_with_checksums() -> None:
    lexicon = default_lexicon()
    gazetteer = default_gazetteer()
    assert len(lexicon) > 200
    assert len(gazetteer) > 50
    assert lexicon.checksum == default_lexicon().checksum
    assert "nhs" not in lexicon  # gazetteer entry, not a sentiment term
    assert lexicon.get("outrage") == (-1, 0.9)
    resources = load_resources()
    assert set(resources.checksums()) == {lexicon.source, gazetteer.source}
