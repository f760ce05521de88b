"""Term resources and scorer configuration.

A lexicon maps lowercase terms to a signed polarity and an intensity in
(0, 1]; a gazetteer is a list of known actor names matched
case-insensitively.  Both ship with the package as versioned files and load
with a content checksum so scoring runs are reproducible.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, fields, replace
from importlib import resources as importlib_resources
from pathlib import Path
from typing import Mapping

from .errors import ConfigurationError

DEFAULT_LEXICON_NAME = "lexicon-v1.tsv"
DEFAULT_GAZETTEER_NAME = "gazetteer-v1.txt"

CONFIG_ENV = "CAPOTE_CONFIG"


def _sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


@dataclass(frozen=True)
class Lexicon:
    """Sentiment terms: lowercase term -> (polarity of -1 or +1, intensity)."""

    entries: Mapping[str, tuple[int, float]]
    checksum: str = ""
    source: str = "<memory>"

    def __post_init__(self):
        for term, (polarity, intensity) in self.entries.items():
            if not term or term != term.lower():
                raise ValueError(f"lexicon term {term!r} must be non-empty lowercase")
            if polarity not in (-1, 1):
                raise ValueError(f"term {term!r}: polarity must be -1 or +1, got {polarity!r}")
            if not 0.0 < intensity <= 1.0:
                raise ValueError(f"term {term!r}: intensity must be in (0, 1], got {intensity!r}")

    def __contains__(self, term: str) -> bool:
        return term in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def get(self, term: str) -> tuple[int, float] | None:
        return self.entries.get(term)

    @classmethod
    def from_text(cls, text: str, source: str = "<memory>") -> "Lexicon":
        entries: dict[str, tuple[int, float]] = {}
        for line_no, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise ConfigurationError(
                    f"{source}: line {line_no}: expected term<TAB>polarity<TAB>intensity"
                )
            term = parts[0].strip().lower()
            try:
                polarity = int(parts[1])
                intensity = float(parts[2])
            except ValueError:
                raise ConfigurationError(
                    f"{source}: line {line_no}: polarity/intensity not numeric"
                ) from None
            if term in entries:
                raise ConfigurationError(f"{source}: line {line_no}: duplicate term {term!r}")
            entries[term] = (polarity, intensity)
        try:
            return cls(entries=entries, checksum=_sha256(text.encode("utf-8")), source=source)
        except ValueError as exc:
            raise ConfigurationError(f"{source}: {exc}") from None

    @classmethod
    def from_file(cls, path: str | Path) -> "Lexicon":
        path = Path(path)
        if not path.exists():
            raise ConfigurationError(f"lexicon file not found: {path}")
        data = path.read_bytes()
        lexicon = cls.from_text(data.decode("utf-8"), source=str(path))
        return replace(lexicon, checksum=_sha256(data))


@dataclass(frozen=True)
class Gazetteer:
    """Known actor names, deduplicated case-insensitively."""

    names: tuple[str, ...]
    checksum: str = ""
    source: str = "<memory>"

    def __post_init__(self):
        seen = set()
        for name in self.names:
            if not name:
                raise ValueError("gazetteer names must be non-empty")
            key = name.casefold()
            if key in seen:
                raise ValueError(f"duplicate gazetteer name {name!r}")
            seen.add(key)

    def __len__(self) -> int:
        return len(self.names)

    @classmethod
    def from_names(cls, names, source: str = "<memory>") -> "Gazetteer":
        deduped: dict[str, str] = {}
        for name in names:
            stripped = str(name).strip()
            if stripped and stripped.casefold() not in deduped:
                deduped[stripped.casefold()] = stripped
        return cls(names=tuple(deduped.values()), source=source)

    @classmethod
    def from_file(cls, path: str | Path) -> "Gazetteer":
        path = Path(path)
        if not path.exists():
            raise ConfigurationError(f"gazetteer file not found: {path}")
        data = path.read_bytes()
        names = [
            line.strip()
            for line in data.decode("utf-8").splitlines()
            if line.strip() and not line.lstrip().startswith("#")
        ]
        gazetteer = cls.from_names(names, source=str(path))
        return replace(gazetteer, checksum=_sha256(data))


@dataclass(frozen=True)
class ScorerConfig:
    """Reference scales for the aspect scorers.

    Each scorer normalizes its raw signal against one of these values; all
    must be strictly positive and the sentiment threshold below 1.
    """

    actor_ref_count: int = 100
    sentiment_threshold: float = 0.1
    emotion_gain: float = 10.0
    source_ref_count: int = 5
    span_ref_days: int = 365
    burst_ref_count: int = 5
    burst_sigma: float = 2.0

    def __post_init__(self):
        for spec_field in fields(self):
            value = getattr(self, spec_field.name)
            if not value > 0:
                raise ValueError(f"{spec_field.name} must be strictly positive, got {value!r}")
        if not self.sentiment_threshold < 1.0:
            raise ValueError(
                f"sentiment_threshold must be below 1, got {self.sentiment_threshold!r}"
            )

    def with_overrides(self, **overrides) -> "ScorerConfig":
        return replace(self, **overrides)

    @classmethod
    def from_file(cls, path: str | Path) -> "ScorerConfig":
        """Parse a flat ``key = value`` file; unknown keys are rejected."""
        path = Path(path)
        if not path.exists():
            raise ConfigurationError(f"config file not found: {path}")
        known = {f.name: f.type for f in fields(cls)}
        int_fields = {"actor_ref_count", "source_ref_count", "span_ref_days", "burst_ref_count"}
        values: dict[str, float | int] = {}
        for line_no, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigurationError(f"{path}: line {line_no}: expected key = value")
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if key not in known:
                raise ConfigurationError(f"{path}: line {line_no}: unknown key {key!r}")
            try:
                values[key] = int(value) if key in int_fields else float(value)
            except ValueError:
                raise ConfigurationError(
                    f"{path}: line {line_no}: value for {key!r} is not numeric"
                ) from None
        try:
            return cls(**values)
        except ValueError as exc:
            raise ConfigurationError(f"{path}: {exc}") from None


@dataclass(frozen=True)
class Resources:
    """A lexicon/gazetteer pair plus provenance for run manifests."""

    lexicon: Lexicon
    gazetteer: Gazetteer

    def checksums(self) -> dict[str, str]:
        return {
            self.lexicon.source: self.lexicon.checksum,
            self.gazetteer.source: self.gazetteer.checksum,
        }


def _read_bundled(name: str) -> bytes:
    return importlib_resources.files("capote").joinpath("data", name).read_bytes()


def default_lexicon() -> Lexicon:
    data = _read_bundled(DEFAULT_LEXICON_NAME)
    lexicon = Lexicon.from_text(data.decode("utf-8"), source=f"builtin:{DEFAULT_LEXICON_NAME}")
    return replace(lexicon, checksum=_sha256(data))


def default_gazetteer() -> Gazetteer:
    data = _read_bundled(DEFAULT_GAZETTEER_NAME)
    names = [
        line.strip()
        for line in data.decode("utf-8").splitlines()
        if line.strip() and not line.lstrip().startswith("#")
    ]
    gazetteer = Gazetteer.from_names(names, source=f"builtin:{DEFAULT_GAZETTEER_NAME}")
    return replace(gazetteer, checksum=_sha256(data))


def load_resources(
    lexicon_path: str | Path | None = None,
    gazetteer_path: str | Path | None = None,
) -> Resources:
    """Load resources from files, falling back to the bundled defaults."""
    lexicon = Lexicon.from_file(lexicon_path) if lexicon_path else default_lexicon()
    gazetteer = Gazetteer.from_file(gazetteer_path) if gazetteer_path else default_gazetteer()
    return Resources(lexicon=lexicon, gazetteer=gazetteer)
