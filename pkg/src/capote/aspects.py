"""Aspect scorers: bounded signals for the five controversy dimensions.

Every scorer is a pure function of immutable inputs and returns a value in
[0, 1], so debates can be scored in parallel with no shared state.
Degenerate inputs (empty text, a single timestamp, no lexicon matches) score
0 rather than raising.  Aggregations over comments use exactly-rounded sums,
which makes scores invariant under comment reordering, bit for bit.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .corpus import ASPECTS, Debate
from .resources import Gazetteer, Lexicon, Resources, ScorerConfig

SECONDS_PER_DAY = 86_400

# Tokens are maximal runs of Unicode alphanumerics (underscore excluded).
_WORD_RE = re.compile(r"[^\W_]+", re.UNICODE)
_SENTENCE_SPLIT_RE = re.compile(r"[.!?;:\n]+")

# Function words that often open a sentence capitalized; a run's leading
# token is dropped when it is sentence-initial and appears here.
_STOPWORDS = frozenset(
    """
    a an and are as at but by for from heher his how i if in into is it its
    me my no not of on or our she so that the their then there they this to
    was we what when where which while who why with you your
    """.split()
)


def tokenize(text: str) -> list[str]:
    """Split text into alphanumeric tokens, preserving case."""
    return _WORD_RE.findall(text)


def tokenize_lower(text: str) -> list[str]:
    return [token.lower() for token in _WORD_RE.findall(text)]


@dataclass(frozen=True)
class AspectScores:
    """Per-debate scores in [0, 1], one per aspect, plus optional controversy."""

    actors: float
    polarity: float
    openness: float
    time: float
    emotion: float
    controversy: float | None = None

    def __post_init__(self):
        for name in (*ASPECTS, "controversy"):
            value = getattr(self, name)
            if value is None:
                continue
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value!r}")

    def aspect_vector(self) -> tuple[float, ...]:
        """The five aspect values in canonical order."""
        return tuple(getattr(self, name) for name in ASPECTS)

    def as_dict(self) -> dict[str, float]:
        out = {name: getattr(self, name) for name in ASPECTS}
        if self.controversy is not None:
            out["controversy"] = self.controversy
        return out


def _capitalized_runs(text: str) -> list[str]:
    """Maximal runs of >= 2 adjacent capitalized tokens within a sentence.

    Tokens count as adjacent only when separated by pure whitespace, so
    commas and other punctuation break a run.  A run that opens a sentence
    drops its leading token when that token is a capitalized stopword.
    """
    runs: list[str] = []

    def flush(run: list[str], starts_sentence: bool) -> None:
        if run and starts_sentence and run[0].lower() in _STOPWORDS:
            run = run[1:]
        if len(run) >= 2:
            runs.append(" ".join(run))

    for segment in _SENTENCE_SPLIT_RE.split(text):
        current: list[str] = []
        current_start = 0
        prev_end: int | None = None
        for index, match in enumerate(_WORD_RE.finditer(segment)):
            token = match.group(0)
            capitalized = token[0].isupper()
            contiguous = prev_end is not None and segment[prev_end : match.start()].isspace()
            if capitalized:
                if current and contiguous:
                    current.append(token)
                else:
                    flush(current, current_start == 0)
                    current = [token]
                    current_start = index
            else:
                flush(current, current_start == 0)
                current = []
            prev_end = match.end()
        flush(current, current_start == 0)
    return runs


def extract_actors(debate: Debate, gazetteer: Gazetteer) -> set[str]:
    """Actors seen in a debate: comment authors, gazetteer hits, and name-like
    capitalized runs in the body.  Deduplicated case-insensitively."""
    found: dict[str, str] = {}

    def add(name: str) -> None:
        key = name.casefold()
        if key and key not in found:
            found[key] = name

    for comment in debate.comments:
        author = comment.author.strip()
        if author:
            add(author)

    searchable = "\n".join([debate.title, debate.body, *(c.text for c in debate.comments)])
    for name in gazetteer.names:
        match = re.search(rf"\b{re.escape(name)}\b", searchable, re.IGNORECASE)
        if match:
            add(match.group(0))

    for run in _capitalized_runs(debate.body):
        add(run)

    return set(found.values())


def score_actors(n_actors: int, config: ScorerConfig) -> float:
    """Log-scaled actor count, saturating at the reference count."""
    if n_actors < 0:
        raise ValueError(f"n_actors must be >= 0, got {n_actors}")
    if n_actors == 0:
        return 0.0
    return min(1.0, math.log1p(n_actors) / math.log1p(config.actor_ref_count))


def doc_sentiment(text: str, lexicon: Lexicon) -> float:
    """Mean signed intensity over lexicon-matched tokens; 0 with no matches."""
    values = []
    for token in tokenize_lower(text):
        entry = lexicon.get(token)
        if entry is not None:
            polarity, intensity = entry
            values.append(polarity * intensity)
    if not values:
        return 0.0
    mean = math.fsum(values) / len(values)
    return max(-1.0, min(1.0, mean))


def score_polarization(debate: Debate, lexicon: Lexicon, config: ScorerConfig) -> float:
    """Bimodality of per-comment sentiment camps.

    With ``pos`` and ``neg`` the fractions of comments beyond the sentiment
    threshold on either side, the score is ``4 * pos * neg``: 1 exactly at
    two equal opposing camps, 0 when either camp is empty.
    """
    n = len(debate.comments)
    if n < 2:
        return 0.0
    tau = config.sentiment_threshold
    sentiments = [doc_sentiment(comment.text, lexicon) for comment in debate.comments]
    pos = sum(1 for s in sentiments if s > tau) / n
    neg = sum(1 for s in sentiments if s < -tau) / n
    return 4.0 * (pos * neg)


def score_openness(debates_of_topic: Sequence[Debate], config: ScorerConfig) -> float:
    """Source diversity plus the share of debates with public comments."""
    if not debates_of_topic:
        raise ValueError("debates_of_topic must not be empty")
    distinct_sources = len({debate.source for debate in debates_of_topic})
    public_fraction = sum(1 for d in debates_of_topic if d.comments_public) / len(
        debates_of_topic
    )
    return 0.7 * min(1.0, distinct_sources / config.source_ref_count) + 0.3 * public_fraction


def score_time_persistence(debate: Debate, config: ScorerConfig) -> float:
    """Log-scaled activity span, weighted up by burst days.

    Timestamps bucket into UTC days; a burst is an active day whose volume
    exceeds the mean by ``burst_sigma`` standard deviations of per-active-day
    volumes.  A single-day debate scores 0.
    """
    stamps = [debate.published_at, *(c.created_at for c in debate.comments)]
    days = sorted(ts // SECONDS_PER_DAY for ts in stamps)
    span_days = days[-1] - days[0]
    if span_days <= 0:
        return 0.0
    volumes = [count for _, count in sorted(Counter(days).items())]
    mean = sum(volumes) / len(volumes)
    std = math.sqrt(math.fsum((v - mean) ** 2 for v in volumes) / len(volumes))
    threshold = mean + config.burst_sigma * std
    bursts = sum(1 for v in volumes if v > threshold)
    span_score = min(1.0, math.log1p(span_days) / math.log1p(config.span_ref_days))
    return span_score * (0.5 + 0.5 * min(1.0, bursts / config.burst_ref_count))


def _doc_emotion(text: str, lexicon: Lexicon, gain: float) -> float:
    tokens = tokenize_lower(text)
    if not tokens:
        return 0.0
    total = math.fsum(entry[1] for token in tokens if (entry := lexicon.get(token)) is not None)
    return min(1.0, gain * total / len(tokens))


def score_emotion(debate: Debate, lexicon: Lexicon, config: ScorerConfig) -> float:
    """Mean emotional charge over the body and each comment."""
    docs = [debate.body, *(c.text for c in debate.comments)]
    charges = [_doc_emotion(doc, lexicon, config.emotion_gain) for doc in docs]
    if not charges:
        return 0.0
    return min(1.0, math.fsum(charges) / len(charges))


def score_all(
    debate: Debate,
    resources: Resources,
    config: ScorerConfig | None = None,
    topic_group: Sequence[Debate] | None = None,
) -> AspectScores:
    """Run the five scorers on one debate.

    Openness is computed over ``topic_group`` when given, otherwise over the
    debate alone.  The controversy field is left unset; filling it is the
    model layer's job.
    """
    cfg = config if config is not None else ScorerConfig()
    group = list(topic_group) if topic_group else [debate]
    actors = extract_actors(debate, resources.gazetteer)
    return AspectScores(
        actors=score_actors(len(actors), cfg),
        polarity=score_polarization(debate, resources.lexicon, cfg),
        openness=score_openness(group, cfg),
        time=score_time_persistence(debate, cfg),
        emotion=score_emotion(debate, resources.lexicon, cfg),
    )
