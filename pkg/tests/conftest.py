from __future__ import annotations

import pytest

from capote import AnnotationSet, Comment, Debate, Gazetteer, Lexicon, QUESTIONS, Resources

# 2020-01-01T00:00:00Z
T0 = 1_577_836_800
DAY = 86_400


def make_comment(text="", author="anon", at=T0, reply_to=None) -> Comment:
    return Comment(author=author, text=text, created_at=at, reply_to=reply_to)


def make_debate(
    debate_id="d1",
    title="",
    body="",
    source="siteA",
    published_at=T0,
    comments=(),
    comments_public=False,
) -> Debate:
    return Debate(
        id=debate_id,
        title=title,
        body=body,
        published_at=published_at,
        source=source,
        comments=tuple(comments),
        comments_public=comments_public,
    )


def make_annotation(worker, article, **answers) -> AnnotationSet:
    full = {question: bool(answers.get(question, False)) for question in QUESTIONS}
    return AnnotationSet(worker_id=worker, article_id=article, answers=full)


@pytest.fixture
def tiny_lexicon() -> Lexicon:
    return Lexicon(
        entries={
            "good": (1, 0.8),
            "great": (1, 0.9),
            "love": (1, 0.6),
            "fine": (1, 0.3),
            "joy": (1, 0.5),
            "bad": (-1, 0.8),
            "awful": (-1, 0.9),
            "hate": (-1, 0.6),
            "terrible": (-1, 0.7),
            "anger": (-1, 0.5),
        }
    )


@pytest.fixture
def tiny_gazetteer() -> Gazetteer:
    return Gazetteer.from_names(["NHS", "United Nations"])


@pytest.fixture
def tiny_resources(tiny_lexicon, tiny_gazetteer) -> Resources:
    return Resources(lexicon=tiny_lexicon, gazetteer=tiny_gazetteer)
