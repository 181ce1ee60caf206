"""tf.idf relevance scoring and candidate ranking.

Sentence score is a weighted sum of three features:

    score = w1 * question_sim + w2 * topic_sim + w3 * subjectivity

with both similarities computed as tf.idf cosines over the topic's own
sentences (each sentence counts as one "document" for idf).
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from .lexicon import Lexicon, subjectivity_score
from .textcorpus import Corpus, Sentence, Token, Topic, tokenize

SparseVector = dict  # token -> positive weight


@dataclass(frozen=True)
class TfIdfModel:
    doc_freq: dict[str, int]
    n_sentences: int

    def idf(self, token: str) -> float:
        df = self.doc_freq.get(token)
        if df is None:
            return math.log(self.n_sentences)
        return math.log(self.n_sentences / df)


@dataclass(frozen=True)
class ScoreWeights:
    w1: float = 1.0
    w2: float = 1.0
    w3: float = 1.0

    def __post_init__(self):
        if min(self.w1, self.w2, self.w3) < 0:
            raise ValueError("score weights must be non-negative")
        if self.w1 + self.w2 + self.w3 <= 0:
            raise ValueError("at least one score weight must be positive")

    @classmethod
    def parse(cls, text: str) -> "ScoreWeights":
        parts = [float(p) for p in text.split(",")]
        if len(parts) != 3:
            raise ValueError(f"expected three comma-separated weights, got {text!r}")
        return cls(*parts)


@dataclass(frozen=True)
class RankedCandidate:
    sentence: Sentence
    score: float
    question_sim: float
    topic_sim: float
    subjectivity: float
    rank: int
    vector: SparseVector = field(default_factory=dict, repr=False, compare=False)


def build_tfidf(sentences: Iterable[Sentence]) -> TfIdfModel:
    df: Counter = Counter()
    n = 0
    for s in sentences:
        n += 1
        df.update(set(s.surfaces))
    if n == 0:
        raise ValueError("cannot build a tf.idf model from zero sentences")
    return TfIdfModel(dict(df), n)


def vectorize(tokens: Iterable[Token], model) -> SparseVector:
    tf = Counter(t.surface for t in tokens)
    vec = {}
    for tok, count in tf.items():
        w = count * model.idf(tok)
        if w > 0:
            vec[tok] = w
    return vec


def cosine(u: SparseVector, v: SparseVector) -> float:
    if not u or not v:
        return 0.0
    if len(u) > len(v):
        u, v = v, u
    dot = sum(w * v[t] for t, w in u.items() if t in v)
    if dot == 0:
        return 0.0
    norm = math.sqrt(sum(w * w for w in u.values())) * math.sqrt(sum(w * w for w in v.values()))
    return min(1.0, dot / norm)


def rank_candidates(topic: Topic, corpus: Corpus, lex: Lexicon,
                    weights: ScoreWeights = ScoreWeights()) -> list[RankedCandidate]:
    """Score every sentence of the topic's documents and sort best-first.

    Ties are broken by document id, then by position in the document.
    """
    sentences = [s for s in corpus.topic_sentences(topic) if s.tokens]
    if not sentences:
        raise ValueError(f"topic {topic.topic_id} has no sentences to rank")
    model = build_tfidf(sentences)
    question_vecs = [vectorize(tokenize(q), model) for q in topic.questions]
    title_vec = vectorize(tokenize(topic.title), model)

    scored = []
    for s in sentences:
        vec = vectorize(s.tokens, model)
        q_sim = max((cosine(vec, q) for q in question_vecs), default=0.0)
        t_sim = cosine(vec, title_vec)
        subj = subjectivity_score(s, lex)
        score = weights.w1 * q_sim + weights.w2 * t_sim + weights.w3 * subj
        scored.append((score, q_sim, t_sim, subj, s, vec))
    scored.sort(key=lambda r: (-r[0], r[4].doc_id, r[4].index))
    return [
        RankedCandidate(s, score, q, t, subj, rank, vec)
        for rank, (score, q, t, subj, s, vec) in enumerate(scored, 1)
    ]
