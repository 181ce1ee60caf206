"""End-to-end summarization and the relation-ablation condition suite."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace

from .discourse import TAXONOMY, Relation, RelationSet, tag_sentence, topic_terms_for
from .lexicon import Lexicon
from .ranker import RankedCandidate, ScoreWeights, cosine, rank_candidates
from .schema import (
    DEFAULT_SCHEMAS,
    QuestionType,
    Schema,
    SchemaUnsatisfiable,
    Summary,
    classify_question,
    fill_schema,
    select_schema,
)
from .textcorpus import Corpus, Topic

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class PipelineConfig:
    weights: ScoreWeights = field(default_factory=ScoreWeights)
    budget_words: int = 250
    excluded_relation: Relation | None = None
    use_schemata: bool = True
    redundancy_threshold: float = 0.95
    schemas: tuple[Schema, ...] = DEFAULT_SCHEMAS

    def __post_init__(self):
        if self.budget_words < 1:
            raise ValueError("budget_words must be at least 1")
        if not 0 < self.redundancy_threshold <= 1:
            raise ValueError("redundancy_threshold must lie in (0, 1]")
        if self.excluded_relation is not None and self.excluded_relation not in TAXONOMY:
            raise ValueError(f"cannot exclude {self.excluded_relation.value!r}")


@dataclass(frozen=True)
class Condition:
    name: str
    label: str
    use_schemata: bool
    excluded: Relation | None = None


BASELINE = Condition("baseline", "Baseline", False)
ALL_RELATIONS = Condition("all-relations", "with all Relations", True)
CONDITIONS = (
    BASELINE,
    *(Condition(f"wo-{k.value}", f"w/o {k.label}", True, k) for k in TAXONOMY),
    ALL_RELATIONS,
)


@dataclass(frozen=True)
class PreparedTopic:
    """Ranked, tagged and de-duplicated candidates for one topic."""
    topic: Topic
    candidates: tuple[RankedCandidate, ...]
    tags: dict[str, RelationSet]
    question_type: QuestionType
    n_duplicates: int = 0


def question_type_of(topic: Topic) -> QuestionType:
    # multi-question topics are summarized once, driven by their first question
    return classify_question(topic.questions[0]) if topic.questions else QuestionType.OTHER


def tag_topic(topic: Topic, corpus: Corpus, lex: Lexicon) -> dict[str, RelationSet]:
    terms = topic_terms_for(topic.title)
    return {s.id: tag_sentence(s, terms, lex) for s in corpus.topic_sentences(topic)}


def drop_near_duplicates(ranked, threshold: float):
    kept: list[RankedCandidate] = []
    for cand in ranked:
        if any(cosine(cand.vector, k.vector) >= threshold for k in kept):
            continue
        kept.append(cand)
    return kept


def prepare_topic(topic: Topic, corpus: Corpus, lex: Lexicon, cfg: PipelineConfig) -> PreparedTopic:
    ranked = rank_candidates(topic, corpus, lex, cfg.weights)
    tags = tag_topic(topic, corpus, lex)
    kept = drop_near_duplicates(ranked, cfg.redundancy_threshold)
    return PreparedTopic(topic, tuple(kept), tags, question_type_of(topic), len(ranked) - len(kept))


def truncate_ranked(candidates, budget_words: int, topic_id: str = "") -> Summary:
    """Rank-order summary; a sentence that would overflow the budget is skipped."""
    chosen = []
    words = 0
    for c in candidates:
        wc = c.sentence.word_count
        if words + wc <= budget_words:
            chosen.append(c.sentence)
            words += wc
    return Summary(topic_id, tuple(chosen), ("rank-order",) * len(chosen))


def compose(prep: PreparedTopic, cfg: PipelineConfig) -> Summary:
    topic_id = prep.topic.topic_id
    excluded = cfg.excluded_relation
    pool = [
        c for c in prep.candidates
        if excluded is None or excluded not in prep.tags[c.sentence.id].kinds
    ]
    if not pool:
        return Summary(topic_id, (), (), warnings=("empty candidate pool",))
    if not cfg.use_schemata:
        return truncate_ranked(pool, cfg.budget_words, topic_id)
    schema = select_schema(prep.question_type, cfg.schemas)
    try:
        return fill_schema(schema, pool, prep.tags, cfg.budget_words, topic_id)
    except SchemaUnsatisfiable:
        log.info("topic %s: schema %r unsatisfiable, using rank order", topic_id, schema.name)
        base = truncate_ranked(pool, cfg.budget_words, topic_id)
        return replace(base, schema_name=schema.name, fallback=True,
                       warnings=(f"schema {schema.name} unsatisfiable; rank-order fallback",))


def summarize(topic: Topic, corpus: Corpus, lex: Lexicon, cfg: PipelineConfig = PipelineConfig()) -> Summary:
    """Rank, tag, filter and compose one topic's summary."""
    return compose(prepare_topic(topic, corpus, lex, cfg), cfg)


def run_condition_suite(corpus: Corpus, lex: Lexicon, cfg: PipelineConfig = PipelineConfig()):
    """Summaries for every ablation condition: ``{condition: {topic_id: Summary}}``.

    Conditions are the rank-order baseline, one schema-filled run without
    each relation, and the schema-filled run with all relations.  A topic
    that fails is recorded as an empty summary with a warning.
    """
    if not corpus.topics:
        raise ValueError("corpus has no topics")
    suite = {c.name: {} for c in CONDITIONS}
    for topic in corpus.topics:
        try:
            prep = prepare_topic(topic, corpus, lex, cfg)
        except Exception as exc:
            log.warning("topic %s failed: %s", topic.topic_id, exc)
            for c in CONDITIONS:
                suite[c.name][topic.topic_id] = Summary(topic.topic_id, (), (), warnings=(f"failed: {exc}",))
            continue
        for c in CONDITIONS:
            ccfg = replace(cfg, use_schemata=c.use_schemata, excluded_relation=c.excluded)
            suite[c.name][topic.topic_id] = compose(prep, ccfg)
    return suite
