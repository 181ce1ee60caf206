"""Discourse-aware extractive summarization and relation ablation toolkit."""

__version__ = "0.1.0"

from .discourse import TAXONOMY, Relation, RelationSet, relation_distribution, tag_sentence
from .evaluation import build_report, paired_ttest, rouge_n, rouge_su
from .lexicon import Lexicon, default_lexicon, load_lexicon, polarity, subjectivity_score
from .ranker import ScoreWeights, build_tfidf, cosine, rank_candidates, vectorize
from .schema import (
    DEFAULT_SCHEMAS,
    QuestionType,
    Schema,
    Summary,
    classify_question,
    fill_schema,
    matches,
    parse_schema,
    select_schema,
)
from .summarizer import CONDITIONS, PipelineConfig, run_condition_suite, summarize
from .textcorpus import SAMPLE_CORPUS, Corpus, Sentence, Topic, load_corpus, segment_sentences, tokenize

__all__ = [
    "CONDITIONS", "Corpus", "DEFAULT_SCHEMAS", "Lexicon", "PipelineConfig", "QuestionType",
    "Relation", "RelationSet", "SAMPLE_CORPUS", "Schema", "ScoreWeights", "Sentence", "Summary", "TAXONOMY",
    "Topic", "build_report", "build_tfidf", "classify_question", "cosine", "default_lexicon",
    "fill_schema", "load_corpus", "load_lexicon", "matches", "paired_ttest", "parse_schema",
    "polarity", "rank_candidates", "relation_distribution", "rouge_n", "rouge_su",
    "run_condition_suite", "segment_sentences", "select_schema", "subjectivity_score",
    "summarize", "tag_sentence", "tokenize", "vectorize",
]
