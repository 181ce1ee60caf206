import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from discsum.lexicon import LexiconEntry, lexicon_from_entries, subjectivity_score
from discsum.ranker import ScoreWeights, build_tfidf, cosine, rank_candidates, vectorize
from discsum.textcorpus import load_corpus, make_sentence, tokenize


class FixedIdf:
    def __init__(self, table):
        self.table = table

    def idf(self, token):
        return self.table.get(token, 0.0)


def test_idf_values():
    single = build_tfidf([make_sentence("a b c")])
    assert single.idf("a") == 0.0
    four = build_tfidf([make_sentence(t) for t in ["x a", "x b", "x c", "x d"]])
    assert four.idf("a") == pytest.approx(math.log(4))
    assert four.idf("x") == 0.0
    assert four.idf("unseen") == pytest.approx(math.log(4))


def test_build_tfidf_rejects_empty():
    with pytest.raises(ValueError):
        build_tfidf([])


def test_vectorize():
    assert vectorize([], FixedIdf({})) == {}
    assert vectorize(tokenize("a b"), FixedIdf({})) == {}
    assert vectorize(tokenize("a a b"), FixedIdf({"a": 1.0, "b": 2.0})) == {"a": 2.0, "b": 2.0}


def test_cosine_examples():
    assert cosine({"a": 1.0, "b": 3.0}, {"a": 1.0, "b": 3.0}) == pytest.approx(1.0, abs=1e-12)
    assert cosine({"a": 1.0}, {"b": 1.0}) == 0.0
    assert cosine({"a": 1.0, "b": 1.0}, {"a": 1.0}) == pytest.approx(1 / math.sqrt(2))
    assert cosine({}, {"a": 1.0}) == 0.0


vectors = st.dictionaries(st.sampled_from("abcdef"), st.floats(0.01, 100), min_size=1)


@given(vectors, vectors)
def test_cosine_bounded_and_symmetric(u, v):
    c = cosine(u, v)
    assert 0.0 <= c <= 1.0
    assert c == pytest.approx(cosine(v, u), abs=1e-12)


def test_weights_validation():
    with pytest.raises(ValueError):
        ScoreWeights(0, 0, 0)
    with pytest.raises(ValueError):
        ScoreWeights(-1, 1, 1)
    assert ScoreWeights.parse("1,0.5,2") == ScoreWeights(1, 0.5, 2)


LEX = lexicon_from_entries([
    LexiconEntry("great", "strong", "positive"),
    LexiconEntry("nice", "weak", "positive"),
    LexiconEntry("awful", "strong", "negative"),
])

DOC = ("The camera is great. Battery life is long and the camera is nice. "
       "Why do people like the camera? Shipping was awful and slow. "
       "The manual has ten pages.")


@pytest.fixture
def camera(make_corpus):
    topic = {"topic_id": "T1", "title": "camera", "questions": ["Why do people like the camera?"],
             "documents": ["d1"], "model_summaries": []}
    corpus = load_corpus(make_corpus([topic], {"d1": DOC}))
    return corpus.topics[0], corpus


def test_subjectivity_only_ranking(camera):
    topic, corpus = camera
    ranked = rank_candidates(topic, corpus, LEX, ScoreWeights(0, 0, 1))
    subj = [c.subjectivity for c in ranked]
    assert subj == sorted(subj, reverse=True)
    assert [c.rank for c in ranked] == list(range(1, len(ranked) + 1))


def test_question_copy_ranks_first(camera):
    topic, corpus = camera
    ranked = rank_candidates(topic, corpus, LEX, ScoreWeights(1, 0, 0))
    assert ranked[0].sentence.text == "Why do people like the camera?"
    assert ranked[0].question_sim == pytest.approx(1.0)


def test_hand_computed_scores(make_corpus):
    # two sentences: "good cat" / "dog", title "cat", question "dog"
    topic = {"topic_id": "T", "title": "cat", "questions": ["dog"], "documents": ["d"],
             "model_summaries": []}
    corpus = load_corpus(make_corpus([topic], {"d": "Good cat. Dog."}))
    lex = lexicon_from_entries([LexiconEntry("good", "weak", "positive")])
    ranked = rank_candidates(corpus.topics[0], corpus, lex, ScoreWeights(1, 1, 1))
    # idf = ln 2 for every token; "good cat" vs title "cat": (ln2)^2 / (sqrt2 ln2 * ln2) = 1/sqrt2
    # "good cat": q=0, t=1/sqrt2, subj=0.5/2 ; "dog": q=1, t=0, subj=0
    by_text = {c.sentence.text: c for c in ranked}
    assert by_text["Good cat."].score == pytest.approx(1 / math.sqrt(2) + 0.25, abs=1e-9)
    assert by_text["Dog."].score == pytest.approx(1.0, abs=1e-9)
    assert [c.sentence.text for c in ranked] == ["Dog.", "Good cat."]


def test_ties_follow_source_order(make_corpus):
    topic = {"topic_id": "T", "title": "zzz", "questions": [], "documents": ["b", "a"],
             "model_summaries": []}
    corpus = load_corpus(make_corpus([topic], {"a": "One. Two.", "b": "Three."}))
    ranked = rank_candidates(corpus.topics[0], corpus, LEX, ScoreWeights(1, 1, 1))
    assert [c.sentence.id for c in ranked] == ["a:0", "a:1", "b:0"]


def test_topic_without_sentences(make_corpus):
    topic = {"topic_id": "T", "title": "x", "questions": [], "documents": ["d"],
             "model_summaries": []}
    corpus = load_corpus(make_corpus([topic], {"d": ""}))
    with pytest.raises(ValueError):
        rank_candidates(corpus.topics[0], corpus, LEX)


weights = st.tuples(*[st.sampled_from([0.0, 0.25, 0.5, 1.0, 2.0, 3.0])] * 3).filter(lambda w: sum(w) > 0)


@given(weights, st.sampled_from([0.5, 2.0, 4.0]))
def test_positive_scaling_preserves_order(w, c):
    topic, corpus = _camera_corpus()
    a = rank_candidates(topic, corpus, LEX, ScoreWeights(*w))
    b = rank_candidates(topic, corpus, LEX, ScoreWeights(*(c * x for x in w)))
    assert [x.sentence.id for x in a] == [x.sentence.id for x in b]
    for r in a:
        assert 0 <= r.score <= sum(w) + 1e-12


@given(weights, st.sampled_from([1.0, 2.0, 10.0]))
def test_raising_subjectivity_weight_keeps_most_subjective(w, extra):
    topic, corpus = _camera_corpus()
    a = rank_candidates(topic, corpus, LEX, ScoreWeights(*w))
    b = rank_candidates(topic, corpus, LEX, ScoreWeights(w[0], w[1], w[2] + extra))
    top = max(a, key=lambda r: (r.subjectivity, -r.rank))
    rank_b = next(r.rank for r in b if r.sentence.id == top.sentence.id)
    assert rank_b <= top.rank


_CACHE = {}


def _camera_corpus():
    if "c" not in _CACHE:
        import tempfile

        from conftest import write_corpus

        root = tempfile.mkdtemp()
        topic = {"topic_id": "T1", "title": "camera", "questions": ["Why do people like the camera?"],
                 "documents": ["d1"], "model_summaries": []}
        corpus = load_corpus(write_corpus(root, [topic], {"d1": DOC}, {}))
        _CACHE["c"] = (corpus.topics[0], corpus)
    return _CACHE["c"]


def test_subjectivity_matches_lexicon_module(camera):
    topic, corpus = camera
    for r in rank_candidates(topic, corpus, LEX):
        assert r.subjectivity == subjectivity_score(r.sentence, LEX)
