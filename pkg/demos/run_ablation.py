"""
Relation ablation on the sample corpus
======================================

Build summaries under all eight conditions (rank-order baseline,
schema fill without each relation, schema fill with all of them)
and score them against the model summaries.  The same run is
available as ``discsum ablate``.
"""
from discsum import SAMPLE_CORPUS, build_report, default_lexicon, load_corpus, run_condition_suite

corpus = load_corpus(SAMPLE_CORPUS)
suite = run_condition_suite(corpus, default_lexicon())

for cond, by_topic in suite.items():
    fallbacks = [tid for tid, s in by_topic.items() if s.fallback]
    note = f" (rank-order fallback: {', '.join(fallbacks)})" if fallbacks else ""
    print(f"{cond:<18} {sum(s.word_count for s in by_topic.values()):>5} words{note}")

refs = {t.topic_id: corpus.reference_texts(t) for t in corpus.topics}
print()
print(build_report(suite, refs).render())
