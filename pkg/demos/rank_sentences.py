"""
Ranking candidate sentences
===========================

Score every sentence of one topic by similarity to the question,
similarity to the title and subjectivity, and show how the weights
change the order.
"""
from discsum import SAMPLE_CORPUS, ScoreWeights, default_lexicon, load_corpus, rank_candidates

corpus = load_corpus(SAMPLE_CORPUS)
topic = corpus.topic("T01")
lex = default_lexicon()
print(topic.title, "|", topic.questions[0])

for weights in [ScoreWeights(1, 1, 1), ScoreWeights(1, 0, 0), ScoreWeights(0, 0, 1)]:
    print(f"\nweights {weights.w1:g},{weights.w2:g},{weights.w3:g}")
    for c in rank_candidates(topic, corpus, lex, weights)[:4]:
        print(f"  {c.rank:>2} {c.score:.3f} (q={c.question_sim:.2f} t={c.topic_sim:.2f} "
              f"s={c.subjectivity:.2f}) {c.sentence.text[:60]}")
