"""
Tagging sentences with discourse relations
==========================================

Tag a few sentences, look at the evidence behind each tag, then
count how often each relation shows up in the bundled sample corpus.
"""
from discsum import SAMPLE_CORPUS, default_lexicon, load_corpus, relation_distribution, tag_sentence
from discsum.discourse import topic_terms_for
from discsum.summarizer import tag_topic
from discsum.textcorpus import make_sentence

lex = default_lexicon()

# every hit carries the cue text and its character span
for text, terms in [
    ("The meat is good because they slice it right in front of you.", {"meat"}),
    ("Cage is a wonderfully versatile actor.", {"cage"}),
    ("Reviewers said that the new lens is sharper than the old one.", {"lens"}),
    ("Starbucks has contributed to the popularity of good tasting coffee", {"starbucks"}),
]:
    rs = tag_sentence(make_sentence(text), terms, lex)
    print(text)
    for ev in rs.evidence:
        print(f"    {ev.kind.value:<14} {ev.cue!r} at {ev.start}:{ev.end}")
    if rs.is_none:
        print("    (no relation)")

# topic terms come from the title, minus function words
print(sorted(topic_terms_for("Why do people like Picasa?")))

# relation distribution over every source sentence of the sample corpus
corpus = load_corpus(SAMPLE_CORPUS)
tagged = []
for topic in corpus.topics:
    tagged.extend(tag_topic(topic, corpus, lex).values())
print()
print(relation_distribution(tagged).render())
