"""
Filling a discourse schema
==========================

Parse a schema, check which relation sequences it accepts, and fill
it from ranked sentences under a word budget.
"""
from discsum import SAMPLE_CORPUS, default_lexicon, load_corpus, parse_schema
from discsum.discourse import Relation as R
from discsum.schema import classify_question, fill_schema, matches, select_schema
from discsum.summarizer import PipelineConfig, prepare_topic

schema = parse_schema("(topic-opinion/attribution)+ (contingency/comparison)* (attributive)*")
for slot in schema.slots:
    print(sorted(k.value for k in slot.alternatives), slot.quantifier.value)

# the schema reads like a regular expression over relation kinds
print(matches(schema, [R.ATTRIBUTION, R.COMPARISON, R.ATTRIBUTIVE]))
print(matches(schema, [R.CONTINGENCY]))

# question type picks the schema
corpus = load_corpus(SAMPLE_CORPUS)
topic = corpus.topic("T01")
qtype = classify_question(topic.questions[0])
print(topic.questions[0], "->", qtype.value, "->", select_schema(qtype).expression)

# mandatory slots get their best sentence first, then slots fill greedily
prep = prepare_topic(topic, corpus, default_lexicon(), PipelineConfig())
summary = fill_schema(select_schema(qtype), prep.candidates, prep.tags, 80, topic.topic_id)
for sent, slot in zip(summary.sentences, summary.provenance):
    kinds = sorted(k.value for k in prep.tags[sent.id].kinds)
    print(f"  slot {slot} {kinds} {sent.text}")
print(summary.word_count, "words")
