"""Rule-based, multi-label tagging of intra-sentential discourse relations.

Six relation classes are detected independently on each sentence:
illustration, contingency, comparison, attributive, topic-opinion and
attribution.  Temporal and antithesis cues are recorded as ``OTHER``;
a sentence with no hit at all is tagged ``NONE``.

Detection is surface-cue based.  Every hit carries an :class:`Evidence`
span pointing into the sentence text, and each matched cue counts as one
instance of its relation, so a sentence may hold several instances of
the same kind.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

from .lexicon import Lexicon, subjectivity_score
from .textcorpus import Sentence, tokenize


class Relation(str, Enum):
    ILLUSTRATION = "illustration"
    CONTINGENCY = "contingency"
    COMPARISON = "comparison"
    ATTRIBUTIVE = "attributive"
    TOPIC_OPINION = "topic-opinion"
    ATTRIBUTION = "attribution"
    OTHER = "other"
    NONE = "none"

    @property
    def label(self) -> str:
        return self.value.capitalize()

    @classmethod
    def parse(cls, name: str) -> "Relation":
        key = name.strip().lower().replace("_", "-")
        if key == "topicopinion":
            key = "topic-opinion"
        return cls(key)


# order used for reports and schema alphabets
TAXONOMY = (
    Relation.ILLUSTRATION,
    Relation.CONTINGENCY,
    Relation.COMPARISON,
    Relation.ATTRIBUTIVE,
    Relation.TOPIC_OPINION,
    Relation.ATTRIBUTION,
)


@dataclass(frozen=True)
class Evidence:
    kind: Relation
    cue: str
    start: int
    end: int


@dataclass(frozen=True)
class RelationSet:
    counts: dict[Relation, int]
    evidence: tuple[Evidence, ...] = ()

    @classmethod
    def from_evidence(cls, evidence: Iterable[Evidence]) -> "RelationSet":
        evidence = tuple(sorted(evidence, key=lambda e: (e.start, e.end, TAXONOMY_INDEX.get(e.kind, 9))))
        if not evidence:
            return cls({Relation.NONE: 1}, ())
        counts = Counter(e.kind for e in evidence)
        ordered = {k: counts[k] for k in (*TAXONOMY, Relation.OTHER) if k in counts}
        return cls(ordered, evidence)

    @property
    def kinds(self) -> frozenset[Relation]:
        """Taxonomy relations present (``OTHER``/``NONE`` excluded)."""
        return frozenset(k for k in self.counts if k in TAXONOMY_INDEX)

    @property
    def is_none(self) -> bool:
        return Relation.NONE in self.counts

    @property
    def has_other(self) -> bool:
        return Relation.OTHER in self.counts

    def count(self, kind: Relation) -> int:
        return self.counts.get(kind, 0)

    def __contains__(self, kind) -> bool:
        return kind in self.counts

    def to_json(self) -> list[dict]:
        rows = []
        for kind, n in self.counts.items():
            rows.append({
                "kind": kind.value,
                "count": n,
                "evidence": [
                    {"cue": e.cue, "start": e.start, "end": e.end}
                    for e in self.evidence if e.kind is kind
                ],
            })
        return rows

    @classmethod
    def from_json(cls, rows: list[dict]) -> "RelationSet":
        counts = {}
        evidence = []
        for row in rows:
            kind = Relation(row["kind"])
            counts[kind] = int(row["count"])
            for ev in row.get("evidence", []):
                evidence.append(Evidence(kind, ev["cue"], ev["start"], ev["end"]))
        return cls(counts, tuple(evidence))


TAXONOMY_INDEX = {k: i for i, k in enumerate(TAXONOMY)}


# --------------------------------------------------------------------------
# word-level view of a sentence

_WORD_RE = re.compile(r"[A-Za-z0-9]+")
_CLAUSE_PUNCT = set(",;:()[]\"\u201c\u201d\u2014\u2013")


@dataclass
class _Words:
    text: str
    lower: list[str] = field(default_factory=list)
    spans: list[tuple[int, int]] = field(default_factory=list)

    @classmethod
    def of(cls, text: str) -> "_Words":
        w = cls(text)
        for m in _WORD_RE.finditer(text):
            w.lower.append(m.group().lower())
            w.spans.append(m.span())
        return w

    def __len__(self):
        return len(self.lower)

    def gap_before(self, i: int) -> str:
        start = self.spans[i - 1][1] if i > 0 else 0
        return self.text[start:self.spans[i][0]]

    def clause_initial(self, i: int) -> bool:
        return i == 0 or any(c in _CLAUSE_PUNCT for c in self.gap_before(i))

    def after_apostrophe(self, i: int) -> bool:
        gap = self.gap_before(i)
        return i > 0 and gap in ("'", "’")

    def capitalized(self, i: int) -> bool:
        s, _ = self.spans[i]
        return self.text[s].isupper()

    def evidence(self, kind: Relation, i: int, j: int) -> Evidence:
        """Evidence spanning words i..j inclusive."""
        s, e = self.spans[i][0], self.spans[j][1]
        return Evidence(kind, self.text[s:e], s, e)


def _phrase_regex(phrases: Iterable[str]) -> re.Pattern:
    alts = sorted(phrases, key=len, reverse=True)
    body = "|".join(r"\s+".join(re.escape(p) for p in ph.split()) for ph in alts)
    return re.compile(rf"(?<![A-Za-z0-9])(?:{body})(?![A-Za-z0-9])", re.IGNORECASE)


def _phrase_hits(kind: Relation, pattern: re.Pattern, text: str) -> list[Evidence]:
    return [Evidence(kind, m.group(), m.start(), m.end()) for m in pattern.finditer(text)]


def _inflections(lemma: str) -> set[str]:
    forms = {lemma, lemma + "s", lemma + "ed", lemma + "d", lemma + "ing"}
    if lemma.endswith("e"):
        forms.add(lemma[:-1] + "ing")
    return forms


# --------------------------------------------------------------------------
# cue inventories

CONTINGENCY_CUES = (
    "because", "if", "unless", "so that", "therefore", "thus", "hence",
    "consequently", "as a result", "due to", "in order to", "provided that",
)
_MONTHS = ("january february march april may june july august september october "
           "november december jan feb mar apr jun jul aug sep sept oct nov dec").split()
_WEEKDAYS = "monday tuesday wednesday thursday friday saturday sunday".split()
DATE_WORDS = frozenset(_MONTHS + _WEEKDAYS + ["yesterday", "today", "then", "last"])

COMPARISON_CUES = ("compared to", "compared with", "whereas", "in contrast", "unlike")
PREFERENCE_WORDS = frozenset(
    _inflections("prefer") | {"preferred", "preferring", "preference", "preferences", "preferable"}
)
_NOT_COMPARATIVE = frozenset(
    "other another over never ever under after whether either neither rather "
    "however water number order per her".split()
)
_AS_AS_EXCLUDED = frozenset({"well", "soon", "long"})

ILLUSTRATION_CUES = (
    "for example", "for instance", "such as", "e.g.", "including",
    "in addition", "also", "moreover", "furthermore",
)

REPORTING_VERBS = ("say", "declare", "announce", "state", "claim", "report",
                   "tell", "mention", "argue", "agree", "insist", "add")
REPORTING_FORMS = frozenset().union(*(_inflections(v) for v in REPORTING_VERBS)) | {
    "said", "told", "saying", "telling", "adding", "stating", "arguing",
}
_OBJECT_PRONOUNS = frozenset("me him her us them you".split())
_SUBJECT_WORDS = frozenset("i you he she it we they there this these those".split())

FEATURE_VERBS = frozenset(
    _inflections("provide") | _inflections("offer") | _inflections("feature") | _inflections("include")
) - {"including", "provided"}
COPULAS = frozenset({"is", "are", "was", "were"})
POSSESSIVE = frozenset({"has", "have"})
_ADVERBS = frozenset("very really so not always also quite too still never just even "
                     "usually often rather pretty truly extremely".split())
_IRREGULAR_PARTICIPLES = frozenset(
    "been made done given taken seen known shown written built sold told said found "
    "left gone born got gotten become come run put set bought brought thought kept".split()
)
_PREPOSITIONS = frozenset(
    "in on at to for from with by of about into onto over under than that because "
    "if when where while as like".split()
)
_NON_SUBJECTS = frozenset("there here what which who why how where when whether".split())
_FUNCTION_CAPS = frozenset(
    "the a an this that these those it its they we you he she i my our their his her "
    "there here what why how when if".split()
)

OTHER_CUES = ("when", "after", "before", "until", "meanwhile", "although", "even though", "despite")

_VERBS = frozenset(
    "am is are was were be been being have has had do does did will would can could "
    "shall should may might must like likes love loves hate hates want wants need needs "
    "think thinks agree agrees know knows get gets got make makes made go goes went "
    "take takes took see sees saw say says said find finds found give gives gave use "
    "uses work works seem seems look looks feel feels keep keeps let lets put puts come "
    "comes came become became provide provides offer offers include includes buy buys "
    "bought run runs ran try tries prefer prefers enjoy enjoys help helps".split()
)
_CONTRACTION_AUX = frozenset({"s", "d", "ll", "re", "ve", "m", "t"})

_contingency_re = _phrase_regex(CONTINGENCY_CUES)
_comparison_re = _phrase_regex(COMPARISON_CUES)
_illustration_re = _phrase_regex(ILLUSTRATION_CUES)
_other_re = _phrase_regex(OTHER_CUES)


def _is_participle(word: str) -> bool:
    return (len(word) > 4 and word.endswith(("ed", "en"))) or word in _IRREGULAR_PARTICIPLES


def _verb_like(words: _Words, i: int) -> bool:
    w = words.lower[i]
    if words.after_apostrophe(i) and w in _CONTRACTION_AUX:
        return True
    return w in _VERBS or (len(w) > 4 and w.endswith("ed"))


# --------------------------------------------------------------------------
# detectors

def detect_contingency(words: _Words) -> list[Evidence]:
    hits = _phrase_hits(Relation.CONTINGENCY, _contingency_re, words.text)
    for i, w in enumerate(words.lower):
        if w == "since":
            nxt = words.lower[i + 1] if i + 1 < len(words) else ""
            if not (nxt in DATE_WORDS or nxt.isdigit()):
                hits.append(words.evidence(Relation.CONTINGENCY, i, i))
    return hits


def detect_comparison(words: _Words) -> list[Evidence]:
    hits = _phrase_hits(Relation.COMPARISON, _comparison_re, words.text)
    lw = words.lower
    for i, w in enumerate(lw):
        if w == "than" and i > 0:
            prev = lw[i - 1]
            if prev in ("better", "worse", "rather") or (
                len(prev) > 3 and prev.endswith("er") and prev not in _NOT_COMPARATIVE
            ):
                hits.append(words.evidence(Relation.COMPARISON, i - 1, i))
                continue
            for j in range(i - 1, max(-1, i - 6), -1):
                if lw[j] in ("more", "less", "fewer"):
                    hits.append(words.evidence(Relation.COMPARISON, j, i))
                    break
                if words.clause_initial(j):
                    break
        elif w == "as" and i + 2 < len(lw):
            for gap in (1, 2):
                k = i + gap + 1
                if k < len(lw) and lw[k] == "as" and lw[i + 1] not in _AS_AS_EXCLUDED:
                    hits.append(words.evidence(Relation.COMPARISON, i, k))
                    break
        elif w in PREFERENCE_WORDS:
            hits.append(words.evidence(Relation.COMPARISON, i, i))
        elif w == "while" and words.clause_initial(i):
            hits.append(words.evidence(Relation.COMPARISON, i, i))
    return hits


def _clause_joining_and(words: _Words) -> list[Evidence]:
    hits = []
    lw = words.lower
    left_start = 0
    for i, w in enumerate(lw):
        if words.clause_initial(i):
            left_start = i
        if w != "and":
            continue
        left = range(left_start, i)
        right = []
        for j in range(i + 1, min(len(lw), i + 5)):
            if lw[j] == "and" or words.clause_initial(j):
                break
            right.append(j)
        if any(_verb_like(words, j) for j in left) and any(_verb_like(words, j) for j in right):
            hits.append(words.evidence(Relation.ILLUSTRATION, i, i))
        left_start = i + 1
    return hits


def _list_commas(words: _Words) -> list[Evidence]:
    text = words.text
    commas = [m.start() for m in re.finditer(",", text)]
    if len(commas) < 2:
        return []
    # one list per sentence: the first comma pair enclosing a short verbless group
    for a, b in zip(commas, commas[1:]):
        seg = [i for i, (s, e) in enumerate(words.spans) if a < s and e <= b]
        if 0 < len(seg) <= 3 and not any(_verb_like(words, i) for i in seg):
            return [Evidence(Relation.ILLUSTRATION, text[a:b + 1], a, b + 1)]
    return []


def detect_illustration(words: _Words) -> list[Evidence]:
    hits = _phrase_hits(Relation.ILLUSTRATION, _illustration_re, words.text)
    hits += _clause_joining_and(words)
    hits += _list_commas(words)
    return hits


def detect_attribution(words: _Words) -> list[Evidence]:
    hits = []
    lw = words.lower
    text = words.text
    if len(lw) >= 2 and lw[0] == "according" and lw[1] == "to":
        hits.append(words.evidence(Relation.ATTRIBUTION, 0, 1))
    for i, w in enumerate(lw):
        if w not in REPORTING_FORMS:
            continue
        j = i + 1
        if j < len(lw) and lw[j] in _OBJECT_PRONOUNS:
            j += 1
        after = text[words.spans[i][1]:words.spans[j][0]] if j < len(lw) else text[words.spans[i][1]:]
        if j < len(lw) and (lw[j] == "that" or lw[j] in _SUBJECT_WORDS) and not any(
            c in ",;." for c in after
        ):
            hits.append(words.evidence(Relation.ATTRIBUTION, i, j))
        elif re.match(r"\s*[:,]?\s*[\"“]", after):
            hits.append(words.evidence(Relation.ATTRIBUTION, i, i))
        elif re.search(r"[\"”]\s*(?:[A-Za-z]+\s+){0,3}$", text[:words.spans[i][0]]):
            hits.append(words.evidence(Relation.ATTRIBUTION, i, i))
    return hits


def _skip_adverbs(lw: list[str], j: int) -> int:
    while j < len(lw) and lw[j] in _ADVERBS:
        j += 1
    return j


def _has_subject(words: _Words, i: int) -> bool:
    return i > 0 and not words.clause_initial(i) and words.lower[i - 1] not in _NON_SUBJECTS


def detect_attributive(words: _Words, topic_terms: frozenset[str]) -> list[Evidence]:
    hits = []
    lw = words.lower
    for i, w in enumerate(lw):
        if w in COPULAS or w in POSSESSIVE:
            if not _has_subject(words, i):
                continue
            j = _skip_adverbs(lw, i + 1)
            if j >= len(lw):
                continue
            nxt = lw[j]
            if nxt.endswith("ing") or _is_participle(nxt) or nxt in _PREPOSITIONS:
                continue
            if w in POSSESSIVE and _verb_like(words, j):
                continue
            hits.append(words.evidence(Relation.ATTRIBUTIVE, i - 1, j))
        elif w in ("make", "makes") and i + 1 < len(lw) and lw[i + 1] == "sure":
            if _entity_subject(words, i, topic_terms):
                hits.append(words.evidence(Relation.ATTRIBUTIVE, i, i + 1))
        elif w in FEATURE_VERBS:
            if _entity_subject(words, i, topic_terms):
                hits.append(words.evidence(Relation.ATTRIBUTIVE, i, i))
    return hits


def _entity_subject(words: _Words, i: int, topic_terms: frozenset[str]) -> bool:
    for j in range(i - 1, max(-1, i - 4), -1):
        w = words.lower[j]
        if w in topic_terms:
            return True
        if words.capitalized(j) and w not in _FUNCTION_CAPS:
            return True
        if words.clause_initial(j):
            break
    return False


def detect_topic_opinion(words: _Words, sentence: Sentence, topic_terms: frozenset[str],
                         lex: Lexicon, attribution: list[Evidence]) -> list[Evidence]:
    if not sentence.tokens or not topic_terms:
        return []
    if not topic_terms.intersection(sentence.surfaces):
        return []
    if subjectivity_score(sentence, lex) < 0.1:
        return []
    # clues inside a reported-speech clause belong to the attribution, not to the writer
    covered_from = min((e.start for e in attribution), default=len(words.text))
    for i, w in enumerate(words.lower):
        if lex.get(w) is not None and words.spans[i][0] < covered_from:
            return [words.evidence(Relation.TOPIC_OPINION, i, i)]
    return []


def detect_other(words: _Words) -> list[Evidence]:
    hits = _phrase_hits(Relation.OTHER, _other_re, words.text)
    for i, w in enumerate(words.lower):
        if w == "then" and words.clause_initial(i):
            hits.append(words.evidence(Relation.OTHER, i, i))
        elif w == "since":
            nxt = words.lower[i + 1] if i + 1 < len(words) else ""
            if nxt in DATE_WORDS or nxt.isdigit():
                hits.append(words.evidence(Relation.OTHER, i, i))
    return hits


def tag_sentence(sentence: Sentence, topic_terms: Iterable[str], lex: Lexicon) -> RelationSet:
    """Tag one sentence with every relation whose cues it contains."""
    terms = frozenset(t.lower() for t in topic_terms)
    words = _Words.of(sentence.text)
    attribution = detect_attribution(words)
    evidence = (
        detect_illustration(words)
        + detect_contingency(words)
        + detect_comparison(words)
        + detect_attributive(words, terms)
        + detect_topic_opinion(words, sentence, terms, lex, attribution)
        + attribution
        + detect_other(words)
    )
    return RelationSet.from_evidence(evidence)


STOPWORDS = frozenset(
    "a an the and or of to in on for with about at by from is are was were be do does did "
    "what why how who which when where people like think feel s".split()
)


def topic_terms_for(title: str) -> frozenset[str]:
    return frozenset(t.surface for t in tokenize(title) if t.surface not in STOPWORDS)


# --------------------------------------------------------------------------
# distribution statistics

REPORT_ROWS = (*TAXONOMY, Relation.OTHER, Relation.NONE)


@dataclass(frozen=True)
class DistributionReport:
    n_sentences: int
    percentages: dict[Relation, float]

    def __getitem__(self, kind: Relation) -> float:
        return self.percentages[kind]

    def render(self, title: str = "Distribution of discourse relations") -> str:
        lines = [title, f"{'Relation':<16}{'%':>8}", "-" * 24]
        for kind in REPORT_ROWS:
            name = kind.label if kind in TAXONOMY_INDEX else kind.value
            lines.append(f"{name:<16}{self.percentages[kind]:>7.1f}%")
        lines.append(f"({self.n_sentences} sentences)")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "n_sentences": self.n_sentences,
            "percentages": {k.value: v for k, v in self.percentages.items()},
        }


def relation_distribution(tagged: Iterable) -> DistributionReport:
    """Percentage of sentences carrying each relation.

    ``tagged`` holds ``(sentence, RelationSet)`` pairs (bare RelationSets are
    accepted too).  Rows are not exclusive, so they may sum past 100.
    """
    hits = Counter()
    n = 0
    for item in tagged:
        rs = item[1] if isinstance(item, tuple) else item
        n += 1
        for kind in rs.kinds:
            hits[kind] += 1
        if rs.has_other:
            hits[Relation.OTHER] += 1
        elif not rs.kinds:
            hits[Relation.NONE] += 1
    if n == 0:
        raise ValueError("cannot compute a distribution over zero sentences")
    return DistributionReport(n, {k: 100.0 * hits[k] / n for k in REPORT_ROWS})
