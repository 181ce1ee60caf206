"""Discourse schemata: parsing, matching, selection and slot filling.

A schema is a sequence of slots written in a small notation::

    (topic-opinion/attribution)+ (contingency/comparison)* (attributive)*

``/`` separates alternatives, ``{ }`` marks an optional item, ``*`` allows
zero or more repetitions and ``+`` one or more.  Read as a regular
expression over relation kinds, a schema says which discourse relations a
summary's sentences should carry and in which order.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Sequence

from .discourse import TAXONOMY, Relation, RelationSet
from .ranker import RankedCandidate
from .textcorpus import Sentence

INF = math.inf


class Quantifier(str, Enum):
    ONE = "one"
    OPTIONAL = "optional"
    STAR = "star"
    PLUS = "plus"

    @property
    def bounds(self) -> tuple[int, float]:
        return _BOUNDS[self]

    @property
    def mandatory(self) -> bool:
        return self.bounds[0] > 0

    @classmethod
    def from_bounds(cls, lo: int, hi: float) -> "Quantifier":
        for q, b in _BOUNDS.items():
            if b == (lo, hi):
                return q
        raise ValueError(f"no quantifier for bounds {(lo, hi)}")


_BOUNDS = {
    Quantifier.ONE: (1, 1),
    Quantifier.OPTIONAL: (0, 1),
    Quantifier.STAR: (0, INF),
    Quantifier.PLUS: (1, INF),
}


class QuestionType(str, Enum):
    REASON = "reason"
    OPINION_ATTRIBUTE = "opinion-attribute"
    SUGGESTION = "suggestion"
    OTHER = "other"

    @classmethod
    def parse(cls, name: str) -> "QuestionType":
        key = name.strip().lower().replace("_", "-")
        aliases = {"opinionattribute": "opinion-attribute"}
        return cls(aliases.get(key, key))


class SchemaParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class SchemaConfigError(Exception):
    pass


class SchemaUnsatisfiable(Exception):
    """No admissible fill exists for a mandatory slot."""


@dataclass(frozen=True)
class Slot:
    alternatives: frozenset[Relation]
    quantifier: Quantifier = Quantifier.ONE

    def accepts(self, kinds: Iterable[Relation]) -> bool:
        return not self.alternatives.isdisjoint(kinds)

    def __str__(self):
        body = "/".join(k.value for k in TAXONOMY if k in self.alternatives)
        suffix = {Quantifier.ONE: "", Quantifier.STAR: "*", Quantifier.PLUS: "+"}
        if self.quantifier is Quantifier.OPTIONAL:
            return "{(" + body + ")}"
        return f"({body}){suffix[self.quantifier]}"


@dataclass(frozen=True)
class Schema:
    name: str
    question_type: QuestionType
    slots: tuple[Slot, ...]

    def __post_init__(self):
        if not self.slots:
            raise ValueError("a schema needs at least one slot")

    @property
    def expression(self) -> str:
        return " ".join(str(s) for s in self.slots)


# --------------------------------------------------------------------------
# parsing

_REL_NAMES = {k.value: k for k in TAXONOMY}


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.pos = 0

    def skip(self):
        while self.pos < len(self.src) and self.src[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.src[self.pos] if self.pos < len(self.src) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            found = self.peek() or "end of input"
            raise SchemaParseError(f"expected {ch!r}, found {found!r}", self.pos)
        self.pos += 1

    def relation(self) -> Relation:
        self.skip()
        start = self.pos
        while self.pos < len(self.src) and (self.src[self.pos].isalnum() or self.src[self.pos] in "-_"):
            self.pos += 1
        name = self.src[start:self.pos]
        if not name:
            found = self.src[start] if start < len(self.src) else "end of input"
            raise SchemaParseError(f"expected a relation name, found {found!r}", start)
        kind = _REL_NAMES.get(name.lower())
        if kind is None:
            raise SchemaParseError(f"unknown relation {name!r}", start)
        return kind

    def group(self) -> tuple[frozenset[Relation], tuple[int, float]]:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            alts = {self.relation()}
            while self.peek() == "/":
                self.pos += 1
                alts.add(self.relation())
            self.expect(")")
            return frozenset(alts), (1, 1)
        if ch == "{":
            self.pos += 1
            alts, (lo, hi) = self.term()
            self.expect("}")
            return alts, (0, hi)
        if ch in ("*", "+"):
            raise SchemaParseError(f"dangling quantifier {ch!r}", self.pos)
        if ch in (")", "}", "/"):
            raise SchemaParseError(f"unexpected {ch!r}", self.pos)
        return frozenset({self.relation()}), (1, 1)

    def term(self) -> tuple[frozenset[Relation], tuple[int, float]]:
        alts, (lo, hi) = self.group()
        ch = self.peek()
        if ch == "*":
            self.pos += 1
            lo, hi = 0, INF
        elif ch == "+":
            self.pos += 1
            hi = INF
        return alts, (lo, hi)

    def schema(self) -> list[Slot]:
        slots = []
        while self.peek():
            alts, bounds = self.term()
            slots.append(Slot(alts, Quantifier.from_bounds(*bounds)))
        if not slots:
            raise SchemaParseError("empty schema", self.pos)
        return slots


def parse_schema(src: str, name: str = "", question_type: QuestionType = QuestionType.OTHER) -> Schema:
    """Parse the schema notation into a :class:`Schema`.

    >>> parse_schema("{comparison}").slots[0].quantifier
    <Quantifier.OPTIONAL: 'optional'>
    """
    return Schema(name or src, question_type, tuple(_Parser(src).schema()))


def load_schemas(path: str | Path) -> list[Schema]:
    """Read ``name<TAB>question_type<TAB>expression`` lines."""
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise SchemaConfigError(f"cannot read schema file {path}: {exc}") from exc
    out = []
    for lineno, line in enumerate(lines, 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise SchemaConfigError(f"{path}:{lineno}: expected 3 tab-separated fields")
        name, qtype, expr = (p.strip() for p in parts)
        try:
            out.append(parse_schema(expr, name, QuestionType.parse(qtype)))
        except ValueError as exc:
            raise SchemaConfigError(f"{path}:{lineno}: {exc}") from exc
    return out


DEFAULT_SCHEMAS = (
    parse_schema("(topic-opinion/attribution)+ (contingency/comparison)* (attributive)*",
                 "reason", QuestionType.REASON),
    parse_schema("(topic-opinion/attribution)+ (attributive)* (illustration)*",
                 "opinion-attribute", QuestionType.OPINION_ATTRIBUTE),
    parse_schema("(contingency)+ (comparison/illustration)*",
                 "suggestion", QuestionType.SUGGESTION),
    parse_schema("(illustration/contingency/comparison/attributive/topic-opinion/attribution)+",
                 "other", QuestionType.OTHER),
)


# --------------------------------------------------------------------------
# matching

def matches(schema: Schema, kinds: Sequence[Relation]) -> bool:
    """True if the kind sequence is in the language the schema describes."""
    n = len(kinds)
    reachable = {0}
    for slot in schema.slots:
        lo, hi = slot.quantifier.bounds
        nxt = set()
        for p in reachable:
            # p..q consumed by this slot; stop at the first foreign kind
            q = p
            while True:
                if q - p >= lo:
                    nxt.add(q)
                if q - p >= hi or q >= n or kinds[q] not in slot.alternatives:
                    break
                q += 1
        reachable = nxt
        if not reachable:
            return False
    return n in reachable


# --------------------------------------------------------------------------
# question types

_OPINION_VERBS = ("like", "dislike", "love", "hate", "think")


def classify_question(question: str) -> QuestionType:
    words = re.findall(r"[a-z]+", question.lower())
    text = " ".join(words)
    if "why" in words:
        return QuestionType.REASON
    if "what" in words:
        after = words[words.index("what") + 1:]
        if any(w in _OPINION_VERBS for w in after) or after[:1] == ["features"]:
            return QuestionType.OPINION_ATTRIBUTE
    if "should" in words or "suggest" in words or "how can" in text:
        return QuestionType.SUGGESTION
    return QuestionType.OTHER


def select_schema(qtype: QuestionType, registry: Sequence[Schema] = DEFAULT_SCHEMAS) -> Schema:
    for schema in registry:
        if schema.question_type is qtype:
            return schema
    raise SchemaConfigError(f"no schema registered for question type {qtype.value!r}")


# --------------------------------------------------------------------------
# filling

@dataclass(frozen=True)
class Summary:
    topic_id: str
    sentences: tuple[Sentence, ...]
    provenance: tuple  # slot index per sentence, or "rank-order"
    schema_name: str | None = None
    fallback: bool = False
    warnings: tuple[str, ...] = ()

    @property
    def word_count(self) -> int:
        return sum(s.word_count for s in self.sentences)

    @property
    def text(self) -> str:
        return " ".join(s.text for s in self.sentences)

    @property
    def sentence_ids(self) -> list[str]:
        return [s.id for s in self.sentences]


def _first_feasible_picks(mandatory, pool, budget):
    """Lexicographically first assignment of one sentence per mandatory slot.

    ``pool`` is rank-ordered ``(candidate, kinds)``; returns a list of pool
    indices aligned with ``mandatory`` or ``None``.
    """
    picks: list[int] = []
    used: set[int] = set()

    def search(k: int, words: int) -> bool:
        if k == len(mandatory):
            return True
        slot = mandatory[k][1]
        for i, (cand, kinds) in enumerate(pool):
            wc = cand.sentence.word_count
            if i in used or not slot.accepts(kinds) or words + wc > budget:
                continue
            picks.append(i)
            used.add(i)
            if search(k + 1, words + wc):
                return True
            picks.pop()
            used.discard(i)
        return False

    return picks if search(0, 0) else None


def fill_schema(schema: Schema, candidates: Sequence[RankedCandidate],
                tags: dict[str, RelationSet], budget_words: int, topic_id: str = "") -> Summary:
    """Fill the schema's slots with ranked, tagged candidates.

    Pass 1 gives each mandatory slot its best-ranked matching sentence
    (backtracking only when an earlier choice leaves a later mandatory
    slot without a fitting sentence).  Pass 2 walks the slots in order and
    greedily adds further matching sentences while the budget allows.

    Raises :class:`SchemaUnsatisfiable` if no fill meets every mandatory
    slot within ``budget_words``.
    """
    if budget_words < 1:
        raise ValueError("budget_words must be at least 1")
    pool = [(c, tags[c.sentence.id].kinds) for c in candidates]
    slots = schema.slots
    mandatory = [(j, s) for j, s in enumerate(slots) if s.quantifier.mandatory]

    picks = _first_feasible_picks(mandatory, pool, budget_words)
    if picks is None:
        raise SchemaUnsatisfiable(f"schema {schema.name!r} cannot be satisfied")

    assigned: dict[int, list[int]] = {j: [] for j in range(len(slots))}
    used = set()
    words = 0
    for (j, _), i in zip(mandatory, picks):
        assigned[j].append(i)
        used.add(i)
        words += pool[i][0].sentence.word_count

    for j, slot in enumerate(slots):
        cap = slot.quantifier.bounds[1]
        for i, (cand, kinds) in enumerate(pool):
            if len(assigned[j]) >= cap:
                break
            wc = cand.sentence.word_count
            if i in used or not slot.accepts(kinds) or words + wc > budget_words:
                continue
            assigned[j].append(i)
            used.add(i)
            words += wc

    sentences, provenance = [], []
    for j in range(len(slots)):
        for i in sorted(assigned[j]):
            sentences.append(pool[i][0].sentence)
            provenance.append(j)
    return Summary(
        topic_id=topic_id,
        sentences=tuple(sentences),
        provenance=tuple(provenance),
        schema_name=schema.name,
    )


def slot_kinds(schema: Schema, summary: Summary, tags: dict[str, RelationSet]) -> list[Relation]:
    """One admitting relation per summary sentence (for checking with :func:`matches`)."""
    out = []
    for s, j in zip(summary.sentences, summary.provenance):
        alts = schema.slots[j].alternatives & tags[s.id].kinds
        out.append(min(alts, key=TAXONOMY.index))
    return out
