"""Corpus loading, sentence segmentation and tokenization.

A corpus directory looks like::

    root/
      topics.jsonl        one topic object per line
      docs/<doc_id>.txt   source documents
      models/<id>.txt     reference (model) summaries

Every piece of text goes through the same tokenizer so that tf.idf
vectors, lexicon lookups and ROUGE units agree on what a word is.
"""
from __future__ import annotations

import json
import re
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path

# small five-topic corpus shipped for demos and tests
SAMPLE_CORPUS = Path(__file__).parent / "data" / "synthetic"

ABBREVIATIONS = frozenset({"mr", "mrs", "dr", "e.g", "i.e", "etc", "u.s"})

_TOKEN_RE = re.compile(r"[a-z0-9]+")
# candidate boundary: terminal punctuation, optional closing quotes/brackets,
# whitespace, then an upper-case letter (possibly behind an opening quote)
_BOUNDARY_RE = re.compile(r"[.?!]+[\"')\]”’]*(\s+)(?=[\"'(\[“‘]?[A-Z])")
_LAST_WORD_RE = re.compile(r"([A-Za-z.]+)\.$")


class CorpusError(Exception):
    """Raised when a corpus directory cannot be read."""


class IntegrityError(CorpusError):
    """Raised when topics reference documents or summaries that do not exist."""


@dataclass(frozen=True)
class Token:
    surface: str
    position: int


@dataclass(frozen=True)
class Sentence:
    id: str
    doc_id: str
    index: int
    text: str
    tokens: tuple[Token, ...] = field(repr=False)
    word_count: int

    @property
    def surfaces(self) -> list[str]:
        return [t.surface for t in self.tokens]


@dataclass(frozen=True)
class Topic:
    topic_id: str
    title: str
    questions: tuple[str, ...]
    documents: tuple[str, ...]
    model_summaries: tuple[str, ...]


@dataclass(frozen=True)
class Corpus:
    topics: tuple[Topic, ...]
    documents: dict[str, tuple[Sentence, ...]]
    references: dict[str, tuple[Sentence, ...]]

    def topic(self, topic_id: str) -> Topic:
        for t in self.topics:
            if t.topic_id == topic_id:
                return t
        raise KeyError(f"unknown topic {topic_id}")

    def topic_sentences(self, topic: Topic) -> list[Sentence]:
        return [s for doc_id in topic.documents for s in self.documents[doc_id]]

    def reference_texts(self, topic: Topic) -> list[str]:
        return [
            " ".join(s.text for s in self.references[sid])
            for sid in topic.model_summaries
        ]


def _strip_plural(word: str) -> str:
    if len(word) > 4 and word.endswith("ies"):
        return word[:-3] + "y"
    if len(word) > 3 and word.endswith("s") and not word.endswith(("ss", "us", "is")):
        return word[:-1]
    return word


def normalize(text: str) -> str:
    """Fold accents to ASCII and lowercase."""
    decomposed = unicodedata.normalize("NFKD", text)
    return "".join(c for c in decomposed if not unicodedata.combining(c)).lower()


def tokenize(text: str, stem: bool = False) -> list[Token]:
    """Lowercase ``text`` and split it on every non-alphanumeric run.

    With ``stem=True`` a crude plural stripper is applied to each token.
    """
    words = _TOKEN_RE.findall(normalize(text))
    if stem:
        words = [_strip_plural(w) for w in words]
    return [Token(w, i) for i, w in enumerate(words)]


def make_sentence(text: str, doc_id: str = "", index: int = 0) -> Sentence:
    return Sentence(
        id=f"{doc_id}:{index}",
        doc_id=doc_id,
        index=index,
        text=text,
        tokens=tuple(tokenize(text)),
        word_count=len(text.split()),
    )


def _is_abbreviation(chunk: str) -> bool:
    m = _LAST_WORD_RE.search(chunk)
    if m is None:
        return False
    # "e.g." -> "e.g", "U.S." -> "u.s"
    return m.group(1).lower() in ABBREVIATIONS


def segment_sentences(text: str, doc_id: str = "") -> list[Sentence]:
    """Split raw text into sentences.

    A boundary is ``.``, ``?`` or ``!`` followed by whitespace and a capital
    letter, unless the period closes one of ``ABBREVIATIONS``.
    """
    pieces = []
    start = 0
    for m in _BOUNDARY_RE.finditer(text):
        end = m.start(1)
        chunk = text[start:end]
        if chunk.endswith(".") and _is_abbreviation(chunk):
            continue
        pieces.append(chunk)
        start = m.end(1)
    pieces.append(text[start:])
    sentences = []
    for piece in pieces:
        piece = piece.strip()
        if piece:
            sentences.append(make_sentence(piece, doc_id, len(sentences)))
    return sentences


def _read_text(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise CorpusError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except UnicodeDecodeError as exc:
        raise CorpusError(f"{path} is not valid UTF-8") from exc


def _parse_topic(line: str, path: Path, lineno: int) -> Topic:
    try:
        obj = json.loads(line)
        return Topic(
            topic_id=str(obj["topic_id"]),
            title=str(obj.get("title", "")),
            questions=tuple(obj.get("questions", [])),
            documents=tuple(obj["documents"]),
            model_summaries=tuple(obj.get("model_summaries", [])),
        )
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise CorpusError(f"{path}:{lineno}: malformed topic record ({exc})") from exc


def _load_dir(directory: Path) -> dict[str, tuple[Sentence, ...]]:
    if not directory.is_dir():
        raise CorpusError(f"missing directory {directory}")
    out = {}
    for p in sorted(directory.glob("*.txt")):
        out[p.stem] = tuple(segment_sentences(_read_text(p), p.stem))
    return out


def load_corpus(root_path: str | Path) -> Corpus:
    """Read a corpus directory and cross-check every reference in it."""
    root = Path(root_path)
    topics_path = root / "topics.jsonl"
    if not topics_path.is_file():
        raise CorpusError(f"missing file {topics_path}")
    topics = []
    seen = set()
    for lineno, line in enumerate(_read_text(topics_path).splitlines(), 1):
        if not line.strip():
            continue
        topic = _parse_topic(line, topics_path, lineno)
        if topic.topic_id in seen:
            raise IntegrityError(f"duplicate topic id {topic.topic_id}")
        if not topic.documents:
            raise IntegrityError(f"topic {topic.topic_id} has no documents")
        seen.add(topic.topic_id)
        topics.append(topic)

    documents = _load_dir(root / "docs")
    references = _load_dir(root / "models")
    for topic in topics:
        for doc_id in topic.documents:
            if doc_id not in documents:
                raise IntegrityError(
                    f"topic {topic.topic_id} references unknown document {doc_id}"
                )
        for sid in topic.model_summaries:
            if sid not in references:
                raise IntegrityError(
                    f"topic {topic.topic_id} references unknown model summary {sid}"
                )
    return Corpus(tuple(topics), documents, references)
