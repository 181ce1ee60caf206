"""Subjectivity lexicon loading and sentence-level opinion scores."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path

from .textcorpus import Sentence

log = logging.getLogger(__name__)

STRENGTH_WEIGHT = {"strong": 1.0, "weak": 0.5}
POLARITIES = ("positive", "negative", "neutral")

# MPQA clue files use a few polarity values beyond the three we keep
_MPQA_POLARITY = {
    "positive": "positive",
    "negative": "negative",
    "neutral": "neutral",
    "both": "neutral",
    "weakpos": "positive",
    "strongpos": "positive",
    "weakneg": "negative",
    "strongneg": "negative",
}
_MPQA_STRENGTH = {"strongsubj": "strong", "weaksubj": "weak"}


class LexiconError(Exception):
    pass


@dataclass(frozen=True)
class LexiconEntry:
    word: str
    strength: str
    prior_polarity: str

    def __post_init__(self):
        if not self.word or self.word != self.word.lower():
            raise ValueError(f"lexicon word must be non-empty lowercase: {self.word!r}")
        if self.strength not in STRENGTH_WEIGHT:
            raise ValueError(f"unknown strength {self.strength!r}")
        if self.prior_polarity not in POLARITIES:
            raise ValueError(f"unknown polarity {self.prior_polarity!r}")

    @property
    def weight(self) -> float:
        return STRENGTH_WEIGHT[self.strength]


@dataclass(frozen=True)
class Lexicon:
    entries: dict[str, LexiconEntry]
    n_malformed: int = 0

    def __len__(self):
        return len(self.entries)

    def get(self, word: str) -> LexiconEntry | None:
        return self.entries.get(word)

    def weight(self, word: str) -> float:
        entry = self.entries.get(word)
        return entry.weight if entry else 0.0


def _parse_tsv(line: str) -> LexiconEntry:
    word, strength, polarity = line.split("\t")
    return LexiconEntry(word.strip().lower(), strength.strip(), polarity.strip())


def _parse_tff(line: str) -> LexiconEntry:
    fields = dict(kv.split("=", 1) for kv in line.split() if "=" in kv)
    return LexiconEntry(
        fields["word1"].lower(),
        _MPQA_STRENGTH[fields["type"]],
        _MPQA_POLARITY[fields["priorpolarity"]],
    )


_PARSERS = {"tsv": _parse_tsv, "mpqa_tff": _parse_tff}


def lexicon_from_entries(entries) -> Lexicon:
    out = {}
    for e in entries:
        if e.word in out:
            log.warning("duplicate lexicon entry %r, keeping the last one", e.word)
        out[e.word] = e
    return Lexicon(out)


def load_lexicon(path: str | Path, format: str | None = None) -> Lexicon:
    """Load a clue list in ``tsv`` or MPQA ``mpqa_tff`` format.

    If ``format`` is omitted it is guessed from the file suffix (``.tff`` means
    MPQA, anything else TSV). Malformed lines are skipped and counted.
    """
    path = Path(path)
    if format is None:
        format = "mpqa_tff" if path.suffix == ".tff" else "tsv"
    if format not in _PARSERS:
        raise ValueError(f"unknown lexicon format {format!r}")
    parse = _PARSERS[format]
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except (OSError, UnicodeDecodeError) as exc:
        raise LexiconError(f"cannot read lexicon {path}: {exc}") from exc

    entries = {}
    bad = 0
    for line in lines:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            entry = parse(line)
        except (ValueError, KeyError):
            bad += 1
            continue
        if entry.word in entries:
            log.warning("duplicate lexicon entry %r in %s, keeping the last one", entry.word, path)
        entries[entry.word] = entry
    if bad:
        log.warning("%s: skipped %d malformed line(s)", path, bad)
    if not entries:
        raise LexiconError(f"lexicon {path} has no valid entries")
    return Lexicon(entries, bad)


def _surfaces(sentence: Sentence) -> list[str]:
    if not sentence.tokens:
        raise ValueError(f"sentence {sentence.id} has no tokens")
    return sentence.surfaces


def subjectivity_score(sentence: Sentence, lex: Lexicon) -> float:
    """Clue-weight density of the sentence, saturated at 1."""
    words = _surfaces(sentence)
    return min(1.0, sum(lex.weight(w) for w in words) / len(words))


def polarity(sentence: Sentence, lex: Lexicon) -> str:
    balance = 0.0
    for w in _surfaces(sentence):
        entry = lex.get(w)
        if entry is None:
            continue
        if entry.prior_polarity == "positive":
            balance += entry.weight
        elif entry.prior_polarity == "negative":
            balance -= entry.weight
    if balance > 0:
        return "positive"
    if balance < 0:
        return "negative"
    return "neutral"


def default_lexicon() -> Lexicon:
    """The small clue list shipped with the package (MPQA record format)."""
    return load_lexicon(Path(__file__).parent / "data" / "subjclues_sample.tff")
