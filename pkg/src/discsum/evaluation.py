"""ROUGE-N / ROUGE-SU scoring, paired t-tests and ablation reports."""
from __future__ import annotations

import json
import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from statistics import fmean
from typing import Sequence

from .textcorpus import tokenize

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class RougeScore:
    recall: float
    precision: float
    f1: float
    n_candidate_units: int
    n_reference_units: int
    n_overlap: int

    @classmethod
    def from_counts(cls, overlap: int, n_cand: int, n_ref: int) -> "RougeScore":
        r = overlap / n_ref if n_ref else 0.0
        p = overlap / n_cand if n_cand else 0.0
        f = 2 * p * r / (p + r) if p + r else 0.0
        return cls(r, p, f, n_cand, n_ref, overlap)


def truncate_words(text: str, max_words: int | None) -> str:
    if max_words is None:
        return text
    return " ".join(text.split()[:max_words])


def _words(text: str, stem: bool) -> list[str]:
    return [t.surface for t in tokenize(text, stem=stem)]


def ngrams(words: Sequence[str], n: int) -> Counter:
    return Counter(zip(*(words[i:] for i in range(n))))


def skip_bigrams(words: Sequence[str], max_skip: int) -> Counter:
    """Ordered pairs with at most ``max_skip`` tokens between them."""
    out = Counter()
    for i, w in enumerate(words):
        for v in words[i + 1:i + 2 + max_skip]:
            out[(w, v)] += 1
    return out


def _best_over_references(cand: Counter, refs: list[Counter]) -> RougeScore:
    n_cand = sum(cand.values())
    best = None
    for ref in refs:
        overlap = sum((cand & ref).values())
        score = RougeScore.from_counts(overlap, n_cand, sum(ref.values()))
        if best is None or (score.recall, score.f1) > (best.recall, best.f1):
            best = score
    return best


def rouge_n(candidate: str, references: Sequence[str], n: int = 2,
            stem: bool = False, max_words: int | None = None) -> RougeScore:
    """ROUGE-N against several references, keeping the best-recall reference."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not references:
        raise ValueError("at least one reference is required")
    cand = ngrams(_words(truncate_words(candidate, max_words), stem), n)
    refs = [ngrams(_words(r, stem), n) for r in references]
    return _best_over_references(cand, refs)


def su_units(words: Sequence[str], max_skip: int) -> Counter:
    units = Counter((w,) for w in words)
    units.update(skip_bigrams(words, max_skip))
    return units


def rouge_su(candidate: str, references: Sequence[str], max_skip: int = 4,
             stem: bool = False, max_words: int | None = None) -> RougeScore:
    """ROUGE-SU: skip-bigrams plus unigrams as counting units."""
    if max_skip < 0:
        raise ValueError("max_skip must be >= 0")
    if not references:
        raise ValueError("at least one reference is required")
    cand = su_units(_words(truncate_words(candidate, max_words), stem), max_skip)
    refs = [su_units(_words(r, stem), max_skip) for r in references]
    return _best_over_references(cand, refs)


# --------------------------------------------------------------------------
# Student's t distribution

def _betacf(a: float, b: float, x: float) -> float:
    """Continued fraction for the incomplete beta function (modified Lentz)."""
    tiny = 1e-300
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    d = 1.0 / (d if abs(d) > tiny else tiny)
    h = d
    for m in range(1, 10000):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        d = 1.0 / (d if abs(d) > tiny else tiny)
        c = 1.0 + aa / c
        c = c if abs(c) > tiny else tiny
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        d = 1.0 / (d if abs(d) > tiny else tiny)
        c = 1.0 + aa / c
        c = c if abs(c) > tiny else tiny
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            return h
    raise ArithmeticError("incomplete beta continued fraction did not converge")


def betainc(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta function I_x(a, b)."""
    if not 0.0 <= x <= 1.0:
        raise ValueError("x must lie in [0, 1]")
    if x == 0.0 or x == 1.0:
        return x
    log_front = (math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
                 + a * math.log(x) + b * math.log1p(-x))
    front = math.exp(log_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def t_two_tailed_p(t: float, df: int) -> float:
    if math.isinf(t):
        return 0.0
    return min(1.0, betainc(df / 2.0, 0.5, df / (df + t * t)))


@dataclass(frozen=True)
class TTestResult:
    t_statistic: float
    degrees_of_freedom: int
    p_value: float
    significant_at_05: bool
    degenerate: bool = False

    def significant(self, alpha: float = 0.05) -> bool:
        return self.p_value < alpha


def paired_ttest(scores_a: Sequence[float], scores_b: Sequence[float]) -> TTestResult:
    """Two-tailed paired t-test on per-item differences ``a - b``."""
    if len(scores_a) != len(scores_b):
        raise ValueError("paired samples must have equal length")
    n = len(scores_a)
    if n < 2:
        raise ValueError("a paired t-test needs at least two pairs")
    diffs = [a - b for a, b in zip(scores_a, scores_b)]
    mean = math.fsum(diffs) / n
    var = math.fsum((d - mean) ** 2 for d in diffs) / (n - 1)
    df = n - 1
    if var == 0.0:
        if mean == 0.0:
            return TTestResult(0.0, df, 1.0, False)
        return TTestResult(math.copysign(math.inf, mean), df, 0.0, True, degenerate=True)
    t = mean / math.sqrt(var / n)
    p = t_two_tailed_p(t, df)
    return TTestResult(t, df, p, p < 0.05)


# --------------------------------------------------------------------------
# ablation report

METRICS = ("R-2", "R-SU4")
REFERENCE_CONDITION = "all-relations"


@dataclass
class ReportRow:
    condition: str
    label: str
    means: dict[str, float]
    tests: dict[str, TTestResult | None] = field(default_factory=dict)
    per_topic: dict[str, dict[str, float]] = field(default_factory=dict)

    def marked(self, metric: str, alpha: float) -> bool:
        t = self.tests.get(metric)
        return t is not None and t.p_value < alpha


@dataclass
class AblationReport:
    rows: list[ReportRow]
    topics: list[str]
    skipped_topics: list[str]
    alpha: float = 0.05
    warnings: list[str] = field(default_factory=list)

    def row(self, condition: str) -> ReportRow:
        for r in self.rows:
            if r.condition == condition:
                return r
        raise KeyError(condition)

    def to_json(self) -> dict:
        def test_json(t):
            if t is None:
                return None
            return {"t": t.t_statistic if math.isfinite(t.t_statistic) else str(t.t_statistic),
                    "df": t.degrees_of_freedom, "p": t.p_value, "degenerate": t.degenerate}

        return {
            "alpha": self.alpha,
            "reference_condition": REFERENCE_CONDITION,
            "topics": self.topics,
            "skipped_topics": self.skipped_topics,
            "warnings": self.warnings,
            "rows": [
                {
                    "condition": r.condition,
                    "label": r.label,
                    "mean": r.means,
                    "significant": {m: r.marked(m, self.alpha) for m in METRICS},
                    "ttest": {m: test_json(r.tests.get(m)) for m in METRICS},
                    "per_topic": r.per_topic,
                }
                for r in self.rows
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=False) + "\n"

    def render(self) -> str:
        """Fixed-width table; significant differences from the reference row
        are marked with an arrow pointing in the direction of the change."""
        lines = [f"{'System':<22}{'R-2':>10}{'R-SU4':>10}", "-" * 42]
        ref = self.row(REFERENCE_CONDITION)
        for r in self.rows:
            cells = []
            for m in METRICS:
                mark = ""
                if r.marked(m, self.alpha):
                    mark = "⇓" if r.means[m] < ref.means[m] else "⇑"
                cells.append(f"{r.means[m]:.4f}{mark:<1}".rjust(10))
            lines.append(f"{r.label:<22}" + "".join(cells))
            if r.condition == "baseline":
                lines.append("-" * 42)
        lines.append("-" * 42)
        lines.append(f"{len(self.topics)} topics; arrows: paired two-tailed t-test "
                     f"vs. with all Relations, p < {self.alpha}")
        if self.skipped_topics:
            lines.append("skipped topics (no reference): " + ", ".join(self.skipped_topics))
        return "\n".join(lines) + "\n"


def build_report(suite, references: dict[str, list[str]], alpha: float = 0.05,
                 budget_words: int | None = 250, stem: bool = False,
                 labels: dict[str, str] | None = None) -> AblationReport:
    """Average R-2 / R-SU4 per condition and test each against all-relations.

    ``suite`` maps condition -> topic_id -> summary (anything with ``.text``
    or a plain string); ``references`` maps topic_id -> reference texts.
    """
    if REFERENCE_CONDITION not in suite:
        raise ValueError(f"suite lacks the {REFERENCE_CONDITION!r} condition")
    if labels is None:
        from .summarizer import CONDITIONS

        labels = {c.name: c.label for c in CONDITIONS}
    topic_ids = list(suite[REFERENCE_CONDITION])
    topics, skipped, warnings = [], [], []
    for tid in topic_ids:
        if references.get(tid):
            topics.append(tid)
        else:
            skipped.append(tid)
            warnings.append(f"topic {tid} has no reference summary; skipped")
            log.warning("topic %s has no reference summary; skipped", tid)

    scores: dict[str, dict[str, list[float]]] = {}
    rows = []
    for cond, by_topic in suite.items():
        per_metric = {m: [] for m in METRICS}
        per_topic = {}
        for tid in topics:
            summ = by_topic[tid]
            text = summ if isinstance(summ, str) else summ.text
            r2 = rouge_n(text, references[tid], 2, stem=stem, max_words=budget_words).recall
            su = rouge_su(text, references[tid], 4, stem=stem, max_words=budget_words).recall
            per_metric["R-2"].append(r2)
            per_metric["R-SU4"].append(su)
            per_topic[tid] = {"R-2": r2, "R-SU4": su}
        scores[cond] = per_metric
        means = {m: (fmean(v) if v else 0.0) for m, v in per_metric.items()}
        rows.append(ReportRow(cond, labels.get(cond, cond), means, per_topic=per_topic))

    ref_scores = scores[REFERENCE_CONDITION]
    for row in rows:
        if row.condition == REFERENCE_CONDITION:
            continue
        for m in METRICS:
            a = scores[row.condition][m]
            row.tests[m] = paired_ttest(a, ref_scores[m]) if len(a) >= 2 else None
    return AblationReport(rows, topics, skipped, alpha, warnings)

