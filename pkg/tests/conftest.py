import json
import re

import pytest

from discsum.lexicon import default_lexicon
from discsum.textcorpus import SAMPLE_CORPUS

_acceptance = []


@pytest.fixture(scope="session")
def lexicon():
    return default_lexicon()


@pytest.fixture
def synthetic_corpus_path():
    return SAMPLE_CORPUS


def write_corpus(root, topics, docs, models):
    from pathlib import Path

    root = Path(root)
    (root / "docs").mkdir(parents=True, exist_ok=True)
    (root / "models").mkdir(exist_ok=True)
    with open(root / "topics.jsonl", "w") as f:
        for t in topics:
            f.write(json.dumps(t) + "\n")
    for name, text in docs.items():
        (root / "docs" / f"{name}.txt").write_text(text)
    for name, text in models.items():
        (root / "models" / f"{name}.txt").write_text(text)
    return root


@pytest.fixture
def make_corpus(tmp_path):
    def make(topics, docs, models=None):
        return write_corpus(tmp_path / "corpus", topics, docs, models or {})
    return make


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        m = re.match(r"test_c(\d+)_(.*)", name)
        if m:
            _acceptance.append((int(m.group(1)), m.group(2).replace("_", " "), report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for num, title, outcome in sorted(_acceptance):
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {num}: {title}")


def fixture_candidates(specs, prefix="s"):
    """Rank-ordered candidates and tags from ``[(word_count, kinds), ...]``."""
    from discsum.discourse import Evidence, RelationSet
    from discsum.ranker import RankedCandidate
    from discsum.textcorpus import make_sentence

    cands, tags = [], {}
    for i, (wc, kinds) in enumerate(specs):
        sent = make_sentence(" ".join(f"w{i}x{k}" for k in range(wc)) + ".", prefix, i)
        cands.append(RankedCandidate(sent, 1.0 - i / 100, 0.0, 0.0, 0.0, i + 1, {}))
        tags[sent.id] = RelationSet.from_evidence(Evidence(k, "w", 0, 1) for k in kinds)
    return cands, tags
