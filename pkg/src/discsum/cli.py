"""Command-line interface: ``discsum {tag,stats,summarize,ablate}``.

Exit codes: 0 success, 1 usage error, 2 input/integrity error, 3 internal error.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
import tempfile
from pathlib import Path

from . import __version__
from .discourse import REPORT_ROWS, TAXONOMY_INDEX, Relation, RelationSet, relation_distribution, tag_sentence, topic_terms_for
from .evaluation import build_report
from .lexicon import LexiconError, default_lexicon, load_lexicon
from .ranker import ScoreWeights
from .schema import DEFAULT_SCHEMAS, SchemaConfigError, load_schemas
from .summarizer import CONDITIONS, PipelineConfig, run_condition_suite, summarize
from .textcorpus import CorpusError, load_corpus

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3
DEFAULT_LEXICON = Path(__file__).parent / "data" / "subjclues_sample.tff"

log = logging.getLogger("discsum")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def write_atomic(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def corpus_digest(root: Path) -> str:
    h = hashlib.sha256()
    files = [root / "topics.jsonl", *sorted((root / "docs").glob("*.txt")),
             *sorted((root / "models").glob("*.txt"))]
    for p in files:
        h.update(p.relative_to(root).as_posix().encode())
        h.update(b"\0")
        h.update(p.read_bytes())
        h.update(b"\0")
    return h.hexdigest()


def _file_digest(path: Path | None) -> str | None:
    return hashlib.sha256(path.read_bytes()).hexdigest() if path else None


def _lexicon(args):
    path = Path(args.lexicon) if args.lexicon else None
    if path is None:
        return default_lexicon(), DEFAULT_LEXICON
    if not path.is_file():
        raise LexiconError(f"lexicon file not found: {path}")
    return load_lexicon(path), path


def _weights(text: str) -> ScoreWeights:
    try:
        return ScoreWeights.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _relation(text: str) -> Relation:
    try:
        rel = Relation.parse(text)
    except ValueError:
        rel = None
    if rel not in TAXONOMY_INDEX:
        raise argparse.ArgumentTypeError(f"unknown relation {text!r}")
    return rel


def _pipeline_config(args) -> PipelineConfig:
    if args.exclude is not None and args.no_schemata:
        raise UsageError("--exclude conflicts with --no-schemata: "
                         "exclusion conditions are defined on schema-filled summaries")
    schemas = tuple(load_schemas(args.schemas)) if args.schemas else DEFAULT_SCHEMAS
    try:
        return PipelineConfig(
            weights=args.weights,
            budget_words=args.budget,
            excluded_relation=args.exclude,
            use_schemata=not args.no_schemata,
            redundancy_threshold=args.redundancy,
            schemas=schemas,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _config_snapshot(args, cfg: PipelineConfig, lex_path: Path) -> dict:
    w = cfg.weights
    return {
        "weights": [w.w1, w.w2, w.w3],
        "budget_words": cfg.budget_words,
        "schemas": args.schemas,
        "schema_expressions": {s.name: s.expression for s in cfg.schemas},
        "lexicon": str(lex_path),
        "redundancy_threshold": cfg.redundancy_threshold,
        "alpha": getattr(args, "alpha", None),
        "stem": getattr(args, "stem", False),
    }


# --------------------------------------------------------------------------
# commands

def _tag_lines(corpus, lex) -> list[str]:
    doc_terms, model_terms = {}, {}
    for topic in corpus.topics:
        terms = topic_terms_for(topic.title)
        for d in topic.documents:
            doc_terms.setdefault(d, (topic.topic_id, terms))
        for m in topic.model_summaries:
            model_terms.setdefault(m, (topic.topic_id, terms))
    lines = []
    for source, texts, owners in (("doc", corpus.documents, doc_terms),
                                  ("model", corpus.references, model_terms)):
        for doc_id, sentences in texts.items():
            topic_id, terms = owners.get(doc_id, (None, frozenset()))
            for s in sentences:
                rs = tag_sentence(s, terms, lex)
                lines.append(json.dumps({
                    "sentence_id": s.id,
                    "source": source,
                    "topic_id": topic_id,
                    "text": s.text,
                    "relations": rs.to_json(),
                }, ensure_ascii=False))
    return lines


def cmd_tag(args) -> int:
    corpus = load_corpus(args.corpus)
    lex, _ = _lexicon(args)
    text = "".join(line + "\n" for line in _tag_lines(corpus, lex))
    if args.out:
        write_atomic(Path(args.out), text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def render_distribution(reports: dict) -> str:
    names = list(reports)
    header = f"{'Relation':<16}" + "".join(f"{n:>12}" for n in names)
    lines = [header, "-" * len(header)]
    for kind in REPORT_ROWS:
        label = kind.label if kind in TAXONOMY_INDEX else kind.value
        lines.append(f"{label:<16}" + "".join(f"{reports[n][kind]:>11.1f}%" for n in names))
    lines.append("-" * len(header))
    lines.append(f"{'sentences':<16}" + "".join(f"{reports[n].n_sentences:>12}" for n in names))
    return "\n".join(lines) + "\n"


def cmd_stats(args) -> int:
    path = Path(args.tagged)
    try:
        raw = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise CorpusError(f"cannot read {path}: {exc.strerror or exc}") from exc
    by_source: dict[str, list[RelationSet]] = {}
    for lineno, line in enumerate(raw, 1):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
            rs = RelationSet.from_json(rec["relations"])
        except (json.JSONDecodeError, KeyError, ValueError, TypeError) as exc:
            raise CorpusError(f"{path}:{lineno}: malformed tagged record ({exc})") from exc
        by_source.setdefault(rec.get("source", "all"), []).append(rs)
    if not by_source:
        raise CorpusError(f"{path} contains no tagged sentences")
    names = {"doc": "Coll.", "model": "Model"}
    reports = {names.get(k, k): relation_distribution(v) for k, v in by_source.items()}
    if args.json:
        sys.stdout.write(json.dumps({k: r.to_json() for k, r in reports.items()}, indent=2) + "\n")
    else:
        sys.stdout.write(render_distribution(reports))
    return EXIT_OK


def cmd_summarize(args) -> int:
    cfg = _pipeline_config(args)
    corpus = load_corpus(args.corpus)
    lex, _ = _lexicon(args)
    try:
        topic = corpus.topic(args.topic_id)
    except KeyError:
        raise CorpusError(f"unknown topic {args.topic_id}")
    summary = summarize(topic, corpus, lex, cfg)
    for w in summary.warnings:
        log.warning("topic %s: %s", topic.topic_id, w)
    text = "\n".join(s.text for s in summary.sentences) + "\n"
    if args.out:
        write_atomic(Path(args.out), text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_ablate(args) -> int:
    if args.exclude is not None or args.no_schemata:
        if args.exclude is not None and args.no_schemata:
            raise UsageError("--exclude conflicts with --no-schemata")
        raise UsageError("ablate runs every exclusion and the no-schemata baseline itself; "
                         "--exclude/--no-schemata apply to summarize only")
    cfg = _pipeline_config(args)
    if not 0 < args.alpha < 1:
        raise UsageError("--alpha must lie in (0, 1)")
    root = Path(args.corpus)
    corpus = load_corpus(root)
    lex, lex_path = _lexicon(args)

    suite = run_condition_suite(corpus, lex, cfg)
    refs = {t.topic_id: corpus.reference_texts(t) for t in corpus.topics}
    report = build_report(suite, refs, alpha=args.alpha, budget_words=cfg.budget_words,
                          stem=args.stem, labels={c.name: c.label for c in CONDITIONS})

    out = Path(args.out)
    prov = []
    for cond, by_topic in suite.items():
        for tid, summ in by_topic.items():
            write_atomic(out / cond / f"{tid}.txt", "\n".join(s.text for s in summ.sentences) + "\n")
            prov.append(json.dumps({
                "condition": cond,
                "topic_id": tid,
                "schema": summ.schema_name,
                "fallback": summ.fallback,
                "word_count": summ.word_count,
                "sentences": [{"id": s.id, "slot": p} for s, p in zip(summ.sentences, summ.provenance)],
                "warnings": list(summ.warnings),
            }))
    write_atomic(out / "provenance.jsonl", "".join(p + "\n" for p in prov))
    write_atomic(out / "report.json", report.dumps())
    table = report.render()
    write_atomic(out / "report.txt", table)
    manifest = {
        "tool": "discsum",
        "version": __version__,
        "command": "ablate",
        "config": _config_snapshot(args, cfg, lex_path),
        "inputs": {
            "corpus_sha256": corpus_digest(root),
            "lexicon_sha256": _file_digest(lex_path),
            "schemas_sha256": _file_digest(Path(args.schemas)) if args.schemas else None,
        },
    }
    write_atomic(out / "manifest.json", json.dumps(manifest, indent=2) + "\n")
    sys.stdout.write(table)
    return EXIT_OK


# --------------------------------------------------------------------------

def _add_pipeline_flags(p):
    p.add_argument("--weights", type=_weights, default=ScoreWeights(), metavar="W1,W2,W3",
                   help="question, topic and subjectivity weights (default 1,1,1)")
    p.add_argument("--budget", type=int, default=250, help="summary length in words")
    p.add_argument("--schemas", help="schema file (name<TAB>question_type<TAB>expression)")
    p.add_argument("--exclude", type=_relation, help="drop sentences carrying this relation")
    p.add_argument("--no-schemata", action="store_true", help="rank-order baseline, no schema fill")
    p.add_argument("--redundancy", type=float, default=0.95,
                   help="cosine at which a candidate counts as a near-duplicate")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="discsum", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"discsum {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("tag", help="tag every sentence with discourse relations (JSONL)")
    p.add_argument("corpus")
    p.add_argument("--lexicon")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_tag)

    p = sub.add_parser("stats", help="relation distribution of a tagged JSONL file")
    p.add_argument("tagged")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("summarize", help="summarize one topic")
    p.add_argument("corpus")
    p.add_argument("topic_id")
    p.add_argument("--lexicon")
    p.add_argument("--out")
    _add_pipeline_flags(p)
    p.set_defaults(func=cmd_summarize)

    p = sub.add_parser("ablate", help="run all ablation conditions and the ROUGE report")
    p.add_argument("corpus")
    p.add_argument("--out", default="out")
    p.add_argument("--lexicon")
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--stem", action="store_true", help="strip plurals before ROUGE matching")
    _add_pipeline_flags(p)
    p.set_defaults(func=cmd_ablate)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"discsum: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CorpusError, LexiconError, SchemaConfigError, OSError) as exc:
        print(f"discsum: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001
        print(f"discsum: internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
