"""Pipeline commands over the documented file formats.

Stages communicate only through files, so every command can be re-run in
isolation. Exit codes: 0 success, 1 usage/configuration error, 2 data
error, 3 internal assertion.
"""

import argparse
import hashlib
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .config import PipelineConfig
from .dataset import (
    apply_review,
    build_sdp_dataset,
    read_patterns,
    split_dataset,
    write_patterns,
    write_review_template,
)
from .depgraph import parse_conllu
from .errors import RelexkitError, UserError
from .evaluation import (
    error_taxonomy,
    records_at_threshold,
    score_dataset,
    threshold_sweep,
    write_metrics_tsv,
    write_taxonomy_json,
)
from .ingest import (
    SentenceRecord,
    StatementTriple,
    WikidataClient,
    assemble_statements,
    clean_sentence,
    extract_page_paragraphs,
    read_sentences,
    read_statements,
    split_sentences,
    write_sentences,
    write_statements,
)
from .semindex import build_frequency_matrix, build_semantic_index, classify
from .semindex import load_index as load_semantic_index
from .semindex import save_index as save_semantic_index
from .supervision import (
    OTHER_LABEL,
    SentenceMatch,
    WeaklyLabeledSentence,
    label_sentences,
)
from .synindex import (
    build_syntactic_index,
    ensure_key_mode,
    filter_longest,
    match_patterns,
)
from .synindex import load_index as load_syntactic_index
from .synindex import save_index as save_syntactic_index

log = logging.getLogger("relexkit")

PRODUCERS = {
    "sentences": "relexkit ingest",
    "statements": "relexkit ingest",
    "labeled": "relexkit annotate",
    "parses": "the NLP adapter's parse command",
    "patterns": "relexkit build-dataset",
    "train": "relexkit build-dataset",
    "dev": "relexkit build-dataset",
    "test": "relexkit build-dataset",
    "syntactic_index": "relexkit build-indices",
    "semantic_index": "relexkit build-indices",
}


def _require(path: Path, role: str) -> Path:
    if not path.exists():
        producer = PRODUCERS.get(role, "an earlier pipeline stage")
        raise UserError(f"input file {path} not found; produce it with {producer}")
    return path


def _out(path: "str | Path") -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def _file_sha256(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _load_config(args) -> PipelineConfig:
    config = (
        PipelineConfig.from_file(args.config) if args.config else PipelineConfig()
    )
    if getattr(args, "seed", None) is not None:
        config.seed = args.seed
    return config


def _graphs_by_sentence(parses_path: Path):
    with open(parses_path, encoding="utf-8") as fh:
        graphs = parse_conllu(fh)
    return {g.sentence_text: g for g in graphs}


def cmd_ingest(args) -> int:
    config = _load_config(args)
    client = WikidataClient(
        cache_dir=args.cache_dir or config.cache_dir,
        entity_endpoint=config.kb_endpoint,
        page_endpoint=config.page_endpoint,
        min_interval=config.rate_limit,
        offline=args.offline,
    )
    items_path = Path(args.items)
    if not items_path.exists():
        raise UserError(f"item list {items_path} not found")
    item_ids = [
        line.strip()
        for line in items_path.read_text(encoding="utf-8").splitlines()
        if line.strip() and not line.startswith("#")
    ]
    resolver = lambda item_id: client.fetch_item(item_id, config.language)
    sentences: list[SentenceRecord] = []
    statements: list[StatementTriple] = []
    for record in client.fetch_items(item_ids, config.language, threads=args.threads):
        statements.extend(
            assemble_statements(record, config.property_filter, config.language, resolver)
        )
        if not record.sitelink:
            log.warning("item %s has no %s sitelink; no page text", record.item_id, config.language)
            continue
        html = client.fetch_page_html(record.sitelink, config.language)
        position = 0
        for paragraph in extract_page_paragraphs(html):
            for raw in split_sentences(paragraph):
                cleaned = clean_sentence(raw)
                if cleaned is None:
                    continue
                sentences.append(
                    SentenceRecord(text=cleaned, page_title=record.sitelink, position=position)
                )
                position += 1
    out_sentences = _out(args.out_sentences or config.path("sentences"))
    out_statements = _out(args.out_statements or config.path("statements"))
    write_sentences(sentences, out_sentences)
    write_statements(statements, out_statements)
    print(f"wrote {len(sentences)} sentences to {out_sentences}")
    print(f"wrote {len(statements)} statements to {out_statements}")
    return 0


def _write_labeled(labeled: list[WeaklyLabeledSentence], path: Path):
    with open(path, "w", encoding="utf-8") as fh:
        for wls in labeled:
            row = {
                "text": wls.sentence.text,
                "page": wls.sentence.page_title,
                "position": wls.sentence.position,
                "labels": sorted(wls.labels),
                "matches": [
                    {
                        "property": m.statement.property_id,
                        "source": list(m.statement.source_designations),
                        "target": list(m.statement.target_designations),
                        "source_span": list(m.source_span),
                        "target_span": list(m.target_span),
                    }
                    for m in wls.matches
                ],
            }
            fh.write(json.dumps(row, ensure_ascii=False, sort_keys=True) + "\n")


def _read_labeled(path: Path) -> list[WeaklyLabeledSentence]:
    labeled = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            row = json.loads(line)
            record = SentenceRecord(
                text=row["text"], page_title=row["page"], position=row["position"]
            )
            matches = tuple(
                SentenceMatch(
                    statement=StatementTriple(
                        source_designations=tuple(m["source"]),
                        property_id=m["property"],
                        target_designations=tuple(m["target"]),
                    ),
                    source_span=tuple(m["source_span"]),
                    target_span=tuple(m["target_span"]),
                )
                for m in row["matches"]
            )
            labeled.append(
                WeaklyLabeledSentence(
                    sentence=record, matches=matches, labels=frozenset(row["labels"])
                )
            )
    return labeled


def cmd_annotate(args) -> int:
    config = _load_config(args)
    sentences = read_sentences(_require(Path(args.sentences or config.path("sentences")), "sentences"))
    statements = read_statements(_require(Path(args.statements or config.path("statements")), "statements"))
    labeled = label_sentences(sentences, statements, config.fuzzy_threshold)
    out = _out(args.out or config.path("labeled"))
    _write_labeled(labeled, out)
    matched = sum(1 for wls in labeled if wls.matches)
    print(f"wrote {len(labeled)} labeled sentences ({matched} matched) to {out}")
    return 0


def cmd_build_dataset(args) -> int:
    config = _load_config(args)
    labeled = _read_labeled(_require(Path(args.labeled or config.path("labeled")), "labeled"))
    graphs = _graphs_by_sentence(_require(Path(args.parses or config.path("parses")), "parses"))
    result = build_sdp_dataset(labeled, graphs, config.fuzzy_threshold)
    patterns = result.patterns
    out_dir = Path(args.out_dir or config.workdir)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_patterns(patterns, out_dir / config.filenames["patterns"])
    if args.emit_review_template:
        write_review_template(patterns, _out(args.emit_review_template))
    if args.review:
        before = len(patterns)
        patterns = apply_review(patterns, args.review)
        print(f"review kept {len(patterns)} of {before} instances")
    split = split_dataset(patterns, config.split_ratios, config.seed)
    write_patterns(split.train, out_dir / config.filenames["train"])
    write_patterns(split.dev, out_dir / config.filenames["dev"])
    write_patterns(split.test, out_dir / config.filenames["test"])
    accounting = {
        "attempted": result.attempted,
        "emitted": len(result.patterns),
        "discards": dict(sorted(result.discards.items())),
    }
    with open(out_dir / config.filenames["discards"], "w", encoding="utf-8") as fh:
        json.dump(accounting, fh, ensure_ascii=False, sort_keys=True, indent=1)
        fh.write("\n")
    print(
        f"extracted {len(result.patterns)} instances "
        f"({result.attempted - len(result.patterns)} discarded); "
        f"split {len(split.train)}/{len(split.dev)}/{len(split.test)}"
    )
    return 0


def cmd_build_indices(args) -> int:
    config = _load_config(args)
    train_path = _require(Path(args.train or config.path("train")), "train")
    patterns = read_patterns(train_path)
    provenance = {
        "source": train_path.name,
        "source_sha256": _file_sha256(train_path),
        "toolkit": f"relexkit {__version__}",
    }
    syn = build_syntactic_index(patterns, config.key_mode, provenance=provenance)
    sem = build_semantic_index(
        build_frequency_matrix(patterns, config.key_mode),
        config.key_mode,
        provenance=provenance,
    )
    sem.validate_norms()
    out_syn = _out(args.out_syntactic or config.path("syntactic_index"))
    out_sem = _out(args.out_semantic or config.path("semantic_index"))
    save_syntactic_index(syn, out_syn)
    save_semantic_index(sem, out_sem)
    mean = syn.stats.mean_patterns_per_anchor
    print(
        f"syntactic index: {syn.stats.unique_anchors} anchors, "
        f"{syn.stats.unique_patterns} patterns, "
        f"{syn.stats.ambiguous_patterns} ambiguous, "
        f"mean {float(mean):.2f} patterns/anchor -> {out_syn}"
    )
    print(f"semantic index: {len(sem.words)} words x {len(sem.properties)} properties -> {out_sem}")
    return 0


def cmd_extract(args) -> int:
    config = _load_config(args)
    syn = load_syntactic_index(_require(Path(args.syntactic or config.path("syntactic_index")), "syntactic_index"))
    ensure_key_mode(syn.key_mode, config.key_mode, "syntactic index")
    graphs = []
    with open(_require(Path(args.conllu or config.path("parses")), "parses"), encoding="utf-8") as fh:
        graphs = parse_conllu(fh)
    out = _out(args.out or config.path("candidates"))
    count = 0
    with open(out, "w", encoding="utf-8") as fh:
        for g in graphs:
            for c in filter_longest(match_patterns(syn, g)):
                row = {
                    "sentence": g.sentence_text,
                    "labels": sorted(c.possible_labels),
                    "pattern_id": c.matched_pattern.pattern_id,
                    "anchor": c.subgraph.anchor,
                    "source": c.subgraph.source,
                    "target": c.subgraph.target,
                    "nodes": sorted(c.node_set),
                }
                fh.write(json.dumps(row, ensure_ascii=False, sort_keys=True) + "\n")
                count += 1
    print(f"extracted {count} candidates to {out}")
    return 0


def cmd_classify(args) -> int:
    config = _load_config(args)
    syn = load_syntactic_index(_require(Path(args.syntactic or config.path("syntactic_index")), "syntactic_index"))
    sem = load_semantic_index(_require(Path(args.semantic or config.path("semantic_index")), "semantic_index"))
    ensure_key_mode(syn.key_mode, config.key_mode, "syntactic index")
    ensure_key_mode(sem.key_mode, config.key_mode, "semantic index")
    threshold = config.semantic_threshold if args.threshold is None else args.threshold
    if not 0 <= threshold <= 1:
        raise UserError(f"threshold must be in [0, 1], got {threshold}")
    with open(_require(Path(args.conllu or config.path("parses")), "parses"), encoding="utf-8") as fh:
        graphs = parse_conllu(fh)
    out = _out(args.out or config.path("predictions"))
    with open(out, "w", encoding="utf-8") as fh:
        for g in graphs:
            candidates = filter_longest(match_patterns(syn, g))
            if not candidates:
                row = {
                    "sentence": g.sentence_text,
                    "label": OTHER_LABEL,
                    "score": None,
                    "pattern_id": None,
                    "anchor": None,
                    "source": None,
                    "target": None,
                    "nodes": [],
                }
                fh.write(json.dumps(row, ensure_ascii=False, sort_keys=True) + "\n")
                continue
            for c in candidates:
                prediction = classify(sem, c, threshold)
                row = {
                    "sentence": g.sentence_text,
                    "label": prediction.label,
                    "score": prediction.score,
                    "pattern_id": c.matched_pattern.pattern_id,
                    "anchor": c.subgraph.anchor,
                    "source": c.subgraph.source,
                    "target": c.subgraph.target,
                    "nodes": sorted(c.node_set),
                }
                fh.write(json.dumps(row, ensure_ascii=False, sort_keys=True) + "\n")
    print(f"wrote predictions to {out}")
    return 0


def _parse_thresholds(spec: str) -> list[float]:
    try:
        values = [float(part) for part in spec.split(",") if part.strip()]
    except ValueError:
        raise UserError(f"cannot parse threshold list {spec!r}") from None
    if not values or sorted(values) != values:
        raise UserError("thresholds must be a non-empty ascending list")
    return values


def cmd_evaluate(args) -> int:
    config = _load_config(args)
    syn = load_syntactic_index(_require(Path(args.syntactic or config.path("syntactic_index")), "syntactic_index"))
    sem = load_semantic_index(_require(Path(args.semantic or config.path("semantic_index")), "semantic_index"))
    ensure_key_mode(syn.key_mode, config.key_mode, "syntactic index")
    ensure_key_mode(sem.key_mode, config.key_mode, "semantic index")
    dataset = read_patterns(_require(Path(args.dataset), "dev"))
    samples = score_dataset(dataset, syn, sem, mode=args.mode)
    thresholds = _parse_thresholds(args.thresholds)
    rows = threshold_sweep(samples, thresholds, averaging=args.averaging)
    out_metrics = _out(args.out_metrics or config.path("metrics"))
    write_metrics_tsv(rows, out_metrics)
    taxonomy_threshold = (
        config.semantic_threshold
        if args.taxonomy_threshold is None
        else args.taxonomy_threshold
    )
    counts = error_taxonomy(records_at_threshold(samples, taxonomy_threshold))
    out_taxonomy = _out(args.out_taxonomy or config.path("taxonomy"))
    write_taxonomy_json(counts, out_taxonomy)
    for row in rows:
        print(
            f"threshold {row.threshold:.1f}: P {row.precision:.3f} "
            f"R {row.recall:.3f} F1 {row.f1:.3f} ({row.averaging}, {args.mode})"
        )
    print(f"error taxonomy at threshold {taxonomy_threshold:.1f}: {counts}")
    return 0


def cmd_stats(args) -> int:
    config = _load_config(args)
    shown = False
    if args.datasets:
        labels: set[str] = set()
        per_split: list[tuple[str, dict[str, int]]] = []
        for path in args.datasets:
            patterns = read_patterns(_require(Path(path), "patterns"))
            counts: dict[str, int] = {}
            for p in patterns:
                counts[p.primary_label()] = counts.get(p.primary_label(), 0) + 1
            labels.update(counts)
            per_split.append((Path(path).stem, counts))
        ordered = sorted(labels - {OTHER_LABEL}) + ([OTHER_LABEL] if OTHER_LABEL in labels else [])
        header = "label\t" + "\t".join(name for name, _ in per_split)
        print(header)
        for label in ordered:
            print(label + "\t" + "\t".join(str(counts.get(label, 0)) for _, counts in per_split))
        print("Total\t" + "\t".join(str(sum(counts.values())) for _, counts in per_split))
        shown = True
    if args.syntactic:
        syn = load_syntactic_index(Path(args.syntactic))
        mean = syn.stats.mean_patterns_per_anchor
        print(f"unique anchors\t{syn.stats.unique_anchors}")
        print(f"unique patterns\t{syn.stats.unique_patterns}")
        print(f"ambiguous patterns\t{syn.stats.ambiguous_patterns}")
        print(f"mean patterns per anchor\t{float(mean):.2f}")
        shown = True
    if args.semantic:
        sem = load_semantic_index(Path(args.semantic))
        print(f"unique words\t{len(sem.words)}")
        shown = True
    if not shown:
        raise UserError("nothing to report; pass --datasets, --syntactic or --semantic")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relexkit",
        description="Distantly supervised relation-extraction pipeline",
    )
    parser.add_argument("--version", action="version", version=f"relexkit {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="path to a JSON pipeline config")
    common.add_argument("--seed", type=int, help="override the config seed")
    common.add_argument("--threads", type=int, default=1, help="worker threads for fetching")
    common.add_argument("--verbose", action="store_true", help="log at INFO level")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", parents=[common], help="fetch items and page sentences")
    p.add_argument("--items", required=True, help="file with one item id per line")
    p.add_argument("--cache-dir", help="override the cache directory")
    p.add_argument("--offline", action="store_true", help="serve everything from cache")
    p.add_argument("--out-sentences")
    p.add_argument("--out-statements")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("annotate", parents=[common], help="weakly label sentences")
    p.add_argument("--sentences")
    p.add_argument("--statements")
    p.add_argument("--out")
    p.set_defaults(func=cmd_annotate)

    p = sub.add_parser("build-dataset", parents=[common], help="extract patterns and split")
    p.add_argument("--labeled")
    p.add_argument("--parses")
    p.add_argument("--out-dir")
    p.add_argument("--review", help="review file; dropped instances are excluded")
    p.add_argument("--emit-review-template", help="write a review template here")
    p.set_defaults(func=cmd_build_dataset)

    p = sub.add_parser("build-indices", parents=[common], help="build both indices from train")
    p.add_argument("--train")
    p.add_argument("--out-syntactic")
    p.add_argument("--out-semantic")
    p.set_defaults(func=cmd_build_indices)

    p = sub.add_parser("extract", parents=[common], help="extract candidates from CoNLL-U")
    p.add_argument("--syntactic")
    p.add_argument("--conllu")
    p.add_argument("--out")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("classify", parents=[common], help="extract and classify candidates")
    p.add_argument("--syntactic")
    p.add_argument("--semantic")
    p.add_argument("--conllu")
    p.add_argument("--threshold", type=float)
    p.add_argument("--out")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("evaluate", parents=[common], help="metrics sweep and error taxonomy")
    p.add_argument("--syntactic")
    p.add_argument("--semantic")
    p.add_argument("--dataset", required=True, help="patterns JSONL with gold labels")
    p.add_argument("--mode", choices=("simulated", "e2e"), default="simulated")
    p.add_argument("--averaging", choices=("micro", "macro"), default="micro")
    p.add_argument(
        "--thresholds",
        default="0.0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9",
        help="comma-separated ascending thresholds",
    )
    p.add_argument("--taxonomy-threshold", type=float)
    p.add_argument("--out-metrics")
    p.add_argument("--out-taxonomy")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("stats", parents=[common], help="dataset and index summaries")
    p.add_argument("--datasets", nargs="*", default=[], help="pattern files to summarize")
    p.add_argument("--syntactic")
    p.add_argument("--semantic")
    p.set_defaults(func=cmd_stats)
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # argparse exits on usage errors and --help
        return 0 if exc.code in (0, None) else 1
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except RelexkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
