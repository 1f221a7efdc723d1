"""Command-line entry point: sentences JSONL in, CoNLL-U out.

Exit codes follow the pipeline convention: 0 success, 1 usage error,
2 data error.
"""

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .conllu import ValidationError, render_document, validate_document
from .engines import DEFAULT_MODELS, UnknownModelError, load_engine


def read_sentences(path: Path) -> list[str]:
    sentences = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                row = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{path}:{line_no}: not valid JSON: {exc}") from None
            if isinstance(row, str):
                sentences.append(row)
            elif isinstance(row, dict) and "text" in row:
                sentences.append(row["text"])
            else:
                raise ValueError(
                    f"{path}:{line_no}: expected a string or an object with a 'text' key"
                )
    return sentences


def parse_batch(sentences: list[str], model: str) -> str:
    engine = load_engine(model)
    parsed = []
    for text in sentences:
        try:
            parsed.append((text, engine.parse(text)))
        except Exception as exc:  # a sentence must never vanish silently
            parsed.append((text, exc))
    document = render_document(
        parsed, engine.name, engine.version, generator=f"nlp-adapter {__version__}"
    )
    validate_document(document)
    return document


def cmd_parse(args) -> int:
    model = args.model or DEFAULT_MODELS.get(args.lang)
    if model is None:
        print(
            f"error: no default model for language {args.lang!r}; pass --model",
            file=sys.stderr,
        )
        return 1
    in_path = Path(args.infile)
    if not in_path.exists():
        print(f"error: input file {in_path} not found", file=sys.stderr)
        return 1
    try:
        sentences = read_sentences(in_path)
        document = parse_batch(sentences, model)
    except UnknownModelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out_path = Path(args.outfile)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    out_path.write_text(document, encoding="utf-8")
    print(f"parsed {len(sentences)} sentences with {model} -> {args.outfile}")
    return 0


def cmd_models(_args) -> int:
    from .engines import installed_models

    for name in installed_models():
        print(name)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nlp-adapter",
        description="Convert raw sentences into CoNLL-U dependency parses",
    )
    parser.add_argument(
        "--version", action="version", version=f"nlp-adapter {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("parse", help="parse a sentences JSONL file to CoNLL-U")
    p.add_argument("--lang", default="fr")
    p.add_argument("--model", help="model identifier, e.g. micro-fr or spacy:<name>")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", dest="outfile", required=True)
    p.set_defaults(func=cmd_parse)
    p = sub.add_parser("models", help="list installed models")
    p.set_defaults(func=cmd_models)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
