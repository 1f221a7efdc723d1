"""Run configuration shared by all pipeline commands."""

import dataclasses
import json
from dataclasses import dataclass, field
from pathlib import Path

from .depgraph import KEY_MODES
from .errors import UserError
from .ingest.statements import DEFAULT_PROPERTY_FILTER


@dataclass
class PipelineConfig:
    language: str = "fr"
    property_filter: tuple[str, ...] = DEFAULT_PROPERTY_FILTER
    fuzzy_threshold: float = 0.9
    semantic_threshold: float = 0.0
    key_mode: str = "lemma"
    split_ratios: tuple[float, float, float] = (0.8, 0.1, 0.1)
    seed: int = 13
    cache_dir: str | None = None
    kb_endpoint: str | None = None
    page_endpoint: str | None = None
    rate_limit: float = 0.0
    workdir: str = "."
    filenames: dict = field(
        default_factory=lambda: {
            "sentences": "sentences.jsonl",
            "statements": "statements.jsonl",
            "labeled": "labeled.jsonl",
            "parses": "parses.conllu",
            "patterns": "patterns.jsonl",
            "train": "train.jsonl",
            "dev": "dev.jsonl",
            "test": "test.jsonl",
            "discards": "discards.json",
            "syntactic_index": "syntactic-index.json",
            "semantic_index": "semantic-index.json",
            "candidates": "candidates.jsonl",
            "predictions": "predictions.jsonl",
            "metrics": "metrics.tsv",
            "taxonomy": "taxonomy.json",
        }
    )

    def __post_init__(self):
        self.property_filter = tuple(self.property_filter)
        self.split_ratios = tuple(self.split_ratios)
        for name in ("fuzzy_threshold", "semantic_threshold"):
            value = getattr(self, name)
            if not 0 <= value <= 1:
                raise UserError(f"{name} must be in [0, 1], got {value}")
        if self.key_mode not in KEY_MODES:
            raise UserError(
                f"key_mode must be one of {KEY_MODES}, got {self.key_mode!r}"
            )
        if len(self.split_ratios) != 3 or abs(sum(self.split_ratios) - 1.0) > 1e-9:
            raise UserError(f"split_ratios must be three values summing to 1")

    def path(self, name: str) -> Path:
        return Path(self.workdir) / self.filenames[name]

    @classmethod
    def from_file(cls, path: "str | Path") -> "PipelineConfig":
        try:
            with open(path, encoding="utf-8") as fh:
                raw = json.load(fh)
        except FileNotFoundError:
            raise UserError(f"config file not found: {path}") from None
        except json.JSONDecodeError as exc:
            raise UserError(f"config file {path} is not valid JSON: {exc}") from None
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(raw) - known
        if unknown:
            raise UserError(f"unknown config keys: {sorted(unknown)}")
        merged = dict(raw)
        if "filenames" in merged:
            defaults = cls().filenames
            defaults.update(merged["filenames"])
            merged["filenames"] = defaults
        return cls(**merged)

    def to_file(self, path: "str | Path"):
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(dataclasses.asdict(self), fh, ensure_ascii=False, indent=1, sort_keys=True)
            fh.write("\n")
