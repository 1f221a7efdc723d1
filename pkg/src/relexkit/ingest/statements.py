"""Statement triples, sentence records, and their JSON-lines formats."""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable

from ..errors import NotFoundError, TransportError
from .dates import KBDate, localize_date
from .kb import ItemRecord, ItemRef

log = logging.getLogger(__name__)

# Properties targeted by default: place of birth, date of birth,
# date of death, occupation, spouse, educated at.
DEFAULT_PROPERTY_FILTER = ("P19", "P569", "P570", "P106", "P26", "P69")


@dataclass(frozen=True)
class SentenceRecord:
    text: str
    page_title: str
    position: int


@dataclass(frozen=True)
class StatementTriple:
    """(source designations, property, target designations)."""

    source_designations: tuple[str, ...]
    property_id: str
    target_designations: tuple[str, ...]

    def __post_init__(self):
        if not self.source_designations or not self.target_designations:
            raise ValueError("statement triple with an empty designation list")
        if not self.property_id:
            raise ValueError("statement triple without a property id")


def _dedup(items: Iterable[str]) -> tuple[str, ...]:
    return tuple(dict.fromkeys(i for i in items if i))


def assemble_statements(
    item: ItemRecord,
    property_filter: Iterable[str] | None,
    language: str,
    resolve_item: Callable[[str], ItemRecord],
) -> list[StatementTriple]:
    """One triple per statement whose property passes the filter.

    Item-valued targets are resolved into designations via ``resolve_item``;
    dates are localized; numeric or textual values are taken as is. A
    failing target resolution skips that triple and the pipeline continues.
    """
    sources = _dedup(item.designations())
    if not sources:
        log.warning("item %s has no designations; skipping all statements", item.item_id)
        return []
    wanted = set(property_filter or ())
    triples: list[StatementTriple] = []
    for prop, value in item.raw_statements:
        if wanted and prop not in wanted:
            continue
        if isinstance(value, ItemRef):
            try:
                targets = _dedup(resolve_item(value.item_id).designations())
            except (NotFoundError, TransportError) as exc:
                log.warning(
                    "skipping %s %s: target %s unresolved (%s)",
                    item.item_id, prop, value.item_id, exc,
                )
                continue
        elif isinstance(value, KBDate):
            targets = (localize_date(value, language),)
        else:
            targets = _dedup([value])
        if not targets:
            log.warning("skipping %s %s: empty target designations", item.item_id, prop)
            continue
        triples.append(StatementTriple(sources, prop, targets))
    return triples


def write_statements(triples: Iterable[StatementTriple], path: "str | Path"):
    with open(path, "w", encoding="utf-8") as fh:
        for t in triples:
            fh.write(
                json.dumps(
                    {
                        "source": list(t.source_designations),
                        "property": t.property_id,
                        "target": list(t.target_designations),
                    },
                    ensure_ascii=False,
                )
                + "\n"
            )


def read_statements(path: "str | Path") -> list[StatementTriple]:
    triples = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            row = json.loads(line)
            triples.append(
                StatementTriple(
                    source_designations=tuple(row["source"]),
                    property_id=row["property"],
                    target_designations=tuple(row["target"]),
                )
            )
    return triples


def write_sentences(records: Iterable[SentenceRecord], path: "str | Path"):
    with open(path, "w", encoding="utf-8") as fh:
        for r in records:
            fh.write(
                json.dumps(
                    {"text": r.text, "page": r.page_title, "position": r.position},
                    ensure_ascii=False,
                )
                + "\n"
            )


def read_sentences(path: "str | Path") -> list[SentenceRecord]:
    records = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            row = json.loads(line)
            records.append(
                SentenceRecord(
                    text=row["text"], page_title=row["page"], position=row["position"]
                )
            )
    return records
