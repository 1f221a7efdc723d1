"""Knowledge-base and encyclopedia ingestion: items, pages, sentences, statements."""

from .dates import KBDate, localize_date
from .kb import (
    DiskCache,
    HttpTransport,
    ItemRecord,
    ItemRef,
    RateLimiter,
    WikidataClient,
    parse_entity_payload,
)
from .pagetext import extract_page_paragraphs
from .sentences import clean_sentence, split_sentences
from .statements import (
    SentenceRecord,
    StatementTriple,
    assemble_statements,
    read_sentences,
    read_statements,
    write_sentences,
    write_statements,
)

__all__ = [
    "DiskCache",
    "HttpTransport",
    "ItemRecord",
    "ItemRef",
    "KBDate",
    "RateLimiter",
    "SentenceRecord",
    "StatementTriple",
    "WikidataClient",
    "assemble_statements",
    "clean_sentence",
    "extract_page_paragraphs",
    "localize_date",
    "parse_entity_payload",
    "read_sentences",
    "read_statements",
    "split_sentences",
    "write_sentences",
    "write_statements",
]
