"""nlp-adapter: raw sentences in, CoNLL-U dependency parses out.

A file-based boundary between text preprocessing and everything that
consumes parses: sentences JSONL on one side, ten-column CoNLL-U on the
other. Ships a deterministic built-in French micro model and can drive any
installed spaCy pipeline.
"""

__version__ = "0.1.0"

from .conllu import ValidationError, render_document, validate_document
from .engines import UnknownModelError, installed_models, load_engine
from .micro import MODEL_NAME, MODEL_VERSION, parse_sentence

__all__ = [
    "MODEL_NAME",
    "MODEL_VERSION",
    "UnknownModelError",
    "ValidationError",
    "installed_models",
    "load_engine",
    "parse_sentence",
    "render_document",
    "validate_document",
]
