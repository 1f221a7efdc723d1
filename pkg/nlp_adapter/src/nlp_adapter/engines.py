"""Parsing engines: the built-in deterministic micro model, plus any
installed spaCy pipeline addressed as "spacy:<package_name>"."""

from . import micro
from .micro import Token


class UnknownModelError(ValueError):
    pass


def _spacy_models() -> list[str]:
    try:
        import spacy.util
    except ImportError:
        return []
    return [f"spacy:{name}" for name in sorted(spacy.util.get_installed_models())]


def installed_models() -> list[str]:
    return [micro.MODEL_NAME] + _spacy_models()


class MicroEngine:
    name = micro.MODEL_NAME
    version = micro.MODEL_VERSION

    def parse(self, sentence: str) -> list[Token]:
        return micro.parse_sentence(sentence)


class SpacyEngine:
    def __init__(self, model_name: str):
        try:
            import spacy
        except ImportError:
            raise UnknownModelError(
                f"model 'spacy:{model_name}' requires the spacy extra; "
                f"installed models: {', '.join(installed_models())}"
            ) from None
        try:
            self._nlp = spacy.load(model_name)
        except OSError:
            raise UnknownModelError(
                f"spaCy model {model_name!r} is not installed; "
                f"installed models: {', '.join(installed_models())}"
            ) from None
        self.name = f"spacy:{model_name}"
        self.version = self._nlp.meta.get("version", "unknown")

    def parse(self, sentence: str) -> list[Token]:
        doc = self._nlp(sentence)
        tokens = []
        for i, tok in enumerate(doc, start=1):
            head = 0 if tok.head is tok else tok.head.i + 1
            deprel = "root" if head == 0 else tok.dep_
            tokens.append(
                Token(
                    index=i,
                    form=tok.text,
                    lemma=tok.lemma_ or tok.text,
                    upos=tok.pos_ or "X",
                    head=head,
                    deprel=deprel,
                )
            )
        return tokens


# The documented default for French mirrors the preprocessing setup this
# adapter replaces; it is only usable where that spaCy model is installed.
DEFAULT_MODELS = {"fr": "spacy:fr_core_news_trf"}


def load_engine(model: str):
    if model == micro.MODEL_NAME:
        return MicroEngine()
    if model.startswith("spacy:"):
        return SpacyEngine(model.split(":", 1)[1])
    raise UnknownModelError(
        f"unknown model {model!r}; installed models: {', '.join(installed_models())}"
    )
