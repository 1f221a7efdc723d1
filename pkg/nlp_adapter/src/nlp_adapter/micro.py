"""Built-in deterministic French pipeline: tokenizer, tagger, rule parser.

A small lexicon plus an attachment cascade produce plausible basic
Universal Dependencies trees for simple declarative sentences. The engine
is fully deterministic: the same input always yields the same tree. Words
outside the lexicon get fallback tags, and every token ends up attached,
so parsing never fails and always produces a single-root tree.
"""

import re
from dataclasses import dataclass

from .lexicon import LEXICON, MONTHS

MODEL_NAME = "micro-fr"
MODEL_VERSION = "1.0.0"

_CLITIC = re.compile(r"^([ldjncsmt]['’]|qu['’])(?=\S)", re.IGNORECASE)
_TRAILING_PUNCT = re.compile(r"([.,;:!?…»)\]]+)$")
_LEADING_PUNCT = re.compile(r"^([(«\[]+)")
_NUMERIC = re.compile(r"^\d+([.,]\d+)?$")

NOMINAL = ("NOUN", "PROPN", "NUM", "PRON")


@dataclass
class Token:
    index: int  # 1-based
    form: str
    lemma: str
    upos: str
    head: int = 0
    deprel: str = "dep"


def tokenize(sentence: str) -> list[str]:
    tokens: list[str] = []
    for chunk in sentence.split():
        lead = _LEADING_PUNCT.match(chunk)
        if lead:
            tokens.extend(lead.group(1))
            chunk = chunk[lead.end():]
        trail = _TRAILING_PUNCT.search(chunk)
        trailing = ""
        if trail:
            trailing = trail.group(1)
            chunk = chunk[: trail.start()]
        while True:
            clitic = _CLITIC.match(chunk)
            if not clitic:
                break
            tokens.append(clitic.group(1))
            chunk = chunk[clitic.end():]
        if chunk:
            tokens.append(chunk)
        tokens.extend(trailing)
    return tokens


def tag(forms: list[str]) -> list[Token]:
    tokens = []
    for i, form in enumerate(forms, start=1):
        entry = LEXICON.get(form.lower())
        if entry:
            lemma, upos = entry
        elif _NUMERIC.match(form):
            lemma, upos = form, "NUM"
        elif not any(ch.isalnum() for ch in form):
            lemma, upos = form, "PUNCT"
        elif form[:1].isupper():
            lemma, upos = form, "PROPN"
        else:
            lemma, upos = form.lower(), "NOUN"
        tokens.append(Token(index=i, form=form, lemma=lemma, upos=upos))
    return tokens


def _find_root(tokens: list[Token]) -> Token:
    for t in tokens:
        if t.upos == "VERB":
            return t
    # copular clause: predicate nominal or adjective after the first auxiliary
    aux_pos = next((t.index for t in tokens if t.upos == "AUX"), None)
    if aux_pos is not None:
        for t in tokens:
            if t.index > aux_pos and t.upos in ("NOUN", "PROPN", "ADJ", "NUM"):
                return t
    for t in tokens:
        if t.upos in ("NOUN", "PROPN", "ADJ"):
            return t
    return tokens[0]


# Prepositions whose phrase modifies an adjacent nominal rather than the verb.
_NMOD_PREPS = {"de", "d'", "d’", "du", "sur"}


def parse_tokens(tokens: list[Token]) -> list[Token]:
    if not tokens:
        return tokens
    root = _find_root(tokens)
    root.head = 0
    root.deprel = "root"
    attached = {root.index}
    by_index = {t.index: t for t in tokens}

    def attach(tok: Token, head: Token, deprel: str):
        if tok.index in attached:
            return
        tok.head = head.index
        tok.deprel = deprel
        attached.add(tok.index)

    # auxiliaries: aux to a verbal root, cop to a nominal or adjectival one
    for t in tokens:
        if t.upos == "AUX":
            attach(t, root, "aux:tense" if root.upos == "VERB" else "cop")

    # date groups: [DET]? NUM MONTH [NUM] headed by the month noun
    i = 0
    date_heads = []
    while i < len(tokens):
        t = tokens[i]
        if t.upos == "NOUN" and t.lemma in MONTHS:
            head = t
            if i >= 1 and tokens[i - 1].upos == "NUM":
                attach(tokens[i - 1], head, "nummod")
                if i >= 2 and tokens[i - 2].upos == "DET":
                    attach(tokens[i - 2], head, "det")
            if i + 1 < len(tokens) and tokens[i + 1].upos == "NUM":
                attach(tokens[i + 1], head, "nummod")
            date_heads.append(head)
        i += 1

    # proper-name runs: later tokens attach flat to the first
    i = 0
    while i < len(tokens):
        if tokens[i].upos == "PROPN":
            j = i + 1
            while j < len(tokens) and tokens[j].upos == "PROPN":
                attach(tokens[j], tokens[i], "flat:name")
                j += 1
            i = j
        else:
            i += 1

    def nominal_after(position: int) -> Token | None:
        for t in tokens[position:]:
            if t.index in attached and t.deprel == "flat:name":
                continue
            if t.upos in ("NOUN", "PROPN", "NUM"):
                return t
            if t.upos not in ("DET", "ADJ", "ADV"):
                return None
        return None

    # adpositions mark the next nominal head; remember who marked whom
    marked: dict[int, Token] = {}
    for t in tokens:
        if t.upos == "ADP":
            head = nominal_after(t.index)  # t.index is 1-based: next token onward
            if head is not None:
                attach(t, head, "case")
                marked.setdefault(head.index, t)
            else:
                attach(t, root, "case")

    # determiners
    for t in tokens:
        if t.upos != "DET" or t.index in attached:
            continue
        head = nominal_after(t.index)
        if head is None:
            head = next(
                (x for x in tokens[t.index:] if x.upos == "ADJ"), None
            )
        attach(t, head or root, "det")

    # adjectives prefer the adjacent preceding nominal
    for t in tokens:
        if t.upos != "ADJ" or t.index in attached:
            continue
        prev = next(
            (
                x
                for x in reversed(tokens[: t.index - 1])
                if x.upos not in ("ADJ", "ADV", "DET")
            ),
            None,
        )
        if prev is not None and prev.upos in ("NOUN", "PROPN"):
            attach(t, prev, "amod")
            continue
        nxt = next(
            (x for x in tokens[t.index:] if x.upos not in ("ADJ", "ADV", "DET")),
            None,
        )
        if nxt is not None and nxt.upos in ("NOUN", "PROPN"):
            attach(t, nxt, "amod")
        elif t.index > root.index and root.upos == "VERB":
            attach(t, root, "xcomp")
        else:
            attach(t, root, "dep")

    # adverbs lean on the following adjective or verb
    for t in tokens:
        if t.upos == "ADV" and t.index not in attached:
            nxt = next(
                (x for x in tokens[t.index:] if x.upos in ("ADJ", "VERB")), None
            )
            attach(t, nxt or root, "advmod")

    # remaining nominal heads: subjects, objects, obliques, noun modifiers
    subject_taken = False
    object_taken = False
    for t in tokens:
        if t.index in attached or t.upos not in NOMINAL:
            continue
        marker = marked.get(t.index)
        if marker is not None:
            anchor = next(
                (
                    x
                    for x in reversed(tokens[: marker.index - 1])
                    if x.upos not in ("ADJ", "ADV")
                ),
                None,
            )
            if (
                marker.lemma in _NMOD_PREPS
                and anchor is not None
                and anchor.upos in ("NOUN", "PROPN")
                and anchor.index != t.index
            ):
                attach(t, anchor, "nmod")
            else:
                attach(t, root, "obl")
            continue
        if t in date_heads:
            attach(t, root, "obl:mod")
            continue
        if t.upos == "PRON":
            attach(t, root, "nsubj" if t.index < root.index else "obj")
            subject_taken = subject_taken or t.index < root.index
            continue
        if t.upos == "NUM":
            nxt = by_index.get(t.index + 1)
            if nxt is not None and nxt.upos == "NOUN":
                attach(t, nxt, "nummod")
            else:
                attach(t, root, "dep")
            continue
        if t.index < root.index and not subject_taken:
            attach(t, root, "nsubj")
            subject_taken = True
            continue
        if t.index > root.index and t.upos == "PROPN":
            prev = by_index.get(t.index - 1)
            if prev is not None and prev.upos == "NOUN":
                attach(t, prev, "nmod")
                continue
        if t.index > root.index and not object_taken and t.upos in ("NOUN", "PROPN"):
            attach(t, root, "obj")
            object_taken = True
            continue
        attach(t, root, "dep")

    # punctuation and anything still loose hangs off the root
    for t in tokens:
        if t.index not in attached:
            attach(t, root, "punct" if t.upos == "PUNCT" else "dep")
    return tokens


def parse_sentence(sentence: str) -> list[Token]:
    return parse_tokens(tag(tokenize(sentence)))
