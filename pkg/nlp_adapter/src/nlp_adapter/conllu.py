"""CoNLL-U rendering and structural validation."""

from .micro import Token


def render_document(
    parsed: list[tuple[str, list[Token] | Exception]],
    model_name: str,
    model_version: str,
    generator: str = "nlp-adapter",
) -> str:
    """One sentence block per input sentence, order preserved.

    A sentence whose parse raised becomes a comment-only block carrying an
    error marker, never a silent drop.
    """
    lines = [f"# generator = {generator}", f"# model = {model_name} {model_version}"]
    for sent_id, (text, outcome) in enumerate(parsed, start=1):
        lines.append("")
        lines.append(f"# sent_id = {sent_id}")
        lines.append(f"# text = {text}")
        if isinstance(outcome, Exception):
            lines.append(f"# error = {outcome}")
            continue
        for tok in outcome:
            lines.append(
                "\t".join(
                    (
                        str(tok.index),
                        tok.form,
                        tok.lemma,
                        tok.upos,
                        "_",
                        "_",
                        str(tok.head),
                        tok.deprel,
                        "_",
                        "_",
                    )
                )
            )
    return "\n".join(lines) + "\n"


class ValidationError(ValueError):
    pass


def validate_document(text: str) -> int:
    """Structural CoNLL-U check; returns the number of token-bearing blocks.

    Verifies the 10-column shape, contiguous 1..n token ids, in-range heads,
    exactly one head-0 token per block, and acyclicity of the head relation.
    """
    blocks: list[list[str]] = []
    current: list[str] = []
    for raw in text.splitlines():
        if not raw.strip():
            if current:
                blocks.append(current)
                current = []
            continue
        if raw.startswith("#"):
            continue
        current.append(raw)
    if current:
        blocks.append(current)

    for b_no, block in enumerate(blocks, start=1):
        rows = []
        for line in block:
            cols = line.split("\t")
            if len(cols) != 10:
                raise ValidationError(
                    f"block {b_no}: expected 10 columns, found {len(cols)}: {line!r}"
                )
            if "-" in cols[0] or "." in cols[0]:
                continue
            if not cols[0].isdigit() or not cols[6].isdigit():
                raise ValidationError(f"block {b_no}: non-integer id or head: {line!r}")
            for idx in (1, 2, 3, 7):
                if not cols[idx]:
                    raise ValidationError(f"block {b_no}: empty column {idx}: {line!r}")
            rows.append((int(cols[0]), int(cols[6])))
        ids = [r[0] for r in rows]
        if ids != list(range(1, len(ids) + 1)):
            raise ValidationError(f"block {b_no}: token ids are not contiguous from 1")
        heads = {tid: head for tid, head in rows}
        if sum(1 for h in heads.values() if h == 0) != 1:
            raise ValidationError(f"block {b_no}: expected exactly one root")
        for tid, head in rows:
            if head != 0 and head not in heads:
                raise ValidationError(f"block {b_no}: head {head} out of range")
            seen = {tid}
            cur = head
            while cur != 0:
                if cur in seen:
                    raise ValidationError(f"block {b_no}: head cycle at token {tid}")
                seen.add(cur)
                cur = heads[cur]
    return len(blocks)
