"""Paragraph text extraction from encyclopedia page HTML."""

import re
from html.parser import HTMLParser

_WS = re.compile(r"\s+")


class _ParagraphCollector(HTMLParser):
    """Collects the text content of <p> elements, markup stripped."""

    _SKIPPED = {"script", "style"}

    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.paragraphs: list[str] = []
        self._in_p = False
        self._skip_depth = 0
        self._chunks: list[str] = []

    def handle_starttag(self, tag, attrs):
        if tag == "p":
            if self._in_p:
                self._flush()
            self._in_p = True
        elif tag in self._SKIPPED:
            self._skip_depth += 1

    def handle_endtag(self, tag):
        if tag == "p" and self._in_p:
            self._flush()
            self._in_p = False
        elif tag in self._SKIPPED and self._skip_depth:
            self._skip_depth -= 1

    def handle_data(self, data):
        if self._in_p and not self._skip_depth:
            self._chunks.append(data)

    def close(self):
        super().close()
        if self._in_p:
            self._flush()
            self._in_p = False

    def _flush(self):
        text = _WS.sub(" ", "".join(self._chunks)).strip()
        self._chunks = []
        if text:
            self.paragraphs.append(text)


def extract_page_paragraphs(html: str) -> list[str]:
    """Text of each paragraph element in document order; empty ones dropped."""
    collector = _ParagraphCollector()
    collector.feed(html)
    collector.close()
    return collector.paragraphs
