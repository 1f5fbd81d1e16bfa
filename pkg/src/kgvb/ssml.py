"""Plain answer text to SSML, with gene symbols spelled out letter by letter."""

from __future__ import annotations

import re
from xml.sax.saxutils import escape

# All-caps alphanumeric tokens of length >= 2 read better spelled out (TP53,
# BRCA1, DOID, ...); ordinary words and single letters are left alone.
_SYMBOL = re.compile(r"\b[A-Z][A-Z0-9]{1,9}\b")

_ESCAPES = {'"': "&quot;", "'": "&apos;"}


def _xml_legal(ch: str) -> bool:
    # XML 1.0 character range; anything outside cannot appear even escaped
    code = ord(ch)
    return (
        code in (0x9, 0xA, 0xD)
        or 0x20 <= code <= 0xD7FF
        or 0xE000 <= code <= 0xFFFD
        or 0x10000 <= code <= 0x10FFFF
    )


def sanitize(text: str) -> str:
    # XML line-end normalization would rewrite \r anyway; do it up front
    text = text.replace("\r\n", "\n").replace("\r", "\n")
    return "".join(ch for ch in text if _xml_legal(ch))


def _xml(text: str) -> str:
    return escape(text, _ESCAPES)


def render_ssml(text: str) -> str:
    """Wrap text in <speak>, escaping XML and marking symbols for spell-out."""
    text = sanitize(text)
    parts: list[str] = []
    pos = 0
    for m in _SYMBOL.finditer(text):
        parts.append(_xml(text[pos : m.start()]))
        parts.append(f'<say-as interpret-as="spell-out">{_xml(m.group(0))}</say-as>')
        pos = m.end()
    parts.append(_xml(text[pos:]))
    return f"<speak>{''.join(parts)}</speak>"
