"""Deterministic XML and JSON serialization of exploration results.

The CLI and the web service share these functions, so their outputs are
byte-identical for the same logical request.  The XML emitter is
round-trip stable: parsing an emitted document and emitting it again
yields the identical byte sequence.
"""

from __future__ import annotations

import decimal
import json
import xml.etree.ElementTree as ET
from typing import Iterable, Optional

from sere.model import ExplorationResult, RelatedEntity

XML_DECLARATION = b'<?xml version="1.0" encoding="UTF-8"?>\n'

ALLOWED_FIELDS = frozenset({"sr", "category", "thumbnail", "snippets", "description"})


def parse_fields(csv: Optional[str]) -> frozenset[str]:
    """Parse a comma-separated field selection.

    None (parameter absent) selects everything; an explicitly empty
    string selects no optional fields.  Raises ValueError naming the
    first unknown field.
    """
    if csv is None:
        return ALLOWED_FIELDS
    if csv.strip() == "":
        return frozenset()
    names = [part.strip() for part in csv.split(",") if part.strip()]
    for name in names:
        if name not in ALLOWED_FIELDS:
            raise ValueError(name)
    return frozenset(names)


def format_score(value: float) -> str:
    """Exactly 4 decimal places, half-up rounding."""
    quantized = decimal.Decimal(repr(value)).quantize(
        decimal.Decimal("0.0001"), rounding=decimal.ROUND_HALF_UP
    )
    return str(quantized)


def _entity_element(entity: RelatedEntity, fields: frozenset[str]) -> ET.Element:
    elem = ET.Element("entity")
    elem.set("title", entity.concept.title)
    elem.set("url", entity.concept.url)
    if "sr" in fields:
        elem.set("sr", format_score(entity.score.relatedness))
        elem.set("distance", format_score(entity.score.distance))
    if "category" in fields and entity.assigned_category is not None:
        elem.set("category", entity.assigned_category)
    if "thumbnail" in fields and entity.concept.thumbnail:
        elem.set("thumbnail", entity.concept.thumbnail)
    if "snippets" in fields:
        for snippet in entity.snippets:
            child = ET.SubElement(elem, "snippet")
            child.set("track", snippet.track.value)
            child.set("source", snippet.source_title)
            child.text = snippet.text
    return elem


def result_to_element(result: ExplorationResult, fields: frozenset[str]) -> ET.Element:
    root = ET.Element("sere")
    root.set("version", "1")
    root.set("lang", result.concept.lang.code)
    root.set("query", result.query)
    root.set("from_cache", "true" if result.from_cache else "false")

    concept = ET.SubElement(root, "concept")
    concept.set("title", result.concept.title)
    concept.set("url", result.concept.url)
    if "thumbnail" in fields and result.concept.thumbnail:
        concept.set("thumbnail", result.concept.thumbnail)
    if "description" in fields:
        description = ET.SubElement(concept, "description")
        description.text = result.concept.description

    related = ET.SubElement(root, "related")
    related.set("count", str(len(result.entities)))
    for entity in result.entities:
        related.append(_entity_element(entity, fields))

    if "category" in fields:
        categories = ET.SubElement(root, "categories")
        for name, size in result.category_index:
            entry = ET.SubElement(categories, "category")
            entry.set("name", name)
            entry.set("size", str(size))
    return root


def serialize_xml(result: ExplorationResult, fields: Optional[Iterable[str]] = None) -> bytes:
    selected = frozenset(fields) if fields is not None else ALLOWED_FIELDS
    root = result_to_element(result, selected)
    ET.indent(root, space="  ")
    return emit(root)


def error_xml(code: str, message: str) -> bytes:
    root = ET.Element("error")
    root.set("code", code)
    root.text = message
    return emit(root)


def emit(root: ET.Element) -> bytes:
    """Emit an element tree deterministically, with XML declaration."""
    parts: list[str] = []
    _emit(root, parts)
    return XML_DECLARATION + "".join(parts).encode("utf-8") + b"\n"


def reserialize(document: bytes) -> bytes:
    """Parse an emitted document and emit it again (round-trip check)."""
    body = document
    if body.startswith(XML_DECLARATION):
        body = body[len(XML_DECLARATION):]
    return emit(ET.fromstring(body))


def _escape_text(value: str) -> str:
    return value.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _escape_attr(value: str) -> str:
    return _escape_text(value).replace('"', "&quot;")


def _emit(elem: ET.Element, parts: list[str]) -> None:
    parts.append(f"<{elem.tag}")
    for name, value in elem.attrib.items():
        parts.append(f' {name}="{_escape_attr(value)}"')
    children = list(elem)
    if not children and not elem.text:
        parts.append("/>")
    else:
        parts.append(">")
        if elem.text:
            parts.append(_escape_text(elem.text))
        for child in children:
            _emit(child, parts)
            if child.tail:
                parts.append(_escape_text(child.tail))
        parts.append(f"</{elem.tag}>")


def result_to_dict(result: ExplorationResult, fields: Optional[Iterable[str]] = None) -> dict:
    """The canonical JSON object tree, honoring the same omission rules."""
    selected = frozenset(fields) if fields is not None else ALLOWED_FIELDS
    concept: dict = {"title": result.concept.title, "url": result.concept.url}
    if "thumbnail" in selected and result.concept.thumbnail:
        concept["thumbnail"] = result.concept.thumbnail
    if "description" in selected:
        concept["description"] = result.concept.description

    entities = []
    for entity in result.entities:
        item: dict = {"title": entity.concept.title, "url": entity.concept.url}
        if "sr" in selected:
            item["sr"] = float(format_score(entity.score.relatedness))
            item["distance"] = float(format_score(entity.score.distance))
        if "category" in selected and entity.assigned_category is not None:
            item["category"] = entity.assigned_category
        if "thumbnail" in selected and entity.concept.thumbnail:
            item["thumbnail"] = entity.concept.thumbnail
        if "snippets" in selected:
            item["snippets"] = [
                {
                    "text": s.text,
                    "track": s.track.value,
                    "source": s.source_title,
                }
                for s in entity.snippets
            ]
        entities.append(item)

    payload: dict = {
        "query": result.query,
        "lang": result.concept.lang.code,
        "from_cache": result.from_cache,
        "generated_at": result.generated_at.isoformat(),
        "concept": concept,
        "entities": entities,
    }
    if "category" in selected:
        payload["categories"] = [
            {"name": name, "size": size} for name, size in result.category_index
        ]
    return payload


def serialize_json(result: ExplorationResult, fields: Optional[Iterable[str]] = None) -> bytes:
    payload = result_to_dict(result, fields)
    return (json.dumps(payload, ensure_ascii=False, indent=2) + "\n").encode("utf-8")


def error_json(code: str, message: str) -> bytes:
    payload = {"error": {"code": code, "message": message}}
    return (json.dumps(payload, ensure_ascii=False) + "\n").encode("utf-8")
