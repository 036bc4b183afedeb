"""Algebra interchange: JSON documents (read/write) and DOT (write only)."""

import json

from .errors import InvalidInput
from .kernel import from_covers

FIELDS = ("name", "size", "covers")


def to_document(alg):
    return {
        "name": alg.name or "",
        "size": alg.size,
        "covers": [[lo, hi] for lo, hi in alg.covers],
    }


def from_document(doc):
    """Build an algebra from a parsed document, rejecting malformed input."""
    if not isinstance(doc, dict):
        raise InvalidInput("algebra document must be a JSON object")
    missing = [f for f in FIELDS if f not in doc]
    extra = sorted(set(doc) - set(FIELDS))
    if missing or extra:
        raise InvalidInput(f"document fields must be exactly {list(FIELDS)}; missing {missing}, extra {extra}")
    size, covers = doc["size"], doc["covers"]
    if not isinstance(doc["name"], str):
        raise InvalidInput("name must be a string")
    if not isinstance(size, int) or isinstance(size, bool):
        raise InvalidInput("size must be an integer")
    if not isinstance(covers, list) or not all(isinstance(c, list) and len(c) == 2 for c in covers):
        raise InvalidInput("covers must be a list of [lower, upper] pairs")
    return from_covers(size, [tuple(c) for c in covers], name=doc["name"] or None)


def dumps(alg):
    return json.dumps(to_document(alg))


def loads(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"invalid JSON: {exc}") from None
    return from_document(doc)


def to_dot(alg, graph_name=None):
    """DOT digraph whose edges are the covers, drawn bottom to top."""
    name = graph_name or alg.name or "algebra"
    esc = name.replace("\\", "\\\\").replace('"', '\\"')
    lines = [f'digraph "{esc}" {{', "  rankdir=BT;", "  node [shape=circle];"]
    for x in alg.elements:
        lab = alg.labels[x].replace("\\", "\\\\").replace('"', '\\"')
        lines.append(f'  n{x} [label="{lab}"];')
    for lo, hi in alg.covers:
        lines.append(f"  n{lo} -> n{hi};")
    lines.append("}")
    return "\n".join(lines) + "\n"
