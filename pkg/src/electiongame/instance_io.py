"""Instance documents (JSON) and instance references.

Document layout::

    {
      "format": "election-game",
      "version": 1,
      "beta": 100.0,
      "parties": [
        {"name": "P1", "candidates": [{"utilities": [50.0, 0.0, 0.0]}, ...]},
        ...
      ],
      "metadata": {"source": "...", "seed": 42}
    }

Utilities are written with Python's shortest round-trip float repr, so
``parse(render(g)) == g`` holds bit for bit.
"""

from __future__ import annotations

import json
from pathlib import Path

from . import fixtures
from .errors import ParseError
from .model import GameInstance, validate

FORMAT = "election-game"
VERSION = 1


def to_document(g: GameInstance) -> dict:
    doc = {
        "format": FORMAT,
        "version": VERSION,
        "beta": g.beta,
        "parties": [
            {
                **({"name": p.name} if p.name is not None else {}),
                "candidates": [{"utilities": list(c.utilities)} for c in p.candidates],
            }
            for p in g.parties
        ],
    }
    if g.metadata:
        doc["metadata"] = dict(g.metadata)
    return doc


def render(g: GameInstance) -> str:
    return json.dumps(to_document(g), indent=2) + "\n"


def _expect(cond, message, path):
    if not cond:
        raise ParseError(message, field=path)


def from_document(doc, normalize: bool = False) -> GameInstance:
    _expect(isinstance(doc, dict), "document must be a JSON object", "$")
    if "format" in doc:
        _expect(doc["format"] == FORMAT, f"unknown format {doc['format']!r}", "format")
    if "version" in doc:
        _expect(doc["version"] == VERSION, f"unsupported version {doc['version']!r}", "version")
    _expect("beta" in doc, "missing beta", "beta")
    _expect(isinstance(doc["beta"], (int, float)) and not isinstance(doc["beta"], bool),
            "beta must be a number", "beta")
    parties = doc.get("parties")
    _expect(isinstance(parties, list), "parties must be a list", "parties")
    for i, p in enumerate(parties):
        where = f"parties[{i}]"
        _expect(isinstance(p, dict), "party must be an object", where)
        if "name" in p:
            _expect(p["name"] is None or isinstance(p["name"], str), "name must be a string",
                    f"{where}.name")
        cands = p.get("candidates")
        _expect(isinstance(cands, list), "candidates must be a list", f"{where}.candidates")
        for s, c in enumerate(cands):
            cw = f"{where}.candidates[{s}]"
            _expect(isinstance(c, dict) and isinstance(c.get("utilities"), list),
                    "candidate needs a utilities list", cw)
            for j, x in enumerate(c["utilities"]):
                _expect(isinstance(x, (int, float)) and not isinstance(x, bool),
                        "utility must be a number", f"{cw}.utilities[{j}]")
    meta = doc.get("metadata")
    _expect(meta is None or isinstance(meta, dict), "metadata must be an object", "metadata")
    return validate(doc, normalize=normalize)


def parse(text: str, normalize: bool = False) -> GameInstance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None
    return from_document(doc, normalize)


def load(ref: str | Path, normalize: bool = False) -> GameInstance:
    """Load a file path or a ``fixtures:<name>`` reference."""
    if isinstance(ref, str) and ref.startswith("fixtures:"):
        g = fixtures.get(ref)
        return validate(g, normalize=True) if normalize else g
    return parse(Path(ref).read_text(), normalize)


def store(g: GameInstance, path: str | Path):
    Path(path).write_text(render(g))
