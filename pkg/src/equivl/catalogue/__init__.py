"""Catalogue of groups, spaces, towers, actions and subgroup pairs.

The shipped catalogue lives in ``data/`` with one JSON file per entity.
``EQUIVL_CATALOGUE`` replaces the shipped root; further roots merge by name,
and may replace shipped entries only with ``allow_shadow``.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional

from ..errors import CatalogueError, EquivLError, MalformedDocument
from .documents import action_from_doc, group_from_doc, pair_from_doc, space_from_doc, tower_from_doc

ENV_VAR = "EQUIVL_CATALOGUE"
SHIPPED = Path(__file__).resolve().parent / "data"
KINDS = ("groups", "spaces", "towers", "actions", "pairs")


@dataclass
class Catalogue:
    groups: dict = field(default_factory=dict)
    spaces: dict = field(default_factory=dict)
    towers: dict = field(default_factory=dict)
    actions: dict = field(default_factory=dict)
    pairs: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)  # (kind, name) -> tag
    sources: dict = field(default_factory=dict)     # (kind, name) -> file

    def _get(self, kind: str, name: str):
        table = getattr(self, kind)
        if name not in table:
            known = ", ".join(sorted(table)) or "none"
            raise CatalogueError(f"no {kind[:-1]} named {name!r} (known: {known})")
        return table[name]

    def group(self, name):
        return self._get("groups", name)

    def space(self, name):
        return self._get("spaces", name)

    def tower(self, name):
        return self._get("towers", name)

    def action(self, name):
        return self._get("actions", name)

    def pair(self, name):
        return self._get("pairs", name)

    def pair_for(self, tower_name: str):
        """The catalogued restriction of the tower's group to the trivial subgroup."""
        for p in self.pairs.values():
            if p.big_tower.name == tower_name:
                return p
        raise CatalogueError(f"no subgroup pair starts at tower {tower_name!r}")

    def entries(self):
        for kind in KINDS:
            for name in getattr(self, kind):
                yield kind, name


def _read_docs(root: Path) -> dict:
    docs = {kind: [] for kind in KINDS}
    root = Path(root)
    if not root.is_dir():
        raise CatalogueError(f"catalogue root {root} is not a directory")
    for kind in KINDS:
        folder = root / kind
        if not folder.is_dir():
            continue
        for path in sorted(folder.glob("*.json")):
            try:
                docs[kind].append((path, json.loads(path.read_text())))
            except json.JSONDecodeError as exc:
                raise MalformedDocument(f"{path}: {exc}") from exc
    return docs


def _merge(raw: dict, root_docs: dict, shipped: bool, allow_shadow: bool, origin: dict):
    for kind, items in root_docs.items():
        for path, doc in items:
            name = doc.get("name") if isinstance(doc, dict) else None
            if not name:
                raise MalformedDocument(f"{path}: entry without a name")
            key = (kind, name)
            if key in raw:
                if origin[key][1] == shipped or not allow_shadow:
                    raise CatalogueError(f"{kind[:-1]} {name!r} defined in both {origin[key][0]} and {path}"
                                         + ("" if allow_shadow else "; pass --allow-shadow to override"))
            raw[key] = doc
            origin[key] = (path, shipped)


def load_catalogue(extra: Iterable = (), root: Optional[Path] = None, allow_shadow: bool = False) -> Catalogue:
    """Load and validate.  ``root`` defaults to $EQUIVL_CATALOGUE or the shipped data."""
    if root is None:
        root = Path(os.environ[ENV_VAR]) if os.environ.get(ENV_VAR) else SHIPPED
    raw, origin = {}, {}
    _merge(raw, _read_docs(root), True, allow_shadow, origin)
    for path in extra:
        _merge(raw, _read_docs(Path(path)), False, allow_shadow, origin)
    cat = Catalogue()
    builders = {
        "groups": lambda d: group_from_doc(d),
        "spaces": lambda d: space_from_doc(d),
        "towers": lambda d: tower_from_doc(d, cat.groups),
        "actions": lambda d: action_from_doc(d, cat.towers, cat.spaces),
        "pairs": lambda d: pair_from_doc(d, cat.groups, cat.towers),
    }
    for kind in KINDS:
        table = getattr(cat, kind)
        for (k, name), doc in sorted(raw.items()):
            if k != kind:
                continue
            try:
                table[name] = builders[kind](doc)
            except EquivLError as exc:
                raise type(exc)(f"{origin[(k, name)][0]}: {exc}") from exc
            except (KeyError, TypeError, ValueError) as exc:
                raise MalformedDocument(f"{origin[(k, name)][0]}: {exc!r}") from exc
            cat.provenance[(kind, name)] = doc.get("provenance", "user")
            cat.sources[(kind, name)] = str(origin[(k, name)][0])
    return cat


_DEFAULT = {}


def default_catalogue() -> Catalogue:
    """The shipped (or environment-selected) catalogue, loaded once."""
    key = os.environ.get(ENV_VAR, "")
    if key not in _DEFAULT:
        _DEFAULT[key] = load_catalogue()
    return _DEFAULT[key]
