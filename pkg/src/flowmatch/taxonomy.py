"""Concept hierarchy shared by every service description.

A taxonomy is a DAG of concept ids. Each concept lists zero or more
immediate parents; subsumption is reachability along parent edges.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping


class TaxonomyError(ValueError):
    """Raised for malformed taxonomy documents or unknown concepts."""

    def __init__(self, message: str, concepts: Iterable[str] = ()):
        super().__init__(message)
        self.concepts = tuple(concepts)


@dataclass(frozen=True)
class Taxonomy:
    """Immutable concept DAG with a precomputed ancestor closure."""

    parents: Mapping[str, frozenset[str]]
    _ancestors: Mapping[str, frozenset[str]] = field(repr=False, compare=False)

    @classmethod
    def from_parents(cls, parents: Mapping[str, Iterable[str]]) -> "Taxonomy":
        table = {c: frozenset(ps) for c, ps in parents.items()}
        for child, ps in table.items():
            if not child:
                raise TaxonomyError("empty concept id")
            missing = sorted(p for p in ps if p not in table)
            if missing:
                raise TaxonomyError(
                    f"concept {child!r} names undeclared parent(s): {', '.join(missing)}",
                    [child, *missing],
                )
        cycle = _find_cycle(table)
        if cycle:
            raise TaxonomyError(f"cycle detected: {' -> '.join(cycle)}", cycle)
        return cls(table, _closure(table))

    @property
    def concepts(self) -> frozenset[str]:
        return frozenset(self.parents)

    @property
    def edges(self) -> frozenset[tuple[str, str]]:
        return frozenset((c, p) for c, ps in self.parents.items() for p in ps)

    def __contains__(self, concept: object) -> bool:
        return concept in self.parents

    def __len__(self) -> int:
        return len(self.parents)

    def check(self, *concepts: str) -> None:
        unknown = [c for c in concepts if c not in self.parents]
        if unknown:
            raise TaxonomyError(f"unknown concept(s): {', '.join(map(repr, unknown))}", unknown)

    def ancestors(self, concept: str) -> frozenset[str]:
        """Strict ancestors of ``concept``."""
        self.check(concept)
        return self._ancestors[concept]

    def same_class(self, a: str, b: str) -> bool:
        self.check(a, b)
        return a == b

    def is_direct_subclass(self, a: str, b: str) -> bool:
        """True when ``b`` is an immediate parent of ``a``."""
        self.check(a, b)
        return b in self.parents[a]

    def subsumes(self, a: str, b: str) -> bool:
        """True when ``a`` is a strict ancestor of ``b``."""
        self.check(a, b)
        return a in self._ancestors[b]

    def to_dict(self) -> dict:
        return {
            "concepts": [
                {"id": c, "parents": sorted(self.parents[c])} for c in sorted(self.parents)
            ]
        }


def _find_cycle(parents: Mapping[str, frozenset[str]]) -> list[str] | None:
    WHITE, GREY, BLACK = 0, 1, 2
    colour = dict.fromkeys(parents, WHITE)
    for root in sorted(parents):
        if colour[root] != WHITE:
            continue
        # iterative DFS; stack holds (node, remaining parents)
        path = [root]
        stack = [(root, iter(sorted(parents[root])))]
        colour[root] = GREY
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                colour[node] = BLACK
                stack.pop()
                path.pop()
            elif colour[nxt] == GREY:
                return path[path.index(nxt):] + [nxt]
            elif colour[nxt] == WHITE:
                colour[nxt] = GREY
                path.append(nxt)
                stack.append((nxt, iter(sorted(parents[nxt]))))
    return None


def _closure(parents: Mapping[str, frozenset[str]]) -> dict[str, frozenset[str]]:
    memo: dict[str, frozenset[str]] = {}

    def visit(c: str) -> frozenset[str]:
        if c not in memo:
            acc = set(parents[c])
            for p in parents[c]:
                acc |= visit(p)
            memo[c] = frozenset(acc)
        return memo[c]

    for c in parents:
        visit(c)
    return memo


def taxonomy_from_dict(doc: object) -> Taxonomy:
    if not isinstance(doc, dict) or not isinstance(doc.get("concepts"), list):
        raise TaxonomyError('taxonomy document must be an object with a "concepts" list')
    parents: dict[str, list[str]] = {}
    for entry in doc["concepts"]:
        if not isinstance(entry, dict) or not isinstance(entry.get("id"), str):
            raise TaxonomyError(f"malformed concept entry: {entry!r}")
        cid = entry["id"]
        if not cid:
            raise TaxonomyError("empty concept id")
        if cid in parents:
            raise TaxonomyError(f"duplicate concept id {cid!r}", [cid])
        ps = entry.get("parents", [])
        if not isinstance(ps, list) or not all(isinstance(p, str) for p in ps):
            raise TaxonomyError(f"parents of {cid!r} must be a list of strings", [cid])
        parents[cid] = ps
    return Taxonomy.from_parents(parents)


def load_taxonomy(source: str | bytes) -> Taxonomy:
    """Parse a JSON taxonomy document."""
    try:
        doc = json.loads(source)
    except json.JSONDecodeError as exc:
        raise TaxonomyError(f"invalid JSON: {exc}") from exc
    return taxonomy_from_dict(doc)


def read_taxonomy(path: str | Path) -> Taxonomy:
    return load_taxonomy(Path(path).read_text(encoding="utf-8"))


def same_class(t: Taxonomy, a: str, b: str) -> bool:
    return t.same_class(a, b)


def is_direct_subclass(t: Taxonomy, a: str, b: str) -> bool:
    return t.is_direct_subclass(a, b)


def subsumes(t: Taxonomy, a: str, b: str) -> bool:
    return t.subsumes(a, b)
