"""Formal contexts, derivation operators and AOC-posets.

An AOC-poset (Galois sub-hierarchy) keeps only the concepts of the lattice
that introduce at least one object or one attribute.  It is built here by
closing every single attribute and every single object, which is plenty fast
for contexts of a few dozen rows and columns.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import ContractViolation


@dataclass(frozen=True, eq=False)
class FormalContext:
    objects: tuple[str, ...]
    attributes: tuple[str, ...]
    incidence: np.ndarray

    def __init__(self, objects: Sequence[str], attributes: Sequence[str], incidence):
        objects = tuple(objects)
        attributes = tuple(attributes)
        matrix = np.array(incidence, dtype=bool).reshape(len(objects), len(attributes))
        if len(set(objects)) != len(objects):
            raise ContractViolation("object labels must be unique")
        if len(set(attributes)) != len(attributes):
            raise ContractViolation("attribute labels must be unique")
        matrix.setflags(write=False)
        object.__setattr__(self, "objects", objects)
        object.__setattr__(self, "attributes", attributes)
        object.__setattr__(self, "incidence", matrix)

    @classmethod
    def from_rows(cls, rows: dict[str, Iterable[str]],
                  attributes: Sequence[str] | None = None) -> FormalContext:
        """Build a context from ``{object: attributes it has}``."""
        if attributes is None:
            seen: dict[str, None] = {}
            for attrs in rows.values():
                for a in attrs:
                    seen.setdefault(a, None)
            attributes = list(seen)
        col = {a: j for j, a in enumerate(attributes)}
        matrix = np.zeros((len(rows), len(attributes)), dtype=bool)
        for i, attrs in enumerate(rows.values()):
            for a in attrs:
                matrix[i, col[a]] = True
        return cls(list(rows), attributes, matrix)

    @property
    def shape(self) -> tuple[int, int]:
        return self.incidence.shape

    def __eq__(self, other):
        if not isinstance(other, FormalContext):
            return NotImplemented
        return (self.objects == other.objects and self.attributes == other.attributes
                and np.array_equal(self.incidence, other.incidence))

    def to_dict(self) -> dict:
        return {
            "objects": list(self.objects),
            "attributes": list(self.attributes),
            "incidence": ["".join("1" if x else "0" for x in row)
                          for row in self.incidence],
        }


def _check(indices: Iterable[int], bound: int, what: str) -> list[int]:
    out = sorted(set(indices))
    for i in out:
        if not 0 <= i < bound:
            raise ContractViolation(f"{what} index {i} out of range [0, {bound})")
    return out


def derive_attributes(ctx: FormalContext, attrs: Iterable[int]) -> frozenset[int]:
    """Objects having every attribute in *attrs* (all objects for an empty set)."""
    cols = _check(attrs, ctx.shape[1], "attribute")
    mask = ctx.incidence[:, cols].all(axis=1)
    return frozenset(np.flatnonzero(mask).tolist())


def derive_objects(ctx: FormalContext, objs: Iterable[int]) -> frozenset[int]:
    """Attributes shared by every object in *objs* (all attributes for an empty set)."""
    rows = _check(objs, ctx.shape[0], "object")
    mask = ctx.incidence[rows, :].all(axis=0)
    return frozenset(np.flatnonzero(mask).tolist())


@dataclass(frozen=True)
class Concept:
    extent: frozenset[int]
    intent: frozenset[int]
    reduced_extent: frozenset[int]
    reduced_intent: frozenset[int]


def _order_key(extent: frozenset[int]) -> tuple:
    return (-len(extent), tuple(sorted(extent)))


@dataclass(frozen=True)
class AOCPoset:
    context: FormalContext
    concepts: tuple[Concept, ...]
    covers: tuple[tuple[int, int], ...]
    top: int | None

    def parents(self, index: int) -> list[int]:
        return [p for c, p in self.covers if c == index]

    def children(self, index: int) -> list[int]:
        return [c for c, p in self.covers if p == index]

    def concept_of_attribute(self, attr: int) -> int:
        for i, c in enumerate(self.concepts):
            if attr in c.reduced_intent:
                return i
        raise ContractViolation(f"attribute {attr} not introduced anywhere")

    def to_dict(self) -> dict:
        ctx = self.context

        def names(labels, idx):
            return [labels[i] for i in sorted(idx)]

        return {
            "context": ctx.to_dict(),
            "top": self.top,
            "concepts": [
                {"id": i,
                 "extent": names(ctx.objects, c.extent),
                 "intent": names(ctx.attributes, c.intent),
                 "reduced_extent": names(ctx.objects, c.reduced_extent),
                 "reduced_intent": names(ctx.attributes, c.reduced_intent)}
                for i, c in enumerate(self.concepts)
            ],
            "covers": [list(e) for e in self.covers],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"


def _hasse_covers(extents: Sequence[frozenset[int]]) -> tuple[tuple[int, int], ...]:
    covers = []
    for c, ec in enumerate(extents):
        above = [p for p, ep in enumerate(extents) if ec < ep]
        for p in above:
            if not any(extents[p] > extents[m] for m in above if m != p):
                covers.append((c, p))
    return tuple(sorted(covers))


def build_aoc_poset(ctx: FormalContext) -> AOCPoset:
    """Attribute- and object-concepts of *ctx*, deduplicated by extent.

    Concepts are ordered by descending extent size, then by their sorted
    extent, and covers are the Hasse edges ``(child, parent)``.
    """
    n_obj, n_att = ctx.shape
    if n_obj == 0 or n_att == 0:
        raise ContractViolation("cannot build an AOC-poset of an empty context")

    attr_extent = [derive_attributes(ctx, [a]) for a in range(n_att)]
    obj_intent = [derive_objects(ctx, [o]) for o in range(n_obj)]
    obj_extent = [derive_attributes(ctx, obj_intent[o]) for o in range(n_obj)]

    by_extent: dict[frozenset[int], tuple[set[int], set[int]]] = {}
    for a, ext in enumerate(attr_extent):
        by_extent.setdefault(ext, (set(), set()))[1].add(a)
    for o, ext in enumerate(obj_extent):
        by_extent.setdefault(ext, (set(), set()))[0].add(o)

    concepts = []
    for ext in sorted(by_extent, key=_order_key):
        red_ext, red_int = by_extent[ext]
        concepts.append(Concept(ext, derive_objects(ctx, ext),
                                frozenset(red_ext), frozenset(red_int)))
    extents = [c.extent for c in concepts]
    everyone = frozenset(range(n_obj))
    # a full-extent concept with an empty intent is not a top in our sense
    top = next((i for i, c in enumerate(concepts)
                if c.extent == everyone and c.intent), None)
    return AOCPoset(ctx, tuple(concepts), _hasse_covers(extents), top)


def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def poset_to_dot(poset: AOCPoset, name: str = "aoc_poset") -> str:
    """Hasse diagram of *poset* in DOT; nodes show reduced intent over reduced extent."""
    ctx = poset.context
    lines = [f"digraph {_dot_quote(name)} {{",
             "  rankdir=BT;",
             '  node [shape=record, fontname="Helvetica", fontsize=10];']
    for i, c in enumerate(poset.concepts):
        intent = "\\n".join(_field(ctx.attributes[a]) for a in sorted(c.reduced_intent))
        extent = "\\n".join(_field(ctx.objects[o]) for o in sorted(c.reduced_extent))
        lines.append(f'  c{i} [label="{{Concept_{i}|{intent}|{extent}}}"];')
    for child, parent in poset.covers:
        lines.append(f"  c{child} -> c{parent} [arrowhead=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _field(text: str) -> str:
    text = text.replace("\\", "\\\\").replace('"', '\\"')
    for ch in "{}|<>":
        text = text.replace(ch, "\\" + ch)
    return text
