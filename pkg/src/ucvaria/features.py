"""Atomic blocks from thresholded similarities, and the flat feature model."""

from __future__ import annotations

import enum
import json
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from typing import Iterable, Sequence

from .blocks import Block, exploration_order
from .fca import FormalContext, build_aoc_poset
from .lsi import DEFAULT_THRESHOLD, SimilarityMatrix, is_similar
from .model import VariantFamily, family_universe, name_key


def threshold_context(sim: SimilarityMatrix,
                      threshold: float = DEFAULT_THRESHOLD) -> FormalContext:
    """Descriptions x use-cases, incident where similarity >= *threshold*."""
    incidence = [[is_similar(float(x), threshold) for x in row] for row in sim.values]
    return FormalContext(sim.row_labels, sim.col_labels, incidence)


@dataclass(frozen=True)
class AtomicBlock:
    use_cases: tuple[str, ...]
    matched_descriptions: tuple[str, ...]
    origin: Block
    unmatched: bool = False

    @property
    def ambiguous(self) -> bool:
        return len(self.use_cases) > 1


def detect_atomic_blocks(ctx: FormalContext, origin: Block) -> list[AtomicBlock]:
    """One atomic block per concept of *ctx*'s AOC-poset that introduces use-cases.

    Use-cases no description reaches all land on the bottom concept; each of
    them becomes its own unmatched singleton.
    """
    poset = build_aoc_poset(ctx)
    out = []
    for concept in poset.concepts:
        if not concept.reduced_intent:
            continue
        names = tuple(ctx.attributes[a] for a in sorted(concept.reduced_intent))
        if not concept.extent:
            out.extend(AtomicBlock((n,), (), origin, unmatched=True) for n in names)
            continue
        matched = tuple(ctx.objects[o] for o in sorted(concept.extent))
        out.append(AtomicBlock(names, matched, origin))
    return out


class FeatureKind(str, enum.Enum):
    MANDATORY = "mandatory"
    OPTIONAL = "optional"


@dataclass(frozen=True)
class Feature:
    name: str
    kind: FeatureKind
    evidence: AtomicBlock
    supporting_variants: tuple[str, ...]
    low_confidence: bool = False


@dataclass(frozen=True)
class FeatureModel:
    root: str
    mandatory: tuple[Feature, ...]
    optional: tuple[Feature, ...]
    unmatched: tuple[str, ...]

    @property
    def features(self) -> tuple[Feature, ...]:
        return self.mandatory + self.optional

    def to_dict(self) -> dict:
        return {
            "root": self.root,
            "mandatory": [f.name for f in self.mandatory],
            "optional": [{"name": f.name, "variants": list(f.supporting_variants)}
                         for f in self.optional],
            "unmatched": list(self.unmatched),
            "low_confidence": [f.name for f in self.features if f.low_confidence],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"


def assemble_feature_model(
        blocks: Iterable[tuple[Block, Sequence[AtomicBlock]]],
        family: VariantFamily) -> FeatureModel:
    """Collect features from each block's atomic blocks.

    Mandatory features follow the family's first-appearance order; optional
    ones follow the BV exploration order, and first-appearance order inside
    a BV.
    """
    rank = {name_key(n): i for i, n in enumerate(family_universe(family))}
    by_block = {}
    for block, atoms in blocks:
        by_block[block] = list(atoms)

    mandatory, optional, unmatched = [], [], []
    common = [b for b in by_block if b.is_common]
    variable = exploration_order([b for b in by_block if not b.is_common])
    for block in common + variable:
        found = []
        for atom in by_block[block]:
            if atom.unmatched:
                unmatched.extend(atom.use_cases)
                continue
            kind = FeatureKind.MANDATORY if block.is_common else FeatureKind.OPTIONAL
            for name in atom.use_cases:
                found.append(Feature(name, kind, atom, block.supporting_variants,
                                     low_confidence=atom.ambiguous))
        found.sort(key=lambda f: rank[name_key(f.name)])
        (mandatory if block.is_common else optional).extend(found)
    unmatched.sort(key=lambda n: rank[name_key(n)])
    return FeatureModel(family.name, tuple(mandatory), tuple(optional), tuple(unmatched))


def feature_model_to_xml(fm: FeatureModel) -> str:
    root = ET.Element("featureModel", {"root": fm.root})
    for f in fm.features:
        attrs = {"name": f.name,
                 "mandatory": "true" if f.kind is FeatureKind.MANDATORY else "false"}
        if f.kind is FeatureKind.OPTIONAL:
            attrs["variants"] = " ".join(f.supporting_variants)
        if f.low_confidence:
            attrs["lowConfidence"] = "true"
        ET.SubElement(root, "feature", attrs)
    for name in fm.unmatched:
        ET.SubElement(root, "unmatched", {"name": name})
    ET.indent(root)
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(root, encoding="unicode") + "\n"


def _q(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def feature_model_to_dot(fm: FeatureModel) -> str:
    """Flat FM: filled-dot edges to mandatory children, hollow-dot edges to optional ones."""
    lines = [f"digraph {_q('feature_model')} {{",
             "  rankdir=TB;",
             '  node [shape=box, style=rounded, fontname="Helvetica", fontsize=10];',
             f"  root [label={_q(fm.root)}, style=\"rounded,bold\"];"]
    for i, f in enumerate(fm.features):
        head = "dot" if f.kind is FeatureKind.MANDATORY else "odot"
        lines.append(f"  f{i} [label={_q(f.name)}];")
        lines.append(f"  root -> f{i} [arrowhead={head}];")
    for i, name in enumerate(fm.unmatched):
        lines.append(f"  u{i} [label={_q(name)}, style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"
