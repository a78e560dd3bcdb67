"""Common Block and Blocks of Variation read off the variants' AOC-poset."""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass

from .errors import ContractViolation
from .fca import AOCPoset, FormalContext, build_aoc_poset
from .model import VariantFamily, family_universe, name_key

log = logging.getLogger(__name__)


class BlockKind(str, enum.Enum):
    COMMON = "CommonBlock"
    VARIATION = "BlockOfVariation"


@dataclass(frozen=True)
class Block:
    kind: BlockKind
    use_cases: tuple[str, ...]
    supporting_variants: tuple[str, ...]
    source_concept: int | None = None

    def __post_init__(self):
        if not self.use_cases:
            raise ContractViolation("a block holds at least one use-case")

    @property
    def is_common(self) -> bool:
        return self.kind is BlockKind.COMMON

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "use_cases": list(self.use_cases),
            "supporting_variants": list(self.supporting_variants),
            "concept_id": self.source_concept,
        }


def variant_context(family: VariantFamily) -> FormalContext:
    """Variants as objects, use-cases (first-appearance labels) as attributes."""
    universe = family_universe(family)
    rows = {v.id: [family.label(uc.name) for uc in v.use_cases]
            for v in family.variants}
    return FormalContext.from_rows(rows, universe)


def detect_blocks(poset: AOCPoset, ctx: FormalContext
                  ) -> tuple[Block | None, list[Block]]:
    """Split the attributes of *ctx* into the Common Block and the BVs.

    Each block is the reduced intent of one concept, so blocks are disjoint
    and cover every attribute that occurs in at least one object.  BVs come
    back in poset order; use :func:`exploration_order` to sort them.
    """
    if poset.context != ctx:
        raise ContractViolation("poset was not built from this context")
    everyone = frozenset(range(len(ctx.objects)))
    common = None
    bvs = []
    for i, concept in enumerate(poset.concepts):
        if not concept.reduced_intent:
            continue
        names = tuple(ctx.attributes[a] for a in sorted(concept.reduced_intent))
        support = tuple(ctx.objects[o] for o in sorted(concept.extent))
        if concept.extent == everyone:
            common = Block(BlockKind.COMMON, names, support, i)
        elif concept.extent:
            bvs.append(Block(BlockKind.VARIATION, names, support, i))
        else:
            log.warning("use-cases %s occur in no variant; ignored", list(names))
    if common is None:
        log.warning("no use-case is shared by all variants; the Common Block is empty")
    return common, bvs


def exploration_order(bvs: list[Block]) -> list[Block]:
    """Most specific blocks first: fewest supporting variants, then fewest use-cases."""
    return sorted(bvs, key=lambda b: (len(b.supporting_variants), len(b.use_cases),
                                      sorted(name_key(n) for n in b.use_cases)))


def blocks_of_family(family: VariantFamily) -> tuple[Block | None, list[Block]]:
    """Convenience wrapper: context, poset and blocks, BVs in exploration order."""
    ctx = variant_context(family)
    common, bvs = detect_blocks(build_aoc_poset(ctx), ctx)
    return common, exploration_order(bvs)
