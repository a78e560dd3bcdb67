"""End-to-end analysis: family -> blocks -> similarities -> atomic blocks -> FM."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .blocks import Block, detect_blocks, exploration_order, variant_context
from .errors import DegenerateCorpusError
from .evaluation import EvaluationReport, GroundTruth, evaluate
from .fca import AOCPoset, FormalContext, build_aoc_poset, poset_to_dot
from .features import (AtomicBlock, FeatureModel, assemble_feature_model,
                       detect_atomic_blocks, feature_model_to_dot,
                       feature_model_to_xml, threshold_context)
from .lsi import LsiConfig, SimilarityMatrix, build_corpus, similarity_matrix
from .model import VariantFamily, load_family

log = logging.getLogger(__name__)


@dataclass
class BlockAnalysis:
    block_id: str
    block: Block
    similarity: SimilarityMatrix
    context: FormalContext
    atoms: list[AtomicBlock]


@dataclass
class Analysis:
    family: VariantFamily
    config: LsiConfig
    context: FormalContext
    poset: AOCPoset
    common: Block | None
    variation: list[Block]
    blocks: list[BlockAnalysis]
    feature_model: FeatureModel
    evaluation: EvaluationReport | None = None
    warnings: list[str] = field(default_factory=list)


def _block_similarity(block: Block, family: VariantFamily,
                      cfg: LsiConfig) -> SimilarityMatrix:
    corpus = build_corpus(block, family, cfg)
    try:
        return similarity_matrix(corpus, cfg)
    except DegenerateCorpusError:
        log.warning("no indexable term in the names of block %s; "
                    "all its use-cases stay unmatched", list(block.use_cases))
        shape = (len(corpus.query_labels), len(corpus.doc_labels))
        return SimilarityMatrix(np.zeros(shape), corpus.query_labels, corpus.doc_labels)


def analyze(family: VariantFamily, cfg: LsiConfig | None = None,
            truth: GroundTruth | None = None) -> Analysis:
    cfg = cfg or LsiConfig()
    ctx = variant_context(family)
    poset = build_aoc_poset(ctx)
    common, bvs = detect_blocks(poset, ctx)
    bvs = exploration_order(bvs)

    ordered = ([("cb", common)] if common else []) + [
        (f"bv{i:02d}", b) for i, b in enumerate(bvs, start=1)]
    analyses = []
    for block_id, block in ordered:
        sim = _block_similarity(block, family, cfg)
        tctx = threshold_context(sim, cfg.threshold)
        analyses.append(BlockAnalysis(block_id, block, sim, tctx,
                                      detect_atomic_blocks(tctx, block)))
    fm = assemble_feature_model([(a.block, a.atoms) for a in analyses], family)
    report = evaluate(fm, truth) if truth is not None else None
    return Analysis(family, cfg, ctx, poset, common, bvs, analyses, fm, report)


def blocks_document(analysis: Analysis) -> dict:
    return {
        "family": analysis.family.name,
        "blocks": [dict(id=a.block_id, **a.block.to_dict()) for a in analysis.blocks],
    }


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def render_artifacts(analysis: Analysis) -> dict[str, str]:
    """Every text artifact of *analysis*, keyed by file name, in write order."""
    out = {
        "context.json": _dump(analysis.context.to_dict()),
        "poset-variants.json": analysis.poset.to_json(),
        "poset-variants.dot": poset_to_dot(analysis.poset, "variants"),
        "blocks.json": _dump(blocks_document(analysis)),
    }
    for a in analysis.blocks:
        out[f"sim-{a.block_id}.csv"] = a.similarity.to_csv()
        out[f"poset-{a.block_id}.dot"] = poset_to_dot(build_aoc_poset(a.context), a.block_id)
    fm = analysis.feature_model
    out["fm.json"] = fm.to_json()
    out["fm.xml"] = feature_model_to_xml(fm)
    out["fm.dot"] = feature_model_to_dot(fm)
    if analysis.evaluation is not None:
        out["evaluation.json"] = analysis.evaluation.to_json()
    return out


def write_artifacts(analysis: Analysis, out_dir: str | Path,
                    figures: bool = False) -> list[Path]:
    """Write all artifacts (and optionally PNG figures) in one deterministic pass."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for name, text in render_artifacts(analysis).items():
        path = out_dir / name
        path.write_text(text, encoding="utf-8", newline="\n")
        written.append(path)
    if figures:
        from .plotting import render_figures

        written.extend(render_figures(analysis, out_dir))
    return written


def run_pipeline(family_path: str | Path, cfg: LsiConfig | None = None,
                 truth_path: str | Path | None = None,
                 out_dir: str | Path | None = None,
                 figures: bool = False) -> Analysis:
    family = load_family(family_path)
    truth = GroundTruth.load(truth_path) if truth_path else None
    analysis = analyze(family, cfg, truth)
    if out_dir is not None:
        write_artifacts(analysis, out_dir, figures)
    return analysis
