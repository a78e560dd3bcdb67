"""Commonality and variability detection across use-case diagram variants."""

from .blocks import Block, BlockKind, detect_blocks, exploration_order, variant_context
from .errors import (ContractViolation, DegenerateCorpusError, MissingDescriptionError,
                     ParseError, UcvariaError, ValidationError)
from .evaluation import EvaluationReport, GroundTruth, evaluate
from .fca import (AOCPoset, Concept, FormalContext, build_aoc_poset, derive_attributes,
                  derive_objects)
from .features import (AtomicBlock, Feature, FeatureKind, FeatureModel,
                       assemble_feature_model, detect_atomic_blocks, threshold_context)
from .lsi import (Corpus, LsiConfig, SimilarityMatrix, build_corpus, lsi_reduce, normalize,
                  similarity_matrix)
from .model import (DiagramVariant, UseCase, VariantFamily, family_universe, load_family,
                    parse_family)
from .pipeline import Analysis, analyze, run_pipeline

__version__ = "0.1.0"
