"""Lexical matching of use-case names against descriptions with LSI.

Within one block every use-case name is a document and every description a
query.  Both are normalized into stemmed terms, counted into term-document
and term-query matrices, and compared by cosine in the rank-k SVD space.
"""

from __future__ import annotations

import csv
import io
import logging
import math
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Literal, Sequence

import numpy as np
import snowballstemmer

from .blocks import Block
from .errors import ContractViolation, DegenerateCorpusError, MissingDescriptionError
from .model import VariantFamily

log = logging.getLogger(__name__)

DEFAULT_THRESHOLD = 0.70
STOPWORDS_VERSION = "en-1"

_CAMEL = re.compile(r"(?<=[a-z0-9])(?=[A-Z])|(?<=[A-Z])(?=[A-Z][a-z])")
_TOKEN = re.compile(r"[^\W_]+")


def read_stopwords(path: str | Path | None = None) -> frozenset[str]:
    """Read a stopword file (one word per line, ``#`` comments); default: bundled list."""
    if path is None:
        text = resources.files("ucvaria").joinpath("data/stopwords_en.txt").read_text("utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    words = (line.split("#", 1)[0].strip().lower() for line in text.splitlines())
    return frozenset(w for w in words if w)


@lru_cache(maxsize=1)
def default_stopwords() -> frozenset[str]:
    return read_stopwords()


@lru_cache(maxsize=1)
def _stemmer():
    # snowball's "porter" is the original 1980 algorithm, not Porter2
    return snowballstemmer.stemmer("porter")


def normalize(text: str, stem: bool = True,
              stopwords: Iterable[str] | None = None) -> list[str]:
    """Split *text* into lowercase, stopword-free, optionally stemmed terms."""
    stop = default_stopwords() if stopwords is None else stopwords
    terms = []
    for token in _TOKEN.findall(_CAMEL.sub(" ", text)):
        word = token.lower()
        if len(word) < 2 or word in stop:
            continue
        if stem:
            word = _stemmer().stemWord(word)
            if len(word) < 2:
                continue
        terms.append(word)
    return terms


@dataclass(frozen=True)
class LsiConfig:
    rank: int | Literal["full"] = "full"
    threshold: float = DEFAULT_THRESHOLD
    stemming: bool = True
    stopwords: frozenset[str] = field(default_factory=default_stopwords)
    weighting: Literal["tf", "tfidf"] = "tf"
    name_fallback: bool = True

    def __post_init__(self):
        if not (isinstance(self.threshold, (int, float)) and 0 < self.threshold <= 1):
            raise ContractViolation(f"threshold must lie in (0, 1], got {self.threshold!r}")
        if self.rank != "full" and not (isinstance(self.rank, int) and self.rank >= 1):
            raise ContractViolation(f"rank must be a positive integer or 'full', got {self.rank!r}")
        if self.weighting not in ("tf", "tfidf"):
            raise ContractViolation(f"unknown weighting {self.weighting!r}")


@dataclass(frozen=True, eq=False)
class Corpus:
    """Term counts of one block: ``documents`` is t x u, ``queries`` is t x d."""

    block: Block
    vocabulary: tuple[str, ...]
    doc_labels: tuple[str, ...]
    query_labels: tuple[str, ...]
    documents: np.ndarray
    queries: np.ndarray
    query_texts: tuple[str, ...]
    fallback: tuple[bool, ...]


def description_label(use_case: str) -> str:
    return f"{use_case} des."


def build_corpus(block: Block, family: VariantFamily, cfg: LsiConfig) -> Corpus:
    docs, queries, texts, fallback = [], [], [], []
    for name in block.use_cases:
        docs.append(normalize(name, cfg.stemming, cfg.stopwords))
        text = family.description(name)
        missing = not text
        if missing:
            if not cfg.name_fallback:
                raise MissingDescriptionError(f"use-case {name!r} has no description")
            text = name
        texts.append(text)
        fallback.append(missing)
        queries.append(normalize(text, cfg.stemming, cfg.stopwords))
    for text, terms in zip(texts, queries):
        if not terms:
            log.warning("description %r has no indexable term", text)
    vocabulary = tuple(sorted({t for terms in docs + queries for t in terms}))
    index = {t: i for i, t in enumerate(vocabulary)}

    def counts(term_lists):
        m = np.zeros((len(vocabulary), len(term_lists)))
        for j, terms in enumerate(term_lists):
            for t in terms:
                m[index[t], j] += 1
        return m

    return Corpus(block, vocabulary, tuple(block.use_cases),
                  tuple(description_label(n) for n in block.use_cases),
                  counts(docs), counts(queries), tuple(texts), tuple(fallback))


@dataclass(frozen=True, eq=False)
class TermDocumentMatrix:
    values: np.ndarray
    queries: np.ndarray
    weighting: str = "tf"


def weight(corpus: Corpus, weighting: str = "tf") -> TermDocumentMatrix:
    """Apply term weighting; tf-idf uses smoothed idf over the block's documents."""
    if weighting == "tf":
        return TermDocumentMatrix(corpus.documents, corpus.queries, "tf")
    if weighting != "tfidf":
        raise ContractViolation(f"unknown weighting {weighting!r}")
    u = corpus.documents.shape[1]
    df = np.count_nonzero(corpus.documents, axis=1)
    idf = np.log((1.0 + u) / (1.0 + df)) + 1.0
    return TermDocumentMatrix(corpus.documents * idf[:, None],
                              corpus.queries * idf[:, None], "tfidf")


@dataclass(frozen=True, eq=False)
class LsiFactors:
    u: np.ndarray  # t x k, orthonormal columns
    s: np.ndarray  # k, descending
    v: np.ndarray  # u x k, orthonormal columns

    @property
    def rank(self) -> int:
        return len(self.s)

    def reconstruct(self) -> np.ndarray:
        return (self.u * self.s) @ self.v.T


def lsi_reduce(a: np.ndarray, k: int | Literal["full"] = "full") -> LsiFactors:
    """Rank-*k* truncated SVD of *a*, with signs fixed so each U column's largest entry is positive."""
    a = np.asarray(a, dtype=float)
    if a.ndim != 2:
        raise ContractViolation(f"expected a matrix, got shape {a.shape}")
    if not np.any(a):
        raise DegenerateCorpusError("term-document matrix is all zeros")
    full = min(a.shape)
    if k == "full":
        k = full
    if not (isinstance(k, (int, np.integer)) and 1 <= k <= full):
        raise ContractViolation(f"rank {k!r} outside [1, {full}]")
    u, s, vt = np.linalg.svd(a, full_matrices=False)
    u, s, v = u[:, :k], s[:k], vt[:k].T
    pivot = np.abs(u).argmax(axis=0)
    signs = np.where(u[pivot, np.arange(k)] < 0, -1.0, 1.0)
    return LsiFactors(u * signs, s, v * signs)


@dataclass(frozen=True, eq=False)
class SimilarityMatrix:
    """Cosines, rows = description queries, columns = use-case documents."""

    values: np.ndarray
    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]

    def __post_init__(self):
        if self.values.shape != (len(self.row_labels), len(self.col_labels)):
            raise ContractViolation("similarity labels do not match matrix shape")

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["description", *self.col_labels])
        for label, row in zip(self.row_labels, self.values):
            writer.writerow([label, *(f"{round(float(x), 6) + 0.0:.6f}" for x in row)])
        return buf.getvalue()


def _cosine_columns(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Cosine of every column of *x* against every column of *y*; zero norm gives 0."""
    nx = np.linalg.norm(x, axis=0)
    ny = np.linalg.norm(y, axis=0)
    scale = np.outer(nx, ny)
    dots = x.T @ y
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(scale > 0, dots / np.where(scale > 0, scale, 1.0), 0.0)
    return np.clip(out, -1.0, 1.0)


def _numerical_rank(factors: LsiFactors, shape: Sequence[int]) -> int:
    tol = factors.s[0] * max(shape) * np.finfo(float).eps
    return int(np.count_nonzero(factors.s > tol))


def similarity_matrix(corpus: Corpus, cfg: LsiConfig) -> SimilarityMatrix:
    """Cosine similarity of each folded description against each projected use-case.

    Documents live in the reduced space as the columns of ``S_k V_k^T``; a query
    ``q`` is folded in as ``S_k^-1 U_k^T q`` and scaled back by ``S_k`` before
    the comparison, so both sides share the same coordinates.  A block with a
    single use-case has nothing to reduce and uses the plain cosine of raw counts.
    """
    u = corpus.documents.shape[1]
    if u == 1:
        sim = _cosine_columns(corpus.queries, corpus.documents)
        zero = not corpus.queries.any() or not corpus.documents.any()
        if zero and corpus.fallback[0]:
            sim = np.ones((1, 1))
        return SimilarityMatrix(sim, corpus.query_labels, corpus.doc_labels)

    tdm = weight(corpus, cfg.weighting)
    factors = lsi_reduce(tdm.values, cfg.rank if cfg.rank == "full"
                         else min(cfg.rank, min(tdm.values.shape)))
    k = _numerical_rank(factors, tdm.values.shape)
    uk, sk, vk = factors.u[:, :k], factors.s[:k], factors.v[:, :k]
    docs = sk[:, None] * vk.T
    folded = (uk.T @ tdm.queries) / sk[:, None]
    sim = _cosine_columns(sk[:, None] * folded, docs)
    return SimilarityMatrix(sim, corpus.query_labels, corpus.doc_labels)


def block_similarity(block: Block, family: VariantFamily,
                     cfg: LsiConfig) -> SimilarityMatrix:
    return similarity_matrix(build_corpus(block, family, cfg), cfg)


def is_similar(value: float, threshold: float = DEFAULT_THRESHOLD) -> bool:
    """Inclusive threshold test."""
    return value >= threshold or math.isclose(value, threshold, rel_tol=0, abs_tol=1e-12)
