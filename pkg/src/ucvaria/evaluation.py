"""Precision, recall and F-measure of detected features against a ground truth."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .errors import ValidationError
from .features import FeatureModel
from .model import name_key

KINDS = ("mandatory", "optional")


@dataclass(frozen=True)
class GroundTruth:
    features: tuple[tuple[str, str], ...]

    def __post_init__(self):
        seen = set()
        for name, kind in self.features:
            if kind not in KINDS:
                raise ValidationError(f"feature {name!r}: unknown kind {kind!r}")
            key = name_key(name)
            if not key:
                raise ValidationError("ground-truth feature names must be non-empty")
            if key in seen:
                raise ValidationError(f"duplicate ground-truth feature {name!r}")
            seen.add(key)

    @classmethod
    def from_dict(cls, doc: dict) -> GroundTruth:
        try:
            items = doc["features"]
            return cls(tuple((f["name"], f["kind"]) for f in items))
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed ground truth: {exc}") from None

    @classmethod
    def load(cls, path: str | Path) -> GroundTruth:
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


@dataclass(frozen=True)
class FeatureScore:
    name: str
    detected: bool
    kind_match: bool
    f_measure: float


@dataclass(frozen=True)
class EvaluationReport:
    per_feature: tuple[FeatureScore, ...]
    precision: float
    recall: float
    f_measure: float
    tp: int
    fp: int
    fn: int

    def to_dict(self) -> dict:
        return {
            "overall": {"precision": self.precision, "recall": self.recall,
                        "f_measure": self.f_measure},
            "counts": {"tp": self.tp, "fp": self.fp, "fn": self.fn},
            "per_feature": [vars(s) for s in self.per_feature],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"


def prf(tp: int, fp: int, fn: int) -> tuple[float, float, float]:
    precision = tp / (tp + fp) if tp + fp else 1.0
    recall = tp / (tp + fn) if tp + fn else 1.0
    f = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return precision, recall, f


def score(detected: Iterable[tuple[str, str]],
          truth: Iterable[tuple[str, str]]) -> EvaluationReport:
    """Match ``(name, kind)`` pairs; a hit needs equal normalized name and kind."""
    detected = list(detected)
    truth = list(truth)
    found = {name_key(n): k for n, k in detected}
    expected = {name_key(n): k for n, k in truth}
    hits = {key for key, kind in found.items() if expected.get(key) == kind}

    per_feature = []
    for name, kind in truth:
        key = name_key(name)
        ok = key in hits
        per_feature.append(FeatureScore(name, key in found, ok, 1.0 if ok else 0.0))
    for name, _ in detected:
        if name_key(name) not in expected:
            per_feature.append(FeatureScore(name, True, False, 0.0))

    tp = len(hits)
    fp = len(found) - tp
    fn = len(expected) - tp
    p, r, f = prf(tp, fp, fn)
    return EvaluationReport(tuple(per_feature), p, r, f, tp, fp, fn)


def feature_pairs(fm: FeatureModel | dict) -> list[tuple[str, str]]:
    """``(name, kind)`` of every detected feature, from a model or its JSON form."""
    if isinstance(fm, FeatureModel):
        return [(f.name, f.kind.value) for f in fm.features]
    try:
        pairs = [(n, "mandatory") for n in fm["mandatory"]]
        pairs += [(o["name"], "optional") for o in fm["optional"]]
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed feature model: {exc}") from None
    return pairs


def evaluate(detected: FeatureModel | dict, truth: GroundTruth) -> EvaluationReport:
    return score(feature_pairs(detected), truth.features)
