"""Variant families: domain types, JSON ingestion and validation.

A family file looks like::

    {"name": "mobile-media",
     "variants": [{"id": "re1",
                   "use_cases": [{"name": "View album",
                                  "description": "The client can view ..."}]}]}

Directory mode points at a folder whose ``family.json`` carries the family
name and a ``members`` list of per-variant files, each holding one variant
object.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from types import MappingProxyType
from typing import IO, Any, Iterable, Mapping

from .errors import ParseError, ValidationError

log = logging.getLogger(__name__)

METADATA_FILE = "family.json"


def name_key(name: str) -> str:
    """Identity key of a use-case name: trimmed and case-folded."""
    return " ".join(name.split()).casefold()


@dataclass(frozen=True)
class UseCase:
    name: str
    description: str = ""

    def __post_init__(self):
        if not self.name or not self.name.strip():
            raise ValidationError("use-case name must be non-empty")


@dataclass(frozen=True)
class DiagramVariant:
    id: str
    use_cases: tuple[UseCase, ...]

    def __post_init__(self):
        if not self.id or not self.id.strip():
            raise ValidationError("variant id must be non-empty")
        if not self.use_cases:
            raise ValidationError(f"variant {self.id!r} has no use-cases")
        seen: set[str] = set()
        for uc in self.use_cases:
            key = name_key(uc.name)
            if key in seen:
                raise ValidationError(
                    f"duplicate use-case {uc.name.strip()!r} in variant {self.id!r}")
            seen.add(key)

    def keys(self) -> frozenset[str]:
        return frozenset(name_key(uc.name) for uc in self.use_cases)


@dataclass(frozen=True)
class VariantFamily:
    """An immutable, validated family of use-case diagram variants.

    ``labels`` maps each identity key to the display label of its first
    appearance; ``descriptions`` maps the same keys to the canonical text.
    """

    name: str
    variants: tuple[DiagramVariant, ...]
    labels: Mapping[str, str]
    descriptions: Mapping[str, str]

    @classmethod
    def build(cls, name: str, variants: Iterable[DiagramVariant]) -> VariantFamily:
        variants = tuple(variants)
        if len(variants) < 2:
            raise ValidationError(
                f"a family needs at least 2 variants, got {len(variants)}")
        ids: set[str] = set()
        for v in variants:
            if v.id in ids:
                raise ValidationError(f"duplicate variant id {v.id!r}")
            ids.add(v.id)

        labels: dict[str, str] = {}
        descriptions: dict[str, str] = {}
        for v in variants:
            for uc in v.use_cases:
                key = name_key(uc.name)
                labels.setdefault(key, uc.name.strip())
                text = uc.description.strip()
                known = descriptions.get(key, "")
                if known and text and known != text:
                    raise ValidationError(
                        f"conflicting descriptions for use-case {labels[key]!r} "
                        f"(variant {v.id!r})")
                if text and not known:
                    descriptions[key] = text
                else:
                    descriptions.setdefault(key, known)
        for key, text in descriptions.items():
            if not text:
                log.warning("use-case %r has no description; "
                            "matching falls back to its name", labels[key])
        return cls(name, variants, MappingProxyType(labels),
                   MappingProxyType(descriptions))

    @property
    def variant_ids(self) -> tuple[str, ...]:
        return tuple(v.id for v in self.variants)

    def label(self, name: str) -> str:
        return self.labels[name_key(name)]

    def description(self, name: str) -> str:
        return self.descriptions[name_key(name)]

    def variant(self, variant_id: str) -> DiagramVariant:
        for v in self.variants:
            if v.id == variant_id:
                return v
        raise KeyError(variant_id)


def family_universe(family: VariantFamily) -> tuple[str, ...]:
    """All use-case labels of the family, deduplicated, in first-appearance order."""
    seen: dict[str, str] = {}
    for v in family.variants:
        for uc in v.use_cases:
            seen.setdefault(name_key(uc.name), family.label(uc.name))
    return tuple(seen.values())


def _require(obj: Any, key: str, kind: type, where: str) -> Any:
    if not isinstance(obj, dict):
        raise ValidationError(f"{where}: expected an object")
    if key not in obj:
        raise ValidationError(f"{where}: missing field {key!r}")
    value = obj[key]
    if not isinstance(value, kind):
        raise ValidationError(
            f"{where}: field {key!r} must be {kind.__name__}, "
            f"got {type(value).__name__}")
    return value


def _variant_from_obj(obj: Any, where: str) -> DiagramVariant:
    vid = _require(obj, "id", str, where)
    raw = _require(obj, "use_cases", list, f"{where} ({vid})")
    use_cases = []
    for i, item in enumerate(raw):
        at = f"{where} ({vid}) use_cases[{i}]"
        name = _require(item, "name", str, at)
        desc = item.get("description", "")
        if not isinstance(desc, str):
            raise ValidationError(f"{at}: field 'description' must be str")
        use_cases.append(UseCase(name, desc))
    return DiagramVariant(vid, tuple(use_cases))


def _load_json(text: str, source: str | None) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, source, exc.lineno, exc.colno) from None


def parse_family(stream: IO[bytes] | IO[str] | bytes | str,
                 source: str | None = None) -> VariantFamily:
    """Parse one family document (the canonical JSON form)."""
    data = stream if isinstance(stream, (bytes, str)) else stream.read()
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not UTF-8: {exc.reason}", source) from None
    doc = _load_json(data, source)
    where = source or "family"
    name = _require(doc, "name", str, where)
    raw = _require(doc, "variants", list, where)
    variants = [_variant_from_obj(v, f"{where} variants[{i}]")
                for i, v in enumerate(raw)]
    return VariantFamily.build(name, variants)


def load_family(path: str | Path) -> VariantFamily:
    """Load a family from a JSON file or from a directory in member-file mode."""
    path = Path(path)
    if path.is_dir():
        meta_path = path / METADATA_FILE
        meta = _load_json(meta_path.read_text(encoding="utf-8"), str(meta_path))
        name = _require(meta, "name", str, str(meta_path))
        members = _require(meta, "members", list, str(meta_path))
        variants = []
        for member in members:
            if not isinstance(member, str):
                raise ValidationError(f"{meta_path}: member entries must be file names")
            member_path = path / member
            obj = _load_json(member_path.read_text(encoding="utf-8"), str(member_path))
            variants.append(_variant_from_obj(obj, str(member_path)))
        return VariantFamily.build(name, variants)
    with open(path, "rb") as fh:
        return parse_family(fh, source=str(path))


def family_to_dict(family: VariantFamily) -> dict[str, Any]:
    return {
        "name": family.name,
        "variants": [
            {"id": v.id,
             "use_cases": [{"name": uc.name, "description": uc.description}
                           for uc in v.use_cases]}
            for v in family.variants
        ],
    }


def dump_family(family: VariantFamily) -> str:
    return json.dumps(family_to_dict(family), indent=2, ensure_ascii=False) + "\n"
