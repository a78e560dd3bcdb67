"""Paths of the bundled mobile-media data files."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

MOBILE_MEDIA = "mobile_media.json"
MOBILE_MEDIA_TRUTH = "mobile_media_truth.json"
MOBILE_MEDIA_TABLE2 = "mobile_media_table2.json"


def data_path(name: str) -> Path:
    return Path(str(resources.files("ucvaria").joinpath("data", name)))
