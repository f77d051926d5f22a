"""Access to the shipped curated data files (labels, degrees, golden tables)."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources


def _load(name: str):
    ref = resources.files("restinv.data").joinpath(name)
    with ref.open("r", encoding="utf-8") as fh:
        return json.load(fh)


@lru_cache(maxsize=None)
def label_anchors() -> dict:
    """Per ambient type: base_label -> anchored subset rules for primed names."""
    return _load("label_map.json")


@lru_cache(maxsize=None)
def curated_degrees() -> dict:
    """Degrees of C_I for classes beyond the enumeration cap, keyed by
    'Wtype/paper_label'; every desk-enumerable entry is cross-checked in tests."""
    return _load("curated_degrees.json")


@lru_cache(maxsize=None)
def expected_tables() -> dict:
    """Golden data mirroring the paper's three tables."""
    return _load("expected_tables.json")
