"""Loader for the bundled worked examples (moduli, residue sets, chosen lcrms)."""

import json
from functools import lru_cache
from importlib import resources

from .exactint import as_square


@lru_cache(maxsize=None)
def load() -> dict:
    with resources.files("gmdcrt").joinpath("data/examples.json").open() as fh:
        return json.load(fh)


def example(name: str) -> dict:
    return load()[name]


def overrides(entries) -> dict:
    """Turn ``[{"subset": [...], "lcrm": [[...]]}, ...]`` into a mapping."""
    return {tuple(sorted(e["subset"])): as_square(e["lcrm"]) for e in entries}
