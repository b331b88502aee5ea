"""Embedded reference data: table polynomials, printed constants, admissibility lists."""

import json
from functools import lru_cache
from importlib import resources


@lru_cache(maxsize=1)
def load() -> dict:
    with resources.files(__package__).joinpath("published.json").open() as fh:
        return json.load(fh)
