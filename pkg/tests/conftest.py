import copy
import json
from importlib import resources

import pytest

from hwpreg import SOLUTION_IDS


def _raw(sid: str) -> dict:
    text = resources.files("hwpreg.data").joinpath(f"{sid}.json").read_text("utf-8")
    return json.loads(text)


@pytest.fixture(scope="session")
def raw_docs() -> dict[str, dict]:
    """The bundled solution documents as plain dicts, one per id."""
    return {sid: _raw(sid) for sid in SOLUTION_IDS}


@pytest.fixture()
def doc_copy(raw_docs):
    """Deep-copy a bundled document so tests can corrupt it freely."""

    def make(sid: str) -> dict:
        return copy.deepcopy(raw_docs[sid])

    return make
