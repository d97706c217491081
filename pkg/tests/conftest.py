import os

import pytest

from cascost.casplus import parse_file, resolve
from cascost.corpus import PROTOCOLS, SAMPLE, corpus_model, corpus_path
from cascost.logger import set_level

MINIMAL = """\
protocol P
identifiers
A, B : user;
messages
1. A -> B : A
knowledge
A : A, B;
B : A, B;
"""


@pytest.fixture(autouse=True)
def quiet_logs():
    set_level("ERROR")
    yield
    set_level("ERROR")


@pytest.fixture(autouse=True)
def fixed_epoch(monkeypatch):
    monkeypatch.setenv("SOURCE_DATE_EPOCH", "1700000000")
    monkeypatch.delenv("CASCOST_STORE", raising=False)


@pytest.fixture(scope="session")
def sample_path():
    return corpus_path(SAMPLE)


@pytest.fixture(scope="session")
def sample_source(sample_path):
    with open(sample_path, encoding="utf-8") as f:
        return f.read()


@pytest.fixture(scope="session")
def sample_spec(sample_path):
    spec, _ = resolve(parse_file(sample_path))
    return spec


@pytest.fixture(scope="session")
def model():
    return corpus_model()


@pytest.fixture(scope="session")
def corpus_specs():
    """Protocol name -> resolved spec, in reporting order."""
    specs = {}
    for filename, name in PROTOCOLS.items():
        spec, _ = resolve(parse_file(corpus_path(filename)))
        specs[name] = spec
    return specs


@pytest.fixture
def write_source(tmp_path):
    def _write(text, name="proto.cas", mode="w"):
        path = tmp_path / name
        if mode == "wb":
            path.write_bytes(text)
        else:
            path.write_text(text, encoding="utf-8")
        return str(path)

    return _write


@pytest.fixture
def store_dir(tmp_path):
    return os.path.join(str(tmp_path), "store")
