"""Bundled CAS+ protocol sources and the cost model they are priced with."""
import os

from ..model import CostModel, load_model

CORPUS_DIR = os.path.dirname(os.path.abspath(__file__))
CORPUS_MODEL_FILE = "corpus.model.json"

# Source file -> protocol name, in the order results are usually reported.
PROTOCOLS = {
    "wmf.cas": "Wide Mouthed Frog",
    "nspk.cas": "Needham Schroeder",
    "otway_rees.cas": "Otway-Rees",
    "smak_iov.cas": "SMAK-IOV",
    "ce_ske.cas": "CE-SKE",
    "lske.cas": "LSKE",
}

# The symmetric-key sample; it applies an unclassified function and is not
# part of the comparison.
SAMPLE = "nssk.cas+"


def corpus_path(filename):
    path = os.path.join(CORPUS_DIR, filename)
    if not os.path.exists(path):
        raise FileNotFoundError(f"no bundled file {filename!r}")
    return path


def corpus_files():
    """Paths of the compared protocols, in reporting order."""
    return [corpus_path(filename) for filename in PROTOCOLS]


def corpus_model() -> CostModel:
    return load_model(corpus_path(CORPUS_MODEL_FILE))
