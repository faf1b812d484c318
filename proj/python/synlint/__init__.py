"""Consistency checks and repair for multi-wordnets and sense-annotated bitexts."""

import json

from ._synlint import Corpus, Lexicon, SynlintError, run_cli, synthesize
from . import _synlint

__all__ = ["Corpus", "Lexicon", "SynlintError", "detect", "repair", "run_cli", "synthesize"]


def detect(corpus, lexicon, **kwargs):
    """Return (report, exceptions) as plain Python objects."""
    report, lines = _synlint.detect(corpus, lexicon, **kwargs)
    return json.loads(report), [json.loads(line) for line in lines]


def repair(corpus, lexicon, direction="st"):
    """Return (report, suggestions) as plain Python objects."""
    report, lines = _synlint.repair(corpus, lexicon, direction)
    return json.loads(report), [json.loads(line) for line in lines]
