"""Exact weighted stable reduction of elliptic surface degenerations.

Inputs are the JSON documents the ``wstab`` command reads, given either as
text, as a path, or as an already-decoded dict.
"""

import json
import os
from fractions import Fraction

from . import _core
from ._core import InvariantError, ParseError, PreconditionError, WstabError

__all__ = [
    "validate",
    "stability",
    "reduce",
    "walls",
    "threshold",
    "no_pseudo",
    "eval_polynomial",
    "run_cli",
    "WstabError",
    "ParseError",
    "PreconditionError",
    "InvariantError",
]


def _text(doc):
    if isinstance(doc, dict):
        return json.dumps(doc)
    if isinstance(doc, os.PathLike) or (isinstance(doc, str) and not doc.lstrip().startswith("{")):
        with open(doc, encoding="utf-8") as f:
            return f.read()
    return doc


def _weights(w):
    if w is None or isinstance(w, str):
        return w
    return ",".join(str(Fraction(x)) for x in w)


def validate(doc):
    """List of {"where", "message"} violations; empty when valid."""
    return json.loads(_core.validate(_text(doc)))


def stability(doc, weights=None):
    return json.loads(_core.stability(_text(doc), _weights(weights)))


def reduce(doc, to_weights=None, from_weights=None):
    """Reduction trace. Without from_weights this is the stable reduction at to_weights."""
    return json.loads(_core.reduce(_text(doc), _weights(from_weights), _weights(to_weights)))


def walls(doc):
    return json.loads(_core.walls(_text(doc)))


def threshold(doc, weights=None):
    """Exact threshold as a string, or None for infinity."""
    return _core.threshold(_text(doc), _weights(weights))


def no_pseudo(doc, fiber_weights=None):
    fw = None if fiber_weights is None else ",".join(str(Fraction(x)) for x in fiber_weights)
    return Fraction(_core.no_pseudo(_text(doc), fw))


def eval_polynomial(poly, point):
    """Evaluate a weight polynomial at (s, a1, ..., an)."""
    return Fraction(_core.eval_polynomial(poly, len(point) - 1, _weights(point)))


def run_cli(args):
    """(exit code, stdout, stderr) of the command line tool."""
    return _core.run_cli([str(a) for a in args])
