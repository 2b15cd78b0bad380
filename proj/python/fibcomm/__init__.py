"""Commensurability invariants of surface automorphisms.

Documents go in and come out as dicts; the extension itself speaks JSON
strings.
"""

import json as _json

from . import _fibcomm
from ._fibcomm import (  # noqa: F401
    ParseError,
    euler_characteristic,
    fundamental_unit,
    run,
    squarefree_part,
    surfaces_commensurable,
    torus_commensurable,
    unit_log_ratio,
)


def _dumps(doc):
    return doc if isinstance(doc, str) else _json.dumps(doc)


def classify_torus(matrix):
    return _json.loads(_fibcomm.classify_torus(matrix))


def invariants(doc):
    return _json.loads(_fibcomm.invariants(_dumps(doc)))


def compare(phi1, phi2, mode="full"):
    return _json.loads(_fibcomm.compare(_dumps(phi1), _dumps(phi2), mode))


def power(doc, k):
    return _json.loads(_fibcomm.power(_dumps(doc), k))


def normalize(doc):
    mapping, power_taken, degree = _fibcomm.normalize(_dumps(doc))
    return _json.loads(mapping), power_taken, degree


def staircase(manifold, plan):
    return _json.loads(_fibcomm.staircase(_dumps(manifold), _dumps(plan)))


def spectrum(query):
    return _json.loads(_fibcomm.spectrum(_dumps(query)))


def execute(command, inputs, options=None):
    return _json.loads(_fibcomm.execute(command, [str(p) for p in inputs], _json.dumps(options or {})))
