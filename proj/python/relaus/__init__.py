"""Python face of the quiver algebra toolkit.

Every function accepts algebra and module specs either as JSON strings or as
already-parsed dicts, and returns parsed report dicts.
"""

import json

import _relaus

__all__ = [
    "algebra_digest",
    "indecomposables",
    "auslander",
    "zeta",
    "check_tilting",
    "ttf_audit",
    "gprj_pipeline",
    "morita_invariants",
]


def _text(spec):
    return spec if isinstance(spec, str) else json.dumps(spec)


def algebra_digest(algebra):
    return _relaus.algebra_digest(_text(algebra))


def indecomposables(algebra, max_dim=8, max_steps=10000):
    return json.loads(_relaus.indecomposables(_text(algebra), max_dim, max_steps))


def auslander(algebra, max_dim=8, max_steps=10000, ext_bound=6):
    return json.loads(
        _relaus.auslander(_text(algebra), max_dim, max_steps, ext_bound)
    )


def zeta(algebra, module, max_dim=8, max_steps=10000, ext_bound=6):
    return json.loads(
        _relaus.zeta(_text(algebra), _text(module), max_dim, max_steps, ext_bound)
    )


def check_tilting(algebra, candidate="zeta-sum", max_dim=8, max_steps=10000,
                  ext_bound=6):
    return json.loads(
        _relaus.check_tilting(_text(algebra), candidate, max_dim, max_steps,
                              ext_bound)
    )


def ttf_audit(algebra, samples=20, max_dim=8, max_steps=10000, ext_bound=6):
    return json.loads(
        _relaus.ttf_audit(_text(algebra), samples, max_dim, max_steps, ext_bound)
    )


def gprj_pipeline(algebra, max_dim=8, max_steps=10000, ext_bound=6):
    return json.loads(
        _relaus.gprj_pipeline(_text(algebra), max_dim, max_steps, ext_bound)
    )


def morita_invariants(algebra):
    return json.loads(_relaus.morita_invariants(_text(algebra)))
