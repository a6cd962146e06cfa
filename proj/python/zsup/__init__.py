"""Z2^n-graded superdomains: graded series, morphisms, atlases and color algebras.

Structured inputs (domains, morphisms, atlases, bundle data, presentations)
may be given as dicts or JSON strings in the same format the ``zsup`` command
line tool reads.
"""

import json as _json

from . import _zsup
from ._zsup import Domain, Morphism, Series, ZsupError, compose, germ_invert, jet, madic_order, realize_signs, verify_signs

__all__ = [
    "Domain",
    "Morphism",
    "Series",
    "ZsupError",
    "check_color_commutative",
    "check_cocycles",
    "clifford_mul",
    "compose",
    "domain",
    "germ_invert",
    "jet",
    "madic_order",
    "morphism",
    "realize_signs",
    "superize_dvb",
    "superize_nvb",
    "tangent_lift_atlas",
    "verify_signs",
]


def _text(data):
    if data is None:
        return ""
    return data if isinstance(data, str) else _json.dumps(data)


def domain(data):
    return Domain.from_json(_text(data))


def morphism(data):
    return Morphism.from_json(_text(data))


def check_cocycles(atlas):
    """One dict per checked chart triple: triple, ok, counterexample."""
    return _json.loads(_zsup.check_cocycles(_text(atlas)))


def tangent_lift_atlas(atlas):
    return _json.loads(_zsup.tangent_lift_atlas(_text(atlas)))


def superize_dvb(spec):
    return _zsup.superize_dvb(_text(spec))


def superize_nvb(spec):
    return _zsup.superize_nvb(_text(spec))


def clifford_mul(u, v, presentation=None):
    """Product in a color Clifford algebra; the quaternions when no presentation is given."""
    return _zsup.clifford_mul(u, v, _text(presentation))


def check_color_commutative(algebra=None):
    """(ok, counterexample, reason); the quaternions when no algebra is given."""
    return _zsup.check_color_commutative(_text(algebra))
