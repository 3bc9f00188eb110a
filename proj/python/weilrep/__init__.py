"""Exact Weil representations of finite quadratic modules."""

import json

from ._weilrep import ConsistencyError, Form, InputError
from . import _weilrep

__all__ = ["Form", "InputError", "ConsistencyError", "form", "info", "rep", "basis", "invariants", "decompose"]


def form(symbol):
    """A form from a builtin symbol such as "3^+1⊕U(2)" or a path to a form .json file."""
    return symbol if isinstance(symbol, Form) else Form(symbol)


def info(f):
    return json.loads(_weilrep.info_json(form(f)))


def rep(f, word):
    """Matrix of rho(word) in the natural basis; entries are {"conductor", "coeffs"} objects."""
    return json.loads(_weilrep.rep_json(form(f), word))


def basis(f, verify=False, words=50):
    return json.loads(_weilrep.basis_json(form(f), verify, words))


def invariants(f, method="all", with_basis=False):
    return json.loads(_weilrep.invariants_json(form(f), method, with_basis))


def decompose(f):
    return json.loads(_weilrep.decompose_json(form(f)))
