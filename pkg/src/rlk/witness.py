"""Checking the printed isomorphism matrices."""
from __future__ import annotations

import itertools

import numpy as np

from . import linalg as la
from .catalog import WITNESSES, Witness, domain_values, eval_expr, eval_matrix, k_entry
from .field import FieldSpec
from .isotest import verify_iso_witness


def _side_values(F, entry, binding, env, side):
    vals = {}
    for name in entry.params:
        b = binding.get(name)
        if b is None:
            raise KeyError(f"{entry.label}: parameter {name} unbound")
        if isinstance(b, tuple):
            b = b[side]
        vals[name] = None if b == "?" else eval_expr(F, b, env)
    return vals


def _instances(F, entry, vals):
    """Fill '?' parameters with every nonzero value."""
    free = [k for k, v in vals.items() if v is None]
    pools = [domain_values(F, "Fx") for _ in free]
    for combo in itertools.product(*pools):
        full = dict(vals)
        full.update(zip(free, combo))
        yield full, entry.algebra(F, full)


def check_claim(F: FieldSpec, w: Witness, claim, env) -> dict:
    """Does the matrix (as printed, or transposed) carry one side of the
    claim onto the other for this choice of the free symbols?"""
    kname, i, j, binding = claim
    Ei, Ej = k_entry(kname, i), k_entry(kname, j)
    vi = _side_values(F, Ei, binding, env, 0)
    vj = _side_values(F, Ej, binding, env, 1)
    M = eval_matrix(F, w.matrix, env)
    if not la.is_invertible(F, M):
        return {"holds": False, "reason": "singular"}
    for (ai, Ri), (aj, Rj) in itertools.product(_instances(F, Ei, vi), _instances(F, Ej, vj)):
        for orient, T in (("columns", M), ("rows", M.T)):
            if verify_iso_witness(Ri, Rj, T):
                return {"holds": True, "orientation": orient, "direction": "forward",
                        "values": (ai, aj)}
            if verify_iso_witness(Rj, Ri, T):
                return {"holds": True, "orientation": orient, "direction": "backward",
                        "values": (ai, aj)}
    return {"holds": False, "reason": "no orientation works", "values": (vi, vj)}


def check_witness(F: FieldSpec, w: Witness) -> list:
    names = list(w.params)
    pools = [domain_values(F, w.params[n]) for n in names]
    out = []
    for claim in w.claims:
        fails, orients, n = [], set(), 0
        for combo in itertools.product(*pools):
            env = dict(zip(names, combo))
            r = check_claim(F, w, claim, env)
            n += 1
            if r["holds"]:
                orients.add((r["orientation"], r["direction"]))
            else:
                fails.append({"env": env, **r})
        kname, i, j, _ = claim
        out.append({"witness": w.wid, "source": w.source, "claim": f"{kname}^{i} ~ {kname}^{j}",
                    "field": repr(F), "instances": n, "holds": not fails,
                    "orientations": sorted(orients), "failures": fails[:3]})
    return out


def check_all(F: FieldSpec, witnesses=None) -> list:
    out = []
    for w in witnesses or WITNESSES:
        out.extend(check_witness(F, w))
    return out
