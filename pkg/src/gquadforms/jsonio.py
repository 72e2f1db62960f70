"""JSON file formats (documented in docs/formats.md).

Textual scalar encodings: polynomials as `t^2+2*t+1` (or `c0 + c1*t + ...`),
rational functions as `num/den`, places as the monic irreducible polynomial
string or the literal `inf`.
"""

import json

from .errors import InputError
from .funcfield import Place, RatFunc
from .grpalg import GModule, GroupSpec
from .linalg import Mat
from .quadform import QuadForm


def parse_ratfunc(p, text):
    try:
        return RatFunc.from_string(p, text)
    except (ValueError, IndexError) as exc:
        raise InputError(f"cannot parse rational function {text!r}: {exc}") from exc


def parse_place(p, text):
    try:
        return Place.from_string(p, text)
    except (ValueError, IndexError) as exc:
        raise InputError(f"cannot parse place {text!r}: {exc}") from exc


def mat_from_json(p, rows):
    if not isinstance(rows, list) or not rows:
        raise InputError("matrix must be a nonempty list of rows")
    return Mat(p, [[parse_ratfunc(p, e) for e in row] for row in rows])


def mat_to_json(M):
    return [[str(e) for e in row] for row in M.rows]


def quadform_from_json(data):
    """{"p": int, "gram": [[str, ...], ...]}"""
    if "p" not in data or "gram" not in data:
        raise InputError("quadratic form JSON needs 'p' and 'gram'")
    p = int(data["p"])
    gram = mat_from_json(p, data["gram"])
    if gram.nrows != gram.ncols:
        raise InputError("Gram matrix must be square")
    try:
        return QuadForm(gram)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def quadform_to_json(q):
    return {"p": q.p, "gram": mat_to_json(q.gram)}


def gmodule_from_json(data):
    """{"p": int, "generators": [names], "dim": n, "action": {name: rows}}"""
    for key in ("p", "generators", "dim", "action"):
        if key not in data:
            raise InputError(f"module JSON misses '{key}'")
    p = int(data["p"])
    gens = list(data["generators"])
    grp = GroupSpec(p, gens)
    action = {}
    for g in gens:
        if g not in data["action"]:
            raise InputError(f"module JSON misses the action of generator {g!r}")
        action[g] = mat_from_json(p, data["action"][g])
    m = GModule(grp, action)
    if m.dim != int(data["dim"]):
        raise InputError("declared dim does not match the action matrices")
    return m


def gmodule_to_json(m):
    return {
        "p": m.p,
        "generators": list(m.group.generators),
        "dim": m.dim,
        "action": {g: mat_to_json(M) for g, M in m.action.items()},
    }


def quaternion_from_json(p, data):
    """{"a": str, "b": str}"""
    if "a" not in data or "b" not in data:
        raise InputError("quaternion JSON needs 'a' and 'b'")
    from .csa import Quaternion

    a = parse_ratfunc(p, data["a"])
    b = parse_ratfunc(p, data["b"])
    if a.is_zero() or b.is_zero():
        raise InputError("quaternion parameters must be nonzero")
    return Quaternion(a, b)


def load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise InputError(f"file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}: invalid JSON: {exc.msg}") from exc


def dump_json(data, path=None, indent=2):
    text = json.dumps(data, sort_keys=True, indent=indent)
    if path is None:
        return text
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text + "\n")
    return None
