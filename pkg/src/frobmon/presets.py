"""Named algebra presets used by the CLI and the suites.

Grammar (colon-separated, recursive):
    trunc-poly:<p>        k[t]/(t^p), graded with deg t = 1
    linear-quiver:<n>     path algebra of 1 -> 2 -> ... -> n
    t2-of:<preset>        upper triangular T2 of a preset
    beilinson-of:<preset> Beilinson algebra of a preset
"""

from .algebras import beilinson_of, build_bqa, t2_of
from .quivers import Quiver

_CACHE = {}


def preset_algebra(name, field):
    key = (name, field.kind, field.q)
    if key in _CACHE:
        return _CACHE[key]
    alg = _build(name, field)
    _CACHE[key] = alg
    return alg


def _build(name, field):
    parts = name.split(":")
    head = parts[0]
    if head == "trunc-poly":
        p = int(parts[1])
        if p < 2:
            raise ValueError("trunc-poly needs p >= 2")
        quiver = Quiver(["1"], [("t", "1", "1")])
        return build_bqa(quiver, [[(1, ("t",) * p)]], field, name=name)
    if head == "linear-quiver":
        n = int(parts[1])
        if n < 1:
            raise ValueError("linear-quiver needs n >= 1")
        verts = [str(i) for i in range(1, n + 1)]
        arrows = [(f"a{i}", str(i), str(i + 1)) for i in range(1, n)]
        return build_bqa(Quiver(verts, arrows), [], field, name=name)
    if head == "t2-of":
        inner = preset_algebra(":".join(parts[1:]), field)
        return t2_of(inner, name=name)
    if head == "beilinson-of":
        inner = preset_algebra(":".join(parts[1:]), field)
        return beilinson_of(inner, name=name)
    raise ValueError(f"unknown algebra preset {name!r}")


def trunc_poly_p(algebra):
    """Read p back off a trunc-poly preset (the nilpotency degree of t)."""
    if algebra.name is None or not algebra.name.startswith("trunc-poly:"):
        raise ValueError("not a trunc-poly preset")
    return int(algebra.name.split(":")[1])
