"""Degree shifts, degree-zero Hom, total HOM, and stable shifts.

Shift convention: shift(M, d) is the module M(d) with M(d)_i = M_{d+i},
so a basis vector of degree k in M has degree k - d in M(d).
"""

from .modules import (Module, ZeroModuleError, cosyzygy, hom_basis, hom_dim,
                      syzygy, zero_module)


def shift(m, d):
    """Degree shift M(d); the underlying module is unchanged."""
    if not m.is_graded:
        raise ValueError("shift needs a graded module")
    return Module(m.algebra, m.act,
                  degrees=tuple(k - d for k in m.degrees), validate=False)


def ungrade(m):
    """Forget the grading; action matrices are reused as-is."""
    if not m.is_graded:
        return m
    return Module(m.algebra, m.act, degrees=None, validate=False)


def graded_hom0(m, n):
    """Basis of the degree-preserving homs."""
    from .modules import hom_space
    return hom_space(m, n, degree_zero=True)


def hom_total(m, n):
    """{i: dim Hom_0(m, n(i))} over the finite window where it can be nonzero.

    The window is read off the degree supports: a degree-preserving map
    m -> n(i) needs deg_n[c] - i = deg_m[r] somewhere, so only differences
    of support degrees contribute.
    """
    if not (m.is_graded and n.is_graded):
        raise ValueError("hom_total needs graded modules")
    if m.dim == 0 or n.dim == 0:
        return {}
    window = sorted({dn - dm for dn in n.degrees for dm in m.degrees})
    return {i: hom_dim(m, shift(n, i), degree_zero=True) for i in window}


def stable_shift(m, n):
    """n-fold cosyzygy (n > 0) or syzygy (n < 0) of the stable class of m.

    The input is first normalized to a module without projective summands
    (one syzygy followed by one cosyzygy does this for minimal covers and
    envelopes over a self-injective algebra); afterwards each minimal step
    stays projective-summand-free. Works for graded and ungraded modules.
    """
    if m.dim == 0:
        raise ZeroModuleError("stable shift of the zero module")
    x = syzygy(m)
    if x.dim == 0:
        return zero_module(m.algebra, m.is_graded)
    x = cosyzygy(x)
    steps = abs(n)
    for _ in range(steps):
        if x.dim == 0:
            return x
        x = cosyzygy(x) if n > 0 else syzygy(x)
    return x


graded_stable_shift = stable_shift
