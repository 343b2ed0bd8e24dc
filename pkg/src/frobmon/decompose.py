"""Direct-sum decomposition, indecomposability and isomorphism testing.

The strategy follows the usual two-stage plan: seeded random Fitting
splits (ker/im of a stabilized power of a random endomorphism), then an
exhaustive search of the endomorphism space for a nontrivial idempotent
when the whole coefficient space fits below the budget. "yes it is
indecomposable" is only ever reported after an exhaustive search (or when
End is one-dimensional); a failed randomized search stays inconclusive.
"""

import numpy as np

from . import _kernels
from .linalg import invert, left_kernel, rank, row_space_basis
from .modules import (Module, ModuleMap, ZeroModuleError, hom_basis,
                      submodule, zero_module)


class IsoResult:
    __slots__ = ("verdict", "fwd", "bwd", "witness")

    def __init__(self, verdict, fwd=None, bwd=None, witness=None):
        self.verdict = verdict  # "yes" | "no" | "inconclusive"
        self.fwd = fwd
        self.bwd = bwd
        self.witness = witness

    def __bool__(self):
        return self.verdict == "yes"

    def __repr__(self):
        return f"IsoResult({self.verdict})"


class IndecResult:
    __slots__ = ("verdict", "witness")

    def __init__(self, verdict, witness=None):
        self.verdict = verdict
        self.witness = witness

    def __repr__(self):
        return f"IndecResult({self.verdict})"


class DecomposeResult:
    """Summands with multiplicities; `certified` means every piece passed
    an exhaustive indecomposability check."""

    __slots__ = ("summands", "certified")

    def __init__(self, summands, certified):
        self.summands = summands
        self.certified = certified

    def __repr__(self):
        dims = [(m.dim, k) for m, k in self.summands]
        tag = "certified" if self.certified else "inconclusive"
        return f"DecomposeResult({dims}, {tag})"


# ---------------------------------------------------------------------------
# Generic split search on an endomorphism space
# ---------------------------------------------------------------------------


def _random_combo(field, mats, rng):
    h = len(mats)
    if field.is_prime_field:
        coeffs = rng.integers(0, field.q, size=h)
    else:
        coeffs = rng.integers(-2, 3, size=h)
    out = field.zeros(mats[0].shape)
    for c, m in zip(coeffs, mats):
        if c:
            out = field.mat_add(out, field.scal_mul(field.coerce(int(c)), m))
    return out


def _stable_power(field, phi):
    d = phi.shape[0]
    psi = phi
    steps = 1
    while steps < d:
        psi = field.mat_mul(psi, psi)
        steps *= 2
    return psi


def search_split(field, end_mats, rng, fit_tries, budget):
    """Look for a direct-sum split of the identity on a D-dim space whose
    endomorphism algebra is spanned by end_mats.

    Returns ("split", ker_rows, im_rows), ("indec", None, None) after an
    exhaustive search, or ("unknown", None, None).
    """
    if not end_mats:
        return ("indec", None, None)
    d = end_mats[0].shape[0]
    if len(end_mats) == 1:
        # End = k * identity: nothing to split
        return ("indec", None, None)
    for _ in range(fit_tries):
        phi = _random_combo(field, end_mats, rng)
        psi = _stable_power(field, phi)
        r = rank(field, psi)
        if 0 < r < d:
            im = row_space_basis(field, psi)
            ker = left_kernel(field, psi)
            if ker.shape[0] + im.shape[0] == d:
                return ("split", ker, im)
    if field.is_prime_field and _kernels.exhaustive_feasible(
            field.q, len(end_mats), budget):
        stack = np.ascontiguousarray(np.stack(end_mats))
        coeffs = _kernels.find_idempotent(stack, field.q, budget)
        if coeffs is None:
            return ("indec", None, None)
        E = field.zeros((d, d))
        for c, m in zip(coeffs, end_mats):
            if c:
                E = field.mat_add(E, field.scal_mul(int(c), m))
        im = row_space_basis(field, E)
        ker = left_kernel(field, E)
        if ker.shape[0] + im.shape[0] != d:
            raise RuntimeError("idempotent split is not a direct sum")
        return ("split", ker, im)
    return ("unknown", None, None)


def projection_idempotent(field, ker_rows, im_rows):
    """The idempotent projecting onto span(im_rows) along span(ker_rows)."""
    full = np.concatenate([ker_rows, im_rows], axis=0)
    inv = invert(field, full)
    if inv is None:
        raise RuntimeError("split rows do not span")
    r = ker_rows.shape[0]
    return field.mat_mul(inv[:, r:], im_rows)


# ---------------------------------------------------------------------------
# Modules
# ---------------------------------------------------------------------------


def _module_end_mats(m):
    return hom_basis(m, m, degree_zero=m.is_graded)


def is_indecomposable(m, budget=2**20, seed=0, fit_tries=24):
    """Exhaustively certified "yes", witnessed "no", or inconclusive."""
    if m.dim == 0:
        return IndecResult("no", None)
    rng = np.random.default_rng(seed)
    ends = _module_end_mats(m)
    verdict, ker, im = search_split(m.field, ends, rng, fit_tries, budget)
    if verdict == "indec":
        return IndecResult("yes")
    if verdict == "split":
        E = projection_idempotent(m.field, ker, im)
        return IndecResult("no", ModuleMap(m, m, E, check=False))
    return IndecResult("inconclusive")


def decompose(m, budget=2**20, seed=0, fit_tries=24):
    """Split m into indecomposable summands with multiplicities.

    Every split is verified by construction (complementary row spaces of a
    verified endomorphism); pieces are grouped by iso_test. `certified`
    drops to False whenever some piece could not be exhaustively certified
    indecomposable within the budget.
    """
    rng = np.random.default_rng(seed)
    pieces = []
    certified = True

    def recurse(x):
        nonlocal certified
        if x.dim == 0:
            return
        ends = _module_end_mats(x)
        verdict, ker, im = search_split(x.field, ends, rng, fit_tries, budget)
        if verdict == "split":
            for rows in (ker, im):
                sub, _ = submodule(x, rows)
                recurse(sub)
            return
        if verdict == "unknown":
            certified = False
        pieces.append(x)

    recurse(m)
    groups = []
    for p in pieces:
        placed = False
        for g in groups:
            if p.dim == g[0].dim and iso_test(p, g[0], budget=budget, seed=seed):
                g.append(p)
                placed = True
                break
        if not placed:
            groups.append([p])
    summands = [(g[0], len(g)) for g in groups]
    return DecomposeResult(summands, certified)


def iso_test(m, n, budget=2**14, seed=0):
    """Search for an isomorphism m -> n.

    Definitive "no" comes only from dimension or Hom-dimension asymmetry;
    a failed search is inconclusive. Degree-preserving maps are used when
    both modules are graded.
    """
    if (m.algebra is not n.algebra) and m.algebra != n.algebra:
        return IsoResult("no")
    if m.dim != n.dim:
        return IsoResult("no")
    if m.dim == 0:
        f = m.field
        z = f.zeros((0, 0))
        return IsoResult("yes", ModuleMap(m, n, z, check=False),
                         ModuleMap(n, m, z, check=False))
    dz = m.is_graded and n.is_graded
    f = m.field
    h_fwd = hom_basis(m, n, degree_zero=dz)
    h_bwd = hom_basis(n, m, degree_zero=dz)
    if len(h_fwd) != len(h_bwd):
        return IsoResult("no")
    if not h_fwd:
        return IsoResult("no")

    def try_mat(F):
        G = invert(f, F)
        if G is None:
            return None
        return IsoResult("yes", ModuleMap(m, n, F, check=False),
                         ModuleMap(n, m, G, check=False))

    for F in h_fwd:
        res = try_mat(F)
        if res:
            return res
    acc = f.zeros((m.dim, n.dim))
    for F in h_fwd:
        acc = f.mat_add(acc, F)
    res = try_mat(acc)
    if res:
        return res
    rng = np.random.default_rng(seed)
    for _ in range(budget):
        res = try_mat(_random_combo(f, h_fwd, rng))
        if res:
            return res
    return IsoResult("inconclusive")
