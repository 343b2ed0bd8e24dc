"""Finite-dimensional right modules and the homological tool chest.

A module over a based algebra is one square action matrix per algebra basis
element, acting on row vectors: x * b = x @ act[b]. With this convention
act(b1 * b2) = act(b1) @ act(b2), which the constructor verifies against
the structure constants (on a generating set; that implies the rest).

Graded modules carry one integer degree per basis vector; degree-preserving
arithmetic runs blockwise over degrees, so graded kernels, row spaces and
covers stay homogeneous.
"""

import os

import numpy as np

from .linalg import (Matrix, complement_within, express_in_rows, invert,
                     left_kernel, rank, row_space_basis, rref, solve_right)

VALIDATE_ALL = os.environ.get("FROBMON_VALIDATE", "") == "1"


class ModuleError(ValueError):
    pass


class AlgebraMismatchError(ModuleError):
    pass


class ZeroModuleError(ModuleError):
    pass


class Module:
    """Right module given by action matrices; immutable."""

    __slots__ = ("algebra", "dim", "act", "degrees")

    def __init__(self, algebra, act, degrees=None, validate=True):
        self.algebra = algebra
        act = algebra.field.normalize(np.asarray(act, dtype=algebra.field.dtype))
        if act.ndim != 3 or act.shape[0] != algebra.dim or act.shape[1] != act.shape[2]:
            raise ModuleError(f"action has shape {act.shape}")
        self.act = act
        self.act.setflags(write=False)
        self.dim = act.shape[1]
        self.degrees = None if degrees is None else tuple(int(d) for d in degrees)
        if self.degrees is not None and len(self.degrees) != self.dim:
            raise ModuleError("degrees length != dim")
        if validate or VALIDATE_ALL:
            self._validate()

    @property
    def is_graded(self):
        return self.degrees is not None

    @property
    def field(self):
        return self.algebra.field

    def _validate(self):
        alg = self.algebra
        f = alg.field
        d = self.dim
        ident = f.eye(d)
        usum = f.zeros((d, d))
        for e in alg.idempotents:
            usum = f.mat_add(usum, self.act[e])
        if not _arr_eq(f, usum, ident):
            raise ModuleError("unit does not act as the identity")
        for g in alg.generator_indices():
            for b in range(alg.dim):
                lhs = f.mat_mul(self.act[g], self.act[b])
                rhs = f.zeros((d, d))
                prod = alg.mult[g, b]
                for k in range(alg.dim):
                    if prod[k] != 0:
                        rhs = f.mat_add(rhs, f.scal_mul(prod[k], self.act[k]))
                if not _arr_eq(f, lhs, rhs):
                    raise ModuleError(
                        f"action incompatible with structure constants at "
                        f"{alg.basis[g]} * {alg.basis[b]}")
        if self.degrees is not None:
            if alg.degrees is None:
                raise ModuleError("graded module over ungraded algebra")
            for b in range(alg.dim):
                db = alg.degrees[b]
                for i in range(d):
                    for j in range(d):
                        if self.act[b][i, j] != 0 and \
                                self.degrees[j] != self.degrees[i] + db:
                            raise ModuleError(
                                f"action of {alg.basis[b]} violates the grading")

    def __repr__(self):
        g = f", degrees={list(self.degrees)}" if self.is_graded else ""
        return f"Module(dim={self.dim} over {self.algebra!r}{g})"


class ModuleMap:
    """A-linear map f(x) = x @ arr between right modules."""

    __slots__ = ("source", "target", "arr")

    def __init__(self, source, target, arr, check=True):
        self.source = source
        self.target = target
        f = source.field
        arr = f.normalize(np.asarray(arr, dtype=f.dtype))
        if arr.shape != (source.dim, target.dim):
            raise ModuleError(f"map shape {arr.shape} != ({source.dim},{target.dim})")
        self.arr = arr
        self.arr.setflags(write=False)
        if check or VALIDATE_ALL:
            self.check_intertwining()

    @property
    def matrix(self):
        return Matrix(self.source.field, self.arr)

    def check_intertwining(self):
        if self.source.algebra is not self.target.algebra and \
                self.source.algebra != self.target.algebra:
            raise AlgebraMismatchError("map between modules over different algebras")
        f = self.source.field
        for g in self.source.algebra.generator_indices():
            lhs = f.mat_mul(self.source.act[g], self.arr)
            rhs = f.mat_mul(self.arr, self.target.act[g])
            if not _arr_eq(f, lhs, rhs):
                raise ModuleError("matrix does not intertwine the actions")
        if self.source.is_graded and self.target.is_graded:
            for i in range(self.source.dim):
                for j in range(self.target.dim):
                    if self.arr[i, j] != 0 and \
                            self.source.degrees[i] != self.target.degrees[j]:
                        raise ModuleError("matrix does not preserve degrees")

    def then(self, other):
        if self.target is not other.source and self.target.dim != other.source.dim:
            raise ModuleError("composition mismatch")
        f = self.source.field
        return ModuleMap(self.source, other.target,
                         f.mat_mul(self.arr, other.arr), check=False)

    def is_zero(self):
        return not _arr_nonzero(self.source.field, self.arr)

    def is_injective(self):
        return rank(self.source.field, self.arr) == self.source.dim

    def is_surjective(self):
        return rank(self.source.field, self.arr) == self.target.dim

    def __repr__(self):
        return f"ModuleMap({self.source.dim}->{self.target.dim})"


def _arr_eq(field, a, b):
    if field.is_prime_field:
        return bool(((a - b) % field.q == 0).all())
    return all(x == y for x, y in zip(np.asarray(a, dtype=object).reshape(-1),
                                      np.asarray(b, dtype=object).reshape(-1)))


def _arr_nonzero(field, a):
    if field.is_prime_field:
        return bool(a.any())
    return any(x != 0 for x in np.asarray(a, dtype=object).reshape(-1))


# ---------------------------------------------------------------------------
# Graded helpers
# ---------------------------------------------------------------------------


def homogeneous_components(field, vec, degrees):
    """Split a vector into its homogeneous pieces; list of (degree, vector)."""
    out = {}
    for j, x in enumerate(vec):
        if x != 0:
            comp = out.setdefault(degrees[j], field.zeros(len(vec)))
            comp[j] = x
    return sorted(out.items())


def graded_row_space(field, rows, row_degs):
    """RREF basis of a span of homogeneous rows, kept homogeneous.

    Returns (basis_rows, basis_degs), degrees ascending.
    """
    by_deg = {}
    for r, d in zip(rows, row_degs):
        by_deg.setdefault(d, []).append(r)
    out_rows, out_degs = [], []
    for d in sorted(by_deg):
        basis = row_space_basis(field, np.stack(by_deg[d]))
        for i in range(basis.shape[0]):
            out_rows.append(basis[i])
            out_degs.append(d)
    if not out_rows:
        return field.zeros((0, rows.shape[1] if hasattr(rows, "shape") else 0)), []
    return np.stack(out_rows), out_degs


def graded_left_kernel(field, arr, row_degs, col_degs):
    """Homogeneous basis of {x : x @ arr = 0} for a degree-preserving arr.

    Returns (rows, degs). Row i of arr has degree row_degs[i]; the kernel
    splits over degrees because arr is block diagonal over them.
    """
    nrows = arr.shape[0]
    out_rows, out_degs = [], []
    for d in sorted(set(row_degs)):
        ridx = [i for i in range(nrows) if row_degs[i] == d]
        cidx = [j for j in range(arr.shape[1]) if col_degs[j] == d]
        block = arr[np.ix_(ridx, cidx)] if cidx else arr[ridx][:, :0]
        if cidx:
            kern = left_kernel(field, block)
        else:
            kern = field.eye(len(ridx))
        for r in range(kern.shape[0]):
            full = field.zeros(nrows)
            for k, i in enumerate(ridx):
                full[i] = kern[r, k]
            out_rows.append(full)
            out_degs.append(d)
    if not out_rows:
        return field.zeros((0, nrows)), []
    return np.stack(out_rows), out_degs


# ---------------------------------------------------------------------------
# Standard modules
# ---------------------------------------------------------------------------


def zero_module(algebra, graded=False):
    act = algebra.field.zeros((algebra.dim, 0, 0))
    return Module(algebra, act, degrees=() if graded else None, validate=False)


def regular_module(algebra, graded=False):
    degrees = algebra.degrees if graded else None
    if graded and algebra.degrees is None:
        raise ModuleError("algebra carries no grading")
    return Module(algebra, algebra.regular_action(), degrees=degrees,
                  validate=False)


def projective_module(algebra, slot, graded=False, shift_deg=0):
    """The indecomposable projective e_v A, optionally regraded so the
    generator sits in degree shift_deg."""
    idx = [i for i in range(algebra.dim) if algebra.src[i] == slot]
    reg = algebra.regular_action()
    act = reg[np.ix_(range(algebra.dim), idx, idx)]
    degrees = None
    if graded:
        if algebra.degrees is None:
            raise ModuleError("algebra carries no grading")
        degrees = [algebra.degrees[i] + shift_deg for i in idx]
    return Module(algebra, act, degrees=degrees, validate=False)


def simple_module(algebra, slot, graded=False, degree=0):
    f = algebra.field
    act = f.zeros((algebra.dim, 1, 1))
    act[algebra.idempotents[slot], 0, 0] = f.coerce(1)
    return Module(algebra, act, degrees=(degree,) if graded else None,
                  validate=False)


def direct_sum(mods):
    """Direct sum plus the canonical inclusions and projections."""
    if not mods:
        raise ModuleError("empty direct sum needs an algebra; use zero_module")
    alg = mods[0].algebra
    f = alg.field
    graded = mods[0].is_graded
    for m in mods[1:]:
        if m.algebra is not alg and m.algebra != alg:
            raise AlgebraMismatchError("direct sum over mixed algebras")
        if m.is_graded != graded:
            raise ModuleError("direct sum mixes graded and ungraded")
    dims = [m.dim for m in mods]
    total = sum(dims)
    act = f.zeros((alg.dim, total, total))
    off = 0
    for m in mods:
        act[:, off:off + m.dim, off:off + m.dim] = m.act
        off += m.dim
    degrees = None
    if graded:
        degrees = tuple(d for m in mods for d in m.degrees)
    out = Module(alg, act, degrees=degrees, validate=False)
    incls, projs = [], []
    off = 0
    for m in mods:
        inc = f.zeros((m.dim, total))
        prj = f.zeros((total, m.dim))
        for i in range(m.dim):
            inc[i, off + i] = f.coerce(1)
            prj[off + i, i] = f.coerce(1)
        incls.append(ModuleMap(m, out, inc, check=False))
        projs.append(ModuleMap(out, m, prj, check=False))
        off += m.dim
    return out, incls, projs


# ---------------------------------------------------------------------------
# Sub and quotient modules
# ---------------------------------------------------------------------------


def submodule(module, gen_rows):
    """Submodule generated by the given row vectors.

    Returns (sub, inclusion). For a graded module the generators are split
    into homogeneous components first, so the result is a graded submodule
    with a homogeneous basis.
    """
    alg = module.algebra
    f = alg.field
    gen_rows = f.normalize(np.asarray(gen_rows, dtype=f.dtype).reshape(-1, module.dim))
    spans = []
    for r in range(gen_rows.shape[0]):
        if module.is_graded:
            for _, comp in homogeneous_components(f, gen_rows[r], module.degrees):
                spans.append(comp)
        else:
            spans.append(gen_rows[r])
    if not spans:
        sub = zero_module(alg, module.is_graded)
        return sub, ModuleMap(sub, module, f.zeros((0, module.dim)), check=False)
    gens = np.stack(spans)
    # the A-span of the generators is the span of gen * b over all basis b
    closure = [f.mat_mul(gens, module.act[b]) for b in range(alg.dim)]
    closure = np.concatenate(closure, axis=0)
    if module.is_graded:
        row_degs = []
        for b in range(alg.dim):
            for r in range(gens.shape[0]):
                nz = [module.degrees[j] for j in range(module.dim)
                      if closure[b * gens.shape[0] + r, j] != 0]
                row_degs.append(nz[0] if nz else 0)
        keep = [i for i in range(closure.shape[0])
                if _arr_nonzero(f, closure[i:i + 1])]
        if not keep:
            sub = zero_module(alg, True)
            return sub, ModuleMap(sub, module, f.zeros((0, module.dim)), check=False)
        basis, degs = graded_row_space(f, closure[keep], [row_degs[i] for i in keep])
    else:
        basis = row_space_basis(f, closure)
        degs = None
        if basis.shape[0] == 0:
            sub = zero_module(alg, False)
            return sub, ModuleMap(sub, module, f.zeros((0, module.dim)), check=False)
    k = basis.shape[0]
    act = f.zeros((alg.dim, k, k))
    bt = np.ascontiguousarray(basis.T)
    for b in range(alg.dim):
        img = f.mat_mul(basis, module.act[b])
        sol = solve_right(f, bt, np.ascontiguousarray(img.T))
        if sol is None:
            raise ModuleError("submodule closure failed (not a submodule?)")
        act[b] = sol.T
    sub = Module(alg, act, degrees=degs, validate=False)
    return sub, ModuleMap(sub, module, basis, check=False)


def quotient(module, sub_rows, sub_degs=None):
    """Quotient by the submodule spanned by sub_rows (must be action-closed).

    Returns (quot, projection). Graded quotients pick unit coordinate
    vectors as homogeneous representatives.
    """
    alg = module.algebra
    f = alg.field
    d = module.dim
    if sub_rows.shape[0] == 0:
        ident = f.eye(d)
        return module, ModuleMap(module, module, ident, check=False)
    if module.is_graded:
        sub_basis, _ = graded_row_space(
            f, sub_rows, sub_degs if sub_degs is not None else
            [next(dg for dg, _ in homogeneous_components(f, sub_rows[i], module.degrees))
             for i in range(sub_rows.shape[0])])
    else:
        sub_basis = row_space_basis(f, sub_rows)
    r = sub_basis.shape[0]
    picked = complement_within(f, sub_basis, f.eye(d))
    m = len(picked)
    if r + m != d:
        raise ModuleError("complement size mismatch")
    comp = f.zeros((m, d))
    for i, j in enumerate(picked):
        comp[i, j] = f.coerce(1)
    full = np.concatenate([sub_basis, comp], axis=0)
    inv = invert(f, full)
    if inv is None:
        raise ModuleError("sub + complement is singular")
    proj = inv[:, r:]
    act = f.zeros((alg.dim, m, m))
    for b in range(alg.dim):
        act[b] = f.mat_mul(f.mat_mul(comp, module.act[b]), proj)
    degrees = tuple(module.degrees[j] for j in picked) if module.is_graded else None
    quot = Module(alg, act, degrees=degrees, validate=False)
    return quot, ModuleMap(module, quot, proj, check=False)


# ---------------------------------------------------------------------------
# Hom spaces
# ---------------------------------------------------------------------------


def hom_basis(m, n, degree_zero=False):
    """Basis of Hom_A(m, n) as raw (dim m, dim n) arrays, deterministic.

    With degree_zero=True only degree-preserving maps are computed (both
    modules must be graded); unknown matrix entries at degree-mismatched
    positions are dropped from the linear system rather than solved for.
    """
    if m.algebra is not n.algebra and m.algebra != n.algebra:
        raise AlgebraMismatchError("hom between modules over different algebras")
    f = m.field
    dm, dn = m.dim, n.dim
    if dm == 0 or dn == 0:
        return []
    # unknowns F[i, j], flattened row-major; the intertwining condition for
    # one generator is (kron(A, I) - kron(I, B^T)) @ vec(F) = 0
    allowed = None
    if degree_zero:
        if not (m.is_graded and n.is_graded):
            raise ModuleError("degree-zero homs need graded modules")
        allowed = [i * dn + j for i in range(dm) for j in range(dn)
                   if m.degrees[i] == n.degrees[j]]
        if not allowed:
            return []
    eye_m, eye_n = f.eye(dm), f.eye(dn)
    blocks = []
    for g in m.algebra.generator_indices():
        A, B = m.act[g], n.act[g]
        E = f.mat_sub(np.kron(A, eye_n), np.kron(eye_m, np.ascontiguousarray(B.T)))
        blocks.append(E)
    system = np.concatenate(blocks, axis=0)
    if allowed is not None:
        system = np.ascontiguousarray(system[:, allowed])
    from .linalg import right_kernel
    kern = right_kernel(f, system)
    out = []
    for r in range(kern.shape[0]):
        if allowed is None:
            F = kern[r].reshape(dm, dn).copy()
        else:
            F = f.zeros((dm, dn))
            for c, pos in enumerate(allowed):
                F[pos // dn, pos % dn] = kern[r, c]
        out.append(F)
    return out


def hom_space(m, n, degree_zero=False):
    """Hom basis as ModuleMaps."""
    return [ModuleMap(m, n, F, check=False) for F in hom_basis(m, n, degree_zero)]


def hom_dim(m, n, degree_zero=False):
    return len(hom_basis(m, n, degree_zero))


# ---------------------------------------------------------------------------
# Covers, envelopes, syzygies
# ---------------------------------------------------------------------------


def radical_rows(module):
    """Rows spanning M * rad(A), with degrees when graded."""
    alg = module.algebra
    f = module.field
    rows = []
    degs = []
    for b in alg.radical_indices():
        a = module.act[b]
        for i in range(module.dim):
            if _arr_nonzero(f, a[i:i + 1]):
                rows.append(a[i])
                if module.is_graded:
                    degs.append(module.degrees[i] + alg.degrees[b])
    if not rows:
        return f.zeros((0, module.dim)), []
    return np.stack(rows), degs


def projective_cover(module):
    """Minimal projective cover (P, epi), graded when the module is.

    P is assembled from shifted e_v A summands matching a homogeneous basis
    of the top M / M rad, so ker(epi) lies inside P rad.
    """
    if module.dim == 0:
        raise ZeroModuleError("zero module has no projective cover here")
    alg = module.algebra
    f = module.field
    rad, rad_degs = radical_rows(module)
    top, pi = quotient(module, rad, rad_degs if module.is_graded else None)
    # lift a homogeneous basis of each top * e_v
    summands = []   # (slot, shift_deg, lift row in M coordinates)
    for slot in range(len(alg.idempotents)):
        e = alg.idempotents[slot]
        img = top.act[e]
        rows = [img[i] for i in range(top.dim) if _arr_nonzero(f, img[i:i + 1])]
        if not rows:
            continue
        if module.is_graded:
            basis, degs = graded_row_space(f, np.stack(rows),
                                           [top.degrees[i] for i in range(top.dim)
                                            if _arr_nonzero(f, img[i:i + 1])])
        else:
            basis = row_space_basis(f, np.stack(rows))
            degs = [0] * basis.shape[0]
        # lift through pi, then project into M e_slot
        lift_t = solve_right(f, np.ascontiguousarray(pi.arr.T),
                             np.ascontiguousarray(basis.T))
        if lift_t is None:
            raise ModuleError("top basis failed to lift")
        lifts = f.mat_mul(lift_t.T, module.act[e])
        for i in range(basis.shape[0]):
            summands.append((slot, degs[i], lifts[i]))
    mods = [projective_module(alg, slot, graded=module.is_graded, shift_deg=dg)
            for slot, dg, _ in summands]
    if not mods:
        raise ModuleError("module with empty top")
    P, _, _ = direct_sum(mods)
    blocks = []
    for slot, _, u in summands:
        idx = [i for i in range(alg.dim) if alg.src[i] == slot]
        rows = [f.mat_mul(u.reshape(1, -1), module.act[p])[0] for p in idx]
        blocks.append(np.stack(rows))
    epi_arr = np.concatenate(blocks, axis=0)
    epi = ModuleMap(P, module, epi_arr, check=False)
    if rank(f, epi_arr) != module.dim:
        raise ModuleError("cover map is not surjective")
    return P, epi


def dual_module(module):
    """Vector-space dual over the opposite algebra; degrees are negated."""
    op = module.algebra.opposite()
    act = np.ascontiguousarray(module.act.transpose(0, 2, 1))
    degrees = None
    if module.is_graded:
        degrees = tuple(-d for d in module.degrees)
    return Module(op, act, degrees=degrees, validate=False)


def dual_map(fmap):
    """D is contravariant: dual_map(f: M -> N): D(N) -> D(M), matrix f^T."""
    return ModuleMap(dual_module(fmap.target), dual_module(fmap.source),
                     np.ascontiguousarray(fmap.arr.T), check=False)


def injective_envelope(module):
    """(E, mono) with E = D(projective cover of D(M)) and mono the dual epi."""
    if module.dim == 0:
        raise ZeroModuleError("zero module has no injective envelope here")
    dm = dual_module(module)
    P, epi = projective_cover(dm)
    E = dual_module(P)
    mono = ModuleMap(module, E, np.ascontiguousarray(epi.arr.T), check=False)
    if not mono.is_injective():
        raise ModuleError("envelope map is not injective")
    return E, mono


def kernel_submodule(fmap):
    """Kernel of a module map as (sub, inclusion into source)."""
    f = fmap.source.field
    if fmap.source.is_graded and fmap.target.is_graded:
        rows, degs = graded_left_kernel(f, fmap.arr, list(fmap.source.degrees),
                                        list(fmap.target.degrees))
    else:
        rows = left_kernel(f, fmap.arr)
    if rows.shape[0] == 0:
        sub = zero_module(fmap.source.algebra, fmap.source.is_graded)
        return sub, ModuleMap(sub, fmap.source,
                              f.zeros((0, fmap.source.dim)), check=False)
    return submodule(fmap.source, rows)


def image_rows(fmap):
    return fmap.arr


def syzygy(module):
    """Kernel of the projective cover epi, with its induced structure."""
    if module.dim == 0:
        raise ZeroModuleError("zero module has no syzygy here")
    P, epi = projective_cover(module)
    sub, _ = kernel_submodule(epi)
    return sub


def cosyzygy(module):
    """Cokernel of the injective envelope mono."""
    if module.dim == 0:
        raise ZeroModuleError("zero module has no cosyzygy here")
    E, mono = injective_envelope(module)
    quot, _ = quotient(E, mono.arr,
                       list(module.degrees) if module.is_graded else None)
    return quot


def is_projective_module(module):
    """Minimal-cover criterion: projective iff the cover epi is bijective."""
    if module.dim == 0:
        return True
    P, epi = projective_cover(module)
    return P.dim == module.dim


def is_injective_module(module):
    if module.dim == 0:
        return True
    return is_projective_module(dual_module(module))


def projective_dimension(m, cap=12):
    """Number of syzygy steps until a projective appears; None past cap."""
    x = m
    for i in range(cap + 1):
        if x.dim == 0 or is_projective_module(x):
            return i
        x = syzygy(x)
    return None


def ext_dim(i, m, n):
    """dim Ext^i_A(m, n) for i >= 1 via iterated minimal syzygies."""
    if i < 1:
        raise ModuleError("ext_dim needs i >= 1")
    x = m
    for _ in range(i - 1):
        if x.dim == 0:
            return 0
        x = syzygy(x)
    if x.dim == 0:
        return 0
    P, epi = projective_cover(x)
    omega, incl = kernel_submodule(epi)
    if omega.dim == 0:
        return 0
    h_omega = hom_basis(omega, n)
    if not h_omega:
        return 0
    f = m.field
    h_p = hom_basis(P, n)
    restricted = [f.mat_mul(incl.arr, H) for H in h_p]
    if not restricted:
        return len(h_omega)
    stack = np.stack([r.reshape(-1) for r in restricted])
    return len(h_omega) - rank(f, stack)


# ---------------------------------------------------------------------------
# Stable Hom
# ---------------------------------------------------------------------------


class StableHomSpace:
    """Hom(m, n), the subspace factoring through projectives, and chosen
    representatives of a basis of the quotient."""

    __slots__ = ("source", "target", "hom", "proj_rows", "reps", "_coord_rows")

    def __init__(self, source, target, hom, proj_rows, reps):
        self.source = source
        self.target = target
        self.hom = hom
        self.proj_rows = proj_rows
        self.reps = reps
        self._coord_rows = None

    @property
    def dim(self):
        return len(self.reps)

    def class_coords(self, arr):
        """Coefficients of a map's stable class over the chosen reps."""
        f = self.source.field
        if self.dim == 0:
            return f.zeros(0)
        if self._coord_rows is None:
            rep_rows = np.stack([r.reshape(-1) for r in self.reps])
            if self.proj_rows.shape[0]:
                self._coord_rows = np.concatenate([self.proj_rows, rep_rows], axis=0)
            else:
                self._coord_rows = rep_rows
        coeffs = express_in_rows(f, self._coord_rows, arr.reshape(-1))
        if coeffs is None:
            raise ModuleError("map outside the computed Hom space")
        return coeffs[self.proj_rows.shape[0]:]


def projective_factor_rows(m, n, degree_zero=False):
    """Row span of maps m -> n that factor through a projective.

    A map factors through some projective iff it lifts along the cover
    epi P(n) ->> n, so the span is Hom(m, P(n)) composed with the epi.
    """
    f = m.field
    if n.dim == 0 or m.dim == 0:
        return f.zeros((0, m.dim * n.dim))
    P, epi = projective_cover(n)
    lifts = hom_basis(m, P, degree_zero=degree_zero)
    if not lifts:
        return f.zeros((0, m.dim * n.dim))
    rows = np.stack([f.mat_mul(H, epi.arr).reshape(-1) for H in lifts])
    return row_space_basis(f, rows)


def stable_hom(m, n, degree_zero=False):
    """Hom(m, n) modulo maps factoring through projectives."""
    hom = hom_basis(m, n, degree_zero=degree_zero)
    f = m.field
    proj = projective_factor_rows(m, n, degree_zero=degree_zero)
    if not hom:
        return StableHomSpace(m, n, [], proj, [])
    flat = np.stack([H.reshape(-1) for H in hom])
    chosen = complement_within(f, proj, flat)
    reps = [hom[i] for i in chosen]
    return StableHomSpace(m, n, hom, proj, reps)


def stable_hom_dim(m, n, degree_zero=False):
    return stable_hom(m, n, degree_zero=degree_zero).dim
