"""Seeded random modules and exhaustive module enumeration.

Seed fan-out: a single master seed is split into independent per-task
seeds by splitmix64 applied to (master XOR fnv1a64(task label)), so suites
can run tasks concurrently and still replay bit-for-bit.
"""

import numpy as np

from .algebras import PresentationRequiredError
from .decompose import iso_test
from .modules import (Module, direct_sum, hom_dim, projective_module,
                      quotient, radical_rows, submodule, zero_module)
from .mon import MonObject, mon_make

MASK64 = (1 << 64) - 1


def splitmix64(state):
    """One splitmix64 step: returns (output, next_state)."""
    state = (state + 0x9E3779B97F4A7C15) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return (z ^ (z >> 31)) & MASK64, state


def fnv1a64(text):
    h = 0xCBF29CE484222325
    for byte in text.encode("utf-8"):
        h = ((h ^ byte) * 0x100000001B3) & MASK64
    return h


def derive_seed(master, label):
    """Per-task seed: splitmix64 output of (master XOR fnv1a64(label))."""
    out, _ = splitmix64((int(master) ^ fnv1a64(label)) & MASK64)
    return out


def rng_for(master, label):
    return np.random.default_rng(derive_seed(master, label))


# ---------------------------------------------------------------------------
# Random modules
# ---------------------------------------------------------------------------


def _random_coeffs(field, rng, k):
    if field.is_prime_field:
        return [int(c) for c in rng.integers(0, field.q, size=k)]
    return [int(c) for c in rng.integers(-2, 3, size=k)]


def random_projective(algebra, rng, graded=False, max_summands=3,
                      shift_range=(0, 0)):
    k = int(rng.integers(1, max_summands + 1))
    nv = len(algebra.idempotents)
    mods = []
    for _ in range(k):
        slot = int(rng.integers(0, nv))
        sh = int(rng.integers(shift_range[0], shift_range[1] + 1)) if graded else 0
        mods.append(projective_module(algebra, slot, graded=graded, shift_deg=sh))
    return direct_sum(mods)[0]


def _random_radical_element(module, rng):
    """A random element of M rad(A), homogeneous when M is graded."""
    f = module.field
    rows, degs = radical_rows(module)
    if rows.shape[0] == 0:
        return None
    if module.is_graded:
        d = degs[int(rng.integers(0, len(degs)))]
        idx = [i for i, dd in enumerate(degs) if dd == d]
    else:
        idx = list(range(rows.shape[0]))
    coeffs = _random_coeffs(f, rng, len(idx))
    out = f.zeros(module.dim)
    for c, i in zip(coeffs, idx):
        if c:
            out = f.mat_add(out.reshape(1, -1),
                            f.scal_mul(f.coerce(c), rows[i]).reshape(1, -1))[0]
    return out if _nonzero_vec(f, out) else None


def _nonzero_vec(f, v):
    if f.is_prime_field:
        return bool(v.any())
    return any(x != 0 for x in v)


def random_module(algebra, rng, graded=False, shift_range=(0, 0), style=None):
    """Random quotient or submodule of a random projective; never zero."""
    P = random_projective(algebra, rng, graded=graded, shift_range=shift_range)
    if style is None:
        style = "quotient" if rng.integers(0, 2) else "submodule"
    gens = []
    for _ in range(int(rng.integers(1, 4))):
        g = _random_radical_element(P, rng)
        if g is not None:
            gens.append(g)
    if not gens:
        return P
    sub, incl = submodule(P, np.stack(gens))
    if style == "submodule":
        return sub if sub.dim else P
    quot, _ = quotient(P, incl.arr,
                       list(sub.degrees) if P.is_graded else None)
    return quot if quot.dim else P


def random_module_of_dim(algebra, rng, dim, graded=False, attempts=500):
    for _ in range(attempts):
        m = random_module(algebra, rng, graded=graded)
        if m.dim == dim:
            return m
    raise RuntimeError(f"no random module of dim {dim} in {attempts} attempts")


def random_mon_object(algebra, rng, graded=False, shift_range=(0, 0)):
    """Random submodule inclusion S into N; S may be zero (an i1 shape)."""
    N = random_module(algebra, rng, graded=graded, shift_range=shift_range)
    k = int(rng.integers(0, 3))
    gens = []
    for _ in range(k):
        f = N.field
        if N.is_graded:
            degs = sorted(set(N.degrees))
            d = degs[int(rng.integers(0, len(degs)))]
            idx = [i for i, dd in enumerate(N.degrees) if dd == d]
        else:
            idx = list(range(N.dim))
        coeffs = _random_coeffs(f, rng, len(idx))
        v = f.zeros(N.dim)
        for c, i in zip(coeffs, idx):
            if c:
                v[i] = f.coerce(c)
        if _nonzero_vec(f, v):
            gens.append(v)
    if gens:
        S, incl = submodule(N, np.stack(gens))
    else:
        S, incl = submodule(N, N.field.zeros((0, N.dim)))
    return mon_make(incl)


# ---------------------------------------------------------------------------
# Exhaustive enumeration
# ---------------------------------------------------------------------------


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def enumerate_modules(algebra, max_dim, up_to_iso=True, iso_budget=2**12,
                      seed=0, chunk=1 << 13):
    """All modules of dimension 1..max_dim over a presented algebra over a
    prime field, optionally deduplicated up to isomorphism.

    Modules are parametrized by a dimension vector (one block per vertex)
    plus one matrix per arrow; assignments violating a relation are
    filtered out in batches.
    """
    if not algebra.is_presented:
        raise PresentationRequiredError("enumeration needs a quiver presentation")
    f = algebra.field
    if not f.is_prime_field:
        raise ValueError("enumeration is prime-field only")
    q = f.q
    slots = {v: i for i, v in enumerate(algebra.quiver.vertices)}
    arrows = list(algebra.quiver.arrows)
    out = []
    for total in range(1, max_dim + 1):
        for dv in _compositions(total, len(slots)):
            cells = []
            for (lbl, s, t) in arrows:
                cells.append((lbl, dv[slots[s]], dv[slots[t]]))
            ncells = sum(ds * dt for _, ds, dt in cells)
            if q ** ncells > 1 << 26:
                raise ValueError(
                    f"enumeration space q^{ncells} too large at dims {dv}")
            totaln = q ** ncells
            for start in range(0, totaln, chunk):
                count = min(chunk, totaln - start)
                digits = _mixed_radix(np.arange(start, start + count), q, ncells)
                mats = {}
                off = 0
                for lbl, ds, dt in cells:
                    mats[lbl] = digits[:, off:off + ds * dt].reshape(count, ds, dt)
                    off += ds * dt
                mask = np.ones(count, dtype=bool)
                for rel in algebra.relations or ():
                    acc = None
                    for coeff, path in rel:
                        term = _batch_path_product(f, mats, path, cells, count)
                        term = (int(f.coerce(coeff)) * term) % q
                        acc = term if acc is None else (acc + term) % q
                    if acc is not None and acc.size:
                        mask &= ~acc.reshape(count, -1).any(axis=1)
                for i in np.nonzero(mask)[0]:
                    out.append(_assemble_module(algebra, dv, slots,
                                                {l: mats[l][i] for l in mats}))
    if not up_to_iso:
        return out
    return _dedupe_iso(out, iso_budget, seed)


def _mixed_radix(indices, q, ncells):
    digits = np.zeros((indices.size, ncells), dtype=np.int64)
    rem = indices.copy()
    for pos in range(ncells):
        digits[:, pos] = rem % q
        rem //= q
    return digits


def _batch_path_product(f, mats, path, cells, count):
    dims = {lbl: (ds, dt) for lbl, ds, dt in cells}
    first = path[0]
    acc = mats[first]
    for lbl in path[1:]:
        nxt = mats[lbl]
        if acc.shape[2] == 0 or nxt.shape[2] == 0:
            acc = np.zeros((count, acc.shape[1], nxt.shape[2]), dtype=np.int64)
        else:
            acc = np.matmul(acc, nxt) % f.q
    return acc


def _assemble_module(algebra, dv, slots, arrow_mats):
    f = algebra.field
    d = sum(dv)
    offs = {}
    pos = 0
    for v, i in sorted(slots.items(), key=lambda kv: kv[1]):
        offs[i] = pos
        pos += dv[i]
    act = f.zeros((algebra.dim, d, d))
    meta = algebra.basis_meta
    for b, (kind, data) in enumerate(meta):
        if kind == "e":
            sl = slots[data]
            for j in range(dv[sl]):
                act[b, offs[sl] + j, offs[sl] + j] = 1
            continue
        src_v, tgt_v = algebra.quiver.path_ends(data)
        ssl, tsl = slots[src_v], slots[tgt_v]
        block = None
        for lbl in data:
            mat = arrow_mats[lbl]
            block = mat if block is None else (block @ mat) % f.q
        if block is not None and block.size:
            act[b, offs[ssl]:offs[ssl] + dv[ssl],
                offs[tsl]:offs[tsl] + dv[tsl]] = block
    return Module(algebra, act, validate=False)


def _fingerprint(m):
    f = m.field
    from .linalg import rank
    ranks = tuple(rank(f, m.act[b]) for b in range(m.algebra.dim))
    return (m.dim, ranks, hom_dim(m, m))


def _dedupe_iso(mods, iso_budget, seed):
    buckets = {}
    for m in mods:
        buckets.setdefault(_fingerprint(m), []).append(m)
    reps = []
    for key in sorted(buckets, key=repr):
        group = buckets[key]
        kept = []
        for m in group:
            if not any(iso_test(m, r, budget=iso_budget, seed=seed).verdict == "yes"
                       for r in kept):
                kept.append(m)
        reps.extend(kept)
    return reps
