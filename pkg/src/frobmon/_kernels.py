"""Hot numeric kernels: row reduction mod q and idempotent search.

Both kernels ship in two implementations: a numba @njit version and a pure
numpy fallback. Selection is driven by the FROBMON_BACKEND environment
variable ("numba" or "numpy", default "numba"); the fallback also kicks in
automatically when numba is unavailable. Both backends implement the same
deterministic leftmost-pivot reduced echelon rule and agree bit for bit.
"""

import os

import numpy as np

_BACKEND = os.environ.get("FROBMON_BACKEND", "numba").strip().lower()
if _BACKEND not in ("numba", "numpy"):
    raise RuntimeError(f"FROBMON_BACKEND must be 'numba' or 'numpy', got {_BACKEND!r}")

if _BACKEND == "numba":
    try:
        from numba import njit
    except ImportError:  # pragma: no cover
        _BACKEND = "numpy"


def backend_name():
    return _BACKEND


# ---------------------------------------------------------------------------
# Reduced row echelon form mod q.
#
# Contract (both backends): works in place on an int64 C-contiguous array with
# entries already reduced mod q; scans columns left to right, picks the
# topmost nonzero entry at or below the current row as pivot, swaps it up,
# scales it to 1 and clears the whole column. Returns (rank, pivot_columns).
# ---------------------------------------------------------------------------


def _rref_mod_numpy(a, q, inv):
    rows, cols = a.shape
    piv = np.full(min(rows, cols), -1, dtype=np.int64)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + nz[0]
        if p != r:
            a[[r, p], :] = a[[p, r], :]
        s = inv[a[r, c]]
        if s != 1:
            a[r, :] = (a[r, :] * s) % q
        col = a[:, c].copy()
        col[r] = 0
        mask = col != 0
        if mask.any():
            a[mask, :] = (a[mask, :] - np.outer(col[mask], a[r, :])) % q
        piv[r] = c
        r += 1
    return r, piv


if _BACKEND == "numba":

    @njit(cache=True, nogil=True)
    def _rref_mod_numba(a, q, inv):  # pragma: no cover - exercised via wrapper
        rows, cols = a.shape
        piv = np.full(min(rows, cols), -1, dtype=np.int64)
        r = 0
        for c in range(cols):
            if r == rows:
                break
            p = -1
            for i in range(r, rows):
                if a[i, c] != 0:
                    p = i
                    break
            if p < 0:
                continue
            if p != r:
                for j in range(cols):
                    t = a[r, j]
                    a[r, j] = a[p, j]
                    a[p, j] = t
            s = inv[a[r, c]]
            if s != 1:
                for j in range(c, cols):
                    a[r, j] = (a[r, j] * s) % q
            for i in range(rows):
                if i != r and a[i, c] != 0:
                    f = a[i, c]
                    for j in range(c, cols):
                        a[i, j] = (a[i, j] - f * a[r, j]) % q
            piv[r] = c
            r += 1
        return r, piv


def rref_mod(a, q, inv):
    """In-place RREF of int64 array `a` mod prime q. Returns (rank, pivots)."""
    if _BACKEND == "numba":
        return _rref_mod_numba(a, q, inv)
    return _rref_mod_numpy(a, q, inv)


# ---------------------------------------------------------------------------
# Exhaustive idempotent search.
#
# Enumerates nonzero coefficient vectors c in [0,q)^e in odometer order over
# a basis of e square matrices, maintaining E = sum c_i B_i incrementally
# (every odometer digit change is a +1 mod q, i.e. one matrix addition), and
# returns the first c whose E satisfies E@E = E with E not in {0, identity}.
# Enumeration stops after `limit` candidates.
# ---------------------------------------------------------------------------


def _is_idem_candidate(E, q):
    if not E.any():
        return False
    d = E.shape[0]
    if ((E @ E) % q != E).any():
        return False
    eye = np.eye(d, dtype=np.int64)
    if (E == eye).all():
        return False
    return True


def _find_idempotent_numpy(basis, q, limit):
    e = basis.shape[0]
    d = basis.shape[1]
    c = np.zeros(e, dtype=np.int64)
    E = np.zeros((d, d), dtype=np.int64)
    count = 0
    while count < limit:
        k = 0
        while k < e:
            c[k] += 1
            E = (E + basis[k]) % q
            if c[k] < q:
                break
            c[k] = 0
            k += 1
        if k == e:
            return None
        count += 1
        if _is_idem_candidate(E, q):
            return c.copy()
    return None


if _BACKEND == "numba":

    @njit(cache=True, nogil=True)
    def _find_idempotent_numba(basis, q, limit):  # pragma: no cover
        e = basis.shape[0]
        d = basis.shape[1]
        c = np.zeros(e, dtype=np.int64)
        E = np.zeros((d, d), dtype=np.int64)
        out = np.full(e, -1, dtype=np.int64)
        count = 0
        while count < limit:
            k = 0
            while k < e:
                c[k] += 1
                for i in range(d):
                    for j in range(d):
                        E[i, j] = (E[i, j] + basis[k, i, j]) % q
                if c[k] < q:
                    break
                c[k] = 0
                k += 1
            if k == e:
                return out
            count += 1
            nonzero = False
            for i in range(d):
                for j in range(d):
                    if E[i, j] != 0:
                        nonzero = True
                        break
                if nonzero:
                    break
            if not nonzero:
                continue
            ok = True
            is_eye = True
            for i in range(d):
                if not ok:
                    break
                for j in range(d):
                    s = 0
                    for l in range(d):
                        s += E[i, l] * E[l, j]
                    if s % q != E[i, j]:
                        ok = False
                        break
                    want = 1 if i == j else 0
                    if E[i, j] != want:
                        is_eye = False
            if ok and not is_eye:
                for i in range(e):
                    out[i] = c[i]
                return out
        return out


def find_idempotent(basis, q, limit):
    """Search span of `basis` (e,d,d int64) for a nontrivial idempotent.

    Returns the coefficient vector, or None if none exists below `limit`
    candidates (or in the whole space when q**e <= limit).
    """
    if basis.shape[0] == 0:
        return None
    if _BACKEND == "numba":
        basis = np.ascontiguousarray(basis)
        out = _find_idempotent_numba(basis, np.int64(q), np.int64(limit))
        if out[0] < 0:
            return None
        return out
    return _find_idempotent_numpy(basis, q, limit)


def exhaustive_feasible(q, e, limit):
    """True when the whole coefficient space [0,q)^e fits below `limit`."""
    total = 1
    for _ in range(e):
        total *= q
        if total > limit:
            return False
    return True
