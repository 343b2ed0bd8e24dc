"""Finite-dimensional based algebras presented by bound quivers.

An Algebra stores an explicit basis, structure constants, the complete set
of orthogonal primitive idempotents (one per "vertex"), and an optional
positive grading. Algebras built from a quiver presentation additionally
remember the quiver, the relations and which basis elements are the arrows;
algebras arising from computations (endomorphism data, triangular-block
data) may carry no presentation.

Conventions fixed once and enforced by construction-time self-checks:
paths compose left to right (e_u * p = p iff p starts at u), the basis is
vertex-homogeneous (e_u * b * e_w is b or 0), and every stated grading is
multiplicative.
"""

import itertools
from fractions import Fraction

import numpy as np

from .linalg import (complement_within, invert, right_kernel, rref,
                     row_space_basis)
from .quivers import Quiver, QuiverError


class AlgebraError(ValueError):
    pass


class NotAdmissibleError(AlgebraError):
    """A relation involves paths of length < 2."""


class UnsupportedRelationError(AlgebraError):
    """Relation mixes paths of different lengths (outside this tool's scope)."""


class InfiniteDimensionalError(AlgebraError):
    pass


class NotGradedError(AlgebraError):
    pass


class TopDegreeZeroError(AlgebraError):
    pass


class PresentationRequiredError(AlgebraError):
    pass


class Algebra:
    """Finite-dimensional based algebra; immutable after construction."""

    def __init__(self, field, basis, mult, idempotents, vertex_labels,
                 degrees=None, quiver=None, relations=None, arrow_basis=None,
                 name=None, validate=True):
        self.field = field
        self.basis = tuple(basis)
        self.mult = field.normalize(mult)
        self.mult.setflags(write=False)
        self.idempotents = tuple(idempotents)
        self.vertex_labels = tuple(vertex_labels)
        self.degrees = None if degrees is None else tuple(int(d) for d in degrees)
        self.quiver = quiver
        self.relations = None if relations is None else tuple(relations)
        self.arrow_basis = None if arrow_basis is None else dict(arrow_basis)
        self.name = name
        self._op = None
        self._op_backref = None
        self.t2_meta = None
        self.basis_meta = None
        self.label_index = {lbl: i for i, lbl in enumerate(self.basis)}
        if len(self.label_index) != self.dim:
            raise AlgebraError("duplicate basis labels")
        if len(self.idempotents) != len(self.vertex_labels):
            raise AlgebraError("idempotents and vertex labels must align")
        self.src, self.tgt = self._derive_vertex_homogeneity()
        if validate:
            self._validate()

    # -- basic accessors -------------------------------------------------

    @property
    def dim(self):
        return len(self.basis)

    @property
    def is_presented(self):
        return self.quiver is not None and self.arrow_basis is not None

    def unit_vector(self):
        u = self.field.zeros(self.dim)
        one = 1 if self.field.is_prime_field else Fraction(1)
        for e in self.idempotents:
            u[e] = one
        return u

    def idem_slot(self, basis_index):
        """Position of a basis index within the idempotent list."""
        return self.idempotents.index(basis_index)

    def generator_indices(self):
        """Basis indices generating the algebra: idempotents plus arrows
        when presented, the whole basis otherwise."""
        if self.arrow_basis is not None:
            return list(self.idempotents) + sorted(self.arrow_basis.values())
        return list(range(self.dim))

    def radical_indices(self):
        """Non-idempotent basis elements; these span the radical for every
        algebra this package constructs (path bases and block bases)."""
        idem = set(self.idempotents)
        return [i for i in range(self.dim) if i not in idem]

    def corner_indices(self, u_slot, w_slot):
        """Basis indices b with e_u b e_w = b."""
        return [i for i in range(self.dim)
                if self.src[i] == u_slot and self.tgt[i] == w_slot]

    def top_degree(self):
        if self.degrees is None:
            raise NotGradedError("algebra carries no grading")
        return max(self.degrees)

    # -- arithmetic -------------------------------------------------------

    def elt_mul(self, x, y):
        """Product of two coefficient vectors."""
        if self.field.is_prime_field:
            return np.einsum("i,j,ijk->k", x, y, self.mult) % self.field.q
        out = self.field.zeros(self.dim)
        for i in range(self.dim):
            if x[i] == 0:
                continue
            for j in range(self.dim):
                if y[j] == 0:
                    continue
                out = out + x[i] * y[j] * self.mult[i, j]
        return out

    def left_mult_matrix(self, x):
        """L with (v * basis_i) = sum_j L[i, j] basis_j for v = x."""
        if self.field.is_prime_field:
            return np.einsum("b,bij->ij", x, self.mult) % self.field.q
        out = self.field.zeros((self.dim, self.dim))
        for b in range(self.dim):
            if x[b] != 0:
                out = out + x[b] * self.mult[b]
        return out

    def right_mult_matrix(self, x):
        if self.field.is_prime_field:
            return np.einsum("b,ibj->ij", x, self.mult) % self.field.q
        out = self.field.zeros((self.dim, self.dim))
        for b in range(self.dim):
            if x[b] != 0:
                out = out + x[b] * self.mult[:, b, :]
        return out

    def regular_action(self):
        """(n, n, n) stack: action[b] = right multiplication by basis b."""
        return np.ascontiguousarray(self.mult.transpose(1, 0, 2))

    # -- structure --------------------------------------------------------

    def opposite(self):
        if self._op_backref is not None:
            return self._op_backref
        if self._op is None:
            op_mult = np.ascontiguousarray(self.mult.transpose(1, 0, 2))
            op_quiver = self.quiver.opposite() if self.quiver else None
            op_relations = None
            if self.relations is not None:
                op_relations = tuple(
                    tuple((c, tuple(reversed(p))) for c, p in rel)
                    for rel in self.relations)
            op = Algebra(self.field, self.basis, op_mult, self.idempotents,
                         self.vertex_labels, degrees=self.degrees,
                         quiver=op_quiver, relations=op_relations,
                         arrow_basis=self.arrow_basis,
                         name=None if self.name is None else f"op:{self.name}",
                         validate=False)
            if self.basis_meta is not None:
                op.basis_meta = tuple(
                    (kind, data if kind == "e" else tuple(reversed(data)))
                    for kind, data in self.basis_meta)
            op._op_backref = self
            self._op = op
        return self._op

    def well_graded(self):
        """Right sincerity of the top graded piece: for every idempotent
        slot w there is a top-degree basis element ending at w."""
        c = self.top_degree()
        hit = set(self.tgt[i] for i in range(self.dim) if self.degrees[i] == c)
        return hit == set(range(len(self.idempotents)))

    # -- internal checks ---------------------------------------------------

    def _derive_vertex_homogeneity(self):
        n = self.dim
        src = [None] * n
        tgt = [None] * n
        for slot, e in enumerate(self.idempotents):
            for b in range(n):
                left = self.mult[e, b]
                if _is_onehot(self.field, left, b):
                    if src[b] is not None:
                        raise AlgebraError(f"basis {self.basis[b]} has two sources")
                    src[b] = slot
                elif not _is_zero_vec(self.field, left):
                    raise AlgebraError(
                        f"basis {self.basis[b]} is not vertex-homogeneous on the left")
                right = self.mult[b, e]
                if _is_onehot(self.field, right, b):
                    if tgt[b] is not None:
                        raise AlgebraError(f"basis {self.basis[b]} has two targets")
                    tgt[b] = slot
                elif not _is_zero_vec(self.field, right):
                    raise AlgebraError(
                        f"basis {self.basis[b]} is not vertex-homogeneous on the right")
        if any(s is None for s in src) or any(t is None for t in tgt):
            raise AlgebraError("unit does not act as identity on some basis element")
        return tuple(src), tuple(tgt)

    def _validate(self):
        f = self.field
        n = self.dim
        for a, ea in enumerate(self.idempotents):
            for b, eb in enumerate(self.idempotents):
                prod = self.mult[ea, eb]
                want_idx = ea if a == b else None
                if want_idx is None:
                    if not _is_zero_vec(f, prod):
                        raise AlgebraError("idempotents are not orthogonal")
                elif not _is_onehot(f, prod, want_idx):
                    raise AlgebraError("idempotent is not idempotent")
        if f.is_prime_field:
            left = np.einsum("ijm,mkl->ijkl", self.mult, self.mult) % f.q
            right = np.einsum("jkm,iml->ijkl", self.mult, self.mult) % f.q
            if (left != right).any():
                raise AlgebraError("structure constants are not associative")
        else:
            for i in range(n):
                for j in range(n):
                    ij = self.mult[i, j]
                    for k in range(n):
                        lhs = f.zeros(n)
                        for m in range(n):
                            if ij[m] != 0:
                                lhs = lhs + ij[m] * self.mult[m, k]
                        rhs = f.zeros(n)
                        jk = self.mult[j, k]
                        for m in range(n):
                            if jk[m] != 0:
                                rhs = rhs + jk[m] * self.mult[i, m]
                        if not all(x == y for x, y in zip(lhs, rhs)):
                            raise AlgebraError("structure constants are not associative")
        if self.degrees is not None:
            if any(d < 0 for d in self.degrees):
                raise NotGradedError("grading must be nonnegative")
            for i in range(n):
                for j in range(n):
                    prod = self.mult[i, j]
                    for k in range(n):
                        if prod[k] != 0 and self.degrees[k] != self.degrees[i] + self.degrees[j]:
                            raise NotGradedError(
                                f"grading not multiplicative at {self.basis[i]}*{self.basis[j]}")

    def __eq__(self, other):
        if not isinstance(other, Algebra):
            return False
        if (self.field != other.field or self.basis != other.basis
                or self.idempotents != other.idempotents
                or self.degrees != other.degrees):
            return False
        if self.field.is_prime_field:
            return bool((self.mult == other.mult).all())
        return all(x == y for x, y in zip(self.mult.flat, other.mult.flat))

    def __repr__(self):
        tag = self.name or f"{len(self.idempotents)} vertices"
        return f"Algebra({self.field!r}, dim={self.dim}, {tag})"


def _is_zero_vec(field, v):
    if field.is_prime_field:
        return not v.any()
    return all(x == 0 for x in v)


def _is_onehot(field, v, idx):
    if field.is_prime_field:
        return v[idx] == 1 and int(v.sum()) == 1 and not (np.delete(v, idx)).any()
    return v[idx] == 1 and all(x == 0 for k, x in enumerate(v) if k != idx)


# ---------------------------------------------------------------------------
# Bound quiver construction
# ---------------------------------------------------------------------------


def _normalize_relations(quiver, relations):
    """Split relations into parallel, length-homogeneous components.

    Input paths are tuples of arrow labels. Raises NotAdmissibleError on a
    path of length < 2 and UnsupportedRelationError on components mixing
    path lengths (those never occur for the algebra families in scope).
    """
    out = []
    for rel in relations:
        groups = {}
        for coeff, path in rel:
            path = tuple(path)
            if len(path) < 2:
                raise NotAdmissibleError(f"relation path {path} has length < 2")
            ends = quiver.path_ends(path)
            groups.setdefault(ends, []).append((coeff, path))
        for ends, terms in sorted(groups.items()):
            lengths = {len(p) for _, p in terms}
            if len(lengths) != 1:
                raise UnsupportedRelationError(
                    f"relation component at {ends} mixes path lengths {sorted(lengths)}")
            out.append(tuple(terms))
    return tuple(out)


def build_bqa(quiver, relations, field, grading=None, max_len=64, name=None):
    """Bound quiver algebra kQ/I with basis the reduced paths.

    `relations`: list of relations, each a list of (coefficient, path) with
    paths given as tuples of arrow labels composing left to right.
    `grading`: dict arrow label -> degree (default: every arrow degree 1,
    so degree = path length), or False for an ungraded algebra.
    """
    relations = _normalize_relations(quiver, relations)
    arrow_labels = [a for a, _, _ in quiver.arrows]
    arrow_deg = None
    if grading is not False:
        arrow_deg = {a: 1 for a in arrow_labels}
        if isinstance(grading, dict):
            for a, d in grading.items():
                if a not in arrow_deg:
                    raise QuiverError(f"grading names unknown arrow {a!r}")
                if int(d) < 0:
                    raise NotGradedError("arrow degrees must be nonnegative")
                arrow_deg[a] = int(d)
        for terms in relations:
            degs = {sum(arrow_deg[a] for a in p) for _, p in terms}
            if len(degs) != 1:
                raise NotGradedError("relation is not homogeneous for the grading")

    # Layered path enumeration with per-layer ideal reduction. Relations
    # are length-homogeneous, so the degree-l piece of the ideal is spanned
    # by the path sandwiches u*r*v of total length l, and once a whole
    # layer dies every longer layer dies too.
    layer_paths = {1: [(a,) for a in arrow_labels]}
    live_layers = {}
    length = 1
    while layer_paths[length]:
        length += 1
        if length > max_len:
            raise InfiniteDimensionalError(
                f"reduced paths persist beyond length {max_len}")
        cur = []
        for p in layer_paths[length - 1]:
            _, t = quiver.path_ends(p)
            for a in arrow_labels:
                s, _ = quiver.arrow_ends(a)
                if s == t:
                    cur.append(p + (a,))
        layer_paths[length] = cur
        if not cur:
            break
        pos = {p: i for i, p in enumerate(cur)}
        gens = []
        for terms in relations:
            rlen = len(terms[0][1])
            ru, rw = quiver.path_ends(terms[0][1])
            for llen in range(0, length - rlen + 1):
                wlen = length - rlen - llen
                lefts = [()] if llen == 0 else \
                    [p for p in layer_paths[llen] if quiver.path_ends(p)[1] == ru]
                rights = [()] if wlen == 0 else \
                    [p for p in layer_paths[wlen] if quiver.path_ends(p)[0] == rw]
                for lp in lefts:
                    for rp in rights:
                        vec = field.zeros(len(cur))
                        for coeff, rpath in terms:
                            vec[pos[lp + rpath + rp]] = field.coerce(coeff)
                        gens.append(vec)
        if gens:
            red, rk, piv = rref(field, np.stack(gens))
        else:
            red, rk, piv = field.zeros((0, len(cur))), 0, []
        kept = [p for i, p in enumerate(cur) if i not in piv]
        live_layers[length] = (pos, red[:rk], piv, kept)
        if not kept:
            break

    # Assemble the basis: trivial paths, arrows, surviving longer paths.
    basis_meta = [("e", v) for v in quiver.vertices]
    for a in arrow_labels:
        basis_meta.append(("p", (a,)))
    for ln in sorted(live_layers):
        for p in live_layers[ln][3]:
            basis_meta.append(("p", p))

    labels = []
    for kind, data in basis_meta:
        labels.append(f"e_{data}" if kind == "e" else "*".join(data))
    index_of_path = {data: i for i, (kind, data) in enumerate(basis_meta) if kind == "p"}
    index_of_vertex = {data: i for i, (kind, data) in enumerate(basis_meta) if kind == "e"}
    n = len(basis_meta)

    def normal_form(path):
        """Basis coefficients of a composable path, as a dict index->coeff."""
        ln = len(path)
        if ln == 1:
            return {index_of_path[path]: field.coerce(1)}
        if ln not in live_layers:
            return {}
        pos, red, piv, _ = live_layers[ln]
        vec = field.zeros(len(pos))
        vec[pos[path]] = field.coerce(1)
        for r, c in enumerate(piv):
            if vec[c] != 0:
                coef = vec[c]
                if field.is_prime_field:
                    vec = (vec - coef * red[r]) % field.q
                else:
                    vec = vec - coef * red[r]
        out = {}
        for p2, j in pos.items():
            if vec[j] != 0:
                if p2 not in index_of_path:
                    raise AlgebraError("normal form hit an eliminated path")
                out[index_of_path[p2]] = vec[j]
        return out

    mult = field.zeros((n, n, n))
    for i, (ki, di) in enumerate(basis_meta):
        for j, (kj, dj) in enumerate(basis_meta):
            if ki == "e" and kj == "e":
                if di == dj:
                    mult[i, j, i] = field.coerce(1)
                continue
            if ki == "e":
                s, _ = quiver.path_ends(dj)
                if s == di:
                    mult[i, j, j] = field.coerce(1)
                continue
            if kj == "e":
                _, t = quiver.path_ends(di)
                if t == dj:
                    mult[i, j, i] = field.coerce(1)
                continue
            _, ti = quiver.path_ends(di)
            sj, _ = quiver.path_ends(dj)
            if ti != sj:
                continue
            for k, coeff in normal_form(di + dj).items():
                mult[i, j, k] = field.coerce(coeff)

    degrees = None
    if arrow_deg is not None:
        degrees = []
        for kind, data in basis_meta:
            degrees.append(0 if kind == "e" else sum(arrow_deg[a] for a in data))

    idempotents = [index_of_vertex[v] for v in quiver.vertices]
    arrow_basis = {a: index_of_path[(a,)] for a in arrow_labels}
    alg = Algebra(field, labels, mult, idempotents, quiver.vertices,
                  degrees=degrees, quiver=quiver, relations=relations,
                  arrow_basis=arrow_basis, name=name)
    alg.basis_meta = tuple(basis_meta)
    return alg


# ---------------------------------------------------------------------------
# The 2x2 upper triangular construction
# ---------------------------------------------------------------------------


class T2Meta:
    """Bookkeeping for T2(A): the base algebra and the linear bijection
    theta from the T2 basis onto A x {11, 22, 12} tensor coordinates.

    Tensor coordinate layout: column (pos * dimA + b) with pos 0,1,2 for
    11, 22, 12 and b a basis index of A.
    """

    __slots__ = ("base", "theta", "theta_inv", "conn_arrows")

    def __init__(self, base, theta, theta_inv, conn_arrows):
        self.base = base
        self.theta = theta
        self.theta_inv = theta_inv
        self.conn_arrows = conn_arrows

    def pos_slice(self, pos):
        d = self.base.dim
        return slice(pos * d, (pos + 1) * d)


POS_11, POS_22, POS_12 = 0, 1, 2


def t2_of(a, name=None):
    """The upper triangular algebra on two copies of A, presented by the
    doubled quiver with one degree-0 connecting arrow per vertex and the
    square-commutativity relations."""
    if not a.is_presented:
        raise PresentationRequiredError("t2_of needs a quiver presentation")
    q = a.quiver
    verts = [f"{v}.1" for v in q.vertices] + [f"{v}.2" for v in q.vertices]
    arrows = ([(f"{x}.1", f"{s}.1", f"{t}.1") for x, s, t in q.arrows]
              + [(f"{x}.2", f"{s}.2", f"{t}.2") for x, s, t in q.arrows]
              + [(f"c.{v}", f"{v}.1", f"{v}.2") for v in q.vertices])
    relations = []
    if a.relations:
        for rel in a.relations:
            relations.append([(c, tuple(f"{x}.1" for x in p)) for c, p in rel])
            relations.append([(c, tuple(f"{x}.2" for x in p)) for c, p in rel])
    for x, s, t in q.arrows:
        relations.append([(1, (f"{x}.1", f"c.{t}")), (-1, (f"c.{s}", f"{x}.2"))])

    if a.degrees is None:
        grading = False
    else:
        grading = {}
        for x, _, _ in q.arrows:
            grading[f"{x}.1"] = a.degrees[a.arrow_basis[x]]
            grading[f"{x}.2"] = a.degrees[a.arrow_basis[x]]
        for v in q.vertices:
            grading[f"c.{v}"] = 0

    quiver2 = Quiver(verts, arrows)
    t2 = build_bqa(quiver2, relations, a.field,
                   grading=grading, name=name)
    if t2.dim != 3 * a.dim:
        raise AlgebraError(
            f"t2_of self-check failed: dim {t2.dim} != 3*{a.dim}")
    t2.t2_meta = _t2_tensor_map(a, t2)
    return t2


def _t2_tensor_map(a, t2):
    """theta[i] = tensor coordinates of the i-th T2 basis element."""
    f = a.field
    d = a.dim
    theta = f.zeros((t2.dim, 3 * d))
    vert_index = {v: k for k, v in enumerate(a.quiver.vertices)}
    for i, lbl in enumerate(t2.basis):
        if lbl.startswith("e_"):
            v2 = lbl[2:]
            v, copy = v2.rsplit(".", 1)
            pos = POS_11 if copy == "1" else POS_22
            e_idx = a.idempotents[vert_index[v]]
            theta[i, pos * d + e_idx] = f.coerce(1)
            continue
        vec = None
        pos = None
        for arrow in lbl.split("*"):
            if arrow.startswith("c."):
                v = arrow[2:]
                avec = f.zeros(d)
                avec[a.idempotents[vert_index[v]]] = f.coerce(1)
                apos = POS_12
            else:
                base_arrow, copy = arrow.rsplit(".", 1)
                avec = f.zeros(d)
                avec[a.arrow_basis[base_arrow]] = f.coerce(1)
                apos = POS_11 if copy == "1" else POS_22
            if vec is None:
                vec, pos = avec, apos
                continue
            if apos == POS_12:
                if pos != POS_11:
                    raise AlgebraError("t2 tensor map: bad connecting composite")
                pos = POS_12
            elif apos == POS_22:
                if pos not in (POS_22, POS_12):
                    raise AlgebraError("t2 tensor map: bad copy-2 composite")
            elif pos != POS_11:
                raise AlgebraError("t2 tensor map: bad copy-1 composite")
            if f.is_prime_field:
                vec = np.einsum("b,bk->k", vec,
                                a.mult[:, _first_nonzero(avec), :]) % f.q
            else:
                vec2 = f.zeros(d)
                aidx = _first_nonzero(avec)
                for b in range(d):
                    if vec[b] != 0:
                        vec2 = vec2 + vec[b] * a.mult[b, aidx]
                vec = vec2
        theta[i, pos * d:(pos + 1) * d] = vec
    theta_inv = invert(f, theta)
    if theta_inv is None:
        raise AlgebraError("t2 tensor map is not bijective")
    conn = [f"c.{v}" for v in a.quiver.vertices]
    return T2Meta(a, theta, theta_inv, conn)


def _first_nonzero(vec):
    for i, x in enumerate(vec):
        if x != 0:
            return i
    raise AlgebraError("zero vector has no support")


# ---------------------------------------------------------------------------
# Beilinson algebra of a positively graded algebra
# ---------------------------------------------------------------------------


def beilinson_of(a, name=None):
    """Upper triangular block algebra on the graded pieces of `a`.

    Returns a presented algebra: the block data is assembled first, a
    quiver presentation is then derived from it (arrows spanning rad/rad^2,
    relations found layer by layer) and certified by an explicit algebra
    isomorphism onto the block data.
    """
    if a.degrees is None:
        raise NotGradedError("beilinson_of needs a graded algebra")
    c = a.top_degree()
    if c == 0:
        raise TopDegreeZeroError("top degree is zero")
    for i, d in enumerate(a.degrees):
        if d == 0 and i not in a.idempotents:
            raise NotGradedError(
                "degree-zero part must be spanned by the trivial idempotents")

    f = a.field
    triples = []
    for i in range(1, c + 1):
        for b in range(a.dim):
            if a.degrees[b] <= c - i:
                triples.append((i, i + a.degrees[b], b))
    tpos = {t: k for k, t in enumerate(triples)}
    n = len(triples)
    raw_mult = f.zeros((n, n, n))
    for k1, (i1, j1, b1) in enumerate(triples):
        for k2, (i2, j2, b2) in enumerate(triples):
            if j1 != i2:
                continue
            prod = a.mult[b1, b2]
            for b3 in range(a.dim):
                if prod[b3] != 0:
                    raw_mult[k1, k2, tpos[(i1, j2, b3)]] = prod[b3]
    raw_labels = [f"({i},{j}){a.basis[b]}" for i, j, b in triples]
    raw_idems = [tpos[(i, i, e)] for i in range(1, c + 1) for e in a.idempotents]
    raw_vlabels = [f"g{i}.{v}" for i in range(1, c + 1) for v in a.quiver.vertices] \
        if a.quiver else [f"g{i}.{s}" for i in range(1, c + 1)
                          for s in range(len(a.idempotents))]
    raw = Algebra(f, raw_labels, raw_mult, raw_idems, raw_vlabels, name=None)

    presented = _present_block_algebra(raw, name=name)
    presented.beilinson_raw = raw
    return presented


def _present_block_algebra(raw, name=None):
    """Derive a bound quiver presentation of a based algebra whose radical
    is spanned by its non-idempotent basis elements and whose quiver is
    acyclic, then certify it by an explicit isomorphism."""
    f = raw.field
    k = len(raw.idempotents)
    # arrows: per corner, a complement of rad^2 inside the radical corner
    rad = set(raw.radical_indices())
    arrow_elems = []  # (label, u_slot, w_slot, element vector)
    counter = 0
    for u in range(k):
        for w in range(k):
            corner = [i for i in raw.corner_indices(u, w) if i in rad]
            if not corner:
                continue
            # span of products of two radical elements inside this corner
            prods = []
            for x in raw.radical_indices():
                if raw.src[x] != u:
                    continue
                for y in raw.radical_indices():
                    if raw.tgt[y] != w or raw.tgt[x] != raw.src[y]:
                        continue
                    prods.append(raw.mult[x, y])
            sub = row_space_basis(f, np.stack(prods)) if prods else f.zeros((0, raw.dim))
            cand = f.zeros((len(corner), raw.dim))
            for r, i in enumerate(corner):
                cand[r, i] = f.coerce(1)
            for r in complement_within(f, sub, cand):
                arrow_elems.append((f"u{counter}", u, w, cand[r]))
                counter += 1
    verts = list(raw.vertex_labels)
    quiver = Quiver(verts, [(lbl, verts[u], verts[w]) for lbl, u, w, _ in arrow_elems])
    arrow_vec = {lbl: vec for lbl, _, _, vec in arrow_elems}

    def phi_path(path):
        vec = arrow_vec[path[0]]
        for lbl in path[1:]:
            vec = raw.elt_mul(vec, arrow_vec[lbl])
        return vec

    # relations, layer by layer (the quiver is acyclic so this terminates)
    relations = []
    layer = [(lbl,) for lbl, _, _, _ in arrow_elems]
    length = 1
    while layer:
        length += 1
        nxt = []
        for p in layer:
            _, t = quiver.path_ends(p)
            for lbl, _, _, _ in arrow_elems:
                s, _ = quiver.arrow_ends(lbl)
                if s == t:
                    nxt.append(p + (lbl,))
        layer = nxt
        if not layer:
            break
        if length > raw.dim + 1:
            raise AlgebraError("block presentation did not terminate")
        groups = {}
        for p in layer:
            groups.setdefault(quiver.path_ends(p), []).append(p)
        for ends in sorted(groups):
            paths = groups[ends]
            mat = np.stack([phi_path(p) for p in paths])
            kern = right_kernel(f, np.ascontiguousarray(mat.T))
            if kern.shape[0] == 0:
                continue
            # ideal generated by relations already found, at this layer
            old = []
            pos = {p: i for i, p in enumerate(paths)}
            for terms in relations:
                rlen = len(terms[0][1])
                ru, rw = quiver.path_ends(terms[0][1])
                for lp in _paths_between(quiver, arrow_elems, None, ru,
                                         length - rlen):
                    for rp in _paths_between(quiver, arrow_elems, rw, None,
                                             length - rlen - len(lp)):
                        if len(lp) + rlen + len(rp) != length:
                            continue
                        vec = f.zeros(len(paths))
                        dead = False
                        for coeff, rpath in terms:
                            whole = lp + rpath + rp
                            if whole not in pos:
                                dead = True
                                break
                            vec[pos[whole]] = vec[pos[whole]] + f.coerce(coeff)
                        if not dead:
                            old.append(vec)
            sub = row_space_basis(f, np.stack(old)) if old else f.zeros((0, len(paths)))
            for r in complement_within(f, sub, kern):
                terms = tuple((kern[r][i], paths[i]) for i in range(len(paths))
                              if kern[r][i] != 0)
                relations.append(terms)

    presented = build_bqa(quiver, [list(t) for t in relations], f,
                          grading=False, name=name)
    if presented.dim != raw.dim:
        raise AlgebraError(
            f"block presentation dimension {presented.dim} != {raw.dim}")
    iso = verify_iso(presented, raw,
                     {v: s for s, v in enumerate(verts)}, arrow_vec)
    if iso is None:
        raise AlgebraError("block presentation failed certification")
    return presented


def _paths_between(quiver, arrow_elems, src, tgt, max_len):
    """All paths (incl. the empty one) with the given optional endpoint
    constraints, up to max_len arrows."""
    out = [()]
    frontier = [()]
    for _ in range(max_len):
        nxt = []
        for p in frontier:
            end = quiver.path_ends(p)[1] if p else None
            for lbl, _, _, _ in arrow_elems:
                s, _ = quiver.arrow_ends(lbl)
                if p and s != end:
                    continue
                if not p and src is not None and s != src:
                    continue
                nxt.append(p + (lbl,))
        frontier = nxt
        out.extend(nxt)
    def ok(p):
        if not p:
            return True
        s, t = quiver.path_ends(p)
        if src is not None and s != src:
            return False
        if tgt is not None and t != tgt:
            return False
        return True
    return [p for p in out if ok(p)]


# ---------------------------------------------------------------------------
# Opposite and isomorphism matching
# ---------------------------------------------------------------------------


def opposite_of(a):
    return a.opposite()


class IsoMap:
    """An algebra isomorphism phi: presented -> target, stored as the
    matrix of images (rows are phi of each basis element)."""

    __slots__ = ("matrix", "vertex_map", "arrow_images")

    def __init__(self, matrix, vertex_map, arrow_images):
        self.matrix = matrix
        self.vertex_map = vertex_map
        self.arrow_images = arrow_images

    def __repr__(self):
        return f"IsoMap({self.vertex_map!r})"


class NoMatch:
    __slots__ = ("definitive", "reason")

    def __init__(self, definitive, reason):
        self.definitive = definitive
        self.reason = reason

    def __bool__(self):
        return False

    def __repr__(self):
        kind = "definitive" if self.definitive else "inconclusive"
        return f"NoMatch({kind}: {self.reason})"


def verify_iso(presented, target, vertex_slot_map, arrow_vec):
    """Extend idempotent + arrow images to a full map and verify it is a
    bijective homomorphism. Returns the image matrix or None.

    vertex_slot_map: presented vertex label -> idempotent slot of target.
    arrow_vec: presented arrow label -> element vector of target.
    """
    f = presented.field
    n = presented.dim
    phi = f.zeros((n, target.dim))
    for i, lbl in enumerate(presented.basis):
        if lbl.startswith("e_"):
            v = lbl[2:]
            slot = vertex_slot_map[v]
            phi[i, target.idempotents[slot]] = f.coerce(1)
        else:
            vec = None
            for arrow in lbl.split("*"):
                av = arrow_vec[arrow]
                vec = av if vec is None else target.elt_mul(vec, av)
            phi[i] = vec
    if invert(f, phi) is None:
        return None
    if f.is_prime_field:
        lhs = np.einsum("ijk,kr->ijr", presented.mult, phi) % f.q
        rhs = np.einsum("ip,jq,pqr->ijr", phi, phi, target.mult) % f.q
        if (lhs != rhs).any():
            return None
    else:
        for i in range(n):
            for j in range(n):
                lhs = f.zeros(target.dim)
                for k in range(n):
                    if presented.mult[i, j, k] != 0:
                        lhs = lhs + presented.mult[i, j, k] * phi[k]
                rhs = target.elt_mul(phi[i], phi[j])
                if not all(x == y for x, y in zip(lhs, rhs)):
                    return None
    return phi


def _corner_profile(alg):
    k = len(alg.idempotents)
    prof = np.zeros((k, k), dtype=np.int64)
    for i in range(alg.dim):
        prof[alg.src[i], alg.tgt[i]] += 1
    return prof


def _nonzero_vectors(field, dim):
    """Deterministic candidate element coordinates for arrow images."""
    if dim == 0:
        return
    if field.is_prime_field:
        for digits in itertools.product(range(field.q), repeat=dim):
            if any(digits):
                yield [field.coerce(d) for d in digits]
    else:
        for digits in itertools.product((0, 1, -1), repeat=dim):
            if any(digits):
                yield [Fraction(d) for d in digits]


def match_iso(target, presented, budget=200000):
    """Search for an algebra isomorphism presented -> target.

    `target` is structure-constant data (any Algebra, presentation not
    required); `presented` must carry a quiver presentation. The search
    matches the designated idempotent sets, then enumerates arrow images
    inside the matched corner spaces. A NoMatch is definitive only when the
    dimension or idempotent counts differ.
    """
    if target.field != presented.field:
        raise AlgebraError("match_iso: field mismatch")
    if not presented.is_presented:
        raise PresentationRequiredError("match_iso needs a presented candidate")
    if target.dim != presented.dim:
        return NoMatch(True, f"dimensions differ: {target.dim} vs {presented.dim}")
    if len(target.idempotents) != len(presented.idempotents):
        return NoMatch(True, "idempotent counts differ")
    f = target.field
    k = len(target.idempotents)
    prof_t = _corner_profile(target)
    prof_p = _corner_profile(presented)
    arrows = sorted(presented.arrow_basis)
    tried = 0
    for sigma in itertools.permutations(range(k)):
        ok = all(prof_p[u, w] == prof_t[sigma[u], sigma[w]]
                 for u in range(k) for w in range(k))
        if not ok:
            continue
        cand_lists = []
        feasible = True
        for lbl in arrows:
            u = presented.src[presented.arrow_basis[lbl]]
            w = presented.tgt[presented.arrow_basis[lbl]]
            corner = target.corner_indices(sigma[u], sigma[w])
            if not corner:
                feasible = False
                break
            cands = []
            for coeffs in _nonzero_vectors(f, len(corner)):
                vec = f.zeros(target.dim)
                for c, idx in zip(coeffs, corner):
                    vec[idx] = c
                cands.append(vec)
            cand_lists.append(cands)
        if not feasible:
            continue
        for assignment in itertools.product(*cand_lists):
            tried += 1
            if tried > budget:
                return NoMatch(False, f"budget {budget} exhausted")
            vmap = {presented.vertex_labels[u]: sigma[u] for u in range(k)}
            avec = dict(zip(arrows, assignment))
            phi = verify_iso(presented, target, vmap, avec)
            if phi is not None:
                return IsoMap(phi, vmap, avec)
    return NoMatch(False, "no isomorphism found in the searched space")
