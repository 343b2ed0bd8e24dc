"""Exact scalar arithmetic: prime fields F_q and the rationals.

Prime-field elements are canonical residues 0..q-1 stored in int64 numpy
arrays; rational elements are `fractions.Fraction` stored in object arrays.
No floating point anywhere.
"""

from fractions import Fraction

import numpy as np

# int64 products must never overflow: entries < q, and q**2 * (largest
# inner dimension we ever matmul over) has to stay below 2**63.
MAX_PRIME = 32003


class FieldError(ValueError):
    pass


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class Field:
    """A prime field F_q (q prime) or the field of rationals."""

    __slots__ = ("kind", "q", "_inv_table")

    def __init__(self, q=None):
        if q is None:
            self.kind = "rationals"
            self.q = None
            self._inv_table = None
        else:
            if not isinstance(q, int) or not _is_prime(q):
                raise FieldError(f"q must be a prime integer, got {q!r}")
            if q > MAX_PRIME:
                raise FieldError(f"q too large for exact int64 arithmetic: {q}")
            self.kind = "prime-field"
            self.q = q
            inv = np.zeros(q, dtype=np.int64)
            for a in range(1, q):
                inv[a] = pow(a, q - 2, q)
            self._inv_table = inv

    @property
    def is_prime_field(self):
        return self.kind == "prime-field"

    @property
    def inv_table(self):
        return self._inv_table

    def __eq__(self, other):
        return isinstance(other, Field) and self.kind == other.kind and self.q == other.q

    def __hash__(self):
        return hash((self.kind, self.q))

    def __repr__(self):
        return f"GF({self.q})" if self.is_prime_field else "QQ"

    # -- scalar helpers -------------------------------------------------

    def coerce(self, x):
        """Canonical scalar: residue int for F_q, Fraction for QQ."""
        if self.is_prime_field:
            if isinstance(x, Fraction):
                if x.denominator % self.q == 0:
                    raise FieldError(f"denominator of {x} vanishes mod {self.q}")
                return (x.numerator * pow(x.denominator, -1, self.q)) % self.q
            return int(x) % self.q
        if isinstance(x, Fraction):
            return x
        if isinstance(x, (int, np.integer)):
            return Fraction(int(x))
        if isinstance(x, str):
            return Fraction(x)
        raise FieldError(f"cannot coerce {x!r} into {self!r}")

    def parse(self, s):
        """Inverse of format_elt: "3/2" -> Fraction(3,2), "1" -> 1 mod q."""
        if self.is_prime_field:
            return int(s) % self.q
        return Fraction(s)

    def format_elt(self, x):
        if self.is_prime_field:
            return str(int(x) % self.q)
        return str(Fraction(x))

    # -- array helpers ---------------------------------------------------

    @property
    def dtype(self):
        return np.int64 if self.is_prime_field else object

    def zeros(self, shape):
        if self.is_prime_field:
            return np.zeros(shape, dtype=np.int64)
        a = np.empty(shape, dtype=object)
        a[...] = Fraction(0)
        return a

    def eye(self, n):
        a = self.zeros((n, n))
        one = 1 if self.is_prime_field else Fraction(1)
        for i in range(n):
            a[i, i] = one
        return a

    def array(self, rows):
        """2D array from nested scalars (ints, Fractions, or strings)."""
        data = [[self.coerce(x) if not isinstance(x, str) else self.parse(x) for x in row]
                for row in rows]
        nrows = len(data)
        ncols = len(data[0]) if nrows else 0
        a = self.zeros((nrows, ncols))
        for i, row in enumerate(data):
            if len(row) != ncols:
                raise FieldError("ragged rows")
            for j, x in enumerate(row):
                a[i, j] = x
        return a

    def normalize(self, a):
        """Reduce an array to canonical form in place-free fashion."""
        if self.is_prime_field:
            return np.asarray(a, dtype=np.int64) % self.q
        out = np.empty(np.shape(a), dtype=object)
        flat_in = np.asarray(a, dtype=object).reshape(-1)
        flat_out = out.reshape(-1)
        for i, x in enumerate(flat_in):
            flat_out[i] = self.coerce(x)
        return out

    def mat_mul(self, a, b):
        if self.is_prime_field:
            return (a @ b) % self.q
        return np.dot(a, b)

    def mat_add(self, a, b):
        if self.is_prime_field:
            return (a + b) % self.q
        return a + b

    def mat_sub(self, a, b):
        if self.is_prime_field:
            return (a - b) % self.q
        return a - b

    def scal_mul(self, c, a):
        if self.is_prime_field:
            return (int(c) * a) % self.q
        return np.asarray(a, dtype=object) * c


def GF(q):
    return Field(q)


QQ = Field(None)
F2 = Field(2)
F3 = Field(3)


def field_from_name(name):
    """CLI names: f2, f3, q (rationals), or f<prime>."""
    name = name.lower()
    if name == "q":
        return QQ
    if name.startswith("f"):
        return Field(int(name[1:]))
    raise FieldError(f"unknown field name {name!r}")


def field_to_json(f):
    if f.is_prime_field:
        return {"kind": "prime-field", "q": f.q}
    return {"kind": "rationals"}


def field_from_json(obj):
    if obj.get("kind") == "rationals":
        return QQ
    return Field(obj["q"])
