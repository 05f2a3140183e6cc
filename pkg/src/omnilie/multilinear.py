"""Exact-rational multilinear kernel: wedge powers of a based vector space,
endomorphisms, and the tensor pairings built on them.

Conventions used throughout the package:

* the ambient space V has a fixed ordered basis e_1, ..., e_m; basis indices
  are 1-based everywhere,
* a grade-k wedge is stored sparsely on strictly increasing index tuples,
  with permutation signs folded into the coefficients, so equality is plain
  dict comparison,
* every coefficient is a `fractions.Fraction`; nothing here ever rounds.

All values are immutable by convention: no method mutates `self` or an
argument, so instances are safe to share freely.
"""

import itertools
from fractions import Fraction


class DimensionMismatchError(ValueError):
    """Raised when two objects over different ambient dimensions are mixed."""

    def __init__(self, what, dim_a, dim_b):
        super().__init__("%s: dimension mismatch (%s vs %s)" % (what, dim_a, dim_b))
        self.dims = (dim_a, dim_b)


def frac(x):
    """Coerce ints / strings / Fractions to Fraction, rejecting floats."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not exact; got %r" % x)
    return Fraction(x)


def sort_sign(indices):
    """Sort an index tuple, returning (sorted tuple, permutation sign).

    The sign is 0 when an index repeats, so callers can drop the term.
    """
    idx = list(indices)
    sign = 1
    # insertion sort; tuples here have length <= n-1, tiny
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    for i in range(1, len(idx)):
        if idx[i - 1] == idx[i]:
            return tuple(idx), 0
    return tuple(idx), sign


def wedge_basis(dim, grade):
    """Strictly increasing index tuples of the given length, in lex order."""
    return list(itertools.combinations(range(1, dim + 1), grade))


def _check_dims(what, a, b):
    if a != b:
        raise DimensionMismatchError(what, a, b)


class Wedge:
    """Element of the grade-k exterior power of V, in canonical basis form.

    coeffs maps strictly increasing index tuples to nonzero Fractions.  The
    empty tuple is the (single) basis label of grade 0, identifying grade-0
    wedges with scalars.
    """

    __slots__ = ("dim", "grade", "c")

    def __init__(self, dim, grade, coeffs=None):
        if not 0 <= grade <= dim:
            raise ValueError("grade %d out of range for dim %d" % (grade, dim))
        self.dim = dim
        self.grade = grade
        clean = {}
        for key, val in (coeffs or {}).items():
            key = tuple(key)
            if len(key) != grade:
                raise ValueError("key %r has wrong length for grade %d" % (key, grade))
            if any(not 1 <= i <= dim for i in key):
                raise ValueError("key %r out of basis range 1..%d" % (key, dim))
            if list(key) != sorted(set(key)):
                raise ValueError("key %r is not strictly increasing" % (key,))
            val = frac(val)
            if val:
                clean[key] = val
        self.c = clean

    @classmethod
    def zero(cls, dim, grade):
        return cls(dim, grade)

    @classmethod
    def basis(cls, dim, key):
        return cls(dim, len(key), {tuple(key): Fraction(1)})

    @classmethod
    def from_terms(cls, dim, grade, terms):
        """Build from (index tuple, coeff) pairs in arbitrary index order."""
        acc = {}
        for key, val in terms:
            skey, sign = sort_sign(key)
            if sign:
                acc[skey] = acc.get(skey, Fraction(0)) + sign * frac(val)
        return cls(dim, grade, acc)

    def is_zero(self):
        return not self.c

    def items(self):
        return sorted(self.c.items())

    def __add__(self, other):
        _check_dims("wedge add", self.dim, other.dim)
        if self.grade != other.grade:
            raise ValueError("grade mismatch: %d vs %d" % (self.grade, other.grade))
        acc = dict(self.c)
        for key, val in other.c.items():
            acc[key] = acc.get(key, Fraction(0)) + val
        return Wedge(self.dim, self.grade, acc)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Wedge(self.dim, self.grade, {k: -v for k, v in self.c.items()})

    def scale(self, s):
        s = frac(s)
        return Wedge(self.dim, self.grade, {k: s * v for k, v in self.c.items()})

    __rmul__ = scale

    def __eq__(self, other):
        return (
            isinstance(other, Wedge)
            and self.dim == other.dim
            and self.grade == other.grade
            and self.c == other.c
        )

    def __hash__(self):
        return hash((self.dim, self.grade, tuple(sorted(self.c.items()))))

    def __repr__(self):
        return "Wedge(%d, %d, %r)" % (self.dim, self.grade, dict(self.items()))


def wedge(u, v):
    """Exterior product; the permutation sign lands in the coefficient."""
    _check_dims("wedge product", u.dim, v.dim)
    if u.grade + v.grade > u.dim:
        return Wedge.zero(u.dim, min(u.grade + v.grade, u.dim))
    acc = {}
    for ku, cu in u.c.items():
        for kv, cv in v.c.items():
            skey, sign = sort_sign(ku + kv)
            if sign:
                acc[skey] = acc.get(skey, Fraction(0)) + sign * cu * cv
    return Wedge(u.dim, u.grade + v.grade, acc)


def vector_wedge(dim, components):
    """Grade-1 wedge from a dense coefficient sequence."""
    return Wedge(dim, 1, {(i + 1,): frac(v) for i, v in enumerate(components) if frac(v)})


def wedge_to_vector(u):
    """Dense tuple of coefficients of a grade-1 wedge."""
    if u.grade != 1:
        raise ValueError("grade-1 wedge expected, got grade %d" % u.grade)
    return tuple(u.c.get((i,), Fraction(0)) for i in range(1, u.dim + 1))


class Endo:
    """Linear endomorphism of V as a dense square matrix of Fractions.

    rows[i][j] is the e_{i+1}-coefficient of the image of e_{j+1}; column j
    is the image of basis vector e_j.
    """

    __slots__ = ("dim", "rows")

    def __init__(self, rows):
        rows = tuple(tuple(frac(x) for x in r) for r in rows)
        m = len(rows)
        if any(len(r) != m for r in rows):
            raise ValueError("square matrix expected")
        self.dim = m
        self.rows = rows

    @classmethod
    def zero(cls, dim):
        return cls([[0] * dim for _ in range(dim)])

    @classmethod
    def identity(cls, dim):
        return cls([[1 if i == j else 0 for j in range(dim)] for i in range(dim)])

    @classmethod
    def basis(cls, dim, i, j):
        """Matrix unit E_ij: sends e_j to e_i, every other basis vector to 0."""
        return cls(
            [[1 if (r + 1, c + 1) == (i, j) else 0 for c in range(dim)] for r in range(dim)]
        )

    @classmethod
    def diagonal(cls, entries):
        m = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(m)] for i in range(m)])

    def entry(self, i, j):
        return self.rows[i - 1][j - 1]

    def col(self, j):
        """Sparse image of e_j as {index: coeff}."""
        return {i + 1: r[j - 1] for i, r in enumerate(self.rows) if r[j - 1]}

    def apply(self, vec):
        """Apply to a dense coefficient tuple."""
        if len(vec) != self.dim:
            raise DimensionMismatchError("endo apply", self.dim, len(vec))
        return tuple(
            sum((self.rows[i][j] * frac(vec[j]) for j in range(self.dim)), Fraction(0))
            for i in range(self.dim)
        )

    def apply_sparse(self, vec):
        """Apply to a sparse {index: coeff} vector, returning the same shape."""
        out = {}
        for j, val in vec.items():
            for i, a in self.col(j).items():
                s = out.get(i, Fraction(0)) + a * val
                if s:
                    out[i] = s
                elif i in out:
                    del out[i]
        return out

    def compose(self, other):
        _check_dims("endo compose", self.dim, other.dim)
        m = self.dim
        return Endo(
            [
                [
                    sum((self.rows[i][k] * other.rows[k][j] for k in range(m)), Fraction(0))
                    for j in range(m)
                ]
                for i in range(m)
            ]
        )

    __matmul__ = compose

    def __add__(self, other):
        _check_dims("endo add", self.dim, other.dim)
        return Endo(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ]
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Endo([[-x for x in r] for r in self.rows])

    def scale(self, s):
        s = frac(s)
        return Endo([[s * x for x in r] for r in self.rows])

    __rmul__ = scale

    def is_zero(self):
        return all(not x for r in self.rows for x in r)

    def __eq__(self, other):
        return isinstance(other, Endo) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "Endo(%r)" % ([[str(x) for x in r] for r in self.rows],)


def commutator(a, b):
    """AB - BA."""
    _check_dims("commutator", a.dim, b.dim)
    return a.compose(b) - b.compose(a)


def endo_derivation(a, u):
    """Derivation action of an endomorphism on a wedge.

    Sends v_1 ^ ... ^ v_k to the sum over slots of v_1 ^ ... ^ A v_i ^ ... ^ v_k,
    renormalized to canonical increasing-index form.
    """
    _check_dims("endo derivation", a.dim, u.dim)
    acc = {}
    for key, coeff in u.c.items():
        for slot in range(len(key)):
            for img, val in a.col(key[slot]).items():
                skey, sign = sort_sign(key[:slot] + (img,) + key[slot + 1 :])
                if sign:
                    acc[skey] = acc.get(skey, Fraction(0)) + sign * coeff * val
    return Wedge(u.dim, u.grade, acc)


class TensorPair:
    """Element of V tensor (grade-k wedge of V), stored sparsely.

    Keys are (vector index, strictly increasing wedge tuple).  For k = 0 the
    wedge slot is the empty tuple and the value degenerates to a V-valued
    map, which is exactly what the arity-2 case needs.
    """

    __slots__ = ("dim", "wedge_grade", "c")

    def __init__(self, dim, wedge_grade, coeffs=None):
        self.dim = dim
        self.wedge_grade = wedge_grade
        clean = {}
        for (i, key), val in (coeffs or {}).items():
            key = tuple(key)
            if len(key) != wedge_grade or list(key) != sorted(set(key)):
                raise ValueError("bad wedge key %r" % (key,))
            if not 1 <= i <= dim or any(not 1 <= t <= dim for t in key):
                raise ValueError("index out of range in key (%r, %r)" % (i, key))
            val = frac(val)
            if val:
                clean[(i, key)] = val
        self.c = clean

    @classmethod
    def zero(cls, dim, wedge_grade):
        return cls(dim, wedge_grade)

    @classmethod
    def from_terms(cls, dim, wedge_grade, terms):
        """Build from (vector index, wedge tuple in any order, coeff) triples."""
        acc = {}
        for i, key, val in terms:
            skey, sign = sort_sign(key)
            if sign:
                k = (i, skey)
                acc[k] = acc.get(k, Fraction(0)) + sign * frac(val)
        return cls(dim, wedge_grade, acc)

    def is_zero(self):
        return not self.c

    def items(self):
        return sorted(self.c.items())

    def __add__(self, other):
        _check_dims("tensor add", self.dim, other.dim)
        acc = dict(self.c)
        for key, val in other.c.items():
            acc[key] = acc.get(key, Fraction(0)) + val
        return TensorPair(self.dim, self.wedge_grade, acc)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return TensorPair(self.dim, self.wedge_grade, {k: -v for k, v in self.c.items()})

    def scale(self, s):
        s = frac(s)
        return TensorPair(self.dim, self.wedge_grade, {k: s * v for k, v in self.c.items()})

    __rmul__ = scale

    def __eq__(self, other):
        return (
            isinstance(other, TensorPair)
            and self.dim == other.dim
            and self.wedge_grade == other.wedge_grade
            and self.c == other.c
        )

    def __repr__(self):
        return "TensorPair(%d, %d, %r)" % (self.dim, self.wedge_grade, dict(self.items()))


def endo_derivation_tensor(a, w):
    """Derivation action on V tensor wedge^k V: acts on the V slot and on
    every wedge slot."""
    _check_dims("endo derivation (tensor)", a.dim, w.dim)
    acc = {}

    def put(i, key, val):
        k = (i, key)
        s = acc.get(k, Fraction(0)) + val
        if s:
            acc[k] = s
        elif k in acc:
            del acc[k]

    for (i, key), coeff in w.c.items():
        for img, val in a.col(i).items():
            put(img, key, coeff * val)
        for slot in range(len(key)):
            for img, val in a.col(key[slot]).items():
                skey, sign = sort_sign(key[:slot] + (img,) + key[slot + 1 :])
                if sign:
                    put(i, skey, sign * coeff * val)
    return TensorPair(w.dim, w.wedge_grade, acc)


def rational_nullspace(rows, ncols):
    """Basis of the nullspace of a rational matrix, by exact Gaussian
    elimination.  Returns a deterministic list of dense Fraction tuples."""
    mat = [[frac(x) for x in r] for r in rows]
    nrows = len(mat)
    pivot_of_col = {}
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, nrows):
            if mat[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        pv = mat[r][c]
        mat[r] = [x / pv for x in mat[r]]
        for i in range(nrows):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivot_of_col[c] = r
        r += 1
        if r == nrows:
            break
    basis = []
    free_cols = [c for c in range(ncols) if c not in pivot_of_col]
    for fc in free_cols:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for c, pr in pivot_of_col.items():
            vec[c] = -mat[pr][fc]
        basis.append(tuple(vec))
    return basis
