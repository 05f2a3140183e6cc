"""Finite-dimensional left Leibniz algebras given by bracket tables, plus the
Nijenhuis deformation machinery.

"Leibniz" always means the left identity

    x o (y o z) = (x o y) o z + y o (x o z),

with no symmetry assumed.  Carrier vectors are sparse {basis index: Fraction}
dicts; basis indices are 1-based.  Checkers iterate basis tuples in
lexicographic order and report the first failing tuple, so output is
deterministic.
"""

from fractions import Fraction

from .multilinear import DimensionMismatchError, frac
from .report import Report


def _sadd(acc, key, val):
    s = acc.get(key, Fraction(0)) + val
    if s:
        acc[key] = s
    elif key in acc:
        del acc[key]


def vec_str(vec):
    """Deterministic witness form of a sparse vector."""
    return {str(k): str(v) for k, v in sorted(vec.items())}


class BracketTable:
    """Bilinear bracket on a based space, stored as sparse basis products.

    entries maps (i, j) to the sparse expansion of e_i o e_j; absent pairs
    bracket to zero.  Bilinearity is by construction.
    """

    __slots__ = ("dim", "entries")

    def __init__(self, dim, entries=None):
        self.dim = dim
        clean = {}
        for (i, j), vec in (entries or {}).items():
            if not (1 <= i <= dim and 1 <= j <= dim):
                raise ValueError("basis pair (%d, %d) out of range 1..%d" % (i, j, dim))
            v = {k: frac(x) for k, x in vec.items() if frac(x)}
            if any(not 1 <= k <= dim for k in v):
                raise ValueError("value index out of range in entry (%d, %d)" % (i, j))
            if v:
                clean[(i, j)] = v
        self.entries = clean

    @classmethod
    def from_function(cls, dim, fn):
        """Tabulate e_i o e_j = fn(i, j) over all basis pairs."""
        entries = {}
        for i in range(1, dim + 1):
            for j in range(1, dim + 1):
                vec = fn(i, j)
                if vec:
                    entries[(i, j)] = vec
        return cls(dim, entries)

    def basis_product(self, i, j):
        return dict(self.entries.get((i, j), {}))

    def product(self, x, y):
        """Bilinear extension to sparse vectors."""
        acc = {}
        for i, a in x.items():
            for j, b in y.items():
                vec = self.entries.get((i, j))
                if vec:
                    ab = a * b
                    for k, c in vec.items():
                        _sadd(acc, k, ab * c)
        return acc

    def __add__(self, other):
        if self.dim != other.dim:
            raise DimensionMismatchError("bracket sum", self.dim, other.dim)
        keys = set(self.entries) | set(other.entries)
        entries = {}
        for key in keys:
            acc = dict(self.entries.get(key, {}))
            for k, v in other.entries.get(key, {}).items():
                _sadd(acc, k, v)
            if acc:
                entries[key] = acc
        return BracketTable(self.dim, entries)

    def is_zero(self):
        return not self.entries

    def __eq__(self, other):
        return (
            isinstance(other, BracketTable)
            and self.dim == other.dim
            and self.entries == other.entries
        )

    def __repr__(self):
        return "BracketTable(dim=%d, %d nonzero basis products)" % (
            self.dim,
            len(self.entries),
        )


def leibniz_defect(table, i, j, k):
    """e_i o (e_j o e_k) - e_j o (e_i o e_k) - (e_i o e_j) o e_k, sparse."""
    ei, ej, ek = {i: Fraction(1)}, {j: Fraction(1)}, {k: Fraction(1)}
    acc = dict(table.product(ei, table.product(ej, ek)))
    for key, v in table.product(ej, table.product(ei, ek)).items():
        _sadd(acc, key, -v)
    for key, v in table.product(table.product(ei, ej), ek).items():
        _sadd(acc, key, -v)
    return acc


def leibniz_check(table, exhaustive=False, suite="leibniz"):
    """Check the left Leibniz identity over all basis triples.

    Stops at the lexicographically first witness unless `exhaustive`, in
    which case every violating triple is reported.
    """
    report = Report(suite, mode="exhaustive" if exhaustive else "first-witness")
    failures = 0
    for i in range(1, table.dim + 1):
        for j in range(1, table.dim + 1):
            for k in range(1, table.dim + 1):
                defect = leibniz_defect(table, i, j, k)
                if defect:
                    failures += 1
                    report.add_fail(
                        "leibniz-identity",
                        {"triple": [i, j, k], "defect": vec_str(defect)},
                    )
                    if not exhaustive:
                        return report
    if not failures:
        report.add_pass("leibniz-identity", detail="%d basis triples" % table.dim**3)
    return report


def deformed_bracket(table, n_op):
    """Bracket deformed along an endomorphism N:

    [x, y]_N = [Nx, y] + [x, Ny] - N[x, y].
    """
    if n_op.dim != table.dim:
        raise DimensionMismatchError("deformed bracket", table.dim, n_op.dim)

    def entry(i, j):
        ei, ej = {i: Fraction(1)}, {j: Fraction(1)}
        acc = dict(table.product(n_op.apply_sparse(ei), ej))
        for k, v in table.product(ei, n_op.apply_sparse(ej)).items():
            _sadd(acc, k, v)
        for k, v in n_op.apply_sparse(table.basis_product(i, j)).items():
            _sadd(acc, k, -v)
        return acc

    return BracketTable.from_function(table.dim, entry)


def nijenhuis_torsion(table, n_op):
    """The torsion TN(x, y) = [Nx, Ny] - N[x, y]_N as a bilinear map on
    sparse vectors.  N is Nijenhuis iff this vanishes on all basis pairs."""
    if n_op.dim != table.dim:
        raise DimensionMismatchError("nijenhuis torsion", table.dim, n_op.dim)
    deformed = deformed_bracket(table, n_op)

    def torsion(x, y):
        acc = dict(table.product(n_op.apply_sparse(x), n_op.apply_sparse(y)))
        for k, v in n_op.apply_sparse(deformed.product(x, y)).items():
            _sadd(acc, k, -v)
        return acc

    return torsion


def torsion_witness(table, n_op):
    """First basis pair (lex order) with nonzero torsion, or None."""
    torsion = nijenhuis_torsion(table, n_op)
    for i in range(1, table.dim + 1):
        for j in range(1, table.dim + 1):
            d = torsion({i: Fraction(1)}, {j: Fraction(1)})
            if d:
                return {"pair": [i, j], "defect": vec_str(d)}
    return None


def nijenhuis_consequences_check(table, n_op, suite="nijenhuis-consequences"):
    """For a Nijenhuis operator N: the deformed bracket is Leibniz, N is a
    morphism from the deformed to the original bracket, and the sum bracket
    is Leibniz again.  A nonzero torsion is reported, not silently ignored.
    """
    report = Report(suite)
    witness = torsion_witness(table, n_op)
    if witness is not None:
        report.add_fail("torsion-vanishes", witness, detail="precondition violated")
        return report
    report.add_pass("torsion-vanishes")

    deformed = deformed_bracket(table, n_op)
    sub = leibniz_check(deformed, suite="deformed")
    if sub.status == "PASS":
        report.add_pass("deformed-bracket-leibniz")
    else:
        report.add_fail("deformed-bracket-leibniz", sub.checks[0].witness)

    morphism_witness = None
    for i in range(1, table.dim + 1):
        if morphism_witness:
            break
        for j in range(1, table.dim + 1):
            ei, ej = {i: Fraction(1)}, {j: Fraction(1)}
            lhs = n_op.apply_sparse(deformed.basis_product(i, j))
            rhs = table.product(n_op.apply_sparse(ei), n_op.apply_sparse(ej))
            diff = dict(lhs)
            for k, v in rhs.items():
                _sadd(diff, k, -v)
            if diff:
                morphism_witness = {"pair": [i, j], "defect": vec_str(diff)}
                break
    if morphism_witness:
        report.add_fail("deformation-morphism", morphism_witness)
    else:
        report.add_pass("deformation-morphism")

    sub = leibniz_check(table + deformed, suite="sum")
    if sub.status == "PASS":
        report.add_pass("sum-bracket-leibniz")
    else:
        report.add_fail("sum-bracket-leibniz", sub.checks[0].witness)
    return report
