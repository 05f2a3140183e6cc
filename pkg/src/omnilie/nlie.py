"""n-Lie (Filippov) algebras from structure constants.

Structure constants are ingested on strictly increasing index tuples only;
evaluation computes the permutation sign on the fly, so full skew-symmetry
holds by construction.  The Fundamental Identity

    [u_1,...,u_{n-1},[v_1,...,v_n]] = sum_i [v_1,...,[u_1,...,u_{n-1},v_i],...,v_n]

is a separate checkable property (fi_check), not a constructor invariant:
the same container therefore doubles as a plain skew map wedge^n V -> V.
"""

import itertools
from fractions import Fraction

from .multilinear import (
    DimensionMismatchError,
    Endo,
    Wedge,
    endo_derivation,
    frac,
    rational_nullspace,
    sort_sign,
    wedge_basis,
)
from .leibniz import BracketTable, _sadd, vec_str
from .report import Report


class FundamentalIdentityError(ValueError):
    """Raised when an operation requires an n-Lie algebra but the
    Fundamental Identity fails; carries the failing witness."""

    def __init__(self, witness):
        super().__init__("fundamental identity fails: %s" % (witness,))
        self.witness = witness


class NLieAlgebra:
    """Arity-n skew bracket on a based m-dimensional space.

    constants maps strictly increasing n-tuples of basis indices to the
    sparse expansion {k: coeff} of their bracket.
    """

    __slots__ = ("n", "dim", "constants", "basis_names", "_fi_witness")

    def __init__(self, n, dim, constants=None, basis_names=None):
        if n < 2:
            raise ValueError("arity must be >= 2, got %d" % n)
        if dim < 1:
            raise ValueError("dim must be >= 1, got %d" % dim)
        self.n = n
        self.dim = dim
        clean = {}
        for key, vec in (constants or {}).items():
            key = tuple(key)
            if len(key) != n or list(key) != sorted(set(key)):
                raise ValueError("args %r must be a strictly increasing %d-tuple" % (key, n))
            if any(not 1 <= i <= dim for i in key):
                raise ValueError("args %r out of range 1..%d" % (key, dim))
            v = {k: frac(x) for k, x in vec.items() if frac(x)}
            if any(not 1 <= k <= dim for k in v):
                raise ValueError("value index out of range for args %r" % (key,))
            if v:
                clean[key] = v
        self.constants = clean
        self.basis_names = list(basis_names) if basis_names else None
        self._fi_witness = ...  # not yet computed

    def basis_bracket(self, indices):
        """Signed lookup of [e_{i_1}, ..., e_{i_n}] for any index order."""
        if len(indices) != self.n:
            raise ValueError("expected %d indices, got %d" % (self.n, len(indices)))
        skey, sign = sort_sign(tuple(indices))
        if not sign:
            return {}
        vec = self.constants.get(skey)
        if not vec:
            return {}
        return {k: sign * v for k, v in vec.items()}

    def bracket(self, *vectors):
        """Multilinear, fully skew evaluation on dense coefficient tuples."""
        if len(vectors) != self.n:
            raise ValueError("expected %d arguments, got %d" % (self.n, len(vectors)))
        supports = []
        for vec in vectors:
            if len(vec) != self.dim:
                raise DimensionMismatchError("bracket argument", self.dim, len(vec))
            supports.append([(i + 1, frac(x)) for i, x in enumerate(vec) if frac(x)])
        acc = {}
        for chosen in itertools.product(*supports):
            coeff = Fraction(1)
            for _, c in chosen:
                coeff *= c
            for k, v in self.basis_bracket(tuple(i for i, _ in chosen)).items():
                _sadd(acc, k, coeff * v)
        return tuple(acc.get(i, Fraction(0)) for i in range(1, self.dim + 1))

    def __eq__(self, other):
        return (
            isinstance(other, NLieAlgebra)
            and (self.n, self.dim) == (other.n, other.dim)
            and self.constants == other.constants
        )

    def __repr__(self):
        return "NLieAlgebra(n=%d, dim=%d, %d brackets)" % (
            self.n,
            self.dim,
            len(self.constants),
        )


def fi_defect(g, u_tuple, v_tuple):
    """Defect of the Fundamental Identity at basis tuples, sparse."""
    inner = g.basis_bracket(v_tuple)
    lhs = {}
    for k, c in inner.items():
        for t, v in g.basis_bracket(u_tuple + (k,)).items():
            _sadd(lhs, t, c * v)
    for i in range(g.n):
        acted = g.basis_bracket(u_tuple + (v_tuple[i],))
        for k, c in acted.items():
            replaced = v_tuple[:i] + (k,) + v_tuple[i + 1 :]
            for t, v in g.basis_bracket(replaced).items():
                _sadd(lhs, t, -c * v)
    return lhs


def fi_check(g, exhaustive=False, suite="fundamental-identity"):
    """Check the Fundamental Identity over all increasing basis tuples.

    Skew-symmetry in the (n-1)-block and the n-block makes increasing tuples
    sufficient.  Short-circuits at the lexicographically first witness by
    default; exhaustive mode reports every violation.
    """
    report = Report(suite, mode="exhaustive" if exhaustive else "first-witness")
    failures = 0
    for u_tuple in wedge_basis(g.dim, g.n - 1):
        for v_tuple in wedge_basis(g.dim, g.n):
            defect = fi_defect(g, u_tuple, v_tuple)
            if defect:
                failures += 1
                report.add_fail(
                    "fundamental-identity",
                    {
                        "u": list(u_tuple),
                        "v": list(v_tuple),
                        "defect": vec_str(defect),
                    },
                )
                if not exhaustive:
                    return report
    if not failures:
        count = len(wedge_basis(g.dim, g.n - 1)) * len(wedge_basis(g.dim, g.n))
        report.add_pass("fundamental-identity", detail="%d basis tuple pairs" % count)
    return report


def fi_passes(g):
    """Cached boolean form of fi_check, used as a precondition gate."""
    if g._fi_witness is ...:
        rep = fi_check(g)
        g._fi_witness = None if rep.status == "PASS" else rep.checks[0].witness
    return g._fi_witness is None


def require_fi(g):
    if not fi_passes(g):
        raise FundamentalIdentityError(g._fi_witness)


def ad(g, u):
    """Adjoint endomorphism of a fundamental object u in wedge^{n-1}:

    ad_u(v) = [u_1, ..., u_{n-1}, v], extended linearly in u.

    Also serves as the induced map of a plain skew map wedge^n V -> V.
    """
    if u.dim != g.dim:
        raise DimensionMismatchError("ad", g.dim, u.dim)
    if u.grade != g.n - 1:
        raise ValueError("fundamental object must have grade %d" % (g.n - 1))
    cols = [{} for _ in range(g.dim)]
    for key, coeff in u.c.items():
        for j in range(1, g.dim + 1):
            for k, v in g.basis_bracket(key + (j,)).items():
                _sadd(cols[j - 1], k, coeff * v)
    rows = [[cols[j].get(i + 1, Fraction(0)) for j in range(g.dim)] for i in range(g.dim)]
    return Endo(rows)


def fo_compose(g, u, v):
    """Composition of fundamental objects: the derivation extension of ad_u,

    u o v = sum_i v_1 ^ ... ^ (ad_u v_i) ^ ... ^ v_{n-1}.
    """
    return endo_derivation(ad(g, u), v)


def induced_leibniz(g):
    """BracketTable of o on the canonical basis of wedge^{n-1} g.

    Requires the Fundamental Identity; a violation raises with its witness.
    """
    require_fi(g)
    basis = wedge_basis(g.dim, g.n - 1)
    pos = {key: i + 1 for i, key in enumerate(basis)}

    def entry(a, b):
        w = fo_compose(g, Wedge.basis(g.dim, basis[a - 1]), Wedge.basis(g.dim, basis[b - 1]))
        return {pos[key]: val for key, val in w.c.items()}

    return BracketTable.from_function(len(basis), entry)


def derivation_constraint_rows(g):
    """Rows of the linear system expressing that A in gl(V) is a derivation
    of the n-bracket.  Unknowns are the m^2 entries a_{pq}, flattened with
    column (p-1)*m + (q-1)."""
    m = g.dim
    rows = []
    for j_tuple in wedge_basis(m, g.n):
        # coefficient of a_{pq} in (A [e_J] - sum_i [e_{j_1},..,A e_{j_i},..,e_{j_n}])_r
        for r in range(1, m + 1):
            row = [Fraction(0)] * (m * m)
            vec = g.basis_bracket(j_tuple)
            for k, c in vec.items():
                row[(r - 1) * m + (k - 1)] += c  # a_{rk} * c
            for i in range(g.n):
                for p in range(1, m + 1):
                    replaced = j_tuple[:i] + (p,) + j_tuple[i + 1 :]
                    c = g.basis_bracket(replaced).get(r, Fraction(0))
                    if c:
                        row[(p - 1) * m + (j_tuple[i] - 1)] -= c
            if any(row):
                rows.append(row)
    return rows


def derivation_basis(g):
    """Basis of Der(g) as Endos, computed as the exact nullspace of the
    linearized derivation condition."""
    m = g.dim
    rows = derivation_constraint_rows(g)
    if not rows:
        return [Endo.basis(m, p, q) for p in range(1, m + 1) for q in range(1, m + 1)]
    basis = []
    for flat in rational_nullspace(rows, m * m):
        basis.append(Endo([[flat[(p - 1) * m + (q - 1)] for q in range(1, m + 1)] for p in range(1, m + 1)]))
    return basis


def ad_derivation_check(g, suite="ad-derivation"):
    """ad_u is a derivation of the n-bracket for every basis fundamental
    object, checked on all increasing basis n-tuples.  This is the adjoint
    form of the Fundamental Identity."""
    report = Report(suite)
    for u_tuple in wedge_basis(g.dim, g.n - 1):
        a = ad(g, Wedge.basis(g.dim, u_tuple))
        for v_tuple in wedge_basis(g.dim, g.n):
            lhs = a.apply_sparse(g.basis_bracket(v_tuple))
            rhs = {}
            for i in range(g.n):
                for k, c in a.col(v_tuple[i]).items():
                    replaced = v_tuple[:i] + (k,) + v_tuple[i + 1 :]
                    for t, v in g.basis_bracket(replaced).items():
                        _sadd(rhs, t, c * v)
            diff = dict(lhs)
            for k, v in rhs.items():
                _sadd(diff, k, -v)
            if diff:
                report.add_fail(
                    "ad-derivation",
                    {"u": list(u_tuple), "v": list(v_tuple), "defect": vec_str(diff)},
                )
                return report
    report.add_pass("ad-derivation")
    return report
