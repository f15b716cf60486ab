"""Exact graded linear algebra over F_p.

Complexes are cohomologically graded with degree +1 differentials.  Basis
elements are arbitrary hashable keys; maps are nested dicts key -> key ->
coefficient.  Ranks are computed exactly mod p, densely in numpy for small
degree blocks and by sparse elimination above a size threshold.

Truncation bookkeeping: every complex carries a degree window on which its
basis enumeration is complete, plus a set of degrees flagged stable.  A
stable degree is one whose homology cannot change when the producing
truncation parameters grow; the flag is computed by the constructor that
built the complex, not here.
"""

from dataclasses import dataclass, field
import numpy as np

_DENSE_LIMIT = 1400


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if self.p < 3 or self.p % 2 == 0 or any(self.p % q == 0 for q in range(3, int(self.p ** 0.5) + 1, 2)):
            raise ValueError(f"p must be an odd prime, got {self.p}")

    def inv(self, a):
        return pow(a % self.p, self.p - 2, self.p)


def vec_addmul(dst, src, coeff, p):
    """dst += coeff * src, dropping zeros. dst, src: dict key->coeff."""
    if coeff % p == 0:
        return dst
    for k, c in src.items():
        new = (dst.get(k, 0) + coeff * c) % p
        if new:
            dst[k] = new
        else:
            dst.pop(k, None)
    return dst


class GradedBasis:
    """Finite list of basis keys per integer degree."""

    def __init__(self, by_degree):
        self.by_degree = {n: list(keys) for n, keys in sorted(by_degree.items()) if keys}
        self.degree_of = {}
        self.index_of = {}
        for n, keys in self.by_degree.items():
            for i, k in enumerate(keys):
                if k in self.degree_of:
                    raise ValueError(f"duplicate basis key {k!r}")
                self.degree_of[k] = n
                self.index_of[k] = i

    def degrees(self):
        return sorted(self.by_degree)

    def dim(self, n):
        return len(self.by_degree.get(n, ()))

    def total_dim(self):
        return len(self.degree_of)

    def keys(self):
        for keys in self.by_degree.values():
            yield from keys


class LinearMap:
    """Degree-homogeneous linear map given by columns: key -> {key: coeff}."""

    def __init__(self, columns, degree, p):
        self.degree = degree
        self.p = p
        self.columns = {}
        for k, col in columns.items():
            cleaned = {t: c % p for t, c in col.items() if c % p}
            if cleaned:
                self.columns[k] = cleaned

    def apply_key(self, k):
        return dict(self.columns.get(k, {}))

    def apply(self, vec):
        out = {}
        for k, c in vec.items():
            col = self.columns.get(k)
            if col:
                vec_addmul(out, col, c, self.p)
        return out

    def compose(self, other):
        """self after other (self . other)."""
        cols = {}
        for k in other.columns:
            img = self.apply(other.columns[k])
            if img:
                cols[k] = img
        return LinearMap(cols, self.degree + other.degree, self.p)

    def nnz(self):
        return sum(len(c) for c in self.columns.values())

    def is_zero(self):
        return not self.columns


class ChainComplex:
    def __init__(self, field_or_p, basis, diff_columns, label="", window=None,
                 stable=frozenset(), meta=None):
        self.field = field_or_p if isinstance(field_or_p, PrimeField) else PrimeField(field_or_p)
        self.p = self.field.p
        self.basis = basis if isinstance(basis, GradedBasis) else GradedBasis(basis)
        self.d = LinearMap(diff_columns, 1, self.p)
        self.label = label
        degs = self.basis.degrees()
        self.window = window if window is not None else ((degs[0], degs[-1]) if degs else (0, 0))
        self.stable = frozenset(stable)
        self.meta = dict(meta or {})
        for k, col in self.d.columns.items():
            n = self.basis.degree_of[k]
            for t in col:
                if self.basis.degree_of[t] != n + 1:
                    raise ValueError(f"differential not degree +1 at {k!r} -> {t!r}")

    def dim(self, n):
        return self.basis.dim(n)

    def degrees(self):
        return self.basis.degrees()

    def d_squared_defects(self, limit=10):
        """Basis keys whose d(d(key)) is nonzero; empty list means d^2 = 0."""
        bad = []
        for k in self.basis.keys():
            col = self.d.columns.get(k)
            if not col:
                continue
            out = self.d.apply(col)
            if out:
                bad.append((k, out))
                if len(bad) >= limit:
                    break
        return bad

    def d_matrix(self, n):
        """Matrix of d: C^n -> C^(n+1), shape (dim n+1, dim n)."""
        src = self.basis.by_degree.get(n, [])
        tgt_index = {k: i for i, k in enumerate(self.basis.by_degree.get(n + 1, []))}
        mat = np.zeros((len(tgt_index), len(src)), dtype=np.int64)
        for j, k in enumerate(src):
            for t, c in self.d.columns.get(k, {}).items():
                mat[tgt_index[t], j] = c
        return mat

    def d_rank(self, n):
        src = self.basis.by_degree.get(n, [])
        tgt = self.basis.by_degree.get(n + 1, [])
        if not src or not tgt:
            return 0
        if len(src) <= _DENSE_LIMIT and len(tgt) <= _DENSE_LIMIT:
            return rank_dense(self.d_matrix(n), self.p)
        cols = []
        tgt_index = {k: i for i, k in enumerate(tgt)}
        for k in src:
            col = self.d.columns.get(k)
            if col:
                cols.append({tgt_index[t]: c for t, c in col.items()})
        return rank_sparse(cols, self.p)

    def homology(self, degrees=None):
        if degrees is None:
            lo, hi = self.window
            degrees = [n for n in range(lo, hi + 1)]
        ranks = {}
        entries = []
        for n in degrees:
            for m in (n - 1, n):
                if m not in ranks:
                    ranks[m] = self.d_rank(m)
            dim = self.dim(n) - ranks[n] - ranks[n - 1]
            entries.append(HomologyEntry(n, dim, n in self.stable))
        return HomologyReport(self.label, self.p, entries, dict(self.meta))


@dataclass(frozen=True)
class HomologyEntry:
    degree: int
    dim: int
    stable: bool


@dataclass
class HomologyReport:
    label: str
    p: int
    entries: list
    meta: dict = field(default_factory=dict)

    def dims(self, stable_only=False):
        return {e.degree: e.dim for e in self.entries if e.stable or not stable_only}

    def stable_degrees(self):
        return sorted(e.degree for e in self.entries if e.stable)

    def rows(self):
        return [(e.degree, e.dim, e.stable) for e in sorted(self.entries, key=lambda e: e.degree)]


class ChainMap:
    """Map of complexes, degree shift allowed; columns: source key -> {target key: c}."""

    def __init__(self, source, target, columns, degree=0, label=""):
        if source.p != target.p:
            raise ValueError("field mismatch")
        self.source, self.target = source, target
        self.degree = degree
        self.label = label
        self.map = LinearMap(columns, degree, source.p)
        for k, col in self.map.columns.items():
            n = source.basis.degree_of[k]
            for t in col:
                if target.basis.degree_of[t] != n + degree:
                    raise ValueError(f"map not degree {degree} at {k!r} -> {t!r}")

    def defects(self, limit=10):
        """Keys where d_Y f - (-1)^deg f d_X is nonzero; empty means chain map."""
        sign = -1 if self.degree % 2 else 1
        bad = []
        for k in self.source.basis.keys():
            lhs = self.target.d.apply(self.map.apply_key(k))
            rhs = self.map.apply(self.source.d.apply_key(k))
            vec_addmul(lhs, rhs, -sign, self.source.p)
            if lhs:
                bad.append((k, lhs))
                if len(bad) >= limit:
                    break
        return bad

    def is_chain_map(self):
        return not self.defects(limit=1)


def cone(f):
    """Mapping cone of a degree-0 chain map; acyclic iff f is a quasi-iso."""
    if f.degree != 0:
        raise ValueError("cone needs a degree-0 map")
    X, Y = f.source, f.target
    by_degree = {}
    for k, n in X.basis.degree_of.items():
        by_degree.setdefault(n - 1, []).append(("cx", k))
    for k, n in Y.basis.degree_of.items():
        by_degree.setdefault(n, []).append(("cy", k))
    cols = {}
    p = X.p
    for k in X.basis.keys():
        col = {}
        for t, c in X.d.apply_key(k).items():
            col[("cx", t)] = (-c) % p
        for t, c in f.map.apply_key(k).items():
            col[("cy", t)] = c % p
        if col:
            cols[("cx", k)] = col
    for k in Y.basis.keys():
        col = {("cy", t): c for t, c in Y.d.apply_key(k).items()}
        if col:
            cols[("cy", k)] = col
    # degree n of the cone sees X at n+1 and Y at n; require both stable,
    # plus X at n so the connecting maps cannot shift under enlargement
    stable = frozenset(n for n in Y.stable if (n + 1) in X.stable and n in X.stable)
    lo = max(X.window[0], Y.window[0])
    hi = min(X.window[1], Y.window[1])
    return ChainComplex(X.field, GradedBasis(by_degree), cols,
                        label=f"cone({f.label})", window=(lo, hi), stable=stable)


def certify_quasi_iso(f):
    """(ok, report): cone homology vanishes on its stable window."""
    if f.defects(limit=1):
        return False, None
    c = cone(f)
    degs = sorted(c.stable)
    if not degs:
        return False, c.homology([])
    rep = c.homology(degs)
    ok = all(e.dim == 0 for e in rep.entries)
    return ok, rep


def rank_dense(mat, p):
    a = np.asarray(mat, dtype=np.int64) % p
    nrows, ncols = a.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = (a[r] * pow(int(a[r, c]), p - 2, p)) % p
        rest = np.nonzero(a[:, c])[0]
        rest = rest[rest != r]
        if rest.size:
            a[rest] = (a[rest] - np.outer(a[rest, c], a[r])) % p
        r += 1
    return r


def rank_sparse(cols, p):
    """Rank of a column-sparse matrix, cols = list of {row: coeff}."""
    pivots = {}  # pivot row -> reduced column {row: coeff}
    rank = 0
    for col in sorted(cols, key=len):
        col = dict(col)
        while col:
            r = min(col)
            if r in pivots:
                vec_addmul(col, pivots[r], -col[r] % p, p)
                continue
            inv = pow(col[r], p - 2, p)
            col = {i: (c * inv) % p for i, c in col.items()}
            pivots[r] = col
            rank += 1
            break
    return rank
