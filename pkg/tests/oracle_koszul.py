"""Independent Hochschild homology of k[x]/x^m via the small periodic complex.

The complex has one free rank-one piece A*e_n per homological level n with
  intdeg(e_2i)   = i*m*g
  intdeg(e_2i+1) = i*m*g + g
and differentials alternating between the commutator map (zero, the algebra
is generated by a single element) and multiplication by m*x^(m-1).  For an
odd generator only m = 2 is supported, where the classical answer makes both
differentials vanish.

Total cohomological degree of a*e_n is intdeg(a) + intdeg(e_n) - n, matching
the convention that a length-(n+1) word has degree (internal sum) - n.

Everything here is list-of-lists arithmetic so it shares nothing with the
package under test.  Written and frozen before the main build.
"""

from oracle_linalg import rank_mod_p


def _intdeg_e(n, m, g):
    i, odd = divmod(n, 2)
    return i * m * g + (g if odd else 0)


def _level_matrix(n, m, g, p):
    """Matrix of d: C_n -> C_(n-1) on the basis (1, x, ..., x^(m-1)) of A."""
    if n <= 0:
        return [[0] * m for _ in range(m)]
    if g % 2 == 1:
        if m != 2:
            raise NotImplementedError("odd generator only supported for m=2")
        return [[0] * m for _ in range(m)]
    if n % 2 == 1:
        # commutator by x: zero on a commutative algebra
        return [[0] * m for _ in range(m)]
    # multiplication by m * x^(m-1): x^j -> m x^(m-1+j) = 0 unless j = 0
    mat = [[0] * m for _ in range(m)]
    mat[m - 1][0] = m % p
    return mat


def hh_total_dims(m, g, p, nmax):
    """(dims per total degree, set of total degrees complete at this cap)."""
    assert m >= 2 and g >= 1 and p >= 3
    per_level = {}
    for n in range(nmax + 1):
        d_in = _level_matrix(n + 1, m, g, p)   # C_(n+1) -> C_n
        d_out = _level_matrix(n, m, g, p)      # C_n -> C_(n-1)
        hdim = m - rank_mod_p(d_in, p) - (rank_mod_p(d_out, p) if n > 0 else 0)
        # representatives: kernel/cokernel bases are spans of monomials here,
        # so the homology splits by internal degree; recover the split.
        ker_js = _kernel_monomials(d_out, m, p) if n > 0 else list(range(m))
        im_js = _image_monomials(d_in, m, p)
        live = [j for j in ker_js if j not in im_js]
        assert len(live) == hdim
        for j in live:
            total = j * g + _intdeg_e(n, m, g) - n
            per_level[total] = per_level.get(total, 0) + 1
    complete = _complete_totals(per_level, m, g, nmax)
    return per_level, complete


def _kernel_monomials(mat, m, p):
    """Monomial indices spanning ker(mat) when mat maps monomials to monomials."""
    out = []
    for j in range(m):
        if all(mat[i][j] % p == 0 for i in range(m)):
            out.append(j)
    return out


def _image_monomials(mat, m, p):
    out = set()
    for j in range(m):
        for i in range(m):
            if mat[i][j] % p:
                out.add(i)
    return out


def _complete_totals(per_level, m, g, nmax):
    if m * g == 2:
        # supports of every level sit in totals [0, 1]; nothing there closes
        return set(t for t in per_level if t < 0 or t > 1)
    lo = min(_intdeg_e(n, m, g) - n for n in range(nmax + 1, nmax + 5))
    totals = set(per_level)
    totals.update(range(min(per_level, default=0), max(per_level, default=0) + 1))
    return set(t for t in totals if t < lo)
