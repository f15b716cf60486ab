"""Cyclic category combinatorics on marked circles.

A morphism of marked circles [n] -> [m] is a homotopy class of degree 1
monotone circle maps taking the n+1 source marks onto the m+1 target
marks.  Such a class is stored as a seam point together with the m+1
preimage-arc sizes read counterclockwise starting from the seam.  The
seam matters even when arcs are empty: a map collapsing everything to
one target point still remembers where the collapsed circle was cut.

The module also provides the finite p-cyclic refinement (circles with p
distinguished marks), the connecting functors between the two and their
simplex subcategories, and two concrete certification routines used by
the test suite: the 2p-cell count of the restricted circle and the
truncated two-directional resolution of the constant module.
"""

from __future__ import annotations

import itertools
from bisect import bisect_right
from dataclasses import dataclass

__all__ = [
    "CyclicMorphism",
    "identity",
    "rotation",
    "tau",
    "compose",
    "enumerate_hom",
    "decompose",
    "monotone_to_simplex",
    "simplex_to_monotone",
    "ordinal_sum",
    "PCyclicMorphism",
    "distinguished_points",
    "pfold_identity",
    "pfold_tau",
    "pfold_rotation",
    "pfold_compose",
    "enumerate_pfold_hom",
    "pfold_decompose",
    "assemble_blocks",
    "split_blocks",
    "face_morphism",
    "degeneracy_morphism",
    "underlying_object",
    "jstar_cell_report",
    "resolution_check",
]

_HOM_GUARD = 8


def _compositions(total, parts):
    """Yield all tuples of `parts` nonnegative ints summing to `total`."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


@dataclass(frozen=True)
class CyclicMorphism:
    """Morphism [src] -> [dst] of the cyclic category.

    `sizes[j]` is the number of source marks sent to target mark j; the
    arcs are read counterclockwise starting at source mark `seam`, which
    is the first point of arc 0 (or the cut position if arc 0 is empty).
    """

    src: int
    dst: int
    seam: int
    sizes: tuple

    def __post_init__(self):
        if self.src < 0 or self.dst < 0:
            raise ValueError("objects must be nonnegative")
        if not 0 <= self.seam <= self.src:
            raise ValueError("seam out of range")
        if len(self.sizes) != self.dst + 1:
            raise ValueError("need one arc per target mark")
        if any(s < 0 for s in self.sizes) or sum(self.sizes) != self.src + 1:
            raise ValueError("arc sizes must be nonnegative and sum to src+1")

    # -- structure ----------------------------------------------------

    def arc(self, j):
        """Source marks sent to target mark j, in counterclockwise order."""
        start = self.seam + sum(self.sizes[:j])
        n1 = self.src + 1
        return tuple((start + t) % n1 for t in range(self.sizes[j]))

    def arcs(self):
        return tuple(self.arc(j) for j in range(self.dst + 1))

    def point_image(self, i):
        """Target mark whose arc contains source mark i."""
        offset = (i - self.seam) % (self.src + 1)
        prefix = list(itertools.accumulate(self.sizes))
        return bisect_right(prefix, offset)

    @property
    def is_arrow(self):
        """No empty arcs: surjective on marks, hence no degeneracies."""
        return all(s >= 1 for s in self.sizes)

    @property
    def fixes_basepoint(self):
        """Mark 0 lands on mark 0: membership in the simplex subcategory."""
        return self.point_image(0) == 0

    @property
    def seam_normalized(self):
        return self.seam == 0

    def __repr__(self):
        return "Cyc[%d->%d seam=%d sizes=%s]" % (
            self.src, self.dst, self.seam, list(self.sizes))


def identity(n):
    return CyclicMorphism(n, n, 0, (1,) * (n + 1))


def rotation(n, k):
    """k-th power of the rotation generator of Aut([n]).

    The generator sends the last mark to the front slot, so the induced
    action on cyclic tensor words is the usual last-entry-to-front
    rotation.
    """
    return CyclicMorphism(n, n, (-k) % (n + 1), (1,) * (n + 1))


def tau(n):
    return rotation(n, 1)


def compose(g, f):
    """Composite g after f, normalized back to seam-and-sizes form."""
    if f.dst != g.src:
        raise ValueError("endpoints do not match: %r then %r" % (f, g))
    mid1 = f.dst + 1
    # prefix sums of f's sizes in target-mark order; index by mark, not arc
    pref = [0]
    for s in f.sizes:
        pref.append(pref[-1] + s)
    seam = (f.seam + pref[g.seam]) % (f.src + 1)
    sizes = []
    for j in range(g.dst + 1):
        total = 0
        for i in g.arc(j):
            total += f.sizes[i]
        sizes.append(total)
    return CyclicMorphism(f.src, g.dst, seam, tuple(sizes))


def enumerate_hom(n, m, arrow_only=False, simplex_only=False):
    """All morphisms [n] -> [m], optionally restricted to a subcategory.

    `arrow_only` keeps the morphisms surjective on marks.  `simplex_only`
    keeps the basepoint-preserving ones (the simplex subcategory used by
    the inclusion functor, closed under composition).
    """
    if n > _HOM_GUARD or m > _HOM_GUARD:
        raise ValueError("hom-set enumeration capped at objects of index %d"
                         % _HOM_GUARD)
    out = []
    for sizes in _compositions(n + 1, m + 1):
        if arrow_only and not all(s >= 1 for s in sizes):
            continue
        for seam in range(n + 1):
            f = CyclicMorphism(n, m, seam, sizes)
            if simplex_only and not f.fixes_basepoint:
                continue
            out.append(f)
    return out


def decompose(f, rotate_target=False):
    """Split f into a rotation power and a simplex-subcategory part.

    Default: f = g . rotation(src, k) with g seam-normalized (the cut of
    g sits at the zeroth source mark).  With `rotate_target`:
    f = rotation(dst, k) . g with g basepoint-preserving.  Both splittings
    are unique; the tests verify this exhaustively.
    """
    if rotate_target:
        k = f.point_image(0)
        g = compose(rotation(f.dst, -k), f)
        return k, g
    k = (-f.seam) % (f.src + 1)
    g = CyclicMorphism(f.src, f.dst, 0, f.sizes)
    return k, g


# -- dictionary with monotone maps -----------------------------------

def monotone_to_simplex(psi, n):
    """Basepoint-preserving morphism encoded by a monotone tuple.

    `psi` is a weakly increasing tuple with values in 0..n; entry j marks
    the last source point of the preimage arc of target mark j, with the
    arc of mark 0 wrapping backwards through the basepoint.
    """
    m = len(psi) - 1
    if any(psi[j] > psi[j + 1] for j in range(m)) or not 0 <= psi[0] <= psi[-1] <= n:
        raise ValueError("not a monotone tuple into 0..%d" % n)
    sizes = [psi[0] - (psi[-1] - (n + 1))]
    sizes += [psi[j] - psi[j - 1] for j in range(1, m + 1)]
    seam = (psi[-1] + 1) % (n + 1)
    return CyclicMorphism(n, m, seam, tuple(sizes))


def simplex_to_monotone(f):
    """Inverse of monotone_to_simplex on basepoint-preserving morphisms."""
    if not f.fixes_basepoint:
        raise ValueError("morphism does not preserve the basepoint")
    n1 = f.src + 1
    lift = f.seam - n1 if f.seam > 0 else 0
    psi = []
    run = lift - 1
    for s in f.sizes:
        run += s
        psi.append(run)
    return tuple(psi)


def ordinal_sum(parts, sources, targets):
    """Concatenate basepoint-preserving morphisms along marked blocks.

    `parts[t]` maps [sources[t]] -> [targets[t]]; the result maps the
    concatenated circle [sum+p-1] -> [sum+p-1] by acting blockwise, with
    an arc that wraps inside block t spilling its tail into the leading
    mark of block t+1.
    """
    if not (len(parts) == len(sources) == len(targets)):
        raise ValueError("mismatched block data")
    n = sum(sources) + len(parts) - 1
    m = sum(targets) + len(parts) - 1
    src_base = [sum(sources[:t]) + t for t in range(len(parts))]
    dst_base = [sum(targets[:t]) + t for t in range(len(parts))]
    psi = []
    for t, f in enumerate(parts):
        if (f.src, f.dst) != (sources[t], targets[t]):
            raise ValueError("block %d has wrong endpoints" % t)
        local = simplex_to_monotone(f)
        psi.extend(src_base[t] + v for v in local)
    return monotone_to_simplex(tuple(psi), n)


# -- the finite p-cyclic refinement -----------------------------------

def distinguished_points(kvec):
    """Positions of the p distinguished marks on the underlying circle."""
    out = []
    run = 0
    for t, k in enumerate(kvec):
        out.append(run + t)
        run += k
    return tuple(out)


def underlying_object(kvec):
    return sum(kvec) + len(kvec) - 1


@dataclass(frozen=True)
class PCyclicMorphism:
    """Morphism of marked circles with p distinguished marks.

    Wraps the underlying cyclic morphism and checks that distinguished
    marks land bijectively on distinguished marks; monotonicity then
    forces the induced permutation to be a cyclic rotation, recorded in
    `rotation_class`.
    """

    src: tuple
    dst: tuple
    circle: CyclicMorphism

    def __post_init__(self):
        p = len(self.src)
        if p != len(self.dst) or p < 1:
            raise ValueError("block tuples must have equal positive length")
        if any(k < 0 for k in self.src) or any(k < 0 for k in self.dst):
            raise ValueError("block sizes must be nonnegative")
        if (self.circle.src, self.circle.dst) != (
                underlying_object(self.src), underlying_object(self.dst)):
            raise ValueError("underlying morphism has wrong endpoints")
        ds = distinguished_points(self.src)
        dt = set(distinguished_points(self.dst))
        images = [self.circle.point_image(x) for x in ds]
        if set(images) != dt:
            raise ValueError(
                "distinguished marks must map bijectively onto "
                "distinguished marks: %r" % (images,))

    @property
    def rotation_class(self):
        """r in Z/p with distinguished mark t landing on mark t+r."""
        p = len(self.src)
        ds = distinguished_points(self.src)
        dt = list(distinguished_points(self.dst))
        r = dt.index(self.circle.point_image(ds[0]))
        for t in range(p):
            if self.circle.point_image(ds[t]) != dt[(t + r) % p]:
                raise ValueError("distinguished marks not rotated uniformly")
        return r

    @property
    def fixes_distinguished(self):
        return self.rotation_class == 0

    @property
    def is_arrow(self):
        return self.circle.is_arrow

    def __repr__(self):
        return "PCyc[%s->%s %r]" % (list(self.src), list(self.dst), self.circle)


def pfold_identity(kvec):
    return PCyclicMorphism(kvec, kvec, identity(underlying_object(kvec)))


def _rotate_tuple(kvec, r):
    p = len(kvec)
    r %= p
    return kvec[-r:] + kvec[:-r] if r else kvec


def pfold_tau(kvec):
    """Block rotation [k_1..k_p] -> [k_p,k_1..k_{p-1}] moving the last
    block (its distinguished mark and trailing marks) to the front."""
    n = underlying_object(kvec)
    shift = kvec[-1] + 1
    return PCyclicMorphism(
        kvec, _rotate_tuple(kvec, 1),
        CyclicMorphism(n, n, (n + 1 - shift) % (n + 1), (1,) * (n + 1)))


def pfold_rotation(kvec, r):
    """Composite of r block rotations starting at kvec."""
    p = len(kvec)
    out = pfold_identity(kvec)
    for _ in range(r % p):
        out = pfold_compose(pfold_tau(out.dst), out)
    return out


def pfold_compose(g, f):
    if f.dst != g.src:
        raise ValueError("block endpoints do not match")
    return PCyclicMorphism(f.src, g.dst, compose(g.circle, f.circle))


def enumerate_pfold_hom(kvec, kvec2, arrow_only=False, fixing_only=False):
    """All p-cyclic morphisms kvec -> kvec2, by filtering the underlying
    hom-set through the distinguished-mark condition."""
    if len(kvec) != len(kvec2):
        raise ValueError("block tuples must have equal length")
    if sum(kvec) > _HOM_GUARD or sum(kvec2) > _HOM_GUARD:
        raise ValueError("p-cyclic enumeration capped at total size %d"
                         % _HOM_GUARD)
    out = []
    for f in enumerate_hom(underlying_object(kvec), underlying_object(kvec2),
                           arrow_only=arrow_only):
        try:
            pf = PCyclicMorphism(kvec, kvec2, f)
        except ValueError:
            continue
        if fixing_only and not pf.fixes_distinguished:
            continue
        out.append(pf)
    return out


def pfold_decompose(f):
    """Split f as (block rotation) after (distinguished-mark-fixing part).

    Returns (r, fprime) with fprime: src -> rotate^{-r}(dst) fixing every
    distinguished mark and f = pfold_rotation(fprime.dst, r) . fprime.
    """
    r = f.rotation_class
    mid = _rotate_tuple(f.dst, -r)
    s = pfold_rotation(mid, r)
    # rotations are invertible; unwind by composing with the complement
    p = len(f.src)
    sinv = pfold_rotation(f.dst, (p - r) % p)
    fprime = pfold_compose(sinv, f)
    back = pfold_compose(s, fprime)
    if back != f:
        raise AssertionError("rotation unwinding failed for %r" % (f,))
    return r, fprime


def assemble_blocks(parts, sources, targets):
    """The subcategory inclusion: blockwise basepoint-preserving
    morphisms assemble to a p-cyclic morphism fixing every distinguished
    mark.

    Built directly from arc data rather than through the monotone
    dictionary: the arc of distinguished target mark t picks up the tail
    of block t-1's wrapped arc followed by the head of block t's, so the
    two functor routes into the cyclic category can be compared as
    honestly separate computations.
    """
    p = len(parts)
    if not (p == len(sources) == len(targets)):
        raise ValueError("mismatched block data")
    tails, heads, bodies = [], [], []
    for t, f in enumerate(parts):
        if (f.src, f.dst) != (sources[t], targets[t]):
            raise ValueError("block %d has wrong endpoints" % t)
        if not f.fixes_basepoint:
            raise ValueError("block %d does not preserve the basepoint" % t)
        wrap = f.arc(0)
        cut = wrap.index(0)
        tails.append(cut)                 # marks riding past the block end
        heads.append(len(wrap) - cut)     # basepoint and its successors
        bodies.append([f.sizes[j] for j in range(1, f.dst + 1)])
    src_base = [sum(sources[:t]) + t for t in range(p)]
    sizes = []
    for t in range(p):
        sizes.append(tails[t - 1] + heads[t])
        sizes.extend(bodies[t])
    if tails[-1]:
        seam = src_base[-1] + parts[-1].arc(0)[0]
    else:
        seam = 0
    n = sum(sources) + p - 1
    m = sum(targets) + p - 1
    return PCyclicMorphism(tuple(sources), tuple(targets),
                           CyclicMorphism(n, m, seam, tuple(sizes)))


def split_blocks(f):
    """Inverse of assemble_blocks on distinguished-mark-fixing morphisms."""
    if not f.fixes_distinguished:
        raise ValueError("only distinguished-fixing morphisms split")
    p = len(f.src)
    src_base = distinguished_points(f.src)
    dst_base = distinguished_points(f.dst)
    psi = simplex_to_monotone(f.circle)
    parts = []
    for t in range(p):
        lo = dst_base[t]
        hi = dst_base[t + 1] if t + 1 < p else f.circle.dst + 1
        local = tuple(psi[j] - src_base[t] for j in range(lo, hi))
        parts.append(monotone_to_simplex(local, f.src[t]))
    return parts


def face_morphism(kvec, l, i):
    """Single-merge face gluing marks D_l+i and D_l+i+1 of block l.

    Needs k_l >= 1; for i = k_l the merged pair crosses into the next
    distinguished mark, mirroring the wrapped term of bar differentials.
    """
    p = len(kvec)
    if not 0 <= l < p or kvec[l] == 0 or not 0 <= i <= kvec[l]:
        raise ValueError("no face at block %d slot %d of %r" % (l, i, kvec))
    n = underlying_object(kvec)
    g = distinguished_points(kvec)[l] + i
    kvec2 = tuple(k - (t == l) for t, k in enumerate(kvec))
    if g == n:
        # final slot of the last block: the merged pair wraps through the
        # zeroth mark, so the doubled arc sits at the seam
        circ = CyclicMorphism(n, n - 1, n, (2,) + (1,) * (n - 1))
    else:
        circ = CyclicMorphism(n, n - 1, 0,
                              tuple(2 if y == g else 1 for y in range(n)))
    return PCyclicMorphism(kvec, kvec2, circ)


def degeneracy_morphism(kvec, l, i):
    """Mark-adding morphism [kvec - e_l] -> [kvec] with an empty arc at
    the (i+1)-th ordinary mark of block l (0 <= i < k_l)."""
    p = len(kvec)
    if not 0 <= l < p or kvec[l] == 0 or not 0 <= i < kvec[l]:
        raise ValueError("no degeneracy at block %d slot %d of %r"
                         % (l, i, kvec))
    n = underlying_object(kvec)
    empty_at = distinguished_points(kvec)[l] + i + 1
    sizes = tuple(0 if y == empty_at else 1 for y in range(n + 1))
    kvec1 = tuple(k - (t == l) for t, k in enumerate(kvec))
    return PCyclicMorphism(kvec1, kvec, CyclicMorphism(n - 1, n, 0, sizes))


# -- cell count of the restricted circle ------------------------------

def _multidegrees(p, total):
    return [kv for kv in _compositions(total, p)]


def _circle_cells(kvec):
    """Elements of the restricted circle in multidegree kvec: morphisms
    from the one-mark circle into the underlying circle."""
    n = underlying_object(kvec)
    return enumerate_hom(0, n)


def _degenerate_cells(kvec):
    """Subset of multidegree kvec hit by some degeneracy from below."""
    out = set()
    p = len(kvec)
    for l in range(p):
        if kvec[l] == 0:
            continue
        kvec1 = tuple(k - (t == l) for t, k in enumerate(kvec))
        for i in range(kvec[l]):
            s = degeneracy_morphism(kvec, l, i).circle
            for y in _circle_cells(kvec1):
                out.add(compose(s, y))
    return out


def jstar_cell_report(p, max_total=2):
    """Count nondegenerate cells of the restricted circle by multidegree.

    Returns a dict mapping each multidegree of total size <= max_total to
    its nondegenerate cell count, plus the grand total.
    """
    counts = {}
    total = 0
    for size in range(max_total + 1):
        for kvec in _multidegrees(p, size):
            cells = _circle_cells(kvec)
            degen = _degenerate_cells(kvec)
            live = [x for x in cells if x not in degen]
            counts[kvec] = len(live)
            total += len(live)
    return {"counts": counts, "total": total}


# -- truncated resolution of the constant module ----------------------

def _action_sign(kvec):
    # Koszul sign for rotating the last block past the others, graded by
    # the block sizes; forced by requiring the rotation to commute with
    # the vertical differential.
    return -1 if (kvec[-1] * sum(kvec[:-1])) % 2 else 1


def _tau_on_basis(f):
    """Signed block-rotation action on a basis morphism (postcompose)."""
    sign = _action_sign(f.dst)
    return sign, pfold_compose(pfold_tau(f.dst), f)


def _vertical_image(f):
    """Single-merge boundary of a basis morphism, as {morphism: coeff}."""
    out = {}
    kv = f.dst
    for l in range(len(kv)):
        if kv[l] == 0:
            continue
        prefix = sum(kv[:l])
        for i in range(kv[l] + 1):
            sign = -1 if (i + prefix) % 2 else 1
            g = pfold_compose(face_morphism(kv, l, i), f)
            out[g] = out.get(g, 0) + sign
    return {k: v for k, v in out.items() if v}


def resolution_check(p, kvec, depth, prime=3):
    """Certify the truncated two-directional resolution of the constant
    module at a fixed source object.

    Builds the complex with basis (column j, morphism kvec -> kvec2) for
    j <= depth and |kvec2| <= depth; vertical differential is the signed
    single-merge boundary, horizontal differential alternates rotation
    minus identity with the rotation norm.  Returns per-degree homology
    dimensions over F_prime, the expected window, and the row
    factorization and fixing-part collapse checks.
    """
    if sum(kvec) > 4 or depth > 4:
        raise ValueError("resolution check capped at total size 4, depth 4")
    from . import chaincore

    targets = [kv for size in range(depth + 1)
               for kv in _multidegrees(p, size)]
    homs = {kv: enumerate_pfold_hom(kvec, kv) for kv in targets}

    by_degree = {}
    columns = {}
    for j in range(depth + 1):
        for kv in targets:
            for f in homs[kv]:
                by_degree.setdefault(-(j + sum(kv)), []).append(("c", j, f))
                entry = {}
                for g, c in _vertical_image(f).items():
                    entry[("c", j, g)] = entry.get(("c", j, g), 0) + c
                if j >= 1:
                    hsign = -1 if sum(kv) % 2 else 1
                    if j % 2 == 1:
                        sgn, tf = _tau_on_basis(f)
                        entry[("c", j - 1, tf)] = (
                            entry.get(("c", j - 1, tf), 0) + hsign * sgn)
                        entry[("c", j - 1, f)] = (
                            entry.get(("c", j - 1, f), 0) - hsign)
                    else:
                        g, acc = f, 1
                        for _ in range(p):
                            entry[("c", j - 1, g)] = (
                                entry.get(("c", j - 1, g), 0) + hsign * acc)
                            sgn, g = _tau_on_basis(g)
                            acc *= sgn
                columns[("c", j, f)] = entry

    stable = frozenset(range(-(depth - 1), 1))
    cx = chaincore.ChainComplex(
        prime, by_degree, columns,
        label="resolution p=%d kvec=%s" % (p, list(kvec)), stable=stable)

    defects = cx.d_squared_defects()
    report = cx.homology(sorted(stable))
    dims = {-deg: dim for deg, dim in report.dims().items()}
    expected = {h: (1 if h == 0 else 0) for h in range(depth)}

    rows_ok = all(_row_factorization_ok(p, homs, targets, height, prime)
                  for height in range(depth + 1))
    vert = _fixing_part_homology(p, kvec, depth, prime, targets, homs)

    ok = (not defects and dims == expected and rows_ok
          and vert == expected)
    return {
        "ok": ok,
        "square_zero": not defects,
        "homology": dims,
        "expected": expected,
        "rows_factor": rows_ok,
        "fixing_part_homology": vert,
    }


def _row_factorization_ok(p, homs, targets, height, prime):
    """Check that one horizontal row splits as (fixing part) x (free
    rank-one rotation module): relabel each basis morphism by its unique
    decomposition and compare the rotation action with the regular one."""
    row = [f for kv in targets if sum(kv) == height for f in homs[kv]]
    seen = {}
    for f in row:
        r, fprime = pfold_decompose(f)
        key = (r, fprime)
        if key in seen:
            return False
        seen[key] = f
    if len(seen) != len(row):
        return False
    # rotation acts freely: it bumps r by one and keeps the fixing part
    for (r, fprime), f in seen.items():
        _, tf = _tau_on_basis(f)
        r2, fprime2 = pfold_decompose(tf)
        if r2 != (r + 1) % p or fprime2 != fprime:
            return False
    return True


def _fixing_part_homology(p, kvec, depth, prime, targets, homs):
    """Homology of the distinguished-fixing subcomplex (single column),
    which totalizes a product of simplices and must collapse to one
    class in degree zero."""
    from . import chaincore

    by_degree = {}
    cols = {}
    for kv in targets:
        for f in homs[kv]:
            if not f.fixes_distinguished:
                continue
            by_degree.setdefault(-sum(kv), []).append(("v", f))
            cols[("v", f)] = {("v", g): c
                              for g, c in _vertical_image(f).items()
                              if g.fixes_distinguished}
    cx = chaincore.ChainComplex(
        prime, by_degree, cols,
        label="fixing part", stable=frozenset(range(-(depth - 1), 1)))
    if cx.d_squared_defects():
        return None
    rep = cx.homology(sorted(range(-(depth - 1), 1)))
    return {-deg: dim for deg, dim in rep.dims().items()}
