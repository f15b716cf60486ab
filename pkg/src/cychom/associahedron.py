"""Cellular chains of the associahedra as a dg operad.

Cells of the arity-d polytope are planar rooted trees with d leaves and all
vertices of arity >= 2; the top cell is the d-corolla.  A tree is a nested
tuple of children with None for leaves; the 1-leaf tree is the bare None,
which doubles as the arity-1 identity decoration.

Grading is cohomological: deg(T) = sum over vertices of (2 - arity), so the
d-corolla sits in degree 2-d and binary trees in degree 0.  The boundary is
defined on corollas by grouping m consecutive children (sign from
SignConvention.boundary_exp) and extended by the Leibniz rule in depth-first
vertex order; grafting carries the block-reordering Koszul sign that makes
the Leibniz rule exact.
"""

import itertools

from .ainf import SignConvention

LEAF = None
UNIT = "unit"  # 0-ary cell of the unital extension


def corolla(d):
    if d == 1:
        return LEAF
    return (LEAF,) * d


def is_tree(T):
    return T is LEAF or (isinstance(T, tuple) and len(T) >= 2 and all(is_tree(c) for c in T))


def leaf_count(T):
    if T is LEAF:
        return 1
    return sum(leaf_count(c) for c in T)


def tree_degree(T):
    if T is LEAF:
        return 0
    return 2 - len(T) + sum(tree_degree(c) for c in T)


def tree_format(T):
    if T is LEAF:
        return "*"
    return "(" + " ".join(tree_format(c) for c in T) + ")"


def enumerate_cells(d, degree=None):
    """All trees with d leaves, optionally restricted to one degree."""
    trees = _trees(d)
    if degree is None:
        return trees
    return [T for T in trees if tree_degree(T) == degree]


def _trees(d, _cache={}):
    if d in _cache:
        return _cache[d]
    if d == 1:
        out = [LEAF]
    else:
        out = []
        for k in range(2, d + 1):
            for split in _compositions(d, k):
                for kids in itertools.product(*[_trees(s) for s in split]):
                    out.append(tuple(kids))
    _cache[d] = out
    return out


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def boundary(T, p):
    """Boundary of a single tree as {tree: coeff mod p}."""
    out = {}
    if T is LEAF:
        return out
    k = len(T)
    for m in range(2, k):
        predeg = 0
        for u in range(0, k - m + 1):
            newT = T[:u] + (tuple(T[u:u + m]),) + T[u + m:]
            # new vertex moves past the subtrees of the first u children
            e = SignConvention.boundary_exp(k, u, m) + m * predeg
            out[newT] = (out.get(newT, 0) + (-1 if e % 2 else 1)) % p
            predeg += tree_degree(T[u])
    prefix = k % 2  # |corolla_k| = 2-k
    for i, child in enumerate(T):
        if child is not LEAF:
            s = -1 if prefix % 2 else 1
            for S, c in boundary(child, p).items():
                newT = T[:i] + (S,) + T[i + 1:]
                out[newT] = (out.get(newT, 0) + s * c) % p
        prefix += tree_degree(child)
    return {t: c for t, c in out.items() if c}


def boundary_chain(chain, p):
    out = {}
    for T, c in chain.items():
        for S, c2 in boundary(T, p).items():
            out[S] = (out.get(S, 0) + c * c2) % p
    return {t: c for t, c in out.items() if c}


def _tokens(T):
    """Depth-first token stream: ('v', arity) and ('leaf',)."""
    if T is LEAF:
        yield ("leaf",)
        return
    yield ("v", len(T))
    for c in T:
        yield from _tokens(c)


def _degree_after_leaf(T, i):
    """Sum of vertex degrees strictly after the i-th leaf (1-indexed)."""
    seen = 0
    acc = 0
    counting = False
    for tok in _tokens(T):
        if tok[0] == "leaf":
            seen += 1
            if seen == i:
                counting = True
        elif counting:
            acc += 2 - tok[1]
    return acc


def graft(T, i, S, p):
    """Operadic composition T o_i S (leaf i, 1-indexed) as {tree: coeff}.

    S may be UNIT: plugging the 0-ary unit collapses an arity-2 parent and
    kills everything else.
    """
    if S is UNIT:
        R = _graft_unit(T, i)
        return {} if R is _DEAD else {R: 1}
    sign = -1 if (tree_degree(S) * _degree_after_leaf(T, i)) % 2 else 1
    return {_graft_tree(T, [i], S): sign % p}


def _graft_tree(T, box, S):
    if T is LEAF:
        box[0] -= 1
        if box[0] == 0:
            return S if S is not LEAF else LEAF
        return T
    out = []
    done = False
    for c in T:
        if done or box[0] == 0:
            out.append(c)
            continue
        out.append(_graft_tree(c, box, S))
        if box[0] == 0:
            done = True
    return tuple(out)


_DEAD = object()


def _graft_unit(T, i):
    if T is LEAF:
        return _DEAD  # identity cannot absorb the unit here
    kids = []
    seen = 0
    hit = -1
    for idx, c in enumerate(T):
        n = leaf_count(c)
        if seen < i <= seen + n:
            hit = idx
        seen += n
        kids.append(c)
    c = kids[hit]
    local = i - sum(leaf_count(k) for k in kids[:hit])
    if c is LEAF:
        if len(T) == 2:  # arity-2 vertex collapses onto its sibling
            return kids[1 - hit]
        return _DEAD  # arity >= 3 would shift the degree; the unit kills it
    sub = _graft_unit(c, local)
    if sub is _DEAD:
        return _DEAD
    return T[:hit] + (sub,) + T[hit + 1:]


def graft_chain(a, i, b, p):
    out = {}
    for T, c1 in a.items():
        for S, c2 in b.items():
            for R, c3 in graft(T, i, S, p).items():
                out[R] = (out.get(R, 0) + c1 * c2 * c3) % p
    return {t: c for t, c in out.items() if c}


def evaluate_on_algebra(T, algebra, word):
    """Value of the operator of T on a tuple of basis names: {name: coeff}."""
    A = algebra
    if T is LEAF:
        if len(word) != 1:
            raise ValueError("leaf takes one input")
        return {word[0]: 1}
    sizes = [leaf_count(c) for c in T]
    if sum(sizes) != len(word):
        raise ValueError("arity mismatch")
    blocks = []
    pos = 0
    exp = 0
    prefix_deg = 0
    for c, s in zip(T, sizes):
        blk = word[pos:pos + s]
        exp += tree_degree(c) * prefix_deg
        prefix_deg += sum(A.degree[x] for x in blk)
        blocks.append((c, blk))
        pos += s
    sign = -1 if exp % 2 else 1
    words = [((), 1)]
    for c, blk in blocks:
        val = evaluate_on_algebra(c, A, blk)
        new = []
        for args, coeff in words:
            for name, c2 in val.items():
                new.append((args + (name,), coeff * c2 % A.p))
        words = new
        if not words:
            return {}
    out = {}
    for args, coeff in words:
        for name, c2 in A.mu(args).items():
            out[name] = (out.get(name, 0) + sign * coeff * c2) % A.p
    return {k: c for k, c in out.items() if c}


def operator_table(chain, algebra, arity):
    """Explicit operator of a chain: {input word: {name: coeff}}."""
    out = {}
    for word in itertools.product(algebra.names, repeat=arity):
        acc = {}
        for T, c in chain.items():
            for name, c2 in evaluate_on_algebra(T, algebra, word).items():
                acc[name] = (acc.get(name, 0) + c * c2) % algebra.p
        acc = {k: v for k, v in acc.items() if v}
        if acc:
            out[word] = acc
    return out


def dg_map_defects(algebra, arity, limit=5):
    """Check eval(boundary corolla) = mu1.eval - (-1)^{|corolla|} eval.d_tensor.

    Returns offending (word, residual) pairs; empty list certifies the
    dg-operad-map property at this arity for this algebra.
    """
    A = algebra
    T = corolla(arity)
    bd = boundary(T, A.p)
    bad = []
    sgn_T = -1 if tree_degree(T) % 2 else 1
    for word in itertools.product(A.names, repeat=arity):
        lhs = {}
        for S, c in bd.items():
            for name, c2 in evaluate_on_algebra(S, A, word).items():
                lhs[name] = (lhs.get(name, 0) + c * c2) % A.p
        rhs = {}
        for mid, c in evaluate_on_algebra(T, A, word).items():
            for name, c2 in A.mu((mid,)).items():
                rhs[name] = (rhs.get(name, 0) + c * c2) % A.p
        pre = 0
        for l in range(arity):
            for mid, c in A.mu((word[l],)).items():
                w2 = word[:l] + (mid,) + word[l + 1:]
                s = -1 if pre % 2 else 1
                for name, c2 in evaluate_on_algebra(T, A, w2).items():
                    rhs[name] = (rhs.get(name, 0) - sgn_T * s * c * c2) % A.p
            pre += A.degree[word[l]]
        res = dict(lhs)
        for name, c in rhs.items():
            res[name] = (res.get(name, 0) - c) % A.p
        res = {k: c for k, c in res.items() if c}
        if res:
            bad.append((word, res))
            if len(bad) >= limit:
                break
    return bad
