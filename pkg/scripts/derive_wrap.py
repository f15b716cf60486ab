"""Derive anchor face signs for the marked word complexes.

The rotation with its literal sign has order p, so a rotation-
equivariant differential is determined by its anchor part: faces whose
run touches slot 0 (wrap family) or lies inside the first block
(interior family).  All other faces are rotation conjugates.  This
script models both anchor exponents as unknown GF(2) quadratic forms in
count parities and split degree sums, assembles square-zero cancellation
equations over several small algebras at p in {1, 3, 5}, and solves.

Run:  python3 scripts/derive_wrap.py
"""

import sys

import numpy as np

sys.path.insert(0, "src")

from cychom.ainf import builtin_algebra
from cychom import hochschild as H

W_QTY = ["n", "r", "h", "K0", "Kp", "tl", "md", "hd", "r0", "ri", "rx"]
I_QTY = ["u", "m", "n", "K0", "i0", "pre", "po0", "rst"]
W_LABELS = (["w:1"] + [f"w:{q}" for q in W_QTY] +
            [f"w:{a}*{b}" for i, a in enumerate(W_QTY)
             for b in W_QTY[i + 1:]])
I_LABELS = (["i:1"] + [f"i:{q}" for q in I_QTY] +
            [f"i:{a}*{b}" for i, a in enumerate(I_QTY)
             for b in I_QTY[i + 1:]])
LABELS = W_LABELS + I_LABELS
NW, NI = len(W_LABELS), len(I_LABELS)
NV = NW + NI


def _marks(kvec):
    out, run = [], 0
    for t, k in enumerate(kvec):
        out.append(run + t)
        run += k
    return tuple(out)


def quad(vals):
    q = [v % 2 for v in vals]
    k = len(q)
    return [1] + q + [q[i] * q[j] for i in range(k)
                      for j in range(i + 1, k)]


def w_vec(n, r, h, K0, Kp, tl, md, hd, r0, ri, rx):
    return tuple(quad([n, r, h, K0, Kp, tl, md, hd, r0, ri, rx])) \
        + (0,) * NI


def i_vec(u, m, n, K0, i0, pre, po0, rst):
    return (0,) * NW + tuple(quad([u, m, n, K0, i0, pre, po0, rst]))


def rot1(alg, kvec, names):
    p = len(kvec)
    cut = _marks(kvec)[p - 1]
    marks = set(_marks(kvec))
    blk = alg.degree[names[cut]] + sum(
        alg.degree[names[i]] - 1 for i in range(cut + 1, len(names)))
    rest = sum(alg.degree[names[i]] - (0 if i in marks else 1)
               for i in range(cut))
    sign = -1 if (blk * rest) % 2 else 1
    return ((kvec[p - 1],) + kvec[:p - 1], names[cut:] + names[:cut], sign)


def anchor_faces(alg, kvec, names):
    """Anchor faces as (lifted coeff, feature vector, target word)."""
    p = len(kvec)
    n1 = len(names)
    marks = _marks(kvec)
    marked = set(marks)
    half = alg.p // 2
    res = []

    def red(lo, hi):
        s = 0
        for i in range(lo, hi):
            d = alg.degree[names[i]]
            s += d if i in marked else d - 1
        return s

    def lift(c):
        c %= alg.p
        return c - alg.p if c > half else c

    K0 = kvec[0]
    Kp = kvec[p - 1]
    for m in alg.arities():
        if m > n1:
            continue
        for u in range(1, K0 - m + 2):
            img = alg.mu(names[u:u + m])
            if not img:
                continue
            vec = i_vec(u, m, n1 - 1, K0, alg.degree[names[0]],
                        red(1, u), red(u + m, K0 + 1), red(K0 + 1, n1))
            kvec2 = (K0 - m + 1,) + kvec[1:]
            rest = names[:u] + names[u + m:]
            for out, c in img.items():
                res.append((lift(c), vec,
                            (kvec2, rest[:u] + (out,) + rest[u:])))
        for r in range(min(m - 1, Kp if p > 1 else K0) + 1):
            h = m - 1 - r
            if h > K0 or (p == 1 and r + h > K0):
                continue
            args = names[n1 - r:] + (names[0],) + names[1:h + 1]
            img = alg.mu(args)
            if not img:
                continue
            bstop = K0 + 1 if p > 1 else n1 - r
            ri = sum(alg.degree[names[marks[t]]] for t in range(1, p))
            vec = w_vec(n1 - 1, r, h, K0, Kp, red(n1 - r, n1),
                        alg.degree[names[0]], red(1, h + 1),
                        red(h + 1, bstop), ri, red(bstop, n1 - r) - ri)
            kvec2 = (K0 - h,) + kvec[1:p - 1] + (Kp - r,) \
                if p > 1 else (K0 - h - r,)
            rest = names[h + 1:n1 - r]
            for out, c in img.items():
                res.append((lift(c), vec, (kvec2, (out,) + rest)))
    return res


def conj_faces(alg, kvec, names):
    """All faces as {target: [(coeff, const exp, vec)]} via conjugation."""
    p = len(kvec)
    vs = [(kvec, names, 1)]
    for _ in range(p - 1):
        k2, n2, s = rot1(alg, *vs[-1][:2])
        vs.append((k2, n2, vs[-1][2] * s))
    out = {}
    for l in range(p):
        vk, vn, sv = vs[(p - l) % p]
        for c, vec, (tk, tn) in anchor_faces(alg, vk, vn):
            st = 1
            for _ in range(l):
                tk, tn, s1 = rot1(alg, tk, tn)
                st *= s1
            e = 1 if sv * st < 0 else 0
            out.setdefault((tk, tn), []).append((c, e, vec))
    return out


def classes(terms):
    agg = {}
    for c, e, vec in terms:
        agg[(vec, e)] = agg.get((vec, e), 0) + c
    return {k: v for k, v in agg.items() if v != 0}


class GF2System:
    def __init__(self):
        self.rows = []
        self.tags = []
        self.hard = []
        self.big = []

    def require_cancel(self, cls, tag, mod):
        if not cls:
            return
        if len(cls) == 1:
            self.hard.append(("lone", tag, cls))
            return
        if len(cls) == 2:
            (k1, c1), (k2, c2) = cls.items()
            vec = [(a + b) % 2 for a, b in zip(k1[0], k2[0])]
            if c1 == -c2:
                self.add(vec, (k1[1] + k2[1]) % 2, tag)
            elif c1 == c2:
                self.add(vec, (k1[1] + k2[1] + 1) % 2, tag)
            else:
                self.hard.append(("mag", tag, cls))
            return
        self.big.append((mod, [(c, e, vec) for (vec, e), c in cls.items()],
                         tag))

    def add(self, vec, rhs, tag=None):
        if not any(vec) and rhs % 2:
            self.hard.append(("zero=1", tag))
        self.rows.append((list(vec), rhs % 2))
        self.tags.append(tag)

    def solve(self):
        if self.hard:
            return None, None
        uniq = sorted({(tuple(vec), rhs) for vec, rhs in self.rows})
        M = np.zeros((max(len(uniq), 1), NV + 1), dtype=np.uint8)
        for i, (vec, rhs) in enumerate(uniq):
            M[i, :NV] = vec
            M[i, NV] = rhs
        r = 0
        piv = []
        for c in range(NV):
            hits = np.nonzero(M[r:, c])[0]
            if hits.size == 0:
                continue
            sel = r + hits[0]
            M[[r, sel]] = M[[sel, r]]
            mask = M[:, c].astype(bool).copy()
            mask[r] = False
            M[mask] ^= M[r]
            piv.append(c)
            r += 1
        if M[r:, NV].any():
            return None, None
        sol = np.zeros(NV, dtype=np.uint8)
        for i, c in enumerate(piv):
            sol[c] = M[i, NV]
        kern = []
        for f in [c for c in range(NV) if c not in piv]:
            v = np.zeros(NV, dtype=np.uint8)
            v[f] = 1
            for i, c in enumerate(piv):
                v[c] = M[i, f]
            kern.append(v)
        return sol, kern

    def core(self):
        uniq = {}
        for (vec, rhs), tag in zip(self.rows, self.tags):
            uniq.setdefault((tuple(vec), rhs), tag)
        items = list(uniq.items())
        m = len(items)
        M = np.zeros((m, NV + 1 + m), dtype=np.uint8)
        for i, ((vec, rhs), _) in enumerate(items):
            M[i, :NV] = vec
            M[i, NV] = rhs
            M[i, NV + 1 + i] = 1
        r = 0
        for c in range(NV):
            hits = np.nonzero(M[r:, c])[0]
            if hits.size == 0:
                continue
            sel = r + hits[0]
            M[[r, sel]] = M[[sel, r]]
            mask = M[:, c].astype(bool).copy()
            mask[r] = False
            M[mask] ^= M[r]
            r += 1
        for row in M[r:]:
            if row[NV]:
                used = np.nonzero(row[NV + 1:])[0]
                return [(items[i][0][0], items[i][0][1], items[i][1])
                        for i in used]
        return None


def pin_p1(sys_, alg, L, families=("i",)):
    """Pin single-mark interior faces to the operadic evaluation sign.

    Only the interior family is pinned: forcing the wrap family as well
    makes the square-zero system infeasible once two or more marks are
    present.  The wrap signs are left to the solver.
    """
    for kvec, names in H.enumerate_words(alg, 1, L):
        n1 = len(names)
        marked = {0}

        def red(lo, hi):
            return sum(alg.degree[names[i]] - (0 if i in marked else 1)
                       for i in range(lo, hi))

        i0 = alg.degree[names[0]]
        for m in alg.arities():
            if m > n1:
                continue
            for u in range(1, n1 - m + 1):
                if "i" not in families or not alg.mu(names[u:u + m]):
                    continue
                pre = red(1, u)
                po0 = red(u + m, n1)
                vec = i_vec(u, m, n1 - 1, n1 - 1, i0, pre, po0, 0)
                rhs = (u + m * (n1 - m - u) + m * (i0 + pre + u - 1)) % 2
                sys_.add(list(vec), rhs,
                         ("pin-i", alg.label, kvec, names))


def big_eval(sys_, sol):
    """Indices of >2-class groups whose lifted sum fails to vanish."""
    bad = []
    for i, (mod, cls, _tag) in enumerate(sys_.big):
        s = 0
        for c, e, vec in cls:
            d = (sum(a & b for a, b in zip(vec, sol)) + e) % 2
            s += -c if d else c
        if s % mod:
            bad.append(i)
    return bad


def search_kernel(sys_, sol, kern, tries=400, seed=0):
    """Greedy descent over the solution space to kill big-group defects."""
    rng = np.random.default_rng(seed)
    cls_v = []
    cls_c = []
    cls_e = []
    gid = []
    mods = []
    for i, (mod, cls, _tag) in enumerate(sys_.big):
        mods.append(mod)
        for c, e, vec in cls:
            cls_v.append(vec)
            cls_c.append(c)
            cls_e.append(e)
            gid.append(i)
    V = np.array(cls_v, dtype=np.uint8)
    C = np.array(cls_c, dtype=np.int64)
    E = np.array(cls_e, dtype=np.uint8)
    G = np.array(gid, dtype=np.int64)
    MOD = np.array(mods, dtype=np.int64)
    ng = len(mods)
    K = np.array(kern, dtype=np.uint8)
    d0 = (V @ sol.astype(np.int64) + E) % 2
    DK = (V @ K.T.astype(np.int64)) % 2

    def fails(bits):
        d = (d0 + DK @ bits) % 2
        vals = np.where(d == 1, -C, C)
        s = np.zeros(ng, dtype=np.int64)
        np.add.at(s, G, vals)
        return int(np.count_nonzero(s % MOD))

    nb = K.shape[0]
    best_bits, best_f = np.zeros(nb, dtype=np.int64), fails(
        np.zeros(nb, dtype=np.int64))
    for t in range(tries):
        bits = (np.zeros(nb, dtype=np.int64) if t == 0
                else rng.integers(0, 2, nb))
        f = fails(bits)
        improved = True
        while improved and f > 0:
            improved = False
            for j in range(nb):
                bits[j] ^= 1
                f2 = fails(bits)
                if f2 < f:
                    f = f2
                    improved = True
                else:
                    bits[j] ^= 1
        if f < best_f:
            best_f, best_bits = f, bits.copy()
        if best_f == 0:
            break
    out = sol.copy()
    for j in range(nb):
        if best_bits[j]:
            out ^= K[j]
    return out, best_f


def add_square_zero(sys_, alg, p, L):
    words = H.enumerate_words(alg, p, L)
    fa = {w: conj_faces(alg, *w) for w in words}
    for w in words:
        targets = {}
        for w1, terms1 in fa[w].items():
            for c1, e1, v1 in terms1:
                for w2, terms2 in fa.get(w1, {}).items():
                    for c2, e2, v2 in terms2:
                        vec = tuple((a + b) % 2 for a, b in zip(v1, v2))
                        targets.setdefault(w2, []).append(
                            (c1 * c2, (e1 + e2) % 2, vec))
        for w2, lst in targets.items():
            sys_.require_cancel(classes(lst), ("sq", alg.label, p, w, w2),
                                alg.p)


def report(sys_):
    sol, kern = sys_.solve()
    extra = (f"[{len(sys_.rows)} eqs, {len(sys_.big)} big,"
             f" {len(sys_.hard)} hard]")
    if sol is None:
        kinds = {}
        for h in sys_.hard:
            kinds[h[0]] = kinds.get(h[0], 0) + 1
        return f"INCONSISTENT {extra} {kinds}"
    on = [LABELS[j] for j in range(NV) if sol[j]]
    parts = ["sol: " + (" + ".join(on) if on else "0"),
             f"kdim {len(kern)}"]
    return "\n    ".join(parts) + "\n    " + extra


def main():
    algs = [builtin_algebra("dual_numbers", 3),
            builtin_algebra("exterior", 3, generators=2),
            builtin_algebra("truncated_poly", 3),
            builtin_algebra("mu3_witness", 3),
            builtin_algebra("dg_square_zero", 3),
            builtin_algebra("acyclic_pair", 3)]
    p5 = [builtin_algebra("dual_numbers", 5),
          builtin_algebra("mu3_witness", 5),
          builtin_algebra("dg_square_zero", 5)]
    pin = tuple(sys.argv[1].split(",")) if len(sys.argv) > 1 else ("i",)
    print("pinned families:", pin)
    full = GF2System()
    for alg in algs:
        pin_p1(full, alg, 3, pin)
        add_square_zero(full, alg, 1, 3)
        add_square_zero(full, alg, 3, 2)
    for alg in p5:
        add_square_zero(full, alg, 5, 2)
    print("ALL:", report(full))
    if full.hard:
        for h in full.hard[:4]:
            print(" hard:", h)
    sol, kern = full.solve()
    if sol is None:
        core = full.core()
        if core:
            print(" infeasible core:")
            for vec, rhs, tag in core:
                on = [LABELS[j] for j in range(NV) if vec[j]]
                print(f"   {' + '.join(on) or '0'} = {rhs}   {tag}")
        return
    bad = big_eval(full, sol)
    print(f" big groups failing at base solution: {len(bad)}"
          f" / {len(full.big)}")
    if bad and kern:
        sol, f = search_kernel(full, sol, kern)
        print(f" after kernel search: {f} failing")
        if f:
            for i in big_eval(full, sol)[:4]:
                print("  bad:", full.big[i][2])
            return
    elif bad:
        for i in bad[:4]:
            print("  bad:", full.big[i][2])
        return
    on = [LABELS[j] for j in range(NV) if sol[j]]
    print(" exact solution:", " + ".join(on) if on else "0")
    np.save("/tmp/anchor_sol.npy", sol)
    np.save("/tmp/anchor_kern.npy",
            np.array(kern, dtype=np.uint8).reshape(len(kern), NV))
    print(f" saved solution + kernel ({len(kern)} vecs)")


if __name__ == "__main__":
    main()
