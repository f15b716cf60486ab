"""Derive the two-row connecting and circle operator signs.

The two-row complex pairs the single-slot marked row with the plain bar
row.  Its gluing pieces (the rotate-plus-identity connecting map and the
degree -1 circle rotations) carry sign exponents modelled here as GF(2)
quadratic forms; the square-zero conditions of the glued complex and of
its series extension become linear equations once the marked and bar
rows are fixed.

Run:  python3 scripts/derive_circle.py
"""

import sys

import numpy as np

sys.path.insert(0, "src")

from cychom.ainf import FROZEN_SIGNS, builtin_algebra
from cychom import hochschild as H

CR_QTY = ["d", "l", "b", "f"]
CI_QTY = ["d", "f", "r"]
CB_QTY = ["n", "i", "x", "h", "t"]
BR_QTY = ["u", "m", "n", "pr", "po"]
CR_LABELS = (["cr:1"] + [f"cr:{q}" for q in CR_QTY] +
             [f"cr:{a}*{c}" for j, a in enumerate(CR_QTY)
              for c in CR_QTY[j + 1:]])
CI_LABELS = (["ci:1"] + [f"ci:{q}" for q in CI_QTY] +
             [f"ci:{a}*{c}" for j, a in enumerate(CI_QTY)
              for c in CI_QTY[j + 1:]])
CB_LABELS = (["cb:1"] + [f"cb:{q}" for q in CB_QTY] +
             [f"cb:{a}*{c}" for j, a in enumerate(CB_QTY)
              for c in CB_QTY[j + 1:]])
BR_LABELS = (["br:1"] + [f"br:{q}" for q in BR_QTY] +
             [f"br:{a}*{c}" for j, a in enumerate(BR_QTY)
              for c in BR_QTY[j + 1:]])
LABELS = CR_LABELS + CI_LABELS + CB_LABELS + BR_LABELS
NCR, NCI, NCB, NBR = (len(CR_LABELS), len(CI_LABELS), len(CB_LABELS),
                      len(BR_LABELS))
NV = NCR + NCI + NCB + NBR


def quad(vals):
    q = [v % 2 for v in vals]
    k = len(q)
    return [1] + q + [q[a] * q[c] for a in range(k)
                      for c in range(a + 1, k)]


def cr_vec(d, l, b, f):
    return tuple(quad([d, l, b, f])) + (0,) * (NCI + NCB + NBR)


def ci_vec(d, f, r):
    return (0,) * NCR + tuple(quad([d, f, r])) + (0,) * (NCB + NBR)


def cb_vec(n, i, x, h, t):
    return ((0,) * (NCR + NCI) + tuple(quad([n, i, x, h, t]))
            + (0,) * NBR)


def br_vec(u, m, n, pr, po):
    return (0,) * (NCR + NCI + NCB) + tuple(quad([u, m, n, pr, po]))


def _red(alg, names, lo, hi):
    return sum(alg.degree[names[j]] - 1 for j in range(lo, hi))


def connect_terms(alg, names):
    """Bar-row word -> [(coeff, vec, marked word)] for the connecting map."""
    d = len(names) - 1
    l, b = _red(alg, names, d, d + 1), _red(alg, names, 0, d)
    f, r = _red(alg, names, 0, 1), _red(alg, names, 1, d + 1)
    out = [(1, cr_vec(d, l, b, f), (names[d],) + names[:d]),
           (1, ci_vec(d, f, r), names)]
    return out


def connes_terms(alg, names):
    """Marked word -> [(coeff, vec, bar word)] for the circle operator."""
    n1 = len(names)
    x = alg.degree[names[0]]
    t = x + _red(alg, names, 1, n1)
    out = []
    for i in range(n1):
        h = x + _red(alg, names, 1, i + 1)
        out.append((1, cb_vec(n1 - 1, i, x, h, t),
                    names[i + 1:] + names[:i + 1]))
    return out


def marked_cols(alg, names):
    cx = H._marked_faces(alg, (len(names) - 1,), names, FROZEN_SIGNS, False)
    half = alg.p // 2
    return [(c - alg.p if c % alg.p > half else c % alg.p, nm)
            for (_, nm), c in cx.items()]


def bar_terms(alg, names):
    """Bar-row word -> [(coeff, vec, word)] with unknown face signs."""
    n1 = len(names)
    half = alg.p // 2
    out = []
    for m in alg.arities():
        if m > n1:
            continue
        for u in range(n1 - m + 1):
            img = alg.mu(names[u:u + m])
            if not img:
                continue
            vec = br_vec(u, m, n1 - 1, _red(alg, names, 0, u),
                         _red(alg, names, u + m, n1))
            for res, c in img.items():
                c %= alg.p
                out.append((c - alg.p if c > half else c, vec,
                            names[:u] + (res,) + names[u + m:]))
    return out


class GF2System:
    def __init__(self):
        self.rows = []
        self.hard = []
        self.big = []

    def require_cancel(self, cls, tag, mod):
        cls = {k: v % mod for k, v in cls.items() if v % mod}
        if not cls:
            return
        if len(cls) == 1:
            self.hard.append(("lone", tag, cls))
            return
        if len(cls) == 2:
            (k1, c1), (k2, c2) = cls.items()
            vec = [(a + b) % 2 for a, b in zip(k1[0], k2[0])]
            rhs = (k1[1] + k2[1]) % 2
            if (c1 + c2) % mod == 0:
                self.rows.append((vec, rhs, tag))
            elif (c1 - c2) % mod == 0:
                self.rows.append((vec, (rhs + 1) % 2, tag))
            else:
                self.hard.append(("mag", tag, cls))
            return
        self.big.append((mod, [(c, e, vec) for (vec, e), c in cls.items()],
                         tag))

    def solve(self):
        if self.hard:
            return None, None
        uniq = sorted({(tuple(vec), rhs) for vec, rhs, _ in self.rows})
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
        for fcol in [c for c in range(NV) if c not in piv]:
            v = np.zeros(NV, dtype=np.uint8)
            v[fcol] = 1
            for i, c in enumerate(piv):
                v[c] = M[i, fcol]
            kern.append(v)
        return sol, kern


def classes(terms):
    agg = {}
    for c, e, vec in terms:
        agg[(tuple(vec), e)] = agg.get((tuple(vec), e), 0) + c
    return {k: v for k, v in agg.items() if v != 0}


def _xor(v1, v2):
    return tuple((a + b) % 2 for a, b in zip(v1, v2))


def build(sys_, alg, L):
    bars = [nm for _, nm in H.enumerate_words(alg, 1, L)]
    bars = sorted({nm for nm in bars}, key=lambda nm: (len(nm), nm))
    for names in bars:
        # hat -> hat: bar . bar = 0
        tgt = {}
        for c1, v1, nm1 in bar_terms(alg, names):
            for c2, v2, nm2 in bar_terms(alg, nm1):
                tgt.setdefault(nm2, []).append((c1 * c2, 0, _xor(v1, v2)))
        for nm2, lst in tgt.items():
            sys_.require_cancel(classes(lst), ("bar2", alg.label, names, nm2),
                                alg.p)
        # hat -> chk: connect . bar + marked . connect = 0
        tgt = {}
        for c1, v1, nm1 in bar_terms(alg, names):
            for c2, v2, nm2 in connect_terms(alg, nm1):
                tgt.setdefault(nm2, []).append((c1 * c2, 0, _xor(v1, v2)))
        for c1, vec, nm1 in connect_terms(alg, names):
            for c2, nm2 in marked_cols(alg, nm1):
                tgt.setdefault(nm2, []).append((c1 * c2, 0, vec))
        for nm2, lst in tgt.items():
            sys_.require_cancel(classes(lst), ("glue", alg.label, names, nm2),
                                alg.p)
        # chk -> hat(k+1): connes . marked + bar . connes = 0
        tgt = {}
        for c1, nm1 in marked_cols(alg, names):
            for c2, vec, nm2 in connes_terms(alg, nm1):
                tgt.setdefault(nm2, []).append((c1 * c2, 0, vec))
        for c1, v1, nm1 in connes_terms(alg, names):
            for c2, v2, nm2 in bar_terms(alg, nm1):
                tgt.setdefault(nm2, []).append((c1 * c2, 0, _xor(v1, v2)))
        for nm2, lst in tgt.items():
            sys_.require_cancel(classes(lst), ("circ", alg.label, names, nm2),
                                alg.p)
        # chk -> chk(k+1): connect . connes = 0
        tgt = {}
        for c1, v1, nm1 in connes_terms(alg, names):
            for c2, v2, nm2 in connect_terms(alg, nm1):
                tgt.setdefault(nm2, []).append((c1 * c2, 0, _xor(v1, v2)))
        for nm2, lst in tgt.items():
            sys_.require_cancel(classes(lst), ("norm", alg.label, names, nm2),
                                alg.p)


def big_eval(sys_, sol):
    bad = []
    for i, (mod, cls, _tag) in enumerate(sys_.big):
        s = 0
        for c, e, vec in cls:
            d = (sum(a & b for a, b in zip(vec, sol)) + e) % 2
            s += -c if d else c
        if s % mod:
            bad.append(i)
    return bad


def main():
    algs = [builtin_algebra("dual_numbers", 3),
            builtin_algebra("exterior", 3, generators=2),
            builtin_algebra("truncated_poly", 3),
            builtin_algebra("mu3_witness", 3),
            builtin_algebra("dg_square_zero", 3),
            builtin_algebra("acyclic_pair", 3),
            builtin_algebra("dual_numbers", 5),
            builtin_algebra("dg_square_zero", 5)]
    sys_ = GF2System()
    for alg in algs:
        build(sys_, alg, 3)
    print(f"{len(sys_.rows)} eqs, {len(sys_.big)} big,"
          f" {len(sys_.hard)} hard")
    for h in sys_.hard[:4]:
        print(" hard:", h)
    sol, kern = sys_.solve()
    if sol is None:
        print("INCONSISTENT")
        return
    bad = big_eval(sys_, sol)
    print(f"big failing at base: {len(bad)} / {len(sys_.big)}")
    if bad:
        for i in bad[:4]:
            print("  bad:", sys_.big[i][2])
        return
    # minimise weight over the kernel
    best = None
    for mask in range(1 << len(kern)):
        v = sol.copy()
        mm, j = mask, 0
        while mm:
            if mm & 1:
                v ^= kern[j]
            mm >>= 1
            j += 1
        if big_eval(sys_, v):
            continue
        wt = int(v.sum())
        if best is None or wt < best[0]:
            best = (wt, v.copy())
    wt, v = best
    on = [LABELS[j] for j in range(NV) if v[j]]
    print(f"min weight {wt} (kdim {len(kern)}):")
    print("  " + " + ".join(on))
    np.save("/tmp/circle_sol.npy", v)


if __name__ == "__main__":
    main()
