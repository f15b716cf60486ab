"""Regression battery for the frozen sign convention.

Checks every identity the complexes in cychom.hochschild promise:
square-zero differentials for the marked-word, two-row, series and
equivariant complexes, the rotation being a chain map of order p, the
series actions being chain maps, and homology against the independent
small-complex oracle.  Run after any change to SignConvention; pass
--big to add the heavier held-out instances.
"""

import sys
import time

sys.path.insert(0, "src")
sys.path.insert(0, "tests")

from cychom import ainf
from cychom import hochschild as H
from cychom.chaincore import ChainMap

from oracle_koszul import hh_total_dims
import oracle_mu3

FAILED = []


def report(name, ok, detail=""):
    print("%-52s %s%s" % (name, "ok" if ok else "FAIL",
                          " " + detail if detail else ""))
    if not ok:
        FAILED.append(name)


def algebra_suite(big):
    out = []
    for p in (3, 5):
        out += [
            ainf.builtin_algebra("ground_field", p),
            ainf.builtin_algebra("dual_numbers", p),
            ainf.builtin_algebra("dual_numbers", p, degree=1),
            ainf.builtin_algebra("truncated_poly", p, power=3),
            ainf.builtin_algebra("exterior", p, generators=2),
            ainf.builtin_algebra("zero_multiplication", p, degrees=(1, 2)),
            ainf.builtin_algebra("mu3_witness", p),
            ainf.builtin_algebra("dg_square_zero", p),
            ainf.builtin_algebra("acyclic_pair", p),
        ]
    if big:
        out += [
            ainf.builtin_algebra("truncated_poly", 7, power=4),
            ainf.builtin_algebra("exterior", 7, generators=3),
        ]
    return out


def cap(p, big=False):
    if p >= 5:
        return 2
    return 4 if big and p == 1 else 3


def check_pfold(algs, big):
    for alg in algs:
        slots = sorted({1, 2, alg.p})
        for p in slots:
            for norm in ((False, True) if alg.unit else (False,)):
                cx = H.pfold_complex(alg, p, cap(p, big), normalized=norm)
                bad = cx.d_squared_defects(limit=1)
                report("d2 %s" % cx.label, not bad,
                       "" if not bad else repr(bad[0]))


def check_rotation(algs):
    for alg in algs:
        for p in (2, alg.p):
            cx = H.pfold_complex(alg, p, cap(p))
            tau = H.rotation_map(cx, alg)
            ok = tau.is_chain_map()
            ident = True
            for k in cx.basis.keys():
                vec = {k: 1}
                for _ in range(p):
                    vec = tau.map.apply(vec)
                if vec != {k: 1}:
                    ident = False
                    break
            report("rotation %s" % cx.label, ok and ident,
                   "" if ok and ident else
                   "not a chain map" if not ok else "wrong order")


def check_two_row(algs):
    for alg in algs:
        for norm in ((False, True) if alg.unit else (False,)):
            cx = H.nonunital_complex(alg, 3, normalized=norm)
            bad = cx.d_squared_defects(limit=1)
            report("d2 %s" % cx.label, not bad,
                   "" if not bad else repr(bad[0]))
        cx = H.negative_cyclic_complex(alg, 3, 2)
        bad = cx.d_squared_defects(limit=1)
        report("d2 %s" % cx.label, not bad,
               "" if not bad else repr(bad[0]))


def check_equivariant(algs):
    for alg in algs:
        for norm in ((False, True) if alg.unit else (False,)):
            cx = H.zp_equivariant_complex(alg, alg.p, cap(alg.p), 2,
                                          normalized=norm)
            bad = cx.d_squared_defects(limit=1)
            report("d2 %s" % cx.label, not bad,
                   "" if not bad else repr(bad[0]))
            if norm:
                continue
            t = ChainMap(cx, cx, H.t_action_columns(cx), degree=2, label="t")
            report("t action %s" % cx.label, t.is_chain_map())
            th = ChainMap(cx, cx, H.theta_action_columns(cx, alg),
                          degree=1, label="theta")
            report("theta action %s" % cx.label, th.is_chain_map())


def check_oracle(big):
    # entries must have positive reduced degree or no truncation degree
    # ever completes; the comparison runs on the normalized complex
    # where the unit entry is quotiented away
    cases = [("dual_numbers", dict(degree=2), 2, 2),
             ("exterior", dict(generators=1, degrees=(3,)), 2, 3),
             ("truncated_poly", dict(power=3, degree=2), 3, 2)]
    if big:
        cases.append(("truncated_poly", dict(power=4, degree=2), 4, 2))
    for name, params, m, g in cases:
        for p in (3, 5):
            alg = ainf.builtin_algebra(name, p, **params)
            L = 6 if m == 2 else 5
            cx = H.hochschild_complex(alg, L, normalized=True)
            got = cx.homology().dims(stable_only=True)
            want, complete = hh_total_dims(m, g, p, 2 * L)
            shared = sorted(set(got) & complete)
            ok = bool(shared) and all(
                got[n] == want.get(n, 0) for n in shared)
            report("homology oracle %s p=%d" % (alg.label, p), ok,
                   "degrees %d..%d" % (shared[0], shared[-1])
                   if shared else "no shared complete degrees")


def check_mu3():
    report("mu3 oracle relation", oracle_mu3.relation_holds_termwise())
    for p in (3, 5, 7):
        alg = ainf.builtin_algebra("mu3_witness", p)
        ok, _ = ainf.check_ainf_relations(alg, max_arity=6)
        report("mu3 stasheff p=%d" % p, ok)


def main():
    big = "--big" in sys.argv
    t0 = time.time()
    algs = algebra_suite(big)
    check_pfold(algs, big)
    check_rotation(algs)
    check_two_row(algs)
    check_equivariant(algs)
    check_oracle(big)
    check_mu3()
    print("-" * 60)
    print("%d checks failed, %.1fs" % (len(FAILED), time.time() - t0))
    return 1 if FAILED else 0


if __name__ == "__main__":
    sys.exit(main())
