"""Cyclic word complexes of A-infinity algebras at finite truncation.

Words are tuples of basis names with p marked module slots (p = 1 gives
the ordinary cyclic bar complex).  The differential applies structure
operations to cyclic runs touching at most one marked slot; signs come
from a single SignConvention so every chain-level identity in the
package draws them from one place.

Truncation keeps words with at most L algebra entries.  Since faces
never lengthen a word the truncated complex is honest; a degree gets a
stable flag only when no excluded longer word could land in it or in
its two neighbours, which is decided by the drift of the reduced entry
degrees (two-sided: supports drift up when the minimum reduced degree
is positive, down when the maximum is negative, and no degree is ever
complete when 0 sits between them).
"""

import itertools

from .ainf import FROZEN_SIGNS
from .chaincore import ChainComplex, ChainMap

__all__ = [
    "word_degree",
    "enumerate_words",
    "support_drift",
    "complete_degrees",
    "pfold_complex",
    "hochschild_complex",
    "rotation_columns",
    "rotation_map",
    "nonunital_complex",
    "negative_cyclic_complex",
    "zp_equivariant_complex",
    "t_action_columns",
    "theta_action_columns",
]


def _marks(kvec):
    out, run = [], 0
    for t, k in enumerate(kvec):
        out.append(run + t)
        run += k
    return tuple(out)


def _algebra_names(alg, normalized):
    names = alg.names
    if normalized and alg.unit is not None:
        names = tuple(n for n in names if n != alg.unit)
    return names


def word_degree(alg, kvec, names):
    """Module slots count unshifted, algebra slots reduced by one."""
    marked = set(_marks(kvec))
    return sum(alg.degree[x] - (0 if i in marked else 1)
               for i, x in enumerate(names))


def enumerate_words(alg, p, max_len, normalized=False):
    """All (kvec, names) with p module slots and <= max_len entries."""
    entries = _algebra_names(alg, normalized)
    out = []
    for total in range(max_len + 1):
        for kvec in _compositions(total, p):
            for names_alg in itertools.product(entries, repeat=total):
                for mods in itertools.product(alg.names, repeat=p):
                    names, pos = [], 0
                    for t in range(p):
                        names.append(mods[t])
                        names.extend(names_alg[pos:pos + kvec[t]])
                        pos += kvec[t]
                    out.append((kvec, tuple(names)))
    return out


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def support_drift(alg, p, normalized=False):
    """(lo_slope, hi_slope, min_mod, max_mod): per-entry degree slopes and
    the module-slot degree extremes; slopes are None when no algebra
    entry is usable (all words are module-only)."""
    entries = _algebra_names(alg, normalized)
    reds = [alg.degree[x] - 1 for x in entries]
    mods = [alg.degree[x] for x in alg.names]
    lo = min(reds) if reds else None
    hi = max(reds) if reds else None
    return lo, hi, p * min(mods), p * max(mods)


def complete_degrees(alg, p, max_len, normalized=False):
    """Predicate: degree n holds every word of the untruncated complex.

    Returns (test, lo_support, hi_support) where test(n) decides
    completeness and the support bounds are those of the full complex
    (None standing for unbounded).
    """
    lo, hi, min_mod, max_mod = support_drift(alg, p, normalized)
    if lo is None:
        return (lambda n: True), min_mod, max_mod
    if lo > 0:
        bound = min_mod + (max_len + 1) * lo
        return (lambda n: n < bound), min_mod, None
    if hi < 0:
        bound = max_mod + (max_len + 1) * hi
        return (lambda n: n > bound), None, max_mod
    return (lambda n: False), None, None


# -- faces -------------------------------------------------------------

def _window_sum(alg, names, marked, lo, hi):
    """Degree sum over [lo, hi): marked slots internal, entries reduced."""
    return sum(alg.degree[names[i]] - (0 if i in marked else 1)
               for i in range(lo, hi))


def _rotate_once(alg, kvec, names):
    """One signed rotation: the trailing block moves to the front."""
    p = len(kvec)
    cut = _marks(kvec)[p - 1]
    blk = sum(alg.degree[x] for x in names[cut:]) - kvec[p - 1]
    rest = sum(alg.degree[x] for x in names[:cut]) - sum(kvec[:p - 1])
    sign = -1 if FROZEN_SIGNS.rotation_exp(blk, rest) else 1
    return (kvec[-1],) + kvec[:-1], names[cut:] + names[:cut], sign


def _anchor_faces(alg, kvec, names, signs, normalized):
    """Faces whose run lies inside the first block or crosses slot 0,
    as a list of (coeff, (kvec2, names2))."""
    p = len(kvec)
    n1 = len(names)
    marked = set(_marks(kvec))
    unit = alg.unit if normalized else None
    k0, kl = kvec[0], kvec[p - 1]
    slot = alg.degree[names[0]]
    slots = sum(alg.degree[names[i]] for i in marked) - slot
    out = []
    for m in alg.arities():
        if m > n1:
            continue
        for u in range(1, k0 - m + 2):
            img = alg.mu(names[u:u + m])
            if not img:
                continue
            e = signs.interior_exp(n1, u, m,
                                   slot + _window_sum(alg, names, marked,
                                                      1, u),
                                   _window_sum(alg, names, marked,
                                               k0 + 1, n1))
            sign = -1 if e else 1
            kvec2 = (k0 - m + 1,) + kvec[1:]
            rest = names[:u] + names[u + m:]
            for res, c in img.items():
                if unit is not None and res == unit:
                    continue
                out.append((sign * c,
                            (kvec2, rest[:u] + (res,) + rest[u:])))
        for r in range(min(m - 1, kl if p > 1 else k0) + 1):
            h = m - 1 - r
            if h > k0 or (p == 1 and r + h > k0):
                continue
            img = alg.mu(names[n1 - r:] + (names[0],) + names[1:h + 1])
            if not img:
                continue
            bstop = k0 + 1 if p > 1 else n1 - r
            e = signs.wrap_exp(n1 - 1, r, h, kl,
                               _window_sum(alg, names, marked, n1 - r, n1),
                               slot,
                               _window_sum(alg, names, marked, h + 1,
                                           bstop),
                               slots,
                               _window_sum(alg, names, marked, bstop,
                                           n1 - r) - slots)
            sign = -1 if e else 1
            kvec2 = ((k0 - h,) + kvec[1:p - 1] + (kl - r,) if p > 1
                     else (k0 - h - r,))
            rest = names[h + 1:n1 - r]
            for res, c in img.items():
                out.append((sign * c, (kvec2, (res,) + rest)))
    return out


def _marked_faces(alg, kvec, names, signs, normalized):
    """Boundary of a marked word as {(kvec2, names2): coeff}.

    Anchor faces of every rotated copy of the word are rotated back, so
    each cyclic run touching at most one marked slot contributes exactly
    once and the rotation is a chain map by construction.
    """
    p = len(kvec)
    rots = [(kvec, names, 1)]
    for _ in range(p - 1):
        k2, n2, s = _rotate_once(alg, rots[-1][0], rots[-1][1])
        rots.append((k2, n2, rots[-1][2] * s))
    out = {}
    for back in range(p):
        vk, vn, sv = rots[(p - back) % p]
        for c, (tk, tn) in _anchor_faces(alg, vk, vn, signs, normalized):
            st = 1
            for _ in range(back):
                tk, tn, s1 = _rotate_once(alg, tk, tn)
                st *= s1
            key = (tk, tn)
            out[key] = out.get(key, 0) + c * sv * st
    return {k: v for k, v in out.items() if v % alg.p}


def _bar_faces(alg, names, signs, normalized):
    """Boundary of a plain tensor word (all slots shifted, no wrap)."""
    n1 = len(names)
    unit = alg.unit if normalized else None
    out = {}
    for m in alg.arities():
        if m > n1:
            continue
        for u in range(n1 - m + 1):
            img = alg.mu(names[u:u + m])
            if not img:
                continue
            e = signs.bar_exp(n1, u, m, _reduced_sum(alg, names, 0, u))
            sign = -1 if e else 1
            for res, c in img.items():
                if unit is not None and res == unit:
                    continue
                word2 = names[:u] + (res,) + names[u + m:]
                out[word2] = out.get(word2, 0) + sign * c
    return {k: v for k, v in out.items() if v % alg.p}


# -- the complexes -----------------------------------------------------

def pfold_complex(alg, p, max_len, signs=FROZEN_SIGNS, normalized=False,
                  label=None):
    """Cyclic word complex with p module slots, truncated at max_len
    algebra entries."""
    words = enumerate_words(alg, p, max_len, normalized)
    by_degree = {}
    cols = {}
    for w in words:
        kvec, names = w
        by_degree.setdefault(word_degree(alg, kvec, names), []).append(w)
        cols[w] = _marked_faces(alg, kvec, names, signs, normalized)
    test, _, _ = complete_degrees(alg, p, max_len, normalized)
    degs = sorted(by_degree)
    stable = frozenset(n for n in degs
                       if test(n - 1) and test(n) and test(n + 1))
    return ChainComplex(
        alg.p, by_degree, cols,
        label=label or "pfold(%s,p=%d,L=%d%s)" % (
            alg.label, p, max_len, ",norm" if normalized else ""),
        stable=stable,
        meta={"p": p, "max_len": max_len, "normalized": normalized})


def hochschild_complex(alg, max_len, signs=FROZEN_SIGNS, normalized=False):
    return pfold_complex(alg, 1, max_len, signs, normalized,
                         label="hochschild(%s,L=%d%s)" % (
                             alg.label, max_len,
                             ",norm" if normalized else ""))


def rotation_columns(alg, words):
    """Columns of the cyclic rotation: the last marked block moves to the
    front with the Koszul sign of its total shifted degree against the
    rest."""
    cols = {}
    for w in words:
        k2, n2, sign = _rotate_once(alg, *w)
        cols[w] = {(k2, n2): sign}
    return cols


def rotation_map(cx, alg):
    """The rotation as an endo chain map of a p-fold word complex."""
    return ChainMap(cx, cx, rotation_columns(alg, list(cx.basis.keys())),
                    degree=0, label="rotation")


def nonunital_complex(alg, max_len, signs=FROZEN_SIGNS, normalized=False):
    """Two-row complex: cyclic words next to shifted bar words, glued by
    the rotation-plus-identity connecting map."""
    words = enumerate_words(alg, 1, max_len, normalized)
    keep = _word_filter(alg, words, normalized)
    by_degree = {}
    cols = {}
    for w in words:
        kvec, names = w
        deg = word_degree(alg, kvec, names)
        ck, ht = ("chk", names), ("hat", names)
        by_degree.setdefault(deg, []).append(ck)
        by_degree.setdefault(deg - 1, []).append(ht)
        cols[ck] = {("chk", nm): c
                    for (_, nm), c in
                    _marked_faces(alg, kvec, names, signs, normalized).items()}
        bar = {("hat", nm): c
               for nm, c in _bar_faces(alg, names, signs, normalized).items()}
        bar_connect = _connecting_terms(alg, names, normalized)
        col = dict(bar)
        for key, c in bar_connect.items():
            col[key] = col.get(key, 0) + c
        cols[ht] = keep(col)
    test, _, _ = complete_degrees(alg, 1, max_len, normalized)
    degs = sorted(by_degree)
    stable = frozenset(n for n in degs
                       if test(n) and test(n + 1) and test(n + 2))
    return ChainComplex(alg.p, by_degree, cols,
                        label="nonunital(%s,L=%d%s)" % (
                            alg.label, max_len,
                            ",norm" if normalized else ""),
                        stable=stable,
                        meta={"max_len": max_len, "normalized": normalized})


def _reduced_sum(alg, names, lo, hi):
    return sum(alg.degree[x] - 1 for x in names[lo:hi])


def _word_filter(alg, words, normalized):
    """Projection dropping targets outside the normalized word set.

    Rotation terms can move a unit slot into an entry position; in the
    normalized quotient such words are degenerate and vanish.
    """
    if not normalized:
        return lambda col: col
    valid = {nm for _, nm in words}
    return lambda col: {key: c for key, c in col.items()
                        if key[1] in valid}


def _connecting_terms(alg, names, normalized, signs=FROZEN_SIGNS):
    """Hat-to-check part of the two-row differential: a signed rotation
    of the last entry to the front plus a straight copy of the word."""
    d = len(names) - 1
    e1 = signs.connect_exp(d, alg.degree[names[d]] - 1,
                           _reduced_sum(alg, names, 0, d))
    out = {}
    rot = (names[d],) + names[:d]
    out[("chk", rot)] = -1 if e1 else 1
    key = ("chk", names)
    out[key] = out.get(key, 0) + 1
    return {k: v for k, v in out.items() if v}


def _connes_terms(alg, names, signs=FROZEN_SIGNS):
    """Check-to-hat rotations of the degree -1 circle operator."""
    n = len(names) - 1
    slot = alg.degree[names[0]]
    total = slot + _reduced_sum(alg, names, 1, n + 1)
    out = {}
    for i in range(n + 1):
        head = slot + _reduced_sum(alg, names, 1, i + 1)
        e = signs.circle_exp(n, i, head, total)
        rot = names[i + 1:] + names[:i + 1]
        key = ("hat", rot)
        out[key] = out.get(key, 0) + (-1 if e else 1)
    return {k2: v for k2, v in out.items() if v}


def negative_cyclic_complex(alg, max_len, tcap, signs=FROZEN_SIGNS):
    """Series extension of the two-row complex: cells carry a power of
    the degree 2 series variable up to tcap, and the circle operator
    raises that power.

    The circle rotations do not descend slotwise to entry-normalized
    words, so this complex is built on the full word set only.
    """
    normalized = False
    words = enumerate_words(alg, 1, max_len, normalized)
    by_degree = {}
    cols = {}
    for w in words:
        kvec, names = w
        deg = word_degree(alg, kvec, names)
        faces = {("chk", nm): c
                 for (_, nm), c in
                 _marked_faces(alg, kvec, names, signs, normalized).items()}
        bar = {("hat", nm): c
               for nm, c in _bar_faces(alg, names, signs, normalized).items()}
        connect = _connecting_terms(alg, names, normalized)
        connes = _connes_terms(alg, names)
        for k in range(tcap + 1):
            ck, ht = ("chk", names, k), ("hat", names, k)
            by_degree.setdefault(deg + 2 * k, []).append(ck)
            by_degree.setdefault(deg - 1 + 2 * k, []).append(ht)
            col = {key + (k,): c for key, c in faces.items()}
            if k < tcap:
                for key, c in connes.items():
                    kk = key + (k + 1,)
                    col[kk] = col.get(kk, 0) + c
            cols[ck] = col
            col = {key + (k,): c for key, c in bar.items()}
            for key, c in connect.items():
                kk = key + (k,)
                col[kk] = col.get(kk, 0) + c
            cols[ht] = col
    test, lo_sup, hi_sup = complete_degrees(alg, 1, max_len, normalized)
    stable = frozenset(
        n for n in sorted(by_degree)
        if all(_series_complete(d, tcap, test, lo_sup, (0, -1))
               for d in (n - 1, n, n + 1)))
    return ChainComplex(alg.p, by_degree, cols,
                        label="negcyclic(%s,L=%d,tcap=%d)" % (
                            alg.label, max_len, tcap),
                        stable=stable,
                        meta={"max_len": max_len, "tcap": tcap})


def _series_complete(d, tcap, test, lo_sup, shifts):
    """A series degree is complete when every kept sector is complete in
    the base and every dropped sector misses the base support.

    shifts lists the word-degree offsets of the two cell rows: a cell in
    sector k of row s holds a word of degree d - 2k - s.
    """
    for k in range(tcap + 1):
        for s in shifts:
            if not test(d - 2 * k - s):
                return False
    top = d - 2 * (tcap + 1) - min(shifts)
    return lo_sup is not None and top < lo_sup


def zp_equivariant_complex(alg, p, max_len, tcap, signs=FROZEN_SIGNS,
                           normalized=False):
    """Series-and-odd-variable extension of the p marked slot complex.

    Cells are (word, k, theta); the even-part differential adds the
    signed (rotation - 1) into the odd part, the odd part feeds the
    rotation norm into the next series power.
    """
    words = enumerate_words(alg, p, max_len, normalized)
    rot = rotation_columns(alg, words)
    by_degree = {}
    cols = {}
    for w in words:
        kvec, names = w
        deg = word_degree(alg, kvec, names)
        faces = _marked_faces(alg, kvec, names, signs, normalized)
        ws = -1 if deg % 2 else 1
        (rw, rsign), = rot[w].items()
        norm = {}
        cur, acc = w, 1
        for _ in range(p):
            norm[cur] = norm.get(cur, 0) + acc
            (nxt, s), = rot[cur].items()
            cur, acc = nxt, acc * s
        for k in range(tcap + 1):
            even, odd = (w, k, 0), (w, k, 1)
            by_degree.setdefault(deg + 2 * k, []).append(even)
            by_degree.setdefault(deg + 2 * k + 1, []).append(odd)
            col = {(w2, k, 0): c for w2, c in faces.items()}
            tgt = (rw, k, 1)
            col[tgt] = col.get(tgt, 0) + ws * rsign
            tgt = (w, k, 1)
            col[tgt] = col.get(tgt, 0) - ws
            cols[even] = col
            col = {(w2, k, 1): c for w2, c in faces.items()}
            if k < tcap:
                for w2, c in norm.items():
                    tgt = (w2, k + 1, 0)
                    col[tgt] = col.get(tgt, 0) + ws * c
            cols[odd] = col
    test, lo_sup, hi_sup = complete_degrees(alg, p, max_len, normalized)
    stable = frozenset(
        n for n in sorted(by_degree)
        if all(_series_complete(d, tcap, test, lo_sup, (0, 1))
               for d in (n - 1, n, n + 1)))
    return ChainComplex(alg.p, by_degree, cols,
                        label="zp(%s,p=%d,L=%d,tcap=%d%s)" % (
                            alg.label, p, max_len, tcap,
                            ",norm" if normalized else ""),
                        stable=stable,
                        meta={"p": p, "max_len": max_len, "tcap": tcap,
                              "normalized": normalized})


def t_action_columns(cx):
    """Degree 2 series-variable action on an equivariant complex.

    The series variable is central and even, so the action is the bare
    shift of the series power."""
    cols = {}
    tcap = cx.meta["tcap"]
    for key in cx.basis.keys():
        w, k, th = key
        if k + 1 <= tcap:
            cols[key] = {(w, k + 1, th): 1}
    return cols


def theta_action_columns(cx, alg):
    """Degree 1 odd-variable action: even cells flip to odd, odd cells
    apply the (p-2)-fold twisted difference, raise the series power and
    land back in the even part (the only degree 1 option).

    Both branches carry (-1)^(word degree), the odd branch negated on
    top: with s the signed rotation minus one, the differential mixes
    the parts through s and its (p-1)-st power (the rotation norm in
    characteristic p), and anticommutation forces opposite signs."""
    p = cx.meta["p"]
    tcap = cx.meta["tcap"]
    words = [key[0] for key in cx.basis.keys() if key[1] == 0 and key[2] == 0]
    rot = rotation_columns(alg, words)
    cols = {}
    for key in cx.basis.keys():
        w, k, th = key
        deg = cx.basis.degree_of[key] - 2 * k - th
        sign = -1 if deg % 2 else 1
        if th == 0:
            cols[key] = {(w, k, 1): sign}
        else:
            if k + 1 > tcap:
                continue
            vec = {w: 1}
            for _ in range(p - 2):
                nxt = {}
                for w2, c in vec.items():
                    (rw, rs), = rot[w2].items()
                    nxt[rw] = nxt.get(rw, 0) + c * rs
                    nxt[w2] = nxt.get(w2, 0) - c
                vec = nxt
            cols[key] = {(w2, k + 1, 0): -sign * c for w2, c in vec.items()}
    return cols
