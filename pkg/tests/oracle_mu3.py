"""Hand enumeration of the arity-5 structure relation for the mu3 witness.

Algebra: basis a (degree 0) and b (degree -1); the only nonzero operation
is the ternary one, mu3(a,a,a) = b.  With a single nonzero arity the arity-5
relation is the only one with composable terms, and its three composites are
  mu3(mu3(x1,x2,x3), x4, x5)
  mu3(x1, mu3(x2,x3,x4), x5)
  mu3(x1, x2, mu3(x3,x4,x5))
Each composite vanishes on every input word: the inner mu3 is nonzero only
on (a,a,a), producing b, and the outer mu3 then sees a word containing b,
on which it vanishes.  Frozen before the main build.
"""

import itertools


def mu3(x, y, z):
    return "b" if (x, y, z) == ("a", "a", "a") else None  # None = 0


def composite_terms(word):
    """The three arity-5 composite values on a 5-letter word, as 0/None."""
    out = []
    for s in range(3):
        inner = mu3(*word[s:s + 3])
        if inner is None:
            out.append(None)
            continue
        outer_args = word[:s] + (inner,) + word[s + 3:]
        out.append(mu3(*outer_args))
    return out


def relation_holds_termwise():
    for word in itertools.product("ab", repeat=5):
        if any(t is not None for t in composite_terms(word)):
            return False
    return True
