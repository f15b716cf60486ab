"""A-infinity algebras over F_p as sparse structure constants.

Conventions (the package-wide contract, enforced by the sign arbiter in
scripts/solve_signs.py and regression-tested):

* mu^d has degree 2-d.  Operators act with Koszul evaluation signs; the
  structure relation of arity d reads

      sum_{m=1..d} sum_{u=0..d-m} (-1)^{u+m(d-m-u)} (-1)^{m(|x_1|+..+|x_u|)}
          mu^{d-m+1}(x_1,..,x_u, mu^m(x_{u+1},..), .., x_d)  =  0

  so graded associative algebras embed untwisted (mu^2(a,b) = ab) and a
  designated unit satisfies mu^2(1,x) = mu^2(x,1) = x strictly.

* Word complexes use reduced degrees ||x|| = |x|-1 on shifted slots; the
  face signs are produced by SignConvention so that every module draws them
  from one place.
"""

from dataclasses import dataclass
import itertools
import json


@dataclass(frozen=True)
class SignConvention:
    """Resolved sign exponents for the word-complex differentials.

    The marked differential is generated by two anchor face families (runs
    strictly inside the first block, runs through slot 0) transported
    around the word by the signed rotation, so equivariance is built in.
    The exponents below are the quadratic forms in window degree sums that
    make the full differential square to zero across the sample algebras
    at p = 1, 3, 5 simultaneously while restricting, on single-slot words,
    to the operator evaluation convention of check_ainf_relations;
    scripts/derive_wrap.py rebuilds the GF(2) system and re-solves it.

    All degree sums count marked slots internal (|x|) and algebra entries
    reduced (|x| - 1).
    """

    @staticmethod
    def boundary_exp(d, u, m):
        """Exponent of the (root d-m+1, graft at u+1, arity m) face of the d-corolla.

        The global +1 makes tree evaluation a dg-map on the nose:
        eval(boundary T) = mu1 . eval(T) - (-1)^{|T|} eval(T) . d_tensor.
        """
        return (1 + u + m * (d - m - u)) % 2

    @staticmethod
    def interior_exp(n1, u, m, before, rest):
        """Exponent for mu_m on the run [u, u+m) inside the first block.

        n1 is the total slot count, before the degree sum of positions
        < u, rest the degree sum of everything past the first block.
        """
        return (u + m * (n1 + before) + (m + 1) * rest) % 2

    @staticmethod
    def wrap_exp(n, r, h, klast, tail, slot, rem0, slots, rest):
        """Exponent for the run through slot 0: r entries wrap from the
        word's end and mu_{r+1+h} consumes (tail..., slot 0, head...).

        n is the entry count, klast the last block length; tail/slot/
        rem0/slots/rest are the degree sums of the wrapped tail, slot 0,
        the first-block remainder, the other marked slots and the other
        remaining entries.
        """
        mid = slot + rem0 + slots + rest
        return (n + r + n * (r + h) + r * mid + h * (slots + rest)
                + (klast + 1) * tail + tail * mid) % 2

    @staticmethod
    def rotation_exp(block, rest):
        """Exponent for rotating the trailing marked block to the front."""
        return (block * rest) % 2

    @staticmethod
    def bar_exp(n1, u, m, before):
        """Exponent for the face of a plain n1-entry tensor word: mu_m on
        the run [u, u+m), before the reduced degree sum of positions < u."""
        return (1 + u + m * (n1 - 1) + m * before) % 2

    @staticmethod
    def connect_exp(d, last, before):
        """Exponent of the rotation term gluing the tensor row to the
        marked row; d is the entry count minus one, last/before reduced
        degree sums of the final entry and of the rest.  The straight
        copy of the word enters the gluing map with exponent 0."""
        return (1 + before + d * last + last * before) % 2

    @staticmethod
    def circle_exp(n, i, head, total):
        """Exponent of the i-th rotation inside the degree -1 circle
        operator on a single-slot word; head and total are degree sums
        over positions [0, i] and the whole word."""
        return (n + i + head + n * head + (i + head) * total) % 2


FROZEN_SIGNS = SignConvention()


class AInfAlgebra:
    """Finite-dimensional A-infinity algebra: named basis, sparse mu tables."""

    def __init__(self, p, degrees, ops, unit=None, label=""):
        self.p = p
        self.degree = dict(degrees)
        self.names = tuple(self.degree)
        self.unit = unit
        self.label = label or "anon"
        self.ops = {}
        for d, table in ops.items():
            d = int(d)
            cleaned = {}
            for args, out in table.items():
                args = tuple(args)
                if len(args) != d:
                    raise ValueError(f"arity {d} table has {len(args)} inputs")
                outc = {k: c % p for k, c in out.items() if c % p}
                for k in outc:
                    if self.degree[k] != sum(self.degree[a] for a in args) + 2 - d:
                        raise ValueError(f"degree clash in mu^{d}{args} -> {k}")
                if outc:
                    cleaned[args] = outc
            if cleaned:
                self.ops[d] = cleaned
        if unit is not None and unit not in self.degree:
            raise ValueError("unit not a basis element")

    def mu(self, args):
        """mu^{len(args)} on a tuple of basis names -> {name: coeff}."""
        table = self.ops.get(len(args))
        if not table:
            return {}
        return dict(table.get(tuple(args), {}))

    def arities(self):
        return sorted(self.ops)

    def max_arity(self):
        return max(self.ops, default=1)

    def reduced_names(self):
        return tuple(n for n in self.names if n != self.unit)

    def reduced_degree(self, name):
        return self.degree[name] - 1

    def is_strictly_unital(self):
        if self.unit is None:
            return False
        e = self.unit
        for x in self.names:
            if self.mu((e, x)) != {x: 1} or self.mu((x, e)) != {x: 1}:
                return False
        for d, table in self.ops.items():
            if d == 2:
                continue
            for args in table:
                if e in args:
                    return False
        return True

    def to_json(self):
        return json.dumps({
            "p": self.p,
            "label": self.label,
            "unit": self.unit,
            "basis": [{"name": n, "degree": self.degree[n]} for n in self.names],
            "ops": {str(d): [{"inputs": list(args), "output": k, "coeff": c}
                             for args, out in sorted(table.items())
                             for k, c in sorted(out.items())]
                    for d, table in sorted(self.ops.items())},
        }, indent=1)

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        degrees = {b["name"]: int(b["degree"]) for b in data["basis"]}
        ops = {}
        for d, rows in data.get("ops", {}).items():
            table = {}
            for row in rows:
                args = tuple(row["inputs"])
                table.setdefault(args, {})
                table[args][row["output"]] = table[args].get(row["output"], 0) + int(row["coeff"])
            ops[int(d)] = table
        return cls(int(data["p"]), degrees, ops, unit=data.get("unit"),
                   label=data.get("label", ""))


def check_ainf_relations(algebra, max_arity=None, signs=FROZEN_SIGNS):
    """Exhaustively verify the structure relations up to max_arity.

    Returns (ok, defects) where defects lists (d, word, residual) triples.
    """
    A = algebra
    cap = max_arity if max_arity is not None else max(2 * A.max_arity() - 1, 2)
    defects = []
    for d in range(1, cap + 1):
        relevant = [(m, d - m + 1) for m in range(1, d + 1)
                    if m in A.ops and (d - m + 1) in A.ops]
        if not relevant:
            continue
        for word in itertools.product(A.names, repeat=d):
            acc = {}
            for m in range(1, d + 1):
                if m not in A.ops or (d - m + 1) not in A.ops:
                    continue
                for u in range(0, d - m + 1):
                    inner = A.mu(word[u:u + m])
                    if not inner:
                        continue
                    e = SignConvention.boundary_exp(d, u, m)
                    e += m * sum(A.degree[x] for x in word[:u])
                    sign = -1 if e % 2 else 1
                    for mid, c1 in inner.items():
                        outer = A.mu(word[:u] + (mid,) + word[u + m:])
                        for out, c2 in outer.items():
                            acc[out] = (acc.get(out, 0) + sign * c1 * c2) % A.p
            acc = {k: c for k, c in acc.items() if c}
            if acc:
                defects.append((d, word, acc))
                if len(defects) >= 10:
                    return False, defects
    return not defects, defects


def _unital_ops(p, names, degree, unit, products):
    """mu^2 table from an associative product dict ((a,b) -> {name: c})."""
    table = {}
    for x in names:
        table[(unit, x)] = {x: 1}
        if x != unit:
            table[(x, unit)] = {x: 1}
    for (a, b), out in products.items():
        table[(a, b)] = dict(out)
    return {2: table}


def builtin_algebra(name, p, **params):
    if name == "ground_field":
        return AInfAlgebra(p, {"e": 0}, _unital_ops(p, ("e",), {"e": 0}, "e", {}),
                           unit="e", label="ground_field")

    if name == "dual_numbers":
        g = int(params.get("degree", 2))
        degs = {"e": 0, "x": g}
        prods = {("x", "x"): {}}
        return AInfAlgebra(p, degs, _unital_ops(p, ("e", "x"), degs, "e", prods),
                           unit="e", label=f"dual_numbers(|x|={g})")

    if name == "truncated_poly":
        m = int(params.get("power", 3))
        g = int(params.get("degree", 2))
        if m < 2:
            raise ValueError("power must be >= 2")
        if g % 2 and m > 2:
            raise ValueError("odd generator needs power 2")
        names = ["e"] + [f"x{i}" if i > 1 else "x" for i in range(1, m)]
        degs = {n: i * g for i, n in enumerate(names)}
        prods = {}
        for i in range(1, m):
            for j in range(1, m):
                a, b = names[i], names[j]
                prods[(a, b)] = {names[i + j]: 1} if i + j < m else {}
        return AInfAlgebra(p, degs, _unital_ops(p, tuple(names), degs, "e", prods),
                           unit="e", label=f"truncated_poly({m},|x|={g})")

    if name == "exterior":
        k = int(params.get("generators", 2))
        gdegs = params.get("degrees", (1,) * k)
        if len(gdegs) != k or any(d % 2 == 0 for d in gdegs):
            raise ValueError("exterior generators must be odd-degree")
        subsets = [tuple(s) for r in range(k + 1) for s in itertools.combinations(range(k), r)]
        namef = lambda s: "e" if not s else "x" + "".join(str(i + 1) for i in s)
        degs = {namef(s): sum(gdegs[i] for i in s) for s in subsets}
        prods = {}
        for s in subsets:
            for t in subsets:
                if not s or not t:
                    continue
                if set(s) & set(t):
                    prods[(namef(s), namef(t))] = {}
                    continue
                swaps = sum(1 for a in s for b in t if a > b)
                prods[(namef(s), namef(t))] = {namef(tuple(sorted(s + t))): (-1) ** swaps % p}
        return AInfAlgebra(p, degs, _unital_ops(p, tuple(namef(s) for s in subsets), degs, "e", prods),
                           unit="e", label=f"exterior({k})")

    if name == "zero_multiplication":
        degs = params.get("degrees", (1,))
        names = {f"z{i}": int(d) for i, d in enumerate(degs)}
        return AInfAlgebra(p, names, {}, unit=None,
                           label=f"zero_multiplication{tuple(degs)}")

    if name == "mu3_witness":
        ops = {3: {("a", "a", "a"): {"b": 1}}}
        return AInfAlgebra(p, {"a": 0, "b": -1}, ops, unit=None, label="mu3_witness")

    if name == "dg_square_zero":
        g = int(params.get("degree", 1))
        degs = {"e": 0, "x": g, "y": g + 1}
        prods = {(a, b): {} for a in ("x", "y") for b in ("x", "y")}
        ops = _unital_ops(p, ("e", "x", "y"), degs, "e", prods)
        ops[1] = {("x",): {"y": 1}}
        return AInfAlgebra(p, degs, ops, unit="e", label=f"dg_square_zero(|x|={g})")

    if name == "acyclic_pair":
        ops = {1: {("x",): {"y": 1}}}
        return AInfAlgebra(p, {"x": 0, "y": 1}, ops, unit=None, label="acyclic_pair")

    raise ValueError(f"unknown builtin {name!r}")


BUILTIN_NAMES = ("ground_field", "dual_numbers", "truncated_poly", "exterior",
                 "zero_multiplication", "mu3_witness", "dg_square_zero", "acyclic_pair")
