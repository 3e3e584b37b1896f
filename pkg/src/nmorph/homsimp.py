"""Simplices of the Hom simplicial set between two truncated A-infinity algebras.

Everything here works in bar form: an n-simplex is a family F_I^(m) of maps
(sA)^{(x)m} -> sB of degree |I| = -dim I, one for each face I of the
n-simplex, and the defining equation is that of a dg-coalgebra map out of the
simplex chains tensored with the bar construction:

    sum_j (-1)^j F_{d_j I} + (-1)^{|I|} sum F_I (id (x) b (x) id)
        = sum_{overlapping partitions} b_s (F_{I_1} (x) ... (x) F_{I_s}).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import sympy

from .ainf import Lifts, compositions, insertions, random_map
from .koszul import GradedMap, GradedModule, ShapeError, identity, tensor_maps, zero_map, compose
from .simplex import (Face, codegeneracy, coface, deg, enumerate_overlapping, face_name, faces,
                      simplicial_diff)

Maps = dict[tuple[Face, int], GradedMap]


class InvalidHorn(ValueError):
    """Horn data that does not satisfy its own equations."""


@dataclass
class BarPair:
    """Source and target bar structures, truncated at ``cap``."""

    sA: GradedModule
    sB: GradedModule
    bA: dict[int, GradedMap]
    bB: dict[int, GradedMap]
    cap: int

    def __post_init__(self) -> None:
        self.la = Lifts(self.sA, self.bA)

    def zero(self, m: int, degree: int) -> GradedMap:
        return zero_map([self.sA] * m, self.sB, degree)

    def precompose_b(self, F: Mapping[int, GradedMap], m: int, degree: int) -> GradedMap:
        total = self.zero(m, degree + 1)
        for i1, i2, i3 in insertions(m):
            f = F.get(i1 + 1 + i3)
            if f is None or f.is_zero():
                continue
            total = total + compose(f, self.la.lift(i1, i2, i3))
        return total

    def to_json(self) -> dict:
        return {
            "cap": self.cap,
            "source": self.sA.to_json(),
            "target": self.sB.to_json(),
            "b_source": {str(k): v.to_json() for k, v in sorted(self.bA.items())},
            "b_target": {str(k): v.to_json() for k, v in sorted(self.bB.items())},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "BarPair":
        sA = GradedModule.from_json(data["source"])
        sB = GradedModule.from_json(data["target"])
        cap = int(data["cap"])
        bA = {int(k): GradedMap.from_json(v, [sA] * int(k), sA)
              for k, v in data["b_source"].items()}
        bB = {int(k): GradedMap.from_json(v, [sB] * int(k), sB) for k, v in data["b_target"].items()}
        for k in range(1, cap + 1):
            bA.setdefault(k, zero_map([sA] * k, sA, 1))
            bB.setdefault(k, zero_map([sB] * k, sB, 1))
        return cls(sA, sB, bA, bB, cap)


def tensor_terms(pair: BarPair, get, parts: Sequence[Face], m: int):
    """All b_s(F_{I_1}^{(a_1)} (x) ... ) with a_1 + ... + a_s = m."""
    s = len(parts)
    for arities in compositions(m, s):
        fs = [get(P, a) for P, a in zip(parts, arities)]
        if any(f is None or f.is_zero() for f in fs):
            continue
        yield compose(pair.bB[s], tensor_maps(fs))


@dataclass
class HomSimplex:
    n: int
    pair: BarPair
    maps: Maps = field(default_factory=dict)

    def get(self, I: Face, m: int) -> GradedMap:
        f = self.maps.get((I, m))
        if f is None:
            return self.pair.zero(m, deg(I))
        return f

    def residual(self, I: Face, m: int) -> GradedMap:
        return face_residual(self.pair, self.get, I, m)

    def residuals(self, cap: int | None = None) -> dict[tuple[Face, int], GradedMap]:
        cap = min(cap or self.pair.cap, self.pair.cap)
        out = {}
        for I in faces(self.n):
            for m in range(1, cap + 1):
                r = self.residual(I, m)
                if not r.is_zero():
                    out[(I, m)] = r
        return out

    def is_valid(self, cap: int | None = None) -> bool:
        return not self.residuals(cap)

    def face(self, j: int) -> "HomSimplex":
        """d_j: precompose labels with the coface inclusion missing vertex j."""
        if not 0 <= j <= self.n or self.n == 0:
            raise ValueError("face index out of range")
        maps = {}
        for J in faces(self.n - 1):
            for m in range(1, self.pair.cap + 1):
                f = self.maps.get((coface(j, J), m))
                if f is not None:
                    maps[(J, m)] = f
        return HomSimplex(self.n - 1, self.pair, maps)

    def degeneracy(self, j: int) -> "HomSimplex":
        """s_j: labels collapsing the edge [j<j+1] are sent to zero."""
        if not 0 <= j <= self.n:
            raise ValueError("degeneracy index out of range")
        maps = {}
        for J in faces(self.n + 1):
            K = codegeneracy(j, J)
            if K is None:
                continue
            for m in range(1, self.pair.cap + 1):
                f = self.maps.get((K, m))
                if f is not None:
                    maps[(J, m)] = f
        return HomSimplex(self.n + 1, self.pair, maps)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "pair": self.pair.to_json(),
            "maps": sorted(([list(I), m, f.to_json()] for (I, m), f in self.maps.items()
                            if not f.is_zero()), key=lambda r: (len(r[0]), r[0], r[1])),
        }

    @classmethod
    def from_json(cls, data: Mapping, pair: BarPair | None = None) -> "HomSimplex":
        pair = pair or BarPair.from_json(data["pair"])
        maps = {}
        for I, m, f in data["maps"]:
            I = tuple(int(v) for v in I)
            maps[(I, int(m))] = GradedMap.from_json(f, [pair.sA] * int(m), pair.sB)
            if maps[(I, int(m))].coeffs and maps[(I, int(m))].degree != deg(I):
                raise ShapeError(f"component {face_name(I)} must have degree {deg(I)}")
        return cls(int(data["n"]), pair, maps)


def face_residual(pair: BarPair, get, I: Face, m: int) -> GradedMap:
    d = deg(I) + 1
    total = pair.zero(m, d)
    for J, c in simplicial_diff(I).items():
        total = total + get(J, m).scale(c)
    pre = pair.precompose_b({a: get(I, a) for a in range(1, m + 1)}, m, deg(I))
    total = total + (pre.scale(-1) if deg(I) % 2 else pre)
    for s in range(1, m + 1):
        for parts in enumerate_overlapping(I, s):
            for t in tensor_terms(pair, get, parts, m):
                total = total - t
    return total


# random instances

def random_pair(rng: random.Random, rank: int = 3, cap: int = 3, lo: int | None = None,
                hi: int | None = None, density: float = 0.5):
    """Two random algebras with a 0-simplex between them.

    The target is transported from the source along a random G with G_1 = id,
    so G is a valid 0-simplex.  Without explicit bounds the degrees are drawn
    from a random window {d, d+1} inside [-2, 2], which keeps most products
    degree-compatible.  Returns (pair, G).
    """
    from .ainf import random_bar_algebra, transport_bar

    if lo is None or hi is None:
        lo = rng.choice([-1, 0, 0, 1])
        hi = lo + 1
    A, sA, bA, _ = random_bar_algebra(rng, rank, cap, "x", lo, hi, density)
    G = {1: identity(sA)}
    for k in range(2, cap + 1):
        G[k] = random_map(rng, [sA] * k, sA, 0, density)
    bB = transport_bar(sA, bA, G, cap)
    return BarPair(sA, sA, bA, bB, cap), G


def random_simplex(rng: random.Random, pair: BarPair, base: Mapping[int, GradedMap], n: int,
                   density: float = 0.4, span: int = 2) -> HomSimplex:
    """A valid n-simplex with vertex 0 at ``base``.

    Components on faces containing 0 are random; each face I missing 0 is then
    solved from the equation of {0} u I, in which it enters only through the
    simplicial term with sign +1.
    """
    maps: Maps = {}
    for m, f in base.items():
        if m <= pair.cap:
            maps[((0,), m)] = f
    for d in range(1, n + 1):
        for J in faces(n, d):
            if J[0] != 0:
                continue
            for m in range(1, pair.cap + 1):
                maps[(J, m)] = random_map(rng, [pair.sA] * m, pair.sB, deg(J), density, span)
    sx = HomSimplex(n, pair, maps)
    for d in range(1, n + 1):
        for J in faces(n, d):
            if J[0] != 0:
                continue
            I = J[1:]
            for m in range(1, pair.cap + 1):
                maps[(I, m)] = maps.get((I, m), pair.zero(m, deg(I))) - sx.residual(J, m)
    return sx


# horns and the inner-horn filler

@dataclass
class Horn:
    n: int
    k: int
    pair: BarPair
    maps: Maps

    def faces(self) -> list[Face]:
        missing = {tuple(range(self.n + 1)), tuple(v for v in range(self.n + 1) if v != self.k)}
        return [I for I in faces(self.n) if I not in missing]

    def residuals(self) -> dict[tuple[Face, int], GradedMap]:
        sx = HomSimplex(self.n, self.pair, self.maps)
        out = {}
        for I in self.faces():
            for m in range(1, self.pair.cap + 1):
                r = sx.residual(I, m)
                if not r.is_zero():
                    out[(I, m)] = r
        return out

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "pair": self.pair.to_json(),
                "maps": HomSimplex(self.n, self.pair, self.maps).to_json()["maps"]}

    @classmethod
    def from_json(cls, data: Mapping) -> "Horn":
        sx = HomSimplex.from_json({"n": data["n"], "pair": data["pair"], "maps": data["maps"]})
        return cls(int(data["n"]), int(data["k"]), sx.pair, sx.maps)


def horn_of(sx: HomSimplex, k: int) -> Horn:
    full = tuple(range(sx.n + 1))
    kh = tuple(v for v in full if v != k)
    maps = {(I, m): f for (I, m), f in sx.maps.items() if I not in (full, kh)}
    return Horn(sx.n, k, sx.pair, maps)


def fill_inner_horn(horn: Horn, top: Mapping[int, GradedMap] | None = None,
                    check: bool = True, allow_outer: bool = False) -> HomSimplex:
    """The filler with prescribed top component.

    F_{k-hat} = (-1)^k ( sum_{j != k} (-1)^{j+1} F_{j-hat} + sum b_s(F_{I_1} (x) ... )
                         + (-1)^{n+1} sum F_top (id (x) b (x) id) ),
    computed arity by arity (only needed for the outer horns, where the
    missing face appears in partitions with lower arity).
    """
    n, k, pair = horn.n, horn.k, horn.pair
    if not (0 < k < n) and not allow_outer:
        raise ValueError("only inner horns 0 < k < n are fillable by formula")
    if check:
        bad = horn.residuals()
        if bad:
            raise InvalidHorn(f"horn data fails its equations at {len(bad)} (face, arity) pairs")
    full = tuple(range(n + 1))
    kh = tuple(v for v in full if v != k)
    maps = dict(horn.maps)
    for m in range(1, pair.cap + 1):
        f = (top or {}).get(m)
        maps[(full, m)] = f if f is not None else pair.zero(m, -n)
    sx = HomSimplex(n, pair, maps)
    sign = -1 if k % 2 else 1
    for m in range(1, pair.cap + 1):
        maps[(kh, m)] = pair.zero(m, deg(kh))
        # the residual at the top face is linear in F_{k-hat}^{(m)} with coefficient (-1)^k
        r = sx.residual(full, m)
        maps[(kh, m)] = r.scale(-sign)
    return sx


# pi_n representatives

@dataclass
class PiNRep:
    n: int
    pair: BarPair
    base: dict[int, GradedMap]
    top: dict[int, GradedMap]

    def get_top(self, m: int) -> GradedMap:
        return self.top.get(m) or self.pair.zero(m, -self.n)

    def sphere(self) -> HomSimplex:
        """The n-simplex with every vertex at the base point and top F_Delta."""
        maps: Maps = {}
        for v in range(self.n + 1):
            for m, f in self.base.items():
                maps[((v,), m)] = f
        full = tuple(range(self.n + 1))
        for m, f in self.top.items():
            maps[(full, m)] = f
        return HomSimplex(self.n, self.pair, maps)

    def to_json(self) -> dict:
        return {"n": self.n, "pair": self.pair.to_json(),
                "base": {str(m): f.to_json() for m, f in sorted(self.base.items())},
                "top": {str(m): f.to_json() for m, f in sorted(self.top.items())}}

    @classmethod
    def from_json(cls, data: Mapping, pair: BarPair | None = None) -> "PiNRep":
        pair = pair or BarPair.from_json(data["pair"])
        base = {int(m): GradedMap.from_json(f, [pair.sA] * int(m), pair.sB)
                for m, f in data["base"].items()}
        top = {int(m): GradedMap.from_json(f, [pair.sA] * int(m), pair.sB)
               for m, f in data["top"].items()}
        return cls(int(data["n"]), pair, base, top)


def _around(pair: BarPair, base: Mapping[int, GradedMap], mid: Mapping[int, GradedMap],
            m: int, degree: int) -> GradedMap:
    """sum b_{s+1+t}(F^{(x)s} (x) X (x) F^{(x)t}) in arity m."""
    total = pair.zero(m, degree + 1)
    for width in range(1, m + 1):
        for pos in range(width):
            for arities in compositions(m, width):
                fs = [mid.get(a) if i == pos else base.get(a) for i, a in enumerate(arities)]
                if any(f is None or f.is_zero() for f in fs):
                    continue
                total = total + compose(pair.bB[width], tensor_maps(fs))
    return total


def pin_residual(rep: PiNRep, m: int) -> GradedMap:
    """(-1)^n sum F_Delta(id (x) b (x) id) - sum b(F (x) .. (x) F_Delta (x) .. (x) F)."""
    pair, n = rep.pair, rep.n
    pre = pair.precompose_b(rep.top, m, -n)
    lhs = pre.scale(-1) if n % 2 else pre
    return lhs - _around(pair, rep.base, rep.top, m, -n)


def pin_rep_check(rep: PiNRep) -> dict:
    bad = {}
    for m in range(1, rep.pair.cap + 1):
        r = pin_residual(rep, m)
        if not r.is_zero():
            bad[str(m)] = r.to_json()
    return {"ok": not bad, "verified_arities": [1, rep.pair.cap], "residuals": bad}


def homotopy_residual(F: PiNRep, G: PiNRep, H: Mapping[int, GradedMap], m: int) -> GradedMap:
    """G - F + (-1)^{n+1} sum H(id (x) b (x) id) - sum b(F .. (x) H (x) .. F)."""
    pair, n = F.pair, F.n
    pre = pair.precompose_b(H, m, -(n + 1))
    pre = pre.scale(-1) if (n + 1) % 2 else pre
    return G.get_top(m) - F.get_top(m) + pre - _around(pair, F.base, H, m, -(n + 1))


def homotopic_check(F: PiNRep, G: PiNRep, H: Mapping[int, GradedMap]) -> dict:
    _same_base(F, G)
    bad = {}
    for m in range(1, F.pair.cap + 1):
        r = homotopy_residual(F, G, H, m)
        if not r.is_zero():
            bad[str(m)] = r.to_json()
    return {"ok": not bad, "verified_arities": [1, F.pair.cap], "residuals": bad}


def _same_base(F: PiNRep, G: PiNRep) -> None:
    if F.n != G.n:
        raise ValueError("representatives live in different dimensions")
    for m in set(F.base) | set(G.base):
        a, b = F.base.get(m), G.base.get(m)
        if (a is None or a.is_zero()) and (b is None or b.is_zero()):
            continue
        if a != b:
            raise ValueError("representatives do not share a base point")


def _unknown_map(pair: BarPair, m: int, degree: int):
    """Symbols for every coefficient of a map (sA)^m -> sB of the given degree."""
    keys = []
    by_deg: dict[int, list[str]] = {}
    for x, d in pair.sB.basis:
        by_deg.setdefault(d, []).append(x)
    for inp in itertools.product(*[pair.sA.names()] * m):
        d = sum(pair.sA.degree(x) for x in inp) + degree
        for o in by_deg.get(d, []):
            keys.append(((o,), inp))
    return keys


def _solve_linear(pair: BarPair, m: int, degree: int, build, rng: random.Random | None = None):
    """Find X^{(m)} with build(X) = 0, where build is affine in X.

    ``build(X)`` returns a GradedMap; affinity lets us read off the system by
    evaluating at zero and at unit vectors.  Returns a GradedMap with integer
    (or rational, as Fraction) coefficients, or None when inconsistent.  With
    ``rng`` a random integer point of the solution space is returned instead
    of the particular one.
    """
    keys = _unknown_map(pair, m, degree)
    base = build(pair.zero(m, degree))
    rows: dict = {}
    for key, c in base.coeffs.items():
        rows.setdefault(key, [0] * len(keys) + [0])
        rows[key][-1] = -c
    cols = []
    for j, key in enumerate(keys):
        e = GradedMap((pair.sA,) * m, (pair.sB,), degree, {key: 1})
        col = build(e) - base
        cols.append(col)
        for rk, c in col.coeffs.items():
            rows.setdefault(rk, [0] * len(keys) + [0])
            rows[rk][j] = c
    if not keys:
        return pair.zero(m, degree) if base.is_zero() else None
    if not rows:
        sol = [0] * len(keys)
        free = list(range(len(keys)))
    else:
        M = sympy.Matrix([r[:-1] for r in rows.values()])
        rhs = sympy.Matrix([r[-1] for r in rows.values()])
        try:
            part, params = M.gauss_jordan_solve(rhs)
        except ValueError:
            return None
        sol = list(part.subs({p: 0 for p in params}))
        free = None
        if rng is not None and len(params):
            null = M.nullspace()
            for v in null:
                c = rng.randint(-1, 1)
                sol = [a + c * b for a, b in zip(sol, v)]
    coeffs = {}
    for key, v in zip(keys, sol):
        v = sympy.Rational(v)
        if v != 0:
            coeffs[key] = int(v) if v.q == 1 else Fraction(int(v.p), int(v.q))
    if any(isinstance(c, Fraction) for c in coeffs.values()):
        return coeffs  # rational: caller decides
    return GradedMap((pair.sA,) * m, (pair.sB,), degree, coeffs)


def homotopy_solve(F: PiNRep, G: PiNRep):
    """H with homotopic_check(F, G, H) passing, or None if the system has no solution.

    A rational but non-integral solution is returned as a dict of raw
    coefficients per arity under the key "rational".
    """
    _same_base(F, G)
    H: dict[int, GradedMap] = {}
    for m in range(1, F.pair.cap + 1):
        def build(X, m=m):
            trial = dict(H)
            trial[m] = X
            return homotopy_residual(F, G, trial, m)

        X = _solve_linear(F.pair, m, -(F.n + 1), build)
        if X is None:
            return None
        if not isinstance(X, GradedMap):
            return {"rational": {m: X}}
        H[m] = X
    return H


def random_pin_rep(rng: random.Random, pair: BarPair, base: Mapping[int, GradedMap], n: int,
                   attempts: int = 4) -> PiNRep:
    """A valid representative obtained by solving the (linear) rep equation arity by arity."""
    top: dict[int, GradedMap] = {}
    for m in range(1, pair.cap + 1):
        def build(X, m=m):
            trial = dict(top)
            trial[m] = X
            return pin_residual(PiNRep(n, pair, dict(base), trial), m)

        X = _solve_linear(pair, m, -n, build, rng)
        if not isinstance(X, GradedMap):
            X = pair.zero(m, -n)
        top[m] = X
    return PiNRep(n, pair, dict(base), top)


def random_base(rng: random.Random, pair: BarPair) -> dict[int, GradedMap]:
    """A random 0-simplex when the target has b_{>=2} = 0 (the equation is then linear)."""
    if any(not pair.bB[k].is_zero() for k in range(2, pair.cap + 1)):
        raise ValueError("random_base needs a target with b_{>=2} = 0")
    base: dict[int, GradedMap] = {}
    for m in range(1, pair.cap + 1):
        def build(X, m=m):
            trial = dict(base)
            trial[m] = X
            return face_residual(pair, lambda I, a: trial.get(a) or pair.zero(a, 0), (0,), m)

        X = _solve_linear(pair, m, 0, build, rng)
        base[m] = X if isinstance(X, GradedMap) else pair.zero(m, 0)
    return base


def abelian_target_pair(rng: random.Random, rank: int = 3, cap: int = 3) -> BarPair:
    """Random source algebra; target a chain complex (b_{>=2} = 0) on a fresh module."""
    from .ainf import random_bar_algebra, random_differential, random_module
    from .koszul import suspend_module

    lo = rng.choice([-1, 0, 0, 1])
    _, sA, bA, _ = random_bar_algebra(rng, rank, cap, "x", lo, lo + 1)
    B = random_module(rng, rank, lo - 1, lo + 1, "y")
    sB = suspend_module(B)
    bB = {1: random_differential(rng, sB)}
    for k in range(2, cap + 1):
        bB[k] = zero_map([sB] * k, sB, 1)
    return BarPair(sA, sB, bA, bB, cap)


def nilpotent_target_pair(rng: random.Random, rank: int = 3, cap: int = 3) -> BarPair:
    """Like abelian_target_pair, but the target carries a single product b_2(sy0, sy1) = sy2.

    With b_1 = 0 on the target and y2 distinct from y0, y1 every composite of two
    products vanishes, so the target is a valid algebra.
    """
    from .ainf import random_bar_algebra
    from .koszul import suspend_module

    lo = rng.choice([-1, 0, 0, 1])
    _, sA, bA, _ = random_bar_algebra(rng, rank, cap, "x", lo, lo + 1)
    d0, d1 = rng.randint(lo - 1, lo + 1), rng.randint(lo - 1, lo + 1)
    B = GradedModule.of([("y0", d0), ("y1", d1), ("y2", d0 + d1)]
                        + [(f"y{i}", rng.randint(lo - 1, lo + 1)) for i in range(3, max(rank, 3))])
    sB = suspend_module(B)
    bB = {1: zero_map([sB], sB, 1),
          2: GradedMap((sB, sB), (sB,), 1, {(("sy2",), ("sy0", "sy1")): rng.choice([-1, 1])})}
    for k in range(3, cap + 1):
        bB[k] = zero_map([sB] * k, sB, 1)
    return BarPair(sA, sB, bA, bB, cap)


def compose_pin(F: PiNRep, G: PiNRep) -> PiNRep:
    """Composition in pi_n for n >= 2: coefficientwise sum of the top components."""
    _same_base(F, G)
    if F.n < 2:
        raise ValueError("use compose_pi1 for n = 1")
    top = {m: F.get_top(m) + G.get_top(m) for m in range(1, F.pair.cap + 1)}
    return PiNRep(F.n, F.pair, dict(F.base), top)


def compose_pi1(F: PiNRep, G: PiNRep) -> PiNRep:
    """G + F - sum b_{s+t+u+2}(F^{(x)s} (x) F_Delta (x) F^{(x)t} (x) G_Delta (x) F^{(x)u})."""
    _same_base(F, G)
    if F.n != 1:
        raise ValueError("compose_pi1 needs 1-dimensional representatives")
    pair = F.pair
    top = {}
    for m in range(1, pair.cap + 1):
        total = G.get_top(m) + F.get_top(m)
        for width in range(2, m + 1):
            for p in range(width):
                for q in range(p + 1, width):
                    for arities in compositions(m, width):
                        fs = []
                        for i, a in enumerate(arities):
                            if i == p:
                                fs.append(F.top.get(a))
                            elif i == q:
                                fs.append(G.top.get(a))
                            else:
                                fs.append(F.base.get(a))
                        if any(f is None or f.is_zero() for f in fs):
                            continue
                        total = total - compose(pair.bB[width], tensor_maps(fs))
        top[m] = total
    return PiNRep(1, pair, dict(F.base), top)


def pi1_via_filler(F: PiNRep, G: PiNRep) -> PiNRep:
    """The same composite, read off from the (2,1)-horn filler with zero top."""
    pair = F.pair
    maps: Maps = {}
    for v in range(3):
        for m, f in F.base.items():
            maps[((v,), m)] = f
    for m in range(1, pair.cap + 1):
        maps[((0, 1), m)] = F.get_top(m)
        maps[((1, 2), m)] = G.get_top(m)
    sx = fill_inner_horn(Horn(2, 1, pair, maps), check=False)
    return PiNRep(1, pair, dict(F.base), {m: sx.get((0, 2), m) for m in range(1, pair.cap + 1)})


# the prism Delta^1 x Delta^n

def prism_simplices(n: int, dim: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Non-degenerate dim-simplices of Delta^1 x Delta^n as two-row arrays."""
    out = []
    for top in itertools.combinations_with_replacement(range(2), dim + 1):
        for bot in itertools.combinations_with_replacement(range(n + 1), dim + 1):
            if any(top[j] == top[j + 1] and bot[j] == bot[j + 1] for j in range(dim)):
                continue
            out.append((tuple(top), tuple(bot)))
    return out


def is_degenerate(pair_rows: tuple[Sequence[int], Sequence[int]]) -> bool:
    a, b = pair_rows
    return any(a[j] == a[j + 1] and b[j] == b[j + 1] for j in range(len(a) - 1))


def prism_nondegenerate(n: int) -> dict:
    """Top simplices and the interior n-simplices of Delta^1 x Delta^n."""
    if n < 1:
        raise ValueError("n must be at least 1")
    tops = prism_simplices(n, n + 1)
    inner = [s for s in prism_simplices(n, n)
             if set(s[0]) == {0, 1} and set(s[1]) == set(range(n + 1))]
    return {"top": tops, "inner": inner}


def prism_top(n: int, k: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    return ((0,) * (k + 1) + (1,) * (n - k + 1), tuple(range(k + 1)) + tuple(range(k, n + 1)))


def prism_inner(n: int, k: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    return ((0,) * k + (1,) * (n - k + 1), tuple(range(n + 1)))


def prism_equation(pair: BarPair, base, L: Sequence[Mapping[int, GradedMap]],
                   H: Sequence[Mapping[int, GradedMap]], n: int, k: int, m: int) -> GradedMap:
    """(-1)^{k+1} L_{k+1} + (-1)^k L_k + (-1)^{n+1} sum H_k(id b id) - sum b(F..H_k..F)."""
    lo = L[k].get(m) or pair.zero(m, -n)
    hi = L[k + 1].get(m) or pair.zero(m, -n)
    total = (hi.scale(-1) if (k + 1) % 2 else hi) + (lo.scale(-1) if k % 2 else lo)
    pre = pair.precompose_b(H[k], m, -(n + 1))
    total = total + (pre.scale(-1) if (n + 1) % 2 else pre)
    return total - _around(pair, base, H[k], m, -(n + 1))


@dataclass
class PrismData:
    n: int
    L: list[dict[int, GradedMap]]
    H: list[dict[int, GradedMap]]

    def collapse(self, pair: BarPair) -> dict[int, GradedMap]:
        """H = sum (-1)^k H_k, a homotopy from L_{n+1} to L_0."""
        out = {}
        for m in range(1, pair.cap + 1):
            total = pair.zero(m, -(self.n + 1))
            for k, Hk in enumerate(self.H):
                f = Hk.get(m)
                if f is not None:
                    total = total + (f.scale(-1) if k % 2 else f)
            out[m] = total
        return out


def prism_check(F: PiNRep, data: PrismData) -> bool:
    pair, n = F.pair, F.n
    return all(prism_equation(pair, F.base, data.L, data.H, n, k, m).is_zero()
               for k in range(n + 1) for m in range(1, pair.cap + 1))


def assemble_prism_homotopy(F: PiNRep, G: PiNRep, H: Mapping[int, GradedMap]) -> tuple[PrismData, bool]:
    """Prism data from a homotopy: L_0 = G, L_k = F otherwise, H_0 = H, H_k = 0."""
    _same_base(F, G)
    n = F.n
    L = [dict(G.top)] + [dict(F.top) for _ in range(n + 1)]
    Hs = [dict(H)] + [{} for _ in range(n)]
    data = PrismData(n, L, Hs)
    return data, prism_check(F, data)


def random_prism(rng: random.Random, F0: PiNRep, density: float = 0.4) -> tuple[PiNRep, PrismData]:
    """Random prism data: start at L_0, pick every H_k at random, solve for L_{k+1}.

    Returns the representative L_{n+1} at the far end and the data.
    """
    pair, n = F0.pair, F0.n
    L = [dict(F0.top)]
    Hs = []
    for k in range(n + 1):
        Hk = {m: random_map(rng, [pair.sA] * m, pair.sB, -(n + 1), density) for m in range(1, pair.cap + 1)}
        Hs.append(Hk)
        nxt = {}
        for m in range(1, pair.cap + 1):
            # solve the k-th equation for L_{k+1}, whose coefficient is (-1)^{k+1}
            r = prism_equation(pair, F0.base, L + [{}], Hs, n, k, m)
            nxt[m] = r.scale(-1) if (k + 1) % 2 == 0 else r
        L.append(nxt)
    end = PiNRep(n, pair, dict(F0.base), L[-1])
    return end, PrismData(n, L, Hs)


# the 13234 homotopy sign solver

def aw_lift_solver(n: int, max_kernel: int = 16) -> dict:
    """Signs for I -> sum +-I1 (x) I3 (x) (I2 u I4) (x) I5 making a chain homotopy.

    Requires d h + h d = upper - lower on every face of the n-simplex, where
    upper and lower are the 1324 and 1234 composites.  The equation at a face
    I is linear in the signs attached to I's own terms once the signs on the
    faces of I are fixed, so faces are handled by increasing dimension; each
    step solves over the rationals and enumerates the kernel for a +-1 point.
    The search is greedy across faces (no backtracking into lower faces).
    """
    from .simplex import ansatz_terms, lower_composite, tensor4_diff, upper_composite

    terms = {I: ansatz_terms(I) for I in faces(n)}
    signs: dict[Face, list[int]] = {}

    def h_of(I: Face, vec=None) -> dict:
        vec = signs[I] if vec is None else vec
        out: dict = {}
        for (_, key), c in zip(terms[I], vec):
            out[key] = out.get(key, 0) + c
        return out

    def lhs(I: Face, vec) -> dict:
        out: dict = {}
        for key, c in h_of(I, vec).items():
            for k2, v in tensor4_diff(key).items():
                out[k2] = out.get(k2, 0) + c * v
        for J, c in simplicial_diff(I).items():
            for key, v in h_of(J).items():
                out[key] = out.get(key, 0) + c * v
        return out

    verdict, failed = "solved", None
    for I in sorted(faces(n), key=len):
        target = _sub4(upper_composite(I), lower_composite(I))
        k = len(terms[I])
        base = lhs(I, [0] * k)
        cols = []
        for j in range(k):
            e = [0] * k
            e[j] = 1
            col = lhs(I, e)
            cols.append({r: col.get(r, 0) - base.get(r, 0) for r in col})
        rhs_map = _sub4(target, base)
        rows = sorted({r for c in cols for r, v in c.items() if v} | set(rhs_map))
        vec = None
        if not rows:
            vec = [1] * k
        elif k == 0:
            vec = None
        else:
            M = sympy.Matrix([[c.get(r, 0) for c in cols] for r in rows])
            b = sympy.Matrix([rhs_map.get(r, 0) for r in rows])
            try:
                part, params = M.gauss_jordan_solve(b)
            except ValueError:
                part, params = None, None
            if part is not None:
                params = list(params)
                if len(params) > max_kernel:
                    verdict, failed = "kernel too large to enumerate", face_name(I)
                    break
                for values in itertools.product((1, -1), repeat=len(params)):
                    sub = dict(zip(params, values))
                    cand = [part[i].subs(sub) for i in range(k)]
                    if all(v in (1, -1) for v in cand):
                        vec = [int(v) for v in cand]
                        break
        if vec is None:
            verdict, failed = "no assignment within the ansatz", face_name(I)
            break
        signs[I] = vec
    table = {}
    if verdict == "solved":
        for I, vec in signs.items():
            for (P, _), c in zip(terms[I], vec):
                table["|".join(face_name(Q) for Q in P)] = c
    return {"n": n, "verdict": verdict, "ok": verdict == "solved", "failed_face": failed,
            "signs": dict(sorted(table.items()))}


def homotopy_13234(n: int, table: Mapping[str, int]) -> dict:
    """The signed 13234 map on the top face, rebuilt from a solver table."""
    from .simplex import ansatz_terms
    out: dict = {}
    for P, key in ansatz_terms(tuple(range(n + 1))):
        c = table["|".join(face_name(Q) for Q in P)]
        out[key] = out.get(key, 0) + c
    return {k: v for k, v in out.items() if v}


def _sub4(a: Mapping, b: Mapping) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) - v
    return {k: v for k, v in out.items() if v}


# translation to the desuspended (convention B) picture

def desuspended(sM: GradedModule) -> GradedModule:
    return GradedModule.of(((n[1:] if n.startswith("s") else "w" + n), d + 1) for n, d in sM.basis)


def algebras_of(pair: BarPair):
    from .ainf import AInfAlgebra

    A, B = desuspended(pair.sA), desuspended(pair.sB)
    return (AInfAlgebra.from_bar(A, pair.bA, pair.cap, pair.sA),
            AInfAlgebra.from_bar(B, pair.bB, pair.cap, pair.sB))


def to_nmorphism(sx: "HomSimplex"):
    """f_I^{(m)} = w F_I^{(m)} s^{(x)m}, an n-morphism in convention (B)."""
    from .ainf import NMorphism
    from .koszul import desuspend_conjugate

    A, B = algebras_of(sx.pair)
    maps = {}
    for (I, m), F in sx.maps.items():
        f = desuspend_conjugate(F, A.module, B.module)
        maps[(I, m)] = GradedMap(f.source, f.target, 1 - m + deg(I), f.coeffs)
    return NMorphism(sx.n, A, B, maps, sx.pair.cap)


def from_nmorphism(F, pair: BarPair) -> "HomSimplex":
    """Inverse of to_nmorphism: F_I^{(m)} = (-1)^{binom(m,2)} s f_I^{(m)} w^{(x)m}."""
    from .koszul import roundtrip_sign, suspend_conjugate

    maps = {}
    for (I, m), f in F.maps.items():
        G = suspend_conjugate(f, pair.sA, pair.sB).scale(roundtrip_sign(m))
        maps[(I, m)] = GradedMap(G.source, G.target, deg(I), G.coeffs)
    return HomSimplex(F.n, pair, maps)
