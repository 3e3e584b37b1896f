"""Truncated A-infinity algebras, n-morphisms and their residual checkers.

Structures are stored twice over: in convention (B), as maps m_k of degree
2 - k on A, and in bar form, as maps b_k = s m_k w^{(x)k} of degree +1 on sA.
The bar form obeys the plain Koszul rule, so the bar-form equations serve as
an independent route to the signed convention-(B) formulas.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Callable, Iterable, Mapping, Sequence

from .koszul import (GradedMap, GradedModule, ShapeError, compose, desuspend_conjugate,
                     identity, roundtrip_sign, suspend_conjugate, suspend_module, tensor_maps, zero_map)
from .simplex import Face, deg, enumerate_overlapping, faces, simplicial_diff


def compositions(m: int, s: int) -> Iterable[tuple[int, ...]]:
    """Ordered s-tuples of positive integers summing to m."""
    if s <= 0 or m < s:
        return
    for cuts in itertools.combinations(range(1, m), s - 1):
        bounds = (0,) + cuts + (m,)
        yield tuple(b - a for a, b in zip(bounds, bounds[1:]))


def insertions(m: int) -> Iterable[tuple[int, int, int]]:
    """(i1, i2, i3) with i1 + i2 + i3 = m and i2 >= 1."""
    for i2 in range(1, m + 1):
        for i1 in range(m - i2 + 1):
            yield i1, i2, m - i2 - i1


class Lifts:
    """Cache of id^{i1} (x) g (x) id^{i3} for the maps of one algebra."""

    def __init__(self, module: GradedModule, ops: Mapping[int, GradedMap]):
        self.module = module
        self.ops = ops
        self._id = identity(module)
        self._cache: dict[tuple[int, int, int], GradedMap] = {}

    def lift(self, i1: int, k: int, i3: int) -> GradedMap:
        key = (i1, k, i3)
        if key not in self._cache:
            self._cache[key] = tensor_maps([self._id] * i1 + [self.ops[k]] + [self._id] * i3)
        return self._cache[key]


# algebras

@dataclass
class AInfAlgebra:
    """An A-infinity algebra truncated at ``cap``, in convention (B)."""

    module: GradedModule
    ops: dict[int, GradedMap]
    cap: int
    smodule: GradedModule = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.smodule is None:
            self.smodule = suspend_module(self.module)
        A = self.module
        for k in range(1, self.cap + 1):
            if k not in self.ops:
                self.ops[k] = zero_map([A] * k, A, 2 - k)
            f = self.ops[k]
            if f.source != (A,) * k or f.target != (A,):
                raise ShapeError(f"m_{k} has the wrong shape")
            if f.coeffs and f.degree != 2 - k:
                raise ShapeError(f"m_{k} must have degree {2 - k}")
        self._bar: dict[int, GradedMap] | None = None

    @property
    def bar(self) -> dict[int, GradedMap]:
        if self._bar is None:
            self._bar = {k: _with_degree(suspend_conjugate(f, self.smodule, self.smodule)
                                         .scale(roundtrip_sign(k)), 1)
                         for k, f in self.ops.items()}
        return self._bar

    @classmethod
    def from_bar(cls, A: GradedModule, b: Mapping[int, GradedMap], cap: int,
                 sA: GradedModule | None = None) -> "AInfAlgebra":
        ops = {k: _with_degree(desuspend_conjugate(bk, A, A), 2 - k) for k, bk in b.items()}
        alg = cls(A, ops, cap, sA or b[1].source[0])
        return alg

    def residual(self, k: int) -> GradedMap:
        """sum_{i1+i2+i3=k} (-1)^{i1 + i2 i3} m_{i1+1+i3} (id^{i1} (x) m_{i2} (x) id^{i3})."""
        L = Lifts(self.module, self.ops)
        total = zero_map([self.module] * k, self.module, 3 - k)
        for i1, i2, i3 in insertions(k):
            term = compose(self.ops[i1 + 1 + i3], L.lift(i1, i2, i3))
            total = total + (term.scale(-1) if (i1 + i2 * i3) % 2 else term)
        return total

    def bar_residual(self, k: int) -> GradedMap:
        return bar_relation(self.smodule, self.bar, k)


def _with_degree(f: GradedMap, d: int) -> GradedMap:
    return f if f.degree == d else GradedMap(f.source, f.target, d, f.coeffs)


def bar_relation(sA: GradedModule, b: Mapping[int, GradedMap], k: int) -> GradedMap:
    L = Lifts(sA, b)
    total = zero_map([sA] * k, sA, 2)
    for i1, i2, i3 in insertions(k):
        total = total + compose(b[i1 + 1 + i3], L.lift(i1, i2, i3))
    return total


def check_ainf(A: AInfAlgebra, cap: int | None = None) -> dict:
    cap = min(cap or A.cap, A.cap)
    res = {k: A.residual(k) for k in range(1, cap + 1)}
    bad = {k: r.to_json() for k, r in res.items() if not r.is_zero()}
    return {"ok": not bad, "verified_arities": [1, cap], "residuals": bad}


# random instances

def random_module(rng: random.Random, rank: int, lo: int = -2, hi: int = 2,
                  prefix: str = "x") -> GradedModule:
    return GradedModule.of((f"{prefix}{i}", rng.randint(lo, hi)) for i in range(rank))


def random_map(rng: random.Random, source: Sequence[GradedModule], target: GradedModule,
               degree: int, density: float = 0.5, span: int = 2) -> GradedMap:
    coeffs = {}
    outs_by_deg: dict[int, list[str]] = {}
    for n, d in target.basis:
        outs_by_deg.setdefault(d, []).append(n)
    for inp in itertools.product(*[M.names() for M in source]):
        d = sum(M.degree(x) for M, x in zip(source, inp)) + degree
        for o in outs_by_deg.get(d, []):
            if rng.random() < density:
                c = rng.randint(-span, span)
                if c:
                    coeffs[((o,), inp)] = c
    return GradedMap(tuple(source), (target,), degree, coeffs)


def random_differential(rng: random.Random, A: GradedModule) -> GradedMap:
    """A square-zero degree +1 map: pair off some basis elements x -> y with |y| = |x| + 1."""
    names = A.names()
    rng.shuffle(names)
    used: set[str] = set()
    coeffs = {}
    for x in names:
        if x in used:
            continue
        cands = [y for y in names if y not in used and y != x and A.degree(y) == A.degree(x) + 1]
        if cands and rng.random() < 0.7:
            y = rng.choice(cands)
            used.update({x, y})
            coeffs[((y,), (x,))] = rng.choice([-1, 1])
    return GradedMap((A,), (A,), 1, coeffs)


def transport_bar(sA: GradedModule, bA: Mapping[int, GradedMap],
                  G: Mapping[int, GradedMap], cap: int) -> dict[int, GradedMap]:
    """The bar structure b' on the same module making G (with G_1 = id) a morphism.

    Solves sum G(id (x) b (x) id) = sum b'_s(G (x) ... (x) G) arity by arity.
    """
    if G[1] != identity(sA):
        raise ValueError("transport expects G_1 = id")
    L = Lifts(sA, bA)
    out: dict[int, GradedMap] = {}
    for m in range(1, cap + 1):
        acc = zero_map([sA] * m, sA, 1)
        for i1, i2, i3 in insertions(m):
            acc = acc + compose(G[i1 + 1 + i3], L.lift(i1, i2, i3))
        for s in range(1, m):
            for parts in compositions(m, s):
                acc = acc - compose(out[s], tensor_maps([G[i] for i in parts]))
        out[m] = _with_degree(acc, 1)
    return out


def random_bar_algebra(rng: random.Random, rank: int, cap: int, prefix: str = "x",
                       lo: int = -2, hi: int = 2, density: float = 0.4,
                       module: GradedModule | None = None):
    """A random bar structure obtained by transporting a chain complex along a random G.

    Returns (A, sA, b, G) where G : (sA, b0) -> (sA, b) has G_1 = id and b0 = b_1 only.
    """
    A = module or random_module(rng, rank, lo, hi, prefix)
    sA = suspend_module(A)
    d = random_differential(rng, sA)
    b0 = {1: d}
    for k in range(2, cap + 1):
        b0[k] = zero_map([sA] * k, sA, 1)
    G = {1: identity(sA)}
    for k in range(2, cap + 1):
        G[k] = random_map(rng, [sA] * k, sA, 0, density)
    b = transport_bar(sA, b0, G, cap)
    return A, sA, b, G


def random_ainf(rng: random.Random, rank: int, cap: int, prefix: str = "x", **kw) -> AInfAlgebra:
    A, sA, b, _ = random_bar_algebra(rng, rank, cap, prefix, **kw)
    return AInfAlgebra.from_bar(A, b, cap, sA)


def truncated_polynomial(k: int = 3, degree: int = 0) -> AInfAlgebra:
    """Z[x]/(x^k) with |x| = degree (even), m_2 the product, everything else zero."""
    if degree % 2:
        raise ValueError("use an even degree so the product is graded commutative")
    A = GradedModule.of((f"x{i}", i * degree) for i in range(k))
    coeffs = {((f"x{i + j}",), (f"x{i}", f"x{j}")): 1
              for i in range(k) for j in range(k) if i + j < k}
    m2 = GradedMap((A, A), (A,), 0, coeffs)
    return AInfAlgebra(A, {2: m2}, 3)


# n-morphisms in convention (B)

def epsilon_B(i: Sequence[int], I_degs: Sequence[int]) -> int:
    """sum_j i_j sum_{k>j} |I_k| + sum_j (s-j)(1 - i_j - |I_j|), j counted from 1."""
    s = len(i)
    e = 0
    for j in range(s):
        e += i[j] * sum(I_degs[j + 1:])
        e += (s - (j + 1)) * (1 - i[j] - I_degs[j])
    return e


def epsilon_A(i: Sequence[int], I_degs: Sequence[int]) -> int:
    """sum_j (s-j)|I_j| + sum_j i_j sum_{k>j} (1 - i_k - |I_k|)."""
    s = len(i)
    e = 0
    for j in range(s):
        e += (s - (j + 1)) * I_degs[j]
        e += i[j] * sum(1 - i[k] - I_degs[k] for k in range(j + 1, s))
    return e


@dataclass
class NMorphism:
    """f_I^{(m)} : A^{(x)m} -> B of degree 1 - m + |I| for faces I of the n-simplex."""

    n: int
    source: AInfAlgebra
    target: AInfAlgebra
    maps: dict[tuple[Face, int], GradedMap]
    cap: int

    def get(self, I: Face, m: int) -> GradedMap:
        f = self.maps.get((I, m))
        if f is None:
            return zero_map([self.source.module] * m, self.target.module, 1 - m + deg(I))
        return f


def n_morphism_residual(F: NMorphism, I: Face, m: int) -> GradedMap:
    """Uniform convention-(B) equation, every term moved to one side.

    sum_j (-1)^j f_{d_j I} + (-1)^{|I|} sum (-1)^{i1 + i2 i3} f_I (id (x) m_{i2} (x) id)
      - sum_{s >= 1} (-1)^{eps_B} m_s (f_{I_1} (x) ... (x) f_{I_s})
    """
    A, B = F.source, F.target
    La = Lifts(A.module, A.ops)
    d = 2 - m + deg(I)
    total = zero_map([A.module] * m, B.module, d)
    for J, c in simplicial_diff(I).items():
        total = total + F.get(J, m).scale(c)
    sI = -1 if deg(I) % 2 else 1
    for i1, i2, i3 in insertions(m):
        term = compose(F.get(I, i1 + 1 + i3), La.lift(i1, i2, i3))
        sign = sI * (-1 if (i1 + i2 * i3) % 2 else 1)
        total = total + term.scale(sign)
    for s in range(1, m + 1):
        for parts in enumerate_overlapping(I, s):
            degs = [deg(P) for P in parts]
            for arities in compositions(m, s):
                fs = [F.get(P, a) for P, a in zip(parts, arities)]
                if any(f.is_zero() for f in fs):
                    continue
                term = compose(B.ops[s], tensor_maps(fs))
                sign = -1 if epsilon_B(arities, degs) % 2 else 1
                total = total - term.scale(sign)
    return total


def check_n_morphism(F: NMorphism, cap: int | None = None) -> dict:
    cap = min(cap or F.cap, F.cap)
    bad = {}
    for I in faces(F.n):
        for m in range(1, cap + 1):
            r = n_morphism_residual(F, I, m)
            if not r.is_zero():
                bad[f"{list(I)}:{m}"] = r.to_json()
    return {"ok": not bad, "verified_arities": [1, cap], "residuals": bad}


__all__ = [
    "AInfAlgebra", "NMorphism", "Lifts", "bar_relation", "check_ainf", "check_n_morphism",
    "compositions", "insertions", "epsilon_A", "epsilon_B", "n_morphism_residual",
    "random_module", "random_map", "random_differential", "random_bar_algebra", "random_ainf",
    "transport_bar", "truncated_polynomial",
]
