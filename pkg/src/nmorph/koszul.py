"""Finite-rank graded modules over the integers and sparse multilinear maps.

Degrees are cohomological: differentials have degree +1.  A map of arity k
with q outputs is stored as a sparse dictionary ``(out_tuple, in_tuple) ->
int``; tensor products of maps and composites are evaluated on basis tuples
with the Koszul sign rule, so every sign in the package ultimately comes
from :func:`tensor_maps`.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Mapping, Sequence

Key = tuple[str, ...]
Element = dict[Key, int]


class ShapeError(ValueError):
    """Arity, module or degree mismatch between maps."""


@dataclass(frozen=True)
class GradedModule:
    basis: tuple[tuple[str, int], ...]

    def __post_init__(self) -> None:
        names = [b[0] for b in self.basis]
        if len(set(names)) != len(names):
            raise ValueError("basis names must be unique")
        object.__setattr__(self, "_deg", dict(self.basis))

    @classmethod
    def of(cls, pairs: Iterable[tuple[str, int]]) -> "GradedModule":
        return cls(tuple((str(n), int(d)) for n, d in pairs))

    def degree(self, name: str) -> int:
        return self._deg[name]  # type: ignore[attr-defined]

    def names(self) -> list[str]:
        return [b[0] for b in self.basis]

    def __contains__(self, name: object) -> bool:
        return name in self._deg  # type: ignore[attr-defined]

    def __len__(self) -> int:
        return len(self.basis)

    def to_json(self) -> dict:
        return {"basis": [[n, d] for n, d in self.basis]}

    @classmethod
    def from_json(cls, data: Mapping) -> "GradedModule":
        return cls.of((n, d) for n, d in data["basis"])


def suspend_module(A: GradedModule, prefix: str = "s") -> GradedModule:
    """sA with (sA)^i = A^{i+1}: the basis element s x has degree |x| - 1."""
    return GradedModule.of((prefix + n, d - 1) for n, d in A.basis)


def tensor_degree(mods: Sequence[GradedModule], key: Key) -> int:
    return sum(M.degree(x) for M, x in zip(mods, key))


def clean(e: Mapping[Key, int]) -> Element:
    return {k: v for k, v in e.items() if v}


def add_into(acc: dict, key, value: int) -> None:
    v = acc.get(key, 0) + value
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


@dataclass(frozen=True)
class GradedMap:
    """A homogeneous multilinear map ``source[0] x ... -> target[0] x ...``."""

    source: tuple[GradedModule, ...]
    target: tuple[GradedModule, ...]
    degree: int
    coeffs: Mapping[tuple[Key, Key], int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        cleaned = {}
        for (out, inp), c in self.coeffs.items():
            out, inp = tuple(out), tuple(inp)
            if not c:
                continue
            if len(inp) != len(self.source) or len(out) != len(self.target):
                raise ShapeError(f"coefficient {out}<-{inp} has wrong shape")
            din = tensor_degree(self.source, inp)
            dout = tensor_degree(self.target, out)
            if dout != din + self.degree:
                raise ShapeError(f"coefficient {out}<-{inp} breaks degree {self.degree}")
            cleaned[(out, inp)] = int(c)
        object.__setattr__(self, "coeffs", cleaned)

    @property
    def arity(self) -> int:
        return len(self.source)

    def column(self, inp: Key) -> Element:
        cols = self._columns()
        return cols.get(inp, {})

    def _columns(self) -> dict[Key, Element]:
        cache = self.__dict__.get("_cols")
        if cache is None:
            cache = {}
            for (out, inp), c in self.coeffs.items():
                cache.setdefault(inp, {})[out] = c
            object.__setattr__(self, "_cols", cache)
        return cache

    def apply(self, elem: Mapping[Key, int]) -> Element:
        out: dict[Key, int] = {}
        cols = self._columns()
        for inp, c in elem.items():
            for o, d in cols.get(inp, {}).items():
                add_into(out, o, c * d)
        return out

    def is_zero(self) -> bool:
        return not self.coeffs

    def _same_shape(self, other: "GradedMap") -> None:
        if self.source != other.source or self.target != other.target:
            raise ShapeError("maps live on different modules")
        if self.coeffs and other.coeffs and self.degree != other.degree:
            raise ShapeError("degree mismatch in sum")

    def __add__(self, other: "GradedMap") -> "GradedMap":
        self._same_shape(other)
        acc = dict(self.coeffs)
        for k, v in other.coeffs.items():
            add_into(acc, k, v)
        deg = self.degree if self.coeffs else other.degree
        return GradedMap(self.source, self.target, deg, acc)

    def __neg__(self) -> "GradedMap":
        return self.scale(-1)

    def __sub__(self, other: "GradedMap") -> "GradedMap":
        return self + (-other)

    def scale(self, c: int) -> "GradedMap":
        return GradedMap(self.source, self.target, self.degree,
                         {k: c * v for k, v in self.coeffs.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and dict(self.coeffs) == dict(other.coeffs)
                and (self.degree == other.degree or not self.coeffs))

    def __hash__(self) -> int:
        return hash((self.source, self.target, frozenset(self.coeffs.items())))

    def to_json(self) -> dict:
        rows = sorted([list(o), list(i), c] for (o, i), c in self.coeffs.items())
        return {"arity": self.arity, "degree": self.degree, "coeffs": rows}

    @classmethod
    def from_json(cls, data: Mapping, source: Sequence[GradedModule],
                  target: Sequence[GradedModule] | GradedModule) -> "GradedMap":
        if isinstance(target, GradedModule):
            target = (target,)
        if int(data["arity"]) != len(source):
            raise ShapeError("arity does not match the number of source modules")
        coeffs = {(tuple(o), tuple(i)): int(c) for o, i, c in data["coeffs"]}
        return cls(tuple(source), tuple(target), int(data["degree"]), coeffs)


def zero_map(source: Sequence[GradedModule], target: Sequence[GradedModule] | GradedModule,
             degree: int = 0) -> GradedMap:
    if isinstance(target, GradedModule):
        target = (target,)
    return GradedMap(tuple(source), tuple(target), degree, {})


def identity(A: GradedModule) -> GradedMap:
    return GradedMap((A,), (A,), 0, {((x,), (x,)): 1 for x in A.names()})


def basis_tuples(mods: Sequence[GradedModule]) -> Iterable[Key]:
    return itertools.product(*[M.names() for M in mods])


def tensor_maps(maps: Sequence[GradedMap]) -> GradedMap:
    """f_1 (x) ... (x) f_k with (f (x) g)(a (x) b) = (-1)^{|g||a|} f(a) (x) g(b)."""
    if not maps:
        raise ShapeError("empty tensor product")
    if len(maps) == 1:
        return maps[0]
    source = tuple(M for f in maps for M in f.source)
    target = tuple(M for f in maps for M in f.target)
    degree = sum(f.degree for f in maps)
    cols = [f._columns() for f in maps]
    coeffs: dict[tuple[Key, Key], int] = {}

    # walk over products of nonzero columns, tracking the degree of inputs passed
    def rec(j: int, inp: Key, out: Key, sign: int, passed: int) -> None:
        if j == len(maps):
            add_into(coeffs, (out, inp), sign)
            return
        f = maps[j]
        for i_j, col in cols[j].items():
            s = sign * (-1 if (f.degree * passed) % 2 else 1)
            d_in = tensor_degree(f.source, i_j)
            for o_j, c in col.items():
                rec(j + 1, inp + i_j, out + o_j, s * c, passed + d_in)

    rec(0, (), (), 1, 0)
    return GradedMap(source, target, degree, coeffs)


def compose(g: GradedMap, f: GradedMap) -> GradedMap:
    """g o f (f applied first); no sign beyond those stored in f and g."""
    if f.target != g.source:
        raise ShapeError("cannot compose: target of inner map is not the source of outer map")
    gcols = g._columns()
    acc: dict[tuple[Key, Key], int] = {}
    for (mid, inp), c in f.coeffs.items():
        for out, d in gcols.get(mid, {}).items():
            add_into(acc, (out, inp), c * d)
    return GradedMap(f.source, g.target, f.degree + g.degree, acc)


def koszul_tensor_apply(maps: Sequence[GradedMap], elem: Mapping[Key, int]) -> Element:
    """Evaluate (f_1 (x) ... (x) f_k) on a tensor element with Koszul signs."""
    width = sum(f.arity for f in maps)
    for key in elem:
        if len(key) != width:
            raise ShapeError("arities of the maps do not partition the tensor factors")
    return tensor_maps(list(maps)).apply(elem)


def koszul_compose(outer: Sequence[GradedMap], inner: Sequence[GradedMap]) -> GradedMap:
    """(f'_1 (x) ...) o (f_1 (x) ...), the crossing signs coming out of evaluation."""
    return compose(tensor_maps(list(outer)), tensor_maps(list(inner)))


def tensor_power_differential(d: GradedMap, k: int) -> GradedMap:
    """sum_i id^{i} (x) d (x) id^{k-1-i} on A^{(x)k}."""
    if d.arity != 1 or len(d.target) != 1:
        raise ShapeError("differential must be unary")
    A = d.source[0]
    idA = identity(A)
    total = zero_map([A] * k, [A] * k, d.degree)
    for i in range(k):
        total = total + tensor_maps([idA] * i + [d] + [idA] * (k - 1 - i))
    return total


def tensor_differential(ds: Sequence[GradedMap]) -> GradedMap:
    """Differential on M_1 (x) ... (x) M_k from one differential per factor."""
    ids = [identity(d.source[0]) for d in ds]
    total = zero_map([d.source[0] for d in ds], [d.source[0] for d in ds], 1)
    for i, d in enumerate(ds):
        total = total + tensor_maps(ids[:i] + [d] + ids[i + 1:])
    return total


def bracket(f: GradedMap, d_src: GradedMap | Sequence[GradedMap],
            d_tgt: GradedMap | Sequence[GradedMap]) -> GradedMap:
    """[d, f] = d_tgt o f - (-1)^{|f|} f o d_src.

    ``d_src`` is either one unary differential used on every input factor or
    one differential per input factor; likewise for ``d_tgt``.
    """
    src = list(d_src) if isinstance(d_src, (list, tuple)) else [d_src] * f.arity
    tgt = list(d_tgt) if isinstance(d_tgt, (list, tuple)) else [d_tgt] * len(f.target)
    for d in src + tgt:
        if d.arity != 1 or d.degree != 1:
            raise ShapeError("differentials must be unary of degree +1")
    D_src = tensor_differential(src)
    D_tgt = tensor_differential(tgt)
    left = compose(D_tgt, f)
    right = compose(f, D_src)
    if f.degree % 2:
        return left + right
    return left - right


def suspension(A: GradedModule, sA: GradedModule | None = None) -> GradedMap:
    """s : A -> sA of degree -1."""
    sA = sA or suspend_module(A)
    return GradedMap((A,), (sA,), -1,
                     {((y,), (x,)): 1 for (x, _), (y, _) in zip(A.basis, sA.basis)})


def desuspension(A: GradedModule, sA: GradedModule | None = None) -> GradedMap:
    """w : sA -> A of degree +1, inverse to s."""
    sA = sA or suspend_module(A)
    return GradedMap((sA,), (A,), 1,
                     {((x,), (y,)): 1 for (x, _), (y, _) in zip(A.basis, sA.basis)})


def _conj_modules(f: GradedMap, sA, sB):
    A = f.source[0]
    B = f.target[0]
    if any(M != A for M in f.source):
        raise ShapeError("conjugation expects all inputs in one module")
    return A, B, sA or suspend_module(A), sB or suspend_module(B)


def suspend_conjugate(f: GradedMap, sA: GradedModule | None = None,
                      sB: GradedModule | None = None) -> GradedMap:
    """f |-> s f w^{(x)k}; sends m_k of degree 2-k to b_k of degree 1."""
    A, B, sA, sB = _conj_modules(f, sA, sB)
    w = desuspension(A, sA)
    return compose(suspension(B, sB), compose(f, tensor_maps([w] * f.arity)))


def desuspend_conjugate(F: GradedMap, A: GradedModule, B: GradedModule | None = None) -> GradedMap:
    """F |-> w F s^{(x)k}.  Round trip with suspend_conjugate gives (-1)^{binom(k,2)}."""
    B = B or A
    sA = F.source[0]
    sB = F.target[0]
    s = suspension(A, sA)
    return compose(desuspension(B, sB), compose(F, tensor_maps([s] * F.arity)))


def sign(e: int) -> int:
    """(-1)^e as an int, also for negative e."""
    return -1 if e % 2 else 1


def roundtrip_sign(k: int) -> int:
    return -1 if comb(k, 2) % 2 else 1


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)
