"""Truncated OmegaBAs-algebras and n-OmegaBAs-morphisms as representations.

An OmegaBAs-algebra assigns a map m_t of degree -e(t) to every stable ribbon
tree t; it is valid when t -> m_t intertwines the operad differential with
the bracket [d, -].  Broken trees are evaluated by composing the maps of
their components, in the order of their canonical orientation.  An
n-OmegaBAs-morphism assigns mu_{I,t_g} to every generator of the bimodule;
a basis element is evaluated through its decomposition mu(p; X_1, ..., X_b)
with X_a = generator o (plain trees), which makes evaluation a morphism of
bimodules into the endomorphism bimodule.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

import sympy

from .ainf import AInfAlgebra, Lifts, NMorphism, random_map
from .bimodules import (DEFAULT, Conventions, _solved_table, canonical_tokens, dagger,
                        gen_key, nombas_diff, split_gauge, split_root, srt_diff, srt_key)
from .koszul import GradedMap, GradedModule, compose, identity, tensor_maps, zero_map
from .simplex import Face, codegeneracy, deg, faces
from .trees import (G, LEAF, V, GaugedTree, canon, enumerate_trees, full_degree, graft_leaves,
                    node_of, shapes)


# evaluation of trees

def _component(v: V):
    """(shape of the component rooted at v, attachments per leaf)."""
    atts: list = []

    def rec(x):
        if isinstance(x, V) and x.tok is not None:
            return tuple(rec(c) for c in x.kids)
        atts.append(x)
        return LEAF

    return tuple(rec(c) for c in v.kids), atts


def _statuses(v: V) -> tuple[str, ...]:
    out: list[str] = []

    def rec(x: V):
        out.append(x.st)
        for c in x.kids:
            if isinstance(c, V) and c.tok is not None:
                rec(c)

    rec(v)
    return tuple(out)


def _tensor(maps: Sequence[GradedMap]) -> GradedMap:
    return maps[0] if len(maps) == 1 else tensor_maps(list(maps))


@dataclass
class OmegaBAsAlgebra:
    """Maps m_t for stable ribbon trees of arity <= cap, plus the differential."""

    module: GradedModule
    d: GradedMap
    ops: dict
    cap: int

    def op(self, shape) -> GradedMap:
        f = self.ops.get(shape)
        if f is None:
            k = len(_leaves(shape))
            from .trees import n_edges
            return zero_map([self.module] * k, self.module, -n_edges(shape))
        return f

    def evaluate(self, node) -> GradedMap:
        """m of a plain, possibly broken, tree node."""
        if node is None:
            return identity(self.module)
        shape, atts = _component(node)
        inner = [self.evaluate(a) for a in atts]
        return compose(self.op(shape), _tensor(inner))

    def evaluate_element(self, elem: Mapping) -> GradedMap | None:
        total = None
        for key, c in elem.items():
            node, _ = node_of(key)
            term = self.evaluate(node).scale(c)
            total = term if total is None else total + term
        return total


def _leaves(shape) -> list:
    if shape == LEAF:
        return [()]
    return [x for c in shape for x in _leaves(c)]


def twisted(dmap: GradedMap, dim: int | None) -> GradedMap:
    """(-1)^{(dim+1)k} d on degree k; unchanged when dim is None."""
    if dim is None:
        return dmap
    M = dmap.source[0]
    coeffs = {}
    for (o, i), c in dmap.coeffs.items():
        coeffs[(o, i)] = -c if ((dim + 1) * M.degree(i[0])) % 2 else c
    return GradedMap(dmap.source, dmap.target, dmap.degree, coeffs)


def bracket(f: GradedMap, dA: GradedMap, dB: GradedMap) -> GradedMap:
    """[d, f] = dB f - (-1)^{|f|} f (sum id (x) dA (x) id)."""
    k = len(f.source)
    L = Lifts(dA.source[0], {1: dA})
    total = compose(dB, f)
    s = -1 if f.degree % 2 else 1
    for i in range(k):
        total = total - compose(f, L.lift(i, 1, k - 1 - i)).scale(s)
    return total


def ombas_residual(A: OmegaBAsAlgebra, shape, twist: int | None = None) -> GradedMap:
    d = twisted(A.d, twist)
    lhs = bracket(A.op(shape), d, d)
    rhs = A.evaluate_element(srt_diff({srt_key(shape): 1}))
    return lhs if rhs is None else lhs - rhs


def check_ombas(A: OmegaBAsAlgebra, cap: int | None = None, twist: int | None = None) -> dict:
    cap = min(cap or A.cap, A.cap)
    bad = {}
    dd = compose(A.d, A.d)
    if not dd.is_zero():
        bad["d^2"] = dd.to_json()
    for k in range(2, cap + 1):
        for t in shapes(k):
            r = ombas_residual(A, t, twist)
            if not r.is_zero():
                bad[repr(t)] = r.to_json()
    return {"ok": not bad, "verified_arities": [1, cap], "residuals": bad}


def dga_as_ombas(module: GradedModule, d: GradedMap, prod: GradedMap, cap: int) -> OmegaBAsAlgebra:
    """Corollas act by iterated products; trees with an internal edge act by 0."""
    ops = {}
    p = prod
    ops[((), ())] = prod
    for k in range(3, cap + 1):
        p = compose(prod, tensor_maps([p, identity(module)]))
        ops[((),) * k] = p
    return OmegaBAsAlgebra(module, d, ops, cap)


def induce_ainf(A: OmegaBAsAlgebra, conv: Conventions = DEFAULT) -> AInfAlgebra:
    """m_k = sum over binary trees of eps(t) m_t, with the solved signs of Phi."""
    table = _solved_table(max(A.cap, 2), 0, conv)
    ops = {1: A.d}
    for k in range(2, A.cap + 1):
        total = zero_map([A.module] * k, A.module, 2 - k)
        for t in shapes(k, binary=True):
            total = total + A.op(t).scale(table[("m", k)][srt_key(t)])
        ops[k] = GradedMap(total.source, total.target, 2 - k, total.coeffs)
    return AInfAlgebra(A.module, ops, A.cap)


# morphisms

@dataclass
class OmbasMorphism:
    """mu_{I,t_g} : A^{(x)m} -> B of degree |I| + |t_g| for faces I of the n-simplex."""

    n: int
    source: OmegaBAsAlgebra
    target: OmegaBAsAlgebra
    maps: dict
    cap: int
    conv: Conventions = DEFAULT

    def get(self, I: Face, t: GaugedTree) -> GradedMap:
        f = self.maps.get((I, t))
        if f is None:
            return zero_map([self.source.module] * t.arity, self.target.module, deg(I) + t.degree())
        return f

    def evaluate_gauge(self, g: G) -> GradedMap:
        gen, tops = split_gauge(g)
        if gen.trivial:
            t = GaugedTree(LEAF, ())
        else:
            shape, _ = _component(gen.body)
            t = GaugedTree(shape, _statuses(gen.body))
        inner = [self.source.evaluate(q) for q in tops]
        return compose(self.get(gen.face, t), _tensor(inner))

    def evaluate(self, key) -> GradedMap:
        node, can = node_of(key)
        p, gs = split_root(node)
        xs = [(g, tuple(canonical_tokens(g))) for g in gs]
        p_order = tuple(canonical_tokens(p)) if p is not None else ()
        concat = p_order + tuple(t for _, o in xs for t in o)
        sign = -1 if dagger(p, gs, self.conv) else 1
        sign *= canon(node, concat)[1]
        inner = _tensor([self.evaluate_gauge(g) for g in gs])
        if p is None:
            return inner.scale(sign)
        return compose(self.target.evaluate(p), inner).scale(sign)

    def evaluate_element(self, elem: Mapping) -> GradedMap | None:
        total = None
        for key, c in elem.items():
            term = self.evaluate(key).scale(c)
            total = term if total is None else total + term
        return total


def generators(n: int, cap: int) -> list[tuple[Face, GaugedTree]]:
    return [(I, t) for I in faces(n) for m in range(1, cap + 1) for t in enumerate_trees("SCRT", m)]


def n_ombas_residual(F: OmbasMorphism, I: Face, t: GaugedTree,
                     twist: int | None = None) -> GradedMap:
    """[d, mu_{I,t}] - mu_{d(I,t)}; the twisted flag replaces both differentials."""
    lhs = bracket(F.get(I, t), twisted(F.source.d, twist), twisted(F.target.d, twist))
    rhs = F.evaluate_element(nombas_diff({gen_key(I, t): 1}, F.conv))
    return lhs if rhs is None else lhs - rhs


def check_n_ombas_morphism(F: OmbasMorphism, cap: int | None = None,
                           twist: int | None = None) -> dict:
    cap = min(cap or F.cap, F.cap)
    bad = {}
    for I, t in generators(F.n, cap):
        r = n_ombas_residual(F, I, t, twist)
        if not r.is_zero():
            bad[f"{list(I)}:{t.to_json()}"] = r.to_json()
    return {"ok": not bad, "verified_arities": [1, cap], "residuals": bad}


def strict_morphism(A: OmegaBAsAlgebra, B: OmegaBAsAlgebra, f: GradedMap) -> OmbasMorphism:
    """mu_{[0],trivial} = f and mu_{[0], corolla on the gauge} = f m_corolla; zero otherwise."""
    maps = {((0,), GaugedTree(LEAF, ())): f}
    for k in range(2, A.cap + 1):
        c = ((),) * k
        maps[((0,), GaugedTree(c, ("o",)))] = compose(f, A.op(c))
    return OmbasMorphism(0, A, B, maps, A.cap)


def push_forward(F: OmbasMorphism) -> NMorphism:
    """f_I^{(m)} = sum over CBRT_m of eps mu_{I,t_g}, with the solved signs of Phi."""
    table = _solved_table(max(F.cap, 2), F.n, F.conv)
    A, B = induce_ainf(F.source, F.conv), induce_ainf(F.target, F.conv)
    maps = {}
    for I in faces(F.n):
        for m in range(1, F.cap + 1):
            total = zero_map([A.module] * m, B.module, 1 - m + deg(I))
            for t in enumerate_trees("CBRT", m):
                total = total + F.get(I, t).scale(table[("f", I, m)][gen_key(I, t)])
            maps[(I, m)] = GradedMap(total.source, total.target, 1 - m + deg(I), total.coeffs)
    return NMorphism(F.n, A, B, maps, F.cap)


def degenerate(F: OmbasMorphism, j: int) -> OmbasMorphism:
    """Precomposition with the codegeneracy s_j: labels through [j<j+1] vanish."""
    maps = {}
    for I in faces(F.n + 1):
        J = codegeneracy(j, I)
        if J is None:
            continue
        for m in range(1, F.cap + 1):
            for t in enumerate_trees("SCRT", m):
                if (J, t) in F.maps:
                    maps[(I, t)] = F.maps[(J, t)]
    return OmbasMorphism(F.n + 1, F.source, F.target, maps, F.cap, F.conv)


# random valid instances over acyclic complexes

def acyclic_module(rng: random.Random, pairs: int, lo: int = -1, hi: int = 1,
                   prefix: str = "x") -> tuple[GradedModule, GradedMap]:
    """Basis x_i, y_i with d x_i = +-y_i: every closed map into it is exact."""
    basis = []
    coeffs = {}
    for i in range(pairs):
        dg = rng.randint(lo, hi)
        basis += [(f"{prefix}{i}", dg), (f"{prefix}{i}'", dg + 1)]
        coeffs[((f"{prefix}{i}'",), (f"{prefix}{i}",))] = rng.choice([-1, 1])
    M = GradedModule.of(basis)
    return M, GradedMap((M,), (M,), 1, coeffs)


def solve_bracket(rhs: GradedMap, dA: GradedMap, dB: GradedMap, degree: int,
                  rng: random.Random | None = None) -> GradedMap | None:
    """X of the given degree with [d, X] = rhs; a random integral solution when rng is given."""
    src, tgt = rhs.source, rhs.target[0]
    outs: dict[int, list[str]] = {}
    for nme, dg in tgt.basis:
        outs.setdefault(dg, []).append(nme)
    slots = []
    for inp in itertools.product(*[M.names() for M in src]):
        dg = sum(M.degree(x) for M, x in zip(src, inp)) + degree
        for o in outs.get(dg, []):
            slots.append(((o,), inp))
    cols = [bracket(GradedMap(src, (tgt,), degree, {s: 1}), dA, dB) for s in slots]
    rows = sorted({k for c in cols for k in c.coeffs} | set(rhs.coeffs))
    if not slots:
        return GradedMap(src, (tgt,), degree, {}) if rhs.is_zero() else None
    if not rows:
        sol = [0] * len(slots)
        null = [[1 if i == j else 0 for i in range(len(slots))] for j in range(len(slots))]
    else:
        M = sympy.Matrix([[c.coeffs.get(r, 0) for c in cols] for r in rows])
        b = sympy.Matrix([rhs.coeffs.get(r, 0) for r in rows])
        try:
            part, params = M.gauss_jordan_solve(b)
        except ValueError:
            return None
        sol = list(part.subs({p: 0 for p in params}))
        null = [list(v) for v in M.nullspace()] if rng is not None else []
    if rng is not None:
        for v in null:
            c = rng.choice([-1, 0, 0, 1])
            if c:
                den = sympy.ilcm(*[sympy.Rational(x).q for x in v]) if v else 1
                sol = [a + c * den * x for a, x in zip(sol, v)]
    coeffs = {}
    for s, v in zip(slots, sol):
        v = sympy.Rational(v)
        if v.q != 1:
            return None
        if v:
            coeffs[s] = int(v)
    return GradedMap(src, (tgt,), degree, coeffs)


def random_ombas(rng: random.Random, pairs: int = 2, cap: int = 3,
                 prefix: str = "x") -> OmegaBAsAlgebra:
    """Solve the representation equations tree by tree (fewer edges first)."""
    M, d = acyclic_module(rng, pairs, prefix=prefix)
    A = OmegaBAsAlgebra(M, d, {}, cap)
    from .trees import n_edges
    for k in range(2, cap + 1):
        for t in sorted(shapes(k), key=n_edges):
            rhs = A.evaluate_element(srt_diff({srt_key(t): 1}))
            if rhs is None:
                rhs = zero_map([M] * k, M, 1 - n_edges(t))
            X = solve_bracket(rhs, d, d, -n_edges(t), rng)
            if X is None:
                raise ArithmeticError("representation equation has no integral solution")
            A.ops[t] = X
    return A


def random_ombas_morphism(rng: random.Random, A: OmegaBAsAlgebra, B: OmegaBAsAlgebra, n: int,
                          cap: int | None = None, conv: Conventions = DEFAULT) -> OmbasMorphism:
    """Solve generator by generator: arity, then face dimension, then decreasing tree degree."""
    cap = cap or min(A.cap, B.cap)
    F = OmbasMorphism(n, A, B, {}, cap, conv)
    order = sorted(generators(n, cap), key=lambda g: (g[1].arity, len(g[0]), -g[1].degree()))
    for I, t in order:
        rhs = F.evaluate_element(nombas_diff({gen_key(I, t): 1}, conv))
        dg = deg(I) + t.degree()
        if rhs is None:
            rhs = zero_map([A.module] * t.arity, B.module, dg + 1)
        X = solve_bracket(rhs, A.d, B.d, dg, rng)
        if X is None:
            raise ArithmeticError(f"no integral solution for {list(I)} {t.to_json()}")
        if X.coeffs:
            F.maps[(I, t)] = X
    return F
