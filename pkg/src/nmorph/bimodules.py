"""The free operadic bimodules n-A-infinity-Morph and n-OmegaBAs-Morph.

Elements of n-OmegaBAs-Morph are dictionaries ``key -> int`` where a key is
the token-free structure of a labelled broken gauged tree (see ``trees``),
taken with its canonical orientation.  The differential is defined on
generators (I, t_g) by the simplicial, int-collapse, gauge-vertex,
above-break and below-break terms, and on composites by the Leibniz rule
through the left action (sign (-1)^dagger) and the right action (sign +1).

Elements of n-A-infinity-Morph are planar words in the symbols m_k and
f_{I,m}; a word is stored as a tree of symbols and every reordering of the
symbol sequence costs the Koszul sign of the symbol degrees.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .ainf import compositions, epsilon_B, insertions
from .koszul import sign
from .simplex import (Face, codegeneracy, coface, deg, enumerate_overlapping, face_name, faces,
                      simplicial_diff)
from .trees import (G, LEAF, V, GaugedTree, canon, canonical_tokens, census, count_gauges,
                    enumerate_trees, full_degree, gauged_moves, generator, graft_at,
                    graft_leaves, key_of, leaves_count, node_of, relabel_gauges, render,
                    shapes, srt_moves, srt_node, tree_degree)

Elem = dict


def add(acc: dict, key, c: int) -> None:
    v = acc.get(key, 0) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


@dataclass(frozen=True)
class Conventions:
    """The two choices the sources leave open; both are audited by d^2 = 0.

    ``trivial_j``: intersections counted for a trivial gauged tree in dagger.
    ``srt_sign``: global sign of the collapse/break rule for plain trees.
    """

    trivial_j: int = 0
    srt_sign: int = -1


DEFAULT = Conventions()


# oriented elements: (node, order) with an integer coefficient

def dagger(p, zs: Sequence, conv: Conventions = DEFAULT) -> int:
    t_br = -(census(p)["edges"] if p is not None else 0)
    total = 0
    prev_g = 0   # sum of |t^l_br,g| over earlier inputs
    prev_e = 0   # sum of |t^l_br| over earlier inputs
    for z in zs:
        c = census(z, conv.trivial_j)
        total += c["label"] * (t_br + prev_g)
        total += c["g"] * (t_br + prev_e)
        total += c["j"] * (t_br + prev_g)
        prev_g += c["gdeg"] - c["edges"]
        prev_e += -c["edges"]
    return total % 2


def mu(p, p_order, zs: Sequence[tuple], conv: Conventions = DEFAULT) -> tuple[int, object, tuple]:
    """Left action mu(p; z_1, ..., z_s) on oriented elements."""
    nodes = [z[0] for z in zs]
    sign = -1 if dagger(p, nodes, conv) else 1
    node = nodes[0] if p is None else graft_leaves(p, nodes)
    order = tuple(p_order) + tuple(t for z in zs for t in z[1])
    return sign, node, order


def circ(x, x_order, i: int, q, q_order) -> tuple[int, object, tuple]:
    """Right action x o_i q, sign +1."""
    return 1, graft_at(x, i, q), tuple(x_order) + tuple(q_order)


def mu_action(p_key, z_keys: Sequence, conv: Conventions = DEFAULT) -> Elem:
    """mu on canonical basis elements; p_key a plain-tree key (None for the identity)."""
    if p_key is None:
        p, po = None, ()
    else:
        p, po = node_of(p_key)
    zs = [node_of(k) for k in z_keys]
    s, node, order = mu(p, po, zs, conv)
    k, s2 = canon(node, order)
    return {k: s * s2}


def circ_action(x_key, i: int, q_key) -> Elem:
    x, xo = node_of(x_key)
    q, qo = node_of(q_key) if q_key is not None else (None, ())
    s, node, order = circ(x, xo, i, q, qo)
    k, s2 = canon(node, order)
    return {k: s * s2}


def gen_key(face: Face, t: GaugedTree):
    node, _ = generator(face, t)
    return key_of(node)


def srt_key(t) -> object:
    node, _ = srt_node(t)
    return key_of(node)


def degree_of_key(key) -> int:
    node, _ = node_of(key)
    return full_degree(node)


# decomposition of a canonical element

def split_root(node):
    """(plain root part with gauges cut off, gauge nodes left to right)."""
    if isinstance(node, G):
        return None, [node]
    gs: list = []

    def rec(x):
        if isinstance(x, G):
            gs.append(x)
            return None
        if x is None:
            raise ValueError("a leaf below every gauge is not an element")
        return V(tuple(rec(c) for c in x.kids), x.st, x.tok)

    return rec(node), gs


def split_gauge(g: G):
    """(generator node, tops per leaf) for a gauge node with plain trees on top."""
    if g.trivial:
        return G(g.face, None, True), [g.body]
    tops: list = []

    def rec(x: V):
        kids = []
        for c in x.kids:
            if isinstance(c, V) and c.tok is not None:
                kids.append(rec(c))
            else:
                tops.append(c)
                kids.append(None)
        return V(tuple(kids), x.st, x.tok)

    return G(g.face, rec(g.body), False), tops


# differentials

def gen_diff(gnode: G, order: tuple, conv: Conventions = DEFAULT) -> list[tuple[int, object, tuple]]:
    """Oriented terms of d(I, t_g, w) for a generator node (no tops)."""
    face = gnode.face
    out = []
    if len(face) > 1:
        for J, c in simplicial_diff(face).items():
            out.append((c, G(J, gnode.body, gnode.trivial), order))
    if gnode.trivial:
        return out
    sI = -1 if deg(face) % 2 else 1
    for mv in gauged_moves(face, gnode.body, order):
        if mv.kind != "below-break":
            out.append((sI * mv.sign, mv.node, mv.order))
            continue
        b = count_gauges(mv.node)
        for parts in enumerate_overlapping(face, b):
            out.append((sI * mv.sign, relabel_gauges(mv.node, parts), mv.order))
    return out


def plain_diff(p, order: tuple, conv: Conventions = DEFAULT) -> list[tuple[int, object, tuple]]:
    if p is None:
        return []
    return [(mv.sign, mv.node, mv.order) for mv in srt_moves(p, order, conv.srt_sign)]


def gauge_diff(g: G, conv: Conventions = DEFAULT) -> list[tuple[int, object, tuple]]:
    """Oriented terms of d(X) for X = generator o tops, in X's canonical orientation."""
    gen, tops = split_gauge(g)
    gen_order = tuple(canonical_tokens(gen))
    top_orders = [tuple(canonical_tokens(q)) if q is not None else () for q in tops]
    out = []
    for c, y, yo in gen_diff(gen, gen_order, conv):
        node = graft_leaves(y, tops)
        out.append((c, node, tuple(yo) + tuple(t for o in top_orders for t in o)))
    sign = -1 if full_degree(gen) % 2 else 1
    for k, q in enumerate(tops):
        if q is None:
            continue
        for c, q2, qo2 in plain_diff(q, top_orders[k], conv):
            new_tops = list(tops)
            new_tops[k] = q2
            order = gen_order + tuple(t for o in top_orders[:k] for t in o) + tuple(qo2) \
                + tuple(t for o in top_orders[k + 1:] for t in o)
            out.append((sign * c, graft_leaves(gen, new_tops), order))
        sign *= -1 if (len(top_orders[k]) % 2) else 1
    return out


def nombas_diff_key(key, conv: Conventions = DEFAULT) -> Elem:
    return dict(_nombas_diff_cached(key, conv))


@lru_cache(maxsize=None)
def _nombas_diff_cached(key, conv: Conventions) -> tuple:
    node, can = node_of(key)
    p, gs = split_root(node)
    p_order = tuple(canonical_tokens(p)) if p is not None else ()
    xs = [(g, tuple(canonical_tokens(g))) for g in gs]
    s0, whole, concat = mu(p, p_order, xs, conv)
    base = s0 * canon(whole, concat)[1]  # (node, can) = base * mu(p; X)
    out: dict = {}

    def emit(c, n, o):
        k, s = canon(n, o)
        add(out, k, base * c * s)

    for c, p2, po2 in plain_diff(p, p_order, conv):
        s, n, o = mu(p2, po2, xs, conv)
        emit(c * s, n, o)
    sign = -1 if (len(p_order) % 2) else 1  # (-1)^{|p|}
    for a, (g, go) in enumerate(xs):
        for c, y, yo in gauge_diff(g, conv):
            zs = list(xs)
            zs[a] = (y, yo)
            s, n, o = mu(p, p_order, zs, conv)
            emit(sign * c * s, n, o)
        sign *= -1 if full_degree(g) % 2 else 1
    return tuple(sorted(out.items(), key=lambda kv: repr(kv[0])))


def nombas_diff(elem: Mapping, conv: Conventions = DEFAULT) -> Elem:
    out: dict = {}
    for k, c in elem.items():
        for k2, c2 in _nombas_diff_cached(k, conv):
            add(out, k2, c * c2)
    return out


def ombas_generators(m_max: int, n_max: int) -> list:
    out = []
    for n in range(n_max + 1):
        for I in faces(n):
            for m in range(1, m_max + 1):
                for t in enumerate_trees("SCRT", m):
                    out.append(gen_key(I, t))
    return sorted(set(out), key=repr)


def srt_generators(m_max: int) -> list:
    return [srt_key(t) for m in range(2, m_max + 1) for t in shapes(m)]


def srt_diff(elem: Mapping, conv: Conventions = DEFAULT) -> Elem:
    """Differential of the operad on oriented plain (possibly broken) trees."""
    out: dict = {}
    for key, c in elem.items():
        node, order = node_of(key)
        for s, n, o in plain_diff(node, order, conv):
            k, s2 = canon(n, o)
            add(out, k, c * s * s2)
    return out


# the n-A-infinity side: words in m_k and f_{I,m}

@dataclass(frozen=True)
class Sym:
    kind: str          # "m" or "f"
    arity: int
    face: Face | None = None

    @property
    def degree(self) -> int:
        if self.kind == "m":
            return 2 - self.arity
        return 1 - self.arity + deg(self.face)

    def __repr__(self) -> str:
        if self.kind == "m":
            return f"m{self.arity}"
        return f"f{face_name(self.face)}^{self.arity}"


@dataclass(frozen=True)
class Word:
    """A symbol with a word (or None for a bare input) on each of its inputs."""

    sym: Sym
    kids: tuple

    def symbols(self) -> list[Sym]:
        out = [self.sym]
        for k in self.kids:
            if k is not None:
                out.extend(k.symbols())
        return out

    def arity(self) -> int:
        return sum(1 if k is None else k.arity() for k in self.kids)

    def __repr__(self) -> str:
        return repr(self.sym) + "(" + ",".join("_" if k is None else repr(k) for k in self.kids) + ")"


def word(sym: Sym) -> Word:
    return Word(sym, (None,) * sym.arity)


def koszul_sign(degrees: Sequence[int], perm: Sequence[int]) -> int:
    """Sign of reordering items of the given degrees into the order ``perm``."""
    s = 0
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b] and degrees[perm[a]] % 2 and degrees[perm[b]] % 2:
                s += 1
    return -1 if s % 2 else 1


def _graft_word(w: Word | None, subs: Sequence):
    it = iter(subs)

    def rec(x):
        if x is None:
            return next(it)
        return Word(x.sym, tuple(rec(k) for k in x.kids))

    return rec(w)


def compose_words(outer: Word, inners: Sequence[Word | None]) -> tuple[int, Word]:
    """outer o (inner_1, ..., inner_k) with symbol order outer, inner_1, ...; normalised."""
    w = _graft_word(outer, inners)
    seq = outer.symbols() + [s for x in inners if x is not None for s in x.symbols()]
    return _normal_sign(seq, w), w


def _normal_sign(seq: Sequence[Sym], w: Word) -> int:
    """Sign turning the symbol sequence ``seq`` into the preorder of ``w``."""
    canon_seq = w.symbols()
    # match occurrences positionally (equal symbols are interchangeable, same degree)
    used = [False] * len(seq)
    perm = []
    for s in canon_seq:
        for i, t in enumerate(seq):
            if not used[i] and t == s:
                used[i] = True
                perm.append(i)
                break
    return koszul_sign([s.degree for s in seq], perm)


def m_diff(k: int) -> list[tuple[int, Word]]:
    """d m_k = - sum_{2 <= i2 <= k-1} (-1)^{i1 + i2 i3} m_{i1+1+i3} o_{i1+1} m_{i2}."""
    out = []
    for i1, i2, i3 in insertions(k):
        if i2 < 2 or i2 == k:
            continue
        inner = [None] * (i1 + 1 + i3)
        inner[i1] = word(Sym("m", i2))
        s, w = compose_words(word(Sym("m", i1 + 1 + i3)), inner)
        out.append((-s * sign(i1 + i2 * i3), w))
    return out


def f_diff(I: Face, m: int) -> list[tuple[int, Word]]:
    """The three families: simplicial, right action, left action over overlapping partitions."""
    out: list[tuple[int, Word]] = []
    for J, c in simplicial_diff(I).items():
        out.append((c, word(Sym("f", m, J))))
    sI = -1 if deg(I) % 2 else 1
    for i1, i2, i3 in insertions(m):
        if i2 < 2:
            continue
        inner = [None] * (i1 + 1 + i3)
        inner[i1] = word(Sym("m", i2))
        s, w = compose_words(word(Sym("f", i1 + 1 + i3, I)), inner)
        out.append((sI * s * sign(i1 + i2 * i3), w))
    for s_ in range(2, m + 1):
        for parts in enumerate_overlapping(I, s_):
            degs = [deg(P) for P in parts]
            for ar in compositions(m, s_):
                inners = [word(Sym("f", a, P)) for a, P in zip(ar, parts)]
                s, w = compose_words(word(Sym("m", s_)), inners)
                out.append((-s * sign(epsilon_B(ar, degs)), w))
    return out


def nainf_diff_word(w: Word) -> dict[Word, int]:
    """Leibniz extension over the symbol sequence of a normalised word."""
    out: dict = {}
    syms = w.symbols()
    passed = 0

    # walk the word in preorder, replacing one node at a time
    def nodes(x: Word, path=()):
        yield path, x
        for i, k in enumerate(x.kids):
            if k is not None:
                yield from nodes(k, path + (i,))

    for path, x in nodes(w):
        d = m_diff(x.sym.arity) if x.sym.kind == "m" else f_diff(x.sym.face, x.sym.arity)
        for c, dw in d:
            # substitute dw (whose inputs receive x's children) at this node
            new_local = _graft_word(dw, list(x.kids))
            new = _replace_word(w, path, new_local)
            seq = _substituted_sequence(w, path, dw, x)
            sign = _normal_sign(seq, new)
            add(out, new, (-1 if passed % 2 else 1) * c * sign)
        passed += x.sym.degree
    return out


def _replace_word(w: Word, path, new: Word) -> Word:
    if not path:
        return new
    kids = list(w.kids)
    kids[path[0]] = _replace_word(kids[path[0]], path[1:], new)
    return Word(w.sym, tuple(kids))


def _substituted_sequence(w: Word, path, dw: Word, x: Word) -> list[Sym]:
    """Symbol sequence of w in preorder with x's own symbol replaced by dw's symbols."""
    out: list[Sym] = []

    def rec(y: Word, p):
        if p == path:
            out.extend(dw.symbols())
        else:
            out.append(y.sym)
        for i, k in enumerate(y.kids):
            if k is not None:
                rec(k, p + (i,))

    rec(w, ())
    return out


def nainf_diff(elem: Mapping[Word, int]) -> dict[Word, int]:
    out: dict = {}
    for w, c in elem.items():
        for w2, c2 in nainf_diff_word(w).items():
            add(out, w2, c * c2)
    return out


def nainf_generators(m_max: int, n_max: int) -> list[Word]:
    return [word(Sym("f", m, I)) for n in range(n_max + 1) for I in faces(n)
            for m in range(1, m_max + 1)]


# audits

def d2_check(family: str, m_max: int, n_max: int, conv: Conventions = DEFAULT) -> dict:
    bad = []
    count = 0
    if family == "nainf":
        gens = nainf_generators(m_max, n_max) + [word(Sym("m", k)) for k in range(2, m_max + 1)]
        for g in gens:
            count += 1
            r = nainf_diff(nainf_diff({g: 1}))
            if r:
                bad.append({"generator": repr(g), "residual": {repr(k): v for k, v in r.items()}})
    elif family == "nombas":
        gens = ombas_generators(m_max, n_max) + srt_generators(m_max)
        for g in gens:
            count += 1
            if g[0] == "g":
                r = nombas_diff(nombas_diff({g: 1}, conv), conv)
            else:
                r = srt_diff(srt_diff({g: 1}, conv), conv)
            if r:
                bad.append({"generator": render(g),
                            "residual": {render(k): v for k, v in sorted(r.items(), key=repr)}})
    else:
        raise ValueError(f"unknown family {family!r}")
    return {"family": family, "m_max": m_max, "n_max": n_max, "generators": count,
            "ok": not bad, "failures": bad[:20], "failure_count": len(bad)}


# the comparison morphism n-A-infinity-Morph -> n-OmegaBAs-Morph

def _has_f(w: Word | None) -> bool:
    if w is None:
        return False
    return w.sym.kind == "f" or any(_has_f(k) for k in w.kids)


def phi_images(m_max: int, n_max: int, signs: Mapping | None = None) -> dict:
    """Images of the generators with per-tree signs (default +1)."""
    signs = signs or {}
    table: dict = {}
    for k in range(2, m_max + 1):
        table[("m", k)] = {srt_key(t): signs.get(("m", k, t), 1) for t in shapes(k, binary=True)}
    for n in range(n_max + 1):
        for I in faces(n):
            for m in range(1, m_max + 1):
                table[("f", I, m)] = {gen_key(I, t): signs.get(("f", I, m, t), 1)
                                      for t in enumerate_trees("CBRT", m)}
    return table


def _sym_image(sym: Sym, table: Mapping) -> Mapping:
    if sym.kind == "m":
        return table[("m", sym.arity)]
    return table[("f", sym.face, sym.arity)]


def phi_word(w: Word, table: Mapping, conv: Conventions = DEFAULT) -> Elem:
    """Image of a normalised word: Phi applied symbol by symbol, then composed."""
    kid_images = [None if k is None else phi_word(k, table, conv) for k in w.kids]
    out: dict = {}
    bimodule = w.sym.kind == "m" and _has_f(w)
    for key, c in _sym_image(w.sym, table).items():
        x, xo = node_of(key)
        options = [[(None, (), 1)] if im is None else
                   [(*node_of(k2), c2) for k2, c2 in im.items()] for im in kid_images]
        for combo in itertools.product(*options):
            coef = c
            for _, _, c2 in combo:
                coef *= c2
            if bimodule:
                s, node, order = mu(x, xo, [(n, o) for n, o, _ in combo], conv)
            else:
                s = 1
                node = graft_leaves(x, [n for n, _, _ in combo])
                order = tuple(xo) + tuple(t for _, o, _ in combo for t in o)
            k, s2 = canon(node, order)
            add(out, k, coef * s * s2)
    return out


def phi(gen: Sym | Word, table: Mapping | None = None, conv: Conventions = DEFAULT) -> Elem:
    w = gen if isinstance(gen, Word) else word(gen)
    if table is None:
        m_max = max(max(s.arity for s in w.symbols()), 2)
        n_max = max([max(s.face) for s in w.symbols() if s.kind == "f"] + [0])
        table = _solved_table(m_max, n_max, conv)
    return phi_word(w, table, conv)


@lru_cache(maxsize=None)
def _solved_table(m_max: int, n_max: int, conv: Conventions = DEFAULT) -> dict:
    res = phi_compat_solve(m_max, n_max, conv)
    if not res["ok"]:
        raise ValueError("no consistent sign assignment for Phi within these caps")
    return res["table"]


def _phi_of(elem: Mapping[Word, int], table, conv) -> Elem:
    out: dict = {}
    for w, c in elem.items():
        for k, c2 in phi_word(w, table, conv).items():
            add(out, k, c * c2)
    return out


def _solve_signs(unknowns: list, columns: list[Mapping], rhs: Mapping) -> list[int] | None:
    """Solve sum_t eps_t column_t = rhs with eps_t in {+1, -1}; free variables seeded +1."""
    import sympy

    rows = sorted({k for col in columns for k in col} | set(rhs), key=repr)
    if not unknowns:
        return [] if not rhs else None
    A = sympy.Matrix(len(rows), len(unknowns), lambda i, j: columns[j].get(rows[i], 0))
    b = sympy.Matrix(len(rows), 1, lambda i, _: rhs.get(rows[i], 0))
    try:
        sol, params = A.gauss_jordan_solve(b)
    except ValueError:
        return None
    sol = sol.subs({p: 0 for p in params})
    if params.shape[0]:
        # seed the free directions so that as many entries as possible are +1
        free = list(params)
        sol_sym, _ = A.gauss_jordan_solve(b)
        for values in itertools.product((1, -1), repeat=len(free)):
            cand = sol_sym.subs(dict(zip(free, values)))
            if all(v in (1, -1) for v in cand):
                return [int(v) for v in cand]
        return None
    if all(v in (1, -1) for v in sol):
        return [int(v) for v in sol]
    return None


def phi_compat_solve(m_max: int, n_max: int, conv: Conventions = DEFAULT) -> dict:
    """Per-tree signs making Phi commute with the differentials, solved arity by arity."""
    signs: dict = {}
    table: dict = {}
    report = []
    gens: list = [("m", k) for k in range(2, m_max + 1)]
    gens += [("f", I, m) for m in range(1, m_max + 1) for n in range(n_max + 1)
             for I in faces(n)]
    gens = list(dict.fromkeys(gens))
    gens.sort(key=lambda g: (0, g[1]) if g[0] == "m" else (1, g[2], len(g[1]), g[1]))
    ok = True
    for g in gens:
        if g[0] == "m":
            trees_ = list(shapes(g[1], binary=True))
            keys = [srt_key(t) for t in trees_]
            lhs_cols = [srt_diff({k: 1}, conv) for k in keys]
            rhs = _phi_of(dict((w, c) for c, w in m_diff(g[1])), table, conv)
        else:
            _, I, m = g
            trees_ = enumerate_trees("CBRT", m)
            keys = [gen_key(I, t) for t in trees_]
            lhs_cols = [nombas_diff({k: 1}, conv) for k in keys]
            d: dict = {}
            for c, w in f_diff(I, m):
                add(d, w, c)
            rhs = _phi_of(d, table, conv)
        sol = _solve_signs(keys, lhs_cols, rhs)
        if sol is None:
            ok = False
            report.append({"generator": _gen_name(g), "solved": False})
            sol = [1] * len(keys)
        else:
            report.append({"generator": _gen_name(g), "solved": True, "signs": sol})
        for t, s in zip(trees_, sol):
            signs[g + (t,)] = s
        table[g] = dict(zip(keys, sol))
    return {"ok": ok, "m_max": m_max, "n_max": n_max, "signs": signs, "table": table,
            "report": report}


def _gen_name(g) -> str:
    return f"m{g[1]}" if g[0] == "m" else f"f{face_name(g[1])}^{g[2]}"



def phi_check(m_max: int, n_max: int, conv: Conventions = DEFAULT) -> dict:
    """Verify d Phi = Phi d on every generator within caps, with solved signs."""
    table = _solved_table(max(m_max, 2), n_max, conv)
    bad = []
    for k in range(2, m_max + 1):
        lhs = srt_diff(table[("m", k)], conv)
        rhs = _phi_of({w: c for c, w in m_diff(k)}, table, conv)
        if _sub(lhs, rhs):
            bad.append(f"m{k}")
    for g in nainf_generators(m_max, n_max):
        lhs = nombas_diff(phi_word(g, table, conv), conv)
        d: dict = {}
        for c, w in f_diff(g.sym.face, g.sym.arity):
            add(d, w, c)
        if _sub(lhs, _phi_of(d, table, conv)):
            bad.append(repr(g.sym))
    return {"ok": not bad, "failures": bad}


def _sub(a: Mapping, b: Mapping) -> dict:
    out = dict(a)
    for k, c in b.items():
        add(out, k, -c)
    return out


# cosimplicial structure on labels

def _relabel_key(key, fn):
    if key is None:
        return None
    if key[0] == "g":
        _, face, trivial, body = key
        new = fn(face)
        if new is None:
            return None
        b = _relabel_key(body, fn)
        if body is not None and b is None:
            return None
        return ("g", new, trivial, b)
    _, st, root, kids = key
    out = []
    for k in kids:
        r = _relabel_key(k, fn)
        if k is not None and r is None:
            return None
        out.append(r)
    return ("v", st, root, tuple(out))


def bimodule_coface(elem: Mapping, i: int) -> Elem:
    out: dict = {}
    for k, c in elem.items():
        add(out, _relabel_key(k, lambda f: coface(i, f)), c)
    return out


def bimodule_codegeneracy(elem: Mapping, i: int) -> Elem:
    out: dict = {}
    for k, c in elem.items():
        r = _relabel_key(k, lambda f: codegeneracy(i, f))
        if r is not None:
            add(out, r, c)
    return out


def cosimplicial_check(m_max: int, n_max: int, conv: Conventions = DEFAULT) -> dict:
    """Cofaces and codegeneracies commute with the differential on generators."""
    bad = []
    for n in range(n_max + 1):
        gens = [gen_key(I, t) for I in faces(n) for m in range(1, m_max + 1)
                for t in enumerate_trees("SCRT", m)]
        for g in gens:
            dg = nombas_diff({g: 1}, conv)
            for i in range(n + 2):
                if _sub(nombas_diff(bimodule_coface({g: 1}, i), conv), bimodule_coface(dg, i)):
                    bad.append(("coface", i, render(g)))
            for i in range(n):
                if _sub(nombas_diff(bimodule_codegeneracy({g: 1}, i), conv),
                        bimodule_codegeneracy(dg, i)):
                    bad.append(("codegeneracy", i, render(g)))
    return {"ok": not bad, "failures": bad[:20]}


# operadic bimodule axioms on small composites

def action_axioms_check(m_max: int = 4, n_max: int = 1, conv: Conventions = DEFAULT) -> dict:
    """Associativity of mu, of the right action, and their interchange, exhaustively on
    small arities; also that d is a derivation for both actions."""
    bad: list = []
    ops = [srt_key(t) for k in range(2, m_max) for t in shapes(k)]
    gens = [gen_key(I, t) for n in range(n_max + 1) for I in faces(n)
            for m in range(1, m_max) for t in enumerate_trees("SCRT", m)]

    def graft_plain(pk, i, qk):
        p, po = node_of(pk)
        q, qo = node_of(qk)
        k, s = canon(graft_at(p, i, q), tuple(po) + tuple(qo))
        return {k: s}

    def mu_el(pk, xs):
        out: dict = {}
        for combo in itertools.product(*[list(x.items()) for x in xs]):
            c = 1
            for _, c2 in combo:
                c *= c2
            for k, c3 in mu_action(pk, [k for k, _ in combo], conv).items():
                add(out, k, c * c3)
        return out

    def lin(f, elem):
        out: dict = {}
        for k, c in elem.items():
            for k2, c2 in f(k).items():
                add(out, k2, c * c2)
        return out

    def arity_of(k):
        return leaves_count(node_of(k)[0])

    small = [g for g in gens if arity_of(g) <= 2]
    # d is a derivation for the right action
    for x in small:
        for q in ops:
            if arity_of(x) + arity_of(q) - 1 > m_max:
                continue
            for i in range(1, arity_of(x) + 1):
                y = circ_action(x, i, q)
                lhs = nombas_diff(y, conv)
                rhs = lin(lambda k: circ_action(k, i, q), nombas_diff({x: 1}, conv))
                sx = -1 if degree_of_key(x) % 2 else 1
                rhs2 = lin(lambda k: circ_action(x, i, k), srt_diff({q: 1}, conv))
                for k, c in rhs2.items():
                    add(rhs, k, sx * c)
                if _sub(lhs, rhs):
                    bad.append(("right-derivation", render(x), i, render(q)))
    # mu associativity: mu(p o_i p'; xs) = mu(p; ..., mu(p'; xs_i), ...)
    for p in ops:
        for p2 in ops:
            for i in range(1, arity_of(p) + 1):
                total = arity_of(p) + arity_of(p2) - 1
                if total > 4:
                    continue
                for xs in itertools.product(small[:6], repeat=total):
                    lhs = lin(lambda k: mu_action(k, list(xs), conv), graft_plain(p, i, p2))
                    inner = mu_action(p2, list(xs[i - 1:i - 1 + arity_of(p2)]), conv)
                    args = [{x: 1} for x in xs[:i - 1]] + [inner] +                         [{x: 1} for x in xs[i - 1 + arity_of(p2):]]
                    rhs = mu_el(p, args)
                    # p2 passes the inputs to its left
                    if degree_of_key(p2) % 2 and sum(degree_of_key(x) for x in xs[:i - 1]) % 2:
                        rhs = {k: -c for k, c in rhs.items()}
                    if _sub(lhs, rhs):
                        bad.append(("mu-assoc", render(p), i, render(p2)))
                        break
    # interchange: mu(p; x_1, ..., x_a o_i q, ...) = mu(p; x) o_{shifted i} q
    for p in ops[:3]:
        for xs in itertools.product(small[:5], repeat=arity_of(p)):
            for a in range(len(xs)):
                for q in ops[:2]:
                    shift = sum(arity_of(x) for x in xs[:a])
                    lhs = mu_el(p, [{x: 1} for x in xs[:a]] + [circ_action(xs[a], 1, q)] +
                                [{x: 1} for x in xs[a + 1:]])
                    rhs = lin(lambda k: circ_action(k, shift + 1, q), mu_action(p, list(xs), conv))
                    # q passes the inputs to its right
                    if degree_of_key(q) % 2 and sum(degree_of_key(x) for x in xs[a + 1:]) % 2:
                        rhs = {k: -c for k, c in rhs.items()}
                    if _sub(lhs, rhs):
                        bad.append(("interchange", render(p), a, render(q)))
    return {"ok": not bad, "failures": bad[:20], "failure_count": len(bad)}
