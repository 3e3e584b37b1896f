"""Cellular chain complexes of the n-multiplihedra Delta^n x J_m.

Coarse cells are the n-A-infinity cells: a face label sequence (J_1, ..., J_s)
forming a stratum of the AW^{s-1} subdivision (max J_l <= min J_{l+1}),
decorating the s gauged corollas of a broken two-colored tree whose other
components are plain corollas.  They are encoded as words in m_k and f_{J,a};
the dimension of a cell is minus the degree of its word, and the boundary is
the differential of the word, extended to composites by the product rule.

Fine cells refine every corolla into the cells of its moduli space: gauged
trees for the gauged components, stable ribbon trees for the plain ones.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from .ainf import compositions, epsilon_B, insertions
from .koszul import sign
from .bimodules import (Sym, Word, _graft_word, _solved_table, _sub, add, nainf_diff,
                        nombas_diff, phi_word, split_gauge, word)
from .ombas import _component
from .simplex import Face, deg, dim, enumerate_overlapping, face_name, faces, simplicial_diff
from .trees import (G, V, _break_tok, canonical_tokens, enumerate_trees, full_degree, generator,
                    graft_leaves, key_of, leaves_count, node_of, plain_node, render, shapes)

COARSE, FINE = "coarse", "fine"


def monotone(labels: Iterable[Face]) -> bool:
    labels = list(labels)
    return all(a[-1] <= b[0] for a, b in zip(labels, labels[1:]))


def monotone_sequences(n: int, s: int) -> Iterator[tuple[Face, ...]]:
    fs = faces(n)

    def rec(prefix):
        if len(prefix) == s:
            yield tuple(prefix)
            return
        lo = prefix[-1][-1] if prefix else 0
        for f in fs:
            if f[0] >= lo:
                yield from rec(prefix + [f])

    yield from rec([])


# coarse cells

@lru_cache(maxsize=None)
def plain_words(k: int) -> tuple:
    """Composites of m's with k inputs (faces of the associahedron K_k)."""
    if k == 1:
        return (None,)

    def conv(t):
        if t == ():
            return None
        return Word(Sym("m", len(t)), tuple(conv(c) for c in t))

    return tuple(conv(t) for t in shapes(k))


def _blocks(q: int) -> Iterator[tuple[int, tuple]]:
    """(number of f inputs, words on them) with q leaves in total."""
    for a in range(1, q + 1):
        for comp in compositions(q, a):
            for kids in itertools.product(*[plain_words(r) for r in comp]):
                yield a, kids


def labels_of(w: Word | None) -> list[Face]:
    if w is None:
        return []
    own = [w.sym.face] if w.sym.kind == "f" else []
    return own + [f for k in w.kids for f in labels_of(k)]


def word_dim(w: Word) -> int:
    return -sum(s.degree for s in w.symbols())


@lru_cache(maxsize=None)
def coarse_cells(n: int, m: int) -> tuple[Word, ...]:
    out = []
    for s in range(1, m + 1):
        lefts = [None] if s == 1 else [w for w in plain_words(s)]
        for qs in compositions(m, s):
            for blocks in itertools.product(*[list(_blocks(q)) for q in qs]):
                for labels in monotone_sequences(n, s):
                    fw = [Word(Sym("f", a, J), kids) for (a, kids), J in zip(blocks, labels)]
                    for left in lefts:
                        out.append(fw[0] if left is None else _graft_word(left, fw))
    return tuple(out)


def coarse_boundary(w: Word) -> dict:
    return nainf_diff({w: 1})


def coarse_top(n: int, m: int) -> Word:
    return word(Sym("f", m, tuple(range(n + 1))))


# fine cells

@lru_cache(maxsize=None)
def broken_plain(k: int) -> tuple:
    """Plain trees with k leaves, any set of internal edges broken (root edge broken)."""
    if k == 1:
        return (None,)
    out = []
    for t in shapes(k):
        node = plain_node(t)
        toks = canonical_tokens(node)
        for r in range(len(toks) + 1):
            for S in itertools.combinations(toks, r):
                x = node
                for tok in S:
                    x = _break_tok(x, tok)
                out.append(key_of(x))
    return tuple(out)


def _gauge_blocks(q: int) -> Iterator[tuple]:
    for a in range(1, q + 1):
        for t in enumerate_trees("SCRT", a):
            for comp in compositions(q, a):
                for tops in itertools.product(*[broken_plain(r) for r in comp]):
                    yield t, tops


@lru_cache(maxsize=None)
def fine_cells(n: int, m: int) -> tuple:
    out = []
    for b in range(1, m + 1):
        roots = [None] if b == 1 else list(broken_plain(b))
        for qs in compositions(m, b):
            for blocks in itertools.product(*[list(_gauge_blocks(q)) for q in qs]):
                for labels in monotone_sequences(n, b):
                    gauges = []
                    for (t, tops), J in zip(blocks, labels):
                        g, _ = generator(J, t)
                        subs = [None if q is None else node_of(q)[0] for q in tops]
                        gauges.append(graft_leaves(g, subs))
                    for rk in roots:
                        node = gauges[0] if rk is None else graft_leaves(node_of(rk)[0], gauges)
                        out.append(key_of(node))
    return tuple(out)


def fine_dim(key) -> int:
    return -full_degree(node_of(key)[0])


def fine_boundary(key) -> dict:
    return nombas_diff({key: 1})


def fine_top(n: int, m: int) -> list:
    """The top-dimensional fine cells (gauged trees of CBRT_m on the full simplex)."""
    I = tuple(range(n + 1))
    return [key_of(generator(I, t)[0]) for t in enumerate_trees("CBRT", m)]


# refinement

def coarse_of(key) -> Word:
    """The coarse cell whose interior contains the fine cell."""
    node, _ = node_of(key)

    def conv(x):
        if x is None:
            return None
        if isinstance(x, G):
            gen, tops = split_gauge(x)
            return Word(Sym("f", len(tops), gen.face), tuple(conv(q) for q in tops))
        _, atts = _component(x)
        return Word(Sym("m", len(atts)), tuple(conv(a) for a in atts))

    return conv(node)


def refine(w: Word) -> dict:
    """The chain-level refinement: the sum of fine cells of w with their signs."""
    n = max([max(J) for J in labels_of(w)] + [0])
    m = w.arity()
    return phi_word(w, _solved_table(max(m, 2), n))


# audits

@dataclass
class Complex:
    cells: list
    dims: dict
    boundary: dict

    def f_vector(self) -> list[int]:
        top = max(self.dims.values())
        c = Counter(self.dims.values())
        return [c.get(d, 0) for d in range(top + 1)]

    def euler(self) -> int:
        return sum(sign(d) * k for d, k in enumerate(self.f_vector()))

    def d_squared(self) -> dict:
        bad = {}
        for c in self.cells:
            acc: dict = {}
            for c2, a in self.boundary[c].items():
                for c3, b in self.boundary[c2].items():
                    add(acc, c3, a * b)
            if acc:
                bad[c] = acc
        return bad

    def closed(self) -> bool:
        cs = set(self.cells)
        return all(k in cs for c in self.cells for k in self.boundary[c])


@lru_cache(maxsize=None)
def complex_of(n: int, m: int, decomposition: str = COARSE) -> Complex:
    if decomposition == COARSE:
        cells = list(coarse_cells(n, m))
        dims = {c: word_dim(c) for c in cells}
        bd = {c: coarse_boundary(c) for c in cells}
    elif decomposition == FINE:
        cells = list(fine_cells(n, m))
        dims = {c: fine_dim(c) for c in cells}
        bd = {c: fine_boundary(c) for c in cells}
    else:
        raise ValueError(f"unknown decomposition {decomposition!r}")
    return Complex(cells, dims, bd)


def euler_and_fvector(n: int, m: int, decomposition: str = COARSE) -> tuple[list[int], int]:
    cx = complex_of(n, m, decomposition)
    return cx.f_vector(), cx.euler()


def audit(n: int, m: int, decomposition: str = COARSE) -> dict:
    cx = complex_of(n, m, decomposition)
    tops = [c for c in cx.cells if cx.dims[c] == n + m - 1]
    return {"n": n, "m": m, "decomposition": decomposition, "cells": len(cx.cells),
            "f_vector": cx.f_vector(), "euler": cx.euler(), "closed": cx.closed(),
            "d_squared_zero": not cx.d_squared(), "top_cells": len(tops)}


def codim1_coarse(n: int, m: int) -> list[tuple[int, Word]]:
    return [(c, w) for w, c in coarse_boundary(coarse_top(n, m)).items()]


def prop_top_boundary(n: int, m: int) -> dict:
    """The three families of the top-cell boundary, signs as on the product Delta^n x J_m.

    singular faces (-1)^i; (-1)^n (-1)^{i1 + i2 i3} for J x K; and
    -(-1)^n (-1)^{eps + s n + sum_j (i_j - 1) sum_{k>j} |I_k|} with
    eps = sum_j (s-j)(1-i_j) for K x (I_1 x J) x ... x (I_s x J).
    """
    top = tuple(range(n + 1))
    out: dict = {}
    for J, c in simplicial_diff(top).items() if n else []:
        add(out, word(Sym("f", m, J)), c)
    for i1, i2, i3 in insertions(m):
        if i2 < 2:
            continue
        inner = [None] * (i1 + 1 + i3)
        inner[i1] = word(Sym("m", i2))
        w = Word(Sym("f", i1 + 1 + i3, top), tuple(inner))
        add(out, w, sign(n + i1 + i2 * i3))
    for s in range(2, m + 1):
        for parts in enumerate_overlapping(top, s):
            for ar in compositions(m, s):
                eps = sum((s - j) * (1 - ar[j - 1]) for j in range(1, s + 1))
                extra = sum((ar[j] - 1) * sum(deg(P) for P in parts[j + 1:]) for j in range(s))
                w = Word(Sym("m", s), tuple(word(Sym("f", a, P)) for a, P in zip(ar, parts)))
                add(out, w, -sign(n + eps + s * n + extra))
    return out


def forcey_loday_pattern(m: int) -> dict:
    """The classical signed boundary of J_m (n = 0)."""
    out: dict = {}
    for i1, i2, i3 in insertions(m):
        if i2 < 2:
            continue
        inner = [None] * (i1 + 1 + i3)
        inner[i1] = word(Sym("m", i2))
        add(out, Word(Sym("f", i1 + 1 + i3, (0,)), tuple(inner)), sign(i1 + i2 * i3))
    for s in range(2, m + 1):
        for ar in compositions(m, s):
            eps = sum((s - j) * (1 - ar[j - 1]) for j in range(1, s + 1))
            w = Word(Sym("m", s), tuple(word(Sym("f", a, (0,))) for a in ar))
            add(out, w, -sign(eps))
    return out


def refinement_check(n: int, m: int) -> dict:
    """d rho = rho d on every coarse cell; rho(c) lies over c; closed preimages have chi = 1."""
    coarse = complex_of(n, m, COARSE)
    fine = complex_of(n, m, FINE)
    fine_set = set(fine.cells)
    bad = []
    image = {k: coarse_of(k) for k in fine.cells}
    surjective = set(image.values()) == set(coarse.cells)
    for c in coarse.cells:
        r = refine(c)
        lhs: dict = {}
        for k, a in r.items():
            if k not in fine_set or image[k] != c:
                bad.append(("support", repr(c)))
            for k2, b in fine.boundary[k].items():
                add(lhs, k2, a * b)
        rhs: dict = {}
        for c2, a in coarse.boundary[c].items():
            for k, b in refine(c2).items():
                add(rhs, k, a * b)
        if _sub(lhs, rhs):
            bad.append(("chain-map", repr(c)))
    # closed preimages
    chis = {}
    for c in coarse.cells:
        closure = {c}
        frontier = [c]
        while frontier:
            x = frontier.pop()
            for y in coarse.boundary[x]:
                if y not in closure:
                    closure.add(y)
                    frontier.append(y)
        chis[c] = sum(sign(fine.dims[k]) for k in fine.cells if image[k] in closure)
    return {"ok": not bad and surjective and all(v == 1 for v in chis.values()),
            "surjective": surjective, "failures": bad[:10],
            "preimage_euler": sorted(set(chis.values()))}


def facet_pullback(n: int, m: int) -> dict[str, int]:
    """For each coarse facet, the number of top-dimensional fine cells lying in it."""
    fine = complex_of(n, m, FINE)
    d = n + m - 2
    out: dict[str, int] = {}
    for _, w in codim1_coarse(n, m):
        out[repr(w)] = sum(1 for k in fine.cells if fine.dims[k] == d and coarse_of(k) == w)
    return out


def cell_json(c, decomposition: str) -> dict:
    if decomposition == COARSE:
        return {"cell": repr(c), "dim": word_dim(c), "labels": [face_name(J) for J in labels_of(c)]}
    return {"cell": render(c), "dim": fine_dim(c)}


def export(n: int, m: int, decomposition: str = COARSE) -> dict:
    cx = complex_of(n, m, decomposition)
    name = (lambda c: repr(c)) if decomposition == COARSE else render
    index = {c: i for i, c in enumerate(sorted(cx.cells, key=lambda c: (cx.dims[c], name(c))))}
    cells = sorted(cx.cells, key=index.get)
    return {
        "n": n, "m": m, "decomposition": decomposition,
        "cells": [dict(cell_json(c, decomposition), id=index[c]) for c in cells],
        "boundary": [[index[c], index[k], v] for c in cells
                     for k, v in sorted(cx.boundary[c].items(), key=lambda kv: index[kv[0]])],
        "f_vector": cx.f_vector(), "euler": cx.euler(),
    }
