"""Stable ribbon trees, gauged trees, broken composites and their boundary moves.

Shapes are nested tuples: the leaf is ``()`` and a vertex is the tuple of
its children, so ``((), ())`` is the arity-2 corolla.  Internal edges are
named by the vertex sitting on top of them, and listed in planar preorder.

Composite (broken, labelled) trees are built from node objects:

* ``None`` is a leaf;
* ``V(kids, st, tok)`` is a vertex; ``st`` is its position relative to the
  gauge ('b' below, 'o' on, 'a' above) inside a gauged component and None
  inside a plain component; ``tok`` names the finite edge below it, or is
  None when that edge is a broken (infinite) one;
* ``G(face, body, trivial)`` marks a gauge with its simplex label.  For a
  nontrivial gauge ``body`` is the root vertex of the gauged component, for
  the trivial gauged tree it is whatever sits above the gauge.

An orientation is a tuple of edge tokens.  ``canon`` strips tokens and
returns the sign of the orientation relative to the canonical one, so
(S, -w) = -(S, w) is enforced by construction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .simplex import Face, deg, enumerate_overlapping

Shape = tuple
LEAF: Shape = ()
ORDER = {"b": 0, "o": 1, "a": 2}


# shapes

def arity(t: Shape) -> int:
    return 1 if t == LEAF else sum(arity(c) for c in t)


def n_edges(t: Shape) -> int:
    """Internal edges: one per non-root vertex."""
    return len(vertex_paths(t)) - 1 if t != LEAF else 0


def vertex_paths(t: Shape) -> list[tuple[int, ...]]:
    """Vertices in planar preorder, as child-index paths from the root."""
    out: list[tuple[int, ...]] = []

    def rec(u: Shape, path: tuple[int, ...]) -> None:
        if u == LEAF:
            return
        out.append(path)
        for i, c in enumerate(u):
            rec(c, path + (i,))

    rec(t, ())
    return out


def edge_paths(t: Shape) -> list[tuple[int, ...]]:
    return vertex_paths(t)[1:]


def subtree(t: Shape, path: Sequence[int]) -> Shape:
    for i in path:
        t = t[i]
    return t


@lru_cache(maxsize=None)
def shapes(m: int, binary: bool = False) -> tuple[Shape, ...]:
    """All planar stable trees with m leaves (vertices of arity >= 2)."""
    if m == 1:
        return (LEAF,)
    out = []
    ks = [2] if binary else range(2, m + 1)
    for k in ks:
        for parts in _compositions(m, k):
            for kids in itertools.product(*[shapes(p, binary) for p in parts]):
                out.append(tuple(kids))
    return tuple(out)


def _compositions(m: int, k: int) -> Iterator[tuple[int, ...]]:
    for cuts in itertools.combinations(range(1, m), k - 1):
        b = (0,) + cuts + (m,)
        yield tuple(y - x for x, y in zip(b, b[1:]))


def shape_to_json(t: Shape) -> list:
    return [shape_to_json(c) for c in t] if t != LEAF else []


def shape_from_json(data) -> Shape:
    if not isinstance(data, list):
        raise ValueError("tree shapes are nested arrays")
    if not data:
        return LEAF
    if len(data) < 2:
        raise ValueError("internal vertices need arity at least 2")
    return tuple(shape_from_json(c) for c in data)


@dataclass(frozen=True)
class RibbonTree:
    shape: Shape

    def __post_init__(self) -> None:
        _check_stable(self.shape)

    @property
    def arity(self) -> int:
        return arity(self.shape)

    @property
    def e(self) -> int:
        return n_edges(self.shape)

    def degree(self) -> int:
        return -self.e

    def to_json(self) -> dict:
        return {"tree": shape_to_json(self.shape), "edges": [list(p) for p in edge_paths(self.shape)]}


def _check_stable(t: Shape) -> None:
    if t == LEAF:
        return
    if len(t) < 2:
        raise ValueError("internal vertices need arity at least 2")
    for c in t:
        _check_stable(c)


@dataclass(frozen=True)
class GaugedTree:
    """A stable ribbon tree with each vertex below, on or above a horizontal gauge.

    ``status`` lists the vertices in planar preorder.  The trivial gauged tree
    is the bare edge with empty status.
    """

    shape: Shape
    status: tuple[str, ...]

    def __post_init__(self) -> None:
        _check_stable(self.shape)
        if len(self.status) != len(vertex_paths(self.shape)):
            raise ValueError("one status per vertex")
        if not status_valid(self.shape, self.status):
            raise ValueError("statuses are not realisable by a horizontal gauge")

    @property
    def trivial(self) -> bool:
        return self.shape == LEAF

    @property
    def arity(self) -> int:
        return arity(self.shape)

    @property
    def e(self) -> int:
        return n_edges(self.shape)

    @property
    def j(self) -> int:
        return 1 if self.trivial else self.status.count("o")

    def degree(self) -> int:
        return self.j - 1 - self.e

    def heights(self) -> dict[tuple[int, ...], int]:
        """Integer heights realising the statuses with the gauge at height 0."""
        return realise(self.shape, self.status)

    def to_json(self) -> dict:
        return {"tree": shape_to_json(self.shape), "status": list(self.status)}

    @classmethod
    def from_json(cls, data) -> "GaugedTree":
        return cls(shape_from_json(data["tree"]), tuple(data["status"]))


def status_valid(shape: Shape, status: Sequence[str]) -> bool:
    paths = vertex_paths(shape)
    st = dict(zip(paths, status))
    for p in paths:
        if st[p] not in ORDER:
            return False
        if p:
            up, s = st[p[:-1]], st[p]
            if ORDER[up] > ORDER[s] or (up == "o" and s == "o"):
                return False
    return True


def realise(shape: Shape, status: Sequence[str]) -> dict[tuple[int, ...], int]:
    """Heights h with h(child) > h(parent), h < 0 below, = 0 on, > 0 above."""
    paths = vertex_paths(shape)
    st = dict(zip(paths, status))
    depth = max(len(p) for p in paths) + 2
    h = {}
    for p in paths:
        if st[p] == "o":
            h[p] = 0
        elif st[p] == "a":
            h[p] = len(p) + 1
        else:
            h[p] = len(p) - depth
    for p in paths:
        if p and not h[p] > h[p[:-1]]:
            raise ValueError("statuses are not realisable")
    return h


def gauged_types(shape: Shape) -> list[GaugedTree]:
    paths = vertex_paths(shape)
    out = []
    for st in itertools.product("boa", repeat=len(paths)):
        if status_valid(shape, st):
            out.append(GaugedTree(shape, st))
    return out


def enumerate_trees(kind: str, m: int) -> list:
    """SRT: stable ribbon trees; SCRT: gauged trees; CBRT: binary gauged trees of top dimension."""
    if m < 1:
        raise ValueError("arity must be positive")
    if kind == "SRT":
        return [RibbonTree(t) for t in shapes(m)]
    if kind == "SCRT":
        if m == 1:
            return [GaugedTree(LEAF, ())]
        return [g for t in shapes(m) for g in gauged_types(t)]
    if kind == "CBRT":
        if m == 1:
            return [GaugedTree(LEAF, ())]
        return [g for t in shapes(m, binary=True) for g in gauged_types(t) if g.j == 0]
    raise ValueError(f"unknown tree kind {kind!r}")


def cell_dimension(t: GaugedTree) -> int:
    return 0 if t.trivial else t.e + 1 - t.j


def morse_bookkeeping(t_degree: int, y_degree: int, x_degrees: Sequence[int], d: int) -> tuple[int, int]:
    """(moduli dimension, sign parity) for a labelled gauged tree with output y and inputs x."""
    m = len(x_degrees)
    dimension = -t_degree + y_degree - sum(x_degrees)
    parity = (d * m * (1 + y_degree + t_degree) + t_degree * y_degree) % 2
    return dimension, parity


# composite nodes

@dataclass(frozen=True)
class V:
    kids: tuple
    st: str | None = None
    tok: int | None = None


@dataclass(frozen=True)
class G:
    face: Face | None
    body: object
    trivial: bool


_fresh = itertools.count(1)


def fresh() -> int:
    return next(_fresh)


def canonical_tokens(node) -> list[int]:
    """Component edges in preorder, then the components grafted on its leaves, recursively."""
    if node is None:
        return []
    if isinstance(node, G):
        return canonical_tokens(node.body)
    edges: list[int] = []
    atts: list = []

    def walk(v: V, top: bool) -> None:
        if not top:
            edges.append(v.tok)
        for c in v.kids:
            if isinstance(c, V) and c.tok is not None:
                walk(c, False)
            elif c is not None:
                atts.append(c)

    walk(node, True)
    for a in atts:
        edges.extend(canonical_tokens(a))
    return edges


def perm_sign(order: Sequence[int], canonical: Sequence[int]) -> int:
    if sorted(order) != sorted(canonical):
        raise ValueError("orientation does not list exactly the finite internal edges")
    pos = {t: i for i, t in enumerate(canonical)}
    seq = [pos[t] for t in order]
    inv = sum(1 for a in range(len(seq)) for b in range(a + 1, len(seq)) if seq[a] > seq[b])
    return -1 if inv % 2 else 1


def canon(node, order: Sequence[int]) -> tuple[object, int]:
    """Key and sign with (node, order) = sign * (key, canonical orientation)."""
    return key_of(node), perm_sign(order, canonical_tokens(node))


def key_of(node) -> object:
    """Token-free structural key; records where components start."""
    if node is None:
        return None
    if isinstance(node, G):
        return ("g", node.face, node.trivial, key_of(node.body))
    return ("v", node.st, node.tok is None, tuple(key_of(c) for c in node.kids))


def _build(key, comp_root: bool):
    if key is None:
        return None
    if key[0] == "g":
        _, face, trivial, body = key
        return G(face, _build(body, True), trivial)
    _, st, root, kids = key
    return V(tuple(_build(c, False) for c in kids), st, None if root else fresh())


def node_of(key):
    """Rebuild nodes from a key, with fresh tokens in canonical order."""
    node = _build(key, True)
    return node, tuple(canonical_tokens(node))


def leaves_count(node) -> int:
    if node is None:
        return 1
    if isinstance(node, G):
        return leaves_count(node.body)
    return sum(leaves_count(c) for c in node.kids)


def graft_leaves(node, subs: Sequence):
    """Replace the leaves of ``node`` (left to right) by ``subs`` (None keeps the leaf)."""
    it = iter(subs)

    def rec(x):
        if x is None:
            return next(it)
        if isinstance(x, G):
            return G(x.face, rec(x.body), x.trivial)
        return V(tuple(rec(c) for c in x.kids), x.st, x.tok)

    out = rec(node)
    rest = list(it)
    if rest:
        raise ValueError("too many grafts for the number of leaves")
    return out


def graft_at(node, i: int, sub):
    n = leaves_count(node)
    if not 1 <= i <= n:
        raise ValueError(f"leaf index {i} out of range 1..{n}")
    subs = [None] * n
    subs[i - 1] = sub
    return graft_leaves(node, subs)


def plain_node(shape: Shape, st: Sequence[str] | None = None, root_tok: int | None = None):
    """Nodes for a shape, fresh tokens on internal edges, statuses in preorder."""
    if shape == LEAF:
        return None
    sts = iter(st) if st is not None else None

    def rec(t: Shape, top: bool):
        if t == LEAF:
            return None
        s = next(sts) if sts is not None else None
        tok = root_tok if top else fresh()
        return V(tuple(rec(c, False) for c in t), s, tok)

    return rec(shape, True)


def generator(face: Face | None, t: GaugedTree):
    """The node of a generator (I, t_g) with its canonical orientation."""
    if t.trivial:
        node = G(face, None, True)
    else:
        node = G(face, plain_node(t.shape, t.status), False)
    return node, tuple(canonical_tokens(node))


def srt_node(t: Shape):
    node = plain_node(t)
    return node, tuple(canonical_tokens(node))


# degree bookkeeping on composite nodes

def census(node, trivial_j: int = 1) -> dict:
    """Counts used by degrees and action signs."""
    c = {"edges": 0, "label": 0, "g": 0, "j": 0, "gdeg": 0}

    def walk(x, in_gauged: bool):
        if x is None:
            return
        if isinstance(x, G):
            if x.face is not None:
                c["label"] += deg(x.face)
            if x.trivial:
                c["j"] += trivial_j
            else:
                c["g"] += 1
                c["gdeg"] -= 1
            walk(x.body, not x.trivial)
            return
        if x.tok is not None:
            c["edges"] += 1
        if x.st == "o":
            c["j"] += 1
            c["gdeg"] += 1
        for k in x.kids:
            walk(k, in_gauged)

    walk(node, False)
    return c


def tree_degree(node) -> int:
    """|t_br,g| (labels excluded); for a plain broken tree this is -e."""
    c = census(node)
    return c["gdeg"] - c["edges"]


def full_degree(node) -> int:
    c = census(node)
    return c["label"] + c["gdeg"] - c["edges"]


# boundary moves

@dataclass(frozen=True)
class Move:
    kind: str
    sign: int
    node: object
    order: tuple[int, ...]
    detail: tuple = ()


def _gauged_paths(v: V) -> list[tuple[tuple[int, ...], V]]:
    """Vertices of one gauged component (preorder), with paths."""
    out = []

    def rec(x: V, p):
        out.append((p, x))
        for i, c in enumerate(x.kids):
            if isinstance(c, V) and c.tok is not None:
                rec(c, p + (i,))

    rec(v, ())
    return out


def _get(v: V, path) -> V:
    for i in path:
        v = v.kids[i]
    return v


def _replace(v: V, path, new) -> object:
    if not path:
        return new
    i = path[0]
    kids = list(v.kids)
    kids[i] = _replace(kids[i], path[1:], new)
    return V(tuple(kids), v.st, v.tok)


def _comp_valid(v: V) -> bool:
    for p, x in _gauged_paths(v):
        for c in x.kids:
            if isinstance(c, V) and c.tok is not None:
                if ORDER[x.st] > ORDER[c.st] or (x.st == "o" and c.st == "o"):
                    return False
    return True


def _strip(v, root: bool):
    """A gauged subtree made plain (statuses forgotten), its bottom edge broken."""
    if v is None:
        return None
    if isinstance(v, G) or v.st is None:
        return v
    kids = tuple(_strip(c, False) if isinstance(c, V) and c.tok is not None else c for c in v.kids)
    return V(kids, None, None if root else v.tok)


def _collapse_move(moves, face, root, order, pos, j, upath, idx, merged):
    """Collapse the edges from the vertex at ``upath`` to its children ``idx``.

    Sign (-1)^{eps + s j + (s-1) a}: eps moves the s collapsed edges to the
    front of the orientation, a counts on-gauge vertices after u in preorder.
    For a single edge this is (-1)^{p+1+j}.
    """
    u = _get(root, upath)
    kids: list = []
    toks = []
    for i, c in enumerate(u.kids):
        if i in idx:
            kids.extend(c.kids)
            toks.append(c.tok)
        else:
            kids.append(c)
    new_root = _replace(root, upath, V(tuple(kids), merged, u.tok))
    if not _comp_valid(new_root):
        return
    toks_sorted = sorted(toks, key=lambda t: pos[t])
    eps = _move_to_front_sign(order, toks_sorted)
    # on-gauge vertices after u in preorder, outside the subtree of u
    after = 0
    seen = False
    for q, x in _gauged_paths(root):
        if q == upath:
            seen = True
        elif seen and x.st == "o" and q[:len(upath)] != upath:
            after += 1
    s = len(toks)
    moves.append(Move("int-collapse", (-1) ** (eps + s * j + (s - 1) * after), G(face, new_root, False),
                      tuple(t for t in order if t not in toks), tuple(upath + (i,) for i in idx)))


def gauged_moves(face: Face | None, root: V, order: Sequence[int]) -> list[Move]:
    """Boundary moves of one gauged component (no tops grafted), as composite nodes.

    The returned nodes are complete elements: a G node, or a plain root part
    carrying G nodes after a below-break.  Signs are the orientation signs
    of the moves; the (-1)^{|I|} factor of the differential is not included.
    """
    order = tuple(order)
    verts = _gauged_paths(root)
    j = sum(1 for _, x in verts if x.st == "o")
    pos = {t: i + 1 for i, t in enumerate(order)}
    moves: list[Move] = []

    def wrap(body):
        return G(face, body, False)

    # int-collapse; a below vertex absorbs all of its on-gauge children at once
    for p, v in verts:
        if p and v.st == "a":
            u = _get(root, p[:-1])
            if u.st in ("a", "o"):
                _collapse_move(moves, face, root, order, pos, j, p[:-1], [p[-1]], u.st)
    for p, v in verts:
        if v.st == "b" and v.kids:
            on = [i for i, c in enumerate(v.kids) if isinstance(c, V) and c.tok is not None and c.st == "o"]
            if on:
                _collapse_move(moves, face, root, order, pos, j, p, on, "o")
    for p, v in verts:
        if p and v.st == "b" and _get(root, p[:-1]).st == "b":
            _collapse_move(moves, face, root, order, pos, j, p[:-1], [p[-1]], "b")

    # gauge-vertex
    on_before = 0
    for p, v in verts:
        if v.st in ("b", "a"):
            new_root = _replace(root, p, V(v.kids, "o", v.tok))
            if _comp_valid(new_root):
                k = on_before
                sign = (-1) ** (j + k) if v.st == "b" else (-1) ** (j + k + 1)
                moves.append(Move("gauge-vertex-" + ("A" if v.st == "b" else "B"), sign,
                                  wrap(new_root), order, (p,)))
        if v.st == "o":
            on_before += 1

    # above-break, including the outgoing edge when the whole tree sits above the gauge
    if root.st == "a":
        moves.append(Move("above-break", (-1) ** j, G(face, _strip(root, True), True), order, ((),)))
    for p, v in verts:
        if not p or v.st != "a":
            continue
        lower = _replace(root, p, None)
        upper = _strip(v, True)
        # graft the upper plain tree onto the leaf it left behind
        n_before = _leaves_before(root, p)
        node = graft_at(wrap(lower), n_before + 1, upper)
        q = pos[v.tok]
        moves.append(Move("above-break", (-1) ** (q + j), node,
                          tuple(t for t in order if t != v.tok), (p,)))

    # below-break
    if root.st == "b":
        for cut in _below_cuts(root):
            node, broken = _apply_cut(face, root, cut)
            eps = _move_to_front_sign(order, broken)
            rest = tuple(t for t in order if t not in broken)
            moves.append(Move("below-break", (-1) ** (eps + 1 + j), node, rest, tuple(cut)))
    return moves


def _leaves_before(root: V, path) -> int:
    """Number of leaves of the component strictly to the left of the vertex at path."""
    count = 0
    x = root
    for i in path:
        for c in x.kids[:i]:
            count += leaves_count(c)
        x = x.kids[i]
    return count


def _below_cuts(root: V) -> list[tuple]:
    """Root parts: connected sets of below vertices containing the root.

    A cut is described by the tuple of paths of root-part vertices; the broken
    edges are all edges leaving the root part (to vertices or to leaves).
    """
    out = []

    def extend(frontier: list, chosen: list):
        if not frontier:
            out.append(tuple(sorted(chosen)))
            return
        p, v = frontier[0]
        rest = frontier[1:]
        # exclude p from the root part
        extend(rest, chosen)
        # include p: its below children join the frontier
        kids = [(p + (i,), c) for i, c in enumerate(v.kids)
                if isinstance(c, V) and c.tok is not None and c.st == "b"]
        extend(rest + kids, chosen + [p])

    kids = [((i,), c) for i, c in enumerate(root.kids)
            if isinstance(c, V) and c.tok is not None and c.st == "b"]
    extend(kids, [()])
    return out


def _apply_cut(face, root: V, part: tuple):
    """Split along the root part: plain root part, gauged pieces above each cut edge."""
    part_set = set(part)
    broken: list[int] = []
    pieces: list = []

    def rec(x: V, p) -> V:
        kids = []
        for i, c in enumerate(x.kids):
            cp = p + (i,)
            if isinstance(c, V) and c.tok is not None and cp in part_set:
                kids.append(rec(c, cp))
            elif isinstance(c, V) and c.tok is not None:
                broken.append(c.tok)
                kids.append(G(face, V(c.kids, c.st, None), False))
            else:
                kids.append(G(face, c, True))
        return V(tuple(kids), None, x.tok if p else None)

    node = rec(root, ())
    # broken edges listed left to right, which is the order of the nontrivial gauges
    return node, broken


def _move_to_front_sign(order: Sequence[int], broken: Sequence[int]) -> int:
    """Parity of moving broken[k] to slot k in ``order``, k = 1..s."""
    target = list(broken) + [t for t in order if t not in broken]
    return 0 if perm_sign(list(order), target) == 1 else 1


def relabel_gauges(node, faces_lr: Sequence[Face]):
    """Replace the labels of the gauges, left to right."""
    it = iter(faces_lr)

    def rec(x):
        if x is None:
            return None
        if isinstance(x, G):
            f = next(it)
            return G(f, rec(x.body), x.trivial)
        return V(tuple(rec(c) for c in x.kids), x.st, x.tok)

    out = rec(node)
    if list(it):
        raise ValueError("more labels than gauges")
    return out


def count_gauges(node) -> int:
    if node is None:
        return 0
    if isinstance(node, G):
        return 1 + count_gauges(node.body)
    return sum(count_gauges(c) for c in node.kids)


def gauged_boundary(t: GaugedTree, order: Sequence[int] | None = None) -> list[Move]:
    """Signed boundary moves of a gauged tree, in the canonical token frame.

    With ``order`` omitted the canonical orientation is used; an explicit order
    is a permutation of the edge indices 0..e-1 (canonical preorder positions).
    """
    if t.trivial:
        return []
    node, can = generator(None, t)
    if order is None:
        order = can
    else:
        if sorted(order) != list(range(t.e)):
            raise ValueError("ordering must list exactly the internal edges")
        order = tuple(can[i] for i in order)
    return gauged_moves(None, node.body, order)


def srt_moves(node, order: Sequence[int], sign_rule: int = 1) -> list[Move]:
    """Collapse and break of every finite edge of a plain (possibly broken) tree.

    Edge at position p of the orientation: collapse (-1)^{p+1}, break (-1)^p,
    times ``sign_rule``.
    """
    order = tuple(order)
    out = []
    for q, tok in enumerate(order, start=1):
        rest = tuple(t for t in order if t != tok)
        out.append(Move("collapse", sign_rule * (-1) ** (q + 1), _collapse_tok(node, tok), rest, (tok,)))
        out.append(Move("break", sign_rule * (-1) ** q, _break_tok(node, tok), rest, (tok,)))
    return out


def _collapse_tok(node, tok):
    if node is None or isinstance(node, G):
        return node if node is None else G(node.face, _collapse_tok(node.body, tok), node.trivial)
    kids = []
    for c in node.kids:
        if isinstance(c, V) and c.tok == tok:
            kids.extend(_collapse_tok(k, tok) for k in c.kids)
        else:
            kids.append(_collapse_tok(c, tok))
    return V(tuple(kids), node.st, node.tok)


def _break_tok(node, tok):
    if node is None:
        return None
    if isinstance(node, G):
        return G(node.face, _break_tok(node.body, tok), node.trivial)
    kids = tuple(V(c.kids, c.st, None) if isinstance(c, V) and c.tok == tok else _break_tok(c, tok)
                 for c in node.kids)
    return V(kids, node.st, node.tok)


def srt_boundary(t: Shape, order: Sequence[int] | None = None, sign_rule: int = 1) -> list[Move]:
    node, can = srt_node(t)
    if order is not None:
        if sorted(order) != list(range(n_edges(t))):
            raise ValueError("ordering must list exactly the internal edges")
        can = tuple(can[i] for i in order)
    return srt_moves(node, can, sign_rule)


def canonical_orientation(t: GaugedTree | RibbonTree) -> list[tuple[int, ...]]:
    """Internal edges (named by their upper vertex) in planar depth-first order."""
    return edge_paths(t.shape)


# structural grafting on plain data

def graft(t: GaugedTree, i: int, u: Shape):
    """t_g o_i t' as a composite node (the grafting edge is broken)."""
    node, _ = generator(None, t)
    return graft_at(node, i, plain_node(u) if u != LEAF else None)


def mu_compose(t: Shape, pieces: Sequence[GaugedTree]):
    if arity(t) != len(pieces):
        raise ValueError("need one gauged tree per leaf")
    base = plain_node(t)
    subs = [generator(None, p)[0] for p in pieces]
    if base is None:
        return subs[0]
    return graft_leaves(base, subs)


def composite_arity(node) -> int:
    return leaves_count(node)


def composite_edges(node) -> int:
    return census(node)["edges"]


def composite_j(node) -> int:
    return census(node, trivial_j=0)["j"]


def render(key) -> str:
    """Compact text for a structural key."""
    if key is None:
        return "|"
    if key[0] == "g":
        _, face, trivial, body = key
        lab = "[" + "<".join(map(str, face)) + "]" if face is not None else ""
        if trivial:
            return f"T{lab}(" + render(body) + ")"
        return f"G{lab}{{" + render(body) + "}"
    _, st, root, kids = key
    mark = (st or "") + ("!" if root else "")
    return mark + "(" + ",".join(render(k) for k in kids) + ")"


__all__ = [
    "LEAF", "RibbonTree", "GaugedTree", "V", "G", "Move", "arity", "n_edges", "shapes",
    "vertex_paths", "edge_paths", "enumerate_trees", "gauged_types", "status_valid", "realise",
    "cell_dimension", "morse_bookkeeping", "key_of", "node_of", "canon", "canonical_tokens",
    "perm_sign", "graft_leaves", "graft_at", "generator", "srt_node", "census", "tree_degree",
    "full_degree", "gauged_moves", "gauged_boundary", "srt_moves", "srt_boundary",
    "canonical_orientation", "graft", "mu_compose", "relabel_gauges", "count_gauges", "render",
    "shape_to_json", "shape_from_json",
]
