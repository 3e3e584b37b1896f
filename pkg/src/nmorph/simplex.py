"""The cosimplicial dg-coalgebra of the standard simplex and its AW subdivisions.

A face of the n-simplex is a strictly increasing tuple of vertices; its degree
is minus its dimension.  The coproduct is the Alexander-Whitney one, which has
no signs.  The geometric half of the module works with exact rationals in the
coordinates ``1 >= z_1 >= ... >= z_n >= 0``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Iterator, Sequence

from .koszul import GradedMap, GradedModule, add_into, compose, identity, tensor_differential

Face = tuple[int, ...]


# faces and the coalgebra structure

def check_face(face: Sequence[int], n: int | None = None) -> Face:
    face = tuple(int(v) for v in face)
    if not face:
        raise ValueError("a face has at least one vertex")
    if any(a >= b for a, b in zip(face, face[1:])):
        raise ValueError(f"vertices of {face} are not strictly increasing")
    if face[0] < 0 or (n is not None and face[-1] > n):
        raise ValueError(f"{face} is not a face of the {n}-simplex")
    return face


def dim(face: Face) -> int:
    return len(face) - 1


def deg(face: Face) -> int:
    return 1 - len(face)


def face_name(face: Face) -> str:
    return "[" + "<".join(str(v) for v in face) + "]"


def parse_face(text: str) -> Face:
    body = text.strip().strip("[]")
    return check_face(int(v) for v in body.split("<"))


def faces(n: int, d: int | None = None) -> list[Face]:
    """All faces of the n-simplex (of dimension d if given), by dimension then lex."""
    dims = range(n + 1) if d is None else [d]
    return [c for k in dims for c in itertools.combinations(range(n + 1), k + 1)]


def subfaces(face: Face) -> list[Face]:
    return [c for k in range(len(face)) for c in itertools.combinations(face, k + 1)]


def simplicial_diff(face: Face) -> dict[Face, int]:
    out: dict[Face, int] = {}
    if len(face) == 1:
        return out
    for j in range(len(face)):
        add_into(out, face[:j] + face[j + 1:], -1 if j % 2 else 1)
    return out


def aw_coproduct(face: Face) -> dict[tuple[Face, Face], int]:
    return {(face[:j + 1], face[j:]): 1 for j in range(len(face))}


def enumerate_overlapping(face: Face, s: int, i: int | None = None) -> list[tuple[Face, ...]]:
    """The i-overlapping s-partitions of a face, in lexicographic order of cut points.

    Consecutive components either share their extreme vertex (an overlap) or
    are adjacent; exactly i of the s-1 junctions are overlaps.  The default is
    the fully overlapping case i = s-1.
    """
    if s < 1:
        raise ValueError("s must be positive")
    if i is None:
        i = s - 1
    if not 0 <= i <= s - 1:
        return []
    d = len(face) - 1
    result: list[tuple[Face, ...]] = []

    def rec(start: int, parts: list[Face], overlaps: int) -> None:
        k = len(parts)
        if k == s - 1:
            if overlaps == i:
                result.append(tuple(parts) + (face[start:],))
            return
        for end in range(start, d + 1):
            comp = face[start:end + 1]
            # overlap: next starts at end; adjacency: next starts at end + 1
            if overlaps < i:
                rec(end, parts + [comp], overlaps + 1)
            if end + 1 <= d and (s - 1 - k - 1) >= (i - overlaps):
                rec(end + 1, parts + [comp], overlaps)

    rec(0, [], 0)
    return result


def count_overlapping(d: int, s: int) -> int:
    return comb(d + s - 1, s - 1)


def iterated_aw(face: Face, s: int) -> dict[tuple[Face, ...], int]:
    """Right-iterated AW coproduct into s tensor factors."""
    if s < 1:
        raise ValueError("s must be positive")
    terms: dict[tuple[Face, ...], int] = {(face,): 1}
    for _ in range(s - 1):
        nxt: dict[tuple[Face, ...], int] = {}
        for key, c in terms.items():
            for (a, b), d in aw_coproduct(key[-1]).items():
                add_into(nxt, key[:-1] + (a, b), c * d)
        terms = nxt
    return terms


def union(parts: Iterable[Face]) -> Face:
    return tuple(sorted(set(v for p in parts for v in p)))


# cosimplicial structure

def coface(i: int, face: Face) -> Face:
    """delta_i : Delta^{n-1} -> Delta^n, missing the vertex i."""
    return tuple(v if v < i else v + 1 for v in face)


def codegeneracy(i: int, face: Face) -> Face | None:
    """sigma_i : Delta^{n+1} -> Delta^n contracting [i<i+1]; None stands for zero."""
    if i in face and i + 1 in face:
        return None
    return tuple(v if v <= i else v - 1 for v in face)


# the dg-coalgebra as a graded module

def simplex_module(n: int) -> GradedModule:
    return GradedModule.of((face_name(f), deg(f)) for f in faces(n))


def simplex_differential(n: int) -> GradedMap:
    M = simplex_module(n)
    coeffs = {}
    for f in faces(n):
        for g, c in simplicial_diff(f).items():
            coeffs[((face_name(g),), (face_name(f),))] = c
    return GradedMap((M,), (M,), 1, coeffs)


def coproduct_map(n: int) -> GradedMap:
    M = simplex_module(n)
    coeffs = {}
    for f in faces(n):
        for (a, b), c in aw_coproduct(f).items():
            coeffs[((face_name(a), face_name(b)), (face_name(f),))] = c
    return GradedMap((M,), (M, M), 0, coeffs)


def retraction(n: int) -> tuple[GradedMap, GradedMap, GradedMap]:
    """(p, i, h) contracting the n-simplex coalgebra onto the vertex [0].

    h prefixes the vertex 0 and vanishes on faces that already start at 0.
    """
    M = simplex_module(n)
    P = simplex_module(0)
    v0 = face_name((0,))
    p = GradedMap((M,), (P,), 0, {((v0,), (face_name((k,)),)): 1 for k in range(n + 1)})
    i = GradedMap((P,), (M,), 0, {((v0,), (v0,)): 1})
    h = GradedMap((M,), (M,), -1, {((face_name((0,) + f),), (face_name(f),)): 1
                                   for f in faces(n) if f[0] != 0})
    return p, i, h


def retraction_identities(n: int) -> dict[str, bool]:
    from .koszul import bracket

    p, i, h = retraction(n)
    d = simplex_differential(n)
    d0 = simplex_differential(0)
    M = simplex_module(n)
    pi = compose(p, i)
    lhs = identity(M) - compose(i, p)
    return {"pi=Id": pi == identity(simplex_module(0)),
            "Id-ip=[d,h]": lhs == bracket(h, d, d),
            "p chain map": compose(d0, p) == compose(p, d),
            "i chain map": compose(d, i) == compose(i, d0)}


# geometry: the polytopal AW map

Point = tuple[Fraction, ...]


def as_point(coords: Iterable) -> Point:
    p = tuple(Fraction(c) for c in coords)
    if any(c > 1 or c < 0 for c in p) or any(a < b for a, b in zip(p, p[1:])):
        raise ValueError(f"{p} does not lie in the simplex 1 >= z_1 >= ... >= z_n >= 0")
    return p


def aw_point(p: Sequence) -> tuple[Point, Point]:
    z = as_point(p)
    n = len(z)
    half = Fraction(1, 2)
    i = sum(1 for c in z if c > half)
    left = tuple(2 * c - 1 for c in z[:i]) + (Fraction(0),) * (n - i)
    right = (Fraction(1),) * i + tuple(2 * c for c in z[i:])
    return left, right


def aw_point_iter(p: Sequence, s: int) -> tuple[Point, ...]:
    """(id^{s-2} x AW) o ... o AW, an s-tuple of points."""
    if s < 1:
        raise ValueError("s must be positive")
    out = [as_point(p)]
    for _ in range(s - 1):
        a, b = aw_point(out[-1])
        out[-1:] = [a, b]
    return tuple(out)


def aw_triple_witness(x=Fraction(2, 5)) -> tuple[Point, Point]:
    """((AW x id) o AW)(x) and ((id x AW) o AW)(x) on the 1-simplex, flattened."""
    a, b = aw_point((x,))
    left = aw_point(a) + (b,)
    right = (a,) + aw_point(b)
    flat = lambda pts: tuple(c for q in pts for c in q)
    return flat(left), flat(right)


# the AW^s subdivision

@dataclass(frozen=True)
class SubdivisionStratum:
    """A stratum of the AW^{o s} subdivision of the n-simplex.

    ``face`` is the face of the simplex whose relative interior contains the
    stratum; ``codes`` gives, for each free coordinate t_1 > ... > t_k of that
    face, its position relative to the levels L_0 = 1 > L_1 = 1/2 > ... >
    L_s = 2^-s > L_{s+1} = 0: code 2q means t = L_q, code 2q+1 means
    L_q > t > L_{q+1}.
    """

    n: int
    s: int
    face: Face
    codes: tuple[int, ...]

    @property
    def dimension(self) -> int:
        return sum(c % 2 for c in self.codes)

    @property
    def interior(self) -> bool:
        return self.face == tuple(range(self.n + 1))

    @property
    def label(self) -> tuple[Face, ...]:
        return stratum_label(self.face, self.codes, self.s)

    @property
    def overlaps(self) -> int:
        return sum(1 for a, b in zip(self.label, self.label[1:]) if a[-1] == b[0])

    def z_intervals(self) -> list[tuple[Fraction, Fraction]]:
        """Closed bounds (low, high) of each ambient coordinate z_1..z_n."""
        levels = _levels(self.s)
        bounds = []
        f = self.face
        for l in range(1, self.n + 1):
            if l <= f[0]:
                bounds.append((Fraction(1), Fraction(1)))
            elif l > f[-1]:
                bounds.append((Fraction(0), Fraction(0)))
            else:
                r = next(r for r in range(1, len(f)) if l <= f[r])
                c = self.codes[r - 1]
                if c % 2 == 0:
                    bounds.append((levels[c // 2], levels[c // 2]))
                else:
                    bounds.append((levels[c // 2 + 1], levels[c // 2]))
        return bounds

    def relations(self) -> list[list[str]]:
        """For each z_l and each threshold 2^-k (k = 1..s) one of '>', '=', '<'."""
        out = []
        for lo, hi in self.z_intervals():
            row = []
            for k in range(1, self.s + 1):
                L = Fraction(1, 2 ** k)
                if lo == hi == L:
                    row.append("=")
                elif lo >= L:
                    row.append(">")
                else:
                    row.append("<")
            out.append(row)
        return out

    def vertices(self) -> list[Point]:
        """Exact vertices of the closure, in ambient z-coordinates."""
        levels = _levels(self.s)
        choices = []
        for c in self.codes:
            if c % 2 == 0:
                choices.append([levels[c // 2]])
            else:
                choices.append([levels[c // 2], levels[c // 2 + 1]])
        pts = set()
        for t in itertools.product(*choices):
            if all(a >= b for a, b in zip(t, t[1:])):
                pts.add(self._embed(t))
        return sorted(pts, reverse=True)

    def _embed(self, t: Sequence[Fraction]) -> Point:
        f = self.face
        z = []
        for l in range(1, self.n + 1):
            if l <= f[0]:
                z.append(Fraction(1))
            elif l > f[-1]:
                z.append(Fraction(0))
            else:
                r = next(r for r in range(1, len(f)) if l <= f[r])
                z.append(t[r - 1])
        return tuple(z)

    def sample_point(self) -> Point:
        """A rational point in the relative interior of the stratum."""
        levels = _levels(self.s)
        groups: dict[int, list[int]] = {}
        for r, c in enumerate(self.codes):
            groups.setdefault(c, []).append(r)
        t: list[Fraction] = [Fraction(0)] * len(self.codes)
        for c, rs in groups.items():
            if c % 2 == 0:
                for r in rs:
                    t[r] = levels[c // 2]
            else:
                hi, lo = levels[c // 2], levels[c // 2 + 1]
                step = (hi - lo) / (len(rs) + 1)
                for j, r in enumerate(rs):
                    t[r] = hi - step * (j + 1)
        return self._embed(t)

    def to_json(self) -> dict:
        return {"face": list(self.face), "codes": list(self.codes), "dimension": self.dimension,
                "label": [list(p) for p in self.label],
                "vertices": [[str(c) for c in v] for v in self.vertices()]}


def _levels(s: int) -> list[Fraction]:
    return [Fraction(1, 2 ** k) for k in range(s + 1)] + [Fraction(0)]


def stratum_label(face: Face, codes: Sequence[int], s: int) -> tuple[Face, ...]:
    """Labeling recipe: level k cuts the vertex list after the coordinates above it.

    With a the number of coordinates strictly above 2^-k, the cut is
    ``... < a] (x) [a < ...`` when no coordinate sits on the level and
    ``... < a] (x) [a+1 < ...`` when coordinate a+1 equals it.
    """
    cuts = []
    for k in range(1, s + 1):
        above = sum(1 for c in codes if c < 2 * k)
        on = any(c == 2 * k for c in codes)
        cuts.append((above, above + 1 if on else above))
    parts = []
    start = 0
    for end, nxt in cuts:
        parts.append(face[start:end + 1])
        start = nxt
    parts.append(face[start:])
    return tuple(parts)


def _interior_codes(k: int, s: int) -> Iterator[tuple[int, ...]]:
    top = 2 * s + 1
    for codes in itertools.combinations_with_replacement(range(1, top + 1), k):
        evens = [c for c in codes if c % 2 == 0]
        if len(evens) == len(set(evens)):
            yield codes


def subdivision(n: int, s: int, interior_only: bool = False) -> list[SubdivisionStratum]:
    if n < 0 or s < 1:
        raise ValueError("need n >= 0 and s >= 1")
    fs = [tuple(range(n + 1))] if interior_only else faces(n)
    out = []
    for f in fs:
        for codes in _interior_codes(len(f) - 1, s):
            out.append(SubdivisionStratum(n, s, f, codes))
    return out


def top_strata(n: int, s: int) -> list[SubdivisionStratum]:
    return [st for st in subdivision(n, s, interior_only=True) if st.dimension == n]


def brute_force_top_count(n: int, s: int) -> int:
    """Count the realizable sign vectors of the arrangement {z_i = 2^-k} in the open simplex.

    Independent of the code-based enumeration: all 2^(n s) vectors of strict
    signs are tried, and a vector counts when an explicit rational point
    realizes it.  With a_i = max lower bound over j >= i and b_i = min upper
    bound over j <= i, a vector is realizable iff a_i < b_i for all i; the
    point z_i = a_i + (n + 1 - i)(b_i - a_i)/(n + 1) is then checked exactly.
    """
    thresholds = [Fraction(1, 2 ** k) for k in range(1, s + 1)]
    count = 0
    for signs in itertools.product((False, True), repeat=n * s):
        lo, hi = [], []
        for i in range(n):
            row = signs[i * s:(i + 1) * s]
            lo.append(max([L for L, up in zip(thresholds, row) if up], default=Fraction(0)))
            hi.append(min([L for L, up in zip(thresholds, row) if not up], default=Fraction(1)))
        a = [max(lo[i:]) for i in range(n)]
        b = [min(hi[:i + 1]) for i in range(n)]
        if any(x >= y for x, y in zip(a, b)):
            continue
        z = [a[i] + Fraction(n - i, n + 1) * (b[i] - a[i]) for i in range(n)]
        chain = [Fraction(1)] + z + [Fraction(0)]
        assert all(x > y for x, y in zip(chain, chain[1:]))
        assert all((c > L) == up for i, c in enumerate(z)
                   for L, up in zip(thresholds, signs[i * s:(i + 1) * s]))
        count += 1
    return count


def chain_image_check(n: int, s: int) -> dict:
    labels = sorted(st.label for st in top_strata(n, s))
    terms = sorted(k for k, c in iterated_aw(tuple(range(n + 1)), s + 1).items() for _ in range(c))
    missing = sorted(set(terms) - set(labels))
    extra = sorted(set(labels) - set(terms))
    return {"n": n, "s": s, "ok": labels == terms, "strata": len(labels), "terms": len(terms),
            "missing": [list(map(list, m)) for m in missing],
            "extra": [list(map(list, e)) for e in extra]}


def aw_point_matches_label(stratum: SubdivisionStratum) -> bool:
    """The iterated AW map sends an interior point of a top stratum into the cell of its label.

    The (s+1) image points lie in the relative interiors of the faces listed by
    the label, each face being read off from the coordinates equal to 1 or 0.
    """
    p = stratum.sample_point()
    images = aw_point_iter(p, stratum.s + 1)
    return tuple(_carrier(q) for q in images) == tuple(
        tuple(v for v in part) for part in stratum.label)


def _carrier(z: Point) -> Face:
    """The face of the simplex whose relative interior contains z."""
    n = len(z)
    ext = (Fraction(1),) + tuple(z) + (Fraction(0),)
    return tuple(v for v in range(n + 1) if ext[v] != ext[v + 1])


# the square witness and the 13234 ansatz

def _tau_sign(parts: Sequence[Face]) -> int:
    return -1 if (deg(parts[1]) * deg(parts[2])) % 2 else 1


def upper_composite(face: Face) -> dict[tuple[Face, ...], int]:
    """(id x tau x id)(AW x AW) AW : I -> sum +- I1 (x) I3 (x) I2 (x) I4."""
    out: dict[tuple[Face, ...], int] = {}
    for P in enumerate_overlapping(face, 4):
        add_into(out, (P[0], P[2], P[1], P[3]), _tau_sign(P))
    return out


def lower_composite(face: Face) -> dict[tuple[Face, ...], int]:
    """(AW x AW) AW : I -> sum I1 (x) I2 (x) I3 (x) I4."""
    return {P: 1 for P in enumerate_overlapping(face, 4)}


def square_noncommutativity_witness(n: int) -> dict:
    top = tuple(range(n + 1))
    up = upper_composite(top)
    low = lower_composite(top)
    diff = dict(up)
    for k, v in low.items():
        add_into(diff, k, -v)
    return {"upper": up, "lower": low, "difference": diff}


def tensor4_diff(key: tuple[Face, ...]) -> dict[tuple[Face, ...], int]:
    """Differential on a tensor of faces with the Koszul rule."""
    out: dict[tuple[Face, ...], int] = {}
    passed = 0
    for j, f in enumerate(key):
        sign = -1 if passed % 2 else 1
        for g, c in simplicial_diff(f).items():
            add_into(out, key[:j] + (g,) + key[j + 1:], sign * c)
        passed += deg(f)
    return out


def ansatz_terms(face: Face) -> list[tuple[tuple[Face, ...], tuple[Face, ...]]]:
    """Unsigned 13234 terms (partition, output) of degree -1 relative to the input."""
    out = []
    for P in enumerate_overlapping(face, 5):
        if len(P[2]) < 2:
            continue
        out.append((P, (P[0], P[2], union([P[1], P[3]]), P[4])))
    return out


__all__ = [
    "Face", "check_face", "dim", "deg", "face_name", "parse_face", "faces", "subfaces",
    "simplicial_diff", "aw_coproduct", "enumerate_overlapping", "count_overlapping",
    "iterated_aw", "union", "coface", "codegeneracy", "simplex_module", "simplex_differential",
    "coproduct_map", "retraction", "retraction_identities", "aw_point", "aw_point_iter",
    "aw_triple_witness", "SubdivisionStratum", "stratum_label", "subdivision", "top_strata",
    "brute_force_top_count", "chain_image_check", "aw_point_matches_label",
    "upper_composite", "lower_composite", "square_noncommutativity_witness", "tensor4_diff",
    "ansatz_terms", "tensor_differential",
]
