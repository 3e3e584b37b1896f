"""Batch front end.

Every subcommand prints a short summary, or with ``--json`` a deterministic
report with sorted keys.  Exit codes: 0 when all checks pass, 2 when a check
fails, 3 when the input is invalid (bad flags, schema violations, data that
fails its own equations).
"""

from __future__ import annotations

import json
import math
import random
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import click

from . import __version__

OK, FAILED, INVALID = 0, 2, 3
DEFAULT_SEED = 20240


class InputError(ValueError):
    pass


def _parse_face(text: str):
    from .simplex import check_face

    body = text.strip().strip("[]")
    sep = "<" if "<" in body else ","
    try:
        return check_face(int(v) for v in body.split(sep))
    except ValueError as exc:
        raise InputError(f"bad face {text!r}: {exc}") from None


def _load(path: str | None, name: str):
    from .serial import validate

    if path is None:
        return None
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    validate(data, name)
    return data


def _frac(x: Fraction) -> str:
    return str(x)


def _finish(report: dict, as_json: bool, output: str | None, summary: str) -> int:
    text = json.dumps(report, sort_keys=True, indent=2)
    if output:
        Path(output).write_text(text + "\n")
    click.echo(text if as_json else summary)
    return OK if report.get("ok", True) else FAILED


json_opt = click.option("--json", "as_json", is_flag=True, help="Print the full JSON report.")
out_opt = click.option("--output", type=click.Path(dir_okay=False), help="Also write the JSON report here.")
seed_opt = click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True,
                        help="Seed for randomly generated instances.")


@click.group()
@click.version_option(__version__, prog_name="nmorph")
def cli() -> None:
    """Exact checks for higher morphisms of A-infinity algebras."""


# subdivisions and partitions

def _off(strata, n: int) -> str:
    """OFF text for the closed cells of dimension min(n, 2), padded to 3D."""
    k = min(n, 2)
    cells = [st for st in strata if st.dimension == k]
    index: dict = {}
    polys = []
    for st in cells:
        vs = st.vertices()
        if k == 2:
            vs = _cyclic(vs)
        for v in vs:
            index.setdefault(v, len(index))
        polys.append([index[v] for v in vs])
    lines = ["OFF", f"{len(index)} {len(polys)} 0"]
    for v in sorted(index, key=index.get):
        pad = list(v) + [Fraction(0)] * (3 - len(v))
        lines.append(" ".join(repr(float(c)) for c in pad))
    for p in polys:
        lines.append(" ".join(str(x) for x in [len(p)] + p))
    return "\n".join(lines) + "\n"


def _cyclic(vs):
    """Order the vertices of a planar convex polygon around its centroid."""
    pts = [[float(c) for c in v] + [0.0] * (3 - len(v)) for v in vs]
    c = [sum(p[i] for p in pts) / len(pts) for i in range(3)]
    rel = [[p[i] - c[i] for i in range(3)] for p in pts]
    u = rel[0]
    crosses = [_cross(u, r) for r in rel[1:]]
    normal = next(cr for cr in crosses if any(abs(x) > 1e-12 for x in cr))
    w = _cross(normal, u)
    ang = [math.atan2(sum(a * b for a, b in zip(r, w)), sum(a * b for a, b in zip(r, u))) for r in rel]
    return [v for _, v in sorted(zip(ang, vs), key=lambda t: t[0])]


def _cross(a, b):
    return [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]


@cli.command()
@click.option("--n", type=click.IntRange(0, 6), required=True, help="Dimension of the simplex.")
@click.option("--s", type=click.IntRange(1, 4), default=1, show_default=True, help="Number of AW iterations.")
@click.option("--interior-only", is_flag=True, help="List only strata in the open simplex.")
@click.option("--brute-force", is_flag=True, help="Cross-check the top count by grid sampling.")
@click.option("--off", "off_path", type=click.Path(dir_okay=False), help="Write an OFF file (n <= 3).")
@json_opt
@out_opt
def subdivide(n, s, interior_only, brute_force, off_path, as_json, output):
    """Strata of the iterated AW subdivision of the n-simplex."""
    from .simplex import brute_force_top_count, chain_image_check, subdivision, top_strata

    strata = subdivision(n, s, interior_only)
    tops = len(top_strata(n, s))
    expected = math.comb(n + s, s)
    chain = chain_image_check(n, s)
    report = {"n": n, "s": s, "strata": [st.to_json() for st in strata], "interior_top": tops,
              "expected": expected, "chain_image": chain["ok"]}
    ok = tops == expected and chain["ok"]
    if brute_force:
        report["brute_force"] = brute_force_top_count(n, s)
        ok = ok and report["brute_force"] == expected
    if off_path:
        if not 1 <= n <= 3:
            raise InputError("OFF export needs 1 <= n <= 3")
        Path(off_path).write_text(_off(subdivision(n, s), n))
    report["ok"] = ok
    return _finish(report, as_json, output,
                   f"n={n} s={s}: {len(strata)} strata, {tops} interior top (expected {expected})")


@cli.command()
@click.option("--face", default="0<1<2", show_default=True, help="Face as 0<1<2 or 0,1,2.")
@click.option("--s", type=click.IntRange(1), default=2, show_default=True, help="Number of parts.")
@click.option("--overlaps", type=int, default=None, help="Number of overlapping junctions (default s-1).")
@json_opt
@out_opt
def partitions(face, s, overlaps, as_json, output):
    """Overlapping partitions of a face, with iterated AW signs."""
    from .simplex import count_overlapping, enumerate_overlapping, face_name, iterated_aw

    I = _parse_face(face)
    parts = enumerate_overlapping(I, s, overlaps)
    full = overlaps is None or overlaps == s - 1
    signs = iterated_aw(I, s) if full else {}
    rows = [{"parts": [face_name(P) for P in p], "sign": signs.get(p)} for p in parts]
    report = {"face": face_name(I), "s": s, "overlaps": s - 1 if overlaps is None else overlaps,
              "count": len(parts), "partitions": rows}
    if full:
        report["ok"] = len(parts) == count_overlapping(len(I) - 1, s) and set(signs) == set(parts)
    lines = [f"{r['sign'] if r['sign'] is not None else ''} " + " ".join(r["parts"]) for r in rows]
    return _finish(report, as_json, output, "\n".join(lines + [f"{len(parts)} partitions"]))


@cli.command("tree-boundary")
@click.option("--tree", "tree_text", required=True, help="Nested arrays, e.g. [[[],[]],[]].")
@click.option("--status", default=None, help="Vertex statuses in preorder, e.g. b,a.")
@click.option("--face", default=None, help="Decorate with a simplex face and use the full differential.")
@click.option("--plain", is_flag=True, help="Treat the tree as a plain stable ribbon tree.")
@json_opt
@out_opt
def tree_boundary(tree_text, status, face, plain, as_json, output):
    """Signed boundary of a gauged (or plain) stable ribbon tree."""
    from .bimodules import gen_key, nombas_diff, srt_diff, srt_key
    from .trees import GaugedTree, render, shape_from_json

    try:
        shape = shape_from_json(json.loads(tree_text))
    except json.JSONDecodeError as exc:
        raise InputError(f"bad tree: {exc}") from None
    if plain:
        key = srt_key(shape)
        diff = lambda e: srt_diff(e)
    else:
        if status is None:
            raise InputError("--status is required for gauged trees")
        t = GaugedTree(shape, tuple(x.strip() for x in status.split(",") if x.strip()))
        I = _parse_face(face) if face else (0,)
        key = gen_key(I, t)
        diff = lambda e: nombas_diff(e)
    d = diff({key: 1})
    dd = diff(d)
    terms = sorted(({"term": render(k), "coeff": c} for k, c in d.items()), key=lambda r: r["term"])
    report = {"generator": render(key), "terms": terms, "d_squared_zero": not dd, "ok": not dd}
    lines = [f"{'+' if r['coeff'] > 0 else '-'}{abs(r['coeff']) if abs(r['coeff']) != 1 else ''} {r['term']}"
             for r in terms]
    return _finish(report, as_json, output, "\n".join([f"d {render(key)} ="] + lines))


# chain-level audits

@cli.command()
@click.option("--family", type=click.Choice(["nombas", "nainf"]), required=True)
@click.option("--m-max", type=click.IntRange(1, 7), default=4, show_default=True)
@click.option("--n-max", type=click.IntRange(0, 4), default=2, show_default=True)
@json_opt
@out_opt
def d2check(family, m_max, n_max, as_json, output):
    """d^2 = 0 on every generator up to the given arity and face dimension."""
    from .bimodules import d2_check

    report = d2_check(family, m_max, n_max)
    return _finish(report, as_json, output,
                   f"{family} m<={m_max} n<={n_max}: {report['generators']} generators, "
                   f"{report['failure_count']} failures")


@cli.command("export-complex")
@click.option("--n", type=click.IntRange(0, 3), required=True)
@click.option("--m", type=click.IntRange(1, 4), required=True)
@click.option("--decomp", type=click.Choice(["coarse", "fine"]), default="coarse", show_default=True)
@json_opt
@out_opt
def export_complex(n, m, decomp, as_json, output):
    """Cells, dimensions and signed boundary matrix of the n-multiplihedron n-J_m."""
    from .nmult import audit, export

    report = export(n, m, decomp)
    a = audit(n, m, decomp)
    report.update({"closed": a["closed"], "d_squared_zero": a["d_squared_zero"],
                   "ok": a["closed"] and a["d_squared_zero"] and a["euler"] == 1})
    return _finish(report, as_json, output,
                   f"{n}-J_{m} ({decomp}): f-vector {a['f_vector']}, euler {a['euler']}, "
                   f"d^2=0 {a['d_squared_zero']}")


@cli.command("retract-check")
@click.option("--n", type=click.IntRange(0, 8), required=True)
@json_opt
@out_opt
def retract_check(n, as_json, output):
    """The deformation retraction of the simplicial chains of the n-simplex onto a point."""
    from .simplex import retraction_identities

    ids = retraction_identities(n)
    report = {"n": n, "identities": ids, "ok": all(ids.values())}
    return _finish(report, as_json, output,
                   " ".join(f"{k}:{'ok' if v else 'FAIL'}" for k, v in ids.items()))


@cli.command("aw-witness")
@click.option("--x", "x_text", default="2/5", show_default=True, help="Point of the 1-simplex.")
@json_opt
@out_opt
def aw_witness(x_text, as_json, output):
    """The two iterated AW images of a point, which differ."""
    from .simplex import aw_triple_witness

    try:
        x = Fraction(x_text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad point {x_text!r}: {exc}") from None
    left, right = aw_triple_witness(x)
    fmt = lambda p: "(" + ", ".join(_frac(c) for c in p) + ")"
    report = {"x": _frac(x), "aw_id_aw": [_frac(c) for c in left], "id_aw_aw": [_frac(c) for c in right],
              "coassociative_here": left == right}
    return _finish(report, as_json, output, f"{fmt(left)} vs {fmt(right)}")


# morphisms, horns and homotopy groups

def _random_ainf_morphism(rng: random.Random, n: int):
    from .homsimp import random_pair, random_simplex, to_nmorphism

    pair, base = random_pair(rng, rank=2, cap=3)
    return to_nmorphism(random_simplex(rng, pair, base, n))


def _random_ombas_morphism(rng: random.Random, n: int):
    from .ombas import random_ombas, random_ombas_morphism

    A = random_ombas(rng, 2, 3, "x")
    B = random_ombas(rng, 2, 3, "y")
    return random_ombas_morphism(rng, A, B, n)


@cli.command("check-morphism")
@click.option("--input", "input_path", type=click.Path(exists=True, dir_okay=False),
              help="Morphism JSON; a seeded random valid one is generated when omitted.")
@click.option("--flavor", type=click.Choice(["ainf", "ombas"]), default="ainf", show_default=True)
@click.option("--cap", type=click.IntRange(1), default=None, help="Check arities up to this cap.")
@click.option("--twisted", type=int, default=None,
              help="OmegaB(As) only: check against the differential twisted by this dimension.")
@click.option("--n", type=click.IntRange(0, 2), default=1, show_default=True, help="Dimension for random instances.")
@click.option("--save", type=click.Path(dir_okay=False), help="Write the (generated) morphism JSON here.")
@seed_opt
@json_opt
@out_opt
def check_morphism(input_path, flavor, cap, twisted, n, save, seed, as_json, output):
    """Check the n-morphism equations exactly."""
    from .ainf import check_n_morphism
    from .ombas import check_n_ombas_morphism, push_forward
    from .serial import (nmorphism_from_json, nmorphism_to_json, ombas_morphism_from_json,
                         ombas_morphism_to_json)

    if twisted is not None and flavor != "ombas":
        raise InputError("--twisted applies to the ombas flavor only")
    rng = random.Random(seed)
    data = None
    if input_path:
        try:
            data = json.loads(Path(input_path).read_text())
        except json.JSONDecodeError as exc:
            raise InputError(f"cannot parse {input_path}: {exc}") from None
    if flavor == "ainf":
        F = nmorphism_from_json(data) if data is not None else _random_ainf_morphism(rng, n)
        res = check_n_morphism(F, cap)
        dump = nmorphism_to_json(F)
        report = {"flavor": flavor, "n": F.n, "ok": res["ok"], "residuals": res["residuals"],
                  "verified_arities": res["verified_arities"]}
    else:
        F = ombas_morphism_from_json(data) if data is not None else _random_ombas_morphism(rng, n)
        res = check_n_ombas_morphism(F, cap, twisted)
        dump = ombas_morphism_to_json(F)
        report = {"flavor": flavor, "n": F.n, "twisted": twisted, "ok": res["ok"],
                  "residuals": res["residuals"], "verified_arities": res["verified_arities"]}
        if twisted is None and res["ok"]:
            pushed = check_n_morphism(push_forward(F), cap)
            report["push_forward_ok"] = pushed["ok"]
            report["ok"] = pushed["ok"]
    if save:
        Path(save).write_text(json.dumps(dump, sort_keys=True) + "\n")
    report["seed"] = None if data is not None else seed
    bad = len(report["residuals"])
    return _finish(report, as_json, output,
                   f"{flavor} {F.n}-morphism: {'ok' if report['ok'] else 'FAILED'} ({bad} nonzero residuals)")


@cli.command("fill-horn")
@click.option("--input", "input_path", type=click.Path(exists=True, dir_okay=False),
              help="Horn JSON; a seeded random inner horn is generated when omitted.")
@click.option("--n", type=click.IntRange(2, 4), default=2, show_default=True)
@click.option("--k", type=int, default=1, show_default=True)
@seed_opt
@json_opt
@out_opt
def fill_horn(input_path, n, k, seed, as_json, output):
    """Fill an inner horn with zero top component and verify the filler."""
    from .homsimp import Horn, fill_inner_horn, horn_of, random_pair, random_simplex

    data = _load(input_path, "horn")
    if data is not None:
        horn = Horn.from_json(data)
    else:
        rng = random.Random(seed)
        pair, base = random_pair(rng, rank=2, cap=3)
        if not 0 < k < n:
            raise InputError("need an inner horn, 0 < k < n")
        horn = horn_of(random_simplex(rng, pair, base, n), k)
    sx = fill_inner_horn(horn)
    bad = sx.residuals()
    report = {"n": horn.n, "k": horn.k, "filler": sx.to_json(), "ok": not bad,
              "nonzero_residuals": len(bad)}
    return _finish(report, as_json, output,
                   f"horn ({horn.n},{horn.k}): filler {'valid' if not bad else 'INVALID'}")


@cli.command("pi-compose")
@click.option("--f", "f_path", type=click.Path(exists=True, dir_okay=False), help="First representative.")
@click.option("--g", "g_path", type=click.Path(exists=True, dir_okay=False), help="Second representative.")
@click.option("--n", type=click.IntRange(1, 3), default=2, show_default=True, help="Dimension for random instances.")
@seed_opt
@json_opt
@out_opt
def pi_compose(f_path, g_path, n, seed, as_json, output):
    """Compose two homotopy group representatives and check the result."""
    from .homsimp import (PiNRep, abelian_target_pair, compose_pi1, compose_pin,
                          nilpotent_target_pair, pi1_via_filler, pin_rep_check, random_base,
                          random_pin_rep)

    if (f_path is None) != (g_path is None):
        raise InputError("give both --f and --g, or neither")
    if f_path:
        F = PiNRep.from_json(_load(f_path, "pin_rep"))
        G = PiNRep.from_json(_load(g_path, "pin_rep"), F.pair)
        for rep in (F, G):
            if not pin_rep_check(rep)["ok"]:
                raise InputError("an input representative fails its equations")
    else:
        rng = random.Random(seed)
        if n == 1:
            # the zero map is a 0-simplex; the product term b_2(F (x) G) still survives
            pair = nilpotent_target_pair(rng)
            base = {m: pair.zero(m, 0) for m in range(1, pair.cap + 1)}
        else:
            pair = abelian_target_pair(rng)
            base = random_base(rng, pair)
        F, G = random_pin_rep(rng, pair, base, n), random_pin_rep(rng, pair, base, n)
    H = compose_pi1(F, G) if F.n == 1 else compose_pin(F, G)
    res = pin_rep_check(H)
    report = {"n": F.n, "composite": H.to_json(), "ok": res["ok"], "residuals": res["residuals"]}
    if F.n == 1:
        alt = pi1_via_filler(F, G)
        agree = all(alt.get_top(m) == H.get_top(m) for m in range(1, H.pair.cap + 1))
        report["matches_filler"] = agree
        report["ok"] = report["ok"] and agree
    return _finish(report, as_json, output, f"pi_{F.n} composite: {'ok' if report['ok'] else 'FAILED'}")


def run(argv: Sequence[str] | None = None) -> int:
    """Run the CLI and return its exit code instead of exiting."""
    from .koszul import ShapeError
    from .serial import SchemaError

    try:
        code = cli.main(args=list(argv) if argv is not None else None, prog_name="nmorph",
                        standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return INVALID
    except click.Abort:
        return INVALID
    except (InputError, SchemaError, ShapeError, ValueError, KeyError, TypeError) as exc:
        click.echo(f"error: {exc}", err=True)
        return INVALID
    return code if isinstance(code, int) else OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
