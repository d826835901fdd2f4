"""Command line: ``equivl <command> ...`` (also ``python -m equivl``).

Exit codes: 0 success, 1 data error, 2 failed certificate.
"""
from __future__ import annotations

import argparse
import sys
from typing import Optional

from . import engine as E
from .catalogue import Catalogue, load_catalogue
from .charclass import format_ppoly, l_polynomials, l_polynomials_newton
from .errors import (
    CertificateError,
    CompatibilityFailure,
    EquivLError,
    MissingTangent,
    MissingVerticalBundle,
    UnsupportedCap,
)
from .exact_algebra import format_rational
from .tables import FORMATS, Table, render_all
from .towers import (
    check_biinvariant_orientable,
    point_equivariant_homology,
    stable_k,
    tower_dims,
    tower_orientable,
)


def _matrix_text(m) -> str:
    return "[" + ",".join("[" + ",".join(format_rational(x) for x in row) + "]" for row in m) + "]"


# --------------------------------------------------------------------------
# commands; each returns a list of tables (and check also an exit code)

def cmd_lpoly(max_j: int = 3) -> list:
    roots = l_polynomials(max_j)
    newton = l_polynomials_newton(max_j) if max_j > 0 else roots
    t = Table(f"L-polynomials L_0..L_{max_j}", ["j", "polynomial", "routes_agree"])
    for j in range(max_j + 1):
        agree = {e[:max_j]: c for e, c in roots[j].items()} == {e[:max_j]: c for e, c in newton[j].items()}
        t.add(j, f"L{j} = {format_ppoly(roots[j])}", "yes" if agree else "NO")
    return [t]


def cmd_group_orient(cat: Catalogue, name: str) -> list:
    v = check_biinvariant_orientable(cat.group(name))
    t = Table(f"bi-invariant orientability of {name}", ["group", "orientable", "witness", "reason"])
    witness = _matrix_text(v.witness) if v.witness is not None else "-"
    t.add(name, "yes" if v.orientable else "no", witness, v.reason)
    if v.orientable:
        t.notes.append(f"{name}: bi-invariantly orientable")
    else:
        t.notes.append(f"{name}: NOT bi-invariantly orientable; witness {witness}")
    return [t]


def cmd_tower(cat: Catalogue, what: str, name: str, k: Optional[int] = None) -> list:
    tower = cat.tower(name)
    ks = [k] if k is not None else list(tower.stages)
    if what == "dims":
        t = Table(f"stage dimensions of {name}", ["k", "dim EG_k", "dim BG_k"])
        for kk in ks:
            t.add(kk, *tower_dims(tower, kk))
    else:
        t = Table(f"stage orientability of {name}", ["k", "orientable"])
        for kk in ks:
            t.add(kk, "yes" if tower_orientable(tower, kk) else "no")
    return [t]


def _stage_cell(tower, k, i, stable):
    base = tower.base(k)
    if i < 0 or i > base.dimension:
        return "0"
    names = base.ring.names_in_degree(base.dimension - i)
    text = ", ".join(base.label(n) for n in names) or "0"
    return text + ("*" if stable and names else "")


def cmd_point_homology(cat: Catalogue, name: str, j_min: int, j_max: int, stage_table: bool = False) -> list:
    tower = cat.tower(name)
    ks = list(tower.stages)
    t = Table(f"equivariant homology of a point, tower {name}",
              ["j", "rank", "stable_k"] + [f"k={k}" for k in ks] + ["generators", "verified"])
    for j in range(j_max, j_min - 1, -1):
        ph = point_equivariant_homology(tower, j)
        cells = [_stage_cell(tower, k, tower.stage_degree(j, k), k >= ph.stable_k and ph.rank > 0) for k in ks]
        verified = {True: "yes", False: "NO", None: "n/a"}[ph.verified]
        t.add(j, ph.rank, ph.stable_k, *cells, " -> ".join(ph.generator_names()) or "-", verified)
    t.notes.append("* marks stages in the stable range k >= stable_k(0, j)")
    tables = [t]
    if stage_table:
        tables.append(stage_homology_table(tower))
    return tables


def stage_homology_table(tower) -> Table:
    """H_i(BG_k) for all catalogued stages: degrees down, stages across."""
    ks = list(tower.stages)
    top = max(tower.base(k).dimension for k in ks)
    t = Table(f"stage homology of tower {tower.name}", ["i"] + [f"k={k}" for k in ks])
    for i in range(top + 1):
        cells = []
        for k in ks:
            j = tower.equivariant_degree(i, k)
            cells.append(_stage_cell(tower, k, i, j <= 0 and k >= stable_k(0, j)))
        t.add(i, *cells)
    return t


def cmd_equiv_lclass(cat: Catalogue, name: str, j_min: Optional[int] = None, j_max: Optional[int] = None) -> list:
    a = cat.action(name)
    j_max = a.m if j_max is None else j_max
    j_min = min(0, j_max) if j_min is None else j_min
    cls = E.equivariant_l_class(a, j_min=j_min)
    ks = sorted(cls.stages)
    t = Table(f"equivariant L-class of {name}", ["j", "stable_k", "stage", "value", "stage_value", "stable"])
    for j in range(j_max, j_min - 1, -1):
        k0 = stable_k(a.m, j)
        hit = cls.stable_value(j)
        k, stable = (hit[0], "yes") if hit else (ks[-1], "no")
        value = cls.value_at(j, k)
        t.add(j, k0, k, value.render(True), value.render(), stable)
    t.notes.append(f"certified Gysin-compatible on k = {ks[0]}..{ks[-1]}; no support above degree {a.m}")
    return [t]


def cmd_check(cat: Catalogue, name: str):
    """Certificate report; returns (tables, exit code)."""
    a = cat.action(name)
    ks = E.full_k_range(a)
    t = Table(f"certificates for {name}", ["invariant", "status", "detail"])
    failed = False
    cls = None
    try:
        cls = E.equivariant_l_class(a, ks)
        t.add("compatibility", "pass", f"xi_k^! L_(k+1) = L_k for k = {ks[0]}..{ks[-2]}")
        t.add("degree bound", "pass", f"no support above equivariant degree {a.m}")
    except CompatibilityFailure as exc:
        failed = True
        t.add("compatibility", "FAIL", f"first failure at k={exc.k}, equivariant degree {exc.degree}: {exc}")
    except CertificateError as exc:
        failed = True
        t.add("degree bound", "FAIL", str(exc))
    if cls is not None:
        fund = E.equivariant_fundamental_class(a, ks)
        ok = E.top_degree_law(cls, fund)
        failed |= not ok
        t.add("top-degree law", "pass" if ok else "FAIL", f"degree-{a.m} component = [X]_G")
        failed |= _route_row(t, "manifold route", a, ks, E.manifold_route)
        if a.mode in ("free", "trivial", "point"):
            failed |= _route_row(t, "definition route", a, ks, E.definition_route)
        if a.mode == "free":
            ok = E.free_degree_law(a, cls)
            failed |= not ok
            t.add("free-action degree law", "pass" if ok else "FAIL", f"support {cls.support()}")
    return [t], (2 if failed else 0)


def _route_row(t, label, a, ks, route) -> bool:
    try:
        bad = [k for k in ks if route(a, k) != E.stage_k_class(a, k)]
    except (MissingTangent, MissingVerticalBundle, UnsupportedCap) as exc:
        t.add(label, "skipped", str(exc))
        return False
    if bad:
        t.add(label, "FAIL", f"disagrees with the stage class at k = {bad}")
        return True
    t.add(label, "pass", f"agrees with the stage class for k = {ks[0]}..{ks[-1]}")
    return False


def cmd_catalogue_validate(cat: Catalogue) -> list:
    t = Table("catalogue", ["kind", "name", "provenance", "status"])
    for kind, name in cat.entries():
        t.add(kind[:-1], name, cat.provenance.get((kind, name), "user"), "ok")
    t.notes.append(f"{len(t.rows)} entries loaded; all load-time axiom checks passed")
    return [t]


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="equivl", description="Exact equivariant L-class computations.")
    p.add_argument("--format", choices=FORMATS, default="md")
    p.add_argument("--catalogue", action="append", default=[], metavar="PATH",
                   help="additional catalogue root (repeatable)")
    p.add_argument("--allow-shadow", action="store_true", help="let --catalogue entries replace shipped ones")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("lpoly", help="L-polynomials L_0..L_j")
    s.add_argument("--max-j", type=int, default=3)

    s = sub.add_parser("group", help="group checks")
    s.add_argument("what", choices=["orient"])
    s.add_argument("name")

    s = sub.add_parser("tower", help="tower bookkeeping")
    s.add_argument("what", choices=["dims", "orient"])
    s.add_argument("name")
    s.add_argument("--k", type=int)

    s = sub.add_parser("point-homology", help="equivariant homology of a point")
    s.add_argument("tower")
    s.add_argument("--j-min", type=int, default=-4)
    s.add_argument("--j-max", type=int, default=0)
    s.add_argument("--stage-table", action="store_true", help="also print H_i(BG_k) for all stages")

    s = sub.add_parser("equiv-lclass", help="equivariant L-class of a catalogued action")
    s.add_argument("action")
    s.add_argument("--j-min", type=int)
    s.add_argument("--j-max", type=int)

    s = sub.add_parser("check", help="certificate report for a catalogued action")
    s.add_argument("action")

    s = sub.add_parser("catalogue", help="catalogue maintenance")
    s.add_argument("what", choices=["validate"])
    return p


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    code = 0
    try:
        if args.command == "lpoly":
            tables = cmd_lpoly(args.max_j)
        else:
            cat = load_catalogue(args.catalogue, allow_shadow=args.allow_shadow)
            if args.command == "group":
                tables = cmd_group_orient(cat, args.name)
            elif args.command == "tower":
                tables = cmd_tower(cat, args.what, args.name, args.k)
            elif args.command == "point-homology":
                tables = cmd_point_homology(cat, args.tower, args.j_min, args.j_max, args.stage_table)
            elif args.command == "equiv-lclass":
                tables = cmd_equiv_lclass(cat, args.action, args.j_min, args.j_max)
            elif args.command == "check":
                tables, code = cmd_check(cat, args.action)
            else:
                tables = cmd_catalogue_validate(cat)
    except EquivLError as exc:
        print(f"error ({type(exc).__name__}): {exc}", file=err)
        return exc.exit_code
    out.write(render_all(tables, args.format))
    return code


def run():
    sys.exit(main())
