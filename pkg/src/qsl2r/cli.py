"""Command-line front end.

Subcommands: verify, spectrum, spherical, classify, module, scan,
finite-dim.  Exit codes: 0 success, 1 verification failure, 2 usage
error.  Default tolerance 1e-9, overridable via the QSL2R_TOL
environment variable.  All numeric output uses 17 significant digits.
"""

from __future__ import annotations

import dataclasses
import json
import os
import sys

import click
import numpy as np

from . import modules as mod
from . import presentations as pres
from . import reps
from . import spectral
from .classify import classify as _classify
from .classify import (ConsistencyError, DEFAULT_TOL, SCHEMA_VERSION,
                       entries_to_json, finite_dim_classify as _finite_dim,
                       parse_lam_token, reduce_center, reduce_center_mirror,
                       sign_scan, unitarity_test)
from .ncpoly import Presentation, confluence_check


def _tol(override=None) -> float:
    if override is not None:
        return override
    return float(os.environ.get("QSL2R_TOL", DEFAULT_TOL))


def _fmt(x) -> str:
    if isinstance(x, complex):
        return f"{x.real:.17g}{x.imag:+.17g}j"
    return f"{x:.17g}"


def _emit(text: str, output):
    if output:
        with open(output, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        click.echo(text)


_FORMAT = click.option("--format", "fmt", default="text",
                       type=click.Choice(["json", "csv", "text"]))
_OUTPUT = click.option("--output", default=None, help="Write to file.")
_TOL = click.option("--tol", type=float, default=None,
                    help="Tolerance (default QSL2R_TOL or 1e-9).")


@click.group()
def main():
    """Exact and numeric toolkit for the quantized SL(2,R)_t coideal."""


def _corrupted(p: Presentation) -> Presentation:
    """Test hook: damage one rewrite rule so confluence must fail."""
    rules = dict(p.rules)
    head = sorted(rules)[0]
    rules[head] = {w: c * 2 for w, c in rules[head].items()}
    return Presentation(name=p.name + " (corrupted)",
                        generators=p.generators, rules=rules, star=p.star,
                        weights=dict(p.weights))


@main.command()
@click.option("--presentation", "only",
              type=click.Choice(["uqsu2", "oqsu2", "podles", "qsl2r"]),
              default=None, help="Restrict to one presentation's confluence.")
@click.option("--corrupt", is_flag=True,
              help="Test hook: inject an inconsistency.")
@click.option("--max-degree", type=int, default=None,
              help="Run only the coideal-orthogonality check to this degree.")
@click.option("--skip-spectrum", is_flag=True,
              help="Skip the symbolic spectrum identities (n <= 8).")
def verify(only, corrupt, max_degree, skip_spectrum):
    """Run the exact verification suites; exit 0 iff everything passes."""
    failures = []

    def report(name, ok, detail=""):
        status = "PASS" if ok else "FAIL"
        click.echo(f"[{status}] {name}" + (f": {detail}" if detail else ""))
        if not ok:
            failures.append(name)

    factories = {"uqsu2": pres.uqsu2, "oqsu2": pres.oqsu2,
                 "podles": pres.podles, "qsl2r": pres.qsl2r_presentation}

    if max_degree is not None:
        rep = pres.verify_orthogonality(max_degree=max_degree)
        report(f"orthogonality (degree <= {max_degree})", rep.ok,
               rep.summary())
        sys.exit(1 if failures else 0)

    names = [only] if only else list(factories)
    for name in names:
        p = factories[name]()
        if corrupt:
            p = _corrupted(p)
        rep = confluence_check(p)
        report(f"confluence {p.name}", rep.ok,
               f"{len(rep.ambiguities)} overlaps")
    if corrupt:
        sys.exit(1 if failures else 0)

    if only is None:
        import random
        rng = random.Random(20260826)
        for p in pres.bundled_presentations():
            ok = _star_check(p, rng)
            report(f"star anti-automorphism {p.name} (100 random pairs)", ok)
        for name, rep in (
                ("Casimir centrality/self-adjointness",
                 spectral.verify_casimir()),
                ("shift-operator commutation identities",
                 spectral.verify_att_relations()),
                ("generator inversion from shift operators",
                 spectral.verify_xyzt_inversion())):
            report(name, rep.ok, rep.summary())
        orep = pres.verify_orthogonality(max_degree=3)
        report("orthogonality (entry + degree <= 3 coideal)", orep.ok,
               orep.summary())
        if not skip_spectrum:
            for n in range(9):
                ident = reps.spectrum_exact(n / 2)
                report(f"spectrum identity n={n}", ident.ok)
    sys.exit(1 if failures else 0)


def _star_check(p: Presentation, rng) -> bool:
    from .ncpoly import NCPoly
    gens = [NCPoly.gen(p, g) for g in p.generators]

    def rand_poly():
        out = NCPoly(p)
        for _ in range(rng.randint(1, 3)):
            m = gens[rng.randrange(len(gens))]
            for _ in range(rng.randint(0, 1)):
                m = m * gens[rng.randrange(len(gens))]
            out = out + m * pres._s(rng.randint(-3, 3))
        return out

    for _ in range(100):
        x, y = rand_poly(), rand_poly()
        if (x * y).star() != y.star() * x.star():
            return False
        if x.star().star() != x:
            return False
    return True


@main.command()
@click.option("--spin", required=True, type=float)
@click.option("--q", required=True, type=float)
@click.option("--a", required=True, type=float)
@_FORMAT
@_OUTPUT
@_TOL
def spectrum(spin, q, a, fmt, output, tol):
    """Eigenvalues of iB_t in the spin representation, with the analytic
    labels [a + n - 2p] and residuals."""
    tol = _tol(tol)
    try:
        payload = reps.spectrum_json(spin, q, a)
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    worst = max(e["residual"] for e in payload["eigenvalues"])
    if fmt == "json":
        _emit(json.dumps(payload, indent=2, sort_keys=True), output)
    elif fmt == "csv":
        lines = ["c,value,residual"]
        for e in payload["eigenvalues"]:
            lines.append(",".join(_fmt(e[k]) for k in ("c", "value",
                                                       "residual")))
        _emit("\n".join(lines), output)
    else:
        lines = [f"spin {spin}  q={_fmt(q)}  a={_fmt(a)}"]
        for e in payload["eigenvalues"]:
            lines.append(f"  [{_fmt(e['c'])}] = {_fmt(e['value'])}"
                         f"  (residual {_fmt(e['residual'])})")
        _emit("\n".join(lines), output)
    sys.exit(0 if worst <= tol else 1)


@main.command()
@click.option("--spin", required=True, type=float)
@click.option("--q", required=True, type=float)
@click.option("--a", required=True, type=float)
@_FORMAT
@_OUTPUT
@_TOL
def spherical(spin, q, a, fmt, output, tol):
    """The normalized iB_t-eigenvector at eigenvalue [a] (integer spin)."""
    tol = _tol(tol)
    try:
        v = reps.spherical_vector(spin, q, a)
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    if fmt == "json":
        payload = {"spin": v.j, "q": q, "a": a, "eigenvalue": v.eigenvalue,
                   "residual": v.residual,
                   "components": [[float(c.real), float(c.imag)]
                                  for c in v.components]}
        _emit(json.dumps(payload, indent=2, sort_keys=True), output)
    elif fmt == "csv":
        lines = ["index,re,im"]
        for i, c in enumerate(v.components):
            lines.append(f"{i},{_fmt(float(c.real))},{_fmt(float(c.imag))}")
        _emit("\n".join(lines), output)
    else:
        lines = [f"spin {v.j}  eigenvalue {_fmt(v.eigenvalue)}  "
                 f"residual {_fmt(v.residual)}"]
        lines += [f"  {_fmt(complex(c))}" for c in v.components]
        _emit("\n".join(lines), output)
    sys.exit(0 if v.residual <= tol else 1)


@main.command("classify")
@click.option("--q", required=True, type=float)
@click.option("--a", required=True, type=float)
@click.option("--n-max", type=int, default=16)
@_FORMAT
@_OUTPUT
@_TOL
def classify_cmd(q, a, n_max, fmt, output, tol):
    """Enumerate the irreducible *-representation families at (q, a)."""
    tol = _tol(tol)
    try:
        entries = _classify(q, a, n_max=n_max, tol=tol)
    except ConsistencyError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    if fmt == "json":
        _emit(entries_to_json(entries), output)
    elif fmt == "csv":
        lines = ["family,b,lam,lam_lo,lam_hi,n,sector,support"]
        for e in entries:
            lo, hi = e.lam_range if e.lam_range else ("", "")
            lines.append(",".join([
                e.family, _fmt(e.b),
                _fmt(e.lam) if e.lam is not None else "",
                _fmt(lo) if lo != "" else "", _fmt(hi) if hi != "" else "",
                str(e.n) if e.n is not None else "", str(e.sector),
                e.support]))
        _emit("\n".join(lines), output)
    else:
        lines = []
        for e in entries:
            lam = (_fmt(e.lam) if e.lam is not None
                   else f"({_fmt(e.lam_range[0])}, {_fmt(e.lam_range[1])})")
            n = f" n={e.n}" if e.n is not None else ""
            lines.append(f"{e.family:<3} sector={e.sector} b={_fmt(e.b)} "
                         f"lam={lam}{n} [{e.support}]")
        _emit("\n".join(lines), output)
    sys.exit(0)


@main.command("module")
@click.option("--q", required=True, type=float)
@click.option("--a", required=True, type=float)
@click.option("--lam", "--lambda", "lam", required=True,
              help="Number or 'qang:x' / 'neg-qang:x'.")
@click.option("--b", required=True, type=float)
@click.option("--w", type=int, default=12)
@click.option("--family", type=click.Choice(["M", "V+", "V-"]), default="M")
@click.option("--format", "fmt", default="csv",
              type=click.Choice(["csv", "json", "text"]))
@_OUTPUT
@_TOL
def module_cmd(q, a, lam, b, w, family, fmt, output, tol):
    """Emit a weight-module window (CSV by default)."""
    tol = _tol(tol)
    lam = parse_lam_token(lam, q)
    if family == "M":
        win = mod.canonical_module(q, a, lam, b, w)
    else:
        win = mod.admissible_family(q, a, lam, b, family[-1], w)
    rels = mod.check_window_relations(win)
    cas = mod.check_casimir(win)
    ok = max(rels.values()) <= max(tol, 1e-10) and cas <= max(tol, 1e-10)
    if fmt == "json":
        payload = {
            "schema_version": SCHEMA_VERSION,
            "q": q, "a": a, "lam": lam, "b": b, "W": w, "family": win.family,
            "relation_residuals": rels, "casimir_residual": cas,
            "rows": [dict(zip(
                ("c", "r_c"), (c, win.r.get(round(c, 9)))))
                for c in win.cs],
        }
        _emit(json.dumps(payload, indent=2, sort_keys=True), output)
    elif fmt == "text":
        lines = [f"{win.family} window  q={_fmt(q)} a={_fmt(a)} "
                 f"lam={_fmt(lam)} b={_fmt(b)} W={w}",
                 f"max relation residual {_fmt(max(rels.values()))}, "
                 f"Casimir residual {_fmt(cas)}"]
        _emit("\n".join(lines), output)
    else:
        _emit(mod.window_csv(win), output)
    sys.exit(0 if ok else 1)


@main.command()
@click.option("--q", required=True, type=float)
@click.option("--a", required=True, type=float)
@click.option("--b", required=True, type=float)
@click.option("--lambda-grid", "grid", required=True,
              help="lo:hi:count lambda grid.")
@_FORMAT
@_OUTPUT
@_TOL
def scan(q, a, b, grid, fmt, output, tol):
    """Scan unitarity over a lambda grid; report the verdict-change
    boundaries and check them against the closed-form values."""
    tol = _tol(tol)
    try:
        lo, hi, count = grid.split(":")
        lo, hi, count = float(lo), float(hi), int(count)
        if count < 2:
            raise ValueError
    except ValueError:
        click.echo("error: --lambda-grid must be lo:hi:count", err=True)
        sys.exit(2)
    lams = [lo + (hi - lo) * i / (count - 1) for i in range(count)]
    verdicts = [sign_scan(q, a, lam, b, tol=tol)[0] for lam in lams]
    boundaries = []
    for x0, x1, v0, v1 in zip(lams, lams[1:], verdicts, verdicts[1:]):
        if v0 != v1:
            boundaries.append(0.5 * (x0 + x1))
    closed = sorted(x for x in (-_closed_lower(q, a, b),
                                _closed_upper(q, a, b)) if lo <= x <= hi)
    half_step = 0.5 * (hi - lo) / (count - 1)
    matched = all(any(abs(bd - cb) <= half_step + tol for cb in closed)
                  for bd in boundaries)
    rows = [{"lam": bd, "closed_form": min(closed, key=lambda c:
             abs(c - bd)) if closed else None} for bd in sorted(boundaries)]
    if fmt == "json":
        _emit(json.dumps({"schema_version": SCHEMA_VERSION,
                          "boundaries": rows,
                          "closed_form_boundaries": closed,
                          "matched": matched}, indent=2, sort_keys=True),
              output)
    elif fmt == "csv":
        lines = ["lam,closed_form"]
        for r in rows:
            lines.append(f"{_fmt(r['lam'])},"
                         f"{_fmt(r['closed_form']) if r['closed_form'] is not None else ''}")
        _emit("\n".join(lines), output)
    else:
        lines = [f"boundary near lam={_fmt(r['lam'])} "
                 f"(closed form {_fmt(r['closed_form'])})" for r in rows]
        lines.append(f"closed-form boundaries in range: "
                     f"{', '.join(_fmt(c) for c in closed)}")
        _emit("\n".join(lines), output)
    sys.exit(0 if matched else 1)


def _closed_upper(q, a, b) -> float:
    from .scalars import fqang
    return fqang(q, a - reduce_center(b, a) - 1)


def _closed_lower(q, a, b) -> float:
    from .scalars import fqang
    return fqang(q, a + reduce_center_mirror(b, a) + 1)


@main.command("finite-dim")
@click.option("--q", required=True, type=float)
@click.option("--a", required=True, type=float)
@click.option("--n", "n", required=True, type=int)
@_FORMAT
@_OUTPUT
@_TOL
def finite_dim(q, a, n, fmt, output, tol):
    """The two dimension-N modules, with truncation and Casimir checks."""
    tol = _tol(tol)
    entries = _finite_dim(q, a, n, tol=tol)
    ok = True
    rows = []
    for e in entries:
        win = mod.finite_module(q, a, n, "+" if e.family == "VN+" else "-")
        cas = float(np.abs(mod.casimir_matrix(win)
                           - e.lam * np.eye(win.dim)).max())
        ok = ok and cas <= max(tol, 1e-10)
        rows.append({**dataclasses.asdict(e), "weights": list(win.cs),
                     "casimir_residual": cas})
    if fmt == "json":
        _emit(json.dumps({"schema_version": SCHEMA_VERSION,
                          "modules": rows}, indent=2, sort_keys=True), output)
    elif fmt == "csv":
        lines = ["family,b,lam,n,admissible,casimir_residual"]
        for r in rows:
            lines.append(",".join([r["family"], _fmt(r["b"]), _fmt(r["lam"]),
                                   str(r["n"]), str(r["admissible"]).lower(),
                                   _fmt(r["casimir_residual"])]))
        _emit("\n".join(lines), output)
    else:
        lines = []
        for r in rows:
            lines.append(f"{r['family']} b={_fmt(r['b'])} lam={_fmt(r['lam'])} "
                         f"admissible={r['admissible']} "
                         f"casimir_residual={_fmt(r['casimir_residual'])}")
        _emit("\n".join(lines), output)
    sys.exit(0 if ok else 1)


if __name__ == "__main__":
    main()
