"""Command line interface.

Exit codes: 0 confirmed or isomorphic, 1 discrepancy or not isomorphic,
2 usage error, 3 inconclusive.  RLK_BUDGET overrides the search node budget.
"""
from __future__ import annotations

import json
import re
import sys

import click

from . import __version__
from .field import FieldSpec, count_conic_solutions, dump_elem, is_prime, parse_elem, solve_conic

EXIT_OK, EXIT_DISCREPANCY, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3


def field_of(q: int) -> FieldSpec:
    for p in range(2, q + 1):
        if q % p == 0:
            n, r = 0, q
            while r % p == 0:
                r //= p
                n += 1
            if r != 1 or not is_prime(p):
                break
            return FieldSpec(p, n)
    raise click.BadParameter(f"{q} is not a prime power")


class FieldType(click.ParamType):
    name = "q"

    def convert(self, value, param, ctx):
        if isinstance(value, FieldSpec):
            return value
        try:
            q = int(value)
        except ValueError:
            self.fail(f"{value!r} is not an integer", param, ctx)
        try:
            F = field_of(q)
        except (click.BadParameter, ValueError) as e:
            self.fail(str(e), param, ctx)
        if F.p <= 3:
            self.fail("characteristic must exceed 3", param, ctx)
        return F


FIELD = FieldType()
_INST = re.compile(r"^\s*(\w+)\^(\d+)\s*(?:\((.*)\))?\s*$")


def _elem(F, s: str) -> int:
    s = s.strip()
    return parse_elem(F, json.loads(s) if s.startswith("[") else int(s))


def parse_instance(F: FieldSpec, text: str):
    """`L5_9^9(xi=1,alpha=2)` or `K9^11(a=1,xi=2)` -> restricted algebra."""
    from .catalog import K_LISTS, THEOREMS, k_entry

    m = _INST.match(text)
    if not m:
        raise click.BadParameter(f"cannot parse instance {text!r}; expected e.g. L5_2^3 or L5_9^9(xi=1,alpha=2)")
    fam, idx, args = m.group(1), int(m.group(2)), m.group(3)
    if fam in THEOREMS:
        found = [e for e in THEOREMS[fam] if e.label == f"{fam}^{idx}"]
        if not found:
            raise click.BadParameter(f"{fam} has no entry {idx}")
        e = found[0]
    elif fam in K_LISTS and idx in K_LISTS[fam][1]:
        e = k_entry(fam, idx)
    else:
        raise click.BadParameter(f"unknown family or entry {fam}^{idx}")
    vals = {}
    for part in filter(None, (args or "").split(",")):
        k, _, v = part.partition("=")
        vals[k.strip()] = _elem(F, v)
    missing = set(e.params) - set(vals)
    if missing:
        raise click.BadParameter(f"{e.label} needs values for {', '.join(sorted(missing))}")
    return e.algebra(F, vals)


def _emit(obj, as_json: bool, text: str):
    click.echo(json.dumps(obj, indent=1) if as_json else text)


@click.group()
@click.version_option(__version__, prog_name="rlk")
def main():
    """Checks for the classification of five-dimensional restricted Lie algebras."""


@main.command()
@click.argument("family")
@click.option("--field", "F", type=FIELD, default="5", show_default=True)
@click.option("--workers", type=int, default=1, show_default=True)
@click.option("--json", "as_json", is_flag=True, help="Print the full discrepancy report as JSON.")
def verify(family, F, workers, as_json):
    """Verify every printed claim about FAMILY (validity, non-isomorphism, witnesses)."""
    from .catalog import THEOREMS
    from .classify import verify_family

    if family not in THEOREMS:
        raise click.BadParameter(f"unknown family {family}; choose from {', '.join(THEOREMS)}")
    rep = verify_family(family, F, workers)
    c = rep.counts()
    lines = [f"{family} over {F}: {c['confirmed']} confirmed, {c['refuted']} refuted, "
             f"{c['inconclusive']} inconclusive"]
    for cl in rep.claims:
        if cl.verdict != "confirmed":
            lines.append(f"  {cl.verdict}: {cl.cid} (printed {cl.printed}, computed {cl.computed})")
    _emit(rep.to_json(), as_json, "\n".join(lines))
    sys.exit(rep.exit_code)


@main.command("enumerate")
@click.argument("family")
@click.option("--field", "F", type=FIELD, default="5", show_default=True)
@click.option("--workers", type=int, default=1, show_default=True)
@click.option("--full", is_flag=True, help="Enumerate every p-map instead of sampling.")
@click.option("--sample", type=int, default=2000, show_default=True)
@click.option("--json", "as_json", is_flag=True)
def enumerate_cmd(family, F, workers, full, sample, as_json):
    """Count isomorphism classes of p-maps on FAMILY by brute force."""
    from .classify import oracle_enumerate

    res = oracle_enumerate(family, F, workers, full=full, sample=sample)
    lines = [f"{family} over {F} [{res.mode}]: {res.classes} classes, theorem lists {res.theorem_count}"]
    for c in res.claims:
        lines.append(f"  {c.verdict}: {c.cid}")
    _emit(res.to_json(), as_json, "\n".join(lines))
    if any(c.verdict == "inconclusive" for c in res.claims):
        sys.exit(EXIT_INCONCLUSIVE)
    sys.exit(EXIT_OK if res.ok else EXIT_DISCREPANCY)


@main.command()
@click.argument("base")
@click.option("--pmap", default="trivial", show_default=True, help="Images such as 'x1->x4, x2->xi*x4'.")
@click.option("--param", "params", multiple=True, help="Parameter value, e.g. xi=2.")
@click.option("--field", "F", type=FIELD, default="5", show_default=True)
@click.option("--json", "as_json", is_flag=True)
def cohomology(base, pmap, params, F, as_json):
    """dim Z2, B2, H2 of a base restricted algebra and an H2 basis."""
    from .catalog import base_restricted
    from .cohomology import cohomology as coh

    vals = {k: _elem(F, v) for k, _, v in (p.partition("=") for p in params)}
    try:
        R = base_restricted(base, pmap, F, vals)
    except KeyError as e:
        raise click.BadParameter(f"unknown base or parameter {e}")
    C = coh(R)
    z, b, h = C.dims
    text = f"{R.name} over {F}: dim Z2 = {z}, dim B2 = {b}, dim H2 = {h}\n" + "\n".join(
        f"  {lab}" for lab in C.H.labels())
    _emit({"algebra": R.name, "field": str(F), "dims": [z, b, h], "h2_basis": C.H.labels()}, as_json, text)


@main.command()
@click.argument("lemma")
@click.option("--field", "F", type=FIELD, default="5", show_default=True)
@click.option("--mode", type=click.Choice(["exact", "projective"]), default="exact", show_default=True)
@click.option("--lie-only", is_flag=True, help="Let all Lie automorphisms act, ignoring the p-map.")
@click.option("--json", "as_json", is_flag=True)
def orbits(lemma, F, mode, lie_only, as_json):
    """Compare the orbit condition of LEMMA (e.g. K9-4) with brute force."""
    from .autorbit import check_orbit_lemma
    from .catalog import ORBIT_LEMMAS

    found = [lm for lm in ORBIT_LEMMAS if lm.lid in (lemma, f"lemma-{lemma}")]
    if not found:
        raise click.BadParameter(f"unknown lemma {lemma}; choose from "
                                 + ", ".join(lm.lid.removeprefix("lemma-") for lm in ORBIT_LEMMAS))
    res = check_orbit_lemma(found[0], F, mode=mode, restricted=not lie_only)
    lines = []
    for r in res:
        tag = "agrees" if r.ok else f"{len(r.mismatches)} of {r.pairs} pairs disagree"
        lines.append(f"{r.lemma} over {r.field} {r.params or ''}: {r.orbits} orbits, {tag} [{r.method}]")
        for mm in r.mismatches[:5]:
            lines.append(f"  a={mm['a']} b={mm['b']}: computed {mm['computed']}, printed {mm['printed']}")
    _emit([r.to_json() for r in res], as_json, "\n".join(lines))
    sys.exit(EXIT_OK if all(r.ok for r in res) else EXIT_DISCREPANCY)


@main.command()
@click.argument("first")
@click.argument("second")
@click.option("--field", "F", type=FIELD, default="5", show_default=True)
@click.option("--budget", type=int, default=None, help="Node budget (default RLK_BUDGET or 1e9).")
@click.option("--json", "as_json", is_flag=True)
def iso(first, second, F, budget, as_json):
    """Decide whether two instances are isomorphic, e.g. 'L5_1^5' 'L5_1^6'."""
    from .isotest import decide_iso

    R1, R2 = parse_instance(F, first), parse_instance(F, second)
    res = decide_iso(R1, R2, budget=budget)
    if res.verdict == "yes":
        text = f"isomorphic; witness (columns are images):\n{res.witness}"
    elif res.verdict == "no":
        text = f"not isomorphic; certificate: {json.dumps(res.certificate, default=str)}"
    else:
        text = f"{res.verdict}: {json.dumps(res.certificate, default=str)}"
    out = res.to_json()
    out["certificate"] = json.loads(json.dumps(out["certificate"], default=str))
    _emit(out, as_json, text)
    sys.exit({"yes": EXIT_OK, "no": EXIT_DISCREPANCY}.get(res.verdict, EXIT_INCONCLUSIVE))


@main.command()
@click.argument("a")
@click.argument("b")
@click.option("--field", "F", type=FIELD, default="5", show_default=True)
def conic(a, b, F):
    """Count and find solutions of x^2 - A y^2 = B."""
    a, b = _elem(F, a), _elem(F, b)
    if b == 0:
        raise click.BadParameter("B must be nonzero")
    n = count_conic_solutions(F, a, b)
    click.echo(f"x^2 - {dump_elem(F, a)} y^2 = {dump_elem(F, b)} over {F}: {n} solutions")
    sol = solve_conic(F, a, b)
    if sol is not None:
        click.echo(f"  one solution: x = {dump_elem(F, sol[0])}, y = {dump_elem(F, sol[1])}")
    sys.exit(EXIT_OK if sol is not None or n == 0 else EXIT_INCONCLUSIVE)


@main.command()
@click.argument("base")
@click.option("--pmap", default="trivial", show_default=True)
@click.option("--param", "params", multiple=True)
@click.option("--delta", "deltas", multiple=True, help="Coefficient of Delta_ij as ij=c, e.g. 13=1.")
@click.option("--f", "fs", multiple=True, help="Coefficient of f_i as i=c, e.g. 2=1.")
@click.option("--field", "F", type=FIELD, default="5", show_default=True)
@click.option("--json", "as_json", is_flag=True)
def extend(base, pmap, params, deltas, fs, F, as_json):
    """Build the one-dimensional central extension of BASE by a 2-cocycle."""
    from .catalog import base_restricted
    from .cohomology import Cochain2
    from .cohomology import cohomology as coh
    from .extension import build_extension

    vals = {k: _elem(F, v) for k, _, v in (p.partition("=") for p in params)}
    R = base_restricted(base, pmap, F, vals)
    try:
        dd = {(int(k[0]), int(k[1])): _elem(F, v) for k, _, v in (d.partition("=") for d in deltas)}
        ff = {int(k): _elem(F, v) for k, _, v in (x.partition("=") for x in fs)}
    except (ValueError, IndexError):
        raise click.BadParameter("use --delta ij=c and --f i=c")
    theta = Cochain2.from_terms(F, R.dim, dd, ff)
    C = coh(R)
    if not C.in_z2(theta):
        click.echo(f"{theta.label()} is not a 2-cocycle of {R.name}", err=True)
        sys.exit(EXIT_DISCREPANCY)
    K = build_extension(R, theta)
    text = [f"extension of {R.name} by {theta.label()} over {F}; H2 coordinates "
            f"{C.h2_coords(theta).tolist()}", "brackets:"]
    n = K.dim
    for i in range(n):
        for j in range(i + 1, n):
            v = K.alg.sc[i, j]
            if v.any():
                terms = " + ".join(f"{dump_elem(F, c)}*x{k + 1}" for k, c in enumerate(v) if c)
                text.append(f"  [x{i + 1}, x{j + 1}] = {terms}")
    text.append("p-map:")
    for i in range(n):
        col = K.P[:, i]
        if col.any():
            terms = " + ".join(f"{dump_elem(F, c)}*x{k + 1}" for k, c in enumerate(col) if c)
            text.append(f"  x{i + 1}^[p] = {terms}")
    _emit(K.to_json(), as_json, "\n".join(text))


@main.command()
@click.option("--out", "dest", default="report", show_default=True, type=click.Path(file_okay=False))
@click.option("--workers", type=int, default=8, show_default=True)
@click.option("--criteria", default="", help="Comma separated subset, e.g. 1,4,7.")
@click.option("--no-families", is_flag=True, help="Skip per-family verification and automorphism tables.")
@click.option("--determinism", is_flag=True, help="Re-run with one worker and compare content hashes.")
def report(dest, workers, criteria, no_families, determinism):
    """Run the acceptance criteria and write md/JSON/CSV and figures."""
    from . import report as rep
    from .suite import summary_line

    try:
        only = [int(c) for c in criteria.split(",") if c.strip()] or None
    except ValueError:
        raise click.BadParameter("criteria must be integers")
    out = rep.build(workers, only, not no_families, log=lambda r: click.echo(summary_line(r)),
                    determinism=determinism)
    path = rep.write(out, dest)
    click.echo(f"report written to {path}/report.md")
    sys.exit(EXIT_OK if all(r["passed"] for r in out["results"]) else EXIT_DISCREPANCY)


if __name__ == "__main__":
    main()
