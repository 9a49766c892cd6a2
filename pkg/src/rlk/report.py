"""Render the acceptance results as markdown, JSON, CSV and figures.

Everything that depends on the machine (runtimes, worker counts) goes to
timings.json; report.json holds only content, so two runs with different
worker counts produce byte-identical report.json files.
"""
from __future__ import annotations

import csv
import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .autorbit import count_aut, grid_size, load_families, verify_aut_family  # noqa: E402
from .classify import _plain, verify_family  # noqa: E402
from .catalog import THEOREMS  # noqa: E402
from .field import FieldSpec  # noqa: E402
from .liealg import catalog  # noqa: E402
from . import suite  # noqa: E402

AUT_COUNT_LIMIT = 2 * 10 ** 6


def aut_family_table(F: FieldSpec) -> list:
    rows = []
    for fam in load_families().values():
        L = catalog(fam.algebra, F)
        rep = verify_aut_family(L, fam, F)
        g = grid_size(fam, F)
        n = count_aut(fam, F) if g <= AUT_COUNT_LIMIT else None
        rows.append({**rep.to_json(), "parameters": fam.free_count, "grid": g, "count": n})
    return rows


def family_reports(F: FieldSpec, workers: int) -> dict:
    return {fam: verify_family(fam, F, workers).to_json() for fam in THEOREMS}


def discrepancy_rows(families: dict, results: list) -> list:
    """One row per refuted or inconclusive claim, plus failed criteria."""
    out = []
    for fam, rep in families.items():
        for c in rep["claims"]:
            if c["verdict"] != "confirmed":
                out.append({"source": fam, "id": c["id"], "citation": c["citation"], "printed": c["printed"],
                            "computed": c["computed"], "verdict": c["verdict"]})
    for r in results:
        if r["criterion"] == 9:
            for k, v in sorted(r["content"].items()):
                for c in (v.get("claims", []) if "claims" in v else [v]):
                    if c.get("verdict") == "refuted":
                        out.append({"source": f"oracle {k}", "id": c["id"], "citation": c["citation"],
                                    "printed": c["printed"], "computed": c["computed"], "verdict": "refuted"})
        if not r["content_ok"]:
            out.append({"source": f"criterion {r['criterion']}", "id": r["title"], "citation": "",
                        "printed": "pass", "computed": "fail", "verdict": "refuted"})
    return out


def build(workers: int = 8, criteria=None, families: bool = True, log=None, determinism: bool = False) -> dict:
    results = suite.run_suite(workers, only=criteria, log=log)
    if determinism:
        other = 1 if workers != 1 else 8
        results.append(suite.criterion11(results, (workers, other), log=log))
    F = FieldSpec(5)
    fams = family_reports(F, workers) if families else {}
    body = {
        "field": str(F),
        "criteria": [{k: r[k] for k in ("criterion", "title", "content_ok", "content")} for r in results],
        "content_hash": suite.content_hash([r for r in results if r["criterion"] != 11]),
        "aut_families": aut_family_table(F) if families else [],
        "families": fams,
    }
    body["discrepancies"] = discrepancy_rows(fams, results)
    timings = {"workers": workers,
               "criteria": [{k: r[k] for k in ("criterion", "runtime_s", "limit_s", "passed")} for r in results]}
    return {"body": _plain(body), "timings": timings, "results": results}


# ---------------------------------------------------------------------------
def _fig_runtimes(results, path):
    rs = [r for r in results if r.get("limit_s")]
    fig, ax = plt.subplots(figsize=(7, 3.5))
    xs = range(len(rs))
    ax.bar(xs, [r["runtime_s"] for r in rs], color=["tab:green" if r["passed"] else "tab:red" for r in rs])
    ax.scatter(xs, [r["limit_s"] for r in rs], marker="_", s=400, color="k", label="limit")
    ax.set_xticks(list(xs), [str(r["criterion"]) for r in rs])
    ax.set_yscale("log")
    ax.set_xlabel("criterion")
    ax.set_ylabel("seconds")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def _fig_h2(results, path):
    c1 = [r for r in results if r["criterion"] == 1]
    if not c1:
        return False
    rows = c1[0]["content"]["rows"]
    fig, ax = plt.subplots(figsize=(8, 3.5))
    xs = range(len(rows))
    ax.bar([x - 0.2 for x in xs], [r["printed"][2] for r in rows], 0.4, label="printed dim H2")
    ax.bar([x + 0.2 for x in xs], [r["computed"][2] for r in rows], 0.4, label="computed dim H2")
    ax.set_xticks(list(xs), [r["site"] for r in rows], rotation=90, fontsize=6)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return True


def _fig_orbits(results, path):
    c6 = [r for r in results if r["criterion"] == 6]
    if not c6:
        return False
    rows = c6[0]["content"]["checks"]
    labels = [f"{r['lemma'].removeprefix('lemma-')} {r['field']}" + (f" {r['params']}" if r["params"] else "")
              for r in rows]
    fig, ax = plt.subplots(figsize=(9, 3.8))
    xs = range(len(rows))
    ax.bar([x - 0.2 for x in xs], [r["mismatch_count"] for r in rows], 0.4, label="restricted automorphisms")
    ax.bar([x + 0.2 for x in xs], [r.get("mismatches_ignoring_pmap", 0) or 0 for r in rows], 0.4,
           label="Lie automorphisms only")
    ax.set_xticks(list(xs), labels, rotation=90, fontsize=6)
    ax.set_ylabel("pairs (a, b) disagreeing")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return True


def _fig_claims(families, path):
    if not families:
        return False
    names = sorted(families)
    fig, ax = plt.subplots(figsize=(7, 3.5))
    bottom = [0] * len(names)
    for verdict, colour in (("confirmed", "tab:green"), ("refuted", "tab:red"), ("inconclusive", "tab:gray")):
        vals = [families[n]["counts"][verdict] for n in names]
        ax.bar(names, vals, bottom=bottom, color=colour, label=verdict)
        bottom = [b + v for b, v in zip(bottom, vals)]
    ax.set_yscale("symlog")
    ax.set_ylabel("claims")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return True


# ---------------------------------------------------------------------------
def _md(out, figs) -> str:
    body, results = out["body"], out["results"]
    lines = ["# Acceptance report", "", f"Field for family checks: {body['field']}.",
             f"Content hash: `{body['content_hash']}`", "", "## Criteria", "",
             "| # | criterion | content | runtime (s) | limit (s) | result |", "|---|---|---|---|---|---|"]
    for r in results:
        lim = r["limit_s"] if r["limit_s"] else "-"
        lines.append(f"| {r['criterion']} | {r['title']} | {'ok' if r['content_ok'] else 'FAIL'} | "
                     f"{r['runtime_s']:.1f} | {lim} | {'PASS' if r['passed'] else 'FAIL'} |")
    if body["aut_families"]:
        lines += ["", "## Automorphism families", "",
                  "| family | params | symbolic | numeric | complete | points checked | count |",
                  "|---|---|---|---|---|---|---|"]
        for a in body["aut_families"]:
            lines.append(f"| {a['family']} | {a['parameters']} | {a['sound_symbolic']} | {a['sound_numeric']} | "
                         f"{a['complete']} | {a['checked']} | {a['count'] if a['count'] is not None else '-'} |")
    if body["families"]:
        lines += ["", "## Family verification", "", "| family | confirmed | refuted | inconclusive |",
                  "|---|---|---|---|"]
        for n, f in sorted(body["families"].items()):
            c = f["counts"]
            lines.append(f"| {n} | {c['confirmed']} | {c['refuted']} | {c['inconclusive']} |")
    lines += ["", "## Discrepancies", ""]
    if body["discrepancies"]:
        lines += ["| source | claim | printed | computed |", "|---|---|---|---|"]
        for d in body["discrepancies"]:
            lines.append(f"| {d['source']} | {d['id']} | {d['printed']} | {d['computed']} |")
    else:
        lines.append("None.")
    if figs:
        lines += ["", "## Figures", ""] + [f"![{f}](figures/{f})" for f in figs]
    return "\n".join(lines) + "\n"


def write(out: dict, dest) -> Path:
    dest = Path(dest)
    (dest / "figures").mkdir(parents=True, exist_ok=True)
    (dest / "report.json").write_text(json.dumps(out["body"], indent=1, sort_keys=True))
    (dest / "timings.json").write_text(json.dumps(out["timings"], indent=1))
    with open(dest / "criteria.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["criterion", "title", "content_ok", "runtime_s", "limit_s", "passed"])
        for r in out["results"]:
            w.writerow([r["criterion"], r["title"], r["content_ok"], f"{r['runtime_s']:.3f}", r["limit_s"],
                        r["passed"]])
    with open(dest / "discrepancies.csv", "w", newline="") as fh:
        w = csv.DictWriter(fh, ["source", "id", "citation", "printed", "computed", "verdict"])
        w.writeheader()
        for d in out["body"]["discrepancies"]:
            w.writerow({k: json.dumps(v) if not isinstance(v, str) else v for k, v in d.items()})
    figs = []
    _fig_runtimes(out["results"], dest / "figures" / "runtimes.png")
    figs.append("runtimes.png")
    if _fig_h2(out["results"], dest / "figures" / "h2.png"):
        figs.append("h2.png")
    if _fig_orbits(out["results"], dest / "figures" / "orbit_lemmas.png"):
        figs.append("orbit_lemmas.png")
    if _fig_claims(out["body"]["families"], dest / "figures" / "claims.png"):
        figs.append("claims.png")
    (dest / "report.md").write_text(_md(out, figs))
    return dest
