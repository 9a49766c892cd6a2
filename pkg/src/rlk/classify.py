"""Driver: per-family verification, oracle enumeration and discrepancy records.

Everything that fans out over processes goes through `parallel_map`, which
returns results in task order, so reports do not depend on the worker count.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .autorbit import _det_batch, enumerate_aut_batches, family_for, grid_size
from .catalog import (FAMILY_CRITERIA, L51_PRINTED_DIMS, L51_ROW6_MATRIX, THEOREMS, WITNESSES, Entry,
                      condition_holds, domain_values, k_entry, K_LISTS)
from .field import FieldSpec
from .isotest import decide_iso, default_budget, rank_sequence, verify_iso_witness
from .liealg import catalog
from .restricted import (RestrictedAlgebra, fingerprint, fingerprint_key, is_p_nilpotent,
                         pmap_power_images, verify_restricted)
from .witness import check_witness

FAMILIES = list(THEOREMS)


def parallel_map(fn, tasks, workers: int = 1):
    tasks = list(tasks)
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, tasks, chunksize=1))


# ---------------------------------------------------------------------------
@dataclass
class Claim:
    cid: str
    citation: str
    printed: object
    computed: object
    verdict: str  # confirmed | refuted | inconclusive
    certificate: dict = field(default_factory=dict)

    def to_json(self):
        return {"id": self.cid, "citation": self.citation, "printed": _plain(self.printed),
                "computed": _plain(self.computed), "verdict": self.verdict,
                "certificate": _plain(self.certificate)}


def _plain(x):
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x


@dataclass
class DiscrepancyReport:
    family: str
    field: str
    claims: list = field(default_factory=list)

    def counts(self) -> dict:
        out = {"confirmed": 0, "refuted": 0, "inconclusive": 0}
        for c in self.claims:
            out[c.verdict] += 1
        return out

    @property
    def exit_code(self) -> int:
        c = self.counts()
        if c["refuted"]:
            return 1
        if c["inconclusive"]:
            return 3
        return 0

    def to_json(self):
        return {"family": self.family, "field": self.field, "counts": self.counts(),
                "claims": [c.to_json() for c in self.claims]}


def iso_claim(cid, citation, R1, R2, printed_iso: bool, budget=None) -> Claim:
    res = decide_iso(R1, R2, budget=budget)
    if res.verdict in ("inconclusive", "unsupported"):
        return Claim(cid, citation, "isomorphic" if printed_iso else "not isomorphic", res.verdict,
                     "inconclusive", res.certificate)
    got = res.verdict == "yes"
    cert = {"witness": res.witness.tolist()} if got else dict(res.certificate)
    cert["nodes"] = res.nodes
    return Claim(cid, citation, "isomorphic" if printed_iso else "not isomorphic",
                 "isomorphic" if got else "not isomorphic",
                 "confirmed" if got == printed_iso else "refuted", cert)


# ---------------------------------------------------------------------------
def expand_family(family: str, F: FieldSpec) -> list:
    """(entry, values, algebra) for every parameter instance, theorem order."""
    out = []
    for e in THEOREMS[family]:
        for R in e.expand(F):
            out.append((e, dict(R.params or {}), R))
    return out


def validity_claims(family: str, F: FieldSpec) -> list:
    out = []
    for e in THEOREMS[family]:
        bad = []
        insts = e.expand(F)
        for R in insts:
            v = verify_restricted(R)
            nil, _ = is_p_nilpotent(R)
            if not v.ok or not nil:
                bad.append({"instance": R.name, "axioms": v.to_json(), "p_nilpotent": nil})
        out.append(Claim(f"valid {e.label} over {F}", f"{family} theorem", "valid p-nilpotent",
                         "valid p-nilpotent" if not bad else "invalid",
                         "confirmed" if not bad else "refuted",
                         {"instances": len(insts), "failures": bad}))
    return out


def _pair_task(args):
    family, p, i, j, budget = args
    F = FieldSpec(p)
    inst = expand_family(family, F)
    (_, _, R1), (_, _, R2) = inst[i], inst[j]
    c = iso_claim(f"{R1.name} vs {R2.name}", f"{family} theorem", R1, R2, False, budget)
    return c


def noniso_claims(family: str, F: FieldSpec, workers: int = 1, budget=None) -> list:
    """Every pair of distinct theorem instances is printed as non-isomorphic."""
    n = len(expand_family(family, F))
    if family == "L5_1":
        return _abelian_pairs(F)
    tasks = [(family, F.p, i, j, budget) for i in range(n) for j in range(i + 1, n)]
    return parallel_map(_pair_task, tasks, workers)


def _abelian_pairs(F) -> list:
    inst = expand_family("L5_1", F)
    out = []
    for (_, _, R1), (_, _, R2) in itertools.combinations(inst, 2):
        r1, r2 = rank_sequence(R1), rank_sequence(R2)
        if r1 != r2:
            out.append(Claim(f"{R1.name} vs {R2.name}", "L5_1 table", "not isomorphic", "not isomorphic",
                             "confirmed", {"rank_sequences": [r1, r2]}))
        else:
            res = decide_iso(R1, R2)
            cert = {"rank_sequences": [r1, r2]}
            if res.verdict == "yes":
                cert["witness"] = res.witness.tolist()
            out.append(Claim(f"{R1.name} vs {R2.name}", "L5_1 table", "not isomorphic", "isomorphic",
                             "refuted", cert))
    return out


def l51_table_claims(F: FieldSpec) -> list:
    """Printed (dim L^[p], dim L^[p]^2, dim L^[p]^3) per row, and the basis
    change offered between rows 6 and 5."""
    out = []
    rows = THEOREMS["L5_1"]
    for idx, e in enumerate(rows, start=1):
        R = e.algebra(F)
        dims = tuple(la.rank(F, pmap_power_images(R, k)) for k in (1, 2, 3))
        want = L51_PRINTED_DIMS[idx]
        out.append(Claim(f"L5_1^{idx} image dims", "L5_1 table", list(want), list(dims),
                         "confirmed" if dims == want else "refuted",
                         {"p_map": e.pmap, "rank_sequence": rank_sequence(R)}))
    R5, R6 = rows[4].algebra(F), rows[5].algebra(F)
    T = np.array(L51_ROW6_MATRIX, dtype=np.int64) % F.p
    works = []
    for name, M in (("columns", T), ("rows", T.T)):
        for d, (A, B) in (("6->5", (R6, R5)), ("5->6", (R5, R6))):
            if verify_iso_witness(A, B, M):
                works.append(f"{name} {d}")
    res = decide_iso(R5, R6)
    cert = {"printed_matrix_works": works, "rank_sequences": [rank_sequence(R5), rank_sequence(R6)]}
    if res.verdict == "yes":
        cert["witness"] = res.witness.tolist()
    out.append(Claim("L5_1^5 vs L5_1^6 basis change", "L5_1 table", "distinct rows",
                     "isomorphic" if res.verdict == "yes" else res.verdict,
                     "refuted" if res.verdict == "yes" else
                     ("confirmed" if res.verdict == "no" else "inconclusive"), cert))
    return out


def witness_claims(family: str, F: FieldSpec) -> list:
    out = []
    for w in WITNESSES:
        if not any(K_LISTS[k][0] == family for k, *_ in w.claims):
            continue
        for rec in check_witness(F, w):
            out.append(Claim(f"{rec['witness']}: {rec['claim']}", rec["source"], "isomorphic",
                             "witness verified" if rec["holds"] else "witness fails",
                             "confirmed" if rec["holds"] else "refuted",
                             {"instances": rec["instances"], "orientations": rec["orientations"],
                              "failures": rec["failures"]}))
    return out


# ---------------------------------------------------------------------------
def iso_classes(algebras: list, budget=None) -> tuple:
    """Class index per algebra (fingerprint buckets refined by decide_iso)
    and the number of undecided comparisons."""
    keys = [fingerprint_key(fingerprint(R)) for R in algebras]
    cls = [-1] * len(algebras)
    reps = {}
    undecided = 0
    for i, R in enumerate(algebras):
        for r in reps.get(keys[i], []):
            res = decide_iso(algebras[r], R, budget=budget, use_fingerprint=False)
            if res.verdict == "yes":
                cls[i] = cls[r]
                break
            if res.verdict != "no":
                undecided += 1
        else:
            reps.setdefault(keys[i], []).append(i)
            cls[i] = i
    return cls, undecided


def family_criterion_check(crit, F: FieldSpec, budget=None) -> Claim:
    """Instances of a one-parameter entry over F*: iso exactly when the
    printed condition holds for the ratio of the parameters."""
    cid, (kname, idx), param, cond = crit
    e = k_entry(kname, idx)
    vals = domain_values(F, "Fx")
    others = [k for k in e.params if k != param]
    fixed = {k: 1 for k in others}
    algs = [e.algebra(F, {param: v, **fixed}) for v in vals]
    cls, undecided = iso_classes(algs, budget)
    bad = []
    for (i, a), (j, b) in itertools.product(enumerate(vals), repeat=2):
        got = cls[i] == cls[j]
        if got != condition_holds(F, cond, a, b):
            bad.append([a, b, got])
    verdict = "inconclusive" if undecided else ("confirmed" if not bad else "refuted")
    return Claim(f"{cid} over {F}", cid, f"iso iff ratio {cond}", f"{len(set(cls))} classes on F*",
                 verdict, {"mismatches": bad[:20], "mismatch_count": len(bad), "undecided": undecided,
                           "others_fixed": fixed})


def k911_check(F: FieldSpec, budget=None) -> Claim:
    """K9^11(xi, a): isomorphic exactly when xi1/a1 * xi2/a2 is a square."""
    e = k_entry("K9", 11)
    combos = [(x, a) for x in domain_values(F, "Fx") for a in domain_values(F, "Fx")]
    algs = [e.algebra(F, {"xi": x, "a": a}) for x, a in combos]
    cls, undecided = iso_classes(algs, budget)
    bad = []
    for (i, (x1, a1)), (j, (x2, a2)) in itertools.product(enumerate(combos), repeat=2):
        r = F.mul(F.div(x1, a1), F.div(x2, a2))
        want = F.is_kth_power(int(r), 2)
        if (cls[i] == cls[j]) != want:
            bad.append([x1, a1, x2, a2])
    verdict = "inconclusive" if undecided else ("confirmed" if not bad else "refuted")
    return Claim(f"K9^11 criterion over {F}", "K9^11 corollary", "iso iff xi1/a1*xi2/a2 square",
                 f"{len(set(cls))} classes", verdict,
                 {"quadruples": len(combos) ** 2, "mismatch_count": len(bad), "mismatches": bad[:20],
                  "undecided": undecided})


def _crit_task(args):
    k, p, budget = args
    return family_criterion_check(FAMILY_CRITERIA[k], FieldSpec(p), budget)


def criterion_claims(family: str, F: FieldSpec, workers=1, budget=None) -> list:
    ks = [k for k, c in enumerate(FAMILY_CRITERIA) if K_LISTS[c[1][0]][0] == family]
    return parallel_map(_crit_task, [(k, F.p, budget) for k in ks], workers)


def verify_family(family: str, F: FieldSpec, workers: int = 1, budget=None) -> DiscrepancyReport:
    if family not in THEOREMS:
        raise KeyError(family)
    rep = DiscrepancyReport(family, str(F))
    rep.claims += validity_claims(family, F)
    rep.claims += noniso_claims(family, F, workers, budget)
    if family == "L5_1":
        rep.claims += l51_table_claims(F)
    rep.claims += witness_claims(family, F)
    rep.claims += criterion_claims(family, F, workers, budget)
    if family == "L5_9" and F.is_prime_field:
        rep.claims.append(k911_check(F, budget))
    return rep


# ---------------------------------------------------------------------------
# oracle enumeration
@dataclass
class OracleResult:
    family: str
    field: str
    mode: str
    classes: int
    theorem_count: int
    representatives: list
    claims: list = field(default_factory=list)
    maps: int = 0

    @property
    def ok(self):
        return all(c.verdict == "confirmed" for c in self.claims)

    def to_json(self):
        return {"family": self.family, "field": self.field, "mode": self.mode, "classes": self.classes,
                "theorem_count": self.theorem_count, "maps": self.maps,
                "representatives": _plain(self.representatives),
                "claims": [c.to_json() for c in self.claims]}


def _partitions(n, top=None):
    top = n if top is None else top
    if n == 0:
        yield ()
        return
    for k in range(min(n, top), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def _jordan(F, part):
    n = sum(part)
    P = np.zeros((n, n), dtype=np.int64)
    s = 0
    for k in part:
        for i in range(k - 1):
            P[s + i + 1, s + i] = 1  # x_{s+i} -> x_{s+i+1}
        s += k
    return P


def oracle_abelian(F: FieldSpec, samples: int = 2000, seed: int = 0) -> OracleResult:
    """Nilpotent maps of F^5 up to similarity: one class per rank sequence.
    Jordan forms give one map per partition; random conjugates of random
    nilpotent maps are matched back to check the rank-sequence invariant."""
    L = catalog("L5_1", F)
    classes = {}
    for part in _partitions(L.dim):
        R = RestrictedAlgebra(L, _jordan(F, part))
        classes.setdefault(rank_sequence(R), part)
    rng = np.random.default_rng(seed)
    seen = set()
    for _ in range(samples):
        # strictly lower triangular conjugated by a random invertible matrix
        N = np.tril(rng.integers(0, F.q, size=(5, 5)), -1)
        while True:
            S = rng.integers(0, F.q, size=(5, 5))
            if la.is_invertible(F, S):
                break
        P = F.matmul(S, F.matmul(N, la.inverse(F, S)))
        seen.add(rank_sequence(RestrictedAlgebra(L, P)))
    claims = []
    rows = {}
    for idx, e in enumerate(THEOREMS["L5_1"], start=1):
        rows.setdefault(rank_sequence(e.algebra(F)), []).append(idx)
    dup = {k: v for k, v in rows.items() if len(v) > 1}
    missing = [classes[k] for k in classes if k not in rows]
    claims.append(Claim("L5_1 class count", "L5_1 table", len(THEOREMS["L5_1"]), len(classes),
                        "confirmed" if len(classes) == len(THEOREMS["L5_1"]) and not dup else "refuted",
                        {"classes": {str(k): list(v) for k, v in classes.items()},
                         "rows_sharing_a_class": {str(k): v for k, v in dup.items()},
                         "classes_missing_from_table": [list(m) for m in missing],
                         "sampled_rank_sequences_outside_classes": sorted(map(list, seen - set(classes)))}))
    reps = [{"partition": list(v), "rank_sequence": list(k)} for k, v in classes.items()]
    return OracleResult("L5_1", str(F), "rank sequences", len(classes), len(THEOREMS["L5_1"]), reps, claims,
                        samples)


def _center_coords(L):
    Z = L.center()
    cols = [i for i in range(L.dim) if Z.contains(L.basis_vec(i))]
    if len(cols) != Z.dim:
        raise ValueError("centre is not a coordinate subspace")
    return cols


def _pmap_index(F, P, zc):
    """Map -> integer: coordinates of x_i^[p] on the centre basis, base q."""
    q = F.q
    coords = P[..., zc, :]  # (..., s, n)
    flat = np.swapaxes(coords, -1, -2).reshape(coords.shape[:-2] + (-1,))
    w = q ** np.arange(flat.shape[-1] - 1, -1, -1, dtype=np.int64)
    return flat @ w


def _pmap_from_index(F, idx, n, zc):
    s = len(zc)
    digits = np.array(np.unravel_index(idx, (F.q,) * (n * s)), dtype=np.int64).T
    digits = digits.reshape(digits.shape[:-1] + (n, s))
    P = np.zeros(digits.shape[:-2] + (n, n), dtype=np.int64)
    P[..., zc, :] = np.swapaxes(digits, -1, -2)
    return P


def _inv_batch(F, M):
    """Inverses of a stack of invertible matrices over a prime field."""
    p = F.p
    B, n, _ = M.shape
    A = np.concatenate([M % p, np.broadcast_to(np.eye(n, dtype=np.int64), (B, n, n))], axis=2).copy()
    rows = np.arange(B)
    for c in range(n):
        piv = c + np.argmax(A[:, c:, c] != 0, axis=1)
        tmp = A[rows, piv].copy()
        A[rows, piv] = A[rows, c]
        A[rows, c] = tmp
        inv = F.inv(A[rows, c, c])
        A[:, c] = A[:, c] * inv[:, None] % p
        f = A[:, :, c].copy()
        f[:, c] = 0
        A = (A - f[:, :, None] * A[:, c][:, None, :]) % p
    return A[:, :, n:]


def _orbit_task(args):
    family, p, seeds, prefix, budget = args
    F = FieldSpec(p)
    L = catalog(family, F)
    zc = _center_coords(L)
    n, s = L.dim, len(zc)
    size = F.q ** (n * s)
    fam = family_for(family)
    hit = [np.zeros(size, dtype=bool) for _ in seeds]
    # A P A^-1 only involves the centre rows of P and the Z -> Z block of A;
    # entries stay below n * p^3, so float products are exact
    Pz = [_pmap_from_index(F, np.int64(x), n, zc)[zc].astype(np.float64) for x in seeds]
    W = (F.q ** np.arange(n * s - 1, -1, -1, dtype=np.int64)).reshape(n, s).T.astype(np.float64)
    for M in enumerate_aut_batches(fam, F, budget, prefix=prefix):
        Mi = _inv_batch(F, M).astype(np.float64)
        Azz = M[:, zc][:, :, zc].astype(np.float64)
        for k, P in enumerate(Pz):
            img = np.matmul(Azz, np.matmul(P, Mi) % p) % p
            idx = np.einsum("bri,ri->b", img, W)
            hit[k][idx.astype(np.int64)] = True
    return [np.packbits(h) for h in hit]


def _fp_of(F, L, s, zc):
    return fingerprint_key(fingerprint(RestrictedAlgebra(L, _pmap_from_index(F, np.int64(s), L.dim, zc))))


def _nilpotent_mask(F, n, zc):
    """p-nilpotency of every map L -> Z(L): the block Z -> Z must be nilpotent."""
    s = len(zc)
    size = F.q ** (n * s)
    idx = np.arange(size, dtype=np.int64)
    P = _pmap_from_index(F, idx, n, zc)
    N = P[:, zc][:, :, zc]
    Pk = N.copy()
    for _ in range(s):
        Pk = F.matmul(Pk, N)
    return ~np.any(Pk.reshape(size, -1), axis=1)


def oracle_orbits(family: str, F: FieldSpec, workers: int = 1, budget=None) -> OracleResult:
    """Isomorphism classes of p-nilpotent maps on L = orbits of Aut(L) acting
    by conjugation.  Seeds are the theorem instances, then any uncovered map;
    each orbit is the full image set of its seed, so the partition is exact."""
    if not F.is_prime_field:
        raise ValueError("orbit oracle runs over prime fields")
    L = catalog(family, F)
    fam = family_for(family)
    zc = _center_coords(L)
    n = L.dim
    budget = default_budget() if budget is None else budget
    if grid_size(fam, F) > budget:
        raise OverflowError("automorphism grid exceeds the budget")
    nil = _nilpotent_mask(F, n, zc)
    inst = expand_family(family, F)
    seeds = [int(_pmap_index(F, R.P, zc)) for _, _, R in inst]
    labels = [R.name for _, _, R in inst]
    covered = np.zeros(len(nil), dtype=bool)
    orbits = []  # (label, seed, size)
    merges = []
    prefixes = list(itertools.product(range(F.q), repeat=2))

    def run(seed_list):
        parts = parallel_map(_orbit_task, [(family, F.p, seed_list, pre, budget) for pre in prefixes], workers)
        out = []
        for k in range(len(seed_list)):
            bits = np.zeros_like(parts[0][k])
            for part in parts:
                bits |= part[k]
            out.append(np.unpackbits(bits)[:len(nil)].astype(bool))
        return out

    for k, h in enumerate(run(seeds)):
        for j, (lab, s, _) in enumerate(orbits):
            if h[s]:
                merges.append((labels[k], lab))
                break
        else:
            orbits.append((labels[k], seeds[k], int(h.sum())))
        covered |= h
    extra = []
    known = {fingerprint_key(fingerprint(R)) for _, _, R in inst}
    while True:
        rest = np.nonzero(nil & ~covered)[0]
        if not len(rest):
            break
        # uncovered maps whose fingerprint is new are certainly in new orbits,
        # so one pass can seed several of them
        batch = [int(rest[0])]
        keys = {_fp_of(F, L, int(rest[0]), zc)}
        for s in rest[1:][:: max(1, len(rest) // 400)]:
            key = _fp_of(F, L, int(s), zc)
            if key not in keys and key not in known:
                keys.add(key)
                batch.append(int(s))
        known |= keys
        for s, h in zip(batch, run(batch)):
            if covered[s]:
                continue  # swallowed by an earlier seed of this batch
            P = _pmap_from_index(F, np.int64(s), n, zc)
            lab = "extra: " + ", ".join(f"x{i + 1}->{P[:, i].tolist()}" for i in range(n) if np.any(P[:, i]))
            orbits.append((lab, s, int(h.sum())))
            extra.append(lab)
            covered |= h
    claims = []
    total = int(nil.sum())
    claims.append(Claim(f"{family} class count over {F}", f"{family} theorem", len(inst), len(orbits),
                        "confirmed" if not merges and not extra else "refuted",
                        {"merged_instances": merges, "classes_missing_from_theorem": extra,
                         "p_nilpotent_maps": total, "orbit_size_sum": sum(o[2] for o in orbits)}))
    if sum(o[2] for o in orbits) != total:
        raise AssertionError("orbits do not partition the p-nilpotent maps")
    reps = [{"label": lab, "orbit_size": sz} for lab, _, sz in orbits]
    return OracleResult(family, str(F), "Aut-orbits", len(orbits), len(inst), reps, claims, total)


def _fp_task(args):
    family, p, block = args
    F = FieldSpec(p)
    L = catalog(family, F)
    zc = _center_coords(L)
    out = []
    for s in block:
        R = RestrictedAlgebra(L, _pmap_from_index(F, np.int64(s), L.dim, zc))
        out.append(fingerprint_key(fingerprint(R)))
    return out


def oracle_generic(family: str, F: FieldSpec, workers: int = 1, budget=None,
                   sample: int | None = None, seed: int = 0) -> OracleResult:
    """Fingerprint buckets refined by decide_iso, over all p-nilpotent maps
    (or a deterministic random sample of them)."""
    L = catalog(family, F)
    zc = _center_coords(L)
    n = L.dim
    nil = _nilpotent_mask(F, n, zc)
    idx = np.nonzero(nil)[0]
    mode = "full enumeration"
    if sample is not None and sample < len(idx):
        rng = np.random.default_rng(seed)
        idx = np.sort(rng.choice(idx, size=sample, replace=False))
        mode = f"sample of {sample}"
    inst = expand_family(family, F)
    blocks = [list(map(int, b)) for b in np.array_split(idx, max(1, workers * 4))]
    keys = [k for part in parallel_map(_fp_task, [(family, F.p, b) for b in blocks], workers) for k in part]
    theo_keys = [fingerprint_key(fingerprint(R)) for _, _, R in inst]
    # theorem instances first, so they become the class representatives
    algs = [R for _, _, R in inst] + [RestrictedAlgebra(L, _pmap_from_index(F, np.int64(s), n, zc)) for s in idx]
    all_keys = theo_keys + keys
    reps = {}
    cls = []
    undecided = 0
    for i, R in enumerate(algs):
        found = None
        for r in reps.get(all_keys[i], []):
            res = decide_iso(algs[r], R, budget=budget, use_fingerprint=False)
            if res.verdict == "yes":
                found = r
                break
            if res.verdict != "no":
                undecided += 1
        if found is None:
            reps.setdefault(all_keys[i], []).append(i)
            found = i
        cls.append(found)
    ninst = len(inst)
    merges = [(algs[i].name, algs[cls[i]].name) for i in range(ninst) if cls[i] != i]
    extra = sorted({cls[i] for i in range(ninst, len(algs)) if cls[i] >= ninst})
    count = len(set(cls))
    verdict = "inconclusive" if undecided else ("confirmed" if not merges and not extra else "refuted")
    extra_desc = [", ".join(f"x{c + 1}->{algs[i].P[:, c].tolist()}" for c in range(n) if np.any(algs[i].P[:, c]))
                  for i in extra]
    claims = [Claim(f"{family} class count over {F}", f"{family} theorem", ninst, count, verdict,
                    {"merged_instances": merges, "classes_missing_from_theorem": extra_desc,
                     "maps": len(idx), "undecided": undecided, "mode": mode})]
    reps_out = [{"label": algs[r].name if r < ninst else "extra: " + extra_desc[extra.index(r)],
                 "members": int(sum(1 for c in cls[ninst:] if c == r))} for r in sorted(set(cls))]
    return OracleResult(family, str(F), mode, count, ninst, reps_out, claims, len(idx))


def oracle_enumerate(family: str, F: FieldSpec, workers: int = 1, budget=None, full: bool = False,
                     sample: int = 2000) -> OracleResult:
    if family == "L5_1":
        return oracle_abelian(F)
    L = catalog(family, F)
    s = L.center().dim
    try:
        fam = family_for(family)
    except KeyError:
        fam = None
    if fam is not None and F.is_prime_field and grid_size(fam, F) <= 2 * 10 ** 7 and s <= 2:
        return oracle_orbits(family, F, workers, budget)
    if s <= 2 or full:
        return oracle_generic(family, F, workers, budget)
    return oracle_generic(family, F, workers, budget, sample=sample)
