"""Automorphism families, their action on 2-cochains and orbits on H^2 slices.

Families are stored in data/autfamilies.json.  Each matrix entry is an
expression tree: an integer, a parameter name, or a list
[op, arg, ...] with op one of "+", "-", "*", "neg", "pow", "root".
Columns of the matrix are the images of the basis vectors.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from . import linalg as la
from .cohomology import Cochain2, cohomology, pair_index
from .extension import build_extension
from .field import FieldSpec
from .isotest import decide_iso, default_budget
from .liealg import LieAlgebra
from .polysolve import BudgetExceeded
from .restricted import RestrictedAlgebra


# ---------------------------------------------------------------------------
# expression trees
def tree_params(t) -> set:
    if isinstance(t, str):
        return {t}
    if isinstance(t, list):
        out = set()
        for a in t[1:]:
            out |= tree_params(a)
        return out
    return set()


def eval_tree(F: FieldSpec, t, env: dict):
    """Evaluate with codes (scalars or equally shaped arrays) bound in env."""
    if isinstance(t, int):
        return F.from_int(t)
    if isinstance(t, str):
        return env[t]
    op, args = t[0], t[1:]
    if op == "+":
        out = eval_tree(F, args[0], env)
        for a in args[1:]:
            out = F.add(out, eval_tree(F, a, env))
        return out
    if op == "*":
        out = eval_tree(F, args[0], env)
        for a in args[1:]:
            out = F.mul(out, eval_tree(F, a, env))
        return out
    if op == "-":
        return F.sub(eval_tree(F, args[0], env), eval_tree(F, args[1], env))
    if op == "neg":
        return F.neg(eval_tree(F, args[0], env))
    if op == "pow":
        return F.pow(eval_tree(F, args[0], env), int(args[1]))
    if op == "root":
        return F.inv_frob(eval_tree(F, args[0], env))
    raise ValueError(f"unknown operator {op!r}")


def tree_str(t) -> str:
    if isinstance(t, (int, str)):
        return str(t)
    op, args = t[0], t[1:]
    if op in ("+", "*"):
        return "(" + op.join(tree_str(a) for a in args) + ")"
    if op == "-":
        return f"({tree_str(args[0])}-{tree_str(args[1])})"
    if op == "neg":
        return f"-{tree_str(args[0])}"
    if op == "pow":
        return f"{tree_str(args[0])}^{args[1]}"
    return f"root({tree_str(args[0])})"


class Poly:
    """Polynomial over Z/p in named variables; just enough for identities."""

    def __init__(self, p: int, terms=None):
        self.p = p
        self.terms = {m: c % p for m, c in (terms or {}).items() if c % p}

    @classmethod
    def const(cls, p, c):
        return cls(p, {(): c})

    @classmethod
    def var(cls, p, name):
        return cls(p, {((name, 1),): 1})

    def __add__(self, o):
        t = dict(self.terms)
        for m, c in o.terms.items():
            t[m] = t.get(m, 0) + c
        return Poly(self.p, t)

    def __neg__(self):
        return Poly(self.p, {m: -c for m, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        t = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                d = dict(m1)
                for v, e in m2:
                    d[v] = d.get(v, 0) + e
                m = tuple(sorted(d.items()))
                t[m] = t.get(m, 0) + c1 * c2
        return Poly(self.p, t)

    def is_zero(self) -> bool:
        return not self.terms


def tree_poly(p: int, t) -> Poly:
    if isinstance(t, int):
        return Poly.const(p, t)
    if isinstance(t, str):
        return Poly.var(p, t)
    op, args = t[0], t[1:]
    if op in ("+", "*"):
        out = tree_poly(p, args[0])
        for a in args[1:]:
            out = out + tree_poly(p, a) if op == "+" else out * tree_poly(p, a)
        return out
    if op == "-":
        return tree_poly(p, args[0]) - tree_poly(p, args[1])
    if op == "neg":
        return -tree_poly(p, args[0])
    if op == "pow":
        out = Poly.const(p, 1)
        for _ in range(int(args[1])):
            out = out * tree_poly(p, args[0])
        return out
    if op == "root":
        # over a prime field the p-th root is the identity
        return tree_poly(p, args[0])
    raise ValueError(op)


# ---------------------------------------------------------------------------
@dataclass
class AutFamily:
    name: str
    algebra: str
    params: list
    matrix: list  # n x n expression trees
    nonzero: list = field(default_factory=list)
    printed: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.matrix)

    @property
    def free_count(self) -> int:
        return len(self.params)

    def pattern(self) -> list:
        """Per entry: "0", "free:<param>" or the polynomial as text."""
        out = []
        for row in self.matrix:
            r = []
            for t in row:
                if t == 0:
                    r.append("0")
                elif isinstance(t, str):
                    r.append("free:" + t)
                else:
                    r.append(tree_str(t))
            out.append(r)
        return out

    def instantiate(self, F: FieldSpec, values: dict) -> np.ndarray:
        return np.array([[int(eval_tree(F, t, values)) for t in row] for row in self.matrix],
                        dtype=np.int64)

    def constraints_hold(self, F: FieldSpec, values: dict) -> bool:
        return all(int(eval_tree(F, c, values)) != 0 for c in self.nonzero)

    def lone_positions(self) -> dict:
        """param -> (row, col) of an entry that is exactly that parameter."""
        out = {}
        for r, row in enumerate(self.matrix):
            for c, t in enumerate(row):
                if isinstance(t, str) and t not in out:
                    out[t] = (r, c)
        return out

    def params_of(self, F: FieldSpec, M) -> dict | None:
        """Parameter values producing M, or None if M is not in the family."""
        pos = self.lone_positions()
        if set(pos) != set(self.params):
            raise ValueError(f"{self.name}: some parameter has no lone entry")
        vals = {k: int(M[r, c]) for k, (r, c) in pos.items()}
        if not np.array_equal(self.instantiate(F, vals), np.asarray(M)):
            return None
        if not self.constraints_hold(F, vals) or not la.is_invertible(F, M):
            return None
        return vals

    def corrupted(self, row: int, col: int) -> "AutFamily":
        m = [list(r) for r in self.matrix]
        m[row][col] = 0
        return AutFamily(self.name + f"[zeroed {row + 1},{col + 1}]", self.algebra,
                         self.params, m, self.nonzero)

    def to_json(self):
        return {"name": self.name, "algebra": self.algebra, "params": self.params,
                "matrix": self.matrix, "nonzero": self.nonzero, "printed": self.printed}


def load_families() -> dict:
    text = resources.files("rlk").joinpath("data/autfamilies.json").read_text()
    return {d["algebra"]: AutFamily(d["name"], d["algebra"], d["params"], d["matrix"],
                                    d.get("nonzero", []), d.get("printed", {}))
            for d in json.loads(text)}


_FAMILIES = None


def family_for(algebra: str) -> AutFamily:
    global _FAMILIES
    if _FAMILIES is None:
        _FAMILIES = load_families()
    return _FAMILIES[algebra]


# ---------------------------------------------------------------------------
# enumeration
def _det_batch(F: FieldSpec, M):
    """Determinants of a stack of small matrices by permutation expansion."""
    n = M.shape[-1]
    out = np.zeros(M.shape[:-2], dtype=np.int64)
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = np.full(M.shape[:-2], F.from_int(sign), dtype=np.int64)
        for i in range(n):
            term = F.mul(term, M[..., i, perm[i]])
        out = F.add(out, term)
    return out


def grid_size(family: AutFamily, F: FieldSpec) -> int:
    return F.q ** family.free_count


def enumerate_aut_batches(family: AutFamily, F: FieldSpec, budget: int | None = None,
                          restricted_P=None, prefix=(), chunk: int = 1 << 17):
    """Yield stacks (k, n, n) of valid instantiations, lexicographic in the
    parameters (first parameter slowest).  `prefix` fixes the leading
    parameters, which partitions the stream into independent jobs.
    With restricted_P only matrices commuting with the p-map survive."""
    budget = default_budget() if budget is None else budget
    total = grid_size(family, F)
    if total > budget:
        raise BudgetExceeded(f"{total} instantiations exceed the budget {budget}")
    q = F.q
    npar = family.free_count
    # split into a prefix iterated in python and a vectorized tail
    tail = npar
    while tail > 1 and q ** tail > chunk:
        tail -= 1
    head = npar - tail
    names = family.params
    sub = np.array(list(itertools.product(range(q), repeat=tail)), dtype=np.int64)
    sub = sub.reshape(len(sub), tail)
    n = family.dim
    prefix = tuple(prefix)
    k = min(len(prefix), head)
    for i in range(k, len(prefix)):
        sub = sub[sub[:, i - head] == prefix[i]]
    prefixes = (prefix[:k] + rest for rest in itertools.product(range(q), repeat=head - k))
    for pre in prefixes:
        env = {names[i]: np.full(len(sub), v, dtype=np.int64) for i, v in enumerate(pre)}
        env.update({names[head + i]: sub[:, i] for i in range(tail)})
        ok = np.ones(len(sub), dtype=bool)
        for c in family.nonzero:
            ok &= np.broadcast_to(eval_tree(F, c, env), ok.shape) != 0
        M = np.zeros((len(sub), n, n), dtype=np.int64)
        for r in range(n):
            for c in range(n):
                M[:, r, c] = np.broadcast_to(eval_tree(F, family.matrix[r][c], env), len(sub))
        M = M[ok]
        if restricted_P is not None and len(M):
            P = np.asarray(restricted_P, dtype=np.int64)
            lhs = F.matmul(M, P)
            rhs = F.matmul(np.broadcast_to(P, M.shape), F.frob(M))
            M = M[np.all((lhs == rhs).reshape(len(M), -1), axis=1)]
        M = M[_det_batch(F, M) != 0]
        if len(M):
            yield M


def enumerate_aut(family: AutFamily, F: FieldSpec, budget: int | None = None):
    """Stream every constraint-satisfying instantiation once."""
    for batch in enumerate_aut_batches(family, F, budget):
        yield from batch


def count_aut(family: AutFamily, F: FieldSpec, budget: int | None = None, restricted_P=None) -> int:
    return sum(len(b) for b in enumerate_aut_batches(family, F, budget, restricted_P))


def is_lie_automorphism(L: LieAlgebra, A) -> bool:
    F = L.F
    A = np.asarray(A, dtype=np.int64)
    if not la.is_invertible(F, A):
        return False
    n = L.dim
    I, J = np.triu_indices(n, 1)
    lhs = F.matmul(L.sc[I, J], A.T)
    rhs = L.bracket(A.T[I], A.T[J])
    return bool(np.array_equal(lhs, rhs))


def _auto_mask(L: LieAlgebra, M):
    """Vectorized bracket check for a stack of matrices."""
    F = L.F
    n = L.dim
    ok = np.ones(len(M), dtype=bool)
    for i in range(n):
        for j in range(i + 1, n):
            lhs = F.matmul(M, L.sc[i, j])  # A [x_i, x_j]
            rhs = np.zeros_like(lhs)
            for k in range(n):
                for l in range(n):
                    if np.any(L.sc[k, l]):
                        coef = F.mul(M[:, k, i], M[:, l, j])
                        rhs = F.add(rhs, F.mul(coef[:, None], L.sc[k, l][None, :]))
            ok &= np.all(lhs == rhs, axis=1)
    return ok


# ---------------------------------------------------------------------------
@dataclass
class FamilyReport:
    family: str
    field: str
    sound_symbolic: bool = True
    sound_numeric: bool = True
    complete: bool | None = None
    checked: int = 0
    counterexample: list | None = None
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.sound_symbolic and self.sound_numeric and self.complete is not False

    def to_json(self):
        return {"family": self.family, "field": str(self.field), "sound_symbolic": self.sound_symbolic,
                "sound_numeric": self.sound_numeric, "complete": self.complete,
                "checked": self.checked, "counterexample": self.counterexample, "notes": self.notes}


def symbolic_soundness(L: LieAlgebra, family: AutFamily) -> list:
    """Bracket identities A[x_i,x_j] = [Ax_i, Ax_j] as polynomials mod p.
    Returns the failing (i, j, k) triples (0-based)."""
    p = L.F.p
    if not L.F.is_prime_field:
        raise ValueError("symbolic check runs over the prime field")
    n = L.dim
    A = [[tree_poly(p, t) for t in row] for row in family.matrix]
    sc = L.sc
    bad = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                lhs = Poly(p)
                for m in range(n):
                    if sc[i, j, m]:
                        lhs = lhs + A[k][m] * Poly.const(p, int(sc[i, j, m]))
                rhs = Poly(p)
                for a in range(n):
                    for b in range(n):
                        if sc[a, b, k]:
                            rhs = rhs + A[a][i] * A[b][j] * Poly.const(p, int(sc[a, b, k]))
                if not (lhs - rhs).is_zero():
                    bad.append((i, j, k))
    return bad


def generator_columns(L: LieAlgebra) -> list:
    """Basis indices outside [L, L], provided [L, L] is a coordinate subspace."""
    D = L.bracket_space(L.whole(), L.whole())
    inside = [i for i in range(L.dim) if D.contains(L.basis_vec(i))]
    if len(inside) != D.dim:
        raise ValueError("derived algebra is not spanned by basis vectors")
    return [i for i in range(L.dim) if i not in inside]


def verify_aut_family(L: LieAlgebra, family: AutFamily, F: FieldSpec | None = None,
                      budget: int | None = None, samples: int = 2000, completeness: bool = True,
                      seed: int = 0) -> FamilyReport:
    """Soundness (symbolic and numeric) and completeness of a printed family.

    Completeness: an automorphism is fixed by the images of the generator
    columns, so the family is complete when (a) its generator columns carry
    every free parameter as a lone entry and (b) no Lie automorphism has a
    nonzero value where the family prints 0 in a generator column.  (b) is
    decided by the isomorphism search on the algebra with zero p-map, with
    the entry pinned to each nonzero value."""
    F = F or L.F
    rep = FamilyReport(family.name, str(F))
    if F.is_prime_field:
        bad = symbolic_soundness(L, family)
        if bad:
            rep.sound_symbolic = False
            rep.notes.append(f"bracket identities fail at {[(i + 1, j + 1, k + 1) for i, j, k in bad][:5]}")
    budget = default_budget() if budget is None else budget
    # numeric soundness: enumerate when small, else sample
    if grid_size(family, F) <= min(budget, 2 * 10 ** 6):
        batches = enumerate_aut_batches(family, F, budget)
    else:
        rng = np.random.default_rng(seed)
        vals = rng.integers(0, F.q, size=(samples, family.free_count))
        env = {k: vals[:, i] for i, k in enumerate(family.params)}
        ok = np.ones(samples, dtype=bool)
        for c in family.nonzero:
            ok &= np.broadcast_to(eval_tree(F, c, env), ok.shape) != 0
        M = np.stack([np.stack([np.broadcast_to(eval_tree(F, t, env), samples) for t in row], axis=1)
                      for row in family.matrix], axis=1)
        M = M[ok]
        batches = [M[_det_batch(F, M) != 0]]
    for M in batches:
        mask = _auto_mask(L, M)
        rep.checked += len(M)
        if not mask.all():
            rep.sound_numeric = False
            rep.counterexample = M[~mask][0].tolist()
            break
    if completeness:
        rep.complete = _completeness(L, family, F, budget, rep)
    return rep


def _completeness(L, family, F, budget, rep) -> bool | None:
    if not F.is_prime_field:
        rep.notes.append("completeness search needs a prime field")
        return None
    gens = generator_columns(L)
    lone = family.lone_positions()
    gen_params = {t for r in range(L.dim) for c in gens
                  for t in [family.matrix[r][c]] if isinstance(t, str)}
    nonlone = [(r, c) for r in range(L.dim) for c in gens
               if family.matrix[r][c] != 0 and not isinstance(family.matrix[r][c], str)]
    if nonlone or gen_params != set(family.params) or any(lone[k][1] not in gens for k in gen_params):
        rep.notes.append("generator columns are not free parameters; completeness not decided")
        return None
    R = RestrictedAlgebra(L, np.zeros((L.dim, L.dim), dtype=np.int64))
    E = np.eye(L.dim, dtype=np.int64)
    for c in gens:
        for r in range(L.dim):
            if family.matrix[r][c] != 0:
                continue
            for v in range(1, F.q):
                res = decide_iso(R, R, budget=budget, entries=[(E[r], E[c], v)], use_fingerprint=False)
                if res.verdict == "yes":
                    rep.counterexample = res.witness.tolist()
                    rep.notes.append(f"automorphism with entry ({r + 1},{c + 1}) = {v} outside the family")
                    return False
                if res.verdict != "no":
                    rep.notes.append(f"entry ({r + 1},{c + 1}) undecided: {res.verdict}")
                    return None
    # the printed constraints must coincide with invertibility on the grid
    if grid_size(family, F) <= 2 * 10 ** 6:
        for v0 in range(F.q):
            rest = family.params[1:]
            sub = np.array(list(itertools.product(range(F.q), repeat=len(rest))), dtype=np.int64)
            sub = sub.reshape(len(sub), len(rest))
            env = {family.params[0]: np.full(len(sub), v0)}
            env.update({k: sub[:, i] for i, k in enumerate(rest)})
            ok = np.ones(len(sub), dtype=bool)
            for cexpr in family.nonzero:
                ok &= np.broadcast_to(eval_tree(F, cexpr, env), ok.shape) != 0
            M = np.stack([np.stack([np.broadcast_to(eval_tree(F, t, env), len(sub)) for t in row], axis=1)
                          for row in family.matrix], axis=1)
            inv = _det_batch(F, M) != 0
            if np.any(inv & ~ok):
                rep.notes.append("an invertible instance violates the printed constraint")
                return False
    return True


def closure_check(family: AutFamily, F: FieldSpec, pairs: int = 1000, seed: int = 0) -> list:
    """Products and inverses of random instances stay in the family; returns failures."""
    rng = np.random.default_rng(seed)
    fails = []
    inst = []
    while len(inst) < 2 * pairs:
        vals = {k: int(rng.integers(0, F.q)) for k in family.params}
        if family.constraints_hold(F, vals):
            M = family.instantiate(F, vals)
            if la.is_invertible(F, M):
                inst.append(M)
    for a, b in zip(inst[::2], inst[1::2]):
        for M in (F.matmul(a, b), la.inverse(F, a)):
            if family.params_of(F, M) is None:
                fails.append(M.tolist())
    return fails


# ---------------------------------------------------------------------------
def act_on_cochain(A, theta: Cochain2, R: RestrictedAlgebra | None = None) -> Cochain2:
    """(A theta)(x, y) = theta(Ax, Ay), (A omega)(x) = omega(Ax)."""
    F = theta.F
    A = np.asarray(A, dtype=np.int64)
    phi = F.matmul(A.T, F.matmul(theta.phi, A))
    omega = F.matmul(F.frob(A).T, theta.omega)
    out = Cochain2(F, phi, omega)
    if R is not None:
        Z = cohomology(R).Z
        if Z.contains(theta) and not Z.contains(out):
            raise AssertionError("action left Z2")
    return out


def _act_batch(F: FieldSpec, M, vecs, n):
    """Cochain vectors (k, N) transported by each matrix of M (B, n, n) -> (B, k, N)."""
    pairs = pair_index(n)
    I = np.array([i for i, _ in pairs])
    J = np.array([j for _, j in pairs])
    out = []
    for v in vecs:
        th = Cochain2.from_vector(F, n, v)
        phi = F.matmul(np.swapaxes(M, 1, 2), F.matmul(th.phi, M))
        om = F.matmul(np.swapaxes(F.frob(M), 1, 2), th.omega)
        out.append(np.concatenate([phi[:, I, J], om], axis=1))
    return np.stack(out, axis=1)


# ---------------------------------------------------------------------------
@dataclass
class OrbitResult:
    mode: str
    method: str
    points: list  # slice coordinates, canonical order
    labels: list  # cochain labels of the points
    orbit: list  # representative index per point
    inconclusive: int = 0

    @property
    def reps(self) -> list:
        return sorted(set(self.orbit))

    @property
    def sizes(self) -> dict:
        out = {}
        for r in self.orbit:
            out[r] = out.get(r, 0) + 1
        return out

    def same(self, s1, s2) -> bool:
        return self.orbit[self.points.index(tuple(s1))] == self.orbit[self.points.index(tuple(s2))]

    def to_json(self):
        return {"mode": self.mode, "method": self.method,
                "representatives": [{"coords": list(self.points[r]), "cochain": self.labels[r],
                                     "size": self.sizes[r]} for r in self.reps],
                "slice_size": len(self.points), "inconclusive": self.inconclusive}


class _UF:
    def __init__(self, n):
        self.up = list(range(n))

    def find(self, a):
        while self.up[a] != a:
            self.up[a] = self.up[self.up[a]]
            a = self.up[a]
        return a

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a != b:
            self.up[max(a, b)] = min(a, b)


def _slice_vectors(R: RestrictedAlgebra, fixed_phi: Cochain2, omega_space):
    F = R.F
    n = R.dim
    theta0 = fixed_phi.to_vector()
    W = []
    for w in omega_space:
        w = np.asarray(w, dtype=np.int64)
        if len(w) == n:
            w = Cochain2(F, np.zeros((n, n), dtype=np.int64), w).to_vector()
        W.append(w)
    return theta0, np.array(W, dtype=np.int64).reshape(len(W), len(theta0))


def orbits_on_slice(R: RestrictedAlgebra, family: AutFamily | None, fixed_phi: Cochain2, omega_space,
                    mode: str = "exact", method: str = "auto", budget: int | None = None,
                    enum_limit: int = 2 * 10 ** 6, restricted: bool = True) -> OrbitResult:
    """Aut(R)-orbits on the slice {fixed_phi + sum s_k w_k} of H^2(R).

    exact: theta1 ~ theta2 when A theta1 = theta2 mod B2 for a restricted
    automorphism A; projective: A theta1 = c theta2 for some c in F*.
    Slice points are coordinate vectors s in canonical (lexicographic) order
    and each orbit is represented by its smallest point.
    restricted=False lets every Lie automorphism of the family act, ignoring
    the p-map (a diagnostic; only the enumeration method supports it)."""
    if mode not in ("exact", "projective"):
        raise ValueError(mode)
    F = R.F
    n = R.dim
    C = cohomology(R)
    theta0, W = _slice_vectors(R, fixed_phi, omega_space)
    for v in [theta0, *W]:
        if not C.in_z2(v):
            raise ValueError("slice leaves Z2")
    Q = C.projection()
    c0 = F.matmul(Q, theta0)
    U = F.matmul(Q, W.T) if len(W) else np.zeros((C.H.dim, 0), dtype=np.int64)
    k = len(W)
    if la.rank(F, U.T if k else np.zeros((1, max(C.H.dim, 1)), dtype=np.int64)) < k:
        raise ValueError("slice directions are dependent modulo B2")
    points = list(itertools.product(range(F.q), repeat=k))
    labels = [Cochain2.from_vector(F, n, F.add(theta0, F.matmul(np.array(s, dtype=np.int64), W))
                                   if k else theta0).label() for s in points]
    if method == "auto":
        ok = (family is not None and F.is_prime_field
              and grid_size(family, F) <= min(enum_limit, default_budget() if budget is None else budget))
        method = "enumerate" if ok else "search"
    if not restricted and method != "enumerate":
        raise ValueError("restricted=False needs the enumeration method")
    uf = _UF(len(points))
    inconclusive = 0
    if method == "enumerate":
        _orbits_enumerate(R, family, F, C, Q, theta0, W, c0, U, points, mode, budget, uf,
                          R.P if restricted else None)
    else:
        inconclusive = _orbits_search(R, F, theta0, W, points, mode, budget, uf)
    if mode == "projective" and not np.any(c0):
        # a pure omega slice: the scalar c acts on the coordinates directly
        idx = {s: i for i, s in enumerate(points)}
        for i, s in enumerate(points):
            for c in range(1, F.q):
                uf.union(i, idx[tuple(int(x) for x in F.mul(np.array(s, dtype=np.int64), c))])
    orbit = [uf.find(i) for i in range(len(points))]
    return OrbitResult(mode, method, points, labels, orbit, inconclusive)


def _left_inverse(F, Ub):
    """Rows r and matrix Li with Li @ Ub[r] = I (Ub has independent columns)."""
    _, piv = la.rref(F, Ub.T)
    # pivots of the transposed rref are rows of Ub giving an invertible block
    rows = list(piv)
    return rows, la.inverse(F, Ub[rows])


def _orbits_enumerate(R, family, F, C, Q, theta0, W, c0, U, points, mode, budget, uf, P):
    n = R.dim
    k = len(W)
    has0 = bool(np.any(c0))
    Ub = np.concatenate([c0[:, None], U], axis=1) if has0 else U
    if Ub.shape[1] == 0:
        return
    rows, Li = _left_inverse(F, Ub)
    S = np.array(points, dtype=np.int64).reshape(len(points), k)
    idx = {s: i for i, s in enumerate(points)}
    seen = set()
    vecs = np.concatenate([theta0[None, :], W], axis=0)
    for M in enumerate_aut_batches(family, F, budget, restricted_P=P):
        T = _act_batch(F, M, vecs, n)  # (B, 1+k, N)
        G = F.matmul(T, Q.T)  # H2 coordinates (B, 1+k, h)
        G = np.unique(G, axis=0)
        for g in G:
            key = g.tobytes()
            if key in seen:
                continue
            seen.add(key)
            Y = F.add(g[0][None, :], F.matmul(S, g[1:]))  # images of all points
            coef = F.matmul(Y[:, rows], Li.T)
            inside = np.all(F.matmul(coef, Ub.T) == Y, axis=1)
            for i in np.nonzero(inside)[0]:
                if has0:
                    s0 = int(coef[i, 0])
                    if mode == "exact" and s0 != 1:
                        continue
                    if s0 == 0:
                        continue
                    tgt = F.div(coef[i, 1:], s0)
                else:
                    tgt = coef[i]
                uf.union(int(i), idx[tuple(int(x) for x in tgt)])


def _orbits_search(R, F, theta0, W, points, mode, budget, uf) -> int:
    n = R.dim
    z = np.zeros(n + 1, dtype=np.int64)
    z[n] = 1
    exts = []
    for s in points:
        v = F.add(theta0, F.matmul(np.array(s, dtype=np.int64), W)) if len(W) else theta0
        exts.append(build_extension(R, Cochain2.from_vector(F, n, v), check=False))
    reps = []
    undecided = 0
    for i, K in enumerate(exts):
        for r in reps:
            if mode == "exact":
                res = decide_iso(exts[r], K, budget=budget, fixed=[(z, z)])
            else:
                res = decide_iso(exts[r], K, budget=budget, marks=[([z], [z])])
            if res.verdict == "yes":
                uf.union(r, i)
                break
            if res.verdict != "no":
                undecided += 1
        else:
            reps.append(i)
    return undecided


# ---------------------------------------------------------------------------
@dataclass
class LemmaResult:
    lemma: str
    field: str
    params: dict
    pairs: int
    mismatches: list
    orbits: int
    method: str

    @property
    def ok(self):
        return not self.mismatches

    def to_json(self):
        return {"lemma": self.lemma, "field": self.field, "params": self.params, "pairs": self.pairs,
                "mismatches": self.mismatches[:20], "mismatch_count": len(self.mismatches),
                "orbits": self.orbits, "method": self.method}


def check_orbit_lemma(lemma, F: FieldSpec, budget: int | None = None, mode: str = "exact",
                      restricted: bool = True) -> list:
    """All pairs (a, b) in F* x F*: same orbit of phi + a f_slot and phi + b f_slot
    versus the printed condition on b / a.  One result per base-parameter value."""
    from .catalog import base_restricted, condition_holds, domain_values
    out = []
    names = sorted(lemma.params)
    for combo in itertools.product(*[domain_values(F, lemma.params[k]) for k in names]):
        values = dict(zip(names, combo))
        R = base_restricted(lemma.base, lemma.pmap, F, values)
        n = R.dim
        theta = Cochain2.from_terms(F, n, lemma.phi, lemma.extra)
        w = np.zeros(n, dtype=np.int64)
        w[lemma.slot - 1] = 1
        try:
            fam = family_for(lemma.base)
        except KeyError:
            fam = None
        res = orbits_on_slice(R, fam, theta, [w], mode=mode, budget=budget,
                              method="auto" if restricted else "enumerate", restricted=restricted)
        bad = []
        pairs = 0
        for a in range(1, F.q):
            for b in range(1, F.q):
                pairs += 1
                got = res.same((a,), (b,))
                want = condition_holds(F, lemma.condition, a, b)
                if got != want:
                    bad.append({"a": a, "b": b, "computed": got, "printed": want})
        out.append(LemmaResult(lemma.lid, str(F), {k: int(v) for k, v in values.items()}, pairs, bad,
                               len(res.reps), res.method))
    return out
