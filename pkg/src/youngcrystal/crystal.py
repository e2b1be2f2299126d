"""The glued crystal operator on B(n) and the crystal graphs on B_r(n).

``F`` is built recursively: the top operator acts through the operator on
B(n-2) applied to the middle entries, the bottom operator walks the seed's
paths, and the gauge ``A(t)`` decides which one applies.  Base cases are
B(0) (F = 0) and B(1) (F<a> = <a+1>).

All operators work on ``(N, n)`` integer arrays; the ``f``/``e``/``gauge_A``
functions on single tableaux are thin wrappers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping

import numpy as np

from . import chains
from .chains import SeedSpec, builtin_seed
from .report import Report
from .tableaux import Tableau, binom_table, colex_rank, tableau_array, wt2


def _middle(arr: np.ndarray) -> np.ndarray:
    n = arr.shape[1]
    return arr[:, 1:n - 1] - (arr[:, :1] + 1)


def _reinsert(arr: np.ndarray, mid: np.ndarray) -> np.ndarray:
    return np.concatenate([arr[:, :1], mid + arr[:, :1] + 1, arr[:, -1:]], axis=1)


class _PhiTable:
    """phi_R(u) for every u in B_R(k): F-steps from u that stay in B_R(k).

    Filled by walking the operator backwards level by level (F raises the
    entry sum by one), so each value is the length of an actual F-iteration.
    """

    def __init__(self, op: CrystalOperator, r_max: int):
        self.r_max = r_max
        k = op.n
        nodes = tableau_array(k, r_max).astype(np.int64)
        self.binom = binom_table(r_max + 2, k)
        rank = colex_rank(nodes, self.binom)
        self.pos = np.empty(len(nodes), dtype=np.int64)
        self.pos[rank] = np.arange(len(nodes))
        nxt, ok = op.f_batch(nodes)
        largest = nxt[:, -1] if k else np.zeros(len(nodes), dtype=np.int64)
        ok = ok & (largest <= r_max)
        fidx = np.full(len(nodes), -1, dtype=np.int64)
        if ok.any():
            fidx[ok] = self.pos[colex_rank(nxt[ok], self.binom)]
        own = nodes[:, -1] if k else np.zeros(len(nodes), dtype=np.int64)
        grid = np.arange(r_max + 1)[None, :]
        table = np.zeros((len(nodes), r_max + 1), dtype=np.int32)
        sums = nodes.sum(axis=1)
        for s in np.unique(sums)[::-1]:
            rows = np.nonzero((sums == s) & ok)[0]
            if rows.size == 0:
                continue
            reach = grid >= largest[rows, None]
            table[rows] = np.where(reach, 1 + table[fidx[rows]], 0)
        table[grid < own[:, None]] = 0
        self.table = table

    def lookup(self, u: np.ndarray, bound: np.ndarray) -> np.ndarray:
        if u.shape[0] == 0:
            return np.zeros(0, dtype=np.int64)
        idx = self.pos[colex_rank(u, self.binom)]
        return self.table[idx, bound].astype(np.int64)


@dataclass(eq=False)
class CrystalOperator:
    """The operator F on B(n) for one seed (and recursively one for B(n-2))."""

    n: int
    seed: SeedSpec | None = None
    sub: CrystalOperator | None = None
    _phi: _PhiTable | None = field(default=None, repr=False)

    # -- construction ----------------------------------------------------------

    @classmethod
    def for_n(cls, n: int, seeds: Mapping[int, SeedSpec] | None = None) -> CrystalOperator:
        """Operator on B(n) using ``seeds[k]`` where given and builtin seeds otherwise."""
        seeds = dict(seeds or {})
        if n < 0:
            raise ValueError("n must be nonnegative")
        if n <= 1:
            return cls(n)
        seed = seeds.get(n) or builtin_seed(n)
        if seed.n != n:
            raise ValueError(f"seed for n={seed.n} given for n={n}")
        return cls(n, seed, cls.for_n(n - 2, seeds))

    # -- batch operators ---------------------------------------------------------

    def f_bot_batch(self, arr, loc=None):
        return chains.f_bot_batch(self.seed, arr, loc)

    def f_top_batch(self, arr: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        arr = np.asarray(arr, dtype=np.int64)
        if self.n <= 2:
            return arr.copy(), np.zeros(arr.shape[0], dtype=bool)
        mid, ok = self.sub.f_batch(_middle(arr))
        out = _reinsert(arr, mid)
        ok = ok & (out[:, -2] < out[:, -1])
        return out, ok

    def e_top_batch(self, arr: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        arr = np.asarray(arr, dtype=np.int64)
        if self.n <= 2:
            return arr.copy(), np.zeros(arr.shape[0], dtype=bool)
        mid, ok = self.sub.e_batch(_middle(arr))
        return _reinsert(arr, mid), ok

    def phi_within(self, arr: np.ndarray, bound: np.ndarray) -> np.ndarray:
        """Number of F steps from each row that stay inside B_bound(n)."""
        arr = np.asarray(arr, dtype=np.int64)
        if self.n == 0 or arr.shape[0] == 0:
            return np.zeros(arr.shape[0], dtype=np.int64)
        need = int(bound.max())
        if self._phi is None or self._phi.r_max < need:
            grow = max(need, 2 * self._phi.r_max if self._phi else 0, 8)
            self._phi = _PhiTable(self, grow)
        return self._phi.lookup(arr, bound)

    def gauge_batch(self, arr: np.ndarray, loc=None) -> np.ndarray:
        """A(t) = phi_bot_local(t) - phi_R(t_down) + n a_n with R = a_1 - a_n - 2.

        R is the largest value a middle entry of t_down can take, so that
        phi_R(t_down) counts exactly the top steps left inside B(n).
        """
        if self.n < 2:
            raise ValueError("the gauge is defined for n >= 2")
        arr = np.asarray(arr, dtype=np.int64)
        loc = loc or chains.locate(self.seed, arr)
        local = chains.phi_bot_local_batch(self.seed, arr, loc)
        bound = arr[:, -1] - arr[:, 0] - 2
        sub_phi = self.sub.phi_within(_middle(arr), bound)
        return local - sub_phi + self.n * arr[:, 0]

    def f_batch(self, arr: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        arr = np.asarray(arr, dtype=np.int64)
        if self.n == 0:
            return arr.copy(), np.zeros(arr.shape[0], dtype=bool)
        if self.n == 1:
            return arr + 1, np.ones(arr.shape[0], dtype=bool)
        loc = chains.locate(self.seed, arr)
        out, ok = self.f_bot_batch(arr, loc)
        top = self.gauge_batch(arr, loc) < 0
        if top.any():
            tout, tok = self.f_top_batch(arr[top])
            out[top] = tout
            ok[top] = tok
        return out, ok

    def e_batch(self, arr: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Inverse of F where defined: try both candidate predecessors."""
        arr = np.asarray(arr, dtype=np.int64)
        if self.n == 0:
            return arr.copy(), np.zeros(arr.shape[0], dtype=bool)
        if self.n == 1:
            return arr - 1, arr[:, 0] > 0
        bot, bok = chains.e_bot_batch(self.seed, arr)
        top, tok = self.e_top_batch(arr)
        out = arr.copy()
        ok = np.zeros(arr.shape[0], dtype=bool)
        for cand, cok in ((top, tok), (bot, bok)):
            if not cok.any():
                continue
            img, iok = self.f_batch(cand[cok])
            back = iok & np.all(img == arr[cok], axis=1)
            hit = np.zeros_like(ok)
            hit[np.nonzero(cok)[0][back]] = True
            out[hit] = cand[hit]
            ok |= hit
        return out, ok

    # -- scalar wrappers --------------------------------------------------------------

    def _one(self, fn, t: Tableau):
        if t.n != self.n:
            raise ValueError(f"operator is for n={self.n}, tableau {t} has n={t.n}")
        out, ok = fn(np.array([t.entries], dtype=np.int64).reshape(1, self.n))
        return Tableau(tuple(int(x) for x in out[0])) if ok[0] else None

    def f(self, t: Tableau) -> Tableau | None:
        return self._one(self.f_batch, t)

    def e(self, t: Tableau) -> Tableau | None:
        return self._one(self.e_batch, t)

    def f_top(self, t: Tableau) -> Tableau | None:
        return self._one(self.f_top_batch, t)

    def f_bot(self, t: Tableau) -> Tableau:
        return chains.f_bot(self.seed, t)

    def gauge_A(self, t: Tableau) -> int:
        return int(self.gauge_batch(np.array([t.entries], dtype=np.int64))[0])


_OPERATORS: dict[int, CrystalOperator] = {}


def operator(n: int, seed: SeedSpec | None = None) -> CrystalOperator:
    """Operator for B(n); builtin-seeded operators are cached."""
    if seed is not None:
        return CrystalOperator.for_n(n, {n: seed})
    if n not in _OPERATORS:
        _OPERATORS[n] = CrystalOperator.for_n(n)
    return _OPERATORS[n]


def f_top(t: Tableau, seed: SeedSpec | None = None) -> Tableau | None:
    return operator(t.n, seed).f_top(t)


def f(t: Tableau, seed: SeedSpec | None = None) -> Tableau | None:
    return operator(t.n, seed).f(t)


def e(t: Tableau, seed: SeedSpec | None = None) -> Tableau | None:
    return operator(t.n, seed).e(t)


def gauge_A(t: Tableau, seed: SeedSpec | None = None) -> int:
    return operator(t.n, seed).gauge_A(t)


# -- closed forms (oracles) -----------------------------------------------------

def gauge_closed(t: Tableau) -> int:
    """The gauge as printed for n = 2, 3, 4."""
    if t.n == 2:
        b, a = t.entries
        return 2 * b + int((a - b) % 2 == 0)
    local = chains.phi_bot_local_closed(t)
    if t.n == 3:
        c, b, a = t.entries
        return local - (a - b - 1) + 3 * c
    if t.n == 4:
        d, c, b, a = t.entries
        return local - 2 * (a - b - 1) - int((b - c) % 2 == 0) + 4 * d
    raise ValueError(f"no closed form for n={t.n}")


# -- crystal graphs ------------------------------------------------------------

@dataclass(eq=False)
class CrystalGraph:
    """F restricted to B_r(n): nodes in lexicographic order, ``succ[i]`` or -1."""

    n: int
    r: int
    nodes: np.ndarray
    succ: np.ndarray
    op: CrystalOperator | None = field(default=None, repr=False)

    def __len__(self) -> int:
        return self.nodes.shape[0]

    def tableau(self, i: int) -> Tableau:
        return Tableau(tuple(int(x) for x in self.nodes[i]))

    def index(self, t: Tableau) -> int:
        tab = binom_table(self.r + 2, self.n)
        rank = colex_rank(np.array([t.entries], dtype=np.int64).reshape(1, self.n), tab)[0]
        return int(self._colex_pos[rank])

    @cached_property
    def _colex_pos(self) -> np.ndarray:
        rank = colex_rank(self.nodes, binom_table(self.r + 2, self.n))
        pos = np.empty(len(self), dtype=np.int64)
        pos[rank] = np.arange(len(self))
        return pos

    @cached_property
    def wt2(self) -> np.ndarray:
        """Twice the weight of each node."""
        return self.n * self.r - 2 * self.nodes.sum(axis=1).astype(np.int64)

    @cached_property
    def in_degree(self) -> np.ndarray:
        deg = np.zeros(len(self), dtype=np.int64)
        np.add.at(deg, self.succ[self.succ >= 0], 1)
        return deg

    @cached_property
    def pred(self) -> np.ndarray:
        p = np.full(len(self), -1, dtype=np.int64)
        src = np.nonzero(self.succ >= 0)[0]
        p[self.succ[src]] = src
        return p

    @cached_property
    def is_hw(self) -> np.ndarray:
        return self.in_degree == 0

    @cached_property
    def _walk(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(component id, position from the head, component length) per node.

        Components are numbered in order of their highest-weight node.  Nodes
        not reachable from a head (only possible on cycles) get component -1.
        """
        heads = np.nonzero(self.is_hw)[0]
        comp = np.full(len(self), -1, dtype=np.int64)
        pos = np.full(len(self), -1, dtype=np.int64)
        frontier = heads
        cid = np.arange(len(heads), dtype=np.int64)
        step = 0
        while frontier.size:
            fresh = comp[frontier] == -1
            frontier, cid = frontier[fresh], cid[fresh]
            comp[frontier] = cid
            pos[frontier] = step
            nxt = self.succ[frontier]
            keep = nxt >= 0
            frontier, cid = nxt[keep], cid[keep]
            step += 1
        length = np.bincount(comp[comp >= 0], minlength=len(heads))
        return comp, pos, length

    @property
    def component(self) -> np.ndarray:
        return self._walk[0]

    def component_sizes(self) -> list[int]:
        return self._walk[2].tolist()

    def phi(self) -> np.ndarray:
        comp, pos, length = self._walk
        return np.where(comp >= 0, length[np.maximum(comp, 0)] - 1 - pos, -1)

    def epsilon(self) -> np.ndarray:
        return self._walk[1]

    def components(self) -> list[list[int]]:
        """Node indices of each component, listed from the highest-weight node."""
        comp, pos, _ = self._walk
        order = np.lexsort((pos, comp))
        order = order[comp[order] >= 0]
        cuts = np.nonzero(np.diff(comp[order]))[0] + 1
        return [c.tolist() for c in np.split(order, cuts)] if order.size else []

    def hw_tableaux(self) -> list[Tableau]:
        return [self.tableau(i) for i in np.nonzero(self.is_hw)[0]]

    def weight_poly(self):
        from .qchar import CenteredPoly

        vals, counts = np.unique(self.wt2, return_counts=True)
        return CenteredPoly({int(v): int(c) for v, c in zip(vals, counts)})

    def without_arc(self, i: int) -> CrystalGraph:
        succ = self.succ.copy()
        succ[i] = -1
        return CrystalGraph(self.n, self.r, self.nodes, succ, self.op)

    # -- exports ------------------------------------------------------------------

    def to_dot(self, color: bool = False) -> str:
        palette = ["#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#666666"]
        comp = self.component
        lines = [f"digraph crystal_n{self.n}_r{self.r} {{", "  node [shape=box];"]
        for i in range(len(self)):
            label = str(self.tableau(i)) + "\\nwt=" + _fmt_wt(int(self.wt2[i]))
            attr = f'label="{label}"'
            if color and comp[i] >= 0:
                attr += f', color="{palette[comp[i] % len(palette)]}"'
            lines.append(f"  n{i} [{attr}];")
        for i in np.nonzero(self.succ >= 0)[0]:
            lines.append(f"  n{i} -> n{self.succ[i]};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        comp = self.component
        nodes = []
        for i in range(len(self)):
            s = int(self.succ[i])
            nodes.append({
                "entries": self.nodes[i].tolist(),
                "wt": _json_wt(int(self.wt2[i])),
                "succ_index": s if s >= 0 else None,
                "component": int(comp[i]),
                "is_hw": bool(self.is_hw[i]),
            })
        return json.dumps({"n": self.n, "r": self.r, "nodes": nodes}, ensure_ascii=False) + "\n"


def _fmt_wt(w2: int) -> str:
    return str(w2 // 2) if w2 % 2 == 0 else f"{w2}/2"


def _json_wt(w2: int):
    return w2 // 2 if w2 % 2 == 0 else w2 / 2


def build(n: int, r: int, seed: SeedSpec | None = None, op: CrystalOperator | None = None) -> CrystalGraph:
    """The crystal graph of F_r on B_r(n): arcs t -> F(t) whenever F(t) stays in B_r(n)."""
    op = op or operator(n, seed)
    nodes = tableau_array(n, r, dtype=np.int64)
    succ = np.full(nodes.shape[0], -1, dtype=np.int64)
    if n and nodes.shape[0]:
        out, ok = op.f_batch(nodes)
        ok &= out[:, -1] <= r
        g = CrystalGraph(n, r, nodes, succ, op)
        if ok.any():
            succ[ok] = g._colex_pos[colex_rank(out[ok], binom_table(r + 2, n))]
        return g
    return CrystalGraph(n, r, nodes, succ, op)


def verify_axioms(g: CrystalGraph, max_witnesses: int = 20) -> Report:
    """C0 (injective), C2 (weight drops by one), C1 (phi = eps + 2 wt) on every node."""
    rep = Report(f"axioms n={g.n} r={g.r}")
    src = np.nonzero(g.succ >= 0)[0]
    dup = np.nonzero(g.in_degree > 1)[0]
    for i in dup[:max_witnesses]:
        rep.counterexample({"axiom": "C0", "target": g.nodes[i].tolist()})
    bad = src[g.wt2[g.succ[src]] != g.wt2[src] - 2]
    for i in bad[:max_witnesses]:
        rep.counterexample({"axiom": "C2", "node": g.nodes[i].tolist()})
    comp = g.component
    lost = np.nonzero(comp < 0)[0]
    for i in lost[:max_witnesses]:
        rep.counterexample({"axiom": "C0", "node": g.nodes[i].tolist(), "problem": "on a cycle"})
    phi, eps = g.phi(), g.epsilon()
    c1 = np.nonzero((comp >= 0) & (phi != eps + g.wt2))[0]
    for i in c1[:max_witnesses]:
        rep.counterexample({
            "axiom": "C1", "node": g.nodes[i].tolist(),
            "phi": int(phi[i]), "eps": int(eps[i]), "wt2": int(g.wt2[i]),
        })
    rep.details.update(nodes=len(g), arcs=int(src.size), components=int(g.is_hw.sum()))
    return rep


def verify_problem2(seed: SeedSpec, n: int, r_max: int, max_witnesses: int = 20) -> Report:
    """Every highest-weight tableau (E.t = 0) has A(t) <= 0."""
    rep = Report(f"problem2 n={n} r_max={r_max}")
    op = CrystalOperator.for_n(n, {n: seed})
    arr = tableau_array(n, r_max, dtype=np.int64)
    _, has_pred = op.e_batch(arr)
    gauge = op.gauge_batch(arr)
    _, has_bot_pred = chains.e_bot_batch(seed, arr)
    bad = ~has_pred & (gauge > 0)
    for row, a in zip(arr[bad][:max_witnesses].tolist(), gauge[bad][:max_witnesses].tolist()):
        rep.counterexample({"tableau": row, "A": a})
    rep.details.update(
        highest_weight=int((~has_pred).sum()),
        highest_weight_bottom_initial=int((~has_pred & ~has_bot_pred).sum()),
    )
    return rep


def verify_problem3(seed: SeedSpec, n: int, r_max: int, max_witnesses: int = 20) -> Report:
    """If A(t) < 0 <= A(F t) then A(F t) = 0 < A(F^k t) for k >= 2.

    k is followed until the chain leaves B_{r_max}(n); that cap is recorded.
    """
    rep = Report(f"problem3 n={n} r_max={r_max}")
    op = CrystalOperator.for_n(n, {n: seed})
    arr = tableau_array(n, r_max, dtype=np.int64)
    gauge = op.gauge_batch(arr)
    img, ok = op.f_batch(arr)
    ok &= img[:, -1] <= r_max
    gimg = np.zeros_like(gauge)
    gimg[ok] = op.gauge_batch(img[ok])
    cross = ok & (gauge < 0) & (gimg >= 0)
    for row in arr[cross & (gimg != 0)][:max_witnesses].tolist():
        rep.counterexample({"tableau": row, "problem": "A(F t) != 0"})
    cur = img[cross & (gimg == 0)]
    start = arr[cross & (gimg == 0)]
    k = 1
    while cur.shape[0]:
        cur, ok = op.f_batch(cur)
        k += 1
        ok &= cur[:, -1] <= r_max
        cur, start = cur[ok], start[ok]
        if not cur.shape[0]:
            break
        g = op.gauge_batch(cur)
        for row in start[g <= 0][:max_witnesses].tolist():
            rep.counterexample({"tableau": row, "problem": f"A(F^{k} t) <= 0"})
    rep.details.update(crossings=int(cross.sum()), k_cap=k, vacuous=bool(not (gauge < 0).any()))
    return rep
