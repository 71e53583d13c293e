"""Exact winner determination by backward induction on the full game tree.

States are (cop multiset, robber vertex, side to move): cop identity never
matters for the game value, so configurations are canonicalized to sorted
index tuples, dividing the space by up to k!.  The fixed point is computed
attractor-style with per-component safe-move counters, so each state is
settled exactly once:

* a cops-to-move state wins when some joint move captures or reaches a
  settled robber-to-move state;
* all robber-to-move states sharing one cop-free component settle together,
  when their last safe destination disappears.

Settling order doubles as a progress measure: along table-optimal cop play
the order strictly decreases every half-move, which bounds capture time and
makes witness replay terminate.  The computation is one sequential pass;
results are deterministic.
"""
from __future__ import annotations

import time
from array import array
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations_with_replacement, product
from math import comb

from .engine import CopStrategy, RobberStrategy, run_match
from .errors import ResourceLimitError, StrategyFault
from .grid import GraphSpec, lattice

__all__ = ["SolveResult", "CopNumberResult", "solve_game", "cop_number", "extract_policies"]

DEFAULT_STATE_CAP = 100_000_000


@dataclass
class _Table:
    """Solved game table for one (graph, k) instance."""

    graph: GraphSpec
    k: int
    configs: list
    cfg_index: dict
    nbhd: list  # closed neighborhood index lists, per vertex
    cop_win: list  # bytearray per config, indexed by robber vertex
    cop_rank: list  # settle order per (config, robber vertex)
    comp_id: list
    comp_members: list
    transitions: int = 0

    def config_of(self, cops):
        return tuple(sorted(self.graph.index(c) for c in cops))


@dataclass
class SolveResult:
    graph: GraphSpec
    k: int
    cops_win: bool
    witness_placement: tuple | None
    states_explored: int
    transitions: int
    elapsed: float
    table: _Table = field(repr=False, default=None)


@dataclass
class CopNumberResult:
    graph: GraphSpec
    k_max: int
    cop_number: int | None
    witness_placement: tuple | None
    states_explored: int
    transitions: int
    elapsed: float
    per_k: list = field(default_factory=list, repr=False)


def _state_estimate(vertex_count: int, k: int) -> int:
    return comb(vertex_count + k - 1, k) * vertex_count * 2


def solve_game(g: GraphSpec, k: int, cap: int = DEFAULT_STATE_CAP, verify_witness: bool = True) -> SolveResult:
    """Decide whether k cops capture an infinitely fast robber on g.

    When the cops win, witness_placement is the first (lexicographic)
    winning initial configuration, checked by replaying the table-optimal
    cop policy against the table-optimal robber from that placement.
    """
    start = time.perf_counter()
    n_vertices = g.vertex_count
    if k == 0:
        return SolveResult(g, 0, n_vertices == 0, None, 0, 0, time.perf_counter() - start)
    estimate = _state_estimate(n_vertices, k)
    if estimate > cap:
        raise ResourceLimitError(
            f"state estimate {estimate} exceeds cap {cap} for k={k}", estimate=estimate, cap=cap
        )

    lat = lattice(g)
    nbhd = []
    for i in range(n_vertices):
        v = g.vertex_at(i)
        nbhd.append(sorted([i] + [g.index(w) for w in g.neighbors(v)]))

    configs = list(combinations_with_replacement(range(n_vertices), k))
    cfg_index = {c: i for i, c in enumerate(configs)}
    n_cfg = len(configs)

    comp_id = []
    comp_members = []
    safe_count = []
    for cfg in configs:
        blocked = 0
        for i in cfg:
            blocked |= 1 << i
        ids = [-1] * n_vertices
        members = []
        for comp in lat.components(blocked):
            mem = []
            m = comp
            while m:
                low = m & -m
                idx = low.bit_length() - 1
                ids[idx] = len(members)
                mem.append(idx)
                m ^= low
            members.append(mem)
        comp_id.append(ids)
        comp_members.append(members)
        safe_count.append([len(m) for m in members])

    cop_win = [bytearray(n_vertices) for _ in range(n_cfg)]
    cop_rank = [array("l", [0] * n_vertices) for _ in range(n_cfg)]

    succ_cache = [None] * n_cfg

    def succs(ci):
        cached = succ_cache[ci]
        if cached is None:
            out = set()
            for joint in product(*(nbhd[v] for v in configs[ci])):
                out.add(cfg_index[tuple(sorted(joint))])
            cached = sorted(out)
            succ_cache[ci] = cached
        return cached

    queue = deque()
    for ci, cfg in enumerate(configs):
        for r in set(cfg):
            queue.append((ci, r))

    order = 0
    transitions = 0
    while queue:
        ci, r = queue.popleft()
        # joint moves are reversible, so predecessors of a configuration
        # are exactly its successors
        for pi in succs(ci):
            transitions += 1
            row = cop_win[pi]
            if row[r]:
                continue
            row[r] = 1
            order += 1
            cop_rank[pi][r] = order
            cid = comp_id[pi][r]
            if cid >= 0:
                safe_count[pi][cid] -= 1
                if safe_count[pi][cid] == 0:
                    for r2 in comp_members[pi][cid]:
                        queue.append((pi, r2))

    witness_ci = None
    for ci, cfg in enumerate(configs):
        occupied = set(cfg)
        row = cop_win[ci]
        if all(row[r] for r in range(n_vertices) if r not in occupied):
            witness_ci = ci
            break

    table = _Table(
        graph=g,
        k=k,
        configs=configs,
        cfg_index=cfg_index,
        nbhd=nbhd,
        cop_win=cop_win,
        cop_rank=cop_rank,
        comp_id=comp_id,
        comp_members=comp_members,
        transitions=transitions,
    )
    witness = None
    if witness_ci is not None:
        witness = tuple(g.vertex_at(i) for i in configs[witness_ci])

    result = SolveResult(
        graph=g,
        k=k,
        cops_win=witness_ci is not None,
        witness_placement=witness,
        states_explored=2 * n_cfg * n_vertices,
        transitions=transitions,
        elapsed=time.perf_counter() - start,
        table=table,
    )
    if result.cops_win and verify_witness:
        _verify_witness(result)
        result.elapsed = time.perf_counter() - start
    return result


def _verify_witness(result: SolveResult):
    cop_policy, robber_policy = extract_policies(result)
    limit = result.states_explored + 4
    trace = run_match(
        result.graph, cop_policy, robber_policy, result.k, max_rounds=limit, record_events=False
    )
    if trace.outcome != "capture":
        raise AssertionError(
            f"witness replay failed: {trace.outcome} from {result.witness_placement}"
        )


def cop_number(g: GraphSpec, k_max: int | None = None, cap: int = DEFAULT_STATE_CAP,
               verify_witness: bool = True) -> CopNumberResult:
    """Smallest k <= k_max winning for the cops, or None if none does.

    Searches upward from k=1 (cop ability is monotone in k, so the first
    win is the cop number).  k_max defaults to the vertex count, which
    always suffices.
    """
    start = time.perf_counter()
    if k_max is None:
        k_max = g.vertex_count
    states = transitions = 0
    per_k = []
    answer = None
    witness = None
    for k in range(1, k_max + 1):
        res = solve_game(g, k, cap=cap, verify_witness=verify_witness)
        per_k.append(res)
        states += res.states_explored
        transitions += res.transitions
        if res.cops_win:
            answer = k
            witness = res.witness_placement
            break
    return CopNumberResult(
        graph=g,
        k_max=k_max,
        cop_number=answer,
        witness_placement=witness,
        states_explored=states,
        transitions=transitions,
        elapsed=time.perf_counter() - start,
        per_k=per_k,
    )


# --------------------------------------------------------------------------
# Policies read off the solved table
# --------------------------------------------------------------------------


class TableCops(CopStrategy):
    """Plays the solved table: capture now if possible, otherwise the joint
    move whose successor robber-state settled earliest (ties: first in the
    lexicographic joint-move enumeration).  Falls back to standing still
    from losing states."""

    name = "table-optimal-cops"

    def __init__(self, table: _Table):
        super().__init__()
        self.table = table

    def place(self, graph, k):
        t = self.table
        for ci, cfg in enumerate(t.configs):
            occupied = set(cfg)
            if all(t.cop_win[ci][r] for r in range(graph.vertex_count) if r not in occupied):
                return [graph.vertex_at(i) for i in cfg]
        return [graph.vertex_at(i) for i in t.configs[0]]

    def move(self, state):
        t = self.table
        g = state.graph
        r = g.index(state.robber)
        best = None
        best_key = None
        for joint in product(*(t.nbhd[g.index(c)] for c in state.cops)):
            if r in joint:
                best = joint  # immediate capture
                break
            ci = t.cfg_index[tuple(sorted(joint))]
            if t.cop_win[ci][r]:
                cid = t.comp_id[ci][r]
                # settle order of the successor robber-state: the flip
                # order of its component is the max settle order inside
                key = max(t.cop_rank[ci][r2] for r2 in t.comp_members[ci][cid])
                if best_key is None or key < best_key:
                    best, best_key = joint, key
        if best is None:
            return list(state.cops)
        return [g.vertex_at(i) for i in best]


class TableRobber(RobberStrategy):
    """Plays the solved table: any surviving destination (first in index
    order), otherwise the destination that settled last (slowest loss)."""

    name = "table-optimal-robber"

    def __init__(self, table: _Table):
        super().__init__()
        self.table = table

    def _pick(self, cfg_i, options):
        t = self.table
        surviving = [r for r in options if not t.cop_win[cfg_i][r]]
        if surviving:
            return min(surviving)
        return max(options, key=lambda r: (t.cop_rank[cfg_i][r], -r))

    def place(self, graph, cops):
        t = self.table
        ci = t.cfg_index[t.config_of(cops)]
        occupied = {graph.index(c) for c in cops}
        options = [r for r in range(graph.vertex_count) if r not in occupied]
        if not options:
            raise StrategyFault("no free vertex", side="robber")
        return graph.vertex_at(self._pick(ci, options))

    def move(self, state):
        t = self.table
        g = state.graph
        ci = t.cfg_index[t.config_of(state.cops)]
        r = g.index(state.robber)
        options = t.comp_members[ci][t.comp_id[ci][r]]
        return g.vertex_at(self._pick(ci, options))


def extract_policies(result: SolveResult):
    """Table-optimal cop and robber strategies for a solved instance."""
    if result.table is None:
        raise ValueError("solve result carries no table (k=0?)")
    return TableCops(result.table), TableRobber(result.table)
