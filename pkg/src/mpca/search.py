"""Exhaustive backtracking enumeration of generic periodic Costas arrays.

Positions are filled in ascending mixed-radix index.  Position 0 is the
star and position 1 is pinned to the anchor value, which quotients out the
additive symmetry.  For every nonzero shift ``h`` a bitmask records the
value differences ``f(a + h) - f(a)`` realized so far; a repeated bit is a
distinct-difference violation and prunes the branch.
"""

from __future__ import annotations

import logging
import math
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import islice, permutations
from pathlib import Path
from typing import Callable, Iterator, List, Optional, Tuple

from . import groups
from .array import PeriodicArray, canonical_bytes, distinct_differences
from .groups import GroupSpec

log = logging.getLogger(__name__)

Sink = Callable[[PeriodicArray], None]


class SearchError(ValueError):
    pass


@dataclass(frozen=True)
class SearchConfig:
    spec: GroupSpec
    anchor: int = 0
    split_depth: int = 0
    task_index: Optional[int] = None

    def __post_init__(self):
        n = self.spec.modulus
        if not 0 <= self.anchor < n:
            raise SearchError(f"anchor {self.anchor} outside [0, {n})")
        if not 0 <= self.split_depth < n:
            raise SearchError(f"split depth {self.split_depth} must lie in [0, {n})")


class SearchState:
    """Partial assignment plus the per-shift difference ledger."""

    def __init__(self, spec: GroupSpec):
        self.spec = spec
        self.order = spec.order
        self.modulus = spec.modulus
        self.sub = groups.sub_table(spec)
        self.values = [-1] * self.order
        self.used = 0
        self.ledger = [0] * self.order
        self.filled = 1  # positions [1, filled) are assigned
        self.nodes = 0
        self._undo: List[List[Tuple[int, int]]] = []

    def push(self, v: int) -> bool:
        """Assign ``v`` to the next position; False (state unchanged) on collision."""
        a = self.filled
        if self.used >> v & 1:
            return False
        n = self.modulus
        row = self.sub[a]
        sub = self.sub
        ledger = self.ledger
        values = self.values
        undo = []
        for b in range(1, a):
            d = (v - values[b]) % n
            h = row[b]
            bit = 1 << d
            if ledger[h] & bit:
                break
            ledger[h] |= bit
            undo.append((h, bit))
            h = sub[b][a]
            bit = 1 << (n - d)
            if ledger[h] & bit:
                break
            ledger[h] |= bit
            undo.append((h, bit))
        else:
            values[a] = v
            self.used |= 1 << v
            self.filled = a + 1
            self._undo.append(undo)
            return True
        for h, bit in undo:
            ledger[h] ^= bit
        return False

    def pop(self) -> None:
        self.filled -= 1
        a = self.filled
        self.used ^= 1 << self.values[a]
        self.values[a] = -1
        for h, bit in self._undo.pop():
            self.ledger[h] ^= bit

    def complete(self) -> bool:
        return self.filled == self.order

    def to_array(self) -> PeriodicArray:
        vals = (None,) + tuple(self.values[1:])
        return PeriodicArray(self.spec, self.spec.zero, vals)

    def extend(self, on_leaf: Callable[["SearchState"], None], stop: Optional[int] = None) -> int:
        """Depth-first search below the current node; returns the leaf count.

        With ``stop`` set, leaves are partial assignments of ``stop`` positions.
        """
        limit = self.order if stop is None else stop
        if self.filled == limit:
            on_leaf(self)
            return 1
        self.nodes += 1
        count = 0
        for v in range(self.modulus):
            if self.push(v):
                count += self.extend(on_leaf, stop)
                self.pop()
        return count


def _anchored_state(cfg: SearchConfig) -> SearchState:
    state = SearchState(cfg.spec)
    state.push(cfg.anchor)
    return state


def prefixes(cfg: SearchConfig) -> List[Tuple[int, ...]]:
    """Ledger-feasible assignments of the first ``split_depth`` free positions, in lexicographic order."""
    state = _anchored_state(cfg)
    out = []
    state.extend(lambda s: out.append(tuple(s.values[2:s.filled])), stop=2 + cfg.split_depth)
    return out


def task_count(cfg: SearchConfig) -> int:
    return len(prefixes(cfg))


def _leaf_handler(sink: Optional[Sink]):
    if sink is None:
        return lambda s: None
    return lambda s: sink(s.to_array())


def enumerate_task(cfg: SearchConfig, sink: Optional[Sink] = None, state: Optional[SearchState] = None) -> int:
    """Explore the subtree under prefix ``cfg.task_index`` (default 0)."""
    t = cfg.task_index or 0
    pre = prefixes(cfg)
    if not 0 <= t < len(pre):
        raise SearchError(f"task {t} out of range; split depth {cfg.split_depth} gives {len(pre)} tasks")
    if state is None:
        state = _anchored_state(cfg)
    for v in pre[t]:
        if not state.push(v):
            raise AssertionError("stored prefix is infeasible")
    return state.extend(_leaf_handler(sink))


def enumerate_arrays(cfg: SearchConfig, sink: Optional[Sink] = None, state: Optional[SearchState] = None) -> int:
    """Anchored count of generic arrays, passing each to ``sink``.

    A config with a task index runs that task only; otherwise the whole tree
    is walked in one pass (identical to concatenating every task in order).
    """
    if cfg.task_index is not None:
        return enumerate_task(cfg, sink, state)
    if state is None:
        state = _anchored_state(cfg)
    return state.extend(_leaf_handler(sink))


def count_nodes(cfg: SearchConfig) -> Tuple[int, int]:
    """``(anchored count, internal nodes visited)`` for a full run."""
    state = _anchored_state(cfg)
    count = enumerate_arrays(SearchConfig(cfg.spec, cfg.anchor), None, state)
    return count, state.nodes


def _run_task(args) -> Tuple[int, int, int, List[bytes]]:
    cfg, collect = args
    out: List[bytes] = []
    state = _anchored_state(cfg)
    sink = (lambda arr: out.append(canonical_bytes(arr))) if collect else None
    count = enumerate_task(cfg, sink, state)
    return cfg.task_index, count, state.nodes, out


def default_workers() -> int:
    env = os.environ.get("MPCA_WORKERS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


class Checkpoint:
    """Plain-text resume file: one ``TASK t COUNT c NODES n`` line per finished task."""

    def __init__(self, path, cfg: SearchConfig):
        self.path = Path(path)
        self.header = f"# mpca enumerate group={','.join(map(str, cfg.spec.factors))} anchor={cfg.anchor} split={cfg.split_depth}"
        self.done = {}
        if self.path.exists():
            lines = self.path.read_text().splitlines()
            if not lines or lines[0] != self.header:
                raise SearchError(f"checkpoint {self.path} belongs to a different run")
            for line in lines[1:]:
                tok = line.split()
                if len(tok) == 6 and tok[0] == "TASK":
                    self.done[int(tok[1])] = (int(tok[3]), int(tok[5]))
        else:
            self.path.write_text(self.header + "\n")

    def record(self, t: int, count: int, nodes: int) -> None:
        self.done[t] = (count, nodes)
        with self.path.open("a") as fh:
            fh.write(f"TASK {t} COUNT {count} NODES {nodes}\n")


def enumerate_parallel(
    cfg: SearchConfig,
    workers: Optional[int] = None,
    collect: bool = True,
    checkpoint=None,
    on_task: Optional[Callable[[int, int, List[bytes]], None]] = None,
) -> Tuple[int, List[bytes]]:
    """Run every task at ``cfg.split_depth`` and merge by task index.

    Returns the anchored count and, with ``collect``, the canonical bytes of
    every array in task order.  ``on_task(t, count, arrays)`` fires in task
    order.  Tasks already listed in ``checkpoint`` are skipped.
    """
    workers = workers or default_workers()
    ntasks = task_count(cfg)
    ckpt = Checkpoint(checkpoint, cfg) if checkpoint else None
    todo = [t for t in range(ntasks) if not (ckpt and t in ckpt.done)]
    jobs = [(SearchConfig(cfg.spec, cfg.anchor, cfg.split_depth, t), collect) for t in todo]
    total = sum(c for c, _ in ckpt.done.values()) if ckpt else 0
    merged: List[bytes] = []

    def finish(result):
        nonlocal total
        t, count, nodes, arrays = result
        total += count
        merged.extend(arrays)
        if ckpt:
            ckpt.record(t, count, nodes)
        log.info("task %d/%d: %d arrays, %d nodes", t + 1, ntasks, count, nodes)
        if on_task:
            on_task(t, count, arrays)

    if workers <= 1 or len(jobs) <= 1:
        for job in jobs:
            finish(_run_task(job))
    else:
        with ProcessPoolExecutor(workers) as pool:
            for result in pool.map(_run_task, jobs):
                finish(result)
    return total, merged


def replay(spec: GroupSpec, values) -> bool:
    """Feed a complete assignment (index 1..order-1) through the ledger."""
    state = SearchState(spec)
    return all(state.push(v) for v in values)


def verify_incremental_consistency(spec: GroupSpec, trials: int, seed: int = 0) -> bool:
    """Ledger replay agrees with the full verifier on ``trials`` permutations.

    When ``trials`` covers every permutation the sweep is exhaustive.
    """
    if spec.order > 16:
        raise SearchError("consistency check is limited to order <= 16")
    n = spec.modulus
    if math.factorial(n) <= trials:
        perms: Iterator = permutations(range(n))
    else:
        rng = random.Random(seed)
        perms = (rng.sample(range(n), n) for _ in range(trials))
    for perm in islice(perms, trials):
        full = distinct_differences(spec, 0, (None,) + tuple(perm))
        if replay(spec, perm) != full:
            return False
    return True
