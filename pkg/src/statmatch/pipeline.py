"""Dataset-scale orchestration: pairing, method resolution, execution.

Every source item gets one target item and one concrete method, drawn
from a counter-based generator keyed per item, so the plan depends only
on (seed, item index) and never on processing order.  Execution may fan
out over worker processes; outputs are byte-identical for any worker
count because each assignment touches only its own files.

Generator contract (recorded in plan dumps, never silently changed):
``philox4x64`` is numpy's Philox bit generator with
``key = seed * 2**64 + item_index``.  Raw 64-bit words are consumed in
order: first the target index via rejection sampling (``w % n_t``,
rejecting ``w >= 2**64 - 2**64 % n_t``), then, only for the disjunctive
method, one word mapped to [0, 1) via ``(w >> 11) / 2**53`` and compared
``< p``.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import NamedTuple

import numpy as np

from .errors import EmptyDataset, OutputWriteError, StatmatchError
from .fdm import fdm_image
from .histmatch import hm_image
from .imgio import load_image, save_png
from .stats_core import EPSILON_DEFAULT

GENERATOR_NAME = "philox4x64"

IMAGE_SUFFIXES = (".png", ".jpg", ".jpeg")

METHOD_VARIANTS = ("fdm", "hm", "fdm-or-hm", "fdm-then-hm")
CONCRETE_METHODS = ("fdm", "hm", "fdm-then-hm")

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class DatasetRef:
    """Ordered, duplicate-free list of item identifiers (file paths).

    Items are kept in sorted order so filesystem enumeration order can
    never leak into results.
    """

    items: tuple[str, ...]

    def __post_init__(self):
        if len(self.items) == 0:
            raise EmptyDataset("dataset has no items")
        if len(set(self.items)) != len(self.items):
            raise ValueError("dataset contains duplicate items")
        object.__setattr__(self, "items", tuple(sorted(self.items)))

    @property
    def count(self) -> int:
        return len(self.items)

    @classmethod
    def from_paths(cls, paths) -> "DatasetRef":
        return cls(items=tuple(str(p) for p in paths))

    @classmethod
    def from_path(cls, root) -> "DatasetRef":
        """Single file, or recursive scan of a directory for png/jpg/jpeg."""
        root = Path(root)
        if root.is_file():
            return cls.from_paths([root])
        if not root.is_dir():
            raise EmptyDataset(f"{root}: no such file or directory")
        found = [
            p for p in root.rglob("*")
            if p.is_file() and p.suffix.lower() in IMAGE_SUFFIXES
        ]
        if not found:
            raise EmptyDataset(f"{root}: no .png/.jpg/.jpeg files found")
        return cls.from_paths(found)


@dataclass(frozen=True)
class Method:
    """Requested transform: one of ``fdm``, ``hm``, ``fdm-then-hm`` or the
    disjunctive ``fdm-or-hm`` which resolves per item to fdm with
    probability ``p``."""

    variant: str
    p: float = 0.5

    def __post_init__(self):
        if self.variant not in METHOD_VARIANTS:
            raise ValueError(f"unknown method {self.variant!r}, expected one of {METHOD_VARIANTS}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")


class Assignment(NamedTuple):
    source: str
    target: str
    method: str  # concrete: fdm | hm | fdm-then-hm


@dataclass(frozen=True)
class PairingPlan:
    """Seeded assignment of (source, target, concrete method) per source item."""

    seed: int
    generator: str
    p: float
    assignments: tuple[Assignment, ...]


def _item_words(seed: int, index: int):
    """Infinite stream of raw 64-bit words from the per-item generator."""
    bitgen = np.random.Philox(key=((seed & _MASK64) << 64) | index)
    while True:
        for w in bitgen.random_raw(4):
            yield int(w)


def _draw_index(words, n: int) -> int:
    # rejection sampling: exactly uniform over [0, n), no modulo bias
    span = 1 << 64
    limit = span - span % n
    while True:
        w = next(words)
        if w < limit:
            return w % n


def _draw_unit(words) -> float:
    # 53-bit uniform in [0, 1); never reaches 1.0, so p=1 selects always
    return (next(words) >> 11) * 2.0**-53


def _resolve_method(method: Method, words) -> str:
    if method.variant == "fdm-or-hm":
        return "fdm" if _draw_unit(words) < method.p else "hm"
    return method.variant


def _check_seed(seed: int) -> int:
    if not 0 <= seed <= _MASK64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return seed


def build_plan(source: DatasetRef, target: DatasetRef, method: Method, seed: int) -> PairingPlan:
    """Pair every source item with a uniformly drawn target item.

    Targets are drawn with replacement, independently per source item, so
    the plan is a pure function of (seed, source list, target list,
    method) regardless of execution order or parallelism.
    """
    _check_seed(seed)
    if source.count == 0 or target.count == 0:
        raise EmptyDataset("cannot plan over an empty dataset")
    assignments = []
    for i, src in enumerate(source.items):
        words = _item_words(seed, i)
        tgt = target.items[_draw_index(words, target.count)]
        assignments.append(Assignment(src, tgt, _resolve_method(method, words)))
    return PairingPlan(seed=seed, generator=GENERATOR_NAME, p=method.p,
                       assignments=tuple(assignments))


def plan_from_manifest(pairs, method: Method, seed: int) -> PairingPlan:
    """Plan over explicit (source, target) pairs; only the disjunctive
    method draw consumes randomness (first word of each item stream)."""
    _check_seed(seed)
    pairs = list(pairs)
    if not pairs:
        raise EmptyDataset("manifest contains no pairs")
    assignments = []
    for i, (src, tgt) in enumerate(pairs):
        words = _item_words(seed, i)
        assignments.append(Assignment(str(src), str(tgt), _resolve_method(method, words)))
    return PairingPlan(seed=seed, generator=GENERATOR_NAME, p=method.p,
                       assignments=tuple(assignments))


def read_manifest(path) -> list[tuple[str, str]]:
    """Parse a pairing manifest: one `source_path,target_path` per line,
    `#` comments and blank lines ignored."""
    pairs = []
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "," not in line:
            raise ValueError(f"{path}:{lineno}: expected 'source_path,target_path'")
        src, tgt = line.split(",", 1)
        pairs.append((src.strip(), tgt.strip()))
    return pairs


def dump_plan(plan: PairingPlan, path) -> None:
    """Write a plan as line-oriented UTF-8 text (tab-separated, one header)."""
    lines = [f"# seed={plan.seed} generator={plan.generator} p={plan.p}"]
    for a in plan.assignments:
        lines.append(f"{a.source}\t{a.target}\t{a.method}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def transform_pair(x_s, x_t, method: str, epsilon: float = EPSILON_DEFAULT,
                   clamp: bool = True) -> np.ndarray:
    """Apply one concrete method to an image pair.

    ``fdm-then-hm`` quantizes the FDM stage with clamping before handing
    the intermediate to HM (HM is defined on 8-bit data), target image
    identical for both stages.
    """
    if method == "fdm":
        return fdm_image(x_s, x_t, epsilon, clamp)[0]
    if method == "hm":
        return hm_image(x_s, x_t)
    if method == "fdm-then-hm":
        intermediate = fdm_image(x_s, x_t, epsilon, clamp=True)[0]
        return hm_image(intermediate, x_t)
    raise ValueError(f"unknown concrete method {method!r}")


@dataclass(frozen=True)
class ItemResult:
    source: str
    target: str
    method: str
    output: str | None
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


@dataclass(frozen=True)
class RunReport:
    items: tuple[ItemResult, ...]
    method_counts: dict[str, int]
    wall_time_s: float
    out_dir: str

    @property
    def success_count(self) -> int:
        return sum(1 for r in self.items if r.ok)

    @property
    def failure_count(self) -> int:
        return sum(1 for r in self.items if not r.ok)


def _run_assignment(args) -> ItemResult:
    assignment, out_path, epsilon, clamp = args
    try:
        x_s = load_image(assignment.source)
        x_t = load_image(assignment.target)
        result = transform_pair(x_s, x_t, assignment.method, epsilon, clamp)
    except (StatmatchError, ValueError) as exc:
        return ItemResult(assignment.source, assignment.target, assignment.method,
                          output=None, error=str(exc))
    try:
        save_png(result, out_path)
    except OSError as exc:
        raise OutputWriteError(f"{out_path}: {exc}") from exc
    return ItemResult(assignment.source, assignment.target, assignment.method,
                      output=str(out_path))


def execute_plan(plan: PairingPlan, epsilon: float = EPSILON_DEFAULT,
                 clamp: bool = True, jobs: int = 1, out_dir=".") -> RunReport:
    """Run every assignment, writing `<source stem>.png` into ``out_dir``.

    Items that fail to load or transform are recorded and skipped; a
    failed output write aborts the whole run.  Results are byte-identical
    for any ``jobs`` value.
    """
    if jobs < 1:
        raise ValueError(f"jobs must be >= 1, got {jobs}")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    out_paths = [out_dir / (Path(a.source).stem + ".png") for a in plan.assignments]
    if len(set(out_paths)) != len(out_paths):
        raise OutputWriteError(
            "two or more source items share a base name; outputs would collide"
        )
    tasks = [(a, str(p), epsilon, clamp) for a, p in zip(plan.assignments, out_paths)]
    start = time.perf_counter()
    if jobs == 1 or len(tasks) <= 1:
        results = [_run_assignment(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_assignment, tasks))
    wall = time.perf_counter() - start
    counts = {m: 0 for m in CONCRETE_METHODS}
    for a in plan.assignments:
        counts[a.method] += 1
    return RunReport(items=tuple(results), method_counts=counts,
                     wall_time_s=wall, out_dir=str(out_dir))
