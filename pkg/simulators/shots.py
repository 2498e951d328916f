"""
shots.py - Seeded shot sampling over a cached tree of measurement branches
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Tuple, TypeVar

from tqdm import tqdm

from circuits.analysis import validate
from circuits.ir import Circuit, GateKind, GateOp
from simulators.rng import shot_rng
from simulators.statevector import StateVector, apply_gate, canonical_form, project

logger = logging.getLogger(__name__)

T = TypeVar("T")


def render_bits(bits: Iterable[int]) -> str:
    """Classical register as a string, highest index first."""
    return "".join(str(b) for b in reversed(list(bits)))


@dataclass(frozen=True)
class ShotResult:
    bits: str

    def __str__(self) -> str:
        return self.bits


@dataclass
class Histogram:
    """
    Outcome counts of a sampled run.

    Attributes:
        counts: Bitstring -> number of shots
        shots: Total shots
    """

    counts: Dict[str, int] = field(default_factory=dict)
    shots: int = 0

    @classmethod
    def from_memory(cls, memory: Iterable[str]) -> "Histogram":
        histogram = cls()
        for bits in memory:
            histogram.counts[bits] = histogram.counts.get(bits, 0) + 1
            histogram.shots += 1
        return histogram

    def merge(self, other: "Histogram") -> "Histogram":
        counts = dict(self.counts)
        for bits, n in other.counts.items():
            counts[bits] = counts.get(bits, 0) + n
        return Histogram(counts, self.shots + other.shots)

    def frequencies(self) -> Dict[str, float]:
        if self.shots == 0:
            return {}
        return {bits: n / self.shots for bits, n in sorted(self.counts.items())}

    def total_variation(self, probabilities: Mapping[str, float]) -> float:
        """Total variation distance to an exact bitstring -> probability map."""
        observed = self.frequencies()
        keys = set(observed) | set(probabilities)
        return 0.5 * sum(abs(observed.get(k, 0.0) - probabilities.get(k, 0.0)) for k in keys)

    def max_deviation(self, probabilities: Mapping[str, float]) -> float:
        """Largest absolute frequency error over all outcomes (L-infinity)."""
        observed = self.frequencies()
        keys = set(observed) | set(probabilities)
        return max((abs(observed.get(k, 0.0) - probabilities.get(k, 0.0)) for k in keys), default=0.0)


class _Node:
    __slots__ = ("branch", "state", "p1", "children")

    def __init__(self, branch: int, state: StateVector, p1: float):
        self.branch = branch
        self.state: Optional[StateVector] = state
        self.p1 = p1
        self.children: Dict[int, Optional["_Node"]] = {}

    def reachable(self) -> Tuple[int, ...]:
        if self.p1 == 0.0:
            return (0,)
        if self.p1 == 1.0:
            return (1,)
        return (0, 1)


class ShotSampler:
    """
    Replays a circuit shot by shot.

    Every RESET/MEASURE is a branch point. States reached at a branch point are
    interned by their canonical form, so shots that share a history share the
    work of simulating it and the result of a shot depends only on its own
    random draws.
    """

    def __init__(self, circuit: Circuit):
        validate(circuit)
        self.circuit = circuit
        self._ops: List[GateOp] = list(circuit.ops)
        self._branch_ops = [
            i for i, op in enumerate(self._ops) if op.kind in (GateKind.RESET, GateKind.MEASURE)
        ]
        self._nodes: Dict[Tuple[int, bytes], _Node] = {}
        self._root = self._advance(StateVector.zero(circuit.nq), 0, 0)

    @property
    def branch_points(self) -> int:
        return len(self._branch_ops)

    @property
    def cached_nodes(self) -> int:
        return len(self._nodes)

    def _advance(self, state: StateVector, start: int, branch: int) -> Optional[_Node]:
        stop = self._branch_ops[branch] if branch < len(self._branch_ops) else len(self._ops)
        for op in self._ops[start:stop]:
            if op.kind.is_unitary:
                state = apply_gate(state, op)
        if branch == len(self._branch_ops):
            return None

        key, canon = canonical_form(state)
        node = self._nodes.get((branch, key))
        if node is None:
            q = self._ops[stop].qubits[0]
            node = _Node(branch, canon, canon.probability_of_one(q))
            self._nodes[(branch, key)] = node
        return node

    def _child(self, node: _Node, outcome: int) -> Optional[_Node]:
        if outcome in node.children:
            return node.children[outcome]

        position = self._branch_ops[node.branch]
        op = self._ops[position]
        post = project(node.state, op.qubits[0], outcome)
        if op.kind is GateKind.RESET and outcome:
            post = apply_gate(post, GateOp(GateKind.X, op.qubits))
        child = self._advance(post, position + 1, node.branch + 1)
        node.children[outcome] = child

        if all(o in node.children for o in node.reachable()):
            node.state = None
        return child

    def run_shot(self, seed: int, shot_index: int) -> ShotResult:
        """
        Simulate one shot.

        Args:
            seed: Run seed
            shot_index: Shot number; selects the random stream

        Returns:
            ShotResult with unmeasured classical bits left at 0
        """
        bits = [0] * self.circuit.nc
        if not self._branch_ops:
            return ShotResult(render_bits(bits))

        draws = shot_rng(seed, shot_index).random(len(self._branch_ops))
        node = self._root
        for k, position in enumerate(self._branch_ops):
            outcome = 1 if draws[k] < node.p1 else 0
            op = self._ops[position]
            if op.kind is GateKind.MEASURE:
                bits[op.clbit] = outcome
            node = self._child(node, outcome)
        return ShotResult(render_bits(bits))


def run_shot(circuit: Circuit, seed: int, shot_index: int = 0) -> ShotResult:
    return ShotSampler(circuit).run_shot(seed, shot_index)


def _shot_bits(sampler: ShotSampler, seed: int, shot_range: Iterable[int]) -> Iterator[str]:
    for i in shot_range:
        yield sampler.run_shot(seed, i).bits


def _run_range(args: Tuple[Circuit, int, int, int]) -> List[str]:
    circuit, seed, start, stop = args
    return list(_shot_bits(ShotSampler(circuit), seed, range(start, stop)))


def _tally_range(args: Tuple[Circuit, int, int, int]) -> Histogram:
    circuit, seed, start, stop = args
    return Histogram.from_memory(_shot_bits(ShotSampler(circuit), seed, range(start, stop)))


def _split(shots: int, workers: int) -> List[Tuple[int, int]]:
    step, extra = divmod(shots, workers)
    ranges, start = [], 0
    for w in range(workers):
        stop = start + step + (1 if w < extra else 0)
        ranges.append((start, stop))
        start = stop
    return ranges


def _shard_results(
    task: Callable[[Tuple[Circuit, int, int, int]], T],
    circuit: Circuit,
    shots: int,
    seed: int,
    workers: int,
    progress: bool,
) -> Iterator[T]:
    """Run `task` over contiguous shot ranges, yielding results in shard order."""
    jobs = [(circuit, seed, start, stop) for start, stop in _split(shots, workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from tqdm(pool.map(task, jobs), total=len(jobs), desc="Shards", disable=not progress)


def _check_shots(circuit: Circuit, shots: int, seed: int, workers: int) -> int:
    if shots < 1:
        raise ValueError(f"Shot count must be positive, got {shots}")
    validate(circuit)
    workers = max(1, min(workers, shots))
    logger.info(f"Sampling {shots} shots (seed={seed}, workers={workers})")
    return workers


def run_memory(
    circuit: Circuit,
    shots: int,
    seed: int,
    workers: int = 1,
    progress: bool = False,
) -> List[str]:
    """
    Per-shot outcomes in shot order.

    Shots are split into contiguous ranges across worker processes; the result
    does not depend on the worker count.

    Args:
        circuit: Circuit to sample
        shots: Number of shots (>= 1)
        seed: Run seed
        workers: Worker processes
        progress: Show a tqdm progress bar

    Returns:
        List of bitstrings, one per shot
    """
    workers = _check_shots(circuit, shots, seed, workers)
    if workers == 1:
        sampler = ShotSampler(circuit)
        shot_range = tqdm(range(shots), desc="Shots", disable=not progress)
        memory = list(_shot_bits(sampler, seed, shot_range))
        logger.debug(f"Branch cache holds {sampler.cached_nodes} states")
        return memory

    memory: List[str] = []
    for chunk in _shard_results(_run_range, circuit, shots, seed, workers, progress):
        memory.extend(chunk)
    return memory


def run_shots(
    circuit: Circuit,
    shots: int,
    seed: int,
    workers: int = 1,
    progress: bool = False,
) -> Histogram:
    """
    Sample `shots` shots and tally them without keeping per-shot outcomes.

    Each shard tallies its own range and the tallies are merged in shard order,
    so the counts equal those of run_memory for the same seed.
    """
    workers = _check_shots(circuit, shots, seed, workers)
    if workers == 1:
        sampler = ShotSampler(circuit)
        shot_range = tqdm(range(shots), desc="Shots", disable=not progress)
        histogram = Histogram.from_memory(_shot_bits(sampler, seed, shot_range))
        logger.debug(f"Branch cache holds {sampler.cached_nodes} states")
        return histogram

    histogram = Histogram()
    for shard in _shard_results(_tally_range, circuit, shots, seed, workers, progress):
        histogram = histogram.merge(shard)
    return histogram
