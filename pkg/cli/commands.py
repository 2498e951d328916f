"""
commands.py - Subcommand implementations: build, simulate, analyze, count, replay

Each command splits into a pure `produce_*` step (source + options -> text)
and a thin `cmd_*` wrapper that reads flags and writes files, so `replay` can
regenerate any output from its manifest and compare bytes.
"""
import csv
import io
import json
import logging
import math
import re
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple

from circuits import Circuit, GateCounts, GateKind, decompose_cswap, depth, gate_count
from cli.config import resolve_workers
from cli.manifest import RunManifest, describe_file, dumps_json, file_digest, sidecar_path
from galton_board import BoundVariant, QgbSpec, build_biased_peg, build_peg, gate_bound, peg_count
from galton_stats import (
    ComparisonResult,
    ReferenceDistribution,
    SummaryStats,
    binomial_reference,
    block_sum_reference,
    compare,
    decode_distribution,
    decode_memory,
    expand_histogram,
    levels_from_width,
    normal_reference,
    rescale_blocks,
    summary_from_distribution,
    summary_stats,
)
from qasm_io import emit, load_circuit, parse_angle
from simulators import Histogram, exact_distribution, run_memory, run_shots

logger = logging.getLogger(__name__)


# circuit sources


def read_peg_angles(path: Path) -> List[str]:
    """Angle expressions separated by whitespace, commas or newlines; `#` starts a comment."""
    entries: List[str] = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.split("#", 1)[0]
        entries.extend(e for e in re.split(r"[\s,]+", line) if e)
    return entries


def source_from_args(args) -> Dict[str, Any]:
    """
    Describe the circuit selected by the source flags.

    Flags are recorded as typed (angles unparsed) so a manifest rebuilds the
    exact same circuit.

    Raises:
        ValueError: On a missing, duplicated or inconsistent source
    """
    given = [name for name, value in (("input", args.input), ("levels", args.levels), ("peg", args.peg)) if value]
    if len(given) != 1:
        raise ValueError("Give exactly one circuit source: a .qasm file, --levels N or --peg")

    if args.input:
        if args.bias_theta is not None or args.peg_angles or args.fine:
            raise ValueError("Bias flags only apply to generated circuits")
        return {"kind": "qasm", **describe_file(args.input)}

    if args.peg:
        if args.peg_angles or args.fine:
            raise ValueError("--peg only combines with --bias-theta")
        source: Dict[str, Any] = {"kind": "peg"}
        if args.bias_theta is not None:
            source["theta"] = args.bias_theta
        return source

    source = {"kind": "board", "levels": args.levels}
    if args.peg_angles:
        if args.bias_theta is not None or args.fine:
            raise ValueError("--peg-angles excludes --bias-theta and --fine")
        source["peg_angles"] = read_peg_angles(args.peg_angles)
        source["peg_angles_file"] = describe_file(args.peg_angles)
    elif args.bias_theta is not None:
        source["theta"] = args.bias_theta
        if args.fine:
            source["fine"] = True
    elif args.fine:
        raise ValueError("--fine needs --bias-theta")
    return source


def circuit_from_source(source: Mapping[str, Any], input_path: Optional[Path] = None) -> Circuit:
    """Build or load the circuit a source description names."""
    kind = source["kind"]
    if kind == "qasm":
        if input_path is None:
            raise ValueError("QASM source needs its input file")
        if file_digest(input_path) != source["sha256"]:
            raise ValueError(f"{input_path} does not match the recorded SHA-256")
        return load_circuit(input_path)

    theta = parse_angle(source["theta"]) if "theta" in source else None
    if kind == "peg":
        return build_biased_peg(theta) if theta is not None else build_peg()
    if kind != "board":
        raise ValueError(f"Unknown circuit source kind {kind!r}")

    levels = int(source["levels"])
    if "peg_angles" in source:
        spec = QgbSpec(levels, angles=[parse_angle(a) for a in source["peg_angles"]])
    elif source.get("fine"):
        spec = QgbSpec(levels, angles=[theta] * peg_count(levels))
    else:
        spec = QgbSpec(levels, theta=theta)
    return spec.build()


def infer_variant(circuit: Circuit) -> BoundVariant:
    """BARRIERs mark a fine-grained board, RX coins a biased one."""
    if circuit.count(GateKind.BARRIER):
        return BoundVariant.FINE
    if circuit.count(GateKind.RX):
        return BoundVariant.BIASED
    return BoundVariant.UNBIASED


def source_levels(source: Mapping[str, Any], circuit: Circuit) -> Optional[int]:
    if source["kind"] == "board":
        return int(source["levels"])
    if source["kind"] == "peg":
        return 1
    try:
        return levels_from_width(circuit.nc)
    except ValueError:
        return None


def _input_path(args) -> Optional[Path]:
    return Path(args.input) if args.input else None


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


# build


def produce_build(source: Mapping[str, Any], input_path: Optional[Path], out_name: str) -> Tuple[str, RunManifest]:
    circuit = circuit_from_source(source, input_path)
    return emit(circuit), RunManifest("build", dict(source), {}, [out_name])


def cmd_build(args, config: Dict[str, Any]) -> int:
    out = Path(args.out)
    source = source_from_args(args)
    text, manifest = produce_build(source, _input_path(args), out.name)
    _write(out, text)
    _write(sidecar_path(out), dumps_json(manifest.to_dict()))
    logger.info(f"Wrote {out}")
    return 0


# simulate


def produce_simulate(
    source: Mapping[str, Any],
    options: Mapping[str, Any],
    input_path: Optional[Path],
    out_name: str,
    workers: int = 1,
    progress: bool = False,
) -> str:
    """
    Results document for a simulate run.

    Returns:
        JSON text with "probabilities" (exact runs) or "counts"/"shots"/"seed"
        (sampled runs, plus "memory" when requested) and the embedded manifest
    """
    circuit = circuit_from_source(source, input_path)
    manifest = RunManifest("simulate", dict(source), dict(options), [out_name])

    if options["exact"]:
        distribution = exact_distribution(circuit, options["branch_budget"])
        doc: Dict[str, Any] = {"probabilities": dict(distribution.items())}
    else:
        memory: Optional[List[str]] = None
        if options.get("memory"):
            memory = run_memory(circuit, options["shots"], options["seed"], workers, progress)
            histogram = Histogram.from_memory(memory)
        else:
            histogram = run_shots(circuit, options["shots"], options["seed"], workers, progress)
        doc = {
            "counts": dict(sorted(histogram.counts.items())),
            "shots": histogram.shots,
            "seed": options["seed"],
        }
        if memory is not None:
            doc["memory"] = memory
    doc["manifest"] = manifest.to_dict()
    return dumps_json(doc)


def cmd_simulate(args, config: Dict[str, Any]) -> int:
    out = Path(args.out)
    source = source_from_args(args)
    if args.exact:
        options = {"exact": True, "branch_budget": int(config["branch_budget"])}
    else:
        shots = args.shots if args.shots is not None else int(config["shots"])
        seed = args.seed if args.seed is not None else int(config["seed"])
        options = {"exact": False, "shots": shots, "seed": seed, "memory": bool(args.memory)}

    workers = resolve_workers(args.workers, config)
    text = produce_simulate(source, options, _input_path(args), out.name, workers, bool(config["progress"]))
    _write(out, text)
    logger.info(f"Wrote {out}")
    return 0


# analyze


@dataclass
class AnalysisReport:
    """Moments and fit statistics of one results file."""

    levels: int
    exact: bool
    block_size: int
    reference: str
    raw: SummaryStats
    raw_fit: ComparisonResult
    blocks: Optional[SummaryStats] = None
    block_fit: Optional[ComparisonResult] = None
    samples: int = 0
    excluded: float = 0
    invalid: Dict[str, int] = field(default_factory=dict)
    files: Dict[str, str] = field(default_factory=dict)

    @property
    def flagged(self) -> bool:
        fits = [self.raw_fit] + ([self.block_fit] if self.block_fit else [])
        return self.excluded > 0 or any(fit.flagged for fit in fits)

    def lines(self) -> List[str]:
        lines = [f"levels: {self.levels}"]
        if self.exact:
            lines.append(f"exact distribution (non-one-hot mass {self.excluded:.3g})")
        else:
            lines.append(f"samples: {self.samples} (excluded {int(self.excluded)} non-one-hot)")
            lines += [f"  non-one-hot {bits}: {n}" for bits, n in sorted(self.invalid.items())]
        lines += _stats_lines("values", self.raw) + _fit_lines(self.reference, self.raw_fit)
        if self.blocks is not None:
            lines += _stats_lines(f"block sums (size {self.block_size})", self.blocks)
            lines += _fit_lines(f"{self.reference} (blocks)", self.block_fit)
        else:
            lines.append(f"block sums (size {self.block_size}): not enough samples")
        if self.flagged:
            lines.append("FLAGGED: see excluded readouts / chi-square above")
        return lines


def _stats_lines(label: str, s: SummaryStats) -> List[str]:
    return [f"{label}: mean={s.mean:.6f} stddev={s.stddev:.6f} variance={s.variance:.6f}"]


def _fit_lines(label: str, fit: ComparisonResult) -> List[str]:
    line = f"  vs {label}: TV={fit.total_variation:.6f}"
    if fit.chi_square is not None:
        line += (
            f" chi2={fit.chi_square:.3f} dof={fit.degrees_of_freedom}"
            f" critical={fit.critical_value:.3f} p={fit.p_value:.4g}"
        )
        if fit.flagged:
            line += " FLAGGED"
    return [line]


def _reference(kind: str, trials: int, p: float) -> ReferenceDistribution:
    if kind == "binomial":
        return binomial_reference(trials, p)
    variance = trials * p * (1 - p)
    if variance <= 0:
        raise ValueError("Normal reference needs 0 < p < 1")
    return normal_reference(trials * p, variance)


def _csv(header: Tuple[str, str], rows: List[Tuple[int, Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def blocks_name(out_name: str) -> str:
    path = Path(out_name)
    return f"{path.stem}_blocks{path.suffix}"


def produce_analysis(doc: Mapping[str, Any], options: Mapping[str, Any], out_name: str) -> AnalysisReport:
    """
    Decode a results document and compare it with the reference law.

    Sampled results are decoded shot by shot (the recorded memory, or a seeded
    shuffle of the histogram) before block rescaling; exact results get the
    exact block-sum law.
    """
    if "probabilities" in doc:
        table, exact = doc["probabilities"], True
    elif "counts" in doc:
        table, exact = doc["counts"], False
    else:
        raise ValueError("Results file has neither counts nor probabilities")
    if not table:
        raise ValueError("Results file is empty")

    levels = options.get("levels") or levels_from_width(len(next(iter(table))))
    block_size, p, kind = int(options["block_size"]), float(options["p"]), options["reference"]
    raw_ref = _reference(kind, levels, p)
    block_ref = _reference(kind, levels * block_size, p)
    values = range(levels + 1)
    block_values = range(levels * block_size + 1)

    if exact:
        pmf, excluded = decode_distribution(table, levels)
        block_law = block_sum_reference(pmf, block_size)
        report = AnalysisReport(
            levels=levels,
            exact=True,
            block_size=block_size,
            reference=kind,
            raw=summary_from_distribution(pmf),
            raw_fit=compare(raw_ref, pmf, values),
            blocks=SummaryStats(block_law.mean, math.sqrt(block_law.variance), block_law.variance),
            block_fit=compare(block_ref, block_law, block_values),
            excluded=excluded,
        )
        report.files[out_name] = _csv(("value", "probability"), [(k, pmf[k]) for k in values])
        block_probs = block_law.probabilities(block_values)
        report.files[blocks_name(out_name)] = _csv(
            ("value", "probability"), [(k, float(block_probs[k])) for k in block_values]
        )
        return report

    memory = doc.get("memory")
    if memory is None:
        memory = expand_histogram(table, int(doc.get("seed", 0)))
    decoded, invalid = decode_memory(memory, levels)
    if len(decoded) == 0:
        raise ValueError("No shot decodes to a ball position")

    raw_counts = Counter(decoded.values)
    sums = rescale_blocks(decoded.values, block_size)
    block_counts = Counter(sums)
    report = AnalysisReport(
        levels=levels,
        exact=False,
        block_size=block_size,
        reference=kind,
        raw=summary_stats(decoded),
        raw_fit=compare(raw_ref, {k: raw_counts[k] for k in values}, values),
        samples=len(decoded),
        excluded=sum(invalid.values()),
        invalid=dict(invalid),
    )
    if sums:
        report.blocks = summary_stats(sums)
        report.block_fit = compare(block_ref, {k: block_counts[k] for k in block_values}, block_values)
    report.files[out_name] = _csv(("value", "count"), [(k, raw_counts[k]) for k in values])
    report.files[blocks_name(out_name)] = _csv(("value", "count"), [(k, block_counts[k]) for k in block_values])
    return report


def cmd_analyze(args, config: Dict[str, Any]) -> int:
    results = Path(args.results)
    out = Path(args.out) if args.out else results.with_suffix(".csv")
    options = {
        "block_size": args.block if args.block is not None else int(config["block_size"]),
        "reference": args.reference,
        "p": args.p,
        "levels": args.levels,
    }
    doc = json.loads(results.read_text(encoding="utf-8"))
    report = produce_analysis(doc, options, out.name)

    for line in report.lines():
        print(line)
    for name, text in report.files.items():
        _write(out.with_name(name), text)
    manifest = RunManifest("analyze", {"kind": "results", **describe_file(results)}, options, list(report.files))
    _write(sidecar_path(out), dumps_json(manifest.to_dict()))
    if report.excluded:
        logger.warning(f"{report.excluded} non-one-hot readouts excluded from the statistics")
    logger.info(f"Wrote {', '.join(report.files)}")
    return 0


# count


@dataclass
class CountReport:
    """Gate tally of a circuit next to the closed-form bound."""

    counts: GateCounts
    depth: int
    variant: BoundVariant
    levels: Optional[int]
    bound: Optional[int]
    decomposed: GateCounts

    @property
    def discrepancy(self) -> bool:
        return self.bound is not None and self.counts.total > self.bound

    def lines(self) -> List[str]:
        lines = [f"{'kind':<10}{'count':>8}{'decomposed':>12}"]
        for kind in GateKind:
            if self.counts[kind] or self.decomposed[kind]:
                lines.append(f"{kind.name:<10}{self.counts[kind]:>8}{self.decomposed[kind]:>12}")
        lines.append(f"{'total':<10}{self.counts.total:>8}{self.decomposed.total:>12}")
        lines.append(f"depth: {self.depth}")
        if self.bound is None:
            lines.append(f"bound ({self.variant.value}): n/a (register width is not 2n+2)")
        else:
            lines.append(f"bound ({self.variant.value}, n={self.levels}): {self.bound}")
        if self.discrepancy:
            lines.append(f"DISCREPANCY: {self.counts.total} active ops exceed the bound {self.bound}")
        return lines


def count_report(circuit: Circuit, variant: BoundVariant, levels: Optional[int]) -> CountReport:
    return CountReport(
        counts=gate_count(circuit),
        depth=depth(circuit),
        variant=variant,
        levels=levels,
        bound=gate_bound(levels, variant) if levels else None,
        decomposed=gate_count(decompose_cswap(circuit)),
    )


def cmd_count(args, config: Dict[str, Any]) -> int:
    source = source_from_args(args)
    circuit = circuit_from_source(source, _input_path(args))
    variant = BoundVariant(args.variant) if args.variant else infer_variant(circuit)
    report = count_report(circuit, variant, source_levels(source, circuit))
    for line in report.lines():
        print(line)
    if report.discrepancy:
        logger.warning(f"Active op count {report.counts.total} exceeds the {variant.value} bound {report.bound}")
    return 0


# replay


def _regenerate(data: Mapping[str, Any], path: Path, base: Path, config: Dict[str, Any]) -> Dict[Path, str]:
    if "manifest" in data:
        manifest = RunManifest.from_dict(data["manifest"])
        input_path = base / manifest.source["name"] if manifest.source["kind"] == "qasm" else None
        workers = resolve_workers(None, config)
        return {path: produce_simulate(manifest.source, manifest.options, input_path, manifest.outputs[0], workers)}

    manifest = RunManifest.from_dict(data)
    if manifest.command == "build":
        input_path = base / manifest.source["name"] if manifest.source["kind"] == "qasm" else None
        text, _ = produce_build(manifest.source, input_path, manifest.outputs[0])
        return {base / manifest.outputs[0]: text}
    if manifest.command == "analyze":
        results = base / manifest.source["name"]
        if file_digest(results) != manifest.source["sha256"]:
            raise ValueError(f"{results} does not match the recorded SHA-256")
        doc = json.loads(results.read_text(encoding="utf-8"))
        report = produce_analysis(doc, manifest.options, manifest.outputs[0])
        return {base / name: text for name, text in report.files.items()}
    raise ValueError(f"Cannot replay command {manifest.command!r}")


def cmd_replay(args, config: Dict[str, Any]) -> int:
    path = Path(args.manifest)
    base = Path(args.input_dir) if args.input_dir else path.parent
    data = json.loads(path.read_text(encoding="utf-8"))
    if "manifest" not in data and "command" not in data:
        raise ValueError(f"{path} holds neither a results document nor a manifest")

    identical = True
    for target, text in _regenerate(data, path, base, config).items():
        same = target.exists() and target.read_text(encoding="utf-8") == text
        identical = identical and same
        print(f"{'identical' if same else 'differs'}: {target.name}")

    if not identical:
        logger.error("Replay did not reproduce the recorded outputs")
        return 1
    logger.info("Replay reproduced every output byte for byte")
    return 0
