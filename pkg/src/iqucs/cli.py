"""Experiment harness: run the iterative search and/or the baseline.

Writes ``report.json`` plus one histogram CSV per Grover invocation,
named ``{method}_iter{i}_inv{j}.csv`` where ``j`` counts invocations
cumulatively across iterations.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .baseline import BaselineOutcome, gsearch
from .encoding import encode_pair, load_wordlist
from .metrics import accuracy, compare, cqc
from .search import FilterConfig, SearchOutcome, search, target_indexes

__all__ = [
    "RunConfig",
    "select_targets",
    "emit_histogram",
    "build_report",
    "run_experiment",
    "main",
]

log = logging.getLogger("iqucs")

MODES = ("iqucs", "gsearch", "both")
HISTOGRAM_COLUMNS = (
    "pair_code",
    "original_index",
    "original_value",
    "current_index",
    "current_value",
    "probability",
    "filtered",
)
SCHEMA_VERSION = 1
FLOAT_DIGITS = 12


@dataclass(frozen=True)
class RunConfig:
    dataset_size: int
    output_dir: Path
    targets: tuple[int, ...] | None = None
    num_targets: int | None = None
    target_seed: int = 0
    mode: str = "both"
    shots: int = 12000
    threshold_ts: float = 0.85
    seed: int = 0
    wordlist_path: str | None = None
    max_iterations: int = 50

    def validate(self) -> None:
        if self.dataset_size < 1:
            raise ValueError("dataset size must be >= 1")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if (self.targets is None) == (self.num_targets is None):
            raise ValueError("give either explicit targets or a target count")
        if self.targets is not None:
            if not self.targets:
                raise ValueError("target list is empty")
            bad = [t for t in self.targets if not 0 <= t < self.dataset_size]
            if bad:
                raise ValueError(f"targets outside the dataset: {bad}")
        elif not 1 <= self.num_targets <= self.dataset_size:
            raise ValueError("target count must be in [1, dataset size]")
        if self.shots < 0:
            raise ValueError("shots must be >= 0")
        if not 0 < self.threshold_ts <= 1:
            raise ValueError("threshold must be in (0, 1]")


def select_targets(dataset_size: int, count: int, seed: int) -> list[int]:
    """``count`` distinct values drawn uniformly from ``0..dataset_size-1``."""
    rng = np.random.default_rng(seed)
    return sorted(int(v) for v in rng.choice(dataset_size, size=count, replace=False))


def _fixed(x: float) -> float:
    return round(float(x), FLOAT_DIGITS)


def emit_histogram(record, path: str | Path, snapshot: int = -1) -> Path:
    """Write the probabilities of one invocation of ``record`` as CSV.

    ``record`` is an :class:`IterationRecord` or a :class:`BaselineOutcome`.
    Rows cover the working-set pairs only, sorted by original index. On the
    iteration's final invocation ``filtered`` reflects the actual filter
    decision; on earlier ones it shows what the filter would decide there.
    """
    path = Path(path)
    snaps = record.snapshots
    probs = snaps[snapshot] if snaps else record.fidelities
    final = not snaps or snapshot in (-1, len(snaps) - 1)
    rows = []
    for rec in sorted(record.pairs, key=lambda r: r.original_index):
        p = probs[rec.original_index]
        if final:
            dropped = rec.original_index in record.filtered
        else:
            dropped = p < record.threshold_value
        rows.append((
            encode_pair(rec, record.idx_qubits, record.val_qubits),
            rec.original_index,
            rec.original_value,
            rec.current_index,
            rec.current_value,
            format(p, ".12g"),
            int(dropped),
        ))
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(HISTOGRAM_COLUMNS)
        writer.writerows(rows)
    return path


def _histograms(method: str, record, out: Path) -> list[str]:
    names = []
    for step in range(len(record.snapshots)):
        name = f"{method}_iter{record.iteration}_inv{record.first_invocation + step}.csv"
        emit_histogram(record, out / name, snapshot=step)
        names.append(name)
    return names


def _fidelity_map(fidelities) -> dict[str, float]:
    return {str(k): _fixed(v) for k, v in sorted(fidelities.items())}


def _iqucs_section(outcome: SearchOutcome, truth, size, files) -> dict:
    trace = []
    for rec, names in zip(outcome.trace, files):
        trace.append({
            "iteration": rec.iteration,
            "invocations": rec.invocations,
            "first_invocation": rec.first_invocation,
            "set_size": rec.set_size,
            "idx_qubits": rec.idx_qubits,
            "val_qubits": rec.val_qubits,
            "total_qubits": rec.total_qubits,
            "threshold_value": _fixed(rec.threshold_value),
            "potential": sorted(rec.potential),
            "filtered": sorted(rec.filtered),
            "fidelities": _fidelity_map(rec.fidelities),
            "histograms": names,
        })
    return {
        "converged": outcome.converged,
        "status": outcome.status,
        "iterations_used": outcome.iterations_used,
        "solution_original_indexes": sorted(outcome.solution_original_indexes),
        "accuracy": _fixed(accuracy(outcome.solution_original_indexes, truth, size)),
        "cqc": cqc(outcome.cqc_entries()),
        "total_invocations": outcome.total_invocations,
        "trace": trace,
    }


def _gsearch_section(base: BaselineOutcome, truth, size, files) -> dict:
    return {
        "predicted": sorted(base.predicted),
        "accuracy": _fixed(accuracy(base.predicted, truth, size)),
        "cqc": cqc(base.cqc_entries()),
        "invocations": base.invocations,
        "total_qubits": base.total_qubits,
        "threshold_value": _fixed(base.threshold_value),
        "fidelities": _fidelity_map(base.fidelities),
        "histograms": files,
    }


def build_report(config: RunConfig, targets, truth, outcome=None, baseline=None,
                 iqucs_files=(), gsearch_files=()) -> dict:
    size = config.dataset_size
    comparison = None
    if outcome is not None and baseline is not None:
        comparison = {k: _fixed(v) if isinstance(v, float) else v
                      for k, v in asdict(compare(outcome, baseline, truth, size)).items()}
    failed = outcome is not None and not outcome.converged
    return {
        "schema_version": SCHEMA_VERSION,
        "config": {
            "dataset_size": size,
            "targets": list(targets),
            "num_targets": len(targets),
            "target_seed": config.target_seed if config.targets is None else None,
            "mode": config.mode,
            "shots": config.shots,
            "threshold_ts": config.threshold_ts,
            "seed": config.seed,
            "max_iterations": config.max_iterations,
            "wordlist": config.wordlist_path,
        },
        "status": "failed" if failed else "ok",
        "truth_original_indexes": sorted(truth),
        "comparison": comparison,
        "iqucs": None if outcome is None else _iqucs_section(outcome, truth, size, iqucs_files),
        "gsearch": None if baseline is None else _gsearch_section(baseline, truth, size, gsearch_files),
    }


def run_experiment(config: RunConfig) -> int:
    """Run one configuration and write its output tree.

    Returns 0 on success, 1 when the iterative search did not converge
    (the report is still written) and 2 for an invalid configuration.
    """
    try:
        config.validate()
        records = load_wordlist(config.wordlist_path, config.dataset_size, fallback=True)
    except (ValueError, OSError) as exc:
        log.error("invalid configuration: %s", exc)
        return 2

    if config.targets is not None:
        targets = sorted(set(config.targets))
    else:
        targets = select_targets(config.dataset_size, config.num_targets, config.target_seed)
    truth = target_indexes(records, targets)
    filt = FilterConfig(config.threshold_ts, config.shots, config.seed, config.max_iterations)

    out = Path(config.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    outcome = baseline = None
    iqucs_files, gsearch_files = [], []
    if config.mode in ("iqucs", "both"):
        outcome = search(records, targets, filt)
        iqucs_files = [_histograms("iqucs", rec, out) for rec in outcome.trace]
        log.info("iqucs: %s after %d iterations, CQC %d", outcome.status,
                 outcome.iterations_used, cqc(outcome.cqc_entries()))
    if config.mode in ("gsearch", "both"):
        baseline = gsearch(records, targets, filt)
        gsearch_files = _histograms("gsearch", baseline, out)
        log.info("gsearch: %d invocations, CQC %d", baseline.invocations,
                 cqc(baseline.cqc_entries()))

    report = build_report(config, targets, truth, outcome, baseline, iqucs_files, gsearch_files)
    (out / "report.json").write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    return 1 if report["status"] == "failed" else 0


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="iqucs",
        description="Iterative qubit-reducing Grover index search vs. single-round Grover.",
    )
    p.add_argument("--size", type=int, required=True, help="dataset size (top-N words)")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--targets", type=_int_list, help="comma-separated target values")
    group.add_argument("--num-targets", type=int, help="number of targets drawn at random")
    p.add_argument("--target-seed", type=int, default=0, help="seed for target selection")
    p.add_argument("--mode", choices=MODES, default="both")
    p.add_argument("--shots", type=int, default=12000, help="shots per read-out (0 = exact)")
    p.add_argument("--threshold", type=float, default=0.85, help="filter threshold T_s")
    p.add_argument("--seed", type=int, default=0, help="sampling seed")
    p.add_argument("--max-iterations", type=int, default=50)
    p.add_argument("--wordlist", default=None, help="ranked word list, one word per line")
    p.add_argument("--out", type=Path, default=Path("results"), help="output directory")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    config = RunConfig(
        dataset_size=args.size,
        output_dir=args.out,
        targets=args.targets,
        num_targets=args.num_targets,
        target_seed=args.target_seed,
        mode=args.mode,
        shots=args.shots,
        threshold_ts=args.threshold,
        seed=args.seed,
        wordlist_path=args.wordlist,
        max_iterations=args.max_iterations,
    )
    return run_experiment(config)


if __name__ == "__main__":
    sys.exit(main())
