"""Command-line surface: CSV in, bounds + inference out.

One invocation analyzes one or more mediator columns against a binary
treatment and outcome: dichotomization (optional), sharp bounds under each
requested assumption set by both the closed-form and LP routes, natural direct
effect bounds by decomposition, intersection-bounds inference, and the
ATE/mediator-ATE Wald tests.   Output is a versioned JSON report, a flat CSV,
or figure-ready plotdata rows.

Exit codes: 0 success, 2 configuration error, 3 data error,
4 assumption incompatibility (only with --strict; otherwise incompatibility is
reported in-band and the run succeeds).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .closed_form import ande_bounds, bounds_mmr, bounds_mmr_pos_mediator, bounds_no_assumption
from .inference import InferenceConfig, IntervalEstimate, WaldResult, ate_test, clr_bounds, iot_test
from .lp_engine import anie_bounds_lp
from .model import (
    AssumptionIncompatibilityError,
    Assumptions,
    BoundsResult,
    ClosedFormUnavailableError,
    EstimandSpec,
    ValidationError,
    from_units,
)

SCHEMA = "mediation-bounds/1"
_MISSING_TOKENS = {"", "na", "nan", "null", "none"}
_METHOD_NAMES = {
    Assumptions.NONE: "bounds-none",
    Assumptions.MMR: "bounds-mmr",
    Assumptions.MMR_POS_MEDIATOR: "bounds-mmr-pos",
}


class ConfigError(Exception):
    """Bad flags or an unusable configuration; exit code 2."""


class DataError(Exception):
    """Unusable data file contents; exit code 3."""


@dataclass(frozen=True)
class RunConfig:
    """Everything one run needs; immutable so reports can echo it verbatim."""

    data: str | None
    treatment: str
    outcome: str
    mediators: tuple[str, ...]
    dichotomize: str
    assumptions: tuple[Assumptions, ...]
    reference: int
    alpha: float
    draws: int
    seed: int
    format: str
    counts: tuple[int, ...] | None = None
    strict: bool = False

    def __post_init__(self) -> None:
        if not (0.0 < self.alpha < 1.0):
            raise ConfigError(f"alpha must be in (0, 1), got {self.alpha}")
        if self.reference not in (0, 1):
            raise ConfigError(f"reference must be 0 or 1, got {self.reference}")
        if self.format not in ("json", "csv", "plotdata"):
            raise ConfigError(f"format must be json, csv, or plotdata, got {self.format!r}")
        if not self.assumptions:
            raise ConfigError("at least one assumption set is required")
        if self.counts is None:
            if self.data is None:
                raise ConfigError("either --data or --counts is required")
            if not self.mediators:
                raise ConfigError("at least one mediator column is required")
        elif self.data is not None:
            raise ConfigError("--data and --counts are mutually exclusive")


def _parse_rule(text: str) -> tuple[str, float | None]:
    # -> (kind, threshold); kind in {"none", "median-gt", "threshold"}
    if text == "none":
        return "none", None
    if text == "median-gt":
        return "median-gt", None
    if text.startswith("threshold:"):
        raw = text[len("threshold:") :]
        try:
            return "threshold", float(raw)
        except ValueError:
            raise ConfigError(f"bad threshold value {raw!r} in dichotomize rule {text!r}") from None
    raise ConfigError(f"unknown dichotomize rule {text!r} (expected none, median-gt, or threshold:x)")


def _rule_table(spec_text: str, columns: list[str]) -> dict[str, tuple[str, float | None]]:
    """Resolve --dichotomize into a per-column rule map.

    The flag is either one global rule applied to the outcome and mediators
    (never the treatment, which must already be 0/1) or a comma list of
    col=rule overrides, which may target any column including the treatment.
    """
    table = {col: ("none", None) for col in columns}
    if not spec_text:
        return table
    parts = [p.strip() for p in spec_text.split(",") if p.strip()]
    overrides = [p for p in parts if "=" in p]
    globals_ = [p for p in parts if "=" not in p]
    if globals_ and overrides:
        raise ConfigError("--dichotomize takes either one global rule or col=rule entries, not both")
    if globals_:
        if len(globals_) > 1:
            raise ConfigError(f"multiple global dichotomize rules: {globals_}")
        rule = _parse_rule(globals_[0])
        for col in columns[1:]:  # columns[0] is the treatment
            table[col] = rule
        return table
    for part in overrides:
        col, _, rule_text = part.partition("=")
        col = col.strip()
        if col not in table:
            raise ConfigError(f"dichotomize rule targets unknown column {col!r}")
        table[col] = _parse_rule(rule_text.strip())
    return table


def _lower_median(values: np.ndarray) -> float:
    # Lower-median convention: for even counts take the smaller middle value,
    # so the median is always an observed value and > comparisons stay crisp.
    ordered = np.sort(values)
    return float(ordered[(ordered.size - 1) // 2])


@dataclass
class _Column:
    name: str
    values: np.ndarray  # float, NaN marks missing
    binary: np.ndarray  # uint8, valid where ~missing
    missing: np.ndarray
    rule_text: str


def _read_table(path: str, columns: list[str]) -> tuple[dict[str, list[str]], int]:
    try:
        handle = open(path, "r", encoding="utf-8", newline="")
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    with handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError(f"{path} is empty") from None
        header = [h.strip() for h in header]
        for col in columns:
            if col not in header:
                raise ConfigError(f"column {col!r} not found in {path} (header: {header})")
        index = {col: header.index(col) for col in columns}
        raw: dict[str, list[str]] = {col: [] for col in columns}
        n_rows = 0
        for row in reader:
            if not row or all(not cell.strip() for cell in row):
                continue
            n_rows += 1
            for col, i in index.items():
                raw[col].append(row[i].strip() if i < len(row) else "")
    if n_rows == 0:
        raise DataError(f"{path} has a header but no data rows")
    return raw, n_rows


def _dichotomize(name: str, tokens: list[str], rule: tuple[str, float | None]) -> _Column:
    kind, threshold = rule
    values = np.full(len(tokens), np.nan)
    for i, tok in enumerate(tokens):
        if tok.lower() in _MISSING_TOKENS:
            continue
        try:
            values[i] = float(tok)
        except ValueError:
            raise DataError(f"row {i + 2}: non-numeric value {tok!r} in column {name!r}") from None
    missing = np.isnan(values)
    if missing.all():
        raise DataError(f"column {name!r} has no non-missing values")
    observed = values[~missing]
    if kind == "none":
        bad = ~np.isin(observed, (0.0, 1.0))
        if bad.any():
            row = int(np.flatnonzero(~missing)[np.flatnonzero(bad)[0]])
            raise DataError(
                f"row {row + 2}: column {name!r} has non-binary value {observed[np.flatnonzero(bad)[0]]:g} "
                "with dichotomize rule 'none'"
            )
        binary = np.where(missing, 0, values == 1.0).astype(np.uint8)
        rule_text = "none"
    elif kind == "median-gt":
        # Median over non-missing values, before any cross-column row dropping.
        med = _lower_median(observed)
        binary = np.where(missing, 0, values > med).astype(np.uint8)
        rule_text = f"median-gt(median={med:g})"
    else:
        binary = np.where(missing, 0, values > threshold).astype(np.uint8)
        rule_text = f"threshold:{threshold:g}"
    return _Column(name=name, values=values, binary=binary, missing=missing, rule_text=rule_text)


@dataclass
class MediatorData:
    name: str
    records: np.ndarray  # (n, 3): a, m, y
    n_dropped: int
    rules: dict[str, str]


def ingest(path: str, config: RunConfig) -> tuple[list[MediatorData], int, np.ndarray]:
    """Read and dichotomize the data file.

    Returns per-mediator complete-case record arrays (listwise deletion over
    treatment, outcome, and that mediator only), the total row count, and the
    (a, 0, y) records complete in treatment and outcome, which anchor the
    run-level ATE reference line.
    """
    columns = [config.treatment, config.outcome, *config.mediators]
    if len(set(columns)) != len(columns):
        raise ConfigError(f"duplicate column names in {columns}")
    rules = _rule_table(config.dichotomize, columns)
    raw, n_rows = _read_table(path, columns)
    cols = {name: _dichotomize(name, raw[name], rules[name]) for name in columns}

    treat, out = cols[config.treatment], cols[config.outcome]
    ay_mask = ~(treat.missing | out.missing)
    if not ay_mask.any():
        raise DataError("no rows with both treatment and outcome observed")
    ay_records = np.column_stack(
        [treat.binary[ay_mask], np.zeros(int(ay_mask.sum()), dtype=np.uint8), out.binary[ay_mask]]
    ).astype(np.uint8)

    result = []
    for name in config.mediators:
        med = cols[name]
        keep = ay_mask & ~med.missing
        n_used = int(keep.sum())
        if n_used == 0:
            raise DataError(f"mediator {name!r}: all rows dropped by missing-value filtering")
        records = np.column_stack([treat.binary[keep], med.binary[keep], out.binary[keep]]).astype(np.uint8)
        result.append(
            MediatorData(
                name=name,
                records=records,
                n_dropped=n_rows - n_used,
                rules={
                    config.treatment: treat.rule_text,
                    config.outcome: out.rule_text,
                    name: med.rule_text,
                },
            )
        )
    return result, n_rows, ay_records


def _records_from_counts(counts: tuple[int, ...]) -> np.ndarray:
    if len(counts) != 8:
        raise ConfigError(f"--counts needs 8 integers, got {len(counts)}")
    rows = []
    for a in (0, 1):
        for y in (0, 1):
            for m in (0, 1):
                rows.append((a, m, y, counts[4 * a + 2 * y + m]))
    out = np.zeros((sum(counts), 3), dtype=np.uint8)
    pos = 0
    for a, m, y, c in rows:
        out[pos : pos + c] = (a, m, y)
        pos += c
    return out


@dataclass
class AssumptionResult:
    assumptions: Assumptions
    reference: int
    closed_form: BoundsResult | None
    closed_form_error: str | None
    lp: BoundsResult | None
    lp_error: str | None
    ande: BoundsResult | None
    inference: IntervalEstimate | None
    inference_error: str | None
    incompatible: bool


@dataclass
class MediatorReport:
    name: str
    n_used: int
    n_dropped: int
    n1: int
    n0: int
    counts: tuple[int, ...]
    rules: dict[str, str]
    ate: WaldResult
    iot: WaldResult
    results: list[AssumptionResult]


@dataclass
class AnalysisReport:
    config: RunConfig
    n_rows: int
    ate: WaldResult  # run-level, anchors the plotdata reference line
    mediators: list[MediatorReport] = field(default_factory=list)

    def to_json_text(self) -> str:
        return json.dumps(_report_dict(self), indent=2) + "\n"


def _analyze_mediator(
    name: str,
    records: np.ndarray,
    n_dropped: int,
    rules: dict[str, str],
    config: RunConfig,
    seed: int,
) -> MediatorReport:
    dist = from_units(records)
    inf_config = InferenceConfig(
        alpha=config.alpha, draws=config.draws, seed=seed, selection_slack=2.0
    )
    results = []
    for assumptions in config.assumptions:
        spec = EstimandSpec(
            reference=config.reference, assumptions=assumptions, mediator_effect_sign=1
        )
        closed: BoundsResult | None = None
        closed_err: str | None = None
        try:
            if assumptions is Assumptions.NONE:
                closed = bounds_no_assumption(dist, config.reference)
            elif assumptions is Assumptions.MMR:
                closed = bounds_mmr(dist, config.reference)
            else:
                closed = bounds_mmr_pos_mediator(dist, config.reference)
        except ClosedFormUnavailableError as exc:
            closed_err = str(exc)
        lp: BoundsResult | None = None
        lp_err: str | None = None
        try:
            lp = anie_bounds_lp(dist, spec)
        except AssumptionIncompatibilityError as exc:
            lp_err = str(exc)
        anie = closed if closed is not None else lp
        ande = ande_bounds(dist, 1 - config.reference, anie) if anie is not None else None
        interval: IntervalEstimate | None = None
        interval_err: str | None = None
        try:
            interval = clr_bounds(records, spec, inf_config)
        except (ClosedFormUnavailableError, ValidationError) as exc:
            interval_err = str(exc)
        incompatible = bool(closed is not None and closed.incompatible) or lp_err is not None
        if incompatible and config.strict:
            raise AssumptionIncompatibilityError(
                f"mediator {name!r}: data are incompatible with assumption set "
                f"{assumptions.value!r} (--strict)"
            )
        results.append(
            AssumptionResult(
                assumptions=assumptions,
                reference=config.reference,
                closed_form=closed,
                closed_form_error=closed_err,
                lp=lp,
                lp_error=lp_err,
                ande=ande,
                inference=interval,
                inference_error=interval_err,
                incompatible=incompatible,
            )
        )
    counts = tuple(
        int(c)
        for c in np.bincount(
            records[:, 0].astype(np.int64) * 4 + records[:, 2].astype(np.int64) * 2 + records[:, 1],
            minlength=8,
        )
    )
    return MediatorReport(
        name=name,
        n_used=int(records.shape[0]),
        n_dropped=n_dropped,
        n1=dist.n1,
        n0=dist.n0,
        counts=counts,
        rules=rules,
        ate=ate_test(records, inf_config),
        iot=iot_test(records, inf_config),
        results=results,
    )


def run(config: RunConfig) -> AnalysisReport:
    """Execute the configured analysis; deterministic given the config and input bytes."""
    if config.counts is not None:
        records = _records_from_counts(config.counts)
        datasets = [MediatorData(name="counts", records=records, n_dropped=0, rules={})]
        n_rows = int(records.shape[0])
        ay_records = records
    else:
        datasets, n_rows, ay_records = ingest(config.data, config)

    base = InferenceConfig(alpha=config.alpha, draws=config.draws, seed=config.seed)
    run_ate = ate_test(ay_records, base)
    seeds = [
        int(child.generate_state(1, dtype=np.uint64)[0])
        for child in np.random.SeedSequence(config.seed).spawn(len(datasets))
    ]
    report = AnalysisReport(config=config, n_rows=n_rows, ate=run_ate)
    for data, seed in zip(datasets, seeds):
        report.mediators.append(
            _analyze_mediator(data.name, data.records, data.n_dropped, data.rules, config, seed)
        )
    return report


def _wald_dict(w: WaldResult) -> dict:
    return {"estimate": w.estimate, "se": w.se, "ci": [w.ci[0], w.ci[1]]}


def _bounds_dict(b: BoundsResult | None, error: str | None) -> dict | None:
    if b is None:
        return {"error": error} if error else None
    return {
        "lower": b.lower,
        "upper": b.upper,
        "method": b.method.value,
        "binding_lower": b.binding_lower,
        "binding_upper": b.binding_upper,
        "incompatible": b.incompatible,
        "diagnostics": list(b.diagnostics),
    }


def _interval_dict(iv: IntervalEstimate | None, error: str | None) -> dict | None:
    if iv is None:
        return {"error": error} if error else None
    return {
        "bound_lower_hmu": iv.bound_lower_hmu,
        "bound_upper_hmu": iv.bound_upper_hmu,
        "ci_lower": iv.ci_lower,
        "ci_upper": iv.ci_upper,
        "crossed": iv.crossed,
        "smoothed_arms": list(iv.smoothed_arms),
        "lower_expressions": [
            {"label": e.label, "estimate": e.estimate, "se": e.se} for e in iv.lower_expressions
        ],
        "upper_expressions": [
            {"label": e.label, "estimate": e.estimate, "se": e.se} for e in iv.upper_expressions
        ],
        "selection": {
            "lower": {
                "selected": list(iv.lower_diagnostics.selected),
                "k0": iv.lower_diagnostics.k0,
                "k_half": iv.lower_diagnostics.k_half,
                "k_ci": iv.lower_diagnostics.k_ci,
                "zero_variance": list(iv.lower_diagnostics.zero_variance),
            },
            "upper": {
                "selected": list(iv.upper_diagnostics.selected),
                "k0": iv.upper_diagnostics.k0,
                "k_half": iv.upper_diagnostics.k_half,
                "k_ci": iv.upper_diagnostics.k_ci,
                "zero_variance": list(iv.upper_diagnostics.zero_variance),
            },
        },
    }


def _report_dict(report: AnalysisReport) -> dict:
    cfg = report.config
    return {
        "schema": SCHEMA,
        "version": __version__,
        "config": {
            "data": cfg.data,
            "treatment": cfg.treatment,
            "outcome": cfg.outcome,
            "mediators": list(cfg.mediators),
            "dichotomize": cfg.dichotomize,
            "assumptions": [a.value for a in cfg.assumptions],
            "reference": cfg.reference,
            "alpha": cfg.alpha,
            "draws": cfg.draws,
            "seed": cfg.seed,
            "format": cfg.format,
            "counts": list(cfg.counts) if cfg.counts is not None else None,
            "strict": cfg.strict,
        },
        "n_rows": report.n_rows,
        "ate": _wald_dict(report.ate),
        "mediators": [
            {
                "name": m.name,
                "n_used": m.n_used,
                "n_dropped": m.n_dropped,
                "n1": m.n1,
                "n0": m.n0,
                "counts": list(m.counts),
                "dichotomization": m.rules,
                "ate": _wald_dict(m.ate),
                "iot": _wald_dict(m.iot),
                "results": [
                    {
                        "assumptions": r.assumptions.value,
                        "reference": r.reference,
                        "incompatible": r.incompatible,
                        "closed_form": _bounds_dict(r.closed_form, r.closed_form_error),
                        "lp": _bounds_dict(r.lp, r.lp_error),
                        "ande": _bounds_dict(r.ande, None),
                        "inference": _interval_dict(r.inference, r.inference_error),
                    }
                    for r in m.results
                ],
            }
            for m in report.mediators
        ],
    }


def _fmt(value: float | None) -> str:
    return "" if value is None else format(float(value), ".10g")


def emit_plotdata(report: AnalysisReport) -> str:
    """Figure-ready rows: one per (mediator x method), CSV text.

    ``lo``/``hi`` on bounds rows are the plug-in sharp interval (closed form,
    or LP where no closed form exists), so structural guarantees like zero
    containment under NONE hold exactly; the half-median-unbiased estimates
    and selection detail live in the JSON report.  ``point`` is filled only
    for the iot rows.  ``ate_reference_line`` repeats the run-level ATE
    estimate on every row.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["mediator", "method", "point", "lo", "hi", "ci_lo", "ci_hi", "ate_reference_line"])
    tau = report.ate.estimate
    for m in report.mediators:
        writer.writerow(
            [m.name, "iot", _fmt(m.iot.estimate), "", "", _fmt(m.iot.ci[0]), _fmt(m.iot.ci[1]), _fmt(tau)]
        )
        for r in m.results:
            anie = r.closed_form if r.closed_form is not None else r.lp
            lo = _fmt(anie.lower) if anie is not None else ""
            hi = _fmt(anie.upper) if anie is not None else ""
            ci_lo = _fmt(r.inference.ci_lower) if r.inference is not None else ""
            ci_hi = _fmt(r.inference.ci_upper) if r.inference is not None else ""
            writer.writerow(
                [m.name, _METHOD_NAMES[r.assumptions], "", lo, hi, ci_lo, ci_hi, _fmt(tau)]
            )
    return buf.getvalue()


def emit_csv(report: AnalysisReport) -> str:
    """Flat per-(mediator x assumption-set) table with every headline number."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        [
            "mediator", "assumptions", "reference", "n_used", "n_dropped",
            "ate", "ate_se", "ate_ci_lo", "ate_ci_hi",
            "iot", "iot_se", "iot_ci_lo", "iot_ci_hi",
            "cf_lower", "cf_upper", "lp_lower", "lp_upper",
            "ande_lower", "ande_upper",
            "hmu_lower", "hmu_upper", "ci_lower", "ci_upper",
            "incompatible", "notes",
        ]
    )
    for m in report.mediators:
        for r in m.results:
            notes = "; ".join(
                filter(
                    None,
                    [
                        r.closed_form_error,
                        r.lp_error,
                        r.inference_error,
                        *(r.closed_form.diagnostics if r.closed_form is not None else ()),
                    ],
                )
            )
            writer.writerow(
                [
                    m.name, r.assumptions.value, r.reference, m.n_used, m.n_dropped,
                    _fmt(m.ate.estimate), _fmt(m.ate.se), _fmt(m.ate.ci[0]), _fmt(m.ate.ci[1]),
                    _fmt(m.iot.estimate), _fmt(m.iot.se), _fmt(m.iot.ci[0]), _fmt(m.iot.ci[1]),
                    _fmt(r.closed_form.lower) if r.closed_form else "",
                    _fmt(r.closed_form.upper) if r.closed_form else "",
                    _fmt(r.lp.lower) if r.lp else "",
                    _fmt(r.lp.upper) if r.lp else "",
                    _fmt(r.ande.lower) if r.ande else "",
                    _fmt(r.ande.upper) if r.ande else "",
                    _fmt(r.inference.bound_lower_hmu) if r.inference else "",
                    _fmt(r.inference.bound_upper_hmu) if r.inference else "",
                    _fmt(r.inference.ci_lower) if r.inference else "",
                    _fmt(r.inference.ci_upper) if r.inference else "",
                    int(r.incompatible), notes,
                ]
            )
    return buf.getvalue()


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mediation-bounds",
        description=(
            "Sharp bounds and inference for natural indirect effects with a binary "
            "treatment, mediator, and outcome."
        ),
    )
    parser.add_argument("--data", help="CSV file with a header row (UTF-8)")
    parser.add_argument("--treatment", default="a", help="treatment column name (default: a)")
    parser.add_argument("--outcome", default="y", help="outcome column name (default: y)")
    parser.add_argument("--mediators", default="", help="comma-separated mediator column names")
    parser.add_argument(
        "--dichotomize",
        default="",
        help=(
            "either one global rule for outcome and mediators, or comma-separated col=rule "
            "entries; rules: none | median-gt | threshold:x (strictly-greater comparisons; "
            "medians use the lower-median convention on non-missing values)"
        ),
    )
    parser.add_argument(
        "--assumptions",
        default="none",
        help="comma list from {none,mmr,mmr-pos-mediator} (default: none)",
    )
    parser.add_argument("--reference", type=int, default=1, choices=(0, 1), help="reference arm for delta (default: 1)")
    parser.add_argument("--alpha", type=float, default=0.05, help="two-sided CI level complement (default: 0.05)")
    parser.add_argument("--draws", type=int, default=2000, help="critical-value simulation draws (default: 2000)")
    parser.add_argument("--seed", type=int, default=0, help="reproducibility seed (default: 0)")
    parser.add_argument("--format", default="json", choices=("json", "csv", "plotdata"), help="output format")
    parser.add_argument(
        "--counts",
        help=(
            "skip --data and analyze eight comma-separated cell counts in order "
            "n00a0,n01a0,n10a0,n11a0,n00a1,n01a1,n10a1,n11a1 (n{ym}a{arm})"
        ),
    )
    parser.add_argument(
        "--strict",
        action="store_true",
        help="exit with code 4 when data contradict a requested assumption set",
    )
    return parser


def _config_from_args(ns: argparse.Namespace) -> RunConfig:
    mediators = tuple(m.strip() for m in ns.mediators.split(",") if m.strip())
    assumption_names = [a.strip() for a in ns.assumptions.split(",") if a.strip()]
    assumptions = []
    for name in assumption_names:
        try:
            assumptions.append(Assumptions(name))
        except ValueError:
            valid = ", ".join(a.value for a in Assumptions)
            raise ConfigError(f"unknown assumption set {name!r} (valid: {valid})") from None
    counts = None
    if ns.counts is not None:
        try:
            counts = tuple(int(tok) for tok in ns.counts.split(","))
        except ValueError:
            raise ConfigError(f"--counts must be 8 comma-separated integers, got {ns.counts!r}") from None
        if len(counts) != 8:
            raise ConfigError(f"--counts must have exactly 8 integers, got {len(counts)}")
        if any(c < 0 for c in counts):
            raise ConfigError("--counts entries must be nonnegative")
    if ns.draws < 100:
        raise ConfigError(f"--draws must be at least 100, got {ns.draws}")
    if ns.seed < 0:
        raise ConfigError(f"--seed must be nonnegative, got {ns.seed}")
    return RunConfig(
        data=ns.data,
        treatment=ns.treatment,
        outcome=ns.outcome,
        mediators=mediators,
        dichotomize=ns.dichotomize,
        assumptions=tuple(assumptions),
        reference=ns.reference,
        alpha=ns.alpha,
        draws=ns.draws,
        seed=ns.seed,
        format=ns.format,
        counts=counts,
        strict=ns.strict,
    )


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse already printed usage/help; translate to our exit codes
        return 0 if exc.code in (0, None) else 2
    try:
        config = _config_from_args(ns)
        report = run(config)
        if config.format == "json":
            text = report.to_json_text()
        elif config.format == "csv":
            text = emit_csv(report)
        else:
            text = emit_plotdata(report)
        sys.stdout.write(text)
        return 0
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 3
    except ValidationError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 3
    except AssumptionIncompatibilityError as exc:
        print(f"assumption incompatibility: {exc}", file=sys.stderr)
        return 4


def cli_entry() -> None:
    sys.exit(main())
