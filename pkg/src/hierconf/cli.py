"""Command line front end: ``hierconf evaluate`` and ``hierconf compare``.

Exit codes: 0 on success, 2 on input errors (bad flags, unreadable or
malformed files), 1 on unexpected internal errors.
"""
import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .confusion import HierarchicalConfusion
from .dataset import evaluate_model, infer_kind, load_files, load_predictions
from .errors import HierConfError, MalformedLine
from .metrics import METRIC_NAMES, MetricReport, flat_metrics, format_percent, is_defined
from .taxonomy import ProblemKind

COUNT_NAMES = ("tp", "tn", "fp", "fn")
HEADER = ("model",) + COUNT_NAMES + METRIC_NAMES


class UsageError(HierConfError):
    pass


@dataclass(frozen=True)
class ComparisonRow:
    model_name: str
    confusion: HierarchicalConfusion
    report: MetricReport
    rank: int


@dataclass(frozen=True)
class ComparisonTable:
    rows: list
    rank_metric: str


def rank_models(entries, rank_metric="mcc"):
    """Build a :class:`ComparisonTable` from ``(name, confusion, report)`` triples.

    Higher is better; undefined values rank last. Equal values share the
    smaller rank and are listed by model name.
    """
    if rank_metric not in METRIC_NAMES:
        raise UsageError(f"cannot rank by unknown metric {rank_metric!r}")

    def sort_key(entry):
        value = entry[2].get(rank_metric)
        return (0, -value, entry[0]) if is_defined(value) else (1, 0.0, entry[0])

    ordered = sorted(entries, key=sort_key)
    rows = []
    prev_value = object()
    rank = 0
    for pos, (name, confusion, report) in enumerate(ordered, start=1):
        value = report.get(rank_metric)
        key = value if is_defined(value) else None
        if key != prev_value:
            rank = pos
            prev_value = key
        rows.append(ComparisonRow(name, confusion, report, rank))
    return ComparisonTable(rows, rank_metric)


def _cells(name, confusion, report):
    values = [name] + [str(v) for v in confusion.as_tuple()]
    values += [format_percent(report.get(m)) for m in METRIC_NAMES]
    return values


def _json_value(cell):
    if cell == "n/a":
        return cell
    return float(cell)


def _json_object(name, confusion, report):
    cells = _cells(name, confusion, report)
    obj = {"model": name}
    obj.update(zip(COUNT_NAMES, confusion.as_tuple()))
    obj.update((m, _json_value(c)) for m, c in zip(METRIC_NAMES, cells[5:]))
    return obj


def render_run(run, fmt="tsv"):
    if fmt == "json":
        return json.dumps(_json_object(run.model_name, run.confusion, run.report), indent=2) + "\n"
    return "\t".join(HEADER) + "\n" + "\t".join(_cells(run.model_name, run.confusion, run.report)) + "\n"


def render_table(table, fmt="tsv"):
    if fmt == "json":
        objs = []
        for row in table.rows:
            obj = _json_object(row.model_name, row.confusion, row.report)
            obj["rank"] = row.rank
            objs.append(obj)
        return json.dumps({"rank_by": table.rank_metric, "rows": objs}, indent=2) + "\n"
    lines = ["\t".join(HEADER + ("rank",))]
    for row in table.rows:
        lines.append("\t".join(_cells(row.model_name, row.confusion, row.report) + [str(row.rank)]))
    return "\n".join(lines) + "\n"


def parse_replay_counts(data, source="<replay>"):
    """Read ``model<TAB>tp<TAB>tn<TAB>fp<TAB>fn`` lines into ``(name, confusion)`` pairs."""
    out = []
    for no, line in enumerate(data.splitlines(), start=1):
        line = line.rstrip("\r")
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 5:
            raise MalformedLine("expected 'model<TAB>tp<TAB>tn<TAB>fp<TAB>fn'", source=source, line=no)
        try:
            counts = [int(p.replace(",", "")) for p in parts[1:]]
            out.append((parts[0], HierarchicalConfusion(*counts)))
        except ValueError:
            raise MalformedLine("counts must be non-negative integers", source=source, line=no) from None
    return out


def _kind(args, taxonomy, truth, preds_maps):
    if args.kind == "auto":
        merged = {}
        for preds in preds_maps:
            for record, paths in preds.items():
                if len(paths) > len(merged.get(record, ())):
                    merged[record] = paths
        return infer_kind(taxonomy, truth, merged)
    try:
        return ProblemKind.parse(args.kind)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_evaluate(args, out):
    taxonomy, truth = load_files(args.taxonomy, args.truth)
    preds = load_predictions(args.pred, taxonomy)
    kind = _kind(args, taxonomy, truth, [preds])
    name = args.name or Path(args.pred).stem
    run = evaluate_model(taxonomy, truth, preds, kind, args.beta,
                         model_name=name, missing_as_root=args.missing_as_root)
    _report_skipped(run)
    out.write(render_run(run, args.format))
    return 0


def _parse_model_spec(spec):
    name, sep, path = spec.partition("=")
    if not sep or not name or not path:
        raise UsageError(f"--pred expects NAME=FILE, got {spec!r}")
    return name, path


def cmd_compare(args, out):
    if args.replay_counts:
        with open(args.replay_counts, encoding="utf-8") as fh:
            counts = parse_replay_counts(fh.read(), source=args.replay_counts)
        _check_unique([name for name, _ in counts])
        entries = [(name, c, flat_metrics(c)) for name, c in counts]
    else:
        if not (args.taxonomy and args.truth and args.pred):
            raise UsageError("compare needs --taxonomy, --truth and at least one --pred NAME=FILE")
        specs = [_parse_model_spec(s) for s in args.pred]
        _check_unique([name for name, _ in specs])
        taxonomy, truth = load_files(args.taxonomy, args.truth)
        loaded = [(name, load_predictions(path, taxonomy)) for name, path in specs]
        kind = _kind(args, taxonomy, truth, [p for _, p in loaded])
        entries = []
        for name, preds in loaded:
            run = evaluate_model(taxonomy, truth, preds, kind, args.beta,
                                 model_name=name, missing_as_root=args.missing_as_root)
            _report_skipped(run)
            entries.append((name, run.confusion, run.report))
    if not entries:
        raise UsageError("no models to compare")
    out.write(render_table(rank_models(entries, args.rank_by), args.format))
    return 0


def _check_unique(names):
    seen = set()
    for name in names:
        if name in seen:
            raise UsageError(f"duplicate model name {name!r}")
        seen.add(name)


def _report_skipped(run):
    if run.skipped:
        reasons = {}
        for _, reason in run.skipped:
            reasons[reason] = reasons.get(reason, 0) + 1
        summary = ", ".join(f"{n} {r}" for r, n in sorted(reasons.items()))
        print(f"hierconf: {run.model_name}: skipped {len(run.skipped)} records ({summary})", file=sys.stderr)


def _positive_float(text):
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser():
    parser = argparse.ArgumentParser(prog="hierconf", description="Hierarchical confusion matrix evaluation.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--taxonomy", help="parent<TAB>child edge file")
        p.add_argument("--truth", help="record<TAB>class;class file")
        p.add_argument("--beta", type=_positive_float, default=1.0, help="beta for hF (default 1.0)")
        p.add_argument("--format", choices=("tsv", "json"), default="tsv")
        p.add_argument("--missing-as-root", action="store_true",
                       help="score records without a prediction as the bare root path")
        p.add_argument("--kind", default="auto",
                       help="auto, or STRUCTURE-PATHS-DEPTH such as tree-spl-mlnp or dag-mpl-nmlnp")

    ev = sub.add_parser("evaluate", help="score one prediction file")
    common(ev)
    ev.add_argument("--pred", required=True, help="record<TAB>path;path file")
    ev.add_argument("--name", help="model name in the report (default: prediction file stem)")
    ev.set_defaults(func=cmd_evaluate)

    cmp_ = sub.add_parser("compare", help="score and rank several prediction files")
    common(cmp_)
    cmp_.add_argument("--pred", action="append", metavar="NAME=FILE", help="repeatable")
    cmp_.add_argument("--rank-by", default="mcc", choices=METRIC_NAMES)
    cmp_.add_argument("--replay-counts", help=argparse.SUPPRESS)
    cmp_.set_defaults(func=cmd_compare)
    return parser


def main(argv=None, out=None):
    out = out if out is not None else sys.stdout
    args = build_parser().parse_args(argv)
    if args.command == "evaluate" and not (args.taxonomy and args.truth):
        print("hierconf: error: evaluate needs --taxonomy and --truth", file=sys.stderr)
        return 2
    try:
        return args.func(args, out)
    except (HierConfError, OSError, UnicodeDecodeError) as exc:
        print(f"hierconf: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"hierconf: internal error: {exc!r}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
