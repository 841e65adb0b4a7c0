"""Text file formats and whole-dataset evaluation.

Three tab-separated UTF-8 formats are understood:

* taxonomy:     ``parent<TAB>child`` per line, ``#`` starts a comment line
* truth:        ``record_id<TAB>class1;class2;...``
* predictions:  ``record_id<TAB>R>A>A1;R>B`` (paths joined by ``>``)

Empty lines are skipped and CRLF line endings are accepted everywhere.
All parse errors carry the 1-based line number.
"""
from dataclasses import dataclass, field

from .confusion import HierarchicalConfusion, aggregate, best_true_path, check_record_kind, confuse_record
from .errors import (
    DuplicateClassInRecord,
    DuplicateRecord,
    EmptyIntersection,
    HierConfError,
    InvalidPath,
    MalformedLine,
    UnknownClass,
)
from .metrics import MetricReport, flat_metrics, hierarchical_prf, with_hierarchical
from .taxonomy import LabelDepth, PathCount, ProblemKind, Structure, build_taxonomy, format_path

MISSING_PREDICTION = "MissingPrediction"
MISSING_TRUTH = "MissingTruth"


@dataclass(frozen=True)
class EvaluationRun:
    model_name: str
    confusion: HierarchicalConfusion
    report: MetricReport
    record_count: int
    kind: ProblemKind
    skipped: list = field(default_factory=list)


def _text(data):
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    return data


def _lines(data):
    """Yield ``(line_no, line)`` for non-empty lines with CR stripped."""
    for no, line in enumerate(_text(data).split("\n"), start=1):
        line = line.rstrip("\r")
        if line.strip():
            yield no, line


def _split_record(line, no, source):
    parts = line.split("\t")
    if len(parts) != 2 or not parts[0] or not parts[1]:
        raise MalformedLine("expected 'record_id<TAB>value'", source=source, line=no)
    return parts


def _located(exc, source, no):
    exc.source = source
    exc.line = no
    return exc


def parse_taxonomy_file(data, source="<taxonomy>", declared_root=None):
    edges = []
    for no, line in _lines(data):
        if line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2 or not parts[0] or not parts[1]:
            raise MalformedLine("expected 'parent<TAB>child'", source=source, line=no)
        edges.append((parts[0], parts[1]))
    if not edges:
        raise MalformedLine("taxonomy file contains no edges", source=source)
    try:
        return build_taxonomy(edges, declared_root=declared_root)
    except HierConfError as exc:
        exc.source = source
        raise


def parse_truth_file(data, taxonomy, source="<truth>"):
    """Map record id to a frozenset of true classes."""
    truth = {}
    for no, line in _lines(data):
        record, value = _split_record(line, no, source)
        if record in truth:
            raise DuplicateRecord(f"record {record!r} listed twice", source=source, line=no)
        classes = value.split(";")
        for c in classes:
            if not c:
                raise MalformedLine(f"empty class in record {record!r}", source=source, line=no)
            if c not in taxonomy:
                raise UnknownClass(f"record {record!r}: unknown class {c!r}", source=source, line=no)
        if len(set(classes)) != len(classes):
            raise DuplicateClassInRecord(f"record {record!r} repeats a class", source=source, line=no)
        truth[record] = frozenset(classes)
    return truth


def parse_prediction_file(data, taxonomy, source="<pred>"):
    """Map record id to a tuple of predicted allocation paths.

    On tree taxonomies a bare class id may stand in for its (unique) path.
    """
    preds = {}
    for no, line in _lines(data):
        record, value = _split_record(line, no, source)
        if record in preds:
            raise DuplicateRecord(f"record {record!r} listed twice", source=source, line=no)
        paths = []
        for chunk in value.split(";"):
            if not chunk:
                raise MalformedLine(f"empty path in record {record!r}", source=source, line=no)
            try:
                paths.append(_parse_path(chunk, taxonomy))
            except InvalidPath as exc:
                raise _located(exc, source, no) from None
        preds[record] = tuple(paths)
    return preds


def _parse_path(chunk, taxonomy):
    nodes = tuple(chunk.split(">"))
    if len(nodes) == 1 and nodes[0] != taxonomy.root:
        node = nodes[0]
        if node not in taxonomy:
            raise InvalidPath(f"unknown node {node!r}")
        if taxonomy.kind is not Structure.TREE:
            raise InvalidPath(f"bare class {node!r} is ambiguous on a DAG taxonomy; give the full path")
        (nodes,) = taxonomy.true_paths(node)
    return taxonomy.validate_path(nodes)


def format_truth_file(truth):
    return "".join(f"{r}\t{';'.join(sorted(cs))}\n" for r, cs in truth.items())


def format_prediction_file(preds):
    return "".join(f"{r}\t{';'.join(format_path(p) for p in paths)}\n" for r, paths in preds.items())


def format_taxonomy_file(taxonomy):
    return "".join(f"{p}\t{c}\n" for p, c in sorted(taxonomy.edges))


def infer_kind(taxonomy, truth, preds=None):
    """Guess the problem kind from the taxonomy and the label files.

    MPL if any record has several true classes or predicted paths, NMLNP
    if any true class or predicted path ends at an inner node.
    """
    multi = any(len(cs) > 1 for cs in truth.values())
    partial = any(not taxonomy.is_leaf(c) for cs in truth.values() for c in cs)
    if preds is not None:
        multi = multi or any(len(ps) > 1 for ps in preds.values())
        partial = partial or any(not taxonomy.is_leaf(p[-1]) for ps in preds.values() for p in ps)
    return ProblemKind(
        taxonomy.kind,
        PathCount.MPL if multi else PathCount.SPL,
        LabelDepth.NMLNP if partial else LabelDepth.MLNP,
    )


def evaluate_model(taxonomy, truth, preds, kind=None, beta=1.0, *,
                   model_name="model", missing_as_root=False):
    """Score one model's predictions against the truth over a whole dataset.

    Records without a prediction are skipped and listed in ``skipped``
    unless ``missing_as_root`` is set, in which case they are scored as the
    bare root path (all false negatives). Predictions for unknown records are
    skipped too. Hierarchical precision/recall/F are filled in for
    single-path problems only.
    """
    if kind is None:
        kind = infer_kind(taxonomy, truth, preds)
    taxonomy.check_kind(kind)

    root_only = ((taxonomy.root,),)
    per_record = []
    pairs = []
    skipped = []
    for record, classes in truth.items():
        paths = preds.get(record)
        if paths is None:
            if not missing_as_root:
                skipped.append((record, MISSING_PREDICTION))
                continue
            paths = root_only
        try:
            check_record_kind(taxonomy, classes, paths, kind, allow_root_path=paths is root_only)
            per_record.append(confuse_record(taxonomy, classes, paths))
        except HierConfError as exc:
            exc.message = f"record {record!r}: {exc.message}"
            raise
        if kind.paths is PathCount.SPL:
            (cls,) = classes
            (pred,) = paths
            pairs.append((best_true_path(taxonomy.true_paths(cls), pred), pred))
    for record in preds:
        if record not in truth:
            skipped.append((record, MISSING_TRUTH))

    if not per_record:
        raise EmptyIntersection("no record has both a truth and a prediction")

    confusion = aggregate(per_record)
    report = flat_metrics(confusion)
    if pairs:
        report = with_hierarchical(report, *hierarchical_prf(pairs, beta), beta=beta)
    else:
        report = with_hierarchical(report, report.hp, report.hr, report.hf, beta=beta)
    return EvaluationRun(
        model_name=model_name,
        confusion=confusion,
        report=report,
        record_count=len(per_record),
        kind=kind,
        skipped=skipped,
    )


def load_files(taxonomy_path, truth_path):
    """Read a taxonomy and truth file from disk."""
    with open(taxonomy_path, "rb") as fh:
        taxonomy = parse_taxonomy_file(fh.read(), source=str(taxonomy_path))
    with open(truth_path, "rb") as fh:
        truth = parse_truth_file(fh.read(), taxonomy, source=str(truth_path))
    return taxonomy, truth


def load_predictions(path, taxonomy):
    with open(path, "rb") as fh:
        return parse_prediction_file(fh.read(), taxonomy, source=str(path))
