"""Hierarchical confusion matrix for single records and whole datasets.

Counts are made per node along the decisions a predicted path takes. One
public entry point, :func:`confuse_record`, covers every problem kind
(tree or DAG, single or multiple paths, leaf-mandatory or not).
:func:`confuse_spl_tree` and :func:`confuse_spl` are the single-path
building blocks it reduces to.
"""
from dataclasses import dataclass

from .errors import EmptyPredictions, EmptyTruePaths, EmptyTruth, InvalidPath, KindMismatch, UnknownClass
from .taxonomy import LabelDepth, PathCount, common_path, format_path


@dataclass(frozen=True)
class HierarchicalConfusion:
    tp: int = 0
    tn: int = 0
    fp: int = 0
    fn: int = 0

    def __post_init__(self):
        for name in ("tp", "tn", "fp", "fn"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 0:
                raise ValueError(f"{name} must be a non-negative integer, got {value!r}")

    def __add__(self, other):
        if not isinstance(other, HierarchicalConfusion):
            return NotImplemented
        return HierarchicalConfusion(
            self.tp + other.tp, self.tn + other.tn, self.fp + other.fp, self.fn + other.fn
        )

    def as_tuple(self):
        return (self.tp, self.tn, self.fp, self.fn)

    @property
    def total(self):
        return self.tp + self.tn + self.fp + self.fn


def aggregate(records):
    """Component-wise sum of confusions; an empty iterable gives all zeros."""
    total = HierarchicalConfusion()
    for c in records:
        total = total + c
    return total


def confuse_spl_tree(taxonomy, true_path, pred_path):
    """Confusion for one true path against one predicted path.

    The root is never counted. True negatives are the siblings of every
    node on the common path (minus the true path) together with the
    descendants of the common path's last node that neither path visits;
    both parts are merged as a set, so a node is never counted twice.
    """
    true_path = _checked(taxonomy, true_path)
    pred_path = _checked(taxonomy, pred_path)
    true_set = set(true_path)
    pred_set = set(pred_path)

    shared = common_path(true_path, pred_path)
    negatives = set()
    for node in shared:
        negatives |= taxonomy.neighbors(node)
    negatives -= true_set
    negatives |= taxonomy.descendants(shared[-1]) - true_set - pred_set

    return HierarchicalConfusion(
        tp=len((pred_set & true_set) - {taxonomy.root}),
        tn=len(negatives),
        fp=len(pred_set - true_set),
        fn=len(true_set - pred_set),
    )


def best_true_path(true_paths, pred_path):
    """Candidate true path with the longest common path to ``pred_path``.

    Ties go to the lexicographically smallest node sequence.
    """
    if not true_paths:
        raise EmptyTruePaths("no true paths to choose from")
    return min(true_paths, key=lambda p: (-len(common_path(p, pred_path)), tuple(p)))


def confuse_spl(taxonomy, true_paths, pred_path):
    """Single-path confusion when the true class is reachable by several paths.

    The true path that agrees longest with the prediction is used, which
    gives the classifier the most favourable reading of its output.
    """
    true_paths = list(true_paths)
    chosen = best_true_path(true_paths, tuple(pred_path))
    return confuse_spl_tree(taxonomy, chosen, pred_path)


def confuse_record(taxonomy, truth, preds, kind=None):
    """Confusion of one object with true classes ``truth`` and predicted paths ``preds``.

    Works for every problem kind:

    1. every prediction gets a score ``m``: its longest common path with any
       true path of any true class;
    2. predictions are processed by descending ``m`` (input order on ties);
    3. each prediction is paired with the still-unmatched class whose path
       agrees with it longest and scored like a single-path tree problem;
       that class is then used up. Once all classes are used up, every
       further prediction counts as false positives only;
    4. classes never matched add the length of their shortest true path
       (root excluded) to the false negatives.

    ``kind`` is optional; when given, the record is checked against it
    (single path, leaf-only labels, tree structure).
    """
    classes = _truth_classes(taxonomy, truth)
    paths = [_checked(taxonomy, p) for p in preds]
    if not paths:
        raise EmptyPredictions("record has no predicted paths")
    if kind is not None:
        check_record_kind(taxonomy, classes, paths, kind)

    candidates = {c: taxonomy.true_paths(c) for c in classes}

    scores = [
        max(len(common_path(t, p)) for c in classes for t in candidates[c])
        for p in paths
    ]
    order = sorted(range(len(paths)), key=lambda k: -scores[k])

    remaining = set(classes)
    total = HierarchicalConfusion()
    for k in order:
        pred = paths[k]
        if not remaining:
            total = total + HierarchicalConfusion(fp=len(pred) - 1)
            continue
        cls, true_path = min(
            ((c, t) for c in remaining for t in candidates[c]),
            key=lambda ct: (-len(common_path(ct[1], pred)), ct[1], ct[0]),
        )
        total = total + confuse_spl_tree(taxonomy, true_path, pred)
        remaining.discard(cls)

    missed = sum(min(len(t) - 1 for t in candidates[c]) for c in remaining)
    return total + HierarchicalConfusion(fn=missed)


def check_record_kind(taxonomy, classes, paths, kind, *, allow_root_path=False):
    """Raise :class:`KindMismatch` if a record breaks the declared problem kind."""
    taxonomy.check_kind(kind)
    if kind.paths is PathCount.SPL:
        if len(classes) != 1:
            raise KindMismatch(f"single-path problem but record has {len(classes)} true classes")
        if len(paths) != 1:
            raise KindMismatch(f"single-path problem but record has {len(paths)} predicted paths")
    if kind.depth is LabelDepth.MLNP:
        for c in classes:
            if not taxonomy.is_leaf(c):
                raise KindMismatch(f"leaf-mandatory problem but true class {c!r} is not a leaf")
        for p in paths:
            if allow_root_path and p == (taxonomy.root,):
                continue
            if not taxonomy.is_leaf(p[-1]):
                raise KindMismatch(
                    f"leaf-mandatory problem but predicted path {format_path(p)} ends at an inner node"
                )


def _truth_classes(taxonomy, truth):
    if isinstance(truth, str):
        truth = (truth,)
    classes = tuple(sorted(set(truth)))
    if not classes:
        raise EmptyTruth("record has no true classes")
    for c in classes:
        if c not in taxonomy:
            raise UnknownClass(f"unknown true class {c!r}")
    return classes


def _checked(taxonomy, path):
    if isinstance(path, str):
        raise InvalidPath(f"expected a sequence of node ids, got the string {path!r}")
    return taxonomy.validate_path(path)
