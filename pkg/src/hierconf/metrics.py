"""Flat binary-classification measures and hierarchical precision/recall/F.

Ratios with a zero denominator come back as :class:`Undefined` rather than
0 or an exception, so that reports can show ``n/a`` and rankings can put
them last.
"""
import math
from dataclasses import dataclass, field, fields
from decimal import ROUND_HALF_UP, Decimal

from .errors import EmptyRecordList

FLAT_FIELDS = ("acc", "ppv", "tpr", "fnr", "fpr", "tnr", "pt", "f1", "mcc")
HIERARCHICAL_FIELDS = ("hp", "hr", "hf")
METRIC_NAMES = FLAT_FIELDS + HIERARCHICAL_FIELDS


@dataclass(frozen=True)
class Undefined:
    """Placeholder for a metric whose denominator is zero."""

    reason: str = "undefined"

    def __str__(self):
        return "n/a"

    def __bool__(self):
        return False


def is_defined(value):
    return not isinstance(value, Undefined)


NOT_COMPUTED = Undefined("hierarchical precision/recall only defined for single-path problems")


@dataclass(frozen=True)
class MetricReport:
    acc: object
    ppv: object
    tpr: object
    fnr: object
    fpr: object
    tnr: object
    pt: object
    f1: object
    mcc: object
    beta: float = 1.0
    hp: object = field(default=NOT_COMPUTED)
    hr: object = field(default=NOT_COMPUTED)
    hf: object = field(default=NOT_COMPUTED)

    def as_dict(self):
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def get(self, name):
        if name not in METRIC_NAMES:
            raise KeyError(f"unknown metric {name!r}")
        return getattr(self, name)


def _ratio(num, den, what):
    if den == 0:
        return Undefined(f"{what}: zero denominator")
    return num / den


def flat_metrics(c):
    """All flat measures for confusion ``c`` (a :class:`HierarchicalConfusion`).

    FNR is ``fn / (fn + tp)`` so that ``tpr + fnr == 1``.
    """
    tp, tn, fp, fn = c.tp, c.tn, c.fp, c.fn
    tpr = _ratio(tp, tp + fn, "tpr")
    tnr = _ratio(tn, tn + fp, "tnr")
    return MetricReport(
        acc=_ratio(tp + tn, tp + tn + fp + fn, "acc"),
        ppv=_ratio(tp, tp + fp, "ppv"),
        tpr=tpr,
        fnr=_ratio(fn, fn + tp, "fnr"),
        fpr=_ratio(fp, fp + tn, "fpr"),
        tnr=tnr,
        pt=_prevalence_threshold(tp, tn, fp, fn),
        f1=_ratio(2 * tp, 2 * tp + fp + fn, "f1"),
        mcc=_mcc(tp, tn, fp, fn),
    )


def _prevalence_threshold(tp, tn, fp, fn):
    if tp + fn == 0 or tn + fp == 0:
        return Undefined("pt: tpr or tnr undefined")
    # tpr + tnr - 1 has the sign and zero set of tp*tn - fp*fn; test it exactly
    if tp * tn == fp * fn:
        return Undefined("pt: tpr + tnr == 1")
    tpr = tp / (tp + fn)
    tnr = tn / (tn + fp)
    fpr = fp / (fp + tn)
    return (math.sqrt(tpr * fpr) + tnr - 1) / (tpr + tnr - 1)


def _mcc(tp, tn, fp, fn):
    factors = (tp + fp, tp + fn, tn + fp, tn + fn)
    if 0 in factors:
        return Undefined("mcc: zero marginal")
    den = math.prod(math.sqrt(f) for f in factors)
    return (tp * tn - fp * fn) / den


def f_beta(precision, recall, beta=1.0):
    if not (is_defined(precision) and is_defined(recall)):
        return Undefined("f: precision or recall undefined")
    if precision == 0 and recall == 0:
        return Undefined("f: precision and recall both zero")
    if precision == 0 or recall == 0:
        return 0.0
    b2 = beta * beta
    return (1 + b2) * precision * recall / (b2 * precision + recall)


def hierarchical_prf(records, beta=1.0):
    """Hierarchical precision, recall and F-beta over ``(true_path, pred_path)`` pairs.

    Intersections are plain node-set intersections, root included.

    >>> hierarchical_prf([(("R", "A", "A1", "A1a"), ("R", "A", "A2"))])
    (0.6666666666666666, 0.5, 0.5714285714285715)
    """
    if beta <= 0:
        raise ValueError(f"beta must be positive, got {beta}")
    records = list(records)
    if not records:
        raise EmptyRecordList("no (true, predicted) path pairs given")
    hits = n_pred = n_true = 0
    for true_path, pred_path in records:
        hits += len(set(true_path) & set(pred_path))
        n_pred += len(set(pred_path))
        n_true += len(set(true_path))
    hp = _ratio(hits, n_pred, "hp")
    hr = _ratio(hits, n_true, "hr")
    return hp, hr, f_beta(hp, hr, beta)


def with_hierarchical(report, hp, hr, hf, beta):
    return MetricReport(**{**report.as_dict(), "beta": beta, "hp": hp, "hr": hr, "hf": hf})


def format_percent(value):
    """Two-decimal percentage, half-up rounding; ``n/a`` when undefined."""
    if not is_defined(value):
        return "n/a"
    pct = (Decimal(value) * 100).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP)
    if pct == 0:
        pct = abs(pct)
    return f"{pct}"
