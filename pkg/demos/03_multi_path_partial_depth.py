"""
Multiple labels and partial-depth predictions
=============================================

Objects may carry several true classes, classifiers may emit any number of
paths, and paths may stop above the leaves. Each prediction is paired
with the true class it matches best; unmatched predictions count as false
positives and unmatched classes as false negatives.
"""

from hierconf import build_taxonomy, confuse_record, evaluate_model, format_percent

taxonomy = build_taxonomy([
    ("R", "A"), ("R", "B"),
    ("A", "A1"), ("A", "A2"), ("B", "B1"), ("B", "B2"),
    ("A1", "A1a"), ("A1", "A1b"),
])

# %%
# One object, two true classes, two predictions.
truth = {"A1", "B1"}
preds = [("R", "A", "A1"), ("R", "A", "A2")]
print("two predictions:", confuse_record(taxonomy, truth, preds))

# one prediction too few: B1 is missed entirely
print("one prediction: ", confuse_record(taxonomy, truth, preds[:1]))

# stopping one level early (under-specialisation)
print("stops at A:     ", confuse_record(taxonomy, {"A1"}, [("R", "A")]))

# %%
# A whole dataset. Confusions are summed over records before any ratio is taken.
truth_map = {"o1": {"A1a"}, "o2": {"A2", "B1"}, "o3": {"B"}, "o4": {"A1b"}}
pred_map = {
    "o1": (("R", "A", "A1", "A1a"),),
    "o2": (("R", "A", "A2"), ("R", "B", "B2")),
    "o3": (("R", "B", "B1"),),
}
run = evaluate_model(taxonomy, truth_map, pred_map, model_name="demo")
print("\nkind:", run.kind, "| records:", run.record_count, "| skipped:", run.skipped)
print(run.confusion)
print({m: format_percent(run.report.get(m)) for m in ("acc", "ppv", "tpr", "f1", "mcc")})

run = evaluate_model(taxonomy, truth_map, pred_map, model_name="demo", missing_as_root=True)
print("with o4 scored as a bare root prediction:", run.confusion)
