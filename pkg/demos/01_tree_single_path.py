"""
Scoring a single prediction on a tree
=====================================

A snack taxonomy, one object whose true class is ``dark``, and a classifier
that went down the right branch but picked the wrong leaf.
"""

from hierconf import build_taxonomy, confuse_spl_tree, flat_metrics, format_percent

taxonomy = build_taxonomy([
    ("snack", "sweet"), ("snack", "salty"),
    ("sweet", "chocolate"), ("sweet", "pastry"),
    ("chocolate", "dark"), ("chocolate", "white"), ("chocolate", "milk"),
    ("pastry", "muffin"), ("pastry", "croissant"),
    ("salty", "chips"), ("salty", "pretzel"),
])
print(taxonomy)

true_path = taxonomy.true_paths("dark")[0]
print("true path:", " > ".join(true_path))

# %%
# A near miss: right chocolate, wrong kind.
near = ("snack", "sweet", "chocolate", "white")
print("near miss:", confuse_spl_tree(taxonomy, true_path, near))

# %%
# A far miss: wrong branch right below the root. Fewer true positives, and
# the nodes below the root that neither path touches count as true negatives.
far = ("snack", "salty", "chips")
print("far miss: ", confuse_spl_tree(taxonomy, true_path, far))

# %%
# Flat measures follow directly from the counts.
report = flat_metrics(confuse_spl_tree(taxonomy, true_path, near))
for name in ("acc", "ppv", "tpr", "f1", "mcc"):
    print(f"{name:>4}: {format_percent(report.get(name))}%")
