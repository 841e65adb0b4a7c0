"""
Alternative true paths in a DAG
===============================

In a DAG one class can be reached along several routes. The prediction is
scored against whichever true route it agrees with longest.
"""

from hierconf import best_true_path, build_taxonomy, confuse_spl, confuse_spl_tree

taxonomy = build_taxonomy([
    ("books", "fiction"), ("books", "history"),
    ("fiction", "historical_novel"), ("history", "historical_novel"),
    ("fiction", "crime"), ("history", "biography"),
])
print(taxonomy, "\n")

routes = taxonomy.true_paths("historical_novel")
for r in routes:
    print("route:", " > ".join(r))

pred = ("books", "history", "historical_novel")
print("\nprediction:", " > ".join(pred))
for r in routes:
    print("  scored against", " > ".join(r), "->", confuse_spl_tree(taxonomy, r, pred))

print("chosen route:", " > ".join(best_true_path(routes, pred)))
print("result:      ", confuse_spl(taxonomy, routes, pred))
