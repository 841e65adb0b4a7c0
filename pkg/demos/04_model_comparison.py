"""
Ranking models
==============

Six transposon classifiers, given only their published confusion counts,
ranked by MCC. Then the same comparison through the command line on small
files written to a temporary directory.
"""

import subprocess
import sys
import tempfile
from pathlib import Path

from hierconf import HierarchicalConfusion, flat_metrics
from hierconf.cli import render_table, rank_models

counts = {
    "HC_GA": (19145, 27690, 7854, 7744),
    "HC_LGA": (18420, 25582, 8598, 8469),
    "NLLCPN": (17608, 24765, 9410, 9281),
    "RFSB": (22833, 34026, 4131, 4056),
    "TERL": (366, 630, 18776, 26523),
    "TopDown": (1415, 2743, 16603, 25474),
}
entries = []
for name, c in counts.items():
    confusion = HierarchicalConfusion(*c)
    entries.append((name, confusion, flat_metrics(confusion)))

print(render_table(rank_models(entries, "mcc")))

# %%
# The same thing from files, via ``python -m hierconf compare``.
tmp = Path(tempfile.mkdtemp())
(tmp / "taxonomy.tsv").write_text("R\tA\nR\tB\nA\tA1\nA\tA2\nB\tB1\nB\tB2\n")
(tmp / "truth.tsv").write_text("x1\tA1\nx2\tB2\nx3\tA2\n")
(tmp / "good.tsv").write_text("x1\tR>A>A1\nx2\tR>B>B2\nx3\tR>A>A1\n")
(tmp / "poor.tsv").write_text("x1\tR>B>B1\nx2\tR>B>B1\nx3\tR>A>A1\n")

cmd = [
    sys.executable, "-m", "hierconf", "compare",
    "--taxonomy", str(tmp / "taxonomy.tsv"), "--truth", str(tmp / "truth.tsv"),
    "--pred", f"good={tmp / 'good.tsv'}", "--pred", f"poor={tmp / 'poor.tsv'}",
]
print(subprocess.run(cmd, capture_output=True, text=True, check=True).stdout)
