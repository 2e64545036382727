"""
Running the whole pipeline
==========================

:func:`sphyper.pipeline.analyze` runs every stage for one pair and records a
status per stage instead of raising.  :func:`sphyper.pipeline.sweep` does it
for all pairs of a degree, caching each row on disk so that a rerun is cheap.
"""
import tempfile
from pathlib import Path

from sphyper.pipeline import PipelineConfig, analyze, sweep

###############################################################################
# One row
# -------

rep = analyze("C1^6 | C14")
for key, value in rep.csv_row().items():
    print(f"{key:7s} {value}")

###############################################################################
# A degree-4 sweep
# ----------------

with tempfile.TemporaryDirectory() as tmp:
    reports, summary = sweep(4, PipelineConfig(degree=4, out=tmp))
    print(summary)
    print((Path(tmp) / "degree4.csv").read_text().splitlines()[0])
    largest = max((r for r in reports if r.index_value), key=lambda r: r.index_value)
    print("largest index:", largest.pair, largest.ilevel, largest.iindex)
