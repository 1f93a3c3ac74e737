# %% [markdown]
# # Command-line reports
#
# Every report is driven by one configuration file.  Here the fast commands
# run against the shipped reference configuration into a scratch directory.

# %%
import tempfile
from pathlib import Path

from h2ion.cli import main

cfg = Path(__file__).resolve().parents[1] / "configs" / "reference.cfg" if "__file__" in globals() \
    else Path("../configs/reference.cfg")
out = Path(tempfile.mkdtemp())
for cmd in ("levels", "sensitivity", "budget", "rabi", "bottle"):
    print(f"$ h2ion {cmd} --config {cfg.name}")
    print("exit", main([cmd, "--config", str(cfg), "--out", str(out)]))

# %%
print(sorted(p.name for p in out.iterdir()))
print((out / "table4.csv").read_text().splitlines()[:4])
