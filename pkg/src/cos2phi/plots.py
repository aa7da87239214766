"""Plot-script emission.

The package never renders figures; it writes small self-contained matplotlib
scripts next to the CSV data they draw, referencing the data file by relative
path.  Each figure tag has a column schema that the dataset must satisfy.
"""

from __future__ import annotations

import csv
from pathlib import Path

__all__ = ["FIGURE_SCHEMAS", "emit_plot_script"]

FIGURE_SCHEMAS = {
    "fig4": ("ng", "e0_norm", "e1_norm", "e2_norm"),
    "fig8": ("dphi", "tphi_s", "tphi_charge_s", "tphi_flux_s", "t1_s"),
    "fig9": ("ejs2_ghz", "ec_ghz", "t2_s", "limiting"),
    "spectrum": ("x", "e0_ghz"),
    "elements": ("x", "m_n", "m_1phi", "m_2phi"),
    "semiclassics": ("dphi", "f01_model_ghz"),
}

_TEMPLATES = {
    "fig4": """\
import matplotlib.pyplot as plt
import numpy as np

data = np.genfromtxt({csv!r}, delimiter=",", names=True)
fig, ax = plt.subplots(figsize=(4, 3))
for level, color in zip(("e0_norm", "e1_norm", "e2_norm"), ("C0", "C1", "C2")):
    ax.plot(data["ng"], data[level], color=color, label=level)
ax.set_xlabel("offset charge $n_g$")
ax.set_ylabel("$E_m / E_{{01}}^{{pure}}(n_g=0)$")
ax.legend(frameon=False)
fig.tight_layout()
fig.savefig({png!r}, dpi=200)
""",
    "fig8": """\
import matplotlib.pyplot as plt
import numpy as np

data = np.genfromtxt({csv!r}, delimiter=",", names=True)
fig, ax = plt.subplots(figsize=(4, 3))
ax.loglog(data["dphi"], data["tphi_s"], "k-", label=r"$T_\\varphi$")
ax.loglog(data["dphi"], data["tphi_charge_s"], "C0--", label=r"$T_\\varphi$ charge")
ax.loglog(data["dphi"], data["tphi_flux_s"], "C1--", label=r"$T_\\varphi$ flux")
ax.loglog(data["dphi"], data["t1_s"], "C2-", label="$T_1$")
ax.set_xlabel(r"flux offset $\\delta\\Phi$ ($\\Phi_0$)")
ax.set_ylabel("time (s)")
ax.legend(frameon=False, fontsize=8)
fig.tight_layout()
fig.savefig({png!r}, dpi=200)
""",
    "fig9": """\
import matplotlib.pyplot as plt
import numpy as np

rows = np.genfromtxt({csv!r}, delimiter=",", names=True, dtype=None, encoding="utf-8")
ejs2 = np.unique(rows["ejs2_ghz"])
ec = np.unique(rows["ec_ghz"])
t2 = np.full((ec.size, ejs2.size), np.nan)
for row in rows:
    i = np.searchsorted(ec, row["ec_ghz"])
    j = np.searchsorted(ejs2, row["ejs2_ghz"])
    t2[i, j] = row["t2_s"]
fig, ax = plt.subplots(figsize=(4.2, 3.4))
mesh = ax.pcolormesh(
    ejs2, ec, np.clip(t2, 100e-6, 20e-3), shading="nearest",
    norm=plt.matplotlib.colors.LogNorm(vmin=100e-6, vmax=20e-3),
)
for tag, color in (("temperature", "black"), ("charge", "tab:blue"), ("flux", "salmon")):
    sel = rows["limiting"] == tag
    ax.scatter(rows["ejs2_ghz"][sel], rows["ec_ghz"][sel], s=4, c=color, alpha=0.4, label=tag)
ax.set_xscale("log"); ax.set_yscale("log")
ax.set_xlabel(r"$E_{{J\\Sigma 2}}$ (GHz)"); ax.set_ylabel(r"$E_C$ (GHz)")
fig.colorbar(mesh, label="max $T_2$ (s)")
ax.legend(frameon=False, fontsize=7, loc="upper left")
fig.tight_layout()
fig.savefig({png!r}, dpi=200)
""",
    "spectrum": """\
import matplotlib.pyplot as plt
import numpy as np

data = np.genfromtxt({csv!r}, delimiter=",", names=True)
fig, ax = plt.subplots(figsize=(4, 3))
for name in data.dtype.names[1:]:
    ax.plot(data["x"], data[name], label=name)
ax.set_xlabel("sweep variable")
ax.set_ylabel("energy (GHz)")
ax.legend(frameon=False, fontsize=8)
fig.tight_layout()
fig.savefig({png!r}, dpi=200)
""",
    "elements": """\
import matplotlib.pyplot as plt
import numpy as np

data = np.genfromtxt({csv!r}, delimiter=",", names=True)
fig, ax = plt.subplots(figsize=(4, 3))
for name in ("m_n", "m_1phi", "m_2phi"):
    ax.loglog(data["x"], np.clip(data[name], 1e-12, None), label=name)
ax.set_xlabel("sweep variable")
ax.set_ylabel("matrix element magnitude")
ax.legend(frameon=False)
fig.tight_layout()
fig.savefig({png!r}, dpi=200)
""",
    "semiclassics": """\
import matplotlib.pyplot as plt
import numpy as np

data = np.genfromtxt({csv!r}, delimiter=",", names=True)
fig, ax = plt.subplots(figsize=(4, 3))
ax.loglog(data["dphi"], data["f01_model_ghz"], "C0-")
ax.set_xlabel(r"flux offset $\\delta\\Phi$ ($\\Phi_0$)")
ax.set_ylabel("two-level $f_{{01}}$ (GHz)")
fig.tight_layout()
fig.savefig({png!r}, dpi=200)
""",
}


def emit_plot_script(dataset: str | Path, figure_tag: str) -> str:
    """Return matplotlib script text for a dataset, validating its schema.

    The dataset header must contain every column the figure needs; missing
    columns are reported in the error.  The script references the CSV by its
    bare filename, so it should be saved alongside the data.
    """
    if figure_tag not in FIGURE_SCHEMAS:
        raise ValueError(
            f"unknown figure tag {figure_tag!r}; known: {sorted(FIGURE_SCHEMAS)}"
        )
    path = Path(dataset)
    with open(path, newline="") as handle:
        header = next(csv.reader(handle))
    missing = [col for col in FIGURE_SCHEMAS[figure_tag] if col not in header]
    if missing:
        raise ValueError(
            f"dataset {path.name} is missing columns {missing} required by {figure_tag}"
        )
    png = path.with_suffix(".png").name
    return _TEMPLATES[figure_tag].format(csv=path.name, png=png)
