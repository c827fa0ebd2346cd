"""Small harvested-information map over (Omega, d_A).

A coarse version of the full surface sweep: 20 x 20 log grid, CSV next
to this script, and a quick picture if matplotlib happens to be around.
The full-resolution run is `harvest preset fig1 --out <dir>`.
"""

import os

import numpy as np

from btzharvest.sweep import AxisSpec, SweepSpec, run_sweep, write_csv

OUT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "out")
os.makedirs(OUT, exist_ok=True)

spec = SweepSpec(
    axes=(AxisSpec("omega", "log", 0.01, 10.0, 20),
          AxisSpec("d_a", "log", 0.01, 20.0, 20)),
    fixed={"ads_length": 10.0, "mass": 0.01, "d_ab": 7.0, "zeta": 1},
)
rows, manifest = run_sweep(spec, progress=True)
csv_path = os.path.join(OUT, "information_map.csv")
write_csv(rows, csv_path)
print(f"{manifest['row_count']} rows -> {csv_path}")

bad = [r for r in rows if r["status"] != "ok"]
print(f"{len(bad)} rows with error status")

info = np.array([r["I_AB"] if r["status"] == "ok" else np.nan for r in rows])
info = info.reshape(20, 20)
omegas = np.geomspace(0.01, 10.0, 20)
dists = np.geomspace(0.01, 20.0, 20)

k = int(np.nanargmax(info))
print(f"max I_AB = {np.nanmax(info):.6f} at Omega = {omegas[k // 20]:.3g}, "
      f"d_A = {dists[k % 20]:.3g}")

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    print("matplotlib not installed; skipping the picture")
else:
    fig, ax = plt.subplots(figsize=(6, 5))
    mesh = ax.pcolormesh(omegas, dists, info.T, shading="nearest")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("Omega sigma")
    ax.set_ylabel("d_A / sigma")
    fig.colorbar(mesh, label="I_AB")
    png = os.path.join(OUT, "information_map.png")
    fig.savefig(png, dpi=150, bbox_inches="tight")
    print(f"picture -> {png}")
