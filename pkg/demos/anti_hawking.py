"""Response and effective temperature against the KMS temperature.

At gamma_A = 0.1 the detector sits deep enough that the black-hole part
of the Wightman function matters, and the response actually FALLS as
the horizon gets hotter over part of the range.  The effective
temperature read off the excitation-to-de-excitation ratio shows the
same inversion.
"""

import numpy as np

from btzharvest.correlations import (
    anti_hawking_strong,
    anti_hawking_weak,
    edr_temperature,
)
from btzharvest.detector import DetectorPair, compute_L_DD

GAMMA = 0.1
OMEGA = 1.0

t_grid = np.geomspace(0.01, 100.0, 31)
response, errors, t_edr = [], [], []
for t in t_grid:
    pair = DetectorPair.from_thermal(10.0, float(t), GAMMA, 7.0, OMEGA, 1)
    up = compute_L_DD(pair.spacetime, pair.r_a, OMEGA)
    down = compute_L_DD(pair.spacetime, pair.r_a, -OMEGA)
    response.append(up.value)
    errors.append(up.err)
    t_edr.append(edr_temperature(up.value, down.value, OMEGA))

print(" T_KMS      L_AA         T_EDR     T_EDR/T_KMS")
for t, f, te in zip(t_grid, response, t_edr):
    print(f"{t:8.3f} {f:12.6e} {te:10.4f} {te / t:10.4f}")
print()

weak, w_int = anti_hawking_weak(t_grid, response, errors)
strong, s_int = anti_hawking_strong(t_grid, t_edr)
print(f"response falls with temperature: {weak}")
for lo, hi in w_int:
    print(f"  on T in [{lo:.3g}, {hi:.3g}]")
print(f"effective temperature falls too: {strong}")
for lo, hi in s_int:
    print(f"  on T in [{lo:.3g}, {hi:.3g}]")

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    pass
else:
    import os
    out = os.path.join(os.path.dirname(os.path.abspath(__file__)), "out")
    os.makedirs(out, exist_ok=True)
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    ax1.loglog(t_grid, response)
    ax1.set_xlabel("T_A sigma")
    ax1.set_ylabel("L_AA")
    ax2.loglog(t_grid, t_edr, label="T_EDR")
    ax2.loglog(t_grid, t_grid, "--", label="T_A")
    ax2.set_xlabel("T_A sigma")
    ax2.legend()
    png = os.path.join(out, "anti_hawking.png")
    fig.savefig(png, dpi=150, bbox_inches="tight")
    print(f"picture -> {png}")
