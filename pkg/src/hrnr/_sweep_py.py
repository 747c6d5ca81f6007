"""NumPy fallback for the compiled sweep kernel (same contract as _sweep_cy)."""

import numpy as np


def atom_side_sweep(px, py, w, vx, vy, eps):
    m, n = vx.shape[0], px.shape[0]
    out = np.zeros((m, 6), dtype=np.float64)
    if m == 0 or n == 0:
        return out
    s = np.multiply.outer(vx, py) - np.multiply.outer(vy, px)
    e = (eps * np.hypot(vx, vy))[:, None]
    side_a = s > e
    side_b = s < -e
    on_line = s == 0.0
    unc = ~(side_a | side_b | on_line)
    t = np.multiply.outer(vx, px) + np.multiply.outer(vy, py)
    ray_p = on_line & (t > 0.0)
    ray_m = on_line & (t < 0.0)
    anchor = on_line & (t == 0.0)
    for col, mask in enumerate((side_a, side_b, ray_p, ray_m, anchor, unc)):
        out[:, col] = np.where(mask, w, 0.0).sum(axis=1)
    return out
