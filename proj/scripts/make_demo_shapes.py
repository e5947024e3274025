#!/usr/bin/env python3
"""Writes the demo geometries (aircraft-like and submarine-like closed curves)
as curve JSON files. Outlines are hand-placed control polygons, resampled by
arclength and smoothed with a periodic Gaussian so the result is a simple,
numerically band-limited curve."""

import json
import sys

import numpy as np


def polygon_outline(points, n=2048, sigma=0.015):
    pts = np.asarray(points, dtype=float)
    closed = np.vstack([pts, pts[:1]])
    seg = np.diff(closed, axis=0)
    seg_len = np.hypot(seg[:, 0], seg[:, 1])
    s = np.concatenate([[0.0], np.cumsum(seg_len)])
    total = s[-1]
    # equal-arclength samples along the polygon
    targets = np.linspace(0.0, total, n, endpoint=False)
    idx = np.searchsorted(s, targets, side="right") - 1
    frac = (targets - s[idx]) / seg_len[idx]
    samples = closed[idx] + frac[:, None] * seg[idx]
    # periodic Gaussian smoothing in the spectral domain
    z = samples[:, 0] + 1j * samples[:, 1]
    coeffs = np.fft.fft(z) / n
    m = np.fft.fftfreq(n, d=1.0 / n)
    coeffs *= np.exp(-0.5 * (sigma * m) ** 2)
    return np.fft.ifft(coeffs) * n


def save_curve(z, path, n_modes=512):
    n = len(z)
    cx = np.fft.fft(z.real) / n
    cy = np.fft.fft(z.imag) / n
    half = n_modes // 2

    def centered(c):
        out = np.zeros(n_modes, dtype=complex)
        for m in range(-half, half):
            out[m + half] = c[m % n]
        return out

    ccx, ccy = centered(cx), centered(cy)
    # enforce conjugate symmetry exactly
    for arr in (ccx, ccy):
        arr[half] = arr[half].real
        arr[0] = arr[0].real
        for m in range(1, half):
            avg = 0.5 * (arr[half + m] + np.conj(arr[half - m]))
            arr[half + m] = avg
            arr[half - m] = np.conj(avg)
    dz = np.abs(np.diff(np.append(z, z[0])))
    doc = {
        "n_modes": n_modes,
        "coeffs_x": [[c.real, c.imag] for c in ccx],
        "coeffs_y": [[c.real, c.imag] for c in ccy],
        "length": float(np.sum(dz)),
    }
    with open(path, "w") as f:
        json.dump(doc, f)
    print("wrote", path)


AIRCRAFT = [
    (2.6, 0.00), (2.2, 0.12), (1.5, 0.16), (0.9, 0.22),
    (0.55, 0.95), (0.30, 1.05), (0.25, 0.30), (-0.6, 0.22),
    (-1.35, 0.65), (-1.55, 0.70), (-1.45, 0.25), (-1.75, 0.16),
    (-1.95, 0.00),
    (-1.75, -0.16), (-1.45, -0.25), (-1.55, -0.70), (-1.35, -0.65),
    (-0.6, -0.22), (0.25, -0.30), (0.30, -1.05), (0.55, -0.95),
    (0.9, -0.22), (1.5, -0.16), (2.2, -0.12),
]

SUBMARINE = [
    (2.9, 0.00), (2.55, 0.22), (1.6, 0.30), (0.9, 0.32),
    (0.55, 0.34), (0.45, 0.80), (0.15, 0.86), (0.05, 0.36),
    (-1.3, 0.30), (-2.2, 0.24), (-2.7, 0.42), (-2.85, 0.32),
    (-2.95, 0.00),
    (-2.85, -0.32), (-2.7, -0.42), (-2.2, -0.24), (-1.3, -0.30),
    (0.05, -0.36), (0.15, -0.86), (0.45, -0.80), (0.55, -0.34),
    (0.9, -0.32), (1.6, -0.30), (2.55, -0.22),
]


if __name__ == "__main__":
    outdir = sys.argv[1] if len(sys.argv) > 1 else "."
    save_curve(polygon_outline(AIRCRAFT), f"{outdir}/aircraft.json")
    save_curve(polygon_outline(SUBMARINE, sigma=0.012), f"{outdir}/submarine.json")
