"""Solve for the symmetric threshold across a range of branch widths.

Writes ``a,b,rho_star,bracket_width,defect_depth`` rows to stdout or ``--out``.
"""

import argparse
import csv
import sys
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from itinerary_lab.maps import MapSystem
from itinerary_lab.symmetry import solve_symmetric, verify_symmetry


@dataclass
class SweepConfig:
    b: float = 0.55
    a_min: float = 0.5
    a_max: float = 0.9
    steps: int = 9
    tol: float = 1e-10
    verify_depth: int = 10


def sweep(cfg: SweepConfig):
    for a in np.linspace(cfg.a_min, cfg.a_max, cfg.steps):
        a = round(float(a), 6)
        if a + cfg.b <= 1:
            continue
        s = MapSystem.affine(a, cfg.b, (a + 1 - cfg.b) / 2, mode="rational")
        sol = solve_symmetric(s, rho_tol=cfg.tol)
        lo, hi = sol.bracket
        ok = verify_symmetry(s, sol.rho_star, cfg.verify_depth).passed
        yield a, cfg.b, float(sol.rho_star), float(hi - lo), sol.certificate.depth_used, ok


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--b", type=float, default=SweepConfig.b)
    p.add_argument("--a-min", type=float, default=SweepConfig.a_min)
    p.add_argument("--a-max", type=float, default=SweepConfig.a_max)
    p.add_argument("--steps", type=int, default=SweepConfig.steps)
    p.add_argument("--tol", type=float, default=SweepConfig.tol)
    p.add_argument("--verify-depth", type=int, default=SweepConfig.verify_depth)
    p.add_argument("--out", default=None)
    args = vars(p.parse_args())
    out = args.pop("out")
    fh = open(out, "w", newline="") if out else sys.stdout
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["a", "b", "rho_star", "bracket_width", "defect_depth", "verified"])
    for row in sweep(SweepConfig(**args)):
        writer.writerow(row)
    if out:
        fh.close()


if __name__ == "__main__":
    main()
