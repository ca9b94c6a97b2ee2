"""Draw h at the symmetric threshold and the depth-k cylinders of the address set.

    python scripts/homeo_figures.py --a 0.7 --b 0.55 --outdir figures
"""

import argparse
import os
from dataclasses import dataclass

import numpy as np

from itinerary_lab import svg
from itinerary_lab.addresses import omega_approx
from itinerary_lab.maps import MapSystem
from itinerary_lab.projection import coding_pi, homeo_many
from itinerary_lab.symmetry import solve_symmetric


@dataclass
class FigureConfig:
    a: float = 0.7
    b: float = 0.55
    samples: int = 2001
    depth: int = 10
    outdir: str = "figures"


def make(cfg: FigureConfig) -> list:
    exact = MapSystem.affine(cfg.a, cfg.b, (cfg.a + 1 - cfg.b) / 2, mode="rational")
    rho = float(solve_symmetric(exact, rho_tol=1e-12).rho_star)
    s = MapSystem.affine(cfg.a, cfg.b, rho)
    xs = np.linspace(0.0, 1.0, cfg.samples)
    hs = homeo_many(s, xs)
    drift = float(np.max(np.abs(homeo_many(s, hs) - xs)))
    os.makedirs(cfg.outdir, exist_ok=True)
    tag = f"a{cfg.a}_b{cfg.b}"
    paths = [os.path.join(cfg.outdir, f"homeo_{tag}.svg"),
             os.path.join(cfg.outdir, f"cylinders_{tag}_k{cfg.depth}.svg")]
    with open(paths[0], "w") as fh:
        fh.write(svg.graph(xs, hs, f"h at rho*={rho:.10f}"))
    rows = [(w, coding_pi(w).lo, coding_pi(w).hi) for w in omega_approx(s, cfg.depth).words]
    with open(paths[1], "w") as fh:
        fh.write(svg.cylinder_bars(rows, f"depth-{cfg.depth} cylinders"))
    print(f"rho*={rho!r}  max|h(h(x))-x|={drift:.2e}  words={len(rows)}")
    return paths


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--a", type=float, default=FigureConfig.a)
    p.add_argument("--b", type=float, default=FigureConfig.b)
    p.add_argument("--samples", type=int, default=FigureConfig.samples)
    p.add_argument("--depth", type=int, default=FigureConfig.depth)
    p.add_argument("--outdir", default=FigureConfig.outdir)
    for path in make(FigureConfig(**vars(p.parse_args()))):
        print(path)


if __name__ == "__main__":
    main()
