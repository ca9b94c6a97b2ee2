"""Compare the three depth-k address constructions and print their sizes.

    python scripts/triple_oracle.py --a 3/5 --b 3/5 --rho 1/2 --max-depth 12
"""

import argparse
import time
from dataclasses import dataclass
from fractions import Fraction

from itinerary_lab.addresses import (
    admissible_words, critical_itineraries, geometric_addresses, omega_approx,
)
from itinerary_lab.maps import MapSystem


@dataclass
class Config:
    a: str = "3/5"
    b: str = "3/5"
    rho: str = "1/2"
    eps: float = 0.0
    max_depth: int = 12


def system_for(cfg: Config) -> MapSystem:
    if cfg.eps:
        return MapSystem.sine(*(float(Fraction(v)) for v in (cfg.a, cfg.b, cfg.rho)), cfg.eps)
    return MapSystem.affine(cfg.a, cfg.b, cfg.rho, mode="rational")


def run(cfg: Config) -> None:
    s = system_for(cfg)
    print(f"system {s.to_json()}")
    print(f"{'k':>3} {'refine':>8} {'filter':>8} {'geometric':>10} {'equal':>6} {'secs':>6}")
    for k in range(1, cfg.max_depth + 1):
        t0 = time.perf_counter()
        crit = critical_itineraries(s, k + 1)
        refined = omega_approx(s, k).as_set()
        filtered = admissible_words(crit, k).as_set()
        geometric = geometric_addresses(s, k).as_set()
        same = refined == filtered == geometric
        print(f"{k:>3} {len(refined):>8} {len(filtered):>8} {len(geometric):>10} "
              f"{str(same):>6} {time.perf_counter() - t0:>6.2f}")


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--a", default=Config.a)
    p.add_argument("--b", default=Config.b)
    p.add_argument("--rho", default=Config.rho)
    p.add_argument("--eps", type=float, default=Config.eps, help="sine amplitude (float mode)")
    p.add_argument("--max-depth", type=int, default=Config.max_depth)
    run(Config(**vars(p.parse_args())))


if __name__ == "__main__":
    main()
