"""ODE residual of the truncated re-modified series as the stopping tolerance varies.

A correct operator leaves a residual that tracks the series truncation; this
prints both side by side.

    python scripts/residual_vs_tolerance.py --n 3 --q 1 --x 2
"""

import argparse
from dataclasses import dataclass

from humbert.operators import ode_residual, remodified_ode
from humbert.series import TruncationPolicy, remodified


@dataclass
class ResidualConfig:
    n: int = 3
    q: int = 1
    x: float = 2.0
    tolerances: tuple = (1e-2, 1e-4, 1e-6, 1e-8, 1e-10, 1e-12, 1e-14)


def main(cfg: ResidualConfig) -> None:
    lhs, s = remodified_ode(cfg.n, cfg.q)
    rhs = "w" if s == 0 else f"x^{s} w"
    print(f"I_{cfg.q}({cfg.n}, x): ({lhs}) w = {rhs}, x = {cfg.x}")
    print(f"{'rel_tol':>9} {'terms':>6} {'tail bound':>11} {'residual':>11}")
    for tol in cfg.tolerances:
        pol = TruncationPolicy(rel_tol=tol)
        ev = remodified(cfg.n, cfg.q, cfg.x, pol)
        print(f"{tol:9.0e} {ev.terms_used:6d} {ev.tail_bound:11.3e} {ode_residual(cfg.n, cfg.q, cfg.x, pol):11.3e}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--q", type=int, default=1)
    ap.add_argument("--x", type=float, default=2.0)
    a = ap.parse_args()
    main(ResidualConfig(a.n, a.q, a.x))
