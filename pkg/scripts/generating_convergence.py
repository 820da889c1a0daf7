"""Convergence of the truncated generating-function sum in the box size M.

Sums I_m(x) over m in [-M, M]^p and compares with exp(p + x). Shows how the
error falls with M and which M is needed to reach a target tolerance.

    python scripts/generating_convergence.py --p 3 --x 0.5 --m-max 12
"""

import argparse
from dataclasses import dataclass

from humbert.identities import check_generating_function


@dataclass
class ConvergenceConfig:
    p: int = 3
    x: float = 0.5
    m_max: int = 12
    target: float = 1e-6


def main(cfg: ConvergenceConfig) -> None:
    print(f"p={cfg.p}, x={cfg.x}: relative error of the box sum against exp(p + x)")
    first_ok = None
    for M in range(1, cfg.m_max + 1):
        r = check_generating_function(cfg.p, cfg.x, M, tolerance=cfg.target)
        mark = "ok" if r.passed else ""
        if r.passed and first_ok is None:
            first_ok = M
        print(f"  M={M:3d}  {r.rel_residual:.3e}  {mark}")
    if first_ok is None:
        print(f"target {cfg.target:g} not reached for M <= {cfg.m_max}")
    else:
        print(f"target {cfg.target:g} first reached at M={first_ok}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=ConvergenceConfig.p)
    ap.add_argument("--x", type=float, default=ConvergenceConfig.x)
    ap.add_argument("--m-max", type=int, default=ConvergenceConfig.m_max)
    ap.add_argument("--target", type=float, default=ConvergenceConfig.target)
    a = ap.parse_args()
    main(ConvergenceConfig(a.p, a.x, a.m_max, a.target))
