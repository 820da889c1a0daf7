"""Compare the two integration domains of the Airy representation of I_0(3, x).

For each x prints the numerical integral on the half line and on the full
line, the closed-form value of each integral from the Airy moments, and the
target I_0(3, x). A last column integrates the full line with the argument
rescaled to x t / 3^(2/3), the scaling under which the moment sum reproduces
I_{0,0}(x^3 / 27) = I_0(3, x).

    python scripts/airy_domain_study.py --xs 0 0.5 1 2 3
"""

import argparse
from dataclasses import dataclass

from humbert.identities import airy_moment_value, airy_transform_integral, check_airy_representation
from humbert.series import remodified


@dataclass
class StudyConfig:
    xs: tuple = (0.0, 0.5, 1.0, 2.0, 3.0)


def rescaled_full_line(x: float) -> float:
    return airy_transform_integral(x / 3 ** (2 / 3), "full_line").value


def main(cfg: StudyConfig) -> None:
    hdr = f"{'x':>5} {'half (quad)':>14} {'half (moments)':>15} {'full (quad)':>14} " \
          f"{'full (moments)':>15} {'I_0(3,x)':>12} {'rescaled full':>14}"
    print(hdr)
    for x in cfg.xs:
        half = check_airy_representation(x, "half_line")
        full = check_airy_representation(x, "full_line")
        print(f"{x:5.2f} {half.lhs:14.10f} {airy_moment_value(x, 'half_line'):15.10f} "
              f"{full.lhs:14.10f} {airy_moment_value(x, 'full_line'):15.10f} "
              f"{remodified(3, 0, x).value:12.8f} {rescaled_full_line(x):14.8f}")
    print("\nfull-line moments sum to I_{0,0}(x^3/81); the target is I_{0,0}(x^3/27).")
    print("full-line quadrature carries an oscillatory tail error, see its error estimate:")
    for x in cfg.xs:
        r = check_airy_representation(x, "full_line")
        print(f"  x={x:g}: estimate {r.error_estimate:.2e}, "
              f"actual {abs(r.lhs - airy_moment_value(x, 'full_line')):.2e}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--xs", type=float, nargs="+", default=list(StudyConfig.xs))
    args = ap.parse_args()
    main(StudyConfig(xs=tuple(args.xs)))
