"""#E(F_(p^n)) from the trace of Frobenius, cross-checked by enumeration in small degrees."""

import argparse
from dataclasses import dataclass

from artinwd.weildeligne import ec_count_extension, ec_point_count_bruteforce


@dataclass
class Config:
    curve: tuple = (0, -1, 1, 0, 0)  # y^2 + y = x^3 - x^2
    p: int = 7
    degree: int = 11
    check_up_to: int = 3


def main(cfg: Config):
    a = cfg.p + 1 - ec_point_count_bruteforce(cfg.curve, cfg.p)
    print(f"a_{cfg.p} = {a}")
    for n in range(2, cfg.check_up_to + 1):
        brute = ec_point_count_bruteforce(cfg.curve, cfg.p**n)
        rec = ec_count_extension(a, cfg.p, n)
        print(f"n = {n}: recurrence {rec}, enumeration {brute}, {'agree' if rec == brute else 'DISAGREE'}")
    print(f"#E(F_{cfg.p}^{cfg.degree}) = {ec_count_extension(a, cfg.p, cfg.degree)}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--curve", type=int, nargs=5, default=list(Config.curve), metavar="A")
    ap.add_argument("--p", type=int, default=Config.p)
    ap.add_argument("--degree", type=int, default=Config.degree)
    ap.add_argument("--check-up-to", type=int, default=Config.check_up_to)
    args = ap.parse_args()
    main(Config(tuple(args.curve), args.p, args.degree, args.check_up_to))
