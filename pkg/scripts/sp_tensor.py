"""Decompose sp(n) (x) sp(m) and report Euler factors and conductors of the pieces."""

import argparse
from dataclasses import dataclass

from artinwd.chars import trivial_character
from artinwd.weildeligne import WDComponent, WDRep, unramified_data, wd_conductor, wd_local_polynomial, wd_tensor


@dataclass
class Config:
    n: int = 2
    m: int = 2
    q: int = 5


def main(cfg: Config):
    data = unramified_data(cfg.q)
    one = trivial_character(data.G)
    A = WDRep(data, (WDComponent(one, sp=cfg.n),))
    B = WDRep(data, (WDComponent(one, sp=cfg.m),))
    T = wd_tensor(A, B)
    print(f"sp({cfg.n}) (x) sp({cfg.m}) over a field with q = {cfg.q}:")
    for c in T.components:
        piece = WDRep(data, (c,))
        print(f"  sp({c.sp}) twisted by weight {c.twist.weight}: "
              f"P = {wd_local_polynomial(piece).to_string()}, conductor {wd_conductor(piece)}")
    print(f"total: dim {T.dim}, P = {wd_local_polynomial(T).to_string()}, conductor {wd_conductor(T)}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=Config.n)
    ap.add_argument("--m", type=int, default=Config.m)
    ap.add_argument("--q", type=int, default=Config.q)
    main(Config(**vars(ap.parse_args())))
