"""Factorisation patterns and Frobenius classes of x^5 + 2x^4 - 3x^3 + 1 prime by prime."""

import argparse
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from artinwd.errors import AmbiguityError
from artinwd.exact.finfield import ff_orbit_resolvent
from artinwd.fixture import parse_fixture
from artinwd.localgal import frobenius_class, is_unramified_at
from artinwd.lseries import primes_up_to

ROOT = Path(__file__).resolve().parent.parent


@dataclass
class Config:
    fixture: Path = ROOT / "fixtures" / "d10_quintic.fix"
    bound: int = 60


def main(cfg: Config):
    fx = parse_fixture(cfg.fixture)
    rule = fx.global_config.rule
    G = fx.group
    tally = Counter()
    for p in primes_up_to(cfg.bound):
        if not is_unramified_at(rule.coeffs, p):
            print(f"p = {p:3d}  ramified")
            continue
        try:
            fc = frobenius_class(rule.coeffs, p, G, rule.roots)
        except AmbiguityError as exc:
            print(f"p = {p:3d}  ambiguous: {exc}")
            tally["ambiguous"] += 1
            continue
        label = G.labels[G.classes[fc.class_index][0]]
        extra = ""
        if fc.resolvents:
            r1, r2, obs = fc.resolvents
            s2 = ff_orbit_resolvent(rule.coeffs, p, 2)
            extra = f"  r1={r1} r2={r2} stride1={obs} stride2={s2}"
        print(f"p = {p:3d}  type {fc.cycle_type}  class {fc.class_index} {label}{extra}")
        tally[fc.class_index] += 1
    sizes = [len(c) for c in G.classes]
    print("class counts:", dict(sorted(tally.items(), key=str)), "Chebotarev weights:", sizes)


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--fixture", type=Path, default=Config.fixture)
    ap.add_argument("--bound", type=int, default=Config.bound)
    main(Config(**vars(ap.parse_args())))
