"""zeta_F zeta_Q^2 = zeta_L^2 zeta_K for the dihedral quintic, checked as characters and coefficientwise."""

import argparse
import time
from dataclasses import dataclass
from pathlib import Path

from artinwd.fixture import parse_fixture
from artinwd.lseries import zeta_identity_check

ROOT = Path(__file__).resolve().parent.parent


@dataclass
class Config:
    fixture: Path = ROOT / "fixtures" / "d10_quintic.fix"
    limit: int = 1000


def main(cfg: Config):
    fx = parse_fixture(cfg.fixture)
    z = fx.zeta
    start = time.perf_counter()
    report = zeta_identity_check(z["lhs"], z["rhs"], fx.global_config.rule, cfg.limit)
    elapsed = time.perf_counter() - start
    print(f"character identity: {'holds' if report.character_identity else 'fails'}")
    print(f"coefficients to n <= {cfg.limit}: {report.message} ({elapsed:.2f} s)")
    print("first coefficients of zeta_F zeta_Q^2:", ", ".join(report.lhs[:20]))
    return 0 if report.ok else 1


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--fixture", type=Path, default=Config.fixture)
    ap.add_argument("--limit", type=int, default=Config.limit)
    raise SystemExit(main(Config(**vars(ap.parse_args()))))
