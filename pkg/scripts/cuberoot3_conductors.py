"""Conductors and first Dirichlet coefficients for the characters of Q(zeta_3, 3^(1/3))."""

import argparse
from dataclasses import dataclass
from pathlib import Path

from artinwd.fixture import parse_fixture
from artinwd.localgal import conductor_exponent, local_polynomial
from artinwd.lseries import GlobalConfig, dirichlet_coefficients

ROOT = Path(__file__).resolve().parent.parent


@dataclass
class Config:
    fixture: Path = ROOT / "fixtures" / "q3_cuberoot3.fix"
    limit: int = 5


def main(cfg: Config):
    fx = parse_fixture(cfg.fixture)
    data = fx.ramification
    rule = fx.global_config.rule
    for name, chi in fx.characters.items():
        c = conductor_exponent(chi, data)
        P = local_polynomial(chi, data)
        config = GlobalConfig(chi.degree(), rule, chi, ramified={data.p: (P, int(c.total))})
        coeffs = dirichlet_coefficients(config, cfg.limit).to_literals()
        print(f"{name:5s} dim={chi.degree()} conductor={data.p}^{c.total} "
              f"(tame {c.tame}, wild {c.wild})  P_3={P.to_string()}  a_1..a_{cfg.limit} = {', '.join(coeffs)}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--fixture", type=Path, default=Config.fixture)
    ap.add_argument("--limit", type=int, default=Config.limit)
    main(Config(**vars(ap.parse_args())))
