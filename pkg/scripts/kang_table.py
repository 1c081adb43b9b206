"""Print c(ij) next to the value of its Witt-formula relation for i + j <= N."""
import argparse
from dataclasses import dataclass

from gkm.moonshine import j_coefficients, kang_value


@dataclass
class Config:
    order: int = 10


def main(cfg: Config) -> int:
    need = max(i * (cfg.order - i) for i in range(1, cfg.order))
    jexp = j_coefficients(max(need, cfg.order))
    bad = 0
    print("i\tj\tc(ij)\trelation\tterms")
    for i in range(1, cfg.order):
        for j in range(1, cfg.order - i + 1):
            value, terms = kang_value(i, j, jexp, keep_terms=True)
            bad += value != jexp[i * j]
            print(f"{i}\t{j}\t{jexp[i * j]}\t{value}\t{len(terms)}")
    return 1 if bad else 0


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--order", type=int, default=Config.order)
    raise SystemExit(main(Config(p.parse_args().order)))
