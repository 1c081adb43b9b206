"""Check u(J(u) - J(v)) = prod (1 - u^i v^j)^c(ij) for a range of orders and time each run."""
import argparse
import time
from dataclasses import dataclass

from gkm.moonshine import j_coefficients, verify_monster_product


@dataclass
class Config:
    max_order: int = 8


def main(cfg: Config) -> int:
    jexp = j_coefficients(max(cfg.max_order ** 2, 2))
    failures = 0
    print("order\tcompared\tmatched\tseconds")
    for n in range(2, cfg.max_order + 1):
        t = time.perf_counter()
        r = verify_monster_product(n, jexp)
        print(f"{n}\t{r.compared}\t{r.matched}\t{time.perf_counter() - t:.3f}")
        failures += not r.ok
    return 1 if failures else 0


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-order", type=int, default=Config.max_order)
    raise SystemExit(main(Config(p.parse_args().max_order)))
