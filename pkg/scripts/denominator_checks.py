"""Run both denominator identity checks on a list of small matrices."""
import argparse
import time
from dataclasses import dataclass, field

from gkm.denominator import verify_factored, verify_full
from gkm.matrix import GKMMatrix, classify

DEFAULT = [
    [[2, -1], [-1, 2]],
    [[2, -2], [-2, 2]],
    [[2, -1], [-1, -2]],
    [[2, -2], [-2, -4]],
    [[2, 0], [0, -2]],
    [[-2, -3], [-3, -4]],
    [[-1, 0], [0, -1]],
    [[0, -1], [-1, 0]],
    [[2, -1, 0], [-1, 2, -1], [0, -1, 2]],
    [[2, -1, -1], [-1, 2, 0], [-1, 0, -2]],
]


@dataclass
class Config:
    height: int = 6
    matrices: list = field(default_factory=lambda: list(DEFAULT))


def main(cfg: Config) -> int:
    bad = 0
    print("matrix\tfull\tfactored\tseconds")
    for rows in cfg.matrices:
        m = GKMMatrix.dense(rows)
        t = time.perf_counter()
        full = "ok" if not verify_full(m, cfg.height) else "FAIL"
        if classify(m).free_split_applicable:
            factored = "ok" if not verify_factored(m, cfg.height) else "FAIL"
        else:
            factored = "n/a"
        bad += "FAIL" in (full, factored)
        print(f"{rows}\t{full}\t{factored}\t{time.perf_counter() - t:.2f}")
    return 1 if bad else 0


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--height", type=int, default=Config.height)
    raise SystemExit(main(Config(height=p.parse_args().height)))
