"""``gkm`` command line: batch verifications with deterministic reports.

Exit codes: 0 all requested checks pass, 1 a check failed, 2 usage or
input error, 3 internal assertion failure.  Data goes to stdout; progress
and diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from dataclasses import dataclass, field

from . import denominator, lie, moonshine, witt
from .formats import format_coefficient, format_exponent, read_table, table_json, table_lines
from .lie import HypothesisError, OracleLimitError
from .matrix import MatrixError, center_pairs, classify, load_matrix, validate
from .series import Box, Mismatch

log = logging.getLogger("gkm")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    matrix: str | None = None
    gens: str | None = None
    height: int | None = None
    order: int | None = None
    json: bool = False
    threads: int = 1
    tamper: list[tuple[int, int]] = field(default_factory=list)

    def __post_init__(self):
        for name in ("height", "order", "threads"):
            v = getattr(self, name)
            if v is not None and v < 1:
                raise UsageError(f"--{name} must be positive")


# --- report shaping -------------------------------------------------------

def mismatch_list(ms: list[Mismatch]) -> list[dict]:
    return [m.as_dict() for m in ms]


def emit(cfg: RunConfig, payload: dict, text: list[str]) -> None:
    if cfg.json:
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=1) + "\n")
    else:
        for line in text:
            sys.stdout.write(line + "\n")


def mismatch_text(ms: list[Mismatch], limit: int = 20) -> list[str]:
    out = [f"mismatch\t{format_exponent(m.exponent)}\t{format_coefficient(m.left)}\t{format_coefficient(m.right)}"
           for m in ms[:limit]]
    if len(ms) > limit:
        out.append(f"... {len(ms) - limit} more mismatches")
    return out


# --- subcommands ------------------------------------------------------------

def _need(cfg: RunConfig, name: str):
    if getattr(cfg, name) is None:
        raise UsageError(f"--{name} is required for {cfg.subcommand}")
    return getattr(cfg, name)


def cmd_validate(cfg: RunConfig) -> int:
    m = load_matrix(_need(cfg, "matrix"))
    problems = validate(m)
    text = [f"{v.condition}\t{v.i}\t{v.j}\t{v.detail}" for v in problems] or ["valid"]
    emit(cfg, {"command": "validate", "ok": not problems, "violations": [v.as_dict() for v in problems]}, text)
    return EXIT_OK if not problems else EXIT_FAIL


def cmd_classify(cfg: RunConfig) -> int:
    m = load_matrix(_need(cfg, "matrix"))
    problems = validate(m)
    if problems:
        emit(cfg, {"command": "classify", "ok": False, "violations": [v.as_dict() for v in problems]},
             [f"{v.condition}\t{v.i}\t{v.j}\t{v.detail}" for v in problems])
        return EXIT_FAIL
    c = classify(m)
    text = [f"real\t{' '.join(sorted(c.real))}", f"imaginary\t{' '.join(sorted(c.imaginary))}",
            f"free_split_applicable\t{str(c.free_split_applicable).lower()}"]
    emit(cfg, {"command": "classify", "ok": True, **c.as_dict()}, text)
    return EXIT_OK


def cmd_center_pairs(cfg: RunConfig) -> int:
    m = load_matrix(_need(cfg, "matrix"))
    cp = center_pairs(m)
    text = [f"{a}\t{b}\t{k}" for a, b, k in cp.blocks] + [f"total\t{cp.total}"]
    emit(cfg, {"command": "center-pairs", "ok": True, **cp.as_dict()}, text)
    return EXIT_OK


def _gens_box(g: dict, height: int) -> Box:
    if not g:
        raise UsageError("generator table is empty")
    nvars = len(next(iter(g)))
    return Box.orthant(nvars, height)


def cmd_witt(cfg: RunConfig, verify: bool) -> int:
    g = read_table(_need(cfg, "gens"))
    box = _gens_box(g, _need(cfg, "height"))
    d = witt.witt_dimensions(g, box, workers=cfg.threads)
    mismatches = witt.verify_witt_identity(g, d, box) if verify else []
    payload = {"command": "witt", "ok": not mismatches, "dims": table_json(witt.nonzero(d))}
    if verify:
        payload["mismatches"] = mismatch_list(mismatches)
    emit(cfg, payload, table_lines(witt.nonzero(d)) + mismatch_text(mismatches))
    return EXIT_FAIL if mismatches else EXIT_OK


def cmd_oracle(cfg: RunConfig, show_basis: bool, split: bool) -> int:
    m = load_matrix(_need(cfg, "matrix"))
    height = _need(cfg, "height")
    q = lie.quotient(m, height, show_basis=show_basis)
    dims = witt.nonzero(q.dims())
    payload = {"command": "oracle", "ok": True, "dims": table_json(dims)}
    text = table_lines(dims)
    if show_basis:
        basis = {format_exponent(phi): [_word_str(m, w) for w in p.survivors]
                 for phi, p in sorted(q.pieces.items()) if p.survivors}
        payload["basis"] = basis
        text += [f"basis\t{k}\t{' '.join(v)}" for k, v in basis.items()]
    if split:
        s = lie.free_split(m, height)
        payload["gJ_dims"] = table_json(witt.nonzero(s.gJ_dims))
        payload["free_gens"] = table_json(s.free_gens)
        text += [f"gJ\t{line}" for line in table_lines(witt.nonzero(s.gJ_dims))]
        text += [f"free_gen\t{line}" for line in table_lines(s.free_gens)]
    emit(cfg, payload, text)
    return EXIT_OK


def _word_str(m, w) -> str:
    """Bracketed Lyndon word in matrix labels, e.g. [1,[1,2]]."""
    if len(w) == 1:
        return m.labels[w[0]]
    u, v = lie.standard_factorization(w)
    return f"[{_word_str(m, u)},{_word_str(m, v)}]"


# older spellings of the two modes are still accepted
MODE_ALIASES = {"eq6": "full", "cor52": "factored"}


def cmd_denom(cfg: RunConfig, mode: str) -> int:
    m = load_matrix(_need(cfg, "matrix"))
    height = _need(cfg, "height")
    mode = MODE_ALIASES.get(mode, mode)
    if mode == "full":
        ms = denominator.verify_full(m, height)
    else:
        ms = denominator.verify_factored(m, height)
    emit(cfg, {"command": "denom", "mode": mode, "ok": not ms, "height": height, "mismatches": mismatch_list(ms)},
         [f"{mode}\theight<={height}\t{'ok' if not ms else 'FAIL'}"] + mismatch_text(ms))
    return EXIT_FAIL if ms else EXIT_OK


def cmd_compare(cfg: RunConfig) -> int:
    m = load_matrix(_need(cfg, "matrix"))
    height = _need(cfg, "height")
    oracle = witt.nonzero(lie.quotient_dims(m, height))
    assembled, _ = denominator.assemble_split_dims(m, height)
    assembled = witt.nonzero(assembled)
    keys = sorted(set(oracle) | set(assembled))
    ms = [Mismatch(k, oracle.get(k, 0), assembled.get(k, 0)) for k in keys if oracle.get(k, 0) != assembled.get(k, 0)]
    emit(cfg, {"command": "compare", "ok": not ms, "height": height, "compared": len(keys),
               "mismatches": mismatch_list(ms)},
         [f"compare\theight<={height}\t{len(keys) - len(ms)}/{len(keys)} degrees agree"] + mismatch_text(ms))
    return EXIT_FAIL if ms else EXIT_OK


def cmd_moonshine(cfg: RunConfig, args) -> int:
    order = _need(cfg, "order")
    need = max(order * order, order + 1, 2 * order)
    jexp = moonshine.j_coefficients(need)
    for n, delta in cfg.tamper:
        if not -1 <= n <= jexp.order:
            raise UsageError(f"cannot tamper c({n}): outside -1..{jexp.order}")
        log.warning("fault injection: c(%d) shifted by %+d", n, delta)
        jexp = jexp.tampered(n, delta)
    payload: dict = {"command": "moonshine", "order": order}
    text: list[str] = []
    ok = True
    if args.emit_coeffs:
        with open(args.emit_coeffs, "w") as fh:
            fh.write("\n".join(jexp.lines()) + "\n")
        payload["coefficients_file"] = args.emit_coeffs
    if args.verify_product:
        t = time.perf_counter()
        r = moonshine.verify_monster_product(order, jexp)
        log.info("product identity: %.2fs", time.perf_counter() - t)
        ok &= r.ok
        payload["product"] = {"ok": r.ok, "compared": r.compared, "matched": r.matched,
                              "mismatches": mismatch_list(r.mismatches)}
        text += [f"product\t{r.matched}/{r.compared} coefficients match"] + mismatch_text(r.mismatches)
    if args.verify_dims:
        t = time.perf_counter()
        r = moonshine.verify_monster_dims(order, jexp)
        log.info("root multiplicities: %.2fs", time.perf_counter() - t)
        ok &= r.ok
        payload["dims"] = {"ok": r.ok, "mismatches": mismatch_list(r.mismatches)}
        checked = order * (order + 1)
        text += [f"dims\t{checked - len(r.mismatches)}/{checked} multiplicities equal c(ij)"] + mismatch_text(r.mismatches)
    if args.verify_kang:
        kang_order = max(order, 2)
        t = time.perf_counter()
        fails = moonshine.kang_check(kang_order, jexp)
        log.info("coefficient relations: %.2fs", time.perf_counter() - t)
        ok &= not fails
        checked = kang_order * (kang_order - 1) // 2
        payload["kang"] = {"ok": not fails, "checked": checked, "failures": [f.as_dict() for f in fails]}
        text += [f"kang\t{checked - len(fails)}/{checked} relations hold"]
        text += [f"kang_fail\t{format_exponent(f.degree)}\texpected {f.expected}\tgot {f.computed}" for f in fails[:20]]
    if not (args.verify_product or args.verify_dims or args.verify_kang or args.emit_coeffs):
        text += jexp.lines()[: order + 2]
        payload["coefficients"] = {str(n): str(jexp[n]) for n in range(-1, order + 1)}
    payload["ok"] = bool(ok)
    emit(cfg, payload, text)
    return EXIT_OK if ok else EXIT_FAIL


# --- argument parsing -------------------------------------------------------

def _tamper(text: str) -> tuple[int, int]:
    try:
        n, delta = text.split(":")
        return int(n), int(delta)
    except ValueError:
        raise argparse.ArgumentTypeError("expected N:DELTA, e.g. 2:+1")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                        help="worker cap (default: available cores)")
    common.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")

    p = argparse.ArgumentParser(prog="gkm", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="subcommand", required=True)

    for name in ("validate", "classify", "center-pairs"):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("--matrix", required=True)

    s = sub.add_parser("witt", parents=[common], help="free Lie algebra dimensions from a generator table")
    s.add_argument("--gens", required=True, help="generator table, 'exponent<TAB>count' lines")
    s.add_argument("--height", type=int, required=True)
    s.add_argument("--verify", action="store_true", help="also check the product identity")

    s = sub.add_parser("oracle", parents=[common], help="root space dimensions by brute force")
    s.add_argument("--matrix", required=True)
    s.add_argument("--height", type=int, required=True)
    s.add_argument("--show-basis", action="store_true", help="print surviving Lyndon brackets per degree")
    s.add_argument("--split", action="store_true", help="also print the g_J / free generator split")

    s = sub.add_parser("denom", parents=[common], help="denominator identity at bounded height")
    s.add_argument("--matrix", required=True)
    s.add_argument("--height", type=int, required=True)
    s.add_argument("--mode", choices=("full", "factored", *MODE_ALIASES), default="full",
                   help="full: with the Omega(0) sum; factored: g_J denominator times the free part")

    s = sub.add_parser("compare", parents=[common], help="witt-path against oracle dimensions")
    s.add_argument("--matrix", required=True)
    s.add_argument("--height", type=int, required=True)

    s = sub.add_parser("moonshine", parents=[common], help="j-function identities")
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--emit-coeffs", metavar="FILE")
    s.add_argument("--verify-product", action="store_true")
    s.add_argument("--verify-kang", action="store_true")
    s.add_argument("--verify-dims", action="store_true")
    s.add_argument("--tamper", type=_tamper, action="append", default=[], metavar="N:DELTA",
                   help="fault injection: shift c(N) by DELTA before checking")
    return p


def _configure_logging(verbose: bool) -> None:
    # a fresh handler per run so the current sys.stderr is used (matters when embedded)
    for h in list(log.handlers):
        log.removeHandler(h)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
    log.addHandler(handler)
    log.setLevel(logging.INFO if verbose else logging.WARNING)
    log.propagate = False


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    _configure_logging(args.verbose)
    try:
        cfg = RunConfig(args.subcommand, matrix=getattr(args, "matrix", None), gens=getattr(args, "gens", None),
                        height=getattr(args, "height", None), order=getattr(args, "order", None),
                        json=args.json, threads=args.threads, tamper=getattr(args, "tamper", []))
        if cfg.subcommand == "validate":
            return cmd_validate(cfg)
        if cfg.subcommand == "classify":
            return cmd_classify(cfg)
        if cfg.subcommand == "center-pairs":
            return cmd_center_pairs(cfg)
        if cfg.subcommand == "witt":
            return cmd_witt(cfg, args.verify)
        if cfg.subcommand == "oracle":
            return cmd_oracle(cfg, args.show_basis, args.split)
        if cfg.subcommand == "denom":
            return cmd_denom(cfg, args.mode)
        if cfg.subcommand == "compare":
            return cmd_compare(cfg)
        if cfg.subcommand == "moonshine":
            return cmd_moonshine(cfg, args)
        raise UsageError(f"unknown subcommand {cfg.subcommand}")
    except (AssertionError, ArithmeticError, witt.CoverageError) as exc:
        print(f"gkm: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (UsageError, MatrixError, HypothesisError, OracleLimitError, OSError, ValueError, KeyError) as exc:
        print(f"gkm: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
