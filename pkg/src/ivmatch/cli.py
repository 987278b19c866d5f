"""Command line front end.

Exit codes: 0 yes/valid, 1 no/invalid, 2 malformed input or usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Sequence

from . import formats
from .generators import GenConfig, gen_3dm, gen_ivg
from .model import SizeLimitError, validate_graph, verify_matching
from .reduction import InvalidCertificate, InvalidMatching, embed_from_3dm, lift_to_3dm, reduce_3dm
from .solver import brute_force_iv, solve


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _load_graph(path: str):
    return formats.parse_ivg(_read(path), strict=True)


def _default_seed() -> int:
    raw = os.environ.get("IVM_SEED")
    if raw is None:
        return 0
    try:
        return int(raw, 0)
    except ValueError:
        raise UsageError(f"IVM_SEED is not an integer: {raw!r}") from None


def _report_result(res, cert_path: str | None) -> int:
    if res.feasible:
        print(f"FEASIBLE nodes={res.stats.nodes} flow_calls={res.stats.flow_calls}")
        if cert_path:
            _write(cert_path, formats.emit_cert(res.certificate))
        return 0
    print(f"INFEASIBLE {res.reason} nodes={res.stats.nodes} flow_calls={res.stats.flow_calls}")
    return 1


def cmd_solve(args) -> int:
    return _report_result(solve(_load_graph(args.ivg)), args.cert)


def cmd_oracle(args) -> int:
    return _report_result(brute_force_iv(_load_graph(args.ivg)), args.cert)


def cmd_validate(args) -> int:
    report = validate_graph(formats.parse_ivg(_read(args.ivg)))
    for line in report.lines():
        print(line)
    print("VALID" if report.ok else "INVALID")
    return 0 if report.ok else 1


def cmd_verify(args) -> int:
    g = _load_graph(args.ivg)
    report = verify_matching(g, formats.parse_cert(_read(args.cert)))
    for line in report.lines():
        print(line)
    print("VALID" if report.ok else "INVALID")
    return 0 if report.ok else 1


def cmd_reduce(args) -> int:
    g, rmap = reduce_3dm(formats.parse_3dm(_read(args.dm)))
    _write(args.output, formats.emit_ivg(g))
    if args.map:
        _write(args.map, formats.emit_map(rmap))
    return 0


def _map_for(h, path):
    rmap = formats.parse_map(_read(path))
    try:
        rmap.check(h)
    except ValueError as exc:
        raise UsageError(f"map does not fit the instance: {exc}") from None
    return rmap


def cmd_lift(args) -> int:
    h = formats.parse_3dm(_read(args.dm))
    rmap = _map_for(h, args.map)
    try:
        chosen = lift_to_3dm(h, rmap, formats.parse_cert(_read(args.cert)))
    except InvalidCertificate as exc:
        print(f"INVALID_CERT: {exc}")
        return 1
    _write(args.output, formats.emit_match(chosen))
    return 0


def cmd_embed(args) -> int:
    h = formats.parse_3dm(_read(args.dm))
    rmap = _map_for(h, args.map)
    try:
        cert = embed_from_3dm(h, rmap, formats.parse_match(_read(args.matching)))
    except InvalidMatching as exc:
        print(f"INVALID_MATCHING: {exc}")
        return 1
    _write(args.output, formats.emit_cert(cert))
    return 0


def _seed(args) -> int:
    return args.seed if args.seed is not None else _default_seed()


def cmd_gen_3dm(args) -> int:
    cfg = GenConfig(seed=_seed(args), n=args.n, m=args.m, planted=args.planted)
    _write(args.output, formats.emit_3dm(gen_3dm(cfg)))
    return 0


def cmd_gen_ivg(args) -> int:
    cfg = GenConfig(seed=_seed(args), layers=args.layers, max_cluster_size=args.max_cluster_size,
                    max_clusters=args.max_clusters, density=args.density, planted=args.planted)
    _write(args.output, formats.emit_ivg(gen_ivg(cfg)))
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ivmatch", description="IV-matching toolkit")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="decide an .ivg instance with the exact solver")
    s.add_argument("ivg")
    s.add_argument("--cert", help="write the certificate here when feasible")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("oracle", help="decide an .ivg instance by exhaustive search")
    s.add_argument("ivg")
    s.add_argument("--cert")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("validate", help="check an .ivg file's structure")
    s.add_argument("ivg")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("verify", help="check a certificate against an .ivg instance")
    s.add_argument("ivg")
    s.add_argument("cert")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("reduce", help="turn a .3dm instance into an .ivg instance")
    s.add_argument("dm", metavar="3dm")
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--map")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("lift", help="read a 3DM matching off a reduced-instance certificate")
    s.add_argument("dm", metavar="3dm")
    s.add_argument("map")
    s.add_argument("cert")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_lift)

    s = sub.add_parser("embed", help="turn a 3DM matching into a reduced-instance certificate")
    s.add_argument("dm", metavar="3dm")
    s.add_argument("map")
    s.add_argument("matching")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_embed)

    s = sub.add_parser("gen-3dm", help="generate a seeded .3dm instance")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--seed", type=int)
    s.add_argument("--planted", action="store_true")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gen_3dm)

    s = sub.add_parser("gen-ivg", help="generate a seeded .ivg instance")
    s.add_argument("--layers", type=int, default=4)
    s.add_argument("--max-cluster-size", type=int, default=3)
    s.add_argument("--max-clusters", type=int, default=3)
    s.add_argument("--density", type=float, default=0.5)
    s.add_argument("--seed", type=int)
    s.add_argument("--planted", action="store_true")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gen_ivg)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except (UsageError, formats.FormatError, SizeLimitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
