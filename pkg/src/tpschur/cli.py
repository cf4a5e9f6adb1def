"""Command-line front end.

Exit codes: 0 success / positive verdict, 1 negative verdict, 2 usage or
parse error, 3 domain error, 4 resource guard.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import analytic, cauchy, collocation, partitions, symfunc, tpcore
from .errors import DomainError, IdentityMismatchError, ResourceGuardError
from .scalar import Kernel, default_precision, fmt

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_DOMAIN, EXIT_RESOURCE = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    mode: str = "exact"
    precision: int = field(default_factory=default_precision)
    system: Optional[dict] = None
    nodes: Optional[list] = None
    truncation: int = 20
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.mode == "float" and self.precision < 64:
            raise UsageError("precision must be at least 64 bits")
        if self.truncation < 0:
            raise UsageError("truncation must be nonnegative")

    @property
    def kernel(self) -> Kernel:
        return Kernel(self.mode, self.precision if self.mode == "float" else None)


def parse_list(text):
    if text is None:
        return None
    text = text.strip().strip("[]()")
    if not text:
        return []
    try:
        return [Fraction(t.strip()) for t in text.split(",") if t.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse number list {text!r}: {exc}") from None


def parse_matrix(text):
    """``"1,2;3,4"`` or a JSON array of arrays."""
    text = text.strip()
    if text.startswith("[["):
        return [[Fraction(str(v)) for v in row] for row in json.loads(text)]
    return [parse_list(row) for row in text.split(";")]


def load_config(args) -> RunConfig:
    data = {}
    if args.config:
        try:
            with open(args.config) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from None
        if "flavor" in data:
            data = {"system": data}
    system = data.get("system")
    if getattr(args, "base", None):
        system = {"flavor": "dilation", "base": args.base, "a": [str(v) for v in parse_list(args.a)]}
    elif getattr(args, "A", None):
        system = {"flavor": "polynomial", "A": [[str(v) for v in r] for r in parse_matrix(args.A)]}
    elif getattr(args, "streams", None):
        system = {"flavor": "general", "streams": [{"name": s} for s in args.streams.split(",")]}
    nodes = data.get("nodes")
    if getattr(args, "nodes", None) is not None:
        nodes = [str(v) for v in parse_list(args.nodes)]
    mode = args.mode or data.get("mode", "exact")
    precision = args.precision or data.get("precision") or default_precision()
    truncation = data.get("truncation", 20)
    if getattr(args, "max_size", None) is not None:
        truncation = args.max_size
    return RunConfig(mode, int(precision), system, nodes, int(truncation))


def _system(cfg: RunConfig):
    if cfg.system is None:
        raise UsageError("no function system given (use --config, --base/--a, --A or --streams)")
    return analytic.system_from_config(cfg.system)


def _nodes(cfg: RunConfig):
    if cfg.nodes is None:
        raise UsageError("no nodes given")
    return [Fraction(str(v)) for v in cfg.nodes]


def _matrix(args, cfg: RunConfig):
    if getattr(args, "matrix", None):
        return cfg.kernel.matrix(parse_matrix(args.matrix))
    return collocation.collocate(_system(cfg), _nodes(cfg), kernel=cfg.kernel).entries


def emit(obj, out):
    out.write(json.dumps(obj, indent=2) + "\n")


def cmd_schur(args, cfg, out):
    lam = partitions.Partition.parse(args.lam)
    nodes = cfg.kernel.vector(_nodes(cfg))
    value = symfunc.schur_bialternant(lam, nodes)
    out.write(fmt(value) + "\n")
    if args.oracle:
        other = symfunc.schur_tableaux(lam, nodes)
        agree = other == value if cfg.kernel.exact else abs(other - value) <= abs(value) * cfg.kernel.ctx.eps * 1e6
        out.write(f"oracle: tableaux={fmt(other)} {'agree' if agree else 'DISAGREE'}\n")
        return EXIT_OK if agree else EXIT_NEGATIVE
    return EXIT_OK


def cmd_partitions(args, cfg, out):
    filt = partitions.PartitionFilter(args.max_size, args.max_length, args.max_part, args.even)
    for lam in partitions.enumerate_partitions(filt):
        out.write(json.dumps(list(lam)) + "\n")
    return EXIT_OK


def cmd_colloc(args, cfg, out):
    M = collocation.collocate(_system(cfg), _nodes(cfg), kernel=cfg.kernel)
    emit(M.to_json(), out)
    return EXIT_OK


def cmd_expand(args, cfg, out):
    system = _system(cfg)
    nodes = _nodes(cfg)
    exp = collocation.expand_minor(system, nodes, args.i, args.j, args.transposed,
                                   cfg.truncation, cfg.kernel)
    if args.csv:
        out.write(exp.to_csv())
    else:
        emit(exp.to_json(with_terms=not args.no_terms), out)
    return EXIT_OK


def _random_nodes(rng, n, cap):
    # distinct rationals in (0, cap)
    cap = Fraction(cap) if cap != float("inf") else Fraction(2)
    while True:
        xs = sorted(cap * Fraction(rng.randint(1, 9999), 10000) for _ in range(n))
        if all(p < q for p, q in zip(xs, xs[1:])):
            return xs


def cmd_tp(args, cfg, out):
    method = args.method
    if method == "sufficiency":
        system = _system(cfg)
        if system.flavor != "dilation":
            raise UsageError("sufficiency test needs a dilation system")
        v = tpcore.tp_sufficiency_dilation(system.base, system.a, args.depth or 30)
    elif method == "wronskian":
        system = _system(cfg)
        v = tpcore.tp_wronskian_truncated(system, args.depth or 3 * system.n)
    elif args.draws:
        system = _system(cfg)
        rng = random.Random(args.seed)
        cap = system.domain[1]
        fn = tpcore.tp_bruteforce if method == "bruteforce" else tpcore.tp_initial_minors
        v = None
        for _ in range(args.draws):
            xs = _random_nodes(rng, system.n, cap)
            v = fn(collocation.collocate(system, xs, kernel=cfg.kernel).entries)
            if not v.is_tp:
                break
        out_json = v.to_json()
        out_json["draws"] = args.draws
        emit(out_json, out)
        return EXIT_OK if v.is_tp else EXIT_NEGATIVE
    else:
        M = _matrix(args, cfg)
        if method == "bruteforce":
            v = tpcore.tp_bruteforce(M)
        else:
            v = tpcore.tp_initial_minors(M, crosscheck=args.crosscheck)
    emit(v.to_json(), out)
    return EXIT_OK if v.is_tp else EXIT_NEGATIVE


def cmd_bd(args, cfg, out):
    M = _matrix(args, cfg)
    bd = tpcore.bd_factorize(M)
    R = bd.reconstruct()
    if cfg.kernel.exact:
        exact = R == [list(r) for r in M]
    else:
        tol = cfg.kernel.ctx.ldexp(1, -(cfg.kernel.prec // 2))
        exact = all(abs(a - b) <= tol * max(1, abs(b)) for ra, rb in zip(R, M) for a, b in zip(ra, rb))
    data = bd.to_json()
    data["reconstruction_exact"] = bool(exact)
    data["nonnegative"] = bd.is_nonnegative()
    emit(data, out)
    return EXIT_OK if exact else EXIT_NEGATIVE


def cmd_cauchy(args, cfg, out):
    a, x = parse_list(args.a), parse_list(args.x)
    if a is None or x is None:
        n = args.n or 2
        default = [Fraction(k, 2 * n) for k in range(1, n + 1)]
        a = a or default
        x = x or default
    stream = args.stream
    if args.identity == "generic" and stream is None:
        raise UsageError("generic identity needs --stream")
    rep = cauchy.verify_identity(stream, args.identity, a, x, cfg.truncation, cfg.kernel)
    if args.csv:
        out.write(rep.to_csv())
    else:
        emit(rep.to_json(), out)
    ok = rep.final_error < cfg.kernel(Fraction(args.tol)) and (rep.decay_ratio is None or rep.decay_ratio < 1)
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_report(args, cfg, out):
    system = _system(cfg)
    kernel = cfg.kernel
    M = collocation.collocate(system, _nodes(cfg), kernel=kernel)
    n = system.n
    minors = []
    for transposed in (False, True):
        for i in range(1, n + 1):
            for j in range(1, i + 1):
                e = collocation.expand_minor(system, M.nodes, i, j, transposed, cfg.truncation, kernel)
                minors.append(e.to_json(with_terms=False))
    report = {
        "config": {"mode": cfg.mode, "precision": cfg.precision if cfg.mode == "float" else None,
                   "system": system.to_config(), "truncation": cfg.truncation},
        "collocation": M.to_json(),
        "minors": minors,
        "tp": {
            "initial_minors": tpcore.tp_initial_minors(M.entries).to_json(),
            "wronskian": tpcore.tp_wronskian_truncated(system, 3 * n).to_json(),
        },
    }
    if n <= 7:
        report["tp"]["bruteforce"] = tpcore.tp_bruteforce(M.entries).to_json()
    if system.flavor == "dilation":
        report["tp"]["sufficiency"] = tpcore.tp_sufficiency_dilation(system.base, system.a, 3 * n).to_json()
    try:
        report["bd"] = tpcore.bd_factorize(M.entries).to_json()
    except DomainError as exc:
        report["bd"] = {"error": str(exc)}
    emit(report, out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON run config or bare system config")
    common.add_argument("--mode", choices=("exact", "float"))
    common.add_argument("--precision", type=int, help="float-mode mantissa bits (env TPSCHUR_PRECISION)")
    common.add_argument("--seed", type=int, default=0)

    system = argparse.ArgumentParser(add_help=False)
    system.add_argument("--base", help="dilation base stream, e.g. geometric")
    system.add_argument("--a", help="dilation parameters, e.g. 1,2,3")
    system.add_argument("--A", help="polynomial coefficient matrix, rows separated by ';'")
    system.add_argument("--streams", help="general system, e.g. exp,cosh")
    system.add_argument("--nodes", help="collocation nodes, e.g. 1/10,1/5")

    p = argparse.ArgumentParser(prog="tpschur", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("schur", parents=[common], help="evaluate a Schur polynomial")
    s.add_argument("--lambda", dest="lam", required=True)
    s.add_argument("--nodes", required=True)
    s.add_argument("--oracle", action="store_true", help="cross-check with the tableau sum")
    s.set_defaults(func=cmd_schur)

    s = sub.add_parser("partitions", parents=[common], help="enumerate partitions")
    s.add_argument("--max-size", type=int)
    s.add_argument("--max-length", type=int)
    s.add_argument("--max-part", type=int)
    s.add_argument("--even", type=int, help="restrict to the even class of width N")
    s.set_defaults(func=cmd_partitions)

    s = sub.add_parser("colloc", parents=[common, system], help="collocation matrix")
    s.set_defaults(func=cmd_colloc)

    s = sub.add_parser("expand", parents=[common, system], help="Schur expansion of an initial minor")
    s.add_argument("--i", type=int, required=True)
    s.add_argument("--j", type=int, required=True)
    s.add_argument("--transposed", action="store_true")
    s.add_argument("--max-size", type=int)
    s.add_argument("--csv", action="store_true", help="emit the (K, abs_error) curve")
    s.add_argument("--no-terms", action="store_true")
    s.set_defaults(func=cmd_expand)

    s = sub.add_parser("tp", parents=[common, system], help="total positivity verdict")
    s.add_argument("--method", choices=("bruteforce", "initial_minors", "sufficiency", "wronskian"),
                   default="bruteforce")
    s.add_argument("--matrix")
    s.add_argument("--depth", type=int, default=0, help="derivative depth for sufficiency/wronskian")
    s.add_argument("--draws", type=int, default=0, help="random node sets in (0, domain cap)")
    s.add_argument("--crosscheck", action="store_true")
    s.set_defaults(func=cmd_tp)

    s = sub.add_parser("bd", parents=[common, system], help="bidiagonal factorization")
    s.add_argument("--matrix")
    s.set_defaults(func=cmd_bd)

    s = sub.add_parser("cauchy", parents=[common], help="verify a Cauchy-type identity")
    s.add_argument("--identity", choices=cauchy.IDENTITIES, required=True)
    s.add_argument("--stream")
    s.add_argument("--n", type=int)
    s.add_argument("--a")
    s.add_argument("--x")
    s.add_argument("--max-size", type=int, default=60)
    s.add_argument("--tol", default="1e-12")
    s.add_argument("--csv", action="store_true")
    s.set_defaults(func=cmd_cauchy)

    s = sub.add_parser("report", parents=[common, system], help="full JSON report for one system")
    s.add_argument("--max-size", type=int)
    s.set_defaults(func=cmd_report)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args)
        return args.func(args, cfg, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IdentityMismatchError as exc:
        print(f"identity mismatch: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ResourceGuardError as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
