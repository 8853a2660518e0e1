"""Command-line interface.

Subcommands mirror the library's pipeline: ``construct`` builds a
scheme file, ``share`` deals per-server share files, ``eval`` runs one
server's computation, ``rec`` reassembles the outputs, ``verify`` runs
the full check suite, ``demo`` walks the smallest interesting example
end to end, and ``bounds`` tabulates which amortization levels are
feasible.

All JSON the tool writes is canonical (sorted keys, no whitespace, one
trailing newline), so reruns with the same seed are byte-identical.
The environment variable ``HSS_SEED`` overrides any ``--seed`` flag.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .codes import j_lower_bound
from .errors import LwhssError, SchemeHashMismatch
from .hss import (
    HssScheme,
    Monomial,
    ServerShares,
    assemble_output,
    build_eval_system,
    canonical_json,
    construct_scheme,
    eval_general,
    eval_shares,
    permuted_block_view,
    reconstruct,
    scheme_rate,
)
from . import linalg
from .verify import check_amortization, check_correctness, verify_scheme


def _read_json(path: str):
    with open(path, "r", encoding="ascii") as fh:
        return json.load(fh)


def _write_json(path: str, obj) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(canonical_json(obj))
        fh.write("\n")


def _resolve_seed(cli_value: int) -> int:
    env = os.environ.get("HSS_SEED")
    if env is not None:
        return int(env)
    return int(cli_value)


def _load_scheme(path: str, verify: bool = True) -> HssScheme:
    return HssScheme.from_json(_read_json(path), verify=verify)


def _bits_per_symbol(order: int) -> int:
    return (order - 1).bit_length()


def _mon_str(mon: Monomial) -> str:
    tags = ",".join("{" + ",".join(str(v) for v in T) + "}" for T in mon.subsets)
    return f"(i={mon.instance}, T={tags})"


def _grid(matrix) -> str:
    width = max(len(str(v)) for v in matrix.data) if matrix.data else 1
    lines = []
    for i in range(matrix.rows):
        lines.append(" ".join(f"{v:>{width}}" for v in matrix.row_ints(i)))
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------


def _cmd_construct(args) -> int:
    scheme = construct_scheme(args.q, args.s, args.t, args.d, args.m, j=args.j)
    params = scheme.params
    floor = j_lower_bound(args.q, args.s, args.d, args.t)
    _write_json(args.output, scheme.to_json())
    print(
        f"servers s={params.s}, threshold t={params.t}, degree d={params.d}, "
        f"secrets per instance m={params.m}"
    )
    print(
        f"field {params.field!r}, amortization j={params.j}, "
        f"instances ell={params.ell}, code length n={scheme.code.length}"
    )
    print(
        f"download rate {scheme_rate(scheme)} "
        f"(optimal (s-dt)/s = {params.optimal_rate()}); amortization floor j >= {floor}"
    )
    print(f"scheme hash {scheme.scheme_hash()}")
    print(f"wrote {args.output}")
    return 0


def _cmd_share(args) -> int:
    scheme = _load_scheme(args.scheme)
    raw = _read_json(args.secrets)
    if isinstance(raw, dict):
        raw = raw["secrets"]
    secrets = [[int(v) for v in row] for row in raw]
    seed = _resolve_seed(args.seed)
    bundle = scheme.deal_shares(secrets, seed)
    os.makedirs(args.out_dir, exist_ok=True)
    for lam in range(1, scheme.params.s + 1):
        path = os.path.join(args.out_dir, f"share-{lam}.json")
        _write_json(path, scheme.server_shares(bundle, lam).to_json())
    print(f"wrote {scheme.params.s} share files to {args.out_dir} (seed {seed})")
    return 0


def _cmd_eval(args) -> int:
    scheme = _load_scheme(args.scheme)
    shares = ServerShares.from_json(_read_json(args.shares))
    if args.polys is not None:
        z = eval_general(scheme, shares.server, shares, _read_json(args.polys))
    else:
        z = eval_shares(scheme, shares.server, shares)
    out = args.output or f"eval-{shares.server}.json"
    _write_json(out, {"server": shares.server, "scheme_hash": scheme.scheme_hash(), "z": z})
    print(f"server {shares.server}: {len(z)} output symbols -> {out}")
    return 0


def _cmd_rec(args) -> int:
    scheme = _load_scheme(args.scheme)
    h = scheme.scheme_hash()
    by_server: dict[int, list[int]] = {}
    for path in args.outputs:
        obj = _read_json(path)
        if obj.get("scheme_hash") not in (None, h):
            raise SchemeHashMismatch(f"{path} was produced for a different scheme")
        by_server[int(obj["server"])] = [int(v) for v in obj["z"]]
    z = assemble_output(scheme, by_server)
    values = reconstruct(scheme, z)
    params = scheme.params
    n = scheme.code.length
    bits = n * _bits_per_symbol(params.field.order)
    rate = Fraction(params.ell, n)
    print(f"reconstructed {params.ell} values: {values}")
    print(f"downloaded {n} field elements = {bits} bits for {params.ell} instances")
    print(f"download rate {rate} (optimal (s-dt)/s = {params.optimal_rate()})")
    if args.output:
        _write_json(
            args.output,
            {
                "values": values,
                "scheme_hash": h,
                "download": {
                    "symbols": n,
                    "bits": bits,
                    "rate": str(rate),
                    "optimal_rate": str(params.optimal_rate()),
                },
            },
        )
        print(f"wrote {args.output}")
    return 0


def _cmd_verify(args) -> int:
    scheme = _load_scheme(args.scheme, verify=False)
    report = verify_scheme(scheme, seed=_resolve_seed(args.seed), trials=args.trials)
    print(report.format_table())
    print(f"overall: {'PASS' if report.passed else 'FAIL'}")
    if args.output:
        _write_json(args.output, report.to_json())
    return 0 if report.passed else 1


def _cmd_demo(args) -> int:
    scheme = construct_scheme(2, 3, 1, 1, 1)
    params = scheme.params
    code = scheme.code
    print("two instances per batch, three servers, degree 1, threshold 1 (q=2, s=3)")
    print(f"download rate {scheme_rate(scheme)}: recover 2 values from 3 downloaded bits")
    print()
    print("generator matrix (rows = instances; coordinate r is served by server r):")
    print(_grid(code.generator))
    print()
    system = build_eval_system(code, params)
    mons = system.monomials
    print(
        f"evaluation system: {system.matrix.rows} x {system.matrix.cols}; "
        "rows = (instance, monomial), columns = (coordinate, visible monomial)"
    )
    col_header = "   ".join(f"r={r}" for r, _ in system.col_index)
    print(f"{'':24}  {col_header}")
    for ri, (i, mi) in enumerate(system.row_index):
        label = f"i={i} {_mon_str(mons.all[mi])}"
        cells = "     ".join(str(v) for v in system.matrix.row_ints(ri))
        print(f"{label:<24}  {cells}")
    print()
    print(f"right-hand side g = {tuple(system.rhs)}")
    solution = linalg.solve(system.matrix, list(system.rhs))
    print(f"solved coefficient vector e = {tuple(solution)}")
    print()
    permuted, blocks = permuted_block_view(system, code)
    print("grouping rows and columns by monomial makes the system block diagonal:")
    print(_grid(permuted))
    print()
    print("each diagonal block is the generator's column block for the servers")
    print("that can see the monomial:")
    for mon, servers, block in blocks:
        sset = "{" + ",".join(str(v) for v in servers) + "}"
        rows = _grid(block).split("\n")
        print(f"  monomial {_mon_str(mon)} -> servers {sset}:")
        for row in rows:
            print(f"    {row}")
    print()
    result = check_correctness(scheme, mode="exhaustive")
    total = result.data["total"]
    status = "correct" if result.status == "pass" else "WRONG"
    print(f"exhaustive correctness: {total}/{total} share assignments {status}")
    return 0 if result.status == "pass" else 1


def _cmd_bounds(args) -> int:
    r = args.s - args.d * args.t
    floor = j_lower_bound(args.q, args.s, args.d, args.t)
    print(
        f"q={args.q} s={args.s} d={args.d} t={args.t}: optimal rate {r}/{args.s}, "
        f"batch size ell = j*{r}, amortization floor j >= {floor}"
    )
    print(f"(batch sizes not divisible by {r} are inadmissible at optimal rate)")
    print(f"{'j':>4} {'ell':>6}  {'verdict':<12} reason")
    for j in range(1, args.max_j + 1):
        v = check_amortization(args.q, args.s, args.d, args.t, j * r)
        print(f"{j:>4} {j * r:>6}  {v.verdict:<12} {v.reason}")
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lwhss",
        description="Rate-optimal homomorphic secret sharing from labelweight codes.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a scheme and write it to a JSON file")
    p.add_argument("--q", type=int, required=True, help="field size (prime power)")
    p.add_argument("--s", type=int, required=True, help="number of servers")
    p.add_argument("--t", type=int, required=True, help="privacy threshold")
    p.add_argument("--d", type=int, required=True, help="polynomial degree supported")
    p.add_argument("--m", type=int, required=True, help="secrets per instance")
    p.add_argument("--j", type=int, default=None, help="amortization level (default: smallest feasible)")
    p.add_argument("-o", "--output", default="scheme.json", help="output scheme file")
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("share", help="deal per-server share files for a batch of secrets")
    p.add_argument("--scheme", required=True, help="scheme JSON file")
    p.add_argument("--secrets", required=True, help="JSON file with an ell x m array of field elements")
    p.add_argument("--seed", type=int, default=0, help="dealer randomness seed (HSS_SEED overrides)")
    p.add_argument("--out-dir", default=".", help="directory for share-<server>.json files")
    p.set_defaults(func=_cmd_share)

    p = sub.add_parser("eval", help="run one server's evaluation over its share file")
    p.add_argument("--scheme", required=True, help="scheme JSON file")
    p.add_argument("--shares", required=True, help="this server's share-<server>.json")
    p.add_argument("--polys", default=None, help="optional JSON file with one term list per instance")
    p.add_argument("-o", "--output", default=None, help="output file (default eval-<server>.json)")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("rec", help="reconstruct the outputs from all servers' eval files")
    p.add_argument("--scheme", required=True, help="scheme JSON file")
    p.add_argument("--outputs", nargs="+", required=True, help="eval-<server>.json files, one per server")
    p.add_argument("-o", "--output", default=None, help="optional JSON file for the result")
    p.set_defaults(func=_cmd_rec)

    p = sub.add_parser("verify", help="run the full verification suite on a scheme file")
    p.add_argument("--scheme", required=True, help="scheme JSON file")
    p.add_argument("--seed", type=int, default=2024, help="seed for sampled checks (HSS_SEED overrides)")
    p.add_argument("--trials", type=int, default=16, help="random trials when exhaustive checking is too big")
    p.add_argument("-o", "--output", default=None, help="optional JSON file for the report")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("demo", help="walk the smallest nontrivial scheme end to end")
    p.set_defaults(func=_cmd_demo)

    p = sub.add_parser("bounds", help="tabulate feasible amortization levels for parameters")
    p.add_argument("--q", type=int, required=True, help="field size (prime power)")
    p.add_argument("--s", type=int, required=True, help="number of servers")
    p.add_argument("--t", type=int, required=True, help="privacy threshold")
    p.add_argument("--d", type=int, required=True, help="polynomial degree supported")
    p.add_argument("--max-j", type=int, default=6, help="largest amortization level to tabulate")
    p.set_defaults(func=_cmd_bounds)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except LwhssError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
