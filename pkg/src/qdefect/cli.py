"""Command-line interface: ``qdefect <command> ...``.

Exit codes: 0 ok, 1 a verified bound failed, 2 usage or infeasible spec,
3 search budget exceeded, 4 invalid code, 5 construction condition or
statement precondition failed, 6 a required set is not erasable.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Any

from . import __version__
from .bundle import format_code, load_code
from .csscode import CssCode, css_distances
from .defect import construct_defect, gauge_fix_remove, verify_statement2, verify_statement3
from .entropy import check_kappa_bound, deformation_stability, gamma
from .errors import (
    BudgetExceeded,
    ConditionFailed,
    InfeasibleSpec,
    NotErasable,
    NotOrthogonal,
    PreconditionFailed,
)
from .f2core import DEFAULT_BUDGET, format_matrix, read_matrix
from .families import (
    FAMILIES,
    RegularMatrixSpec,
    hypergraph_product,
    planar_surface,
    random_regular_matrix,
    toric,
)
from .tanner import ball_qubits

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_INVALID = 4
EXIT_PRECONDITION = 5
EXIT_NOT_ERASABLE = 6


class CliError(Exception):
    def __init__(self, code: int, message: str, report: dict | None = None):
        super().__init__(message)
        self.code = code
        self.report = report


# ---------------------------------------------------------------------------
# output


def _flatten(obj: Any, prefix: str = "") -> list[tuple[str, Any]]:
    if isinstance(obj, dict):
        out = []
        for k, v in obj.items():
            out.extend(_flatten(v, f"{prefix}{k}."))
        return out
    if isinstance(obj, list) and any(isinstance(v, (dict, list)) for v in obj):
        out = []
        for i, v in enumerate(obj):
            out.extend(_flatten(v, f"{prefix}{i}."))
        return out
    return [(prefix[:-1], obj)]


def _scalar_text(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list):
        return " ".join(str(x) for x in v)
    return str(v)


def render(report: dict, fmt: str, csv_text: str | None = None) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    if fmt == "text":
        return "".join(f"{k}: {_scalar_text(v)}\n" for k, v in _flatten(report))
    if csv_text is not None:
        return csv_text
    pairs = _flatten(report)
    header = ",".join(k for k, _ in pairs)
    row = ",".join(f'"{_scalar_text(v)}"' if " " in _scalar_text(v) else _scalar_text(v) for _, v in pairs)
    return header + "\n" + row + "\n"


def emit(text: str, out: str | None) -> None:
    if out and out != "-":
        with open(out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _num(x):
    if x is None or (isinstance(x, float) and math.isinf(x)):
        return None
    return int(x)


# ---------------------------------------------------------------------------
# argument helpers


def parse_index_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def parse_ball(text: str) -> tuple[int, int]:
    try:
        u, r = text.split(":")
        return int(u), int(r)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected U:R, got {text!r}") from None


def parse_moves(text: str) -> list[tuple[str, int]]:
    moves = []
    for tok in text.replace(" ", "").split(","):
        if not tok:
            continue
        if tok[0] not in "+-" or not tok[1:].isdigit():
            raise argparse.ArgumentTypeError(f"moves look like +3,-5; got {tok!r}")
        moves.append((tok[0], int(tok[1:])))
    return moves


def _load(args) -> CssCode:
    try:
        args.loaded = load_code(args.bundle)
        return args.loaded
    except NotOrthogonal as exc:
        raise CliError(EXIT_INVALID, f"invalid code: {exc}", {"x_row": exc.x_row, "z_row": exc.z_row}) from None
    except (ValueError, IndexError) as exc:
        raise CliError(EXIT_INVALID, f"invalid bundle: {exc}") from None
    except OSError as exc:
        raise CliError(EXIT_USAGE, str(exc)) from None


def _region(code: CssCode, args) -> list[int]:
    if getattr(args, "ball", None) is not None:
        u, r = args.ball
        if not 0 <= u < code.Q.n_rows:
            raise CliError(EXIT_USAGE, f"no row {u} in Q")
        return list(ball_qubits(code.Q, u, r))
    if getattr(args, "A", None) is not None:
        return args.A
    raise CliError(EXIT_USAGE, "give the region with --A or --ball")


def _search(args) -> dict:
    return {"budget": args.budget, "threads": args.threads}


# ---------------------------------------------------------------------------
# commands


def cmd_gen(args) -> tuple[str, None]:
    fam = args.family
    try:
        if fam == "toric":
            return format_code(toric(args.L)), None
        if fam == "planar":
            return format_code(planar_surface(args.L)), None
        if fam == "qhp":
            H1, H2 = read_matrix(args.h1), read_matrix(args.h2)
            return format_code(hypergraph_product(H1, H2, args.name or "qhp")), None
        spec = RegularMatrixSpec(args.row_weight, args.col_weight, args.n_rows, args.n_cols, args.seed)
        H = random_regular_matrix(spec)
        if fam == "regular":
            return format_matrix(H), None
        name = f"qhp-regular({args.row_weight},{args.col_weight},{args.n_rows},{args.n_cols},seed={args.seed})"
        return format_code(hypergraph_product(H, H, name)), None
    except (InfeasibleSpec, ValueError) as exc:
        raise CliError(EXIT_USAGE, str(exc)) from None
    except OSError as exc:
        raise CliError(EXIT_USAGE, str(exc)) from None


def cmd_families(args) -> tuple[str, None]:
    return "".join(f"{name}\t{desc}\n" for name, desc in FAMILIES.items()), None


def cmd_info(args) -> dict:
    code = _load(args)
    return {
        "name": code.name,
        "n": code.n,
        "k": code.k,
        "rows_P": code.P.n_rows,
        "rows_Q": code.Q.n_rows,
        "rank_P": code.rank_P,
        "rank_Q": code.rank_Q,
        "w": code.max_weight,
    }


def cmd_distance(args) -> dict:
    code = _load(args)
    try:
        d = css_distances(code, **_search(args))
    except BudgetExceeded as exc:
        raise CliError(EXIT_BUDGET, str(exc), {"n": code.n, "k": code.k, "d_X": None, "d_Z": None}) from None
    report = {"n": code.n, "k": code.k, "d_X": _num(d.d_X), "d_Z": _num(d.d_Z)}
    if code.k == 0:
        report["reason"] = "empty domain"
    return report


def cmd_defect(args) -> dict:
    code = _load(args)
    aux = None
    u0 = args.u0
    if args.aux_hole is not None:
        au, ar = args.aux_hole
        A1 = ball_qubits(code.Q, au, ar)
        gf = gauge_fix_remove(code, A1)
        if u0 not in gf.row_map:
            raise CliError(EXIT_USAGE, f"row {u0} touches the auxiliary hole")
        aux = {"u0": au, "R1": ar, "A": list(A1), "row": gf.row_map[u0]}
        code, u0 = gf.result, gf.row_map[u0]
    rep = construct_defect(
        code, u0, args.r1, A=args.A, drop_rows=args.drop_rows, verify=not args.no_verify, **_search(args)
    )
    out = rep.to_dict()
    kb = check_kappa_bound(rep)
    out["kappa_bound"] = {"kappa": kb.kappa, "gamma": kb.gamma, "applicable": kb.applicable, "holds": kb.holds}
    if aux is not None:
        out["aux_hole"] = aux
    return out


def cmd_entropy(args) -> dict:
    code = _load(args)
    A = _region(code, args)
    return gamma(code, A, x_side=args.x_side).to_dict()


def cmd_verify(args) -> dict:
    code = _load(args)
    if args.statement == "stmt1":
        A = _region(code, args)
        gf = gauge_fix_remove(code, A)
        d = css_distances(code, **_search(args))
        dg = css_distances(gf.result, **_search(args))
        holds = gf.result.k == code.k and d.d_X - len(A) <= dg.d_X <= d.d_X and dg.d_Z >= d.d_Z
        return {
            "statement": 1,
            "A": list(gf.A),
            "k": code.k,
            "k_prime": gf.result.k,
            "d_X": _num(d.d_X),
            "d_Z": _num(d.d_Z),
            "d_X_prime": _num(dg.d_X),
            "d_Z_prime": _num(dg.d_Z),
            "holds": bool(holds),
        }
    if args.statement == "stmt2":
        return verify_statement2(code, args.u0, args.r1, args.r2, A=args.A, **_search(args)).to_dict()
    return verify_statement3(code, args.u0, args.r1, m_max=args.m_max, **_search(args)).to_dict()


def cmd_deform(args) -> tuple[dict, str]:
    code = _load(args)
    A = _region(code, args)
    current = set(A)
    toggles = []
    for i, (sign, q) in enumerate(args.moves, start=1):
        if (sign == "+") == (q in current):
            raise CliError(EXIT_USAGE, f"move {i} ({sign}{q}) does not change A")
        current ^= {q}
        toggles.append(q)
    rep = deformation_stability(code, A, toggles, args.w, u0=args.u0, **_search(args))
    return rep.to_dict(), rep.to_csv()


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max elements per exhaustive search")
    common.add_argument("--seed", type=int, default=0, help="seed for random families")
    common.add_argument("--threads", type=int, default=1, help="worker threads for searches")
    common.add_argument("--format", choices=["json", "csv", "text"], default="json")
    common.add_argument("--out", help="output file (default stdout)")

    p = argparse.ArgumentParser(prog="qdefect", description="Defect codes from CSS stabilizer codes.")
    p.add_argument("--version", action="version", version=f"qdefect {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a code bundle", parents=[common])
    gsub = gen.add_subparsers(dest="family", required=True)
    for fam in ("toric", "planar"):
        g = gsub.add_parser(fam, parents=[common])
        g.add_argument("L", type=int)
    g = gsub.add_parser("qhp", parents=[common])
    g.add_argument("--h1", required=True)
    g.add_argument("--h2", required=True)
    g.add_argument("--name", default="")
    for fam in ("regular", "qhp-regular"):
        g = gsub.add_parser(fam, parents=[common])
        for a in ("row_weight", "col_weight", "n_rows", "n_cols"):
            g.add_argument(a, type=int)

    fam = sub.add_parser("families", help="list code families")
    fam.add_argument("action", choices=["list"])

    for name in ("info", "distance"):
        c = sub.add_parser(name, parents=[common])
        c.add_argument("bundle", help="bundle file or - for stdin")

    c = sub.add_parser("defect", help="run the defect construction", parents=[common])
    c.add_argument("bundle")
    c.add_argument("--u0", type=int, required=True, help="row of Q to promote")
    c.add_argument("--r1", type=int, required=True, help="ball radius around u0")
    c.add_argument("--A", type=parse_index_list, help="explicit region, e.g. 0,4,9")
    c.add_argument("--aux-hole", type=parse_ball, help="remove ball U:R first (two-hole setup)")
    c.add_argument("--drop-rows", type=parse_index_list, help="rows of Q to delete instead of the default rule")
    c.add_argument("--no-verify", action="store_true", help="skip the statement checks")

    c = sub.add_parser("entropy", help="entanglement entropy and gamma of a cut", parents=[common])
    c.add_argument("bundle")
    c.add_argument("--A", type=parse_index_list, help="region, e.g. 0,4,9")
    c.add_argument("--ball", type=parse_ball, help="region as the qubits of ball U:R")
    c.add_argument("--x-side", action="store_true", help="also count split rows of P")

    v = sub.add_parser("verify", help="check a distance bound")
    vsub = v.add_subparsers(dest="statement", required=True)
    s1 = vsub.add_parser("stmt1", parents=[common])
    s1.add_argument("bundle")
    s1.add_argument("--A", type=parse_index_list)
    s1.add_argument("--ball", type=parse_ball)
    s2 = vsub.add_parser("stmt2", parents=[common])
    s2.add_argument("bundle")
    s2.add_argument("--u0", type=int, required=True)
    s2.add_argument("--r1", type=int, required=True)
    s2.add_argument("--r2", type=int)
    s2.add_argument("--A", type=parse_index_list)
    s3 = vsub.add_parser("stmt3", parents=[common])
    s3.add_argument("bundle")
    s3.add_argument("--u0", type=int, required=True)
    s3.add_argument("--r1", type=int, required=True)
    s3.add_argument("--m-max", type=int)

    c = sub.add_parser("deform", help="track kappa and gamma along a move sequence", parents=[common])
    c.add_argument("bundle")
    c.add_argument("--u0", type=int, required=True)
    c.add_argument("--A", type=parse_index_list)
    c.add_argument("--ball", type=parse_ball)
    c.add_argument("--moves", type=parse_moves, default=[], help="e.g. +13,-12")
    c.add_argument("--w", type=int, help="row weight in the guarantee (default: max row weight)")
    return p


COMMANDS = {
    "gen": cmd_gen,
    "families": cmd_families,
    "info": cmd_info,
    "distance": cmd_distance,
    "defect": cmd_defect,
    "entropy": cmd_entropy,
    "verify": cmd_verify,
    "deform": cmd_deform,
}


def _run(args) -> int:
    fmt = getattr(args, "format", "json")
    out = getattr(args, "out", None)
    if getattr(args, "budget", 0) < 0 or getattr(args, "threads", 1) < 1:
        raise CliError(EXIT_USAGE, "--budget must be >= 0 and --threads >= 1")
    result = COMMANDS[args.command](args)
    if isinstance(result, tuple) and isinstance(result[0], str):
        emit(result[0], out)
        return EXIT_OK
    csv_text = None
    if isinstance(result, tuple):
        result, csv_text = result
    emit(render(result, fmt, csv_text), out)
    if result.get("holds") is False:
        return EXIT_FAILED
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    fmt = getattr(args, "format", "json")
    out = getattr(args, "out", None)
    try:
        return _run(args)
    except CliError as exc:
        err, code, report = str(exc), exc.code, exc.report
    except BudgetExceeded as exc:
        err, code, report = str(exc), EXIT_BUDGET, None
        c = getattr(args, "loaded", None)
        if c is not None:
            report = {"n": c.n, "k": c.k}
    except (ConditionFailed, PreconditionFailed) as exc:
        err, code, report = str(exc), EXIT_PRECONDITION, exc.report or None
    except NotErasable as exc:
        err, code = str(exc), EXIT_NOT_ERASABLE
        report = {"side": exc.side, "witness": list(exc.witness.support) if exc.witness is not None else None}
    except NotOrthogonal as exc:
        err, code, report = str(exc), EXIT_INVALID, {"x_row": exc.x_row, "z_row": exc.z_row}
    except (IndexError, ValueError) as exc:
        err, code, report = str(exc), EXIT_USAGE, None
    print(f"qdefect: error: {err}", file=sys.stderr)
    if report is not None:
        emit(render({"error": err, "exit_code": code, "partial": report}, fmt if fmt != "csv" else "json"), out)
    return code


if __name__ == "__main__":
    sys.exit(main())
