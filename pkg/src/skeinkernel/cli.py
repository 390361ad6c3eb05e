"""Command-line interface: ``skeinkernel <command> [options]``.

Every command prints one JSON document on stdout.  The exit code is 0 iff
every check the command performs passes.  Roots of unity are written
``EXP/ORD`` for exp(2 pi i EXP / ORD).  Options may also come from a JSON
config file (``--config``) with keys ``oracle_cap``, ``tolerance`` and
``branch``; command-line flags win.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import amu
from .amu import BraidWord, limit_scan, spectral_report
from .exact_arith import CycloNum, CycloRing, QRoot, tqft_dimension
from .four_punctures import RHO_HOM, rho_infinity, root_8N, sigma_matrices_4
from .homological import (
    _branch,
    burau_reduced,
    conclusion1_matrices,
    field_order,
    h1_dimension,
    mcmullen_general,
    sqrt_branch,
)
from .matrices import Matrix
from .skein_rep import SkeinModule, kernel_rep, kernel_root
from .verify import VerificationFailure, verify_theorem_n4, verify_theorem_n6

__all__ = ["main", "build_parser", "parse_root", "scalar_json"]


def parse_root(text: str) -> QRoot:
    """'EXP/ORD' -> QRoot(ORD, EXP).

    >>> parse_root("5/6")
    QRoot(order=6, exponent=5)
    """
    try:
        e, o = text.split("/")
        return QRoot(int(o), int(e))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected EXP/ORD, got {text!r}") from exc


def scalar_json(c) -> dict:
    """{order, coeffs[], approx} for cyclotomic and rational scalars."""
    if isinstance(c, CycloNum):
        return c.to_json()
    if isinstance(c, (int, Fraction)):
        return {"order": 1, "coeffs": [str(Fraction(c))], "approx": [float(c), 0.0]}
    if hasattr(c, "to_json"):
        return {"laurent": c.to_json()}
    return {"repr": repr(c)}


def matrix_json(M: Matrix) -> list:
    return [[scalar_json(c) for c in row] for row in M.rows]


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    with open(path) as fh:
        cfg = json.load(fh)
    unknown = set(cfg) - {"oracle_cap", "tolerance", "branch"}
    if unknown:
        raise SystemExit(f"unknown config keys: {sorted(unknown)}")
    return cfg


def _settings(args) -> dict:
    cfg = _load_config(args.config)
    out = {
        "oracle_cap": cfg.get("oracle_cap"),
        "tolerance": cfg.get("tolerance", amu.TOLERANCE),
        "branch": parse_root(cfg["branch"]) if cfg.get("branch") else None,
    }
    for key in ("oracle_cap", "tolerance", "branch"):
        val = getattr(args, key, None)
        if val is not None:
            out[key] = val
    return out


# --------------------------------------------------------------------------
# commands


def cmd_dims(args, settings) -> tuple[dict, bool]:
    n, N, k = args.n, args.N, args.k
    r = args.r if args.r is not None else (n * N + k) // 2
    S = SkeinModule(n, N, k)
    out = {"n": n, "N": N, "k": k, "r": r, "S": S.dim}
    ok = True
    try:
        out["V"] = tqft_dimension(n, N, k, r)
    except ValueError as exc:
        out["V"] = None
        out["V_error"] = str(exc)
    if r >= 2:
        Sr = SkeinModule(n, N, k, CycloRing(QRoot(4 * r, 1)), cap=settings["oracle_cap"])
        out["K"] = len(Sr.kernel)
        if out["V"] is not None:
            out["S_minus_K_equals_V"] = S.dim - out["K"] == out["V"]
            ok = out["S_minus_K_equals_V"]
    return out, ok


def cmd_gram(args, settings) -> tuple[dict, bool]:
    root = args.root if args.root is not None else QRoot(4 * args.r, 1)
    S = SkeinModule(args.n, args.N, args.k, CycloRing(root), cap=settings["oracle_cap"])
    G = S.gram
    K = S.kernel
    ok = all(S.in_kernel(v) for v in K)
    return {
        "n": args.n,
        "N": args.N,
        "k": args.k,
        "root": {"order": root.order, "exponent": root.exponent},
        "basis": S.to_json()["basis"],
        "gram": matrix_json(G),
        "kernel": [[scalar_json(c) for c in v] for v in K],
    }, ok


def _mcmullen(n: int, q: QRoot, branch: QRoot | None):
    if h1_dimension(n, q) == n - 2:
        if branch is not None and not (branch ** 2).reduced() == q.reduced():
            raise SystemExit("branch override is not a square root of q")
        b = _branch(q.reduced(), branch) if branch is not None else sqrt_branch(q)
        return conclusion1_matrices(n, q, b), "u_tilde"
    return mcmullen_general(n, q).generators, "u"


def _generators(args, settings) -> tuple[list, dict]:
    side = args.side
    if side == "skein":
        if args.n == 4:
            rho = rho_infinity(args.N)
            return [rho.sigma1, rho.sigma2, rho.sigma1], {"basis": "(v, v*)", "chi0": scalar_json(rho.chi0), "alpha": scalar_json(rho.alpha)}
        if getattr(args, "full", False):
            ring = kernel_root(args.n, args.N)
            S = SkeinModule(args.n, args.N, 0, ring, cap=settings["oracle_cap"])
            return [S.sigma(i) for i in range(1, args.n)], {"basis": "cluster matchings"}
        K = kernel_rep(args.n, args.N, cap=settings["oracle_cap"])
        return K.matrices, {"basis": "w_1..w_{n-2}", "lambda": scalar_json(K.lam)}
    if side == "mcmullen":
        mats, basis = _mcmullen(args.n, args.q, settings["branch"])
        return mats, {"basis": basis}
    if side == "burau":
        t = args.q.to_cyclo(field_order(args.q))
        return burau_reduced(args.n, t), {"basis": "reduced Burau", "t": scalar_json(t)}
    if side == "rho-hom":
        if args.n != 4:
            raise SystemExit("rho-hom is defined for n = 4")
        return list(RHO_HOM), {"basis": "integer"}
    if side == "yx":
        M, Mbar = sigma_matrices_4(args.N, root_8N(args.N) if args.q is None else CycloRing(args.q))
        return [M, Mbar, M], {"basis": "Y^k X^(N-k)"}
    raise SystemExit(f"unknown side {side}")


def _require_side_args(args):
    if args.side in ("skein", "yx") and args.N is None:
        raise SystemExit("--N is required for this side")
    if args.side in ("mcmullen", "burau") and args.q is None:
        raise SystemExit("--q is required for this side")


def cmd_rep(args, settings) -> tuple[dict, bool]:
    _require_side_args(args)
    mats, meta = _generators(args, settings)
    ok = _braid_relations(mats)
    return {"side": args.side, "n": args.n, **meta, "braid_relations": ok, "generators": [matrix_json(M) for M in mats]}, ok


def _braid_relations(mats) -> bool:
    for i, a in enumerate(mats):
        for j, b in enumerate(mats):
            if j == i + 1 and not a @ b @ a == b @ a @ b:
                return False
            if j > i + 1 and not a @ b == b @ a:
                return False
    return True


def cmd_verify(args, settings) -> tuple[dict, bool]:
    try:
        if args.n == 4:
            rep = verify_theorem_n4(args.N)
        else:
            rep = verify_theorem_n6(args.n, args.N, cap=settings["oracle_cap"])
    except VerificationFailure as exc:
        return {"case": exc.case, "matched": False, "generator": exc.generator, "entry": exc.entry, "error": str(exc)}, False
    return rep.to_json(), rep.matched


def cmd_spectral(args, settings) -> tuple[dict, bool]:
    _require_side_args(args)
    amu.TOLERANCE = settings["tolerance"]
    mats, meta = _generators(args, settings)
    w = BraidWord.parse(args.word, args.n)
    rep = spectral_report(mats, w, args.side)
    out = rep.to_json()
    out.update(meta)
    if args.n == 4:
        out["pa_test_n4"] = amu.pa_test_n4(w)
    return out, True


def cmd_limit_scan(args, settings) -> tuple[dict, bool]:
    amu.TOLERANCE = settings["tolerance"]
    w = BraidWord.parse(args.word, 4)
    scan = limit_scan(args.N, w, range(args.r_min, args.r_max + 1), args.target)
    out = scan.to_json()
    if args.format == "csv":
        buf = io.StringIO()
        wr = csv.writer(buf)
        wr.writerow(["r", "order", "exponent", "dimension", "radius", "deviation"])
        for row in scan.rows:
            wr.writerow([row.r, row.root.order, row.root.exponent, row.dimension, row.radius, row.deviation])
        return {"csv": buf.getvalue()}, True
    return out, True


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="skeinkernel", description=__doc__.splitlines()[0])
    p.add_argument("--config", help="JSON config file with oracle_cap, tolerance, branch")
    p.add_argument("--oracle-cap", dest="oracle_cap", type=int, help="strand cap for diagrammatic oracles")
    p.add_argument("--tolerance", type=float, help="float tolerance for spectral checks")
    p.add_argument("--branch", type=parse_root, help="override the square root of q (EXP/ORD)")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("dims", help="dimensions of S, V_{2r} and the Gram kernel")
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--N", type=int, required=True)
    d.add_argument("--k", type=int, default=0)
    d.add_argument("--r", type=int)
    d.set_defaults(func=cmd_dims)

    g = sub.add_parser("gram", help="Gram matrix and kernel basis at a root of unity")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--N", type=int, required=True)
    g.add_argument("--k", type=int, default=0)
    g.add_argument("--r", type=int, required=True)
    g.add_argument("--root", type=parse_root, help="A as EXP/ORD (default 1/4r)")
    g.set_defaults(func=cmd_gram)

    for name, func, helptext in (
        ("rep", cmd_rep, "generator matrices of a representation"),
        ("spectral", cmd_spectral, "spectral report for a braid word"),
    ):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("--side", choices=["skein", "mcmullen", "burau", "rho-hom", "yx"], required=True)
        s.add_argument("--n", type=int, required=True)
        s.add_argument("--N", type=int)
        s.add_argument("--q", type=parse_root, help="q as EXP/ORD")
        s.add_argument("--full", action="store_true", help="skein side: whole module instead of the kernel")
        if name == "spectral":
            s.add_argument("--word", required=True, help='e.g. "1 -2 3^2"')
        s.set_defaults(func=func)

    v = sub.add_parser("verify", help="kernel representation versus rho_{q^-1}")
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--N", type=int, required=True)
    v.set_defaults(func=cmd_verify)

    ls = sub.add_parser("limit-scan", help="Q_r as A_r approaches a primitive 8N-th root")
    ls.add_argument("--N", type=int, required=True)
    ls.add_argument("--word", required=True)
    ls.add_argument("--r-min", dest="r_min", type=int, required=True)
    ls.add_argument("--r-max", dest="r_max", type=int, required=True)
    ls.add_argument("--target", type=parse_root, help="A_infinity as EXP/ORD (default 1/8N)")
    ls.add_argument("--format", choices=["json", "csv"], default="json")
    ls.set_defaults(func=cmd_limit_scan)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    settings = _settings(args)
    saved = amu.TOLERANCE
    try:
        out, ok = args.func(args, settings)
    finally:
        amu.TOLERANCE = saved
    if "csv" in out and len(out) == 1:
        sys.stdout.write(out["csv"])
    else:
        json.dump(out, sys.stdout, indent=2)
        sys.stdout.write("\n")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
