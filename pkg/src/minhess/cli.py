"""Command line front end.

Every query prints one JSON document on stdout (or DOT when asked for a
graph) with a stable shape: the echoed command, the resolved configuration,
an operation-specific payload, and the rule tags the classification relied
on.  Domain failures print a machine-readable error object on stderr and
exit with status 1; usage errors exit 2; verification failures exit 3.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from . import classes, hess, oracle, singular, verification
from .errors import DomainError
from .roots import RootSystem, build_root_system, cartan_datum, root_str
from .weyl import (
    Composition,
    WeylElement,
    enumerate_min_reps,
    from_one_line,
    one_line,
    one_line_str,
)

CACHE_VERSION = 1


# -- serialization helpers ---------------------------------------------------


def _frac(q: Fraction) -> Dict[str, str]:
    return {"num": str(q.numerator), "den": str(q.denominator)}


def _root(r) -> List[int]:
    return list(r)


def _roots(rs_list) -> List[List[int]]:
    return [_root(r) for r in rs_list]


def _element(w: WeylElement) -> Dict[str, object]:
    out: Dict[str, object] = {"word": list(w.word())}
    if w.rs.cartan.family == "A":
        out["one_line"] = one_line_str(w)
    return out


def _verdict(v: singular.SmoothnessVerdict) -> Dict[str, object]:
    return {
        "verdict": v.verdict,
        "reason": v.reason,
        "detail": json.loads(json.dumps(v.detail)),
    }


def _emit(doc: Dict[str, object]) -> None:
    json.dump(doc, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def _fail(kind: str, message: str) -> int:
    json.dump({"error": {"kind": kind, "message": message}}, sys.stderr, sort_keys=True)
    sys.stderr.write("\n")
    return 1


# -- configuration and element parsing ---------------------------------------


def _ints(text: str) -> List[int]:
    if not text:
        return []
    return [int(tok) for tok in text.split(",") if tok != ""]


def _resolve_config(args) -> hess.HessConfig:
    if args.mu:
        mu = Composition(tuple(_ints(args.mu)))
        cfg = hess.config_from_mu(mu)
        if args.family and args.family != "A":
            raise DomainError("--mu implies a type A configuration")
        if args.rank and args.rank != cfg.rs.rank:
            raise DomainError(
                f"--rank {args.rank} conflicts with --mu (rank {cfg.rs.rank})"
            )
        return cfg
    if not args.family or not args.rank:
        raise DomainError("need either --mu or both --family and --rank")
    rs = build_root_system(args.family, args.rank)
    J = frozenset(_ints(args.J or ""))
    return hess.hess_config(rs, J)


def _parse_element(rs: RootSystem, text: str, notation: Optional[str]) -> WeylElement:
    text = text.strip()
    if text in ("e", ""):
        return WeylElement.identity(rs)
    if notation == "one-line":
        tokens = _ints(text) if "," in text else [int(ch) for ch in text]
        return from_one_line(rs, tuple(tokens))
    if "," in text or text.startswith("s"):
        tokens = [tok.lstrip("s") for tok in text.split(",")]
        return WeylElement.from_word(rs, [int(t) for t in tokens])
    if notation == "word":
        return WeylElement.from_word(rs, [int(ch) for ch in text])
    n = rs.rank + 1
    if rs.cartan.family == "A" and len(text) == n and text.isdigit():
        perm = tuple(int(ch) for ch in text)
        if sorted(perm) == list(range(1, n + 1)):
            return from_one_line(rs, perm)
    if text.isdigit():
        return WeylElement.from_word(rs, [int(ch) for ch in text])
    raise DomainError(f"cannot parse element {text!r}")


def _config_doc(cfg: hess.HessConfig, w: Optional[WeylElement] = None) -> Dict[str, object]:
    doc: Dict[str, object] = {
        "family": cfg.rs.cartan.family,
        "rank": cfg.rs.rank,
        "J": sorted(cfg.J),
    }
    if cfg.mu is not None:
        doc["mu"] = list(cfg.mu.parts)
    if w is not None:
        doc["w"] = _element(w)
    return doc


# -- enumeration cache --------------------------------------------------------


def _cache_key(cfg: hess.HessConfig) -> str:
    return f"{cfg.rs.cartan.family}:{cfg.rs.rank}:{','.join(map(str, sorted(cfg.J)))}"


def _load_cached_reps(path: str, cfg: hess.HessConfig) -> Optional[List[WeylElement]]:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, ValueError):
        return None
    if data.get("version") != CACHE_VERSION:
        return None
    words = data.get("cosets", {}).get(_cache_key(cfg))
    if words is None:
        return None
    return [WeylElement.from_word(cfg.rs, word) for word in words]


def _store_cached_reps(path: str, cfg: hess.HessConfig, reps: Sequence[WeylElement]) -> None:
    try:
        with open(path) as fh:
            data = json.load(fh)
        if data.get("version") != CACHE_VERSION:
            data = {"version": CACHE_VERSION, "cosets": {}}
    except (OSError, ValueError):
        data = {"version": CACHE_VERSION, "cosets": {}}
    data["cosets"][_cache_key(cfg)] = [list(v.word()) for v in reps]
    with open(path, "w") as fh:
        json.dump(data, fh, sort_keys=True)


def _min_reps(cfg: hess.HessConfig, bound: int, cache: Optional[str]) -> List[WeylElement]:
    if cache:
        cached = _load_cached_reps(cache, cfg)
        if cached is not None:
            return cached
    reps = list(enumerate_min_reps(cfg.rs, cfg.J, bound))
    if cache:
        _store_cached_reps(cache, cfg, reps)
    return reps


# -- subcommand handlers -------------------------------------------------------


def _cmd_admissible(args) -> int:
    cfg = _resolve_config(args)
    reps = _min_reps(cfg, args.bound, args.cache)
    elements = []
    count = 0
    for v in reps:
        dv = sorted(hess.delta_v(v, cfg))
        count += 2 ** len(dv)
        if args.list:
            import itertools as it

            from .weyl import longest_element

            for size in range(len(dv) + 1):
                for K in it.combinations(dv, size):
                    elements.append(longest_element(cfg.rs, K) * v)
    payload: Dict[str, object] = {"count": count}
    if args.list:
        payload["elements"] = [_element(w) for w in elements]
    _emit(
        {
            "command": "admissible",
            "config": _config_doc(cfg),
            "payload": payload,
            "citations": ["cell-nonemptiness-criterion"],
        }
    )
    return 0


def _cmd_decompose(args) -> int:
    cfg = _resolve_config(args)
    w = _parse_element(cfg.rs, args.w, args.notation)
    d = hess.decompose_admissible(w, cfg)
    payload = {
        "K": sorted(d.K),
        "v": _element(d.v),
        "tau": _element(d.tau),
        "des": sorted(d.des),
        "y_des": _element(d.y_des),
        "J_w": sorted(d.Jw),
        "levi_components": [
            {"indices": list(ix), "type": name} for ix, name in d.levi_components
        ],
        "cell_dimension": d.dimension,
    }
    _emit(
        {
            "command": "decompose",
            "config": _config_doc(cfg, w),
            "payload": payload,
            "citations": ["coset-factorization", "descent-factorization"],
        }
    )
    return 0


def _closure_dot(cfg: hess.HessConfig, cells) -> str:
    names = {}
    for c in cells:
        if cfg.rs.cartan.family == "A":
            names[c.v] = one_line_str(c.v)
        else:
            names[c.v] = repr(c.v)
    lines = ["digraph closure {", "  rankdir=BT;"]
    for c in cells:
        lines.append(f'  "{names[c.v]}" [label="{names[c.v]}\\ndim {c.dim}"];')
    # covering relations of the containment order
    order = {
        (a.v, b.v)
        for a in cells
        for b in cells
        if a.v != b.v and hess.cell_contained_in_closure(a.v, b.v, cfg)
    }
    for a, b in sorted(order, key=lambda p: (names[p[0]], names[p[1]])):
        if any((a, c) in order and (c, b) in order for c in (x.v for x in cells)):
            continue
        lines.append(f'  "{names[a]}" -> "{names[b]}";')
    lines.append("}")
    return "\n".join(lines)


def _cmd_closure(args) -> int:
    cfg = _resolve_config(args)
    w = _parse_element(cfg.rs, args.w, args.notation)
    cells = hess.closure_intersecting_cells(w, cfg, args.bound)
    if args.dot:
        sys.stdout.write(_closure_dot(cfg, cells) + "\n")
        return 0
    payload = {
        "cells": [
            {"v": _element(c.v), "x": _element(c.x), "dim": c.dim} for c in cells
        ]
    }
    _emit(
        {
            "command": "closure",
            "config": _config_doc(cfg, w),
            "payload": payload,
            "citations": ["closure-intersection-criterion"],
        }
    )
    return 0


def _cmd_fixed_point_smooth(args) -> int:
    cfg = _resolve_config(args)
    w = _parse_element(cfg.rs, args.w, args.notation)
    if cfg.is_type_a:
        verdict = singular.typeA_fixed_point_smooth(w, cfg.mu)
    else:
        verdict = singular.hess_fixed_point_smooth(w, cfg)
    _emit(
        {
            "command": "fixed-point-smooth",
            "config": _config_doc(cfg, w),
            "payload": _verdict(verdict),
            "citations": list(verdict.citations),
        }
    )
    return 0


def _cmd_peterson_singular_locus(args) -> int:
    datum = cartan_datum(args.family, args.rank)
    locus = singular.peterson_singular_locus(datum, bound=args.bound)
    _emit(
        {
            "command": "peterson-singular-locus",
            "config": {"family": datum.family, "rank": datum.rank},
            "payload": {"singular_K": [list(K) for K in locus]},
            "citations": ["peterson-singular-set"],
        }
    )
    return 0


def _cmd_count_smooth(args) -> int:
    mu = Composition(tuple(_ints(args.mu)))
    count = singular.count_smooth_flags(mu)
    _emit(
        {
            "command": "count-smooth",
            "config": {"family": "A", "rank": mu.n - 1, "mu": list(mu.parts)},
            "payload": {"count": str(count)},
            "citations": ["smooth-count-formula"],
        }
    )
    return 0


def _cmd_class(args) -> int:
    cfg = _resolve_config(args)
    w = _parse_element(cfg.rs, args.w, args.notation)
    form = classes.K_THEORY if args.form == "k-theory" else classes.COHOMOLOGY
    expr = classes.hess_schubert_class(w, cfg, form)
    payload: Dict[str, object] = {
        "form": expr.form,
        "scalar": _frac(expr.scalar),
        "factor_roots": _roots(expr.factor_roots),
        "factor_roots_pretty": [root_str(r) for r in expr.factor_roots],
    }
    if args.expand:
        poly = classes.expand_typeA(expr, cfg.rs)
        payload["expanded"] = {
            "variables": [f"x{i + 1}" for i in range(poly.n)],
            "terms": [
                {"monomial": list(m), "coefficient": _frac(c)}
                for m, c in poly.coeffs
            ],
            "pretty": str(poly),
        }
    _emit(
        {
            "command": "class",
            "config": _config_doc(cfg, w),
            "payload": payload,
            "citations": ["class-product-formula"],
        }
    )
    return 0


def _cmd_oracle(args) -> int:
    mu = Composition(tuple(_ints(args.mu)))
    cfg = hess.config_from_mu(mu)
    w = _parse_element(cfg.rs, args.w, args.notation)
    if args.u1:
        if args.u1.startswith("@"):
            with open(args.u1[1:]) as fh:
                raw = json.load(fh)
        else:
            raw = json.loads(args.u1)
        u1 = [[Fraction(str(x)) for x in row] for row in raw]
        res = oracle.jacobian_at_cell_point(w, mu, u1, size_bound=args.size_bound)
    else:
        res = oracle.jacobian_at_fixed_point(w, mu, size_bound=args.size_bound)
    payload = {
        "rows": _roots(res.rows),
        "cols": _roots(res.cols),
        "matrix": [[_frac(x) for x in row] for row in res.matrix],
        "rank": res.rank,
        "full_rank": res.rank == len(res.rows),
        "verdict": res.verdict,
    }
    if res.note:
        payload["note"] = res.note
    _emit(
        {
            "command": "oracle",
            "config": _config_doc(cfg, w),
            "payload": payload,
            "citations": ["jacobian-rank"],
        }
    )
    return 0


def _cmd_verify(args) -> int:
    checks = verification.run_suite(args.suite, args.max_rank)
    failures = [c for c in checks if not c.ok]
    _emit(
        {
            "command": "verify",
            "config": {"suite": args.suite, "max_rank": args.max_rank},
            "payload": {
                "checks": [
                    {"name": c.name, "ok": c.ok, "detail": c.detail} for c in checks
                ],
                "failures": len(failures),
            },
            "citations": ["verification-harness"],
        }
    )
    return 3 if failures else 0


# -- parser ---------------------------------------------------------------------


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", choices=list("ABCDEFG"), help="simple type")
    p.add_argument("--rank", type=int, help="rank of the simple type")
    p.add_argument("--J", help="comma-separated simple indices naming the regular element")
    p.add_argument("--mu", help="type A composition, comma separated")


def _add_element_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--w", required=True, help="one-line notation (type A) or reflection word")
    p.add_argument(
        "--notation",
        choices=["one-line", "word"],
        help="force how --w is read when ambiguous",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="minhess",
        description=(
            "Cell structure, closure relations, class formulas and smoothness "
            "classification of minimal-space regular Hessenberg varieties."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("admissible", help="count or list nonempty cells")
    _add_config_flags(p)
    p.add_argument("--list", action="store_true")
    p.add_argument("--bound", type=int, default=10**6)
    p.add_argument("--cache", help="path of a JSON cache of coset representatives")
    p.set_defaults(func=_cmd_admissible)

    p = sub.add_parser("decompose", help="full decomposition data of an admissible element")
    _add_config_flags(p)
    _add_element_flags(p)
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("closure", help="cells meeting a cell closure")
    _add_config_flags(p)
    _add_element_flags(p)
    p.add_argument("--dot", action="store_true", help="emit a DOT containment diagram")
    p.add_argument("--bound", type=int, default=10**6)
    p.set_defaults(func=_cmd_closure)

    p = sub.add_parser("fixed-point-smooth", help="smooth/singular verdict at a fixed point")
    _add_config_flags(p)
    _add_element_flags(p)
    p.set_defaults(func=_cmd_fixed_point_smooth)

    p = sub.add_parser("peterson-singular-locus", help="singular cells of a Peterson variety")
    p.add_argument("--family", choices=list("ABCDEFG"), required=True)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--bound", type=int, default=2**20)
    p.set_defaults(func=_cmd_peterson_singular_locus)

    p = sub.add_parser("count-smooth", help="number of smooth permutation flags")
    p.add_argument("--mu", required=True)
    p.set_defaults(func=_cmd_count_smooth)

    p = sub.add_parser("class", help="K-theory / cohomology class of a cell closure")
    _add_config_flags(p)
    _add_element_flags(p)
    p.add_argument("--form", choices=["cohomology", "k-theory"], default="cohomology")
    p.add_argument("--expand", action="store_true", help="expand in Chern roots (type A)")
    p.set_defaults(func=_cmd_class)

    p = sub.add_parser("oracle", help="exact Jacobian verdict via matrix charts (type A)")
    p.add_argument("--mu", required=True)
    _add_element_flags(p)
    p.add_argument("--u1", help="rational unipotent matrix as JSON, or @file")
    p.add_argument("--size-bound", type=int, default=oracle.DEFAULT_SIZE_BOUND)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument(
        "--suite",
        required=True,
        choices=sorted(verification.SUITES),
    )
    p.add_argument("--max-rank", type=int, default=None)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        return _fail("domain", str(exc))
    except (ValueError, OSError) as exc:
        return _fail("input", str(exc))


if __name__ == "__main__":
    sys.exit(main())
