"""Batch verification sweeps behind the command line ``verify`` subcommand.

Each suite returns a list of named checks with pass/fail flags; the CLI
turns any unexpected failure into a nonzero exit.  The table suite pins the
regression data for the worked examples, the cross-validate suite replays
the triple smoothness comparison at desk scale, the cominuscule suite checks
the root-arithmetic characterization against the index-set tables in every
type, and the fig1 suite instantiates the shared-linear case table.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from . import classes, hess, oracle, singular
from .roots import build_root_system, cartan_datum, negate
from .weyl import (
    Composition,
    WeylElement,
    enumerate_min_reps,
    from_one_line,
    longest_element,
    one_line,
)


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""


def _compositions(n: int) -> List[Tuple[int, ...]]:
    out = []
    for cuts in range(2 ** (n - 1)):
        parts, run = [], 1
        for i in range(n - 1):
            if cuts >> i & 1:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        out.append(tuple(parts))
    return out


def suite_paper_tables() -> List[Check]:
    checks: List[Check] = []

    # Delta(v) over the minimal coset representatives, A_3 with mu=(2,2)
    cfg = hess.config_from_mu((2, 2))
    table = {
        (1, 2, 3, 4): {1, 3},
        (1, 3, 2, 4): set(),
        (3, 1, 2, 4): {1},
        (1, 3, 4, 2): {3},
        (3, 1, 4, 2): set(),
        (3, 4, 1, 2): {1, 3},
    }
    got = {
        one_line(v): set(hess.delta_v(v, cfg))
        for v in enumerate_min_reps(cfg.rs, cfg.J)
    }
    checks.append(Check("delta-v-table-a3", got == table, f"{got}"))

    # Delta(v) selected entries and coset count for B_4, J={1,2,4}
    b4 = build_root_system("B", 4)
    cfgB = hess.hess_config(b4, [1, 2, 4])
    v0 = longest_element(b4, [1, 2, 4]) * longest_element(b4, [1, 2, 3, 4])
    entries = [
        ([], {1, 2, 4}),
        ([3], {1}),
        ([3, 4], {1}),
        ([3, 2], {2}),
        ([3, 4, 3], {1, 4}),
        ([3, 2, 1], {1, 2}),
    ]
    ok = all(
        set(hess.delta_v(WeylElement.from_word(b4, word), cfgB)) == expect
        for word, expect in entries
    ) and set(hess.delta_v(v0, cfgB)) == {1, 2, 4}
    checks.append(Check("delta-v-table-b4", ok))
    reps = list(enumerate_min_reps(b4, cfgB.J))
    checks.append(Check("coset-count-b4", len(reps) == 32, f"{len(reps)}"))

    # decomposition rows, B_4
    expect_rows = [
        ([1, 3, 4], {1}, (3, 4), {1, 4}, (3,), {1}),
        ([1, 2, 1, 3, 2, 1], {1, 2}, (3, 2, 1), {1, 2, 3}, (), {1, 2}),
    ]
    ok = True
    for word, K, v_word, des, tau_word, Jw in expect_rows:
        d = hess.decompose_admissible(WeylElement.from_word(b4, word), cfgB)
        ok = ok and (
            set(d.K) == K
            and d.v == WeylElement.from_word(b4, v_word)
            and set(d.des) == des
            and d.tau == WeylElement.from_word(b4, tau_word)
            and set(d.Jw) == Jw
            and d.y_des == longest_element(b4, des)
        )
    checks.append(Check("decomposition-table-b4", ok))

    # admissibility flags and x-factors in the coset of 3421
    rs = cfg.rs
    w = from_one_line(rs, (3, 4, 2, 1))
    flags = {
        (3, 4, 2, 1): True,
        (3, 2, 4, 1): False,
        (3, 4, 1, 2): True,
        (3, 2, 1, 4): True,
        (3, 1, 4, 2): True,
        (3, 1, 2, 4): True,
    }
    ok = all(
        hess.is_admissible(from_one_line(rs, line), cfg) == expect
        for line, expect in flags.items()
    )
    checks.append(Check("admissibility-table-3421", ok))
    cells = hess.closure_intersecting_cells(w, cfg)
    x_by_v = {one_line(c.v): one_line(c.x) for c in cells}
    expect_x = {
        (3, 4, 2, 1): (1, 4, 3, 2),
        (3, 4, 1, 2): (1, 4, 2, 3),
        (3, 2, 1, 4): (1, 3, 2, 4),
        (3, 1, 4, 2): (1, 2, 4, 3),
        (3, 1, 2, 4): (1, 2, 3, 4),
    }
    checks.append(Check("closure-x-factors-3421", x_by_v == expect_x, f"{x_by_v}"))

    # specific type A flags
    flag_cases = [
        ((6, 5, 4, 3, 1, 2), (4, 2), "smooth"),
        ((6, 5, 1, 3, 2, 4), (4, 2), "singular"),
        ((5, 2, 1, 6, 3, 4), (4, 2), "singular"),
        ((7, 6, 5, 8, 2, 1, 4, 3), (4, 3, 1), "singular"),
        ((5, 6, 7, 8, 3, 2, 1, 4), (4, 3, 1), "singular"),
        ((7, 6, 5, 8, 3, 2, 1, 4), (4, 3, 1), "smooth"),
    ]
    ok = all(
        singular.typeA_fixed_point_smooth(line, mu).verdict == expect
        for line, mu, expect in flag_cases
    )
    checks.append(Check("specific-flags", ok))

    # Hessenberg-Schubert verdicts, B_4 and the one-line criterion table
    ok = (
        singular.hess_schubert_smooth(WeylElement.from_word(b4, [1, 3, 4]), cfgB).is_smooth
        and not singular.hess_schubert_smooth(
            WeylElement.from_word(b4, [1, 2, 1, 3, 2, 1]), cfgB
        ).is_smooth
    )
    checks.append(Check("hess-schubert-b4", ok))
    final_rows = [
        ((8, 1, 2, 3, 5, 6, 7, 4), "smooth"),
        ((8, 2, 1, 3, 5, 6, 7, 4), "singular"),
        ((8, 1, 3, 2, 5, 6, 7, 4), "smooth"),
        ((8, 3, 2, 1, 5, 6, 7, 4), "singular"),
        ((8, 1, 3, 2, 6, 5, 7, 4), "smooth"),
    ]
    ok = all(
        singular.typeA_hess_schubert_smooth(line, (4, 3, 1)).verdict == expect
        for line, expect in final_rows
    )
    checks.append(Check("hess-schubert-one-line-table", ok))

    checks.append(
        Check("count-smooth-431", singular.count_smooth_flags((4, 3, 1)) == 54)
    )

    # Jacobian regression at w = s_2, mu = (3,1)
    res = oracle.jacobian_at_fixed_point((1, 3, 2, 4), (3, 1))
    named = {
        ((0, 0, -1), (0, 0, -1)): Fraction(-2),
        ((0, 0, -1), (0, -1, -1)): Fraction(-1),
        ((-1, -1, -1), (-1, -1, -1)): Fraction(-2),
        ((-1, 0, 0), (-1, -1, 0)): Fraction(1),
    }
    ok = res.rank == 3 and res.is_smooth
    for r_i, row_root in enumerate(res.rows):
        for c_i, col_root in enumerate(res.cols):
            expect = named.get((row_root, col_root), Fraction(0))
            ok = ok and res.matrix[r_i][c_i] == expect
    checks.append(Check("jacobian-regression", ok))

    # class expansion for 3421
    expr = classes.hess_schubert_class(w, cfg)
    poly = classes.expand_typeA(expr, rs)
    ref = classes.poly_constant(4, Fraction(1, 4))
    for i, j in [(1, 2), (1, 3), (1, 4), (2, 4)]:
        ref = classes.poly_mul(ref, classes._linear_factor(4, i, j))
    checks.append(Check("class-expansion-3421", poly == ref))
    return checks


def suite_cross_validate(max_rank: int = 4) -> List[Check]:
    checks: List[Check] = []
    mismatches = 0
    dual_path = 0
    schubert = 0
    total = 0
    for n in range(2, max_rank + 2):
        for mu in _compositions(n):
            cfg = hess.config_from_mu(mu)
            for w, v, K in hess.enumerate_admissible(cfg):
                total += 1
                general = singular.hess_fixed_point_smooth(w, cfg).verdict
                pattern = singular.typeA_fixed_point_smooth(w, mu).verdict
                jet = oracle.jacobian_at_fixed_point(w, mu)
                closed = oracle.linear_terms_closed_form(w, mu)
                if not (general == pattern == jet.verdict):
                    mismatches += 1
                if (jet.matrix, jet.rows, jet.cols) != (
                    closed.matrix,
                    closed.rows,
                    closed.cols,
                ):
                    dual_path += 1
                if (
                    singular.hess_schubert_smooth(w, cfg).verdict
                    != singular.typeA_hess_schubert_smooth(w, mu).verdict
                ):
                    schubert += 1
    checks.append(
        Check(
            "smoothness-triple-agreement",
            mismatches == 0,
            f"{total} admissible pairs, {mismatches} mismatches",
        )
    )
    checks.append(Check("jacobian-dual-path", dual_path == 0, f"{dual_path} mismatches"))
    checks.append(
        Check("hess-schubert-dual-route", schubert == 0, f"{schubert} mismatches")
    )
    return checks


_FAMILY_RANKS = {
    "A": lambda top: range(1, top + 1),
    "B": lambda top: range(2, top + 1),
    "C": lambda top: range(2, top + 1),
    "D": lambda top: range(4, top + 1),
    "E": lambda top: [r for r in (6, 7, 8) if r <= top],
    "F": lambda top: [4] if top >= 4 else [],
    "G": lambda top: [2] if top >= 2 else [],
}


def suite_cominuscule(max_rank: int = 8) -> List[Check]:
    bad = 0
    scanned = 0
    containment = 0
    for family, ranks in _FAMILY_RANKS.items():
        for rank in ranks(max_rank):
            datum = cartan_datum(family, rank)
            rs = singular._component_system(datum)
            theta = rs.highest_root
            universe = range(1, rank + 1)
            for size in range(rank):
                for K in itertools.combinations(universe, size):
                    scanned += 1
                    lands_simple = singular.cominuscule_check(datum, K)
                    missing = set(universe) - set(K)
                    node = len(missing) == 1 and theta[next(iter(missing)) - 1] == 1
                    star2 = singular.w_star_star_member(datum, K)
                    if lands_simple != node or lands_simple == star2:
                        bad += 1
                    if star2 and not singular.w_star_member(datum, K):
                        containment += 1
    return [
        Check("cominuscule-characterization", bad == 0, f"{scanned} subsets, {bad} bad"),
        Check("no-linear-subset-of-singular", containment == 0),
    ]


# the one instance where the case table's generic-rank witness breaks: at
# rank 4 the type D row for the first short-arm node reuses a chain symbol
# that collides with the omitted node, so its second witness lands inside
# the parabolic; the symmetric witness (checked below) repairs the claim
D4_KNOWN_DEFECT = ("D", 4, 3)


def suite_fig1() -> List[Check]:
    checks: List[Check] = []
    reps = [("A", r) for r in (3, 4, 5, 6)]
    reps += [("C", r) for r in (3, 4, 5)]
    reps += [("D", r) for r in (4, 5, 6)]
    reps += [("E", 6), ("E", 7)]
    for family, rank in reps:
        rows = singular.verify_shared_linear_table(family, rank)
        for row in rows:
            name = f"shared-linear-{family}{rank}-beta{row.beta}"
            if (family, rank, row.beta) == D4_KNOWN_DEFECT:
                failing = [n for n, f in row.checks if not f]
                checks.append(
                    Check(
                        name + "-known-defect",
                        not row.ok and failing == ["eta2_in_range"],
                        "second witness lands inside the parabolic at rank 4; "
                        "the corrected witness is checked separately",
                    )
                )
            else:
                checks.append(Check(name, row.ok))
    # corrected witness for the defective instance: swap the two short-arm
    # nodes, which is a diagram symmetry at rank 4
    rs = build_root_system("D", 4)
    theta = rs.highest_root
    gamma = tuple(s - t for t, s in zip(theta, rs.simple_root(2)))
    eta1 = tuple(g + s for g, s in zip(gamma, rs.simple_root(1)))
    eta2 = tuple(g + s for g, s in zip(gamma, rs.simple_root(4)))
    K = {1, 2, 4}
    ok = True
    for eta, al in ((eta1, 1), (eta2, 4)):
        ok = ok and eta in rs.roots and not rs.support(eta) <= K and eta != negate(theta)
        ok = ok and all(
            tuple(e - s for e, s in zip(eta, rs.simple_root(i))) not in rs.roots
            for i in range(1, 5)
            if i != al
        )
    checks.append(Check("shared-linear-D4-beta3-corrected-witness", ok))
    return checks


SUITES = {
    "paper-tables": lambda max_rank: suite_paper_tables(),
    "cross-validate": lambda max_rank: suite_cross_validate(max_rank or 4),
    "cominuscule": lambda max_rank: suite_cominuscule(max_rank or 8),
    "fig1": lambda max_rank: suite_fig1(),
}


def run_suite(name: str, max_rank: Optional[int] = None) -> List[Check]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    return SUITES[name](max_rank)
