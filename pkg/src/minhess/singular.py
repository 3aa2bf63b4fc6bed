"""Smooth/singular classification of torus-fixed points and of
Hessenberg-Schubert varieties, across all simple types.

The fixed-point question reduces to the Peterson variety of the Levi named
by J, where the singular cells are indexed by an explicit family of subsets
(``w_star_member``).  Type A admits an equivalent one-line criterion via
block structure and avoidance of the patterns 123 and 2143, and the
variety-level question is decided by a bracket condition on simple roots.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .errors import DomainError, EnumerationBoundError
from .hess import HessConfig, config_from_mu, decompose_admissible, require_admissible
from .roots import (
    CartanDatum,
    Coeffs,
    Component,
    ParabolicSubsystem,
    RootSystem,
    bracket_set,
    cartan_datum,
    from_cartan,
    is_positive,
    negate,
    parabolic,
    root_key,
)
from .weyl import Composition, WeylElement, longest_element, one_line

SMOOTH = "smooth"
SINGULAR = "singular"

# reasons
SMOOTH_BY_CRITERION = "SmoothByCriterion"
DELTA_V_MISMATCH = "DeltaVMismatch"
PETERSON_W_STAR = "PetersonWStar"
PATTERN_HIT = "PatternHit"
BLOCK_SPLIT = "BlockSplit"
BRACKET_NONEMPTY = "BracketNonempty"


@dataclass(frozen=True)
class SmoothnessVerdict:
    verdict: str
    reason: str
    citations: Tuple[str, ...]
    detail: Tuple = ()

    def __post_init__(self) -> None:
        singular_reasons = {
            DELTA_V_MISMATCH,
            PETERSON_W_STAR,
            PATTERN_HIT,
            BLOCK_SPLIT,
            BRACKET_NONEMPTY,
        }
        if (self.reason in singular_reasons) != (self.verdict == SINGULAR):
            raise RuntimeError("verdict/reason mismatch")
        if not self.citations:
            raise RuntimeError("classification verdicts must carry citations")

    @property
    def is_smooth(self) -> bool:
        return self.verdict == SMOOTH


# -- the singular fixed-point index sets ------------------------------------


def _normalize(datum: CartanDatum, K: FrozenSet[int]) -> Tuple[str, int, FrozenSet[int], bool]:
    """Degenerate-rank normalization before table lookup.

    B_1 and C_1 are A_1; C_2 is B_2 with the chain read from the long root.
    Returns (family, rank, relabeled K, whether anything changed).
    """
    if datum != cartan_datum(datum.family, datum.rank):
        raise DomainError(
            f"{datum.name} is not canonically labeled; classify it first"
        )
    family, rank = datum.family, datum.rank
    if family == "C" and rank == 2:
        # the long root moves from the alpha_2 end to the alpha_1 end
        return "B", 2, frozenset(3 - k for k in K), True
    return family, rank, K, False


def _w_star(datum: CartanDatum, K: Iterable[int]) -> Tuple[bool, bool]:
    """Membership of y_K in the singular fixed-point index set, plus a flag
    recording whether a degenerate-rank normalization was applied."""
    Kset = frozenset(K)
    if not Kset <= set(range(1, datum.rank + 1)):
        raise DomainError("K is not a subset of the component's simple roots")
    family, rank, Kset, changed = _normalize(datum, Kset)
    full = frozenset(range(1, rank + 1))
    if Kset == full:
        return False, changed
    if family == "A":
        excluded = (full - {1}, full - {rank})
        return Kset not in excluded, changed
    if family == "B":
        return Kset != full - {1}, changed
    return True, changed


def w_star_member(component: CartanDatum, K: Iterable[int]) -> bool:
    """Whether the fixed point indexed by K is singular in the component's
    Peterson variety.  K uses the component's canonical 1-based labels."""
    return _w_star(component, K)[0]


def w_star_star_member(component: CartanDatum, K: Iterable[int]) -> bool:
    """Whether K indexes a cell that is singular for the stronger reason
    that its distinguished patch generator has no linear term."""
    Kset = frozenset(K)
    if not Kset <= set(range(1, component.rank + 1)):
        raise DomainError("K is not a subset of the component's simple roots")
    family, rank, Kset, _ = _normalize(component, Kset)
    full = frozenset(range(1, rank + 1))
    if Kset == full:
        return False
    missing = full - Kset
    if len(missing) != 1:
        return True
    (beta,) = missing
    if family == "A":
        return False
    if family == "B":
        return beta != 1
    if family == "C":
        return beta != rank
    if family == "D":
        return beta not in (1, rank - 1, rank)
    if family == "E" and rank == 6:
        return beta not in (1, 6)
    if family == "E" and rank == 7:
        return beta != 7
    return True  # E_8, F_4, G_2


def cominuscule_check(component: CartanDatum, K: Iterable[int]) -> bool:
    """Whether y_K carries the lowest root to a negative simple root.

    Holds exactly when K omits a single node whose coefficient in the
    highest root is 1 (a cominuscule node).
    """
    rs = _component_system(component)
    Kset = frozenset(K)
    y = longest_element(rs, Kset)
    image = y.act(negate(rs.highest_root))
    return (not is_positive(image)) and sum(image) == -1


def _component_system(datum: CartanDatum) -> RootSystem:
    return from_cartan(datum)


# -- fixed points of Peterson and Hessenberg varieties -----------------------


def peterson_fixed_point_smooth(sub: ParabolicSubsystem, K: Iterable[int]) -> SmoothnessVerdict:
    """Smoothness of the fixed point y_K in the Peterson variety of the
    parabolic: smooth iff no connected component puts its slice of K in the
    singular index set."""
    Kset = frozenset(K)
    if not Kset <= sub.J:
        raise DomainError("K must be contained in J")
    normalized = False
    for comp in sub.components:
        K_local = comp.to_canonical(Kset)
        member, changed = _w_star(comp.datum, K_local)
        normalized = normalized or changed
        if member:
            citations = ["peterson-singular-set"]
            if changed:
                citations.append("rank-normalization")
            return SmoothnessVerdict(
                SINGULAR,
                PETERSON_W_STAR,
                tuple(citations),
                detail=(comp.datum.name, tuple(sorted(K_local))),
            )
    citations = ["peterson-singular-set"]
    if normalized:
        citations.append("rank-normalization")
    return SmoothnessVerdict(SMOOTH, SMOOTH_BY_CRITERION, tuple(citations))


def hess_fixed_point_smooth(w: WeylElement, cfg: HessConfig) -> SmoothnessVerdict:
    """Smoothness of the fixed point of w, by reduction to the Peterson
    variety of the Levi named by J."""
    require_admissible(w, cfg)
    dec = decompose_admissible(w, cfg)
    from .hess import delta_v

    if delta_v(dec.v, cfg) != cfg.J:
        return SmoothnessVerdict(
            SINGULAR,
            DELTA_V_MISMATCH,
            ("levi-reduction", "delta-v-criterion"),
            detail=(tuple(sorted(delta_v(dec.v, cfg))), tuple(sorted(cfg.J))),
        )
    inner = peterson_fixed_point_smooth(parabolic(cfg.rs, cfg.J), dec.K)
    return SmoothnessVerdict(
        inner.verdict,
        inner.reason,
        ("levi-reduction", "delta-v-criterion") + inner.citations,
        detail=inner.detail,
    )


# -- the type A route ---------------------------------------------------------


def contains_pattern(seq: Sequence[int], pattern: Sequence[int]) -> Optional[Tuple[int, ...]]:
    """First index tuple (in lexicographic order) realizing the pattern as an
    order-isomorphic subsequence, or None.  Naive scan; block sizes are small."""
    k = len(pattern)
    rel = [(a, b) for a in range(k) for b in range(k) if pattern[a] < pattern[b]]
    for idx in itertools.combinations(range(len(seq)), k):
        if all(seq[idx[a]] < seq[idx[b]] for a, b in rel):
            return idx
    return None


def _block_windows(w_line: Sequence[int], mu: Composition) -> List[Tuple[int, Tuple[int, ...]]]:
    """Per block: (block number, positions of its values in the one-line)."""
    pos = {v: i for i, v in enumerate(w_line)}
    out = []
    for p, (lo, hi) in enumerate(mu.blocks(), start=1):
        out.append((p, tuple(sorted(pos[v] for v in range(lo, hi + 1)))))
    return out


def typeA_fixed_point_smooth(w, mu) -> SmoothnessVerdict:
    """One-line criterion for smoothness of a permutation flag: each block's
    values must sit in consecutive positions, and the induced pattern within
    each block must avoid 123 and 2143.

    Purely combinatorial: callers are responsible for the membership
    precondition (the flag lying in the variety); the verdict agrees with
    the geometric routes on every admissible element.
    """
    mu = mu if isinstance(mu, Composition) else Composition(tuple(mu))
    cfg = config_from_mu(mu)
    if isinstance(w, WeylElement):
        element = w
    else:
        from .weyl import from_one_line

        element = from_one_line(cfg.rs, tuple(w))
    line = one_line(element)
    for p, positions in _block_windows(line, mu):
        if positions[-1] - positions[0] != len(positions) - 1:
            return SmoothnessVerdict(
                SINGULAR,
                BLOCK_SPLIT,
                ("block-pattern-criterion",),
                detail=(p, positions),
            )
    for p, positions in _block_windows(line, mu):
        induced = [line[i] for i in positions]
        for pattern in ((1, 2, 3), (2, 1, 4, 3)):
            hit = contains_pattern(induced, pattern)
            if hit is not None:
                where = tuple(positions[i] + 1 for i in hit)  # 1-based
                return SmoothnessVerdict(
                    SINGULAR,
                    PATTERN_HIT,
                    ("block-pattern-criterion",),
                    detail=("".join(map(str, pattern)), where),
                )
    return SmoothnessVerdict(SMOOTH, SMOOTH_BY_CRITERION, ("block-pattern-criterion",))


def count_smooth_flags(mu) -> int:
    """Closed-form count of smooth permutation flags."""
    mu = mu if isinstance(mu, Composition) else Composition(tuple(mu))
    import math

    threes = sum(1 for p in mu.parts if p >= 3)
    twos = sum(1 for p in mu.parts if p == 2)
    return math.factorial(mu.length) * 3**threes * 2**twos


# -- Hessenberg-Schubert varieties -------------------------------------------


def hess_schubert_smooth(w: WeylElement, cfg: HessConfig) -> SmoothnessVerdict:
    """Smoothness of the closure of w's cell: smooth iff no root is a sum of
    an element of v^{-1}(K) and a descent of w."""
    dec = decompose_admissible(w, cfg)
    rs = cfg.rs
    vinv = dec.v.inverse()
    left = []
    for k in dec.K:
        im = vinv.act(rs.simple_root(k))
        if not (is_positive(im) and sum(im) == 1):
            raise RuntimeError("v^{-1}(K) is not a set of simple roots")
        left.append(im)
    right = [rs.simple_root(i) for i in sorted(dec.des)]
    witnesses = bracket_set(rs, left, right)
    if witnesses:
        return SmoothnessVerdict(
            SINGULAR,
            BRACKET_NONEMPTY,
            ("bracket-criterion",),
            detail=(witnesses[0],),
        )
    return SmoothnessVerdict(SMOOTH, SMOOTH_BY_CRITERION, ("bracket-criterion",))


def typeA_hess_schubert_smooth(w, mu) -> SmoothnessVerdict:
    """One-line form of the bracket criterion: every i with alpha_i in K must
    appear as ...a, i+1, i, b... with a < i and i+1 < b (boundary values
    w(0)=0, w(n+1)=n+1)."""
    mu = mu if isinstance(mu, Composition) else Composition(tuple(mu))
    cfg = config_from_mu(mu)
    if isinstance(w, WeylElement):
        element = w
    else:
        from .weyl import from_one_line

        element = from_one_line(cfg.rs, tuple(w))
    dec = decompose_admissible(element, cfg)
    line = one_line(element)
    n = mu.n
    pos = {v: i + 1 for i, v in enumerate(line)}  # 1-based positions

    def value(p: int) -> int:
        if p == 0:
            return 0
        if p == n + 1:
            return n + 1
        return line[p - 1]

    for i in sorted(dec.K):
        p = pos[i + 1]
        if value(p + 1) != i:
            raise RuntimeError("i does not immediately follow i+1 for alpha_i in K")
        a, b = value(p - 1), value(p + 2)
        if not (a < i and i + 1 < b):
            return SmoothnessVerdict(
                SINGULAR,
                BRACKET_NONEMPTY,
                ("adjacent-transposition-criterion",),
                detail=(i, a, b),
            )
    return SmoothnessVerdict(
        SMOOTH, SMOOTH_BY_CRITERION, ("adjacent-transposition-criterion",)
    )


# -- whole singular locus of a Peterson variety ------------------------------


def peterson_singular_locus(
    component: CartanDatum, bound: int = 2**20
) -> Tuple[Tuple[int, ...], ...]:
    """All K whose cell lies in the singular locus, for one simple component."""
    if 2**component.rank > bound:
        raise EnumerationBoundError(
            f"2^{component.rank} subsets exceed the bound {bound}"
        )
    out = []
    universe = sorted(range(1, component.rank + 1))
    for size in range(component.rank + 1):
        for K in itertools.combinations(universe, size):
            if w_star_member(component, K):
                out.append(K)
    return tuple(out)


# -- the shared-linear-term case table ----------------------------------------


@dataclass(frozen=True)
class SharedLinearRow:
    beta: int
    gamma: Coeffs
    eta1: Coeffs
    alpha1: int
    eta2: Coeffs
    alpha2: int
    checks: Tuple[Tuple[str, bool], ...]

    @property
    def ok(self) -> bool:
        return all(flag for _, flag in self.checks)


def _shared_linear_cases(family: str, rank: int) -> List[Tuple[int, Coeffs, int, int]]:
    """Rows (beta, gamma, alpha1, alpha2) of the case table, instantiated at
    the given rank.  gamma is returned as a coefficient vector."""
    n = rank

    def vec(entries: Dict[int, int]) -> Coeffs:
        return tuple(entries.get(i, 0) for i in range(1, n + 1))

    rs = from_cartan(cartan_datum(family, rank))
    theta = rs.highest_root
    minus_theta = negate(theta)

    def shift(base: Coeffs, *adds: int) -> Coeffs:
        out = list(base)
        for a in adds:
            out[a - 1] += 1
        return tuple(out)

    if family == "A":
        if rank < 3:
            raise DomainError("the type A rows require rank at least 3")
        return [(j, minus_theta, 1, n) for j in range(2, n)]
    if family == "C":
        if rank < 3:
            raise DomainError("the type C rows require rank at least 3")
        return [(n, shift(minus_theta, 1), 1, 2)]
    if family == "D":
        if rank < 4:
            raise DomainError("the type D rows require rank at least 4")
        gamma1 = vec({i: -1 for i in range(1, n + 1)})
        gamma2 = shift(minus_theta, 2)
        return [
            (1, gamma1, n - 1, n),
            (n - 1, gamma2, 1, 3),
            (n, gamma2, 1, 3),
        ]
    if family == "E" and rank == 6:
        gamma = shift(minus_theta, 2, 4)
        return [(1, gamma, 3, 5), (6, gamma, 5, 3)]
    if family == "E" and rank == 7:
        gamma = shift(minus_theta, 1, 3, 4)
        return [(7, gamma, 2, 5)]
    raise DomainError(f"{family}{rank} has no rows in the shared-linear case table")


def verify_shared_linear_table(family: str, rank: int) -> Tuple[SharedLinearRow, ...]:
    """Instantiate and check every case-table row for one (family, rank).

    Checks, per row: both eta roots are negative, lie outside the parabolic
    on K = Delta minus beta and are not the lowest root; both recover the
    shared root gamma; no other simple root can be subtracted from either
    eta inside the root system; and beta is a cominuscule node.
    """
    rs = from_cartan(cartan_datum(family, rank))
    theta = rs.highest_root
    rows = []
    for beta, gamma, a1, a2 in _shared_linear_cases(family, rank):
        K = frozenset(range(1, rank + 1)) - {beta}
        eta1 = tuple(g + s for g, s in zip(gamma, rs.simple_root(a1)))
        eta2 = tuple(g + s for g, s in zip(gamma, rs.simple_root(a2)))
        checks: List[Tuple[str, bool]] = []
        checks.append(("gamma_is_root", gamma in rs.roots))
        checks.append(("etas_distinct", eta1 != eta2))
        for name, eta in (("eta1", eta1), ("eta2", eta2)):
            ok = (
                eta in rs.roots
                and not is_positive(eta)
                and not rs.support(eta) <= K
                and eta != negate(theta)
            )
            checks.append((f"{name}_in_range", ok))
        checks.append(
            (
                "shared_difference",
                tuple(e - s for e, s in zip(eta1, rs.simple_root(a1)))
                == tuple(e - s for e, s in zip(eta2, rs.simple_root(a2)))
                == gamma,
            )
        )
        for name, eta, al in (("eta1", eta1, a1), ("eta2", eta2, a2)):
            sole = all(
                tuple(e - s for e, s in zip(eta, rs.simple_root(i))) not in rs.roots
                for i in range(1, rank + 1)
                if i != al
            )
            checks.append((f"{name}_unique_linear", sole))
        checks.append(("beta_cominuscule", theta[beta - 1] == 1))
        rows.append(
            SharedLinearRow(
                beta=beta,
                gamma=gamma,
                eta1=eta1,
                alpha1=a1,
                eta2=eta2,
                alpha2=a2,
                checks=tuple(checks),
            )
        )
    return tuple(rows)
