"""Weyl group elements and the coset decompositions the package relies on.

An element is stored by its images of the simple roots, so products, inverses
and root actions are integer matrix operations.  Words are never part of an
element's identity: equality and hashing use the image tuple only, and the
canonical word (least-index greedy descent stripping) is computed on demand.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from .errors import DomainError, EnumerationBoundError
from .roots import Coeffs, RootSystem, is_positive, negate, parabolic

DEFAULT_ENUMERATION_BOUND = 10**6
E8_ORDER = 696729600


class WeylElement:
    __slots__ = ("rs", "images", "_word", "_hash")

    def __init__(self, rs: RootSystem, images: Tuple[Coeffs, ...]):
        self.rs = rs
        self.images = images
        self._word: Optional[Tuple[int, ...]] = None
        self._hash: Optional[int] = None

    # -- construction ----------------------------------------------------

    @staticmethod
    def identity(rs: RootSystem) -> "WeylElement":
        return WeylElement(rs, rs.simple_roots)

    @staticmethod
    def simple(rs: RootSystem, i: int) -> "WeylElement":
        images = tuple(rs.reflect_simple(a, i) for a in rs.simple_roots)
        return WeylElement(rs, images)

    @staticmethod
    def from_word(rs: RootSystem, word: Iterable[int]) -> "WeylElement":
        w = WeylElement.identity(rs)
        for i in word:
            w = w * WeylElement.simple(rs, i)
        return w

    # -- group structure -------------------------------------------------

    def act(self, root: Coeffs) -> Coeffs:
        """Linear action on a root coefficient vector."""
        n = self.rs.rank
        out = [0] * n
        for i, c in enumerate(root):
            if c:
                img = self.images[i]
                for k in range(n):
                    out[k] += c * img[k]
        result = tuple(out)
        if result not in self.rs.roots:
            raise DomainError(f"{root} is not carried to a root; not a root itself?")
        return result

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        if self.rs is not other.rs:
            raise DomainError("elements live in different root systems")
        return WeylElement(self.rs, tuple(self.act(im) for im in other.images))

    def inverse(self) -> "WeylElement":
        n = self.rs.rank
        # solve M * x = e_i where column i of M is the image of alpha_{i+1}
        m = [[Fraction(self.images[j][i]) for j in range(n)] for i in range(n)]
        inv = _invert(m)
        images = tuple(tuple(int(inv[i][j]) for i in range(n)) for j in range(n))
        return WeylElement(self.rs, images)

    def is_identity(self) -> bool:
        return self.images == self.rs.simple_roots

    def validate(self) -> None:
        """On-demand sanity check: the images define a bijection of the
        root set carrying exactly length-many positives below zero."""
        n = self.rs.rank
        m = [[Fraction(self.images[j][i]) for j in range(n)] for i in range(n)]
        det = _det(m)
        if det not in (1, -1):
            raise DomainError(f"image matrix has determinant {det}")
        images = {self.act(r) for r in self.rs.positive_roots}
        if len(images) != len(self.rs.positive_roots) or not images <= self.rs.roots:
            raise DomainError("images do not permute the roots")

    # -- combinatorial statistics -----------------------------------------

    def inversions(self) -> FrozenSet[Coeffs]:
        return frozenset(
            r for r in self.rs.positive_roots if not is_positive(self.act(r))
        )

    def length(self) -> int:
        return sum(1 for r in self.rs.positive_roots if not is_positive(self.act(r)))

    def descents(self) -> FrozenSet[int]:
        """Right descents, as 1-based simple indices."""
        return frozenset(
            i + 1 for i, im in enumerate(self.images) if not is_positive(im)
        )

    def word(self) -> Tuple[int, ...]:
        """Canonical reduced word via least-index greedy descent stripping."""
        if self._word is None:
            rev: List[int] = []
            w = self
            while True:
                des = w.descents()
                if not des:
                    break
                i = min(des)
                rev.append(i)
                w = w * WeylElement.simple(self.rs, i)
            self._word = tuple(reversed(rev))
        return self._word

    # -- identity ----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, WeylElement)
            and self.rs is other.rs
            and self.images == other.images
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.images)
        return self._hash

    def __repr__(self) -> str:
        word = self.word()
        if not word:
            return "e"
        return "*".join(f"s{i}" for i in word)


def _det(m: List[List[Fraction]]) -> Fraction:
    n = len(m)
    work = [row[:] for row in m]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            det = -det
        det *= work[col][col]
        pv = work[col][col]
        for r in range(col + 1, n):
            if work[r][col] != 0:
                f = work[r][col] / pv
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    return det


def _invert(m: List[List[Fraction]]) -> List[List[Fraction]]:
    n = len(m)
    aug = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        pivot = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


# -- longest elements and coset decompositions ----------------------------


def longest_element(rs: RootSystem, K: Iterable[int]) -> WeylElement:
    """The longest element of the parabolic subgroup generated by K."""
    key = frozenset(K)
    cached = rs._longest_cache.get(key)
    if cached is not None:
        return cached  # type: ignore[return-value]
    for i in key:
        if not 1 <= i <= rs.rank:
            raise DomainError(f"simple index {i} out of range")
    y = WeylElement.identity(rs)
    ks = sorted(key)
    while True:
        i = next((i for i in ks if is_positive(y.act(rs.simple_root(i)))), None)
        if i is None:
            break
        y = y * WeylElement.simple(rs, i)
    rs._longest_cache[key] = y
    return y


def is_min_rep(w: WeylElement, J: Iterable[int]) -> bool:
    """Whether w is the shortest element of its right coset W_J w."""
    winv = w.inverse()
    return all(is_positive(winv.act(w.rs.simple_root(j))) for j in J)


def in_parabolic(w: WeylElement, K: Iterable[int]) -> bool:
    """Whether w lies in the parabolic subgroup generated by K."""
    Kset = frozenset(K)
    return all(w.rs.support(r) <= Kset for r in w.inversions())


def min_right_coset_rep(w: WeylElement, J: Iterable[int]) -> Tuple[WeylElement, WeylElement]:
    """The unique reduced factorization w = y * v with y in W_J, v in ^J W.

    Peels reflections of W_J off the left of w; each step drops the length
    by exactly one, so the factorization is reduced.
    """
    rs = w.rs
    Jset = sorted(frozenset(J))
    y = WeylElement.identity(rs)
    v = w
    vinv = w.inverse()
    while True:
        j = next(
            (j for j in Jset if not is_positive(vinv.act(rs.simple_root(j)))), None
        )
        if j is None:
            break
        s = WeylElement.simple(rs, j)
        y = y * s
        v = s * v
        vinv = vinv * s
    return y, v


def descent_decomposition(w: WeylElement) -> Tuple[WeylElement, WeylElement]:
    """The reduced factorization w = tau * y_des with tau shortest in its
    left coset modulo the descent parabolic."""
    rs = w.rs
    des = w.descents()
    y = longest_element(rs, des)
    tau = w * y  # y is an involution
    if tau.length() + y.length() != w.length():
        raise RuntimeError("descent factorization is not reduced")
    if not all(is_positive(tau.act(rs.simple_root(i))) for i in des):
        raise RuntimeError("tau is not a shortest left coset representative")
    return tau, y


# -- enumeration ----------------------------------------------------------


def enumerate_group(rs: RootSystem, bound: int = DEFAULT_ENUMERATION_BOUND) -> Iterator[WeylElement]:
    """All group elements, once each, ordered by (length, canonical word).

    Refuses up front when the group order exceeds the bound; full E_8
    enumeration is always refused.
    """
    order = rs.weyl_order()
    if order >= E8_ORDER:
        raise EnumerationBoundError(
            f"full enumeration of {rs.cartan.name} (order {order}) is not supported"
        )
    if order > bound:
        raise EnumerationBoundError(
            f"group order {order} exceeds enumeration bound {bound}"
        )
    level = [WeylElement.identity(rs)]
    seen = {level[0]}
    while level:
        for w in sorted(level, key=lambda x: x.word()):
            yield w
        nxt = []
        for w in level:
            for i in range(1, rs.rank + 1):
                if is_positive(w.act(rs.simple_root(i))):
                    w2 = w * WeylElement.simple(rs, i)
                    if w2 not in seen:
                        seen.add(w2)
                        nxt.append(w2)
        level = nxt


def coset_count(rs: RootSystem, J: Iterable[int]) -> int:
    return rs.weyl_order() // parabolic(rs, J).weyl_order()


def enumerate_min_reps(
    rs: RootSystem, J: Iterable[int], bound: int = DEFAULT_ENUMERATION_BOUND
) -> Iterator[WeylElement]:
    """All shortest right coset representatives for W_J \\ W, ordered by
    (length, canonical word).

    Every minimal representative has a reduced word all of whose prefixes are
    again minimal representatives, so a right-multiplication search finds each
    exactly once.
    """
    Jset = frozenset(J)
    count = coset_count(rs, Jset)
    if count > bound:
        raise EnumerationBoundError(
            f"coset count {count} exceeds enumeration bound {bound}"
        )
    simples = [WeylElement.simple(rs, i) for i in range(1, rs.rank + 1)]
    e = WeylElement.identity(rs)
    level: List[Tuple[WeylElement, WeylElement]] = [(e, e)]  # (v, v^{-1})
    seen = {e}
    while level:
        for v, _ in sorted(level, key=lambda p: p[0].word()):
            yield v
        nxt = []
        for v, vinv in level:
            for i in range(1, rs.rank + 1):
                if not is_positive(v.act(rs.simple_root(i))):
                    continue  # length would drop
                v2 = v * simples[i - 1]
                if v2 in seen:
                    continue
                vinv2 = simples[i - 1] * vinv
                if all(is_positive(vinv2.act(rs.simple_root(j))) for j in Jset):
                    seen.add(v2)
                    nxt.append((v2, vinv2))
        level = nxt


# -- type A one-line notation ----------------------------------------------


def _require_type_a(rs: RootSystem) -> int:
    if rs.cartan.family != "A":
        raise DomainError("one-line notation requires a type A root system")
    return rs.rank + 1


def _pair_of_root(rs: RootSystem, root: Coeffs) -> Tuple[int, int]:
    """The (i, j) with root = eps_i - eps_j, for type A."""
    if is_positive(root):
        support = [i + 1 for i, c in enumerate(root) if c]
        return support[0], support[-1] + 1
    a, b = _pair_of_root(rs, negate(root))
    return b, a


def _root_of_pair(rs: RootSystem, a: int, b: int) -> Coeffs:
    n = rs.rank
    if a < b:
        return tuple(1 if a <= k + 1 < b else 0 for k in range(n))
    return tuple(-1 if b <= k + 1 < a else 0 for k in range(n))


def one_line(w: WeylElement) -> Tuple[int, ...]:
    """The permutation [w(1), ..., w(n)] of a type A element."""
    n = _require_type_a(w.rs)
    pairs = [_pair_of_root(w.rs, im) for im in w.images]
    perm = [pairs[0][0]]
    for a, b in pairs:
        if perm[-1] != a:
            raise RuntimeError("inconsistent one-line reconstruction")
        perm.append(b)
    if sorted(perm) != list(range(1, n + 1)):
        raise RuntimeError("images do not describe a permutation")
    return tuple(perm)


def from_one_line(rs: RootSystem, perm: Sequence[int]) -> WeylElement:
    n = _require_type_a(rs)
    perm = tuple(perm)
    if sorted(perm) != list(range(1, n + 1)):
        raise DomainError(f"{perm} is not a permutation of 1..{n}")
    images = tuple(
        _root_of_pair(rs, perm[i], perm[i + 1]) for i in range(n - 1)
    )
    return WeylElement(rs, images)


def one_line_str(w: WeylElement) -> str:
    perm = one_line(w)
    if len(perm) < 10:
        return "".join(str(v) for v in perm)
    return "[" + ",".join(str(v) for v in perm) + "]"


# -- compositions (type A) --------------------------------------------------


@dataclass(frozen=True)
class Composition:
    """A strong composition of n, identified with a subset of simple roots."""

    parts: Tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.parts or any(p < 1 for p in self.parts):
            raise DomainError(f"invalid composition {self.parts}")

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def to_J(self) -> FrozenSet[int]:
        """J = Delta minus the block-boundary simple roots."""
        cuts = set()
        acc = 0
        for p in self.parts[:-1]:
            acc += p
            cuts.add(acc)
        return frozenset(i for i in range(1, self.n) if i not in cuts)

    def blocks(self) -> Tuple[Tuple[int, int], ...]:
        """Value ranges (lo, hi), inclusive, of the blocks."""
        out = []
        acc = 0
        for p in self.parts:
            out.append((acc + 1, acc + p))
            acc += p
        return tuple(out)

    @staticmethod
    def from_J(n: int, J: Iterable[int]) -> "Composition":
        Jset = frozenset(J)
        if not Jset <= set(range(1, n)):
            raise DomainError(f"J must be a subset of 1..{n - 1}")
        cuts = sorted(set(range(1, n)) - Jset)
        parts = []
        prev = 0
        for c in cuts + [n]:
            parts.append(c - prev)
            prev = c
        return Composition(tuple(parts))
