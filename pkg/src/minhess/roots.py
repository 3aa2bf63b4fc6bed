"""Root systems of the simple Lie types, realized over the simple-root basis.

Every root is an integer coefficient vector over the simple roots
``alpha_1 .. alpha_n`` (a plain tuple of ints), so all arithmetic is exact.
Simple indices are 1-based throughout the public API, matching the standard
numbering of the Dynkin diagrams (for type B the short simple root is
``alpha_n``, for type C it is the long one, G_2 has ``alpha_1`` short).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Dict, FrozenSet, Iterable, List, Set, Tuple

from .errors import DomainError

Coeffs = Tuple[int, ...]

FAMILIES = ("A", "B", "C", "D", "E", "F", "G")

POSITIVE_COUNT = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}

WEYL_ORDER = {
    "A": lambda n: factorial(n + 1),
    "B": lambda n: 2**n * factorial(n),
    "C": lambda n: 2**n * factorial(n),
    "D": lambda n: 2 ** (n - 1) * factorial(n),
    "E": lambda n: {6: 51840, 7: 2903040, 8: 696729600}[n],
    "F": lambda n: 1152,
    "G": lambda n: 12,
}


def height(root: Coeffs) -> int:
    return sum(root)


def negate(root: Coeffs) -> Coeffs:
    return tuple(-c for c in root)


def is_positive(root: Coeffs) -> bool:
    """Sign of a genuine root (roots never have mixed-sign coefficients)."""
    return any(c > 0 for c in root)


def root_key(root: Coeffs) -> Tuple[int, Coeffs]:
    """Deterministic sort key: by height, then reverse-lexicographic coeffs.

    Orders the simple roots as alpha_1 < alpha_2 < ... within each height.
    """
    return (height(root), tuple(-c for c in root))


def root_str(root: Coeffs) -> str:
    """Human-readable form like ``a1+2a2``, ``-a3`` or ``-(a1+a2)``."""
    if all(c == 0 for c in root):
        return "0"
    if not is_positive(root):
        inner = root_str(negate(root))
        return f"-{inner}" if "+" not in inner else f"-({inner})"
    parts = []
    for i, c in enumerate(root):
        if c == 0:
            continue
        parts.append(f"a{i + 1}" if c == 1 else f"{c}a{i + 1}")
    return "+".join(parts)


@dataclass(frozen=True)
class CartanDatum:
    """A simple type label together with its Cartan matrix.

    ``matrix[i][j]`` is the pairing of alpha_{i+1} against the coroot of
    alpha_{j+1}; diagonal entries are 2 and off-diagonal entries lie in
    {0, -1, -2, -3}.
    """

    family: str
    rank: int
    matrix: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise DomainError(f"unknown family {self.family!r}")
        if len(self.matrix) != self.rank:
            raise DomainError("Cartan matrix size does not match rank")
        for i, row in enumerate(self.matrix):
            if len(row) != self.rank or row[i] != 2:
                raise DomainError("malformed Cartan matrix")
            for j, a in enumerate(row):
                if i != j and a not in (0, -1, -2, -3):
                    raise DomainError("off-diagonal Cartan entry out of range")

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"


def _chain_matrix(n: int) -> List[List[int]]:
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = 2
    for i in range(n - 1):
        m[i][i + 1] = -1
        m[i + 1][i] = -1
    return m


def _tree_matrix(n: int, edges: Iterable[Tuple[int, int]]) -> List[List[int]]:
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = 2
    for a, b in edges:
        m[a - 1][b - 1] = -1
        m[b - 1][a - 1] = -1
    return m


_E_EDGES = {
    6: [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)],
    7: [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4)],
    8: [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)],
}


def cartan_datum(family: str, rank: int) -> CartanDatum:
    """Reference Cartan datum for a valid (family, rank) pair.

    Degenerate low ranks are normalized to their A-type isomorphs:
    B_1 = C_1 = A_1 and D_3 = A_3.  Invalid pairs raise DomainError.
    """
    if family not in FAMILIES:
        raise DomainError(f"unknown family {family!r}")
    if rank < 1:
        raise DomainError("rank must be positive")
    if family == "A":
        return CartanDatum("A", rank, tuple(map(tuple, _chain_matrix(rank))))
    if family in ("B", "C"):
        if rank == 1:
            return cartan_datum("A", 1)
        m = _chain_matrix(rank)
        if family == "B":
            m[rank - 2][rank - 1] = -2
        else:
            m[rank - 1][rank - 2] = -2
        return CartanDatum(family, rank, tuple(map(tuple, m)))
    if family == "D":
        if rank == 3:
            return cartan_datum("A", 3)
        if rank < 4:
            raise DomainError(f"D_{rank} is not a simple root system")
        edges = [(i, i + 1) for i in range(1, rank - 2)]
        edges += [(rank - 2, rank - 1), (rank - 2, rank)]
        return CartanDatum("D", rank, tuple(map(tuple, _tree_matrix(rank, edges))))
    if family == "E":
        if rank not in (6, 7, 8):
            raise DomainError(f"E_{rank} is not a simple root system")
        return CartanDatum("E", rank, tuple(map(tuple, _tree_matrix(rank, _E_EDGES[rank]))))
    if family == "F":
        if rank != 4:
            raise DomainError(f"F_{rank} is not a simple root system")
        m = _chain_matrix(4)
        m[1][2] = -2
        return CartanDatum("F", 4, tuple(map(tuple, m)))
    if rank != 2:
        raise DomainError(f"G_{rank} is not a simple root system")
    return CartanDatum("G", 2, ((2, -1), (-3, 2)))


def weyl_order(family: str, rank: int) -> int:
    return WEYL_ORDER[family](rank)


class RootSystem:
    """An irreducible root system, closed under its simple reflections.

    Immutable after construction; all query methods are pure.  Positive
    roots are stored in the deterministic (height, reverse-lex) order.
    """

    def __init__(self, cartan: CartanDatum):
        self.cartan = cartan
        self.rank = cartan.rank
        n = self.rank
        self.simple_roots: Tuple[Coeffs, ...] = tuple(
            tuple(1 if j == i else 0 for j in range(n)) for i in range(n)
        )
        positives = self._reflection_closure()
        self.positive_roots: Tuple[Coeffs, ...] = tuple(sorted(positives, key=root_key))
        self.positive_index: Dict[Coeffs, int] = {
            r: k for k, r in enumerate(self.positive_roots)
        }
        self.roots: FrozenSet[Coeffs] = frozenset(positives) | frozenset(
            negate(r) for r in positives
        )
        self.highest_root: Coeffs = self.positive_roots[-1]
        expected = POSITIVE_COUNT[cartan.family](n)
        if len(self.positive_roots) != expected:
            raise RuntimeError(
                f"{cartan.name}: generated {len(self.positive_roots)} positive "
                f"roots, expected {expected}"
            )
        if height(self.highest_root) != max(height(r) for r in self.positive_roots):
            raise RuntimeError("highest root is not of maximal height")
        # caches owned by this system (longest parabolic elements, etc.)
        self._longest_cache: Dict[FrozenSet[int], object] = {}
        self._component_rs_cache: Dict[CartanDatum, "RootSystem"] = {}

    def _reflection_closure(self) -> Set[Coeffs]:
        positives: Set[Coeffs] = set(self.simple_roots)
        frontier = list(self.simple_roots)
        while frontier:
            new: List[Coeffs] = []
            for r in frontier:
                for i in range(1, self.rank + 1):
                    image = self.reflect_simple(r, i)
                    if all(c >= 0 for c in image) and image not in positives:
                        positives.add(image)
                        new.append(image)
            frontier = new
        return positives

    # -- elementary root arithmetic -------------------------------------

    def pairing(self, root: Coeffs, i: int) -> int:
        """Pairing of ``root`` against the coroot of alpha_i (1-based)."""
        col = i - 1
        return sum(c * self.cartan.matrix[k][col] for k, c in enumerate(root) if c)

    def reflect_simple(self, root: Coeffs, i: int) -> Coeffs:
        """Image of ``root`` under the simple reflection s_i."""
        p = self.pairing(root, i)
        if p == 0:
            return root
        out = list(root)
        out[i - 1] -= p
        return tuple(out)

    def is_root(self, vec: Coeffs) -> bool:
        return tuple(vec) in self.roots

    def check_root(self, vec: Coeffs) -> Coeffs:
        v = tuple(vec)
        if v not in self.roots:
            raise DomainError(f"{v} is not a root of {self.cartan.name}")
        return v

    def negative_roots(self) -> Tuple[Coeffs, ...]:
        return tuple(negate(r) for r in self.positive_roots)

    def simple_root(self, i: int) -> Coeffs:
        if not 1 <= i <= self.rank:
            raise DomainError(f"simple index {i} out of range for {self.cartan.name}")
        return self.simple_roots[i - 1]

    def support(self, root: Coeffs) -> FrozenSet[int]:
        return frozenset(i + 1 for i, c in enumerate(root) if c)

    def weyl_order(self) -> int:
        return weyl_order(self.cartan.family, self.rank)

    def __repr__(self) -> str:
        return f"RootSystem({self.cartan.name})"


_SYSTEM_REGISTRY: Dict[CartanDatum, RootSystem] = {}


def build_root_system(family: str, rank: int) -> RootSystem:
    """Construct the root system of a simple type, Bourbaki numbering.

    Systems are interned per Cartan datum, so repeated construction returns
    the same (immutable) instance and elements built through independent
    configurations interoperate.
    """
    return from_cartan(cartan_datum(family, rank))


def from_cartan(datum: CartanDatum) -> RootSystem:
    cached = _SYSTEM_REGISTRY.get(datum)
    if cached is None:
        cached = RootSystem(datum)
        _SYSTEM_REGISTRY[datum] = cached
    return cached


def precedes(beta: Coeffs, alpha: Coeffs, rs: RootSystem) -> bool:
    """Whether beta strictly precedes alpha in the root partial order.

    Equivalent to alpha - beta being a nonzero nonnegative combination of
    simple roots; since the simple roots are themselves positive roots, that
    is exactly "alpha - beta is a sum of positive roots".
    """
    beta = rs.check_root(beta)
    alpha = rs.check_root(alpha)
    if beta == alpha:
        return False
    return all(a - b >= 0 for a, b in zip(alpha, beta))


def bracket_set(rs: RootSystem, left: Iterable[Coeffs], right: Iterable[Coeffs]) -> Tuple[Coeffs, ...]:
    """All roots expressible as a sum of one root from each input set."""
    left = [rs.check_root(r) for r in left]
    right = [rs.check_root(r) for r in right]
    out = set()
    for a in left:
        for b in right:
            s = tuple(x + y for x, y in zip(a, b))
            if s in rs.roots:
                out.add(s)
    return tuple(sorted(out, key=root_key))


# -- parabolic subsystems and component classification -------------------


@dataclass(frozen=True)
class Component:
    """A connected component of a parabolic sub-diagram.

    ``indices[k]`` is the ambient simple index playing the role of the
    canonical simple root alpha_{k+1} of the classified reference type.
    """

    indices: Tuple[int, ...]
    datum: CartanDatum

    def to_canonical(self, ambient: Iterable[int]) -> FrozenSet[int]:
        pos = {amb: k + 1 for k, amb in enumerate(self.indices)}
        return frozenset(pos[a] for a in ambient if a in pos)


@dataclass(frozen=True)
class ParabolicSubsystem:
    ambient: RootSystem
    J: FrozenSet[int]
    components: Tuple[Component, ...]

    def positive_roots(self) -> Tuple[Coeffs, ...]:
        J = self.J
        return tuple(
            r for r in self.ambient.positive_roots if self.ambient.support(r) <= J
        )

    def weyl_order(self) -> int:
        out = 1
        for comp in self.components:
            out *= weyl_order(comp.datum.family, comp.datum.rank)
        return out


def parabolic(rs: RootSystem, J: Iterable[int]) -> ParabolicSubsystem:
    """The subsystem spanned by a subset of simple roots, with its
    connected components classified into canonically labeled simple types."""
    Jset = frozenset(J)
    for i in Jset:
        if not 1 <= i <= rs.rank:
            raise DomainError(f"simple index {i} out of range for {rs.cartan.name}")
    comps = []
    for nodes in _connected_components(rs, Jset):
        comps.append(_classify_component(rs, nodes))
    comps.sort(key=lambda c: min(c.indices))
    return ParabolicSubsystem(rs, Jset, tuple(comps))


def _connected_components(rs: RootSystem, J: FrozenSet[int]) -> List[List[int]]:
    remaining = set(J)
    comps = []
    while remaining:
        seed = min(remaining)
        comp = {seed}
        stack = [seed]
        while stack:
            a = stack.pop()
            for b in remaining - comp:
                if rs.cartan.matrix[a - 1][b - 1] != 0:
                    comp.add(b)
                    stack.append(b)
        comps.append(sorted(comp))
        remaining -= comp
    return comps


def _bond(rs: RootSystem, a: int, b: int) -> int:
    return rs.cartan.matrix[a - 1][b - 1] * rs.cartan.matrix[b - 1][a - 1]


def _classify_component(rs: RootSystem, nodes: List[int]) -> Component:
    """Classify a connected sub-diagram and produce its canonical relabeling.

    B components are oriented so the short root is last; a rank-2 double
    bond is always normalized to B_2 (C_2 and B_2 are the same system).
    """
    k = len(nodes)
    C = rs.cartan.matrix
    if k == 1:
        return _checked_component(rs, "A", (nodes[0],))
    adj = {a: [b for b in nodes if b != a and C[a - 1][b - 1] != 0] for a in nodes}
    bonds = [(a, b) for i, a in enumerate(nodes) for b in nodes[i + 1 :] if _bond(rs, a, b) > 1]

    if any(_bond(rs, a, b) == 3 for a, b in bonds):
        a, b = bonds[0]
        # the node whose row holds the -3 is the long root alpha_2
        if C[a - 1][b - 1] == -3:
            return _checked_component(rs, "G", (b, a))
        return _checked_component(rs, "G", (a, b))

    if bonds:
        (a, b) = bonds[0]
        # orient (long, short): <long, short^vee> = -2
        long_, short = (a, b) if C[a - 1][b - 1] == -2 else (b, a)
        if k == 2:
            return _checked_component(rs, "B", (long_, short))
        deg = {x: len(adj[x]) for x in nodes}
        if deg[long_] > 1 and deg[short] > 1:
            # double bond interior to the chain: F_4, long side first
            ends = sorted(x for x in nodes if deg[x] == 1)
            chain = _walk_chain(adj, start=ends[0])
            if C[chain[1] - 1][chain[2] - 1] != -2:
                chain.reverse()
            return _checked_component(rs, "F", tuple(chain))
        if deg[short] == 1:
            chain = _walk_chain(adj, start=short)
            chain.reverse()
            return _checked_component(rs, "B", tuple(chain))
        chain = _walk_chain(adj, start=long_)
        chain.reverse()
        return _checked_component(rs, "C", tuple(chain))

    # simply laced: chain or a single branch point
    branch = [x for x in nodes if len(adj[x]) == 3]
    if not branch:
        ends = sorted(x for x in nodes if len(adj[x]) <= 1)
        chain = _walk_chain(adj, start=ends[0])
        return _checked_component(rs, "A", tuple(chain))
    b = branch[0]
    arms = []
    for first in adj[b]:
        arm = [first]
        prev = b
        while len(adj[arm[-1]]) == 2:
            nxt = [x for x in adj[arm[-1]] if x != prev][0]
            prev = arm[-1]
            arm.append(nxt)
        arms.append(arm)
    arms.sort(key=lambda a: (len(a), a[-1]))
    lengths = tuple(len(a) for a in arms)
    if lengths[0] == 1 and lengths[1] == 1:
        # D_k: two short arms are alpha_{k-1}, alpha_k; the long arm runs
        # back to alpha_1
        long_arm = arms[2]
        order = list(reversed(long_arm)) + [b] + [arms[0][0], arms[1][0]]
        return _checked_component(rs, "D", tuple(order))
    if lengths == (1, 2, 2):
        order = (arms[1][1], arms[0][0], arms[1][0], b, arms[2][0], arms[2][1])
        return _checked_component(rs, "E", order)
    if lengths == (1, 2, 3):
        order = (arms[1][1], arms[0][0], arms[1][0], b) + tuple(arms[2])
        return _checked_component(rs, "E", order)
    if lengths == (1, 2, 4):
        order = (arms[1][1], arms[0][0], arms[1][0], b) + tuple(arms[2])
        return _checked_component(rs, "E", order)
    raise DomainError(f"sub-diagram on {nodes} is not of finite type")


def _walk_chain(adj: Dict[int, List[int]], start: int) -> List[int]:
    chain = [start]
    seen = {start}
    while True:
        nxt = [x for x in adj[chain[-1]] if x not in seen]
        if not nxt:
            return chain
        if len(nxt) > 1:
            raise DomainError("not a chain")
        chain.append(nxt[0])
        seen.add(nxt[0])


def _checked_component(rs: RootSystem, family: str, order: Tuple[int, ...]) -> Component:
    datum = cartan_datum(family, len(order))
    C = rs.cartan.matrix
    for i, a in enumerate(order):
        for j, b in enumerate(order):
            if C[a - 1][b - 1] != datum.matrix[i][j]:
                raise RuntimeError(
                    f"relabeling {order} does not match reference {datum.name}"
                )
    return Component(order, datum)
