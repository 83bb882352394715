"""Pair graphs for missing-sum/difference events, plus a 2^n enumeration oracle.

The graph with an edge {a, b} whenever a+b hits one of two target sums (or
a-b hits a target difference) turns "those targets are missing" into "A is an
independent set".  For prime n the sum graph is a path with a loop on each
endpoint and the difference graph is a single n-cycle; for composite n the
difference graph splits into gcd(n, k) cycles of length n / gcd(n, k).

The oracle enumerates all 2^n subsets with weight p^|A| (1-p)^(n-|A|) and is
exact: satisfying subsets are tallied per cardinality as integers and the
probability is assembled once at the end, so partial tallies can be merged in
any order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .errors import ParameterError, ResourceLimitError
from .sets import ResidueSet

ORACLE_MAX_N_EVENTS = 22
ORACLE_MAX_N_MOMENTS = 18

__all__ = [
    "PairGraph",
    "Classification",
    "build_sum_graph",
    "build_diff_graph",
    "classify",
    "independence_event_holds",
    "event_diff_missing",
    "event_sum_missing",
    "event_sums_missing",
    "oracle_event_probability",
    "oracle_mean",
    "oracle_moments",
    "OracleMoments",
]


@dataclass(frozen=True)
class Classification:
    kind: str  # "path_with_end_loops" | "single_cycle" | "disjoint_cycles" | "other"
    cycle_count: int | None = None
    cycle_length: int | None = None
    loop_vertices: tuple[int, ...] = ()


@dataclass(frozen=True)
class PairGraph:
    """Undirected graph on vertices 0..n-1; loops allowed; edges deduplicated."""

    n: int
    edges: tuple[tuple[int, int], ...]
    kind: Classification | None = field(compare=False, default=None)

    def __post_init__(self):
        if self.kind is None:
            object.__setattr__(self, "kind", _classify(self.n, self.edges))


def _normalize_edges(pairs) -> tuple[tuple[int, int], ...]:
    return tuple(sorted({(a, b) if a <= b else (b, a) for a, b in pairs}))


def build_sum_graph(n: int, i: int, j: int) -> PairGraph:
    """Edges {a, b} with a+b = i or a+b = j (mod n); a loop at v means 2v hits a target."""
    if n < 2:
        raise ParameterError("n must be >= 2")
    i %= n
    j %= n
    if i == j:
        raise ParameterError("the two target sums must differ")
    pairs = []
    for s in (i, j):
        pairs.extend((a, (s - a) % n) for a in range(n))
    return PairGraph(n, _normalize_edges(pairs))


def build_diff_graph(n: int, k: int) -> PairGraph:
    """Edges {a, a+k mod n} for all a; loops impossible since k != 0."""
    if n < 2:
        raise ParameterError("n must be >= 2")
    if k % n == 0:
        raise ParameterError("k must be a nonzero residue")
    k %= n
    return PairGraph(n, _normalize_edges((a, (a + k) % n) for a in range(n)))


def _classify(n: int, edges: tuple[tuple[int, int], ...]) -> Classification:
    loops = tuple(sorted(a for a, b in edges if a == b))
    simple = [(a, b) for a, b in edges if a != b]

    adj: dict[int, list[int]] = {v: [] for v in range(n)}
    for a, b in simple:
        adj[a].append(b)
        adj[b].append(a)

    # connected components of the loop-free graph
    seen = [False] * n
    components: list[tuple[list[int], int]] = []  # (vertices, edge count)
    for start in range(n):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        verts = []
        while stack:
            v = stack.pop()
            verts.append(v)
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        ecount = sum(len(adj[v]) for v in verts) // 2
        components.append((verts, ecount))

    degrees = {v: len(adj[v]) for v in range(n)}

    # path of all n vertices with loops exactly at its two endpoints
    if (len(loops) == 2 and len(components) == 1 and len(simple) == n - 1
            and max(degrees.values(), default=0) <= 2):
        ends = tuple(sorted(v for v in range(n) if degrees[v] <= 1))
        if len(ends) == 2 and set(ends) == set(loops):
            return Classification("path_with_end_loops", loop_vertices=loops)

    # disjoint union of equal-length cycles (a 2-vertex component with one
    # edge is the collapsed double edge of a 2-cycle)
    if not loops and components:
        lengths = set()
        for verts, ecount in components:
            m = len(verts)
            if m >= 3 and ecount == m and all(degrees[v] == 2 for v in verts):
                lengths.add(m)
            elif m == 2 and ecount == 1:
                lengths.add(2)
            else:
                lengths.add(-1)
        if len(lengths) == 1 and -1 not in lengths:
            length = lengths.pop()
            count = len(components)
            if count == 1:
                return Classification("single_cycle", cycle_count=1, cycle_length=length)
            return Classification("disjoint_cycles", cycle_count=count, cycle_length=length)

    return Classification("other", loop_vertices=loops)


def classify(g: PairGraph) -> Classification:
    """Structural classification from degrees and connectivity alone."""
    return _classify(g.n, g.edges)


def independence_event_holds(A: ResidueSet, g: PairGraph) -> bool:
    """True iff no edge of g has both endpoints in A (a loop at v forbids v)."""
    if A.n != g.n:
        raise ParameterError("set and graph moduli differ")
    m = A.mask
    for a, b in g.edges:
        if (m >> a) & 1 and (m >> b) & 1:
            return False
    return True


# ---------------------------------------------------------------------------
# exhaustive enumeration oracle


def _rotl(mask: int, s: int, n: int, full: int) -> int:
    return ((mask << s) | (mask >> (n - s))) & full


def event_diff_missing(k: int) -> Callable[[int, int], bool]:
    """Predicate: k is not in A-A."""

    def pred(mask: int, n: int) -> bool:
        full = (1 << n) - 1
        return mask & _rotl(mask, k % n, n, full) == 0

    return pred


def _neg_mask(mask: int, n: int) -> int:
    out = 0
    m = mask
    while m:
        lsb = m & -m
        r = lsb.bit_length() - 1
        out |= 1 << ((n - r) % n)
        m ^= lsb
    return out


def event_sum_missing(i: int) -> Callable[[int, int], bool]:
    """Predicate: i is not in A+A."""

    def pred(mask: int, n: int) -> bool:
        full = (1 << n) - 1
        return mask & _rotl(_neg_mask(mask, n), i % n, n, full) == 0

    return pred


def event_sums_missing(i: int, j: int) -> Callable[[int, int], bool]:
    """Predicate: neither i nor j is in A+A."""

    def pred(mask: int, n: int) -> bool:
        full = (1 << n) - 1
        neg = _neg_mask(mask, n)
        return (mask & _rotl(neg, i % n, n, full) == 0
                and mask & _rotl(neg, j % n, n, full) == 0)

    return pred


def _check_oracle_n(n: int, limit: int) -> None:
    if n < 1:
        raise ParameterError("n must be >= 1")
    if n > limit:
        raise ResourceLimitError(f"enumeration oracle capped at n <= {limit}, got {n}")


def oracle_event_probability(n: int, p, event: Callable[[int, int], bool],
                             include_empty_set: bool = True) -> Fraction:
    """Exact P(event) over all 2^n subsets, weight p^|A| (1-p)^(n-|A|).

    Satisfying subsets are counted per cardinality (exact integers) and the
    weighted sum is formed once at the end.  ``include_empty_set=False``
    drops A = empty from the event.
    """
    _check_oracle_n(n, ORACLE_MAX_N_EVENTS)
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise ParameterError(f"p={p} outside [0, 1]")
    counts = [0] * (n + 1)
    start = 0 if include_empty_set else 1
    for mask in range(start, 1 << n):
        if event(mask, n):
            counts[mask.bit_count()] += 1
    q = 1 - p
    return sum((counts[c] * p ** c * q ** (n - c)
                for c in range(n + 1) if counts[c]), Fraction(0))


def oracle_mean(n: int, p, statistic: Callable[[int, int], int]) -> Fraction:
    """Exact E[statistic(A)] over all 2^n subsets; statistic must be integer-valued."""
    _check_oracle_n(n, ORACLE_MAX_N_MOMENTS)
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise ParameterError(f"p={p} outside [0, 1]")
    sums = [0] * (n + 1)
    for mask in range(1 << n):
        sums[mask.bit_count()] += statistic(mask, n)
    q = 1 - p
    return sum((sums[c] * p ** c * q ** (n - c)
                for c in range(n + 1) if sums[c]), Fraction(0))


@dataclass(frozen=True)
class OracleMoments:
    """Exact first and second moments of the missing counts S^c and D^c."""

    E_Sc: Fraction
    E_Dc: Fraction
    Var_Sc: Fraction
    Var_Dc: Fraction


def oracle_moments(n: int, p) -> OracleMoments:
    """Exact moments of S^c = n - |A+A| and D^c = n - |A-A| by full enumeration."""
    _check_oracle_n(n, ORACLE_MAX_N_MOMENTS)
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise ParameterError(f"p={p} outside [0, 1]")
    full = (1 << n) - 1
    sc_sum = [0] * (n + 1)
    sc_sq = [0] * (n + 1)
    dc_sum = [0] * (n + 1)
    dc_sq = [0] * (n + 1)
    for mask in range(1 << n):
        s_acc = 0
        d_acc = 0
        neg = _neg_mask(mask, n)
        m = mask
        while m:
            lsb = m & -m
            a = lsb.bit_length() - 1
            s_acc |= _rotl(mask, a, n, full)
            d_acc |= _rotl(neg, a, n, full)
            m ^= lsb
        c = mask.bit_count()
        sc = n - s_acc.bit_count()
        dc = n - d_acc.bit_count()
        sc_sum[c] += sc
        sc_sq[c] += sc * sc
        dc_sum[c] += dc
        dc_sq[c] += dc * dc
    q = 1 - p
    weights = [p ** c * q ** (n - c) for c in range(n + 1)]
    e_sc = sum((sc_sum[c] * weights[c] for c in range(n + 1)), Fraction(0))
    e_sc2 = sum((sc_sq[c] * weights[c] for c in range(n + 1)), Fraction(0))
    e_dc = sum((dc_sum[c] * weights[c] for c in range(n + 1)), Fraction(0))
    e_dc2 = sum((dc_sq[c] * weights[c] for c in range(n + 1)), Fraction(0))
    return OracleMoments(E_Sc=e_sc, E_Dc=e_dc,
                         Var_Sc=e_sc2 - e_sc * e_sc, Var_Dc=e_dc2 - e_dc * e_dc)
