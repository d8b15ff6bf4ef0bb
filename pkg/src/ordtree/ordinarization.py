"""The ordinarization transform and the trees built from it.

Two trees live on the semigroups of a fixed genus g:

* the semigroup (genus) tree, whose level g is reached from the full monoid by
  repeatedly removing an effective generator, used here as the enumerator;
* the ordinarization tree T_g, rooted at the ordinary semigroup S_g, where the
  parent of S is ``S | {F(S)} \\ {m(S)}``.

The ordinarization number r(S) is the depth of S in T_g, which equals the
number of positive members of S that are at most g.
"""

from __future__ import annotations

import itertools
from collections import Counter, deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ordtree.errors import BadRange, OrdinaryInput, ResourceLimit
from ordtree.semigroup import NumericalSemigroup, from_kunz, ordinary

DEFAULT_NODE_CAP = 10**8


def ordinarization_transform(S: NumericalSemigroup) -> NumericalSemigroup:
    """Swap the multiplicity out and the Frobenius number in."""
    if S.is_ordinary():
        raise OrdinaryInput("ordinary semigroups (and the full monoid) have no parent")
    window = S.conductor
    mask = S.mask(window)
    mask = (mask | (1 << S.frobenius)) & ~(1 << S.multiplicity)
    return NumericalSemigroup.from_window(mask, window)


def ordinarization_number(S: NumericalSemigroup) -> int:
    return S.count_members(1, S.genus)


def children_in_tree(S: NumericalSemigroup) -> list[NumericalSemigroup]:
    """Semigroups whose ordinarization transform is ``S``, sorted by (m, F).

    A child is ``S \\ {a} | {b}`` with ``a`` an effective generator of S and
    ``b`` a gap in ``[ceil(m/2), m-1]``; those are only necessary conditions,
    so every candidate is checked for closure.
    """
    if S.genus == 0:
        return []
    m = S.multiplicity
    eff = S.generator_data.effective_generators
    out = []
    for b in range((m + 1) // 2, m):
        for a in eff:
            child = S.replace(a, b)
            if child is not None:
                out.append(child)
    return out


def children_h0_count(S: NumericalSemigroup) -> int:
    """Children in the ordinarization tree that have no effective generators."""
    return sum(1 for c in children_in_tree(S) if c.generator_data.effectivity == 0)


def effective_descent_holds(parent: NumericalSemigroup, child: NumericalSemigroup) -> bool:
    """eg(child) is inside eg(parent) and F(child) is in eg(parent) \\ eg(child)."""
    eg_p = set(parent.generator_data.effective_generators)
    eg_c = set(child.generator_data.effective_generators)
    return eg_c <= eg_p and child.frobenius in eg_p - eg_c


def h0_children_bound_holds(S: NumericalSemigroup) -> bool:
    return children_h0_count(S) <= S.multiplicity // 2


def tk_family(k: int) -> NumericalSemigroup:
    """Multiplicity 2k+1 with Kunz vector (k, k, k-1, k-1, ..., 1, 1)."""
    if k < 1:
        raise BadRange("k must be positive")
    kunz = [v for v in range(k, 0, -1) for _ in (0, 1)]
    return from_kunz(2 * k + 1, kunz)


# -- genus tree enumeration --------------------------------------------------


def _effective(mask: int, c: int, m: int) -> list[int]:
    """Effective generators of the semigroup (mask below conductor c)."""
    out = []
    for x in range(c, c + m):
        for s in range(m, x // 2 + 1):
            if (mask >> s) & 1 and (x - s >= c or (mask >> (x - s)) & 1):
                break
        else:
            out.append(x)
    return out


def _descend(mask: int, c: int, m: int, depth: int, cap: int) -> list[tuple[int, int]]:
    """(mask, conductor) of all descendants ``depth`` levels below a node."""
    out: list[tuple[int, int]] = []
    stack = [(mask, c, m, depth)]
    while stack:
        mask, c, m, d = stack.pop()
        if d == 0:
            out.append((mask, c))
            if len(out) > cap:
                raise ResourceLimit(f"more than {cap} semigroups")
            continue
        kids = []
        for n in _effective(mask, c, m):
            full = mask | (((1 << (n + 1)) - 1) ^ ((1 << c) - 1))
            child = full & ~(1 << n)
            kids.append((child, n + 1, n + 1 if n == m else m, d - 1))
        stack.extend(reversed(kids))
    return out


def _descend_job(args):
    return _descend(*args)


def enumerate_genus(g: int, node_cap: int = DEFAULT_NODE_CAP, workers: int = 1) -> list[NumericalSemigroup]:
    """All semigroups of genus g, in depth-first order of the semigroup tree.

    With ``workers > 1`` the subtrees below a shallow frontier are explored in
    separate processes and concatenated in frontier order, so the output does
    not depend on the worker count.
    """
    if g < 0:
        raise BadRange("genus must be nonnegative")
    if g == 0:
        return [NumericalSemigroup(0, 0)]
    # level 1 is the single semigroup N0 \ {1}
    root = (0b1, 2, 2)
    split = min(g - 1, 6) if workers > 1 else 0
    frontier = _descend(root[0], root[1], root[2], split, node_cap)
    jobs = []
    for mask, c in frontier:
        rest = mask >> 1
        m = (rest & -rest).bit_length() if rest else c
        jobs.append((mask, c, m, g - 1 - split, node_cap))
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_descend_job, jobs, chunksize=4))
    else:
        parts = [_descend(*job) for job in jobs]
    total = sum(len(p) for p in parts)
    if total > node_cap:
        raise ResourceLimit(f"{total} semigroups of genus {g} exceed the cap {node_cap}")
    return [NumericalSemigroup.from_window(mask, c) for part in parts for mask, c in part]


def effectivity_histogram(g: int, node_cap: int = DEFAULT_NODE_CAP) -> dict[int, int]:
    """t(g, h): number of genus-g semigroups with exactly h effective generators."""
    counts = Counter(S.generator_data.effectivity for S in enumerate_genus(g, node_cap))
    return dict(sorted(counts.items()))


# -- ordinarization tree -----------------------------------------------------


@dataclass
class OrdinarizationTree:
    genus: int
    nodes: list[NumericalSemigroup]
    parent: list[int | None]
    depth: list[int]
    index: dict[NumericalSemigroup, int] = field(repr=False, default_factory=dict)

    @property
    def level_counts(self) -> list[int]:
        counts = Counter(self.depth)
        return [counts[r] for r in range(max(self.depth) + 1)]

    def __len__(self) -> int:
        return len(self.nodes)

    def children(self, i: int) -> list[int]:
        return [j for j, p in enumerate(self.parent) if p == i]


def _child_key(S: NumericalSemigroup) -> tuple[int, int]:
    return (S.multiplicity, S.frobenius)


def build_ordinarization_tree(g: int, node_cap: int = DEFAULT_NODE_CAP, workers: int = 1) -> OrdinarizationTree:
    """T_g laid out breadth-first, siblings ordered by (m, F) of the child."""
    semigroups = enumerate_genus(g, node_cap, workers)
    if g == 0:
        root = semigroups[0]
        return OrdinarizationTree(0, [root], [None], [0], {root: 0})
    kids: dict[NumericalSemigroup, list[NumericalSemigroup]] = {}
    for S in semigroups:
        if not S.is_ordinary():
            kids.setdefault(ordinarization_transform(S), []).append(S)
    root = ordinary(g)
    nodes, parent, depth = [root], [None], [0]
    index = {root: 0}
    queue = deque([root])
    while queue:
        S = queue.popleft()
        i = index[S]
        for child in sorted(kids.get(S, ()), key=_child_key):
            index[child] = len(nodes)
            nodes.append(child)
            parent.append(i)
            depth.append(depth[i] + 1)
            queue.append(child)
    if len(nodes) != len(semigroups):
        raise RuntimeError("ordinarization tree does not reach every semigroup")
    return OrdinarizationTree(g, nodes, parent, depth, index)


# -- counting by ordinarization number ---------------------------------------


def _count_by_tree(g: int, r: int) -> int:
    level = [ordinary(g)]
    for _ in range(r):
        level = [child for S in level for child in children_in_tree(S)]
        if not level:
            return 0
    return len(level)


def _count_by_tuples(g: int, r: int) -> int:
    """Count S = S_g \\ A | B with |A| = |B| = r that are closed under addition.

    B is drawn from [1, g] and A from [g+1, 2g-1]. Two members above g sum
    past 2g-1 >= F(S), so closure only involves sums with an element of B:
    each b_i + b_j must be a member, and for every a in A and b in B the
    difference a - b must be a gap (otherwise a = (a - b) + b is a member).
    The A side is vectorized.
    """
    if r == 0:
        return 1
    hi = 2 * g - 1
    a_combos = np.array(list(itertools.combinations(range(g + 1, hi + 1), r)), dtype=np.int64)
    if a_combos.size == 0:
        return 0
    total = 0
    for bs in itertools.combinations(range(1, g + 1), r):
        bset = set(bs)
        small_ok = True
        big_sums = []
        for i, bi in enumerate(bs):
            for bj in bs[i:]:
                s = bi + bj
                if s <= g:
                    if s not in bset:
                        small_ok = False
                        break
                else:
                    big_sums.append(s)
            if not small_ok:
                break
        if not small_ok:
            continue
        ok = np.ones(len(a_combos), dtype=bool)
        for s in set(big_sums):
            ok &= ~(a_combos == s).any(axis=1)
        barr = np.array(bs)
        for k in range(r):
            diffs = a_combos[:, k, None] - barr[None, :]
            # a - b is a gap: either at most g and outside B, or another element of A
            low = diffs <= g
            in_b = np.isin(diffs, barr)
            in_a = (diffs[:, :, None] == a_combos[:, None, :]).any(axis=2)
            ok &= np.where(low, ~in_b, in_a).all(axis=1)
        total += int(ok.sum())
    return total


def n_g_r_brute(g: int, r: int, method: str = "both") -> int:
    """Number of genus-g semigroups with ordinarization number r.

    ``method`` is ``"tuples"`` (closure test on S_g \\ A | B), ``"tree"``
    (breadth-first descent of T_g through :func:`children_in_tree`),
    ``"census"`` (depth census of the enumerated genus) or ``"both"``, which
    runs the first two and insists they agree.
    """
    if g < 0 or r < 0:
        raise BadRange("g and r must be nonnegative")
    if method == "tuples":
        return _count_by_tuples(g, r)
    if method == "tree":
        return _count_by_tree(g, r)
    if method == "census":
        return sum(1 for S in enumerate_genus(g) if ordinarization_number(S) == r)
    if method == "both":
        x, y = _count_by_tuples(g, r), _count_by_tree(g, r)
        if x != y:
            raise AssertionError(f"n_{{{g},{r}}}: tuple count {x} != tree count {y}")
        return x
    raise ValueError(f"unknown method {method!r}")
