"""Shared test utilities: independent oracles and random input builders.

The agglomeration oracle here recomputes every candidate pair entropy from
scratch through the public projection-entropy path, with the same tie rules
as the production engine, so the two implementations share no caching code.
"""
import math
import warnings

from gea import fixedpoint as fp
from gea.allocation import Block, FeatureAllocation
from gea.agglomeration import TIE_TOLERANCE, Dendrogram
from gea.entropy import EmptyProjectionWarning, subset_entropy


def naive_gea_members(g: FeatureAllocation) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """From-scratch agglomeration; returns the merge sequence as canonical
    (left-members, right-members) tuples, lexicographically ordered."""
    clusters = [(i,) for i in range(g.n)]
    seq = []
    while len(clusters) > 1:
        scored = []
        with warnings.catch_warnings():
            # unions touching no block legitimately score 0 here
            warnings.simplefilter("ignore", EmptyProjectionWarning)
            for i in range(len(clusters)):
                for j in range(i + 1, len(clusters)):
                    union = clusters[i] + clusters[j]
                    scored.append((subset_entropy(g, union), i, j))
        best = min(h for h, _, _ in scored)
        ties = [(i, j) for h, i, j in scored if h <= best + TIE_TOLERANCE]
        i, j = min(ties, key=lambda p: tuple(sorted(clusters[p[0]] + clusters[p[1]])))
        a, b = clusters[i], clusters[j]
        seq.append(tuple(sorted((tuple(sorted(a)), tuple(sorted(b))))))
        clusters = [c for t, c in enumerate(clusters) if t not in (i, j)]
        clusters.append(tuple(sorted(a + b)))
    return seq


def engine_members(d: Dendrogram) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Dendrogram merge sequence in the same canonical form as the oracle."""
    members = {i: (i,) for i in range(d.n)}
    seq = []
    for t, m in enumerate(d.merges):
        a, b = members[m.left], members[m.right]
        seq.append(tuple(sorted((tuple(sorted(a)), tuple(sorted(b))))))
        members[d.n + t] = tuple(sorted(a + b))
    return seq


def random_allocation(
    rng,
    max_n: int = 12,
    max_blocks: int = 8,
    max_weight: float = 3.0,
    r_choices=(0.5, 1.0, 2.0),
) -> FeatureAllocation:
    """Random allocation with fixed-point weights up to ``max_weight``."""
    n = rng.randint(2, max_n)
    blocks = []
    for _ in range(rng.randint(1, max_blocks)):
        size = rng.randint(1, n)
        elems = rng.sample(range(n), size)
        entries = {e: rng.randint(1, int(max_weight * fp.SCALE)) for e in elems}
        blocks.append(Block(entries))
    r = rng.choice(r_choices)
    return FeatureAllocation(n, tuple(blocks), fp.from_number(r))


def random_integer_allocation(rng, max_n: int = 10, max_blocks: int = 10,
                              max_weight: int = 3) -> FeatureAllocation:
    """Random allocation whose weights are whole multiples of 1 (integral
    block sizes), as the telescoped entropy form requires."""
    n = rng.randint(1, max_n)
    blocks = []
    for _ in range(rng.randint(0, max_blocks)):
        size = rng.randint(1, n)
        elems = rng.sample(range(n), size)
        entries = {e: rng.randint(1, max_weight) * fp.SCALE for e in elems}
        blocks.append(Block(entries))
    return FeatureAllocation(n, tuple(blocks), fp.SCALE)


def simpson(f, a: float, b: float, intervals: int) -> float:
    """Composite Simpson quadrature of f over [a, b] with an even number
    of intervals."""
    if intervals < 2 or intervals % 2:
        raise ValueError("intervals must be even and >= 2")
    h = (b - a) / intervals
    acc = f(a) + f(b)
    for i in range(1, intervals):
        acc += f(a + i * h) * (4 if i % 2 else 2)
    return acc * h / 3


def entropy_by_hand(sizes_and_terms, n: int, r: float) -> float:
    """Plain-python evaluation of the size-weighted information sum, used to
    freeze expected values independently of the library."""
    nr = n * r
    return sum((s / nr) * math.log(nr / s) for s in sizes_and_terms)
