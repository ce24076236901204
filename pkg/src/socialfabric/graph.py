"""Configuration-model sampling and connected-component censuses.

Graphs are stub-matching multigraphs: self-loops and parallel edges are kept.
With bounded degree their expected number is O(1) and they never change which
nodes share a component, which is the only thing downstream code reads.
"""

from dataclasses import dataclass
from pathlib import Path

import numba
import numpy as np
from scipy import sparse
from scipy.stats import binom

from ._validation import DomainError, ValidationError
from .degree_model import DegreePmf
from .rng import as_generator

#: Default finite-n threshold on ``largest_size / n`` for "a giant component exists".
GAMMA = 0.05


@dataclass(frozen=True, eq=False)
class DegreeSequence:
    degrees: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.degrees, dtype=np.int64)
        if arr.ndim != 1:
            raise ValidationError("degree sequence must be 1-d")
        if np.any(arr < 0):
            raise ValidationError("degrees must be non-negative")
        arr.setflags(write=False)
        object.__setattr__(self, "degrees", arr)

    @property
    def n(self):
        return self.degrees.size

    @property
    def total(self):
        return int(self.degrees.sum())

    def __len__(self):
        return self.n


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected multigraph on nodes ``0..n-1``; ``edges`` is an (m, 2) int array."""

    n: int
    edges: np.ndarray

    def __post_init__(self):
        e = np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)
        if e.size and (e.min() < 0 or e.max() >= self.n):
            raise ValidationError("edge endpoint out of range")
        e.setflags(write=False)
        object.__setattr__(self, "edges", e)

    @property
    def m(self):
        return self.edges.shape[0]

    def degrees(self):
        """Multigraph degrees; a self-loop counts twice."""
        return np.bincount(self.edges.ravel(), minlength=self.n)

    def edge_set(self):
        return sorted(tuple(sorted(map(int, e))) for e in self.edges)

    @classmethod
    def empty(cls, n):
        return cls(n, np.empty((0, 2), dtype=np.int64))


@dataclass(frozen=True, eq=False)
class ComponentCensus:
    labels: np.ndarray
    sizes: np.ndarray

    @property
    def n(self):
        return self.labels.size

    @property
    def largest_size(self):
        return int(self.sizes.max()) if self.sizes.size else 0

    @property
    def gc_fraction(self):
        return self.largest_size / self.n if self.n else 0.0

    def has_giant(self, gamma=GAMMA):
        return self.gc_fraction >= gamma

    def same_partition(self, other):
        # canonical labels are assigned in order of first appearance
        return np.array_equal(self.labels, other.labels)


def sample_degrees(pmfs, rng=None, labels=None):
    """Draw one degree per agent and repair an odd total.

    ``pmfs`` is either one :class:`DegreePmf` per agent, or a list of group
    PMFs combined with an integer ``labels`` array assigning agents to groups.
    If the total is odd, one agent with positive degree, chosen uniformly, loses
    one stub.
    """
    rng = as_generator(rng)
    pmfs = list(pmfs)
    if labels is None:
        labels = np.arange(len(pmfs))
    labels = np.asarray(labels, dtype=np.int64)
    cdfs = np.array([np.cumsum(p.probs) for p in pmfs])
    cdfs[:, -1] = 1.0
    u = rng.random(labels.size)
    degrees = np.empty(labels.size, dtype=np.int64)
    for g in range(len(pmfs)):
        mask = labels == g
        degrees[mask] = np.searchsorted(cdfs[g], u[mask], side="right")
    return fix_parity(degrees, rng)


def fix_parity(degrees, rng=None):
    """Apply the odd-total repair to an explicit degree array."""
    degrees = np.array(degrees, dtype=np.int64)
    if degrees.sum() % 2:
        rng = as_generator(rng)
        positive = np.flatnonzero(degrees)
        if positive.size == 0:
            raise DomainError("odd degree total with no positive degree to reduce")
        degrees[positive[rng.integers(positive.size)]] -= 1
    return DegreeSequence(degrees)


def sample_configuration(seq, rng=None):
    """Pair stubs uniformly at random."""
    rng = as_generator(rng)
    if seq.total % 2:
        raise ValidationError(f"odd stub count {seq.total}")
    stubs = np.repeat(np.arange(seq.n, dtype=np.int64), seq.degrees)
    rng.shuffle(stubs)
    return Graph(seq.n, stubs.reshape(-1, 2))


def sample_bipartite(seq_a, seq_b, rng=None):
    """Match A-stubs to B-stubs uniformly.

    Nodes ``0..n_a-1`` are side A, ``n_a..n_a+n_b-1`` side B. When stub totals
    differ, stubs on the larger side are deleted uniformly at random first.
    """
    rng = as_generator(rng)
    stubs_a = np.repeat(np.arange(seq_a.n, dtype=np.int64), seq_a.degrees)
    stubs_b = np.repeat(np.arange(seq_b.n, dtype=np.int64), seq_b.degrees) + seq_a.n
    m = min(stubs_a.size, stubs_b.size)
    if stubs_a.size > m:
        stubs_a = np.sort(rng.choice(stubs_a, size=m, replace=False))
    if stubs_b.size > m:
        stubs_b = np.sort(rng.choice(stubs_b, size=m, replace=False))
    stubs_b = rng.permutation(stubs_b)
    return Graph(seq_a.n + seq_b.n, np.column_stack([stubs_a, stubs_b]))


@numba.njit(cache=False, nogil=True)
def _union_find_labels(n, edges):
    parent = np.arange(n)
    size = np.ones(n, dtype=np.int64)
    for k in range(edges.shape[0]):
        a = edges[k, 0]
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        b = edges[k, 1]
        while parent[b] != b:
            parent[b] = parent[parent[b]]
            b = parent[b]
        if a == b:
            continue
        if size[a] < size[b]:
            a, b = b, a
        parent[b] = a
        size[a] += size[b]
    labels = np.full(n, -1, dtype=np.int64)
    root_label = np.full(n, -1, dtype=np.int64)
    count = 0
    for i in range(n):
        r = i
        while parent[r] != r:
            r = parent[r]
        if root_label[r] < 0:
            root_label[r] = count
            count += 1
        labels[i] = root_label[r]
    return labels, count


def components(g):
    """Disjoint-set-forest partition of the nodes of ``g``."""
    labels, count = _union_find_labels(g.n, np.ascontiguousarray(g.edges))
    sizes = np.bincount(labels, minlength=count)
    labels.setflags(write=False)
    return ComponentCensus(labels, sizes)


def connectivity_statistic(seq):
    """Finite-n connectivity (1/n) sum_i d_i (d_i - 2)."""
    d = np.asarray(seq.degrees if isinstance(seq, DegreeSequence) else seq, dtype=np.int64)
    if d.size == 0:
        raise DomainError("connectivity statistic needs n > 0")
    return float(np.mean(d * (d - 2)))


def remove_agent(g, i):
    """Delete every edge at node ``i``; the node stays as an isolate."""
    if not 0 <= i < g.n:
        raise DomainError(f"node {i} out of range for n={g.n}")
    keep = (g.edges[:, 0] != i) & (g.edges[:, 1] != i)
    return Graph(g.n, g.edges[keep])


def _adjacency(g):
    e = g.edges[g.edges[:, 0] != g.edges[:, 1]]
    data = np.ones(2 * e.shape[0], dtype=np.int64)
    rows = np.concatenate([e[:, 0], e[:, 1]])
    cols = np.concatenate([e[:, 1], e[:, 0]])
    return sparse.csr_matrix((data, (rows, cols)), shape=(g.n, g.n))


def add_triadic_links(g, count, rng=None):
    """Close up to ``count`` open two-paths of ``g``.

    Each new edge joins a uniformly chosen node that has a friend of a friend
    to a uniformly chosen one of those friends of friends. New edges stay inside
    an existing component, so the partition is unchanged.
    """
    if count < 0:
        raise DomainError("count must be non-negative")
    rng = as_generator(rng)
    if count == 0 or g.m == 0:
        return g
    adj = _adjacency(g)
    two_step = (adj @ adj).tolil()
    two_step.setdiag(0)
    two_step = two_step.tocsr()
    two_step.eliminate_zeros()
    eligible = np.flatnonzero(np.diff(two_step.indptr))
    if eligible.size == 0:
        return g
    new = np.empty((count, 2), dtype=np.int64)
    for k in range(count):
        u = eligible[rng.integers(eligible.size)]
        row = two_step.indices[two_step.indptr[u]:two_step.indptr[u + 1]]
        new[k] = (u, row[rng.integers(row.size)])
    return Graph(g.n, np.vstack([g.edges, new]))


def write_edgelist(g, path):
    """Write ``n m`` then one ``u v`` line per edge."""
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges]
    Path(path).write_text("\n".join(lines) + "\n")


def read_edgelist(path):
    lines = [ln.split() for ln in Path(path).read_text().splitlines() if ln.strip()]
    if not lines:
        raise ValidationError(f"{path}: empty edge list file")
    n, m = int(lines[0][0]), int(lines[0][1])
    edges = np.array([[int(a), int(b)] for a, b in lines[1:]], dtype=np.int64).reshape(-1, 2)
    if edges.shape[0] != m:
        raise ValidationError(f"{path}: header says {m} edges, found {edges.shape[0]}")
    return Graph(n, edges)


def binomial_population(n, max_degree, theta, rng=None):
    """Sample a configuration graph with i.i.d. Binomial(max_degree, theta) degrees."""
    pmf = DegreePmf(binom.pmf(np.arange(max_degree + 1), max_degree, theta))
    rng = as_generator(rng)
    seq = sample_degrees([pmf], rng, labels=np.zeros(n, dtype=np.int64))
    return seq, sample_configuration(seq, rng)
