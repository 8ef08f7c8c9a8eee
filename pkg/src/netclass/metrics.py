"""Classical structural metrics and their histogram feature encoding.

The shortest-path metrics (distances, diameter, closeness, eccentricity,
betweenness) all share one level-synchronous BFS kernel that runs every
source simultaneously with dense matrix products.  That keeps the per-source
work in BLAS, makes the reduction order deterministic, and lets betweenness
reuse the forward pass.

Per-node metric vectors are turned into fixed-length feature vectors by
histogramming over a fixed per-metric range with 500 equal-width bins, so
vectors from graphs of different sizes stay comparable.
"""

from __future__ import annotations

import numpy as np

from .graph import Graph, adjacency_matrix, degree_vector


class DisconnectedGraphError(ValueError):
    """A metric requiring connectivity was asked about a disconnected graph."""


class UndefinedMetricError(ValueError):
    """The metric's defining expression degenerates on this input."""


HIST_BINS = 500

# Fixed binning ranges per metric id.  Betweenness is normalized by the
# number of interior pairs (n-1)(n-2)/2 before binning, so it lives in [0, 1]
# like the two coefficient metrics; degree-like metrics get unit-width bins;
# values at or above the upper bound clamp into the last bin.
HIST_RANGES = {
    "cl": (0.0, 1.0),
    "cc": (0.0, 1.0),
    "bet": (0.0, 1.0),
    "k": (0.0, 500.0),
    "pp": (0.0, 500.0),
    "ecc": (0.0, 100.0),
}

# Canonical metric order inside combined feature vectors.
METRIC_ORDER = ("pp", "d", "cl", "ecc", "bet", "k", "cc")

# Diameter enters feature vectors as a single raw value divided by this.
_DIAMETER_SCALE = 100.0


def _bfs_all(a: np.ndarray):
    """Level-synchronous BFS from every source at once.

    ``a`` is the dense float adjacency matrix.  Returns ``(dist, sigma,
    frontiers)`` where ``dist[s, v]`` is the hop distance (-1 if
    unreachable), ``sigma[s, v]`` the number of shortest s-v paths, and
    ``frontiers[l]`` the boolean matrix of nodes at distance l.
    """
    n = a.shape[0]
    dist = np.full((n, n), -1, dtype=np.int32)
    np.fill_diagonal(dist, 0)
    sigma = np.zeros((n, n))
    np.fill_diagonal(sigma, 1.0)
    frontier = np.eye(n, dtype=bool)
    frontiers = [frontier]
    level = 0
    while True:
        counts = (sigma * frontier) @ a
        newly = (counts > 0) & (dist < 0)
        if not newly.any():
            break
        level += 1
        dist[newly] = level
        sigma[newly] = counts[newly]
        frontier = newly
        frontiers.append(frontier)
    return dist, sigma, frontiers


def _betweenness_from(dist, sigma, frontiers, a):
    """Backward dependency accumulation over the stored BFS levels.

    Unnormalized betweenness over unordered node pairs, endpoints excluded:
    the column sums of the per-source dependencies, halved because each pair
    is reached from both endpoints.
    """
    n = a.shape[0]
    delta = np.zeros((n, n))
    inv_sigma = np.zeros_like(sigma)
    reached = dist >= 0
    inv_sigma[reached] = 1.0 / sigma[reached]
    for lev in range(len(frontiers) - 1, 0, -1):
        coef = np.where(frontiers[lev], (1.0 + delta) * inv_sigma, 0.0)
        contrib = coef @ a  # a is symmetric
        delta += np.where(frontiers[lev - 1], sigma * contrib, 0.0)
    return (delta.sum(axis=0) - np.diag(delta)) / 2.0


def _dense(g: Graph) -> np.ndarray:
    return adjacency_matrix(g).astype(np.float64)


def all_pairs_distances(g: Graph) -> np.ndarray:
    """Hop distances between all node pairs; unreachable pairs are +inf."""
    dist, _, _ = _bfs_all(_dense(g))
    out = dist.astype(np.float64)
    out[dist < 0] = np.inf
    return out


def _require_connected(dist: np.ndarray, what: str) -> None:
    if (dist < 0).any():
        raise DisconnectedGraphError(f"{what} is undefined on a disconnected graph")


def diameter(g: Graph) -> int:
    """Largest shortest-path distance over all pairs; requires connectivity."""
    dist, _, _ = _bfs_all(_dense(g))
    _require_connected(dist, "diameter")
    return int(dist.max())


def eccentricity(g: Graph) -> np.ndarray:
    """Per-node maximum distance to any other node; requires connectivity."""
    dist, _, _ = _bfs_all(_dense(g))
    _require_connected(dist, "eccentricity")
    return dist.max(axis=1).astype(np.int64)


def closeness(g: Graph) -> np.ndarray:
    """Scaled inverse farness, ``(reachable - 1) / sum of distances``.

    On a connected graph this is ``(n - 1) / sum_j d(i, j)`` and lies in
    (0, 1].  On a disconnected graph the sum runs over the reachable nodes
    only, scaled by their count minus one; isolated nodes score 0.
    """
    dist, _, _ = _bfs_all(_dense(g))
    return _closeness_from(dist)


def _closeness_from(dist: np.ndarray) -> np.ndarray:
    reach = dist >= 0
    counts = reach.sum(axis=1) - 1  # excluding the node itself
    sums = np.where(reach, dist, 0).sum(axis=1)
    return np.where(sums > 0, counts / np.maximum(sums, 1), 0.0)


def _ecc_finite(dist: np.ndarray) -> np.ndarray:
    # Within-component eccentricity: max finite distance per row.
    return np.where(dist >= 0, dist, -1).max(axis=1).astype(np.int64)


def betweenness(g: Graph) -> np.ndarray:
    """Brandes-style betweenness, unnormalized, over unordered pairs.

    Shortest-path counts are exact integers carried in float64; dependency
    sums are accumulated in a fixed order, so the output is a deterministic
    function of the graph.  Disconnected graphs are fine: pairs in different
    components simply contribute nothing.
    """
    a = _dense(g)
    dist, sigma, frontiers = _bfs_all(a)
    return _betweenness_from(dist, sigma, frontiers, a)


def clustering(g: Graph) -> np.ndarray:
    """Fraction of each node's neighbor pairs that are themselves connected.

    ``2 * T_i / (k_i * (k_i - 1))`` with ``T_i`` the edge count among the
    neighbors of ``i``; nodes of degree below 2 score 0.
    """
    a = _dense(g)
    deg = a.sum(axis=1)
    closed = ((a @ a) * a).sum(axis=1)  # = 2 * T_i
    denom = deg * (deg - 1.0)
    return np.where(denom > 0, closed / np.maximum(denom, 1.0), 0.0)


def avg_neighbor_degree(g: Graph) -> np.ndarray:
    """Mean degree over each node's neighbors; 0 for isolated nodes."""
    a = _dense(g)
    deg = a.sum(axis=1)
    tot = a @ deg
    return np.where(deg > 0, tot / np.maximum(deg, 1.0), 0.0)


def assortativity_scalar(g: Graph) -> float:
    """Pearson correlation of degrees over edge endpoint pairs, in [-1, 1].

    Undefined (raises) when every edge endpoint has the same degree, e.g. on
    regular graphs.
    """
    deg = degree_vector(g).astype(np.float64)
    us, vs = [], []
    for u, v in g.edges():
        us.append(u)
        vs.append(v)
    if not us:
        raise UndefinedMetricError("assortativity is undefined without edges")
    x = np.concatenate([deg[us], deg[vs]])
    y = np.concatenate([deg[vs], deg[us]])
    x_c = x - x.mean()
    var = (x_c * x_c).mean()
    if var == 0.0:
        raise UndefinedMetricError(
            "assortativity is undefined when endpoint degrees have zero variance"
        )
    return float((x_c * (y - y.mean())).mean() / var)


def metric_histogram(values, metric_id: str) -> np.ndarray:
    """500-bin normalized histogram of a metric vector over its fixed range.

    Bin mass is counts divided by the number of values, so the bins sum to 1;
    values at or above the range's upper bound clamp into the last bin.
    """
    vals = np.asarray(values, dtype=np.float64).ravel()
    if vals.size == 0:
        raise ValueError("cannot histogram an empty metric vector")
    if metric_id not in HIST_RANGES:
        raise ValueError(f"no histogram range defined for metric {metric_id!r}")
    lo, hi = HIST_RANGES[metric_id]
    width = (hi - lo) / HIST_BINS
    idx = np.floor((vals - lo) / width).astype(np.int64)
    np.clip(idx, 0, HIST_BINS - 1, out=idx)
    return np.bincount(idx, minlength=HIST_BINS) / vals.size


def structural_features(g: Graph, which="combined") -> np.ndarray:
    """Concatenated histogram features for a selection of metrics.

    ``which`` is ``"combined"`` (all seven) or an iterable of metric ids; the
    output always follows the canonical order ``pp, d, cl, ecc, bet, k, cc``.
    Each per-node metric contributes its 500-bin histogram; diameter
    contributes one raw value divided by 100, so the combined vector has
    length 3001.

    The distance-based entries use within-component conventions (largest
    finite distance, per-component closeness) so feature extraction stays
    total on disconnected graphs such as sparse ER draws; the strict
    standalone :func:`diameter` / :func:`eccentricity` contracts are
    unchanged.
    """
    if which == "combined":
        sel = set(METRIC_ORDER)
    else:
        sel = set(which)
        unknown = sel - set(METRIC_ORDER)
        if unknown:
            raise ValueError(f"unknown metric ids: {sorted(unknown)}")
        if not sel:
            raise ValueError("empty metric selection")
    n = g.n
    dist = sigma = frontiers = None
    a = None
    if sel & {"d", "cl", "ecc", "bet"}:
        a = _dense(g)
        dist, sigma, frontiers = _bfs_all(a)
    parts = []
    for mid in METRIC_ORDER:
        if mid not in sel:
            continue
        if mid == "pp":
            parts.append(metric_histogram(avg_neighbor_degree(g), "pp"))
        elif mid == "d":
            d = max(int(_ecc_finite(dist).max()), 0) if n > 0 else 0
            parts.append(np.array([d / _DIAMETER_SCALE]))
        elif mid == "cl":
            parts.append(metric_histogram(_closeness_from(dist), "cl"))
        elif mid == "ecc":
            parts.append(metric_histogram(_ecc_finite(dist), "ecc"))
        elif mid == "bet":
            bet = _betweenness_from(dist, sigma, frontiers, a)
            pairs = (n - 1) * (n - 2) / 2.0
            parts.append(metric_histogram(bet / pairs if pairs > 0 else bet, "bet"))
        elif mid == "k":
            parts.append(metric_histogram(degree_vector(g), "k"))
        elif mid == "cc":
            parts.append(metric_histogram(clustering(g), "cc"))
    return np.concatenate(parts)


def structural_length(which="combined") -> int:
    """Output length of :func:`structural_features` for a selection."""
    sel = set(METRIC_ORDER) if which == "combined" else set(which)
    return sum(1 if mid == "d" else HIST_BINS for mid in METRIC_ORDER if mid in sel)
