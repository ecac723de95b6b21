"""
Story clustering: k-means over a window's TF-IDF vectors, k chosen by mean silhouette.

Vectors are unit-norm, so Euclidean k-means orders neighbours the same way cosine does.

Small windows (at most ``EXACT_PARTITION_MAX_POINTS`` clustered posts) skip k-means and score
every partition into k groups, so the chosen labeling is the best silhouette there is. Distances
come from the Gram matrix; nothing of size n x n x dim is ever built.
"""

import logging

from collections.abc import Iterator, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from crosscheck._utils import derive_rng
from crosscheck.logger import get_logger
from crosscheck.pipeline._constants import (
    DEFAULT_K_MAX,
    DEFAULT_K_MIN,
    DEFAULT_MAX_EVIDENCE,
    DEFAULT_RELEVANCE_THRESHOLD,
    EXACT_PARTITION_MAX_POINTS,
    KMEANS_MAX_ITER,
    KMEANS_RESTARTS,
    KMEANS_TOLERANCE,
)
from crosscheck.pipeline._corpus import CleanPost
from crosscheck.pipeline._errors import (
    DimMismatchError,
    NoRelevantStoryError,
    SingleClusterError,
    TooFewPointsError,
    ZeroTargetVectorError,
)
from crosscheck.pipeline._vectorizer import SparseVector, cosine, to_matrix


clustering_logger = get_logger("CLUSTERING", logging.WARNING)

type Points = np.ndarray | Sequence[SparseVector]

# relative size below which a Gram-matrix squared distance is rounding residue
_GRAM_RESIDUE = 1e-12


@dataclass(frozen=True, eq=False)
class KMeansModel:
    """
    Result of the best k-means restart, or of the exhaustive search on a small window.

    ``history`` holds the inertia after every assignment step of that restart; it is empty for an
    exhaustive fit, whose centroids are the cluster means.
    """

    k: int
    centroids: np.ndarray
    labels: np.ndarray
    inertia: float
    seed: int
    history: tuple[float, ...] = ()


@dataclass(frozen=True, eq=False)
class StoryClustering:
    """A k-means model whose every cluster holds at least one post, and its silhouette."""

    model: KMeansModel
    labels: np.ndarray
    silhouette: float

    @property
    def k(self) -> int:
        """Number of clusters."""
        return self.model.k

    def members(self, cluster: int) -> list[int]:
        """Indices of the points in ``cluster``."""
        return [int(i) for i in np.flatnonzero(self.labels == cluster)]


class ScoredPost(NamedTuple):
    """A reliable post and its cosine to the claim."""

    post: CleanPost
    cosine: float


@dataclass(frozen=True)
class MatchedStory:
    """The matched cluster's posts closest to the claim, most similar first."""

    cluster_index: int
    posts: tuple[ScoredPost, ...]


def _as_points(vectors: Points) -> np.ndarray:
    if isinstance(vectors, np.ndarray):
        return np.asarray(vectors, dtype=np.float64)
    return to_matrix(vectors)


def _squared_distances(points: np.ndarray, others: np.ndarray) -> np.ndarray:
    """|x|^2 + |y|^2 - 2 x.y for every pair of rows; coinciding rows get exactly 0."""
    left = np.einsum("ij,ij->i", points, points)
    right = np.einsum("ij,ij->i", others, others)
    scale = left[:, np.newaxis] + right[np.newaxis, :]
    squared = scale - 2.0 * (points @ others.T)
    squared[squared <= _GRAM_RESIDUE * scale] = 0.0
    return squared


def _distance_matrix(points: np.ndarray) -> np.ndarray:
    distances = np.sqrt(_squared_distances(points, points))
    np.fill_diagonal(distances, 0.0)
    return distances


def _kmeans_plus_plus(points: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = points.shape[0]
    chosen = [int(rng.integers(n))]
    closest = _squared_distances(points, points[chosen]).min(axis=1)
    for _ in range(1, k):
        total = closest.sum()
        if total > 0:
            pick = int(rng.choice(n, p=closest / total))
        else:
            pick = int(rng.integers(n))
        chosen.append(pick)
        closest = np.minimum(closest, _squared_distances(points, points[[pick]])[:, 0])
    return points[chosen].copy()


def _lloyd(
    points: np.ndarray, k: int, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray, float, tuple[float, ...]]:
    centroids = _kmeans_plus_plus(points, k, rng)
    history: list[float] = []
    for _ in range(KMEANS_MAX_ITER):
        distances = _squared_distances(points, centroids)
        labels = distances.argmin(axis=1)
        own = distances[np.arange(points.shape[0]), labels]
        history.append(float(own.sum()))
        updated = centroids.copy()
        # an emptied cluster takes the point farthest from its own centroid
        taken = own.copy()
        for cluster in range(k):
            members = labels == cluster
            if members.any():
                updated[cluster] = points[members].mean(axis=0)
            else:
                farthest = int(taken.argmax())
                updated[cluster] = points[farthest]
                taken[farthest] = -1.0
        shift = float(np.sqrt(((updated - centroids) ** 2).sum(axis=1)).max())
        centroids = updated
        if shift < KMEANS_TOLERANCE:
            break
    distances = _squared_distances(points, centroids)
    labels = distances.argmin(axis=1)
    inertia = float(distances[np.arange(points.shape[0]), labels].sum())
    return centroids, labels, inertia, tuple(history)


def kmeans_fit(vectors: Points, k: int, seed: int, *, workers: int = 1) -> KMeansModel:
    """
    Lloyd's algorithm with k-means++ seeding, best of ``KMEANS_RESTARTS`` restarts.

    Restart ``r`` draws from a generator seeded with ``seed + r``; the lowest inertia wins and
    ties go to the earlier restart, so the result does not depend on ``workers``.

    Args:
        vectors: The (nonzero) points, as sparse vectors or an ``(n, d)`` array.
        k (int): Number of clusters, at least 2.
        seed (int): Seed of the first restart.
        workers (int): Threads used to run restarts.

    Returns:
        KMeansModel: The best restart.

    Raises:
        ValueError: If ``k < 2``.
        TooFewPointsError: If there are fewer points than clusters.
    """
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    points = _as_points(vectors)
    if points.shape[0] < k:
        raise TooFewPointsError(f"{points.shape[0]} points cannot form {k} clusters")

    def restart(offset: int) -> tuple[np.ndarray, np.ndarray, float, tuple[float, ...]]:
        return _lloyd(points, k, derive_rng(seed + offset))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            runs = list(pool.map(restart, range(KMEANS_RESTARTS)))
    else:
        runs = [restart(offset) for offset in range(KMEANS_RESTARTS)]
    best = min(range(KMEANS_RESTARTS), key=lambda offset: (runs[offset][2], offset))
    centroids, labels, inertia, history = runs[best]
    return KMeansModel(
        k=k, centroids=centroids, labels=labels, inertia=inertia, seed=seed, history=history
    )


def mean_silhouette(vectors: Points, labels: Sequence[int] | np.ndarray) -> float:
    """
    Mean silhouette coefficient with Euclidean distance.

    A point alone in its cluster scores 0, as does a point with ``a(i) == b(i) == 0``.

    Raises:
        SingleClusterError: If fewer than two clusters are present.
    """
    labels = np.asarray(labels)
    if np.unique(labels).size < 2:
        raise SingleClusterError("silhouette needs at least two clusters")
    return _silhouette(_distance_matrix(_as_points(vectors)), labels)


def _silhouette(distances: np.ndarray, labels: np.ndarray) -> float:
    clusters = np.unique(labels)
    masks = [labels == cluster for cluster in clusters]
    sizes = [int(mask.sum()) for mask in masks]
    scores = np.zeros(distances.shape[0], dtype=np.float64)
    for i in range(distances.shape[0]):
        own = int(np.searchsorted(clusters, labels[i]))
        if sizes[own] == 1:
            continue
        a = distances[i, masks[own]].sum() / (sizes[own] - 1)
        b = min(
            distances[i, mask].mean() for index, mask in enumerate(masks) if index != own
        )
        if (scale := max(a, b)) > 0:
            scores[i] = (b - a) / scale
    return float(scores.mean())


def _compact(model: KMeansModel) -> KMeansModel | None:
    present = np.unique(model.labels)
    if present.size < 2:
        return None
    if present.size == model.k:
        return model
    remap = np.full(model.k, -1, dtype=np.int64)
    remap[present] = np.arange(present.size)
    return KMeansModel(
        k=int(present.size),
        centroids=model.centroids[present],
        labels=remap[model.labels],
        inertia=model.inertia,
        seed=model.seed,
        history=model.history,
    )


def _partitions(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """Labelings of ``n`` points into exactly ``k`` non-empty groups, first-appearance order."""

    def extend(prefix: tuple[int, ...], used: int) -> Iterator[tuple[int, ...]]:
        if len(prefix) == n:
            if used == k:
                yield prefix
            return
        if k - used > n - len(prefix):
            return
        for label in range(min(used + 1, k)):
            yield from extend((*prefix, label), max(used, label + 1))

    yield from extend((0,), 1)


def _best_partition(distances: np.ndarray, k: int) -> np.ndarray:
    """The labeling into ``k`` groups with the highest mean silhouette; ties go to the first."""
    labelings = np.array(list(_partitions(distances.shape[0], k)), dtype=np.int64)
    members = labelings[:, :, np.newaxis] == np.arange(k)
    sizes = members.sum(axis=1)
    # totals[m, i, c]: summed distance from point i to group c under labeling m
    totals = np.einsum("ij,mjc->mic", distances, members.astype(np.float64))
    own_size = np.take_along_axis(sizes, labelings, axis=1)
    own_total = np.take_along_axis(totals, labelings[:, :, np.newaxis], axis=2)[:, :, 0]
    with np.errstate(divide="ignore", invalid="ignore"):
        a = own_total / (own_size - 1)
        means = totals / sizes[:, np.newaxis, :]
        means[members] = np.inf
        b = means.min(axis=2)
        scale = np.maximum(a, b)
        scores = np.where((own_size > 1) & (scale > 0), (b - a) / scale, 0.0)
    return labelings[int(scores.mean(axis=1).argmax())]


def _exhaustive_fit(points: np.ndarray, distances: np.ndarray, k: int, seed: int) -> KMeansModel:
    labels = _best_partition(distances, k)
    centroids = np.vstack([points[labels == cluster].mean(axis=0) for cluster in range(k)])
    inertia = float(_squared_distances(points, centroids)[np.arange(labels.size), labels].sum())
    return KMeansModel(k=k, centroids=centroids, labels=labels, inertia=inertia, seed=seed)


def select_k(
    vectors: Points,
    k_min: int = DEFAULT_K_MIN,
    k_max: int | None = DEFAULT_K_MAX,
    seed: int = 0,
    *,
    workers: int = 1,
) -> StoryClustering:
    """
    Clusters the points for every k in ``[k_min, min(k_max, n - 1)]`` and keeps the best
    silhouette.

    Up to ``EXACT_PARTITION_MAX_POINTS`` points, each k scores every partition into k groups;
    above that, each k takes the k-means fit. Ties go to the smaller k. A k-means fit that leaves
    clusters empty is reduced to its non-empty clusters; fits with fewer than two are skipped.

    Raises:
        TooFewPointsError: If there are fewer than 3 points.
        SingleClusterError: If every candidate collapses to one cluster.
    """
    points = _as_points(vectors)
    n = points.shape[0]
    if n < 3:
        raise TooFewPointsError(f"need at least 3 points to choose k, got {n}")
    upper = n - 1 if k_max is None else min(k_max, n - 1)
    candidates = list(range(max(2, k_min), upper + 1))
    if not candidates:
        raise ValueError(f"empty k range [{k_min}, {upper}]")
    distances = _distance_matrix(points)
    exhaustive = n <= EXACT_PARTITION_MAX_POINTS

    def fit_one(k: int) -> StoryClustering | None:
        if exhaustive:
            model: KMeansModel | None = _exhaustive_fit(points, distances, k, seed)
        else:
            model = _compact(kmeans_fit(points, k, seed))
        if model is None:
            return None
        return StoryClustering(model, model.labels, _silhouette(distances, model.labels))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            fits = list(pool.map(fit_one, candidates))
    else:
        fits = [fit_one(k) for k in candidates]

    best: StoryClustering | None = None
    for k, clustering in zip(candidates, fits, strict=True):
        if clustering is None:
            clustering_logger.debug("k=%d collapsed to a single cluster", k)
            continue
        clustering_logger.debug("k=%d silhouette=%.4f", k, clustering.silhouette)
        if best is None or clustering.silhouette > best.silhouette:
            best = clustering
    if best is None:
        raise SingleClusterError("every candidate k collapsed to a single cluster")
    clustering_logger.info("Chose k=%d (silhouette %.4f)", best.k, best.silhouette)
    return best


def assign(clustering: StoryClustering, target_vec: SparseVector) -> int:
    """
    Index of the centroid nearest the claim; ties go to the lower index.

    Raises:
        DimMismatchError: If the claim vector and the centroids differ in dimension.
        ZeroTargetVectorError: If the claim shares no entity with the window.
    """
    centroids = clustering.model.centroids
    if target_vec.dim != centroids.shape[1]:
        raise DimMismatchError(
            f"claim vector has dim {target_vec.dim}, centroids have {centroids.shape[1]}"
        )
    if target_vec.is_zero:
        raise ZeroTargetVectorError("the claim shares no named entity with the window")
    distances = _squared_distances(target_vec.to_dense()[np.newaxis, :], centroids)[0]
    return int(distances.argmin())


def filter_relevant(
    posts_in_cluster: Sequence[tuple[CleanPost, SparseVector]],
    target_vec: SparseVector,
    m: int = DEFAULT_MAX_EVIDENCE,
    tau: float = DEFAULT_RELEVANCE_THRESHOLD,
    *,
    cluster_index: int = 0,
) -> MatchedStory:
    """
    Keeps the ``m`` posts most similar to the claim among those with cosine at least ``tau``.

    Equal cosines keep the cluster's post order.

    Raises:
        ValueError: If the cluster is empty or ``m < 1``.
        NoRelevantStoryError: If no post reaches ``tau``.
    """
    if not posts_in_cluster:
        raise ValueError("cannot filter an empty cluster")
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    scored = [ScoredPost(post, cosine(vector, target_vec)) for post, vector in posts_in_cluster]
    relevant = sorted(
        (item for item in scored if item.cosine >= tau), key=lambda item: -item.cosine
    )
    if not relevant:
        raise NoRelevantStoryError(f"no post in cluster {cluster_index} reaches cosine {tau}")
    return MatchedStory(cluster_index=cluster_index, posts=tuple(relevant[:m]))
