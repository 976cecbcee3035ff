"""Game containers and construction for layered network games.

A game couples an interaction matrix ``g`` (square, zero diagonal; ``g[i, j]``
is how much agent ``j``'s effort displaces agent ``i``'s) with a target
vector ``q`` of stand-alone effort levels.  Best replies are linear and
truncated at zero::

    x_i = max(0, q_i - sum_j g[i, j] * x_j)

Three containers share that best-reply rule and differ in how the effective
matrix is assembled: a single layer, a weighted overlay of layers on the same
node set (each agent plays one aggregated effort), and a block supra matrix
in which each agent has a separate effort per layer.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError, ShapeError

#: Default absolute tolerance for best-reply fixed-point checks.
DEFAULT_NASH_TOL = 1e-8

#: Multiplex weights must sum to one within this tolerance.
WEIGHT_SUM_TOL = 1e-12


def _as_square(a, what="matrix"):
    arr = np.asarray(a, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ShapeError(f"{what} must be square, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise InvalidParameterError(f"{what} contains non-finite entries")
    return arr


class AdjacencyMatrix:
    """Square interaction matrix with an exactly zero diagonal."""

    __slots__ = ("a",)

    def __init__(self, a):
        arr = _as_square(a, "adjacency matrix")
        if np.any(np.diag(arr) != 0.0):
            raise InvalidParameterError("adjacency matrix must have zero diagonal")
        self.a = arr

    @property
    def n(self) -> int:
        return self.a.shape[0]

    def is_symmetric(self, tol: float = 1e-12) -> bool:
        return bool(np.abs(self.a - self.a.T).max(initial=0.0) <= tol)

    def __repr__(self):
        return f"AdjacencyMatrix(n={self.n})"


def as_matrix(g) -> np.ndarray:
    """Accept an AdjacencyMatrix or a raw square array; return the array."""
    if isinstance(g, AdjacencyMatrix):
        return g.a
    return _as_square(g)


def _as_vector(q, n, what="target vector"):
    vec = np.asarray(q, dtype=np.float64).reshape(-1)
    if vec.shape[0] != n:
        raise ShapeError(f"{what} has length {vec.shape[0]}, expected {n}")
    if not np.isfinite(vec).all():
        raise InvalidParameterError(f"{what} contains non-finite entries")
    return vec


@dataclass
class EffortProfile:
    """A candidate action profile; efforts are clamped nonnegative by play."""

    x: np.ndarray

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=np.float64).reshape(-1)


class NetworkGame:
    """Single-layer game: interaction matrix plus target vector."""

    def __init__(self, g, q):
        self.g = g if isinstance(g, AdjacencyMatrix) else AdjacencyMatrix(g)
        self.q = _as_vector(q, self.g.n)

    @property
    def n(self) -> int:
        return self.g.n

    def effective_matrix(self) -> np.ndarray:
        return self.g.a

    def effective_targets(self) -> np.ndarray:
        return self.q

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "entries": [float(v) for v in self.g.a.reshape(-1)],
            "q": [float(v) for v in self.q],
        }


class MultiplexGame:
    """Overlay game: convex combination of same-size layers.

    ``weights`` must be nonnegative and sum to one; two-layer games are
    usually built from a single mixing weight via :func:`from_kappa`.
    """

    def __init__(self, layers, weights, q):
        if len(layers) < 2:
            raise ShapeError("a multiplex game needs at least two layers")
        self.layers = [
            l if isinstance(l, AdjacencyMatrix) else AdjacencyMatrix(l) for l in layers
        ]
        n = self.layers[0].n
        for l in self.layers[1:]:
            if l.n != n:
                raise ShapeError("all layers must share one node set")
        w = np.asarray(weights, dtype=np.float64).reshape(-1)
        if w.shape[0] != len(self.layers):
            raise ShapeError("one weight per layer required")
        if np.any(w < 0.0):
            raise InvalidParameterError("layer weights must be nonnegative")
        if abs(w.sum() - 1.0) > WEIGHT_SUM_TOL:
            raise InvalidParameterError(
                f"layer weights must sum to 1 within {WEIGHT_SUM_TOL}, got {w.sum()!r}"
            )
        self.weights = w
        self.q = _as_vector(q, n)

    @property
    def n(self) -> int:
        return self.layers[0].n

    @property
    def n_layers(self) -> int:
        return len(self.layers)

    @classmethod
    def from_kappa(cls, g1, g2, kappa, q):
        if not 0.0 <= kappa <= 1.0:
            raise InvalidParameterError("kappa must lie in [0, 1]")
        return cls([g1, g2], [kappa, 1.0 - kappa], q)

    def effective_matrix(self) -> np.ndarray:
        return build_multiplex(self.layers, self.weights).a

    def effective_targets(self) -> np.ndarray:
        return self.q

    def to_dict(self) -> dict:
        return {
            "layers": [
                {"n": l.n, "entries": [float(v) for v in l.a.reshape(-1)]}
                for l in self.layers
            ],
            "weights": [float(v) for v in self.weights],
            "q": [float(v) for v in self.q],
        }


class MultilayerGame:
    """Block game: per-layer efforts coupled through inter-layer blocks.

    ``inter`` is an M-by-M grid; entry (l, k) with l != k carries the n-by-n
    block through which layer ``k`` efforts displace layer ``l`` replies.
    Grid diagonal entries must be None (intra-layer structure lives in
    ``layers``).  Missing blocks mean no coupling.
    """

    def __init__(self, layers, inter, q):
        if len(layers) < 2:
            raise ShapeError("a multilayer game needs at least two layers")
        self.layers = [
            l if isinstance(l, AdjacencyMatrix) else AdjacencyMatrix(l) for l in layers
        ]
        n = self.layers[0].n
        for l in self.layers[1:]:
            if l.n != n:
                raise ShapeError("all layers must share one node set")
        m = len(self.layers)
        grid = [[None] * m for _ in range(m)]
        if inter is not None:
            if len(inter) != m or any(len(row) != m for row in inter):
                raise ShapeError("inter grid must be M-by-M")
            for l in range(m):
                for k in range(m):
                    blk = inter[l][k]
                    if blk is None:
                        continue
                    if l == k:
                        raise ShapeError("inter grid diagonal must be None")
                    blk = _as_square(blk, f"inter block ({l},{k})")
                    if blk.shape[0] != n:
                        raise ShapeError(
                            f"inter block ({l},{k}) must be {n}-by-{n}"
                        )
                    grid[l][k] = blk
        self.inter = grid
        self.q = _as_vector(q, m * n)

    @property
    def n(self) -> int:
        return self.layers[0].n

    @property
    def n_layers(self) -> int:
        return len(self.layers)

    def inter_block(self, l: int, k: int) -> np.ndarray:
        blk = self.inter[l][k]
        if blk is None:
            return np.zeros((self.n, self.n))
        return blk

    def effective_matrix(self) -> np.ndarray:
        return build_supra(self.layers, self.inter).a

    def effective_targets(self) -> np.ndarray:
        return self.q

    def to_dict(self) -> dict:
        def mat(a):
            return {"n": a.shape[0], "entries": [float(v) for v in a.reshape(-1)]}

        return {
            "layers": [mat(l.a) for l in self.layers],
            "inter": [
                [None if blk is None else mat(blk) for blk in row]
                for row in self.inter
            ],
            "q": [float(v) for v in self.q],
        }


# ---------------------------------------------------------------------------
# construction operations
# ---------------------------------------------------------------------------


def target_from_exponential_benefit(costs):
    """Stand-alone targets for benefit 1 - exp(-x) at marginal cost c: -ln c.

    Accepts a scalar or array of positive costs.  Costs above one yield
    negative targets (the agent would free-ride even alone).
    """
    c = np.asarray(costs, dtype=np.float64)
    if np.any(c <= 0.0) or not np.isfinite(c).all():
        raise InvalidParameterError("marginal costs must be positive and finite")
    return -np.log(c)


def build_multiplex(layers, weights) -> AdjacencyMatrix:
    """Weighted overlay of layers; validates convex weights."""
    mats = [as_matrix(l) for l in layers]
    w = np.asarray(weights, dtype=np.float64).reshape(-1)
    if len(mats) != w.shape[0]:
        raise ShapeError("one weight per layer required")
    if np.any(w < 0.0):
        raise InvalidParameterError("layer weights must be nonnegative")
    if abs(w.sum() - 1.0) > WEIGHT_SUM_TOL:
        raise InvalidParameterError("layer weights must sum to 1")
    n = mats[0].shape[0]
    for a in mats[1:]:
        if a.shape[0] != n:
            raise ShapeError("all layers must share one node set")
    out = np.zeros((n, n))
    for wl, a in zip(w, mats):
        out += wl * a
    return AdjacencyMatrix(out)


def build_supra(layers, inter) -> AdjacencyMatrix:
    """Assemble the block supra matrix from layers and inter-layer blocks."""
    mats = [as_matrix(l) for l in layers]
    m = len(mats)
    n = mats[0].shape[0]
    for a in mats[1:]:
        if a.shape[0] != n:
            raise ShapeError("all layers must share one node set")
    supra = np.zeros((m * n, m * n))
    for l in range(m):
        supra[l * n : (l + 1) * n, l * n : (l + 1) * n] = mats[l]
    if inter is not None:
        if len(inter) != m or any(len(row) != m for row in inter):
            raise ShapeError("inter grid must be M-by-M")
        for l in range(m):
            for k in range(m):
                blk = inter[l][k]
                if blk is None:
                    continue
                if l == k:
                    raise ShapeError("inter grid diagonal must be None")
                blk = _as_square(blk, f"inter block ({l},{k})")
                if blk.shape[0] != n:
                    raise ShapeError(f"inter block ({l},{k}) must be {n}-by-{n}")
                supra[l * n : (l + 1) * n, k * n : (k + 1) * n] = blk
    return AdjacencyMatrix(supra)


def best_response(game, x) -> EffortProfile:
    """One synchronous best-reply step: max(0, q - G x)."""
    g = game.effective_matrix()
    q = game.effective_targets()
    xv = _as_vector(x.x if isinstance(x, EffortProfile) else x, q.shape[0], "profile")
    return EffortProfile(np.maximum(0.0, q - g @ xv))


def is_nash(game, x, tol: float = DEFAULT_NASH_TOL) -> bool:
    """Is ``x`` a fixed point of the best-reply map within ``tol``?"""
    if tol <= 0.0:
        raise InvalidParameterError("tol must be positive")
    xv = np.asarray(x.x if isinstance(x, EffortProfile) else x, dtype=np.float64)
    y = best_response(game, xv).x
    return bool(np.abs(xv - y).max(initial=0.0) <= tol)


# ---------------------------------------------------------------------------
# file round-trip
# ---------------------------------------------------------------------------


def matrix_to_dict(a) -> dict:
    arr = as_matrix(a)
    return {"n": arr.shape[0], "entries": [float(v) for v in arr.reshape(-1)]}


def matrix_from_dict(doc) -> np.ndarray:
    try:
        n = int(doc["n"])
        entries = np.asarray(doc["entries"], dtype=np.float64)
    except (KeyError, TypeError, ValueError) as exc:
        raise ShapeError(f"malformed matrix document: {exc}") from exc
    if entries.shape[0] != n * n:
        raise ShapeError(f"matrix document claims n={n} but has {entries.shape[0]} entries")
    return entries.reshape(n, n)


def game_from_dict(doc):
    """Rebuild a game (single, overlay, or block) from its document."""
    if "inter" in doc:
        layers = [matrix_from_dict(l) for l in doc["layers"]]
        inter = [
            [None if blk is None else matrix_from_dict(blk) for blk in row]
            for row in doc["inter"]
        ]
        return MultilayerGame(layers, inter, doc["q"])
    if "layers" in doc:
        layers = [matrix_from_dict(l) for l in doc["layers"]]
        return MultiplexGame(layers, doc["weights"], doc["q"])
    g = matrix_from_dict(doc)
    if "q" not in doc:
        raise ShapeError("game document is missing the target vector 'q'")
    return NetworkGame(g, doc["q"])


def load_game(path):
    with open(path, "r", encoding="utf-8") as fh:
        return game_from_dict(json.load(fh))


def save_game(game, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(game.to_dict(), fh, indent=2)
        fh.write("\n")


def load_matrix(path) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        return matrix_from_dict(json.load(fh))


def save_matrix(a, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(matrix_to_dict(a), fh, indent=2)
        fh.write("\n")
