"""Uniqueness, existence, and stability certificates for layered games.

Every operation returns a :class:`Certificate` rather than a bare boolean:
the verdict, the operation that produced it, whether the operation's
preconditions held, and the numeric evidence behind the call.  Positive
verdicts (``GuaranteedUnique``) and negative verdicts
(``NotGuaranteedUnique``) are one-sided unless documented otherwise;
``Inconclusive`` means the condition simply did not bite.

Eigenvalue-based conditions applied to asymmetric inputs order eigenvalues
by real part and mark the certificate as heuristic in its note.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    InternalConsistencyError,
    InvalidParameterError,
    ShapeError,
)
from .games import MultilayerGame, MultiplexGame, as_matrix
from .lcp import (
    ACTIVE_TOL,
    ENUM_CAP,
    FEAS_TOL,
    LcpProblem,
    LcpSolution,
    enumerate_solutions,
    from_game,
    partition,
    residual_of,
)
from .matclass import (
    COND_CAP,
    det_eps,
    is_b_matrix,
    is_p_matrix,
    is_strictly_row_dd,
    is_symmetric,
    spectral,
)

GUARANTEED_UNIQUE = "GuaranteedUnique"
NOT_GUARANTEED_UNIQUE = "NotGuaranteedUnique"
INCONCLUSIVE = "Inconclusive"
EXISTS = "Exists"
NOT_EXISTS = "NotExists"
STRONGLY_STABLE = "StronglyStable"
NOT_STRONGLY_STABLE = "NotStronglyStable"

#: Tolerance for treating an inter-layer block as absent.
INTER_ZERO_TOL = 1e-12

#: Tolerance for the idempotency test on coupling blocks.
IDEMPOTENT_TOL = 1e-10

#: A circulant eigenvalue factor below this magnitude counts as vanishing.
CIRCULANT_FACTOR_TOL = 1e-10

_HEURISTIC_NOTE = "heuristic: real-part eigenvalue convention (asymmetric input)"


@dataclass
class Certificate:
    verdict: str
    source: str
    applicability: bool = True
    evidence: dict = field(default_factory=dict)
    note: str = ""

    def to_dict(self) -> dict:
        def plain(v):
            if isinstance(v, (np.floating, np.integer)):
                return v.item()
            if isinstance(v, (tuple, list)):
                return [plain(x) for x in v]
            return v

        doc = {
            "verdict": self.verdict,
            "source": self.source,
            "applicability": bool(self.applicability),
            "evidence": {k: plain(v) for k, v in self.evidence.items()},
        }
        if self.note:
            doc["note"] = self.note
        return doc


def _pair_of_layers(g1, g2):
    a = as_matrix(g1)
    b = as_matrix(g2)
    if a.shape != b.shape:
        raise ShapeError(f"layers differ in size: {a.shape} vs {b.shape}")
    return a, b


def _check_kappa_open(kappa, source):
    if not 0.0 <= kappa <= 1.0:
        raise InvalidParameterError("kappa must lie in [0, 1]")
    if kappa in (0.0, 1.0):
        return Certificate(
            INCONCLUSIVE,
            source,
            applicability=False,
            evidence={"kappa": float(kappa)},
            note="condition undefined at degenerate mixing weight",
        )
    return None


# ---------------------------------------------------------------------------
# multiplex (overlay) certificates
# ---------------------------------------------------------------------------


def prop1_pair_failure(g1, g2, kappa) -> Certificate:
    """Negative certificate from a single pair of agents.

    For a pair (i, j) present in both layers, a large enough cross-layer
    product of reciprocal influences forces the pair's 2-by-2 principal
    minor of I + G_par nonpositive, killing the P-property.  Pairs with a
    zero (i, j) entry in either layer are skipped (their layer ratios are
    undefined), which keeps this certificate one-sided.
    """
    a, b = _pair_of_layers(g1, g2)
    guard = _check_kappa_open(kappa, "prop1_pair_failure")
    if guard is not None:
        return guard
    t = kappa / (1.0 - kappa)
    d = a.shape[0]
    checked = 0
    skipped = 0
    for i in range(d):
        for j in range(i + 1, d):
            if a[i, j] == 0.0 or b[i, j] == 0.0:
                skipped += 1
                continue
            checked += 1
            det_a = 1.0 - a[i, j] * a[j, i]
            det_b = 1.0 - b[i, j] * b[j, i]
            lhs = a[i, j] * b[j, i] + b[i, j] * a[j, i]
            rhs = 2.0 + t * det_a + det_b / t
            if lhs >= rhs:
                return Certificate(
                    NOT_GUARANTEED_UNIQUE,
                    "prop1_pair_failure",
                    evidence={
                        "pair": (i, j),
                        "lhs": float(lhs),
                        "rhs": float(rhs),
                        "pair_det_layer1": float(det_a),
                        "pair_det_layer2": float(det_b),
                        "kappa": float(kappa),
                    },
                )
    return Certificate(
        INCONCLUSIVE,
        "prop1_pair_failure",
        evidence={"pairs_checked": checked, "pairs_skipped": skipped},
    )


def prop2_closed_classes(g1, g2=None, kappa=None, weights=None) -> Certificate:
    """Positive certificate from classes closed under convex combination.

    If every layer's I + G belongs to one common closed class (symmetric P;
    strictly row diagonally dominant; row-mean dominant), then every convex
    overlay inherits the class and has a unique equilibrium for every
    target vector.  The verdict does not depend on the mixing weights, so
    they are validated but otherwise ignored.

    Accepts either two layers plus ``kappa`` or a sequence of M >= 2 layers
    as the first argument (optionally with ``weights``).
    """
    if g2 is None:
        mats = [as_matrix(l) for l in g1]
    else:
        mats = [as_matrix(g1), as_matrix(g2)]
        if kappa is not None:
            weights = (kappa, 1.0 - kappa)
    if len(mats) < 2:
        raise ShapeError("need at least two layers")
    n = mats[0].shape[0]
    if any(m.shape[0] != n for m in mats):
        raise ShapeError("all layers must share one node set")
    if weights is not None:
        w = np.asarray(weights, dtype=np.float64)
        if w.shape[0] != len(mats) or np.any(w < 0.0) or abs(w.sum() - 1.0) > 1e-12:
            raise InvalidParameterError("weights must be convex coefficients")

    eye = np.eye(n)

    if all(is_symmetric(m) for m in mats):
        verdicts = [is_p_matrix(eye + m) for m in mats]
        if all(v.holds is True for v in verdicts):
            return Certificate(
                GUARANTEED_UNIQUE,
                "prop2_closed_classes",
                evidence={"closed_class": "symmetric-p", "layers": len(mats)},
            )

    if all(is_strictly_row_dd(eye + m) for m in mats):
        margins = [
            float((1.0 - (np.abs(m).sum(axis=1) - np.abs(np.diag(m)))).min())
            for m in mats
        ]
        return Certificate(
            GUARANTEED_UNIQUE,
            "prop2_closed_classes",
            evidence={
                "closed_class": "row-dominance",
                "min_dominance_margin": min(margins),
            },
        )

    if all(is_b_matrix(eye + m) for m in mats):
        return Certificate(
            GUARANTEED_UNIQUE,
            "prop2_closed_classes",
            evidence={"closed_class": "row-mean", "layers": len(mats)},
        )

    return Certificate(
        INCONCLUSIVE,
        "prop2_closed_classes",
        evidence={"layers": len(mats)},
        note="no common closed class held across all layers",
    )


def prop3_perturbation(g1, g2, kappa) -> Certificate:
    """Positive certificate treating layer 2 as a perturbation of layer 1.

    With I + G1 symmetric positive definite, the overlay stays uniquely
    solvable when layer 2's top eigenvalue sits below a threshold built
    from the mixing weight and layer 1's bottom eigenvalue:

        lambda_max(G2) < (2k - 1)/(1 - k) + k/(1 - k) * lambda_min(G1)

    Asymmetric inputs are evaluated on real parts and marked heuristic; the
    positive-definiteness gate is then waived (it has no exact meaning).
    """
    a, b = _pair_of_layers(g1, g2)
    if not 0.0 <= kappa <= 1.0:
        raise InvalidParameterError("kappa must lie in [0, 1]")
    if kappa == 1.0:
        return Certificate(
            INCONCLUSIVE,
            "prop3_perturbation",
            applicability=False,
            evidence={"kappa": 1.0},
            note="threshold undefined without a layer-2 share",
        )
    sym = is_symmetric(a) and is_symmetric(b)
    s1 = spectral(a)
    s2 = spectral(b)
    if is_symmetric(a):
        eye = np.eye(a.shape[0])
        if not (1.0 + s1.lambda_min_re > det_eps(eye + a)):
            return Certificate(
                INCONCLUSIVE,
                "prop3_perturbation",
                applicability=False,
                evidence={"lambda_min_re_layer1": s1.lambda_min_re},
                note="base layer is not positive definite",
            )
    threshold = (2.0 * kappa - 1.0) / (1.0 - kappa) + kappa / (
        1.0 - kappa
    ) * s1.lambda_min_re
    evidence = {
        "lambda_min_re_layer1": s1.lambda_min_re,
        "lambda_max_re_layer2": s2.lambda_max_re,
        "threshold": float(threshold),
        "kappa": float(kappa),
    }
    note = "" if sym else _HEURISTIC_NOTE
    if s2.lambda_max_re < threshold:
        return Certificate(
            GUARANTEED_UNIQUE, "prop3_perturbation", evidence=evidence, note=note
        )
    return Certificate(
        INCONCLUSIVE, "prop3_perturbation", evidence=evidence, note=note
    )


def prop4_twosided_failure(g1, g2, kappa) -> Certificate:
    """Negative certificate from opposed eigenvalue extremes.

    A deep enough bottom eigenvalue of layer 2 relative to layer 1's top
    eigenvalue pushes the overlay's bottom eigenvalue to -1 or below:

        |lambda_min(G2)| >= (1 + k * lambda_max(G1)) / (1 - k)

    Exact for symmetric layers; real parts with a heuristic note otherwise.
    """
    a, b = _pair_of_layers(g1, g2)
    if not 0.0 <= kappa <= 1.0:
        raise InvalidParameterError("kappa must lie in [0, 1]")
    if kappa == 1.0:
        return Certificate(
            INCONCLUSIVE,
            "prop4_twosided_failure",
            applicability=False,
            evidence={"kappa": 1.0},
            note="threshold undefined without a layer-2 share",
        )
    sym = is_symmetric(a) and is_symmetric(b)
    s1 = spectral(a)
    s2 = spectral(b)
    lhs = abs(s2.lambda_min_re)
    rhs = (1.0 + kappa * s1.lambda_max_re) / (1.0 - kappa)
    evidence = {
        "lambda_max_re_layer1": s1.lambda_max_re,
        "lambda_min_re_layer2": s2.lambda_min_re,
        "lhs": float(lhs),
        "rhs": float(rhs),
        "kappa": float(kappa),
    }
    note = "" if sym else _HEURISTIC_NOTE
    if lhs >= rhs:
        return Certificate(
            NOT_GUARANTEED_UNIQUE, "prop4_twosided_failure", evidence=evidence, note=note
        )
    return Certificate(
        INCONCLUSIVE, "prop4_twosided_failure", evidence=evidence, note=note
    )


# ---------------------------------------------------------------------------
# multilayer (block) certificates
# ---------------------------------------------------------------------------


def _require_multilayer(game):
    if not isinstance(game, MultilayerGame):
        raise ShapeError("expected a multilayer (block) game")


def prop5_multilayer_failure(game: MultilayerGame) -> Certificate:
    """Negative certificate from a layer or a Schur determinant.

    A diagonal layer whose I + G is not P makes the supra matrix non-P (a
    principal block is a principal submatrix).  With P layers, the supra
    determinant factors as det(I + G_l) times the determinant of the Schur
    complement eliminating layer l; a nonpositive Schur determinant
    therefore also kills the P-property.  Exact negatives, one-sided.
    """
    _require_multilayer(game)
    n = game.n
    eye = np.eye(n)
    unknown = []
    for l, layer in enumerate(game.layers):
        v = is_p_matrix(eye + layer.a)
        if v.holds is False:
            return Certificate(
                NOT_GUARANTEED_UNIQUE,
                "prop5_multilayer_failure",
                evidence={"failing_layer": l, "witness": v.witness},
            )
        if v.holds is None:
            unknown.append(l)

    supra = np.eye(game.n_layers * n) + game.effective_matrix()
    eps = det_eps(supra)
    dets = {}
    for l in range(game.n_layers):
        if l in unknown:
            continue
        elim = list(range(l * n, (l + 1) * n))
        keep = [i for i in range(game.n_layers * n) if i not in elim]
        a = supra[np.ix_(elim, elim)]
        try:
            schur = supra[np.ix_(keep, keep)] - supra[
                np.ix_(keep, elim)
            ] @ np.linalg.solve(a, supra[np.ix_(elim, keep)])
        except np.linalg.LinAlgError:
            return Certificate(
                INCONCLUSIVE,
                "prop5_multilayer_failure",
                evidence=dets,
                note=f"elimination of layer {l} is numerically singular",
            )
        det = float(np.linalg.det(schur))
        dets[f"schur_det_eliminating_layer{l}"] = det
        if det <= eps:
            return Certificate(
                NOT_GUARANTEED_UNIQUE,
                "prop5_multilayer_failure",
                evidence={"eliminated_layer": l, **dets},
            )
    note = (
        "P status of layers {} undecidable; their Schur checks skipped".format(unknown)
        if unknown
        else ""
    )
    return Certificate(
        INCONCLUSIVE, "prop5_multilayer_failure", evidence=dets, note=note
    )


def prop6_oneway(game: MultilayerGame) -> Certificate:
    """Two-sided certificate for one-way coupled games.

    When all coupling runs in one direction (the supra matrix is block
    triangular), uniqueness for every target vector holds if and only if
    every layer's I + G is a P-matrix.  Not applicable under two-way
    coupling.
    """
    _require_multilayer(game)
    m = game.n_layers

    def blocks_vanish(upper: bool) -> bool:
        rng = (
            ((l, k) for l in range(m) for k in range(l + 1, m))
            if upper
            else ((l, k) for l in range(m) for k in range(l))
        )
        return all(
            np.abs(game.inter_block(l, k)).max(initial=0.0) <= INTER_ZERO_TOL
            for l, k in rng
        )

    upper_zero = blocks_vanish(True)
    lower_zero = blocks_vanish(False)
    if not (upper_zero or lower_zero):
        return Certificate(
            INCONCLUSIVE,
            "prop6_oneway",
            applicability=False,
            note="coupling runs in both directions",
        )

    eye = np.eye(game.n)
    flags = []
    for l, layer in enumerate(game.layers):
        v = is_p_matrix(eye + layer.a)
        if v.holds is None:
            return Certificate(
                INCONCLUSIVE,
                "prop6_oneway",
                note=f"layer {l} P status undecidable",
            )
        flags.append(v.holds)
    evidence = {
        "direction": "forward" if lower_zero else "backward",
        "layer_p_flags": tuple(bool(f) for f in flags),
    }
    if all(flags):
        return Certificate(GUARANTEED_UNIQUE, "prop6_oneway", evidence=evidence)
    return Certificate(NOT_GUARANTEED_UNIQUE, "prop6_oneway", evidence=evidence)


def prop7_complements_bdd(game: MultilayerGame) -> Certificate:
    """Positive certificate for complement layers under weak coupling.

    For layers of strategic complements (nonpositive off-diagonals) whose
    I + G are P-matrices, block diagonal dominance in the spectral norm,

        ||(I + G_l)^-1||_2 * sum_{k != l} ||G_lk||_2 < 1   for every l,

    makes the supra matrix uniquely solvable for every target vector.
    """
    _require_multilayer(game)
    n = game.n
    eye = np.eye(n)
    off = ~np.eye(n, dtype=bool)
    for l, layer in enumerate(game.layers):
        if np.any(layer.a[off] > 0.0):
            return Certificate(
                INCONCLUSIVE,
                "prop7_complements_bdd",
                applicability=False,
                note=f"layer {l} is not a game of strategic complements",
            )
    evidence = {}
    for l, layer in enumerate(game.layers):
        v = is_p_matrix(eye + layer.a)
        if v.holds is not True:
            return Certificate(
                INCONCLUSIVE,
                "prop7_complements_bdd",
                evidence={"failing_layer": l},
                note="a layer lacks the P-property, dominance cannot conclude",
            )
        try:
            inv_norm = float(np.linalg.norm(np.linalg.inv(eye + layer.a), 2))
        except np.linalg.LinAlgError as exc:
            raise InternalConsistencyError(
                f"layer {l} passed the P test but failed to invert"
            ) from exc
        coupling = sum(
            float(np.linalg.norm(game.inter_block(l, k), 2))
            for k in range(game.n_layers)
            if k != l
        )
        evidence[f"inverse_norm_layer{l}"] = inv_norm
        evidence[f"coupling_norm_layer{l}"] = coupling
        evidence[f"dominance_product_layer{l}"] = inv_norm * coupling
    products = [evidence[f"dominance_product_layer{l}"] for l in range(game.n_layers)]
    if all(p < 1.0 for p in products):
        return Certificate(
            GUARANTEED_UNIQUE, "prop7_complements_bdd", evidence=evidence
        )
    return Certificate(INCONCLUSIVE, "prop7_complements_bdd", evidence=evidence)


def layer_addition_check(old_supra, new_layer, in_block, out_block) -> Certificate:
    """Negative certificate when appending a layer to an existing stack.

    The grown supra matrix is P only if I + G_new is P and the Schur
    complement (I + G_old) - out (I + G_new)^-1 in has positive
    determinant; either failure is exact evidence against uniqueness.
    """
    g_old = old_supra.effective_matrix() if hasattr(old_supra, "effective_matrix") else as_matrix(old_supra)
    g_new = as_matrix(new_layer)
    inn = np.asarray(in_block, dtype=np.float64)
    out = np.asarray(out_block, dtype=np.float64)
    n_old = g_old.shape[0]
    n_new = g_new.shape[0]
    if inn.shape != (n_new, n_old):
        raise ShapeError(f"in block must be {n_new}x{n_old}, got {inn.shape}")
    if out.shape != (n_old, n_new):
        raise ShapeError(f"out block must be {n_old}x{n_new}, got {out.shape}")

    eye_new = np.eye(n_new)
    v = is_p_matrix(eye_new + g_new)
    if v.holds is False:
        return Certificate(
            NOT_GUARANTEED_UNIQUE,
            "layer_addition_check",
            evidence={"new_layer_witness": v.witness},
            note="added layer fails the P-property on its own",
        )
    if v.holds is None:
        return Certificate(
            INCONCLUSIVE,
            "layer_addition_check",
            note="added layer P status undecidable",
        )
    try:
        schur = (np.eye(n_old) + g_old) - out @ np.linalg.solve(eye_new + g_new, inn)
    except np.linalg.LinAlgError as exc:
        raise InternalConsistencyError(
            "added layer passed the P test but failed to invert"
        ) from exc
    det = float(np.linalg.det(schur))
    eps = det_eps(np.eye(n_old) + g_old)
    if det <= eps:
        return Certificate(
            NOT_GUARANTEED_UNIQUE,
            "layer_addition_check",
            evidence={"schur_det": det},
        )
    return Certificate(
        INCONCLUSIVE, "layer_addition_check", evidence={"schur_det": det}
    )


def _is_dag(block) -> bool:
    b = np.asarray(block)
    n = b.shape[0]
    if np.any(np.diag(b) != 0.0):
        return False
    adj = b != 0.0
    indeg = adj.sum(axis=0)
    stack = [i for i in range(n) if indeg[i] == 0]
    seen = 0
    indeg = indeg.copy()
    while stack:
        i = stack.pop()
        seen += 1
        for j in np.flatnonzero(adj[i]):
            indeg[j] -= 1
            if indeg[j] == 0:
                stack.append(j)
    return seen == n


def _circulant_first_row(block):
    b = np.asarray(block, dtype=np.float64)
    first = b[0]
    for i in range(1, b.shape[0]):
        if not np.allclose(b[i], np.roll(first, i), rtol=0.0, atol=1e-12):
            return None
    return first


def chain_cycle_degenerate(blocks) -> Certificate:
    """Negative certificate from structurally singular coupling blocks.

    Fires when any coupling block along a layer chain or cycle is singular
    for a structural reason: its nonzero pattern is acyclic (permutable to
    strictly triangular), it is idempotent without being the identity, or
    it is circulant with zero diagonal and a vanishing eigenvalue factor
    (one of the n DFT evaluations of its first row).
    """
    if not blocks:
        raise ShapeError("need at least one coupling block")
    sizes = set()
    for idx, raw in enumerate(blocks):
        b = np.asarray(raw, dtype=np.float64)
        if b.ndim != 2 or b.shape[0] != b.shape[1]:
            raise ShapeError(f"block {idx} is not square")
        sizes.add(b.shape[0])
        if len(sizes) > 1:
            raise ShapeError("coupling blocks must share one size")
        if _is_dag(b):
            return Certificate(
                NOT_GUARANTEED_UNIQUE,
                "chain_cycle_degenerate",
                evidence={"block": idx, "reason": "acyclic-pattern"},
            )
        if (
            np.abs(b @ b - b).max(initial=0.0) <= IDEMPOTENT_TOL
            and np.abs(b - np.eye(b.shape[0])).max(initial=0.0) > IDEMPOTENT_TOL
        ):
            return Certificate(
                NOT_GUARANTEED_UNIQUE,
                "chain_cycle_degenerate",
                evidence={"block": idx, "reason": "idempotent"},
            )
        first = _circulant_first_row(b)
        if first is not None and abs(first[0]) <= 1e-12:
            factors = np.fft.fft(first)
            fmin = float(np.abs(factors).min())
            if fmin <= CIRCULANT_FACTOR_TOL:
                return Certificate(
                    NOT_GUARANTEED_UNIQUE,
                    "chain_cycle_degenerate",
                    evidence={
                        "block": idx,
                        "reason": "circulant-vanishing-factor",
                        "min_factor_magnitude": fmin,
                    },
                )
    return Certificate(INCONCLUSIVE, "chain_cycle_degenerate")


# ---------------------------------------------------------------------------
# existence
# ---------------------------------------------------------------------------


def _offdiag(m):
    return m[~np.eye(m.shape[0], dtype=bool)]


def _single_layer_existence(g, source, prefix="") -> Certificate:
    off = _offdiag(g)
    if off.size == 0 or np.all(off >= 0.0):
        return Certificate(
            EXISTS,
            source,
            evidence={prefix + "sign": "substitutes"},
            note="nonnegative interactions always admit an equilibrium",
        )
    if np.all(off <= 0.0):
        rho = spectral(g).rho
        evidence = {prefix + "sign": "complements", prefix + "rho": rho}
        if rho < 1.0:
            return Certificate(EXISTS, source, evidence=evidence)
        return Certificate(NOT_EXISTS, source, evidence=evidence)
    return Certificate(
        INCONCLUSIVE,
        source,
        evidence={prefix + "sign": "mixed"},
        note="mixed interaction signs are outside the exact existence theory",
    )


def _multiplex_existence_core(mats, w, source) -> Certificate:
    offs = [_offdiag(m) for m in mats]
    if all(o.size == 0 or np.all(o >= 0.0) for o in offs):
        return Certificate(
            EXISTS,
            source,
            evidence={"sign": "substitutes", "layers": len(mats)},
            note="substitutes are closed under convex overlay",
        )
    if not all(np.all(o <= 0.0) for o in offs):
        return Certificate(
            INCONCLUSIVE,
            source,
            evidence={"sign": "mixed"},
            note="mixed interaction signs are outside the exact existence theory",
        )
    if not all(is_symmetric(m) for m in mats):
        return Certificate(
            INCONCLUSIVE,
            source,
            evidence={"sign": "complements"},
            note="layer-wise screening needs symmetric layers",
        )
    summaries = [spectral(m) for m in mats]
    lo = np.array([s.lambda_min_re for s in summaries])
    hi = np.array([s.lambda_max_re for s in summaries])
    exist_combo = float(w @ lo)
    evidence = {"weighted_min_combo": exist_combo}
    if abs(exist_combo) < 1.0:
        return Certificate(EXISTS, source, evidence=evidence)
    for l in range(len(mats)):
        combo = exist_combo + float(w[l] * (hi[l] - lo[l]))
        evidence[f"weighted_mixed_combo_layer{l}"] = combo
        if abs(combo) >= 1.0:
            return Certificate(
                NOT_EXISTS,
                source,
                evidence=evidence,
                note=f"overlay spectrum escapes the unit band via layer {l}",
            )
    return Certificate(INCONCLUSIVE, source, evidence=evidence)


def existence_check(game) -> Certificate:
    """Existence guarantees robust over target vectors.

    ``Exists`` asserts an equilibrium for every admissible target vector;
    ``NotExists`` asserts some target vector admits none.  Single-layer
    (and block supra) games of substitutes always pass; games of
    complements pass exactly when the spectral radius of G stays below 1.
    Symmetric multiplex games of complements are screened layer-wise
    through eigenvalue combination bounds on the overlay spectrum.
    """
    source = "existence_check"
    if isinstance(game, MultiplexGame):
        return _multiplex_existence_core(
            [l.a for l in game.layers], game.weights, source
        )
    g = game.effective_matrix() if hasattr(game, "effective_matrix") else as_matrix(game)
    return _single_layer_existence(g, source)


def multiplex_existence(g1, g2, kappa) -> Certificate:
    """Two-layer overlay existence screening without building a game.

    Companion to :func:`existence_check` for a pair of layers mixed with
    weight ``kappa``; most informative for symmetric layers of strategic
    complements, where the layer-wise eigenvalue combination bounds apply.
    """
    a, b = _pair_of_layers(g1, g2)
    if not 0.0 <= kappa <= 1.0:
        raise InvalidParameterError("kappa must lie in [0, 1]")
    w = np.array([kappa, 1.0 - kappa])
    return _multiplex_existence_core([a, b], w, "multiplex_existence")


# ---------------------------------------------------------------------------
# stability
# ---------------------------------------------------------------------------


def strong_stability(
    sol: LcpSolution, p: LcpProblem, tol_active: float = ACTIVE_TOL
) -> Certificate:
    """Strong stability of one solution under small problem perturbations.

    Let J index active efforts, K doubly tight indices.  The solution is
    strongly stable when m[J, J] is nonsingular and the Schur complement of
    m[J, J] in m over K is a P-matrix; with K empty the second condition is
    vacuous, with J empty the first is.
    """
    res = residual_of(p, sol.z, sol.w)
    if res > FEAS_TOL:
        raise InvalidParameterError(
            f"point is not a solution of this problem (residual {res:.3e})"
        )
    part = partition(sol, tol_active)
    j, k = list(part.j), list(part.k)
    evidence = {
        "active": len(part.j),
        "doubly_tight": len(part.k),
        "slack": len(part.l),
    }
    if j:
        mjj = p.m[np.ix_(j, j)]
        cond = float(np.linalg.cond(mjj))
        evidence["cond_active_block"] = cond
        if not np.isfinite(cond) or cond >= COND_CAP:
            return Certificate(
                NOT_STRONGLY_STABLE,
                "strong_stability",
                evidence=evidence,
                note="active block is numerically singular",
            )
    if not k:
        return Certificate(STRONGLY_STABLE, "strong_stability", evidence=evidence)
    if j:
        schur = p.m[np.ix_(k, k)] - p.m[np.ix_(k, j)] @ np.linalg.solve(
            p.m[np.ix_(j, j)], p.m[np.ix_(j, k)]
        )
    else:
        schur = p.m[np.ix_(k, k)]
    v = is_p_matrix(schur)
    if v.holds is True:
        return Certificate(STRONGLY_STABLE, "strong_stability", evidence=evidence)
    if v.holds is False:
        evidence["schur_witness"] = v.witness
        return Certificate(NOT_STRONGLY_STABLE, "strong_stability", evidence=evidence)
    return Certificate(
        INCONCLUSIVE,
        "strong_stability",
        evidence=evidence,
        note="tight-block Schur complement P status undecidable",
    )


def prop8_uniqueness_implies_stability(game, cap: int = ENUM_CAP) -> Certificate:
    """Uniqueness certificates transfer to stability.

    When I + G is a P-matrix the single equilibrium must be strongly
    stable; this operation computes it and verifies that, raising
    :class:`InternalConsistencyError` on any disagreement.
    """
    p = from_game(game)
    v = is_p_matrix(p.m)
    if v.holds is False:
        return Certificate(
            INCONCLUSIVE,
            "prop8_uniqueness_implies_stability",
            applicability=False,
            evidence={"witness": v.witness},
            note="no uniqueness guarantee for this game",
        )
    if v.holds is None:
        return Certificate(
            INCONCLUSIVE,
            "prop8_uniqueness_implies_stability",
            note="P status undecidable at this size",
        )
    sols = enumerate_solutions(p, cap=cap)
    if len(sols) != 1:
        raise InternalConsistencyError(
            f"P-matrix game enumerated {len(sols)} solutions instead of one"
        )
    stab = strong_stability(sols[0], p)
    if stab.verdict != STRONGLY_STABLE:
        raise InternalConsistencyError(
            "unique equilibrium failed the strong stability check"
        )
    evidence = dict(stab.evidence)
    evidence["equilibrium"] = tuple(float(x) for x in sols[0].z)
    return Certificate(
        STRONGLY_STABLE, "prop8_uniqueness_implies_stability", evidence=evidence
    )
