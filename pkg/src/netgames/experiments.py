"""Seeded Monte Carlo studies of certificate quality on random games.

Two sweep families: multiplex sweeps measure false-detection rates of the
perturbation (positive) and two-sided (negative) eigenvalue certificates
against exact ground truth, and multilayer sweeps map how inter-layer
coupling strength erodes uniqueness across thousands of paired layers.

Randomness is counter-based: every trial derives its own generator from
(seed, domain, cell, trial), so results are identical no matter how trials
are scheduled or how many workers run them.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .certificates import (
    GUARANTEED_UNIQUE,
    NOT_GUARANTEED_UNIQUE,
    prop3_perturbation,
    prop4_twosided_failure,
)
from .errors import CapacityError, InfeasibleError, InvalidParameterError
from .games import AdjacencyMatrix
from .matclass import P_EXACT_CAP, is_p_matrix, spectral

MODES = ("multiplex-prop3", "multiplex-prop4", "multilayer")

RECORD_HEADER = "trial,n,s,kappa,mode,verdict,ground_truth,false_detection"
SUMMARY_HEADER = "n,s,mode,rate,trials"
MAP_HEADER = (
    "layer1,trial,lambda_min_layer1,lambda_min_layer2,layer2_p,"
    "normal,one_way,weak,very_weak"
)

#: Give up on a trial whose base layer keeps failing the uniqueness filter.
MAX_REDRAWS = 10_000

#: (name, inter-layer draw scale, keep the reverse block) per coupling regime.
MULTILAYER_REGIMES = (
    ("normal", 1.0, True),
    ("one_way", 1.0, False),
    ("weak", 0.5, True),
    ("very_weak", 0.05, True),
)

_DOMAIN_MULTIPLEX = 1
_DOMAIN_MULTILAYER = 2
_DOMAIN_FIXTURES = 3

FIXTURE_SEED = 20240817
FIXTURE_FILE = "multilayer_layer1_fixtures.json"


LAYER1_FILTERS = ("eigenvalue", "p-matrix")


@dataclass(frozen=True)
class SweepConfig:
    n_range: tuple
    trials: int
    s: float
    kappa: float
    seed: int
    mode: str
    #: How "base layer has a unique equilibrium" is screened during rejection.
    #: "eigenvalue" keeps draws with lambda_min_re > -1 (the directed
    #: real-part convention, matching the population the published
    #: counterexamples were drawn from); "p-matrix" applies the exact test.
    layer1_filter: str = "eigenvalue"

    def __post_init__(self):
        if self.mode not in MODES:
            raise InvalidParameterError(f"unknown sweep mode {self.mode!r}")
        if self.layer1_filter not in LAYER1_FILTERS:
            raise InvalidParameterError(
                f"unknown layer-1 filter {self.layer1_filter!r}"
            )
        if self.trials < 1:
            raise InvalidParameterError("trials must be at least 1")
        if not self.s > 0.0:
            raise InvalidParameterError("layer-2 strength s must be positive")
        if not 0.0 <= self.kappa <= 1.0:
            raise InvalidParameterError("kappa must lie in [0, 1]")
        if self.seed < 0:
            raise InvalidParameterError("seed must be nonnegative")
        object.__setattr__(self, "n_range", tuple(int(n) for n in self.n_range))
        for n in self.n_range:
            if n < 2:
                raise InvalidParameterError("agent counts must be at least 2")


@dataclass(frozen=True)
class ExperimentRecord:
    trial: int
    n: int
    s: float
    kappa: float
    mode: str
    verdict: str
    ground_truth: bool
    false_detection: bool

    def csv_row(self) -> str:
        return ",".join(
            (
                str(self.trial),
                str(self.n),
                str(self.s),
                str(self.kappa),
                self.mode,
                self.verdict,
                str(self.ground_truth).lower(),
                str(self.false_detection).lower(),
            )
        )


def trial_stream(seed: int, domain: int, cell: int, trial: int) -> np.random.Generator:
    """Generator for one trial, independent of evaluation order."""
    word = (
        (np.uint64(domain) << np.uint64(56))
        | (np.uint64(cell) << np.uint64(32))
        | np.uint64(trial)
    )
    return np.random.Generator(np.random.Philox(key=[np.uint64(seed), word]))


def gen_random_layer(
    n: int, half_width: float, stream: np.random.Generator, symmetrize: bool = False
) -> AdjacencyMatrix:
    """Dense layer with off-diagonal weights uniform on (-w, +w)."""
    if n < 2:
        raise InvalidParameterError("need at least two agents")
    if not half_width > 0.0:
        raise InvalidParameterError("half_width must be positive")
    a = stream.uniform(-half_width, half_width, size=(n, n))
    if symmetrize:
        upper = np.triu(a, 1)
        a = upper + upper.T
    np.fill_diagonal(a, 0.0)
    return AdjacencyMatrix(a)


def _draw_p_layer(n, half_width, stream, symmetrize, layer1_filter="p-matrix"):
    eye = np.eye(n)
    for _ in range(MAX_REDRAWS):
        layer = gen_random_layer(n, half_width, stream, symmetrize=symmetrize)
        if layer1_filter == "eigenvalue":
            if spectral(layer.a).lambda_min_re > -1.0:
                return layer
        elif is_p_matrix(eye + layer.a).holds is True:
            return layer
    raise InfeasibleError(
        f"no base layer with guaranteed-unique equilibrium in {MAX_REDRAWS} draws "
        f"(n={n}, half_width={half_width})"
    )


def _one_multiplex_trial(seed, n, trial, s, kappa, mode, symmetrize, layer1_filter):
    stream = trial_stream(seed, _DOMAIN_MULTIPLEX, n, trial)
    g1 = _draw_p_layer(n, 1.0, stream, symmetrize, layer1_filter)
    g2 = gen_random_layer(n, s, stream, symmetrize=symmetrize)
    if mode == "multiplex-prop3":
        cert = prop3_perturbation(g1, g2, kappa)
        fired = cert.verdict == GUARANTEED_UNIQUE
        contradicts = lambda truth: not truth
    else:
        cert = prop4_twosided_failure(g1, g2, kappa)
        fired = cert.verdict == NOT_GUARANTEED_UNIQUE
        contradicts = lambda truth: truth
    par = kappa * g1.a + (1.0 - kappa) * g2.a
    truth = is_p_matrix(np.eye(n) + par).holds
    return ExperimentRecord(
        trial=trial,
        n=n,
        s=s,
        kappa=kappa,
        mode=mode,
        verdict=cert.verdict,
        ground_truth=bool(truth),
        false_detection=bool(fired and contradicts(truth)),
    )


def _multiplex_chunk(args):
    seed, n, start, stop, s, kappa, mode, symmetrize, layer1_filter = args
    return [
        _one_multiplex_trial(seed, n, t, s, kappa, mode, symmetrize, layer1_filter)
        for t in range(start, stop)
    ]


def _chunks(trials, workers):
    size = max(1, -(-trials // (workers * 8)))
    return [(start, min(start + size, trials)) for start in range(0, trials, size)]


def run_multiplex_sweep(cfg: SweepConfig, workers: int = 1, symmetrize: bool = False):
    """Records plus per-cell false-detection summaries for one sweep.

    Per trial: reject-sample a base layer until it passes the configured
    uniqueness screen, draw an unfiltered second layer at strength ``s``,
    evaluate the mode's certificate, and compare against exact ground truth
    (the principal-minor test on the overlay, so every requested size must
    stay within its cap).  The summary rate conditions on the certificate
    actually firing: rate = false detections / fired.
    """
    if cfg.mode not in ("multiplex-prop3", "multiplex-prop4"):
        raise InvalidParameterError("config mode is not a multiplex sweep")
    for n in cfg.n_range:
        if n > P_EXACT_CAP:
            raise CapacityError(
                f"ground truth needs the exact P test; n={n} exceeds {P_EXACT_CAP}"
            )
    jobs = [
        (
            cfg.seed,
            n,
            start,
            stop,
            cfg.s,
            cfg.kappa,
            cfg.mode,
            symmetrize,
            cfg.layer1_filter,
        )
        for n in cfg.n_range
        for start, stop in _chunks(cfg.trials, max(1, workers))
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_multiplex_chunk, jobs))
    else:
        chunks = [_multiplex_chunk(job) for job in jobs]
    records = [rec for chunk in chunks for rec in chunk]

    summaries = []
    for n in cfg.n_range:
        cell = [r for r in records if r.n == n]
        fired = sum(
            1
            for r in cell
            if r.verdict
            == (
                GUARANTEED_UNIQUE
                if cfg.mode == "multiplex-prop3"
                else NOT_GUARANTEED_UNIQUE
            )
        )
        false = sum(1 for r in cell if r.false_detection)
        rate = false / fired if fired else 0.0
        summaries.append(
            {
                "n": n,
                "s": cfg.s,
                "mode": cfg.mode,
                "rate": rate,
                "trials": len(cell),
                "fired": fired,
            }
        )
    return records, summaries


# ---------------------------------------------------------------------------
# multilayer sweep
# ---------------------------------------------------------------------------


def generate_layer1_fixtures(seed: int = FIXTURE_SEED, count: int = 6, n: int = 5):
    """Regenerate the frozen base layers by rejection from a fixed seed."""
    layers = []
    for idx in range(count):
        stream = trial_stream(seed, _DOMAIN_FIXTURES, idx, 0)
        layers.append(_draw_p_layer(n, 1.0, stream, symmetrize=False))
    return layers


def load_layer1_fixtures():
    """The six frozen base layers used by the multilayer sweep."""
    with resources.files("netgames").joinpath("data").joinpath(FIXTURE_FILE).open() as fh:
        doc = json.load(fh)
    n = doc["n"]
    return [
        AdjacencyMatrix(np.array(entries, dtype=np.float64).reshape(n, n))
        for entries in doc["layers"]
    ]


def _assemble_supra(g1, g2, u12, u21):
    n = g1.shape[0]
    supra = np.zeros((2 * n, 2 * n))
    supra[:n, :n] = g1
    supra[n:, n:] = g2
    supra[:n, n:] = u12
    supra[n:, :n] = u21
    return supra


def _one_multilayer_trial(seed, fixtures, layer1_idx, trial):
    g1 = fixtures[layer1_idx]
    n = g1.n
    stream = trial_stream(seed, _DOMAIN_MULTILAYER, layer1_idx, trial)
    g2 = gen_random_layer(n, 1.0, stream)
    u12 = stream.uniform(-1.0, 1.0, size=(n, n))
    u21 = stream.uniform(-1.0, 1.0, size=(n, n))
    eye = np.eye(2 * n)
    outcomes = {}
    for name, scale, keep_reverse in MULTILAYER_REGIMES:
        supra = _assemble_supra(
            g1.a, g2.a, scale * u12, scale * u21 if keep_reverse else np.zeros((n, n))
        )
        outcomes[name] = bool(is_p_matrix(eye + supra).holds)
    lam2 = spectral(g2.a).lambda_min_re
    layer2_p = bool(is_p_matrix(np.eye(n) + g2.a).holds)
    return layer1_idx, trial, lam2, layer2_p, outcomes


def _multilayer_chunk(args):
    seed, layer1_idx, start, stop = args
    fixtures = load_layer1_fixtures()
    return [
        _one_multilayer_trial(seed, fixtures, layer1_idx, t)
        for t in range(start, stop)
    ]


def run_multilayer_sweep(cfg: SweepConfig, workers: int = 1):
    """Uniqueness outcomes for paired layers under four coupling regimes.

    Each of the six frozen base layers meets ``trials`` random second
    layers; each pairing shares one inter-layer draw that the regimes
    rescale (the one-way regime zeroes the reverse block instead).  Returns
    per-instance records and a map sorted by the two layers' bottom
    eigenvalues (real parts).
    """
    if cfg.mode != "multilayer":
        raise InvalidParameterError("config mode is not the multilayer sweep")
    fixtures = load_layer1_fixtures()
    lam1 = [spectral(g.a).lambda_min_re for g in fixtures]
    jobs = [
        (cfg.seed, idx, start, stop)
        for idx in range(len(fixtures))
        for start, stop in _chunks(cfg.trials, max(1, workers))
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_multilayer_chunk, jobs))
    else:
        chunks = [_multilayer_chunk(job) for job in jobs]
    raw = [row for chunk in chunks for row in chunk]

    records = []
    map_rows = []
    for layer1_idx, trial, lam2, layer2_p, outcomes in raw:
        for name, scale, _ in MULTILAYER_REGIMES:
            unique = outcomes[name]
            records.append(
                ExperimentRecord(
                    trial=trial,
                    n=fixtures[0].n,
                    s=scale,
                    kappa=0.0,
                    mode=f"multilayer-{name}",
                    verdict=GUARANTEED_UNIQUE if unique else NOT_GUARANTEED_UNIQUE,
                    ground_truth=unique,
                    false_detection=False,
                )
            )
        map_rows.append(
            {
                "layer1": layer1_idx,
                "trial": trial,
                "lambda_min_layer1": lam1[layer1_idx],
                "lambda_min_layer2": lam2,
                "layer2_p": layer2_p,
                **outcomes,
            }
        )
    map_rows.sort(
        key=lambda r: (r["lambda_min_layer1"], r["lambda_min_layer2"], r["trial"])
    )
    return records, map_rows


# ---------------------------------------------------------------------------
# determinant curve and CSV emitters
# ---------------------------------------------------------------------------

DEFAULT_KAPPA_GRID = tuple(np.linspace(0.2, 1.0, 33))


def kappa_determinant_sweep(g_a, g_b, kappa_grid=DEFAULT_KAPPA_GRID) -> np.ndarray:
    """det(I + k*g_a + (1-k)*g_b) along a grid of mixing weights."""
    a = g_a.a if isinstance(g_a, AdjacencyMatrix) else np.asarray(g_a, dtype=np.float64)
    b = g_b.a if isinstance(g_b, AdjacencyMatrix) else np.asarray(g_b, dtype=np.float64)
    if a.shape != b.shape:
        raise InvalidParameterError("layers differ in size")
    grid = np.asarray(list(kappa_grid), dtype=np.float64)
    if grid.size == 0 or np.any(grid < 0.0) or np.any(grid > 1.0):
        raise InvalidParameterError("kappa grid values must lie in [0, 1]")
    eye = np.eye(a.shape[0])
    stack = eye + grid[:, None, None] * a + (1.0 - grid)[:, None, None] * b
    return np.linalg.det(stack)


def write_records_csv(records, path) -> None:
    with open(path, "w") as fh:
        fh.write(RECORD_HEADER + "\n")
        for rec in records:
            fh.write(rec.csv_row() + "\n")


def write_summary_csv(summaries, path) -> None:
    with open(path, "w") as fh:
        fh.write(SUMMARY_HEADER + "\n")
        for row in summaries:
            fh.write(
                f"{row['n']},{row['s']},{row['mode']},{row['rate']},{row['trials']}\n"
            )


def write_map_csv(map_rows, path) -> None:
    with open(path, "w") as fh:
        fh.write(MAP_HEADER + "\n")
        for r in map_rows:
            cells = (
                str(r["layer1"]),
                str(r["trial"]),
                str(r["lambda_min_layer1"]),
                str(r["lambda_min_layer2"]),
                str(r["layer2_p"]).lower(),
                str(r["normal"]).lower(),
                str(r["one_way"]).lower(),
                str(r["weak"]).lower(),
                str(r["very_weak"]).lower(),
            )
            fh.write(",".join(cells) + "\n")
