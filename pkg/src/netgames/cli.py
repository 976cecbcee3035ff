"""Command-line workflows over the library.

Subcommands: ``solve`` (equilibria with stability tags), ``certify``
(certificate battery plus exact ground truth), ``stability`` (per-solution
stability), ``experiment`` (Monte Carlo sweeps to CSV), ``ingest``
(edge lists to matrices), ``sweep-kappa`` (community determinant curves).

Machine-readable JSON goes to --out (or stdout when absent); the human
summary always goes to stderr.  Exit codes: 0 success, 1 errors, and 2
when ``certify`` concludes NotGuaranteedUnique (for scripting batches).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import certificates as certs
from . import experiments, games, ingest, lcp
from .errors import NetgamesError
from .matclass import P_EXACT_CAP, is_p_matrix

DEFAULT_CLI_CAP = 20

_SWEEP_KAPPA_DOMAIN = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(1)


def _say(*parts):
    print(*parts, file=sys.stderr)


def _emit(doc, out):
    text = json.dumps(doc, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
        _say(f"wrote {out}")
    else:
        sys.stdout.write(text)


def _fmt_value(v):
    if isinstance(v, float):
        return f"{v:.6g}"
    if isinstance(v, (list, tuple)):
        return "(" + ", ".join(_fmt_value(x) for x in v) + ")"
    return str(v)


def _cert_line(cert):
    bits = ", ".join(f"{k}={_fmt_value(v)}" for k, v in cert.evidence.items())
    tail = f"  [{cert.note}]" if cert.note else ""
    if not cert.applicability:
        tail += "  (not applicable)"
    return f"{cert.source:<30} {cert.verdict:<22} {bits}{tail}"


def _load_game(path):
    try:
        return games.load_game(path)
    except OSError as exc:
        raise NetgamesError(f"cannot read {path}: {exc}") from exc


def _solution_doc(sol, cert):
    doc = sol.to_dict()
    doc["degenerate"] = bool(sol.degenerate)
    doc["stability"] = cert.to_dict()
    return doc


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_solve(args):
    game = _load_game(args.game)
    p = lcp.from_game(game)
    doc = {"input": args.game, "n": p.d}
    if p.d <= args.cap:
        sols = lcp.enumerate_solutions(p, tol=args.tol)
        doc["method"] = "enumeration"
        doc["equilibria"] = [
            _solution_doc(s, certs.strong_stability(s, p)) for s in sols
        ]
        doc["count"] = len(sols)
        _say(f"{len(sols)} equilibrium(s) by support enumeration (n={p.d})")
        for entry in doc["equilibria"]:
            z = ", ".join(f"{v:.6g}" for v in entry["z"])
            flag = " degenerate" if entry["degenerate"] else ""
            _say(f"  ({z})  {entry['stability']['verdict']}{flag}")
    else:
        outcome = lcp.lemke(p)
        doc["method"] = "pivoting"
        if isinstance(outcome, lcp.RayTermination):
            doc["status"] = "ray-termination"
            doc["pivots"] = outcome.pivots
            doc["equilibria"] = []
            doc["count"] = 0
            _say(
                "complementary pivoting ended on a ray after "
                f"{outcome.pivots} pivots; no equilibrium found on this path"
            )
        else:
            doc["status"] = "solved"
            doc["equilibria"] = [
                _solution_doc(outcome, certs.strong_stability(outcome, p))
            ]
            doc["count"] = 1
            z = ", ".join(f"{v:.6g}" for v in outcome.z)
            _say(f"1 equilibrium by complementary pivoting: ({z})")
    _emit(doc, args.out)
    return 0


def _battery(game):
    """All certificates applicable to the game's kind, in a fixed order."""
    out = []
    if isinstance(game, games.MultiplexGame):
        layers = [l.a for l in game.layers]
        if game.n_layers == 2:
            kappa = float(game.weights[0])
            out.append(certs.prop1_pair_failure(layers[0], layers[1], kappa))
            out.append(certs.prop2_closed_classes(layers[0], layers[1], kappa))
            out.append(certs.prop3_perturbation(layers[0], layers[1], kappa))
            out.append(certs.prop4_twosided_failure(layers[0], layers[1], kappa))
        else:
            out.append(certs.prop2_closed_classes(layers, weights=game.weights))
    elif isinstance(game, games.MultilayerGame):
        out.append(certs.prop5_multilayer_failure(game))
        out.append(certs.prop6_oneway(game))
        out.append(certs.prop7_complements_bdd(game))
        blocks = [
            game.inter[l][k]
            for l in range(game.n_layers)
            for k in range(game.n_layers)
            if game.inter[l][k] is not None
        ]
        if blocks:
            out.append(certs.chain_cycle_degenerate(blocks))
    out.append(certs.existence_check(game))
    return out


#: Certificates whose non-Inconclusive verdicts are exact (not heuristic).
_EXACT_SOURCES = {
    "prop1_pair_failure",
    "prop2_closed_classes",
    "prop5_multilayer_failure",
    "prop6_oneway",
    "prop7_complements_bdd",
    "chain_cycle_degenerate",
}


def _cmd_certify(args):
    game = _load_game(args.game)
    battery = _battery(game)
    m = np.eye(len(game.effective_targets())) + game.effective_matrix()
    truth = is_p_matrix(m)

    overall = certs.INCONCLUSIVE
    if truth.holds is True:
        overall = certs.GUARANTEED_UNIQUE
    elif truth.holds is False:
        overall = certs.NOT_GUARANTEED_UNIQUE
    else:
        for cert in battery:
            if cert.source in _EXACT_SOURCES and not cert.note and cert.verdict in (
                certs.GUARANTEED_UNIQUE,
                certs.NOT_GUARANTEED_UNIQUE,
            ):
                overall = cert.verdict
                break

    witness = truth.witness
    if isinstance(witness, tuple):
        witness = [int(i) for i in witness]
    elif witness is not None:
        witness = float(witness)
    doc = {
        "input": args.game,
        "certificates": [c.to_dict() for c in battery],
        "ground_truth": {"is_p": truth.holds, "method": truth.method, "witness": witness},
        "overall": overall,
    }
    _say(f"certificates for {args.game}:")
    for cert in battery:
        _say("  " + _cert_line(cert))
    _say(f"ground truth ({truth.method}): is_p = {truth.holds}")

    if len(game.effective_targets()) <= args.cap:
        sols = lcp.enumerate_solutions(lcp.from_game(game))
        doc["equilibrium_count"] = len(sols)
        _say(f"equilibria at the supplied targets: {len(sols)}")
    _say(f"overall: {overall}")
    _emit(doc, args.out)
    return 2 if overall == certs.NOT_GUARANTEED_UNIQUE else 0


def _cmd_stability(args):
    game = _load_game(args.game)
    p = lcp.from_game(game)
    if p.d > args.cap:
        raise NetgamesError(
            f"stability needs enumeration; n={p.d} exceeds cap {args.cap}"
        )
    sols = lcp.enumerate_solutions(p, tol=args.tol)
    doc = {"input": args.game, "equilibria": []}
    _say(f"{len(sols)} equilibrium(s)")
    for sol in sols:
        cert = certs.strong_stability(sol, p)
        doc["equilibria"].append(_solution_doc(sol, cert))
        z = ", ".join(f"{v:.6g}" for v in sol.z)
        _say(f"  ({z})  {cert.verdict}  " + _cert_line(cert))
    _emit(doc, args.out)
    return 0


def _cmd_experiment(args):
    if args.mode == "multilayer":
        cfg = experiments.SweepConfig(
            n_range=(5,),
            trials=args.trials,
            s=args.s,
            kappa=args.kappa,
            seed=args.seed,
            mode="multilayer",
        )
        records, map_rows = experiments.run_multilayer_sweep(cfg, workers=args.workers)
        experiments.write_records_csv(records, args.out + "_records.csv")
        experiments.write_map_csv(map_rows, args.out + "_map.csv")
        unique = {
            name: sum(1 for r in map_rows if r[name]) / len(map_rows)
            for name, _, _ in experiments.MULTILAYER_REGIMES
        }
        for name, frac in unique.items():
            _say(f"{name:<10} unique fraction {frac:.4f}")
        _say(f"wrote {args.out}_records.csv and {args.out}_map.csv")
        return 0
    cfg = experiments.SweepConfig(
        n_range=tuple(range(args.n_min, args.n_max + 1)),
        trials=args.trials,
        s=args.s,
        kappa=args.kappa,
        seed=args.seed,
        mode=args.mode,
        layer1_filter=args.layer1_filter,
    )
    records, summaries = experiments.run_multiplex_sweep(
        cfg, workers=args.workers, symmetrize=args.symmetrize
    )
    experiments.write_records_csv(records, args.out + "_records.csv")
    experiments.write_summary_csv(summaries, args.out + "_summary.csv")
    for row in summaries:
        _say(
            f"n={row['n']} s={row['s']} fired={row['fired']} "
            f"false-detection rate={row['rate']:.4f}"
        )
    _say(f"wrote {args.out}_records.csv and {args.out}_summary.csv")
    return 0


def _cmd_ingest(args):
    weight_col = None if args.no_weight else args.weight
    edges, report = ingest.parse_edge_list(
        args.edges, src=args.src, dst=args.dst, weight=weight_col
    )
    _say(report.summary())
    if args.weight_mode == "normalize":
        matrix = ingest.normalize_interactions(edges)
    elif args.weight_mode == "inverse-degree":
        matrix, dom = ingest.attention_weights(edges, mode="inverse-degree")
        _say(
            f"attention rows: max row sum {dom['max_row_sum']:g}, "
            f"strictly dominant: {dom['strictly_dominant']}"
        )
    elif args.weight_mode == "constant":
        matrix, dom = ingest.attention_weights(edges, mode="constant", c=args.c)
        _say(
            f"attention rows: max row sum {dom['max_row_sum']:g}, "
            f"strictly dominant: {dom['strictly_dominant']}"
        )
    else:
        matrix = games.AdjacencyMatrix(
            (ingest.as_undirected(edges.to_matrix().a) != 0.0).astype(np.float64)
        )
    if args.merge:
        other_edges, other_report = ingest.parse_edge_list(
            args.merge, src=args.src, dst=args.dst, weight=weight_col
        )
        _say(f"merge layer: {other_report.summary()}")
        other = ingest.normalize_interactions(other_edges)
        matrix = ingest.merge_layers(matrix, other, alpha=args.alpha)
    games.save_matrix(matrix, args.out)
    _say(f"wrote {args.out} ({matrix.n} nodes)")
    return 0


def _cmd_sweep_kappa(args):
    a = games.load_matrix(args.layer_a)
    b = games.load_matrix(args.layer_b)
    if a.shape != b.shape:
        raise NetgamesError(
            f"layers must share one node universe ({a.shape[0]} vs {b.shape[0]} nodes)"
        )
    union = np.maximum(np.abs(a), np.abs(b))
    grid = np.linspace(args.grid_start, args.grid_stop, args.grid_points)
    lines = []
    for cid in range(args.communities):
        stream = experiments.trial_stream(args.seed, _SWEEP_KAPPA_DOMAIN, cid, 0)
        nodes = ingest.extract_community(union, args.community_size, stream)
        da = ingest.restrict_to(a, nodes)
        db = ingest.restrict_to(b, nodes)
        dets = experiments.kappa_determinant_sweep(da, db, grid)
        for k, det in zip(grid, dets):
            lines.append(f"{cid},{k},{det}")
        _say(
            f"community {cid}: dets in [{dets.min():.4g}, {dets.max():.4g}], "
            f"positive at kappa=1: {dets[-1] > 0}"
        )
    with open(args.out, "w") as fh:
        fh.write("community_id,kappa,determinant\n")
        for line in lines:
            fh.write(line + "\n")
    _say(f"wrote {args.out}")
    return 0


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="netgames", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", default=None, help="result file (JSON or CSV)")

    p = sub.add_parser("solve", help="compute equilibria with stability tags")
    p.add_argument("game", help="game JSON file")
    p.add_argument("--cap", type=int, default=DEFAULT_CLI_CAP)
    p.add_argument("--tol", type=float, default=lcp.FEAS_TOL)
    common(p)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("certify", help="run the certificate battery")
    p.add_argument("game")
    p.add_argument("--cap", type=int, default=DEFAULT_CLI_CAP)
    common(p)
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("stability", help="stability of every equilibrium")
    p.add_argument("game")
    p.add_argument("--cap", type=int, default=DEFAULT_CLI_CAP)
    p.add_argument("--tol", type=float, default=lcp.FEAS_TOL)
    common(p)
    p.set_defaults(func=_cmd_stability)

    p = sub.add_parser("experiment", help="Monte Carlo certificate sweeps")
    p.add_argument("--mode", choices=experiments.MODES, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=5000)
    p.add_argument("--s", type=float, default=0.125)
    p.add_argument("--kappa", type=float, default=0.5)
    p.add_argument("--n-min", type=int, default=3)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--symmetrize", action="store_true")
    p.add_argument(
        "--layer1-filter",
        choices=experiments.LAYER1_FILTERS,
        default="eigenvalue",
    )
    p.add_argument("--out", required=True, help="output path prefix")
    p.set_defaults(func=_cmd_experiment)

    p = sub.add_parser("ingest", help="edge-list CSV to adjacency matrix JSON")
    p.add_argument("edges", help="edge-list CSV file")
    p.add_argument("--src", default="src")
    p.add_argument("--dst", default="dst")
    p.add_argument("--weight", default="weight")
    p.add_argument("--no-weight", action="store_true", help="treat edges as weight 1")
    p.add_argument(
        "--weight-mode",
        choices=("normalize", "inverse-degree", "constant", "binary"),
        default="normalize",
    )
    p.add_argument("--c", type=float, default=None, help="constant attention weight")
    p.add_argument("--merge", default=None, help="second edge-list CSV to blend in")
    p.add_argument("--alpha", type=float, default=2.0 / 3.0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_ingest)

    p = sub.add_parser("sweep-kappa", help="community determinant curves")
    p.add_argument("layer_a")
    p.add_argument("layer_b")
    p.add_argument("--communities", type=int, default=10)
    p.add_argument("--community-size", type=int, default=30)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--grid-start", type=float, default=0.2)
    p.add_argument("--grid-stop", type=float, default=1.0)
    p.add_argument("--grid-points", type=int, default=33)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_sweep_kappa)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except NetgamesError as exc:
        _say(f"error: {exc}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
