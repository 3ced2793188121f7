"""Command-line entry point.

One subcommand per analysis; every run validates its parameters, writes
its artifacts (CSV/JSON, plus figures on the reporting paths) into the
output directory together with a manifest, and prints a single-line JSON
summary to stdout. Exit codes: 0 success, 2 usage or validation error,
1 runtime error. A JSON config file may supply any flag; explicit flags
win. EVOSOFT_THREADS caps worker processes for replicate ensembles.
"""

import argparse
import json
import os
import sys

import numpy as np

from . import competition, complexity, depgraph, fits, graphs, growth
from . import motifs, plotting, recipes, reports, selection, temporal


class UsageError(Exception):
    pass


def _validated(factory, *args, **kwargs):
    """Parameter-object construction; bad values are usage errors."""
    try:
        return factory(*args, **kwargs)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _summary(payload):
    print(json.dumps(payload, sort_keys=True, default=float))


def _finish(args, command, parameters, seed, artifacts, summary):
    manifest = reports.write_manifest(args.out, command, parameters, seed,
                                      artifacts)
    _summary(summary)
    return 0


def _float_list(text):
    return [float(x) for x in text.replace(";", ",").split(",") if x.strip()]


# ----------------------------------------------------------------- grow

def cmd_grow(args):
    params = _validated(growth.GrowthParams, m=args.m, p=args.p, q=args.q,
                        n_final=args.N, n0=args.n0, seed=args.seed)
    graph, traj = growth.grow_network(params)
    reports.ensure_outdir(args.out)
    edges_path = os.path.join(args.out, "edges.txt")
    graphs.write_edge_list(graph, edges_path)
    traj_path = os.path.join(args.out, "trajectory.csv")
    growth.write_trajectory_csv(traj, traj_path)
    artifacts = [edges_path, traj_path]
    if args.figures:
        artifacts.append(plotting.avg_degree_vs_logn(
            traj.n, traj.avg_degree, os.path.join(args.out, "growth.png"),
            title="average degree along growth"))
    summary = {"nodes": graph.node_count, "edges": graph.edge_count,
               "avg_degree": graph.average_degree(),
               "regime": growth.classify_regime(args.m, args.q)}
    return _finish(args, "grow",
                   {"m": args.m, "p": args.p, "q": args.q, "N": args.N,
                    "n0": params.n0},
                   args.seed, artifacts, summary)


# --------------------------------------------------------------- degfit

def cmd_degfit(args):
    if (args.edges is None) == (args.samples is None):
        raise UsageError("provide exactly one of --edges or --samples")
    if args.edges:
        graph = graphs.read_edge_list(args.edges)
        indeg, outdeg = graph.degrees()
        data = indeg if args.which == "in" else outdeg
        data = data[data >= 1].astype(float)
    else:
        data = np.asarray(reports.read_samples_csv(args.samples))
    if data.size < 2:
        raise UsageError("need at least 2 positive samples")
    try:
        if args.k_min == "scan":
            fit, ks = fits.scan_powerlaw_kmin(data, shift=args.shift)
        else:
            fit = fits.fit_powerlaw_mle(data, k_min=float(args.k_min),
                                        shift=args.shift)
            xm = fit.k_min - args.shift
            ks = fits.ks_distance(
                data[data >= fit.k_min],
                lambda t: (t / xm) ** (1.0 - fit.gamma))
        llr, exp_fit, _ = fits.loglikelihood_exp_vs_powerlaw(
            data, shift=args.shift)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    reports.ensure_outdir(args.out)
    vals, p_gt = fits.empirical_ccdf(data)
    ccdf_path = os.path.join(args.out, "ccdf.csv")
    reports.write_rows_csv(ccdf_path, ["value", "p_gt"], zip(vals, p_gt))
    fit_path = os.path.join(args.out, "fit.json")
    payload = {**fit.as_dict(), "ks_distance": ks,
               "exponential_rate": exp_fit.rate,
               "llr_exp_minus_powerlaw": llr}
    reports.write_json(payload, fit_path)
    artifacts = [ccdf_path, fit_path]
    if args.figures:
        mask = vals >= fit.k_min
        scale = p_gt[mask][0] if np.any(mask) else 1.0
        fy = scale * (vals[mask] / fit.k_min) ** (1.0 - fit.gamma)
        artifacts.append(plotting.ccdf_loglog(
            vals, p_gt, os.path.join(args.out, "ccdf.png"),
            fit_line=(vals[mask], fy, f"gamma {fit.gamma:.2f}")))
    return _finish(args, "degfit",
                   {"which": args.which, "k_min": args.k_min,
                    "shift": args.shift},
                   None, artifacts, payload)


# --------------------------------------------------------------- motifs

def cmd_motifs(args):
    graph = graphs.read_edge_list(args.edges)
    try:
        if args.mode == "exact":
            census = motifs.enumerate_subgraphs(graph, args.k)
        else:
            census = motifs.sample_subgraphs(graph, args.k, args.samples,
                                             args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    reports.ensure_outdir(args.out)
    census_path = os.path.join(args.out, "census.csv")
    motifs.write_census_csv(census, census_path)
    artifacts = [census_path]
    summary = {"k": args.k, "classes": len(census.counts),
               "total": census.total, "exact": census.exact}
    if args.null > 0:
        scores = motifs.motif_zscores(graph, args.k, args.null, args.seed,
                                      exact=(args.mode == "exact"),
                                      n_samples=args.samples)
        z_path = os.path.join(args.out, "zscores.csv")
        reports.write_rows_csv(
            z_path, ["code", "observed", "null_mean", "null_std", "z"],
            [(code, s.observed, s.null_mean, s.null_std,
              "nan" if s.z is None else s.z)
             for code, s in sorted(scores.per_class.items())])
        artifacts.append(z_path)
        summary["null_samples"] = args.null
    return _finish(args, "motifs",
                   {"k": args.k, "mode": args.mode, "samples": args.samples,
                    "null": args.null},
                   args.seed, artifacts, summary)


# -------------------------------------------------------------- extract

def cmd_extract(args):
    profiles = depgraph.builtin_profiles()
    if args.profile in profiles:
        profile = profiles[args.profile]
    elif os.path.exists(args.profile):
        profile = _validated(depgraph.load_profile, args.profile)
    else:
        raise UsageError(f"unknown profile: {args.profile}")
    try:
        report = depgraph.scan_tree(args.root, profile,
                                    include_external=args.include_external)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    reports.ensure_outdir(args.out)
    edges_path = os.path.join(args.out, "edges.txt")
    graphs.write_edge_list(report.graph, edges_path)
    labels_path = os.path.join(args.out, "labels.csv")
    depgraph.write_labels_csv(report, labels_path)
    unresolved_path = os.path.join(args.out, "unresolved.csv")
    depgraph.write_unresolved_csv(report, unresolved_path)
    summary = {"nodes": report.graph.node_count,
               "edges": report.graph.edge_count,
               "external": report.external_count,
               "unresolved": len(report.unresolved),
               "skipped": len(report.skipped)}
    return _finish(args, "extract",
                   {"root": os.path.abspath(args.root),
                    "profile": profile.name,
                    "include_external": args.include_external},
                   None, [edges_path, labels_path, unresolved_path], summary)


# -------------------------------------------------------------- compete

def cmd_compete(args):
    mu = _float_list(args.mu)
    rho0 = _float_list(args.rho0)
    params = _validated(competition.CompetitionParams, mu=mu, dt=args.dt,
                        steps=args.steps)
    try:
        times, states = competition.integrate_competition(
            params, rho0, record_every=args.record_every)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    reports.ensure_outdir(args.out)
    traj_path = os.path.join(args.out, "trajectory.csv")
    header = ["t"] + [f"rho_{i}" for i in range(len(mu))]
    reports.write_rows_csv(traj_path, header,
                           ([t] + list(row) for t, row in zip(times, states)))
    winner = int(np.argmax(states[-1]))
    summary = {"winner": winner, "final_share": float(states[-1][winner]),
               "t_final": float(times[-1]),
               "simplex_drift": float(abs(states[-1].sum() - 1.0))}
    return _finish(args, "compete",
                   {"mu": mu, "rho0": rho0, "dt": args.dt,
                    "steps": args.steps},
                   None, [traj_path], summary)


# -------------------------------------------------------------- lattice

def cmd_lattice(args):
    params = _validated(competition.LatticeParams, side=args.side,
                        capacity=args.capacity,
                        innovation_rate=args.innovation_rate,
                        steps=args.steps, seed=args.seed,
                        n_initial=args.n_initial)
    diversity, state = competition.run_lattice(params)
    reports.ensure_outdir(args.out)
    div_path = os.path.join(args.out, "diversity.csv")
    competition.write_diversity_csv(diversity, div_path)
    counts = competition.rank_popularity(state)
    rank_path = os.path.join(args.out, "rank_popularity.csv")
    competition.write_rank_popularity_csv(counts, rank_path)
    artifacts = [div_path, rank_path]
    if args.figures:
        artifacts.append(plotting.diversity_series(
            diversity, args.capacity,
            os.path.join(args.out, "diversity.png")))
    summary = {"final_diversity": int(diversity[-1]),
               "sweeps_run": int(len(diversity)),
               "capacity": args.capacity}
    return _finish(args, "lattice",
                   {"side": args.side, "capacity": args.capacity,
                    "innovation_rate": args.innovation_rate,
                    "steps": args.steps, "n_initial": args.n_initial},
                   args.seed, artifacts, summary)


# ------------------------------------------------------------------ fds

def cmd_fds(args):
    params = _validated(selection.FdsParams, beta=args.beta, J=args.J,
                        N=args.N, innovation_rate=args.innovation_rate,
                        delta_z=args.delta_z, generations=args.generations,
                        seed=args.seed)
    traj, events = selection.run_fds(params)
    reports.ensure_outdir(args.out)
    traj_path = os.path.join(args.out, "trajectory.csv")
    selection.write_trajectory_csv(traj, traj_path)
    events_path = os.path.join(args.out, "events.csv")
    selection.write_events_csv(events, events_path)
    artifacts = [traj_path, events_path]
    if args.figures:
        artifacts.append(plotting.trait_trajectories(
            [(f"J={args.J}, beta={args.beta}", traj.mean_z)],
            os.path.join(args.out, "trajectory.png")))
    try:
        barrier = selection.invasion_barrier(args.J, args.beta, args.N)
    except ValueError:
        barrier = None
    summary = {"final_mean_z": float(traj.mean_z[-1]),
               "punctuation_events": len(events),
               "barrier": barrier if barrier is None else float(barrier)}
    return _finish(args, "fds",
                   {"beta": args.beta, "J": args.J, "N": args.N,
                    "innovation_rate": args.innovation_rate,
                    "delta_z": args.delta_z,
                    "generations": args.generations},
                   args.seed, artifacts, summary)


# ----------------------------------------------------------------- dgbd

def cmd_dgbd(args):
    data = reports.read_samples_csv(args.input)
    try:
        fit = fits.fit_dgbd(data)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    reports.ensure_outdir(args.out)
    fit_path = os.path.join(args.out, "dgbd_fit.json")
    reports.write_json(fit.as_dict(), fit_path)
    artifacts = [fit_path]
    if args.figures:
        artifacts.append(plotting.rank_frequency(
            np.asarray(data, dtype=float),
            os.path.join(args.out, "rank_frequency.png"),
            fit_curve=(fit.evaluate(np.arange(1, len(data) + 1)),
                       f"DGBD a={fit.a:.2f} b={fit.b:.2f}")))
    return _finish(args, "dgbd", {"input": os.path.abspath(args.input)},
                   None, artifacts, fit.as_dict())


# -------------------------------------------------------------- weibull

def cmd_weibull(args):
    data = reports.read_samples_csv(args.input)
    try:
        comparison = temporal.weibull_vs_exponential(data)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    reports.ensure_outdir(args.out)
    fit_path = os.path.join(args.out, "weibull_fit.json")
    reports.write_json(comparison.as_dict(), fit_path)
    artifacts = [fit_path]
    if args.figures:
        vals, p_gt = fits.empirical_ccdf(np.asarray(data))
        artifacts.append(plotting.weibull_diagnostic(
            vals, p_gt, comparison.alpha, comparison.mean_T,
            os.path.join(args.out, "weibull.png")))
    return _finish(args, "weibull", {"input": os.path.abspath(args.input)},
                   None, artifacts, comparison.as_dict())


# ----------------------------------------------------------- complexity

def cmd_complexity(args):
    if not os.path.exists(args.input):
        raise UsageError(f"no such input: {args.input}")
    with open(args.input, "rb") as fh:
        payload = fh.read()
    if not payload:
        raise UsageError("empty input")
    try:
        table = complexity.build_ctm_table(args.block, args.ctm_steps)
        report = complexity.complexity_report(payload, table)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    reports.ensure_outdir(args.out)
    report_path = os.path.join(args.out, "complexity.json")
    reports.write_json(report.as_dict(), report_path)
    artifacts = [report_path]
    if args.emit_table:
        table_path = os.path.join(args.out, "ctm_table.csv")
        complexity.write_ctm_csv(table, table_path)
        artifacts.append(table_path)
    return _finish(args, "complexity",
                   {"input": os.path.abspath(args.input),
                    "block": args.block, "ctm_steps": args.ctm_steps},
                   None, artifacts, report.as_dict())


# ------------------------------------------------------------- temporal

def cmd_temporal(args):
    try:
        log = temporal.read_event_log(args.input)
        samples = temporal.inter_event_times(log, group_by=args.group_by)
        comparison = temporal.weibull_vs_exponential(samples.samples)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    reports.ensure_outdir(args.out)
    payload = {**comparison.as_dict(),
               "dropped_zero_gaps": samples.dropped_zero_gaps,
               "groups": (len(samples.per_group)
                          if samples.per_group is not None else 1)}
    report_path = os.path.join(args.out, "temporal.json")
    reports.write_json(payload, report_path)
    artifacts = [report_path]
    if args.figures:
        vals, p_gt = fits.empirical_ccdf(samples.samples)
        artifacts.append(plotting.weibull_diagnostic(
            vals, p_gt, comparison.alpha, comparison.mean_T,
            os.path.join(args.out, "temporal.png")))
    return _finish(args, "temporal",
                   {"input": os.path.abspath(args.input),
                    "group_by": args.group_by},
                   None, artifacts, payload)


# ---------------------------------------------------------------- repro

def cmd_repro(args):
    if args.experiment not in recipes.RECIPES:
        raise UsageError(
            f"unknown experiment: {args.experiment}; choose from "
            + ", ".join(sorted(recipes.RECIPES)))
    summary, manifest = recipes.run_recipe(args.experiment, args.out,
                                           seed=args.seed)
    _summary({"experiment": args.experiment, **summary})
    return 0


# ------------------------------------------------------------ arg wiring

def build_parser():
    parser = argparse.ArgumentParser(
        prog="evosoft",
        description="simulators, fitters and extractors for software-"
                    "evolution analyses")
    parser.add_argument("--config", help="JSON file supplying default flags")
    sub = parser.add_subparsers(dest="command", required=True)
    registry = {}

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=fn)
        p.add_argument("--out", default=None,
                       help="output directory (default: runs/<command>)")
        registry[name] = p
        return p

    p = add("grow", cmd_grow, "run the copying growth model")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--p", type=float, default=1.0)
    p.add_argument("--q", type=float, default=1.0)
    p.add_argument("--N", type=int, default=10_000)
    p.add_argument("--n0", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--figures", action="store_true")

    p = add("degfit", cmd_degfit, "fit degree/sample distributions")
    p.add_argument("--edges", default=None, help="edge-list file")
    p.add_argument("--samples", default=None, help="single-column CSV")
    p.add_argument("--which", choices=["in", "out"], default="in")
    p.add_argument("--k-min", default="1", help="number or 'scan'")
    p.add_argument("--shift", type=float, default=0.5,
                   help="half-integer shift for integer data (0 = continuous)")
    p.add_argument("--figures", action="store_true")

    p = add("motifs", cmd_motifs, "census of 3- or 4-subgraphs")
    p.add_argument("--edges", required=True)
    p.add_argument("--k", type=int, choices=[3, 4], default=3)
    p.add_argument("--mode", choices=["exact", "sample"], default="exact")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--null", type=int, default=0,
                   help="null-ensemble size for z-scores (0 = skip)")
    p.add_argument("--seed", type=int, default=0)

    p = add("extract", cmd_extract, "dependency graph from a source tree")
    p.add_argument("--root", required=True)
    p.add_argument("--profile", default="c",
                   help="builtin profile name or JSON profile path")
    p.add_argument("--include-external", action="store_true")

    p = add("compete", cmd_compete, "well-mixed competition ODE")
    p.add_argument("--mu", default="1,1")
    p.add_argument("--rho0", default="0.6,0.4")
    p.add_argument("--dt", type=float, default=0.05)
    p.add_argument("--steps", type=int, default=4000)
    p.add_argument("--record-every", type=int, default=10)

    p = add("lattice", cmd_lattice, "spatial language competition")
    p.add_argument("--side", type=int, default=32)
    p.add_argument("--capacity", type=int, default=3)
    p.add_argument("--innovation-rate", type=float, default=0.0)
    p.add_argument("--steps", type=int, default=2000)
    p.add_argument("--n-initial", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--figures", action="store_true")

    p = add("fds", cmd_fds, "frequency-dependent selection simulation")
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--J", type=float, default=2.0)
    p.add_argument("--N", type=int, default=100)
    p.add_argument("--innovation-rate", type=float, default=0.1)
    p.add_argument("--delta-z", type=float, default=1.0)
    p.add_argument("--generations", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--figures", action="store_true")

    p = add("dgbd", cmd_dgbd, "fit the rank-popularity law")
    p.add_argument("--input", required=True,
                   help="rank-ordered frequencies, single-column CSV")
    p.add_argument("--figures", action="store_true")

    p = add("weibull", cmd_weibull, "fit stretched-exponential samples")
    p.add_argument("--input", required=True)
    p.add_argument("--figures", action="store_true")

    p = add("complexity", cmd_complexity, "BDM/LZ78/TTR report for a file")
    p.add_argument("--input", required=True)
    p.add_argument("--block", type=int, default=8)
    p.add_argument("--ctm-steps", type=int, default=8)
    p.add_argument("--emit-table", action="store_true")

    p = add("temporal", cmd_temporal, "inter-modification time analysis")
    p.add_argument("--input", required=True,
                   help="timestamp[,entity] CSV")
    p.add_argument("--group-by", choices=["none", "entity"], default="none")
    p.add_argument("--figures", action="store_true")

    p = add("repro", cmd_repro, "pinned reproduction recipes")
    p.add_argument("experiment",
                   help="one of: " + ", ".join(sorted(recipes.RECIPES)))
    p.add_argument("--seed", type=int, default=None)

    return parser, registry


def main(argv=None):
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser, registry = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.config:
            # config supplies defaults for the chosen subcommand; flags
            # given on the command line still win after the re-parse
            with open(args.config) as fh:
                cfg = json.load(fh)
            sub = registry[args.command]
            known = {a.dest for a in sub._actions}
            sub.set_defaults(**{k.replace("-", "_"): v for k, v in cfg.items()
                                if k.replace("-", "_") in known})
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        if args.out is None:
            args.out = os.path.join("runs", args.command)
        return args.handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:    # runtime failure inside a module
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
