"""Experiment suites behind the command-line driver.

Each suite runs deterministically from the configured seed, returns its rows
plus a pass flag, and is written to `<out>/<suite>.csv`.  The four suites
mirror the library's main claims: estimator/network equivalence, analytic
bound satisfaction, estimator convergence, and the accuracy/parameter-count
scaling of the end-to-end pipeline.
"""

from __future__ import annotations

import csv
import math
import os

import numpy as np

from .bounds import (ParticleConfig, brownian_moment_check, check_moment_bound,
                     check_perturbation_bounds, mlp_error_bound,
                     particle_mean_payoff)
from .config import ExperimentConfig
from .estimator import mlp_estimate, monte_carlo_payoff
from .nets import realize
from .noise import NoiseTree
from .problems import constant_problem, linear_problem, perturbed_problem
from .selection import log_param_bound
from .synthesis import synthesize_mc_network, synthesize_mlp_network, theorem_pipeline


def _rel_err(a, b):
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b)))
                 / max(1.0, float(np.max(np.abs(b)))))


def _problem(cfg: ExperimentConfig, d: int, T: float):
    if cfg.problem == "constant":
        return constant_problem(d, value=1.5, T=T)
    return linear_problem(d, T=T)


def run_equivalence_suite(cfg: ExperimentConfig):
    rows = []
    ok = True
    rng = np.random.default_rng(cfg.seed)
    for d in cfg.dims:
        prob = _problem(cfg, d, T=1.0)
        for n in (0, 1, 2):
            m = max(n, 1)
            tree = NoiseTree(master_seed=cfg.seed + 17 * d + n, T=prob.T,
                             d=d, grid_levels=n, m=m)
            rep = synthesize_mlp_network(prob, tree, (0,), n, m, 0.75 * prob.T)
            xs = rng.standard_normal((5, d))
            err = max(_rel_err(realize(rep.network, x),
                               mlp_estimate(prob, tree, (0,), n, m,
                                            0.75 * prob.T, x))
                      for x in xs)
            depth_ok = rep.depth == rep.predicted_depth
            width_ok = rep.width_supnorm <= rep.predicted_width_bound
            good = err <= 1e-8 and depth_ok and width_ok
            ok = ok and good
            rows.append(["mlp", d, n, m, 1, f"{err:.3e}",
                         int(depth_ok), int(width_ok), int(good)])
            for K in (1, 2):
                rep = synthesize_mc_network(prob, tree, K, n, m)
                err = max(_rel_err(realize(rep.network, x)[0],
                                   monte_carlo_payoff(prob, tree, K, n, m, x))
                          for x in xs)
                depth_ok = rep.depth == rep.predicted_depth
                width_ok = rep.width_supnorm <= rep.predicted_width_bound
                good = err <= 1e-8 and depth_ok and width_ok
                ok = ok and good
                rows.append(["mc", d, n, m, K, f"{err:.3e}",
                             int(depth_ok), int(width_ok), int(good)])
    header = ["kind", "d", "n", "m", "K", "max_rel_err",
              "depth_ok", "width_ok", "pass"]
    return header, rows, ok


def run_bounds_suite(cfg: ExperimentConfig):
    rows = []
    ok = True
    checks = []
    for (d, p, r) in ((1, 1, 1), (3, 2, 1), (5, 2, 2)):
        checks.append(brownian_moment_check(d, p, r, t=1.0,
                                            samples=10 ** 5, seed=cfg.seed))
    pc = ParticleConfig(particles=cfg.particles, euler_steps=cfg.euler_steps,
                        master_seed=cfg.seed, partner_count=cfg.partner_count)
    d0 = min(cfg.dims)
    base = linear_problem(d0, T=1.0)
    x = np.ones(d0)
    checks.append(check_moment_bound(base, pc, x, p=2))
    pert, b = perturbed_problem(base, eps=0.1)
    checks.extend(check_perturbation_bounds(base, pert, 0.1, b, pc, x, p=2))
    ref = particle_mean_payoff(base, pc, x)
    samples = [monte_carlo_payoff(
        base, NoiseTree(master_seed=cfg.seed + 1000 + i, T=base.T,
                        d=d0, grid_levels=2, m=2), 1, 2, 2, x)
        for i in range(20)]
    rms = float(np.sqrt(np.mean((np.array(samples) - ref) ** 2)))
    bound = mlp_error_bound(base, 2, 2, x)
    from .bounds import BoundCheckResult
    checks.append(BoundCheckResult("mlp-error-domination", rms, bound,
                                   rms <= bound, 20))
    for chk in checks:
        ok = ok and chk.satisfied
        rows.append([chk.name, f"{chk.empirical:.6e}", f"{chk.bound:.6e}",
                     int(chk.satisfied), chk.samples])
    return ["name", "empirical", "bound", "satisfied", "samples"], rows, ok


def run_convergence_suite(cfg: ExperimentConfig):
    rows = []
    ok = True
    for d in cfg.dims:
        prob = linear_problem(d, T=1.0)
        x = np.ones(d)
        truth = prob.closed_form(x, prob.T)
        rms = {}
        for n in (1, 2, 3):
            errs = []
            for s in range(cfg.convergence_seeds):
                tree = NoiseTree(master_seed=cfg.seed + 31 * s, T=prob.T,
                                 d=d, grid_levels=n, m=n)
                est = monte_carlo_payoff(prob, tree, cfg.mc_samples, n, n, x)
                errs.append(est - truth)
            rms[n] = float(np.sqrt(np.mean(np.square(errs))))
            rows.append([d, n, cfg.mc_samples, f"{rms[n]:.6e}",
                         f"{abs(rms[n] / truth):.6e}"])
        good = rms[3] < rms[1] and abs(rms[3] / truth) <= 0.2
        ok = ok and good
        rows.append([d, "summary", cfg.mc_samples, int(good), ""])
    return ["d", "n", "K", "rms_error", "relative"], rows, ok


def run_scaling_suite(cfg: ExperimentConfig):
    rows = []
    ok = True
    for d in cfg.dims:
        prob = linear_problem(d, T=cfg.horizon)
        for eps in cfg.epsilons:
            res = theorem_pipeline(prob, eps, cfg.delta,
                                   level_cap=cfg.level_cap,
                                   seed_budget=cfg.seed_budget,
                                   base_seed=cfg.seed, points=cfg.points)
            log_bound = log_param_bound(d, eps, cfg.delta, prob.c,
                                        prob.r, prob.T)
            within = math.log(res.report.param_count) <= log_bound
            good = res.succeeded and within
            ok = ok and good
            rows.append([d, eps, res.n_selected, res.n_used, res.K,
                         f"{res.l2_error:.6e}", res.report.param_count,
                         f"{log_bound:.6e}", int(within),
                         int(res.succeeded)])
    return ["d", "epsilon", "n_selected", "n_used", "K", "l2_error",
            "param_count", "log_param_bound", "within_bound",
            "success"], rows, ok


_SUITES = {
    "equivalence": run_equivalence_suite,
    "bounds": run_bounds_suite,
    "convergence": run_convergence_suite,
    "scaling": run_scaling_suite,
}


def run_suite(cfg: ExperimentConfig, suite: str, out_dir: str) -> int:
    """Run one suite (or all) and write CSV; exit code 0 iff all passed."""
    cfg.validate()
    names = list(_SUITES) if suite == "all" else [suite]
    os.makedirs(out_dir, exist_ok=True)
    all_ok = True
    for name in names:
        header, rows, ok = _SUITES[name](cfg)
        path = os.path.join(out_dir, f"{name}.csv")
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(rows)
        all_ok = all_ok and ok
    return 0 if all_ok else 1
