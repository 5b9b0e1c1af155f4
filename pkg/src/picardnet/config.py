"""Flat key = value configuration for the experiment driver.

One `key = value` pair per line, `#` starts a comment, lists are
comma-separated.  Unknown keys are rejected so typos fail loudly.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields


@dataclass
class ExperimentConfig:
    problem: str = "linear"
    dims: list = field(default_factory=lambda: [1])
    epsilons: list = field(default_factory=lambda: [0.5])
    delta: float = 0.5
    seed: int = 0
    out: str = "."
    # suite sizing knobs
    particles: int = 2000
    euler_steps: int = 50
    partner_count: int = 32
    convergence_seeds: int = 10
    mc_samples: int = 200
    level_cap: int = 2
    points: int = 256
    horizon: float = 0.1
    seed_budget: int = 50

    def validate(self):
        if not self.dims:
            raise ValueError("dims must be a nonempty list")
        if not self.epsilons:
            raise ValueError("epsilons must be a nonempty list")
        if not 0 < self.delta < 1:
            raise ValueError("delta must lie in (0, 1)")
        if any(not 0 < e < 1 for e in self.epsilons):
            raise ValueError("every epsilon must lie in (0, 1)")
        if any(d < 1 for d in self.dims):
            raise ValueError("dimensions must be positive")
        if self.problem not in ("linear", "constant"):
            raise ValueError(f"unknown problem {self.problem!r}")
        return self


_INT_LIST = {"dims"}
_FLOAT_LIST = {"epsilons"}


def parse_config(text: str) -> ExperimentConfig:
    cfg = ExperimentConfig()
    known = {f.name: f.type for f in fields(ExperimentConfig)}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key = value")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key not in known:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
        if key in _INT_LIST:
            setattr(cfg, key, [int(v) for v in value.split(",") if v.strip()])
        elif key in _FLOAT_LIST:
            setattr(cfg, key, [float(v) for v in value.split(",") if v.strip()])
        elif key in ("problem", "out"):
            setattr(cfg, key, value)
        elif key in ("delta", "horizon"):
            setattr(cfg, key, float(value))
        else:
            setattr(cfg, key, int(value))
    return cfg.validate()


def load_config(path: str) -> ExperimentConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())
