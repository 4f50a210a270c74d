"""Parameter sweeps over the full pipeline, with aggregation and CSV output.

Trial t of a sweep places nodes with seed ``base_seed + t`` and derives the
rank seed by hashing ``(base_seed, t)``, so every (variant, k, g) combination
at the same trial runs on the identical network with identical ranks. That
makes curves directly comparable point by point.

Every run is checked against the independent verifiers before it may
contribute to a row; any violation aborts the sweep with the seeds needed to
reproduce it.
"""

import hashlib
from dataclasses import dataclass
from pathlib import Path
from statistics import fmean, pstdev

from .engine import VARIANTS, RunConfig, run_to_completion
from .graph import ContentionGraph
from .topology import build_network, build_stream_graph
from .verify import check_degree_bound, check_maximal, check_restrictions

__all__ = [
    "ExperimentConfig",
    "ExperimentRow",
    "ConfigError",
    "VerificationFailure",
    "CSV_HEADER",
    "mix_seed",
    "run_sweep",
    "sweep_graph",
    "break_even_gain",
    "emit_csv",
    "format_summary",
    "load_config",
]

CSV_HEADER = "n,q,k,g,variant,mean_size,stddev_size,mean_rounds,trials"


class ConfigError(ValueError):
    """Bad experiment configuration; the message names the offending key."""


class VerificationFailure(RuntimeError):
    """A run failed an independent check; carries the seeds to reproduce."""


def mix_seed(*parts: int) -> int:
    """Stable 64-bit seed derived from integer components."""
    data = ",".join(map(str, parts)).encode()
    return int.from_bytes(hashlib.blake2b(data, digest_size=8).digest(), "big")


@dataclass(frozen=True)
class ExperimentConfig:
    node_counts: tuple[int, ...] = (100, 200, 500)
    q: int = 2
    k_range: tuple[int, ...] = tuple(range(8))
    g_range: tuple[int, ...] = (1,)
    variants: tuple[str, ...] = ("plain", "r")
    trials: int = 25
    base_seed: int = 0
    tx_radius: float | None = None
    interference_radius: float | None = None
    output_path: str = "results.csv"
    verify: bool = True
    figures_dir: str | None = None

    def __post_init__(self):
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if self.q < 1:
            raise ConfigError("q must be >= 1")
        if any(n < 1 for n in self.node_counts):
            raise ConfigError("nodes must all be >= 1")
        if any(k < 0 for k in self.k_range):
            raise ConfigError("k must all be >= 0")
        if any(not 1 <= g <= self.q for g in self.g_range):
            raise ConfigError(f"g must satisfy 1 <= g <= q (q={self.q})")
        for v in self.variants:
            if v not in VARIANTS:
                raise ConfigError(f"variant must be one of {VARIANTS}, got {v!r}")
        if self.tx_radius is not None and self.tx_radius <= 0:
            raise ConfigError("tx_radius must be positive")
        if self.interference_radius is not None and self.interference_radius <= 0:
            raise ConfigError("interference_radius must be positive")


@dataclass(frozen=True)
class ExperimentRow:
    n: int
    q: int
    k: int
    g: int | None
    variant: str
    mean_size: float
    stddev_size: float  # population std over the trials
    mean_rounds: float
    trials: int


def _combos(cfg: ExperimentConfig) -> list[tuple[str, int, int | None]]:
    return [
        (variant, k, g)
        for variant in cfg.variants
        for k in cfg.k_range
        for g in (cfg.g_range if variant == "rg" else (None,))
    ]


def _verify_run(graph, chosen, k, variant, g_cap, context: str) -> None:
    violation = check_degree_bound(graph, chosen, k)
    if violation is None:
        violation = check_maximal(graph, chosen, k, variant=variant, g_cap=g_cap)
    if violation is None and variant in ("r", "rg"):
        violation = check_restrictions(graph, chosen, variant, g_cap=g_cap)
    if violation is not None:
        raise VerificationFailure(f"{violation.kind} (witness {violation.witness}) at {context}")


def _aggregate(cfg, n, q, combos, samples) -> list[ExperimentRow]:
    rows = []
    for combo in combos:
        variant, k, g_cap = combo
        sizes, rounds = samples[combo]
        rows.append(
            ExperimentRow(
                n=n,
                q=q,
                k=k,
                g=g_cap,
                variant=variant,
                mean_size=fmean(sizes),
                stddev_size=pstdev(sizes),
                mean_rounds=fmean(rounds),
                trials=cfg.trials,
            )
        )
    return rows


def run_sweep(cfg: ExperimentConfig) -> list[ExperimentRow]:
    """Run the full pipeline over the configured grid and aggregate."""
    combos = _combos(cfg)
    rows: list[ExperimentRow] = []
    for n in cfg.node_counts:
        samples = {combo: ([], []) for combo in combos}
        for t in range(cfg.trials):
            placement_seed = cfg.base_seed + t
            network = build_network(
                n, placement_seed, cfg.tx_radius, cfg.interference_radius
            )
            graph, _ = build_stream_graph(network, cfg.q)
            run_seed = mix_seed(cfg.base_seed, t)
            for combo in combos:
                variant, k, g_cap = combo
                result = run_to_completion(
                    graph, RunConfig(k=k, variant=variant, g=g_cap, seed=run_seed)
                )
                if cfg.verify:
                    _verify_run(
                        graph,
                        result.chosen,
                        k,
                        variant,
                        g_cap,
                        context=(
                            f"n={n} q={cfg.q} k={k} variant={variant} g={g_cap} "
                            f"placement_seed={placement_seed} run_seed={run_seed}"
                        ),
                    )
                sizes, rounds = samples[combo]
                sizes.append(len(result.chosen))
                rounds.append(result.rounds)
        rows.extend(_aggregate(cfg, n, cfg.q, combos, samples))
    return rows


def sweep_graph(graph: ContentionGraph, cfg: ExperimentConfig) -> list[ExperimentRow]:
    """Sweep (variant, k, g) on a fixed contention graph; trials vary only the
    rank seed. The q column reports the uniform family size, or 0 when the
    graph has none."""
    fam_sizes = {len(members) for members in graph.families.values()}
    q = fam_sizes.pop() if len(fam_sizes) == 1 else 0
    combos = _combos(cfg)
    samples = {combo: ([], []) for combo in combos}
    for t in range(cfg.trials):
        run_seed = mix_seed(cfg.base_seed, t)
        for combo in combos:
            variant, k, g_cap = combo
            result = run_to_completion(
                graph, RunConfig(k=k, variant=variant, g=g_cap, seed=run_seed)
            )
            if cfg.verify:
                _verify_run(
                    graph,
                    result.chosen,
                    k,
                    variant,
                    g_cap,
                    context=f"graph n={graph.n} k={k} variant={variant} g={g_cap} run_seed={run_seed}",
                )
            sizes, rounds = samples[combo]
            sizes.append(len(result.chosen))
            rounds.append(result.rounds)
    return _aggregate(cfg, graph.n, q, combos, samples)


def break_even_gain(size_a: float, size_b: float, q_ratio: float) -> float:
    """Stream-control gain, in percent, needed to break even: the factor by
    which ``q_ratio`` concurrent streams at size_a must outperform single
    streams at size_b."""
    if size_b == 0:
        raise ValueError("size_b must be positive")
    return (q_ratio * size_a / size_b - 1.0) * 100.0


def _fmt(x: float) -> str:
    return format(x, ".6g")


def emit_csv(rows: list[ExperimentRow], path: str | Path) -> None:
    """Write rows as UTF-8 CSV; byte-identical for identical inputs."""
    lines = [CSV_HEADER]
    for r in rows:
        g_field = "" if r.g is None else str(r.g)
        lines.append(
            f"{r.n},{r.q},{r.k},{g_field},{r.variant},"
            f"{_fmt(r.mean_size)},{_fmt(r.stddev_size)},{_fmt(r.mean_rounds)},{r.trials}"
        )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def format_summary(rows: list[ExperimentRow]) -> str:
    """Plain-text table of the aggregated rows."""
    header = f"{'n':>6} {'q':>3} {'k':>3} {'g':>3} {'variant':>8} {'mean_size':>10} {'stddev':>8} {'rounds':>7} {'trials':>6}"
    lines = [header, "-" * len(header)]
    for r in rows:
        g_field = "-" if r.g is None else str(r.g)
        lines.append(
            f"{r.n:>6} {r.q:>3} {r.k:>3} {g_field:>3} {r.variant:>8} "
            f"{r.mean_size:>10.2f} {r.stddev_size:>8.2f} {r.mean_rounds:>7.2f} {r.trials:>6}"
        )
    return "\n".join(lines)


def _parse_int_list(value: str, key: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok.strip()) for tok in value.split(",") if tok.strip())
    except ValueError:
        raise ConfigError(f"key '{key}': expected comma-separated integers") from None


_CONFIG_KEYS = {
    "nodes",
    "q",
    "k",
    "g",
    "variant",
    "trials",
    "seed",
    "tx_radius",
    "interference_radius",
    "out",
    "verify",
    "figures",
}


def load_config(path: str | Path) -> ExperimentConfig:
    """Read a ``key = value`` config file; unknown keys are errors and
    omitted keys fall back to the defaults (25 trials, and so on)."""
    values: dict[str, object] = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"unknown config key '{key}' (line {lineno})")
        if not value:
            raise ConfigError(f"key '{key}': empty value (line {lineno})")
        try:
            if key == "nodes":
                values["node_counts"] = _parse_int_list(value, key)
            elif key == "k":
                values["k_range"] = _parse_int_list(value, key)
            elif key == "g":
                values["g_range"] = _parse_int_list(value, key)
            elif key == "variant":
                values["variants"] = tuple(tok.strip() for tok in value.split(",") if tok.strip())
            elif key in ("q", "trials"):
                values[{"q": "q", "trials": "trials"}[key]] = int(value)
            elif key == "seed":
                values["base_seed"] = int(value)
            elif key in ("tx_radius", "interference_radius"):
                values[key] = float(value)
            elif key == "out":
                values["output_path"] = value
            elif key == "figures":
                values["figures_dir"] = value
            elif key == "verify":
                if value not in ("strict", "off"):
                    raise ConfigError(f"key 'verify': expected 'strict' or 'off', got {value!r}")
                values["verify"] = value == "strict"
        except ConfigError:
            raise
        except ValueError:
            raise ConfigError(f"key '{key}': cannot parse value {value!r}") from None
    return ExperimentConfig(**values)
