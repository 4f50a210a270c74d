"""Figure rendering for sweep results, written next to the CSV output."""

from pathlib import Path

from .experiment import ExperimentRow

__all__ = ["render_figures"]


def _group(rows, key):
    groups: dict = {}
    for r in rows:
        groups.setdefault(key(r), []).append(r)
    return groups


def render_figures(rows: list[ExperimentRow], outdir: str | Path) -> list[Path]:
    """Render subgraph-size curves to PNG files; returns the written paths."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    base = [r for r in rows if r.variant in ("plain", "r")]
    if base:
        fig, ax = plt.subplots(figsize=(6.0, 4.2))
        for (variant, n), rs in sorted(_group(base, lambda r: (r.variant, r.n)).items()):
            rs = sorted(rs, key=lambda r: r.k)
            ax.errorbar(
                [r.k + 1 for r in rs],
                [r.mean_size for r in rs],
                yerr=[r.stddev_size for r in rs],
                marker="o",
                capsize=2,
                label=f"{variant}, n={n}",
            )
        ax.set_xlabel("selected-neighbor bound k + 1")
        ax.set_ylabel("mean subgraph size")
        ax.legend(fontsize=8)
        ax.grid(True, alpha=0.3)
        path = outdir / "size_vs_k.png"
        fig.savefig(path, dpi=150, bbox_inches="tight")
        plt.close(fig)
        written.append(path)

    capped = [r for r in rows if r.variant == "rg"]
    if capped:
        fig, ax = plt.subplots(figsize=(6.0, 4.2))
        for (g, n), rs in sorted(_group(capped, lambda r: (r.g, r.n)).items()):
            rs = sorted(rs, key=lambda r: r.k)
            ax.errorbar(
                [r.k + 1 for r in rs],
                [r.mean_size for r in rs],
                yerr=[r.stddev_size for r in rs],
                marker="s",
                capsize=2,
                label=f"rg, g={g}, n={n}",
            )
        for (variant, n), rs in sorted(
            _group([r for r in rows if r.variant == "r"], lambda r: (r.variant, r.n)).items()
        ):
            rs = sorted(rs, key=lambda r: r.k)
            ax.plot(
                [r.k + 1 for r in rs],
                [r.mean_size for r in rs],
                linestyle="--",
                marker=".",
                label=f"r, n={n}",
            )
        ax.set_xlabel("selected-neighbor bound k + 1")
        ax.set_ylabel("mean subgraph size")
        ax.legend(fontsize=8)
        ax.grid(True, alpha=0.3)
        path = outdir / "capped_size_vs_k.png"
        fig.savefig(path, dpi=150, bbox_inches="tight")
        plt.close(fig)
        written.append(path)

    return written
