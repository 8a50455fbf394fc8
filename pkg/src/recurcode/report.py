"""Channel-harness reporting: a delimited trial log plus a rendered figure."""

from __future__ import annotations

import csv
from fractions import Fraction
from pathlib import Path

from .blockcode import TrialOutcome
from .recurrence import RecurrenceSpec


def write_channel_report(
    outcomes: list[TrialOutcome],
    out_dir,
    spec: RecurrenceSpec,
    coefficient: Fraction,
) -> tuple[Path, Path]:
    """Write trials.csv and rates.png under out_dir; returns both paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    csv_path = out_dir / "trials.csv"
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["trial", "n", "weight", "detected", "corrected", "exact"])
        for idx, trial in enumerate(outcomes):
            writer.writerow(
                [
                    idx,
                    trial.n,
                    trial.weight,
                    int(trial.detected),
                    int(trial.corrected),
                    int(trial.exact),
                ]
            )

    fig_path = out_dir / "rates.png"
    _render_rates(outcomes, fig_path, spec, coefficient)
    return csv_path, fig_path


def _render_rates(outcomes, fig_path, spec, coefficient) -> None:
    # Imported here so the CLI stays fast when no report was requested.
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    total = max(len(outcomes), 1)
    rates = [
        sum(t.detected for t in outcomes) / total,
        sum(t.corrected for t in outcomes) / total,
        sum(t.exact for t in outcomes) / total,
    ]
    fig, ax = plt.subplots(figsize=(4.8, 3.2))
    bars = ax.bar(
        ["detected", "corrected", "exact"],
        rates,
        color=["#4878a8", "#58a06a", "#b08830"],
    )
    for bar, rate in zip(bars, rates):
        ax.text(
            bar.get_x() + bar.get_width() / 2,
            rate + 0.02,
            f"{rate:.1%}",
            ha="center",
            fontsize=9,
        )
    ax.set_ylim(0, 1.1)
    ax.set_ylabel("rate over trials")
    ax.set_title(
        f"k={spec.k}, a={','.join(str(c) for c in spec.coeffs)}, "
        f"{len(outcomes)} trials   S={coefficient.numerator}/{coefficient.denominator}"
    )
    fig.tight_layout()
    fig.savefig(fig_path, dpi=150)
    plt.close(fig)
