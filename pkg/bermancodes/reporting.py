"""Console tables for code parameters, zero-set checks and simulation sweeps."""
from __future__ import annotations

import math
from typing import Any, Mapping

import pandas as pd
from rich.console import Console
from rich.table import Table

# stdout carries JSON/CSV, so tables go to stderr
console = Console(stderr=True)


def format_rate(x: float) -> str:
    return f"{x:.4f}"


def format_probability(x: float) -> str:
    return "-" if x is None or (isinstance(x, float) and math.isnan(x)) else f"{x:.3e}"


def display_parameters(info: Mapping[str, Any]) -> None:
    table = Table(title=info.get("label"), show_header=True, header_style="bold")
    for col in ["length", "dimension", "dmin", "rate"]:
        table.add_column(col, justify="right")
    dmin = info.get("dmin")
    table.add_row(
        str(info["length"]),
        str(info["dimension"]),
        "-" if dmin is None else str(dmin),
        format_rate(info["rate"]),
    )
    console.print(table)
    check = info.get("double_transitivity")
    if check:
        verdict = "consistent with" if check["passes"] else "rules out"
        console.print(f"(dmin-1)(dmin_dual-1) = {check['product']} vs N-1 = {check['bound']}: {verdict} double transitivity")


def display_zero_set_report(report: Mapping[str, Any]) -> None:
    table = Table(show_header=True, header_style="bold")
    table.add_column("condition")
    table.add_column("holds")
    table.add_row("doubling", str(report["doubling_closed"]))
    for k, ok in enumerate(report["pi_closed"]):
        table.add_row(f"pi_{k}", str(ok))
    table.add_row("position swaps", str(report["position_closed"]))
    console.print(table)


def display_simulation(df: pd.DataFrame) -> None:
    table = Table(show_header=True, header_style="bold")
    for col in ["epsilon", "h", "Pb", "PB", "trials"]:
        table.add_column(col, justify="right")
    for _, row in df.iterrows():
        table.add_row(
            f"{row['epsilon']:.3f}",
            f"{row['h']:.4f}",
            format_probability(row["Pb"]),
            format_probability(row["PB"]),
            str(int(row["trials"])),
        )
    console.print(table)
