# tables.py
"""
The reference tables recomputed from the models, as pandas DataFrames, and
their rendering to CSV, JSON and Markdown.
Usage:
    from tables import build_table, render_table
    print(render_table(build_table("fibers", "h3"), "md"))
"""

from __future__ import annotations

from typing import Dict, List

import pandas as pd

from api.models import CheckResult, check
from blueprint import load_cycle
from chevalley import standard_model
from commaps import figure_rows, formula_ring, resolve_name, root_names
from figure_store import figure_store
from folding import folding_map

TABLES = ("fibers", "parity", "commaps", "cycle")
SOURCE_OF = {"h3": "D6", "h4": "E8"}


def _check_system(system: str) -> str:
    system = system.lower()
    if system not in SOURCE_OF:
        raise ValueError(f"Unknown system '{system}'. Available: {list(SOURCE_OF)}")
    return system


def fiber_table(system: str) -> pd.DataFrame:
    """beta and its fiber (alpha1, alpha2), short golden image first, in figure row order."""
    fm = folding_map(SOURCE_OF[_check_system(system)])
    rows = [{"beta": str(fm.target.roots[b]), "alpha1": fm.source.label(a1), "alpha2": fm.source.label(a2)}
            for b, a1, a2 in fm.fiber_rows()]
    df = pd.DataFrame(rows, columns=["beta", "alpha1", "alpha2"])
    return in_figure_order(df, figure_frame("fibers", system.lower()), ["beta"])


def parity_table(system: str) -> pd.DataFrame:
    """The parity map of the standard model, one column per base root."""
    folded = standard_model(SOURCE_OF[_check_system(system)])
    target = folded.system
    rows = []
    for beta, values in folded.parity_table().rows():
        row = {"beta": str(target.roots[beta])}
        row.update({name: str(v) for name, v in zip(target.base_names, values)})
        rows.append(row)
    df = pd.DataFrame(rows, columns=["beta", *target.base_names])
    return in_figure_order(df, figure_frame("parity", system.lower()), ["beta"])


def _name_of(names: Dict[int, str], system, root: int) -> str:
    return names.get(root, system.label(root))


def commap_table(system: str) -> pd.DataFrame:
    """Commutation maps extracted from the model for every pair that has a figure row."""
    system = _check_system(system)
    folded = standard_model(SOURCE_OF[system])
    target = folded.system
    names = {idx: name for name, idx in root_names(target).items()}
    pairs: List = []
    for row in figure_rows(system.upper()):
        if (row.zeta, row.xi) not in pairs:
            pairs.append((row.zeta, row.xi))
    rows = []
    for zeta, xi in pairs:
        parts = folded.extract_commutation_map(resolve_name(target, zeta), resolve_name(target, xi))
        single = len(parts) == 1
        for rho, x in parts:
            rows.append({"zeta": zeta, "xi": xi, "rho": "" if single else _name_of(names, target, rho),
                         "first": str(x.left), "second": str(x.right)})
    df = pd.DataFrame(rows, columns=["zeta", "xi", "rho", "first", "second"])
    return in_figure_order(df, figure_frame("commaps", system), ["zeta", "xi", "rho"])


def cycle_table(system: str = "h3") -> pd.DataFrame:
    """The homotopy cycle with the moved block of each word in brackets."""
    if _check_system(system) != "h3":
        raise ValueError("The homotopy cycle is only available for h3")
    cycle = load_cycle()
    rows = []
    for k, (word, mark) in enumerate(zip(cycle.words, cycle.marks), start=1):
        shown = word if mark is None else f"{word[:mark[0]]}[{word[mark[0]:mark[1] + 1]}]{word[mark[1] + 1:]}"
        rows.append({"index": k, "word": shown})
    return pd.DataFrame(rows, columns=["index", "word"])


_BUILDERS = {"fibers": fiber_table, "parity": parity_table, "commaps": commap_table, "cycle": cycle_table}


def build_table(name: str, system: str) -> pd.DataFrame:
    if name not in _BUILDERS:
        raise ValueError(f"Unknown table '{name}'. Available: {list(TABLES)}")
    return _BUILDERS[name](system)


def _markdown(df: pd.DataFrame) -> str:
    header = "| " + " | ".join(df.columns) + " |"
    rule = "| " + " | ".join("---" for _ in df.columns) + " |"
    body = ["| " + " | ".join(str(v).replace("tau", "τ") for v in rec) + " |" for rec in df.itertuples(index=False)]
    return "\n".join([header, rule, *body]) + "\n"


def render_table(df: pd.DataFrame, fmt: str = "csv") -> str:
    if fmt == "csv":
        return df.to_csv(index=False)
    if fmt == "json":
        return df.to_json(orient="records", indent=2, force_ascii=False) + "\n"
    if fmt == "md":
        return _markdown(df)
    raise ValueError(f"Unknown format '{fmt}'. Use csv, json or md")


# --- agreement with the embedded figures ---------------------------------
def figure_frame(name: str, system: str) -> pd.DataFrame:
    """The embedded figure of a table, restricted to one system."""
    if name == "commaps":
        df = figure_store.read_table("commaps")
        df = df[df["systems"].str.split().apply(lambda s: system in s)].drop(columns=["systems"])
        return df.reset_index(drop=True)
    return figure_store.read_table(f"{name}_{system}")


def in_figure_order(df: pd.DataFrame, figure: pd.DataFrame, keys: List[str]) -> pd.DataFrame:
    """Rows of df sorted into the figure's row order; rows the figure lacks go last."""
    order = {k: i for i, k in enumerate(figure[keys].itertuples(index=False, name=None))}
    rank = [order.get(k, len(order) + i) for i, k in enumerate(df[keys].itertuples(index=False, name=None))]
    return (df.assign(_rank=rank).sort_values("_rank", kind="stable")
            .drop(columns="_rank").reset_index(drop=True))


def _row_differences(computed: pd.DataFrame, figure: pd.DataFrame, same) -> List[str]:
    diffs = []
    if len(computed) != len(figure):
        diffs.append(f"{len(computed)} rows != {len(figure)} rows")
    for i, (got, want) in enumerate(zip(computed.to_dict(orient="records"), figure.to_dict(orient="records"))):
        if not same(got, want):
            diffs.append(f"row {i}: {tuple(got.values())} != {tuple(want.values())}")
    return diffs


def compare_tables(name: str, system: str, computed: pd.DataFrame, figure: pd.DataFrame) -> CheckResult:
    """Positional comparison: row i of the computed table must equal row i of the figure."""
    if name == "commaps":
        ring = formula_ring()

        def same(got, want):
            return (all(got[k] == want[k] for k in ("zeta", "xi", "rho"))
                    and ring.parse(got["first"]) == ring.parse(want["first"])
                    and ring.parse(got["second"]) == ring.parse(want["second"]))
    else:
        def same(got, want):
            return list(got.items()) == list(want.items())

    diffs = _row_differences(computed, figure, same)
    return check(f"table-{name}-{system}", f"the recomputed {name} table of {system.upper()} matches the figure",
                 not diffs, "; ".join(diffs[:5]))


def compare_with_figure(name: str, system: str) -> CheckResult:
    """A recomputed table agrees row for row, in order, with its embedded figure."""
    system = _check_system(system)
    return compare_tables(name, system, build_table(name, system), figure_frame(name, system))
