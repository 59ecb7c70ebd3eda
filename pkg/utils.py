# utils.py
import datetime as dt
import re


def slugify(value: str) -> str:
    value = (value or "").strip().lower()
    value = re.sub(r"[^a-z0-9]+", "-", value)
    return value.strip("-") or "report"


def default_report_name(suite: str = "", fmt: str = "json") -> str:
    """e.g. 'hfold-blueprint-2025-01-31.json'."""
    today = dt.date.today().strftime("%Y-%m-%d")
    base = slugify(suite) if suite else "all"
    return f"hfold-{base}-{today}.{fmt}"
