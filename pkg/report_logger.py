# report_logger.py
import datetime
import json
import os
import uuid
from typing import Any, Dict, List, Optional

import pandas as pd
from dotenv import load_dotenv

load_dotenv()

LOG_DIR = os.getenv("HFOLD_LOG_DIR", "data")
LOG_PATH = os.getenv("HFOLD_LOG_PATH", os.path.join(LOG_DIR, "runs.jsonl"))

COLUMNS = ["id", "ts", "command", "suite", "passed", "failed", "elapsed", "extra"]


def _ensure_dir():
    log_dir = os.path.dirname(LOG_PATH) or "."
    if not os.path.exists(log_dir):
        os.makedirs(log_dir, exist_ok=True)


def log_run(
    *,
    command: str,
    suite: str,
    passed: int,
    failed: int,
    elapsed: float,
    extra: Optional[Dict[str, Any]] = None,
) -> Dict[str, Any]:
    """Append one run summary to the JSONL log and return the row."""
    _ensure_dir()
    ts = datetime.datetime.now(datetime.timezone.utc).isoformat().replace("+00:00", "Z")
    row = {
        "id": str(uuid.uuid4()),
        "ts": ts,
        "command": command,
        "suite": suite,
        "passed": passed,
        "failed": failed,
        "elapsed": round(elapsed, 3),
        "extra": extra or {},
    }
    with open(LOG_PATH, "a", encoding="utf-8") as f:
        f.write(json.dumps(row, ensure_ascii=False) + "\n")
    return row


def load_runs_df(path: Optional[str] = None) -> pd.DataFrame:
    """The run log as a DataFrame, newest first. Unreadable lines are skipped."""
    path = path or LOG_PATH
    if not os.path.exists(path) or os.path.getsize(path) == 0:
        return pd.DataFrame(columns=COLUMNS)
    rows: List[Dict[str, Any]] = []
    with open(path, "r", encoding="utf-8") as f:
        for line in f:
            if line.strip():
                try:
                    rows.append(json.loads(line))
                except json.JSONDecodeError:
                    pass
    df = pd.DataFrame(rows)
    for col in COLUMNS:
        if col not in df.columns:
            df[col] = None
    # Flatten the ring selector from extra
    df["ring"] = df["extra"].apply(lambda x: (x or {}).get("ring"))
    return df.sort_values("ts", ascending=False)
