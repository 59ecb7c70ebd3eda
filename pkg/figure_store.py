# figure_store.py
import io
import os
from typing import Dict, List

import pandas as pd
from dotenv import load_dotenv

load_dotenv()

DEFAULT_FIGURES_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "figures")


class FigureStore:
    """Loads the embedded reference tables (fibers, parity maps, commutation maps, homotopy cycle)."""

    def __init__(self, figures_dir: str = None):
        self.figures_dir = figures_dir or os.getenv("HFOLD_FIGURES_DIR", DEFAULT_FIGURES_DIR)
        self._cache: Dict[str, str] = {}
        self._load_figures()

    def _load_figures(self):
        """Load every .csv and .txt file of the figures directory."""
        if not os.path.isdir(self.figures_dir):
            print(f"Warning: figures directory {self.figures_dir} does not exist")
            return

        for filename in sorted(os.listdir(self.figures_dir)):
            name, ext = os.path.splitext(filename)
            if ext not in (".csv", ".txt"):
                continue
            filepath = os.path.join(self.figures_dir, filename)
            try:
                with open(filepath, "r", encoding="utf-8") as f:
                    self._cache[name] = f.read()
            except OSError as e:
                print(f"Warning: Could not load figure {filename}: {e}")

    def get_available_figures(self) -> List[str]:
        return sorted(self._cache.keys())

    def get_figure(self, name: str) -> str:
        """Raw text of a figure file, by name without extension (e.g. 'parity_h3')."""
        if name not in self._cache:
            raise ValueError(f"Figure '{name}' not found. Available: {self.get_available_figures()}")
        return self._cache[name]

    def read_table(self, name: str) -> pd.DataFrame:
        """A CSV figure as a DataFrame of strings."""
        return pd.read_csv(io.StringIO(self.get_figure(name)), dtype=str, keep_default_na=False)

    def read_lines(self, name: str) -> List[str]:
        return [line.strip() for line in self.get_figure(name).splitlines() if line.strip()]

    def reload_figures(self):
        self._cache.clear()
        self._load_figures()


# Create a global instance
figure_store = FigureStore()
