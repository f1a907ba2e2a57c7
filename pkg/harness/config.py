# harness/config.py

from pathlib import Path

# --- Base Paths ---
BASE_DIR = Path(__file__).resolve().parent.parent

# --- Experiment Paths ---
# Checked-in experiment definitions (flat YAML)
EXPERIMENTS_DIR = BASE_DIR / "config/experiments"
# JSONL records written by `run` and `estimate` when --out is not given
RESULTS_DIR = BASE_DIR / "results"
DEFAULT_RECORDS_FILE = RESULTS_DIR / "experiments.jsonl"

# --- Create Directories if they don't exist ---
RESULTS_DIR.mkdir(parents=True, exist_ok=True)


# --- Logging Configuration ---
LOG_FILE = BASE_DIR / "logs/harness.log"
# Create logs directory if it doesn't exist
LOG_FILE.parent.mkdir(parents=True, exist_ok=True)
