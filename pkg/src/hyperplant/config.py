import os
from pathlib import Path

from dotenv import load_dotenv

# .env in the project root (three levels above this file)
BASE_DIR = Path(__file__).resolve().parent.parent.parent
env_path = BASE_DIR / ".env"
load_dotenv(dotenv_path=env_path)

# Worker count is the only experiment knob read from the environment
WORKERS = max(1, int(os.getenv("HYPERPLANT_WORKERS", "1")))
LOG_LEVEL = os.getenv("HYPERPLANT_LOG_LEVEL", "WARNING").upper()

# Budgets
ENUMERATION_BUDGET_LOG2 = 26  # 2^n * 2^M outcomes for the exact planted enumerator
BRUTEFORCE_BUDGET = 10**7  # edge subsets visited by the brute-force LDLR
DENSITY_VERTEX_BUDGET = 20  # vertices in a max-density / balancedness check
MOTIF_SEARCH_NODE_BUDGET = 2 * 10**6  # DFS nodes in the balanced motif search
MOTIF_MAX_VERTICES = 16
AUTOMORPHISM_MAX_VERTICES = 10
EVENT_SUBSET_BUDGET = 10**6  # vertex subsets inspected by the event checker
CONDITIONAL_BUDGET_LOG2 = 22  # 2^n * 2^C(|Z|,r) for the tiny conditional oracle

# Numerics
MP_DPS = 40
BATCHES = 20
DEFAULT_DELTA = 0.1
DEFAULT_DEGREE = 10
