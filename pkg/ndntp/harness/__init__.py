from .checks import CHECKS, Violation, run_check
from .loader import builtin_names, load_scenario, parse_scenario
from .metrics import report_rows, write_metrics
from .network import Network
from .runner import RunOverrides, RunResult, apply_overrides, run_scenario, sweep
from .topology import compute_fib, hop_distances, link_faces

__all__ = [
    "CHECKS",
    "Network",
    "RunOverrides",
    "RunResult",
    "Violation",
    "apply_overrides",
    "builtin_names",
    "compute_fib",
    "hop_distances",
    "link_faces",
    "load_scenario",
    "parse_scenario",
    "report_rows",
    "run_check",
    "run_scenario",
    "sweep",
    "write_metrics",
]
