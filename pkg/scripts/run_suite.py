"""Run the verification suites from a config file and write the JSON report.

    python3 scripts/run_suite.py configs/default.cfg reports/default.json
"""
import sys
from pathlib import Path

from spincs.harness import load_config, report_json, run_suite


def main(argv):
    cfg_path = argv[1] if len(argv) > 1 else "configs/default.cfg"
    out_path = Path(argv[2] if len(argv) > 2 else "reports/report.json")
    cfg = load_config(cfg_path)
    report = run_suite(cfg, log=lambda msg: print(msg, flush=True))
    out_path.parent.mkdir(parents=True, exist_ok=True)
    out_path.write_text(report_json(report) + "\n")
    print(f"{report['failed']} failed, report in {out_path}")
    return 1 if report["failed"] else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
