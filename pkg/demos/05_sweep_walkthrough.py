"""End-to-end sweep: generate, certify, verify, report.

A sweep draws random instances, keeps the ones whose hypothesis passes grid
certification, runs the verification matrix (identity, both theorems at
four weight triples, twelve coefficient cross-checks), and serializes the
row table.  Reports are deterministic: same config and seed, same bytes.

Run:  python3 demos/05_sweep_walkthrough.py
"""

import json
import tempfile
from collections import Counter
from pathlib import Path

from harmonia import SweepConfig, emit_report, report_to_dict, run_sweep


def banner(text):
    print()
    print(text)
    print("-" * len(text))


def main():
    cfg = SweepConfig(samples=12, rng_seed=20260816, q_values=(1.0, 2.0, 3.0))

    banner("configuration")
    for key, value in cfg.to_dict().items():
        print(f"  {key:<18} {value}")

    report = run_sweep(cfg)

    banner("summary")
    print(f"  instances        {report.instances}  (discarded {report.discarded} "
          f"uncertifiable draws)")
    print(f"  identity checks  {report.identity_pass}/{report.identity_total}")
    for theorem in (1, 2):
        print(f"  theorem {theorem} bounds {report.bound_pass(theorem)}/"
              f"{report.bound_total(theorem)}  worst margin "
              f"{report.worst_margin(theorem):+.2e}")
    print(f"  errata           {report.expected_errata} expected, "
          f"{report.unexpected_errata} unexpected")
    print(f"  all pass         {report.all_pass}")

    banner("check mix")
    counts = Counter(row.check.split("@")[0].split(":")[0] for row in report.rows)
    for check, n in sorted(counts.items()):
        print(f"  {check:<24} {n} rows")

    banner("flagged coefficient cases seen in this sweep")
    seen = Counter((e["index"], e["case"]) for e in report.errata)
    for (index, case), n in sorted(seen.items()):
        print(f"  B{index:<3} {case:<10} flagged {n}x (locked erratum)")

    banner("serialization")
    with tempfile.TemporaryDirectory() as tmp:
        json_path = Path(tmp) / "report.json"
        csv_path = Path(tmp) / "report.csv"
        emit_report(report, "json", str(json_path))
        emit_report(report, "csv", str(csv_path))
        doc = json.loads(json_path.read_text(encoding="utf-8"))
        print(f"  json schema {doc['schema']}  "
              f"({json_path.stat().st_size} bytes, {len(doc['rows'])} rows)")
        print(f"  csv  {csv_path.stat().st_size} bytes")

        again = Path(tmp) / "again.csv"
        emit_report(run_sweep(cfg), "csv", str(again))
        identical = again.read_bytes() == csv_path.read_bytes()
        print(f"  re-run with the same config and seed: byte-identical={identical}")

    banner("the regression lock row rides along in every report")
    lock = next(r for r in report.rows if r.instance_id == -1)
    print(f"  check  {lock.check}")
    print(f"  printed {lock.lhs:+.6f} vs corrected {lock.rhs:+.6f}  "
          f"(must differ by >= 0.5: margin {lock.margin:+.4f})")


if __name__ == "__main__":
    main()
