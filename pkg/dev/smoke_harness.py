"""Smoke: sweep generation, determinism, parallel merge, emitters."""
import json
import sys
import time

sys.path.insert(0, "/root/pkg/src")

from harmonia.errors import ConfigError
from harmonia.harness import SweepConfig, emit_report, generate_instances, report_to_dict, run_sweep

cfg = SweepConfig(samples=12, rng_seed=7)
t0 = time.perf_counter()
insts, disc = generate_instances(cfg)
print("certified:", len(insts), "discarded:", disc, "gen wall:", round(time.perf_counter() - t0, 2))
insts2, disc2 = generate_instances(cfg)
print("deterministic gen:", [(' %.4f' % i.a) for i in insts] == [(' %.4f' % i.a) for i in insts2] and disc == disc2)

t0 = time.perf_counter()
rep = run_sweep(cfg, jobs=1)
wall = time.perf_counter() - t0
print("rows:", len(rep.rows), "failures:", rep.failures, "all_pass:", rep.all_pass, "wall:", round(wall, 2))
print("identity:", rep.identity_pass, "/", rep.identity_total)
print("T1:", rep.bound_pass(1), "/", rep.bound_total(1), "worst margin:", rep.worst_margin(1))
print("T2:", rep.bound_pass(2), "/", rep.bound_total(2), "worst margin:", rep.worst_margin(2))
print("errata expected/unexpected:", rep.expected_errata, rep.unexpected_errata)

lock = [r for r in rep.rows if r.check == "printed_deviation_lock"]
print("lock row:", lock[0].lhs, lock[0].rhs, lock[0].passed)

# failing rows detail if any
for r in rep.rows:
    if not r.passed:
        print("FAIL ROW:", r.instance_id, r.family, r.check, r.lhs, r.rhs, r.margin)

# parallel == serial
t0 = time.perf_counter()
rep2 = run_sweep(cfg, jobs=2)
print("parallel wall:", round(time.perf_counter() - t0, 2))
same = [
    (r.instance_id, r.check, r.lhs, r.rhs, r.margin, r.passed) for r in rep.rows
] == [
    (r.instance_id, r.check, r.lhs, r.rhs, r.margin, r.passed) for r in rep2.rows
]
print("parallel == serial rows:", same)

# emitters byte-identical CSV
emit_report(rep, "csv", "/tmp/sw1.csv")
emit_report(rep2, "csv", "/tmp/sw2.csv")
b1 = open("/tmp/sw1.csv", "rb").read()
b2 = open("/tmp/sw2.csv", "rb").read()
print("csv byte-identical:", b1 == b2, "bytes:", len(b1))
print("csv head:")
for line in b1.decode().splitlines()[:4]:
    print("  ", line[:150])

emit_report(rep, "json", "/tmp/sw1.json")
loaded = json.load(open("/tmp/sw1.json"))
print("json schema:", loaded["schema"], "rows:", len(loaded["rows"]),
      "counts match:", loaded["summary"]["instances"] == rep.instances,
      loaded["summary"]["failures"] == rep.failures)

# config round trip + errors
d = cfg.to_dict()
cfg2 = SweepConfig.from_dict(d)
print("config round trip:", cfg2 == cfg)
try:
    SweepConfig(samples=0)
    print("samples=0 NOT caught")
except ConfigError as e:
    print("samples=0 -> ConfigError ok")
try:
    SweepConfig.from_dict({"bogus": 1})
    print("unknown key NOT caught")
except ConfigError:
    print("unknown key -> ConfigError ok")
try:
    SweepConfig(families=("linear",), m_values=(0.25,))
    generate_instances(SweepConfig(samples=3, families=("linear",), m_values=(0.25,)))
    print("uncertifiable corpus NOT caught")
except ConfigError:
    print("uncertifiable corpus -> ConfigError ok")
