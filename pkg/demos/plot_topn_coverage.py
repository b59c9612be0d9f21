"""
Defect coverage of top-N rules
==============================

For ranked selections we look at how much of the test defect mass lands in
the N highest-ranked modules. Coverage can only grow with N, and a union rule
never covers less than either of its parts.
"""

import random
from datetime import datetime

from in2test import DefectRecord, Part, Phase, QaRun, RuleSetConfig, evaluate_run, generate_rule_set
from in2test.reports import topn_coverage

rng = random.Random(7)
parts, defects = [], []
for i in range(20):
    pid = f"mod{i:02d}"
    loc = rng.randint(200, 4000)
    parts.append(Part(pid, pid, loc=loc, waste_per_line=round(rng.random(), 3)))
    # larger modules attract more findings in both phases
    for k in range(rng.randint(0, loc // 300)):
        defects.append(DefectRecord(f"{pid}-i{k}", pid, Phase.INSPECTION))
    for k in range(rng.randint(0, loc // 800)):
        defects.append(DefectRecord(f"{pid}-t{k}", pid, Phase.TEST))
run = QaRun("synthetic", datetime(2024, 1, 1), tuple(parts), tuple(defects))

###############################################################################
# Evaluate the top-N family for N in 3, 5, 8, 10 and print the coverage table.

rules = generate_rule_set(RuleSetConfig(include_families=frozenset({"top_n"})))
results = evaluate_run(rules, run)
ns, rows = topn_coverage(results, {r.rule_id: r for r in rules})
print("assumption " + " ".join(f"top-{n:<3}" for n in ns))
for assumption, values in rows:
    print(f"{assumption:10} " + " ".join(f"{v:7.2f}" for v in values))
