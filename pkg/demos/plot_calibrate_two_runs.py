"""
Calibrating selection rules on two QA runs
==========================================

Eight classes, inspected and tested in two runs. We generate the systematic
rule set, evaluate it on each run and look at which rules held up.
"""

from in2test import apply_results, evaluate_run, generate_rule_set, trend
from in2test.datasets import example_runs
from in2test.rules import describe_rule

run1, run2 = example_runs()
for run in (run1, run2):
    print(run.id, "defect-prone:", sorted(run.defect_prone()))

###############################################################################
# Evaluate all 118 rules on the first run. Results carry the quality category
# and the significance the rule would have after this run.

rules = generate_rule_set()
first = evaluate_run(rules, run1)
for res in first:
    if res.effective:
        print(f"{res.category.value}  {sorted(res.selected)}  {res.rule_id}")

###############################################################################
# Fold the first run into the rules, then evaluate the second run.

rules = apply_results(rules, first)
second = evaluate_run(rules, run2)
rules = apply_results(rules, second)

###############################################################################
# Trend analysis ranks every rule by its category history. Only a handful of
# rules are effective in both runs.

by_id = {r.rule_id: r for r in rules}
for t in trend(rules)[:5]:
    cats = ", ".join(c.value for c in t.category_sequence)
    print(f"{t.classification.value:15} sig={t.significance} [{cats}]")
    print("   ", describe_rule(by_id[t.rule_id]))
