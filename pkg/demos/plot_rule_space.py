"""
The systematic rule space
=========================

Rules combine an inspection metric (defect content or density, four severity
scopes) with an optional product metric. Each combination gets a direction
and a condition.
"""

from collections import Counter

from in2test import RuleSetConfig, generate_rule_set
from in2test.rules import ALL_FAMILIES, describe_rule, family_of

rules = generate_rule_set()
print(len(rules), "rules")
for family, n in sorted(Counter(family_of(r) for r in rules).items()):
    print(f"  {family:28} {n}")

###############################################################################
# Every rule has a stable id and a plain-language description.

for r in rules[:3] + rules[-2:]:
    print(r.rule_id)
    print("   ", describe_rule(r))

###############################################################################
# The percentage and the families are configurable; top-N rules are opt-in.

wide = generate_rule_set(RuleSetConfig(percent=0.5, top_n_list=(3, 5), include_families=frozenset(ALL_FAMILIES)))
print(len(wide), "rules with p=0.5 and top-3/top-5")
