"""
Three routes to total positivity
================================

Brute force over all minors, the initial-minor test, and sufficient
conditions on the derivatives at 0.
"""

from fractions import Fraction as F

from tpschur import (builtin_stream, collocate, dilation_system, tp_bruteforce,
                     tp_initial_minors, tp_sufficiency_dilation, tp_wronskian_truncated)

system = dilation_system("geometric", [1, 2, 3])
M = collocate(system, [F(1, 10), F(1, 5), F(3, 10)]).entries

print(tp_bruteforce(M).to_json())
print(tp_initial_minors(M).to_json())

# nonnegative derivatives certify TP on (0, R/a_n)
print(tp_sufficiency_dilation(builtin_stream("geometric"), [1, 2, 3], 30).to_json())
# cos fails at the second derivative, which only makes the test inconclusive
print(tp_sufficiency_dilation(builtin_stream("cos"), [1, 2], 30).to_json())

# truncated evidence from the Wronskian at 0
print(tp_wronskian_truncated(dilation_system("exp", [1, 2]), 6).to_json())

# a singular matrix whose initial minors are all nonnegative, yet not TP
v = tp_initial_minors([[0, 0], [0, -1]], crosscheck=True)
print("initial minors say", v.is_tp, "; brute force says", v.disagreement["bruteforce"]["is_tp"])
