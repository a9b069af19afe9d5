"""The two-page duality bookkeeping engine, step by step.

    python demos/03_duality_engine.py
"""

from weierfm import (
    SheafScenario,
    WitType,
    build_pages,
    compare_limits,
    degenerate,
    duality_decision,
    solve_scenario,
)

# A WIT0 sheaf of codimension 1 whose transform gains a dimension.  Think
# of a line bundle on a divisor transforming into a sheaf supported on
# all of X.
scenario = SheafScenario(n=3, c=1, wit=WitType.WIT0, dim_shift=1)

left, right = build_pages(scenario)
print("== seeded second pages ==")
print(left.render())
print()
print(right.render())

# Neither band supports a differential, so both settle immediately.
left, left_page = degenerate(left)
right, right_page = degenerate(right)
print(f"\npages settle at E_{left_page} and E_{right_page}")

# Equating the two limits degree by degree turns the pictures into exact
# statements about the dual of the transform.
print("\n== derived relations ==")
for relation in compare_limits(left, right):
    print(" ", relation.render())

# The same run, packaged: derive the conclusion and cross-check it against
# the closed-form decision table.
solution = solve_scenario(scenario)
table = duality_decision(scenario)
print("\nengine conclusion: ", solution.conclusion.statement)
print("closed-form table:  ", table.statement)
print("they agree:", solution.conclusion == table)

print("\n== the full decision table, engine-validated ==")
for wit in WitType:
    for shift in (1, 0, -1):
        sc = SheafScenario(3, 1, wit, shift)
        engine = solve_scenario(sc).conclusion
        assert engine.kind is duality_decision(sc).kind
        print(f"  {wit.value}, shift {shift:+d}:  {engine.kind.value}")

# Scenarios that are dimensionally impossible are refused up front, and
# impossible WIT/shift combinations surface as contradictions.
forbidden = solve_scenario(SheafScenario(3, 1, WitType.WIT1, 1))
print("\na WIT1 transform cannot gain dimension:")
for relation in forbidden.relations[:2]:
    print(" ", relation.render())
