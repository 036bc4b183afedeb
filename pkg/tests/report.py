"""Collects one pass/fail line per acceptance criterion for the terminal summary."""

RESULTS = {}


def record(number, ok, detail):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}"
    RESULTS[number] = line
    print(line)
    return ok
