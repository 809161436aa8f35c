"""Collector for the one-line acceptance verdicts shown in the pytest summary."""

LINES: list[tuple[str, str, str]] = []


def record(criterion: str, ok: bool, detail: str = "") -> bool:
    status = "PASS" if ok else "FAIL"
    LINES.append((criterion, status, detail))
    print(f"{status}  {criterion}  {detail}")
    return ok
