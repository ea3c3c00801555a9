"""Collects acceptance-criterion outcomes so the end-of-run summary can
print one pass/fail line per criterion regardless of output capture."""

LINES: list[str] = []


def record(name: str, passed: bool, detail: str = "", soft: bool = False) -> bool:
    if passed:
        status = "PASS"
    else:
        status = "SOFT-FAIL" if soft else "FAIL"
    line = f"[{status}] {name}" + (f" :: {detail}" if detail else "")
    LINES.append(line)
    print(line)
    return passed
