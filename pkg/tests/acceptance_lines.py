"""Collects one pass/fail line per acceptance criterion for the terminal summary."""

LINES: dict[str, str] = {}


def record(key: str, ok: bool, detail: str) -> None:
    LINES[key] = f"{'PASS' if ok else 'FAIL'}  criterion {key:<3} {detail}"
