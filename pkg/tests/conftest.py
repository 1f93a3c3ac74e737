import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(mod.RESULTS):
        checks = mod.RESULTS[crit]
        failed = [name for name, ok, _ in checks if not ok]
        status = "PASS" if not failed else "FAIL"
        terminalreporter.write_line(f"{status} criterion {crit}: {len(checks) - len(failed)}/{len(checks)} checks")
        for name, ok, detail in checks:
            terminalreporter.write_line(f"    {'pass' if ok else 'FAIL'} {name}: {detail}")
