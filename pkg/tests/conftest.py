import pytest

_ACCEPTANCE: dict[str, tuple[bool, str]] = {}


class AcceptanceLog:
    def record(self, key: str, ok: bool, detail: str) -> None:
        _ACCEPTANCE[key] = (ok, detail)
        print(f"{'PASS' if ok else 'FAIL'} {key}: {detail}")


@pytest.fixture(scope="session")
def acceptance() -> AcceptanceLog:
    return AcceptanceLog()


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE, key=lambda k: [int(t) if t.isdigit() else t for t in k.replace(".", " ").split()]):
        ok, detail = _ACCEPTANCE[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} {key}: {detail}")
