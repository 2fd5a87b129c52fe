"""Printed polynomials shipped as canonical-text fixtures with SHA-256 checksums."""

from __future__ import annotations

import hashlib
import json
from importlib import resources
from pathlib import Path

from .polyalg.multi import MultiPoly
from .polyalg.textform import parse_poly

FIXTURES = ("f.txt", "phi1.txt", "phi2.txt")


class FixtureChecksumError(RuntimeError):
    pass


def _data_dir() -> Path:
    return Path(str(resources.files("drinfeld_tower") / "data"))


def fixture_text(name: str, data_dir: Path | None = None, verify: bool = True) -> str:
    d = Path(data_dir) if data_dir else _data_dir()
    text = (d / name).read_text()
    if verify:
        sums = json.loads((d / "checksums.json").read_text())
        want = sums.get(name)
        got = hashlib.sha256(text.encode()).hexdigest()
        if want != got:
            raise FixtureChecksumError(f"{name}: checksum {got[:12]}... does not match manifest")
    return text


def parse_fixture(text: str) -> MultiPoly:
    """Fixture format: a ``# vars: a b`` header line followed by one polynomial."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("# vars:"):
        raise ValueError("fixture lacks a '# vars:' header")
    vars = tuple(lines[0].split(":", 1)[1].split())
    return parse_poly(" ".join(ln for ln in lines[1:] if not ln.startswith("#")), vars)


def load_fixture(name: str, data_dir: Path | None = None, verify: bool = True) -> MultiPoly:
    return parse_fixture(fixture_text(name, data_dir, verify))


def format_fixture(poly: MultiPoly) -> str:
    from .polyalg.textform import to_text
    return f"# vars: {' '.join(poly.vars)}\n{to_text(poly)}\n"
