"""Locate the bundled model, query catalogue, and fixture files.

Paths are resolved relative to the current directory first (so the CLI's
documented defaults like ``models/disease-skill.json`` work from a checkout),
falling back to the repository root this package was installed from.
"""

from __future__ import annotations

from pathlib import Path

_REPO_MARKERS = ("models", "queries", "fixtures")

DEFAULT_MODEL = "models/disease-skill.json"
DEFAULT_FIXTURE = "fixtures/disgenet-mini.nt"
TEMPLATES_FILE = "queries/templates.json"
PLANS_FILE = "queries/plans.json"


def repo_root() -> Path | None:
    here = Path(__file__).resolve()
    for parent in here.parents:
        if all((parent / m).is_dir() for m in _REPO_MARKERS):
            return parent
    return None


def resolve(relative: str | Path) -> Path:
    """Find a bundled file by its repo-relative name."""
    rel = Path(relative)
    if rel.is_absolute() or rel.exists():
        return rel
    root = repo_root()
    if root is not None and (root / rel).exists():
        return root / rel
    return rel  # let the caller produce the file-not-found error


def model_path() -> Path:
    return resolve(DEFAULT_MODEL)


def fixture_path() -> Path:
    return resolve(DEFAULT_FIXTURE)


def templates_path() -> Path:
    return resolve(TEMPLATES_FILE)


def plans_path() -> Path:
    return resolve(PLANS_FILE)
