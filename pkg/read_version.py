from pathlib import Path

CHANGELOG = Path(__file__).resolve().parent / "changelog.md"


def read_version(changelog: Path = CHANGELOG) -> str:
    """Version from the first heading of the changelog, ``## 0.1.0`` gives ``0.1.0``"""
    with changelog.open(encoding="UTF-8") as file:
        heading = file.readline()
    return heading.partition(" ")[-1].rstrip()
