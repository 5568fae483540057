"""On-disk cache of per-seed results, one JSON file per entry."""

from __future__ import annotations

import hashlib
import json
import os
import random
import tempfile
import time
from pathlib import Path

from . import __version__


class ResultCache:
    def __init__(self, directory: str | os.PathLike):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)

    @staticmethod
    def key(command: str, system: str, prime: int, seed: int) -> str:
        return json.dumps(
            {"command": command, "system": system, "prime": int(prime), "seed": int(seed), "version": __version__},
            sort_keys=True,
            separators=(",", ":"),
        )

    def _path(self, key: str) -> Path:
        return self.directory / (hashlib.sha256(key.encode()).hexdigest() + ".json")

    def get(self, key: str):
        path = self._path(key)
        try:
            entry = json.loads(path.read_text())
        except (FileNotFoundError, json.JSONDecodeError):
            return None
        if entry.get("key") != key:
            return None
        return entry["value"]

    def put(self, key: str, value) -> None:
        entry = {"key": key, "value": value, "timestamp": time.time()}
        # write-then-rename so concurrent writers never leave a torn file
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump(entry, fh)
        os.replace(tmp, self._path(key))

    def entries(self) -> list[dict]:
        out = []
        for path in sorted(self.directory.glob("*.json")):
            try:
                out.append(json.loads(path.read_text()))
            except json.JSONDecodeError:
                continue
        return out

    def audit(self, n: int = 10, seed: int = 0) -> list[dict]:
        """Recompute up to ``n`` random entries and compare with the stored values."""
        entries = self.entries()
        picked = random.Random(seed).sample(entries, min(n, len(entries)))
        results = []
        for entry in picked:
            fresh = recompute(json.loads(entry["key"]))
            results.append({"key": entry["key"], "cached": entry["value"], "fresh": fresh, "match": fresh == entry["value"]})
        return results


def recompute(key: dict):
    from .interpolation import FatFlatSystem, actual_dimension

    if key["command"] == "actual_dimension":
        return actual_dimension(FatFlatSystem.from_label(key["system"]), key["prime"], key["seed"])
    raise ValueError(f"cannot recompute cache entries for {key['command']!r}")
