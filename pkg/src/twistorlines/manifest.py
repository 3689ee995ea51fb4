"""Run manifests embedded in every output file, and deterministic JSON output."""
from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from importlib.metadata import PackageNotFoundError, version

__all__ = ["RunManifest", "library_version", "dump_json", "payload_without_timing"]


def library_version() -> str:
    try:
        return version("artifact")
    except PackageNotFoundError:
        return "0+unknown"


@dataclass
class RunManifest:
    command: str
    seed: int | None = None
    tolerances: dict = field(default_factory=dict)
    inputs: dict = field(default_factory=dict)
    outputs: list = field(default_factory=list)
    timing: dict = field(default_factory=dict)
    version: str = field(default_factory=library_version)
    _t0: float = field(default_factory=time.perf_counter, repr=False)

    def finish(self):
        self.timing = {"elapsed_s": round(time.perf_counter() - self._t0, 6)}
        return self

    def to_json(self) -> dict:
        out = asdict(self)
        out.pop("_t0")
        return out


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def payload_without_timing(obj: dict) -> dict:
    """Copy of an output document with the manifest timing removed (for replay comparisons)."""
    obj = json.loads(json.dumps(obj))
    if "manifest" in obj:
        obj["manifest"].pop("timing", None)
    return obj
