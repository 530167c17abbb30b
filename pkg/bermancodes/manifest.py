"""Run manifests that accompany every emitted result."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, Optional

import pandas as pd

from . import __version__


@dataclass(frozen=True)
class RunManifest:
    command: str
    params: Dict[str, Any] = field(default_factory=dict)
    seed: Optional[int] = None
    version: str = __version__
    timestamp: Optional[str] = None

    def stable(self) -> Dict[str, Any]:
        """Everything except the timestamp, so reruns embed identical manifests."""
        out = asdict(self)
        out.pop("timestamp")
        return out

    def stamped(self) -> "RunManifest":
        return replace(self, timestamp=pd.Timestamp.now(tz="UTC").isoformat())


def sidecar_path(out: Path) -> Path:
    return out.with_name(out.name + ".manifest.json")


def write_with_manifest(text: str, out: Path, manifest: RunManifest) -> None:
    """Write ``text`` to ``out`` and the stamped manifest next to it."""
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text)
    sidecar_path(out).write_text(json.dumps(asdict(manifest.stamped()), indent=2, sort_keys=True) + "\n")


def record_run(manifest: RunManifest, path: Path) -> None:
    """Append the manifest as one row of a CSV run log."""
    stamped = manifest.stamped()
    row = pd.DataFrame(
        [
            {
                "command": stamped.command,
                "params": json.dumps(stamped.params, sort_keys=True),
                "seed": stamped.seed,
                "version": stamped.version,
                "timestamp": stamped.timestamp,
            }
        ]
    )
    path.parent.mkdir(parents=True, exist_ok=True)
    header = not path.exists()
    row.to_csv(path, mode="a", header=header, index=False)
