"""
manifest.py - Reproducibility record written with every command output
"""
import hashlib
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Union

from cli import __version__


@dataclass
class RunManifest:
    """
    Everything needed to re-run a command.

    Attributes:
        command: Subcommand name (build, simulate, analyze)
        source: Circuit or results input (flags as typed, files by name + SHA-256)
        options: Command options that affect the output
        outputs: Output file names
        tool_version: Package version that produced the outputs
    """

    command: str
    source: Dict[str, Any]
    options: Dict[str, Any] = field(default_factory=dict)
    outputs: List[str] = field(default_factory=list)
    tool_version: str = __version__

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RunManifest":
        return cls(
            command=data["command"],
            source=dict(data["source"]),
            options=dict(data.get("options", {})),
            outputs=list(data.get("outputs", [])),
            tool_version=data.get("tool_version", __version__),
        )


def dumps_json(data: Any) -> str:
    """Stable JSON text: sorted keys, 2-space indent, trailing newline."""
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def file_digest(path: Union[str, Path]) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def describe_file(path: Union[str, Path]) -> Dict[str, str]:
    path = Path(path)
    return {"name": path.name, "sha256": file_digest(path)}


def sidecar_path(output: Union[str, Path]) -> Path:
    output = Path(output)
    return output.with_name(output.name + ".manifest.json")
