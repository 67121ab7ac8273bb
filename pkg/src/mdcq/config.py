"""Configuration primitives for a command run."""

from __future__ import annotations

import hashlib
import json
import os
import re
from argparse import Namespace
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Literal, Mapping, Sequence

from . import __version__
from .diagnostics import SpecError
from .distance.enumerator import DEFAULT_WD_CAP, DEFAULT_WORK_BUDGET


DEFAULT_SCHEMA_VERSION = "1.0.0"
BUDGET_ENV_VAR = "MDCQ_BUDGET"

OutputFormat = Literal["json", "csv", "text"]

_POWER = re.compile(r"^\s*(\d+)\s*\*\*\s*(\d+)\s*$")


def parse_budget(text: str) -> int:
    """Accept ``17179869184``, ``2**34`` or ``1_000_000``."""

    match = _POWER.match(text)
    try:
        value = int(match[1]) ** int(match[2]) if match else int(text.strip())
    except ValueError as exc:
        raise SpecError(f"cannot parse budget {text!r}", field="budget") from exc
    if value <= 0:
        raise SpecError(f"budget must be positive, got {value}", field="budget")
    return value


def default_budget(environ: Mapping[str, str] | None = None) -> int:
    env = os.environ if environ is None else environ
    raw = env.get(BUDGET_ENV_VAR)
    return parse_budget(raw) if raw else DEFAULT_WORK_BUDGET


@dataclass(slots=True)
class RunConfig:
    """Everything a command needs, echoed into the reproducibility header."""

    command: str
    inputs: Sequence[Path] = field(default_factory=list)
    dims: Sequence[tuple[int, ...]] = field(default_factory=list)
    threads: int = 1
    seed: int = 0
    iterations: int = 0
    radius: int | None = None
    budget: int = DEFAULT_WORK_BUDGET
    wd_cap: int = DEFAULT_WD_CAP
    output_format: OutputFormat = "json"
    output: Path | None = None
    witness: bool = False
    certificate: bool = False
    include_empty: bool = False
    strict: bool = False
    schema_version: str = DEFAULT_SCHEMA_VERSION

    @classmethod
    def from_args(
        cls, args: Namespace, environ: Mapping[str, str] | None = None
    ) -> "RunConfig":
        """Build from parsed CLI arguments; an explicit ``--budget`` beats the env."""

        explicit = getattr(args, "budget", None)
        budget = parse_budget(explicit) if explicit else default_budget(environ)
        inputs = [Path(p) for p in (getattr(args, "inputs", None) or [])]
        spec = getattr(args, "spec", None)
        if spec:
            inputs.insert(0, Path(spec))
        threads = getattr(args, "threads", 1) or 1
        if threads < 1:
            raise SpecError("--threads must be at least 1", field="threads")
        return cls(
            command=args.command,
            inputs=inputs,
            dims=list(getattr(args, "dims", None) or []),
            threads=threads,
            seed=getattr(args, "seed", 0) or 0,
            iterations=getattr(args, "iters", 0) or 0,
            radius=getattr(args, "radius", None),
            budget=budget,
            wd_cap=getattr(args, "wd_cap", DEFAULT_WD_CAP) or DEFAULT_WD_CAP,
            output_format=getattr(args, "format", "json") or "json",
            output=Path(args.output) if getattr(args, "output", None) else None,
            witness=bool(getattr(args, "witness", False)),
            certificate=bool(getattr(args, "certificate", False)),
            include_empty=bool(getattr(args, "include_empty", False)),
            strict=bool(getattr(args, "strict", False)),
            schema_version=getattr(args, "schema_version", None)
            or DEFAULT_SCHEMA_VERSION,
        )

    def with_updates(self, **overrides: object) -> "RunConfig":
        """Return a copy of the configuration with selective overrides."""

        data = asdict(self)
        data.update(overrides)
        return RunConfig(**data)  # type: ignore[arg-type]

    def input_hash(self) -> str:
        """SHA-256 over the input file contents and the dimension vectors."""

        h = hashlib.sha256()
        for path in self.inputs:
            try:
                h.update(path.read_bytes())
            except OSError:
                h.update(str(path).encode("utf-8"))
        h.update(json.dumps([list(d) for d in self.dims]).encode("utf-8"))
        return h.hexdigest()

    def header(self) -> dict[str, Any]:
        return {
            "version": __version__,
            "command": self.command,
            "seed": self.seed,
            "iterations": self.iterations,
            "radius": self.radius,
            "budget": self.budget,
            "wdCap": self.wd_cap,
            "threads": self.threads,
            "inputHash": self.input_hash(),
        }
