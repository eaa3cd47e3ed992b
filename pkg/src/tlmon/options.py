"""Monitor configuration."""

from dataclasses import dataclass


@dataclass(frozen=True)
class MonitorOptions:
    """Configuration shared by the parser, compiler and engines.

    time_model: "discrete" or "dense"
    semantics:  "boolean" or "robust"
    condense:   merge equal consecutive verdicts (discrete: emit on change)
    time_field: name of the timestamp field in dense mode
    time_scale: integer internal units per input time unit (dense)
    bits:       bit width per quantified variable
    """

    time_model: str = "discrete"
    semantics: str = "boolean"
    condense: bool = True
    time_field: str = "time"
    time_scale: int = 1000
    bits: int = 16

    def __post_init__(self):
        if self.time_model not in ("discrete", "dense"):
            raise ValueError(f"bad time model {self.time_model!r}")
        if self.semantics not in ("boolean", "robust"):
            raise ValueError(f"bad semantics {self.semantics!r}")
        if self.time_scale < 1:
            raise ValueError("time scale must be a positive integer")
        if not 1 <= self.bits <= 30:
            raise ValueError("bit width out of range")
