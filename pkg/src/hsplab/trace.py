"""Structured record of one algorithm run."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field


def _plain(x):
    """Convert numpy scalars and tuples into JSON-friendly values."""
    if hasattr(x, "item") and not isinstance(x, (list, tuple, dict)):
        return x.item()
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x


@dataclass
class RunTrace:
    """Random choices, per-round samples and the verdict of one run.

    Every verdict is backed by arithmetic that can be replayed from
    ``rounds`` (e.g. the measured label and the convergents tried).
    """

    algorithm: str
    choices: dict = field(default_factory=dict)
    rounds: list = field(default_factory=list)
    verdict: object = None
    oracle_calls: int = 0
    steps: int = 0
    notes: list = field(default_factory=list)

    def add_round(self, **info):
        self.rounds.append(info)
        return info

    def absorb(self, state):
        """Add a finished statevector's operation counters."""
        self.oracle_calls += state.oracle_calls
        self.steps += state.ops + state.oracle_calls

    def to_dict(self) -> dict:
        return _plain(asdict(self))
