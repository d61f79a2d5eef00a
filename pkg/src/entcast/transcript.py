"""Ordered log of what each party did during a protocol run."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

EVENT_KINDS = ("local_op", "measurement", "classical_send", "classical_receive")


class TranscriptError(ValueError):
    pass


@dataclass(frozen=True)
class Event:
    step: int
    actor: str
    kind: str
    payload: dict[str, Any]

    def to_dict(self) -> dict:
        return {"step": self.step, "actor": self.actor, "action": self.kind, **self.payload}


@dataclass
class ProtocolTranscript:
    seed: int | None = None
    events: list[Event] = field(default_factory=list)

    def _add(self, actor: str, kind: str, payload: dict) -> Event:
        ev = Event(len(self.events), actor, kind, payload)
        self.events.append(ev)
        return ev

    def measurement(self, actor: str, qubits, outcome: str, probability: float) -> Event:
        return self._add(actor, "measurement", {
            "qubits": list(qubits), "outcome": outcome, "probability": float(probability),
        })

    def send(self, actor: str, to, message: str) -> Event:
        return self._add(actor, "classical_send", {"to": list(to), "classical_message": message})

    def receive(self, actor: str, sender: str, message: str) -> Event:
        matched = any(
            ev.kind == "classical_send" and ev.actor == sender and actor in ev.payload["to"]
            and ev.payload["classical_message"] == message
            for ev in self.events
        )
        if not matched:
            raise TranscriptError(f"{actor} receives {message!r} from {sender} with no matching send")
        return self._add(actor, "classical_receive", {"from": sender, "classical_message": message})

    def local_op(self, actor: str, operation: str, **extra) -> Event:
        return self._add(actor, "local_op", {"operation": operation, **extra})

    def to_dict(self) -> dict:
        return {"seed": self.seed, "events": [ev.to_dict() for ev in self.events]}

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)
