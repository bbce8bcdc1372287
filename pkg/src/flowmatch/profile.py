"""Service profiles (typed, concept-annotated inputs and outputs) and the
registry of advertised services."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, NamedTuple

from .scoring import DataType
from .taxonomy import Taxonomy


class ProfileError(ValueError):
    pass


class RegistryConflict(ProfileError):
    """Duplicate or unknown service id."""


@dataclass(frozen=True)
class ParameterSpec:
    name: str
    concept: str
    datatype: DataType

    def to_dict(self) -> dict:
        return {"name": self.name, "concept": self.concept, "type": self.datatype.value}


@dataclass(frozen=True)
class ServiceProfile:
    id: str
    inputs: tuple[ParameterSpec, ...] = ()
    outputs: tuple[ParameterSpec, ...] = ()

    def __post_init__(self):
        if not isinstance(self.id, str) or not self.id:
            raise ProfileError("service id must be a non-empty string")
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "outputs", tuple(self.outputs))
        for side in ("inputs", "outputs"):
            names = [p.name for p in getattr(self, side)]
            dupes = sorted({n for n in names if names.count(n) > 1})
            if dupes:
                raise ProfileError(f"{self.id}: duplicate {side[:-1]} name(s): {', '.join(dupes)}")

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "inputs": [p.to_dict() for p in self.inputs],
            "outputs": [p.to_dict() for p in self.outputs],
        }


def _parse_param(doc: object, where: str) -> ParameterSpec:
    if not isinstance(doc, dict):
        raise ProfileError(f"{where}: parameter must be an object")
    for key in ("name", "concept", "type"):
        if not isinstance(doc.get(key), str) or not doc[key]:
            raise ProfileError(f"{where}: field {key!r} must be a non-empty string")
    try:
        dtype = DataType.parse(doc["type"])
    except ValueError as exc:
        raise ProfileError(f"{where}: {exc}") from None
    return ParameterSpec(doc["name"], doc["concept"], dtype)


def profile_from_dict(doc: object) -> ServiceProfile:
    if not isinstance(doc, dict):
        raise ProfileError("profile must be a JSON object")
    sid = doc.get("id")
    if not isinstance(sid, str) or not sid:
        raise ProfileError("profile id must be a non-empty string")
    sides = {}
    for side in ("inputs", "outputs"):
        items = doc.get(side, [])
        if not isinstance(items, list):
            raise ProfileError(f"{sid}: {side!r} must be a list")
        sides[side] = tuple(_parse_param(p, f"{sid}.{side}[{k}]") for k, p in enumerate(items))
    return ServiceProfile(sid, **sides)


def parse_profile(source: str | bytes) -> ServiceProfile:
    try:
        doc = json.loads(source)
    except json.JSONDecodeError as exc:
        raise ProfileError(f"invalid JSON: {exc}") from exc
    return profile_from_dict(doc)


def read_profile(path: str | Path) -> ServiceProfile:
    return parse_profile(Path(path).read_text(encoding="utf-8"))


def dump_profile(p: ServiceProfile) -> str:
    return json.dumps(p.to_dict(), indent=2, ensure_ascii=False)


class Issue(NamedTuple):
    side: str
    name: str
    concept: str

    def __str__(self) -> str:
        return f"{self.side} parameter {self.name!r}: unknown concept {self.concept!r}"


def validate_profile(p: ServiceProfile, t: Taxonomy) -> list[Issue]:
    """Parameters whose concept is missing from ``t``; empty means valid."""
    return [
        Issue(side, q.name, q.concept)
        for side, params in (("input", p.inputs), ("output", p.outputs))
        for q in params
        if q.concept not in t
    ]


class Registry:
    """Ordered, duplicate-free collection of advertised services.

    Mutators return a new registry; existing entries keep their order.
    """

    def __init__(self, services: Iterable[ServiceProfile] = ()):
        services = tuple(services)
        ids = [s.id for s in services]
        dupes = sorted({i for i in ids if ids.count(i) > 1})
        if dupes:
            raise RegistryConflict(f"duplicate service id(s): {', '.join(dupes)}")
        self._services = services

    @property
    def services(self) -> tuple[ServiceProfile, ...]:
        return self._services

    def __iter__(self) -> Iterator[ServiceProfile]:
        return iter(self._services)

    def __len__(self) -> int:
        return len(self._services)

    def __contains__(self, sid: object) -> bool:
        return any(s.id == sid for s in self._services)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Registry) and self._services == other._services

    def __repr__(self) -> str:
        return f"Registry({[s.id for s in self._services]})"

    def get(self, sid: str) -> ServiceProfile:
        for s in self._services:
            if s.id == sid:
                return s
        raise RegistryConflict(f"no service with id {sid!r}")


def register_service(r: Registry, p: ServiceProfile) -> Registry:
    if p.id in r:
        raise RegistryConflict(f"service id {p.id!r} already registered")
    return Registry((*r.services, p))


def remove_service(r: Registry, sid: str) -> Registry:
    if sid not in r:
        raise RegistryConflict(f"no service with id {sid!r}")
    return Registry(s for s in r if s.id != sid)


def load_registry(source: str | bytes) -> Registry:
    """Parse a JSON array of profiles. Blank input is an empty registry."""
    if not source.strip():
        return Registry()
    try:
        doc = json.loads(source)
    except json.JSONDecodeError as exc:
        raise ProfileError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, list):
        raise ProfileError("registry must be a JSON array of profiles")
    return Registry(profile_from_dict(d) for d in doc)


def save_registry(r: Registry) -> str:
    return json.dumps([s.to_dict() for s in r], indent=2, ensure_ascii=False) + "\n"


def read_registry(path: str | Path) -> Registry:
    return load_registry(Path(path).read_text(encoding="utf-8"))


def write_registry(r: Registry, path: str | Path) -> None:
    Path(path).write_text(save_registry(r), encoding="utf-8")
