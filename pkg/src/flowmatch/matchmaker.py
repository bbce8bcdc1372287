"""Three-phase matchmaking: semantic parameter matching, datatype matching,
and the weighted final score, plus registry-wide ranking."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .maxflow import BipartiteInstance, LevelResult, complete_match_level
from .profile import ParameterSpec, Registry, ServiceProfile
from .scoring import SEMANTIC_LEVELS, DegreeScore, TypeMatrix, case_score
from .taxonomy import Taxonomy

Pairs = tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class SideResult:
    sim: int
    pairs: Pairs = ()


def side_instance(
    req: Sequence[ParameterSpec],
    cand: Sequence[ParameterSpec],
    weigh: Callable[[ParameterSpec, ParameterSpec], int],
) -> BipartiteInstance:
    edges = []
    for i, a in enumerate(req):
        for j, b in enumerate(cand):
            w = int(weigh(a, b))
            if w > 0:
                edges.append((i, j, w))
    return BipartiteInstance([p.name for p in req], [p.name for p in cand], edges)


def _named(inst: BipartiteInstance, res: LevelResult) -> SideResult:
    return SideResult(res.level, tuple((inst.left[i], inst.right[j]) for i, j in res.matching))


def match_side(req: Sequence[ParameterSpec], cand: Sequence[ParameterSpec], t: Taxonomy) -> SideResult:
    """Bottleneck semantic level at which every requester parameter is covered."""
    inst = side_instance(req, cand, lambda a, b: case_score(t, a.concept, b.concept))
    res = complete_match_level(inst, SEMANTIC_LEVELS)
    return SideResult(DegreeScore(res.level), _named(inst, res).pairs)


def type_side(req: Sequence[ParameterSpec], cand: Sequence[ParameterSpec], m: TypeMatrix) -> SideResult:
    inst = side_instance(req, cand, lambda a, b: m.score(a.datatype, b.datatype))
    return _named(inst, complete_match_level(inst, m.levels()))


def parsim(outsim: int, insim: int) -> DegreeScore:
    if outsim == 0 or insim == 0:
        return DegreeScore.FAIL
    if outsim == 3 or insim == 3:
        return DegreeScore.SPECIFIC
    if outsim == 7 or insim == 7:
        return DegreeScore.GENERAL
    return DegreeScore.EXACT


def typesim(req: ServiceProfile, cand: ServiceProfile, m: TypeMatrix) -> int:
    """Weaker of the output-side and input-side datatype levels."""
    return min(type_side(req.outputs, cand.outputs, m).sim, type_side(req.inputs, cand.inputs, m).sim)


def final_score(parsim_v: int, typesim_v: int) -> Fraction:
    """Percentage in [0, 100], semantics weighted 2:1 over datatypes."""
    if parsim_v == 0:
        return Fraction(0)
    return Fraction((2 * parsim_v + typesim_v) * 10, 3)


def _pairs_to_json(pairs: Pairs) -> list[list[str]]:
    return [list(p) for p in pairs]


@dataclass(frozen=True)
class MatchReport:
    requester: str
    candidate: str
    outsim: DegreeScore
    insim: DegreeScore
    parsim: DegreeScore
    typesim: int
    final: Fraction
    output_pairs: Pairs = field(default=())
    input_pairs: Pairs = field(default=())

    @property
    def final_display(self) -> str:
        return f"{float(self.final):.2f}"

    def to_dict(self) -> dict:
        return {
            "requester": self.requester,
            "candidate": self.candidate,
            "outsim": int(self.outsim),
            "insim": int(self.insim),
            "parsim": int(self.parsim),
            "typesim": self.typesim,
            "final": round(float(self.final), 2),
            "final_exact": str(self.final),
            "output_pairs": _pairs_to_json(self.output_pairs),
            "input_pairs": _pairs_to_json(self.input_pairs),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "MatchReport":
        return cls(
            requester=d["requester"],
            candidate=d["candidate"],
            outsim=DegreeScore(d["outsim"]),
            insim=DegreeScore(d["insim"]),
            parsim=DegreeScore(d["parsim"]),
            typesim=int(d["typesim"]),
            final=Fraction(d["final_exact"]),
            output_pairs=tuple(tuple(p) for p in d["output_pairs"]),
            input_pairs=tuple(tuple(p) for p in d["input_pairs"]),
        )


def match_pair(req: ServiceProfile, cand: ServiceProfile, t: Taxonomy, m: TypeMatrix) -> MatchReport:
    out = match_side(req.outputs, cand.outputs, t)
    inp = match_side(req.inputs, cand.inputs, t)
    par = parsim(out.sim, inp.sim)
    typ = typesim(req, cand, m)
    return MatchReport(
        requester=req.id,
        candidate=cand.id,
        outsim=out.sim,
        insim=inp.sim,
        parsim=par,
        typesim=typ,
        final=final_score(par, typ),
        output_pairs=out.pairs,
        input_pairs=inp.pairs,
    )


def rank(
    req: ServiceProfile,
    r: Registry,
    t: Taxonomy,
    m: TypeMatrix,
    min_final: float | Fraction | None = None,
) -> list[MatchReport]:
    """Candidates best first: final, then parsim, descending; id ascending on ties."""
    reports = [match_pair(req, cand, t, m) for cand in r]
    if min_final is not None:
        threshold = Fraction(min_final)
        reports = [rep for rep in reports if rep.final >= threshold]
    reports.sort(key=lambda rep: (-rep.final, -rep.parsim, rep.candidate))
    return reports


def explain_sides(
    req: ServiceProfile, cand: ServiceProfile, t: Taxonomy, m: TypeMatrix
) -> list[tuple[str, BipartiteInstance, LevelResult]]:
    """The four bipartite graphs behind a match, each with its chosen level."""
    semantic = lambda a, b: case_score(t, a.concept, b.concept)  # noqa: E731
    datatype = lambda a, b: m.score(a.datatype, b.datatype)  # noqa: E731
    out = []
    for name, weigh, levels, side in (
        ("semantic outputs", semantic, SEMANTIC_LEVELS, "outputs"),
        ("semantic inputs", semantic, SEMANTIC_LEVELS, "inputs"),
        ("type outputs", datatype, m.levels(), "outputs"),
        ("type inputs", datatype, m.levels(), "inputs"),
    ):
        inst = side_instance(getattr(req, side), getattr(cand, side), weigh)
        out.append((name, inst, complete_match_level(inst, levels)))
    return out
