"""Analysis reports: the aggregate of exact metrics and bounds for one code,
with a versioned JSON form."""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from typing import Optional

from . import __version__
from .bounds import BoundResult, CodeContext, all_bounds
from .codes import LinearCode, check_guard
from .errors import SoundnessViolation
from .metrics import InsdelResult, ghw_profile, insdel_code_exact

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class AnalysisReport:
    code: dict
    ghw: Optional[tuple[int, ...]] = None
    exact: Optional[InsdelResult] = None
    bounds: tuple[BoundResult, ...] = ()
    environment: dict = dc_field(default_factory=dict)
    notes: tuple[str, ...] = ()

    def bound(self, name: str) -> BoundResult:
        for b in self.bounds:
            if b.name == name:
                return b
        raise KeyError(name)

    def soundness_violations(self) -> list[str]:
        if self.exact is None:
            return []
        return [
            f"{b.name} = {b.value} < exact insdel distance {self.exact.distance}"
            for b in self.bounds
            if b.applicable and b.value is not None and b.value < self.exact.distance
        ]

    def check_soundness(self) -> None:
        bad = self.soundness_violations()
        if bad:
            raise SoundnessViolation("; ".join(bad))

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "code": dict(self.code),
            "ghw": list(self.ghw) if self.ghw is not None else None,
            "exact": self.exact.to_dict() if self.exact is not None else None,
            "bounds": [b.to_dict() for b in self.bounds],
            "environment": dict(self.environment),
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "AnalysisReport":
        if d.get("schema") != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema {d.get('schema')!r}")
        return cls(
            code=d["code"],
            ghw=tuple(d["ghw"]) if d.get("ghw") is not None else None,
            exact=InsdelResult.from_dict(d["exact"]) if d.get("exact") else None,
            bounds=tuple(BoundResult.from_dict(b) for b in d.get("bounds", [])),
            environment=d.get("environment", {}),
            notes=tuple(d.get("notes", [])),
        )

    def to_json(self) -> str:
        """Serialise, re-checking that no applicable bound undercuts the exact value."""
        self.check_soundness()
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "AnalysisReport":
        return cls.from_dict(json.loads(text))


def code_summary(code: LinearCode, d_H: Optional[int] = None) -> dict:
    out = {
        "label": code.label,
        "q": code.q,
        "p": code.field.p,
        "m": code.field.m,
        "n": code.n,
        "k": code.k,
        "meta": code.info,
    }
    if d_H is not None:
        out["d_H"] = d_H
    return out


def analyze(
    code: LinearCode,
    exact: bool = True,
    ghw: bool = True,
    bounds: bool = True,
    codeword_guard: Optional[int] = None,
    subspace_guard: Optional[int] = None,
    threads: int = 1,
    seed: int = 0,
    notes: tuple[str, ...] = (),
) -> AnalysisReport:
    """Run the requested computations.

    Exact insdel distance and the GHW profile raise ``GuardExceeded`` when
    requested beyond their guards; bounds degrade to partial scans or
    inapplicable results instead.
    """
    ctx = CodeContext(code, codeword_guard, subspace_guard)
    exact_result = None
    profile = None
    if exact:
        exact_result = insdel_code_exact(code, ctx.codeword_guard, threads=threads)
    if ghw:
        check_guard(code, ctx.codeword_guard)
        profile = ghw_profile(code, ctx.subspace_guard, ctx.codeword_guard)
        ctx.__dict__["ghw"] = profile
    bound_results = tuple(all_bounds(code, ctx)) if bounds else ()
    d_H = ctx.d_H if (exact or ghw or bounds) else None
    environment = {
        "tool_version": __version__,
        "guards": {"codewords": ctx.codeword_guard, "subspaces": ctx.subspace_guard},
        "seed": seed,
    }
    return AnalysisReport(
        code=code_summary(code, d_H),
        ghw=profile.values if profile is not None else None,
        exact=exact_result,
        bounds=bound_results,
        environment=environment,
        notes=tuple(notes),
    )
