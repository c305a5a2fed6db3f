"""Machine-checkable property corpus: entry file parsing, the seeded
randomized runner, and verification reports.

The corpus ships as a structured text file (``data/catalog.cat``).  Each
entry carries a figure program whose ``assert`` statements pair 1:1 with
``anchor`` lines quoting the claim being checked.  Negative-control entries
(``expect = fail``) guard the predicates against passing vacuously.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from importlib import resources
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import dsl
from .errors import ConstructionError, GeometryError, UnknownEntry
from .samplers import TriangleClassSampler

DEFAULT_TRIALS = 200
DEFAULT_SEED = 42
DEFAULT_TOL = 1e-7

# Per-assertion tolerance classes: multiplier applied to the run tolerance.
TOLERANCE_CLASSES = {"standard": 1.0, "loose": 10.0}


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    title: str
    tier: str                      # textual | reconstructed
    klass: str                     # triangle-class tag
    expect: str                    # pass | fail (fail = negative control)
    tolerance_class: str
    anchors: Tuple[str, ...]
    program_src: str
    program: dsl.Program
    alt_program_src: Optional[str] = None
    alt_program: Optional[dsl.Program] = None
    note: str = ""

    @property
    def assertion_kinds(self) -> Tuple[str, ...]:
        return tuple(a.call.func for a in self.program.assertions)


@dataclass(frozen=True)
class ExcludedEntry:
    id: str
    reason: str


@dataclass
class Catalog:
    entries: Dict[str, CatalogEntry] = field(default_factory=dict)
    excluded: List[ExcludedEntry] = field(default_factory=list)

    def entry(self, entry_id: str) -> CatalogEntry:
        try:
            return self.entries[entry_id]
        except KeyError:
            raise UnknownEntry(entry_id) from None

    def sorted_ids(self) -> List[str]:
        return sorted(self.entries, key=_id_key)


def _id_key(entry_id: str):
    parts = entry_id.split("-")
    group = 0 if parts[0] == "iso" else 1
    number = int(parts[1]) if len(parts) > 1 and parts[1].isdigit() else -1
    suffix = "-".join(parts[2:]) if number >= 0 else "-".join(parts[1:])
    return (group, number, suffix)


def parse_catalog(text: str) -> Catalog:
    catalog = Catalog()
    section: Optional[str] = None
    fields: Dict[str, object] = {}
    block_key: Optional[str] = None

    def finish():
        nonlocal fields
        if section is None:
            return
        if section == "excluded":
            return
        entry = _build_entry(section, fields)
        if entry.id in catalog.entries:
            raise ValueError(f"duplicate catalog entry {entry.id!r}")
        catalog.entries[entry.id] = entry
        fields = {}

    for raw in text.splitlines():
        if raw.startswith("["):
            finish()
            section = raw.strip().strip("[]")
            fields = {}
            block_key = None
            continue
        if section is None:
            if raw.strip() and not raw.lstrip().startswith("#"):
                raise ValueError(f"content before first section: {raw!r}")
            continue
        if raw.startswith((" ", "\t")) and block_key is not None:
            fields.setdefault(block_key, []).append(raw)
            continue
        block_key = None
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if section == "excluded":
            eid, _, reason = line.partition("=")
            catalog.excluded.append(ExcludedEntry(eid.strip(), reason.strip()))
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep:
            if key.endswith(":"):
                block_key = key[:-1].strip()
                fields.setdefault(block_key, [])
                continue
            raise ValueError(f"bad catalog line in [{section}]: {raw!r}")
        if key == "anchor":
            fields.setdefault("anchors", []).append(value.strip())
        else:
            fields[key] = value.strip()
    finish()
    return catalog


def _dedent(lines: Sequence[str]) -> str:
    body = [ln for ln in lines if ln.strip()]
    if not body:
        return ""
    indent = min(len(ln) - len(ln.lstrip()) for ln in body)
    return "\n".join(ln[indent:].rstrip() for ln in lines).strip("\n") + "\n"


def _build_entry(entry_id: str, fields: Dict[str, object]) -> CatalogEntry:
    tier = str(fields.get("tier", "textual"))
    if tier not in ("textual", "reconstructed"):
        raise ValueError(f"[{entry_id}] bad tier {tier!r}")
    tolclass = str(fields.get("tolerance", "standard"))
    if tolclass not in TOLERANCE_CLASSES:
        raise ValueError(f"[{entry_id}] bad tolerance class {tolclass!r}")
    expect = str(fields.get("expect", "pass"))
    if expect not in ("pass", "fail"):
        raise ValueError(f"[{entry_id}] bad expect {expect!r}")
    program_src = _dedent(fields.get("program", []))
    if not program_src:
        raise ValueError(f"[{entry_id}] missing program")
    program = dsl.parse(program_src)
    anchors = tuple(fields.get("anchors", []))
    n_asserts = len(program.assertions)
    if len(anchors) != n_asserts:
        raise ValueError(
            f"[{entry_id}] {n_asserts} assertions but {len(anchors)} anchor lines")
    alt_src = _dedent(fields.get("program2", [])) or None
    alt_program = dsl.parse(alt_src) if alt_src else None
    if alt_program is not None and len(alt_program.assertions) != n_asserts:
        raise ValueError(f"[{entry_id}] fallback program has different assertion count")
    klass = str(fields.get("class", "generic"))
    TriangleClassSampler.parse(klass)  # validate early
    return CatalogEntry(
        id=entry_id,
        title=str(fields.get("title", entry_id)),
        tier=tier,
        klass=klass,
        expect=expect,
        tolerance_class=tolclass,
        anchors=anchors,
        program_src=program_src,
        program=program,
        alt_program_src=alt_src,
        alt_program=alt_program,
        note=str(fields.get("note", "")),
    )


def load_default_catalog() -> Catalog:
    text = resources.files("isodyn.data").joinpath("catalog.cat").read_text(encoding="utf-8")
    return parse_catalog(text)


# ---------------------------------------------------------------------------
# Runner

def trial_seed(seed: int, entry_id: str, index: int) -> int:
    digest = hashlib.sha256(f"{seed}|{entry_id}|{index}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def _run_program(entry: CatalogEntry, program: dsl.Program, trials: int, seed: int,
                 tol: float) -> Tuple[int, int, List[Optional[float]]]:
    sampler = TriangleClassSampler.parse(entry.klass)
    completed = 0
    skipped = 0
    worst: List[Optional[float]] = [None] * len(program.assertions)
    for i in range(trials):
        rng = np.random.default_rng(trial_seed(seed, entry.id, i))
        ctx = dsl.EvalContext(rng, sampler=sampler, tol_rel=tol)
        try:
            _, residuals = dsl.evaluate(program, ctx)
        except ConstructionError:
            skipped += 1
            continue
        completed += 1
        for j, (_, res) in enumerate(residuals):
            if worst[j] is None or res > worst[j]:
                worst[j] = res
    return completed, skipped, worst


def run_entry(catalog: Catalog, entry_id: str, trials: int = DEFAULT_TRIALS,
              seed: int = DEFAULT_SEED, tol: float = DEFAULT_TOL) -> Dict:
    """Deterministic verification report for one entry.

    Entries with a fallback program get it when the primary fails; the
    report's ``variant`` field records which program supported the claim.
    """
    entry = catalog.entry(entry_id)
    tol_eff = tol * TOLERANCE_CLASSES[entry.tolerance_class]
    completed, skipped, worst = _run_program(entry, entry.program, trials, seed, tol)
    variant = 1
    ok = _passes(trials, completed, worst, tol_eff)
    if not ok and entry.alt_program is not None:
        completed2, skipped2, worst2 = _run_program(entry, entry.alt_program, trials, seed, tol)
        if _passes(trials, completed2, worst2, tol_eff):
            completed, skipped, worst = completed2, skipped2, worst2
            variant = 2
            ok = True
    if trials == 0:
        verdict = "pass"
    elif ok:
        verdict = "pass"
    elif entry.tier == "reconstructed":
        verdict = "failed-reconstruction"
    else:
        verdict = "fail"
    program = entry.program if variant == 1 else entry.alt_program
    assertions = []
    for j, assertion in enumerate(program.assertions):
        assertions.append({
            "kind": assertion.call.func,
            "max_residual": worst[j],
            "tolerance": tol_eff,
            "anchor": entry.anchors[j],
        })
    return {
        "id": entry.id,
        "title": entry.title,
        "tier": entry.tier,
        "class": entry.klass,
        "expect": entry.expect,
        "verdict": verdict,
        "trials_requested": trials,
        "trials_completed": completed,
        "trials_skipped": skipped,
        "seed": seed,
        "tol": tol,
        "variant": variant if entry.alt_program is not None else None,
        "vacuous": trials == 0 or completed == 0,
        "note": entry.note,
        "assertions": assertions,
    }


def _passes(requested: int, completed: int, worst: Sequence[Optional[float]],
            tol_eff: float) -> bool:
    if requested == 0:
        return True
    if completed < math.ceil(0.9 * requested):
        return False
    return all(w is not None and w <= tol_eff for w in worst)


def entry_ok(report: Dict) -> bool:
    """Whether an entry's outcome is acceptable for the suite."""
    verdict = report["verdict"]
    if report["expect"] == "fail":
        return verdict == "fail"
    if report["tier"] == "reconstructed":
        return verdict in ("pass", "failed-reconstruction")
    return verdict == "pass"


def run_all(catalog: Catalog, trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED,
            tol: float = DEFAULT_TOL, ids: Optional[Sequence[str]] = None) -> Dict:
    """Run entries (all by default) and aggregate a suite verdict."""
    selected = list(ids) if ids else catalog.sorted_ids()
    reports = [run_entry(catalog, eid, trials=trials, seed=seed, tol=tol)
               for eid in sorted(selected, key=_id_key)]
    summary = {
        "pass": sum(1 for r in reports if r["verdict"] == "pass" and r["expect"] == "pass"),
        "fail": sum(1 for r in reports if r["verdict"] == "fail" and r["expect"] == "pass"),
        "failed_reconstruction": sum(1 for r in reports if r["verdict"] == "failed-reconstruction"),
        "controls": sum(1 for r in reports if r["expect"] == "fail"),
        "controls_failing": sum(1 for r in reports if r["expect"] == "fail" and r["verdict"] == "fail"),
        "ok": all(entry_ok(r) for r in reports),
    }
    return {"entries": reports, "summary": summary}
