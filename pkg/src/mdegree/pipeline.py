"""End-to-end analysis: validate, classify, local algebra, EKL form, GW class."""
from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any

from . import endo as E
from .ekl import divided_difference_matrix, ekl_gram, jacobian_consistency, telescopes
from .endo import EndoCandidate, Flavor, local_algebra, minimal_powers, nullhomotopy_report, origin_is_zero, validate
from .errors import InvariantViolation, MDegreeError, NotPuncturedEndo
from .fields import Field, make_field
from .groebner import buchberger, is_groebner, quotient_staircase
from .gw import (
    BRUTE_FORCE_MAX_P,
    BRUTE_FORCE_MAX_RANK,
    DiagonalForm,
    SymForm,
    brute_force_isotropic_fp,
    diagonalize,
    ekl_obstruction,
    gw_equal,
    gw_invariants,
    hyperbolic,
    isotropic,
)
from .poly import DEFAULT_ORDER, Monomial, Order

DEFAULT_TARGETS = ("<1,1>",)


class JobError(MDegreeError, ValueError):
    """Malformed job file."""


@dataclass(frozen=True)
class JobSpec:
    field: Field
    vars: tuple[str, ...]
    polys: tuple[str, ...]
    order: Order = DEFAULT_ORDER
    oracle_checks: bool = False
    targets: tuple[str, ...] = DEFAULT_TARGETS
    name: str | None = None
    expect: dict | None = None

    @classmethod
    def from_dict(cls, data: dict, **overrides) -> JobSpec:
        if not isinstance(data, dict):
            raise JobError("job must be a JSON object")
        missing = [k for k in ("field", "vars", "polys") if k not in data]
        if missing:
            raise JobError(f"job is missing {', '.join(missing)}")
        vars_, polys = data["vars"], data["polys"]
        if not isinstance(vars_, list) or not all(isinstance(v, str) for v in vars_):
            raise JobError("'vars' must be a list of strings")
        if not isinstance(polys, list) or not all(isinstance(p, str) for p in polys):
            raise JobError("'polys' must be a list of strings")
        if len(vars_) != len(polys):
            raise JobError(f"{len(polys)} polynomials for {len(vars_)} variables")
        opts = dict(data.get("options") or {})
        opts.update({k: v for k, v in overrides.items() if v is not None})
        targets = opts.get("targets", DEFAULT_TARGETS)
        if isinstance(targets, str):
            targets = [targets]
        try:
            return cls(
                field=make_field(data["field"]),
                vars=tuple(vars_),
                polys=tuple(polys),
                order=Order.parse(opts.get("order", DEFAULT_ORDER)),
                oracle_checks=bool(opts.get("oracle_checks", False)),
                targets=tuple(targets),
                name=data.get("name"),
                expect=data.get("expect"),
            )
        except ValueError as exc:
            raise JobError(str(exc)) from exc

    @classmethod
    def load(cls, path, **overrides) -> JobSpec:
        try:
            data = json.loads(Path(path).read_text())
        except OSError as exc:
            raise JobError(f"cannot read {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise JobError(f"{path}: invalid JSON: {exc}") from exc
        return cls.from_dict(data, **overrides)

    def candidate(self) -> EndoCandidate:
        return EndoCandidate.from_strings(self.field, self.vars, self.polys)


def format_monomial(m: Monomial, names) -> str:
    parts = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e]
    return "*".join(parts) or "1"


def _matrix_strings(rows, F: Field):
    return [[F.format_scalar(c) for c in r] for r in rows]


@dataclass
class AnalysisReport:
    field: str
    vars: list
    polys: list
    order: str
    valid: bool
    name: str | None = None
    flavor: str | None = None
    error: dict | None = None
    groebner_basis: list | None = None
    radical_witnesses: dict | None = None
    minimal_powers: dict | None = None
    local_algebra: dict | None = None
    ekl_gram: list | None = None
    diagonal: list | None = None
    invariants: dict | None = None
    jacobian_consistency: bool | None = None
    qsw_check: str | None = None
    obstructions: list | None = None
    nullhomotopy: dict | None = None
    oracle_checks: dict | None = None
    citations: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    @classmethod
    def from_dict(cls, data: dict) -> AnalysisReport:
        known = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in data.items() if k in known})

    @classmethod
    def from_json(cls, text: str) -> AnalysisReport:
        return cls.from_dict(json.loads(text))

    def format_text(self) -> str:
        title = f"[{self.name}] " if self.name else ""
        lines = [f"{title}f = ({', '.join(self.polys)}) over {self.field}"]
        if not self.valid:
            lines.append(f"  INVALID: {self.error.get('message')}")
            return "\n".join(lines)
        lines.append(f"  flavor: {self.flavor}")
        if self.radical_witnesses:
            lines.append("  radical witnesses: " + ", ".join(
                f"{v} in sqrt<f>" for v, ok in self.radical_witnesses.items() if ok))
        if self.nullhomotopy:
            lines.append(f"  verdict: {self.nullhomotopy['verdict']} ({self.nullhomotopy['explanation']})")
        if self.minimal_powers:
            lines.append("  minimal powers: " + ", ".join(f"d_{v} = {d}" for v, d in self.minimal_powers.items()))
        if self.local_algebra:
            la = self.local_algebra
            lines.append(f"  local algebra: dim {la['dim']}, basis {{{', '.join(la['basis'])}}}")
        if self.ekl_gram is not None:
            lines.append("  EKL gram: " + json.dumps(self.ekl_gram))
            lines.append("  diagonal: <" + ", ".join(self.diagonal) + ">")
            inv = self.invariants
            extra = f", signature {inv['signature']}" if "signature" in inv else ""
            lines.append(
                f"  GW class: rank {inv['rank']}, disc {inv['disc']}{extra}, "
                f"witt index {inv['witt_index']}, anisotropic <{', '.join(inv['anisotropic'])}>"
            )
            lines.append(f"  jacobian consistency: {self.jacobian_consistency}")
            lines.append(f"  QSW hyperbolic-summand check: {self.qsw_check}")
        for ob in self.obstructions or []:
            line = f"  target <{', '.join(ob['target'])}>: {ob['status']} ({ob['reason']})"
            if ob.get("note"):
                line += f" [field-sensitive: {ob['note']}]"
            lines.append(line)
        if self.oracle_checks:
            lines.append("  oracle checks: " + ", ".join(
                f"{k}={'ok' if v else 'FAIL'}" for k, v in self.oracle_checks.items()))
        for w in self.warnings:
            lines.append(f"  warning: {w}")
        lines.append("  chain: " + " -> ".join(self.citations))
        return "\n".join(lines)

    def violations(self) -> list[str]:
        out = []
        if self.qsw_check == "fail":
            out.append("qsw_check")
        if self.jacobian_consistency is False:
            out.append("jacobian_consistency")
        out += [k for k, v in (self.oracle_checks or {}).items() if not v]
        return out


def _obstructions(job: JobSpec) -> list[dict]:
    out = []
    for t in job.targets:
        d = DiagonalForm.parse(t, job.field)
        out.append(ekl_obstruction(d).to_dict())
    return out


def analyze(job: JobSpec) -> AnalysisReport:
    """Run the full pipeline. Raises NotPuncturedEndo for invalid maps."""
    cand = job.candidate()
    ring = cand.ring
    F = ring.field
    names = ring.vars
    v = validate(cand, job.order)
    rep = AnalysisReport(
        field=str(F),
        vars=list(names),
        polys=[p.format() for p in cand.polys],
        order=job.order.value,
        valid=True,
        name=job.name,
        flavor=v.flavor.value,
        groebner_basis=[g.format(job.order) for g in v.gb],
        radical_witnesses=dict(zip(names, v.radical_witnesses)),
        citations=[E.CITE_RADICAL, E.CITE_DICHOTOMY],
        warnings=list(v.warnings),
    )
    checks: dict[str, bool] = {}
    if job.oracle_checks:
        checks["groebner_criterion"] = is_groebner(v.gb)
        checks["flavor_origin_duality"] = (v.flavor is Flavor.UNIMODULAR) == (not origin_is_zero(cand))

    if v.flavor is Flavor.UNIMODULAR:
        rep.nullhomotopy = nullhomotopy_report(v).to_dict()
        rep.citations += [E.CITE_NULLHOMOTOPY, E.CITE_QUILLEN_SUSLIN]
        rep.obstructions = _obstructions(job)
        if job.oracle_checks:
            rep.oracle_checks = checks
        return rep

    alg = local_algebra(v)
    powers = minimal_powers(v)
    rep.minimal_powers = dict(zip(names, powers))
    rep.local_algebra = {"dim": alg.dim, "basis": [format_monomial(m, names) for m in alg.basis]}
    rep.citations.append(E.CITE_FINITE_LENGTH)

    e = ekl_gram(v, alg)
    rep.ekl_gram = _matrix_strings(e.gram, F)
    rep.citations.append(E.CITE_EKL)
    diag = diagonalize(SymForm(e.gram, F))
    rep.diagonal = [F.format_scalar(a) for a in diag.entries]
    inv = gw_invariants(diag)
    rep.invariants = inv.to_dict()
    rep.jacobian_consistency = jacobian_consistency(v, e)
    if diag.rank >= 2:
        rep.qsw_check = "pass" if inv.witt_index >= 1 else "fail"
        rep.citations.append(E.CITE_QSW)
    else:
        rep.qsw_check = "not-applicable"
    rep.obstructions = _obstructions(job)
    if any(o["status"] == "Obstructed" for o in rep.obstructions):
        rep.citations.append(E.CITE_OBSTRUCTION)

    if job.oracle_checks:
        checks["telescoping"] = telescopes(v, divided_difference_matrix(v))
        checks["powers_bounded"] = all(d <= alg.dim + 1 for d in powers)
        other = Order.LEX if job.order is Order.DEGREVLEX else Order.DEGREVLEX
        checks["order_independent_dim"] = len(quotient_staircase(buchberger(cand.polys, other))) == alg.dim
        aniso = DiagonalForm.parse("<" + ",".join(inv.to_dict()["anisotropic"]) + ">", F)
        rebuilt = aniso
        for _ in range(inv.witt_index):
            rebuilt = rebuilt + hyperbolic(F)
        checks["witt_consistency"] = (
            inv.rank == 2 * inv.witt_index + aniso.rank
            and not isotropic(aniso)
            and gw_equal(diag, rebuilt)
        )
        if not F.is_rational and F.p <= BRUTE_FORCE_MAX_P and diag.rank <= BRUTE_FORCE_MAX_RANK:
            checks["isotropy_oracle"] = isotropic(diag) == brute_force_isotropic_fp(diag)
        rep.oracle_checks = checks
    return rep


def analyze_safe(job: JobSpec) -> AnalysisReport:
    """Like :func:`analyze` but records an invalid map in the report."""
    try:
        return analyze(job)
    except NotPuncturedEndo as exc:
        return invalid_report(job, exc)


def invalid_report(job: JobSpec, exc: NotPuncturedEndo) -> AnalysisReport:
    cand = job.candidate()
    return AnalysisReport(
        field=str(job.field),
        vars=list(job.vars),
        polys=[p.format() for p in cand.polys],
        order=job.order.value,
        valid=False,
        name=job.name,
        error={"type": "NotPuncturedEndo", "index": exc.index, "witness": exc.witness, "message": str(exc)},
        citations=[E.CITE_RADICAL],
    )


def check_report(report: AnalysisReport) -> None:
    bad = report.violations()
    if bad:
        raise InvariantViolation(f"internal invariant violated: {', '.join(bad)}")


# corpus

def corpus_dir() -> Path:
    env = os.environ.get("MDEGREE_CORPUS_DIR")
    if env:
        return Path(env)
    return Path(__file__).with_name("corpus")


def corpus_files(directory: Path | None = None) -> list[Path]:
    d = directory or corpus_dir()
    if not d.is_dir():
        raise JobError(f"corpus directory {d} not found")
    return sorted(d.glob("*.json"))


def expectation_mismatches(report: AnalysisReport, expect: dict | None) -> list[str]:
    if not expect:
        return []
    got = {
        "valid": report.valid,
        "flavor": report.flavor,
        "dim": (report.local_algebra or {}).get("dim"),
        "witness": (report.error or {}).get("witness"),
        "witt_index": (report.invariants or {}).get("witt_index"),
    }
    return [f"{k}: expected {v!r}, got {got.get(k)!r}" for k, v in expect.items() if got.get(k) != v]


def run_corpus_entry(path: str, oracle_checks: bool = False, order: str | None = None) -> dict[str, Any]:
    job = JobSpec.load(path, oracle_checks=oracle_checks or None, order=order)
    name = job.name or Path(path).stem
    report = analyze_safe(job)
    report.name = name
    return {
        "name": name,
        "report": report.to_dict(),
        "mismatches": expectation_mismatches(report, job.expect),
        "violations": report.violations(),
    }
