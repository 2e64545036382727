"""End-to-end analysis of one pair, and sweeps over all pairs of a degree.

Stages run in order and each records a status.  Budget failures and
mathematical dead ends (non-dense, non-integral) become statuses; they never
propagate out of :func:`analyze`.
"""

from __future__ import annotations

import csv
import hashlib
import json
import logging
import os
import signal
import threading
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field, fields
from math import lcm
from pathlib import Path
from typing import Iterable

from .congruence import (
    LevelSearchExceeded,
    MemoryBudgetExceeded,
    closure_level_and_index,
    format_factored,
)
from .construct import PolyPair, build_group, coeff_and_criterion, enumerate_pairs, parse_pair
from .density import exceptional_primes, is_dense
from .factor import FactorizationIncomplete, factorint
from .forms import FormDegenerate, FormNotUnique, NoIntegralCandidate, normalize_group
from .linalg import RatMatrix
from .zpoints import NotIntegral, TransversalBudgetExceeded, integer_points, verify_zpoints

__all__ = ["PipelineConfig", "RowReport", "analyze", "sweep", "STAGES", "TimeBudgetExceeded"]

log = logging.getLogger(__name__)

STAGES = ("construct", "form", "density", "zpoints", "primes", "closure", "verify")

_ENV = {
    "orbit_budget": "SPHYPER_ORBIT_BUDGET",
    "transversal_budget": "SPHYPER_TRANSVERSAL_BUDGET",
    "vector_budget": "SPHYPER_VECTOR_BUDGET",
    "time_budget": "SPHYPER_TIME_BUDGET",
}


class TimeBudgetExceeded(Exception):
    pass


@dataclass
class PipelineConfig:
    degree: int = 6
    ordered: bool = False
    seed: int = 0
    candidates: int = 16
    kbar_bound: int = 360
    subproducts: int = 300
    orbit_budget: int = 1_000_000
    transversal_budget: int = 100_000
    vector_budget: int = 1_000_000
    level_cap: int = 8
    time_budget: float | None = None
    verify_retries: int = 2
    workers: int = 1
    out: str | None = None

    @classmethod
    def from_file(cls, path: str | os.PathLike) -> "PipelineConfig":
        data = json.loads(Path(path).read_text())
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    def with_env(self) -> "PipelineConfig":
        """Copy with budget overrides taken from the environment."""
        d = asdict(self)
        for key, var in _ENV.items():
            if var in os.environ:
                d[key] = float(os.environ[var]) if key == "time_budget" else int(os.environ[var])
        return PipelineConfig(**d)

    def digest(self) -> str:
        """Hash of every setting that can change a row's result."""
        d = asdict(self)
        for k in ("workers", "out", "degree", "ordered"):
            d.pop(k)
        return hashlib.sha256(json.dumps(d, sort_keys=True).encode()).hexdigest()[:16]


@dataclass
class RowReport:
    nr: int | None
    pair: str
    degree: int
    mu_primes: list[int] = field(default_factory=list)
    int_index: int | None = None  # |L : L_Z|, depends on the base change
    kbar: int | None = None
    Pi: list[int] | None = None
    ilevel: str | None = None
    iindex: str | None = None
    level_exponents: dict[str, int] | None = None
    level_value: int | None = None
    index_value: int | None = None
    coeff: int | None = None
    sv_arithmetic: bool | None = None
    dense: bool | None = None
    verified: bool | None = None
    words_exportable: bool = False
    status: dict[str, str] = field(default_factory=dict)
    lz_generators: list[list[list[int]]] = field(default_factory=list, repr=False)
    transvection: list[list[int]] | None = field(default=None, repr=False)

    @property
    def overall(self) -> str:
        for s in STAGES:
            st = self.status.get(s, "skipped")
            if st != "ok":
                return f"{s}: {st}"
        return "ok"

    @property
    def status_class(self) -> str:
        """Stage and first word of the status, e.g. 'density: non-dense'."""
        o = self.overall
        if o == "ok":
            return o
        stage, rest = o.split(": ", 1)
        return f"{stage}: {rest.split(':')[0].split(' ')[0]}"

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=1)

    @classmethod
    def from_dict(cls, d: dict) -> "RowReport":
        return cls(**d)

    @classmethod
    def from_json(cls, text: str) -> "RowReport":
        return cls.from_dict(json.loads(text))

    def csv_row(self) -> dict[str, str]:
        def fmt(x):
            return "" if x is None else str(x)

        return {
            "Nr": fmt(self.nr),
            "Pair": self.pair,
            "Mu": " ".join(map(str, self.mu_primes)) if self.mu_primes else "1",
            "Int": fmt(self.int_index),
            "Pi": "" if self.Pi is None else " ".join(map(str, self.Pi)),
            "iLevel": fmt(self.ilevel),
            "iIndex": fmt(self.iindex),
            "Coeff": fmt(self.coeff),
            "SV": fmt(self.sv_arithmetic),
            "Status": self.overall,
        }


CSV_COLUMNS = ["Nr", "Pair", "Mu", "Int", "Pi", "iLevel", "iIndex", "Coeff", "SV", "Status"]


@contextmanager
def _time_limit(seconds: float | None):
    if not seconds or threading.current_thread() is not threading.main_thread():
        yield
        return

    def handler(signum, frame):
        raise TimeBudgetExceeded(f"time budget of {seconds}s")

    old = signal.signal(signal.SIGALRM, handler)
    signal.setitimer(signal.ITIMER_REAL, seconds)
    try:
        yield
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, old)


_BUDGET_ERRORS = (
    MemoryBudgetExceeded,
    TransversalBudgetExceeded,
    LevelSearchExceeded,
    FactorizationIncomplete,
    TimeBudgetExceeded,
    MemoryError,
)


def _int_rows(x: RatMatrix) -> list[list[int]]:
    return [list(r) for r in x.int_rows()]


def analyze(pair: PolyPair | str, config: PipelineConfig | None = None) -> RowReport:
    """Run every stage on one pair; failures are recorded, not raised."""
    config = config or PipelineConfig()
    if isinstance(pair, str):
        pair = parse_pair(pair)
    rep = RowReport(nr=pair.nr, pair=pair.canonical(), degree=pair.n)
    rep.status = {s: "skipped" for s in STAGES}
    stage = "construct"
    try:
        with _time_limit(config.time_budget):
            _run(pair, config, rep)
    except _BUDGET_ERRORS as ex:
        stage = next((s for s in STAGES if rep.status[s] == "running"), stage)
        rep.status[stage] = f"budget-exceeded: {type(ex).__name__}: {ex}"
    except Exception as ex:  # a stage failed for a reason other than a budget
        stage = next((s for s in STAGES if rep.status[s] == "running"), stage)
        rep.status[stage] = f"error: {type(ex).__name__}: {ex}"
        log.exception("row %s stage %s failed", rep.pair, stage)
    return rep


def _run(pair: PolyPair, config: PipelineConfig, rep: RowReport) -> None:
    st = rep.status

    st["construct"] = "running"
    H = build_group(pair)
    rep.coeff, rep.sv_arithmetic = coeff_and_criterion(pair)
    st["construct"] = "ok"

    st["form"] = "running"
    try:
        fd = normalize_group(H, candidates=config.candidates, seed=config.seed, kbar_bound=config.kbar_bound)
    except (FormNotUnique, FormDegenerate, NoIntegralCandidate) as ex:
        st["form"] = f"{type(ex).__name__}: {ex}"
        return
    rep.kbar = fd.kbar
    mu = 1
    for g in fd.L_generators:
        mu = lcm(mu, g.den)
    rep.mu_primes = sorted(factorint(mu)) if mu > 1 else []
    st["form"] = "ok"

    st["density"] = "running"
    rep.dense = is_dense(fd.L_generators, fd.h)
    if not rep.dense:
        st["density"] = "non-dense"
        return
    st["density"] = "ok"

    st["zpoints"] = "running"
    try:
        z = integer_points(fd.L_generators, fd.h, seed=config.seed, subproducts=config.subproducts,
                           max_cosets=config.transversal_budget)
    except NotIntegral as ex:
        st["zpoints"] = f"not-integral: {ex}"
        return
    rep.int_index = z.index
    rep.lz_generators = [_int_rows(g) for g in z.LZ_generators]
    rep.transvection = _int_rows(z.lam)
    rep.words_exportable = True
    st["zpoints"] = "ok"

    seed = config.seed
    for attempt in range(config.verify_retries + 1):
        st["primes"] = "running"
        Pi = exceptional_primes(z.LZ_generators, z.lam, vector_budget=config.vector_budget)
        rep.Pi = sorted(Pi)
        st["primes"] = "ok"
        st["closure"] = "running"
        cr = closure_level_and_index(z.LZ_generators, Pi, cap=config.level_cap, orbit_budget=config.orbit_budget)
        rep.ilevel, rep.iindex = cr.level_str(), cr.index_str()
        rep.level_value, rep.index_value = cr.level_value, cr.index_value
        rep.level_exponents = {str(p): e for p, e in sorted(cr.exponents.items())}
        st["closure"] = "ok"
        st["verify"] = "running"
        if verify_zpoints(z, cr.level_value) or attempt == config.verify_retries:
            break
        # a thinned generating set may miss part of L_Z: resample with more subproducts
        seed += 1
        log.info("%s: verification failed, resampling integer points", rep.pair)
        z = integer_points(fd.L_generators, fd.h, seed=seed, subproducts=config.subproducts * 2 ** (attempt + 1),
                           max_cosets=config.transversal_budget)
        rep.lz_generators = [_int_rows(g) for g in z.LZ_generators]
    rep.verified = z.verified
    st["verify"] = "ok" if z.verified else "verification-failed"


# -- sweeps ----------------------------------------------------------------------

def _cache_key(pair: PolyPair, config: PipelineConfig) -> str:
    text = f"{pair.canonical()}|{config.digest()}"
    return hashlib.sha256(text.encode()).hexdigest()


def _analyze_cached(args) -> RowReport:
    pair, config, cache_dir = args
    path = Path(cache_dir) / f"{_cache_key(pair, config)}.json" if cache_dir else None
    if path is not None and path.exists():
        rep = RowReport.from_json(path.read_text())
        rep.nr = pair.nr
        return rep
    rep = analyze(pair, config)
    if path is not None:
        tmp = path.with_suffix(f".tmp{os.getpid()}")
        tmp.write_text(rep.to_json())
        os.replace(tmp, path)  # atomic per row
    return rep


@dataclass
class SweepSummary:
    degree: int
    pairs: int
    dense: int
    statuses: dict[str, int]


def sweep(
    n: int,
    config: PipelineConfig | None = None,
    pairs: Iterable[PolyPair] | None = None,
) -> tuple[list[RowReport], SweepSummary]:
    """Analyze every pair of degree n; write CSV, per-row JSON and a summary if config.out is set."""
    config = config or PipelineConfig(degree=n)
    pairs = list(pairs) if pairs is not None else enumerate_pairs(n, ordered=config.ordered)
    out = Path(config.out) if config.out else None
    cache_dir = None
    if out is not None:
        cache_dir = out / "cache"
        cache_dir.mkdir(parents=True, exist_ok=True)
        (out / "rows").mkdir(exist_ok=True)
    jobs = [(p, config, cache_dir) for p in pairs]
    if config.workers > 1:
        with ProcessPoolExecutor(config.workers) as ex:
            reports = list(ex.map(_analyze_cached, jobs))
    else:
        reports = [_analyze_cached(j) for j in jobs]
    statuses: dict[str, int] = {}
    for r in reports:
        statuses[r.status_class] = statuses.get(r.status_class, 0) + 1
    summary = SweepSummary(n, len(reports), sum(1 for r in reports if r.dense), dict(sorted(statuses.items())))
    if out is not None:
        write_csv(reports, out / f"degree{n}.csv")
        for r in reports:
            (out / "rows" / f"{r.nr}.json").write_text(r.to_json())
        (out / "summary.json").write_text(json.dumps(asdict(summary), indent=1, sort_keys=True))
    return reports, summary


def write_csv(reports: Iterable[RowReport], path: str | os.PathLike) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
        w.writeheader()
        for r in reports:
            w.writerow(r.csv_row())


def check_report(rep: RowReport) -> list[str]:
    """Invariant violations of a stored report (empty list if none)."""
    problems = []
    if (rep.ilevel == "1") != (rep.iindex == "1") and rep.ilevel is not None:
        problems.append("level 1 and index 1 must occur together")
    if rep.level_exponents is not None and rep.Pi is not None:
        support = {int(p) for p, e in rep.level_exponents.items() if e}
        if not support <= set(rep.Pi) | {2, 3}:
            problems.append("level has primes outside Pi and {2, 3}")
        value = 1
        for p, e in rep.level_exponents.items():
            value *= int(p) ** e
        if value != rep.level_value:
            problems.append("level value disagrees with its exponents")
        if format_factored({int(p): e for p, e in rep.level_exponents.items()}) != rep.ilevel:
            problems.append("factored level disagrees with its exponents")
    if rep.pair:
        p = parse_pair(rep.pair)
        c, sv = coeff_and_criterion(p)
        if rep.coeff is not None and (c, sv) != (rep.coeff, rep.sv_arithmetic):
            problems.append("coeff disagrees with the pair")
    if rep.lz_generators:
        from .zpoints import is_symplectic

        for g in rep.lz_generators:
            if not is_symplectic(RatMatrix(g, den=1)):
                problems.append("stored generator is not symplectic")
                break
    return problems
