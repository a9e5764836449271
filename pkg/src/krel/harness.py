"""Run property suites with split seeds and replayable counterexamples.

Every trial draws from its own stream seeded by ``(seed, crc32(suite id),
trial)``, so results do not depend on the order or the number of worker
processes.  The first failing trial is stored as a JSON document holding the
instance objects; :func:`replay` decodes it and runs the same checker.
"""
from __future__ import annotations

import time
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import KrelError, ParseError, UnknownSuite
from .generators import Gen, GeneratorConfig
from .green import GreensBoundaryRelation
from .relations import LinearRelation
from .scalars import EXACT, Arithmetic, Gaussian, float_mode, format_scalar, parse_scalar
from .serialize import (
    decode_document,
    encode_gbr,
    encode_relation,
    encode_space,
    encode_subspace,
    encode_vector,
    instance,
)
from .spaces import KreinSpace, Subspace
from .suites import SUITE_IDS, SUITES, Outcome

__all__ = [
    "GeneratorConfig",
    "PropertyReport",
    "SUITE_IDS",
    "run_suite",
    "run_trial",
    "replay",
    "encode_objects",
    "decode_objects",
    "PASS",
    "FAIL",
    "STARVED",
]

PASS = "PASS"
FAIL = "FAIL"
STARVED = "HYPOTHESIS-STARVED"
_SEED_MASK = (1 << 64) - 1


@dataclass
class PropertyReport:
    suiteId: str
    trials: int
    failures: int
    nonVacuous: int
    firstCounterexample: dict | None = None
    elapsed: float = 0.0
    checkFailures: dict = field(default_factory=dict)
    stats: dict = field(default_factory=dict)
    seed: int | None = None
    maxDim: int | None = None

    @property
    def status(self) -> str:
        if self.failures:
            return FAIL
        if 2 * self.nonVacuous <= self.trials:
            return STARVED
        return PASS

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def as_dict(self, timing: bool = False) -> dict:
        """JSON form; ``elapsed`` only with ``timing`` so that reports stay byte-identical."""
        out = {
            "suiteId": self.suiteId,
            "status": self.status,
            "trials": self.trials,
            "failures": self.failures,
            "nonVacuous": self.nonVacuous,
            "checkFailures": dict(sorted(self.checkFailures.items())),
            "stats": dict(sorted(self.stats.items())),
            "firstCounterexample": self.firstCounterexample,
        }
        if self.seed is not None:
            out["seed"] = self.seed
        if self.maxDim is not None:
            out["maxDim"] = self.maxDim
        if timing:
            out["elapsed"] = round(self.elapsed, 6)
        return out


# object documents ---------------------------------------------------------------------

def _encode_object(obj):
    if isinstance(obj, GreensBoundaryRelation):
        return instance("gbr", encode_gbr(obj))
    if isinstance(obj, LinearRelation):
        return instance("relation", encode_relation(obj))
    if isinstance(obj, Subspace):
        return instance("subspace", encode_subspace(obj))
    if isinstance(obj, KreinSpace):
        return instance("space", encode_space(obj))
    if isinstance(obj, np.ndarray):
        return {"vector": encode_vector(obj)}
    if isinstance(obj, (Gaussian, complex)):
        return {"scalar": format_scalar(obj)}
    raise TypeError(f"cannot encode {type(obj).__name__}")


def encode_objects(objects: dict) -> dict:
    return {name: _encode_object(v) for name, v in objects.items()}


def _decode_object(doc, ar: Arithmetic):
    if not isinstance(doc, dict):
        raise ParseError("object entries must be JSON objects")
    if "vector" in doc:
        return ar.array([parse_scalar(x) if isinstance(x, str) else x for x in doc["vector"]])
    if "scalar" in doc:
        return ar.scalar(parse_scalar(doc["scalar"]))
    return decode_document(doc, ar)[1]


def decode_objects(docs: dict, ar: Arithmetic = EXACT) -> dict:
    if not isinstance(docs, dict):
        raise ParseError("objects must be a JSON object")
    return {name: _decode_object(d, ar) for name, d in docs.items()}


# running ---------------------------------------------------------------------------------

def _suite(suite_id: str):
    try:
        return SUITES[suite_id]
    except KeyError:
        raise UnknownSuite(f"unknown suite {suite_id!r}", known=list(SUITE_IDS)) from None


def _stream(seed: int, suite_id: str, trial: int) -> np.random.Generator:
    ss = np.random.SeedSequence([seed & _SEED_MASK, zlib.crc32(suite_id.encode()), trial])
    return np.random.default_rng(ss)


def _arithmetic(float_eps: float | None) -> Arithmetic:
    return EXACT if float_eps is None else float_mode(float_eps)


def _evaluate(suite, objects: dict) -> Outcome:
    try:
        return suite.check(objects)
    except KrelError as exc:
        # a checker that trips an internal cross-check counts as a failure of that trial
        return Outcome({f"error:{type(exc).__name__}": False})


@dataclass(frozen=True)
class TrialResult:
    trial: int
    failed: tuple[str, ...]
    nonvacuous: bool
    stats: dict
    counterexample: dict | None


def run_trial(suite_id: str, cfg: GeneratorConfig, trial: int, float_eps: float | None = None) -> TrialResult:
    """Generate and check one trial (a counterexample document is attached on failure)."""
    suite = _suite(suite_id)
    ar = _arithmetic(float_eps)
    gen = Gen(_stream(cfg.seed, suite_id, trial), cfg, ar, trial)
    objects = suite.generate(gen)
    out = _evaluate(suite, objects)
    doc = None
    if out.failed:
        doc = {
            "suiteId": suite_id,
            "seed": cfg.seed,
            "trial": trial,
            "maxDim": cfg.maxDim,
            "mode": "exact" if float_eps is None else "float",
            "objects": encode_objects(objects),
            "failedChecks": out.failed,
        }
        if float_eps is not None:
            doc["eps"] = float_eps
    return TrialResult(trial, tuple(out.failed), out.nonvacuous, dict(out.stats), doc)


def _run_chunk(args) -> list[TrialResult]:
    suite_id, cfg, trials, float_eps = args
    return [run_trial(suite_id, cfg, t, float_eps) for t in trials]


def _aggregate(suite_id: str, results, elapsed: float, cfg: GeneratorConfig | None) -> PropertyReport:
    rep = PropertyReport(suite_id, 0, 0, 0, elapsed=elapsed,
                         seed=None if cfg is None else cfg.seed,
                         maxDim=None if cfg is None else cfg.maxDim)
    for r in sorted(results, key=lambda r: r.trial):
        rep.trials += 1
        rep.nonVacuous += int(r.nonvacuous)
        for k, v in r.stats.items():
            rep.stats[k] = rep.stats.get(k, 0) + v
        if r.failed:
            rep.failures += 1
            for name in r.failed:
                rep.checkFailures[name] = rep.checkFailures.get(name, 0) + 1
            if rep.firstCounterexample is None:
                rep.firstCounterexample = r.counterexample
    return rep


def run_suite(suite_id: str, cfg: GeneratorConfig | None = None, workers: int = 1,
              float_eps: float | None = None) -> PropertyReport:
    """Run ``cfg.trials`` trials (suites with a fixed trial count ignore it)."""
    cfg = cfg or GeneratorConfig()
    suite = _suite(suite_id)
    n = suite.fixed_trials if suite.fixed_trials is not None else cfg.trials
    start = time.perf_counter()
    if workers <= 1 or n < 2:
        results = _run_chunk((suite_id, cfg, range(n), float_eps))
    else:
        chunks = [(suite_id, cfg, list(range(i, n, workers)), float_eps) for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = [r for part in pool.map(_run_chunk, chunks) for r in part]
    return _aggregate(suite_id, results, time.perf_counter() - start, cfg)


def replay(doc: dict) -> PropertyReport:
    """Re-run the checker on a stored counterexample."""
    if not isinstance(doc, dict):
        raise ParseError("counterexample must be a JSON object")
    for key in ("suiteId", "objects"):
        if key not in doc:
            raise ParseError(f"counterexample lacks the {key!r} field")
    suite = _suite(doc["suiteId"])
    float_eps = doc.get("eps", 1e-9) if doc.get("mode") == "float" else None
    ar = _arithmetic(float_eps)
    objects = decode_objects(doc["objects"], ar)
    start = time.perf_counter()
    out = _evaluate(suite, objects)
    trial = int(doc.get("trial", 0))
    counter = None
    if out.failed:
        counter = dict(doc)
        counter["failedChecks"] = out.failed
    result = TrialResult(trial, tuple(out.failed), out.nonvacuous, dict(out.stats), counter)
    rep = _aggregate(doc["suiteId"], [result], time.perf_counter() - start, None)
    rep.seed = doc.get("seed")
    rep.maxDim = doc.get("maxDim")
    return rep
