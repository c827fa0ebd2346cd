"""Parameter sweeps over the figure axes, with caching and CSV output.

A sweep point is either an (M, d_A) placement or a (T_A, gamma_A) one;
the spec validator refuses mixed families.  Rows come out in grid order
(first axis outermost) no matter how many workers computed them, and all
floats are serialized as shortest round-trip decimals so identical specs
produce byte-identical files.
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, asdict
from itertools import product

import numpy as np

from . import __version__
from .geometry import SpacetimeParams
from .detector import DetectorPair, compute_matrix_elements, compute_L_DD
from .wightman import TruncationPolicy
from .quadrature import ContourSpec
from .correlations import evaluate_correlations, edr_temperature

VARIABLES = ("omega", "d_a", "t_a", "gamma_a", "d_ab", "mass", "ads_length", "zeta")
_THERMAL_KEYS = frozenset({"omega", "d_ab", "ads_length", "zeta", "t_a", "gamma_a"})
_MASS_KEYS = frozenset({"omega", "d_ab", "ads_length", "zeta", "mass", "d_a"})

COLUMNS = (
    "omega", "d_a", "d_ab", "d_b", "ads_length", "mass", "zeta",
    "r_h", "r_a", "r_b", "gamma_a", "gamma_b", "t_a", "t_b",
    "L_AA", "L_AA_n0", "L_AA_btz", "err_L_AA", "n_terms_AA",
    "L_BB", "L_BB_n0", "L_BB_btz", "err_L_BB", "n_terms_BB",
    "L_AB_re", "L_AB_im", "L_AB_n0_re", "L_AB_n0_im",
    "L_AB_btz_re", "L_AB_btz_im", "err_L_AB", "n_terms_AB",
    "L_plus", "L_minus", "I_AB", "err_I_AB", "f_minus", "t_edr", "status",
)


@dataclass(frozen=True)
class AxisSpec:
    variable: str
    scale: str
    min: float
    max: float
    count: int

    def __post_init__(self):
        if self.variable not in VARIABLES:
            raise ValueError(f"unknown sweep variable {self.variable!r}")
        if self.scale not in ("linear", "log"):
            raise ValueError(f"axis scale must be linear or log, got {self.scale!r}")
        if self.count < 1:
            raise ValueError("axis count must be >= 1")
        if self.scale == "log" and (self.min <= 0.0 or self.max <= 0.0):
            raise ValueError("log axis needs positive bounds")

    def grid(self) -> np.ndarray:
        if self.count == 1:
            return np.array([self.min])
        if self.scale == "log":
            return np.geomspace(self.min, self.max, self.count)
        return np.linspace(self.min, self.max, self.count)


@dataclass(frozen=True)
class SweepSpec:
    axes: tuple[AxisSpec, ...]
    fixed: dict[str, float]
    rel_tol: float = 1e-9
    abs_tol: float = 1e-13
    tail_tol: float = 1e-9
    n_max: int = 50
    eta: float = -math.pi / 2
    jobs: int = 1
    cache: bool = True
    with_edr: bool = False
    preset: str | None = None

    def __post_init__(self):
        axis_vars = [ax.variable for ax in self.axes]
        if len(set(axis_vars)) != len(axis_vars):
            raise ValueError("axis variables must be disjoint")
        overlap = set(axis_vars) & set(self.fixed)
        if overlap:
            raise ValueError(f"variables both swept and fixed: {sorted(overlap)}")
        provided = set(axis_vars) | set(self.fixed)
        if provided == _THERMAL_KEYS:
            object.__setattr__(self, "_family", "thermal")
        elif provided == _MASS_KEYS:
            object.__setattr__(self, "_family", "mass")
        else:
            raise ValueError(
                "parameters must be exactly the (mass, d_a) family "
                f"{sorted(_MASS_KEYS)} or the (t_a, gamma_a) family "
                f"{sorted(_THERMAL_KEYS)}; got {sorted(provided)}")

    @property
    def family(self) -> str:
        return self._family

    @classmethod
    def from_dict(cls, data: dict) -> "SweepSpec":
        axes = tuple(AxisSpec(**ax) for ax in data.get("axes", []))
        kwargs = {k: v for k, v in data.items() if k != "axes"}
        return cls(axes=axes, **kwargs)

    def canonical(self) -> dict:
        out = asdict(self)
        out["axes"] = [asdict(ax) for ax in self.axes]
        out.pop("jobs")        # parallelism must not affect output identity
        out.pop("cache")
        return out

    def spec_hash(self) -> str:
        blob = json.dumps(self.canonical(), sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()

    def points(self) -> list[dict]:
        grids = [ax.grid() for ax in self.axes]
        names = [ax.variable for ax in self.axes]
        pts = []
        for combo in product(*grids):
            values = dict(self.fixed)
            values.update(zip(names, (float(c) for c in combo)))
            pts.append(values)
        return pts

    def tolerance_key(self) -> dict:
        return {"rel_tol": self.rel_tol, "abs_tol": self.abs_tol,
                "tail_tol": self.tail_tol, "n_max": self.n_max,
                "eta": self.eta, "with_edr": self.with_edr}


def _build_pair(values: dict, family: str) -> DetectorPair:
    zeta = int(round(values["zeta"]))
    if family == "thermal":
        return DetectorPair.from_thermal(values["ads_length"], values["t_a"],
                                         values["gamma_a"], values["d_ab"],
                                         values["omega"], zeta)
    spacetime = SpacetimeParams(values["ads_length"], values["mass"], zeta)
    return DetectorPair.from_distances(spacetime, values["d_a"], values["d_ab"],
                                       values["omega"])


def evaluate_point(values: dict, spec: SweepSpec) -> dict:
    """One fully resolved result row; failures land in the status column."""
    row = dict.fromkeys(COLUMNS)
    row["omega"] = values["omega"]
    row["d_ab"] = values["d_ab"]
    row["ads_length"] = values["ads_length"]
    row["zeta"] = int(round(values["zeta"]))
    try:
        pair = _build_pair(values, spec.family)
        st = pair.spacetime
        row.update(d_a=pair.d_a, d_b=pair.d_b, mass=st.mass,
                   r_h=st.horizon_radius, r_a=pair.r_a, r_b=pair.r_b,
                   gamma_a=pair.gamma_a, gamma_b=pair.gamma_b,
                   t_a=pair.t_a, t_b=pair.t_b)
        policy = TruncationPolicy(spec.tail_tol, spec.n_max)
        cspec = ContourSpec(eta=spec.eta, rel_tol=spec.rel_tol, abs_tol=spec.abs_tol)
        els = compute_matrix_elements(pair, policy, cspec)
        corr = evaluate_correlations(els)
        row.update(
            L_AA=els.L_AA, L_AA_n0=els.aa.n0, L_AA_btz=els.aa.btz,
            err_L_AA=els.aa.err, n_terms_AA=els.aa.n_terms,
            L_BB=els.L_BB, L_BB_n0=els.bb.n0, L_BB_btz=els.bb.btz,
            err_L_BB=els.bb.err, n_terms_BB=els.bb.n_terms,
            L_AB_re=els.L_AB.real, L_AB_im=els.L_AB.imag,
            L_AB_n0_re=els.ab.n0, L_AB_n0_im=0.0,
            L_AB_btz_re=els.ab.btz, L_AB_btz_im=0.0,
            err_L_AB=els.ab.err, n_terms_AB=els.ab.n_terms,
            L_plus=corr.l_plus, L_minus=corr.l_minus,
            I_AB=corr.mutual_information, err_I_AB=corr.err_mutual_information,
        )
        if spec.with_edr:
            f_minus = compute_L_DD(st, pair.r_a, -pair.omega, policy, cspec).value
            row["f_minus"] = f_minus
            row["t_edr"] = edr_temperature(els.L_AA, f_minus, pair.omega)
        row["status"] = "ok"
    except Exception as exc:  # per-point failures must not abort the sweep
        row["status"] = f"error: {type(exc).__name__}: {exc}"
    return row


# ---------------------------------------------------------------- cache

def default_cache_dir() -> str:
    env = os.environ.get("HARVEST_CACHE_DIR")
    if env:
        return env
    return os.path.join(os.path.expanduser("~"), ".cache", "btzharvest")


def point_key(values: dict, spec: SweepSpec) -> str:
    blob = json.dumps({"version": __version__,
                       "point": {k: values[k] for k in sorted(values)},
                       "family": spec.family,
                       "tol": spec.tolerance_key()}, sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()


def cache_lookup(cache_dir: str, key: str) -> dict | None:
    path = os.path.join(cache_dir, key[:2], key + ".json")
    try:
        with open(path, encoding="utf-8") as fh:
            row = json.load(fh)
        if set(row) != set(COLUMNS):
            raise ValueError("column mismatch")
        return row
    except FileNotFoundError:
        return None
    except (ValueError, OSError) as exc:
        print(f"warning: dropping corrupt cache entry {key[:12]}: {exc}",
              file=sys.stderr)
        try:
            os.unlink(path)
        except OSError:
            pass
        return None


def cache_store(cache_dir: str, key: str, row: dict) -> None:
    sub = os.path.join(cache_dir, key[:2])
    os.makedirs(sub, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=sub, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(row, fh)
        os.replace(tmp, os.path.join(sub, key + ".json"))
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


# ---------------------------------------------------------------- driver

def _pool_worker(payload):
    values, spec = payload
    return evaluate_point(values, spec)


def run_sweep(spec: SweepSpec, cache_dir: str | None = None,
              progress: bool = False):
    """Evaluate every grid point; returns (rows, manifest).

    Cache hits are reused only on exact (point, tolerances, version)
    match; rows with error status are recomputed rather than cached.
    """
    cache_dir = cache_dir or default_cache_dir()
    points = spec.points()
    rows: list[dict | None] = [None] * len(points)
    hits = 0

    pending = []
    for i, values in enumerate(points):
        if spec.cache:
            row = cache_lookup(cache_dir, point_key(values, spec))
            if row is not None:
                rows[i] = row
                hits += 1
                continue
        pending.append(i)

    if pending:
        if spec.jobs > 1:
            payloads = [(points[i], spec) for i in pending]
            chunk = max(1, len(payloads) // (spec.jobs * 4))
            with ProcessPoolExecutor(max_workers=spec.jobs) as pool:
                for i, row in zip(pending, pool.map(_pool_worker, payloads,
                                                    chunksize=chunk)):
                    rows[i] = row
        else:
            for k, i in enumerate(pending):
                rows[i] = evaluate_point(points[i], spec)
                if progress and (k % 50 == 0 or k == len(pending) - 1):
                    print(f"\r{k + 1}/{len(pending)} points", end="",
                          file=sys.stderr, flush=True)
            if progress:
                print(file=sys.stderr)
        if spec.cache:
            for i in pending:
                if rows[i]["status"] == "ok":
                    cache_store(cache_dir, point_key(points[i], spec), rows[i])

    manifest = {
        "version": __version__,
        "spec_hash": spec.spec_hash(),
        "spec": spec.canonical(),
        "columns": list(COLUMNS),
        "row_count": len(rows),
    }
    if progress:
        print(f"cache hits: {hits}/{len(points)}", file=sys.stderr)
    return rows, manifest


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    return repr(float(value))


def write_csv(rows, path: str) -> None:
    """UTF-8, LF, shortest round-trip floats, fixed column order."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(COLUMNS)
        for row in rows:
            writer.writerow([_format_cell(row[c]) for c in COLUMNS])


def write_manifest(manifest: dict, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        json.dump(manifest, fh, sort_keys=True, indent=1)
        fh.write("\n")


# ---------------------------------------------------------------- presets

def preset_specs(name: str, jobs: int = 1, cache: bool = True,
                 **tol_overrides) -> dict[str, SweepSpec]:
    """Figure-reproduction sweeps keyed by output stem."""
    common = dict(jobs=jobs, cache=cache, **tol_overrides)
    if name == "fig1":
        return {"fig1": SweepSpec(
            axes=(AxisSpec("omega", "log", 0.01, 10.0, 60),
                  AxisSpec("d_a", "log", 0.01, 20.0, 60)),
            fixed={"ads_length": 10.0, "mass": 0.01, "d_ab": 7.0, "zeta": 1},
            preset="fig1", **common)}
    if name == "fig2":
        return {
            "fig2a": SweepSpec(
                axes=(AxisSpec("gamma_a", "log", 1e-2, 1e2, 60),),
                fixed={"ads_length": 10.0, "t_a": 1.0, "d_ab": 7.0,
                       "omega": 1.0, "zeta": 1},
                preset="fig2", **common),
            "fig2b": SweepSpec(
                axes=(AxisSpec("t_a", "log", 1e-2, 1e2, 60),),
                fixed={"ads_length": 10.0, "gamma_a": 0.1, "d_ab": 7.0,
                       "omega": 1.0, "zeta": 1},
                preset="fig2", with_edr=True, **common),
        }
    if name == "fig3":
        return {"fig3": SweepSpec(
            axes=(AxisSpec("t_a", "log", 1e-2, 1e2, 60),
                  AxisSpec("gamma_a", "log", 1e-2, 1e2, 60)),
            fixed={"ads_length": 10.0, "omega": 1.0, "d_ab": 7.0, "zeta": 1},
            preset="fig3", **common)}
    raise ValueError(f"unknown preset {name!r}")
