"""Command-line entry point: build, verify, and export generator matrices."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .algebra_data import AlgebraKind, root_system
from .assembler import build_generators, spectra_for
from .characters import _check_dominant, character, reduce_to_a1
from .errors import CapExceeded, InvalidParameter, QrepError
from .generators import BasisLabel, GeneratorSet, label_rows
from .verifier import ORACLE_CAP, build_oracle, check_relations, compare_invariants

log = logging.getLogger("qrep")

MODES = ("build", "verify", "character", "spectra")
FORMATS = ("json", "csv")


@dataclass(frozen=True)
class RunConfig:
    algebra: AlgebraKind
    weight: tuple[int, ...]
    t: float
    tol: float = 1e-9
    mode: str = "build"
    format: str = "json"
    output: str | None = None


# ---------------------------------------------------------------- export


def _num(x: float) -> str:
    return "%.17g" % x


def generators_to_json(g: GeneratorSet) -> str:
    """Sparse-triplet JSON, deterministic byte for byte."""
    parts = [
        '{"algebra": %s' % json.dumps(g.algebra.value),
        '"weight": [%s]' % ", ".join(str(int(x)) for x in g.hw),
        '"t": %s' % _num(g.t),
        '"dim": %d' % g.dim,
    ]
    basis = ", ".join(
        '{"level": %d, "alpha_exp": %d, "copy": %d}' % (b.level, b.alpha_exp, b.copy) for b in g.basis
    )
    parts.append('"basis": [%s]' % basis)
    mats = []
    for name, m in g.matrices().items():
        rows, cols = np.nonzero(m)
        trip = ", ".join("[%d, %d, %s]" % (i, j, _num(m[i, j])) for i, j in zip(rows.tolist(), cols.tolist()))
        mats.append('"%s": {"rows": %d, "cols": %d, "triplets": [%s]}' % (name, m.shape[0], m.shape[1], trip))
    parts.append('"matrices": {%s}}' % ", ".join(mats))
    return ", ".join(parts) + "\n"


def generators_from_json(text: str) -> GeneratorSet:
    data = json.loads(text)
    kind = AlgebraKind.parse(data["algebra"])
    rs = root_system(kind)
    dense = {}
    for name, spec in data["matrices"].items():
        m = np.zeros((spec["rows"], spec["cols"]))
        for i, j, v in spec["triplets"]:
            m[i, j] = v
        dense[name] = m
    r = rs.rank
    h = tuple(dense[f"h{i + 1}"] for i in range(r))
    weights = [tuple(int(round(hh[k, k])) for hh in h) for k in range(data["dim"])]
    basis = [BasisLabel(b["level"], b["alpha_exp"], b["copy"]) for b in data["basis"]]
    return GeneratorSet(
        algebra=kind,
        hw=tuple(data["weight"]),
        t=float(data["t"]),
        xplus=tuple(dense[f"xp{i + 1}"] for i in range(r)),
        xminus=tuple(dense[f"xm{i + 1}"] for i in range(r)),
        h=h,
        weights=weights,
        basis=basis or label_rows(rs, weights),
    )


def _csv(m: np.ndarray) -> str:
    return "".join(",".join(_num(x) for x in row) + "\n" for row in m)


def write_csv(g: GeneratorSet, output: str | None) -> None:
    """One dense file per matrix inside ``output`` (a directory), or all to stdout."""
    if output is None:
        for name, m in g.matrices().items():
            sys.stdout.write(f"# {name}\n{_csv(m)}")
        return
    folder = Path(output)
    folder.mkdir(parents=True, exist_ok=True)
    for name, m in g.matrices().items():
        (folder / f"{name}.csv").write_text(_csv(m))


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)


# ---------------------------------------------------------------- modes


def _fmt_exp(e: tuple[int, ...]) -> str:
    return "(" + ",".join(str(x) for x in e) + ")"


def character_report(cfg: RunConfig) -> str:
    rs = root_system(cfg.algebra)
    char = character(rs, cfg.weight)
    lines = [f"character of {cfg.algebra.value} {_fmt_exp(cfg.weight)}: dimension {char.mass()}"]
    for e, c in sorted(char.terms.items(), key=lambda kv: (-rs.q_degree(kv[0]), -kv[0][0])):
        lines.append(f"  {c} x exp{_fmt_exp(e)}")
    directions = [tuple(int(i == k) for i in range(rs.rank)) for k in range(rs.rank)]
    if rs.rank == 2:
        directions.append(tuple(rs.grading))
    for d in directions:
        hist = reduce_to_a1(char, d)
        body = ", ".join(f"{k}:{v}" for k, v in hist.items())
        lines.append(f"reduction along {_fmt_exp(d)}: {{{body}}}")
    return "\n".join(lines) + "\n"


def spectra_report(cfg: RunConfig) -> str:
    st = spectra_for(cfg.algebra, cfg.weight)
    lines = ["level  lambda  alpha(mult)  beta"]
    for lv in st.levels:
        alphas = " ".join(f"{a}({m})" if m > 1 else f"{a}" for a, m in lv.alpha_classes)
        betas = " ".join(str(b) for b in lv.beta_exps())
        lines.append(f"{lv.n:5d}  {lv.lambda_exp:6d}  {alphas}  |  {betas}")
    return "\n".join(lines) + "\n"


def verify_report(cfg: RunConfig) -> tuple[str, bool]:
    g = build_generators(cfg.algebra, cfg.weight, cfg.t, cfg.tol)
    report = check_relations(g, cfg.tol)
    lines = [f"{cfg.algebra.value} {_fmt_exp(cfg.weight)} t={cfg.t!r} dim={g.dim}"]
    for group, rows in report.groups().items():
        worst = max((res / sc for res, sc in rows.values()), default=0.0)
        lines.append(f"  {group:14s} max relative residual {worst:.3e}")
    ok = report.passed
    if g.dim <= ORACLE_CAP:
        oracle = build_oracle(cfg.algebra, cfg.weight, cfg.t)
        dev = compare_invariants(g, oracle)
        lines.append(f"  oracle         max trace deviation    {dev:.3e}")
        ok = ok and dev <= 1e-8
    else:
        lines.append("  oracle         skipped (dimension above cap)")
    lines.append("PASS" if ok else "FAIL")
    return "\n".join(lines) + "\n", ok


def run(cfg: RunConfig) -> int:
    if cfg.mode == "build":
        g = build_generators(cfg.algebra, cfg.weight, cfg.t, cfg.tol)
        if cfg.format == "csv":
            write_csv(g, cfg.output)
        else:
            _emit(generators_to_json(g), cfg.output)
        return 0
    if cfg.mode == "verify":
        text, ok = verify_report(cfg)
        _emit(text, cfg.output)
        return 0 if ok else 1
    if cfg.mode == "character":
        _emit(character_report(cfg), cfg.output)
        return 0
    _emit(spectra_report(cfg), cfg.output)
    return 0


# ---------------------------------------------------------------- parsing


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qrep", description=__doc__)
    p.add_argument("--algebra", required=True, choices=[k.value for k in AlgebraKind])
    p.add_argument("--weight", required=True, help="comma-separated non-negative integers")
    p.add_argument("--t", required=True, type=float, help="deformation parameter, > 0")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--mode", choices=MODES, default="build")
    p.add_argument("--format", choices=FORMATS, default="json")
    p.add_argument("--output", default=None, help="file (json) or directory (csv); default stdout")
    return p


def parse_config(argv: list[str] | None = None) -> RunConfig:
    parser = _parser()
    ns = parser.parse_args(argv)
    try:
        weight = tuple(int(x) for x in ns.weight.split(","))
        kind = AlgebraKind.parse(ns.algebra)
        _check_dominant(root_system(kind), weight)
        if not ns.t > 0:
            raise InvalidParameter("--t must be positive")
        if not 0 < ns.tol < 1:
            raise InvalidParameter("--tol must lie in (0, 1)")
    except (ValueError, InvalidParameter) as exc:
        parser.error(str(exc))
    return RunConfig(kind, weight, ns.t, ns.tol, ns.mode, ns.format, ns.output)


def _configure_logging() -> None:
    level = os.environ.get("QREP_LOG", "error").upper()
    logging.basicConfig(level=getattr(logging, level, logging.ERROR), format="%(levelname)s %(name)s: %(message)s")


def main(argv: list[str] | None = None) -> int:
    _configure_logging()
    cfg = parse_config(argv)
    try:
        return run(cfg)
    except InvalidParameter as exc:
        print(f"qrep: error: {exc}", file=sys.stderr)
        return 2
    except (QrepError, CapExceeded) as exc:
        print(f"qrep: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
