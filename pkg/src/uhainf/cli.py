"""Command-line front end: basis listing, matrix export, verification suites.

All output is deterministic UTF-8 JSON with an embedded schema tag, so two
runs with the same config and seed produce byte-identical files.  Exit
codes: 0 all checks pass, 1 a verification failed, 2 usage/config error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .qnum import QValue, parse_rational
from .patterns import (
    CPattern,
    ModuleParams,
    Signature,
    enumerate_basis,
)
from .action import GeneratorLabel, apply_generator
from . import relations as rel
from .identities import IdentityId, fuzz_identity, _SIZED

SCHEMA = "uhainf/1"

__all__ = ["RunConfig", "main"]


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    """One reproducible run: module parameters plus suite knobs."""

    signature: Signature
    xi0: Fraction = Fraction(0)
    xi1: Fraction = Fraction(0)
    q: Optional[Fraction] = Fraction(3, 2)  # None means classical mode
    mode: str = "a_infinity"
    level: int = 3
    window: int = 4
    trials: int = 100
    seed: int = 42
    out: Optional[str] = None
    decimal_digits: int = 50

    @property
    def qv(self) -> QValue:
        return QValue.classical() if self.q is None else QValue.quantum(self.q)

    @property
    def params(self) -> ModuleParams:
        return ModuleParams(self.signature, self.xi0, self.xi1, self.qv, self.mode)

    @classmethod
    def build(cls, args: argparse.Namespace) -> "RunConfig":
        raw: dict = {}
        if args.config:
            with open(args.config, "r", encoding="utf-8") as fh:
                raw = json.load(fh)
        if args.signature is not None:
            raw["signature"] = args.signature
        for key in ("xi0", "xi1", "q", "level", "window", "trials", "seed", "out"):
            val = getattr(args, key, None)
            if val is not None:
                raw[key] = val
        if "signature" not in raw:
            raise ConfigError("a signature is required (--signature or config)")
        sig_raw = raw["signature"]
        if isinstance(sig_raw, str):
            try:
                head, values = sig_raw.rsplit(":", 1)
                m_s, n_s = head.split(":")
                sig = Signature(
                    int(m_s), int(n_s), tuple(int(v) for v in values.split(","))
                )
            except (ValueError, IndexError) as exc:
                raise ConfigError(f"bad signature {sig_raw!r}: {exc}") from exc
        else:
            try:
                sig = Signature.from_json(sig_raw)
            except (KeyError, ValueError) as exc:
                raise ConfigError(f"bad signature: {exc}") from exc
        q_raw = raw.get("q", "3/2")
        q = None if str(q_raw) == "classical" else parse_rational(str(q_raw))
        try:
            cfg = cls(
                signature=sig,
                xi0=parse_rational(str(raw.get("xi0", 0))),
                xi1=parse_rational(str(raw.get("xi1", 0))),
                q=q,
                mode=raw.get("mode", "a_infinity"),
                level=int(raw.get("level", 3)),
                window=int(raw.get("window", 4)),
                trials=int(raw.get("trials", 100)),
                seed=int(raw.get("seed", 42)),
                out=raw.get("out"),
                decimal_digits=int(raw.get("decimal_digits", 50)),
            )
            cfg.params  # force validation
            if cfg.level < 2:
                raise ConfigError("level must exceed 1")
        except (ValueError, ConfigError) as exc:
            raise ConfigError(str(exc)) from exc
        return cfg


def _dump(doc: dict, cfg: RunConfig) -> str:
    text = json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text


def _parse_generator(spec: str) -> GeneratorLabel:
    if spec == "C":
        return GeneratorLabel("C")
    try:
        kind, idx = spec.split(":")
        return GeneratorLabel(kind, int(idx))
    except (ValueError, IndexError) as exc:
        raise ConfigError(
            f"bad generator {spec!r}; use C or KIND:INDEX like E:1"
        ) from exc


def cmd_basis(cfg: RunConfig) -> int:
    basis = enumerate_basis(cfg.signature, cfg.level)
    doc = {
        "schema": SCHEMA,
        "kind": "basis",
        "level": cfg.level,
        "count": len(basis),
        "patterns": [p.to_json() for p in basis],
    }
    sys.stdout.write(_dump(doc, cfg))
    return 0


def cmd_matrix(cfg: RunConfig, generator: str) -> int:
    g = _parse_generator(generator)
    params = cfg.params
    basis = enumerate_basis(cfg.signature, cfg.level)
    # targets may leave V_N; index them against the enlarged truncation
    enlarged = enumerate_basis(cfg.signature, cfg.level + 2)
    index = {p: r for r, p in enumerate(enlarged)}
    in_vn = set(basis)
    entries = []
    for col, p in enumerate(basis):
        image = apply_generator(g, p, params)
        for p2 in sorted(image.terms, key=lambda x: index.get(x, len(enlarged))):
            c = image.terms[p2]
            row = index.get(p2)
            entry = {
                "row": row,
                "col": col,
                "coeff": c.to_json(),
                "decimal": c.to_decimal(cfg.decimal_digits),
            }
            if p2 not in in_vn:
                entry["escaped"] = True
            entries.append(entry)
    doc = {
        "schema": SCHEMA,
        "kind": "matrix",
        "generator": str(g),
        "level": cfg.level,
        "basis_count": len(basis),
        "enlarged_count": len(enlarged),
        "entries": entries,
    }
    sys.stdout.write(_dump(doc, cfg))
    return 0


_SUITES = ("cartan", "serre", "hw", "restricted", "boundary", "charge",
           "identities", "all")


def _run_suite(cfg: RunConfig, suite: str) -> list[rel.CheckReport]:
    params = cfg.params
    sig = cfg.signature
    reports: list[rel.CheckReport] = []
    W = cfg.window
    if suite in ("cartan", "all"):
        basis = enumerate_basis(sig, cfg.level)
        for i in range(-W, W + 1):
            for j in range(-W, W + 1):
                reports.append(rel.check_cartan(i, j, basis, params))
    if suite in ("serre", "all"):
        basis = enumerate_basis(sig, cfg.level)
        for i in range(-W, W + 1):
            for fam in ("E", "F"):
                for j in range(-W, W + 1):
                    if abs(i - j) != 1:
                        reports.append(
                            rel.check_serre(fam, "a", i, j, basis, params)
                        )
                reports.append(rel.check_serre(fam, "b", i, None, basis, params))
                reports.append(rel.check_serre(fam, "c", i, None, basis, params))
    if suite in ("hw", "all"):
        reports.append(rel.check_highest_weight(params, (-W, W)))
    if suite in ("restricted", "all"):
        reports.append(rel.check_restrictedness(params, cfg.level))
    if suite in ("boundary", "all"):
        for k in range((cfg.level + 1) // 2, max(sig.n, 0) + 2):
            if 2 * k >= cfg.level:
                reports.append(rel.check_boundary_f(params, cfg.level, k))
    if suite in ("charge", "all"):
        reports.append(rel.check_charge(params, max(abs(sig.m), sig.n) + W))
    if suite in ("identities", "all"):
        for tag in ("I23a", "I23b", "I24a", "I24b", "I24c", "I24d",
                    "I25", "I26", "I27", "A46L", "A46R"):
            size = 2 if tag in _SIZED else None
            reports.append(
                fuzz_identity(IdentityId(tag, size), cfg.trials, cfg.seed)
            )
        for n in (2, 4):
            reports.append(fuzz_identity(IdentityId("A21", n), cfg.trials, cfg.seed))
        for n in (2, 3, 4):
            reports.append(fuzz_identity(IdentityId("A26", n), cfg.trials, cfg.seed))
    return reports


def cmd_check(cfg: RunConfig, suite: str) -> int:
    if suite not in _SUITES:
        raise ConfigError(f"unknown suite {suite!r}")
    reports = _run_suite(cfg, suite)
    ok = all(r.passed for r in reports)
    doc = {
        "schema": SCHEMA,
        "kind": "check",
        "suite": suite,
        "seed": cfg.seed,
        "passed": ok,
        "reports": [r.to_json() for r in reports],
    }
    sys.stdout.write(_dump(doc, cfg))
    return 0 if ok else 1


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="uhainf",
        description="Exact pattern-basis representations and verification suites",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser):
        p.add_argument("--config", help="JSON config file")
        p.add_argument("--signature", help='window and values as "m:n:v1,v2,..."')
        p.add_argument("--xi0")
        p.add_argument("--xi1")
        p.add_argument("--q", help='rational like 3/2, or "classical"')
        p.add_argument("--level", type=int, help="truncation level N")
        p.add_argument("--window", type=int, help="generator index window")
        p.add_argument("--trials", type=int)
        p.add_argument("--seed", type=int)
        p.add_argument("--out", help="write the JSON document here too")

    p = sub.add_parser("basis", help="enumerate the truncated basis")
    common(p)
    p = sub.add_parser("matrix", help="export one generator as a sparse matrix")
    common(p)
    p.add_argument("--generator", required=True, help="C or KIND:INDEX (E:1, F:-2, H:0)")
    p = sub.add_parser("check", help="run verification suites")
    common(p)
    p.add_argument("--suite", default="all", choices=_SUITES)
    p = sub.add_parser("identities", help="shortcut for check --suite identities")
    common(p)
    return ap


def main(argv: Optional[list[str]] = None) -> int:
    ap = _build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = RunConfig.build(args)
        if args.command == "basis":
            return cmd_basis(cfg)
        if args.command == "matrix":
            return cmd_matrix(cfg, args.generator)
        if args.command == "check":
            return cmd_check(cfg, args.suite)
        if args.command == "identities":
            return cmd_check(cfg, "identities")
        raise ConfigError(f"unknown command {args.command!r}")
    except ConfigError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
