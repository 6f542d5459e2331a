"""Command-line front end: ``wlax shift | lax | check <which>``.

Exit codes: 0 success, 1 a check failed, 2 bad configuration, 3 a
computation could not be completed.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from ._scalar import fmt_q
from .errors import (
    CompressionNotInvertible,
    ConstructionFailed,
    DegenerateForm,
    FormMissing,
    InvalidFamily,
    InvalidPartition,
    InvalidRectangle,
    NonScalarLeading,
    OrthogonalityViolation,
    PivotNotInvertible,
    ShapeMismatch,
    SingularLeading,
    UnsupportedFamily,
)
from .liealg import Family, LieAlgebraFamily, build_graded_setup, generic_setup, parse_partition

CHECKS = ("membership", "yangian", "skewadjoint", "main-lemma", "oracle")

CONFIG_ERRORS = (
    InvalidFamily,
    InvalidPartition,
    InvalidRectangle,
    DegenerateForm,
    ShapeMismatch,
    FormMissing,
    OrthogonalityViolation,
)
COMPUTE_ERRORS = (
    NonScalarLeading,
    SingularLeading,
    CompressionNotInvertible,
    PivotNotInvertible,
    ConstructionFailed,
)


@dataclass
class RunConfig:
    command: str
    family: str | None
    n: int | None
    partition: tuple | None
    floor: int | None
    fmt: str
    seed: int
    rep_file: str | None
    which: str | None = None


class ConfigError(Exception):
    pass


def _parser():
    p = argparse.ArgumentParser(prog="wlax", description="Lax operators of finite W-algebras.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", choices=[f.value for f in Family])
    common.add_argument("--n", type=int)
    common.add_argument("--partition", help='comma separated, e.g. "3,1,1"')
    common.add_argument("--floor", type=int, help="doubled exponent floor, default -(2d+6)")
    common.add_argument("--format", dest="fmt", choices=("json", "text"), default="text")
    common.add_argument("--seed", type=int, default=20170704)
    common.add_argument("--rep-file", help="JSON file with a generic representation")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("shift", parents=[common], help="shift matrix D")
    sub.add_parser("lax", parents=[common], help="Lax operator L(z)")
    chk = sub.add_parser("check", parents=[common], help="run verification suites")
    chk.add_argument("which", choices=CHECKS + ("all",))
    return p


def _config(ns):
    if ns.rep_file is None:
        if ns.family is None or ns.n is None:
            raise ConfigError("--family and --n are required")
    if ns.floor is not None and ns.floor >= 0:
        raise ConfigError("--floor must be negative")
    part = parse_partition(ns.partition) if ns.partition else None
    return RunConfig(
        ns.command, ns.family, ns.n, part, ns.floor, ns.fmt, ns.seed, ns.rep_file,
        getattr(ns, "which", None),
    )


def _setup(cfg):
    if cfg.rep_file:
        with open(cfg.rep_file) as fh:
            data = json.load(fh)
        try:
            mats = data["matrices"]
            grading = data["grading"]
        except (KeyError, TypeError):
            raise ConfigError("rep file needs 'matrices' and 'grading'") from None
        labels = [tuple(x) if isinstance(x, list) else (x,) for x in data.get("labels", [])] or None
        return generic_setup(mats, grading, labels=labels, x=data.get("x"), f=data.get("f"))
    fam = LieAlgebraFamily(cfg.family, cfg.n)
    part = cfg.partition or (cfg.n,)
    return build_graded_setup(fam, part)


def _mat_json(A):
    return [[fmt_q(v) for v in row] for row in A]


def _mat_text(A):
    return "\n".join("  [" + ", ".join(fmt_q(v) for v in row) + "]" for row in A)


def _series_text(s):
    from ._scalar import fmt_half

    parts = []
    for e, c in sorted(s.coeffs.items(), reverse=True):
        parts.append(f"({c})*z^{fmt_half(e)}")
    tail = "" if s.floor is None else f" + O(z^{fmt_half(s.floor)})"
    return (" + ".join(parts) or "0") + tail


def cmd_shift(cfg, out):
    from .laxop import shift_matrix, shift_matrix_closed_form

    setup = _setup(cfg)
    D = shift_matrix(setup)
    try:
        closed = shift_matrix_closed_form(setup)
    except UnsupportedFamily:
        closed = None
    verdict = None if closed is None else ("MATCH" if closed == D else "MISMATCH")
    if cfg.fmt == "json":
        out.write(json.dumps({
            "D": _mat_json(D),
            "closed_form": None if closed is None else _mat_json(closed),
            "verdict": verdict,
        }) + "\n")
    else:
        out.write("D =\n" + _mat_text(D) + "\n")
        if closed is not None:
            out.write("closed form =\n" + _mat_text(closed) + "\n")
        out.write(f"verdict: {verdict or 'no closed form'}\n")
    return 0 if verdict != "MISMATCH" else 1


def cmd_lax(cfg, out):
    from .laxop import lax
    from .series import matrix_to_json

    setup = _setup(cfg)
    res = lax(setup, cfg.floor)
    if cfg.fmt == "json":
        out.write(json.dumps({
            "d": res.d,
            "r1": res.r1,
            "floor": res.floor,
            "D": _mat_json(res.D_matrix),
            "L": matrix_to_json(res.L),
        }) + "\n")
    else:
        out.write(f"d = {res.d}, r1 = {res.r1}, floor = {res.floor} (doubled)\n")
        out.write("D =\n" + _mat_text(res.D_matrix) + "\n")
        for i, row in enumerate(res.L.entries):
            for j, s in enumerate(row):
                out.write(f"L[{i + 1},{j + 1}] = {_series_text(s)}\n")
    return 0


def _pairing(setup, res):
    if setup.epsilon is None:
        return None
    return [[setup.form[a][b] for b in res.maps.psi_idx] for a in res.maps.pi_idx]


def _run_check(which, setup, res):
    """(status, residues) for one named check; status in pass/fail/skipped."""
    from . import laxop, yangian

    if which == "membership":
        bad = laxop.check_membership(res)
        bad += laxop.leading_term_check(res)
        bad += laxop.kazhdan_profile(res)
        return ("pass" if not bad else "fail"), [str(b) for b in bad]
    if which == "yangian":
        params = yangian.params_for_L(setup)
        rep = yangian.check_identity(
            res.L_tilde, params, _pairing(setup, res), "W", "mod_J", d=setup.d
        )
        v = rep["violations"]
        return ("pass" if not v else "fail"), v
    if which == "skewadjoint":
        if setup.epsilon is None:
            return "skipped", ["needs so or sp"]
        v = yangian.check_skewadjoint(res.L, _pairing(setup, res), setup.epsilon)
        return ("pass" if not v else "fail"), v
    if which == "main-lemma":
        rep = laxop.main_lemma_check(setup, res.floor, res.uea, res)
        bad = [f"{k}: {x}" for k, vals in rep.items() for x in vals]
        return ("pass" if not bad else "fail"), bad
    if which == "oracle":
        from .rect_oracle import build_rect, cross_check

        parts = setup.partition or ()
        fam = setup.family
        if fam is None or fam.family not in (Family.SO, Family.SP) or len(set(parts)) != 1:
            return "skipped", ["needs a rectangular so or sp partition"]
        rect, _ = build_rect(fam, len(parts), parts[0])
        rep = cross_check(rect, res.floor)
        bad = [r for r in rep if r["status"] != "ok"]
        return ("pass" if not bad else "fail"), bad
    raise ConfigError(f"unknown check {which}")


def cmd_check(cfg, out):
    from .laxop import lax

    setup = _setup(cfg)
    res = lax(setup, cfg.floor)
    names = CHECKS if cfg.which == "all" else (cfg.which,)
    reports = []
    for name in names:
        status, residues = _run_check(name, setup, res)
        reports.append({"check": name, "status": status, "residues": residues})
    failed = any(r["status"] == "fail" for r in reports)
    if cfg.fmt == "json":
        out.write(json.dumps(reports, default=str) + "\n")
    else:
        for r in reports:
            out.write(f"{r['check']}: {r['status']}\n")
            for x in r["residues"][:20]:
                out.write(f"  {x}\n")
            if len(r["residues"]) > 20:
                out.write(f"  ... {len(r['residues']) - 20} more\n")
    return 1 if failed else 0


COMMANDS = {"shift": cmd_shift, "lax": cmd_lax, "check": cmd_check}


def main(argv=None, out=None):
    out = out or sys.stdout
    try:
        ns = _parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config(ns)
        return COMMANDS[cfg.command](cfg, out)
    except (ConfigError, OSError, json.JSONDecodeError) + CONFIG_ERRORS as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except COMPUTE_ERRORS as exc:
        sys.stderr.write(f"computation failed: {exc}\n")
        return 3


def main_entry():
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    main_entry()
