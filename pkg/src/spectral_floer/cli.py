"""Command-line front end.

Exit codes: 0 success, 1 a showcase check failed, 2 usage or input error.
Errors print one line ``ERROR <token>: <message>`` on stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .algebra.exterior import CupFormError, parse_cup
from .flatdirac import (
    FlatPoint,
    LocusError,
    PerturbationError,
    dirac_spectrum,
    kernel_locus_membership,
    parse_path,
    parse_point,
    parse_real,
    spectral_flow,
    spin_points,
)
from .floercore import ConsistencyError, DatumError, hm_bar, palindrome_check, simplest_hm
from .productgeom import (
    DATUM_PRESETS,
    HYPERBOLIC_PRODUCT_S_TILDE,
    PresetError,
    ProductSpectrumQuery,
    coexact_spectrum,
    lambda1_star,
    preset_table,
    spectrally_large,
    to_rational,
)
from .serialize import canonical_dumps, dump_datum, load_datum, umodule_to_json
from .showcase import run_checks


class UsageError(Exception):
    def __init__(self, token: str, message: str):
        self.token = token
        super().__init__(message)


def _report(command: str, inputs: dict, result: dict, checks=()) -> dict:
    return {
        "command": command,
        "inputs": inputs,
        "result": result,
        "checks": [{"name": c.name, "pass": c.passed, "detail": c.detail} for c in checks],
    }


def cmd_hmbar(args) -> dict:
    try:
        cup = parse_cup(args.cup, args.b1)
    except CupFormError as exc:
        raise UsageError("parse_error", str(exc)) from exc
    period = hm_bar(cup)
    seq = list(period.sequence(0, args.b1))
    return _report(
        "hmbar",
        {"b1": args.b1, "cup": cup.to_text()},
        {"period": seq, "total": period.total, "euler": period.euler_characteristic()},
    )


def _load_datum(args):
    if args.datum:
        try:
            return load_datum(Path(args.datum).read_text())
        except OSError as exc:
            raise UsageError("datum_file", str(exc)) from exc
        except (DatumError, CupFormError) as exc:
            raise UsageError("datum_error", str(exc)) from exc
    if args.preset not in DATUM_PRESETS:
        raise UsageError("unknown_preset", f"unknown preset {args.preset!r}; choose from {sorted(DATUM_PRESETS)}")
    return DATUM_PRESETS[args.preset]()


def cmd_simplest(args) -> dict:
    datum = _load_datum(args)
    mode = "paper_absolute" if args.absolute else "relative"
    if args.absolute and args.preset == "t3-flat":
        raise UsageError("bad_input", "the flat T^3 datum has no pinned absolute grading; drop --absolute")
    try:
        res = simplest_hm(datum, mode)
    except ConsistencyError as exc:
        raise UsageError("inconsistent_datum", str(exc)) from exc
    towers = umodule_to_json(res.tower_part)["towers"]
    return _report(
        "simplest",
        {"datum": datum.label, "grading": mode, "source": args.datum or args.preset},
        {
            "towers": towers,
            "reduced": umodule_to_json(res.reduced)["reduced"],
            "multiplicities": [t["multiplicity"] for t in towers],
            "palindromic": palindrome_check(res.tower_part),
        },
    )


def cmd_export_datum(args) -> str:
    return dump_datum(_load_datum(args))


def _real(text: str, what: str):
    try:
        return parse_real(text)
    except ValueError as exc:
        raise UsageError("parse_error", f"{what}: {exc}") from exc


def cmd_flat_t3(args) -> dict:
    try:
        if args.action == "spectrum":
            p = FlatPoint.make(parse_point(args.beta))
            delta = float(_real(args.delta, "delta"))
            spec = dirac_spectrum(p, delta, float(_real(args.radius, "radius")))
            return _report(
                "flat-t3 spectrum",
                {"beta": list(p.beta), "delta": delta, "radius": float(_real(args.radius, "radius"))},
                {"eigenvalues": [{"eigenvalue": ev, "multiplicity": m} for ev, m in spec]},
            )
        if args.action == "locus":
            p = FlatPoint.make(parse_point(args.beta))
            side = kernel_locus_membership(p, _real(args.delta, "delta"))
            return _report("flat-t3 locus", {"beta": list(p.beta), "delta": args.delta}, {"side": side})
        if args.action == "sf":
            verts = parse_path(args.path)
            sf = spectral_flow(verts, _real(args.delta, "delta"))
            return _report(
                "flat-t3 sf",
                {"delta": args.delta, "path": [[float(x) for x in v] for v in verts]},
                {"spectral_flow": sf},
            )
        pts = spin_points(_real(args.delta, "delta"))
        rows = [{"point": list(sp.point.beta), "side": sp.side, "is_s0": sp.is_s0} for sp in pts]
        return _report(
            "flat-t3 spin",
            {"delta": args.delta},
            {"points": rows, "inside": sum(sp.side == "inside" for sp in pts)},
        )
    except PerturbationError as exc:
        raise UsageError("perturbation_not_small", str(exc)) from exc
    except LocusError as exc:
        raise UsageError("on_locus", str(exc)) from exc
    except ValueError as exc:
        raise UsageError("bad_input", str(exc)) from exc


def cmd_waveguide(args) -> dict:
    try:
        table = preset_table(args.preset_file or ())
    except PresetError as exc:
        raise UsageError("preset_file", str(exc)) from exc
    try:
        L = to_rational(args.L)
        if args.preset:
            if args.preset not in table:
                raise UsageError("unknown_preset", f"unknown surface {args.preset!r}; known: {sorted(table)}")
            surf = table[args.preset]
            q = ProductSpectrumQuery.for_surface(surf, L, args.count)
            source = {"preset": surf.name, "lambda1": surf.lambda1, "genus": surf.genus}
        else:
            lam = to_rational(args.lambda1)
            q = ProductSpectrumQuery((lam,), args.genus, L, args.count)
            source = {"lambda1": lam, "genus": args.genus}
        s_tilde = to_rational(args.s_tilde)
        star = lambda1_star(q)
        spec = coexact_spectrum(q)
    except (ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, UsageError):
            raise
        raise UsageError("bad_input", str(exc)) from exc
    return _report(
        "waveguide",
        {**source, "L": L, "count": args.count, "s_tilde_inf": s_tilde},
        {
            "spectrum": [{"eigenvalue": v, "multiplicity": m} for v, m in spec],
            "lambda1_star": star,
            "lambda1_star_float": float(star),
            "threshold": -s_tilde / 2,
            "spectrally_large": spectrally_large(star, s_tilde),
        },
    )


def cmd_showcase(args) -> tuple[dict, int]:
    checks = run_checks(args.preset_file or ())
    rep = _report("showcase", {"preset_files": list(args.preset_file or ())}, {
        "passed": sum(c.passed for c in checks), "total": len(checks)}, checks)
    return rep, 0 if all(c.passed for c in checks) else 1


def render_table(rep: dict) -> str:
    lines = [f"# {rep['command']}"]
    for k, v in rep["inputs"].items():
        lines.append(f"  {k}: {v}")
    res = rep["result"]
    for k, v in res.items():
        if isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{k}:")
            cols = list(v[0])
            lines.append("  " + "\t".join(cols))
            for row in v:
                lines.append("  " + "\t".join(str(row[c]) for c in cols))
        else:
            lines.append(f"{k}: {v}")
    for c in rep["checks"]:
        lines.append(f"[{'PASS' if c['pass'] else 'FAIL'}] {c['name']}: {c['detail']}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the canonical JSON report")
    common.add_argument("-o", "--output", help="also write the report to this file")

    p = argparse.ArgumentParser(prog="spectral-floer", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    h = sub.add_parser("hmbar", parents=[common], help="HM-bar period from a triple cup product")
    h.add_argument("--b1", type=int, required=True)
    h.add_argument("--cup", required=True, help='terms "i,j,k:c; ..." (1-based)')

    for name, helptext in (("simplest", "HM-to (towers and reduced part) of a simplest-type datum"), ("export-datum", "write a datum as JSON")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        src = s.add_mutually_exclusive_group(required=True)
        src.add_argument("--preset", help=f"one of {', '.join(DATUM_PRESETS)}")
        src.add_argument("--datum", help="datum JSON file")
        if name == "simplest":
            s.add_argument("--absolute", action="store_true", help="top tower at degree -1")

    f = sub.add_parser("flat-t3", help="Dirac family on the flat unit three-torus")
    fsub = f.add_subparsers(dest="action", required=True)
    fs = fsub.add_parser("spectrum", parents=[common])
    fs.add_argument("--beta", required=True)
    fs.add_argument("--delta", default="0")
    fs.add_argument("--radius", default="1")
    fl = fsub.add_parser("locus", parents=[common])
    fl.add_argument("--beta", required=True)
    fl.add_argument("--delta", required=True)
    ff = fsub.add_parser("sf", parents=[common])
    ff.add_argument("--delta", required=True)
    ff.add_argument("--path", required=True, help='vertices "x,y,z ; x,y,z ; ..."; pi literals allowed')
    fp = fsub.add_parser("spin", parents=[common])
    fp.add_argument("--delta", required=True)

    w = sub.add_parser("waveguide", parents=[common], help="coexact spectrum of S^1 x Sigma")
    src = w.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset")
    src.add_argument("--lambda1")
    w.add_argument("--genus", type=int, default=2, help="genus when --lambda1 is given (default 2)")
    w.add_argument("--L", required=True, help="circle is R / 2 pi L Z")
    w.add_argument("--count", type=int, default=10)
    w.add_argument("--s-tilde", default=str(HYPERBOLIC_PRODUCT_S_TILDE), help="inf of s~ (default -2)")
    w.add_argument("--preset-file", action="append", help="extra surface preset JSON")

    sc = sub.add_parser("showcase", parents=[common], help="run every golden check")
    sc.add_argument("--preset-file", action="append", help="surface preset JSON to validate")
    return p


def _emit(text: str, args) -> None:
    sys.stdout.write(text)
    if getattr(args, "output", None):
        Path(args.output).write_text(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    code = 0
    try:
        if args.command == "export-datum":
            _emit(cmd_export_datum(args), args)
            return 0
        if args.command == "hmbar":
            rep = cmd_hmbar(args)
        elif args.command == "simplest":
            rep = cmd_simplest(args)
        elif args.command == "flat-t3":
            rep = cmd_flat_t3(args)
        elif args.command == "waveguide":
            rep = cmd_waveguide(args)
        else:
            rep, code = cmd_showcase(args)
    except UsageError as exc:
        print(f"ERROR {exc.token}: {exc}", file=sys.stderr)
        return 2
    _emit(canonical_dumps(rep) if args.json else render_table(rep), args)
    return code


if __name__ == "__main__":
    sys.exit(main())
