"""Command-line front end.

Exit codes: 0 success, 1 failed certificate or inconsistent computation,
2 invalid input.  Rationals are printed as exact ``num/den`` strings.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from contextlib import contextmanager
from fractions import Fraction

from . import __version__, sl2
from .birkhoff import FINITE_PREFIX_NOTE, BaseOrbit, certify, section_data
from .errors import CertificationFailedError, ComputationError, InputError, LinkcertError
from .surgery import homology, presentation_matrix, surgered_linking, surgered_self_linking
from .template import (CALIBRATION_ENV, calibrate, calibration_digest, dump_model,
                       hopf_linking_vector, load_model, s3_linking, s3_self_linking)
from .words import SurfaceSpec, canonicalize, enumerate_orbits, letter_counts, orbit_identity

SCHEMA = "linkcert/1"
DEFAULT_BASES = {(2, 3, 7): "h", (3, 3, 4): "gamma8"}


def rational(x: Fraction) -> str:
    return str(Fraction(x))


def orbit_record(w: str, linking: Fraction | None = None, identity: str | None = None) -> dict:
    na, nb = letter_counts(w)
    rec = {"word": w, "canonical": canonicalize(w), "n_a": na, "n_b": nb}
    if identity is not None:
        rec["identity"] = identity
    if linking is not None:
        linking = Fraction(linking)
        rec["linking"] = {"num": linking.numerator, "den": linking.denominator}
    return rec


def _surface(args) -> SurfaceSpec:
    return SurfaceSpec.parse(args.surface)


def _base(args, s: SurfaceSpec) -> BaseOrbit:
    name = args.base or DEFAULT_BASES.get(s.triple)
    if name is None:
        raise InputError(f"no default base orbit for {s}; pass --base")
    return BaseOrbit.resolve(s, name)


# --- commands ----------------------------------------------------------------

def cmd_enumerate(args) -> dict:
    s = _surface(args)
    words = enumerate_orbits(s, args.max_len)
    return {"surface": str(s), "max_len": args.max_len, "count": len(words),
            "orbits": [orbit_record(w, identity=orbit_identity(w, s)) for w in words]}


def cmd_link(args) -> dict:
    s = _surface(args)
    value = surgered_linking(s, args.word1, args.word2)
    return {"surface": str(s), "words": [args.word1, args.word2],
            "s3_linking": s3_linking(args.word1, args.word2),
            "hopf_vectors": [list(hopf_linking_vector(w)) for w in (args.word1, args.word2)],
            "linking": rational(value)}


def cmd_selflink(args) -> dict:
    s = _surface(args)
    value = surgered_self_linking(s, args.word)
    return {"surface": str(s), "word": args.word, "s3_self_linking": s3_self_linking(args.word),
            "hopf_vector": list(hopf_linking_vector(args.word)),
            "self_linking": rational(value)}


def _report_dict(report, with_elapsed: bool) -> dict:
    out = {
        "surface": str(report.surface),
        "base": {"role": report.base.role, "word": report.base.word},
        "max_len": report.max_len,
        "mode": report.mode,
        "orbit_count": len(report.orbits),
        "all_negative": report.all_negative,
        "self_linking": rational(report.self_linking),
        "min_value": rational(report.min_value),
        "min_witness": report.min_witness,
        "max_value": rational(report.max_value),
        "max_witness": report.max_witness,
        "unit_intersection_orbits": report.unit_intersection_orbits,
        "unit_intersection_identities": report.unit_intersection_identities,
        "notes": report.notes,
        "orbits": [orbit_record(o.word, o.linking, o.identity) for o in report.orbits],
    }
    nb = report.max_non_base
    out["max_non_base"] = None if nb is None else {"value": rational(nb[0]), "witness": nb[1]}
    if with_elapsed:
        out["elapsed_seconds"] = round(report.elapsed, 3)
    return out


def cmd_certify(args) -> dict:
    s = _surface(args)
    report = certify(_base(args, s), args.max_len, args.mode, args.workers)
    out = _report_dict(report, args.timing)
    if not report.all_negative:
        raise CertificationFailedError("some orbit does not link negatively with the base", out)
    return out


def cmd_section(args) -> dict:
    s = _surface(args)
    base = _base(args, s)
    report = certify(base, args.max_len, args.mode, args.workers)
    data = section_data(base, args.max_len, args.boundary_components, report=report)
    return {"surface": str(s), "base": {"role": base.role, "word": base.word},
            "max_len": args.max_len, "self_linking": rational(report.self_linking),
            "multiplicity": data.multiplicity, "chi": data.chi,
            "boundary_components": data.boundary_components, "genus": data.genus,
            "fixed_points": data.fixed_points, "trace": data.trace,
            "monodromy": data.monodromy,
            "monodromy_matrix": sl2.word_to_matrix(data.monodromy).rows(),
            "notes": list(data.notes)}


def cmd_homology(args) -> dict:
    s = _surface(args)
    g = homology(s)
    return {"surface": str(s), "presentation_matrix": presentation_matrix(s),
            "invariant_factors": list(g.factors), "order": g.order, "group": str(g)}


def cmd_sl2_trace(args) -> dict:
    m = sl2.word_to_matrix(args.word)
    return {"word": args.word, "matrix": m.rows(), "trace": m.trace,
            "canonical": sl2.canonical_cyclic(args.word)}


def _parse_matrix(text: str) -> sl2.IntMatrix2:
    try:
        entries = [int(t) for t in text.replace(" ", "").split(",")]
    except ValueError:
        raise InputError(f"cannot parse matrix {text!r}; expected a,b,c,d") from None
    if len(entries) != 4:
        raise InputError(f"expected four entries a,b,c,d, got {text!r}")
    return sl2.IntMatrix2(*entries)


def cmd_sl2_classify(args) -> dict:
    if args.matrix is not None:
        m = _parse_matrix(args.matrix)
        return {"matrix": m.rows(), "trace": m.trace, "word": sl2.matrix_to_lr_word(m)}
    if args.trace is None:
        raise InputError("pass --matrix a,b,c,d or --trace T")
    if args.trace < 3:
        raise InputError("trace must be at least 3")
    bound = args.max_len or args.trace
    return {"trace": args.trace, "max_len": bound,
            "classes": sl2.classes_with_trace(args.trace, bound)}


def cmd_appendix_check(args) -> dict:
    if args.family:
        boundary, word = sl2.appendix_table(args.family, *args.params)
        row = {"family": args.family, "params": args.params, "boundary": boundary, "word": word}
        if word is not None:
            row.update(canonical=sl2.canonical_cyclic(word), trace=sl2.trace(word))
        return {"rows": [row]}
    rows = sl2.appendix_check()
    consistent = next(r for r in rows if r["family"] == "sphere_23r")["canonical"] == "LR"
    return {"rows": rows, "sphere_237_matches_monodromy": consistent}


def cmd_calibrate(args) -> dict:
    model = calibrate()
    text = dump_model(model)
    if args.write:
        with open(args.write, "w") as fh:
            fh.write(text)
    return {"model": {k: v for k, v in (line.split(" = ") for line in text.splitlines()
                                        if " = " in line)},
            "written": args.write}


# --- output ------------------------------------------------------------------

def _envelope(command: str, result: dict, args) -> dict:
    env = {"schema": SCHEMA, "version": __version__, "command": command, "result": result}
    if command in ("enumerate", "link", "selflink", "certify", "section"):
        env["calibration_digest"] = calibration_digest()
    if command in ("certify", "section"):
        env["max_len"] = args.max_len
        env["finite_prefix"] = FINITE_PREFIX_NOTE
    return env


def _text(obj, indent=0) -> list[str]:
    pad = "  " * indent
    lines = []
    for k, v in obj.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines += _text(v, indent + 1)
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{pad}{k}: ({len(v)} entries)")
            for item in v:
                lines.append(f"{pad}  - " + ", ".join(f"{a}={_flat(b)}" for a, b in item.items()))
        elif isinstance(v, list) and any(isinstance(x, str) and " " in x for x in v):
            lines.append(f"{pad}{k}:")
            lines += [f"{pad}  - {x}" for x in v]
        else:
            lines.append(f"{pad}{k}: {_flat(v)}")
    return lines


def _flat(v) -> str:
    if isinstance(v, dict) and set(v) == {"num", "den"}:
        return rational(Fraction(v["num"], v["den"]))
    if isinstance(v, dict) or (isinstance(v, list) and any(isinstance(x, list) for x in v)):
        return json.dumps(v, sort_keys=True, separators=(",", ":"))
    if isinstance(v, list):
        return " ".join(_flat(x) for x in v) if v else "-"
    if isinstance(v, bool):
        return str(v).lower()
    return "-" if v is None else str(v)


def _csv(env: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    result = env["result"]
    table = next((k for k in ("orbits", "rows", "classes") if k in result), None)
    writer.writerow(["schema", env["schema"]])
    if table is None or not result[table] or not isinstance(result[table][0], dict):
        for k, v in result.items():
            writer.writerow([k, _flat(v)])
        return buf.getvalue()
    cols = list(result[table][0])
    writer.writerow(cols)
    for row in result[table]:
        writer.writerow([_flat(row.get(c)) for c in cols])
    return buf.getvalue()


def render(env: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(env, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        return _csv(env)
    return "\n".join(_text(env["result"])) + "\n"


# --- parser ------------------------------------------------------------------

COMMANDS = {
    "enumerate": cmd_enumerate, "link": cmd_link, "selflink": cmd_selflink,
    "certify": cmd_certify, "section": cmd_section, "homology": cmd_homology,
    "sl2-trace": cmd_sl2_trace, "sl2-classify": cmd_sl2_classify,
    "appendix-check": cmd_appendix_check, "calibrate": cmd_calibrate,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("json", "csv", "text"), default="text")
    common.add_argument("--calibration", help=f"template calibration file (default: ${CALIBRATION_ENV} "
                                              "or the bundled one)")

    surf = argparse.ArgumentParser(add_help=False)
    surf.add_argument("--surface", default="2,3,7", help="cone orders p,q,r (default 2,3,7)")

    cert = argparse.ArgumentParser(add_help=False)
    cert.add_argument("--base", help="h, gamma8 or an explicit code (default: by surface)")
    cert.add_argument("--max-len", type=int, default=20)
    cert.add_argument("--mode", choices=("fast", "oracle"), default="fast")
    cert.add_argument("--workers", type=int, default=1)

    parser = argparse.ArgumentParser(prog="linkcert", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common, surf], help="list admissible orbit codes")
    p.add_argument("--max-len", type=int, default=12)

    p = sub.add_parser("link", parents=[common, surf], help="linking number of two orbits")
    p.add_argument("word1")
    p.add_argument("word2")

    p = sub.add_parser("selflink", parents=[common, surf], help="linking with the stable push-off")
    p.add_argument("word")

    p = sub.add_parser("certify", parents=[common, surf, cert], help="negative-linking certificate")
    p.add_argument("--timing", action="store_true", help="include wall-clock time in the report")

    p = sub.add_parser("section", parents=[common, surf, cert], help="Birkhoff section invariants")
    p.add_argument("--boundary-components", type=int, default=1)

    sub.add_parser("homology", parents=[common, surf], help="first homology of the unit tangent bundle")

    p = sub.add_parser("sl2-trace", parents=[common], help="matrix and trace of an LR word")
    p.add_argument("word")

    p = sub.add_parser("sl2-classify", parents=[common], help="LR word of a matrix, or classes of a trace")
    p.add_argument("--matrix", help="a,b,c,d for [[a,b],[c,d]]")
    p.add_argument("--trace", type=int)
    p.add_argument("--max-len", type=int)

    p = sub.add_parser("appendix-check", parents=[common], help="evaluate the monodromy table")
    p.add_argument("--family", choices=sorted(sl2.APPENDIX_ROWS))
    p.add_argument("params", nargs="*", type=int)

    p = sub.add_parser("calibrate", parents=[common], help="rerun the template parameter search")
    p.add_argument("--write", metavar="PATH")
    return parser


@contextmanager
def _calibration(path):
    if path is None:
        yield
        return
    old = os.environ.get(CALIBRATION_ENV)
    os.environ[CALIBRATION_ENV] = path
    try:
        yield
    finally:
        if old is None:
            del os.environ[CALIBRATION_ENV]
        else:
            os.environ[CALIBRATION_ENV] = old


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    with _calibration(args.calibration):
        try:
            if args.command not in ("sl2-trace", "sl2-classify", "appendix-check", "calibrate",
                                    "homology"):
                load_model()
            result = COMMANDS[args.command](args)
        except CertificationFailedError as exc:
            stdout.write(render(_envelope(args.command, exc.args[1], args), args.output))
            stderr.write(f"linkcert: {exc.args[0]}\n")
            return 1
        except InputError as exc:
            stderr.write(f"linkcert: error: {exc}\n")
            return 2
        except (ComputationError, LinkcertError) as exc:
            stderr.write(f"linkcert: {exc}\n")
            return 1
        stdout.write(render(_envelope(args.command, result, args), args.output))
    return 0


def main(argv=None) -> int:
    try:
        return run(argv)
    except BrokenPipeError:
        # downstream closed early (e.g. piped into head)
        sys.stderr.close()
        return 0


if __name__ == "__main__":
    sys.exit(main())
