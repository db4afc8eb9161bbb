"""Command-line front end.

Subcommands: check, normalize, ribbon, sublinks, homology, telescope,
pi2probe.  Every command emits a single JSON report on stdout; identical
inputs and flags produce byte-identical findings.  Exit codes: 0 ok,
1 check failed, 2 parse/usage error, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import __version__
from .complexes import (
    Filtration,
    SubcomplexSpec,
    from_presentation,
    homology,
    is_homologically_contractible,
    subcomplex_complex,
    telescope,
)
from .intmat import NotUnimodular, SparseIntMatrix, smith_normal_form
from .links import (
    NotHomologyTrivialUnit,
    SublinkSelection,
    build_surgery_code,
    exterior,
    sublink_to_subcomplex,
)
from .presentations import (
    ParseError,
    ParsedPresentation,
    Presentation,
    WindowMismatch,
    exponent_matrix,
    is_homology_trivial_unit,
    is_locally_finite,
    normalize,
    parse_presentation_text,
    presentation_to_text,
)
from .probe import asphericity_verdict
from .words import BaseChange, Invert, RightMultiply, Swap, word_to_text


class CheckFailed(Exception):
    """A command-level check failed; carries the report to emit."""

    def __init__(self, report: dict):
        super().__init__("check failed")
        self.report = report


TRIVIALITY_WARNING = (
    "group triviality assumed, not verified (contractibility hypothesis)"
)
ASPHERICITY_NOTE = "aspherical by construction (ribbon disk-link exterior)"


def _digest(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _report(command: str, paths: list[Path], config: dict, findings: dict, warnings: list[str]) -> dict:
    return {
        "tool": "asphere",
        "version": __version__,
        "command": command,
        "inputs": {str(p): _digest(p) for p in paths},
        "config": config,
        "findings": findings,
        "warnings": warnings,
    }


def _emit(report: dict) -> None:
    print(json.dumps(report, indent=2, sort_keys=True))


def _load_presentation(path: Path, window: int | None) -> ParsedPresentation:
    parsed = parse_presentation_text(path.read_text())
    if window is not None:
        p = parsed.presentation
        keep = [
            r for r in p.relators[:window] if r.max_index() <= min(window, p.n_generators)
        ]
        parsed = ParsedPresentation(
            Presentation(min(window, p.n_generators), tuple(keep)),
            parsed.gen_names[: window] if parsed.gen_names else None,
            parsed.rel_names[: len(keep)],
        )
    return parsed


def _config(args: argparse.Namespace, **extra) -> dict:
    config = {"window": args.window, "seed": args.seed}
    config.update(extra)
    return config


def _base_change_json(bc: BaseChange) -> dict:
    moves = []
    for m in bc.moves:
        if isinstance(m, Swap):
            moves.append(["swap", m.i, m.j])
        elif isinstance(m, Invert):
            moves.append(["invert", m.i])
        elif isinstance(m, RightMultiply):
            moves.append(["rightmult", m.i, m.j])
    return {"moves": moves}


# ---------------------------------------------------------------------------
# Commands.


def cmd_check(args: argparse.Namespace) -> int:
    path = Path(args.file)
    parsed = _load_presentation(path, args.window)
    p = parsed.presentation
    finite, witness = is_locally_finite(p)
    diag, _, _ = smith_normal_form(exponent_matrix(p))
    unimodular = p.balanced and all(d == 1 for d in diag)
    complex_ = from_presentation(p)
    h = homology(complex_)
    contractible = is_homologically_contractible(complex_)
    try:
        trivial_unit: bool | None = is_homology_trivial_unit(p)
    except WindowMismatch:
        trivial_unit = None
    findings = {
        "generators": p.n_generators,
        "relators": len(p.relators),
        "balanced": p.balanced,
        "locally_finite": {"ok": finite, "max_incidence": witness},
        "exponent_snf": list(diag),
        "unimodular": unimodular,
        "homology": h.to_json(),
        "homologically_contractible": contractible,
        "homology_trivial_unit": trivial_unit,
    }
    warnings = [TRIVIALITY_WARNING]
    report = _report("check", [path], _config(args), findings, warnings)
    _emit(report)
    return 0 if (p.balanced and unimodular and contractible) else 1


def cmd_normalize(args: argparse.Namespace) -> int:
    path = Path(args.file)
    parsed = _load_presentation(path, args.window)
    p = parsed.presentation
    out = Path(args.out)
    moves_out = Path(args.moves_out) if args.moves_out else out.with_suffix(out.suffix + ".bc.json")
    config = _config(args, out=str(out), moves_out=str(moves_out))
    try:
        cert = normalize(p)
    except NotUnimodular as exc:
        diag, _, _ = smith_normal_form(exponent_matrix(p))
        raise CheckFailed(
            _report(
                "normalize",
                [path],
                config,
                {"error": "not unimodular", "detail": str(exc), "exponent_snf": list(diag)},
                [],
            )
        ) from exc
    normalized = Presentation(p.n_generators, cert.new_relators)
    out.write_text(presentation_to_text(normalized, parsed.gen_names, parsed.rel_names))
    moves_out.write_text(json.dumps(_base_change_json(cert.base_change), indent=2, sort_keys=True))
    findings = {
        "exponent_check": cert.exponent_check,
        "moves": len(cert.base_change),
        "output": str(out),
        "base_change_log": str(moves_out),
    }
    _emit(_report("normalize", [path], config, findings, [TRIVIALITY_WARNING]))
    return 0 if cert.exponent_check else 3


def _surgery_code_or_fail(command: str, path: Path, p: Presentation, config: dict):
    try:
        return build_surgery_code(p)
    except NotHomologyTrivialUnit as exc:
        raise CheckFailed(
            _report(
                command,
                [path],
                config,
                {"error": "not a homology-trivial unit-group presentation", "detail": str(exc)},
                [TRIVIALITY_WARNING],
            )
        ) from exc


def cmd_ribbon(args: argparse.Namespace) -> int:
    path = Path(args.file)
    p = _load_presentation(path, args.window).presentation
    config = _config(args)
    sc = _surgery_code_or_fail("ribbon", path, p, config)
    _emit(_report("ribbon", [path], config, sc.to_json(), [TRIVIALITY_WARNING]))
    return 0


def _selection_report(sc, fill: frozenset[int], probe_limit: int | None) -> dict:
    ext = exterior(sc, SublinkSelection(fill))
    complex_ = from_presentation(ext)
    entry = {
        "fill": sorted(fill),
        "exterior": {
            "generators": ext.n_generators,
            "relators": [word_to_text(r) for r in ext.relators],
        },
        "homology": homology(complex_).to_json(),
        "exterior_asphericity": ASPHERICITY_NOTE,
    }
    if probe_limit is not None:
        entry["probe"] = asphericity_verdict(ext, probe_limit).to_json()
    return entry


def cmd_sublinks(args: argparse.Namespace) -> int:
    path = Path(args.file)
    p = _load_presentation(path, args.window).presentation
    config = _config(
        args,
        fill=args.fill,
        enumerate=args.enumerate,
        cap=args.cap,
        force=args.force,
        probe_limit=args.probe_limit,
    )
    sc = _surgery_code_or_fail("sublinks", path, p, config)
    m = len(sc.components)
    selections: list[frozenset[int]] = []
    if args.enumerate:
        if m > args.cap and not args.force:
            raise CheckFailed(
                _report(
                    "sublinks",
                    [path],
                    config,
                    {
                        "error": "enumeration cap exceeded",
                        "components": m,
                        "cap": args.cap,
                        "hint": "re-run with --force to walk all subsets",
                    },
                    [],
                )
            )
        selections = [
            frozenset(j + 1 for j in range(m) if mask >> j & 1) for mask in range(1 << m)
        ]
    else:
        fill = frozenset(int(tok) for tok in args.fill.split(",") if tok) if args.fill else frozenset()
        selections = [fill]
    reports = [_selection_report(sc, fill, args.probe_limit) for fill in selections]
    findings = {"components": m, "selections": reports}
    _emit(_report("sublinks", [path], config, findings, [TRIVIALITY_WARNING]))
    return 0


def cmd_homology(args: argparse.Namespace) -> int:
    path = Path(args.file)
    config = _config(args, matrix=args.matrix)
    if args.matrix:
        m = SparseIntMatrix.from_json(json.loads(path.read_text()))
        diag, _, _ = smith_normal_form(m)
        findings = {"rows": m.rows, "cols": m.cols, "snf": list(diag)}
    else:
        p = _load_presentation(path, args.window).presentation
        findings = homology(from_presentation(p)).to_json()
    _emit(_report("homology", [path], config, findings, []))
    return 0


def cmd_telescope(args: argparse.Namespace) -> int:
    path = Path(args.file)
    stages_path = Path(args.stages)
    p = _load_presentation(path, args.window).presentation
    stage_specs = json.loads(stages_path.read_text())
    stages = tuple(
        SubcomplexSpec(
            frozenset(s["gens"]), frozenset(s["rels"]), p.n_generators, len(p.relators)
        )
        for s in stage_specs
    )
    filtration = Filtration(p, stages)
    tower = telescope(filtration)
    final = subcomplex_complex(p, stages[-1])
    tele_h = homology(tower)
    final_h = homology(final)
    findings = {
        "stages": len(stages),
        "telescope": {
            "vertices": tower.n_vertices,
            "edges": len(tower.edges),
            "faces": len(tower.faces),
            "chi": tower.chi,
        },
        "telescope_homology": tele_h.to_json(),
        "final_stage_homology": final_h.to_json(),
        "homology_match": tele_h == final_h,
    }
    _emit(_report("telescope", [path, stages_path], _config(args, stages=str(stages_path)), findings, []))
    return 0 if tele_h == final_h else 3


def cmd_pi2probe(args: argparse.Namespace) -> int:
    path = Path(args.file)
    p = _load_presentation(path, args.window).presentation
    verdict = asphericity_verdict(p, args.limit)
    _emit(_report("pi2probe", [path], _config(args, limit=args.limit), verdict.to_json(), []))
    return 1 if verdict.status == "not_aspherical" else 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="asphere",
        description="Presentation, 2-complex, and ribbon-link workbench.",
    )
    parser.add_argument("--json", action="store_true", help="emit JSON (the default; kept for scripts)")
    parser.add_argument("--window", type=int, default=None, help="truncation window for streamed presentations")
    parser.add_argument("--seed", type=int, default=None, help="seed recorded for fuzz fixtures")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", help="hypothesis checks for a presentation file")
    s.add_argument("file")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("normalize", help="rewrite to identity exponent matrix")
    s.add_argument("file")
    s.add_argument("--out", required=True, help="normalized presentation file")
    s.add_argument("--moves-out", default=None, help="base-change log file (JSON)")
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("ribbon", help="emit the surgery code of a presentation")
    s.add_argument("file")
    s.set_defaults(func=cmd_ribbon)

    s = sub.add_parser("sublinks", help="fill sublinks and report exteriors")
    s.add_argument("file")
    s.add_argument("--fill", default=None, help="comma-separated component indices")
    s.add_argument("--enumerate", action="store_true", help="walk all 2^m selections")
    s.add_argument("--cap", type=int, default=12, help="enumeration cap on components")
    s.add_argument("--force", action="store_true", help="override the enumeration cap")
    s.add_argument("--probe-limit", type=int, default=None, help="also probe each exterior")
    s.set_defaults(func=cmd_sublinks)

    s = sub.add_parser("homology", help="homology of a presentation complex")
    s.add_argument("file")
    s.add_argument("--matrix", action="store_true", help="input is matrix JSON; report its SNF")
    s.set_defaults(func=cmd_homology)

    s = sub.add_parser("telescope", help="collar telescope over a filtration")
    s.add_argument("file")
    s.add_argument("--stages", required=True, help="JSON list of {gens, rels} stages")
    s.set_defaults(func=cmd_telescope)

    s = sub.add_parser("pi2probe", help="asphericity falsification probe")
    s.add_argument("file")
    s.add_argument("--limit", type=int, default=256, help="coset limit")
    s.set_defaults(func=cmd_pi2probe)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CheckFailed as exc:
        _emit(exc.report)
        return 1
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # invariant violation
        print(f"internal error: {exc!r}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
