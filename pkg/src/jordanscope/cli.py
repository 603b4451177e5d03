"""Command-line surface: JSON in, JSON reports out.

Wire conventions (schema "v1"): complex numbers serialize as [re, im]
pairs, exact rationals as "num/den" strings, polynomials as entry-
grammar strings. Every report embeds a run manifest with the command,
an input digest, tolerances, the seed and the tool version, so a run
can be reproduced byte-identically (wall-clock timing goes to stderr
only, never into the report).

Exit codes: 0 success, 1 validation failure, 2 input error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import multiprocessing
import os
import random
import sys
import time
from fractions import Fraction

import numpy as np

from . import __version__
from .algebra.exprparse import EntrySyntaxError
from .algebra.scalars import GaussianRational
from .family import MatrixFamily
from .jordan import (
    CensusInconsistencyError,
    jordan_census,
    theta_from_squarefree,
    theta_product,
    verify_rank_identities,
)
from .corpus import builtin_cases, builtin_families
from .ranklab import DEFAULT_REL_TOL
from .scanner import (
    PointKind,
    check_jst_bound,
    check_split_bound,
    classify_point,
    jst_defining_functions,
    square_free_part_family,
)
from .sylv import check_coeff_bound, split_defining_functions
from .tracker import distinct_eigenvalues, splitting_amounts, track_path

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_INPUT = 2

TOL_ENV_VAR = "JORDANSCOPE_TOL"


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# wire helpers


def cplx(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def from_wire_complex(v) -> complex:
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return complex(v[0], v[1])
    raise InputError(f"cannot read complex value from {v!r}")


def rational_str(q: GaussianRational) -> list:
    return [str(q.re), str(q.im)]


def manifest(args, raw_input: bytes, rel_tol: float, seed: int) -> dict:
    # --jobs only changes execution topology, never the result, so it is
    # stripped to keep reports byte-identical across worker counts
    cleaned = []
    skip = False
    for arg in args:
        if skip:
            skip = False
            continue
        if arg == "--jobs":
            skip = True
            continue
        if arg.startswith("--jobs="):
            continue
        cleaned.append(arg)
    return {
        "command": cleaned,
        "input_sha256": hashlib.sha256(raw_input).hexdigest(),
        "tolerances": {"rel_tol": rel_tol},
        "seed": seed,
        "tool_version": __version__,
        "timing": None,  # kept out of reports so reruns are byte-identical
    }


def emit(doc: dict, out_path=None):
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def load_family(path: str):
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as err:
        raise InputError(f"cannot read family file: {err}") from err
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as err:
        raise InputError(f"family file is not valid JSON: {err}") from err
    try:
        fam = MatrixFamily.from_spec_dict(doc)
    except (KeyError, ValueError, EntrySyntaxError) as err:
        raise InputError(f"invalid family spec: {err}") from err
    return fam, raw


def resolve_family(args):
    if getattr(args, "builtin", None):
        families = builtin_families()
        if args.builtin not in families:
            raise InputError(
                f"unknown builtin {args.builtin!r}; choose from "
                f"{sorted(families)}"
            )
        fam = families[args.builtin]
        raw = json.dumps(fam.to_spec_dict(), sort_keys=True).encode()
        return fam, raw
    if not getattr(args, "family", None):
        raise InputError("provide a family file or --builtin NAME")
    return load_family(args.family)


def parse_point(text: str, nparams: int):
    parts = text.split(",")
    if len(parts) != nparams:
        raise InputError(f"expected {nparams} coordinates, got {len(parts)}")
    out = []
    for part in parts:
        try:
            out.append(complex(part.strip().replace("i", "j")))
        except ValueError as err:
            raise InputError(f"bad coordinate {part!r}") from err
    return tuple(out)


def parse_box(text: str, nparams: int):
    parts = text.split(",")
    if len(parts) != nparams:
        raise InputError(f"expected {nparams} intervals, got {len(parts)}")
    out = []
    for part in parts:
        try:
            lo, hi = part.split(":")
            out.append((float(lo), float(hi)))
        except ValueError as err:
            raise InputError(f"bad interval {part!r} (use lo:hi)") from err
    return out


def parse_path(text: str, nparams: int):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise InputError(f"--path must be JSON: {err}") from err
    if not isinstance(doc, list) or len(doc) < 2:
        raise InputError("--path needs a JSON list of at least two vertices")
    path = []
    for vertex in doc:
        if not isinstance(vertex, list) or len(vertex) != nparams:
            raise InputError(f"each vertex needs {nparams} coordinates")
        path.append(tuple(from_wire_complex(v) for v in vertex))
    return path


def effective_tol(args) -> float:
    if args.tol is not None:
        return args.tol
    env = os.environ.get(TOL_ENV_VAR)
    if env:
        try:
            return float(env)
        except ValueError as err:
            raise InputError(f"bad {TOL_ENV_VAR}={env!r}") from err
    return DEFAULT_REL_TOL


def unit_polydisk_samples(nparams: int, count: int, seed: int):
    rng = random.Random(seed)
    return [
        [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(nparams)]
        for _ in range(count)
    ]


# ---------------------------------------------------------------------------
# serialization of result objects


def census_doc(census) -> dict:
    return {
        "eigenvalues": [cplx(l) for l in census.eigenvalues],
        "multiplicities": list(census.multiplicities),
        "blocks": [
            {str(size): count for size, count in sorted(b.items())}
            for b in census.blocks
        ],
        "aggregate": {str(k): v for k, v in census.aggregate.items()},
    }


def point_doc(pc) -> dict:
    return {
        "point": [cplx(c) for c in pc.point],
        "kind": pc.kind.value,
        "rank_theta": list(pc.rank_theta),
        "census": census_doc(pc.census) if pc.census is not None else None,
        "note": pc.note,
    }


def bound_doc(report) -> dict:
    return {
        "label": report.label,
        "checked": report.checked,
        "passed": report.passed,
        "applicable": report.applicable,
        "max_ratio": report.max_ratio,
        "violations": report.violations[:10],
        "note": report.note,
    }


# ---------------------------------------------------------------------------
# subcommands


def cmd_census(args) -> int:
    fam, raw = resolve_family(args)
    rel_tol = effective_tol(args)
    point = parse_point(args.point, fam.nparams)
    try:
        census = jordan_census(fam.at(point), rel_tol=rel_tol)
    except CensusInconsistencyError as err:
        sys.stderr.write(f"census inconsistency: {err}\n")
        return EXIT_VALIDATION
    doc = {
        "schema": "v1",
        "kind": "census",
        "manifest": manifest(sys.argv[1:], raw, rel_tol, args.seed),
        "family_label": fam.label,
        "point": [cplx(c) for c in point],
        "census": census_doc(census),
    }
    emit(doc, args.out)
    return EXIT_OK


def cmd_split_set(args) -> int:
    fam, raw = resolve_family(args)
    rel_tol = effective_tol(args)
    res = split_defining_functions(fam.char_poly_family(), seed=args.seed)
    pts = unit_polydisk_samples(fam.nparams, args.samples, args.seed)
    family_poly = fam.char_poly_family()
    bound_reports = [
        check_coeff_bound(h, family_poly, pts) for h in res.functions
    ]
    worst = max((b.max_ratio for b in bound_reports), default=0.0)
    empty = any(
        h.is_constant() and not h.constant_value().is_zero()
        for h in res.functions
    )
    doc = {
        "schema": "v1",
        "kind": "split-set",
        "manifest": manifest(sys.argv[1:], raw, rel_tol, args.seed),
        "family_label": fam.label,
        "r_max": res.r_max,
        "functions": [h.to_string(fam.params) for h in res.functions],
        "empty": empty,
        "generic_rank_note": res.generic_rank_note,
        "bound_check": {
            "samples": args.samples,
            "passed": all(b.passed for b in bound_reports),
            "max_ratio": worst,
        },
    }
    emit(doc, args.out)
    return EXIT_OK if all(b.passed for b in bound_reports) else EXIT_VALIDATION


def cmd_jst_set(args) -> int:
    fam, raw = resolve_family(args)
    rel_tol = effective_tol(args)
    res = jst_defining_functions(fam, seed=args.seed)
    pts = unit_polydisk_samples(fam.nparams, args.samples, args.seed)
    bound = check_jst_bound(fam, res, pts)
    doc = {
        "schema": "v1",
        "kind": "jst-set",
        "manifest": manifest(sys.argv[1:], raw, rel_tol, args.seed),
        "family_label": fam.label,
        "rank_values": {str(k): v for k, v in res.rank_values.items()},
        "k0": res.k0,
        "denominator": res.denominator.to_string(fam.params),
        "denominator_is_one": res.denominator_is_one,
        "split_functions": [h.to_string(fam.params) for h in res.split_functions],
        "rank_minor_functions": {
            str(k): [h.to_string(fam.params) for h in v]
            for k, v in res.rank_minor_functions.items()
        },
        "functions": (
            [h.to_string(fam.params) for h in res.functions]
            if res.functions is not None
            else None
        ),
        "capped": res.capped,
        "empty": res.whole_space_stable,
        "notes": res.notes,
        "bound_check": bound_doc(bound),
    }
    emit(doc, args.out)
    ok = bound.passed or not bound.applicable
    return EXIT_OK if ok else EXIT_VALIDATION


def _scan_chunk(payload):
    spec, nodes, probe_radius, rel_tol = payload
    fam = MatrixFamily.from_spec_dict(spec)
    return [
        point_doc(classify_point(fam, node, probe_radius, rel_tol))
        for node in nodes
    ]


def cmd_scan(args) -> int:
    fam, raw = resolve_family(args)
    rel_tol = effective_tol(args)
    box = parse_box(args.box, fam.nparams)
    resolution = [int(r) for r in args.res.split(",")]
    if len(resolution) == 1:
        resolution = resolution * fam.nparams

    from .scanner import grid_nodes

    nodes = grid_nodes(box, resolution)
    if args.probe_radius is not None:
        probe_radius = args.probe_radius
    else:
        probe_radius = min(
            (hi - lo) / (res - 1) for (lo, hi), res in zip(box, resolution)
        ) / 4.0

    if args.jobs > 1:
        spec = fam.to_spec_dict()
        chunk_size = max(1, (len(nodes) + args.jobs - 1) // args.jobs)
        chunks = [
            nodes[i : i + chunk_size] for i in range(0, len(nodes), chunk_size)
        ]
        payloads = [(spec, chunk, probe_radius, rel_tol) for chunk in chunks]
        with multiprocessing.Pool(args.jobs) as pool:
            results = pool.map(_scan_chunk, payloads)
        point_docs = [doc for chunk in results for doc in chunk]
    else:
        point_docs = [
            point_doc(classify_point(fam, node, probe_radius, rel_tol))
            for node in nodes
        ]

    summary = {kind.value: 0 for kind in PointKind}
    for doc in point_docs:
        summary[doc["kind"]] += 1
    n = fam.n
    maxima = [
        max(doc["rank_theta"][k] for doc in point_docs) for k in range(n - 1)
    ]
    doc = {
        "schema": "v1",
        "kind": "scan",
        "manifest": manifest(sys.argv[1:], raw, rel_tol, args.seed),
        "family_label": fam.label,
        "params": fam.params,
        "box": [[lo, hi] for lo, hi in box],
        "resolution": resolution,
        "probe_radius": probe_radius,
        "summary": summary,
        "rank_theta_maxima": maxima,
        "points": point_docs,
    }
    emit(doc, args.out)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            header = [f"re_{p}" for p in fam.params] + ["kind", "rank_theta"]
            fh.write(",".join(header) + "\n")
            for pdoc in point_docs:
                coords = [repr(c[0]) for c in pdoc["point"]]
                fh.write(
                    ",".join(
                        coords
                        + [pdoc["kind"], ";".join(map(str, pdoc["rank_theta"]))]
                    )
                    + "\n"
                )
    return EXIT_OK


def cmd_track(args) -> int:
    fam, raw = resolve_family(args)
    rel_tol = effective_tol(args)
    path = parse_path(args.path, fam.nparams)
    result = track_path(fam, path, steps=args.steps, rel_tol=rel_tol)
    doc = {
        "schema": "v1",
        "kind": "track",
        "manifest": manifest(sys.argv[1:], raw, rel_tol, args.seed),
        "family_label": fam.label,
        "steps": args.steps,
        "samples": [
            {
                "t": s.t,
                "point": [cplx(c) for c in s.point],
                "branches": [cplx(b) for b in s.branches],
                "multiplicities": list(s.multiplicities),
            }
            for s in result.samples
        ],
        "events": [
            {
                "type": "split",
                "t_bracket": list(e.t_bracket),
                "point_bracket": [
                    [cplx(c) for c in e.point_bracket[0]],
                    [cplx(c) for c in e.point_bracket[1]],
                ],
            }
            for e in result.events
        ],
    }
    emit(doc, args.out)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write("t,branch,lambda_re,lambda_im,multiplicity\n")
            for s in result.samples:
                for idx, (b, m) in enumerate(
                    zip(s.branches, s.multiplicities)
                ):
                    fh.write(f"{s.t!r},{idx},{b.real!r},{b.imag!r},{m}\n")
    return EXIT_OK


def _verify_family(fam: MatrixFamily, case, rel_tol: float, seed: int, lines):
    """Run the identity/bound battery; append (label, ok) pairs."""
    label = case.name if case else (fam.label or "family")
    rng = random.Random(seed)

    def away_from_known_bad(pt) -> bool:
        if not case:
            return True
        for bad, _ in case.non_stable:
            if all(abs(a - b) < 0.05 for a, b in zip(pt, bad)):
                return False
        if case.split_point is not None and all(
            abs(a - b) < 0.05 for a, b in zip(pt, case.split_point)
        ):
            return False
        return True

    # rank identity suite at sample points
    sample_points = []
    if case and case.stable_point:
        sample_points.append(case.stable_point)
    while len(sample_points) < 4:
        cand = tuple(rng.uniform(0.4, 1.3) for _ in range(fam.nparams))
        if away_from_known_bad(cand):
            sample_points.append(cand)
    for pt in sample_points:
        try:
            a = fam.at(pt)
            census = jordan_census(a, rel_tol=rel_tol)
            report = verify_rank_identities(a, census, rel_tol)
            lines.append((f"{label}: rank identities at {pt}", report.passed))
        except CensusInconsistencyError as err:
            lines.append((f"{label}: census at {pt} ({err})", False))

    # expected census at the designated stable point
    if case and case.stable_point and case.stable_census:
        census = jordan_census(fam.at(case.stable_point), rel_tol=rel_tol)
        lines.append(
            (
                f"{label}: census at {case.stable_point} = {case.stable_census}",
                census.aggregate == case.stable_census,
            )
        )

    # direct product vs square-free route at rational points
    generic_m = square_free_part_family(fam).distinct_degree
    ok = True
    compared = 0
    while compared < 5:
        pt_exact = [
            GaussianRational(Fraction(rng.randint(1, 24), rng.randint(1, 4)))
            for _ in range(fam.nparams)
        ]
        pt = [complex(x) for x in pt_exact]
        a = fam.at(pt)
        clusters = distinct_eigenvalues(a, rel_tol)
        if len(clusters) != generic_m:
            continue  # point fell on the splitting set; resample
        sq = np.array(
            [[complex(x) for x in row]
             for row in theta_from_squarefree(fam.at_exact(pt_exact))]
        )
        direct = theta_product(a, [lam for lam, _ in clusters])
        if np.linalg.norm(sq - direct, 2) > 1e-6 * (1 + np.linalg.norm(direct, 2)):
            ok = False
        compared += 1
    lines.append((f"{label}: square-free product cross-check", ok))

    # splitting amounts at the known split point
    if case and case.split_point and case.splitting_amounts:
        try:
            sa = splitting_amounts(fam, case.split_point, probe_radius=1e-2,
                                   rel_tol=rel_tol)
            sa_half = splitting_amounts(fam, case.split_point, probe_radius=5e-3,
                                        rel_tol=rel_tol)
            lines.append(
                (
                    f"{label}: splitting amounts at {case.split_point}",
                    sa.amounts == case.splitting_amounts
                    and sa_half.amounts == case.splitting_amounts,
                )
            )
        except Exception as err:  # noqa: BLE001 - report, don't crash the battery
            lines.append((f"{label}: splitting amounts ({err})", False))

    # classification of the known non-stable points
    if case:
        for point, kind in case.non_stable:
            pc = classify_point(fam, point, probe_radius=1e-2, rel_tol=rel_tol)
            lines.append(
                (f"{label}: {point} classified {kind}", pc.kind.value == kind)
            )

    # norm bounds
    pts = unit_polydisk_samples(fam.nparams, 200, seed)
    split_res = split_defining_functions(fam.char_poly_family(), seed=seed)
    coeff_ok = all(
        check_coeff_bound(h, fam.char_poly_family(), pts).passed
        for h in split_res.functions
    )
    lines.append((f"{label}: coefficient bound on split minors", coeff_ok))
    split_ok = all(
        check_split_bound(fam, g, pts).passed for g in split_res.functions
    )
    lines.append((f"{label}: norm bound on split functions", split_ok))
    jst = jst_defining_functions(fam, seed=seed)
    bound = check_jst_bound(fam, jst, pts)
    if bound.applicable:
        lines.append((f"{label}: norm bound on non-stable-set functions",
                      bound.passed))
    else:
        lines.append((f"{label}: non-stable-set bound NOT APPLICABLE "
                      f"({bound.note})", True))


def cmd_verify(args) -> int:
    rel_tol = effective_tol(args)
    lines = []
    if args.builtin_corpus:
        raw = b"builtin-corpus"
        for case in builtin_cases():
            _verify_family(case.family, case, rel_tol, args.seed, lines)
    else:
        fam, raw = resolve_family(args)
        _verify_family(fam, None, rel_tol, args.seed, lines)
    failures = [label for label, ok in lines if not ok]
    for label, ok in lines:
        sys.stdout.write(f"{'PASS' if ok else 'FAIL'}  {label}\n")
    doc = {
        "schema": "v1",
        "kind": "verify",
        "manifest": manifest(sys.argv[1:], raw, rel_tol, args.seed),
        "checks": [{"label": label, "passed": ok} for label, ok in lines],
        "passed": not failures,
    }
    if args.out:
        emit(doc, args.out)
    return EXIT_OK if not failures else EXIT_VALIDATION


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jordanscope",
        description=(
            "Rank-based analysis of parameterized complex matrix families: "
            "eigenvalue splitting sets, Jordan structure jumps, defining "
            "polynomials and norm bounds."
        ),
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, family=True):
        if family:
            p.add_argument("family", nargs="?", help="family spec JSON file")
            p.add_argument(
                "--builtin", help="use a built-in family by name instead"
            )
        p.add_argument("--tol", type=float, default=None,
                       help=f"relative rank tolerance (or ${TOL_ENV_VAR})")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for all randomized steps")
        p.add_argument("--out", default=None, help="write the JSON report here")

    p = sub.add_parser("census", help="Jordan block census at a point")
    common(p)
    p.add_argument("--point", required=True,
                   help="comma-separated coordinates, e.g. 1.0,0.5 or 1+2i")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("split-set", help="defining polynomials of the splitting set")
    common(p)
    p.add_argument("--samples", type=int, default=1000,
                   help="bound-check sample count in the unit polydisk")
    p.set_defaults(func=cmd_split_set)

    p = sub.add_parser("jst-set",
                       help="defining polynomials of the non-Jordan-stable set")
    common(p)
    p.add_argument("--samples", type=int, default=1000)
    p.set_defaults(func=cmd_jst_set)

    p = sub.add_parser("scan", help="classify every node of a parameter grid")
    common(p)
    p.add_argument("--box", required=True,
                   help="per-parameter interval lo:hi, comma-separated")
    p.add_argument("--res", required=True,
                   help="grid resolution per axis (single value or list)")
    p.add_argument("--probe-radius", type=float, default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--csv", default=None, help="also write a CSV grid projection")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("track", help="continue eigenvalue branches along a path")
    common(p)
    p.add_argument("--path", required=True,
                   help='JSON polyline, e.g. "[[1.0],[-1.0]]" or [[re,im],...]')
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--csv", default=None, help="also write branch samples as CSV")
    p.set_defaults(func=cmd_track)

    p = sub.add_parser("verify", help="identity and bound validation battery")
    common(p)
    p.add_argument("--builtin-corpus", action="store_true",
                   help="run over all built-in families with known answers")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.monotonic()
    try:
        code = args.func(args)
    except InputError as err:
        sys.stderr.write(f"input error: {err}\n")
        return EXIT_INPUT
    except EntrySyntaxError as err:
        sys.stderr.write(f"entry parse error: {err}\n")
        return EXIT_INPUT
    sys.stderr.write(
        f"[jordanscope] {args.command} finished in "
        f"{time.monotonic() - started:.3f}s\n"
    )
    return code


if __name__ == "__main__":
    sys.exit(main())
