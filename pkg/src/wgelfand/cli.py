"""Batch front end: read JSON specs, run the analysis pipeline, write reports.

Exit codes: 0 success, 1 input/usage error, 2 negative mathematical verdict
(still writes the report), 3 numerical degeneracy.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__
from .errors import DegenerateSpectrumError, InputSpecError, WGelfandError
from .fourier import (
    build_fourier_table,
    extract_symbol,
    injectivity_check,
    is_multiplier,
    multiplier_from_spec,
    spherical_transform,
    verify_commutation,
)
from .groups import automorphism_from_spec, double_cosets, group_from_spec, subgroup_from_spec
from .hecke import (
    check_rap_condition,
    hecke_structure_constants,
    is_weighted_gelfand,
)
from .spherical import enumerate_spherical
from .weighted import weight_checks, weight_from_spec

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VERDICT = 2
EXIT_DEGENERATE = 3


def _load_json(path: str) -> tuple[dict, str]:
    p = Path(path)
    try:
        raw = p.read_bytes()
    except OSError as exc:
        raise InputSpecError(f"{path}: {exc}") from exc
    digest = hashlib.sha256(raw).hexdigest()
    try:
        return json.loads(raw), digest
    except json.JSONDecodeError as exc:
        raise InputSpecError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wgelfand",
        description="Weighted Gelfand pair analysis on finite groups",
    )
    parser.add_argument("--version", action="version", version=f"wgelfand {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, need_multiplier=False):
        p.add_argument("--group", required=True, help="group spec JSON file")
        p.add_argument("--subgroup", required=True, help="subgroup spec JSON file")
        p.add_argument("--weight", required=True, help="weight spec JSON file")
        p.add_argument("--automorphism", help="automorphism spec JSON file")
        if need_multiplier:
            p.add_argument(
                "--multiplier",
                action="append",
                required=True,
                help="multiplier spec JSON file (repeatable)",
            )
        p.add_argument("--tolerance", type=float, default=1e-9)
        p.add_argument("--seed", default="0xC0FFEE", help="hex RNG seed")
        p.add_argument("--output", help="report file (default: stdout)")
        p.add_argument("--format", choices=["json", "text"], default="json")

    add_common(sub.add_parser("analyze", help="full pipeline with report"))
    add_common(sub.add_parser("spherical", help="enumerate spherical functions"))
    add_common(sub.add_parser("fourier", help="transform table, rank and condition"))
    add_common(
        sub.add_parser("multiplier-check", help="multiplier verdicts and symbols"),
        need_multiplier=True,
    )
    return parser


def _json_default(obj):
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _complex_pairs(vec) -> list:
    return [[float(z.real), float(z.imag)] for z in vec]


def run(args) -> tuple[dict, int]:
    """Execute one command; returns (report, exit_code)."""
    t0 = time.perf_counter()
    timings = {}
    inputs = {}
    tol = args.tolerance
    seed = int(args.seed, 16) if isinstance(args.seed, str) else int(args.seed)

    spec, digest = _load_json(args.group)
    inputs["group"] = {"path": args.group, "sha256": digest}
    group = group_from_spec(spec)
    spec, digest = _load_json(args.subgroup)
    inputs["subgroup"] = {"path": args.subgroup, "sha256": digest}
    K = subgroup_from_spec(group, spec)
    partition = double_cosets(group, K)
    spec, digest = _load_json(args.weight)
    inputs["weight"] = {"path": args.weight, "sha256": digest}
    w = weight_from_spec(spec, group, partition)
    theta = None
    if args.automorphism:
        spec, digest = _load_json(args.automorphism)
        inputs["automorphism"] = {"path": args.automorphism, "sha256": digest}
        theta = automorphism_from_spec(group, spec)
    timings["setup"] = time.perf_counter() - t0

    flags = weight_checks(w, group, partition, theta=theta)
    report = {
        "tool": {"name": "wgelfand", "version": __version__},
        "command": args.command,
        "inputs": inputs,
        "seed": hex(seed),
        "tolerance": tol,
        "group": {
            "order": group.order,
            "subgroup_order": K.order,
            "double_cosets": partition.num_cosets,
            "coset_sizes": list(partition.sizes()),
        },
        "weight": {
            "k_bi_invariant": flags.k_bi_invariant,
            "symmetric": flags.symmetric,
            "unit_at_identity": flags.unit_at_identity,
            "theta_invariant": flags.theta_invariant,
        },
    }

    t1 = time.perf_counter()
    gelfand = is_weighted_gelfand(group, K, w, partition=partition, tol=tol)
    rap = None
    if theta is not None:
        rap = check_rap_condition(group, K, w, theta, partition=partition, tol=tol)
    gelfand_json = gelfand.to_json()
    gelfand_json["rap"] = rap
    report["gelfand"] = gelfand_json
    timings["gelfand"] = time.perf_counter() - t1

    exit_code = EXIT_OK
    if not gelfand.is_weighted_gelfand:
        exit_code = EXIT_VERDICT

    wants_spherical = args.command in ("analyze", "spherical", "fourier", "multiplier-check")
    if gelfand.is_weighted_gelfand and flags.unit_at_identity and wants_spherical:
        t2 = time.perf_counter()
        sc = hecke_structure_constants(group, K, w, partition=partition, tol=tol)
        sset = enumerate_spherical(
            group, K, w, partition=partition, sc=sc, seed=seed, tol=tol
        )
        report["spherical"] = {"count": len(sset), "functions": sset.to_json()}
        table = build_fourier_table(sset, group, w)
        rank, cond = injectivity_check(table)
        report["fourier"] = {
            "rank": rank,
            "condition": cond,
            "matrix": [_complex_pairs(row) for row in table.matrix],
        }
        timings["spherical_fourier"] = time.perf_counter() - t2

        if args.command == "multiplier-check":
            t3 = time.perf_counter()
            results = []
            operators = []
            for mpath in args.multiplier:
                mspec, digest = _load_json(mpath)
                inputs.setdefault("multipliers", []).append(
                    {"path": mpath, "sha256": digest}
                )
                T = multiplier_from_spec(mspec, sc)
                ok, witness = is_multiplier(T, sc, tol=tol)
                entry = {"path": mpath, "is_multiplier": ok}
                if ok:
                    sym = extract_symbol(T, table, sc, group, w, seed=seed, tol=tol)
                    entry.update(sym.to_json())
                    if T.kernel is not None:
                        kt = spherical_transform(T.kernel, sset, group, w)
                        entry["symbol_matches_kernel_transform"] = bool(
                            np.max(np.abs(sym.values - kt)) <= max(tol, 1e-8)
                        )
                    operators.append(T)
                else:
                    entry["witness"] = {"basis_i": witness[0], "basis_j": witness[1]}
                    exit_code = max(exit_code, EXIT_VERDICT)
                results.append(entry)
            commutation = []
            for a in range(len(operators)):
                for b in range(a + 1, len(operators)):
                    commutation.append(
                        {
                            "pair": [a, b],
                            "residual": verify_commutation(operators[a], operators[b], sc),
                        }
                    )
            report["multipliers"] = results
            if commutation:
                report["commutation"] = commutation
            timings["multiplier"] = time.perf_counter() - t3
    elif args.command in ("spherical", "fourier", "multiplier-check"):
        if not gelfand.is_weighted_gelfand:
            report["note"] = "not a weighted Gelfand pair; downstream stages skipped"
        else:
            raise InputSpecError("spherical analysis requires a weight with w(e) = 1")

    timings["total"] = time.perf_counter() - t0
    report["timings"] = {k: round(v, 6) for k, v in timings.items()}
    return report, exit_code


def _format_text(report: dict) -> str:
    lines = []
    add = lines.append
    add(f"wgelfand {report['tool']['version']}  command={report['command']}")
    g = report["group"]
    add(f"{'group order':<24}{g['order']}")
    add(f"{'subgroup order':<24}{g['subgroup_order']}")
    add(f"{'double cosets':<24}{g['double_cosets']}  sizes={g['coset_sizes']}")
    wf = report["weight"]
    add(
        f"{'weight flags':<24}bi-invariant={wf['k_bi_invariant']} "
        f"symmetric={wf['symmetric']} unit={wf['unit_at_identity']}"
    )
    gf = report["gelfand"]
    add(f"{'weighted Gelfand':<24}{gf['gelfand']}")
    if gf.get("witness"):
        add(f"{'witness':<24}{gf['witness']}")
    if gf.get("rap") is not None:
        add(f"{'sufficient condition':<24}{gf['rap']}")
    if gf.get("unimodularity") is not None:
        add(f"{'inversion-sum identity':<24}{gf['unimodularity']}")
    if "spherical" in report:
        add(f"{'spherical functions':<24}{report['spherical']['count']}")
        for idx, fn in enumerate(report["spherical"]["functions"]):
            vals = ", ".join(f"{re:+.6g}{im:+.6g}j" for re, im in fn["coset_values"])
            add(f"  phi[{idx}]                {vals}")
    if "fourier" in report:
        add(
            f"{'transform rank':<24}{report['fourier']['rank']}  "
            f"condition={report['fourier']['condition']:.6g}"
        )
    for entry in report.get("multipliers", []):
        add(f"{'multiplier':<24}{entry['path']}: {entry['is_multiplier']}")
        if "symbol" in entry:
            vals = ", ".join(f"{re:+.6g}{im:+.6g}j" for re, im in entry["symbol"])
            add(f"  symbol                {vals}")
    for pair in report.get("commutation", []):
        add(f"{'commutation':<24}pair {pair['pair']} residual={pair['residual']:.3g}")
    return "\n".join(lines) + "\n"


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, exit_code = run(args)
    except InputSpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DegenerateSpectrumError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except WGelfandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    if args.format == "json":
        text = json.dumps(report, indent=2, sort_keys=True, default=_json_default) + "\n"
    else:
        text = _format_text(report)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
