"""Command-line entry point: ``arrlab analyze|classify|jump|family|slopes``.

Exit codes: 0 success, 1 bad input (parse, parameter, collinear), 2 a
cross-check disagreed (this would contradict a theorem and signals a bug).
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .arrangement import Arrangement, format_point
from .errors import ArrlabError, ConsistencyError, NotApplicableError
from .families import build, promised_invariants
from .report import analyze, require_consistent, to_json
from .slopes import INFINITY, PointConfig, dualize, verify_slope_theorem
from .syzygy import classify, generator_relation, minimal_generators

EXIT_OK, EXIT_INPUT, EXIT_CONSISTENCY = 0, 1, 2


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _fmt_point(p) -> str:
    return "(" + ":".join(p) + ")"


def _print_report(r, out):
    print(f"d = {r.d} over {r.field}", file=out)
    print("n_k: " + ", ".join(f"n_{k}={v}" for k, v in r.nk.items()), file=out)
    print(f"tau = {r.tau}", file=out)
    print(f"solvability: {r.solvability}", file=out)
    for p in r.modular_points:
        print(f"  modular point {_fmt_point(p)}", file=out)
    for p, q, L in r.nearly_modular_points:
        print(f"  nearly modular point {_fmt_point(p)}, node {_fmt_point(q)}, line [{' '.join(L)}]", file=out)
    if r.solvability == "Pencil":
        print("pencil: all lines pass through one point; AR(f) has an element of degree 0", file=out)
        return
    if r.predicted_class is not None:
        print(f"predicted: mdr = {r.predicted_mdr}, {r.predicted_class}", file=out)
    if r.mdr is not None:
        print(f"computed:  mdr = {r.mdr}, {r.arrangement_class}, deg I = {r.deg_I}", file=out)
    if r.jumping_point is not None:
        print(f"jumping point {_fmt_point(r.jumping_point)} (unique: {str(r.unique_relation).lower()})", file=out)
    if r.generic_splitting is not None:
        print(f"generic splitting type {tuple(r.generic_splitting)}", file=out)
    if r.jumping_lines is not None:
        jl = r.jumping_lines
        print(f"jumping lines: all lines through {_fmt_point(jl['through'])}, splitting {tuple(jl['splitting'])}", file=out)
    print(f"Euler characteristic of the complement: {r.euler_chi}", file=out)
    for key in ("prediction_ok", "euler_ok", "tau_consistency_ok"):
        val = getattr(r, key)
        if val is not None:
            print(f"{key}: {'yes' if val else 'NO'}", file=out)


def _analyze_one(path, cap, skip_syzygy, as_json, timing):
    """Returns (exit code, text); runs in worker processes for --batch."""
    try:
        A = Arrangement.load(path)
        r = analyze(A, cap=cap, skip_syzygy=skip_syzygy)
    except ConsistencyError as exc:
        return EXIT_CONSISTENCY, f"{path}: consistency failure: {exc}\n"
    except (ArrlabError, OSError) as exc:
        return EXIT_INPUT, f"{path}: {exc}\n"
    if as_json:
        text = to_json(r, timing) + "\n"
    else:
        buf = io.StringIO()
        _print_report(r, buf)
        if timing:
            print(f"elapsed: {r.elapsed:.3f} s", file=buf)
        text = buf.getvalue()
    try:
        require_consistent(r)
    except ConsistencyError as exc:
        return EXIT_CONSISTENCY, text + f"consistency failure: {exc}\n"
    return EXIT_OK, text


def cmd_analyze(args) -> int:
    if args.batch:
        files = sorted(Path(args.batch).glob(args.pattern))
        if not files:
            print(f"no files matching {args.pattern} in {args.batch}", file=sys.stderr)
            return EXIT_INPUT
        job = (args.cap, args.skip_syzygy, args.json, args.timing)
        if args.jobs > 1:
            with ProcessPoolExecutor(args.jobs) as ex:
                results = list(ex.map(_analyze_one, files, *[[v] * len(files) for v in job]))
        else:
            results = [_analyze_one(f, *job) for f in files]
        code = EXIT_OK
        for f, (rc, text) in zip(files, results):
            if not args.json:
                print(f"== {f.name}")
            (sys.stderr if rc == EXIT_INPUT else sys.stdout).write(text)
            code = max(code, rc)
        return code
    if args.path is None:
        print("analyze needs a file or --batch DIR", file=sys.stderr)
        return EXIT_INPUT
    rc, text = _analyze_one(args.path, args.cap, args.skip_syzygy, args.json, args.timing)
    (sys.stderr if rc == EXIT_INPUT else sys.stdout).write(text)
    return rc


def cmd_classify(args) -> int:
    A = Arrangement.load(args.path)
    lat = A.lattice
    out = {"d": A.d, "solvability": lat.solvability.value, "tau": lat.tau}
    if lat.solvability.value == "Pencil":
        out.update({"mdr": 0, "class": None, "exponents": None})
    else:
        cl = classify(A, args.cap)
        out.update(
            {
                "mdr": cl.mdr,
                "class": str(cl.arrangement_class),
                "exponents": list(cl.exponents) if cl.exponents else None,
                "deg_I": cl.deg_I,
            }
        )
    if args.json:
        print(_dump(out))
    else:
        print(f"{out['solvability']}; mdr = {out['mdr']}; {out['class'] or 'pencil'}")
    return EXIT_OK


def cmd_jump(args) -> int:
    A = Arrangement.load(args.path)
    out = {"jumping_point": None, "unique": None, "class": None}
    if A.lattice.solvability.value != "Pencil":
        cl = classify(A, args.cap)
        out["class"] = str(cl.arrangement_class)
        if cl.kind == "NearlyFree":
            rel = generator_relation(A, minimal_generators(A, cl))
            out["jumping_point"] = format_point(rel.jumping_point, A.field)
            out["unique"] = rel.unique
            out["h2"] = str(rel.h2)
            out["h3"] = str(rel.h3)
    if args.json:
        print(_dump(out))
    elif out["jumping_point"] is None:
        print(f"{out['class'] or 'pencil'}: no jumping point (not nearly free)")
    else:
        print(f"{out['class']}: jumping point {_fmt_point(out['jumping_point'])} (unique: {str(out['unique']).lower()})")
    return EXIT_OK


def cmd_family(args) -> int:
    A = build(args.name, *args.params)
    promised = promised_invariants(args.name, *args.params)
    label = f"{args.name}({','.join(map(str, args.params))})"
    comments = [label, f"d = {A.d}"] + [f"{k} = {v}" for k, v in promised.items() if k != "d"]
    text = A.to_text(comments)
    if args.out:
        Path(args.out).write_text(text)
    if args.json:
        print(_dump({"family": label, "d": A.d, "promised": promised, "out": args.out}))
    elif not args.out:
        sys.stdout.write(text)
    else:
        print(f"wrote {label} (d = {A.d}) to {args.out}")
    return EXIT_OK


def _slope_str(s) -> str:
    return INFINITY if s == INFINITY else str(s)


def cmd_slopes(args) -> int:
    cfg = PointConfig.load(args.path)
    rep = verify_slope_theorem(cfg)
    out = {
        "n": rep.n,
        "w": rep.w,
        "slopes": [_slope_str(s) for s in rep.slopes],
        "unique_pair_slopes": [_slope_str(s) for s in rep.unique_pairs],
        "hypothesis_holds": rep.hypothesis_holds,
        "certified": rep.certified,
        "observed_w_ge_n_minus_1": rep.meets_classical_bound,
        "pl_nearly_modular": rep.pl_nearly_modular,
        "deleted_dual_solvability": None if rep.deleted_dual_solvability is None else rep.deleted_dual_solvability.value,
        "half_bound_ok": rep.half_bound_ok,
    }
    if args.dual_out:
        A, _ = dualize(cfg, rep)
        A.save(args.dual_out, [f"dual of {args.path}: {rep.n} point lines, {rep.w} direction lines through (0:0:1)"])
    if args.json:
        print(_dump(out))
    else:
        print(f"n = {rep.n}, w = {rep.w}")
        print("slopes: " + ", ".join(out["slopes"]))
        if rep.hypothesis_holds:
            print("unique two-point directions: " + ", ".join(out["unique_pair_slopes"]))
            print(f"certificate: {rep.certified}")
            print(
                f"deleted dual: P_L nearly modular: {str(rep.pl_nearly_modular).lower()}, "
                f"2 m_P_L >= |B| - 1: {str(rep.half_bound_ok).lower()}, class {out['deleted_dual_solvability']}"
            )
        else:
            print("certificate: not applicable (no direction comes from a unique two-point line)")
    if rep.certified == "violated" or rep.pl_nearly_modular is False or rep.half_bound_ok is False:
        return EXIT_CONSISTENCY
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="arrlab", description="Line arrangements in P^2: lattice, syzygies, freeness.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, cap=True):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if cap:
            p.add_argument("--cap", type=int, default=None, help="mdr search cap (default d-1 or $ARRLAB_CAP)")

    p = sub.add_parser("analyze", help="full pipeline on an arrangement file")
    p.add_argument("path", nargs="?")
    common(p)
    p.add_argument("--skip-syzygy", action="store_true", help="combinatorics only")
    p.add_argument("--timing", action="store_true", help="include elapsed seconds")
    p.add_argument("--batch", metavar="DIR", help="analyze every matching file in DIR")
    p.add_argument("--pattern", default="*.arr", help="glob for --batch (default *.arr)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for --batch")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("classify", help="solvability and freeness class")
    p.add_argument("path")
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("jump", help="jumping point of a nearly free arrangement")
    p.add_argument("path")
    common(p)
    p.set_defaults(func=cmd_jump)

    p = sub.add_parser("family", help="write a member of a named family")
    p.add_argument("name")
    p.add_argument("params", type=int, nargs="*")
    p.add_argument("--out", metavar="PATH")
    common(p, cap=False)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("slopes", help="slope classes and the w >= n certificate")
    p.add_argument("path")
    p.add_argument("--dual-out", metavar="PATH", help="also write the dual arrangement")
    common(p, cap=False)
    p.set_defaults(func=cmd_slopes)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConsistencyError as exc:
        print(f"consistency failure: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except NotApplicableError as exc:
        print(f"not applicable: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ArrlabError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
