"""Command-line surface.

Subcommands: construct, profile, refute, escape, sample, verify.
Exit codes: 0 success/verified, 1 claim fails, 2 malformed input, 3 resource
cap. Output is deterministic given the flags — no wall clock, no randomness
except under an explicit --seed, which only ever feeds sampled profiling.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from .certificates import (
    Certificate,
    build_escape_certificate,
    build_independent_certificate,
    build_interval_certificate,
    build_odd_certificate,
    build_polygon_certificate,
    build_refute_certificate,
    build_spaceable_certificate,
    canonical_json,
    verify_certificate,
)
from .engine import (
    matrix_from_json,
    merge_columns,
    profile,
    sample_profile,
)
from .errors import LimprofError
from .kernel import rat, rat_str
from .lab import estimate_clusters, gen_combo, gen_fq, gen_rich, gen_spaceable
from .sequences import InfinitudeRelation, StepSequence


def _rat_list(text: str) -> list[Fraction]:
    return [rat(part.strip()) for part in text.split(",") if part.strip()]


def _int_list(text: str) -> list[int]:
    return [int(part.strip()) for part in text.split(",") if part.strip()]


def _write_json(path: str, payload: dict) -> None:
    Path(path).write_text(canonical_json(payload), encoding="utf-8")


def _emit_certificate(cert: Certificate, cert_path: str | None) -> None:
    if cert_path:
        Path(cert_path).write_text(cert.dumps(), encoding="utf-8")
    else:
        sys.stdout.write(cert.dumps())


# ---------------------------------------------------------------------------
# construct


def cmd_construct(args) -> int:
    kind = args.kind
    if kind == "interval":
        cert = build_interval_certificate(args.n, args.d)
        artifact = cert.inputs["matrix"]
    elif kind == "odd":
        cert = build_odd_certificate(args.k)
        artifact = cert.inputs["matrix"]
    elif kind == "polygon":
        cert = build_polygon_certificate(args.n, mode=args.mode)
        artifact = dict(cert.inputs)
        artifact["mode"] = cert.mode
    elif kind == "independent":
        cert = build_independent_certificate(args.k, args.split)
        from .builders import independent_family

        fam = independent_family(args.k, args.split)
        artifact = {
            "k": fam.k,
            "split": fam.split,
            "atoms": [list(a) for a in fam.atoms],
        }
    elif kind == "spaceable":
        cert = build_spaceable_certificate(args.n_max, args.k_max, args.flavor)
        artifact = {
            "nMax": args.n_max,
            "kMax": args.k_max,
            "flavor": args.flavor,
            "ladder": cert.verification["ladder"],
            "rows": cert.verification["rows"],
        }
    else:  # pragma: no cover - argparse restricts choices
        raise LimprofError(f"unknown construct kind {kind!r}")

    if args.out:
        _write_json(args.out, artifact)
    cert_path = args.cert
    if cert_path is None and args.out:
        cert_path = str(Path(args.out).with_suffix("")) + ".cert.json"
    _emit_certificate(cert, cert_path)
    if cert_path:
        summary = {"claim": cert.claim, "mode": cert.mode, "pass": cert.holds}
        if "counts" in cert.verification:
            summary["counts"] = cert.verification["counts"]
        if "profile" in cert.verification:
            summary["counts"] = cert.verification["profile"]["achieved"]
        print(json.dumps(summary, sort_keys=True))
    return 0 if cert.holds else 1


# ---------------------------------------------------------------------------
# profile


def _random_directions(rows: int, seed: int, count: int = 32):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        cand = tuple(Fraction(rng.randint(-9, 9)) for _ in range(rows))
        if any(cand):
            out.append(cand)
    return tuple(out)


def cmd_profile(args) -> int:
    data = json.loads(Path(args.matrix).read_text(encoding="utf-8"))
    mat = matrix_from_json(data)
    result: dict = {"rows": mat.rows, "columns": mat.cols}
    merged, groups = merge_columns(mat)
    if merged.cols != mat.cols:
        result["note"] = "duplicate columns merged before profiling"
        result["columnGroups"] = [list(g) for g in groups]
        mat = merged
        result["columns"] = mat.cols
    if args.sample is not None:
        extra = ()
        if args.seed is not None:
            extra = _random_directions(mat.rows, args.seed)
        prof = sample_profile(mat, max_norm=args.sample, extra=extra)
        result["method"] = "sampled-lower-bound"
    else:
        prof = profile(mat)
        result["method"] = "exact"
    result["profile"] = prof.to_json()
    text = canonical_json(result)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------
# refute


def cmd_refute(args) -> int:
    data = json.loads(Path(args.matrix).read_text(encoding="utf-8"))
    mat = matrix_from_json(data)
    cert = build_refute_certificate(mat, args.n, args.d)
    _emit_certificate(cert, args.cert)
    if args.cert:
        print(json.dumps(
            {
                "alpha": cert.witnesses["alpha"],
                "multiplicity": cert.verification["multiplicity"],
                "escapes": cert.verification["escapes"],
            },
            sort_keys=True,
        ))
    return 0 if cert.holds else 1


# ---------------------------------------------------------------------------
# escape


def cmd_escape(args) -> int:
    data = json.loads(Path(args.pair).read_text(encoding="utf-8"))
    x = StepSequence.from_json(data["x"])
    y = StepSequence.from_json(data["y"])
    rel = InfinitudeRelation.from_json(data["relation"])
    forbidden = _int_list(args.forbidden)
    cert = build_escape_certificate(x, y, rel, forbidden)
    if cert is None:
        print(json.dumps(
            {"found": False, "forbidden": sorted(set(forbidden))}, sort_keys=True
        ))
        return 1
    _emit_certificate(cert, args.cert)
    if args.cert:
        print(json.dumps(
            {"found": True, "classCount": cert.witnesses["classCount"]},
            sort_keys=True,
        ))
    return 0


# ---------------------------------------------------------------------------
# sample


def _build_generator(args):
    if args.gen == "fq":
        if len(args.q) != 1:
            raise LimprofError("fq takes exactly one --q value")
        return gen_fq(args.q[0])
    if args.gen == "combo":
        return gen_combo(args.d, args.q)
    if args.gen == "rich":
        if len(args.q) != 1:
            raise LimprofError("rich takes exactly one --q value")
        return gen_rich(args.q[0])
    if args.gen == "spaceable":
        return gen_spaceable(args.alpha, args.n_max, args.k_max, args.flavor)
    raise LimprofError(f"unknown generator {args.gen!r}")  # pragma: no cover


def cmd_sample(args) -> int:
    if args.gen in ("fq", "combo", "rich") and not args.q:
        raise LimprofError(f"--q is required for --gen {args.gen}")
    seq = _build_generator(args)
    if args.csv:
        values = seq.evaluate(args.len)
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write("index,value\n")
            for i, v in enumerate(values):
                cell = rat_str(v) if args.exact else f"{float(v):.17g}"
                fh.write(f"{i},{cell}\n")
    estimate = estimate_clusters(
        seq, args.len, tail_fraction=args.tail, epsilon=args.epsilon
    )
    payload = estimate.to_json()
    text = canonical_json(payload)
    if args.clusters:
        Path(args.clusters).write_text(text, encoding="utf-8")
    sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args) -> int:
    data = json.loads(Path(args.certificate).read_text(encoding="utf-8"))
    cert = Certificate.from_json(data)
    ok, mismatches = verify_certificate(cert)
    if ok:
        print(json.dumps({"verified": True, "claim": cert.claim}, sort_keys=True))
        return 0
    for line in mismatches:
        print(line, file=sys.stderr)
    print(json.dumps(
        {"verified": False, "claim": cert.claim, "mismatches": len(mismatches)},
        sort_keys=True,
    ))
    return 1


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="limprof",
        description="Exact accumulation-point profiles: construct, check, certify.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a certified example space")
    c.add_argument("kind", choices=["interval", "odd", "polygon", "independent", "spaceable"])
    c.add_argument("--n", type=int, default=2, help="target count (interval/polygon)")
    c.add_argument("--d", type=int, default=0, help="interval width")
    c.add_argument("--k", type=int, default=2, help="generator count (odd/independent)")
    c.add_argument("--split", type=int, default=2, choices=[2, 3])
    c.add_argument("--n-max", type=int, default=3, dest="n_max")
    c.add_argument("--k-max", type=int, default=8, dest="k_max")
    c.add_argument("--flavor", default="dyadic", choices=["dyadic", "rational-dense"])
    c.add_argument("--mode", default=None, choices=["exact", "approximate"])
    c.add_argument("--out", default=None, help="artifact JSON path")
    c.add_argument("--cert", default=None, help="certificate path (stdout if omitted)")
    c.set_defaults(func=cmd_construct)

    p = sub.add_parser("profile", help="exact profile of a matrix JSON file")
    p.add_argument("matrix")
    p.add_argument("--sample", type=int, default=None, metavar="MAXNORM",
                   help="sampled lower bound instead of the exact profile")
    p.add_argument("--seed", type=int, default=None,
                   help="extra random directions (sampling mode only)")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_profile)

    r = sub.add_parser("refute", help="witness a multiplicity outside [n, n+d]")
    r.add_argument("matrix")
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--d", type=int, required=True)
    r.add_argument("--cert", default=None)
    r.set_defaults(func=cmd_refute)

    e = sub.add_parser("escape", help="combination count outside a forbidden set")
    e.add_argument("pair", help="JSON file with x, y, relation")
    e.add_argument("--forbidden", required=True, help="comma-separated counts")
    e.add_argument("--cert", default=None)
    e.set_defaults(func=cmd_escape)

    s = sub.add_parser("sample", help="CSV prefix and cluster estimate")
    s.add_argument("--gen", required=True, choices=["fq", "combo", "rich", "spaceable"])
    s.add_argument("--q", type=_rat_list, default=[])
    s.add_argument("--d", type=_rat_list, default=[])
    s.add_argument("--alpha", type=_rat_list, default=[rat(1)])
    s.add_argument("--n-max", type=int, default=3, dest="n_max")
    s.add_argument("--k-max", type=int, default=8, dest="k_max")
    s.add_argument("--flavor", default="dyadic", choices=["dyadic", "rational-dense"])
    s.add_argument("--len", type=int, required=True)
    s.add_argument("--tail", type=float, default=0.5)
    s.add_argument("--epsilon", type=float, default=None)
    s.add_argument("--csv", default=None)
    s.add_argument("--clusters", default=None)
    s.add_argument("--exact", action="store_true",
                   help="CSV values as exact p/q instead of 17-digit decimals")
    s.set_defaults(func=cmd_sample)

    v = sub.add_parser("verify", help="recheck a certificate bit for bit")
    v.add_argument("certificate")
    v.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except LimprofError as exc:
        print(json.dumps({"error": exc.code, "message": str(exc)}), file=sys.stderr)
        return exc.exit_code
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        print(json.dumps({"error": "malformed", "message": str(exc)}), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
