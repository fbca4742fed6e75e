"""Self-contained, re-verifiable certificates.

A certificate embeds its inputs by value, the witnesses found, and a
verification transcript. Verification rebuilds witnesses and transcript from
the embedded data alone with the same deterministic code paths, then demands
bit-for-bit equality of the canonical JSON. No timestamps, no environment.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Mapping

from . import __version__
from .builders import (
    independent_family,
    interval_space,
    odd_space,
    polygon_space,
    spaceable_rows,
)
from .engine import (
    matrix_from_json,
    matrix_to_json,
    multiplicity,
    profile,
    refute_interval,
)
from .errors import LimprofError, ShapeError
from .geometry import approx_direction_census, escape
from .kernel import RatMatrix, normalize_primitive, rat, rat_str, vec
from .sequences import InfinitudeRelation, StepSequence, combine


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


@dataclass(frozen=True)
class Certificate:
    claim: str
    mode: str
    params: dict
    inputs: dict
    witnesses: dict
    verification: dict
    tool_version: str = __version__

    def to_json(self) -> dict:
        return {
            "claim": self.claim,
            "mode": self.mode,
            "params": self.params,
            "inputs": self.inputs,
            "witnesses": self.witnesses,
            "verification": self.verification,
            "toolVersion": self.tool_version,
        }

    def dumps(self) -> str:
        return canonical_json(self.to_json())

    @classmethod
    def from_json(cls, data: Mapping) -> "Certificate":
        return cls(
            claim=str(data["claim"]),
            mode=str(data["mode"]),
            params=dict(data["params"]),
            inputs=dict(data["inputs"]),
            witnesses=dict(data["witnesses"]),
            verification=dict(data["verification"]),
            tool_version=str(data.get("toolVersion", __version__)),
        )

    @property
    def holds(self) -> bool:
        """Did the verification conclude the claim is true?"""
        return bool(self.verification.get("pass", False))


# ---------------------------------------------------------------------------
# claim builders (construct) and rebuilders (verify)


def _interval_payload(mat: RatMatrix, n: int, d: int) -> tuple[dict, dict]:
    prof = profile(mat)
    within = all(n <= c <= n + d for c in prof.achieved)
    endpoints = n in prof.achieved and (n + d) in prof.achieved
    verification = {
        "profile": prof.to_json(),
        "low": n,
        "high": n + d,
        "withinBounds": within,
        "endpointsAchieved": endpoints,
        "pass": within and endpoints,
    }
    witnesses = {str(k): [rat_str(x) for x in w] for k, w in sorted(prof.witnesses.items())}
    return witnesses, verification


def build_interval_certificate(n: int, d: int) -> Certificate:
    mat = interval_space(n, d)
    witnesses, verification = _interval_payload(mat, n, d)
    return Certificate(
        claim="interval-profile",
        mode="exact",
        params={"n": n, "d": d},
        inputs={"matrix": matrix_to_json(mat)},
        witnesses=witnesses,
        verification=verification,
    )


def _odd_payload(mat: RatMatrix, k: int) -> tuple[dict, dict]:
    if mat.cols <= 12:
        prof = profile(mat)
        counts = list(prof.achieved)
        witnesses = {
            str(c): [rat_str(x) for x in w] for c, w in sorted(prof.witnesses.items())
        }
        method = "exact-profile"
    else:
        witnesses = {}
        counts_set = set()
        for signs in product((-1, 0, 1), repeat=k):
            if all(s == 0 for s in signs):
                continue
            mu = multiplicity(mat, vec(signs))
            if mu not in counts_set:
                counts_set.add(mu)
                witnesses[str(mu)] = [rat_str(x) for x in normalize_primitive(vec(signs))]
        counts = sorted(counts_set)
        method = "sign-pattern-census"
    all_odd = all(c % 2 == 1 for c in counts)
    at_least = all(c >= 3 for c in counts)
    sym_ok = True
    zero_ok = True
    for w in witnesses.values():
        a = vec(w)
        values = {sum((x * c for x, c in zip(a, mat.col(j))), Fraction(0))
                  for j in range(mat.cols)}
        sym_ok = sym_ok and values == {-v for v in values}
        zero_ok = zero_ok and Fraction(0) in values
    verification = {
        "method": method,
        "counts": counts,
        "allOdd": all_odd,
        "allAtLeastThree": at_least,
        "valueSetsSymmetric": sym_ok,
        "valueSetsContainZero": zero_ok,
        "pass": all_odd and at_least and sym_ok and zero_ok,
    }
    return witnesses, verification


def build_odd_certificate(k: int) -> Certificate:
    mat = odd_space(k)
    witnesses, verification = _odd_payload(mat, k)
    return Certificate(
        claim="odd-profile",
        mode="exact",
        params={"k": k},
        inputs={"matrix": matrix_to_json(mat)},
        witnesses=witnesses,
        verification=verification,
    )


def _polygon_payload(n: int, inputs: dict) -> dict:
    expected = sorted({n, n + 1, 2 * n})
    if "matrix" in inputs:
        mat = matrix_from_json(inputs["matrix"])
        counts = list(profile(mat).achieved)
    else:
        verts = [tuple(p) for p in inputs["vertices"]]
        counts = list(approx_direction_census(verts, tol=float(inputs["tolerance"])))
    return {
        "counts": counts,
        "expected": expected,
        "pass": counts == expected,
    }


def build_polygon_certificate(n: int, mode: str | None = None) -> Certificate:
    poly = polygon_space(n, mode=mode)
    if poly.mode == "exact":
        inputs = {"matrix": matrix_to_json(poly.matrix)}
    else:
        inputs = {
            "vertices": [[p[0], p[1]] for p in poly.vertices],
            "tolerance": poly.tolerance,
        }
    verification = _polygon_payload(n, inputs)
    return Certificate(
        claim="polygon-profile",
        mode=poly.mode,
        params={"n": n},
        inputs=inputs,
        witnesses={},
        verification=verification,
    )


def _independent_payload(k: int, split: int) -> dict:
    fam = independent_family(k, split)
    signs = (0, 1) if split == 2 else (-1, 0, 1)
    pieces_partition = all(
        sorted(i for s in signs for i in fam.piece(g, s)) == list(range(len(fam.atoms)))
        for g in range(k)
    )
    full_patterns_single = all(
        sum(1 for a in fam.atoms if a == pattern) == 1
        for pattern in product(signs, repeat=k)
    )
    return {
        "atomCount": len(fam.atoms),
        "piecesPartitionUniverse": pieces_partition,
        "fullPatternsHitExactlyOneAtom": full_patterns_single,
        "pass": pieces_partition and full_patterns_single,
    }


def build_independent_certificate(k: int, split: int = 2) -> Certificate:
    verification = _independent_payload(k, split)
    return Certificate(
        claim="independent-family",
        mode="exact",
        params={"k": k, "split": split},
        inputs={},
        witnesses={},
        verification=verification,
    )


def _spaceable_payload(n_max: int, k_max: int, flavor: str) -> dict:
    fam = spaceable_rows(n_max, k_max, flavor)
    supports = []
    for row in fam.rows:
        supports.append({a.id for a, v in zip(row.partition.atoms, row.values) if v != 0})
    disjoint = all(
        not (supports[i] & supports[j])
        for i in range(len(supports))
        for j in range(i + 1, len(supports))
    )
    expected_sup = max(fam.ladder)
    row_sups_ok = all(row.sup_value() == expected_sup for row in fam.rows)
    ones = fam.combination([Fraction(1)] * n_max)
    return {
        "ladder": [rat_str(v) for v in fam.ladder],
        "rows": [row.to_json() for row in fam.rows],
        "disjointSupports": disjoint,
        "supValue": rat_str(expected_sup),
        "rowSupsMatch": row_sups_ok,
        "allOnesCombinationSup": rat_str(ones.sup_value()),
        "pass": disjoint and row_sups_ok and ones.sup_value() == expected_sup,
    }


def build_spaceable_certificate(n_max: int, k_max: int, flavor: str = "dyadic") -> Certificate:
    verification = _spaceable_payload(n_max, k_max, flavor)
    return Certificate(
        claim="spaceable-rows",
        mode="exact",
        params={"nMax": n_max, "kMax": k_max, "flavor": flavor},
        inputs={},
        witnesses={},
        verification=verification,
    )


def _refute_payload(mat: RatMatrix, n: int, d: int) -> tuple[dict, dict]:
    w = refute_interval(mat, n, d)
    witnesses = {"alpha": [rat_str(x) for x in w.alpha]}
    verification = {
        "multiplicity": w.multiplicity,
        "low": n,
        "high": n + d,
        "escapes": w.escapes,
        "side": "below" if w.multiplicity < n else "above",
        "pass": w.escapes,
    }
    return witnesses, verification


def build_refute_certificate(mat: RatMatrix, n: int, d: int) -> Certificate:
    witnesses, verification = _refute_payload(mat, n, d)
    return Certificate(
        claim="refute-interval",
        mode="exact",
        params={"n": n, "d": d},
        inputs={"matrix": matrix_to_json(mat)},
        witnesses=witnesses,
        verification=verification,
    )


def _escape_payload(x: StepSequence, y: StepSequence, rel: InfinitudeRelation,
                    forbidden) -> tuple[dict, dict] | None:
    w = escape(x, y, rel, forbidden)
    if w is None:
        return None
    recombined = combine([w.alpha, w.beta], [x, y], rel)
    witnesses = {
        "alpha": rat_str(w.alpha),
        "beta": rat_str(w.beta),
        "classCount": w.class_count,
        "forbidden": list(w.forbidden),
        "points": [[rat_str(px), rat_str(py)] for px, py in w.points],
    }
    verification = {
        "classCount": w.class_count,
        "recombinedCount": recombined.num_atoms,
        "outsideForbidden": w.class_count not in w.forbidden,
        "recombinationMatches": recombined.num_atoms == w.class_count,
        "pass": (w.class_count not in w.forbidden)
        and recombined.num_atoms == w.class_count,
    }
    return witnesses, verification


def build_escape_certificate(x: StepSequence, y: StepSequence,
                             rel: InfinitudeRelation, forbidden) -> Certificate | None:
    payload = _escape_payload(x, y, rel, forbidden)
    if payload is None:
        return None
    witnesses, verification = payload
    return Certificate(
        claim="escape",
        mode="exact",
        params={"forbidden": sorted(set(int(f) for f in forbidden))},
        inputs={
            "x": x.to_json(),
            "y": y.to_json(),
            "relation": rel.to_json(),
        },
        witnesses=witnesses,
        verification=verification,
    )


# ---------------------------------------------------------------------------
# verification


def _diff_paths(a, b, prefix: str, out: list[str], limit: int = 8) -> None:
    if len(out) >= limit:
        return
    if isinstance(a, dict) and isinstance(b, dict):
        for key in sorted(set(a) | set(b)):
            _diff_paths(a.get(key), b.get(key), f"{prefix}.{key}", out, limit)
        return
    if isinstance(a, list) and isinstance(b, list) and len(a) == len(b):
        for i, (x, y) in enumerate(zip(a, b)):
            _diff_paths(x, y, f"{prefix}[{i}]", out, limit)
        return
    if a != b:
        out.append(f"{prefix}: stored {a!r} != recomputed {b!r}")


def verify_certificate(cert: Certificate) -> tuple[bool, list[str]]:
    """Recompute witnesses and transcript from the embedded data; report
    every difference from what the certificate stored. Also fails when the
    stored transcript itself concludes the claim is false."""
    claim = cert.claim
    p = cert.params
    if claim == "interval-profile":
        mat = matrix_from_json(cert.inputs["matrix"])
        witnesses, verification = _interval_payload(mat, int(p["n"]), int(p["d"]))
    elif claim == "odd-profile":
        mat = matrix_from_json(cert.inputs["matrix"])
        witnesses, verification = _odd_payload(mat, int(p["k"]))
    elif claim == "polygon-profile":
        witnesses, verification = {}, _polygon_payload(int(p["n"]), cert.inputs)
    elif claim == "independent-family":
        witnesses, verification = {}, _independent_payload(int(p["k"]), int(p["split"]))
    elif claim == "spaceable-rows":
        witnesses, verification = {}, _spaceable_payload(
            int(p["nMax"]), int(p["kMax"]), str(p["flavor"])
        )
    elif claim == "refute-interval":
        mat = matrix_from_json(cert.inputs["matrix"])
        witnesses, verification = _refute_payload(mat, int(p["n"]), int(p["d"]))
    elif claim == "escape":
        x = StepSequence.from_json(cert.inputs["x"])
        y = StepSequence.from_json(cert.inputs["y"])
        rel = InfinitudeRelation.from_json(cert.inputs["relation"])
        payload = _escape_payload(x, y, rel, p["forbidden"])
        if payload is None:
            return False, ["escape: no witness found on recomputation"]
        witnesses, verification = payload
    else:
        raise LimprofError(f"unknown claim {claim!r}")

    mismatches: list[str] = []
    _diff_paths(cert.witnesses, _roundtrip(witnesses), "witnesses", mismatches)
    _diff_paths(cert.verification, _roundtrip(verification), "verification", mismatches)
    if not verification.get("pass", False):
        mismatches.append("verification.pass: claim checks failed on recomputation")
    return not mismatches, mismatches


def _roundtrip(obj):
    """Push recomputed data through JSON so comparisons see exactly what a
    stored certificate would contain (tuples become lists, etc.)."""
    return json.loads(json.dumps(obj))
