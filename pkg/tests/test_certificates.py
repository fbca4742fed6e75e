import json
from fractions import Fraction

import pytest

from limprof.certificates import (
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
from limprof.errors import LimprofError
from limprof.kernel import RatMatrix
from limprof.sequences import InfinitudeRelation, step_sequence


def roundtrip(cert: Certificate) -> Certificate:
    return Certificate.from_json(json.loads(cert.dumps()))


def test_interval_certificate_verifies():
    cert = build_interval_certificate(2, 1)
    assert cert.holds
    assert cert.verification["profile"]["achieved"] == [2, 3]
    ok, mismatches = verify_certificate(roundtrip(cert))
    assert ok and not mismatches


def test_odd_certificate_small_and_census():
    small = build_odd_certificate(2)
    assert small.holds
    assert small.verification["counts"] == [3, 5, 7, 9]
    assert small.verification["method"] == "exact-profile"
    ok, _ = verify_certificate(roundtrip(small))
    assert ok
    big = build_odd_certificate(3)
    assert big.holds
    assert big.verification["method"] == "sign-pattern-census"
    assert all(c % 2 == 1 and c >= 3 for c in big.verification["counts"])
    ok, _ = verify_certificate(roundtrip(big))
    assert ok


def test_polygon_certificates_both_modes():
    exact = build_polygon_certificate(3)
    assert exact.mode == "exact" and exact.holds
    assert exact.verification["counts"] == [3, 4, 6]
    ok, _ = verify_certificate(roundtrip(exact))
    assert ok
    approx = build_polygon_certificate(5)
    assert approx.mode == "approximate" and approx.holds
    assert approx.verification["counts"] == [5, 6, 10]
    ok, _ = verify_certificate(roundtrip(approx))
    assert ok


def test_independent_certificate():
    cert = build_independent_certificate(3, 2)
    assert cert.holds
    assert cert.verification["atomCount"] == 8
    ok, _ = verify_certificate(roundtrip(cert))
    assert ok


def test_spaceable_certificate():
    cert = build_spaceable_certificate(3, 8)
    assert cert.holds
    assert cert.verification["supValue"] == "1"
    assert cert.verification["disjointSupports"]
    ok, _ = verify_certificate(roundtrip(cert))
    assert ok


def test_spaceable_certificate_dense_flavor_sup():
    cert = build_spaceable_certificate(2, 3, flavor="rational-dense")
    assert cert.holds
    # the dense ladder is not monotone; its top value is 2/3
    assert cert.verification["supValue"] == "2/3"


def test_refute_certificate():
    m = RatMatrix.from_rows([[0, 1], [1, 0]])
    cert = build_refute_certificate(m, 2, 0)
    assert cert.holds
    assert cert.verification["multiplicity"] == 1
    ok, _ = verify_certificate(roundtrip(cert))
    assert ok


def test_escape_certificate():
    x = step_sequence([("a", 0), ("b", 1)])
    y = step_sequence((f"t{j}", j) for j in range(5))
    rel = InfinitudeRelation.nested(x.partition, y.partition, [0, 0, 0, 1, 1])
    cert = build_escape_certificate(x, y, rel, [2, 5])
    assert cert is not None and cert.holds
    assert cert.verification["recombinationMatches"]
    ok, _ = verify_certificate(roundtrip(cert))
    assert ok


def test_escape_certificate_not_found():
    x = step_sequence([("a", 0), ("b", 1)])
    y = step_sequence([("c", 0), ("d", 2)])
    rel = InfinitudeRelation(x.partition, y.partition, frozenset({(0, 0), (1, 1)}))
    assert build_escape_certificate(x, y, rel, [1]) is None


def test_tampered_witness_is_located():
    cert = build_interval_certificate(2, 1)
    data = json.loads(cert.dumps())
    data["witnesses"]["2"] = ["9", "9"]
    ok, mismatches = verify_certificate(Certificate.from_json(data))
    assert not ok
    assert any(m.startswith("witnesses.2") for m in mismatches)


def test_tampered_transcript_is_located():
    cert = build_odd_certificate(2)
    data = json.loads(cert.dumps())
    data["verification"]["counts"] = [3, 5, 7]
    ok, mismatches = verify_certificate(Certificate.from_json(data))
    assert not ok
    assert any(m.startswith("verification.counts") for m in mismatches)


def test_unknown_claim_rejected():
    cert = build_interval_certificate(2, 0)
    data = json.loads(cert.dumps())
    data["claim"] = "perpetual-motion"
    with pytest.raises(LimprofError):
        verify_certificate(Certificate.from_json(data))


def test_canonical_json_is_stable():
    payload = {"b": [1, 2], "a": {"y": Fraction is not None, "x": 0.5}}
    one = canonical_json(payload)
    two = canonical_json(json.loads(one))
    assert one == two
    assert one.endswith("\n")


def test_certificate_dumps_deterministic():
    a = build_interval_certificate(3, 1).dumps()
    b = build_interval_certificate(3, 1).dumps()
    assert a == b


def test_certificates_have_no_timestamps():
    cert = build_polygon_certificate(4)
    text = cert.dumps().lower()
    for needle in ("time", "date", "20250", "20260"):
        assert needle not in text
