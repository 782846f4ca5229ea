"""Certificate construction and independent validation."""

import dataclasses
import itertools
import json

import pytest

from sumsets.group import GroupSpec, add_indices, enumerate_abelian_groups, least_prime_divisor
from sumsets.sets import from_indices, restricted_sumset
from sumsets.witness import (
    CASE_BASE,
    CASE_LARGE,
    CASE_PROJECTION,
    CASE_R_PROJECTION,
    CASE_SINGLETON_CLASSES,
    CASE_SMALL,
    CaseRoutingError,
    build_multiplicity_profile,
    build_witness,
    certificate_from_json,
    certificate_to_json,
    check_profile_invariants,
    decompose_by_prime_index_subgroup,
    validate_certificate,
)
from sumsets.witness import _case_large_certificate

Z4 = GroupSpec((4,))
Z8 = GroupSpec((8,))
Z9 = GroupSpec((9,))
Z25 = GroupSpec((25,))


def classes_of(g, indices):
    d = decompose_by_prime_index_subgroup(g, from_indices(g, indices))
    return [(c.rep, sorted(c.part.indices())) for c in d.classes]


def witness_view(cert):
    return [(label, sorted(part.indices())) for label, part in cert.witness_sets]


def failure_names(report):
    return [name for name, _ in report.failures]


# ---------------------------------------------------------------- decomposition


def test_decomposition_examples():
    assert classes_of(Z4, [0, 1, 2]) == [(0, [0, 2]), (1, [0])]
    assert classes_of(Z8, [0, 1, 2, 4]) == [(0, [0, 2, 4]), (1, [0])]
    assert classes_of(Z9, [0, 3, 1, 2]) == [(0, [0, 3]), (1, [0]), (2, [0])]


def test_decomposition_structure():
    for g, indices in [
        (Z8, [1, 3, 4, 6, 7]),
        (GroupSpec((2, 6)), [0, 3, 5, 7, 8, 11]),
        (GroupSpec((3, 3)), [0, 1, 2, 4, 8]),
    ]:
        a = from_indices(g, indices)
        d = decompose_by_prime_index_subgroup(g, a)
        proj = d.projection
        sizes = d.sizes()
        assert sizes == tuple(sorted(sizes, reverse=True))
        assert sum(sizes) == len(a)
        rebuilt = set()
        seen_labels = set()
        for c in d.classes:
            assert proj.label_of_index(c.rep) == c.label
            assert c.label not in seen_labels
            seen_labels.add(c.label)
            for i in c.part.indices():
                assert proj.label_of_index(i) == 0  # parts live in the kernel
                rebuilt.add(add_indices(g, c.rep, i))
            assert c.rep == min(
                j for j in a.indices() if proj.label_of_index(j) == c.label
            )
        assert rebuilt == set(a.indices())


def test_decomposition_rejects_empty_set():
    with pytest.raises(ValueError):
        decompose_by_prime_index_subgroup(Z8, from_indices(Z8, []))


# ---------------------------------------------------------------------- profile


def test_profile_drop_then_plateau():
    d = decompose_by_prime_index_subgroup(Z8, from_indices(Z8, [0, 1, 2, 4]))
    p = build_multiplicity_profile(d, 3)
    assert p.n == (3, 1)
    assert p.thresholds == (0, 1, 2)
    assert (p.s, p.t, p.r, p.h) == (1, 1, 1, 1)


def test_profile_equal_sizes_lands_on_block_boundary():
    # sizes (2, 2): the walk consumes a whole block, so r resets to 1
    d = decompose_by_prime_index_subgroup(Z4, from_indices(Z4, [0, 1, 2, 3]))
    assert d.sizes() == (2, 2)
    p = build_multiplicity_profile(d, 3)
    assert p.n == (2, 2)
    assert (p.s, p.t, p.r, p.h) == (1, 2, 1, 0)


def test_profile_lands_mid_block():
    d = decompose_by_prime_index_subgroup(Z9, from_indices(Z9, [0, 3, 6, 1, 4]))
    assert d.sizes() == (3, 2)
    p = build_multiplicity_profile(d, 3)
    assert p.n == (2, 2)
    assert (p.s, p.t, p.r, p.h) == (2, 2, 2, 0)


def test_profile_counts_sum_to_k_plus_one():
    for g, indices, k in [
        (Z8, [0, 1, 2, 4], 3),
        (Z9, [0, 3, 6, 1, 4], 3),
        (GroupSpec((16,)), [0, 2, 4, 8, 1, 3], 4),
        (GroupSpec((2, 6)), [0, 2, 4, 6, 8, 10, 1], 5),
    ]:
        d = decompose_by_prime_index_subgroup(g, from_indices(g, indices))
        p = build_multiplicity_profile(d, k)
        assert sum(p.n) == k + 1
        assert check_profile_invariants(d.sizes(), k, p) == []


def test_profile_preconditions_raise_routing_error():
    # too many classes: m > k
    d = decompose_by_prime_index_subgroup(Z9, from_indices(Z9, [0, 3, 1, 2]))
    with pytest.raises(CaseRoutingError):
        build_multiplicity_profile(d, 2)
    # set too small: |A| < k + 1
    d = decompose_by_prime_index_subgroup(Z8, from_indices(Z8, [0, 1, 2, 4]))
    with pytest.raises(CaseRoutingError):
        build_multiplicity_profile(d, 4)


def test_invariant_checker_names_the_broken_equation():
    d = decompose_by_prime_index_subgroup(Z8, from_indices(Z8, [0, 1, 2, 4]))
    sizes = d.sizes()
    good = build_multiplicity_profile(d, 3)
    assert check_profile_invariants(sizes, 3, good) == []

    bad_sum = dataclasses.replace(good, n=(2, 1))
    assert any(v.startswith("sumni") for v in check_profile_invariants(sizes, 3, bad_sum))

    bad_tail = dataclasses.replace(good, n=(2, 2))
    assert any(v.startswith("ni1") for v in check_profile_invariants(sizes, 3, bad_tail))

    bad_h = dataclasses.replace(good, h=3)
    assert any(v.startswith("HleqAt-2") for v in check_profile_invariants(sizes, 3, bad_h))


# ------------------------------------------------------------------ case routing


def test_prime_order_routes_to_base():
    a = from_indices(GroupSpec((7,)), [0, 1, 3])
    cert = build_witness(GroupSpec((7,)), a, 2)
    assert cert.case == CASE_BASE
    assert cert.claimed_total == 3
    assert cert.bound == 3
    covered = sorted(i for _, part in cert.witness_sets for i in part.indices())
    assert covered == sorted(restricted_sumset(a, 2).indices())
    report = validate_certificate(GroupSpec((7,)), a, 2, cert)
    assert report.ok and not report.failures


def test_small_k_routes_to_base():
    a = from_indices(Z8, [0, 1, 2, 4])
    for k in (0, 1, 2):
        cert = build_witness(Z8, a, k)
        assert cert.case == CASE_BASE
        assert validate_certificate(Z8, a, k, cert).ok


def test_k_equal_to_set_size_routes_to_base():
    a = from_indices(Z8, [1, 2, 5])
    cert = build_witness(Z8, a, 3)
    assert cert.case == CASE_BASE
    assert witness_view(cert) == [(0, [0])]  # 1+2+5 = 8 = 0, a single total sum
    assert cert.bound == 1
    assert validate_certificate(Z8, a, 3, cert).ok


def test_projection_case_covers_every_coset():
    a = from_indices(Z25, [0, 1, 2, 3, 4])
    cert = build_witness(Z25, a, 3)
    assert cert.case == CASE_PROJECTION
    labels = [label for label, _ in cert.witness_sets]
    assert sorted(labels) == [0, 1, 2, 3, 4]
    assert all(len(part) == 1 for _, part in cert.witness_sets)
    report = validate_certificate(Z25, a, 3, cert)
    assert report.ok and report.distinct_labels == 5


def test_singleton_classes_case():
    a = from_indices(Z25, [0, 1, 2, 3])
    cert = build_witness(Z25, a, 3)
    assert cert.case == CASE_SINGLETON_CLASSES
    assert cert.claimed_total == 4
    assert cert.bound == 4
    assert validate_certificate(Z25, a, 3, cert).ok


def test_case_large_on_many_cosets():
    a = from_indices(Z25, [0, 1, 2, 3, 5])
    cert = build_witness(Z25, a, 3)
    assert cert.case == CASE_LARGE
    assert cert.claimed_total == 7
    assert cert.bound == 5
    assert validate_certificate(Z25, a, 3, cert).ok


def test_case_large_exact_construction():
    # built directly because the public router sends k=2 to the base case
    a = from_indices(Z9, [0, 3, 1, 2])
    d = decompose_by_prime_index_subgroup(Z9, a)
    cert = _case_large_certificate(Z9, a, 2, d)
    assert cert.case == CASE_LARGE
    assert witness_view(cert) == [(0, [3]), (2, [2, 5]), (1, [1, 4])]
    assert cert.claimed_total == 5
    assert cert.bound == 3
    report = validate_certificate(Z9, a, 2, cert)
    assert report.ok and report.total == 5


def test_case_small_flagship_instance():
    a = from_indices(Z8, [0, 1, 2, 4])
    cert = build_witness(Z8, a, 3)
    assert cert.case == CASE_SMALL
    assert witness_view(cert) == [(1, [3, 5, 7]), (0, [6])]
    assert cert.claimed_total == 4
    assert cert.bound == 2
    assert cert.selections is None  # no extra cosets needed here
    assert cert.profile.n == (3, 1)
    report = validate_certificate(Z8, a, 3, cert)
    assert report.ok and report.total == 4 and report.bound == 2


def test_case_small_with_extra_cosets():
    a = from_indices(Z9, [0, 3, 6, 1, 4])
    cert = build_witness(Z9, a, 3)
    assert cert.case == CASE_SMALL
    assert cert.profile.n == (2, 2)
    assert (cert.profile.s, cert.profile.t, cert.profile.r, cert.profile.h) == (2, 2, 2, 0)
    assert cert.selections == ((2, (1,)),)
    assert cert.claimed_total == 7
    assert cert.bound == 3
    assert validate_certificate(Z9, a, 3, cert).ok


def test_r_projection_case():
    a = from_indices(Z8, [0, 1, 2, 3, 4])
    cert = build_witness(Z8, a, 3)
    assert cert.case == CASE_R_PROJECTION
    assert cert.selections is not None and len(cert.selections) == 2
    report = validate_certificate(Z8, a, 3, cert)
    assert report.ok and report.distinct_labels == 2


def test_rejects_invalid_k():
    a = from_indices(Z8, [0, 1])
    with pytest.raises(ValueError):
        build_witness(Z8, a, -1)


def test_witness_for_k_above_set_size():
    # k > |A| means the restricted sumset is empty and the bound is <= 0
    a = from_indices(Z8, [0, 1])
    cert = build_witness(Z8, a, 3)
    assert cert.case == CASE_BASE
    assert cert.claimed_total == 0
    assert cert.bound <= 0
    assert validate_certificate(Z8, a, 3, cert).ok


# ------------------------------------------------------------------- validation


def test_validator_flags_moved_element():
    a = from_indices(Z8, [0, 1, 2, 4])
    cert = build_witness(Z8, a, 3)
    tampered = dataclasses.replace(
        cert,
        witness_sets=(cert.witness_sets[0], (0, from_indices(Z8, [5]))),
    )
    report = validate_certificate(Z8, a, 3, tampered)
    assert not report.ok
    assert "disjointness" in failure_names(report)


def test_validator_flags_stray_element():
    a = from_indices(Z8, [0, 1, 2, 4])
    cert = build_witness(Z8, a, 3)
    tampered = dataclasses.replace(
        cert,
        witness_sets=(cert.witness_sets[0], (0, from_indices(Z8, [4]))),
    )
    report = validate_certificate(Z8, a, 3, tampered)
    assert not report.ok
    assert "containment" in failure_names(report)


def test_validator_flags_empty_witness_set():
    a = from_indices(Z8, [0, 1, 2, 4])
    cert = build_witness(Z8, a, 3)
    tampered = dataclasses.replace(
        cert,
        witness_sets=(cert.witness_sets[0], (0, from_indices(Z8, []))),
    )
    report = validate_certificate(Z8, a, 3, tampered)
    assert not report.ok
    assert "nonempty" in failure_names(report)


def test_validator_recomputes_stored_numbers():
    a = from_indices(Z8, [0, 1, 2, 4])
    cert = build_witness(Z8, a, 3)
    for field, value, expected in [
        ("claimed_total", 99, "claimed_total"),
        ("bound", 1, "bound"),
        ("p_of_g", 3, "p_of_G"),
        ("case", "Nonsense", "case"),
    ]:
        tampered = dataclasses.replace(cert, **{field: value})
        report = validate_certificate(Z8, a, 3, tampered)
        assert expected in failure_names(report), field


def test_validator_flags_wrong_instance():
    a = from_indices(Z8, [0, 1, 2, 4])
    cert = build_witness(Z8, a, 3)
    report = validate_certificate(Z8, a, 2, cert)
    assert not report.ok
    assert "instance" in failure_names(report)


def test_validator_counts_projection_labels():
    a = from_indices(Z25, [0, 1, 2, 3, 4])
    cert = build_witness(Z25, a, 3)
    short = dataclasses.replace(cert, witness_sets=cert.witness_sets[:4])
    report = validate_certificate(Z25, a, 3, short)
    assert not report.ok
    assert "coset_count" in failure_names(report)

    relabeled = dataclasses.replace(
        cert, witness_sets=((9, cert.witness_sets[0][1]),) + cert.witness_sets[1:]
    )
    report = validate_certificate(Z25, a, 3, relabeled)
    assert "coset_label" in failure_names(report)


def test_validator_flags_total_below_bound():
    a = from_indices(Z25, [0, 1, 2, 3])
    cert = build_witness(Z25, a, 3)  # SingletonClasses, total 4 = bound
    trimmed = dataclasses.replace(
        cert, witness_sets=cert.witness_sets[:3], claimed_total=3
    )
    report = validate_certificate(Z25, a, 3, trimmed)
    assert not report.ok
    assert "total" in failure_names(report)


# ---------------------------------------------------------------- serialization


def round_trip_instances():
    yield Z8, [0, 1, 2, 4], 3
    yield Z9, [0, 3, 6, 1, 4], 3
    yield Z8, [0, 1, 2, 3, 4], 3
    yield Z25, [0, 1, 2, 3, 4], 3
    yield Z25, [0, 1, 2, 3], 3
    yield Z25, [0, 1, 2, 3, 5], 3
    yield GroupSpec((7,)), [0, 1, 3], 2


@pytest.mark.parametrize("g,indices,k", list(round_trip_instances()))
def test_json_round_trip_preserves_validity(g, indices, k):
    a = from_indices(g, indices)
    cert = build_witness(g, a, k)
    doc = certificate_to_json(cert)
    text = json.dumps(doc, sort_keys=True)
    back = certificate_from_json(json.loads(text))
    assert back.group == cert.group
    assert back.members == cert.members
    assert back.k == cert.k
    assert back.case == cert.case
    assert back.claimed_total == cert.claimed_total
    assert witness_view(back) == witness_view(cert)
    assert back.selections == cert.selections
    if cert.profile is not None:
        assert back.profile.n == cert.profile.n
        assert (back.profile.s, back.profile.t, back.profile.r, back.profile.h) == (
            cert.profile.s,
            cert.profile.t,
            cert.profile.r,
            cert.profile.h,
        )
    assert validate_certificate(g, a, k, back).ok
    # a second round trip is a fixed point
    assert json.dumps(certificate_to_json(back), sort_keys=True) == text


@pytest.mark.parametrize(
    "mutate",
    [
        lambda d: d.pop("witness"),
        lambda d: d.pop("group"),
        lambda d: d.update(case="NoSuchCase"),
        lambda d: d.update(k=-2),
        lambda d: d["witness"].append({"coset_label": 0}),
        lambda d: d["witness"][0]["elements"].append(10**6),
        lambda d: d.update(set="not a list"),
    ],
)
def test_malformed_documents_rejected(mutate):
    cert = build_witness(Z8, from_indices(Z8, [0, 1, 2, 4]), 3)
    doc = certificate_to_json(cert)
    mutate(doc)
    with pytest.raises(ValueError):
        certificate_from_json(doc)


# ------------------------------------------------------------------ small sweep


def test_exhaustive_sweep_small_composite_groups():
    cases_seen = set()
    checked = 0
    for order in range(4, 11):
        if least_prime_divisor(GroupSpec((order,))) == order:
            continue  # prime order covered by the base-case test
        for g in enumerate_abelian_groups(order, order):
            for mask in range(1, 1 << g.order):
                a = from_indices(g, [i for i in range(g.order) if mask >> i & 1])
                for k in range(2, len(a) + 1):
                    cert = build_witness(g, a, k)
                    report = validate_certificate(g, a, k, cert)
                    assert report.ok, (g, sorted(a.indices()), k, report.failures)
                    cases_seen.add(cert.case)
                    checked += 1
    assert checked > 5000
    # Projection, SingletonClasses, and CaseLarge need p(G) >= 5 once k >= 3,
    # so the smallest group they can appear in has order 25; the dedicated
    # instance tests above cover them.
    assert {CASE_BASE, CASE_SMALL, CASE_R_PROJECTION} <= cases_seen
