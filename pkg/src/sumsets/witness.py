"""Witness certificates for the restricted-sumset lower bound.

A certificate names pairwise-disjoint non-empty subsets of k^(A), grouped
by coset of a fixed prime-index subgroup, whose sizes add up to at least
min{p(G), k|A| - k^2 + 1} (or, for the projection-style cases, which meet
at least p(G) distinct cosets).  The builder routes each instance to the
first applicable construction; the validator recomputes everything from
scratch and trusts nothing stored in the certificate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .bounds import restricted_bound
from .group import (
    GroupSpec,
    SubgroupProjection,
    add_indices,
    format_group,
    least_prime_divisor,
    neg_index,
    parse_group,
    prime_index_subgroup,
    scale_index,
    sub_indices,
)
from .sets import (
    ElementSet,
    GroupMismatchError,
    from_indices,
    graded_restricted_sum,
    iterated_sumset,
    restricted_sumset,
    sumset,
    translate_index,
    zero_singleton,
)

__all__ = [
    "CASE_BASE",
    "CASE_LARGE",
    "CASE_PROJECTION",
    "CASE_R_PROJECTION",
    "CASE_SINGLETON_CLASSES",
    "CASE_SMALL",
    "CaseRoutingError",
    "Certificate",
    "CertificateError",
    "CosetClass",
    "CosetDecomposition",
    "MultiplicityProfile",
    "ValidationReport",
    "build_multiplicity_profile",
    "build_witness",
    "certificate_from_json",
    "certificate_to_json",
    "check_profile_invariants",
    "decompose_by_prime_index_subgroup",
    "validate_certificate",
]

CASE_BASE = "Base"
CASE_PROJECTION = "Projection"
CASE_SINGLETON_CLASSES = "SingletonClasses"
CASE_LARGE = "CaseLarge"
CASE_SMALL = "CaseSmall"
CASE_R_PROJECTION = "RProjection"

_ALL_CASES = (
    CASE_BASE,
    CASE_PROJECTION,
    CASE_SINGLETON_CLASSES,
    CASE_LARGE,
    CASE_SMALL,
    CASE_R_PROJECTION,
)


class CaseRoutingError(ValueError):
    """An instance does not meet the preconditions of the requested case."""


class CertificateError(RuntimeError):
    """A construction step failed an assertion the theory guarantees."""


@dataclass(frozen=True)
class CosetClass:
    """One coset meeting A: label in the quotient, representative, and the
    representative-shifted part inside the kernel."""

    label: int
    rep: int
    part: ElementSet


@dataclass(frozen=True)
class CosetDecomposition:
    projection: SubgroupProjection
    classes: tuple[CosetClass, ...]

    @property
    def m(self) -> int:
        return len(self.classes)

    def sizes(self) -> tuple[int, ...]:
        return tuple(cls.part.cardinality for cls in self.classes)


def decompose_by_prime_index_subgroup(g: GroupSpec, a: ElementSet) -> CosetDecomposition:
    """Split A along the canonical prime-index subgroup.

    Classes are sorted by part size descending, ties by smaller
    representative index; each part is the class translated back to the
    kernel, so A is exactly the disjoint union of rep_i + part_i.
    """
    if a.group != g:
        raise GroupMismatchError("set does not live in the stated group")
    if a.is_empty():
        raise ValueError("set must be non-empty")
    proj = prime_index_subgroup(g, least_prime_divisor(g))
    by_label: dict[int, list[int]] = {}
    for i in a.indices():
        by_label.setdefault(proj.label_of_index(i), []).append(i)
    classes = []
    for label, members in by_label.items():
        rep = members[0]
        bits = 0
        for i in members:
            bits |= 1 << sub_indices(g, i, rep)
        classes.append(CosetClass(label, rep, ElementSet(g, bits)))
    classes.sort(key=lambda cls: (-cls.part.cardinality, cls.rep))
    return CosetDecomposition(proj, tuple(classes))


@dataclass(frozen=True)
class MultiplicityProfile:
    """The landing data of the (k+1)-term prefix of the class sequence.

    n[i-1] counts how often class i appears among the first k+1 terms.
    The prefix ends inside block s of the run construction: run length
    t = t_s, h complete runs of that block consumed, and the partial run
    stopped at class r.  thresholds is (t_0=0, t_1, ..., t_l=m); it is
    None on certificates read back from JSON, which do not carry it.
    """

    n: tuple[int, ...]
    s: int
    t: int
    r: int
    h: int
    thresholds: tuple[int, ...] | None = None


def _literal_sequence(sizes: Sequence[int]) -> tuple[list[int], list[int]]:
    """The full class-index sequence and its ascending threshold list.

    After one prefix pass over all classes, runs a_j, a_{j-1}, ..., a_1
    of growing length j are appended: length t_u repeated
    sizes[t_u] - sizes[t_{u+1}] times (the last threshold t_l = m repeats
    sizes[m] - 1 times), where the thresholds are the plateau ends of the
    descending size profile.
    """
    m = len(sizes)
    thresholds = [j for j in range(1, m) if sizes[j - 1] > sizes[j]] + [m]
    seq = list(range(1, m + 1))
    for u, tu in enumerate(thresholds):
        nxt = sizes[thresholds[u + 1] - 1] if u + 1 < len(thresholds) else 1
        for _ in range(sizes[tu - 1] - nxt):
            seq.extend(range(tu, 0, -1))
    assert len(seq) == sum(sizes)
    return seq, thresholds


def build_multiplicity_profile(d: CosetDecomposition, k: int) -> MultiplicityProfile:
    """Count multiplicities over the first k+1 terms of the literal sequence.

    Requires m <= k, |A| >= k+1 and |A_1| >= 2; anything else belongs to a
    different certificate case.
    """
    sizes = d.sizes()
    m = len(sizes)
    total = sum(sizes)
    if m > k:
        raise CaseRoutingError(f"profile needs m <= k, got m={m}, k={k}")
    if total < k + 1:
        raise CaseRoutingError(f"profile needs |A| >= k+1, got |A|={total}, k={k}")
    if sizes[0] < 2:
        raise CaseRoutingError("profile needs a largest part of size >= 2")
    seq, thresholds = _literal_sequence(sizes)
    head = seq[: k + 1]
    n = tuple(head.count(i) for i in range(1, m + 1))

    rem = k + 1 - m
    s_idx = t = r = h = -1
    for u, tu in enumerate(thresholds, start=1):
        nxt = sizes[thresholds[u] - 1] if u < len(thresholds) else 1
        block = tu * (sizes[tu - 1] - nxt)
        if rem <= block:
            q, w = divmod(rem, tu)
            if w == 0:
                s_idx, t, r, h = u, tu, 1, q - 1
            else:
                s_idx, t, r, h = u, tu, tu - w + 1, q
            break
        rem -= block
    if s_idx < 0:
        raise CertificateError(f"profile landing fell past the sequence (k={k}, sizes={sizes})")
    assert head[-1] == r
    profile = MultiplicityProfile(n=n, s=s_idx, t=t, r=r, h=h, thresholds=(0, *thresholds))
    bad = check_profile_invariants(sizes, k, profile)
    if bad:
        raise CertificateError(f"profile invariants failed for sizes={sizes}, k={k}: {bad}")
    return profile


def check_profile_invariants(sizes: Sequence[int], k: int, p: MultiplicityProfile) -> list[str]:
    """All eight closed forms the landing data must satisfy; empty if clean."""
    m = len(sizes)
    n, r, t, h = p.n, p.r, p.t, p.h
    out = []
    if sum(n) != k + 1:
        out.append(f"sumni: sum(n)={sum(n)} != k+1={k + 1}")
    if any(n[i - 1] != 1 for i in range(t + 1, m + 1)):
        out.append("ni1: some n_i != 1 above the landing run")
    if h > sizes[t - 1] - 2:
        out.append(f"HleqAt-2: h={h} > |A_t|-2={sizes[t - 1] - 2}")
    for i in range(1, t + 1):
        want = sizes[t - 1] - h - (1 if i < r else 2)
        if sizes[i - 1] - n[i - 1] != want:
            out.append(f"Aini: |A_{i}|-n_{i}={sizes[i - 1] - n[i - 1]} != {want}")
    if any(n[i - 1] > sizes[i - 1] for i in range(r, m + 1)):
        out.append("nileqAi: some n_i > |A_i|")
    if any(n[i - 1] > sizes[i - 1] - 1 for i in range(1, r)):
        out.append("nileqAi-1: some n_i > |A_i|-1 below r")
    for i in range(1, r):
        for j in range(r, t + 1):
            if sizes[i - 1] - n[i - 1] != sizes[j - 1] - n[j - 1] + 1:
                out.append(f"AiniAjnj1: mismatch at i={i}, j={j}")
    for i in range(1, t + 1):
        for j in range(t + 1, m + 1):
            if sizes[i - 1] - n[i - 1] < sizes[j - 1] - n[j - 1]:
                out.append(f"AiniAjnj: mismatch at i={i}, j={j}")
    return out


@dataclass(frozen=True)
class Certificate:
    group: GroupSpec
    members: ElementSet
    k: int
    case: str
    p_of_g: int
    bound: int
    claimed_total: int
    witness_sets: tuple[tuple[int, ElementSet], ...]
    profile: MultiplicityProfile | None = None
    # (j, I) pairs, aligned with the witness sets they explain: for
    # CaseSmall the extras after the first m sets, for RProjection every
    # set, for CaseLarge the lifted sets after the first k+1 (j then
    # holds the layer index s of V_s).
    selections: tuple[tuple[int, tuple[int, ...]], ...] | None = None


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    failures: tuple[tuple[str, str], ...]
    total: int
    bound: int
    distinct_labels: int


def _labels_set(d: CosetDecomposition, count: int | None = None) -> ElementSet:
    labels = [cls.label for cls in d.classes]
    if count is not None:
        labels = labels[:count]
    return from_indices(d.projection.quotient, labels)


def _sum_reps(g: GroupSpec, d: CosetDecomposition, classes_1b: Iterable[int]) -> int:
    total = 0
    for i in classes_1b:
        total = add_indices(g, total, d.classes[i - 1].rep)
    return total


def _lex_smallest_combo(labels: Sequence[int], k: int, target: int, p: int, limit: int) -> tuple[int, ...]:
    """Lexicographically smallest 0-based position tuple over the first
    `limit` labels whose label sum is target mod p."""
    for combo in itertools.combinations(range(limit), k):
        if sum(labels[i] for i in combo) % p == target:
            return combo
    raise CertificateError(f"no {k}-combination of labels {labels[:limit]} reaches {target} mod {p}")


def _certificate(g, a, k, case, witness_sets, profile=None, selections=None) -> Certificate:
    total = sum(w.cardinality for _, w in witness_sets)
    return Certificate(
        group=g,
        members=a,
        k=k,
        case=case,
        p_of_g=least_prime_divisor(g),
        bound=restricted_bound(g, a.cardinality, k),
        claimed_total=total,
        witness_sets=tuple(witness_sets),
        profile=profile,
        selections=selections,
    )


def _split_by_coset(proj: SubgroupProjection, full: ElementSet) -> list[tuple[int, ElementSet]]:
    buckets: dict[int, int] = {}
    for i in full.indices():
        label = proj.label_of_index(i)
        buckets[label] = buckets.get(label, 0) | 1 << i
    return [(label, ElementSet(full.group, bits)) for label, bits in sorted(buckets.items())]


def _base_certificate(g: GroupSpec, a: ElementSet, k: int) -> Certificate:
    full = restricted_sumset(a, k)
    proj = prime_index_subgroup(g, least_prime_divisor(g))
    return _certificate(g, a, k, CASE_BASE, _split_by_coset(proj, full))


def _projection_certificate(g, a, k, d: CosetDecomposition, kbar: ElementSet) -> Certificate:
    labels = [cls.label for cls in d.classes]
    p = d.projection.p
    witness = []
    for target in kbar.indices():
        combo = _lex_smallest_combo(labels, k, target, p, d.m)
        lift = _sum_reps(g, d, (i + 1 for i in combo))
        witness.append((target, ElementSet(g, 1 << lift)))
    return _certificate(g, a, k, CASE_PROJECTION, witness)


def _singleton_classes_certificate(g, a, k, d: CosetDecomposition, kbar: ElementSet) -> Certificate:
    labels = [cls.label for cls in d.classes]
    p = d.projection.p
    witness = []
    for target in kbar.indices():
        combo = _lex_smallest_combo(labels, k, target, p, d.m)
        lift = _sum_reps(g, d, (i + 1 for i in combo))
        witness.append((target, ElementSet(g, 1 << lift)))
    cert = _certificate(g, a, k, CASE_SINGLETON_CLASSES, witness)
    if cert.claimed_total < cert.bound:
        raise CertificateError(
            f"SingletonClasses total {cert.claimed_total} below bound {cert.bound}"
        )
    return cert


def _case_large_certificate(g, a, k, d: CosetDecomposition) -> Certificate:
    """m >= k+1: leave-one-out sums over the first k+1 classes, then one
    lifted product set per element of each shell V_s."""
    if d.m < k + 1:
        raise CaseRoutingError(f"CaseLarge needs m >= k+1, got m={d.m}, k={k}")
    proj = d.projection
    p = proj.p
    labels = [cls.label for cls in d.classes]
    witness: list[tuple[int, ElementSet]] = []
    for j in range(1, k + 2):
        others = [i for i in range(1, k + 2) if i != j]
        b = _sum_reps(g, d, others)
        u = iterated_sumset([d.classes[i - 1].part for i in others])
        if u.is_empty():
            raise CertificateError(f"CaseLarge: U_{j} is empty")
        witness.append((proj.label_of_index(b), translate_index(u, b)))
    selections: list[tuple[int, tuple[int, ...]]] = []
    prev = restricted_sumset(_labels_set(d, k + 1), k)
    for s in range(1, d.m - k):
        cur = restricted_sumset(_labels_set(d, k + s + 1), k)
        for target in cur.difference(prev).indices():
            combo = _lex_smallest_combo(labels, k, target, p, k + s + 1)
            classes_1b = tuple(i + 1 for i in combo)
            base = _sum_reps(g, d, classes_1b)
            prod = iterated_sumset([d.classes[i - 1].part for i in classes_1b])
            if prod.is_empty():
                raise CertificateError(f"CaseLarge: product for shell s={s} label {target} is empty")
            witness.append((target, translate_index(prod, base)))
            selections.append((s, classes_1b))
        prev = cur
    return _certificate(g, a, k, CASE_LARGE, witness, selections=tuple(selections) or None)


def _adjusted_grades(profile: MultiplicityProfile, chosen: frozenset[int], m: int) -> list[int]:
    """The three-way multiplicity adjustment for a chosen index set I."""
    out = []
    for i in range(1, m + 1):
        in_band = profile.r <= i <= profile.t
        in_chosen = i in chosen
        if in_band and not in_chosen:
            out.append(profile.n[i - 1] - 1)
        elif in_chosen and not in_band:
            out.append(profile.n[i - 1] + 1)
        else:
            out.append(profile.n[i - 1])
    return out


class _SmallCaseData:
    """Shared scaffolding for the m <= k constructions."""

    def __init__(self, g: GroupSpec, d: CosetDecomposition, k: int, profile: MultiplicityProfile):
        self.g = g
        self.d = d
        self.k = k
        self.profile = profile
        self.p = d.projection.p
        m = d.m
        star = 0  # sum of n_i * a_i
        for i in range(1, m + 1):
            star = add_indices(g, star, scale_index(g, profile.n[i - 1], d.classes[i - 1].rep))
        self.b = [sub_indices(g, star, d.classes[j - 1].rep) for j in range(1, m + 1)]
        band = _sum_reps(g, d, range(profile.r, profile.t + 1))
        self.d_shift = [sub_indices(g, bj, band) for bj in self.b]
        self.b_labels = [d.projection.label_of_index(bj) for bj in self.b]

    def graded_sum(self, j: int, chosen: frozenset[int] | None = None) -> ElementSet:
        """S with multiplicities n_{i,I}, decremented once more at part j."""
        grades = (
            list(self.profile.n)
            if chosen is None
            else _adjusted_grades(self.profile, chosen, self.d.m)
        )
        grades[j - 1] -= 1
        parts = [(cls.part, grade) for cls, grade in zip(self.d.classes, grades)]
        return graded_restricted_sum(parts, group=self.g)

    def lift_index(self, j: int, chosen: Iterable[int]) -> int:
        c = self.d_shift[j - 1]
        for i in chosen:
            c = add_indices(self.g, c, self.d.classes[i - 1].rep)
        return c


def _case_small_certificate(g, a, k, d, profile) -> Certificate:
    """m <= k with few required cosets: the m leave-one-copy-out sums plus
    (t-r+1)(r-1) extra sets found by greedy lexicographic selection."""
    data = _SmallCaseData(g, d, k, profile)
    m = d.m
    witness: list[tuple[int, ElementSet]] = []
    for j in range(1, m + 1):
        u = data.graded_sum(j)
        if u.is_empty():
            raise CertificateError(f"CaseSmall: U_{j} is empty")
        witness.append((data.b_labels[j - 1], translate_index(u, data.b[j - 1])))
    need = (profile.t - profile.r + 1) * (profile.r - 1)
    selections: list[tuple[int, tuple[int, ...]]] = []
    if need:
        taken = set(data.b_labels)
        proj = d.projection
        for j in range(1, m + 1):
            for combo in itertools.combinations(range(1, profile.t + 1), profile.t - profile.r + 1):
                label = proj.label_of_index(data.lift_index(j, combo))
                if label in taken:
                    continue
                taken.add(label)
                v = data.graded_sum(j, frozenset(combo))
                if v.is_empty():
                    raise CertificateError(f"CaseSmall: V for (j={j}, I={combo}) is empty")
                witness.append((label, translate_index(v, data.lift_index(j, combo))))
                selections.append((j, combo))
                if len(selections) == need:
                    break
            if len(selections) == need:
                break
        if len(selections) < need:
            raise CertificateError(
                f"CaseSmall: found {len(selections)} of {need} extra cosets (m={m}, p={data.p})"
            )
    cert = _certificate(
        g, a, k, CASE_SMALL, witness, profile=profile, selections=tuple(selections) or None
    )
    if cert.claimed_total < cert.bound:
        raise CertificateError(f"CaseSmall total {cert.claimed_total} below bound {cert.bound}")
    return cert


def _r_projection_certificate(g, a, k, d, profile) -> Certificate:
    """m <= k with enough required cosets to cover the whole quotient: one
    lifted element per residue, via the first (j, I) pair that reaches it."""
    data = _SmallCaseData(g, d, k, profile)
    m = d.m
    proj = d.projection
    rep_for_label: dict[int, tuple[int, tuple[int, ...]]] = {}
    for j in range(1, m + 1):
        for combo in itertools.combinations(range(1, profile.t + 1), profile.t - profile.r + 1):
            label = proj.label_of_index(data.lift_index(j, combo))
            if label not in rep_for_label:
                rep_for_label[label] = (j, combo)
    if len(rep_for_label) < data.p:
        raise CertificateError(
            f"RProjection: R covers {len(rep_for_label)} of {data.p} cosets"
        )
    witness = []
    selections = []
    for label in sorted(rep_for_label):
        j, combo = rep_for_label[label]
        v = data.graded_sum(j, frozenset(combo))
        if v.is_empty():
            raise CertificateError(f"RProjection: V for (j={j}, I={combo}) is empty")
        lifted = add_indices(g, data.lift_index(j, combo), next(v.indices()))
        witness.append((label, ElementSet(g, 1 << lifted)))
        selections.append((j, combo))
    return _certificate(
        g, a, k, CASE_R_PROJECTION, witness, profile=profile, selections=tuple(selections)
    )


def build_witness(g: GroupSpec, a: ElementSet, k: int) -> Certificate:
    """Construct a certificate for the instance by the first matching case."""
    if a.group != g:
        raise GroupMismatchError("set does not live in the stated group")
    if a.is_empty():
        raise ValueError("set must be non-empty")
    if k < 0:
        raise ValueError("k must be non-negative")
    p = least_prime_divisor(g)
    if p == g.order or k <= 2 or a.cardinality <= k:
        return _base_certificate(g, a, k)
    d = decompose_by_prime_index_subgroup(g, a)
    kbar = restricted_sumset(_labels_set(d), k)
    if kbar.cardinality == p:
        return _projection_certificate(g, a, k, d, kbar)
    if a.cardinality == d.m:
        return _singleton_classes_certificate(g, a, k, d, kbar)
    if d.m >= k + 1:
        return _case_large_certificate(g, a, k, d)
    profile = build_multiplicity_profile(d, k)
    need = (profile.t - profile.r + 1) * (profile.r - 1)
    if d.m + need <= p:
        return _case_small_certificate(g, a, k, d, profile)
    return _r_projection_certificate(g, a, k, d, profile)


def validate_certificate(g: GroupSpec, a: ElementSet, k: int, cert: Certificate) -> ValidationReport:
    """Recompute k^(A) and check the certificate against it from scratch."""
    failures: list[tuple[str, str]] = []
    if cert.group != g or cert.members != a or cert.k != k:
        failures.append(("instance", "certificate was built for a different instance"))
    if cert.case not in _ALL_CASES:
        failures.append(("case", f"unknown case tag {cert.case!r}"))
    p = least_prime_divisor(g)
    bound = restricted_bound(g, a.cardinality, k)
    if cert.p_of_g != p:
        failures.append(("p_of_G", f"stored {cert.p_of_g}, recomputed {p}"))
    if cert.bound != bound:
        failures.append(("bound", f"stored {cert.bound}, recomputed {bound}"))
    full = restricted_sumset(a, k)
    proj = prime_index_subgroup(g, p)
    union_bits = 0
    total = 0
    labels = []
    for pos, (label, wset) in enumerate(cert.witness_sets):
        tag = f"witness[{pos}]"
        if wset.group != g:
            failures.append(("group", f"{tag} lives in a different group"))
            continue
        if wset.is_empty():
            failures.append(("nonempty", f"{tag} is empty"))
        if not wset.is_subset_of(full):
            failures.append(("containment", f"{tag} is not inside the restricted sumset"))
        if wset.bits & union_bits:
            failures.append(("disjointness", f"{tag} overlaps an earlier witness set"))
        union_bits |= wset.bits
        if any(proj.label_of_index(i) != label for i in wset.indices()):
            failures.append(("coset_label", f"{tag} strays outside coset {label}"))
        total += wset.cardinality
        labels.append(label)
    distinct = len(set(labels))
    if cert.case in (CASE_PROJECTION, CASE_R_PROJECTION):
        if distinct < p:
            failures.append(("coset_count", f"{distinct} distinct cosets, need {p}"))
    elif total < bound:
        failures.append(("total", f"total {total} below bound {bound}"))
    if cert.claimed_total != total:
        failures.append(("claimed_total", f"stored {cert.claimed_total}, recomputed {total}"))
    return ValidationReport(
        ok=not failures,
        failures=tuple(failures),
        total=total,
        bound=bound,
        distinct_labels=distinct,
    )


def certificate_to_json(cert: Certificate) -> dict:
    """Plain-data form of a certificate; inverse of certificate_from_json."""
    out: dict = {
        "group": format_group(cert.group),
        "set": sorted(cert.members.indices()),
        "k": cert.k,
        "case": cert.case,
        "p_of_G": cert.p_of_g,
        "bound": cert.bound,
        "witness": [
            {"coset_label": label, "elements": sorted(wset.indices())}
            for label, wset in cert.witness_sets
        ],
    }
    if cert.profile is not None:
        prof = cert.profile
        out["profile"] = {"n": list(prof.n), "r": prof.r, "t": prof.t, "s": prof.s, "h": prof.h}
    if cert.selections is not None:
        out["selections"] = [{"j": j, "I": list(chosen)} for j, chosen in cert.selections]
    return out


def certificate_from_json(doc: dict) -> Certificate:
    try:
        g = parse_group(doc["group"])
        members = from_indices(g, doc["set"])
        k = int(doc["k"])
        case = doc["case"]
        witness = tuple(
            (int(entry["coset_label"]), from_indices(g, entry["elements"]))
            for entry in doc["witness"]
        )
        profile = None
        if "profile" in doc:
            prof = doc["profile"]
            profile = MultiplicityProfile(
                n=tuple(int(x) for x in prof["n"]),
                s=int(prof["s"]),
                t=int(prof["t"]),
                r=int(prof["r"]),
                h=int(prof["h"]),
            )
        selections = None
        if "selections" in doc:
            selections = tuple(
                (int(entry["j"]), tuple(int(i) for i in entry["I"]))
                for entry in doc["selections"]
            )
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed certificate document: {exc}") from exc
    if case not in _ALL_CASES:
        raise ValueError(f"unknown case tag {case!r}")
    if k < 0:
        raise ValueError(f"negative k in certificate document: {k}")
    return Certificate(
        group=g,
        members=members,
        k=k,
        case=case,
        p_of_g=int(doc["p_of_G"]),
        bound=int(doc["bound"]),
        claimed_total=sum(wset.cardinality for _, wset in witness),
        witness_sets=witness,
        profile=profile,
        selections=selections,
    )
