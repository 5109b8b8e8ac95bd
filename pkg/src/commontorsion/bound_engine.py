"""Explicit bounds on common projective torsion, with certificates.

Every bound is a closed formula in p (and q for the total bound); the work
is in deciding which formula applies.  :func:`certify` runs the reduction,
branch-locus and Frobenius-lift checks and records each outcome so that a
certificate can be audited and its number replayed from (tag, p, q, r).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .algebra.rational import _check_prime, is_prime
from .canonical_frobenius import splitting_verdict, tate_parameter_valuation
from .errors import (CommonTorsionError, HypothesesNotVerified, InvalidArgument, NotLarge,
                     PreconditionViolated)
from .projection import StandardProjection, check_assumption_mixed, check_assumption_simplest
from .weierstrass import ReductionTag, reduction_type


def _require_p(p: int, least: int = 5):
    _check_prime(p)
    if p < least:
        raise InvalidArgument(f"bound formulas need p >= {least}, got {p}")


def coarse_bound(p: int) -> int:
    """Good reduction, disjoint branch loci: at most 2p^3 + 8 common images."""
    _require_p(p)
    return 2 * p ** 3 + 8


def supersingular_bound(p: int) -> int:
    _require_p(p)
    return 2 * p ** 2 + 8


def split_bound(p: int, splits: int) -> int:
    """2p^2 + 8 if one curve's p-torsion sequence splits, 2p + 8 if both do."""
    _require_p(p)
    if splits == 1:
        return 2 * p ** 2 + 8
    if splits == 2:
        return 2 * p + 8
    raise InvalidArgument(f"splits must be 1 or 2, got {splits}")


def mixed_bound(p: int, report=None) -> int:
    """Bound on pairs (t1, t2) with equal images when one curve is nodal mod p.

    If an assumption report is supplied it must have passed.
    """
    _require_p(p)
    if report is not None and not report.passed:
        raise HypothesesNotVerified("; ".join(report.reasons) or "mixed-reduction checklist failed")
    return 2 * p ** 3 + 2


def intersection_degree_bound(d: int, e: int, p: int) -> int:
    """Intersection count of a curve of bidegree (pd, pe) with one of bidegree (d, e)."""
    if d < 1 or e < 1:
        raise InvalidArgument("bidegrees must be positive")
    _check_prime(p)
    return (d + e) * p * p


# --- orbit sizes and largeness ---------------------------------------------

class OrbitTag(str, Enum):
    ORDINARY_NON_SPLIT = "OrdinaryNonSplit"
    ORDINARY_SPLIT_LEVEL = "OrdinarySplitLevel"
    SUPERSINGULAR = "Supersingular"
    CANONICAL_MU = "CanonicalMu"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class OrbitModel:
    """Inertia action on p-power torsion of one curve.

    ``w`` is the level v(lambda - 1) for ordinary curves; ``w=None`` with
    OrdinarySplitLevel means lambda = 1 (the action is not large).
    """

    tag: OrbitTag
    p: int
    w: int | None = None
    provenance: str = ""

    def __post_init__(self):
        if self.tag in (OrbitTag.ORDINARY_NON_SPLIT, OrbitTag.ORDINARY_SPLIT_LEVEL):
            if self.w is not None and self.w < 1:
                raise InvalidArgument("w must be at least 1")
            if self.tag == OrbitTag.ORDINARY_NON_SPLIT and self.w is None:
                raise InvalidArgument("OrdinaryNonSplit needs a level w")

    @property
    def level(self) -> int:
        if self.tag in (OrbitTag.SUPERSINGULAR, OrbitTag.CANONICAL_MU):
            return 0
        if self.w is None:
            raise NotLarge("lambda = 1: inertia fixes an infinite p-divisible subgroup")
        return self.w

    def __str__(self):
        return f"{self.tag}(w={self.w})" if self.w is not None else str(self.tag)


def orbit_size(model: OrbitModel, s: int, in_etale_section: bool | None = None):
    """Inertia orbit size of a point of exact order p^s.

    Returns an int, or the frozenset {1, p^s - p^(s-1)} when the point lies
    at a split level and it is not said whether it is in the etale section.
    """
    if s < 1:
        raise InvalidArgument("s must be at least 1")
    p = model.p
    if model.tag == OrbitTag.SUPERSINGULAR:
        return p ** (2 * s) - p ** (2 * s - 2)
    generic = p ** s - p ** (s - 1)
    if model.tag == OrbitTag.CANONICAL_MU:
        return generic
    split_here = model.w is None or s <= model.w
    if not split_here:
        return generic
    if in_etale_section is None:
        return frozenset({1, generic})
    return 1 if in_etale_section else generic


def _first_exceeding(p: int, N: int, supersingular: bool) -> int:
    s = 1
    while True:
        size = p ** (2 * s) - p ** (2 * s - 2) if supersingular else p ** s - p ** (s - 1)
        if size > N:
            return s
        s += 1


def largeness_r(p: int, N: int, model) -> int:
    """Least r such that every point of order > p^r has orbit larger than N.

    ``model`` may be one OrbitModel or a sequence (a product of curves), in
    which case the maximum of the per-curve values is returned.
    """
    if isinstance(model, (list, tuple)):
        if not model:
            raise InvalidArgument("no orbit models")
        return max(largeness_r(p, N, m) for m in model)
    _check_prime(p)
    if N < 0:
        raise InvalidArgument("N must be non-negative")
    if model.tag == OrbitTag.SUPERSINGULAR:
        return _first_exceeding(p, N, True) - 1
    s0 = _first_exceeding(p, N, False)
    return max(model.level, s0 - 1)


def total_bound_from_r(p: int, r: int) -> int:
    return 8 * p ** (4 * r + 3)


def total_bound(p: int, q: int, models) -> int:
    """8 p^(4r+3) with r the largeness threshold for N = 8 q^3."""
    _check_prime(p)
    _check_prime(q)
    if q < 5 or q == p:
        raise InvalidArgument("q must be a prime >= 5 different from p")
    return total_bound_from_r(p, largeness_r(p, 8 * q ** 3, models))


# --- scenario classification ------------------------------------------------

class Scenario(str, Enum):
    GOOD_GOOD_DISJOINT = "GoodGood+Disjoint"
    GOOD_GOOD = "GoodGood"
    MIXED = "Mixed"
    INADMISSIBLE = "Inadmissible"

    def __str__(self):
        return self.value


def classify_prime(P1: StandardProjection, P2: StandardProjection, p: int) -> Scenario:
    try:
        t1, t2 = reduction_type(P1.curve, p).tag, reduction_type(P2.curve, p).tag
        if t1.is_good and t2.is_good:
            ok = check_assumption_simplest(P1, P2, p).passed
            return Scenario.GOOD_GOOD_DISJOINT if ok else Scenario.GOOD_GOOD
        if ReductionTag.ADDITIVE in (t1, t2):
            return Scenario.INADMISSIBLE
        return Scenario.MIXED if check_assumption_mixed(P1, P2, p).passed else Scenario.INADMISSIBLE
    except PreconditionViolated:
        return Scenario.INADMISSIBLE


def find_admissible_primes(P1, P2, primes, include_inadmissible: bool = False):
    """[(p, scenario)] for primes p >= 5 in ``primes``."""
    out = []
    for p in primes:
        if p < 5 or not is_prime(p):
            continue
        tag = classify_prime(P1, P2, p)
        if tag != Scenario.INADMISSIBLE or include_inadmissible:
            out.append((p, tag))
    return out


# --- certificates -------------------------------------------------------------

class TheoremTag(str, Enum):
    COARSE = "CoarseBound"
    SUPERSINGULAR = "SupersingularRefinement"
    SPLIT_ONE = "SplitOneRefinement"
    SPLIT_BOTH = "SplitBothRefinement"
    MIXED = "MixedReduction"

    def __str__(self):
        return self.value

    @property
    def formula(self) -> str:
        return {"CoarseBound": "2p^3+8", "SupersingularRefinement": "2p^2+8",
                "SplitOneRefinement": "2p^2+8", "SplitBothRefinement": "2p+8",
                "MixedReduction": "2p^3+2"}[self.value]

    @property
    def requires(self) -> tuple:
        base = ("p prime >= 5",)
        if self == TheoremTag.MIXED:
            return base + ("no additive reduction", "mixed-reduction assumption")
        good = base + ("both good", "branch loci disjoint mod p")
        return good + {
            TheoremTag.COARSE: (),
            TheoremTag.SUPERSINGULAR: ("both supersingular",),
            TheoremTag.SPLIT_ONE: ("both ordinary", "splitting verdicts"),
            TheoremTag.SPLIT_BOTH: ("both ordinary", "splitting verdicts"),
        }[self]


def bound_for_tag(tag: TheoremTag, p: int) -> int:
    return {TheoremTag.COARSE: coarse_bound, TheoremTag.SUPERSINGULAR: supersingular_bound,
            TheoremTag.SPLIT_ONE: lambda p: split_bound(p, 1),
            TheoremTag.SPLIT_BOTH: lambda p: split_bound(p, 2),
            TheoremTag.MIXED: mixed_bound}[tag](p)


@dataclass
class CheckItem:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class BoundCertificate:
    labels: tuple
    p: int
    q: int | None = None
    checklist: list = field(default_factory=list)
    tag: TheoremTag | None = None
    bound: int | None = None
    counts: str = "points"
    models: list = field(default_factory=list)  # (label, OrbitModel)
    r: int | None = None
    total: int | None = None
    notes: list = field(default_factory=list)

    def check(self, name, passed, detail=""):
        self.checklist.append(CheckItem(name, bool(passed), detail))
        return passed

    def verified(self, name) -> bool:
        return any(c.name == name and c.passed for c in self.checklist)

    @property
    def conditional(self) -> bool:
        return any(n.startswith("conditional") for n in self.notes)

    def hypotheses_hold(self) -> bool:
        return self.tag is None or all(self.verified(h) for h in self.tag.requires)

    def replay(self) -> tuple:
        """Recompute (bound, total) from (tag, p, q, r) alone."""
        bound = bound_for_tag(self.tag, self.p) if self.tag is not None else None
        total = total_bound_from_r(self.p, self.r) if self.total is not None else None
        return bound, total

    def summary(self) -> str:
        if self.tag is None:
            head = f"no bound at p={self.p}"
        else:
            head = f"{self.tag}: {self.tag.formula} = {self.bound} (p={self.p}, counting {self.counts})"
        if self.total is not None:
            head += f"; total <= 8*p^(4r+3) = 8*{self.p}^{4 * self.r + 3} with r={self.r}, q={self.q}"
        return head

    def to_dict(self) -> dict:
        return {
            "labels": list(self.labels),
            "p": self.p,
            "q": self.q,
            "tag": None if self.tag is None else str(self.tag),
            "formula": None if self.tag is None else self.tag.formula,
            "bound": self.bound,
            "counts": self.counts,
            "r": self.r,
            "total": self.total,
            "checklist": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checklist],
            "models": [{"label": lab, "model": str(m), "provenance": m.provenance} for lab, m in self.models],
            "notes": list(self.notes),
        }


def _good_ordinary_models(cert, P, label, p, verdict, override):
    """Orbit model for one good ordinary curve, honouring a consistent override."""
    if override is not None:
        if verdict is not None and not verdict.splits and override != 1:
            cert.notes.append(f"{label}: w override {override} ignored, lift test certifies w = 1")
            override = None
        elif verdict is not None and verdict.splits and override == 1:
            cert.notes.append(f"{label}: w override 1 ignored, lift test certifies w >= 2")
            override = None
    if verdict is not None and not verdict.splits:
        return OrbitModel(OrbitTag.ORDINARY_NON_SPLIT, p, 1, "certified by Frobenius-lift test")
    if override == "inf":
        cert.notes.append(f"{label}: canonical lift asserted; the trivial p-divisible part is folded "
                          "with the coprime-to-p torsion and only the mu part is counted (engine reading)")
        return OrbitModel(OrbitTag.CANONICAL_MU, p, None, "externally asserted")
    if isinstance(override, int):
        return OrbitModel(OrbitTag.ORDINARY_SPLIT_LEVEL, p, override, "externally asserted")
    return None


def _verdict(cert, P, label, p):
    try:
        v = splitting_verdict(P.source or P.curve, p)
    except CommonTorsionError as exc:
        cert.check(f"splitting verdict {label}", False, str(exc))
        return None
    cert.check(f"splitting verdict {label}", True, f"{v.tag} (kernel dim {v.witness.kernel_dim})")
    return v


def certify(P1: StandardProjection, P2: StandardProjection, p: int, q: int | None = None,
            w_overrides: dict | None = None) -> BoundCertificate:
    """Select the sharpest applicable bound at p and record why."""
    labels = (P1.label or "E1", P2.label or "E2")
    overrides = dict(w_overrides or {})
    cert = BoundCertificate(labels, p, q)
    if not cert.check("p prime >= 5", is_prime(p) and p >= 5, f"p = {p}"):
        return cert
    tags = []
    for P, lab in zip((P1, P2), labels):
        rt = reduction_type(P.source or P.curve, p)
        tags.append(rt.tag)
        cert.check(f"reduction {lab}", True, f"{rt.tag}, v(disc_min) = {rt.v_disc_min}")
    good = all(t.is_good for t in tags)
    verdicts = [None, None]
    if good:
        cert.check("both good", True)
        simp = check_assumption_simplest(P1, P2, p)
        detail = (f"v_p(Res) = {simp.valuation}, generic common points {simp.generic_common_points}, "
                  f"special common points {simp.special_common_points}")
        if not cert.check("branch loci disjoint mod p", simp.passed, detail + "; " + "; ".join(simp.reasons)):
            cert.notes.append("branch loci meet mod p: no bound at this prime")
        else:
            n_ss = sum(t == ReductionTag.GOOD_SUPERSINGULAR for t in tags)
            if n_ss == 2:
                cert.check("both supersingular", True)
                cert.tag = TheoremTag.SUPERSINGULAR
            elif n_ss == 0:
                cert.check("both ordinary", True)
                verdicts = [_verdict(cert, P, lab, p) for P, lab in zip((P1, P2), labels)]
                if all(v is not None for v in verdicts):
                    cert.check("splitting verdicts", True)
                    k = sum(v.splits for v in verdicts)
                    cert.tag = {0: TheoremTag.COARSE, 1: TheoremTag.SPLIT_ONE, 2: TheoremTag.SPLIT_BOTH}[k]
                else:
                    cert.tag = TheoremTag.COARSE
            else:
                cert.notes.append("one ordinary and one supersingular curve: only the coarse bound applies")
                cert.tag = TheoremTag.COARSE
    else:
        cert.check("both good", False)
        if not cert.check("no additive reduction", ReductionTag.ADDITIVE not in tags):
            cert.notes.append("additive reduction at p: no bound at this prime")
        else:
            rep = check_assumption_mixed(P1, P2, p)
            if cert.check("mixed-reduction assumption", rep.passed, "; ".join(rep.reasons) or "all special points distinct"):
                cert.tag = TheoremTag.MIXED
                cert.counts = "pairs"
                cert.notes.append("the mixed bound counts pairs (t1, t2) with equal images; "
                                  "distinct common points are at most this many")
                _mixed_finiteness_note(cert, P1, P2, tags, p)
    if cert.tag is not None:
        cert.bound = bound_for_tag(cert.tag, p)
    if q is not None:
        _total(cert, (P1, P2), labels, tags, verdicts, overrides, p, q)
    return cert


def _mixed_finiteness_note(cert, P1, P2, tags, p):
    mult = [i for i, t in enumerate(tags) if t == ReductionTag.MULTIPLICATIVE]
    if len(mult) == 1:
        i = mult[0]
        P = (P1, P2)[i]
        tate = tate_parameter_valuation(P.source or P.curve, p)
        partner_ok = tags[1 - i] == ReductionTag.GOOD_ORDINARY
        cert.check("Tate parameter v(q) = p", tate.pth_power_necessary, f"v(q) = {tate.v_q}")
        cert.check("partner good ordinary", partner_ok)
        if tate.pth_power_necessary and partner_ok:
            cert.notes.append("finiteness of the specialisation image discharged via the Tate-curve route: "
                              f"v(q) = {p} = p holds (necessary condition only; the unit part of q is not checked)")
            return
    cert.notes.append("conditional on finiteness of the specialisation image (no finite check available)")


def _total(cert, Ps, labels, tags, verdicts, overrides, p, q):
    ok = cert.check("q admissible", is_prime(q) and q >= 5 and q != p, f"q = {q}")
    if ok:
        try:
            simp = check_assumption_simplest(*Ps, q)
            ok = cert.check("branch loci disjoint mod q", simp.passed, "; ".join(simp.reasons))
        except PreconditionViolated as exc:
            ok = cert.check("branch loci disjoint mod q", False, str(exc))
    if not ok:
        cert.notes.append("no total bound: q does not satisfy the auxiliary-prime hypotheses")
        return
    models = []
    for P, lab, t, v in zip(Ps, labels, tags, verdicts):
        ov = overrides.get(lab)
        if t == ReductionTag.GOOD_SUPERSINGULAR:
            if ov is not None:
                cert.notes.append(f"{lab}: w override ignored for a supersingular curve")
            models.append((lab, OrbitModel(OrbitTag.SUPERSINGULAR, p, None, "Hasse invariant")))
        elif t == ReductionTag.GOOD_ORDINARY:
            if v is None:
                v = _verdict(cert, P, lab, p)
            m = _good_ordinary_models(cert, P, lab, p, v, ov)
            if m is None:
                cert.notes.append(f"no total bound: {lab} splits mod p^2 so w >= 2 but its exact level "
                                  "is not computable here; supply a w override ('inf' for a canonical lift)")
                return
            models.append((lab, m))
        else:
            cert.notes.append(f"no total bound: {lab} does not have good reduction at p")
            return
    cert.models = models
    cert.r = largeness_r(p, 8 * q ** 3, [m for _, m in models])
    cert.check("largeness", True, f"r = {cert.r} for N = 8q^3 = {8 * q ** 3} (max over the two curves)")
    cert.total = total_bound_from_r(p, cert.r)
