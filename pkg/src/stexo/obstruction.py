"""Decision procedure for stable exotica from a normal 1-type.

The pipeline evaluates, in a fixed order: input validation, the primary
class w1^3 + w1 w2 in degree 3, the w2 = w1^2 sufficient condition, a user
assertion of small cohomological dimension, the secondary obstruction through
double-cover lift data, and the degree-5 integral homology gate for the
converse direction.  Everything is computed exactly over GF(2) (integral
homology over Z where needed) on finite simplicial models.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cohomology import (
    CohomologyBasis,
    cohomology_basis,
    induced_matrix,
    integral_homology,
)
from .errors import (
    InternalInvariantError,
    ModelMismatchError,
    TruncationError,
    ValidationError,
)
from .gf2 import F2Matrix, Subspace, kernel_basis, solve_affine
from .simplicial import (
    Cochain,
    CoverPair,
    Involution,
    SimplicialMap,
    SimplicialModel,
    coboundary,
    cover_from_cocycle,
    cup,
    quotient_free_involution,
    sq,
)

OUTCOMES = (
    "InvalidInput",
    "NoExoticaPrimary",
    "ExoticaExistKreck",
    "ExoticaExistCd3",
    "NoExoticaSecondary",
    "ExoticaExistSecondary",
    "Undetermined",
)


@dataclass(frozen=True)
class Assertion:
    """A user-supplied fact the pipeline cannot derive from the truncation."""

    value: bool
    provenance: str


@dataclass
class NormalOneType:
    base: SimplicialModel
    w1: Cochain
    w2: Cochain
    name: str = "normal-1-type"
    cd_at_most_3: Assertion | None = None
    h5_zero: Assertion | None = None


@dataclass
class PipelineConfig:
    lift_cap: int = 1 << 16
    sample_seed: int = 0
    deep_validate: bool = True


@dataclass
class LiftDatum:
    a: Cochain
    index: int = 0
    label: str = ""


@dataclass
class SectionDatum:
    s: SimplicialMap


@dataclass
class Verdict:
    outcome: str
    clause: int
    explanation: str
    evidence: dict
    caveats: tuple = ()

    def to_json_dict(self) -> dict:
        return {
            "outcome": self.outcome,
            "clause": self.clause,
            "explanation": self.explanation,
            "evidence": _json_safe(self.evidence),
            "caveats": list(self.caveats),
        }


def _json_safe(obj):
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [int(x) for x in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


# -- double cover data ---------------------------------------------------------


@dataclass
class DoubleCoverData:
    """A cover pair tied to a normal 1-type, machine-checked on construction."""

    pair: CoverPair
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def cover(self) -> SimplicialModel:
        return self.pair.cover

    @property
    def base(self) -> SimplicialModel:
        return self.pair.base

    @property
    def involution(self) -> Involution:
        return self.pair.involution

    @property
    def projection(self) -> SimplicialMap:
        return self.pair.projection


def cover_data_from_w1(nt: NormalOneType) -> DoubleCoverData:
    """Build the double cover classified by the w1 cocycle of the type."""
    pair = cover_from_cocycle(nt.base, nt.w1)
    return DoubleCoverData(pair)


def cover_data_from_pair(nt: NormalOneType, pair: CoverPair) -> DoubleCoverData:
    if pair.base is not nt.base:
        raise ModelMismatchError("cover pair quotient is not the type's base model")
    diff = pair.w1 + nt.w1
    if solve_affine(nt.base.coboundary_matrix(0), diff.values) is None:
        raise ValidationError(
            "cover characteristic cocycle is not cohomologous to the type's w1"
        )
    return DoubleCoverData(pair)


def cover_data_from_parts(
    nt: NormalOneType,
    cover: SimplicialModel,
    involution: Involution,
    projection: SimplicialMap,
) -> DoubleCoverData:
    """Assemble and machine-check user-supplied cover data.

    Checks: the involution is free and simplicial, the projection is a
    simplicial map onto the base whose fibers are exactly the orbits, and the
    descended characteristic cocycle is cohomologous to the type's w1.
    """
    involution.require_valid()
    if projection.source is not cover or projection.target is not nt.base:
        raise ModelMismatchError("projection endpoints do not match the cover data")
    projection.require_valid()
    base = nt.base
    if cover.max_degree != base.max_degree:
        raise ValidationError("cover and base truncations differ")
    sheet, reps, bidx = [], [], []
    for n in range(cover.max_degree + 1):
        if cover.cells[n] != 2 * base.cells[n]:
            raise ValidationError(f"degree {n}: cover must have twice the cells")
        fibers: dict = {}
        for c, (word, b) in enumerate(projection.assignment[n]):
            if word:
                raise ValidationError("projection sends a cell to a degenerate target")
            fibers.setdefault(b, []).append(c)
        rep_arr = np.empty(base.cells[n], dtype=np.int64)
        sh = np.zeros(cover.cells[n], dtype=np.uint8)
        bi = np.empty(cover.cells[n], dtype=np.int64)
        for b in range(base.cells[n]):
            f = fibers.get(b, [])
            if len(f) != 2 or int(involution.perms[n][f[0]]) != f[1]:
                raise ValidationError(
                    f"degree {n}: fiber over cell {b} is not a single free orbit"
                )
            rep_arr[b] = f[0]
            sh[f[1]] = 1
            bi[f[0]] = bi[f[1]] = b
        reps.append(rep_arr)
        sheet.append(sh)
        bidx.append(bi)
    w1_vals = np.zeros(base.cells[1], dtype=np.uint8)
    s0 = sheet[0]
    for b in range(base.cells[1]):
        rep = int(reps[1][b])
        (wa, c0), (wb, c1) = cover.faces[1][rep][0], cover.faces[1][rep][1]
        w1_vals[b] = s0[c0] ^ s0[c1]
    w1d = Cochain(base, 1, w1_vals)
    pair = CoverPair(cover, base, projection, involution, w1d, sheet, reps, bidx)
    return cover_data_from_pair(nt, pair)


# -- validation ----------------------------------------------------------------


def validate_normal_type(
    nt: NormalOneType,
    cover: DoubleCoverData | None = None,
    section: SectionDatum | None = None,
    deep: bool = True,
) -> list:
    """All input violations, as human-readable reasons; empty means valid."""
    reasons = []
    bad = nt.base.validate(deep=deep)
    if bad:
        reasons.append(f"base model: {bad[0]} ({len(bad)} violations)")
    if nt.base.max_degree < 4:
        reasons.append("base model must store cells up to degree 4")
        return reasons
    if nt.w1.model is not nt.base or nt.w1.degree != 1:
        reasons.append("w1 must be a degree-1 cochain on the base model")
        return reasons
    if nt.w2.model is not nt.base or nt.w2.degree != 2:
        reasons.append("w2 must be a degree-2 cochain on the base model")
        return reasons
    if not coboundary(nt.w1).is_zero():
        reasons.append("w1 is not closed")
    if not coboundary(nt.w2).is_zero():
        reasons.append("w2 is not closed")
    if reasons:
        return reasons
    if solve_affine(nt.base.coboundary_matrix(0), nt.w1.values) is not None:
        reasons.append("[w1] = 0: the orientable case is out of scope")
    if cover is not None:
        if cover.base is not nt.base:
            reasons.append("cover data quotient is not the base model")
        else:
            diff = cover.pair.w1 + nt.w1
            if solve_affine(nt.base.coboundary_matrix(0), diff.values) is None:
                reasons.append("cover characteristic class differs from [w1]")
    if section is not None:
        reasons.extend(_validate_section(nt, section))
    return reasons


def _validate_section(nt: NormalOneType, section: SectionDatum) -> list:
    reasons = []
    s = section.s
    if s.target is not nt.base:
        return ["section does not land in the base model"]
    bad = s.validate()
    if bad:
        return [f"section map: {bad[0]}"]
    if s.source.max_degree < 5:
        reasons.append(
            "section source must store cells up to degree 5 for degree-4 conclusions"
        )
    try:
        h1 = cohomology_basis(s.source, 1)
    except TruncationError:
        return reasons + ["section source too shallow to certify H^1"]
    if h1.dim != 1:
        reasons.append("section source must have one-dimensional H^1")
    else:
        pulled = s.pullback(nt.w1)
        if h1.is_coboundary(pulled):
            reasons.append("section pullback of w1 is not a generator")
    return reasons


# -- the three obstruction layers ------------------------------------------------


def primary_obstruction(nt: NormalOneType) -> Cochain:
    """The degree-3 cochain w1^3 + w1 w2 (always closed for closed inputs)."""
    c = cup(nt.w1, cup(nt.w1, nt.w1)) + cup(nt.w1, nt.w2)
    if not coboundary(c).is_zero():
        raise InternalInvariantError("primary cochain failed to be closed")
    return c


def primary_vanishes(nt: NormalOneType) -> bool:
    c = primary_obstruction(nt)
    return solve_affine(nt.base.coboundary_matrix(2), c.values) is not None


def kreck_witness(nt: NormalOneType):
    """A 1-cochain g with delta g = w2 + w1^2, or None when classes differ."""
    diff = nt.w2 + cup(nt.w1, nt.w1)
    sol = solve_affine(nt.base.coboundary_matrix(1), diff.values)
    return None if sol is None else Cochain(nt.base, 1, sol.particular)


def kreck_condition(nt: NormalOneType) -> bool:
    return kreck_witness(nt) is not None


@dataclass
class Sq2WOperator:
    """The map x -> Sq^2 x + w1 Sq^1 x + w2 x on degree-2 classes."""

    nt: NormalOneType
    h2: CohomologyBasis
    cochain_images: list
    caveats: tuple = ()
    _h4: CohomologyBasis | None = None
    _matrix: F2Matrix | None = None
    _image: Subspace | None = None

    def apply_cochain(self, x: Cochain) -> Cochain:
        return sq(x, 2) + cup(self.nt.w1, sq(x, 1)) + cup(self.nt.w2, x)

    @property
    def h4(self) -> CohomologyBasis:
        if self._h4 is None:
            self._h4 = cohomology_basis(
                self.nt.base, 4, allow_truncated=bool(self.caveats)
            )
        return self._h4

    @property
    def matrix(self) -> F2Matrix:
        """Columns are H^4 coordinates of the operator on the H^2 basis."""
        if self._matrix is None:
            m = F2Matrix.zeros(self.h4.dim, self.h2.dim)
            for j, img in enumerate(self.cochain_images):
                for i, bit in enumerate(self.h4.coords(img)):
                    if bit:
                        m.set(i, j, 1)
            self._matrix = m
        return self._matrix

    @property
    def image(self) -> Subspace:
        if self._image is None:
            self._image = Subspace.from_vectors(
                self.h4.dim, self.matrix.transpose().to_dense()
            )
        return self._image


def sq2_w_operator(nt: NormalOneType, allow_truncated: bool = False) -> Sq2WOperator:
    caveats = ()
    if nt.base.max_degree < 5:
        if not allow_truncated:
            raise TruncationError(
                f"{nt.base.name}: degree-4 conclusions need max_degree >= 5"
            )
        caveats = ("H^4 is uncertified at this truncation; image may be inflated",)
    h2 = cohomology_basis(nt.base, 2)
    op = Sq2WOperator(nt, h2, [], caveats)
    op.cochain_images = [op.apply_cochain(x) for x in h2.reps]
    return op


# -- lift data -------------------------------------------------------------------


@dataclass
class LiftSolutions:
    """The affine space of degree-2 classes a with [a + T*a] = [p*w2]."""

    basis: CohomologyBasis
    particular: np.ndarray | None
    kernel: Subspace

    @property
    def empty(self) -> bool:
        return self.particular is None

    @property
    def count(self) -> int:
        return 0 if self.empty else 1 << self.kernel.dim

    def class_coords(self, combo_bits: int) -> np.ndarray:
        coords = self.particular.copy()
        kb = self.kernel.basis_dense()
        for i in range(self.kernel.dim):
            if (combo_bits >> i) & 1:
                coords ^= kb[i]
        return coords

    def enumerate_data(self, cap: int, seed: int = 0):
        """Yield lift data in a deterministic order; (data, complete)."""
        if self.empty:
            return [], True
        total = self.count
        if total <= cap:
            combos = range(total)
            complete = True
        else:
            rng = np.random.default_rng(seed)
            seen = {0}
            picks = [0]
            while len(picks) < cap:
                bits = 0
                for shift in range(0, self.kernel.dim, 32):
                    width = min(32, self.kernel.dim - shift)
                    bits |= int(rng.integers(0, 1 << width)) << shift
                if bits not in seen:
                    seen.add(bits)
                    picks.append(bits)
            combos = picks
            complete = False
        data = []
        for idx, bits in enumerate(combos):
            coords = self.class_coords(bits)
            data.append(LiftDatum(self.basis.class_from_coords(coords), idx))
        return data, complete


def lift_data_solutions(nt: NormalOneType, cover: DoubleCoverData) -> LiftSolutions:
    key = "lift-solutions"
    if key in cover._cache:
        return cover._cache[key]
    pair = cover.pair
    h2c = cohomology_basis(pair.cover, 2)
    m = F2Matrix.zeros(h2c.dim, h2c.dim)
    for j, rep in enumerate(h2c.reps):
        img = rep + pair.involution.pullback(rep)
        for i, bit in enumerate(h2c.coords(img)):
            if bit:
                m.set(i, j, 1)
    rhs = h2c.coords(pair.projection.pullback(nt.w2))
    sol = solve_affine(m, rhs)
    if sol is None:
        out = LiftSolutions(h2c, None, Subspace.zero(h2c.dim))
    else:
        out = LiftSolutions(h2c, sol.particular, sol.kernel)
    cover._cache[key] = out
    return out


def validate_lift_datum(
    nt: NormalOneType, cover: DoubleCoverData, a: Cochain
) -> list:
    reasons = []
    pair = cover.pair
    if a.model is not pair.cover or a.degree != 2:
        return ["lift datum must be a degree-2 cochain on the cover"]
    if not coboundary(a).is_zero():
        return ["lift datum is not closed"]
    h2c = cohomology_basis(pair.cover, 2)
    lhs = a + pair.involution.pullback(a)
    rhs = pair.projection.pullback(nt.w2)
    if not h2c.same_class(lhs, rhs):
        reasons.append("[a + T*a] differs from [p*w2] on the cover")
    return reasons


def secondary_witness(cover: DoubleCoverData, a: Cochain) -> Cochain:
    """The degree-4 witness a cup T*a on the cover."""
    A = cup(a, cover.pair.involution.pullback(a))
    if not coboundary(A).is_zero():
        raise InternalInvariantError("secondary witness failed to be closed")
    return A


def restricted_image_span(
    nt: NormalOneType, cover: DoubleCoverData, op: Sq2WOperator
) -> Subspace:
    """Span of p*(Im Sq^2_{w1,w2}) together with coboundaries, on cover cochains.

    Membership of a closed degree-4 cochain in this span is exactly the
    class-level condition [A] in p*(Im).
    """
    key = "restricted-image-span"
    if key in cover._cache:
        return cover._cache[key]
    pair = cover.pair
    rows = [pair.cover.coboundary_matrix(3).transpose().to_dense()]
    if op.cochain_images:
        rows.append(
            np.vstack(
                [pair.projection.pullback(img).values for img in op.cochain_images]
            )
        )
    span = Subspace.from_vectors(pair.cover.n_cells(4), np.vstack(rows))
    cover._cache[key] = span
    return span


# -- secondary test --------------------------------------------------------------


@dataclass
class SecondaryOutcome:
    kind: str  # "nonzero" | "zero" | "inconclusive"
    witness: Cochain | None = None
    omega: Cochain | None = None
    omega_coords: np.ndarray | None = None
    reason: str = ""


def secondary_test(
    nt: NormalOneType,
    cover: DoubleCoverData,
    datum: LiftDatum,
    section: SectionDatum | None = None,
    op: Sq2WOperator | None = None,
) -> SecondaryOutcome:
    bad = validate_lift_datum(nt, cover, datum.a)
    if bad:
        raise ValidationError(f"lift datum: {bad[0]}")
    if op is None:
        op = sq2_w_operator(nt)
    span = restricted_image_span(nt, cover, op)
    A = secondary_witness(cover, datum.a)
    if not span.contains(A.values):
        return SecondaryOutcome("nonzero", witness=A)
    if section is None:
        return SecondaryOutcome(
            "inconclusive",
            witness=A,
            reason="witness lies in the restricted image and no section was supplied",
        )
    bad = _validate_section(nt, section)
    if bad:
        raise ValidationError(f"section: {bad[0]}")
    s = section.s
    p4, h4_cover, h4_base = induced_matrix(cover.projection, 4)
    s4, h4_section, h4_base_again = induced_matrix(s, 4)
    if h4_base_again is not h4_base:
        raise InternalInvariantError("H^4 base bases diverged")
    stacked = p4.stack(s4)
    if kernel_basis(stacked).rows:
        return SecondaryOutcome(
            "inconclusive",
            witness=A,
            reason="uniqueness fails: ker(p*) and ker(s*) overlap on H^4",
        )
    rhs = np.concatenate([h4_cover.coords(A), np.zeros(h4_section.dim, dtype=np.uint8)])
    sol = solve_affine(stacked, rhs)
    if sol is None:
        return SecondaryOutcome(
            "inconclusive",
            witness=A,
            reason="no degree-4 class satisfies both section and cover constraints",
        )
    omega_coords = sol.particular
    omega = h4_base.class_from_coords(omega_coords)
    if op.image.contains(omega_coords):
        return SecondaryOutcome("zero", witness=A, omega=omega, omega_coords=omega_coords)
    return SecondaryOutcome(
        "inconclusive",
        witness=A,
        omega=omega,
        omega_coords=omega_coords,
        reason="the pinned degree-4 class lies outside the operator image",
    )


# -- the degree-5 gate -----------------------------------------------------------


def h5_check(nt: NormalOneType):
    """Status of H_5(base; Z): ('zero'|'nonzero'|'unknown', detail)."""
    base = nt.base
    tail_from = None
    for k in range(base.max_degree + 1):
        if base.cells[k] == 0 and all(
            base.cells[j] == 0 for j in range(k, base.max_degree + 1)
        ):
            tail_from = k
            break
    if tail_from is not None and tail_from <= 5:
        return "zero", {
            "method": "empty-tail",
            "detail": f"no cells from degree {tail_from}; model dimension < 5",
        }
    try:
        inv = integral_homology(base, 5).invariants if base.max_degree >= 5 else None
    except TruncationError:
        inv = None
    if inv is not None:
        status = "zero" if inv.is_zero else "nonzero"
        detail = {"method": "computed", "invariants": str(inv)}
        if nt.h5_zero is not None and nt.h5_zero.value != inv.is_zero:
            detail["conflict"] = (
                f"assertion ({nt.h5_zero.provenance}) contradicts the computation"
            )
        return status, detail
    if nt.h5_zero is not None:
        return (
            "zero" if nt.h5_zero.value else "nonzero",
            {"method": "asserted", "provenance": nt.h5_zero.provenance},
        )
    return "unknown", {"method": "none"}


# -- decide ----------------------------------------------------------------------


def decide(
    nt: NormalOneType,
    cover: DoubleCoverData | None = None,
    section: SectionDatum | None = None,
    extra_lift_data: tuple = (),
    config: PipelineConfig | None = None,
) -> Verdict:
    config = config or PipelineConfig()
    caveats = []

    reasons = validate_normal_type(nt, cover, section, deep=config.deep_validate)
    for datum in extra_lift_data:
        if cover is None:
            reasons.append("lift data supplied without cover data")
            break
        bad = validate_lift_datum(nt, cover, datum.a)
        reasons.extend(f"lift datum {datum.label or datum.index}: {r}" for r in bad)
    if reasons:
        return Verdict(
            "InvalidInput", 1, "input validation failed", {"reasons": reasons}
        )

    prim = primary_obstruction(nt)
    if solve_affine(nt.base.coboundary_matrix(2), prim.values) is None:
        return Verdict(
            "NoExoticaPrimary",
            2,
            "the primary class w1^3 + w1 w2 is nonzero in degree-3 cohomology",
            {"primary_support": list(prim.support())},
        )

    g = kreck_witness(nt)
    if g is not None:
        return Verdict(
            "ExoticaExistKreck",
            3,
            "w2 = w1^2 in degree-2 cohomology: stable exotica exist",
            {
                "kreck_witness_support": list(g.support()),
                "primary_support": list(prim.support()),
            },
        )

    if nt.cd_at_most_3 is not None and nt.cd_at_most_3.value:
        return Verdict(
            "ExoticaExistCd3",
            4,
            "asserted cohomological dimension at most 3 with vanishing primary"
            " class: stable exotica exist",
            {"cd_assertion_provenance": nt.cd_at_most_3.provenance},
        )

    first_datum = None
    op = None
    if cover is not None:
        if nt.base.max_degree < 5:
            caveats.append(
                "cover supplied but max_degree < 5: degree-4 conclusions skipped"
            )
        else:
            op = sq2_w_operator(nt)
            sols = lift_data_solutions(nt, cover)
            data, complete = sols.enumerate_data(config.lift_cap, config.sample_seed)
            if not complete:
                caveats.append(
                    f"lift enumeration sampled {config.lift_cap} of {sols.count}"
                    " classes; absence of a nonzero witness is not certified"
                )
            if sols.empty and not extra_lift_data:
                caveats.append("no lift data exist over this cover")
            all_data = list(extra_lift_data) + data
            span = restricted_image_span(nt, cover, op) if all_data else None
            for datum in all_data:
                if first_datum is None:
                    first_datum = datum
                A = secondary_witness(cover, datum.a)
                if not span.contains(A.values):
                    return Verdict(
                        "NoExoticaSecondary",
                        5,
                        "a lift datum has witness class outside the restricted"
                        " operator image: the secondary obstruction is nonzero",
                        {
                            "lift_datum_index": datum.index,
                            "lift_datum_support": list(datum.a.support()),
                            "witness_support": list(A.support()),
                            "solution_count": sols.count,
                            "enumeration_complete": complete,
                        },
                        tuple(caveats),
                    )

    if section is not None and cover is not None and first_datum is not None:
        outcome = secondary_test(nt, cover, first_datum, section, op)
        if outcome.kind == "nonzero":
            raise InternalInvariantError(
                "secondary test disagreed with the enumeration pass"
            )
        if outcome.kind == "zero":
            status, detail = h5_check(nt)
            if status == "zero":
                return Verdict(
                    "ExoticaExistSecondary",
                    6,
                    "secondary obstruction vanishes and H_5(base; Z) = 0:"
                    " stable exotica exist",
                    {
                        "lift_datum_index": first_datum.index,
                        "lift_datum_support": list(first_datum.a.support()),
                        "omega_coords": outcome.omega_coords,
                        "omega_support": list(outcome.omega.support()),
                        "h5": detail,
                    },
                    tuple(caveats),
                )
            caveats.append(
                f"secondary obstruction vanishes but H_5 gate is {status}:"
                " the converse direction does not apply"
            )
        else:
            caveats.append(f"secondary test inconclusive: {outcome.reason}")

    return Verdict(
        "Undetermined",
        7,
        "no clause resolved the type at this truncation",
        {"caveats_reflected": list(caveats)},
        tuple(caveats),
    )


# -- evidence replay -------------------------------------------------------------


def replay_evidence(
    verdict: Verdict,
    nt: NormalOneType,
    cover: DoubleCoverData | None = None,
    section: SectionDatum | None = None,
) -> bool:
    """Re-run the operations cited by a verdict and compare the records."""
    ev = verdict.evidence
    if verdict.outcome == "InvalidInput":
        return bool(validate_normal_type(nt, cover, section))
    if verdict.outcome == "NoExoticaPrimary":
        prim = primary_obstruction(nt)
        if list(prim.support()) != list(ev["primary_support"]):
            return False
        return solve_affine(nt.base.coboundary_matrix(2), prim.values) is None
    if verdict.outcome == "ExoticaExistKreck":
        g = Cochain.from_support(nt.base, 1, ev["kreck_witness_support"])
        diff = nt.w2 + cup(nt.w1, nt.w1)
        return coboundary(g) == diff
    if verdict.outcome == "ExoticaExistCd3":
        return nt.cd_at_most_3 is not None and nt.cd_at_most_3.value
    if verdict.outcome == "NoExoticaSecondary":
        if cover is None:
            return False
        a = Cochain.from_support(cover.cover, 2, ev["lift_datum_support"])
        if validate_lift_datum(nt, cover, a):
            return False
        A = secondary_witness(cover, a)
        if list(A.support()) != list(ev["witness_support"]):
            return False
        op = sq2_w_operator(nt)
        return not restricted_image_span(nt, cover, op).contains(A.values)
    if verdict.outcome == "ExoticaExistSecondary":
        if cover is None or section is None:
            return False
        a = Cochain.from_support(cover.cover, 2, ev["lift_datum_support"])
        outcome = secondary_test(nt, cover, LiftDatum(a), section)
        if outcome.kind != "zero":
            return False
        if list(outcome.omega.support()) != list(ev["omega_support"]):
            return False
        return h5_check(nt)[0] == "zero"
    if verdict.outcome == "Undetermined":
        return True
    return False
