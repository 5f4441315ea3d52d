"""Negative-linking certificates for a base orbit, and the invariants of the
Birkhoff section it bounds.

A section with boundary on the base orbit exists when every periodic orbit
links negatively with it (linking form of the Schwartzman-Fried criterion).
Only finitely many orbits can be checked; every report carries its length
bound.

Fast linking with the designated bases uses a closed form in the block
decomposition.  Write the cyclic block sequence of ``w`` and list, block by
block, a marker F when the block starts with a doubled letter (x^2 or a^2) and
a marker S when it ends with one (y^2 or b^2).  With B blocks and C changes
between consecutive markers (cyclically), the linking with the base is

    (2,3,7), base ababb:  -B - C/2
    (3,3,4), base ab:     -B - C/2 + len(w)/3
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

from . import sl2
from .errors import (AmbiguityError, InvalidWordError, ModelInconsistencyError,
                     ParameterRangeError, UnsupportedSurfaceError)
from .surgery import surgered_linking, surgered_self_linking
from .template import load_model
from .words import (S237, S334, SurfaceSpec, block_decomposition, canonicalize, enumerate_orbits,
                    is_admissible, is_primitive, orbit_identity, require_coded)

Mode = Literal["fast", "oracle"]

FINITE_PREFIX_NOTE = ("certified over all admissible orbit codes up to the stated word length "
                      "only; no claim is made about longer orbits")
UNSTABLE_FRAMING_NOTE = ("boundary orbits of the blow-up are covered by the stable self-linking; "
                         "the unstable framing is assumed to give the same value")
MULTIPLICITY_NOTE = ("multiplicity taken as the denominator of the self-linking; "
                     "this is an extrapolation when m > 1")

NAMED_BASES = {"h": (S237, "ababb"), "gamma8": (S334, "ab")}


@dataclass(frozen=True)
class BaseOrbit:
    surface: SurfaceSpec
    word: str
    role: str = "custom"

    def __post_init__(self):
        require_coded(self.surface)
        if not is_admissible(self.word, self.surface) or not is_primitive(self.word):
            raise InvalidWordError(f"{self.word!r} is not a primitive admissible code "
                                   f"for {self.surface.triple}")

    @classmethod
    def named(cls, name: str) -> "BaseOrbit":
        s, w = NAMED_BASES[name]
        return cls(s, w, name)

    @classmethod
    def resolve(cls, surface: SurfaceSpec, base: str) -> "BaseOrbit":
        """``base`` is "h", "gamma8" or an explicit code."""
        if base in NAMED_BASES:
            s, w = NAMED_BASES[base]
            if s != surface:
                raise UnsupportedSurfaceError(f"base {base!r} lives on {s}, not on {surface}")
            return cls(s, w, base)
        return cls(surface, canonicalize(base))

    @property
    def canonical(self) -> str:
        return canonicalize(self.word)

    @property
    def has_closed_form(self) -> bool:
        return self.role in NAMED_BASES


H = BaseOrbit.named("h")
GAMMA8 = BaseOrbit.named("gamma8")


def _marker_changes(blocks) -> int:
    markers = []
    for b in blocks:
        if b.i == 2:
            markers.append("F")
        if b.j == 2:
            markers.append("S")
    return sum(markers[k] != markers[k - 1] for k in range(len(markers))) if len(markers) > 1 else 0


def block_formula(base: BaseOrbit, w: str) -> Fraction:
    if not base.has_closed_form:
        raise ParameterRangeError(f"no closed form for custom base {base.word!r}")
    blocks = block_decomposition(w, base.surface)
    value = -len(blocks) - Fraction(_marker_changes(blocks), 2)
    if base.surface == S334:
        value += Fraction(len(w), 3)
    return value


def oracle_linking(base: BaseOrbit, w: str) -> Fraction:
    """Template plus surgery; self-linking when ``w`` is the base code."""
    if canonicalize(w) == base.canonical:
        return surgered_self_linking(base.surface, base.word)
    return surgered_linking(base.surface, base.word, w)


def base_linking(base: BaseOrbit, w: str) -> Fraction:
    if not is_admissible(w, base.surface):
        raise InvalidWordError(f"{w!r} is not admissible for {base.surface.triple}")
    if base.has_closed_form:
        return block_formula(base, w)
    return oracle_linking(base, w)


@dataclass
class OrbitValue:
    word: str
    identity: str
    linking: Fraction

    @property
    def canonical(self) -> str:
        return canonicalize(self.word)


@dataclass
class CertificationReport:
    surface: SurfaceSpec
    base: BaseOrbit
    max_len: int
    mode: str
    self_linking: Fraction
    orbits: list[OrbitValue]
    elapsed: float = 0.0
    notes: list[str] = field(default_factory=lambda: [FINITE_PREFIX_NOTE, UNSTABLE_FRAMING_NOTE])

    @property
    def all_negative(self) -> bool:
        return self.self_linking < 0 and all(o.linking < 0 for o in self.orbits)

    @property
    def multiplicity(self) -> int:
        return self.self_linking.denominator

    def _extreme(self, pick, orbits):
        if not orbits:
            return None
        best = pick(o.linking for o in orbits)
        return best, min(o.word for o in orbits if o.linking == best)

    @property
    def min_value(self) -> Fraction:
        return self._extreme(min, self.orbits)[0]

    @property
    def min_witness(self) -> str:
        return self._extreme(min, self.orbits)[1]

    @property
    def max_value(self) -> Fraction:
        return self._extreme(max, self.orbits)[0]

    @property
    def max_witness(self) -> str:
        return self._extreme(max, self.orbits)[1]

    def non_base(self) -> list[OrbitValue]:
        base_id = orbit_identity(self.base.word, self.surface)
        return [o for o in self.orbits if o.identity != base_id]

    @property
    def max_non_base(self) -> tuple[Fraction, str] | None:
        """Largest linking over orbits other than the base (and its other codes)."""
        return self._extreme(max, self.non_base())

    @property
    def min_non_base(self) -> tuple[Fraction, str] | None:
        return self._extreme(min, self.non_base())

    @property
    def unit_intersection_orbits(self) -> list[str]:
        m = self.multiplicity
        return [o.word for o in self.orbits if -m * o.linking == 1]

    @property
    def unit_intersection_identities(self) -> list[str]:
        m = self.multiplicity
        return sorted({o.identity for o in self.orbits if -m * o.linking == 1})


def _evaluate(args) -> Fraction:
    base, w, mode = args
    if mode == "fast":
        return base_linking(base, w)
    return oracle_linking(base, w)


def certify(base: BaseOrbit, max_len: int, mode: Mode = "fast", workers: int = 1) -> CertificationReport:
    if mode not in ("fast", "oracle"):
        raise ParameterRangeError(f"unknown mode {mode!r}")
    if max_len < len(base.word):
        raise ParameterRangeError(f"max_len {max_len} is shorter than the base code {base.word!r}")
    load_model()  # fail on a bad calibration before doing any work
    start = time.perf_counter()
    words = enumerate_orbits(base.surface, max_len)
    jobs = [(base, w, mode) for w in words]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(_evaluate, jobs, chunksize=256))
    else:
        values = [_evaluate(j) for j in jobs]
    orbits = [OrbitValue(w, orbit_identity(w, base.surface), v) for w, v in zip(words, values)]
    self_linking = surgered_self_linking(base.surface, base.word)
    report = CertificationReport(base.surface, base, max_len, mode, self_linking, orbits,
                                 time.perf_counter() - start)
    if report.multiplicity > 1:
        report.notes.append(MULTIPLICITY_NOTE)
    return report


@dataclass(frozen=True)
class SectionData:
    multiplicity: int
    chi: int
    boundary_components: int
    genus: int
    fixed_points: int
    trace: int
    monodromy: str
    notes: tuple[str, ...] = ()


def section_invariants(self_linking: Fraction, boundary_components: int = 1) -> tuple[int, int, int]:
    """(m, chi, genus) from the self-linking of the boundary orbit."""
    if boundary_components < 1:
        raise ParameterRangeError("boundary_components must be positive")
    self_linking = Fraction(self_linking)
    m = self_linking.denominator
    chi = m * self_linking
    if chi.denominator != 1:
        raise ModelInconsistencyError(f"Euler characteristic {chi} is not an integer")
    chi = int(chi)
    twice_genus = 2 - boundary_components - chi
    if twice_genus % 2 or twice_genus < 0:
        raise ModelInconsistencyError(
            f"chi = {chi} with {boundary_components} boundary components gives genus "
            f"{Fraction(twice_genus, 2)}")
    return m, chi, twice_genus // 2


def monodromy_for_trace(trace: int) -> str:
    if trace < 3:
        raise ModelInconsistencyError(f"trace {trace} is not hyperbolic")
    # a positive word with both letters has trace at least its length + 1
    candidates = sl2.classes_with_trace(trace, trace)
    if len(candidates) != 1:
        raise AmbiguityError(f"{len(candidates)} conjugacy classes with trace {trace}", candidates)
    return candidates[0]


def section_data(base: BaseOrbit, max_len: int, boundary_components: int = 1,
                 report: CertificationReport | None = None) -> SectionData:
    report = report or certify(base, max_len)
    if not report.all_negative:
        raise ModelInconsistencyError("the negativity certificate failed; no section")
    m, chi, genus = section_invariants(report.self_linking, boundary_components)
    fixed = len(report.unit_intersection_identities)
    trace = fixed + 2
    notes = [UNSTABLE_FRAMING_NOTE, FINITE_PREFIX_NOTE]
    if m > 1:
        notes.append(MULTIPLICITY_NOTE)
    return SectionData(m, chi, boundary_components, genus, fixed, trace,
                       monodromy_for_trace(trace), tuple(notes))
