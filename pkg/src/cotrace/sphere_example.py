"""Closed-form coincidence trace for maps between spheres S^m -> S^n
with m > n >= 2.

The only integrally visible regime is n even with m = 2n - 1, where the
trace is the difference of the Hopf invariants of the two maps; in
every other dimension pattern the trace vanishes. The projected Nielsen
count is always 0 (the coincidence class lives above the dimension of
the target sphere), while the equalizer-level count is 1 exactly when
the trace is nonzero.

Hopf invariants are accepted as raw integers. Odd values are only
realizable for n in {2, 4, 8}; even values are realizable for every
even n. No realizability filtering is applied here.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError

__all__ = ["SphereCoincidenceInput", "SphereTraceReport", "sphere_reidemeister"]


@dataclass(frozen=True)
class SphereCoincidenceInput:
    """Dimensions m > n >= 2 and the two Hopf invariants (ignored
    outside the Hopf regime)."""

    m: int
    n: int
    hopf_f: int = 0
    hopf_g: int = 0

    def __post_init__(self):
        if self.n < 2:
            raise InputError("need n >= 2, got n=%d" % self.n)
        if self.m <= self.n:
            raise InputError("need m > n, got m=%d, n=%d" % (self.m, self.n))


@dataclass(frozen=True)
class SphereTraceReport:
    """trace_value lives in the integers (the degree-(n-1) loop-space
    homology); nielsen counts the equalizer components seeing it."""

    trace_value: int
    regime: str  # "hopf" | "trivial"
    nielsen_tilde: int
    nielsen: int


def sphere_reidemeister(data: SphereCoincidenceInput) -> SphereTraceReport:
    """Case analysis: Hopf regime iff n even and m = 2n - 1, where the
    trace is hopf_f - hopf_g; trivial otherwise."""
    hopf_regime = (data.n % 2 == 0) and (data.m == 2 * data.n - 1)
    if hopf_regime:
        trace = data.hopf_f - data.hopf_g
        regime = "hopf"
    else:
        trace = 0
        regime = "trivial"
    return SphereTraceReport(
        trace_value=trace,
        regime=regime,
        nielsen_tilde=1 if trace != 0 else 0,
        nielsen=0,
    )
