"""Exact big-integer engine for the product-bound inequality apparatus.

Everything here happens on the five-parameter grid

    (t+1)(k-t+1) <= n,   t+3 <= s <= 2k-t,
    max(t+1, s+t-k) <= i <= min(k, floor((s+t)/2)),   t >= 3,

with four core quantities

    S1 = i(n-k-s+i+1) + (s-i)(n-s+1)        = s(n-s+1) - i(k-i)
    S2 = (s+t-i)(n-k-i+t+1) + (i-t)(n-s+1)  = s(n-s+1) - (s+t-i)(k+i-s-t)
    T1 = i(n-k-s+i+1) + (s-i)(k-i+1)
    T2 = (s+t-i)(n-k-i+t+1) + (i-t)(k-s-t+i+1)

The key claim is the strict ratio bound

    (n+i-k-s)(n+t-k-i) S1 S2  >  (n-s+1)^2 T1 T2        (*)

for every grid point with (s,i,t) != (6,4,3), equivalent via a binomial
reduction identity to the comparison of C(n-s, .) ratio products that drives
the product-maximality argument.  Supporting margin lemmas (f, g, h, phi), a
chain of intermediate inequalities, and per-triple specialized polynomial
forms for the small (s,i,t) cases are all checked by pure integer arithmetic:
comparisons are cross-multiplied, never divided, and both algebraic forms of
every displayed quantity are computed and must agree.  Fractions appear only
in reported ratios.  Nothing here is floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd
from numbers import Rational
from typing import Callable, Iterator

from .errors import DomainError, IntegrityError, UsageError

EXCLUDED_TRIPLE = (6, 4, 3)

# margin lemma f fails (or is unproven) exactly on these triples
F_LEMMA_EXCLUSIONS = frozenset(
    {(8, 6, 5), (7, 5, 4), (8, 5, 3), (8, 4, 3), (7, 5, 3), (7, 4, 3), (6, 4, 3)}
)
# margin lemma g fails (or is unproven) exactly on these
G_LEMMA_EXCLUSIONS = frozenset({(7, 5, 3), (7, 4, 3), (6, 4, 3)})


@dataclass(frozen=True)
class SectionParams:
    """A grid point; construction validates the full domain, naming the first
    violated constraint.  t <= 2 is rejected at the type level: the margin
    lemmas are false there and no claim is made."""

    n: int
    k: int
    s: int
    i: int
    t: int

    def __post_init__(self) -> None:
        n, k, s, i, t = self.n, self.k, self.s, self.i, self.t
        for name, value in (("n", n), ("k", k), ("s", s), ("i", i), ("t", t)):
            if value < 1:
                raise DomainError(f"{name} must be a positive integer, got {value}")
        if t < 3:
            raise DomainError(f"t = {t} < 3: engine restricted to t >= 3")
        if n < (t + 1) * (k - t + 1):
            raise DomainError(
                f"n = {n} < (t+1)(k-t+1) = {(t + 1) * (k - t + 1)}"
            )
        if not t + 3 <= s <= 2 * k - t:
            raise DomainError(f"s = {s} outside [t+3, 2k-t] = [{t + 3}, {2 * k - t}]")
        lo, hi = max(t + 1, s + t - k), min(k, (s + t) // 2)
        if not lo <= i <= hi:
            raise DomainError(f"i = {i} outside [max(t+1, s+t-k), min(k, (s+t)/2)] = [{lo}, {hi}]")
        # consequences of the domain, kept as cheap sanity checks
        assert k >= t + 2 and 2 * i - t <= s <= k + i - t

    @property
    def triple(self) -> tuple[int, int, int]:
        return (self.s, self.i, self.t)


@dataclass(frozen=True)
class CoreQuantities:
    s1: int
    s2: int
    t1: int
    t2: int


def eval_core(p: SectionParams) -> CoreQuantities:
    """Both algebraic forms of S1, S2 evaluated and compared; positivity of all
    four quantities is asserted before they feed any comparison."""
    n, k, s, i, t = p.n, p.k, p.s, p.i, p.t
    s1_sum = i * (n - k - s + i + 1) + (s - i) * (n - s + 1)
    s1_prod = s * (n - s + 1) - i * (k - i)
    s2_sum = (s + t - i) * (n - k - i + t + 1) + (i - t) * (n - s + 1)
    s2_prod = s * (n - s + 1) - (s + t - i) * (k + i - s - t)
    if s1_sum != s1_prod or s2_sum != s2_prod:
        raise IntegrityError(
            f"algebraic forms disagree at {p}: S1 {s1_sum}/{s1_prod}, S2 {s2_sum}/{s2_prod}"
        )
    t1 = i * (n - k - s + i + 1) + (s - i) * (k - i + 1)
    t2 = (s + t - i) * (n - k - i + t + 1) + (i - t) * (k - s - t + i + 1)
    q = CoreQuantities(s1_sum, s2_sum, t1, t2)
    if min(q.s1, q.s2, q.t1, q.t2) <= 0:
        raise IntegrityError(f"core quantity not positive at {p}: {q}")
    return q


@dataclass(frozen=True)
class KeyIneqResult:
    status: str  # holds | violated | excluded
    num: int
    den: int

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.num, self.den)

    @property
    def strict(self) -> bool:
        return self.num > self.den


def check_key_inequality(p: SectionParams, q: CoreQuantities | None = None) -> KeyIneqResult:
    """The reduced form (*) at a grid point.  At the excluded triple (6,4,3)
    the exact ratio is still computed but the status is 'excluded'."""
    if q is None:
        q = eval_core(p)
    n, k, s, i, t = p.n, p.k, p.s, p.i, p.t
    num = (n + i - k - s) * (n + t - k - i) * q.s1 * q.s2
    den = (n - s + 1) ** 2 * q.t1 * q.t2
    if p.triple == EXCLUDED_TRIPLE:
        return KeyIneqResult("excluded", num, den)
    return KeyIneqResult("holds" if num > den else "violated", num, den)


def check_ratio_identity(p: SectionParams) -> bool:
    """The binomial reduction behind (*):

        C(n-s,k-i) C(n-s,k+i-s-t) (n+i-k-s)(n+t-k-i)
          == C(n-s,k-i+1) C(n-s,k+i+1-s-t) (k-i+1)(k+i+1-s-t),

    checked by cross-multiplied integers."""
    n, k, s, i, t = p.n, p.k, p.s, p.i, p.t
    m = n - s
    lhs = comb(m, k - i) * comb(m, k + i - s - t) * (n + i - k - s) * (n + t - k - i)
    rhs = comb(m, k - i + 1) * comb(m, k + i + 1 - s - t) * (k - i + 1) * (k + i + 1 - s - t)
    return lhs == rhs


@dataclass(frozen=True)
class LemmaResult:
    name: str
    slack: int
    status: str  # holds | violated | excluded


def _dual(p: SectionParams, name: str, primary: int, reduced: int) -> int:
    if primary != reduced:
        raise IntegrityError(
            f"{name} forms disagree at {p}: {primary} vs {reduced}"
        )
    return primary


def lemma_f(p: SectionParams, q: CoreQuantities) -> LemmaResult:
    """S1 + S2 - T1 - T2 >= s(2k-s-t+2) off the seven excluded triples."""
    n, k, s, i, t = p.n, p.k, p.s, p.i, p.t
    slack = _dual(
        p,
        "lemma_f",
        q.s1 + q.s2 - q.t1 - q.t2 - s * (2 * k - s - t + 2),
        (s - i) * (n + i - k - s) + (i - t) * (n + t - k - i) - s * (2 * k - s - t + 2),
    )
    if p.triple in F_LEMMA_EXCLUSIONS:
        return LemmaResult("lemma_f", slack, "excluded")
    return LemmaResult("lemma_f", slack, "holds" if slack >= 0 else "violated")


def lemma_g(p: SectionParams, q: CoreQuantities) -> LemmaResult:
    """S1 > T1 + s(k-i+1) off the three excluded triples."""
    n, k, s, i, t = p.n, p.k, p.s, p.i, p.t
    slack = _dual(
        p,
        "lemma_g",
        q.s1 - q.t1 - s * (k - i + 1),
        (s - i) * (n + i - k - s) - s * (k - i + 1),
    )
    if p.triple in G_LEMMA_EXCLUSIONS:
        return LemmaResult("lemma_g", slack, "excluded")
    return LemmaResult("lemma_g", slack, "holds" if slack > 0 else "violated")


def lemma_h(p: SectionParams, q: CoreQuantities) -> LemmaResult:
    """S2 > T1 + s(k+i-s-t+1) - (S2 - T2), no exclusions."""
    n, k, s, i, t = p.n, p.k, p.s, p.i, p.t
    slack = _dual(
        p,
        "lemma_h",
        2 * q.s2 - q.t1 - q.t2 - s * (k + i - s - t + 1),
        s * s + s * (n + 3 * t - 3 * k - i - 1) + i * (2 * k - 2 * i) - t * n,
    )
    return LemmaResult("lemma_h", slack, "holds" if slack > 0 else "violated")


def lemma_phi(p: SectionParams, q: CoreQuantities) -> LemmaResult:
    """T2 + s(k+i-s-t+1) <= s(n-s+1), no exclusions."""
    n, k, s, i, t = p.n, p.k, p.s, p.i, p.t
    slack = _dual(
        p,
        "lemma_phi",
        s * (n - s + 1) - q.t2 - s * (k + i - s - t + 1),
        (i - t) * (n - 2 * k + s + 2 * t - 2 * i) - s,
    )
    return LemmaResult("lemma_phi", slack, "holds" if slack >= 0 else "violated")


def chain_checks(p: SectionParams, q: CoreQuantities) -> tuple[bool, dict[str, str]]:
    """The intermediate strict/weak inequalities of the reduction chain.

    The chain only runs when its entry condition S2 - T2 < s(k+i-s-t+1) holds
    and the triple is outside the seven-exclusion list (otherwise the direct
    two-factor route, or a specialized form, is used); off that gate every
    check is reported 'skipped'.  Returns (entry condition, statuses)."""
    n, k, s, i, t = p.n, p.k, p.s, p.i, p.t
    x = s * (k + i - s - t + 1)
    y = s * (k - i + 1)
    entry = q.s2 - q.t2 < x
    names = ("equa1", "equac2", "st", "equac1", "equac3")
    if not entry or p.triple in F_LEMMA_EXCLUSIONS:
        return entry, {name: "skipped" for name in names}
    mid = q.t1 + x - (q.s2 - q.t2)
    results = {
        "equa1": (n - k - s + i) * q.s1 > (n - s + 1) * (q.s1 - y),
        "equac2": q.s1 - y >= mid,
        "st": mid < q.s2 < q.t2 + x,
        "equac1": mid * q.s2 > q.t1 * (q.t2 + x),
        "equac3": (n - k - i + t) * (q.t2 + x) >= (n - s + 1) * q.t2,
    }
    return entry, {name: "holds" if ok else "violated" for name, ok in results.items()}


# ---------------------------------------------------------------------------
# Specialized polynomial forms for the small (s,i,t) triples.  Each entry maps
# the triple to (k floor, numerator factors, denominator factors); the factors
# must reproduce the generic ratio exactly, which is enforced on every call.
# ---------------------------------------------------------------------------

_SPECIAL_FORMS: dict[
    tuple[int, int, int],
    tuple[int, Callable[[int, int], list[int]], Callable[[int, int], list[int]]],
] = {
    (8, 5, 3): (
        6,
        lambda n, k: [n - k - 3, n - k - 2, 8 * n - 5 * k - 31, 8 * n - 6 * k - 20],
        lambda n, k: [(n - 7) ** 2, 5 * n - 2 * k - 22, 6 * n - 4 * k - 16],
    ),
    (8, 4, 3): (
        7,
        lambda n, k: [n - k - 4, n - k - 1, 8 * n - 4 * k - 40, 8 * n - 7 * k - 7],
        lambda n, k: [(n - 7) ** 2, 4 * n - 24, 7 * n - 6 * k - 6],
    ),
    (7, 5, 4): (
        6,
        lambda n, k: [n - k - 2, n - k - 1, 7 * n - 5 * k - 17, 7 * n - 6 * k - 6],
        lambda n, k: [(n - 6) ** 2, 5 * n - 3 * k - 13, 6 * n - 5 * k - 5],
    ),
    (7, 5, 3): (
        5,
        lambda n, k: [(n - k - 2) ** 2, (7 * n - 5 * k - 17) ** 2],
        lambda n, k: [(n - 6) ** 2, (5 * n - 3 * k - 13) ** 2],
    ),
    (7, 4, 3): (
        6,
        lambda n, k: [n - k - 3, n - k - 1, 7 * n - 4 * k - 26, 7 * n - 6 * k - 6],
        lambda n, k: [(n - 6) ** 2, 4 * n - k - 17, 6 * n - 5 * k - 5],
    ),
    (8, 6, 5): (
        7,
        lambda n, k: [n - k - 2, n - k - 1, 8 * n - 6 * k - 20, 8 * n - 7 * k - 7],
        lambda n, k: [(n - 7) ** 2, 6 * n - 4 * k - 16, 7 * n - 6 * k - 6],
    ),
}

SPECIAL_TRIPLES = frozenset(_SPECIAL_FORMS)


@dataclass(frozen=True)
class AppendixResult:
    params: SectionParams
    num: int
    den: int
    status: str  # holds | violated

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.num, self.den)


def appendix_case(n: int, k: int, s: int, i: int, t: int) -> AppendixResult:
    """Specialized per-triple polynomial form of the key ratio.

    Valid only for the six listed triples with k >= s+t-i (which puts the
    point on the grid); the product of the specialized factors is checked
    against the generic ratio on every call."""
    triple = (s, i, t)
    if triple not in _SPECIAL_FORMS:
        raise DomainError(f"no specialized form for (s,i,t) = {triple}")
    k_floor, num_fn, den_fn = _SPECIAL_FORMS[triple]
    if k < k_floor:
        raise DomainError(f"specialized form needs k >= s+t-i = {k_floor}, got {k}")
    p = SectionParams(n, k, s, i, t)
    num = 1
    for factor in num_fn(n, k):
        num *= factor
    den = 1
    for factor in den_fn(n, k):
        den *= factor
    generic = check_key_inequality(p)
    if num * generic.den != generic.num * den:
        raise IntegrityError(
            f"specialized form for {triple} at (n,k)=({n},{k}) gives {num}/{den}, "
            f"generic gives {generic.num}/{generic.den}"
        )
    return AppendixResult(p, num, den, "holds" if num > den else "violated")


def key_ratio(n: int, k: int, s: int, i: int, t: int) -> Fraction:
    """The exact reduced ratio of (*) at a grid point."""
    p = SectionParams(n, k, s, i, t)
    res = check_key_inequality(p)
    return res.ratio


def basefact(a_val, b_val, a_inc, b_dec) -> tuple[bool, bool]:
    """Both sides of: (A+a)(B-b) < AB  iff  B/(A+a) < b/a, for positive
    rationals, each evaluated independently and exactly."""
    values = (a_val, b_val, a_inc, b_dec)
    for v in values:
        if not isinstance(v, (int, Rational)):
            raise UsageError(f"basefact needs exact numbers, got {type(v).__name__}")
        if v <= 0:
            raise DomainError(f"basefact needs positive values, got {v}")
    lhs = (a_val + a_inc) * (b_val - b_dec) < a_val * b_val
    rhs = Fraction(b_val, a_val + a_inc) < Fraction(b_dec, a_inc)
    return lhs, rhs


def eq2_applicable(m: int, j: int) -> bool:
    """Hypothesis of the 3x column-ratio step."""
    return m >= 4 * j


def eq2_holds(m: int, j: int) -> bool:
    """C(m,j) > 3 C(m,j-1); guaranteed when m >= 4j (ratio (m-j+1)/j > 3)."""
    if not 1 <= j <= m:
        raise DomainError(f"need 1 <= j <= m, got j={j}, m={m}")
    return comb(m, j) > 3 * comb(m, j - 1)


# ---------------------------------------------------------------------------
# Per-point records and grid sweeps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VerificationRecord:
    n: int
    k: int
    s: int
    i: int
    t: int
    t_num: int  # reduced key ratio numerator
    t_den: int
    checks: dict[str, str]
    values: dict[str, str]

    @property
    def point(self) -> tuple[int, int, int, int, int]:
        # canonical sweep order: (t, k, n, s, i)
        return (self.t, self.k, self.n, self.s, self.i)

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "s": self.s,
            "i": self.i,
            "t": self.t,
            "T_num": str(self.t_num),
            "T_den": str(self.t_den),
            "checks": dict(self.checks),
            "values": dict(self.values),
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "VerificationRecord":
        try:
            return cls(
                n=int(obj["n"]),
                k=int(obj["k"]),
                s=int(obj["s"]),
                i=int(obj["i"]),
                t=int(obj["t"]),
                t_num=int(obj["T_num"]),
                t_den=int(obj["T_den"]),
                checks={str(k): str(v) for k, v in obj["checks"].items()},
                values={str(k): str(v) for k, v in obj.get("values", {}).items()},
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise IntegrityError(f"malformed record object: {exc}") from None


def evaluate_point(p: SectionParams) -> VerificationRecord:
    """Every applicable check at one grid point, statuses plus exact values."""
    q = eval_core(p)
    key = check_key_inequality(p, q)
    g = gcd(key.num, key.den)
    checks: dict[str, str] = {"thm32": key.status}
    checks["ratio_identity"] = "holds" if check_ratio_identity(p) else "violated"
    values: dict[str, str] = {
        "S1": str(q.s1),
        "S2": str(q.s2),
        "T1": str(q.t1),
        "T2": str(q.t2),
    }
    for fn in (lemma_f, lemma_g, lemma_h, lemma_phi):
        res = fn(p, q)
        checks[res.name] = res.status
        values[res.name + "_slack"] = str(res.slack)
    entry, chain = chain_checks(p, q)
    values["equa3"] = "1" if entry else "0"
    checks.update(chain)
    if p.triple in SPECIAL_TRIPLES and p.k >= _SPECIAL_FORMS[p.triple][0]:
        appendix = appendix_case(p.n, p.k, p.s, p.i, p.t)
        checks["appendix"] = appendix.status
    else:
        checks["appendix"] = "skipped"
    return VerificationRecord(
        p.n, p.k, p.s, p.i, p.t, key.num // g, key.den // g, checks, values
    )


def iter_grid(
    t_lo: int, t_hi: int, k_span: int, n_span: int
) -> Iterator[SectionParams]:
    """Grid points in canonical (t, k, n, s, i) order: k in [t, t+k_span],
    n in [(t+1)(k-t+1), (t+1)(k-t+1)+n_span], then all valid (s, i)."""
    if t_lo < 3:
        raise DomainError(f"t = {t_lo} < 3: engine restricted to t >= 3")
    if t_hi < t_lo or k_span < 0 or n_span < 0:
        raise UsageError("empty sweep ranges")
    for t in range(t_lo, t_hi + 1):
        for k in range(t, t + k_span + 1):
            n_base = (t + 1) * (k - t + 1)
            for n in range(n_base, n_base + n_span + 1):
                for s in range(t + 3, 2 * k - t + 1):
                    lo, hi = max(t + 1, s + t - k), min(k, (s + t) // 2)
                    for i in range(lo, hi + 1):
                        yield SectionParams(n, k, s, i, t)


@dataclass
class SweepSummary:
    checked: int = 0
    clean: int = 0  # every evaluated check holds
    with_exclusion: int = 0  # at least one excluded status, none violated
    with_violation: int = 0
    violations: list[tuple[int, int, int, int, int, str]] = field(default_factory=list)
    status_counts: dict[str, dict[str, int]] = field(default_factory=dict)
    min_slack: dict[str, int] = field(default_factory=dict)
    last_point: tuple[int, int, int, int, int] | None = None

    VIOLATION_CAP = 1000

    def absorb(self, record: VerificationRecord) -> None:
        self.checked += 1
        self.last_point = record.point
        violated_here = []
        excluded_here = False
        for name, status in record.checks.items():
            bucket = self.status_counts.setdefault(name, {})
            bucket[status] = bucket.get(status, 0) + 1
            if status == "violated":
                violated_here.append(name)
            elif status == "excluded":
                excluded_here = True
        for name in ("lemma_f", "lemma_g", "lemma_h", "lemma_phi"):
            slack = int(record.values[name + "_slack"])
            if record.checks[name] != "excluded":
                if name not in self.min_slack or slack < self.min_slack[name]:
                    self.min_slack[name] = slack
        if violated_here:
            self.with_violation += 1
            if len(self.violations) < self.VIOLATION_CAP:
                self.violations.append(
                    (record.n, record.k, record.s, record.i, record.t, ",".join(violated_here))
                )
        elif excluded_here:
            self.with_exclusion += 1
        else:
            self.clean += 1

    def to_json_obj(self) -> dict:
        return {
            "checked": self.checked,
            "clean": self.clean,
            "with_exclusion": self.with_exclusion,
            "with_violation": self.with_violation,
            "violations": [list(v) for v in self.violations],
            "status_counts": self.status_counts,
            "min_slack": self.min_slack,
            "last_point": list(self.last_point) if self.last_point else None,
        }


def sweep(
    t_lo: int = 3,
    t_hi: int = 8,
    k_span: int = 12,
    n_span: int = 40,
    sink: Callable[[VerificationRecord], None] | None = None,
    resume_after: tuple[int, int, int, int, int] | None = None,
) -> SweepSummary:
    """Evaluate every grid point in canonical order, feeding records to sink.

    resume_after skips all points up to and including the given canonical
    (t, k, n, s, i) tuple, so a resumed run continues the same stream."""
    summary = SweepSummary()
    skipping = resume_after is not None
    for p in iter_grid(t_lo, t_hi, k_span, n_span):
        point = (p.t, p.k, p.n, p.s, p.i)
        if skipping:
            if point <= resume_after:
                continue
            skipping = False
        record = evaluate_point(p)
        summary.absorb(record)
        if sink is not None:
            sink(record)
    return summary
