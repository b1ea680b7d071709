"""Koszulness verdicts, the Poincare-Hilbert series identity, the flag
factorization of bigraded Poincare series, and verdict transfer between a
ring and its quotient by a flag member.

Every "iff" statement is downgraded to a bounded consistency check and all
reports carry their (i_max, d_max) bounds explicitly: acyclicity of the
linear part is not decidable by truncation alone.
"""

from __future__ import annotations

from dataclasses import dataclass

from .filtration import (
    FiltrationCertificate,
    LinearIdeal,
    verify_flag_chain,
    verify_koszul_filtration,
)
from .quotient import (
    GradedModule,
    cyclic_module,
    quotient_by_linear_forms,
    residue_field_module,
    restrict_module_to_quotient,
)
from .resolution import (
    BettiTable,
    betti_table,
    homology_dims,
    linear_part,
    resolve,
)


@dataclass(frozen=True)
class KoszulVerdict:
    """Bounded Koszulness verdict; a 'no' always carries a concrete witness."""

    verdict: str          # yes-up-to-bounds | no | inconclusive
    method: str           # betti-diagonal | linear-part-acyclic
    i_max: int
    d_max: int
    witness: tuple[int, int] | None = None

    @property
    def is_yes(self) -> bool:
        return self.verdict == "yes-up-to-bounds"

    @property
    def is_no(self) -> bool:
        return self.verdict == "no"

    def to_json(self) -> dict:
        out = {
            "verdict": self.verdict,
            "method": self.method,
            "bounds": {"imax": self.i_max, "dmax": self.d_max},
        }
        if self.witness is not None:
            out["witness"] = {"i": self.witness[0], "j": self.witness[1]}
        return out


def _generation_degree(module: GradedModule) -> int:
    degs = module.generation_degrees()
    if len(degs) > 1:
        raise ValueError(
            f"module generated in several degrees {degs}; Koszul verdicts "
            "require a single generation degree"
        )
    return degs[0] if degs else 0


def koszul_verdict(
    module: GradedModule,
    i_max: int,
    d_max: int,
    method: str = "betti-diagonal",
) -> KoszulVerdict:
    """Judge the module against the g-shifted diagonal (g = generation degree),
    by the Betti table or by acyclicity of the linear part of its resolution."""
    if method not in ("betti-diagonal", "linear-part-acyclic"):
        raise ValueError(f"unknown method {method!r}")
    g = _generation_degree(module)
    if module.is_zero():
        return KoszulVerdict("yes-up-to-bounds", method, i_max, d_max)
    if i_max < 1 or d_max < g + 1:
        return KoszulVerdict("inconclusive", method, i_max, d_max)

    res = resolve(module, i_max, d_max)
    if method == "betti-diagonal":
        table = betti_table(res)
        off = sorted((i, j) for (i, j) in table.entries if j != i + g)
        if off:
            return KoszulVerdict("no", method, i_max, d_max, witness=off[0])
        return KoszulVerdict("yes-up-to-bounds", method, i_max, d_max)

    if i_max < 2:
        return KoszulVerdict("inconclusive", method, i_max, d_max)
    lin = linear_part(res)
    for i in range(1, i_max):
        for d in range(g, d_max + 1):
            if homology_dims(lin, i, d) > 0:
                return KoszulVerdict("no", method, i_max, d_max, witness=(i, d))
    return KoszulVerdict("yes-up-to-bounds", method, i_max, d_max)


# ------------------------------------------------------ Poincare-Hilbert


@dataclass(frozen=True)
class PoincareHilbertResult:
    """Comparison of total Betti numbers against H_M(-t)/H_R(-t)."""

    holds: bool
    checked_to: int
    fail_degree: int | None
    lhs: tuple[int, ...]
    rhs: tuple[int, ...]

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "checked_to": self.checked_to,
            "fail_degree": self.fail_degree,
            "lhs": list(self.lhs),
            "rhs": list(self.rhs),
        }


def _signed_series(coeffs: list[int]) -> list[int]:
    return [c if d % 2 == 0 else -c for d, c in enumerate(coeffs)]


def _series_divide(num: list[int], den: list[int], d_max: int) -> list[int]:
    """Truncated power-series division; den must have constant term +-1."""
    c0 = den[0]
    if abs(c0) != 1:
        raise ValueError("division requires a unit constant term")
    out = []
    for d in range(d_max + 1):
        acc = num[d] if d < len(num) else 0
        for k in range(1, d + 1):
            dk = den[k] if k < len(den) else 0
            acc -= dk * out[d - k]
        out.append(acc * c0)
    return out


def poincare_hilbert_check(
    module: GradedModule, expand_to: int, d_max: int | None = None
) -> PoincareHilbertResult:
    """Compare sum beta_i t^i with the expansion of H_M(-t)/H_R(-t) to degree D.

    Equality to all orders characterizes Koszulness; the op is a bounded
    numerical semi-test.
    """
    g = _generation_degree(module)
    d = expand_to
    if d_max is None:
        d_max = max(8, d + g + 1)
    ring = module.ring
    if module.is_zero():
        zero = tuple(0 for _ in range(d + 1))
        return PoincareHilbertResult(True, d, None, zero, zero)
    res = resolve(module, max(d, 1), d_max)
    table = betti_table(res)
    lhs = [table.total(i) for i in range(d + 1)]

    hm = module.hilbert_series(d + g)
    hr = ring.hilbert_series(d + g)
    # normalize to generation degree 0: m'_e = dim M_{e+g}
    m_norm = [hm.coefficient(e + g) for e in range(d + 1)]
    rhs = _series_divide(
        _signed_series(m_norm), _signed_series(list(hr.expansion[: d + 1])), d
    )
    fail = None
    for e in range(d + 1):
        if lhs[e] != rhs[e]:
            fail = e
            break
    return PoincareHilbertResult(
        fail is None, d, fail, tuple(lhs), tuple(rhs)
    )


# ------------------------------------------------------- flag factorization


@dataclass(frozen=True)
class FlagData:
    """A verified-on-use chain through a Koszul filtration certificate."""

    certificate: FiltrationCertificate
    chain: tuple[int, ...]   # member indices, increasing dims, ending at m
    r: int                   # position in the chain whose member kills M

    def member(self) -> LinearIdeal:
        return self.certificate.members[self.chain[self.r]]


def _check_flag_data(module: GradedModule, flag_data: FlagData) -> LinearIdeal:
    ring = module.ring
    ok = verify_koszul_filtration(ring, flag_data.certificate)
    if not ok:
        raise ValueError(f"filtration certificate is invalid: {ok.reason}")
    ok = verify_flag_chain(ring, flag_data.certificate, flag_data.chain)
    if not ok:
        raise ValueError(f"flag chain is invalid: {ok.reason}")
    if not (0 <= flag_data.r < len(flag_data.chain)):
        raise ValueError("chain index r out of range")
    ideal = flag_data.member()
    for row in ideal.rows:
        if not module.annihilated_by(ring.linear_form(row)):
            raise ValueError(
                f"module is not annihilated by the flag member (form {row})"
            )
    return ideal


@dataclass(frozen=True)
class FactorizationResult:
    holds: bool
    witness: tuple[int, int] | None
    lhs: BettiTable
    factor_over_quotient: BettiTable
    factor_of_quotient: BettiTable

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict:
        out = {
            "holds": self.holds,
            "tables": {
                "module_over_ring": self.lhs.to_json(),
                "module_over_quotient": self.factor_over_quotient.to_json(),
                "quotient_over_ring": self.factor_of_quotient.to_json(),
            },
        }
        if self.witness is not None:
            out["witness"] = {"i": self.witness[0], "j": self.witness[1]}
        return out


def check_factorization(
    module: GradedModule, flag_data: FlagData, i_max: int, d_max: int
) -> FactorizationResult:
    """Coefficient-wise check of the bigraded identity
    P(M over R) = P(M over R/I_r) * P(R/I_r over R) within the window."""
    ring = module.ring
    ideal = _check_flag_data(module, flag_data)
    t_module = betti_table(resolve(module, i_max, d_max))
    elim = quotient_by_linear_forms(ring, ideal.rows)
    restricted = restrict_module_to_quotient(module, elim)
    t_over_quot = betti_table(resolve(restricted, i_max, d_max))
    quot_module = cyclic_module(ring, ideal.forms(ring))
    t_quot = betti_table(resolve(quot_module, i_max, d_max))

    witness = None
    for i in range(i_max + 1):
        for j in range(d_max + 1):
            acc = 0
            for i1 in range(i + 1):
                for j1 in range(j + 1):
                    acc += t_over_quot.beta(i1, j1) * t_quot.beta(i - i1, j - j1)
            if acc != t_module.beta(i, j):
                witness = (i, j)
                break
        if witness:
            break
    return FactorizationResult(witness is None, witness, t_module, t_over_quot, t_quot)


@dataclass(frozen=True)
class TransferResult:
    consistent: bool
    verdict_over_ring: KoszulVerdict
    verdict_over_quotient: KoszulVerdict

    def __bool__(self) -> bool:
        return self.consistent

    def to_json(self) -> dict:
        return {
            "consistent": self.consistent,
            "over_ring": self.verdict_over_ring.to_json(),
            "over_quotient": self.verdict_over_quotient.to_json(),
        }


def verdict_transfer_check(
    module: GradedModule,
    flag_data: FlagData,
    i_max: int,
    d_max: int,
    method: str = "betti-diagonal",
) -> TransferResult:
    """Koszul verdicts of M over R and over R/I_r must agree (both bounded)."""
    ring = module.ring
    ideal = _check_flag_data(module, flag_data)
    over_ring = koszul_verdict(module, i_max, d_max, method)
    elim = quotient_by_linear_forms(ring, ideal.rows)
    restricted = restrict_module_to_quotient(module, elim)
    over_quot = koszul_verdict(restricted, i_max, d_max, method)
    consistent = over_ring.verdict == over_quot.verdict
    return TransferResult(consistent, over_ring, over_quot)


def ring_koszul_verdict(ring, i_max: int, d_max: int, method: str = "betti-diagonal") -> KoszulVerdict:
    """Koszulness of the ring itself: the verdict for its residue field."""
    return koszul_verdict(residue_field_module(ring), i_max, d_max, method)
