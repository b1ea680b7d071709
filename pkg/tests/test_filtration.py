"""Certificates: Koszul filtrations, Groebner flags, Conca generators,
the Fitzgerald condition, reductions and their verifiers."""

import random

import pytest

from koszulkit.arith import polynomial_ring
from koszulkit.filtration import (
    BudgetExceededError,
    FiltrationCertificate,
    FiltrationWitness,
    FlagCertificate,
    LinearIdeal,
    all_linear_ideals_filtration,
    check_conca_generator,
    check_fitzgerald,
    check_reduction,
    conca_flag,
    count_subspaces,
    enumerate_subspaces,
    minimal_multiplicity_flag,
    search_groebner_flag,
    subsets_filtration,
    verify_flag_chain,
    verify_groebner_flag,
    verify_koszul_filtration,
    _ideal_gb,
)
from koszulkit.groebner import buchberger
from koszulkit.koszul import koszul_verdict
from koszulkit.quotient import cyclic_module, make_ring


# ----------------------------------------------------------- linear ideals


def test_echelon_canonicalization_matches_gb_equality(ci2):
    # subspace equality in echelon form agrees with Groebner equality of the
    # generated ideals, over 100 seeded random subspace pairs
    rng = random.Random(42)
    p, n = ci2.p, ci2.nvars
    for _ in range(100):
        vecs_a = [[rng.randrange(p) for _ in range(n)] for _ in range(rng.randint(0, 2))]
        vecs_b = [[rng.randrange(p) for _ in range(n)] for _ in range(rng.randint(0, 2))]
        a = LinearIdeal.from_vectors(vecs_a, n, p)
        b = LinearIdeal.from_vectors(vecs_b, n, p)
        assert (a.rows == b.rows) == (_ideal_gb(ci2, a) == _ideal_gb(ci2, b))


def test_subspace_enumeration_counts():
    assert count_subspaces(2, 5) == 8
    assert count_subspaces(3, 3) == 28
    assert len(enumerate_subspaces(2, 5)) == 8
    assert len(enumerate_subspaces(3, 3)) == 28
    with pytest.raises(BudgetExceededError):
        enumerate_subspaces(4, 5, cap=100)


# ------------------------------------------------------- filtration verify


def test_subsets_filtration_crv_valid(crv26):
    cert = subsets_filtration(crv26)
    assert len(cert.members) == 8
    assert verify_koszul_filtration(crv26, cert).valid
    # the documented witness: (x) : (x,y) via g = y equals (x,z)
    x_i = next(i for i, m in enumerate(cert.members) if m.rows == ((1, 0, 0),))
    xy_i = next(
        i for i, m in enumerate(cert.members)
        if m.rows == ((1, 0, 0), (0, 1, 0))
    )
    xz_rows = ((1, 0, 0), (0, 0, 1))
    w = next(w for w in cert.witnesses if w.member == xy_i)
    assert w.sub == x_i
    assert cert.members[w.colon].rows == xz_rows


def test_subsets_mispointed_witness_invalid(crv26):
    cert = subsets_filtration(crv26)
    bad = []
    for w in cert.witnesses:
        if cert.members[w.member].rows == ((1, 0, 0), (0, 1, 0)):
            wrong = (w.colon + 1) % len(cert.members)
            bad.append(FiltrationWitness(w.member, w.sub, w.g, wrong))
        else:
            bad.append(w)
    broken = FiltrationCertificate(cert.members, tuple(bad))
    result = verify_koszul_filtration(crv26, broken)
    assert not result.valid
    assert "colon" in result.reason


def test_subsets_requires_quadratic_monomials(mm1, ci2):
    cert = subsets_filtration(ci2)  # x^2, y^2 are quadratic monomials
    assert verify_koszul_filtration(ci2, cert).valid
    s, (x, y) = polynomial_ring(5, ("x", "y"))
    ring = make_ring(s, [x**2 + y**2])
    with pytest.raises(ValueError, match="quadratic monomials"):
        subsets_filtration(ring)


def test_minimal_filtration_on_dual_numbers():
    s, (x,) = polynomial_ring(5, ("x",))
    ring = make_ring(s, [x**2])
    members = (LinearIdeal.zero(), LinearIdeal.full(1))
    witnesses = (FiltrationWitness(1, 0, (1,), 1),)  # (0):(x) = (x) = m
    cert = FiltrationCertificate(members, witnesses)
    assert verify_koszul_filtration(ring, cert).valid


def test_filtration_must_contain_zero_and_m(ci2):
    members = (LinearIdeal.full(2),)
    cert = FiltrationCertificate(members, ())
    r = verify_koszul_filtration(ci2, cert)
    assert not r.valid and "zero ideal" in r.reason


def test_fit_lin_consequence_member_quotients_linear(ci2, crv26):
    # every member quotient R/I of a valid certificate is Koszul at (4, 6)
    for ring, cert in (
        (ci2, all_linear_ideals_filtration(ci2)),
        (crv26, subsets_filtration(crv26)),
    ):
        for member in cert.members:
            m = cyclic_module(ring, member.forms(ring))
            if m.is_zero():
                continue
            assert koszul_verdict(m, 4, 6).is_yes


# ------------------------------------------------------------ flag verify


def test_flag_ci2(ci2):
    flag = FlagCertificate(((1, 0), (0, 1)), (1, 2))
    assert verify_groebner_flag(ci2, flag).valid


def test_flag_mm1(mm1):
    flag = FlagCertificate(((1, 0), (0, 1)), (0, 2))
    assert verify_groebner_flag(mm1, flag).valid


def test_flag_negative_control(mm1):
    # (0) : y = (y) over k[x,y]/(y^2), not the empty prefix
    flag = FlagCertificate(((0, 1), (1, 0)), (0, 2))
    result = verify_groebner_flag(mm1, flag)
    assert not result.valid and result.failing_index == 1


def test_flag_dependent_forms(ci2):
    flag = FlagCertificate(((1, 0), (2, 0)), (1, 2))
    result = verify_groebner_flag(ci2, flag)
    assert not result.valid and "dependent" in result.reason


def test_flag_chain_verification(ci2):
    cert = all_linear_ideals_filtration(ci2)
    zero_i = next(i for i, m in enumerate(cert.members) if m.dim == 0)
    x_i = next(i for i, m in enumerate(cert.members) if m.rows == ((1, 0),))
    m_i = next(i for i, m in enumerate(cert.members) if m.dim == 2)
    assert verify_flag_chain(ci2, cert, (zero_i, x_i, m_i)).valid
    r = verify_flag_chain(ci2, cert, (zero_i, x_i))
    assert not r.valid and "maximal" in r.reason


# ------------------------------------------------------------- flag search


def test_search_finds_flag_ci2_f3():
    s, (x, y) = polynomial_ring(3, ("x", "y"))
    ring = make_ring(s, [x**2, y**2])
    result = search_groebner_flag(ring, 200)
    assert result.certificate is not None
    assert verify_groebner_flag(ring, result.certificate).valid


def test_search_exhausts_crv26_char2():
    # the expected negative is confirmed by the exhaustive search itself
    s, (x, y, z) = polynomial_ring(2, ("x", "y", "z"))
    ring = make_ring(s, [x**2, x * y, y * z, z**2])
    result = search_groebner_flag(ring, 200)
    assert result.certificate is None
    assert result.exhausted
    assert result.candidates_tested > 0


def test_search_trivial_polynomial_ring():
    s, (x,) = polynomial_ring(3, ("x",))
    ring = make_ring(s, [])
    result = search_groebner_flag(ring, 10)
    assert result.certificate is not None
    assert result.certificate.forms == ((1,),)
    assert result.certificate.colon_indices == (0,)


def test_search_budget():
    s, (x, y, z) = polynomial_ring(5, ("x", "y", "z"))
    ring = make_ring(s, [x * y, y * z])
    with pytest.raises(BudgetExceededError):
        search_groebner_flag(ring, 2)
    s7, _ = polynomial_ring(7, ("x", "y"))
    ring7 = make_ring(s7, [s7.gen(0) ** 2])
    with pytest.raises(BudgetExceededError):
        search_groebner_flag(ring7, 100)


# --------------------------------------------------------------- conca


def test_conca_examples(ci2, nk3):
    assert check_conca_generator(ci2, (1, 0)).is_conca
    r = check_conca_generator(ci2, (1, 1))
    assert not r.is_conca and r.failed_clause == "x^2 != 0"
    r2 = check_conca_generator(nk3, (1,))
    assert not r2.is_conca and r2.failed_clause == "x^2 != 0"
    r3 = check_conca_generator(ci2, (0, 0))
    assert not r3.is_conca and "x = 0" in r3.failed_clause


def test_conca_flag_ci2(ci2):
    cert = conca_flag(ci2, (1, 0))
    assert cert.forms[0] == (1, 0)
    assert verify_groebner_flag(ci2, cert).valid


def test_conca_flag_fitz3(fitz3):
    # z is a Conca generator: z^2 = 0 and z*R_1 = span{xz, yz} = R_2
    assert check_conca_generator(fitz3, (0, 0, 1)).is_conca
    cert = conca_flag(fitz3, (0, 0, 1))
    assert cert.forms[0] == (0, 0, 1)
    assert verify_groebner_flag(fitz3, cert).valid


def test_conca_flag_rejects_non_conca(ci2):
    with pytest.raises(ValueError, match="not a Conca generator"):
        conca_flag(ci2, (1, 1))


# ------------------------------------------------------------ fitzgerald


def test_fitzgerald_ci2_exhaustive(ci2):
    r = check_fitzgerald(ci2)
    assert r.holds and r.forms_checked == 6  # (5^2-1)/4 lines over F_5


def test_fitzgerald_fitz3(fitz3):
    r = check_fitzgerald(fitz3)
    assert r.holds and r.forms_checked == 13  # (3^3-1)/2 lines over F_3


def test_fitzgerald_nk3_witness(nk3):
    r = check_fitzgerald(nk3)
    assert not r.holds and r.witness == (1,)


def test_fitzgerald_budget(crv26):
    with pytest.raises(BudgetExceededError):
        check_fitzgerald(crv26, max_forms=10)


def test_all_linear_ci2(ci2):
    cert = all_linear_ideals_filtration(ci2)
    assert len(cert.members) == 8  # 1 + 6 + 1 subspaces of F_5^2
    assert verify_koszul_filtration(ci2, cert).valid


def test_all_linear_fitz3(fitz3):
    cert = all_linear_ideals_filtration(fitz3)
    assert len(cert.members) == 28  # 1 + 13 + 13 + 1 subspaces of F_3^3
    assert verify_koszul_filtration(fitz3, cert).valid


def test_all_linear_requires_fitzgerald(nk3):
    with pytest.raises(ValueError, match="annihilator condition"):
        all_linear_ideals_filtration(nk3)


# ------------------------------------------------------ minimal multiplicity


def test_reduction_mm1(mm1):
    r = check_reduction(mm1, [(1, 0)], 6)
    assert r.holds
    assert r.reduction_ok and r.failing_degree is None
    assert r.regular_sequence_ok
    assert r.is_minimal_multiplicity
    assert (r.multiplicity, r.codim) == (2, 1)


def test_reduction_ci2_mixed_verdict(ci2):
    # x*R_d = R_{d+1} holds but x is a zerodivisor: mixed verdict
    r = check_reduction(ci2, [(1, 0)], 4)
    assert r.reduction_ok
    assert not r.regular_sequence_ok
    assert not r.holds


def test_reduction_trivial_on_squarezero_ring():
    s, (x, y) = polynomial_ring(5, ("x", "y"))
    ring = make_ring(s, [x**2, x * y, y**2])  # m^2 = 0
    r = check_reduction(ring, [(1, 0), (0, 1)], 1)
    assert r.reduction_ok  # J*R_1 = 0 = R_2 trivially


def test_minmult_flag_mm1(mm1):
    cert = minimal_multiplicity_flag(mm1, [(1, 0)])
    assert cert.forms == ((1, 0), (0, 1))
    assert cert.colon_indices == (0, 2)
    assert verify_groebner_flag(mm1, cert).valid


def test_minmult_flag_degenerate_polynomial_ring():
    # J = all of R_1 on a polynomial ring: every colon is the previous prefix
    s, (x, y) = polynomial_ring(5, ("x", "y"))
    ring = make_ring(s, [])
    cert = minimal_multiplicity_flag(ring, [(1, 0), (0, 1)])
    assert cert.colon_indices == (0, 1)
    assert verify_groebner_flag(ring, cert).valid


def test_minmult_flag_rejects_failing_ring(ci2):
    with pytest.raises(ValueError, match="reduction checks failed"):
        minimal_multiplicity_flag(ci2, [(1, 0)])


# --------------------------------------------------------------- JSON


def test_certificate_json_round_trip(ci2):
    cert = all_linear_ideals_filtration(ci2)
    doc = cert.to_json()
    assert doc["kind"] == "filtration"
    back = FiltrationCertificate.from_json(doc)
    assert back.to_json() == doc
    flag = conca_flag(ci2, (1, 0))
    fdoc = flag.to_json()
    assert FlagCertificate.from_json(fdoc).to_json() == fdoc


def test_flag_as_filtration(ci2):
    flag = conca_flag(ci2, (1, 0))
    cert = flag.as_filtration(ci2.nvars, ci2.p)
    assert verify_koszul_filtration(ci2, cert).valid
