import pytest

from fermatdeg.algebra import CyclotomicElement, euler_phi
from fermatdeg.cm import units
from fermatdeg.errors import BoundExceeded, CongruenceViolation, NotSplit
from fermatdeg.frobenius.jacobi import (
    factor_degrees,
    frobenius_polynomial,
    frobenius_root,
    jacobi_sum,
    jacobi_sums,
    trace_over_extension,
)
from fermatdeg.frobenius.primes import primes_in_range, primitive_root
from fermatdeg.frobenius.stickelberger import (
    evaluate_relation,
    stickelberger_oracle,
    stickelberger_valuations,
    torsion_free_test,
)
from fermatdeg.frobenius.sweep import normalized_power, numerical_moments, trace_sweep
from fermatdeg.frobenius.traces import fast_trace, point_count_trace, weil_bound_ok


def _naive_trace(m, p):
    # Euler's criterion on every x, no shared machinery
    t = 0
    for x in range(p):
        y = (pow(x, m, p) - 1) % p
        if y:
            t -= 1 if pow(y, (p - 1) // 2, p) == 1 else -1
    return t


def _good(m, bound):
    return [p for p in primes_in_range(3, bound) if m % p]


def test_point_count_examples():
    assert point_count_trace(3, 5) == 0
    assert point_count_trace(3, 7) == 4
    assert point_count_trace(9, 19) == _naive_trace(9, 19) == -8


def test_point_count_bound():
    with pytest.raises(BoundExceeded):
        point_count_trace(3, 10 ** 6 + 3)


@pytest.mark.parametrize("m", [3, 5, 7, 9, 15, 21])
def test_fast_trace_matches_naive(m):
    for p in _good(m, 400):
        assert fast_trace(m, p) == _naive_trace(m, p) == point_count_trace(m, p)


def test_fast_trace_matches_brute_force_larger():
    for p in _good(15, 3000)[::7]:
        assert fast_trace(15, p) == point_count_trace(15, p)


@pytest.mark.parametrize("m", [3, 9, 15])
def test_jacobi_norms(m):
    for p in [p for p in primes_in_range(3, 200) if p % m == 1][:5]:
        for J in jacobi_sums(m, p):
            assert J.check_norm()
            assert J.value.is_integral()


def test_jacobi_trace_identity():
    J = jacobi_sums(3, 7)
    s = J[0].value + J[1].value
    # t_p = -chi_2(-1) * sum J; chi_2(-1) = -1 for p = 7
    assert s.rational_value() == 4 == point_count_trace(3, 7)
    roots = [frobenius_root(j) for j in jacobi_sums(9, 19)]
    total = CyclotomicElement.zero(9)
    for b in roots:
        total = total + b
    assert total.rational_value() == point_count_trace(9, 19)


def test_jacobi_errors():
    with pytest.raises(CongruenceViolation):
        jacobi_sums(9, 23)
    with pytest.raises(CongruenceViolation):
        jacobi_sum(9, 19, 9)


@pytest.mark.parametrize("m", [3, 5, 9, 15])
def test_oracle_equivalence(m):
    for p in _good(m, 50):
        assert trace_over_extension(m, p, 1) == point_count_trace(m, p)
        assert trace_over_extension(m, p, 2) == point_count_trace(m, p * p)


@pytest.mark.parametrize("m,p", [(9, 19), (9, 5), (15, 31), (15, 7), (21, 43), (27, 109), (5, 3)])
def test_frobenius_polynomial(m, p):
    F = frobenius_polynomial(m, p)
    c = F.polynomial
    g = (m - 1) // 2
    assert len(c) == 2 * g + 1 and c[-1] == 1
    assert F.functional_equation_holds()
    assert F.trace == point_count_trace(m, p)
    # power sums from Newton: p_2 = e_1^2 - 2 e_2
    e1, e2 = -c[2 * g - 1], c[2 * g - 2]
    if p * p <= 10 ** 6:
        assert e1 * e1 - 2 * e2 == point_count_trace(m, p * p)


def test_split_factor_shapes():
    assert factor_degrees(frobenius_polynomial(9, 19).polynomial) == [2, 6]
    assert factor_degrees(frobenius_polynomial(15, 31).polynomial) == [2, 4, 8]


def test_stickelberger_m15_p31():
    J = jacobi_sums(15, 31)
    V = stickelberger_valuations(J)
    us = units(15)
    for i, t in enumerate(us):
        for j, a in enumerate(range(1, 15)):
            assert V[i, j] == stickelberger_oracle(15, t, a)
    # column sums and the conjugation symmetry
    for j in range(V.ncols):
        assert sum(V.col(j)) == euler_phi(15) // 2
    for i, t in enumerate(us):
        k = us.index(15 - t)
        assert all(V[i, j] + V[k, j] == 1 for j in range(V.ncols))


def test_stickelberger_requires_split():
    with pytest.raises(NotSplit):
        torsion_free_test(15, 37)


def test_torsion_test_witnesses():
    seen_witness = False
    for p in [p for p in primes_in_range(3, 2000) if p % 15 == 1]:
        r = torsion_free_test(15, p)
        assert r == torsion_free_test(15, p)
        if not r.torsion_free:
            seen_witness = True
            val = evaluate_relation(15, p, r.witness_relation)
            ru = val.signed_root_of_unity()
            assert ru is not None and ru != (1, 0)
    assert seen_witness


def test_m9_always_torsion_free():
    for p in [p for p in primes_in_range(3, 3000) if p % 9 == 1]:
        assert torsion_free_test(9, p).torsion_free


def test_weil_bound_on_sweep():
    for m in (9, 15, 21):
        for p, t in trace_sweep(m, 5000).items():
            assert weil_bound_ok(t, m, p)
    assert not weil_bound_ok(100, 3, 7)


def test_sweep_partition_invariance():
    a = numerical_moments(15, 20000, "ALL", 6, partition=1 << 12)
    b = numerical_moments(15, 20000, "ALL", 6, partition=1 << 16)
    c = numerical_moments(15, 20000, "ALL", 6, workers=2, partition=1 << 13)
    assert a.moments == b.moments == c.moments


def test_normalized_power():
    assert normalized_power(4, 7, 2) == 16 / 7
    assert abs(normalized_power(-3, 5, 3) + 27 / 5 ** 1.5) < 1e-15


def test_primitive_root_convention():
    assert [primitive_root(p) for p in (7, 19, 31, 41)] == [3, 2, 3, 6]
