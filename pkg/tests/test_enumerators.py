import math
from fractions import Fraction

import numpy as np
import pytest

from oracles import TABLE1, TABLE1_BY_N, lubkin, random_isometry, random_projector
from oracles import shor_laflamme_dense
from qment import enumerators as en
from qment import gf4
from qment import stabilizer as st
from qment import states as sv


def projector_of(name, signs=None):
    return st.code_projector(st.stabilizer_from_code(gf4.builtin(name), signs))


def five_one_three():
    code = gf4.from_generators(["w W W w 0", "0 w W W w", "w 0 w W W", "W w 0 w W"])
    return st.code_projector(st.stabilizer_from_code(code))


@pytest.mark.parametrize("D,n,K", [(2, 2, 1), (2, 3, 2), (3, 2, 2), (2, 4, 5)])
def test_shor_laflamme_against_dense_oracle(D, n, K, rng):
    P = random_projector(D**n, K, rng)
    A0, B0 = shor_laflamme_dense(P, D, n)
    for A, B in (en.shor_laflamme(P, K, D, n), en.shor_laflamme_naive(P, K, D, n)):
        assert np.allclose(A, A0, atol=1e-10) and np.allclose(B, B0, atol=1e-10)


def test_shor_laflamme_examples():
    g = sv.ghz(2, 2).amplitudes
    A, B = en.shor_laflamme(np.outer(g, g.conj()), 1, 2, 2)
    assert np.allclose(A, [1, 0, 3]) and np.allclose(B, A)
    A, _ = en.shor_laflamme(np.eye(8), 8, 2, 3)
    assert np.allclose(A, [1, 0, 0, 0])
    A, _ = en.shor_laflamme(projector_of("hexacode"), 1, 2, 6)
    assert np.allclose(A, TABLE1_BY_N[6][2])
    with pytest.raises(ValueError):
        en.shor_laflamme(np.diag([1, 0.5, 0, 0]), 1, 2, 2)
    with pytest.raises(ValueError):
        en.shor_laflamme(np.eye(2**8), 2**8, 2, 8)


def test_rains_examples(rng):
    psi = sv.random_state(2, 4, rng)
    P = np.outer(psi.amplitudes, psi.amplitudes.conj())
    Ap, _ = en.rains_unitary(P, 1, 2, 4)
    for m in (1, 2):
        total = math.fsum(sv.purity(psi, S) for S in sv.subsets(4, m))
        assert np.isclose(Ap[m], total)
    Ap, _ = en.rains_unitary(projector_of("hexacode"), 1, 2, 6)
    assert np.isclose(Ap[3], 2.5)
    n, D = 4, 2
    Ap, _ = en.rains_unitary(np.eye(D**n), D**n, D, n)
    assert np.allclose(Ap, [math.comb(n, i) / D**i for i in range(n + 1)])
    assert np.allclose(Ap, [float(a) for a in en.primed_from_unprimed([1, 0, 0, 0, 0], D, n)])


def test_primed_from_unprimed_examples():
    n, D = 6, 2
    assert en.primed_from_unprimed([1] + [0] * n, D, n)[3] == Fraction(math.comb(6, 3), 8)
    assert en.primed_from_unprimed(list(TABLE1_BY_N[6][2]), 2, 6)[3] == Fraction(5, 2)
    Ap = en.primed_from_unprimed([1, 0, 6, 0, 9], 2, 4)
    Q2 = Fraction(4, 3) * (1 - Fraction(math.factorial(2) ** 2, math.factorial(4)) * Ap[2])
    assert Q2 == Fraction(2, 3)


def test_qm_from_weights_examples():
    assert en.qm_from_weights([1, 0, 6, 0, 9], 2, 4, 2) == Fraction(2, 3)
    assert en.qm_from_weights(list(TABLE1[-1][2]), 2, 13, 6) == Fraction(26938, 27027)
    assert en.qm_from_weights([1, 0, 0, 0, 45, 0, 18], 2, 6, 3) == 1
    assert isinstance(en.qm_from_weights([1.0, 0.0, 6.0, 0.0, 9.0], 2, 4, 2), float)
    with pytest.raises(ValueError):
        en.qm_from_weights([2, 0, 6, 0, 9], 2, 4, 2)


def test_table1_rows_both_expressions_exact():
    for n, _, A, Q in TABLE1:
        for m, printed in enumerate(Q, start=1):
            assert en.qm_from_weights(list(A), 2, n, m) == Fraction(printed)


def test_min_distance_and_purity():
    for name, d in [("hexacode", 4), ("epr2", 2), ("short5", 3), ("triad3", 2)]:
        n = gf4.builtin(name).n
        assert en.min_distance_and_purity(en.enumerate_projector(projector_of(name), 2, n)) == (d, True)
    full = en.enumerate_projector(np.eye(8), 2, 3)
    assert en.min_distance_and_purity(full) == (1, False)
    # [[5,1,3]]: K = 2, distance 3, pure
    e = en.enumerate_projector(five_one_three(), 2, 5)
    assert e.K == 2 and en.min_distance_and_purity(e) == (3, True)


def test_enumerator_set_invariants(rng):
    for trial in range(8):
        n = 3 + trial % 2
        K = 1 + trial
        e = en.enumerate_projector(random_projector(2**n, K, rng), 2, n)
        assert e.check() == []
    rep = en.enumerate_projector(projector_of("hexacode"), 2, 6).report()
    assert set(rep) == {"n", "D", "K", "A", "B", "A_primed", "B_primed", "d", "pure", "Q"}
    assert rep["d"] == 4 and rep["pure"] and np.allclose(rep["Q"], 1)


def test_subspace_average_examples(rng):
    for D, n_max in [(2, 6), (3, 4)]:
        for n in range(2, n_max + 1):
            for m in range(1, n // 2 + 1):
                got = en.subspace_average_qm(np.eye(D**n), D, n, m)
                assert abs(got - float(lubkin(D, n, m))) < 1e-12
    assert np.isclose(en.subspace_average_qm(projector_of("hexacode"), 2, 6, 3), 1, atol=1e-12)
    B = random_isometry(16, 3, rng)
    P = B @ B.conj().T
    q = sv.batch_q_m(sv.haar_states_in_subspace(B, 4000, rng), 2, 4, 1)
    assert abs(q.mean() - en.subspace_average_qm(P, 2, 4, 1)) < 5 * q.std(ddof=1) / math.sqrt(q.size)


def test_code_average_routes(rng):
    # K = 1: code average equals the pure-state weight formula
    for n, _, A, _ in TABLE1[:10]:
        for m in range(1, n // 2 + 1):
            assert en.code_average_qm(list(A), list(A), 1, 2, n, m) == en.qm_from_weights(list(A), 2, n, m)
    P = five_one_three()
    e = en.enumerate_projector(P, 2, 5)
    B = np.linalg.eigh(P)[1][:, -2:]
    for m in (1, 2):
        avg = en.code_average_qm(e.A, e.B, 2, 2, 5, m)
        assert np.isclose(avg, en.code_average_qm_primed(e.A_primed, e.B_primed, 2, 2, 5, m))
        assert np.isclose(avg, en.subspace_average_qm(P, 2, 5, m), atol=1e-12)
        q = sv.batch_q_m(sv.haar_states_in_subspace(B, 4000, rng), 2, 5, m)
        # the code space is 1-uniform, so Q_1 has no spread beyond roundoff
        assert abs(q.mean() - avg) < 5 * q.std(ddof=1) / math.sqrt(q.size) + 1e-12


def test_mds_weight_distribution():
    assert en.mds_weight_distribution(6, 2).as_ints() == TABLE1_BY_N[6][2]
    assert en.mds_weight_distribution(2, 2).as_ints() == (1, 0, 3)
    bad = en.mds_weight_distribution(8, 2)
    assert not bad.feasible and any(a < 0 for a in bad.A)
    with pytest.raises(ValueError):
        en.mds_weight_distribution(1, 2)


@pytest.mark.parametrize("n,D", [(4, 2), (5, 2), (6, 2), (7, 3), (8, 3)])
def test_mds_solution_is_self_dual_under_primes(n, D):
    Ap = en.primed_from_unprimed(list(en.mds_weight_distribution(n, D).A), D, n)
    assert all(Ap[i] == Ap[n - i] for i in range(n + 1))


def test_mds_existence_bound():
    assert en.mds_existence_bound(2, "even") == 6
    assert en.mds_existence_bound(2, "odd") == 11
    assert en.mds_existence_bound(3, "even") == 16
    with pytest.raises(ValueError):
        en.mds_existence_bound(2, "both")
