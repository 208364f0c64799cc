import math

import numpy as np
import pytest

from fermirep import liealg
from fermirep.errors import ClosureError, DependenceError


def test_gell_mann_basics():
    gm = liealg.gell_mann()
    assert len(gm) == 8
    assert gm.dim == 3
    assert np.allclose(gm[2], np.diag([1, -1, 0]))
    for mat in gm:
        assert abs(np.trace(mat)) < 1e-14
        assert np.allclose(mat, mat.conj().T)


def test_gell_mann_trace_orthogonality():
    gm = liealg.gell_mann()
    for a in range(8):
        for b in range(8):
            tr = np.trace(gm[a] @ gm[b])
            assert abs(tr - (2.0 if a == b else 0.0)) < 1e-13


def test_generalized_d2_is_pauli():
    g = liealg.generalized_gell_mann(2)
    assert np.allclose(g[0], [[0, 1], [1, 0]])
    assert np.allclose(g[1], [[0, -1j], [1j, 0]])
    assert np.allclose(g[2], [[1, 0], [0, -1]])


def test_generalized_d3_matches_gell_mann():
    gm = liealg.gell_mann()
    g3 = liealg.generalized_gell_mann(3)
    for a, b in zip(g3, gm):
        assert np.max(np.abs(a - b)) == 0.0


def test_generalized_d6_count_traceless_orthogonal():
    g = liealg.generalized_gell_mann(6)
    assert len(g) == 35
    stack = np.stack(g.mats)
    assert np.max(np.abs(np.einsum("aii->a", stack))) < 1e-13
    gram = np.einsum("aij,bji->ab", stack, stack)
    assert np.max(np.abs(gram - 2 * np.eye(35))) < 1e-12


def test_generalized_bad_dimension():
    with pytest.raises(ValueError):
        liealg.generalized_gell_mann(1)


def test_spin1_matrices_exact():
    jp, jm, j3 = liealg.spin1_matrices().mats
    s = math.sqrt(2)
    assert np.allclose(jp, [[0, s, 0], [0, 0, s], [0, 0, 0]])
    assert np.allclose(jm, jp.conj().T)
    assert np.allclose(j3, np.diag([1, 0, -1]))


def test_spin1_ladder_commutators():
    jp, jm, j3 = liealg.spin1_matrices().mats
    assert np.allclose(j3 @ jp - jp @ j3, jp)
    assert np.allclose(j3 @ jm - jm @ j3, -jm)
    assert np.allclose(jp @ jm - jm @ jp, 2 * j3)


def test_gellmann_from_spin1_equals_standard():
    gm = liealg.gell_mann()
    rebuilt = liealg.gellmann_from_spin1()
    for a, b in zip(rebuilt, gm):
        assert np.max(np.abs(a - b)) < 1e-12


def test_gellmann_from_spin1_lambda4_entries():
    lam4 = liealg.gellmann_from_spin1()[3]
    expected = np.zeros((3, 3))
    expected[0, 2] = expected[2, 0] = 1
    assert np.max(np.abs(lam4 - expected)) < 1e-12


def test_structure_constants_gell_mann():
    gm = liealg.gell_mann()
    sc = liealg.structure_constants(gm)
    assert sc.size == 8
    assert abs(sc.c[0, 1, 2] - 2j) < 1e-12
    # antisymmetry in the first index pair and zero diagonal
    assert np.max(np.abs(sc.c + sc.c.transpose(1, 0, 2))) < 1e-12
    for i in range(8):
        assert np.max(np.abs(sc.c[i, i])) < 1e-13
    # for a Hermitian orthogonal set, c = 2i f with f real and totally antisymmetric
    f = (sc.c / 2j).real
    assert np.max(np.abs((sc.c / 2j).imag)) < 1e-12
    assert np.max(np.abs(f + f.transpose(0, 2, 1))) < 1e-12
    assert np.max(np.abs(f + f.transpose(2, 1, 0))) < 1e-12


def test_structure_constants_pauli_half():
    g = liealg.generalized_gell_mann(2)
    half = liealg.GeneratorSet.create([m / 2 for m in g.mats])
    sc = liealg.structure_constants(half)
    assert abs(sc.c[0, 1, 2] - 1j) < 1e-12


def test_structure_constants_non_orthogonal_set():
    # the ladder triple is not trace orthogonal; Gram projection must still work
    sp = liealg.spin1_matrices()
    sc = liealg.structure_constants(sp)
    # [J+, J-] = 2 J3 and [J3, J+] = J+
    assert abs(sc.c[0, 1, 2] - 2) < 1e-12
    assert abs(sc.c[2, 0, 0] - 1) < 1e-12


def test_structure_constants_closure_error():
    g = liealg.generalized_gell_mann(2)
    open_set = liealg.GeneratorSet.create([g[0], g[1]])
    with pytest.raises(ClosureError):
        liealg.structure_constants(open_set)


def test_dependent_set_rejected():
    g = liealg.generalized_gell_mann(2)
    with pytest.raises(DependenceError):
        liealg.GeneratorSet.create([g[0], g[0]])
    with pytest.raises(DependenceError):
        liealg.GeneratorSet.create([g[0], np.zeros((2, 2))])


def test_generator_set_shape_validation():
    with pytest.raises(ValueError):
        liealg.GeneratorSet(3, (np.eye(2),), ("x",))
    with pytest.raises(ValueError):
        liealg.GeneratorSet(2, (np.eye(2),), ("x", "y"))


def test_conjugation_matrix_values():
    assert np.allclose(liealg.conjugation_matrix(2), [[0, 1], [-1, 0]])
    assert np.allclose(
        liealg.conjugation_matrix(3), [[0, 0, 1], [0, -1, 0], [1, 0, 0]]
    )


def test_conjugation_matrix_unitary():
    for n in range(2, 9):
        u = liealg.conjugation_matrix(n)
        assert np.allclose(u @ u.conj().T, np.eye(n))
        assert np.allclose(u.conj().T, u.T)


def test_conjugate_rep_lambda3():
    conj = liealg.conjugate_rep(liealg.gell_mann())
    assert np.allclose(conj[2], np.diag([0, 1, -1]))


def test_conjugate_rep_preserves_structure_constants():
    gm = liealg.gell_mann()
    sc = liealg.structure_constants(gm)
    sc_conj = liealg.structure_constants(liealg.conjugate_rep(gm))
    assert sc.max_difference(sc_conj) < 1e-12


def test_conjugate_rep_involution():
    gm = liealg.gell_mann()
    twice = liealg.conjugate_rep(liealg.conjugate_rep(gm))
    for a, b in zip(twice, gm):
        assert np.max(np.abs(a - b)) < 1e-14


def test_conjugate_rep_imaginary_antisymmetric_fixed_up_to_basis():
    # for a purely imaginary antisymmetric matrix, -A* = A, so A' = U A U+
    gm = liealg.gell_mann()
    lam2 = gm[1]
    u = liealg.conjugation_matrix(3)
    conj = liealg.conjugate_rep(gm)
    assert np.allclose(conj[1], u @ lam2 @ u.T)


def test_conjugate_rep_dimension_mismatch():
    with pytest.raises(ValueError):
        liealg.conjugate_rep(liealg.gell_mann(), n=4)
