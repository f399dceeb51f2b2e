import pytest

from hopftower.algebra import (
    Algebra,
    AlgebraError,
    LinMap,
    SubspaceBasis,
    centralizer,
    check_morphism,
    endomorphism_algebra,
    tensor_over_subalgebra,
    verify_algebra,
)
from hopftower.fields import PrimeField, RationalField
from hopftower.linalg import Matrix, basis_vector
from hopftower.models import (
    cyclic_group,
    group_algebra,
    matrix_units_m2,
    quadratic_field_algebra,
    symmetric_group_3,
)

Q = RationalField()
F2 = PrimeField(2)


def test_verify_group_algebra():
    alg = group_algebra(cyclic_group(2), Q)
    assert verify_algebra(alg).ok


def test_verify_matrix_units_f2():
    # matrix-unit relations e_ij e_kl = [j = k] e_il
    alg = matrix_units_m2(F2)
    assert verify_algebra(alg).ok


def test_verify_detects_perturbed_table():
    alg = group_algebra(symmetric_group_3(), Q)
    # perturb (01)(01): e instead becomes (02), which breaks associativity
    entries = [(i, j, k, c) for i, j, k, c in alg.entries() if (i, j) != (1, 1)]
    entries.append((1, 1, 2, Q.one))
    bad = Algebra.from_entries(Q, 6, entries, alg.unit)
    rep = verify_algebra(bad)
    assert not rep.ok
    assert rep.assoc_failures, "offending triple must be reported"
    assert "triple" in rep.assoc_failures[0]


def test_centralizer_of_matrix_algebra_is_center():
    alg = matrix_units_m2(Q)
    full = SubspaceBasis(alg, [basis_vector(Q, 4, i) for i in range(4)])
    cent = centralizer(alg, full)
    assert cent.dim == 1
    assert cent.contains(alg.unit)


def test_centralizer_of_scalars_is_everything():
    alg = quadratic_field_algebra(Q, Q.from_int(2))
    scalars = SubspaceBasis(alg, [list(alg.unit)])
    cent = centralizer(alg, scalars)
    assert cent.dim == alg.dim


def test_centralizer_s3_a3():
    # the centralizer of Q[A3] in Q[S3] is spanned by the A3-conjugation
    # orbit sums: e, (012), (021) and the sum of the transpositions
    G = symmetric_group_3()
    alg = group_algebra(G, Q)
    sub = SubspaceBasis(alg, [basis_vector(Q, 6, i) for i in (0, 4, 5)])
    cent = centralizer(alg, sub)
    assert cent.dim == 4
    orbit_sums = [
        basis_vector(Q, 6, 0),
        basis_vector(Q, 6, 4),
        basis_vector(Q, 6, 5),
        [Q.zero, Q.one, Q.one, Q.one, Q.zero, Q.zero],
    ]
    expected = SubspaceBasis.from_spanning(alg, orbit_sums)
    computed = SubspaceBasis.from_spanning(alg, [list(v) for v in cent.vectors])
    assert computed.equals(expected)


def test_centralizer_rejects_non_subalgebra():
    G = symmetric_group_3()
    alg = group_algebra(G, Q)
    not_closed = SubspaceBasis(alg, [basis_vector(Q, 6, 1)])  # {(01)} alone
    with pytest.raises(AlgebraError):
        centralizer(alg, not_closed)


def test_triple_centralizer_stabilizes():
    G = symmetric_group_3()
    alg = group_algebra(G, Q)
    sub = SubspaceBasis(alg, [basis_vector(Q, 6, i) for i in (0, 4, 5)])
    c1 = centralizer(alg, sub)
    c2 = centralizer(alg, c1)
    c3 = centralizer(alg, c2)
    assert c3.equals(c1)


def test_tensor_quotient_dims():
    alg = group_algebra(symmetric_group_3(), Q)
    full = SubspaceBasis(alg, [basis_vector(Q, 6, i) for i in range(6)])
    assert tensor_over_subalgebra(alg, full).dim == 6  # N = M
    scalars = SubspaceBasis(alg, [list(alg.unit)])
    assert tensor_over_subalgebra(alg, scalars).dim == 36  # N = k
    a3 = SubspaceBasis(alg, [basis_vector(Q, 6, i) for i in (0, 4, 5)])
    assert tensor_over_subalgebra(alg, a3).dim == 12  # |G| [G : H]


def test_tensor_quotient_projection_section():
    alg = group_algebra(symmetric_group_3(), Q)
    a3 = SubspaceBasis(alg, [basis_vector(Q, 6, i) for i in (0, 4, 5)])
    tq = tensor_over_subalgebra(alg, a3)
    for c in range(tq.dim):
        coords = {c: Q.one}
        assert tq.project_sparse(tq.section_sparse(coords)) == coords


def test_endomorphism_algebra_trivial():
    field = Q
    unit_alg = Algebra.from_entries(field, 1, [(0, 0, 0, field.one)], [field.one])
    endo = endomorphism_algebra(field, 1, [Matrix.identity(field, 1)], unit_alg)
    assert endo.algebra.dim == 1


def test_endomorphism_algebra_field_extension():
    # Q(sqrt 2) as a module over Q: all linear maps, End = M_2(Q)
    X = quadratic_field_algebra(Q, Q.from_int(2))
    unit_alg = Algebra.from_entries(Q, 1, [(0, 0, 0, Q.one)], [Q.one])
    endo = endomorphism_algebra(Q, 2, [Matrix.identity(Q, 2)], unit_alg)
    assert endo.algebra.dim == 4
    assert verify_algebra(endo.algebra).ok


def test_endomorphism_algebra_group_pair(ext_s3_a3):
    ext = ext_s3_a3
    n_alg = ext.n_algebra
    mats = [
        ext.M.rmul_matrix(ext.embed.apply(basis_vector(Q, n_alg.dim, i)))
        for i in range(n_alg.dim)
    ]
    endo = endomorphism_algebra(Q, 6, mats, n_alg)
    assert endo.algebra.dim == 12  # equals dim M (x)_N M


def test_endomorphism_rejects_bad_module():
    bad_alg = group_algebra(cyclic_group(2), Q)
    mats = [Matrix.identity(Q, 2), Matrix.identity(Q, 2).scale(Q.from_int(2))]
    with pytest.raises(AlgebraError):
        endomorphism_algebra(Q, 2, mats, bad_alg)


def test_check_morphism_identity_iso():
    alg = group_algebra(cyclic_group(2), Q)
    rep = check_morphism(LinMap.identity(Q, 2), alg, alg)
    assert rep.is_homomorphism and rep.is_isomorphism


def test_check_morphism_zero_map_fails_unit():
    alg = group_algebra(cyclic_group(2), Q)
    zero = LinMap(Matrix.zero(Q, 2, 2))
    rep = check_morphism(zero, alg, alg)
    assert not rep.is_homomorphism
    assert any(f["kind"] == "unit" for f in rep.failures)


def test_subspace_membership_and_coords():
    alg = group_algebra(symmetric_group_3(), Q)
    sub = SubspaceBasis(alg, [basis_vector(Q, 6, 0), basis_vector(Q, 6, 1)])
    v = [Q.from_int(2), Q.from_int(-3), Q.zero, Q.zero, Q.zero, Q.zero]
    assert sub.contains(v)
    coords = sub.coords(v)
    assert [str(c) for c in coords] == ["2", "-3"]
    assert not sub.contains(basis_vector(Q, 6, 2))
    assert sub.coords(basis_vector(Q, 6, 2)) is None
