from hopftower.algebra import Algebra, SubspaceBasis
from hopftower.fields import PrimeField, RationalField
from hopftower.galois import (
    ModuleAlgebraAction,
    action_a_on_m,
    action_b_on_m1,
    cleft_data,
    comodule_axioms_from_action,
    galois_map,
    invariants,
    psi_inverse_formula,
    psi_map,
    smash_product,
    verify_invariants,
    verify_module_algebra,
    verify_smash_commutation,
    verify_smash_iso_theta,
)
from hopftower.hopf import HopfStructure
from hopftower.linalg import Matrix, basis_vector, vec_eq
from hopftower.models import quadratic_field_algebra

Q = RationalField()
F7 = PrimeField(7)


def trivial_hopf(field):
    alg = Algebra.from_entries(field, 1, [(0, 0, 0, field.one)], [field.one])
    return HopfStructure(
        alg,
        Matrix(field, [[field.one]]),
        Matrix(field, [[field.one]]),
        Matrix(field, [[field.one]]),
    )


# -- module-algebra actions ------------------------------------------------------


def test_translation_action_axioms(bundle_z2, bundle_z3_f7):
    for b in (bundle_z2, bundle_z3_f7):
        assert verify_module_algebra(b.action).ok


def test_trivial_action_of_k():
    X = quadratic_field_algebra(Q, Q.from_int(2))
    H = trivial_hopf(Q)
    act = ModuleAlgebraAction(H, X, [Matrix.identity(Q, 2)])
    assert verify_module_algebra(act).ok
    inv = invariants(act)
    assert inv.dim == X.dim  # trivial action fixes everything


def test_invariants_of_translation(bundle_z2):
    inv = invariants(bundle_z2.action)
    assert inv.dim == 1
    assert inv.contains(bundle_z2.X.unit)


# -- smash products ----------------------------------------------------------------


def test_smash_with_trivial_hopf_is_x():
    X = quadratic_field_algebra(Q, Q.from_int(2))
    H = trivial_hopf(Q)
    act = ModuleAlgebraAction(H, X, [Matrix.identity(Q, 2)])
    sm = smash_product(X, H, act)
    assert sm.report.ok
    assert sm.algebra.dim == X.dim
    # the table is exactly that of X
    from hopftower.algebra import check_morphism

    rep = check_morphism(sm.embed_x, X, sm.algebra)
    assert rep.is_homomorphism and rep.is_isomorphism


def test_sqrt2_smash_is_full_matrix_algebra(bundle_sqrt2):
    sm = smash_product(bundle_sqrt2.X, bundle_sqrt2.pair.H, bundle_sqrt2.action)
    assert sm.report.ok and sm.algebra.dim == 4
    out = psi_map(sm, bundle_sqrt2.action, bundle_sqrt2.sys)
    assert out.ok, out.failures[:2]  # End(Q(sqrt2)_Q) = M_2(Q)
    assert psi_inverse_formula(sm, bundle_sqrt2.action, bundle_sqrt2.sys, bundle_sqrt2.pair.t).ok


def test_function_algebra_smash_matrix_units(bundle_z2):
    # k^G # k[G] = M_|G|(k): exhibit the matrix units delta_x g
    sm = smash_product(bundle_z2.X, bundle_z2.pair.H, bundle_z2.action)
    assert sm.report.ok and sm.algebra.dim == 4
    f = Q
    G = bundle_z2.pair.G
    n = G.order
    units = {}
    for x in range(n):
        for g in range(n):
            vec = sm.algebra.mul(
                sm.embed_x.apply(basis_vector(f, n, x)),
                sm.embed_h.apply(basis_vector(f, n, g)),
            )
            units[(x, G.mul[g][x])] = vec  # delta_x g maps e_y -> [y = x] ...
    # E_ij E_kl = [j = k] E_il for the units indexed by (target, source)
    for (i, j), u in units.items():
        for (k, l), v in units.items():
            prod = sm.algebra.mul(u, v)
            if j == k:
                assert vec_eq(f, prod, units[(i, l)])
            else:
                assert all(f.is_zero(c) for c in prod)


def test_psi_trivial_hopf():
    # H = k: Psi maps X # k to End(X_X), left multiplications by X
    from hopftower.frobenius import ExtensionSpec, solve_dual_bases

    X = quadratic_field_algebra(Q, Q.from_int(2))
    H = trivial_hopf(Q)
    act = ModuleAlgebraAction(H, X, [Matrix.identity(Q, 2)])
    sm = smash_product(X, H, act)
    N_all = SubspaceBasis(X, [basis_vector(Q, 2, 0), basis_vector(Q, 2, 1)])
    ident_e = __import__("hopftower.algebra", fromlist=["LinMap"]).LinMap(
        Matrix.identity(Q, 2)
    )
    ext = ExtensionSpec(X, N_all, E=ident_e)
    sys = solve_dual_bases(ext)
    assert psi_map(sm, act, sys).ok
    assert psi_inverse_formula(sm, act, sys, H.algebra.unit).ok


def test_psi_for_translation_models(bundle_z2, bundle_z3_f7):
    for b in (bundle_z2, bundle_z3_f7):
        sm = smash_product(b.X, b.pair.H, b.action)
        assert psi_map(sm, b.action, b.sys).ok
        assert psi_inverse_formula(sm, b.action, b.sys, b.pair.t).ok
        assert verify_smash_commutation(sm, b.action).ok


# -- tower actions -----------------------------------------------------------------


def test_action_b_matches_model(stack_z2, bundle_z2):
    # the Ocneanu-Szymanski action of B on M1 transported to X # H must be
    # the dual translation action of H* built into the model
    t, d2, p, H_B, H_A, naka = stack_z2
    act, out = action_b_on_m1(t, d2, H_B)
    assert out.ok, out.failures[:2]


def test_action_b_unit_acts_trivially(stack_z3_f7):
    t, d2, p, H_B, H_A, naka = stack_z3_f7
    act, out = action_b_on_m1(t, d2, H_B)
    assert out.ok
    f = t.M.field
    one_b = d2.B.coords(t.M2.unit)
    for x in range(t.M1.dim):
        ex = basis_vector(f, t.M1.dim, x)
        assert vec_eq(f, act.act_vec(one_b, ex), ex)


def test_invariants_of_b_action_equal_m(stack_z2, stack_z3_f7, stack_trivial):
    for stack in (stack_trivial, stack_z2, stack_z3_f7):
        t, d2, p, H_B = stack[0], stack[1], stack[2], stack[3]
        act, out = action_b_on_m1(t, d2, H_B)
        assert out.ok
        f = t.M.field
        m_img = SubspaceBasis(
            t.M1, [t.incl1.apply(basis_vector(f, t.M.dim, i)) for i in range(t.M.dim)]
        )
        assert verify_invariants(act, m_img).ok


def test_theta_isomorphism(stack_z2, stack_z3_f7, stack_trivial):
    for stack in (stack_trivial, stack_z2, stack_z3_f7):
        t, d2, p, H_B = stack[0], stack[1], stack[2], stack[3]
        act, _ = action_b_on_m1(t, d2, H_B)
        out = verify_smash_iso_theta(t, d2, H_B, act)
        assert out.ok, out.failures[:2]


def test_corrupted_action_reported(stack_z2):
    t, d2, p, H_B = stack_z2[0], stack_z2[1], stack_z2[2], stack_z2[3]
    act, _ = action_b_on_m1(t, d2, H_B)
    f = t.M.field
    bad_mats = [Matrix(f, [row[:] for row in m.data]) for m in act.mats]
    bad_mats[1].data[0][0] = f.add(bad_mats[1].data[0][0], f.one)
    bad = ModuleAlgebraAction(H_B, act.algebra, bad_mats)
    out = verify_module_algebra(bad)
    assert not out.ok
    theta_out = verify_smash_iso_theta(t, d2, H_B, bad)
    assert not theta_out.ok


def test_action_a_on_m(stack_z2, stack_z3_f7, stack_trivial):
    for stack in (stack_trivial, stack_z2, stack_z3_f7):
        t, d2, p, H_B, H_A = stack[0], stack[1], stack[2], stack[3], stack[4]
        act, out = action_a_on_m(t, d2, H_A)
        assert out.ok, out.failures[:2]
        f = t.M.field
        ext = t.base_sys.ext
        n_img = SubspaceBasis(
            t.M,
            [ext.embed.apply(basis_vector(f, ext.n_algebra.dim, i)) for i in range(ext.n_algebra.dim)],
        )
        assert verify_invariants(act, n_img).ok


def test_e1_acts_as_e(stack_z2):
    # e1 . 1 = 1 and e1 . x = E(x) in general
    t, d2, p, H_B, H_A = stack_z2[0], stack_z2[1], stack_z2[2], stack_z2[3], stack_z2[4]
    act, out = action_a_on_m(t, d2, H_A)
    assert out.ok
    f = t.M.field
    e1_A = d2.A.coords(t.e1)
    assert vec_eq(f, act.act_vec(e1_A, t.M.unit), t.M.unit)


def test_cleft_data(stack_z2, stack_z3_f7, stack_trivial):
    for stack in (stack_trivial, stack_z2, stack_z3_f7):
        t, d2, p, H_B, H_A = stack[0], stack[1], stack[2], stack[3], stack[4]
        act_a, out = action_a_on_m(t, d2, H_A)
        assert out.ok
        res = cleft_data(t, d2, H_A, H_B, p, act_a)
        assert res.ok, res.failures[:3]


# -- the Galois map ------------------------------------------------------------------


def test_galois_map_trivial_case():
    # X = N, H = k: beta is the multiplication isomorphism
    from hopftower.algebra import tensor_over_subalgebra

    X = quadratic_field_algebra(Q, Q.from_int(2))
    N = SubspaceBasis(X, [basis_vector(Q, 2, 0), basis_vector(Q, 2, 1)])
    tq = tensor_over_subalgebra(X, N)
    H = trivial_hopf(Q)
    act = ModuleAlgebraAction(H, X, [Matrix.identity(Q, 2)])
    out = galois_map(X, N, tq, act, 1)
    assert out.ok


def test_galois_map_quadratic(bundle_sqrt2):
    # Q(sqrt2)/Q with the Z/2 coaction: 4x4, bijective
    out = galois_map(
        bundle_sqrt2.X,
        bundle_sqrt2.sys.ext.N,
        bundle_sqrt2.sys.tq,
        bundle_sqrt2.action,
        2,
    )
    assert out.ok
    assert comodule_axioms_from_action(bundle_sqrt2.action).ok


def test_galois_map_trivial_coaction_fails(bundle_sqrt2):
    # trivial action of k[Z/2] on X: dimension mismatch, not Galois
    pair = bundle_sqrt2.pair
    X = bundle_sqrt2.X
    triv = ModuleAlgebraAction(pair.H, X, [Matrix.identity(Q, 2), Matrix.identity(Q, 2)])
    assert verify_module_algebra(triv).ok
    # invariants of the trivial action are all of X, so X (x)_X X has dim 2
    from hopftower.algebra import tensor_over_subalgebra

    N_all = SubspaceBasis(X, [basis_vector(Q, 2, 0), basis_vector(Q, 2, 1)])
    tq = tensor_over_subalgebra(X, N_all)
    out = galois_map(X, N_all, tq, triv, 2)
    assert not out.ok
    assert out.failures[0]["kind"] == "dimension-mismatch"


def test_galois_map_tower(stack_z2, stack_trivial):
    for stack in (stack_trivial, stack_z2):
        t, d2, p, H_B, H_A = stack[0], stack[1], stack[2], stack[3], stack[4]
        act_a, out = action_a_on_m(t, d2, H_A)
        assert out.ok
        res = galois_map(t.M, t.base_sys.ext.N, t.base_sys.tq, act_a, H_A.dim)
        assert res.ok, res.failures[:2]
