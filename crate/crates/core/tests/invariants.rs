use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex;
use proptest::prelude::*;

use jwgadget::circuit::Polarity;
use jwgadget::cost::{cost_report, formula_synthesis_cost};
use jwgadget::gadget::{decompose_mcz, ladder_images};
use jwgadget::jordan_wigner::{jw_ladder, jw_product};
use jwgadget::verify::{
    controlled_block, dense_unitary, equivalent, exact_term_exponential, fermionic_operator_matrix,
    fermionic_term_matrix, pauli_sum_matrix, projector_matrix, simulate_basis, Matrix,
};
use jwgadget::{
    classify_raw, compile, compile_diagonal, compile_gadget, compile_naive, jw_pauli_expansion,
    jw_projector_form, parse_hamiltonian, Circuit, Error, Family, FermionTerm, Gate, Ladder,
    Letters, Mode, Pauli, Sign, SynthesisParams,
};

type C = Complex<f64>;

fn c(re: f64, im: f64) -> C {
    Complex::new(re, im)
}

/// Raw index lists for a family drawn from a shuffled pool; flags permute
/// operator order within creations / annihilations.
fn raw_from(family: usize, pool: &[usize], flip: [bool; 2]) -> (Vec<usize>, Vec<usize>) {
    let (a, b, cc, d) = (pool[0], pool[1], pool[2 % pool.len()], pool[3 % pool.len()]);
    let order = |x: usize, y: usize, f: bool| if f { vec![y, x] } else { vec![x, y] };
    match family {
        0 => (vec![a], vec![a]),
        1 => (vec![a], vec![b]),
        2 => (order(a, b, flip[0]), order(a, b, flip[1])),
        3 => (order(a, b, flip[0]), order(a, cc, flip[1])),
        _ => (order(a, b, flip[0]), order(cc, d, flip[1])),
    }
}

fn raw_term() -> impl Strategy<Value = (usize, Vec<usize>, Vec<usize>, f64)> {
    (
        4usize..=6,
        0usize..5,
        any::<[bool; 2]>(),
        0.1f64..2.0,
        any::<bool>(),
    )
        .prop_flat_map(|(m, family, flip, mag, neg)| {
            Just((0..m).collect::<Vec<_>>())
                .prop_shuffle()
                .prop_map(move |pool| {
                    let (cr, an) = raw_from(family, &pool, flip);
                    (m, cr, an, if neg { -mag } else { mag })
                })
        })
}

fn raw_matrix(
    cr: &[usize],
    an: &[usize],
    coefficient: f64,
    m: usize,
    hermitian_pair: bool,
) -> Matrix<f64> {
    let ops: Vec<Ladder> = cr
        .iter()
        .map(|&i| Ladder::create(i))
        .chain(an.iter().map(|&i| Ladder::annihilate(i)))
        .collect();
    let p = fermionic_operator_matrix::<f64>(&ops, m).unwrap();
    let op = if hermitian_pair {
        p.add(&p.adjoint()).unwrap()
    } else {
        p
    };
    op.scale(c(coefficient, 0.0))
}

fn to_nalgebra(m: &Matrix<f64>) -> DMatrix<C> {
    let n = m.dim();
    let mut out = DMatrix::zeros(n, n);
    for j in 0..n {
        for &(i, v) in m.column(j) {
            out[(i, j)] = v;
        }
    }
    out
}

fn from_nalgebra(m: &DMatrix<C>) -> Matrix<f64> {
    let n = m.nrows();
    Matrix::from_columns(n, |j| (0..n).map(|i| (i, m[(i, j)])).collect())
}

/// Exponential of a Hermitian matrix through its eigendecomposition.
fn eigen_exponential(h: &Matrix<f64>, gamma: f64) -> Matrix<f64> {
    let eig = to_nalgebra(h).symmetric_eigen();
    let phases =
        DMatrix::from_diagonal(&eig.eigenvalues.map(|l| Complex::from_polar(1.0, gamma * l)));
    let u = &eig.eigenvectors * phases * eig.eigenvectors.adjoint();
    from_nalgebra(&u)
}

fn term(family: Family, coefficient: f64, m: usize) -> FermionTerm<f64> {
    FermionTerm::new(family, coefficient, m).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_preserves_the_operator((m, cr, an, coeff) in raw_term()) {
        let t = classify_raw(&cr, &an, coeff, m).unwrap();
        let raw = raw_matrix(&cr, &an, coeff, m, !t.family.is_diagonal());
        let canonical = fermionic_term_matrix(&t).unwrap();
        prop_assert!(raw.max_abs_diff(&canonical).unwrap() < 1e-13, "{t}");
    }

    #[test]
    fn classification_is_idempotent((m, cr, an, coeff) in raw_term()) {
        let t = classify_raw(&cr, &an, coeff, m).unwrap();
        let again = classify_raw(&t.family.creations(), &t.family.annihilations(), coeff, m).unwrap();
        prop_assert_eq!(again.family, t.family);
        prop_assert_eq!(again.sign, Sign::Plus);
    }

    #[test]
    fn hamiltonian_text_round_trips(raws in prop::collection::vec(raw_term(), 0..6)) {
        let mut text = String::from("orbitals 6\n");
        for (_, cr, an, coeff) in &raws {
            let kind = if cr.len() == 1 { "two" } else { "four" };
            let idx: Vec<String> = cr.iter().chain(an).map(|i| i.to_string()).collect();
            text.push_str(&format!("{kind} {} {coeff}\n", idx.join(" ")));
        }
        let h = parse_hamiltonian::<f64>(&text).unwrap();
        let again = parse_hamiltonian::<f64>(&h.to_text()).unwrap();
        let a: Vec<_> = h.terms().cloned().collect();
        let b: Vec<_> = again.terms().cloned().collect();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn expansion_matches_projector_form((m, cr, an, coeff) in raw_term()) {
        let t = classify_raw(&cr, &an, coeff, m).unwrap();
        let expansion = pauli_sum_matrix(&jw_pauli_expansion(&t).unwrap()).unwrap();
        let projector = projector_matrix(&jw_projector_form(&t)).unwrap();
        prop_assert!(expansion.max_abs_diff(&projector).unwrap() < 1e-13);
        prop_assert!(expansion.hermiticity_deviation() < 1e-14);
        let direct = fermionic_term_matrix(&t).unwrap();
        prop_assert!(expansion.max_abs_diff(&direct).unwrap() < 1e-13);
    }

    #[test]
    fn projector_invariants((m, cr, an, coeff) in raw_term()) {
        let t = classify_raw(&cr, &an, coeff, m).unwrap();
        let form = jw_projector_form(&t);
        prop_assert!(form.z_string.iter().all(|z| !form.swap_qubits.contains(z)));
        prop_assert_eq!(form.diagonal, form.pattern_a == form.pattern_b);
        prop_assert!(form.scale != 0.0);
        if !form.diagonal {
            // the ladder leaves a single differing qubit, the rotation qubit
            let (a, b) = ladder_images(&form);
            let diffs: Vec<usize> = (0..a.len()).filter(|&k| a[k] != b[k]).collect();
            prop_assert_eq!(diffs.len(), 1);
            prop_assert_eq!(form.swap_qubits[diffs[0]], form.differing_qubits()[0]);
        }
    }

    #[test]
    fn exponential_matches_eigendecomposition((m, cr, an, coeff) in raw_term(), gamma in -PI..PI) {
        let t = classify_raw(&cr, &an, coeff, m).unwrap();
        let h = projector_matrix(&jw_projector_form(&t)).unwrap();
        let exact = exact_term_exponential(&t, gamma).unwrap();
        prop_assert!(exact.max_abs_diff(&eigen_exponential(&h, gamma)).unwrap() < 1e-12);
    }

    #[test]
    fn both_compilers_agree((m, cr, an, coeff) in raw_term(), gamma in -PI..PI, controlled in any::<bool>()) {
        let t = classify_raw(&cr, &an, coeff, m).unwrap();
        let naive = compile(&t, Mode::Naive, gamma, controlled, 2).unwrap();
        let gadget = compile(&t, Mode::Gadget, gamma, controlled, 2).unwrap();
        let n = dense_unitary(&naive).unwrap().embed_above(gadget.dirty_ancilla_count);
        let g = dense_unitary(&gadget).unwrap();
        prop_assert!(equivalent(&g, &n, !controlled, 1e-9).unwrap().equal);
        if controlled && !t.family.is_diagonal() {
            prop_assert_eq!(naive.census().rotations, 2 * jw_pauli_expansion(&t).unwrap().len());
        }
    }
}

fn random_gate(m: usize) -> impl Strategy<Value = Gate<f64>> {
    let q = 0..m;
    prop_oneof![
        q.clone().prop_map(Gate::PauliX),
        q.clone().prop_map(Gate::Hadamard),
        Just((0..m).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Gate::Cnot {
                control: v[0],
                target: v[1]
            }),
        Just((0..m).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Gate::Cz(v[0], v[1])),
        Just((0..m).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Gate::Toffoli {
                c1: v[0],
                c2: v[1],
                target: v[2]
            }),
        (prop::collection::vec(0usize..4, m), -6.0f64..6.0).prop_map(|(letters, angle)| {
            let axis =
                Letters::from_pairs(letters.iter().enumerate().filter_map(|(k, &l)| match l {
                    1 => Some((k, Pauli::X)),
                    2 => Some((k, Pauli::Y)),
                    3 => Some((k, Pauli::Z)),
                    _ => None,
                }));
            Gate::rotation(axis, angle)
        }),
    ]
}

fn random_circuit() -> impl Strategy<Value = Circuit<f64>> {
    (3usize..=5).prop_flat_map(|m| {
        prop::collection::vec(random_gate(m), 0..12).prop_map(move |gates| {
            let mut c = Circuit::new(m, false, 0);
            c.extend(gates).unwrap();
            c
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn inverse_is_adjoint(circ in random_circuit()) {
        let u = dense_unitary(&circ).unwrap();
        let v = dense_unitary(&circ.inverse()).unwrap();
        prop_assert!(v.max_abs_diff(&u.adjoint()).unwrap() < 1e-12);
        prop_assert_eq!(circ.inverse().inverse(), circ.clone());
        prop_assert!(u.unitarity_deviation() < 1e-12);
        let id = dense_unitary(&circ.compose(&circ.inverse()).unwrap()).unwrap();
        prop_assert!(id.max_abs_diff(&Matrix::identity(u.dim())).unwrap() < 1e-12);
    }

    #[test]
    fn compose_concatenates(a in random_circuit(), b in random_circuit()) {
        let empty = Circuit::new(a.system_width, false, 0);
        prop_assert_eq!(a.compose(&empty).unwrap(), a.clone());
        prop_assert_eq!(a.compose(&a).unwrap().len(), 2 * a.len());
        let abc = a.compose(&a).unwrap().compose(&a.inverse()).unwrap();
        let a_bc = a.compose(&a.compose(&a.inverse()).unwrap()).unwrap();
        prop_assert_eq!(abc, a_bc);
        if a.system_width != b.system_width {
            prop_assert!(matches!(a.compose(&b), Err(Error::ShapeMismatch(_))));
        }
    }

    #[test]
    fn circuit_text_round_trips(circ in random_circuit()) {
        let parsed: Circuit<f64> = circ.to_string().parse().unwrap();
        prop_assert_eq!(parsed, circ);
    }

    #[test]
    fn report_is_additive(a in random_circuit(), override_cost in prop::option::of(1u64..500)) {
        let p = SynthesisParams::new(1e-5, 1000).unwrap().with_override(override_cost);
        let ra = cost_report(&a, &p).unwrap();
        let whole = cost_report(&a.compose(&a.inverse()).unwrap(), &p).unwrap();
        prop_assert_eq!(whole.t_total, 2 * ra.t_total);
        prop_assert_eq!(whole.clone(), ra.combine(&cost_report(&a.inverse(), &p).unwrap()));
        prop_assert_eq!(ra.t_total, ra.t_from_rotations + ra.t_from_toffolis);
    }

    #[test]
    fn synthesis_cost_is_monotone(x in 1e-15f64..0.99, y in 1e-15f64..0.99) {
        let (lo, hi) = if x < y { (x, y) } else { (y, x) };
        prop_assert!(formula_synthesis_cost(lo).unwrap() >= formula_synthesis_cost(hi).unwrap());
    }

    #[test]
    fn staircase_matches_mcz(n in 2usize..=4, polarities in any::<[bool; 4]>(), probe in any::<u16>()) {
        let width = n + 1 + n.saturating_sub(2);
        let controls: Vec<(usize, Polarity)> = (0..n)
            .map(|k| (k, if polarities[k] { Polarity::Open } else { Polarity::Closed }))
            .collect();
        let dirty: Vec<usize> = (n + 1..width).collect();
        let gate = Gate::MultiControlledZ { controls, target: n, dirty: dirty.clone() };
        let mut reference = Circuit::new(width, false, 0);
        reference.push(gate.clone()).unwrap();
        let mut lowered = Circuit::new(width, false, 0);
        lowered.extend(decompose_mcz(&gate, &dirty).unwrap()).unwrap();
        let x = probe as usize % (1 << width);
        let a: Vec<(usize, C)> = simulate_basis(&reference, x);
        let b = simulate_basis(&lowered, x);
        prop_assert_eq!(a.len(), 1);
        prop_assert_eq!(b.len(), 1);
        prop_assert_eq!(a[0].0, b[0].0);
        prop_assert!((a[0].1 - b[0].1).norm() < 1e-12);
    }
}

#[test]
fn ladder_matrices_match_direct_construction() {
    for m in 1..=6 {
        for p in 0..m {
            for dagger in [false, true] {
                let jw = pauli_sum_matrix(&jw_ladder::<f64>(p, dagger, m).unwrap()).unwrap();
                let op = if dagger {
                    Ladder::create(p)
                } else {
                    Ladder::annihilate(p)
                };
                let direct = fermionic_operator_matrix::<f64>(&[op], m).unwrap();
                assert!(jw.max_abs_diff(&direct).unwrap() < 1e-15, "p={p} m={m}");
            }
        }
    }
    let a0dag = fermionic_operator_matrix::<f64>(&[Ladder::create(0)], 1).unwrap();
    assert_eq!(
        a0dag.to_dense(),
        vec![
            vec![c(0.0, 0.0), c(0.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0)]
        ]
    );
}

#[test]
fn single_repeated_index_terms_are_all_number_excitations() {
    // every a†x a†y az aw with exactly one index shared between creations
    // and annihilations, over four orbitals
    let m = 4;
    let mut count = 0;
    for x in 0..m {
        for y in 0..m {
            for z in 0..m {
                for w in 0..m {
                    let cr = [x, y];
                    let an = [z, w];
                    if x == y || z == w {
                        let err = classify_raw(&cr, &an, 1.0f64, m).unwrap_err();
                        assert!(matches!(err, Error::UnclassifiableTerm(_)));
                        continue;
                    }
                    let shared = cr.iter().filter(|i| an.contains(i)).count();
                    if shared != 1 {
                        continue;
                    }
                    count += 1;
                    let t = classify_raw(&cr, &an, 0.7f64, m).unwrap();
                    assert!(matches!(t.family, Family::NumberExcitation(..)), "{t}");
                    let raw = raw_matrix(&cr, &an, 0.7, m, true);
                    assert!(
                        raw.max_abs_diff(&fermionic_term_matrix(&t).unwrap())
                            .unwrap()
                            < 1e-14
                    );
                }
            }
        }
    }
    assert_eq!(count, 4 * 3 * 2 * 4);
}

#[test]
fn raw_double_excitation_product_cancels_to_eight() {
    let t = term(Family::DoubleExcitation(0, 1, 2, 3), 1.0, 4);
    let product = jw_product::<f64>(&t.family.operators(), 4).unwrap();
    assert_eq!(product.len(), 16);
    assert_eq!(jw_pauli_expansion(&t).unwrap().len(), 8);
}

#[test]
fn exponential_examples() {
    let u = exact_term_exponential(&term(Family::Number(0), 1.0, 1), PI).unwrap();
    assert!(
        u.max_abs_diff(&Matrix::from_columns(2, |j| vec![(
            j,
            c(if j == 0 { 1.0 } else { -1.0 }, 0.0)
        )]))
        .unwrap()
            < 1e-15
    );

    let u = exact_term_exponential(&term(Family::Hopping(0, 1), 1.0, 2), PI / 2.0).unwrap();
    assert!((u.get(0, 0) - c(1.0, 0.0)).norm() < 1e-15);
    assert!((u.get(3, 3) - c(1.0, 0.0)).norm() < 1e-15);
    assert!((u.get(1, 2) - c(0.0, 1.0)).norm() < 1e-15);
    assert!((u.get(2, 1) - c(0.0, 1.0)).norm() < 1e-15);
    assert!(u.get(1, 1).norm() < 1e-15);
}

#[test]
fn simulator_examples() {
    let empty = dense_unitary(&Circuit::<f64>::new(2, false, 0)).unwrap();
    assert_eq!(empty.max_abs_diff(&Matrix::identity(4)).unwrap(), 0.0);

    let mut cnot = Circuit::<f64>::new(2, false, 0);
    cnot.push(Gate::Cnot {
        control: 0,
        target: 1,
    })
    .unwrap();
    let u = dense_unitary(&cnot).unwrap();
    // qubit 0 is the low bit: |01> (index 1) -> |11> (index 3)
    assert_eq!(u.get(3, 1), c(1.0, 0.0));
    assert_eq!(u.get(2, 2), c(1.0, 0.0));

    let mut rx = Circuit::<f64>::new(1, false, 0);
    rx.push(Gate::rotation("X0".parse().unwrap(), PI / 2.0))
        .unwrap();
    let u = dense_unitary(&rx).unwrap();
    let ix = Matrix::from_columns(2, |j| vec![(1 - j, c(0.0, 1.0))]);
    assert!(u.max_abs_diff(&ix).unwrap() < 1e-15);

    // controlled X with the control on top is CNOT(1 -> 0)
    let x = Matrix::from_columns(2, |j| vec![(1 - j, c(1.0, 0.0))]);
    let mut cx = Circuit::<f64>::new(2, false, 0);
    cx.push(Gate::Cnot {
        control: 1,
        target: 0,
    })
    .unwrap();
    assert_eq!(
        controlled_block(&x)
            .unwrap()
            .max_abs_diff(&dense_unitary(&cx).unwrap())
            .unwrap(),
        0.0
    );

    let eq = equivalent(&Matrix::identity(2), &x, true, 1e-9).unwrap();
    assert!(!eq.equal);
    assert!((eq.deviation - 1.0).abs() < 1e-15);
}

#[test]
fn diagonal_gadget_phases() {
    let gamma = 0.83;
    let u =
        dense_unitary(&compile_diagonal(&term(Family::Number(1), 1.0, 2), gamma, true).unwrap())
            .unwrap();
    for x in 0..8usize {
        let hit = x & 0b110 == 0b110;
        let want = if hit {
            Complex::from_polar(1.0, gamma)
        } else {
            c(1.0, 0.0)
        };
        assert!((u.get(x, x) - want).norm() < 1e-14, "x={x}");
    }

    // a†0 a†1 a0 a1 = -n0 n1
    let nn = classify_raw(&[0, 1], &[0, 1], 1.0f64, 2).unwrap();
    assert_eq!(nn.sign, Sign::Minus);
    let u = dense_unitary(&compile_diagonal(&nn, gamma, true).unwrap()).unwrap();
    for x in 0..8usize {
        let want = if x == 0b111 {
            Complex::from_polar(1.0, -gamma)
        } else {
            c(1.0, 0.0)
        };
        assert!((u.get(x, x) - want).norm() < 1e-14, "x={x}");
    }

    let zero = dense_unitary(&compile_diagonal(&nn, 0.0, true).unwrap()).unwrap();
    assert!(zero.max_abs_diff(&Matrix::identity(8)).unwrap() < 1e-15);
}

#[test]
fn zero_angle_circuits_are_identity() {
    for family in [
        Family::DoubleExcitation(0, 1, 2, 4),
        Family::Hopping(1, 3),
        Family::NumberExcitation(2, 0, 4),
    ] {
        let t = term(family, 0.9, 5);
        for controlled in [false, true] {
            let g = compile_gadget(&t, 0.0, controlled, 2).unwrap();
            let u = dense_unitary(&g).unwrap();
            assert!(u.max_abs_diff(&Matrix::identity(u.dim())).unwrap() < 1e-14);
            let n = compile_naive(&t, 0.0, controlled).unwrap();
            let u = dense_unitary(&n).unwrap();
            assert!(u.max_abs_diff(&Matrix::identity(u.dim())).unwrap() < 1e-14);
        }
    }
}

#[test]
fn hopping_uses_two_control_mcz() {
    let g = compile_gadget(&term(Family::Hopping(0, 3), 1.0, 4), 0.4, true, 0).unwrap();
    let census = g.census();
    assert_eq!(census.rotations, 2);
    assert_eq!(census.multi_controlled, vec![2, 2]);
    assert_eq!(g.dirty_ancilla_count, 0);
}

#[test]
fn single_precision_path() {
    let t = FermionTerm::<f32>::new(Family::DoubleExcitation(0, 1, 2, 3), 0.5, 4).unwrap();
    let exact = controlled_block(&exact_term_exponential(&t, 0.7f32).unwrap()).unwrap();
    let circuit = compile_gadget(&t, 0.7f32, true, 2)
        .unwrap()
        .lowered()
        .unwrap();
    let u = dense_unitary(&circuit).unwrap();
    assert!(
        equivalent(&u, &exact.embed_above(2), false, 1e-5f32)
            .unwrap()
            .equal
    );
}
