use crosschar::chars::{make_coeff_field, Character, CoeffField};
use crosschar::ffield::{construct_field, Field};
use crosschar::modeng::meataxe::{brute_force_simple, eigenline_simple, BRUTE_FORCE_LIMIT, DEFAULT_SAMPLES};
use crosschar::modeng::probes::{decomposition_check, lambda_identities, lemma21, lemma41, mplus, phi_check};
use crosschar::modeng::{
    chop, is_simple, jordan_on_v, spin, weight_spaces, InducedModule, MatrixRep, Sign, Verdict,
};
use crosschar::report::ProbeReport;

fn gf(p: u64, m: u32) -> Field {
    construct_field(p, m).unwrap()
}

fn character(q: u64, r: u64, order: u64) -> Character {
    let f = gf_from_size(q);
    let target = make_coeff_field(r, order).unwrap();
    Character::new(&f, &target, 1).unwrap()
}

fn gf_from_size(q: u64) -> Field {
    for p in [2u64, 3, 5, 7, 11, 13] {
        let mut m = 1;
        let mut x = p;
        while x < q {
            x *= p;
            m += 1;
        }
        if x == q {
            return gf(p, m);
        }
    }
    panic!("not a prime power: {q}")
}

fn assert_passed(rep: &ProbeReport) {
    assert!(rep.passed(), "{}: {:#?}", rep.probe, rep.failures());
}

#[test]
fn dimensions_of_induced_modules() {
    let f5 = gf(5, 1);
    let theta = character(5, 13, 4);
    assert_eq!(InducedModule::borel(&theta).dim(), 6);
    assert_eq!(InducedModule::torus(&theta).dim(), 30);
    let k = make_coeff_field(7, 1).unwrap();
    assert_eq!(InducedModule::normalizer(&f5, Sign::Minus, k.field()).dim(), 15);
    assert_eq!(InducedModule::normalizer(&f5, Sign::Plus, k.field()).dim(), 15);
}

#[test]
fn borel_line_is_a_weight_vector() {
    let theta = character(5, 13, 4);
    let m = InducedModule::borel(&theta);
    let lf = m.level().clone();
    for c in lf.units() {
        let v = m.act(&m.sl2().h(c).unwrap(), &m.one()).unwrap();
        assert_eq!(v, m.one().scale(m.coeff(), theta.eval(c)));
    }
    let ws = weight_spaces(&m);
    let w = theta.eval(lf.generator());
    let line = m.to_dense(&m.one());
    assert!(ws.spaces[&w].contains(&line));
}

#[test]
fn sign_module_generator_is_negated_by_s() {
    let f5 = gf(5, 1);
    let k = make_coeff_field(7, 1).unwrap();
    let m = InducedModule::normalizer(&f5, Sign::Minus, k.field());
    let v = m.act(&m.sl2().s(), &m.one()).unwrap();
    assert_eq!(v, m.one().scale(m.coeff(), m.coeff().neg(1)));
    let p = InducedModule::normalizer(&f5, Sign::Plus, k.field());
    assert_eq!(p.act(&p.sl2().s(), &p.one()).unwrap(), p.one());
}

#[test]
fn identity_acts_trivially() {
    let theta = character(5, 13, 4);
    let m = InducedModule::torus(&theta);
    for j in 0..m.dim() as u32 {
        assert_eq!(m.act(&m.sl2().identity(), &m.basis(j)).unwrap(), m.basis(j));
    }
}

#[test]
fn unipotent_sum_squares_to_q_times_itself() {
    let f3 = gf(3, 1);
    let tr = Character::trivial(&gf(3, 2), &make_coeff_field(7, 1).unwrap()).unwrap();
    let m = InducedModule::torus(&tr);
    let u = m.ubar(&f3).unwrap();
    let uu = u.mul(&u, m.sl2(), m.coeff());
    for j in [0u32, 5, 17, 44, 89] {
        let v = m.basis(j);
        let lhs = m.act_algebra(&uu, &v).unwrap();
        let rhs = m.act_algebra(&u, &v).unwrap().scale(m.coeff(), 3);
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn spin_examples() {
    let theta = character(5, 7, 4);
    let m = InducedModule::borel(&theta);
    let ops = m.generator_ops();
    assert!(spin(m.coeff(), m.dim(), &ops, &[m.to_dense(&m.one())]).is_full());
    assert_eq!(spin(m.coeff(), m.dim(), &ops, &[]).dim(), 0);

    let tr = Character::trivial(&gf(5, 1), &make_coeff_field(7, 1).unwrap()).unwrap();
    let b = InducedModule::borel(&tr);
    let f = b.coeff();
    let s1 = b.act(&b.sl2().s(), &b.one()).unwrap();
    let eta = b.one().sub(f, &s1);
    let st = spin(f, b.dim(), &b.generator_ops(), &[b.to_dense(&eta)]);
    assert_eq!(st.dim(), 5);
    assert_eq!(st.dim() + 1, b.dim());
}

#[test]
fn weight_space_examples() {
    let k7 = make_coeff_field(7, 1).unwrap();
    let tr = Character::trivial(&gf(3, 1), &k7).unwrap();
    let ws = weight_spaces(&InducedModule::torus(&tr));
    assert_eq!(ws.total(), 12);
    assert_eq!(ws.deficiency(), 0);

    let k3 = make_coeff_field(3, 1).unwrap();
    let tr = Character::trivial(&gf(7, 1), &k3).unwrap();
    let ws = weight_spaces(&InducedModule::torus(&tr));
    assert!(ws.total() < 56);
}

#[test]
fn lambda_identities_hold() {
    for (q, r) in [(3, 7), (5, 7), (7, 11), (9, 13)] {
        assert_passed(&lambda_identities(&gf_from_size(q), r).unwrap());
    }
}

#[test]
fn lambda_first_identity_instance() {
    let f5 = gf(5, 1);
    let k = make_coeff_field(7, 1).unwrap();
    let m = InducedModule::normalizer(&f5, Sign::Minus, k.field());
    let lhs = m.act(&m.sl2().eps(2), &m.lambda_vec(3).unwrap()).unwrap();
    let rhs = m.lambda_vec(2).unwrap().scale(m.coeff(), m.coeff().neg(1));
    assert_eq!(lhs, rhs);
    assert!(m.lambda_vec(0).is_err());
}

#[test]
fn decomposition_splits_into_halves() {
    for (q, r) in [(3, 5), (5, 7), (7, 13)] {
        let rep = decomposition_check(&gf_from_size(q), r).unwrap();
        assert_passed(&rep);
    }
    assert!(decomposition_check(&gf(5, 1), 2).is_err());
}

#[test]
fn principal_series_maps() {
    let theta = character(5, 13, 4);
    assert_passed(&phi_check(&theta, 3, 100).unwrap());
    let theta2 = Character::new(&gf(5, 1), &make_coeff_field(7, 2).unwrap(), 1).unwrap();
    assert_passed(&phi_check(&theta2, 4, 50).unwrap());
}

#[test]
fn jordan_trivial_q7_r3() {
    let tr = Character::trivial(&gf(7, 1), &make_coeff_field(3, 1).unwrap()).unwrap();
    let rep = jordan_on_v(&tr).unwrap();
    assert_eq!(rep.block_sizes(), vec![1, 1, 3, 3]);
    assert_eq!(rep.form.multiset(), rep.predicted());
    assert_eq!(rep.min_poly, rep.predicted_min_poly());
    let j = &rep.form;
    assert_eq!(rep.operator.mul(&j.transition), j.transition.mul(&j.jordan));
}

#[test]
fn jordan_diagonalizable_when_r_coprime() {
    let tr = Character::trivial(&gf(5, 1), &make_coeff_field(13, 1).unwrap()).unwrap();
    let rep = jordan_on_v(&tr).unwrap();
    assert!(rep.form.is_diagonal());
    assert_eq!(rep.min_poly, rep.predicted_min_poly());
    assert_eq!(rep.kappa, 1);
}

#[test]
fn jordan_twisted_q7_r3() {
    let theta = Character::new(&gf(7, 1), &CoeffField::for_units(3, 6).unwrap(), 1).unwrap();
    assert_eq!(theta.order(), 2);
    let rep = jordan_on_v(&theta).unwrap();
    let f = &rep.coeff;
    assert_ne!(rep.kappa, f.inv(rep.kappa).unwrap());
    assert_eq!(rep.form.multiset(), rep.predicted());
    assert_eq!(rep.min_poly, rep.predicted_min_poly());
    // a character of order 3 has no values in characteristic 3
    assert!(make_coeff_field(3, 3).is_err());
}

#[test]
fn meataxe_examples() {
    let one = MatrixRep::new(make_coeff_field(7, 1).unwrap().field(), 1, vec![]);
    assert!(matches!(is_simple(&one, 1, DEFAULT_SAMPLES).unwrap(), Verdict::Simple));

    let theta4 = character(5, 7, 4);
    let m = InducedModule::borel(&theta4);
    let rep = MatrixRep::from_module(&m);
    assert!(matches!(is_simple(&rep, 1, DEFAULT_SAMPLES).unwrap(), Verdict::Simple));
    assert_eq!(chop(&rep, 1, DEFAULT_SAMPLES).unwrap(), vec![6]);
    assert_eq!(eigenline_simple(&m, BRUTE_FORCE_LIMIT), Some(true));

    // over GF(7) the quadratic twist stays simple since 5 is not a square mod 7
    let theta2 = Character::new(&gf(5, 1), &make_coeff_field(7, 2).unwrap(), 1).unwrap();
    let rep2 = MatrixRep::from_module(&InducedModule::borel(&theta2));
    assert!(matches!(is_simple(&rep2, 1, DEFAULT_SAMPLES).unwrap(), Verdict::Simple));
    assert_eq!(brute_force_simple(&rep2, BRUTE_FORCE_LIMIT), Some(true));

    let k49 = CoeffField::for_units(7, 4).unwrap();
    let theta2 = Character::new(&gf(5, 1), &k49, 2).unwrap();
    let m2 = InducedModule::borel(&theta2);
    let rep2 = MatrixRep::from_module(&m2);
    assert!(matches!(is_simple(&rep2, 1, DEFAULT_SAMPLES).unwrap(), Verdict::Reducible(_)));
    assert_eq!(chop(&rep2, 1, DEFAULT_SAMPLES).unwrap(), vec![3, 3]);
    assert_eq!(eigenline_simple(&m2, BRUTE_FORCE_LIMIT), Some(false));

    let tr = Character::trivial(&gf(5, 1), &make_coeff_field(7, 1).unwrap()).unwrap();
    let b = MatrixRep::from_module(&InducedModule::borel(&tr));
    assert_eq!(chop(&b, 1, DEFAULT_SAMPLES).unwrap(), vec![1, 5]);
    assert_eq!(brute_force_simple(&b, BRUTE_FORCE_LIMIT), Some(false));
}

#[test]
fn normalizer_summands_fill_the_torus_module() {
    let f5 = gf(5, 1);
    let k = make_coeff_field(7, 1).unwrap();
    let mut dims = Vec::new();
    for sign in [Sign::Plus, Sign::Minus] {
        let m = InducedModule::normalizer(&f5, sign, k.field());
        dims.extend(chop(&MatrixRep::from_module(&m), 5, DEFAULT_SAMPLES).unwrap());
    }
    assert_eq!(dims.iter().sum::<usize>(), 30);
}

#[test]
fn trivial_character_generation_small() {
    let f3 = gf(3, 1);
    assert_passed(&lemma21(&f3, 7, 0, 0, Some(&[1, 1])).unwrap());
    assert!(lemma21(&f3, 7, 0, 0, Some(&[1, 6])).is_err());
    assert_passed(&lemma21(&f3, 7, 10, 9, None).unwrap());
}

#[test]
fn twisted_character_generation_small() {
    let theta = character(5, 7, 4);
    assert_passed(&lemma41(&theta, 2, 11, None).unwrap());
    assert!(lemma41(&theta, 0, 0, Some(&[0, 0, 0, 0])).is_err());
}

#[test]
fn normalizer_quotients_small() {
    for q in [3, 5] {
        assert_passed(&mplus(&gf_from_size(q), 11, 5, 2).unwrap());
    }
}

