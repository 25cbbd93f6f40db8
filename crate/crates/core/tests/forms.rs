mod common;

use common::{sp, term};
use fockforms::multilinear::{contraction, MixedForm};
use fockforms::scalar::{rat, Rational, Scalar};
use fockforms::schur::Partition;
use fockforms::schwartz::*;
use fockforms::Error;

fn c_q(q: i32) -> Scalar {
    &Scalar::sqrt2_pow(q) * &minus_i_over_4pi().pow(q as u32)
}

#[test]
fn vacuum_forms() {
    let f = Forms::new(sp(1, 1, 1));
    assert_eq!(f.phi_nq0(), term(&[((1, 1), 1)], &[(1, 2)], &[], c_q(1)));
    let f = Forms::new(sp(2, 1, 1));
    let expected = term(&[((1, 1), 1)], &[(1, 3)], &[], c_q(1)) + term(&[((2, 1), 1)], &[(2, 3)], &[], c_q(1));
    assert_eq!(f.phi_nq0(), expected);
    assert!(matches!(Forms::new(sp(1, 1, 2)).phi_bracket(&"1".parse().unwrap()), Err(Error::Precondition(_))));
}

#[test]
fn tensor_forms() {
    let f = Forms::new(sp(1, 1, 1));
    assert_eq!(f.phi_0ell(&[1]).unwrap(), term(&[((1, 1), 1)], &[], &[1], minus_i_over_4pi()));
    assert_eq!(f.phi_0ell(&[]).unwrap(), MixedForm::unit());
    assert!(f.phi_0ell(&[2]).is_err());
}

#[test]
fn genus_two_factorises() {
    let (p, q) = (2, 1);
    let one = Forms::new(sp(p, q, 1));
    let two = Forms::new(sp(p, q, 2));
    let to_second = vec![vec![rat(0, 1)], vec![rat(1, 1)]];
    for (l1, l2) in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1)] {
        let x1 = one.phi(&vec![1; l1]).unwrap();
        let x2 = substitute_columns(&one.phi(&vec![1; l2]).unwrap(), &to_second);
        let input: Vec<u8> = [vec![1; l1], vec![2; l2]].concat();
        assert_eq!(two.phi(&input).unwrap(), x1.mul(&x2), "({l1},{l2})");
    }
}

#[test]
fn bracket_forms() {
    let params = sp(2, 1, 1);
    let f = Forms::new(params);
    let one = f.phi_bracket(&"1".parse().unwrap()).unwrap();
    assert_eq!(one.len(), 1);
    assert_eq!(one[0].1, f.phi(&[1]).unwrap());
    let two = f.phi_bracket(&"2".parse().unwrap()).unwrap();
    let c = contraction(&params, 1, 2, true).unwrap();
    for (_, x) in &two {
        assert!(!x.is_zero());
        assert!(c.apply(x).is_zero());
    }
    assert!(f.phi_bracket(&"1,1".parse().unwrap()).is_err());
}

#[test]
fn differential_examples() {
    let f = Forms::new(sp(2, 1, 1));
    assert!(f.d_operator(DPart::Full).apply(&f.phi_nq0()).is_zero());
    assert!(f.d_operator(DPart::FDoublePrime).apply(&f.phi_ql(1).unwrap()).is_zero());
    assert!(f.d_operator(DPart::FPrime).apply(&f.phi_ql(1).unwrap()).is_zero());
    let g = Forms::new(sp(1, 1, 1));
    let x = term(&[], &[], &[2], Scalar::one());
    assert_eq!(g.d_v().apply(&x), term(&[], &[(1, 2)], &[1], Scalar::one()));
}

#[test]
fn psi_two_ways() {
    let f = Forms::new(sp(2, 1, 1));
    for ell in 0..=2 {
        assert_eq!(f.psi(ell).unwrap(), f.psi_direct(ell).unwrap(), "l={ell}");
    }
}

#[test]
fn euler_forms() {
    assert!(Forms::new(sp(2, 1, 1)).euler_form().is_zero());
    assert!(Forms::new(sp(1, 3, 1)).euler_form().is_zero());
    let minus_half_over_pi = Scalar::from_parts(rat(-1, 2), 0, 0, -1).unwrap();
    assert_eq!(Forms::new(sp(1, 2, 1)).euler_form(), term(&[], &[(1, 2), (1, 3)], &[], minus_half_over_pi));
}

fn run(id: Identity, p: usize, q: usize, n: usize, ell: usize) -> VerificationReport {
    verify(&Request::new(id, sp(p, q, n), ell)).unwrap()
}

#[test]
fn verify_examples() {
    assert!(run(Identity::Closedness, 2, 1, 1, 2).pass);
    assert!(run(Identity::Lowering, 1, 1, 1, 0).pass);
    let rec = verify(&Request::new(Identity::Recursion, sp(2, 2, 1), 1).with_j(1)).unwrap();
    assert!(rec.pass);
    assert_eq!(rec.j, Some(1));
}

#[test]
fn corrupted_constant_is_reported() {
    let req = Request::new(Identity::Recursion, sp(2, 2, 1), 1).with_j(1).with_mutation(Mutation::SigmaPosQuarterPi);
    let r = verify(&req).unwrap();
    assert!(!r.pass);
    assert!(r.residual_terms > 0);
    assert!(r.residual.as_array().is_some_and(|a| !a.is_empty() && a.len() <= 5));
    assert_eq!(r.failing.as_deref(), Some("j=1"));
}

#[test]
fn holomorphicity_edge_cases() {
    for ell in 0..=2 {
        let r = verify(&Request::new(Identity::Holomorphicity, sp(2, 1, 1), ell)).unwrap();
        assert!(r.pass, "l={ell}: {:?}", r.failing);
    }
    let wrong = Request::new(Identity::Holomorphicity, sp(2, 1, 1), 2).with_lambda(Partition::new(vec![1, 1]).unwrap());
    assert!(verify(&wrong).is_err());
}

#[test]
fn unknown_identity_is_rejected() {
    assert!("closed".parse::<Identity>().is_err());
    for id in Identity::ALL {
        assert_eq!(id.name().parse::<Identity>().unwrap(), id);
    }
}

#[test]
fn sigma_is_gl_invariant_on_examples() {
    let params = sp(2, 1, 2);
    let a: Vec<Vec<Rational>> = vec![vec![rat(1, 1), rat(1, 1)], vec![rat(0, 1), rat(1, 1)]];
    let ainv: Vec<Vec<Rational>> = vec![vec![rat(1, 1), rat(-1, 1)], vec![rat(0, 1), rat(1, 1)]];
    let u = vec![rat(1, 1), rat(2, 1)];
    let au: Vec<Rational> = (0..2).map(|i| (0..2).map(|j| &ainv[i][j] * &u[j]).sum()).collect();
    let lhs = substitute_columns(&sigma_word(&params, &[au]).unwrap(), &a);
    assert_eq!(lhs, sigma_word(&params, &[u]).unwrap());
}
