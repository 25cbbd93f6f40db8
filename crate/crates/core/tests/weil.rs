mod common;

use common::{random_form, sp, term};
use fockforms::multilinear::{z_del, z_mul, LinearOperator, MixedForm, SpaceParams};
use fockforms::scalar::{rat, Rational, Scalar};
use fockforms::weil::*;
use num_traits::Zero;
use proptest::prelude::*;
use rand::{seq::SliceRandom, Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Mat = Vec<Vec<Rational>>;

/// Matrix of `X_{rs} v = (e_r, v) e_s - (e_s, v) e_r`.
fn x_matrix(params: &SpaceParams, r: u8, s: u8) -> Mat {
    let m = params.m();
    let mut x = vec![vec![Rational::zero(); m]; m];
    x[s as usize - 1][r as usize - 1] += rat(params.eps(r), 1);
    x[r as usize - 1][s as usize - 1] -= rat(params.eps(s), 1);
    x
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let m = a.len();
    (0..m).map(|i| (0..m).map(|j| (0..m).map(|k| &a[i][k] * &b[k][j]).sum()).collect()).collect()
}

/// Coordinates of an element of o(V) in the basis `X_{rs}`, `r < s`.
fn decompose(params: &SpaceParams, c: &Mat) -> Vec<(u8, u8, Rational)> {
    let m = params.m() as u8;
    let mut out = Vec::new();
    for r in 1..=m {
        for s in r + 1..=m {
            let v = &c[s as usize - 1][r as usize - 1] / rat(params.eps(r), 1);
            if !v.is_zero() {
                out.push((r, s, v));
            }
        }
    }
    out
}

fn orthogonal_bracket_holds(params: &SpaceParams, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = params.m() as u8;
    let pairs: Vec<(u8, u8)> = (1..=m).flat_map(|r| (r + 1..=m).map(move |s| (r, s))).collect();
    let samples: Vec<MixedForm> = (0..3).map(|_| random_form(&mut rng, params, 4, 3, 0, 0)).collect();
    for &(r, s) in &pairs {
        for &(t, u) in &pairs {
            let (a, b) = (x_matrix(params, r, s), x_matrix(params, t, u));
            let ab = mat_mul(&a, &b);
            let ba = mat_mul(&b, &a);
            let comm: Mat = ab.iter().zip(&ba).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p - q).collect()).collect();
            let rhs = LinearOperator::sum(
                "",
                decompose(params, &comm)
                    .into_iter()
                    .map(|(i, j, c)| omega_orthogonal(params, i, j).unwrap().scaled(Scalar::from_rational(c)))
                    .collect(),
            );
            let lhs = LinearOperator::commutator(&omega_orthogonal(params, r, s).unwrap(), &omega_orthogonal(params, t, u).unwrap());
            for x in &samples {
                assert_eq!(lhs.apply(x), rhs.apply(x), "[X{r}{s}, X{t}{u}] for {params:?}");
            }
        }
    }
}

#[test]
fn orthogonal_bracket_fidelity() {
    for (p, q, n) in [(1, 1, 1), (2, 1, 1), (1, 2, 2), (2, 2, 1)] {
        orthogonal_bracket_holds(&sp(p, q, n), 7 + p as u64);
    }
}

#[test]
fn kprime_bracket_fidelity() {
    for (p, q, n) in [(1, 1, 1), (2, 1, 2), (1, 2, 2)] {
        let params = sp(p, q, n);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let samples: Vec<MixedForm> = (0..4).map(|_| random_form(&mut rng, &params, 5, 3, 0, 0)).collect();
        let k = |a: u8, b: u8| omega_kprime(&params, a, b).unwrap();
        let cols: Vec<u8> = params.columns().collect();
        for &j in &cols {
            for &kk in &cols {
                for &j2 in &cols {
                    for &k2 in &cols {
                        let lhs = LinearOperator::commutator(&k(j, kk), &k(j2, k2));
                        let mut terms = Vec::new();
                        if j == k2 {
                            terms.push(k(j2, kk));
                        }
                        if j2 == kk {
                            terms.push(k(j, k2).scaled(Scalar::from_int(-1)));
                        }
                        let rhs = LinearOperator::sum("", terms);
                        for x in &samples {
                            assert_eq!(lhs.apply(x), rhs.apply(x), "[k'{j}{kk}, k'{j2}{k2}]");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn generator_examples() {
    let params = sp(1, 1, 1);
    let one = MixedForm::unit();
    assert!(omega(LieGenerator::SpK(1, 1), &params).unwrap().apply(&one).is_zero());
    let quarter_over_pi = Scalar::from_parts(rat(1, 4), 0, 0, -1).unwrap();
    assert_eq!(omega(LieGenerator::OP(1, 2), &params).unwrap().apply(&one), term(&[((1, 1), 1), ((2, 1), 1)], &[], &[], quarter_over_pi));
    assert!(omega(LieGenerator::Lowering, &sp(1, 1, 2)).is_err());
}

#[test]
fn lowering_on_spanning_set() {
    let params = sp(2, 1, 1);
    let lower = omega(LieGenerator::Lowering, &params).unwrap();
    let minus = omega(LieGenerator::SpPMinus(1, 1), &params).unwrap().scaled(Scalar::from_parts(rat(1, 4), 1, 0, 0).unwrap());
    let vars = [(1u8, 1u8), (2, 1), (3, 1)];
    let mut monomials = vec![MixedForm::unit()];
    for _ in 0..4 {
        let next: Vec<MixedForm> = monomials.iter().flat_map(|x| vars.iter().map(move |&(k, c)| z_mul(k, c).apply(x))).collect();
        monomials.extend(next);
    }
    for x in &monomials {
        assert_eq!(lower.apply(x), minus.apply(x));
    }
}

#[test]
fn degree_behaviour() {
    let params = sp(2, 2, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let compact = omega(LieGenerator::OKk(1, 2), &params).unwrap();
    let noncompact = omega(LieGenerator::OP(2, 3), &params).unwrap();
    assert!(compact.apply(&MixedForm::unit()).is_zero());
    for _ in 0..20 {
        let x = random_form(&mut rng, &params, 1, 4, 0, 0);
        let Some((b, _)) = x.terms().next() else { continue };
        let d = b.fock.degree() as i64;
        assert!(compact.apply(&x).terms().all(|(t, _)| t.fock.degree() as i64 == d));
        assert!(noncompact.apply(&x).terms().all(|(t, _)| (t.fock.degree() as i64 - d).abs() == 2));
    }
}

#[test]
fn intertwine_examples() {
    let params = sp(1, 1, 1);
    let x = term(&[((1, 1), 1), ((2, 1), 2)], &[], &[], Scalar::one());
    let minus = intertwine(&[Atom::new(AtomKind::XMinusD, 1, 1)], &params).unwrap();
    let expected = z_mul(1, 1).scaled(Scalar::from_parts(rat(1, 2), 3, 0, -1).unwrap());
    assert_eq!(minus.apply(&x), expected.apply(&x));
    let plus = intertwine(&[Atom::new(AtomKind::XPlusD, 2, 1)], &params).unwrap();
    let expected = z_del(2, 1).scaled(Scalar::from_parts(rat(-2, 1), 1, 0, 0).unwrap());
    assert_eq!(plus.apply(&x), expected.apply(&x));
    assert!(intertwine_atom(Atom::new(AtomKind::XPlusD, 3, 1), &params).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn disjoint_atoms_commute(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let params = sp(2, 2, 2);
        let mut slots: Vec<(u8, u8)> = (1..=4u8).flat_map(|k| (1..=2u8).map(move |c| (k, c))).collect();
        slots.shuffle(&mut rng);
        let kind = |rng: &mut ChaCha8Rng| if rng.gen_bool(0.5) { AtomKind::XMinusD } else { AtomKind::XPlusD };
        let a: Vec<Atom> = slots[..2].iter().map(|&(k, c)| Atom::new(kind(&mut rng), k, c)).collect();
        let b: Vec<Atom> = slots[2..4].iter().map(|&(k, c)| Atom::new(kind(&mut rng), k, c)).collect();
        let ab = intertwine(&[a.clone(), b.clone()].concat(), &params).unwrap();
        let ba = intertwine(&[b, a].concat(), &params).unwrap();
        let x = random_form(&mut rng, &params, 5, 4, 1, 1);
        prop_assert_eq!(ab.apply(&x), ba.apply(&x));
    }
}
