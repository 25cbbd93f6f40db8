//! Shared helpers and independent oracles for the integration tests.
#![allow(dead_code)]

use fockforms::multilinear::{Basis, ExteriorMonomial, FockMonomial, MixedForm, SpaceParams};
use fockforms::scalar::{rat, Rational, Scalar};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn sp(p: usize, q: usize, n: usize) -> SpaceParams {
    SpaceParams::new(p, q, n).unwrap()
}

pub fn r(n: i64) -> Rational {
    rat(n, 1)
}

pub fn basis(z: &[((u8, u8), u32)], w: &[(u8, u8)], t: &[u8]) -> Basis {
    let (sign, ext) = ExteriorMonomial::from_product(w).expect("distinct generators");
    assert_eq!(sign, 1, "generators must be given in canonical order");
    Basis::new(FockMonomial::from_exponents(z.iter().copied()), ext, t.to_vec())
}

pub fn term(z: &[((u8, u8), u32)], w: &[(u8, u8)], t: &[u8], c: Scalar) -> MixedForm {
    MixedForm::term(basis(z, w, t), c)
}

pub fn random_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    let r = Scalar::from_rational(rat(rng.gen_range(-4..=4), rng.gen_range(1..=3)));
    let e = Scalar::from_parts(rat(1, 1), rng.gen_range(0..4), rng.gen_range(0..2), rng.gen_range(-2..=2)).unwrap();
    &r * &e
}

/// Random form with Fock degree <= `max_deg`, exterior degree <= `max_ext`,
/// words of length <= `max_word`.
pub fn random_form(
    rng: &mut ChaCha8Rng,
    params: &SpaceParams,
    terms: usize,
    max_deg: u32,
    max_ext: usize,
    max_word: usize,
) -> MixedForm {
    let m = params.m() as u8;
    let mut out = MixedForm::zero();
    for _ in 0..terms {
        let mut fock = FockMonomial::one();
        for _ in 0..rng.gen_range(0..=max_deg) {
            fock = fock.times_var(rng.gen_range(1..=m), rng.gen_range(1..=params.n as u8));
        }
        let mut gens: Vec<(u8, u8)> = Vec::new();
        for _ in 0..rng.gen_range(0..=max_ext) {
            let g = (rng.gen_range(1..=params.p as u8), rng.gen_range(params.p as u8 + 1..=m));
            if !gens.contains(&g) {
                gens.push(g);
            }
        }
        let ext = ExteriorMonomial::from_product(&gens).map(|(_, e)| e).unwrap_or_else(ExteriorMonomial::one);
        let word: Vec<u8> = (0..rng.gen_range(0..=max_word)).map(|_| rng.gen_range(1..=m)).collect();
        out.add_term(Basis::new(fock, ext, word), random_scalar(rng));
    }
    out
}

/// Every exterior monomial of `Lambda(p*)`.
pub fn all_exterior(params: &SpaceParams) -> Vec<ExteriorMonomial> {
    let gens: Vec<(u8, u8)> = params.positive().flat_map(|a| params.negative().map(move |mu| (a, mu))).collect();
    (0u32..1 << gens.len())
        .map(|mask| {
            let chosen: Vec<(u8, u8)> = gens.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, g)| *g).collect();
            ExteriorMonomial::from_product(&chosen).unwrap().1
        })
        .collect()
}

/// Number of semistandard fillings by the hook-content formula.
pub fn hook_content(parts: &[usize], n: usize) -> usize {
    let conj: Vec<usize> = (0..parts.first().copied().unwrap_or(0)).map(|c| parts.iter().filter(|&&b| b > c).count()).collect();
    let mut num: i64 = 1;
    let mut den: i64 = 1;
    for (i, &b) in parts.iter().enumerate() {
        for j in 0..b {
            let content = j as i64 - i as i64;
            num *= n as i64 + content;
            den *= ((b - j - 1) + (conj[j] - i - 1) + 1) as i64;
        }
    }
    if num <= 0 {
        0
    } else {
        (num / den) as usize
    }
}

/// Integer inverse diagonal bound: `(G^{-1})_ii` as a float upper estimate.
fn inverse_diagonal(g: &[Vec<i64>]) -> Vec<f64> {
    let m = g.len();
    let mut a: Vec<Vec<f64>> = g.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
    let mut inv: Vec<Vec<f64>> = (0..m).map(|i| (0..m).map(|j| f64::from(u8::from(i == j))).collect()).collect();
    for c in 0..m {
        let p = (c..m).max_by(|&x, &y| a[x][c].abs().total_cmp(&a[y][c].abs())).unwrap();
        a.swap(c, p);
        inv.swap(c, p);
        let d = a[c][c];
        for k in 0..m {
            a[c][k] /= d;
            inv[c][k] /= d;
        }
        for rr in 0..m {
            if rr != c {
                let f = a[rr][c];
                for k in 0..m {
                    a[rr][k] -= f * a[c][k];
                    inv[rr][k] -= f * inv[c][k];
                }
            }
        }
    }
    (0..m).map(|i| inv[i][i]).collect()
}

/// Brute force over the box `|x_i| <= sqrt((G^{-1})_ii N)`: all integer `x`
/// with `x^T G x = N`, sorted.
pub fn brute_force_shell(g: &[Vec<i64>], norm: i64) -> Vec<Vec<i64>> {
    let m = g.len();
    let radius: Vec<i64> = inverse_diagonal(g).iter().map(|d| (d * norm as f64).sqrt().floor() as i64 + 1).collect();
    let mut out = Vec::new();
    let mut x = vec![0i64; m];
    fn rec(k: usize, g: &[Vec<i64>], radius: &[i64], norm: i64, x: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if k == x.len() {
            let q: i64 = (0..x.len()).map(|i| (0..x.len()).map(|j| x[i] * g[i][j] * x[j]).sum::<i64>()).sum();
            if q == norm {
                out.push(x.clone());
            }
            return;
        }
        for v in -radius[k]..=radius[k] {
            x[k] = v;
            rec(k + 1, g, radius, norm, x, out);
        }
    }
    rec(0, g, &radius, norm, &mut x, &mut out);
    out.sort();
    out
}

/// E8 as the even vectors of `D8+`, in doubled coordinates `y = 2x`: all
/// entries even or all odd, `sum y = 0 mod 4`. Returns the `y` with
/// `(x, x) = sum y^2 / 4 = norm`.
pub fn e8_shell_doubled(norm: i64) -> Vec<[i64; 8]> {
    let mut out = Vec::new();
    let mut y = [0i64; 8];
    fn rec(k: usize, left: i64, y: &mut [i64; 8], out: &mut Vec<[i64; 8]>) {
        if k == 8 {
            let parity = y[0].rem_euclid(2);
            if left == 0 && y.iter().all(|v| v.rem_euclid(2) == parity) && y.iter().sum::<i64>().rem_euclid(4) == 0 {
                out.push(*y);
            }
            return;
        }
        let mut v = 0;
        while v * v <= left {
            v += 1;
        }
        for c in -(v - 1)..v {
            y[k] = c;
            rec(k + 1, left - c * c, y, out);
        }
    }
    rec(0, 4 * norm, &mut y, &mut out);
    out
}

/// Jacobi's four-square count `r_4(N) = 8 sum_{d | N, 4 does not divide d} d`.
pub fn jacobi_r4(n: i64) -> usize {
    if n == 0 {
        return 1;
    }
    8 * (1..=n).filter(|d| n % d == 0 && d % 4 != 0).sum::<i64>() as usize
}
