//! One-dimensional filter families: interpolatory, pseudo-spline type u, Daubechies,
//! Haar pairs and complex symmetric pairs.

use crate::factorize::{abs_square_factor_realline, fejer_riesz, Phase, RootChoice};
use crate::lattice::{rational_1d, Filter1D};
use crate::scalar::{rat_to_f64, Rat, Scalar, C64, CQ};
use crate::{Error, Result};
use num::bigint::BigInt;
use num::{One, Zero};

/// cos²(ω/2) = (e^{iω} + 2 + e^{−iω})/4.
pub fn cos2() -> Filter1D<CQ> {
    rational_1d(-1, &[1, 2, 1], 4)
}

/// sin²(ω/2) = (−e^{iω} + 2 − e^{−iω})/4.
pub fn sin2() -> Filter1D<CQ> {
    rational_1d(-1, &[-1, 2, -1], 4)
}

/// Σ c_j x^j with x a filter, by Horner's rule.
pub fn poly_of<T: Scalar>(coeffs: &[T], x: &Filter1D<T>) -> Filter1D<T> {
    let mut acc = Filter1D::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(x).add(&Filter1D::monomial([0], c.clone()));
    }
    acc
}

pub fn real_poly_to_cq(p: &[Rat]) -> Vec<CQ> {
    p.iter().map(|v| CQ::new(v.clone(), Rat::zero())).collect()
}

/// (2j−1)!!/(2j)!!, with the empty product 1 at j = 0.
pub fn double_factorial_ratio(j: usize) -> Rat {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 1..=j {
        num *= BigInt::from(2 * i - 1);
        den *= BigInt::from(2 * i);
    }
    Rat::new(num, den)
}

/// P_n(x) = Σ_{j<n} (2j−1)!!/(2j)!! x^j, the Taylor polynomial of (1−x)^{−1/2}.
pub fn taylor_p(n: usize) -> Vec<Rat> {
    (0..n).map(double_factorial_ratio).collect()
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// The interpolatory filter a^I_{2n}: cos^{2n}(ω/2) Σ_{j<n} C(n−1+j, j) sin^{2j}(ω/2).
pub fn interpolatory(n: usize) -> Filter1D<CQ> {
    assert!(n >= 1, "n must be positive");
    let coeffs: Vec<CQ> = (0..n)
        .map(|j| CQ::new(Rat::from_integer(binomial(n - 1 + j, j)), Rat::zero()))
        .collect();
    let mut c = Filter1D::delta();
    for _ in 0..n {
        c = c.mul(&cos2());
    }
    c.mul(&poly_of(&coeffs, &sin2()))
}

/// û(ω) = ½(1+e^{−iω})(sin^{2n}(ω/2) R(x) + P_n(x)) with x = sin²(ω/2).
pub fn u_filter(n: usize, r: &[Rat]) -> Filter1D<CQ> {
    assert!(n >= 1, "n must be positive");
    let x = sin2();
    let mut xn = Filter1D::delta();
    for _ in 0..n {
        xn = xn.mul(&x);
    }
    let p = poly_of(&real_poly_to_cq(&taylor_p(n)), &x);
    let body = xn.mul(&poly_of(&real_poly_to_cq(r), &x)).add(&p);
    rational_1d(0, &[1, 1], 2).mul(&body)
}

pub fn haar() -> Filter1D<CQ> {
    rational_1d(0, &[1, 1], 2)
}

/// û = ½(e^{ijω} + e^{−i(j+1)ω}), v̂ = ½e^{−ikω}(e^{ijω} − e^{−i(j+1)ω}).
pub fn haar_pair(j: i64, k: i64) -> (Filter1D<CQ>, Filter1D<CQ>) {
    let h = CQ::from_ratio(1, 2);
    let u = Filter1D::from_taps([([-j], h.clone()), ([j + 1], h.clone())]);
    let v = Filter1D::from_taps([([k - j], h.clone()), ([k + j + 1], -h)]);
    (u, v)
}

/// The Daubechies orthonormal filter a^D_n with |â^D_n|² = â^I_{2n}, support [1−n, n],
/// real coefficients summing to 1.
pub fn daubechies(n: usize) -> Result<Filter1D<C64>> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    if n == 1 {
        return Ok(haar().to_c64());
    }
    let q = fejer_riesz(&interpolatory(n), Phase::MatchPaper)?;
    let s = q.coeff_sum();
    let rot = s.conj() / s.norm();
    Ok(q.map(|v| {
        let w = v * rot;
        C64::new(w.re, 0.0)
    }))
}

/// Coefficients of T̃(x) = (1 − (1−x)P(x)²)/x with P = P_n + x^n R (exact).
pub fn symmetric_pair_remainder(n: usize, r: &[Rat]) -> Vec<Rat> {
    let mut p = taylor_p(n);
    for (i, c) in r.iter().enumerate() {
        let idx = n + i;
        if p.len() <= idx {
            p.resize(idx + 1, Rat::zero());
        }
        p[idx] += c;
    }
    let mut p2 = vec![Rat::zero(); 2 * p.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in p.iter().enumerate() {
            p2[i + j] += a * b;
        }
    }
    // 1 − (1 − x) P²
    let mut t = vec![Rat::zero(); p2.len() + 1];
    t[0] = Rat::one();
    for (i, c) in p2.iter().enumerate() {
        t[i] -= c;
        t[i + 1] += c;
    }
    assert!(t[0].is_zero(), "P(0) must be 1");
    let mut out: Vec<Rat> = t[1..].to_vec();
    while out.last().is_some_and(|v| v.is_zero()) {
        out.pop();
    }
    out
}

/// R used by default. For even n with R = 0, T̃ has a root of odd multiplicity at
/// x = 0; the constant (2n−1)!!/(2n)!! removes it.
pub fn default_pair_r(n: usize) -> Vec<Rat> {
    if n % 2 == 0 {
        vec![double_factorial_ratio(n)]
    } else {
        Vec::new()
    }
}

/// Complex symmetric pair: u = u_filter(n, R) symmetric about ½ and
/// v̂ = ½(1−e^{−iω}) Q(sin²(ω/2)) with |Q(x)|² = T̃(x).
pub fn complex_symmetric_pair(n: usize) -> Result<(Filter1D<C64>, Filter1D<C64>)> {
    complex_symmetric_pair_with(n, &default_pair_r(n), RootChoice::LowerHalfPlane)
}

pub fn complex_symmetric_pair_with(
    n: usize,
    r: &[Rat],
    choice: RootChoice,
) -> Result<(Filter1D<C64>, Filter1D<C64>)> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let u = u_filter(n, r).to_c64();
    let t: Vec<f64> = symmetric_pair_remainder(n, r).iter().map(rat_to_f64).collect();
    let qx = abs_square_factor_realline(&t, choice)?;
    let x = sin2().to_c64();
    let qf = poly_of(&qx, &x);
    let half = C64::new(0.5, 0.0);
    let v = Filter1D::new(0, vec![half, -half]).mul(&qf).trimmed_tol(1e-15);
    Ok((u, v))
}

/// Exact x·T̃(x) − (1 − (1−x)P²) check in coefficients, for tests and reports.
pub fn pair_identity_residual(n: usize, r: &[Rat], q: &[C64]) -> f64 {
    let t = symmetric_pair_remainder(n, r);
    let mut qq = vec![C64::new(0.0, 0.0); 2 * q.len().max(1)];
    for (i, a) in q.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            qq[i + j] += a * b.conj();
        }
    }
    let len = qq.len().max(t.len());
    (0..len)
        .map(|i| {
            let tv = t.get(i).map(rat_to_f64).unwrap_or(0.0);
            (qq.get(i).copied().unwrap_or_default() - C64::new(tv, 0.0)).norm()
        })
        .fold(0.0, f64::max)
}
