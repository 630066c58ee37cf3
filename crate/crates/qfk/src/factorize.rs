//! Spectral factorization: Fejér–Riesz on the torus and |Q(x)|² on the real line.

use crate::lattice::Filter1D;
use crate::scalar::{Scalar, C64};
use crate::{Error, Result};
use faer::Mat;
use std::f64::consts::PI;

/// Which of the two mirror-image Fejér–Riesz factors to return.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    /// Non-circle roots taken inside the unit disk in z = e^{−iω}.
    MatchPaper,
    /// The reflected conjugate of the `MatchPaper` factor.
    Conjugate,
}

/// Which root of each complex-conjugate pair goes into Q.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootChoice {
    LowerHalfPlane,
    UpperHalfPlane,
}

const GRID: usize = 4096;

/// Roots of Σ c_j z^j (ascending coefficients) via companion-matrix eigenvalues,
/// each polished by a few Newton steps.
pub fn poly_roots(coeffs: &[C64]) -> Result<Vec<C64>> {
    let mut c: Vec<C64> = coeffs.to_vec();
    while c.last().is_some_and(|v| v.norm() == 0.0) {
        c.pop();
    }
    let mut zeros = 0;
    while c.first().is_some_and(|v| v.norm() == 0.0) {
        c.remove(0);
        zeros += 1;
    }
    let n = c.len().saturating_sub(1);
    let mut roots = vec![C64::new(0.0, 0.0); zeros];
    if n == 0 {
        return Ok(roots);
    }
    let lead = c[n];
    let comp = Mat::<C64>::from_fn(n, n, |i, j| {
        if j == n - 1 {
            -c[i] / lead
        } else if i == j + 1 {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let ev = comp
        .eigenvalues()
        .map_err(|e| Error::Numerical(format!("companion eigenvalues: {e:?}")))?;
    for mut r in ev {
        for _ in 0..3 {
            let (p, dp) = horner_with_derivative(&c, r);
            if dp.norm() < 1e-8 * (1.0 + p.norm()) {
                break;
            }
            let step = p / dp;
            if !step.re.is_finite() || step.norm() > 1e-3 * (1.0 + r.norm()) {
                break;
            }
            r -= step;
        }
        roots.push(r);
    }
    Ok(roots)
}

fn horner_with_derivative(c: &[C64], z: C64) -> (C64, C64) {
    let mut p = C64::new(0.0, 0.0);
    let mut dp = C64::new(0.0, 0.0);
    for v in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + v;
    }
    (p, dp)
}

/// Ascending coefficients of Π (z − r_i).
pub fn poly_from_roots(roots: &[C64]) -> Vec<C64> {
    let mut p = vec![C64::new(1.0, 0.0)];
    for r in roots {
        let mut next = vec![C64::new(0.0, 0.0); p.len() + 1];
        for (j, v) in p.iter().enumerate() {
            next[j + 1] += v;
            next[j] -= v * r;
        }
        p = next;
    }
    p
}

/// Repeatedly divides out (z − r), returning the quotient and multiplicity.
fn deflate<T: Scalar>(mut p: Vec<T>, r: i64, tol: f64) -> (Vec<T>, usize) {
    let mut mult = 0;
    let scale: f64 = p.iter().map(|v| v.abs_f64()).sum::<f64>().max(1e-300);
    let rr = T::from_i64(r);
    while p.len() > 1 {
        let n = p.len() - 1;
        let mut q = vec![T::zero(); n];
        q[n - 1] = p[n].clone();
        for i in (1..n).rev() {
            q[i - 1] = p[i].clone() + rr.clone() * q[i].clone();
        }
        let rem = p[0].clone() + rr.clone() * q[0].clone();
        let vanishes = if T::EXACT { rem.is_zero() } else { rem.abs_f64() <= tol * scale };
        if !vanishes {
            break;
        }
        p = q;
        mult += 1;
    }
    (p, mult)
}

fn check_hermitian<T: Scalar>(t: &Filter1D<T>) -> Result<usize> {
    let lo = t.min();
    let hi = t.support_max().unwrap()[0];
    if lo != -hi {
        return Err(Error::InvalidParameter("trigonometric polynomial is not Hermitian".into()));
    }
    let scale = t.max_abs();
    for k in 0..=hi {
        let d = (t.at(k) - t.at(-k).conj()).abs_f64();
        if d > 1e-12 * scale.max(1e-300) && !(T::EXACT && d == 0.0) {
            return Err(Error::InvalidParameter("trigonometric polynomial is not Hermitian".into()));
        }
    }
    Ok(hi as usize)
}

/// Minimum of t̂ over a uniform grid on [0, 2π).
pub fn grid_min<T: Scalar>(t: &Filter1D<T>) -> f64 {
    let tf = t.to_c64();
    (0..GRID)
        .map(|i| tf.eval1(2.0 * PI * i as f64 / GRID as f64).re)
        .fold(f64::INFINITY, f64::min)
}

/// Factors a nonnegative Hermitian trigonometric polynomial t as |q̂|².
///
/// The factor has support [s, s+N] with s = −⌊N/2⌋ where t lives on [−N, N].
/// Its largest coefficient is made real positive.
pub fn fejer_riesz<T: Scalar>(t: &Filter1D<T>, phase: Phase) -> Result<Filter1D<C64>> {
    if t.is_zero() {
        return Ok(Filter1D::zero());
    }
    let n = check_hermitian(t)?;
    let min = grid_min(t);
    if min < -1e-6 {
        return Err(Error::NegativePoly { min });
    }
    if n == 0 {
        return Ok(Filter1D::new(0, vec![C64::new(t.at(0).to_c64().re.sqrt(), 0.0)]));
    }
    let p: Vec<T> = (0..=2 * n as i64).map(|j| t.at(j - n as i64)).collect();
    let (p, m_plus) = deflate(p, 1, 1e-9);
    let (p, m_minus) = deflate(p, -1, 1e-9);
    if m_plus % 2 == 1 || m_minus % 2 == 1 {
        return Err(Error::RootClusterFailure(format!(
            "odd multiplicity at z = ±1 ({m_plus}, {m_minus})"
        )));
    }
    let pf: Vec<C64> = p.iter().map(|v| v.to_c64()).collect();
    let roots = poly_roots(&pf)?;
    let mut selected = select_roots(&roots)?;
    selected.extend(std::iter::repeat(C64::new(1.0, 0.0)).take(m_plus / 2));
    selected.extend(std::iter::repeat(C64::new(-1.0, 0.0)).take(m_minus / 2));
    if selected.len() != n {
        return Err(Error::RootClusterFailure(format!(
            "selected {} roots for a degree-{n} factor",
            selected.len()
        )));
    }
    let mut qc = poly_from_roots(&selected);
    let energy: f64 = qc.iter().map(|v| v.norm_sqr()).sum();
    let s = (t.at(0).to_c64().re / energy).sqrt();
    let biggest = qc.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let anchor = *qc.iter().find(|v| v.norm() >= biggest * (1.0 - 1e-9)).unwrap();
    let rot = anchor.conj() / anchor.norm();
    for v in qc.iter_mut() {
        *v *= rot * s;
    }
    if phase == Phase::Conjugate {
        qc = qc.iter().rev().map(|v| v.conj()).collect();
    }
    let start = -((n / 2) as i64);
    let q = Filter1D::new(start, qc);
    let err = square_error(&q, t);
    let scale = t.max_abs().max(1.0);
    if err > 1e-8 * scale {
        return Err(Error::Numerical(format!("factor residual {err:e} exceeds tolerance")));
    }
    Ok(q)
}

/// Sup-norm of |q̂|² − t̂ over the grid.
pub fn square_error<T: Scalar>(q: &Filter1D<C64>, t: &Filter1D<T>) -> f64 {
    let tf = t.to_c64();
    (0..GRID)
        .map(|i| {
            let w = 2.0 * PI * i as f64 / GRID as f64;
            (q.eval1(w).norm_sqr() - tf.eval1(w).re).abs()
        })
        .fold(0.0, f64::max)
}

/// Picks one root from each mirror pair r ↔ 1/r̄ (the one inside the disk) and
/// half of each unit-circle cluster.
fn select_roots(roots: &[C64]) -> Result<Vec<C64>> {
    let mut circle: Vec<C64> = Vec::new();
    let mut inside = Vec::new();
    let mut outside = 0usize;
    for &r in roots {
        let m = r.norm();
        if (m - 1.0).abs() < 1e-7 {
            circle.push(r / m);
        } else if m < 1.0 {
            inside.push(r);
        } else {
            outside += 1;
        }
    }
    if inside.len() != outside {
        return Err(Error::RootClusterFailure(format!(
            "{} roots inside the unit disk but {} outside",
            inside.len(),
            outside
        )));
    }
    circle.sort_by(|a, b| a.arg().partial_cmp(&b.arg()).unwrap());
    let mut used = vec![false; circle.len()];
    let mut out = inside;
    for i in 0..circle.len() {
        if used[i] {
            continue;
        }
        let partner = (i + 1..circle.len())
            .filter(|&j| !used[j])
            .min_by(|&a, &b| {
                (circle[a] - circle[i]).norm().partial_cmp(&(circle[b] - circle[i]).norm()).unwrap()
            });
        match partner {
            Some(j) if (circle[j] - circle[i]).norm() < 1e-4 => {
                used[i] = true;
                used[j] = true;
                let mid = (circle[i] + circle[j]) / 2.0;
                out.push(mid / mid.norm());
            }
            _ => {
                return Err(Error::RootClusterFailure(format!(
                    "unpaired unit-circle root at angle {:.6}",
                    circle[i].arg()
                )))
            }
        }
    }
    Ok(out)
}

/// Given real T(x) ≥ 0 on R (ascending coefficients), returns complex Q with |Q(x)|² = T(x).
pub fn abs_square_factor_realline(t: &[f64], choice: RootChoice) -> Result<Vec<C64>> {
    let mut t: Vec<f64> = t.to_vec();
    while t.last().is_some_and(|v| *v == 0.0) {
        t.pop();
    }
    if t.is_empty() {
        return Ok(Vec::new());
    }
    let deg = t.len() - 1;
    let lead = t[deg];
    if lead < 0.0 {
        return Err(Error::NegativePoly { min: lead });
    }
    if deg % 2 == 1 {
        return Err(Error::OddRealRoot { root: f64::NAN });
    }
    let scale = t.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let mut zeros = 0;
    while zeros < deg && t[zeros].abs() <= 1e-14 * scale {
        zeros += 1;
    }
    if zeros % 2 == 1 {
        return Err(Error::OddRealRoot { root: 0.0 });
    }
    let rest: Vec<C64> = t[zeros..].iter().map(|&v| C64::new(v, 0.0)).collect();
    let roots = poly_roots(&rest)?;
    let mut real: Vec<f64> = Vec::new();
    let mut selected: Vec<C64> = vec![C64::new(0.0, 0.0); zeros / 2];
    let mut upper = 0usize;
    let mut lower = Vec::new();
    let mut upper_roots = Vec::new();
    for r in roots {
        if r.im.abs() <= 1e-7 * (1.0 + r.norm()) {
            real.push(r.re);
        } else if r.im < 0.0 {
            lower.push(r);
        } else {
            upper += 1;
            upper_roots.push(r);
        }
    }
    if lower.len() != upper {
        return Err(Error::NegativePoly { min: f64::NAN });
    }
    real.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut i = 0;
    while i < real.len() {
        let mut j = i + 1;
        while j < real.len() && (real[j] - real[i]).abs() < 1e-4 * (1.0 + real[i].abs()) {
            j += 1;
        }
        let m = j - i;
        if m % 2 == 1 {
            return Err(Error::OddRealRoot { root: real[i] });
        }
        let mean = real[i..j].iter().sum::<f64>() / m as f64;
        selected.extend(std::iter::repeat(C64::new(mean, 0.0)).take(m / 2));
        i = j;
    }
    match choice {
        RootChoice::LowerHalfPlane => selected.extend(lower),
        RootChoice::UpperHalfPlane => selected.extend(upper_roots),
    }
    let s = lead.sqrt();
    let q: Vec<C64> = poly_from_roots(&selected).into_iter().map(|v| v * s).collect();
    let err = realline_error(&q, &t);
    if err > 1e-8 * scale.max(1.0) {
        return Err(Error::Numerical(format!("real-line factor residual {err:e}")));
    }
    Ok(q)
}

/// Sup-norm of |Q(x)|² − T(x) on x ∈ [−2, 2].
pub fn realline_error(q: &[C64], t: &[f64]) -> f64 {
    (0..=400)
        .map(|i| {
            let x = -2.0 + 4.0 * i as f64 / 400.0;
            let qv = q.iter().rev().fold(C64::new(0.0, 0.0), |acc, c| acc * x + c);
            let tv = t.iter().rev().fold(0.0, |acc, c| acc * x + c);
            (qv.norm_sqr() - tv).abs()
        })
        .fold(0.0, f64::max)
}
