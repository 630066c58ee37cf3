//! Two-dimensional constructions: the 1D→2D lift, canonical high-pass filters,
//! double and multiple canonical quincunx banks, and the minimal-support solver.

use crate::factorize::{fejer_riesz, Phase};
use crate::filters1d::{daubechies, u_filter};
use crate::lattice::{half_arg_product, Dilation, Filter, Filter1D, Filter2D};
use crate::scalar::{Rat, Scalar, C64, CQ};
use crate::{Error, Result};
use num::{One, Zero};
use std::collections::BTreeMap;

/// Threshold on the ℓ¹ norm of a partition-of-unity residual (bounds its sup norm).
pub const PARTITION_TOL: f64 = 1e-9;

/// Indices into [`FilterBank::filters`] related by
/// b_second(γ − k) = conj(b_first(k)) e^{2πiξ·k}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalPair {
    pub first: usize,
    pub second: usize,
    pub shift: [i64; 2],
    /// ξ as numerators over |det M|.
    pub xi: [i64; 2],
}

#[derive(Clone, Debug, PartialEq)]
pub struct FilterBank<T: Scalar = C64> {
    pub lowpass: Filter2D<T>,
    pub highpass: Vec<Filter2D<T>>,
    pub dilation: Dilation<2>,
    pub canonical_pairs: Vec<CanonicalPair>,
    pub family: String,
    pub params: BTreeMap<String, String>,
}

impl<T: Scalar> FilterBank<T> {
    /// Low-pass first, then the high-pass filters in order.
    pub fn filters(&self) -> Vec<&Filter2D<T>> {
        std::iter::once(&self.lowpass).chain(self.highpass.iter()).collect()
    }

    pub fn filter(&self, i: usize) -> Option<&Filter2D<T>> {
        if i == 0 {
            Some(&self.lowpass)
        } else {
            self.highpass.get(i - 1)
        }
    }

    pub fn len(&self) -> usize {
        1 + self.highpass.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn to_c64(&self) -> FilterBank<C64> {
        FilterBank {
            lowpass: self.lowpass.to_c64(),
            highpass: self.highpass.iter().map(|f| f.to_c64()).collect(),
            dilation: self.dilation,
            canonical_pairs: self.canonical_pairs.clone(),
            family: self.family.clone(),
            params: self.params.clone(),
        }
    }

    /// Largest violation of the recorded canonical relations.
    pub fn canonical_deviation(&self) -> Result<f64> {
        let den = self.dilation.det_abs();
        let mut worst = 0.0f64;
        for p in &self.canonical_pairs {
            let (Some(a), Some(b)) = (self.filter(p.first), self.filter(p.second)) else {
                return Err(Error::NotCanonical(format!("pair {:?} out of range", (p.first, p.second))));
            };
            let want = canonical_with(a, p.shift, p.xi, den)?;
            worst = worst.max(want.sub(b).max_abs());
        }
        Ok(worst)
    }

    fn with_params(mut self, kv: &[(&str, String)]) -> Self {
        for (k, v) in kv {
            self.params.insert((*k).into(), v.clone());
        }
        self
    }
}

fn l1<T: Scalar, const D: usize>(f: &Filter<T, D>) -> f64 {
    f.data().iter().map(|v| v.abs_f64()).sum()
}

/// ℓ¹ norm of Σ f ∗ f⋆ − δ.
pub fn partition_residual<T: Scalar>(fs: &[&Filter1D<T>]) -> f64 {
    let mut acc = Filter1D::<T>::delta().neg();
    for f in fs {
        acc = acc.add(&f.mul(&f.adjoint()));
    }
    if T::EXACT && acc.is_zero() {
        0.0
    } else {
        l1(&acc)
    }
}

fn require_partition<T: Scalar>(fs: &[&Filter1D<T>]) -> Result<()> {
    let r = partition_residual(fs);
    let ok = if T::EXACT { r == 0.0 } else { r <= PARTITION_TOL };
    if ok {
        Ok(())
    } else {
        Err(Error::NotPartition { residual: r })
    }
}

/// ½[û(γ₁·ω) + û(γ₂·ω)e^{−iγ₃·ω}].
pub fn lift_general<T: Scalar>(u: &Filter1D<T>, g1: [i64; 2], g2: [i64; 2], g3: [i64; 2]) -> Filter2D<T> {
    let half = T::from_ratio(1, 2);
    u.dilate_2d(g1).add(&u.dilate_2d(g2).shift(g3)).scale(&half)
}

/// â(ω₁,ω₂) = ½[û(ω₁+ω₂) + û(ω₁−ω₂)e^{−iω₂}].
pub fn lift<T: Scalar>(u: &Filter1D<T>) -> Filter2D<T> {
    lift_general(u, [1, 1], [1, -1], [0, 1])
}

/// b̂(ω) = e^{−iγ·ω} conj(ĥ(ω + 2πξ)), i.e. b(γ − k) = conj(h(k)) e^{2πiξ·k}.
pub fn canonical_with<T: Scalar>(h: &Filter2D<T>, gamma: [i64; 2], xi: [i64; 2], den: i64) -> Result<Filter2D<T>> {
    let mut taps = Vec::new();
    for (k, v) in h.taps() {
        let w = T::root_of_unity(-(xi[0] * k[0] + xi[1] * k[1]), den)
            .ok_or_else(|| Error::InvalidParameter(format!("ξ = {xi:?}/{den} not representable")))?;
        taps.push(([gamma[0] - k[0], gamma[1] - k[1]], v.conj() * w));
    }
    Ok(Filter2D::from_taps(taps))
}

/// b(k) = (−1)^{1+k₁+k₂} conj(h(γ − k)) for the quincunx lattice.
pub fn canonical_highpass<T: Scalar>(h: &Filter2D<T>, gamma: [i64; 2]) -> Result<Filter2D<T>> {
    if (gamma[0] + gamma[1]).rem_euclid(2) == 0 {
        return Err(Error::BadShift(gamma.to_vec()));
    }
    canonical_with(h, gamma, [1, 1], 2)
}

/// 1D canonical partner b̂(ω) = e^{−icω} conj(ĥ(ω+π)), c odd.
pub fn canonical_1d<T: Scalar>(h: &Filter1D<T>, c: i64) -> Result<Filter1D<T>> {
    if c.rem_euclid(2) == 0 {
        return Err(Error::BadShift(vec![c]));
    }
    Ok(Filter1D::from_taps(h.taps().map(|([k], v)| {
        let s = if k.rem_euclid(2) == 0 { v.conj() } else { -v.conj() };
        ([c - k], s)
    })))
}

/// Tight M-framelet bank from a partition of unity (u, v), |det M| = 2.
#[allow(clippy::too_many_arguments)]
pub fn general_bank<T: Scalar>(
    u: &Filter1D<T>,
    v: &Filter1D<T>,
    m: Dilation<2>,
    g1: [i64; 2],
    g2: [i64; 2],
    g3: [i64; 2],
    g4: [i64; 2],
    xi: [i64; 2],
) -> Result<FilterBank<T>> {
    m.validate()?;
    if m.det_abs() != 2 {
        return Err(Error::InvalidParameter("|det M| must be 2".into()));
    }
    for g in [g1, g2] {
        if g == [0, 0] || !m.in_lattice(g) {
            return Err(Error::BadShift(g.to_vec()));
        }
    }
    for g in [g3, g4] {
        if m.in_lattice(g) {
            return Err(Error::BadShift(g.to_vec()));
        }
    }
    if xi == [0, 0] || !m.coset_reps().contains(&xi) {
        return Err(Error::InvalidParameter(format!("ξ = {xi:?}/2 is not a nonzero element of Ω_M")));
    }
    require_partition(&[u, v])?;
    let den = m.det_abs();
    let a = lift_general(u, g1, g2, g3);
    let b2 = lift_general(v, g1, g2, g3);
    let b1 = canonical_with(&a, g4, xi, den)?;
    let b3 = canonical_with(&b2, g4, xi, den)?;
    let pair = |first, second| CanonicalPair { first, second, shift: g4, xi };
    Ok(FilterBank {
        lowpass: a,
        highpass: vec![b1, b2, b3],
        dilation: m,
        canonical_pairs: vec![pair(0, 1), pair(2, 3)],
        family: "general".into(),
        params: BTreeMap::new(),
    }
    .with_params(&[
        ("gamma1", format!("{g1:?}")),
        ("gamma2", format!("{g2:?}")),
        ("gamma3", format!("{g3:?}")),
        ("gamma4", format!("{g4:?}")),
        ("xi", format!("{xi:?}/2")),
    ]))
}

/// {lift(u); canonical(lift(u)), lift(v), canonical(lift(v))}.
pub fn double_canonical_from_uv<T: Scalar>(u: &Filter1D<T>, v: &Filter1D<T>) -> Result<FilterBank<T>> {
    let mut bank = general_bank(u, v, Dilation::quincunx_m(), [1, 1], [1, -1], [0, 1], [1, 0], [1, 1])?;
    bank.family = "double-canonical".into();
    bank.params.clear();
    Ok(bank)
}

/// a = lift(u_n), b₂ = lift(v) with v̂(ω) = 2â^D_n(ω/2)â^D_n(ω/2+π).
pub fn thm22_bank(n: usize) -> Result<FilterBank<C64>> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let u = u_filter(n, &[]).to_c64();
    let d = daubechies(n)?;
    let v = half_arg_product(&d, &d, 1e-12)?;
    let mut bank = double_canonical_from_uv(&u, &v)?;
    bank.family = "thm22".into();
    Ok(bank.with_params(&[("n", n.to_string())]))
}

/// conj(û(ω+π)) as a filter: (−1)^k conj(u(k)) placed at −k.
pub fn conj_shifted<T: Scalar>(u: &Filter1D<T>) -> Filter1D<T> {
    u.adjoint().modulate_pi()
}

/// Multiple canonical quincunx bank {b_j ⊗ u_k}, ordered k-major, j-minor; filter 0 is the low-pass.
pub fn tensor_multiple<T: Scalar>(bank1d: &[Filter1D<T>], us: &[Filter1D<T>]) -> Result<FilterBank<T>> {
    if bank1d.is_empty() || bank1d.len() % 2 != 0 || us.is_empty() {
        return Err(Error::DimensionMismatch(format!(
            "need an even number of 1D filters and at least one u, got {} and {}",
            bank1d.len(),
            us.len()
        )));
    }
    let tol = if T::EXACT { 0.0 } else { 1e-12 };
    for j in (0..bank1d.len()).step_by(2) {
        let want = canonical_1d(&bank1d[j], 1)?;
        let d = want.sub(&bank1d[j + 1]).max_abs();
        if d > tol {
            return Err(Error::NotCanonical(format!("filters {j} and {} differ by {d:e}", j + 1)));
        }
    }
    let refs: Vec<&Filter1D<T>> = us.iter().collect();
    require_partition(&refs)?;
    let tight = crate::analysis::tight_residual(&bank1d.iter().collect::<Vec<_>>(), &Dilation::dyadic())?;
    if tight > if T::EXACT { 0.0 } else { PARTITION_TOL } {
        return Err(Error::NotPartition { residual: tight });
    }
    let s2 = bank1d.len();
    let mut all = Vec::with_capacity(s2 * us.len());
    let mut pairs = Vec::new();
    for (k, u) in us.iter().enumerate() {
        let uc = conj_shifted(u);
        for (j, b) in bank1d.iter().enumerate() {
            all.push(Filter2D::tensor(b, if j % 2 == 0 { u } else { &uc }));
            if j % 2 == 0 {
                let first = k * s2 + j;
                pairs.push(CanonicalPair { first, second: first + 1, shift: [1, 0], xi: [1, 1] });
            }
        }
    }
    let lowpass = all.remove(0);
    Ok(FilterBank {
        lowpass,
        highpass: all,
        dilation: Dilation::quincunx_m(),
        canonical_pairs: pairs,
        family: "tensor".into(),
        params: BTreeMap::new(),
    }
    .with_params(&[("s", (s2 / 2).to_string()), ("L", (us.len() - 1).to_string())]))
}

/// Daubechies-based double canonical bank: b₀ = a^D_n ⊗ a^D_m, b₂ = a^D_n ⊗ a^D_m(·+π).
pub fn daubechies_tensor_bank(n: usize, m: usize) -> Result<FilterBank<C64>> {
    let dn = daubechies(n)?;
    let dm = daubechies(m)?;
    let b1 = canonical_1d(&dn, 1)?;
    let bank = tensor_multiple(&[dn, b1], &[dm.clone(), dm.modulate_pi()])?;
    Ok(bank.with_params(&[("n", n.to_string()), ("m", m.to_string())]))
}

fn is_negligible_filter<T: Scalar>(f: &Filter1D<T>, tol: f64) -> bool {
    f.data().iter().all(|v| v.is_negligible(tol))
}

fn factor_or_zero<T: Scalar>(t: &Filter1D<T>) -> Result<Filter1D<C64>> {
    if is_negligible_filter(t, 1e-13) {
        Ok(Filter1D::zero())
    } else {
        fejer_riesz(t, Phase::MatchPaper)
    }
}

/// Double canonical 1D bank {a; b₁, b₂, b₃} with
/// v̂(2ω) = 1 − |â(ω)|² − |â(ω+π)|², |û|² = v̂,
/// b̂₂(ω) = (û(2ω) + ε e^{−iωc_b} conj(û(2ω)))/2 and b₁, b₃ the canonical partners.
pub fn double_canonical_1d<T: Scalar>(a: &Filter1D<T>, eps: i64, c_b: i64) -> Result<Vec<Filter1D<C64>>> {
    if eps != 1 && eps != -1 {
        return Err(Error::InvalidParameter(format!("ε must be ±1, got {eps}")));
    }
    if c_b.rem_euclid(2) == 0 {
        return Err(Error::BadShift(vec![c_b]));
    }
    let am = a.modulate_pi();
    let p = a.mul(&a.adjoint()).add(&am.mul(&am.adjoint()));
    let rest = Filter1D::<T>::delta().sub(&p);
    let v = Filter1D::from_taps(
        rest.taps().filter(|([k], _)| k.rem_euclid(2) == 0).map(|([k], x)| ([k / 2], x.clone())),
    );
    let u = factor_or_zero(&v)?;
    let half = C64::new(0.5, 0.0);
    let e = C64::new(eps as f64, 0.0);
    let mut taps = Vec::new();
    for ([k], x) in u.taps() {
        taps.push(([2 * k], x * half));
        taps.push(([c_b - 2 * k], e * x.conj() * half));
    }
    let b2 = Filter1D::from_taps(taps);
    let ac = a.to_c64();
    let b1 = canonical_1d(&ac, 1)?;
    let b3 = canonical_1d(&b2, 1)?;
    Ok(vec![ac, b1, b2, b3])
}

/// û₁ = (û₀ + e^{−iω} conj(û₀))/2, û₂ = (û₀ − e^{−iω} conj(û₀))/2.
pub fn partition_split<T: Scalar>(u0: &Filter1D<T>) -> (Filter1D<T>, Filter1D<T>) {
    let refl = Filter1D::from_taps(u0.taps().map(|([k], v)| ([1 - k], v.conj())));
    let half = T::from_ratio(1, 2);
    (u0.add(&refl).scale(&half), u0.sub(&refl).scale(&half))
}

fn check_symmetric_real_lowpass<T: Scalar>(a: &Filter1D<T>) -> Result<()> {
    let s = a.coeff_sum().to_c64();
    if (s - C64::new(1.0, 0.0)).norm() > 1e-12 {
        return Err(Error::NotLowpass { value: s.to_string() });
    }
    let tol = if T::EXACT { 0.0 } else { 1e-12 };
    if !crate::lattice::is_real_filter(a, tol) {
        return Err(Error::InvalidParameter("low-pass filter must be real".into()));
    }
    let lo = a.min();
    let hi = a.support_max().map_or(lo, |m| m[0]);
    for k in lo..=hi {
        if (a.at(lo + hi - k).to_c64() - a.at(k).to_c64()).norm() > tol {
            return Err(Error::InvalidParameter("low-pass filter must be symmetric".into()));
        }
    }
    Ok(())
}

/// Six-multiple canonical bank: 1D double canonical bank {a; b₁, b₂, b₃} tensored with
/// {a, u₁, u₂}, where u₁, u₂ split a factor of 1 − |â|².
pub fn six_multiple_bank<T: Scalar>(a: &Filter1D<T>) -> Result<FilterBank<C64>> {
    check_symmetric_real_lowpass(a)?;
    let bank1d = double_canonical_1d(a, 1, 1)?;
    let rest = Filter1D::<T>::delta().sub(&a.mul(&a.adjoint()));
    let u0 = factor_or_zero(&rest)?;
    let (u1, u2) = partition_split(&u0);
    let bank = tensor_multiple(&bank1d, &[a.to_c64(), u1, u2])?;
    let mut bank = bank;
    bank.family = "six-multiple".into();
    Ok(bank)
}

/// The reduced multi-index set {μ : |μ| < 2n, μ₂ < 2n−1} \ {(0, 2j−1) : 1 ≤ j < n}.
/// It has 2n² elements, but its moment matrices are rank deficient for n ≥ 2, so
/// [`solve_minimal_filter`] uses every |μ| < 2n instead.
pub fn gamma_set(n: usize) -> Vec<[u32; 2]> {
    let n = n as u32;
    let mut out = Vec::new();
    for total in 0..2 * n {
        for m2 in 0..=total {
            let m1 = total - m2;
            if m2 >= 2 * n - 1 || (m1 == 0 && m2 % 2 == 1) {
                continue;
            }
            out.push([m1, m2]);
        }
    }
    out
}

/// All μ with |μ| < 2n.
pub fn full_moment_set(n: usize) -> Vec<[u32; 2]> {
    let n = n as u32;
    (0..2 * n).flat_map(|t| (0..=t).map(move |m2| [t - m2, m2])).collect()
}

/// Exact Gaussian elimination for a possibly overdetermined system. Returns `None`
/// when the columns are dependent or the equations are inconsistent.
pub fn solve_exact(mut a: Vec<Vec<Rat>>, mut b: Vec<Rat>) -> Option<Vec<Rat>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    if rows < cols {
        return None;
    }
    for col in 0..cols {
        let piv = (col..rows).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = Rat::one() / a[col][col].clone();
        for r in 0..rows {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone() * inv.clone();
            for c in col..cols {
                let t = a[col][c].clone() * f.clone();
                a[r][c] -= t;
            }
            let t = b[col].clone() * f;
            b[r] -= t;
        }
    }
    if b[cols..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    Some((0..cols).map(|i| b[i].clone() / a[i][i].clone()).collect())
}

fn moment_matrix(pts: &[[i64; 2]], mus: &[[u32; 2]]) -> Vec<Vec<Rat>> {
    mus.iter()
        .map(|mu| {
            pts.iter()
                .map(|k| Rat::from_integer(num::BigInt::from(k[0]).pow(mu[0]) * num::BigInt::from(k[1]).pow(mu[1])))
                .collect()
        })
        .collect()
}

/// The unique filter on [1−n, n]² with Σ_{k∈Λ_ε} a(k) k^μ = ½(½,½)^μ for |μ| < 2n, where
/// Λ₀ and Λ₁ are the points with k₁+k₂ even and odd.
pub fn solve_minimal_filter(n: usize) -> Result<Filter2D<CQ>> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let lo = 1 - n as i64;
    let hi = n as i64;
    let mus = full_moment_set(n);
    let half = Rat::new(1.into(), 2.into());
    let mut taps = Vec::new();
    for eps in 0..2 {
        let pts: Vec<[i64; 2]> = (lo..=hi)
            .flat_map(|k1| (lo..=hi).map(move |k2| [k1, k2]))
            .filter(|k| (k[0] + k[1]).rem_euclid(2) == eps)
            .collect();
        let rhs = mus.iter().map(|mu| half.pow(1 + (mu[0] + mu[1]) as i32)).collect();
        let sol = solve_exact(moment_matrix(&pts, &mus), rhs).ok_or(Error::SingularSystem)?;
        for (k, v) in pts.into_iter().zip(sol) {
            taps.push((k, CQ::new(v, Rat::zero())));
        }
    }
    Ok(Filter2D::from_taps(taps))
}

/// Rank of the moment matrix (k^μ) for k ∈ Λ_ε ∩ [1−n, n]², μ ∈ `mus`.
pub fn moment_rank(n: usize, eps: i64, mus: &[[u32; 2]]) -> usize {
    let lo = 1 - n as i64;
    let hi = n as i64;
    let pts: Vec<[i64; 2]> = (lo..=hi)
        .flat_map(|k1| (lo..=hi).map(move |k2| [k1, k2]))
        .filter(|k| (k[0] + k[1]).rem_euclid(2) == eps)
        .collect();
    let mut a = moment_matrix(&pts, mus);
    let cols = pts.len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(rank, piv);
        let inv = Rat::one() / a[rank][col].clone();
        for r in rank + 1..a.len() {
            if a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone() * inv.clone();
            for c in col..cols {
                let t = a[rank][c].clone() * f.clone();
                a[r][c] -= t;
            }
        }
        rank += 1;
    }
    rank
}

/// Whether a 1D bank is real up to `tol`.
pub fn is_real_bank(fs: &[Filter1D<C64>], tol: f64) -> bool {
    fs.iter().all(|f| f.data().iter().all(|v| v.im.abs() <= tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{sum_rules, tight_residual, vanishing_moments, symmetry_check};
    use crate::filters1d::{complex_symmetric_pair, haar, haar_pair, interpolatory};
    use crate::lattice::{rational_1d, Character, SymmetrySpec};
    use crate::scalar::q;
    use proptest::prelude::*;

    fn quarter(rows: Vec<Vec<i64>>) -> Vec<Vec<CQ>> {
        rows.into_iter().map(|r| r.into_iter().map(|v| q(v, 4)).collect()).collect()
    }

    fn ex21() -> [Filter2D<CQ>; 4] {
        [
            Filter2D::from_printed((0, 1), (0, 1), quarter(vec![vec![1, 1], vec![1, 1]])),
            Filter2D::from_printed((0, 1), (-1, 0), quarter(vec![vec![-1, 1], vec![1, -1]])),
            Filter2D::from_printed((0, 1), (0, 1), quarter(vec![vec![1, -1], vec![1, -1]])),
            Filter2D::from_printed((0, 1), (-1, 0), quarter(vec![vec![1, 1], vec![-1, -1]])),
        ]
    }

    fn ex22_a() -> Filter2D<CQ> {
        let r = |v: i64| q(v, 32);
        Filter2D::from_printed(
            (-1, 2),
            (-1, 2),
            vec![
                vec![r(-1), r(0), r(0), r(-1)],
                vec![r(0), r(9), r(9), r(0)],
                vec![r(0), r(9), r(9), r(0)],
                vec![r(-1), r(0), r(0), r(-1)],
            ],
        )
    }

    fn ex22_b1() -> Filter2D<CQ> {
        let r = |v: i64| q(v, 32);
        Filter2D::from_printed(
            (-1, 2),
            (-2, 1),
            vec![
                vec![r(1), r(0), r(0), r(-1)],
                vec![r(0), r(-9), r(9), r(0)],
                vec![r(0), r(9), r(-9), r(0)],
                vec![r(-1), r(0), r(0), r(1)],
            ],
        )
    }

    #[test]
    fn lift_examples() {
        assert_eq!(lift(&haar()), ex21()[0]);
        assert_eq!(lift(&u_filter(2, &[])), ex22_a());
        let d = lift(&Filter1D::<CQ>::delta());
        assert_eq!(d, Filter2D::from_taps([([0, 0], q(1, 2)), ([0, 1], q(1, 2))]));
    }

    #[test]
    fn lift_matches_symbol_formula() {
        let u = u_filter(3, &[]).to_c64();
        let a = lift(&u);
        for (w1, w2) in [(0.3, -1.2), (2.0, 0.7), (-3.0, 1.1)] {
            let want = (u.eval1(w1 + w2) + u.eval1(w1 - w2) * C64::new(w2.cos(), -w2.sin())) * 0.5;
            assert!((a.eval([w1, w2]) - want).norm() < 1e-12);
        }
    }

    #[test]
    fn canonical_examples() {
        let [a, b1, _, _] = ex21();
        assert_eq!(canonical_highpass(&a, [1, 0]).unwrap(), b1);
        assert_eq!(canonical_highpass(&ex22_a(), [1, 0]).unwrap(), ex22_b1());
        let twice = canonical_highpass(&canonical_highpass(&ex22_a(), [1, 0]).unwrap(), [1, 0]).unwrap();
        assert_eq!(twice, ex22_a().neg());
        assert!(matches!(canonical_highpass(&a, [1, 1]), Err(Error::BadShift(_))));
    }

    #[test]
    fn haar_double_bank_is_example_21() {
        let (u, v) = haar_pair(0, 0);
        let bank = double_canonical_from_uv(&u, &v).unwrap();
        let want = ex21();
        assert_eq!(bank.lowpass, want[0]);
        for i in 0..3 {
            assert_eq!(bank.highpass[i], want[i + 1]);
        }
        assert_eq!(tight_residual(&bank.filters(), &bank.dilation).unwrap(), 0.0);
        assert_eq!(bank.canonical_deviation().unwrap(), 0.0);
        assert_eq!(bank.canonical_pairs.iter().map(|p| (p.first, p.second)).collect::<Vec<_>>(), [(0, 1), (2, 3)]);
    }

    #[test]
    fn broken_partition_rejected() {
        let u = haar();
        let v = rational_1d(0, &[1, 1], 2);
        assert!(matches!(double_canonical_from_uv(&u, &v), Err(Error::NotPartition { .. })));
    }

    #[test]
    fn broken_bank_has_large_residual() {
        let f = ex21();
        let r = tight_residual(&[&f[0], &f[1], &f[2]], &Dilation::quincunx_m()).unwrap();
        assert!(r >= 0.125);
    }

    #[test]
    fn thm22_small_cases() {
        let b = thm22_bank(1).unwrap();
        let want = ex21();
        assert!(b.lowpass.max_diff(&want[0].to_c64()) < 1e-15);
        for i in 0..3 {
            assert!(b.highpass[i].max_diff(&want[i + 1].to_c64()) < 1e-14, "b{}", i + 1);
        }
        let b = thm22_bank(2).unwrap();
        let s3 = 3f64.sqrt();
        let c = |x: f64| C64::new(x / 32.0, 0.0);
        let b2 = Filter2D::from_printed(
            (-1, 2),
            (-1, 2),
            vec![
                vec![c(s3 - 2.0), c(0.0), c(0.0), c(2.0 + s3)],
                vec![c(0.0), c(6.0 - s3), c(-s3 - 6.0), c(0.0)],
                vec![c(0.0), c(6.0 - s3), c(-s3 - 6.0), c(0.0)],
                vec![c(s3 - 2.0), c(0.0), c(0.0), c(2.0 + s3)],
            ],
        );
        let b3 = Filter2D::from_printed(
            (-1, 2),
            (-2, 1),
            vec![
                vec![c(-2.0 - s3), c(0.0), c(0.0), c(s3 - 2.0)],
                vec![c(0.0), c(s3 + 6.0), c(6.0 - s3), c(0.0)],
                vec![c(0.0), c(-s3 - 6.0), c(s3 - 6.0), c(0.0)],
                vec![c(2.0 + s3), c(0.0), c(0.0), c(2.0 - s3)],
            ],
        );
        assert!(b.highpass[1].max_diff(&b2) < 1e-14);
        assert!(b.highpass[2].max_diff(&b3) < 1e-14);
        assert_eq!(vanishing_moments(&b.highpass[0]), 4);
        assert_eq!(vanishing_moments(&b.highpass[1]), 2);
        assert_eq!(vanishing_moments(&b.highpass[2]), 2);
    }

    #[test]
    fn thm22_banks_are_tight() {
        for n in 1..=4 {
            let b = thm22_bank(n).unwrap();
            assert!(tight_residual(&b.filters(), &b.dilation).unwrap() < 1e-10, "n = {n}");
            assert!(b.canonical_deviation().unwrap() < 1e-14);
            let box_a = b.lowpass.shape();
            for h in &b.highpass {
                assert!(h.shape()[0] <= box_a[0] && h.shape()[1] <= box_a[1]);
            }
            assert_eq!(vanishing_moments(&b.highpass[0]), 2 * n);
            assert!(vanishing_moments(&b.highpass[1]) >= n);
            assert!(vanishing_moments(&b.highpass[2]) >= n);
        }
    }

    #[test]
    fn general_bank_specialization() {
        let (u, v) = haar_pair(0, 0);
        let m = Dilation::quincunx_m();
        let g = general_bank(&u, &v, m, [1, 1], [1, -1], [0, 1], [1, 0], [1, 1]).unwrap();
        let d = double_canonical_from_uv(&u, &v).unwrap();
        assert_eq!(g.filters(), d.filters());
        // γ₃ = γ₄ = (1,0) is still tight
        let g = general_bank(&u, &v, m, [1, 1], [1, -1], [1, 0], [1, 0], [1, 1]).unwrap();
        assert_eq!(tight_residual(&g.filters(), &g.dilation).unwrap(), 0.0);
        let n = Dilation::quincunx_n();
        let g = general_bank(&u, &v, n, [1, 1], [1, -1], [0, 1], [1, 0], [1, 1]).unwrap();
        assert_eq!(tight_residual(&g.filters(), &g.dilation).unwrap(), 0.0);
        assert!(matches!(
            general_bank(&u, &v, m, [1, 1], [1, -1], [1, 1], [1, 0], [1, 1]),
            Err(Error::BadShift(_))
        ));
        assert!(matches!(
            general_bank(&u, &v, m, [1, 0], [1, -1], [0, 1], [1, 0], [1, 1]),
            Err(Error::BadShift(_))
        ));
    }

    #[test]
    fn complex_pair_bank_matches_example_31() {
        let (u, v) = complex_symmetric_pair(3).unwrap();
        let bank = double_canonical_from_uv(&u, &v).unwrap();
        assert!(tight_residual(&bank.filters(), &bank.dilation).unwrap() < 1e-10);
        let s15 = 15f64.sqrt();
        let b2 = &bank.highpass[1];
        let want = C64::new(60.0, 18.0 * s15) / 512.0;
        assert!((b2.get([0, 0]) - want).norm() < 1e-14);
        assert!((b2.get([0, 1]) - want).norm() < 1e-14);
        assert_eq!(vanishing_moments(&bank.highpass[0]), 6);
        assert_eq!(vanishing_moments(&bank.highpass[1]), 3);
        assert_eq!(vanishing_moments(&bank.highpass[2]), 3);
    }

    #[test]
    fn tensor_banks() {
        let b = daubechies_tensor_bank(2, 2).unwrap();
        assert_eq!(b.len(), 4);
        assert!(tight_residual(&b.filters(), &b.dilation).unwrap() < 1e-10);
        assert!(b.canonical_deviation().unwrap() < 1e-14);
        let h = haar();
        let hb = tensor_multiple(&[h.clone(), canonical_1d(&h, 1).unwrap()], &[Filter1D::delta()]).unwrap();
        assert_eq!(hb.len(), 2);
        assert_eq!(tight_residual(&hb.filters(), &hb.dilation).unwrap(), 0.0);
        let bad = tensor_multiple(&[h.clone(), h.clone()], &[Filter1D::delta()]);
        assert!(matches!(bad, Err(Error::NotCanonical(_))));
        let bad = tensor_multiple(&[h.clone(), canonical_1d(&h, 1).unwrap()], &[h.clone()]);
        assert!(matches!(bad, Err(Error::NotPartition { .. })));
    }

    #[test]
    fn double_canonical_1d_example_41() {
        let bank = double_canonical_1d(&interpolatory(2), 1, 1).unwrap();
        assert!(tight_residual(&bank.iter().collect::<Vec<_>>(), &Dilation::dyadic()).unwrap() < 1e-10);
        let s3 = 3f64.sqrt();
        let t = [2.0 - s3, -6.0 + s3, 6.0 + s3, -2.0 - s3];
        let r2 = 2f64.sqrt();
        // b₂ = (√2/64)(t₃(z⁻³+z⁴) + t₀(z⁻²+z³) + t₂(z⁻¹+z²) + t₁(1+z))
        let mut want = vec![C64::new(0.0, 0.0); 8];
        for (pos, ti) in [(-3, 3), (4, 3), (-2, 0), (3, 0), (-1, 2), (2, 2), (0, 1), (1, 1)] {
            want[(pos + 3) as usize] = C64::new(r2 / 64.0 * t[ti], 0.0);
        }
        let want = Filter1D::new(-3, want);
        assert!(bank[2].max_diff(&want) < 1e-14, "{:?}", bank[2]);
        assert_eq!(bank[1].min(), -2);
        assert_eq!(bank[1].support_max(), Some([4]));
        for k in -5..6 {
            assert!((bank[1].at(2 - k) - bank[1].at(k)).norm() < 1e-15);
            assert!((bank[3].at(1 - k) + bank[3].at(k)).norm() < 1e-15);
        }
    }

    #[test]
    fn double_canonical_1d_example_42() {
        let a = rational_1d(-2, &[-3, 5, 30, 30, 5, -3], 64);
        let bank = double_canonical_1d(&a, 1, 1).unwrap();
        let s = 15f64.sqrt() / 64.0;
        let want = Filter1D::new(-2, [-1.0, -1.0, 2.0, 2.0, -1.0, -1.0].iter().map(|x| C64::new(s * x, 0.0)).collect());
        assert!(bank[2].max_diff(&want) < 1e-14);
        assert_eq!(vanishing_moments(&bank[1]), 3);
        assert_eq!(vanishing_moments(&bank[2]), 2);
        assert_eq!(vanishing_moments(&bank[3]), 3);
    }

    #[test]
    fn double_canonical_1d_haar_degenerates() {
        let bank = double_canonical_1d(&haar(), 1, 1).unwrap();
        assert!(bank[2].is_zero() && bank[3].is_zero());
        assert!(matches!(double_canonical_1d(&haar(), 1, 2), Err(Error::BadShift(_))));
        let bad = rational_1d(0, &[1, 1, 1, 1], 3);
        assert!(matches!(double_canonical_1d(&bad, 1, 1), Err(Error::NegativePoly { .. })));
    }

    #[test]
    fn partition_split_delta() {
        let (u1, u2) = partition_split(&Filter1D::<CQ>::delta());
        assert_eq!(u1, rational_1d(0, &[1, 1], 2));
        assert_eq!(u2, rational_1d(0, &[1, -1], 2));
    }

    #[test]
    fn partition_split_examples() {
        let a = interpolatory(2);
        let u0 = fejer_riesz(&Filter1D::<CQ>::delta().sub(&a.mul(&a.adjoint())), Phase::MatchPaper).unwrap();
        let (u1, u2) = partition_split(&u0);
        assert_eq!((u1.min(), u1.support_max()), (-3, Some([4])));
        assert_eq!((u2.min(), u2.support_max()), (-3, Some([4])));
        for k in -5..6 {
            assert!((u1.at(1 - k) - u1.at(k)).norm() < 1e-14);
            assert!((u2.at(1 - k) + u2.at(k)).norm() < 1e-14);
        }
        assert!(partition_residual(&[&a.to_c64(), &u1, &u2]) < 1e-9);

        let a = rational_1d(-2, &[-3, 5, 30, 30, 5, -3], 64);
        let u0 = fejer_riesz(&Filter1D::<CQ>::delta().sub(&a.mul(&a.adjoint())), Phase::MatchPaper).unwrap();
        let (u1, u2) = partition_split(&u0);
        assert_eq!(vanishing_moments(&u1), 2);
        assert_eq!(vanishing_moments(&u2), 3);
        assert_eq!((u1.min(), u1.support_max()), (-2, Some([3])));
    }

    #[test]
    fn six_multiple_examples() {
        let b = six_multiple_bank(&interpolatory(2)).unwrap();
        assert_eq!(b.len(), 12);
        assert!(tight_residual(&b.filters(), &b.dilation).unwrap() < 1e-10);
        assert!(b.canonical_deviation().unwrap() < 1e-13);
        assert!(sum_rules(&b.lowpass, &b.dilation).unwrap() >= 4);
        let d4 = SymmetrySpec::d4(SymmetrySpec::half(0, 0), Character::Trivial);
        assert!(symmetry_check(&b.lowpass, &d4, 1e-14).unwrap().0);
        for h in &b.highpass {
            assert!(vanishing_moments(h) >= 2);
            assert!(crate::lattice::is_real_filter(h, 1e-12));
        }
        let b = six_multiple_bank(&rational_1d(-2, &[-3, 5, 30, 30, 5, -3], 64)).unwrap();
        assert!(tight_residual(&b.filters(), &b.dilation).unwrap() < 1e-10);
        assert!(sum_rules(&b.lowpass, &b.dilation).unwrap() >= 6);
        for h in &b.highpass {
            assert!(vanishing_moments(h) >= 2);
        }
        let b = six_multiple_bank(&haar()).unwrap();
        assert!(tight_residual(&b.filters(), &b.dilation).unwrap() < 1e-12);
        assert!(matches!(six_multiple_bank(&rational_1d(0, &[1, 2], 3)), Err(_)));
    }

    #[test]
    fn moment_set_ranks() {
        for n in 1..=6 {
            assert_eq!(gamma_set(n).len(), 2 * n * n);
        }
        assert_eq!(gamma_set(1), vec![[0, 0], [1, 0]]);
        for n in 1..=4 {
            for eps in 0..2 {
                assert_eq!(moment_rank(n, eps, &full_moment_set(n)), 2 * n * n);
            }
        }
        // the reduced set loses rank from n = 2 on
        assert_eq!(moment_rank(2, 1, &gamma_set(2)), 7);
        assert_eq!(moment_rank(3, 0, &gamma_set(3)), 17);
    }

    #[test]
    fn minimal_filter_matches_examples_and_lift() {
        assert_eq!(solve_minimal_filter(1).unwrap(), ex21()[0]);
        assert_eq!(solve_minimal_filter(2).unwrap(), ex22_a());
        for n in 3..=4 {
            assert_eq!(solve_minimal_filter(n).unwrap(), lift(&u_filter(n, &[])));
        }
    }

    #[test]
    fn single_canonical_completion_impossible() {
        for n in 1..=4 {
            let a = lift(&u_filter(n, &[]));
            let b1 = canonical_highpass(&a, [1, 0]).unwrap();
            let rest = Filter2D::<CQ>::delta().sub(&a.mul(&a.adjoint())).sub(&b1.mul(&b1.adjoint()));
            assert!(!rest.is_zero(), "n = {n}");
        }
    }

    #[test]
    fn lift_symmetry_follows_u() {
        let s = SymmetrySpec::d4(SymmetrySpec::half(1, 1), Character::Trivial);
        for n in 1..=4 {
            assert!(symmetry_check(&lift(&u_filter(n, &[])), &s, 0.0).unwrap().0);
        }
        let bent = u_filter(2, &[]).add(&Filter1D::monomial([0], q(1, 100)));
        assert!(!symmetry_check(&lift(&bent), &s, 0.0).unwrap().0);
    }

    proptest! {
        #[test]
        fn canonical_pairs_hold_for_random_partitions(j in -3i64..3, k in -3i64..3) {
            let (u, v) = haar_pair(j, k);
            let bank = double_canonical_from_uv(&u, &v).unwrap();
            prop_assert_eq!(bank.canonical_deviation().unwrap(), 0.0);
            prop_assert_eq!(tight_residual(&bank.filters(), &bank.dilation).unwrap(), 0.0);
        }

        #[test]
        fn complex_pair_banks_tight(n in 1usize..6) {
            let (u, v) = complex_symmetric_pair(n).unwrap();
            let bank = double_canonical_from_uv(&u, &v).unwrap();
            prop_assert!(tight_residual(&bank.filters(), &bank.dilation).unwrap() < 1e-10);
        }
    }
}
