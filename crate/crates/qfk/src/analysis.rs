//! Sum rules, vanishing moments, linear-phase moments, symmetry and tightness.

use crate::construct::FilterBank;
use crate::lattice::{Character, Dilation, Filter, SymmetrySpec};
use crate::scalar::{Scalar, C64};
use crate::{Error, Result, DEFAULT_TOL};
use num::rational::Ratio;
use serde::Serialize;

/// Relative threshold for float moment sums.
pub const MOMENT_TOL: f64 = 1e-9;

/// All multi-indices μ ∈ N^D with |μ| = m.
pub fn multi_indices<const D: usize>(m: u32) -> Vec<[u32; D]> {
    fn rec<const D: usize>(i: usize, left: u32, cur: &mut [u32; D], out: &mut Vec<[u32; D]>) {
        if i == D - 1 {
            cur[i] = left;
            out.push(*cur);
            return;
        }
        for v in (0..=left).rev() {
            cur[i] = v;
            rec(i + 1, left - v, cur, out);
        }
    }
    let mut out = Vec::new();
    rec(0, m, &mut [0; D], &mut out);
    out
}

fn power<T: Scalar>(base: i64, e: u32) -> T {
    let mut r = T::one();
    for _ in 0..e {
        r = r * T::from_i64(base);
    }
    r
}

fn mono<T: Scalar, const D: usize>(k: [i64; D], mu: [u32; D]) -> T {
    (0..D).fold(T::one(), |acc, i| acc * power::<T>(k[i], mu[i]))
}

/// Σ_k f(k) k^μ, together with Σ_k |f(k)| |k^μ| as a scale for float comparisons.
pub fn moment<T: Scalar, const D: usize>(f: &Filter<T, D>, mu: [u32; D]) -> (T, f64) {
    let mut s = T::zero();
    let mut scale = 0.0;
    for (k, v) in f.taps() {
        let w = mono::<T, D>(k, mu);
        scale += v.abs_f64() * w.abs_f64();
        s = s + v.clone() * w;
    }
    (s, scale)
}

fn vanishes<T: Scalar>(v: &T, scale: f64) -> bool {
    if T::EXACT {
        v.is_zero()
    } else {
        v.abs_f64() <= MOMENT_TOL * scale.max(1.0)
    }
}

fn order_cap<T: Scalar, const D: usize>(f: &Filter<T, D>) -> u32 {
    2 * f.shape().iter().copied().max().unwrap_or(1) as u32
}

fn check_lowpass<T: Scalar, const D: usize>(a: &Filter<T, D>) -> Result<()> {
    let s = a.coeff_sum();
    let one = T::one();
    let ok = if T::EXACT { s == one } else { (s.to_c64() - C64::new(1.0, 0.0)).norm() <= 1e-9 };
    if ok {
        Ok(())
    } else {
        Err(Error::NotLowpass { value: format!("{}", s.to_c64()) })
    }
}

/// Order of sum rules of a low-pass filter with respect to M.
pub fn sum_rules<T: Scalar, const D: usize>(a: &Filter<T, D>, m: &Dilation<D>) -> Result<usize> {
    check_lowpass(a)?;
    let den = m.det_abs();
    let mut mods = Vec::new();
    for xi in m.coset_reps() {
        if xi.iter().any(|&v| v != 0) {
            mods.push(a.modulate(xi, den)?);
        }
    }
    let cap = order_cap(a);
    for order in 0..=cap {
        for mu in multi_indices::<D>(order) {
            for f in &mods {
                let (s, scale) = moment(f, mu);
                if !vanishes(&s, scale) {
                    return Ok(order as usize);
                }
            }
        }
    }
    Ok(cap as usize)
}

/// Order of vanishing moments. The zero filter reports `usize::MAX`.
pub fn vanishing_moments<T: Scalar, const D: usize>(b: &Filter<T, D>) -> usize {
    if b.data().iter().all(|v| v.is_negligible(0.0)) {
        return usize::MAX;
    }
    let cap = order_cap(b);
    for order in 0..=cap {
        for mu in multi_indices::<D>(order) {
            let (s, scale) = moment(b, mu);
            if !vanishes(&s, scale) {
                return order as usize;
            }
        }
    }
    cap as usize
}

/// First moment Σ a(k) k, the phase used by linear-phase moment detection.
pub fn centroid<T: Scalar, const D: usize>(a: &Filter<T, D>) -> [T; D] {
    std::array::from_fn(|i| {
        let mut mu = [0u32; D];
        mu[i] = 1;
        moment(a, mu).0
    })
}

/// Order of linear-phase moments with phase `c` (the centroid when `None`).
pub fn linear_phase_moments<T: Scalar, const D: usize>(
    a: &Filter<T, D>,
    c: Option<[T; D]>,
) -> Result<(usize, [T; D])> {
    check_lowpass(a)?;
    let c = c.unwrap_or_else(|| centroid(a));
    let cap = order_cap(a);
    for order in 0..=cap {
        for mu in multi_indices::<D>(order) {
            let (s, scale) = moment(a, mu);
            let mut target = T::one();
            for i in 0..D {
                for _ in 0..mu[i] {
                    target = target * c[i].clone();
                }
            }
            if !vanishes(&(s - target), scale) {
                return Ok((order as usize, c));
            }
        }
    }
    Ok((cap as usize, c))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SymmetryVerdict {
    pub group: String,
    pub center: [String; 2],
    pub character: String,
    pub pass: bool,
    pub deviation: f64,
}

/// Checks f(E(k−c)+c) = χ(E) f(k); passes when the deviation is within `tol` (exactly zero for exact types).
pub fn symmetry_check<T: Scalar>(
    f: &Filter<T, 2>,
    spec: &SymmetrySpec,
    tol: f64,
) -> Result<(bool, f64)> {
    let d = spec.deviation(f)?;
    Ok((if T::EXACT { d == 0.0 } else { d <= tol }, d))
}

fn group_name(g: &[[[i64; 2]; 2]]) -> &'static str {
    if g.len() == 8 {
        "D4"
    } else {
        "D4+"
    }
}

fn character_name(c: Character) -> &'static str {
    match c {
        Character::Trivial => "trivial",
        Character::Det => "det",
        Character::Entry(0, 0) => "E11",
        Character::Entry(1, 1) => "E22",
        Character::Entry(..) => "entry",
    }
}

/// Tries D4 then {±I, ±diag(1,−1)} about the center of the support box, with the
/// characters trivial, det, E₁₁ and E₂₂, and reports the first that holds.
pub fn detect_symmetry<T: Scalar>(f: &Filter<T, 2>, tol: f64) -> SymmetryVerdict {
    let lo = f.support_min();
    let hi = f.support_max().unwrap_or(lo);
    let center = SymmetrySpec::half(lo[0] + hi[0], lo[1] + hi[1]);
    let show = |r: Ratio<i64>| r.to_string();
    let mut best: Option<SymmetryVerdict> = None;
    for group in [SymmetrySpec::d4_group(), SymmetrySpec::d4_plus_group()] {
        for ch in [Character::Trivial, Character::Det, Character::Entry(0, 0), Character::Entry(1, 1)] {
            let Ok(spec) = SymmetrySpec::new(group.clone(), center, ch) else { continue };
            let Ok((pass, dev)) = symmetry_check(f, &spec, tol) else { continue };
            let v = SymmetryVerdict {
                group: group_name(&group).into(),
                center: [show(center[0]), show(center[1])],
                character: character_name(ch).into(),
                pass,
                deviation: dev,
            };
            if pass {
                return v;
            }
            if best.as_ref().map_or(true, |b| dev < b.deviation) {
                best = Some(v);
            }
        }
    }
    best.unwrap_or(SymmetryVerdict {
        group: "none".into(),
        center: [show(center[0]), show(center[1])],
        character: "trivial".into(),
        pass: false,
        deviation: f64::INFINITY,
    })
}

/// max over ξ ∈ Ω_M of the largest coefficient of Σ_ℓ b_ℓ ∗ (b_ℓ(·+2πξ))⋆ − δ_{ξ,0}δ.
pub fn tight_residual<T: Scalar, const D: usize>(
    filters: &[&Filter<T, D>],
    m: &Dilation<D>,
) -> Result<f64> {
    let den = m.det_abs();
    let mut worst = 0.0f64;
    for xi in m.coset_reps() {
        let mut acc = Filter::<T, D>::zero();
        for b in filters {
            acc = acc.add(&b.mul(&b.modulate(xi, den)?.adjoint()));
        }
        if xi.iter().all(|&v| v == 0) {
            acc = acc.sub(&Filter::delta());
        }
        worst = worst.max(acc.max_abs());
    }
    Ok(worst)
}

/// Residual of Σ_ξ |â(ω+2πξ)|² = 1.
pub fn orthonormal_residual<T: Scalar, const D: usize>(
    a: &Filter<T, D>,
    m: &Dilation<D>,
) -> Result<f64> {
    let den = m.det_abs();
    let mut acc = Filter::<T, D>::zero();
    for xi in m.coset_reps() {
        let f = a.modulate(xi, den)?;
        acc = acc.add(&f.mul(&f.adjoint()));
    }
    Ok(acc.sub(&Filter::delta()).max_abs())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrderRelation {
    pub min_vmo: usize,
    pub sr: usize,
    pub lpm: usize,
    pub holds: bool,
}

/// Compares min vmo over the nonzero high-pass filters with min(sr(a), lpm(a)/2).
pub fn vm_sr_lpm_relation<T: Scalar>(bank: &FilterBank<T>) -> Result<OrderRelation> {
    let sr = sum_rules(&bank.lowpass, &bank.dilation)?;
    let (lpm, _) = linear_phase_moments(&bank.lowpass, None)?;
    let min_vmo = bank.highpass.iter().map(vanishing_moments).min().unwrap_or(usize::MAX);
    Ok(OrderRelation { min_vmo, sr, lpm, holds: min_vmo == sr.min(lpm / 2) })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyReport {
    pub sr: usize,
    /// `None` for identically zero filters.
    pub vmo_per_filter: Vec<Option<usize>>,
    pub lpm: usize,
    pub lpm_phase: Vec<f64>,
    pub symmetry_verdicts: Vec<SymmetryVerdict>,
    pub tight_residual: f64,
    pub orthonormal_residual: f64,
}

impl PropertyReport {
    pub fn is_tight(&self, tol: f64) -> bool {
        self.tight_residual <= tol
    }
}

pub fn report<T: Scalar>(bank: &FilterBank<T>) -> Result<PropertyReport> {
    let sr = sum_rules(&bank.lowpass, &bank.dilation)?;
    let (lpm, c) = linear_phase_moments(&bank.lowpass, None)?;
    let vmo_per_filter = bank
        .highpass
        .iter()
        .map(|b| Some(vanishing_moments(b)).filter(|&v| v != usize::MAX))
        .collect();
    let tol = DEFAULT_TOL;
    let symmetry_verdicts = bank.filters().into_iter().map(|f| detect_symmetry(f, tol)).collect();
    Ok(PropertyReport {
        sr,
        vmo_per_filter,
        lpm,
        lpm_phase: c.iter().map(|v| v.to_c64().re).collect(),
        symmetry_verdicts,
        tight_residual: tight_residual(&bank.filters(), &bank.dilation)?,
        orthonormal_residual: orthonormal_residual(&bank.lowpass, &bank.dilation)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filters1d::{daubechies, haar, interpolatory, u_filter};
    use crate::lattice::{rational_1d, Filter1D, Filter2D};
    use crate::scalar::{q, CQ};
    use proptest::prelude::*;

    fn ex21_a() -> Filter2D<CQ> {
        Filter2D::from_printed((0, 1), (0, 1), vec![vec![q(1, 4), q(1, 4)], vec![q(1, 4), q(1, 4)]])
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

    #[test]
    fn multi_index_counts() {
        assert_eq!(multi_indices::<2>(3).len(), 4);
        assert_eq!(multi_indices::<1>(5), vec![[5]]);
        assert!(multi_indices::<2>(2).contains(&[1, 1]));
    }

    #[test]
    fn sum_rule_orders() {
        let m = Dilation::quincunx_m();
        assert_eq!(sum_rules(&ex21_a(), &m).unwrap(), 2);
        assert_eq!(sum_rules(&ex22_a(), &m).unwrap(), 4);
        assert_eq!(sum_rules(&Filter2D::<CQ>::delta(), &m).unwrap(), 0);
        for n in 1..=4 {
            assert_eq!(sum_rules(&interpolatory(n), &Dilation::dyadic()).unwrap(), 2 * n);
        }
        let bad = ex21_a().scale(&q(2, 1));
        assert!(matches!(sum_rules(&bad, &m), Err(Error::NotLowpass { .. })));
    }

    #[test]
    fn vanishing_moment_orders() {
        assert_eq!(vanishing_moments(&Filter2D::<CQ>::delta()), 0);
        assert_eq!(vanishing_moments(&rational_1d(0, &[1, -1], 2)), 1);
        assert_eq!(vanishing_moments(&rational_1d(0, &[1, -2, 1], 4)), 2);
        assert_eq!(vanishing_moments(&Filter1D::<CQ>::zero()), usize::MAX);
    }

    #[test]
    fn linear_phase_orders() {
        let c = [q(1, 2), q(1, 2)];
        assert_eq!(linear_phase_moments(&ex22_a(), Some(c)).unwrap().0, 4);
        assert_eq!(linear_phase_moments(&haar(), Some([q(1, 2)])).unwrap().0, 2);
        for n in 1..=5 {
            let (l, c) = linear_phase_moments(&u_filter(n, &[]), None).unwrap();
            assert_eq!(c, [q(1, 2)]);
            assert_eq!(l, 2 * n);
        }
    }

    #[test]
    fn symmetry_of_example_lowpass() {
        let s = SymmetrySpec::d4(SymmetrySpec::half(1, 1), Character::Trivial);
        assert_eq!(symmetry_check(&ex22_a(), &s, 0.0).unwrap(), (true, 0.0));
        let mut taps: Vec<_> = ex22_a().taps().map(|(k, v)| (k, v.clone())).collect();
        taps[0].1 = taps[0].1.clone() + q(1, 1000);
        let bent = Filter2D::from_taps(taps);
        let (pass, dev) = symmetry_check(&bent, &s, 0.0).unwrap();
        assert!(!pass);
        assert!((dev - 1e-3).abs() < 1e-15);
        let off = SymmetrySpec::d4([Ratio::new(1, 3), Ratio::new(0, 1)], Character::Trivial);
        assert!(matches!(symmetry_check(&ex22_a(), &off, 0.0), Err(Error::IncompatibleCenter)));
    }

    #[test]
    fn orthonormal_residuals() {
        let d2 = daubechies(2).unwrap();
        assert!(orthonormal_residual(&d2, &Dilation::dyadic()).unwrap() < 1e-10);
        assert_eq!(orthonormal_residual(&haar(), &Dilation::dyadic()).unwrap(), 0.0);
        assert!(orthonormal_residual(&ex21_a(), &Dilation::quincunx_m()).unwrap() > 1e-3);
    }

    #[test]
    fn detected_symmetry_of_lowpass() {
        let v = detect_symmetry(&ex22_a(), 0.0);
        assert!(v.pass);
        assert_eq!(v.group, "D4");
        assert_eq!(v.center, ["1/2".to_string(), "1/2".to_string()]);
    }

    proptest! {
        #[test]
        fn orders_are_shift_covariant(n in 1usize..4, s in -5i64..5) {
            let u = u_filter(n, &[]);
            let moved = u.shift([s]);
            let (l0, c0) = linear_phase_moments(&u, None).unwrap();
            let (l1, c1) = linear_phase_moments(&moved, None).unwrap();
            prop_assert_eq!(l0, l1);
            prop_assert_eq!(c1[0].clone() - c0[0].clone(), q(s, 1));
            let d = Dilation::dyadic();
            prop_assert_eq!(sum_rules(&u, &d).unwrap(), sum_rules(&moved, &d).unwrap());
            let b = rational_1d(0, &[1, -2, 1], 4);
            prop_assert_eq!(vanishing_moments(&b), vanishing_moments(&b.shift([s])));
        }
    }
}
