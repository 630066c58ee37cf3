//! Laurent polynomials on Z and Z², dilation matrices and symmetry groups.

use crate::scalar::{Scalar, C64, CQ};
use crate::{Error, Result};
use num::rational::Ratio;

/// Finitely supported sequence on Z^D stored densely over its support box.
///
/// The symbol is f̂(ω) = Σ f(k) e^{-ik·ω}. Data is row-major with the last
/// coordinate varying fastest.
#[derive(Clone, Debug, PartialEq)]
pub struct Filter<T, const D: usize> {
    min: [i64; D],
    shape: [usize; D],
    data: Vec<T>,
}

pub type Filter1D<T = C64> = Filter<T, 1>;
pub type Filter2D<T = C64> = Filter<T, 2>;

impl<T: Scalar, const D: usize> Filter<T, D> {
    pub fn zero() -> Self {
        Filter { min: [0; D], shape: [0; D], data: Vec::new() }
    }

    pub fn delta() -> Self {
        Filter { min: [0; D], shape: [1; D], data: vec![T::one()] }
    }

    /// Single coefficient `v` at `k`.
    pub fn monomial(k: [i64; D], v: T) -> Self {
        Filter { min: k, shape: [1; D], data: vec![v] }.trimmed()
    }

    /// Dense constructor over the box starting at `min` with the given shape.
    pub fn from_dense(min: [i64; D], shape: [usize; D], data: Vec<T>) -> Self {
        assert_eq!(shape.iter().product::<usize>(), data.len(), "shape does not match data");
        Filter { min, shape, data }.trimmed()
    }

    /// Accumulates `(k, v)` pairs.
    pub fn from_taps<I: IntoIterator<Item = ([i64; D], T)>>(taps: I) -> Self {
        let taps: Vec<_> = taps.into_iter().collect();
        if taps.is_empty() {
            return Self::zero();
        }
        let mut lo = taps[0].0;
        let mut hi = taps[0].0;
        for (k, _) in &taps {
            for i in 0..D {
                lo[i] = lo[i].min(k[i]);
                hi[i] = hi[i].max(k[i]);
            }
        }
        let mut shape = [0usize; D];
        for i in 0..D {
            shape[i] = (hi[i] - lo[i] + 1) as usize;
        }
        let mut f = Filter { min: lo, shape, data: vec![T::zero(); shape.iter().product()] };
        for (k, v) in taps {
            let idx = f.index_of(k).unwrap();
            f.data[idx] = f.data[idx].clone() + v;
        }
        f.trimmed()
    }

    pub fn support_min(&self) -> [i64; D] {
        self.min
    }

    /// Inclusive upper corner of the support box; `None` for the zero filter.
    pub fn support_max(&self) -> Option<[i64; D]> {
        if self.data.is_empty() {
            return None;
        }
        let mut hi = self.min;
        for i in 0..D {
            hi[i] += self.shape[i] as i64 - 1;
        }
        Some(hi)
    }

    pub fn shape(&self) -> [usize; D] {
        self.shape
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.is_empty()
    }

    pub fn index_of(&self, k: [i64; D]) -> Option<usize> {
        let mut idx = 0usize;
        for i in 0..D {
            let off = k[i] - self.min[i];
            if off < 0 || off >= self.shape[i] as i64 {
                return None;
            }
            idx = idx * self.shape[i] + off as usize;
        }
        Some(idx)
    }

    pub fn point(&self, mut lin: usize) -> [i64; D] {
        let mut k = [0i64; D];
        for i in (0..D).rev() {
            k[i] = self.min[i] + (lin % self.shape[i]) as i64;
            lin /= self.shape[i];
        }
        k
    }

    pub fn get(&self, k: [i64; D]) -> T {
        match self.index_of(k) {
            Some(i) => self.data[i].clone(),
            None => T::zero(),
        }
    }

    pub fn coeff(&self, k: [i64; D]) -> Option<&T> {
        self.index_of(k).map(|i| &self.data[i])
    }

    /// All stored positions with their coefficients, including interior zeros.
    pub fn iter(&self) -> impl Iterator<Item = ([i64; D], &T)> + '_ {
        self.data.iter().enumerate().map(move |(i, v)| (self.point(i), v))
    }

    /// Nonzero coefficients only.
    pub fn taps(&self) -> impl Iterator<Item = ([i64; D], &T)> + '_ {
        self.iter().filter(|(_, v)| !v.is_zero())
    }

    /// Drops border hyperplanes whose coefficients are exactly zero.
    pub fn trimmed(self) -> Self {
        self.trimmed_tol(0.0)
    }

    /// Drops border hyperplanes whose coefficients are all at most `tol` in modulus.
    pub fn trimmed_tol(self, tol: f64) -> Self {
        let small = |v: &T| if tol == 0.0 { v.is_zero() } else { v.abs_f64() <= tol };
        let mut lo = [usize::MAX; D];
        let mut hi = [0usize; D];
        let mut any = false;
        for (lin, v) in self.data.iter().enumerate() {
            if small(v) {
                continue;
            }
            any = true;
            let mut rest = lin;
            for i in (0..D).rev() {
                let c = rest % self.shape[i];
                rest /= self.shape[i];
                lo[i] = lo[i].min(c);
                hi[i] = hi[i].max(c);
            }
        }
        if !any {
            return Self::zero();
        }
        if (0..D).all(|i| lo[i] == 0 && hi[i] + 1 == self.shape[i]) {
            return self;
        }
        let mut min = self.min;
        let mut shape = [0usize; D];
        for i in 0..D {
            min[i] += lo[i] as i64;
            shape[i] = hi[i] - lo[i] + 1;
        }
        let n: usize = shape.iter().product();
        let mut data = Vec::with_capacity(n);
        let probe = Filter { min, shape, data: Vec::<()>::new() };
        for lin in 0..n {
            let k = probe.point_raw(lin);
            data.push(self.get(k));
        }
        Filter { min, shape, data }
    }

    pub fn map<U: Scalar, F: Fn(&T) -> U>(&self, f: F) -> Filter<U, D> {
        Filter { min: self.min, shape: self.shape, data: self.data.iter().map(f).collect() }
            .trimmed()
    }

    pub fn to_c64(&self) -> Filter<C64, D> {
        self.map(|v| v.to_c64())
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|v| v.clone() * s.clone())
    }

    pub fn neg(&self) -> Self {
        self.map(|v| -v.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_taps(
            self.iter()
                .map(|(k, v)| (k, v.clone()))
                .chain(other.iter().map(|(k, v)| (k, v.clone()))),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Convolution; the symbol of the result is the product of the symbols.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut min = [0i64; D];
        let mut shape = [0usize; D];
        for i in 0..D {
            min[i] = self.min[i] + other.min[i];
            shape[i] = self.shape[i] + other.shape[i] - 1;
        }
        let mut out = Filter { min, shape, data: vec![T::zero(); shape.iter().product()] };
        let rhs: Vec<([i64; D], &T)> = other.taps().collect();
        for (k, a) in self.taps() {
            for (j, b) in &rhs {
                let mut p = [0i64; D];
                for i in 0..D {
                    p[i] = k[i] + j[i];
                }
                let idx = out.index_of(p).unwrap();
                out.data[idx] = out.data[idx].clone() + a.clone() * (*b).clone();
            }
        }
        out.trimmed()
    }

    /// f⋆(k) = conj(f(−k)); its symbol is the complex conjugate of f̂.
    pub fn adjoint(&self) -> Self {
        let Some(hi) = self.support_max() else { return Self::zero() };
        let mut min = [0i64; D];
        for i in 0..D {
            min[i] = -hi[i];
        }
        let n = self.data.len();
        let mut data = Vec::with_capacity(n);
        for lin in 0..n {
            data.push(self.data[n - 1 - lin].conj());
        }
        Filter { min, shape: self.shape, data }
    }

    /// Multiplies f(k) by (−1)^{k₁+…+k_D}: the symbol shifted by (π,…,π).
    pub fn modulate_pi(&self) -> Self {
        let mut out = self.clone();
        for (lin, v) in out.data.iter_mut().enumerate() {
            let k = self.point(lin);
            if k.iter().sum::<i64>().rem_euclid(2) == 1 {
                *v = -v.clone();
            }
        }
        out
    }

    /// Symbol shifted by 2πξ with ξ = num/den: f(k) e^{−2πi ξ·k}.
    pub fn modulate(&self, num: [i64; D], den: i64) -> Result<Self> {
        let mut out = self.clone();
        for (lin, v) in out.data.iter_mut().enumerate() {
            let k = self.point(lin);
            let r: i64 = (0..D).map(|i| num[i] * k[i]).sum();
            let w = T::root_of_unity(r, den).ok_or_else(|| {
                Error::InvalidParameter(format!("phase {r}/{den} not representable exactly"))
            })?;
            *v = v.clone() * w;
        }
        Ok(out)
    }

    pub fn shift(&self, s: [i64; D]) -> Self {
        let mut out = self.clone();
        for i in 0..D {
            out.min[i] += s[i];
        }
        out
    }

    pub fn eval(&self, omega: [f64; D]) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for (k, v) in self.taps() {
            let t: f64 = (0..D).map(|i| k[i] as f64 * omega[i]).sum();
            acc += v.to_c64() * C64::new(t.cos(), -t.sin());
        }
        acc
    }

    pub fn coeff_sum(&self) -> T {
        self.data.iter().fold(T::zero(), |a, b| a + b.clone())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.abs_f64()).fold(0.0, f64::max)
    }

    /// Sum of squared moduli of the coefficients.
    pub fn norm_sqr(&self) -> f64 {
        self.data.iter().map(|v| v.to_c64().norm_sqr()).sum()
    }

    /// Largest coefficient deviation between two filters.
    pub fn max_diff(&self, other: &Self) -> f64 {
        self.to_c64().sub(&other.to_c64()).max_abs()
    }
}

impl<T, const D: usize> Filter<T, D> {
    fn point_raw(&self, mut lin: usize) -> [i64; D] {
        let mut k = [0i64; D];
        for i in (0..D).rev() {
            k[i] = self.min[i] + (lin % self.shape[i]) as i64;
            lin /= self.shape[i];
        }
        k
    }
}

impl<T: Scalar> Filter<T, 1> {
    /// `coeffs[j]` sits at index `min + j`.
    pub fn new(min: i64, coeffs: Vec<T>) -> Self {
        let n = coeffs.len();
        Self::from_dense([min], [n], coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.data
    }

    pub fn min(&self) -> i64 {
        self.min[0]
    }

    pub fn at(&self, k: i64) -> T {
        self.get([k])
    }

    /// f̂(γ·ω) as a 2D filter: f(k) placed at kγ.
    pub fn dilate_2d(&self, gamma: [i64; 2]) -> Filter2D<T> {
        Filter2D::from_taps(
            self.taps().map(|([k], v)| ([k * gamma[0], k * gamma[1]], v.clone())),
        )
    }

    /// f̂(mω): f(k) placed at mk.
    pub fn upsample(&self, m: i64) -> Self {
        Filter::from_taps(self.taps().map(|([k], v)| ([k * m], v.clone())))
    }

    pub fn eval1(&self, omega: f64) -> C64 {
        self.eval([omega])
    }
}

impl<T: Scalar> Filter<T, 2> {
    /// Builds a filter from a matrix printed the usual way for quincunx
    /// filters: columns run over k₁ increasing, rows over k₂ decreasing.
    pub fn from_printed(k1: (i64, i64), k2: (i64, i64), rows: Vec<Vec<T>>) -> Self {
        let w = (k1.1 - k1.0 + 1) as usize;
        let h = (k2.1 - k2.0 + 1) as usize;
        assert_eq!(rows.len(), h, "row count does not match k₂ range");
        let mut taps = Vec::new();
        for (r, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), w, "row length does not match k₁ range");
            for (c, v) in row.into_iter().enumerate() {
                taps.push(([k1.0 + c as i64, k2.1 - r as i64], v));
            }
        }
        Self::from_taps(taps)
    }

    /// Rows in the printed layout (k₂ decreasing), columns k₁ increasing.
    pub fn to_printed(&self) -> Vec<Vec<T>> {
        let Some(hi) = self.support_max() else { return Vec::new() };
        let mut rows = Vec::new();
        for k2 in (self.min[1]..=hi[1]).rev() {
            rows.push((self.min[0]..=hi[0]).map(|k1| self.get([k1, k2])).collect());
        }
        rows
    }

    /// Tensor product f ⊗ g: f(k₁) g(k₂).
    pub fn tensor(f: &Filter1D<T>, g: &Filter1D<T>) -> Self {
        let mut taps = Vec::new();
        for ([a], u) in f.taps() {
            for ([b], v) in g.taps() {
                taps.push(([a, b], u.clone() * v.clone()));
            }
        }
        Self::from_taps(taps)
    }

    /// The 1D filter placed on Z × {0}.
    pub fn embed(f: &Filter1D<T>) -> Self {
        f.dilate_2d([1, 0])
    }
}

/// Expands v̂(ω) = 2 f̂(ω/2) ĝ(ω/2 + π) into integer frequencies.
pub fn half_arg_product<T: Scalar>(f: &Filter1D<T>, g: &Filter1D<T>, tol: f64) -> Result<Filter1D<T>> {
    let h = f.mul(&g.modulate_pi());
    let mut odd_max = 0.0f64;
    let mut taps = Vec::new();
    for ([k], v) in h.taps() {
        if k.rem_euclid(2) == 1 {
            if !v.is_negligible(tol) {
                odd_max = odd_max.max(v.abs_f64());
            }
        } else {
            taps.push(([k / 2], v.clone() * T::from_i64(2)));
        }
    }
    if odd_max > 0.0 {
        return Err(Error::NonIntegerSpectrum { max: odd_max });
    }
    Ok(Filter1D::from_taps(taps))
}

/// Integer dilation matrix acting on Z^D.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dilation<const D: usize> {
    pub m: [[i64; D]; D],
}

impl Dilation<1> {
    pub fn dyadic() -> Self {
        Dilation { m: [[2]] }
    }
}

impl Dilation<2> {
    /// M_√2 = [[1,1],[1,−1]].
    pub fn quincunx_m() -> Self {
        Dilation { m: [[1, 1], [1, -1]] }
    }

    /// N_√2 = [[1,−1],[1,1]].
    pub fn quincunx_n() -> Self {
        Dilation { m: [[1, -1], [1, 1]] }
    }

    pub fn dyadic_2d() -> Self {
        Dilation { m: [[2, 0], [0, 2]] }
    }
}

impl<const D: usize> Dilation<D> {
    pub fn new(m: [[i64; D]; D]) -> Result<Self> {
        let d = Dilation { m };
        d.validate()?;
        Ok(d)
    }

    pub fn det(&self) -> i64 {
        match D {
            1 => self.m[0][0],
            2 => self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0],
            _ => unimplemented!("only d = 1, 2"),
        }
    }

    pub fn det_abs(&self) -> i64 {
        self.det().abs()
    }

    /// Checks |det| ≥ 2 and that both eigenvalues lie outside the closed unit disk.
    pub fn validate(&self) -> Result<()> {
        let det = self.det();
        if det.abs() < 2 {
            return Err(Error::InvalidParameter(format!("|det M| = {} < 2", det.abs())));
        }
        if D == 2 {
            let tr = (self.m[0][0] + self.m[1][1]) as f64;
            let disc = tr * tr - 4.0 * det as f64;
            let moduli: Vec<f64> = if disc >= 0.0 {
                vec![((tr + disc.sqrt()) / 2.0).abs(), ((tr - disc.sqrt()) / 2.0).abs()]
            } else {
                vec![(det as f64).sqrt(); 2]
            };
            if moduli.iter().any(|&r| r <= 1.0 + 1e-12) {
                return Err(Error::InvalidParameter("M has an eigenvalue of modulus ≤ 1".into()));
            }
        }
        Ok(())
    }

    pub fn apply(&self, k: [i64; D]) -> [i64; D] {
        let mut out = [0i64; D];
        for i in 0..D {
            for j in 0..D {
                out[i] += self.m[i][j] * k[j];
            }
        }
        out
    }

    pub fn adjugate(&self) -> [[i64; D]; D] {
        let mut a = [[0i64; D]; D];
        match D {
            1 => a[0][0] = 1,
            2 => {
                a[0][0] = self.m[1][1];
                a[0][1] = -self.m[0][1];
                a[1][0] = -self.m[1][0];
                a[1][1] = self.m[0][0];
            }
            _ => unimplemented!("only d = 1, 2"),
        }
        a
    }

    /// M⁻¹k when it is an integer vector.
    pub fn solve(&self, k: [i64; D]) -> Option<[i64; D]> {
        let adj = self.adjugate();
        let det = self.det();
        let mut out = [0i64; D];
        for i in 0..D {
            let s: i64 = (0..D).map(|j| adj[i][j] * k[j]).sum();
            if s % det != 0 {
                return None;
            }
            out[i] = s / det;
        }
        Some(out)
    }

    pub fn in_lattice(&self, k: [i64; D]) -> bool {
        self.solve(k).is_some()
    }

    /// Ω_M = (Mᵀ)⁻¹Z^D ∩ [0,1)^D as numerators over the common denominator |det M|.
    pub fn coset_reps(&self) -> Vec<[i64; D]> {
        let q = self.det_abs();
        let sign = self.det().signum();
        let adj = self.adjugate();
        let mut out: Vec<[i64; D]> = Vec::new();
        let count = (q as usize).pow(D as u32);
        for lin in 0..count {
            let mut j = [0i64; D];
            let mut rest = lin;
            for i in 0..D {
                j[i] = (rest % q as usize) as i64;
                rest /= q as usize;
            }
            // (Mᵀ)⁻¹ = adj(M)ᵀ / det
            let mut p = [0i64; D];
            for i in 0..D {
                let s: i64 = (0..D).map(|r| adj[r][i] * j[r]).sum();
                p[i] = (sign * s).rem_euclid(q);
            }
            if !out.contains(&p) {
                out.push(p);
            }
        }
        out.sort();
        out
    }

    /// Representatives of Z^D / M Z^D.
    pub fn lattice_cosets(&self) -> Vec<[i64; D]> {
        let q = self.det_abs();
        let mut reps: Vec<[i64; D]> = Vec::new();
        let count = (q as usize).pow(D as u32);
        for lin in 0..count {
            let mut k = [0i64; D];
            let mut rest = lin;
            for i in 0..D {
                k[i] = (rest % q as usize) as i64;
                rest /= q as usize;
            }
            let fresh = reps.iter().all(|r| {
                let mut d = [0i64; D];
                for i in 0..D {
                    d[i] = k[i] - r[i];
                }
                !self.in_lattice(d)
            });
            if fresh {
                reps.push(k);
            }
        }
        reps
    }

    pub fn pow(&self, e: u32) -> [[i64; D]; D] {
        let mut r = [[0i64; D]; D];
        for i in 0..D {
            r[i][i] = 1;
        }
        for _ in 0..e {
            let mut n = [[0i64; D]; D];
            for i in 0..D {
                for j in 0..D {
                    n[i][j] = (0..D).map(|l| r[i][l] * self.m[l][j]).sum();
                }
            }
            r = n;
        }
        r
    }
}

/// Character of a symmetry group: the sign attached to each group element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Character {
    Trivial,
    Det,
    /// Matrix entry E_{i,j} (zero-based indices).
    Entry(usize, usize),
}

impl Character {
    pub fn value(&self, e: &[[i64; 2]; 2]) -> i64 {
        match self {
            Character::Trivial => 1,
            Character::Det => e[0][0] * e[1][1] - e[0][1] * e[1][0],
            Character::Entry(i, j) => e[*i][*j],
        }
    }
}

pub type Mat2 = [[i64; 2]; 2];

fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut r = [[0i64; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    r
}

/// A finite group of integer matrices, a center and a character:
/// f is symmetric when f(E(k−c)+c) = χ(E) f(k) for all k and E.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetrySpec {
    pub group: Vec<Mat2>,
    pub center: [Ratio<i64>; 2],
    pub character: Character,
}

impl SymmetrySpec {
    /// The dihedral group of the square.
    pub fn d4_group() -> Vec<Mat2> {
        vec![
            [[1, 0], [0, 1]],
            [[-1, 0], [0, -1]],
            [[1, 0], [0, -1]],
            [[-1, 0], [0, 1]],
            [[0, 1], [1, 0]],
            [[0, -1], [-1, 0]],
            [[0, 1], [-1, 0]],
            [[0, -1], [1, 0]],
        ]
    }

    /// {±I, ±diag(1,−1)}.
    pub fn d4_plus_group() -> Vec<Mat2> {
        vec![[[1, 0], [0, 1]], [[-1, 0], [0, -1]], [[1, 0], [0, -1]], [[-1, 0], [0, 1]]]
    }

    pub fn new(group: Vec<Mat2>, center: [Ratio<i64>; 2], character: Character) -> Result<Self> {
        let s = SymmetrySpec { group, center, character };
        s.validate()?;
        Ok(s)
    }

    pub fn d4(center: [Ratio<i64>; 2], character: Character) -> Self {
        SymmetrySpec { group: Self::d4_group(), center, character }
    }

    /// Center (c₁/2, c₂/2).
    pub fn half(c1: i64, c2: i64) -> [Ratio<i64>; 2] {
        [Ratio::new(c1, 2), Ratio::new(c2, 2)]
    }

    /// Checks group closure, identity, and multiplicativity of the character.
    pub fn validate(&self) -> Result<()> {
        let id = [[1, 0], [0, 1]];
        if !self.group.contains(&id) {
            return Err(Error::InvalidParameter("group lacks the identity".into()));
        }
        for a in &self.group {
            for b in &self.group {
                let p = mat_mul(a, b);
                if !self.group.contains(&p) {
                    return Err(Error::InvalidParameter("group is not closed".into()));
                }
                let (ca, cb, cp) =
                    (self.character.value(a), self.character.value(b), self.character.value(&p));
                if ca * cb != cp || ca.abs() != 1 {
                    return Err(Error::InvalidParameter("character is not multiplicative".into()));
                }
            }
        }
        Ok(())
    }

    /// E(k−c)+c, or `None` if it leaves Z².
    pub fn image(&self, e: &Mat2, k: [i64; 2]) -> Option<[i64; 2]> {
        let c = &self.center;
        let mut out = [0i64; 2];
        for i in 0..2 {
            let v = Ratio::from_integer(e[i][0]) * (Ratio::from_integer(k[0]) - c[0])
                + Ratio::from_integer(e[i][1]) * (Ratio::from_integer(k[1]) - c[1])
                + c[i];
            if !v.is_integer() {
                return None;
            }
            out[i] = v.to_integer();
        }
        Some(out)
    }

    /// Largest |f(E(k−c)+c) − χ(E) f(k)| over the group and the support.
    pub fn deviation<T: Scalar>(&self, f: &Filter2D<T>) -> Result<f64> {
        let mut worst = 0.0f64;
        for e in &self.group {
            let chi = T::from_i64(self.character.value(e));
            for (k, v) in f.iter() {
                let j = self.image(e, k).ok_or(Error::IncompatibleCenter)?;
                let d = f.get(j) - chi.clone() * v.clone();
                if !d.is_zero() {
                    worst = worst.max(d.abs_f64());
                }
            }
        }
        Ok(worst)
    }
}

/// Convenience: exact rational filter from integer numerators over a common denominator.
pub fn rational_1d(min: i64, nums: &[i64], den: i64) -> Filter1D<CQ> {
    Filter1D::new(min, nums.iter().map(|&n| CQ::from_ratio(n, den)).collect())
}

/// Whether two filters agree coefficientwise within `tol` (exactly when `tol` is zero and T is exact).
pub fn filters_close<T: Scalar, const D: usize>(a: &Filter<T, D>, b: &Filter<T, D>, tol: f64) -> bool {
    if T::EXACT && tol == 0.0 {
        return a == b;
    }
    a.max_diff(b) <= tol
}

/// True when all coefficients are real (imaginary parts zero, or below `tol` in float mode).
pub fn is_real_filter<T: Scalar, const D: usize>(f: &Filter<T, D>, tol: f64) -> bool {
    f.data().iter().all(|v| crate::scalar::is_real(v, tol))
}
