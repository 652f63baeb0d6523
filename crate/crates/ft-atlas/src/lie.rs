//! Real Lie algebras as structure-constant tensors: validation, brackets,
//! central/derived series, nilpotency and solvability, roots of the
//! complexification along an invariant flag, and the exponential / type R
//! tests.

use crate::linalg::{self, CMat, CVec, Rat};
use nalgebra::DMatrix;
use num::traits::{Signed, Zero};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ScalarMode {
    Exact,
    Float { tol: f64 },
}

#[derive(Debug, Error)]
pub enum LieError {
    #[error("antisymmetry violated at (i={i}, j={j}, k={k}), residual {residual}")]
    AntisymmetryViolation { i: usize, j: usize, k: usize, residual: f64 },
    #[error("Jacobi identity violated at (i={i}, j={j}, k={k}), residual {residual}")]
    JacobiViolation { i: usize, j: usize, k: usize, residual: f64 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },
    #[error("operation requires a solvable Lie algebra")]
    NotSolvable,
    #[error("invariant flag search failed after {retries} retries")]
    FlagSearchFailed { retries: usize },
    #[error("empty basis")]
    EmptyBasis,
}

/// Finite-dimensional real Lie algebra given by structure constants
/// `[X_i, X_j] = sum_k c[i][j][k] X_k`.
///
/// When the input scalars are rational the tensor is also kept exactly, and
/// every rank/series computation runs over the rationals.
#[derive(Debug, Clone)]
pub struct LieAlgebra {
    dim: usize,
    basis_names: Vec<String>,
    /// dense float tensor, index (i*n + j)*n + k
    c: Vec<f64>,
    /// sparse exact brackets: entry i*n+j lists (k, coeff)
    exact: Option<Vec<Vec<(usize, Rat)>>>,
    mode: ScalarMode,
}

/// Element of a Lie algebra in the algebra's basis.
#[derive(Debug, Clone, PartialEq)]
pub struct LieVector {
    pub coords: Vec<f64>,
}

impl LieVector {
    pub fn new(coords: Vec<f64>) -> Self {
        Self { coords }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut coords = vec![0.0; dim];
        coords[i] = 1.0;
        Self { coords }
    }

    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SeriesKind {
    LowerCentral,
    Derived,
}

/// Chain of subspaces (lower central or derived series) down to stabilization.
#[derive(Debug, Clone)]
pub struct SeriesChain {
    pub kind: SeriesKind,
    /// spanning sets, one per term, as coordinate rows
    pub subspaces: Vec<Vec<Vec<f64>>>,
    pub dims: Vec<usize>,
}

impl SeriesChain {
    pub fn terminates_at_zero(&self) -> bool {
        self.dims.last() == Some(&0)
    }
}

/// Root of the complexification: a complex-valued linear functional split into
/// real and imaginary part.
#[derive(Debug, Clone, Serialize)]
pub struct Root {
    pub real_part: Vec<f64>,
    pub imag_part: Vec<f64>,
}

impl Root {
    pub fn eval(&self, x: &LieVector) -> Complex64 {
        let re: f64 = self.real_part.iter().zip(&x.coords).map(|(a, b)| a * b).sum();
        let im: f64 = self.imag_part.iter().zip(&x.coords).map(|(a, b)| a * b).sum();
        Complex64::new(re, im)
    }

    pub fn real_norm(&self) -> f64 {
        self.real_part.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn imag_norm(&self) -> f64 {
        self.imag_part.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

/// Roots together with the invariant flag they were read off from.
#[derive(Debug, Clone)]
pub struct RootData {
    pub roots: Vec<Root>,
    /// flag vectors v_1, ..., v_n; V^k = span(v_1..v_k)
    pub flag: Vec<CVec>,
    /// max verification residual across flag steps
    pub residual: f64,
}

/// Raw structure data prior to validation.
pub struct RawAlgebra {
    pub basis_names: Vec<String>,
    /// full tensor c[i][j][k] as floats
    pub tensor: Vec<f64>,
    /// exact tensor, same layout, present when all scalars are rational
    pub exact: Option<Vec<Rat>>,
    pub mode: ScalarMode,
}

impl LieAlgebra {
    /// Validates antisymmetry and Jacobi on raw structure data.
    pub fn validate(raw: RawAlgebra) -> Result<LieAlgebra, LieError> {
        let n = raw.basis_names.len();
        if n == 0 {
            return Err(LieError::EmptyBasis);
        }
        if raw.tensor.len() != n * n * n {
            return Err(LieError::DimMismatch { expected: n * n * n, got: raw.tensor.len() });
        }
        let tol = match raw.mode {
            ScalarMode::Exact => 0.0,
            ScalarMode::Float { tol } => tol,
        };
        let at = |i: usize, j: usize, k: usize| raw.tensor[(i * n + j) * n + k];

        if let Some(exact) = &raw.exact {
            // sparse view: the checks below only walk nonzero constants, which
            // keeps validation fast for high-dimensional sparse tables
            let mut sparse: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); n * n];
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let v = &exact[(i * n + j) * n + k];
                        if !v.is_zero() {
                            sparse[i * n + j].push((k, v.clone()));
                        }
                    }
                }
            }
            for i in 0..n {
                for j in 0..n {
                    for (k, v) in &sparse[i * n + j] {
                        let mirror = &exact[(j * n + i) * n + k];
                        if !(v + mirror).is_zero() {
                            return Err(LieError::AntisymmetryViolation {
                                i,
                                j,
                                k: *k,
                                residual: linalg::rat_to_f64(&(v + mirror).abs()),
                            });
                        }
                    }
                }
            }
            let mut acc = vec![Rat::zero(); n];
            let mut touched: Vec<usize> = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    for k in (j + 1)..n {
                        for &(x, y, z) in &[(i, j, k), (j, k, i), (k, i, j)] {
                            for (m, c1) in &sparse[x * n + y] {
                                for (l, c2) in &sparse[m * n + z] {
                                    if acc[*l].is_zero() {
                                        touched.push(*l);
                                    }
                                    acc[*l] += c1 * c2;
                                }
                            }
                        }
                        let bad = touched.iter().find(|&&l| !acc[l].is_zero()).copied();
                        if let Some(l) = bad {
                            let residual = linalg::rat_to_f64(&acc[l].abs());
                            return Err(LieError::JacobiViolation { i, j, k, residual });
                        }
                        for l in touched.drain(..) {
                            acc[l] = Rat::zero();
                        }
                    }
                }
            }
        } else {
            let scale = raw.tensor.iter().fold(0.0f64, |a, &b| a.max(b.abs())).max(1.0);
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let r = at(i, j, k) + at(j, i, k);
                        if r.abs() > tol * scale {
                            return Err(LieError::AntisymmetryViolation { i, j, k, residual: r.abs() });
                        }
                    }
                }
            }
            for i in 0..n {
                for j in (i + 1)..n {
                    for k in (j + 1)..n {
                        for l in 0..n {
                            let mut s = 0.0;
                            for m in 0..n {
                                s += at(i, j, m) * at(m, k, l)
                                    + at(j, k, m) * at(m, i, l)
                                    + at(k, i, m) * at(m, j, l);
                            }
                            if s.abs() > tol * scale * scale * (n as f64) {
                                return Err(LieError::JacobiViolation { i, j, k, residual: s.abs() });
                            }
                        }
                    }
                }
            }
        }

        let exact = raw.exact.map(|flat| {
            let mut sparse = vec![Vec::new(); n * n];
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let v = &flat[(i * n + j) * n + k];
                        if !v.is_zero() {
                            sparse[i * n + j].push((k, v.clone()));
                        }
                    }
                }
            }
            sparse
        });

        Ok(LieAlgebra {
            dim: n,
            basis_names: raw.basis_names,
            c: raw.tensor,
            exact,
            mode: raw.mode,
        })
    }

    /// Builds an algebra from the nonzero brackets `[X_i, X_j] (i < j)` given
    /// as rational coefficient lists; exact mode.
    pub fn from_exact_brackets(
        basis_names: Vec<String>,
        brackets: &[(usize, usize, Vec<(usize, Rat)>)],
    ) -> Result<LieAlgebra, LieError> {
        let n = basis_names.len();
        let mut flat = vec![Rat::zero(); n * n * n];
        for (i, j, coeffs) in brackets {
            for (k, c) in coeffs {
                flat[(i * n + j) * n + k] = c.clone();
                flat[(j * n + i) * n + k] = -c.clone();
            }
        }
        let tensor: Vec<f64> = flat.iter().map(linalg::rat_to_f64).collect();
        Self::validate(RawAlgebra { basis_names, tensor, exact: Some(flat), mode: ScalarMode::Exact })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn mode(&self) -> ScalarMode {
        self.mode
    }

    pub fn tol(&self) -> f64 {
        match self.mode {
            ScalarMode::Exact => DEFAULT_TOL,
            ScalarMode::Float { tol } => tol,
        }
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> f64 {
        self.c[(i * self.dim + j) * self.dim + k]
    }

    fn check_dim(&self, v: &LieVector) -> Result<(), LieError> {
        if v.coords.len() != self.dim {
            return Err(LieError::DimMismatch { expected: self.dim, got: v.coords.len() });
        }
        Ok(())
    }

    /// `[X, Y]` from the structure constants.
    pub fn bracket(&self, x: &LieVector, y: &LieVector) -> Result<LieVector, LieError> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        let n = self.dim;
        let mut out = vec![0.0; n];
        for i in 0..n {
            let xi = x.coords[i];
            if xi == 0.0 {
                continue;
            }
            for j in 0..n {
                let yj = y.coords[j];
                if yj == 0.0 {
                    continue;
                }
                for k in 0..n {
                    out[k] += xi * yj * self.c[(i * n + j) * n + k];
                }
            }
        }
        Ok(LieVector::new(out))
    }

    /// Exact bracket of rational coordinate vectors (exact mode only).
    pub fn bracket_exact(&self, x: &[Rat], y: &[Rat]) -> Option<Vec<Rat>> {
        let sparse = self.exact.as_ref()?;
        let n = self.dim;
        let mut out = vec![Rat::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                for (k, c) in &sparse[i * n + j] {
                    out[*k] += &x[i] * &y[j] * c;
                }
            }
        }
        Some(out)
    }

    /// Matrix of `ad(X): Y -> [X, Y]`; column j is `[X, X_j]`.
    pub fn ad_matrix(&self, x: &LieVector) -> Result<DMatrix<f64>, LieError> {
        self.check_dim(x)?;
        let n = self.dim;
        let mut m = DMatrix::<f64>::zeros(n, n);
        for j in 0..n {
            let col = self.bracket(x, &LieVector::basis(n, j))?;
            for k in 0..n {
                m[(k, j)] = col.coords[k];
            }
        }
        Ok(m)
    }

    fn series(&self, kind: SeriesKind) -> SeriesChain {
        match &self.exact {
            Some(_) => self.series_exact(kind),
            None => self.series_float(kind),
        }
    }

    fn series_exact(&self, kind: SeriesKind) -> SeriesChain {
        let n = self.dim;
        let full: Vec<Vec<Rat>> = (0..n)
            .map(|i| {
                let mut v = vec![Rat::zero(); n];
                v[i] = Rat::from_integer(1.into());
                v
            })
            .collect();
        let mut subspaces = vec![full.clone()];
        let mut dims = vec![n];
        loop {
            let prev = subspaces.last().unwrap();
            let left: &[Vec<Rat>] = match kind {
                SeriesKind::LowerCentral => &full,
                SeriesKind::Derived => prev,
            };
            // the next term sits inside the previous one, so its rank is
            // bounded by the previous dimension; stop generating brackets as
            // soon as that bound is attained
            let bound = *dims.last().unwrap();
            let mut reducer = linalg::RatRowReducer::new();
            'gen: for a in left {
                for b in prev.iter() {
                    if reducer.rank() == bound {
                        break 'gen;
                    }
                    if let Some(v) = self.bracket_exact(a, b) {
                        if v.iter().any(|x| !x.is_zero()) {
                            reducer.insert(v);
                        }
                    }
                }
            }
            let reduced = reducer.into_rows();
            let d = reduced.len();
            let stop = d == *dims.last().unwrap();
            subspaces.push(reduced);
            dims.push(d);
            if stop || d == 0 {
                break;
            }
        }
        let subspaces = subspaces
            .into_iter()
            .map(|rows| rows.into_iter().map(|r| r.iter().map(linalg::rat_to_f64).collect()).collect())
            .collect();
        SeriesChain { kind, subspaces, dims }
    }

    fn series_float(&self, kind: SeriesKind) -> SeriesChain {
        let n = self.dim;
        let tol = self.tol();
        let full: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                let mut v = vec![0.0; n];
                v[i] = 1.0;
                v
            })
            .collect();
        let mut subspaces = vec![full.clone()];
        let mut dims = vec![n];
        loop {
            let prev = subspaces.last().unwrap();
            let left: &[Vec<f64>] = match kind {
                SeriesKind::LowerCentral => &full,
                SeriesKind::Derived => prev,
            };
            let mut spanning: Vec<Vec<f64>> = Vec::new();
            for a in left {
                for b in prev.iter() {
                    let v = self
                        .bracket(&LieVector::new(a.clone()), &LieVector::new(b.clone()))
                        .expect("dims fixed");
                    spanning.push(v.coords);
                }
            }
            let reduced = linalg::f64_rowspace(&spanning, tol);
            let d = reduced.len();
            let stop = d == *dims.last().unwrap();
            subspaces.push(reduced);
            dims.push(d);
            if stop || d == 0 {
                break;
            }
        }
        SeriesChain { kind, subspaces, dims }
    }

    pub fn lower_central_series(&self) -> SeriesChain {
        self.series(SeriesKind::LowerCentral)
    }

    pub fn derived_series(&self) -> SeriesChain {
        self.series(SeriesKind::Derived)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().terminates_at_zero()
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().terminates_at_zero()
    }

    /// Whether the algebra is abelian (all brackets vanish).
    pub fn is_abelian(&self) -> bool {
        let scale = self.c.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
        scale <= self.tol()
    }

    /// Engel-style check: `ad(X)^n = 0` for every basis element and `samples`
    /// seeded random rational combinations.
    pub fn engel_spot_check(&self, samples: usize, seed: u64) -> bool {
        let n = self.dim;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut candidates: Vec<LieVector> = (0..n).map(|i| LieVector::basis(n, i)).collect();
        for _ in 0..samples {
            candidates.push(random_rational_vector(n, &mut rng));
        }
        candidates.iter().all(|x| {
            let m = self.ad_matrix(x).expect("dims fixed");
            let scale = m.amax().max(1.0);
            let mut p = DMatrix::<f64>::identity(n, n);
            for _ in 0..n {
                p = &p * &m;
            }
            p.amax() <= self.tol() * scale.powi(n as i32)
        })
    }

    /// Roots of the complexification along a full ad-invariant flag
    /// (Lie's theorem guarantees one for solvable algebras).
    ///
    /// The flag is grown bottom-up: on each quotient a common eigenvector of
    /// all basis ad-operators is located via the eigenvectors of a seeded
    /// random combination, then verified.
    pub fn complexified_roots(&self, seed: u64) -> Result<RootData, LieError> {
        self.complexified_roots_with_retries(seed, 32)
    }

    pub fn complexified_roots_with_retries(
        &self,
        _seed: u64,
        retries: usize,
    ) -> Result<RootData, LieError> {
        if !self.is_solvable() {
            return Err(LieError::NotSolvable);
        }
        let n = self.dim;
        let tol = self.tol();
        let ads: Vec<CMat> = (0..n)
            .map(|i| linalg::real_to_complex(&self.ad_matrix(&LieVector::basis(n, i)).unwrap()))
            .collect();
        let ad_scale = ads
            .iter()
            .map(|m| m.iter().fold(0.0f64, |a, z| a.max(z.norm())))
            .fold(0.0f64, f64::max)
            .max(1.0);
        // residual gate: relative to the size of the ad operators
        let accept = (tol * ad_scale).max(1e-10 * ad_scale) * 100.0;

        // chain of subspaces refining the derived series; each span(w_1..w_k)
        // is an ideal in the next, which makes the weight-space refinement
        // below valid (constructive Lie's theorem)
        let chain = self.ideal_chain();
        let ads_chain: Vec<CMat> = chain
            .iter()
            .map(|w| linalg::real_to_complex(&self.ad_matrix(w).unwrap()))
            .collect();

        let mut flag: Vec<CVec> = Vec::new();
        let mut roots: Vec<Root> = Vec::new();
        let mut worst = 0.0f64;

        while flag.len() < n {
            let comp = linalg::orthonormal_complement(n, &flag);
            let Some(v) = common_eigenvector_in(&ads_chain, &comp) else {
                return Err(LieError::FlagSearchFailed { retries });
            };
            // verify: ad_i v = mu_i v modulo the current flag, for every basis ad
            let mut mus = Vec::with_capacity(n);
            let mut ok = true;
            for a in &ads {
                let img = a * &v;
                let mut pimg = CVec::zeros(n);
                for cj in &comp {
                    let dot = cj.dotc(&img);
                    pimg += cj * dot;
                }
                let mu = v.dotc(&pimg);
                let resid = (&pimg - &v * mu).norm();
                if resid > accept {
                    ok = false;
                    break;
                }
                worst = worst.max(resid);
                mus.push(mu);
            }
            if !ok {
                return Err(LieError::FlagSearchFailed { retries });
            }
            roots.push(Root {
                real_part: mus.iter().map(|z| z.re).collect(),
                imag_part: mus.iter().map(|z| z.im).collect(),
            });
            flag.push(v);
        }
        Ok(RootData { roots, flag, residual: worst })
    }

    /// Vectors w_1, .., w_n such that each prefix span is an ideal in the next
    /// prefix span, obtained by refining the derived series.
    fn ideal_chain(&self) -> Vec<LieVector> {
        let n = self.dim;
        let derived = self.derived_series();
        // terms from deepest nonzero to the full algebra
        let mut terms: Vec<Vec<Vec<f64>>> = derived
            .subspaces
            .iter()
            .filter(|s| !s.is_empty())
            .cloned()
            .collect();
        terms.reverse();
        let mut chain: Vec<LieVector> = Vec::new();
        let mut basis: Vec<Vec<f64>> = Vec::new(); // orthonormal tracking
        let push_if_new = |chain: &mut Vec<LieVector>, basis: &mut Vec<Vec<f64>>, v: &[f64]| {
            let mut w = v.to_vec();
            for b in basis.iter() {
                let dot: f64 = w.iter().zip(b).map(|(x, y)| x * y).sum();
                for (x, y) in w.iter_mut().zip(b) {
                    *x -= dot * y;
                }
            }
            let norm: f64 = w.iter().map(|x| x * x).sum::<f64>().sqrt();
            let orig: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 1e-9 * orig.max(1.0) {
                for x in w.iter_mut() {
                    *x /= norm;
                }
                basis.push(w);
                chain.push(LieVector::new(v.to_vec()));
            }
        };
        for term in &terms {
            for row in term {
                push_if_new(&mut chain, &mut basis, row);
            }
        }
        for i in 0..n {
            let e: Vec<f64> = (0..n).map(|j| if j == i { 1.0 } else { 0.0 }).collect();
            push_if_new(&mut chain, &mut basis, &e);
        }
        chain
    }

    /// Exponential test: no root with nonzero purely imaginary value, i.e.
    /// every root is `lambda * (1 + i alpha)`. Returns the offending root on
    /// failure.
    pub fn is_exponential(&self, seed: u64) -> Result<(bool, Option<Root>), LieError> {
        let data = self.complexified_roots(seed)?;
        let tol = self.tol();
        for root in &data.roots {
            let re_n = root.real_norm();
            let im_n = root.imag_norm();
            let scale = re_n.max(im_n).max(1.0);
            if im_n <= tol * scale {
                continue; // real root, fine
            }
            if re_n <= tol * scale {
                return Ok((false, Some(root.clone()))); // purely imaginary, nonzero
            }
            // check imag is a scalar multiple of real: residual of the projection
            let dot: f64 = root
                .real_part
                .iter()
                .zip(&root.imag_part)
                .map(|(a, b)| a * b)
                .sum();
            let alpha = dot / (re_n * re_n);
            let resid: f64 = root
                .real_part
                .iter()
                .zip(&root.imag_part)
                .map(|(r, i)| (i - alpha * r).powi(2))
                .sum::<f64>()
                .sqrt();
            if resid > tol * scale.max(im_n) * 10.0 {
                return Ok((false, Some(root.clone())));
            }
        }
        Ok((true, None))
    }

    /// Type R test: every root has vanishing real part.
    pub fn is_type_r(&self, seed: u64) -> Result<bool, LieError> {
        let data = self.complexified_roots(seed)?;
        let tol = self.tol();
        let scale = data
            .roots
            .iter()
            .map(|r| r.real_norm().max(r.imag_norm()))
            .fold(1.0f64, f64::max);
        Ok(data.roots.iter().all(|r| r.real_norm() <= tol * scale * 10.0))
    }

    /// Conjugates the structure constants by an invertible float matrix
    /// (basis change), producing a float-mode algebra.
    pub fn change_basis(&self, t: &DMatrix<f64>) -> Result<LieAlgebra, LieError> {
        let n = self.dim;
        if t.nrows() != n || t.ncols() != n {
            return Err(LieError::DimMismatch { expected: n, got: t.nrows() });
        }
        let tinv = t.clone().try_inverse().ok_or(LieError::DimMismatch { expected: n, got: n })?;
        // new basis f_i = sum_a t[a][i] e_a; [f_i, f_j] expanded back in f
        let mut tensor = vec![0.0; n * n * n];
        for i in 0..n {
            let fi = LieVector::new((0..n).map(|a| t[(a, i)]).collect());
            for j in 0..n {
                let fj = LieVector::new((0..n).map(|a| t[(a, j)]).collect());
                let br = self.bracket(&fi, &fj)?;
                // coefficients in the new basis: tinv * br
                for k in 0..n {
                    let mut s = 0.0;
                    for a in 0..n {
                        s += tinv[(k, a)] * br.coords[a];
                    }
                    tensor[(i * n + j) * n + k] = s;
                }
            }
        }
        LieAlgebra::validate(RawAlgebra {
            basis_names: self.basis_names.clone(),
            tensor,
            exact: None,
            mode: ScalarMode::Float { tol: self.tol().max(1e-8) },
        })
    }
}

/// Common eigenvector of a chain-ordered family of operators, restricted to
/// the span of the orthonormal family `comp`.
///
/// The operators must come from an ideal chain (deepest first); then each
/// joint weight space is invariant under the later operators and the
/// refinement never empties.
fn common_eigenvector_in(ads_chain: &[CMat], comp: &[CVec]) -> Option<CVec> {
    let mut basis: Vec<CVec> = comp.to_vec();
    for a in ads_chain {
        let m = basis.len();
        if m <= 1 {
            break;
        }
        // action of `a` compressed to the current joint weight space
        let mut q = CMat::zeros(m, m);
        for (j, bj) in basis.iter().enumerate() {
            let img = a * bj;
            for (i, bi) in basis.iter().enumerate() {
                q[(i, j)] = bi.dotc(&img);
            }
        }
        let scale = q.iter().fold(0.0f64, |acc, z| acc.max(z.norm())).max(1.0);
        // cluster nearby eigenvalue candidates and use each cluster mean: a
        // defective (Jordan-type) eigenvalue splits into a symmetric ring of
        // computed values, and averaging cancels the first-order error
        let raw = linalg::complex_eigenvalue_candidates(&q);
        let mut candidates: Vec<Complex64> = Vec::new();
        let mut cluster: Vec<Complex64> = Vec::new();
        for v in raw {
            if let Some(&last) = cluster.last() {
                if (v - last).norm() > 1e-5 * scale {
                    let mean = cluster.iter().sum::<Complex64>() / cluster.len() as f64;
                    candidates.push(mean);
                    cluster.clear();
                }
            }
            cluster.push(v);
        }
        if !cluster.is_empty() {
            candidates.push(cluster.iter().sum::<Complex64>() / cluster.len() as f64);
        }
        let mut refined: Option<Vec<CVec>> = None;
        for lambda in candidates {
            let shifted = &q - CMat::identity(m, m) * lambda;
            let mut null = linalg::complex_nullspace(&shifted, 1e-8);
            if null.is_empty() {
                // near-defective case: the residual gate downstream still
                // protects against a spurious kernel vector
                null = linalg::complex_nullspace(&shifted, 1e-6);
            }
            if !null.is_empty() {
                let lifted: Vec<CVec> = null
                    .iter()
                    .map(|w| {
                        let mut v = CVec::zeros(basis[0].len());
                        for (j, bj) in basis.iter().enumerate() {
                            v += bj * w[j];
                        }
                        v
                    })
                    .collect();
                let mut ortho: Vec<CVec> = Vec::new();
                for v in lifted {
                    if let Some(u) = linalg::orthonormalize_against(&ortho, &v, 1e-10) {
                        ortho.push(u);
                    }
                }
                if !ortho.is_empty() {
                    refined = Some(ortho);
                    break;
                }
            }
        }
        basis = refined?;
    }
    basis.into_iter().next()
}

/// Seeded random element with rational coordinates, numerators and
/// denominators bounded by 16.
pub fn random_rational_vector<R: Rng>(dim: usize, rng: &mut R) -> LieVector {
    let coords = (0..dim)
        .map(|_| {
            let num = rng.gen_range(-16i64..=16);
            let den = rng.gen_range(1i64..=16);
            num as f64 / den as f64
        })
        .collect();
    LieVector::new(coords)
}

/// Bundled test algebras used throughout the crate.
pub mod samples {
    use super::*;

    pub fn abelian(n: usize) -> LieAlgebra {
        let names = (0..n).map(|i| format!("X{}", i + 1)).collect();
        LieAlgebra::from_exact_brackets(names, &[]).unwrap()
    }

    /// [X1, X2] = X3.
    pub fn heisenberg() -> LieAlgebra {
        LieAlgebra::from_exact_brackets(
            vec!["X1".into(), "X2".into(), "X3".into()],
            &[(0, 1, vec![(2, linalg::rat_int(1))])],
        )
        .unwrap()
    }

    /// [A, X] = X.
    pub fn ax_b() -> LieAlgebra {
        LieAlgebra::from_exact_brackets(
            vec!["A".into(), "X".into()],
            &[(0, 1, vec![(1, linalg::rat_int(1))])],
        )
        .unwrap()
    }

    /// [A, Y1] = Y1 + beta Y2, [A, Y2] = -beta Y1 + Y2.
    pub fn grelaud(beta: f64) -> LieAlgebra {
        let b = linalg::rat_from_f64(beta).expect("finite beta");
        LieAlgebra::from_exact_brackets(
            vec!["A".into(), "Y1".into(), "Y2".into()],
            &[
                (0, 1, vec![(1, linalg::rat_int(1)), (2, b.clone())]),
                (0, 2, vec![(1, -b), (2, linalg::rat_int(1))]),
            ],
        )
        .unwrap()
    }

    /// [H, E] = 2E, [H, F] = -2F, [E, F] = H.
    pub fn sl2() -> LieAlgebra {
        LieAlgebra::from_exact_brackets(
            vec!["H".into(), "E".into(), "F".into()],
            &[
                (0, 1, vec![(1, linalg::rat_int(2))]),
                (0, 2, vec![(2, linalg::rat_int(-2))]),
                (1, 2, vec![(0, linalg::rat_int(1))]),
            ],
        )
        .unwrap()
    }

    /// [A, Y1] = Y2, [A, Y2] = -Y1 (roots +-i on A; type R, not exponential).
    pub fn rotation() -> LieAlgebra {
        LieAlgebra::from_exact_brackets(
            vec!["A".into(), "Y1".into(), "Y2".into()],
            &[
                (0, 1, vec![(2, linalg::rat_int(1))]),
                (0, 2, vec![(1, linalg::rat_int(-1))]),
            ],
        )
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn abelian_is_valid() {
        let g = samples::abelian(3);
        assert_eq!(g.dim(), 3);
        assert!(g.is_abelian());
    }

    #[test]
    fn heisenberg_bracket() {
        let g = samples::heisenberg();
        let x1 = LieVector::basis(3, 0);
        let x2 = LieVector::basis(3, 1);
        let b = g.bracket(&x1, &x2).unwrap();
        assert_eq!(b.coords, vec![0.0, 0.0, 1.0]);
        let bb = g.bracket(&x1, &x1).unwrap();
        assert_eq!(bb.coords, vec![0.0, 0.0, 0.0]);
    }

    #[test]
    fn antisymmetry_violation_detected() {
        let n = 3;
        let mut tensor = vec![0.0; n * n * n];
        tensor[(0 * n + 1) * n + 2] = 1.0;
        tensor[(1 * n + 0) * n + 2] = 1.0; // wrong sign
        let mut exact = vec![Rat::zero(); n * n * n];
        exact[(0 * n + 1) * n + 2] = linalg::rat_int(1);
        exact[(1 * n + 0) * n + 2] = linalg::rat_int(1);
        let raw = RawAlgebra {
            basis_names: vec!["a".into(), "b".into(), "c".into()],
            tensor,
            exact: Some(exact),
            mode: ScalarMode::Exact,
        };
        assert!(matches!(
            LieAlgebra::validate(raw),
            Err(LieError::AntisymmetryViolation { .. })
        ));
    }

    #[test]
    fn jacobi_violation_detected() {
        // [a,b]=c, [b,c]=a, [a,c]=a violates Jacobi
        let r = LieAlgebra::from_exact_brackets(
            vec!["a".into(), "b".into(), "c".into()],
            &[
                (0, 1, vec![(2, linalg::rat_int(1))]),
                (1, 2, vec![(0, linalg::rat_int(1))]),
                (0, 2, vec![(0, linalg::rat_int(1))]),
            ],
        );
        assert!(matches!(r, Err(LieError::JacobiViolation { .. })));
    }

    #[test]
    fn ax_b_ad_eigenvalues() {
        let g = samples::ax_b();
        let ad_a = g.ad_matrix(&LieVector::basis(2, 0)).unwrap();
        let mut eigs: Vec<f64> = linalg::real_eigenvalue_candidates(&ad_a)
            .iter()
            .map(|z| z.re)
            .collect();
        eigs.sort_by(f64::total_cmp);
        assert_abs_diff_eq!(eigs[0], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(eigs[1], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn series_dims() {
        let h = samples::heisenberg();
        assert_eq!(h.lower_central_series().dims, vec![3, 1, 0]);
        let axb = samples::ax_b();
        assert_eq!(axb.derived_series().dims, vec![2, 1, 0]);
        let lc = axb.lower_central_series().dims;
        assert_eq!(lc[0], 2);
        assert_eq!(*lc.last().unwrap(), 1); // stabilizes at span{X}
        let ab = samples::abelian(4);
        assert_eq!(ab.lower_central_series().dims, vec![4, 0]);
        assert_eq!(ab.derived_series().dims, vec![4, 0]);
    }

    #[test]
    fn nilpotent_solvable_predicates() {
        assert!(samples::heisenberg().is_nilpotent());
        assert!(samples::heisenberg().is_solvable());
        let axb = samples::ax_b();
        assert!(!axb.is_nilpotent());
        assert!(axb.is_solvable());
        let sl2 = samples::sl2();
        assert!(!sl2.is_nilpotent());
        assert!(!sl2.is_solvable());
    }

    #[test]
    fn engel_agrees_with_series() {
        for g in [
            samples::heisenberg(),
            samples::ax_b(),
            samples::abelian(2),
            samples::grelaud(1.0),
            samples::sl2(),
            samples::rotation(),
        ] {
            assert_eq!(g.engel_spot_check(8, 7), g.is_nilpotent(), "{:?}", g.basis_names());
        }
    }

    #[test]
    fn heisenberg_roots_all_zero() {
        let g = samples::heisenberg();
        let data = g.complexified_roots(1).unwrap();
        assert_eq!(data.roots.len(), 3);
        for r in &data.roots {
            assert!(r.real_norm() < 1e-8 && r.imag_norm() < 1e-8);
        }
    }

    #[test]
    fn ax_b_roots() {
        let g = samples::ax_b();
        let data = g.complexified_roots(1).unwrap();
        let a = LieVector::basis(2, 0);
        let mut at_a: Vec<f64> = data.roots.iter().map(|r| r.eval(&a).re).collect();
        at_a.sort_by(f64::total_cmp);
        assert_abs_diff_eq!(at_a[0], 0.0, epsilon = 1e-8);
        assert_abs_diff_eq!(at_a[1], 1.0, epsilon = 1e-8);
    }

    #[test]
    fn grelaud_roots() {
        let g = samples::grelaud(1.0);
        let data = g.complexified_roots(1).unwrap();
        let a = LieVector::basis(3, 0);
        let vals: Vec<Complex64> = data.roots.iter().map(|r| r.eval(&a)).collect();
        let has = |target: Complex64| vals.iter().any(|v| (v - target).norm() < 1e-8);
        assert!(has(Complex64::new(0.0, 0.0)));
        assert!(has(Complex64::new(1.0, 1.0)));
        assert!(has(Complex64::new(1.0, -1.0)));
    }

    #[test]
    fn exponential_and_type_r() {
        assert!(samples::ax_b().is_exponential(3).unwrap().0);
        assert!(samples::grelaud(2.0).is_exponential(3).unwrap().0);
        let (exp, offending) = samples::rotation().is_exponential(3).unwrap();
        assert!(!exp);
        let r = offending.unwrap();
        let a = LieVector::basis(3, 0);
        assert_abs_diff_eq!(r.eval(&a).im.abs(), 1.0, epsilon = 1e-8);

        assert!(samples::heisenberg().is_type_r(3).unwrap());
        assert!(samples::rotation().is_type_r(3).unwrap());
        assert!(!samples::ax_b().is_type_r(3).unwrap());
    }

    #[test]
    fn non_solvable_rejected() {
        assert!(matches!(
            samples::sl2().complexified_roots(0),
            Err(LieError::NotSolvable)
        ));
    }

    #[test]
    fn dim_one_conventions() {
        let g = samples::abelian(1);
        assert!(g.is_nilpotent());
        assert!(g.is_solvable());
        assert!(g.is_exponential(0).unwrap().0);
        assert!(g.is_type_r(0).unwrap());
    }
}
