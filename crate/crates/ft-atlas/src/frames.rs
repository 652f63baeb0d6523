//! Frames of translates on finite groups: the left regular representation,
//! convolution and the frame operator, frame/Riesz/ONB diagnostics, canonical
//! tight generators, wavelet transforms, universal sampling, and the subgroup
//! restriction decomposition.

use crate::groups::{FiniteGroup, GroupError};
use crate::linalg::{self, CMat, CVec};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum FrameError {
    #[error("empty shift set")]
    EmptyShiftSet,
    #[error("vector length {got} does not match group order {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("shift index {0} out of range")]
    ShiftOutOfRange(usize),
    #[error("the translates of the generator do not form a frame (lower bound {lower:e})")]
    NotAFrame { lower: f64 },
    #[error("matrix is not an orthogonal projection (residual {0:e})")]
    NotAProjection(f64),
    #[error("projection does not commute with the regular representation (residual {0:e})")]
    NotCommuting(f64),
    #[error("the generator is not a frame generator on the subgroup (lower bound {lower:e})")]
    NotAFrameOnH { lower: f64 },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Frame diagnostics of a translate family.
#[derive(Debug, Clone, Serialize)]
pub struct FrameReport {
    pub lower_bound: f64,
    pub upper_bound: f64,
    pub is_frame: bool,
    pub is_parseval: bool,
    pub is_riesz: bool,
    pub is_onb: bool,
    pub spectrum: Vec<f64>,
    /// dimension of the space the family lives in
    pub space_dim: usize,
    /// residual of S f = f * phi^* * phi on a random vector; only computed
    /// when the shift set is the whole group
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convolution_residual: Option<f64>,
}

/// Permutation matrices of the left regular representation:
/// lambda(x) e_z = e_{xz}, i.e. (lambda(x) f)(y) = f(x^{-1} y).
pub fn regular_rep(g: &FiniteGroup) -> Vec<CMat> {
    let n = g.order();
    (0..n)
        .map(|x| {
            let mut m = CMat::zeros(n, n);
            for z in 0..n {
                m[(g.mul(x, z), z)] = Complex64::new(1.0, 0.0);
            }
            m
        })
        .collect()
}

/// (f * phi)(x) = sum_y f(y) phi(y^{-1} x).
pub fn convolve(g: &FiniteGroup, f: &CVec, phi: &CVec) -> Result<CVec, FrameError> {
    let n = g.order();
    check_len(n, f)?;
    check_len(n, phi)?;
    let mut out = CVec::zeros(n);
    for x in 0..n {
        let mut acc = Complex64::default();
        for y in 0..n {
            acc += f[y] * phi[g.mul(g.inv(y), x)];
        }
        out[x] = acc;
    }
    Ok(out)
}

/// phi^*(x) = conj(phi(x^{-1})).
pub fn involute(g: &FiniteGroup, phi: &CVec) -> Result<CVec, FrameError> {
    let n = g.order();
    check_len(n, phi)?;
    Ok(CVec::from_fn(n, |x, _| phi[g.inv(x)].conj()))
}

pub fn delta_e(g: &FiniteGroup) -> CVec {
    let mut v = CVec::zeros(g.order());
    v[g.identity()] = Complex64::new(1.0, 0.0);
    v
}

fn check_len(n: usize, v: &CVec) -> Result<(), FrameError> {
    if v.len() != n {
        return Err(FrameError::LengthMismatch { expected: n, got: v.len() });
    }
    Ok(())
}

/// <u, v> = sum u_i conj(v_i).
pub fn inner(u: &CVec, v: &CVec) -> Complex64 {
    v.dotc(u)
}

/// Frame operator S = sum_{x in Gamma} |lambda(x)phi><lambda(x)phi|.
pub fn frame_operator(g: &FiniteGroup, phi: &CVec, gamma: &[usize]) -> Result<CMat, FrameError> {
    let n = g.order();
    check_len(n, phi)?;
    if gamma.is_empty() {
        return Err(FrameError::EmptyShiftSet);
    }
    let translates = translate_family(g, phi, gamma)?;
    let mut s = CMat::zeros(n, n);
    for v in &translates {
        s += v * v.adjoint();
    }
    Ok(s)
}

fn translate_family(g: &FiniteGroup, phi: &CVec, gamma: &[usize]) -> Result<Vec<CVec>, FrameError> {
    let n = g.order();
    let mut out = Vec::with_capacity(gamma.len());
    for &x in gamma {
        if x >= n {
            return Err(FrameError::ShiftOutOfRange(x));
        }
        out.push(CVec::from_fn(n, |y, _| {
            // (lambda(x) phi)(y) = phi(x^{-1} y)
            phi[g.mul(g.inv(x), y)]
        }));
    }
    Ok(out)
}

/// Frame diagnostics for the translates (lambda(x)phi)_{x in Gamma}.
pub fn frame_report(
    g: &FiniteGroup,
    phi: &CVec,
    gamma: &[usize],
    tol: f64,
) -> Result<FrameReport, FrameError> {
    let n = g.order();
    check_len(n, phi)?;
    if gamma.is_empty() {
        return Err(FrameError::EmptyShiftSet);
    }
    let translates = translate_family(g, phi, gamma)?;
    let mut s = CMat::zeros(n, n);
    for v in &translates {
        s += v * v.adjoint();
    }
    let (spectrum, _) = linalg::hermitian_eigen(&s);
    let lower = spectrum.first().copied().unwrap_or(0.0).max(0.0);
    let upper = spectrum.last().copied().unwrap_or(0.0).max(0.0);

    // Gram matrix of the family decides the Riesz/ONB flags
    let k = translates.len();
    let mut gram = CMat::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            gram[(i, j)] = inner(&translates[j], &translates[i]);
        }
    }
    let (gram_spec, _) = linalg::hermitian_eigen(&gram);
    let gram_min = gram_spec.first().copied().unwrap_or(0.0).max(0.0);
    let gram_max = gram_spec.last().copied().unwrap_or(0.0).max(0.0);

    let is_frame = lower > tol * upper.max(1.0);
    let is_parseval = spectrum.iter().all(|&v| (v - 1.0).abs() <= tol * 100.0);
    let is_riesz = is_frame && gram_min > tol * gram_max.max(1.0);
    let is_onb = is_riesz && gram_spec.iter().all(|&v| (v - 1.0).abs() <= tol * 100.0);

    // with Gamma = G the frame operator is convolution by phi^* * phi
    let convolution_residual = if gamma.len() == n && is_full_set(gamma, n) {
        let mut rng = ChaCha8Rng::seed_from_u64(0x46_54);
        let f = CVec::from_fn(n, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let sf = &s * &f;
        let conv = convolve(g, &convolve(g, &f, &involute(g, phi)?)?, phi)?;
        Some((&sf - &conv).norm() / sf.norm().max(1.0))
    } else {
        None
    };

    Ok(FrameReport {
        lower_bound: lower,
        upper_bound: upper,
        is_frame,
        is_parseval,
        is_riesz,
        is_onb,
        spectrum,
        space_dim: n,
        convolution_residual,
    })
}

fn is_full_set(gamma: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    for &x in gamma {
        seen[x] = true;
    }
    seen.iter().all(|&b| b)
}

/// eta = S^{-1/2} phi, turning the translate system over the whole group
/// into a Parseval frame with eta^* * eta = delta_e and ||eta|| = 1.
pub fn canonical_tight_generator(
    g: &FiniteGroup,
    phi: &CVec,
    tol: f64,
) -> Result<CVec, FrameError> {
    let full: Vec<usize> = (0..g.order()).collect();
    let s = frame_operator(g, phi, &full)?;
    let (spectrum, _) = linalg::hermitian_eigen(&s);
    let lower = spectrum.first().copied().unwrap_or(0.0);
    let inv_sqrt = linalg::hermitian_inv_sqrt(&s, tol)
        .ok_or(FrameError::NotAFrame { lower })?;
    Ok(&inv_sqrt * phi)
}

/// The finite-scale reading of the discrete-group theorem: if the translates
/// over Gamma form a frame, then Gamma must exhaust the group and the family
/// is a Riesz basis.
#[derive(Debug, Clone, Serialize)]
pub struct RieszCheck {
    pub is_frame: bool,
    pub gamma_is_whole_group: bool,
    pub gram_invertible: bool,
    pub dichotomy_holds: bool,
    pub report: FrameReport,
}

pub fn riesz_theorem_check(
    g: &FiniteGroup,
    phi: &CVec,
    gamma: &[usize],
    tol: f64,
) -> Result<RieszCheck, FrameError> {
    let report = frame_report(g, phi, gamma, tol)?;
    let gamma_is_whole_group = gamma.len() == g.order() && is_full_set(gamma, g.order());
    let gram_invertible = report.is_riesz;
    let dichotomy_holds = !report.is_frame || (gamma_is_whole_group && gram_invertible);
    Ok(RieszCheck {
        is_frame: report.is_frame,
        gamma_is_whole_group,
        gram_invertible,
        dichotomy_holds,
        report,
    })
}

/// V_eta u(x) = <u, pi(x) eta>.
pub fn wavelet_transform(rep: &[CMat], eta: &CVec, u: &CVec) -> CVec {
    CVec::from_fn(rep.len(), |x, _| {
        let pix_eta = &rep[x] * eta;
        inner(u, &pix_eta)
    })
}

/// eta is admissible when V_eta is isometric, i.e. V^H V = I on the rep space.
pub fn is_admissible(rep: &[CMat], eta: &CVec, tol: f64) -> bool {
    let d = eta.len();
    let mut vhv = CMat::zeros(d, d);
    for m in rep {
        let v = m * eta;
        vhv += &v * v.adjoint();
    }
    // V^H V = sum_x (pi(x) eta)(pi(x) eta)^H acting as <., pi(x)eta> pairings
    let eye = CMat::identity(d, d);
    (&vhv - &eye).norm() <= tol * 100.0 * (d as f64)
}

/// Transfer a frame through an orthogonal projection commuting with the
/// regular representation: eta = P phi generates a frame of ran P over the
/// same shifts, with bounds trapped between the original ones.
pub fn universal_sampling_transfer(
    g: &FiniteGroup,
    phi: &CVec,
    gamma: &[usize],
    p: &CMat,
    tol: f64,
) -> Result<(CVec, FrameReport), FrameError> {
    let n = g.order();
    check_len(n, phi)?;
    let proj_resid = (&(p * p) - p).norm().max((p - &p.adjoint()).norm());
    if proj_resid > tol * 100.0 * (n as f64) {
        return Err(FrameError::NotAProjection(proj_resid));
    }
    let rep = regular_rep(g);
    let comm_resid = rep
        .iter()
        .map(|m| (&(p * m) - &(m * p)).norm())
        .fold(0.0f64, f64::max);
    if comm_resid > tol * 100.0 * (n as f64) {
        return Err(FrameError::NotCommuting(comm_resid));
    }
    let base = frame_report(g, phi, gamma, tol)?;
    if !base.is_frame {
        return Err(FrameError::NotAFrame { lower: base.lower_bound });
    }
    let eta = p * phi;
    // orthonormal basis of ran P from its spectral decomposition
    let (vals, vecs) = linalg::hermitian_eigen(p);
    let range: Vec<usize> = (0..n).filter(|&i| vals[i] > 0.5).collect();
    let d = range.len();
    let mut q = CMat::zeros(n, d);
    for (k, &i) in range.iter().enumerate() {
        q.set_column(k, &vecs.column(i));
    }
    let translates = translate_family(g, &eta, gamma)?;
    let mut s = CMat::zeros(d, d);
    for v in &translates {
        let w = q.adjoint() * v;
        s += &w * w.adjoint();
    }
    let (spectrum, _) = linalg::hermitian_eigen(&s);
    let lower = spectrum.first().copied().unwrap_or(0.0).max(0.0);
    let upper = spectrum.last().copied().unwrap_or(0.0).max(0.0);
    let report = FrameReport {
        lower_bound: lower,
        upper_bound: upper,
        is_frame: lower > tol * upper.max(1.0),
        is_parseval: spectrum.iter().all(|&v| (v - 1.0).abs() <= tol * 100.0),
        is_riesz: false,
        is_onb: false,
        spectrum,
        space_dim: d,
        convolution_residual: None,
    };
    Ok((eta, report))
}

/// Orthogonal projections onto the isotypic components of the regular
/// representation, obtained as eigenspace clusters of a generic Hermitian
/// central element (a random real combination of conjugacy-class sums).
pub fn isotypic_projections(g: &FiniteGroup, seed: u64) -> Vec<CMat> {
    let n = g.order();
    let rep = regular_rep(g);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut z = CMat::zeros(n, n);
    for class in g.conjugacy_classes() {
        let coeff = Complex64::new(rng.gen_range(-1.0..1.0), 0.0);
        for &x in &class {
            z += &rep[x] * coeff;
        }
    }
    let z = (&z + &z.adjoint()) * Complex64::new(0.5, 0.0);
    let (vals, vecs) = linalg::hermitian_eigen(&z);
    let scale = vals.iter().fold(1.0f64, |a, &b| a.max(b.abs()));
    let gap = 1e-6 * scale;
    let mut projections = Vec::new();
    let mut start = 0;
    for i in 0..n {
        if i + 1 == n || vals[i + 1] - vals[i] > gap {
            let mut p = CMat::zeros(n, n);
            for k in start..=i {
                let col = vecs.column(k);
                p += &col * col.adjoint();
            }
            projections.push(p);
            start = i + 1;
        }
    }
    projections
}

/// The unitary W: l2(G) -> l2(H) (x) l2(C) built from the bijection
/// (h, c) -> hc over right cosets Hc, together with its intertwining
/// residual max_h || W lambda_G(h) W^* - lambda_H(h) (x) I ||.
#[derive(Debug, Clone)]
pub struct RestrictionDecomposition {
    pub w: CMat,
    pub subgroup: FiniteGroup,
    pub subgroup_elements: Vec<usize>,
    pub coset_reps: Vec<usize>,
    pub residual: f64,
}

impl RestrictionDecomposition {
    pub fn multiplicity(&self) -> usize {
        self.coset_reps.len()
    }
}

pub fn restriction_decomposition(
    g: &FiniteGroup,
    h_elems: &[usize],
) -> Result<RestrictionDecomposition, FrameError> {
    let n = g.order();
    let (h, sorted) = g.subgroup_group(h_elems)?;
    let _m = h.order();
    // right cosets Hc, representative = minimal uncovered element index
    let mut covered = vec![false; n];
    let mut coset_reps = Vec::new();
    for c in 0..n {
        if covered[c] {
            continue;
        }
        coset_reps.push(c);
        for &hg in &sorted {
            covered[g.mul(hg, c)] = true;
        }
    }
    let kappa = coset_reps.len();
    let mut w = CMat::zeros(n, n);
    for (hi, &hg) in sorted.iter().enumerate() {
        for (ci, &c) in coset_reps.iter().enumerate() {
            // e_{hc} -> e_h (x) e_c at tensor index hi * kappa + ci
            w[(hi * kappa + ci, g.mul(hg, c))] = Complex64::new(1.0, 0.0);
        }
    }
    let rep_g = regular_rep(g);
    let rep_h = regular_rep(&h);
    let eye = CMat::identity(kappa, kappa);
    let mut residual = 0.0f64;
    for (hi, &hg) in sorted.iter().enumerate() {
        let lhs = &w * &rep_g[hg] * w.adjoint();
        let rhs = rep_h[hi].kronecker(&eye);
        residual = residual.max((&lhs - &rhs).norm());
    }
    Ok(RestrictionDecomposition {
        w,
        subgroup: h,
        subgroup_elements: sorted,
        coset_reps,
        residual,
    })
}

/// Report on transporting a frame of l2(H) into the corresponding
/// lambda_G|_H-invariant subspace of l2(G) via W^*.
#[derive(Debug, Clone, Serialize)]
pub struct TransportReport {
    pub subgroup_order: usize,
    pub subspace_dim: usize,
    pub bounds_on_h: (f64, f64),
    pub bounds_transported: (f64, f64),
    pub note: String,
}

/// Embed phi_H (x) e_{c0} through W^* and report the frame property of its
/// H-translates on the transported copy of l2(H) inside l2(G).
pub fn transport_frame(
    g: &FiniteGroup,
    h_elems: &[usize],
    phi_h: &CVec,
    gamma_local: &[usize],
    tol: f64,
) -> Result<TransportReport, FrameError> {
    let dec = restriction_decomposition(g, h_elems)?;
    let h = &dec.subgroup;
    let m = h.order();
    check_len(m, phi_h)?;
    let on_h = frame_report(h, phi_h, gamma_local, tol)?;
    if !on_h.is_frame {
        return Err(FrameError::NotAFrameOnH { lower: on_h.lower_bound });
    }
    let kappa = dec.multiplicity();
    let n = g.order();
    // psi = W^* (phi_H (x) e_0); the invariant subspace is W^* (l2(H) (x) e_0)
    let mut tensor = CVec::zeros(n);
    for hi in 0..m {
        tensor[hi * kappa] = phi_h[hi];
    }
    let psi = dec.w.adjoint() * tensor;
    let mut q = CMat::zeros(n, m);
    for hi in 0..m {
        let mut basis = CVec::zeros(n);
        basis[hi * kappa] = Complex64::new(1.0, 0.0);
        q.set_column(hi, &(dec.w.adjoint() * basis));
    }
    let rep = regular_rep(g);
    let mut s = CMat::zeros(m, m);
    for &gl in gamma_local {
        let global = dec.subgroup_elements[gl];
        let v = &rep[global] * &psi;
        let w = q.adjoint() * v;
        s += &w * w.adjoint();
    }
    let (spectrum, _) = linalg::hermitian_eigen(&s);
    let lower = spectrum.first().copied().unwrap_or(0.0).max(0.0);
    let upper = spectrum.last().copied().unwrap_or(0.0).max(0.0);
    Ok(TransportReport {
        subgroup_order: m,
        subspace_dim: m,
        bounds_on_h: (on_h.lower_bound, on_h.upper_bound),
        bounds_transported: (lower, upper),
        note: format!(
            "frame transported to a {m}-dimensional invariant subspace of l2(G); \
             full-space transfer requires infinite multiplicity and has no finite analogue"
        ),
    })
}

/// Brute-force DFT oracle on Z/n: frame bounds of the full translate system
/// equal the extreme values of |phi_hat(chi)|^2 over the n characters, with
/// the unnormalized transform phi_hat(k) = sum_j phi(j) e^{-2 pi i jk / n}.
pub fn dft_bounds_oracle(phi: &CVec) -> (f64, f64) {
    let n = phi.len();
    let mut lo = f64::INFINITY;
    let mut hi = 0.0f64;
    for k in 0..n {
        let mut acc = Complex64::default();
        for j in 0..n {
            let angle = -2.0 * std::f64::consts::PI * (j as f64) * (k as f64) / (n as f64);
            acc += phi[j] * Complex64::new(angle.cos(), angle.sin());
        }
        let power = acc.norm_sqr();
        lo = lo.min(power);
        hi = hi.max(power);
    }
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn cvec(values: &[f64]) -> CVec {
        CVec::from_iterator(values.len(), values.iter().map(|&x| Complex64::new(x, 0.0)))
    }

    #[test]
    fn regular_rep_is_homomorphism_s3() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let rep = regular_rep(&g);
        for a in 0..6 {
            for b in 0..6 {
                let prod = &rep[a] * &rep[b];
                assert_eq!(prod, rep[g.mul(a, b)].clone());
            }
        }
        assert_eq!(rep[g.identity()], CMat::identity(6, 6));
    }

    #[test]
    fn convolution_hand_oracle_z2() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let f = cvec(&[1.0, 2.0]);
        let phi = cvec(&[3.0, 4.0]);
        let c = convolve(&g, &f, &phi).unwrap();
        assert_relative_eq!(c[0].re, 11.0, epsilon = 1e-12);
        assert_relative_eq!(c[1].re, 10.0, epsilon = 1e-12);
    }

    #[test]
    fn convolution_identity_and_involution() {
        let g = FiniteGroup::dihedral(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = CVec::from_fn(6, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let conv = convolve(&g, &f, &delta_e(&g)).unwrap();
        assert!((&conv - &f).norm() < 1e-12);
        let twice = involute(&g, &involute(&g, &f).unwrap()).unwrap();
        assert!((&twice - &f).norm() < 1e-12);
    }

    #[test]
    fn matched_filter_identity() {
        // <f, lambda(x)phi> = (f * phi^*)(x)
        let g = FiniteGroup::symmetric(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let rand = |rng: &mut ChaCha8Rng| {
            CVec::from_fn(6, |_, _| {
                Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            })
        };
        let f = rand(&mut rng);
        let phi = rand(&mut rng);
        let conv = convolve(&g, &f, &involute(&g, &phi).unwrap()).unwrap();
        let translates = translate_family(&g, &phi, &(0..6).collect::<Vec<_>>()).unwrap();
        for x in 0..6 {
            let ip = inner(&f, &translates[x]);
            assert!((ip - conv[x]).norm() < 1e-12);
        }
    }

    #[test]
    fn z2_frame_bounds_oracle() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let phi = cvec(&[1.0, 0.5]);
        let full = vec![0, 1];
        let r = frame_report(&g, &phi, &full, DEFAULT_TOL).unwrap();
        assert_relative_eq!(r.lower_bound, 0.25, epsilon = 1e-12);
        assert_relative_eq!(r.upper_bound, 2.25, epsilon = 1e-12);
        assert!(r.is_frame && r.is_riesz && !r.is_parseval && !r.is_onb);
        assert!(r.convolution_residual.unwrap() < 1e-12);
        let (lo, hi) = dft_bounds_oracle(&phi);
        assert_relative_eq!(lo, 0.25, epsilon = 1e-12);
        assert_relative_eq!(hi, 2.25, epsilon = 1e-12);
    }

    #[test]
    fn delta_generator_is_onb() {
        let g = FiniteGroup::dihedral(4).unwrap();
        let full: Vec<usize> = (0..8).collect();
        let r = frame_report(&g, &delta_e(&g), &full, DEFAULT_TOL).unwrap();
        assert!(r.is_onb && r.is_parseval);
        assert_relative_eq!(r.lower_bound, 1.0, epsilon = 1e-12);
        assert_relative_eq!(r.upper_bound, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn proper_shift_subset_is_rank_deficient() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let phi = cvec(&[1.0, 0.5]);
        let r = frame_report(&g, &phi, &[0], DEFAULT_TOL).unwrap();
        assert!(!r.is_frame);
        assert!(r.lower_bound < 1e-12);
    }

    #[test]
    fn fourier_zero_kills_frame() {
        // phi = (1,1) on Z/2: transform vanishes at the sign character
        let g = FiniteGroup::cyclic(2).unwrap();
        let phi = cvec(&[1.0, 1.0]);
        let r = frame_report(&g, &phi, &[0, 1], DEFAULT_TOL).unwrap();
        assert!(!r.is_frame);
        assert_relative_eq!(r.upper_bound, 4.0, epsilon = 1e-12);
        assert!(r.lower_bound.abs() < 1e-12);
    }

    #[test]
    fn canonical_tight_generator_postconditions() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let phi = cvec(&[1.0, 0.5]);
        let eta = canonical_tight_generator(&g, &phi, DEFAULT_TOL).unwrap();
        assert_relative_eq!(eta.norm(), 1.0, epsilon = 1e-10);
        let full = vec![0, 1];
        let r = frame_report(&g, &eta, &full, DEFAULT_TOL).unwrap();
        assert!(r.is_parseval);
        let auto = convolve(&g, &involute(&g, &eta).unwrap(), &eta).unwrap();
        assert!((&auto - &delta_e(&g)).norm() < 1e-10);
    }

    #[test]
    fn tight_generator_fixes_delta() {
        let g = FiniteGroup::cyclic(3).unwrap();
        let phi = &delta_e(&g) * Complex64::new(2.5, 0.0);
        let eta = canonical_tight_generator(&g, &phi, DEFAULT_TOL).unwrap();
        assert!((&eta - &delta_e(&g)).norm() < 1e-10);
    }

    #[test]
    fn riesz_dichotomy() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let phi = cvec(&[1.0, 0.2, 0.1, 0.05]);
        let full: Vec<usize> = (0..4).collect();
        let check = riesz_theorem_check(&g, &phi, &full, DEFAULT_TOL).unwrap();
        assert!(check.is_frame && check.gram_invertible && check.dichotomy_holds);
        let partial = riesz_theorem_check(&g, &phi, &[0, 1, 2], DEFAULT_TOL).unwrap();
        assert!(!partial.is_frame && partial.dichotomy_holds);
    }

    #[test]
    fn wavelet_transform_delta_is_identity() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let rep = regular_rep(&g);
        let eta = delta_e(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let u = CVec::from_fn(6, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let v = wavelet_transform(&rep, &eta, &u);
        assert!((&v - &u).norm() < 1e-12);
        assert!(is_admissible(&rep, &eta, DEFAULT_TOL));
    }

    #[test]
    fn zero_and_flat_vectors_not_admissible() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let rep = regular_rep(&g);
        assert!(!is_admissible(&rep, &CVec::zeros(2), DEFAULT_TOL));
        let flat = cvec(&[1.0 / 2.0f64.sqrt(), 1.0 / 2.0f64.sqrt()]);
        assert!(!is_admissible(&rep, &flat, DEFAULT_TOL));
    }

    #[test]
    fn isotypic_projections_s3() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let projs = isotypic_projections(&g, 42);
        // trivial (dim 1), sign (dim 1), standard isotype (dim 4)
        let mut dims: Vec<usize> = projs
            .iter()
            .map(|p| p.diagonal().iter().map(|z| z.re).sum::<f64>().round() as usize)
            .collect();
        dims.sort_unstable();
        assert_eq!(dims, vec![1, 1, 4]);
        let rep = regular_rep(&g);
        let mut total = CMat::zeros(6, 6);
        for p in &projs {
            total += p;
            assert!((&(p * p) - p).norm() < 1e-8, "idempotent");
            assert!((p - &p.adjoint()).norm() < 1e-8, "self-adjoint");
            for m in &rep {
                assert!((&(p * m) - &(m * p)).norm() < 1e-8, "commutes with lambda");
            }
        }
        assert!((&total - &CMat::identity(6, 6)).norm() < 1e-8);
    }

    #[test]
    fn universal_sampling_identity_projection() {
        let g = FiniteGroup::cyclic(3).unwrap();
        let phi = cvec(&[1.0, 0.3, -0.2]);
        let full: Vec<usize> = (0..3).collect();
        let base = frame_report(&g, &phi, &full, DEFAULT_TOL).unwrap();
        let p = CMat::identity(3, 3);
        let (eta, r) = universal_sampling_transfer(&g, &phi, &full, &p, DEFAULT_TOL).unwrap();
        assert!((&eta - &phi).norm() < 1e-12);
        assert_relative_eq!(r.lower_bound, base.lower_bound, epsilon = 1e-9);
        assert_relative_eq!(r.upper_bound, base.upper_bound, epsilon = 1e-9);
    }

    #[test]
    fn universal_sampling_constants_isotype_z3() {
        let g = FiniteGroup::cyclic(3).unwrap();
        let full: Vec<usize> = (0..3).collect();
        let third = Complex64::new(1.0 / 3.0, 0.0);
        let p = CMat::from_element(3, 3, third);
        let (_, r) =
            universal_sampling_transfer(&g, &delta_e(&g), &full, &p, DEFAULT_TOL).unwrap();
        assert_eq!(r.space_dim, 1);
        assert_relative_eq!(r.lower_bound, 1.0, epsilon = 1e-10);
        assert_relative_eq!(r.upper_bound, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn restriction_s3_a3() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let a3 = FiniteGroup::alternating_in_symmetric(3).unwrap();
        let dec = restriction_decomposition(&g, &a3).unwrap();
        assert_eq!(dec.multiplicity(), 2);
        assert!(dec.residual < 1e-10);
        // W is unitary
        let wwh = &dec.w * dec.w.adjoint();
        assert!((&wwh - &CMat::identity(6, 6)).norm() < 1e-12);
    }

    #[test]
    fn restriction_full_group_is_permutation() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let all: Vec<usize> = (0..4).collect();
        let dec = restriction_decomposition(&g, &all).unwrap();
        assert_eq!(dec.multiplicity(), 1);
        assert!(dec.residual < 1e-12);
    }

    #[test]
    fn transport_preserves_bounds_z4() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let phi_h = cvec(&[1.0, 0.5]);
        let r = transport_frame(&g, &[0, 2], &phi_h, &[0, 1], DEFAULT_TOL).unwrap();
        assert_eq!(r.subspace_dim, 2);
        assert_relative_eq!(r.bounds_on_h.0, r.bounds_transported.0, epsilon = 1e-9);
        assert_relative_eq!(r.bounds_on_h.1, r.bounds_transported.1, epsilon = 1e-9);
    }

    #[test]
    fn transport_s3_a3_parseval() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let a3 = FiniteGroup::alternating_in_symmetric(3).unwrap();
        let phi_h = cvec(&[1.0, 0.0, 0.0]); // delta_e on A3
        let r = transport_frame(&g, &a3, &phi_h, &[0, 1, 2], DEFAULT_TOL).unwrap();
        assert_eq!(r.subspace_dim, 3);
        assert_relative_eq!(r.bounds_transported.0, 1.0, epsilon = 1e-10);
        assert_relative_eq!(r.bounds_transported.1, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn empty_shift_set_rejected() {
        let g = FiniteGroup::cyclic(2).unwrap();
        assert!(matches!(
            frame_report(&g, &delta_e(&g), &[], DEFAULT_TOL),
            Err(FrameError::EmptyShiftSet)
        ));
    }
}
