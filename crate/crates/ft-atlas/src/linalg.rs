//! Shared linear algebra: exact rational row reduction and small complex
//! eigenproblem helpers used by the structure-theory modules.
//!
//! Rank and span computations that feed nilpotency/solvability decisions run
//! over `BigRational` so that no tolerance can flip a series dimension.
//! Eigenproblems (roots, subalgebra search) run over `Complex<f64>`.

use nalgebra::{DMatrix, DVector};
use num::rational::BigRational;
use num::traits::{Signed, Zero};
use num_complex::Complex64;

pub type Rat = BigRational;
pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Rational from an `f64`, exact for dyadic inputs.
pub fn rat_from_f64(x: f64) -> Option<Rat> {
    Rat::from_float(x)
}

/// In-place reduced row echelon form over the rationals. Returns pivot columns.
pub fn rref(rows: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let nrows = rows.len();
    if nrows == 0 {
        return vec![];
    }
    let ncols = rows[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r >= nrows {
            break;
        }
        // find a nonzero pivot in column c at or below row r
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].clone();
        for v in rows[r].iter_mut() {
            *v = &*v / &inv;
        }
        for i in 0..nrows {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    let sub = &rows[r][j] * &f;
                    rows[i][j] = &rows[i][j] - &sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.retain(|row| row.iter().any(|v| !v.is_zero()));
    pivots
}

pub fn rat_rank(rows: &[Vec<Rat>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m);
    m.len()
}

/// Reduced spanning set of the row space.
pub fn rat_rowspace(rows: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let mut m = rows.to_vec();
    rref(&mut m);
    m
}

/// Incremental row-space builder over the rationals. Rows are inserted one
/// at a time and kept in echelon form (sorted by pivot column), which makes
/// rank queries free and lets callers stop feeding rows once a known rank
/// bound is reached.
#[derive(Default)]
pub struct RatRowReducer {
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl RatRowReducer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current rows and inserts it if independent.
    /// Returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<Rat>) -> bool {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    let sub = y * &f;
                    *x = &*x - &sub;
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].clone();
        for x in v.iter_mut() {
            *x = &*x / &inv;
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, v);
        self.pivots.insert(at, p);
        true
    }

    pub fn into_rows(self) -> Vec<Vec<Rat>> {
        self.rows
    }
}

/// Whether `v` lies in the row space of `basis` (assumed in rref).
pub fn rat_in_span(basis: &[Vec<Rat>], v: &[Rat]) -> bool {
    let mut m: Vec<Vec<Rat>> = basis.to_vec();
    m.push(v.to_vec());
    rat_rank(&m) == basis.len()
}

/// Solve `A x = b` exactly, where `a` is given by rows (m x k), `b` length m.
/// Returns any solution if consistent.
pub fn rat_solve(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let m = a.len();
    if m == 0 {
        return Some(vec![]);
    }
    let k = a[0].len();
    let mut aug: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    // inconsistent if a pivot lands in the augmented column
    if pivots.contains(&k) {
        return None;
    }
    let mut x = vec![Rat::zero(); k];
    for (row, &c) in aug.iter().zip(&pivots) {
        x[c] = row[k].clone();
    }
    Some(x)
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    let n = r.numer();
    let d = r.denom();
    // exact for the sizes produced here; fall back to string parse for huge values
    let nf = n.to_string().parse::<f64>().unwrap_or(f64::NAN);
    let df = d.to_string().parse::<f64>().unwrap_or(f64::NAN);
    nf / df
}

pub fn rat_abs(r: &Rat) -> Rat {
    r.abs()
}

/// Floating-point rank with relative pivot tolerance, via Gaussian elimination
/// with partial pivoting.
pub fn f64_rank(rows: &[Vec<f64>], tol: f64) -> usize {
    let mut m: Vec<Vec<f64>> = rows.to_vec();
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let scale = m
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |a, &b| a.max(b.abs()))
        .max(1.0);
    let thresh = tol * scale;
    let mut rank = 0;
    for c in 0..ncols {
        if rank >= nrows {
            break;
        }
        let (p, pv) = (rank..nrows)
            .map(|i| (i, m[i][c].abs()))
            .fold((rank, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if pv <= thresh {
            continue;
        }
        m.swap(rank, p);
        let inv = m[rank][c];
        for j in 0..ncols {
            m[rank][j] /= inv;
        }
        for i in 0..nrows {
            if i != rank && m[i][c] != 0.0 {
                let f = m[i][c];
                for j in 0..ncols {
                    m[i][j] -= f * m[rank][j];
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Reduced (approximate) spanning set of the row space, float backend.
pub fn f64_rowspace(rows: &[Vec<f64>], tol: f64) -> Vec<Vec<f64>> {
    // orthonormalize by modified Gram-Schmidt, dropping near-dependent rows
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for row in rows {
        let mut v = row.clone();
        let orig: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if orig == 0.0 {
            continue;
        }
        for b in &basis {
            let dot: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
            for (x, y) in v.iter_mut().zip(b) {
                *x -= dot * y;
            }
        }
        let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > tol * orig.max(1.0) {
            for x in v.iter_mut() {
                *x /= norm;
            }
            basis.push(v);
        }
    }
    basis
}

/// Reduce a complex matrix to upper Hessenberg form in place (Householder).
fn hessenberg_in_place(h: &mut CMat) {
    let n = h.nrows();
    if n < 3 {
        return;
    }
    for k in 0..(n - 2) {
        // eliminate column k below the subdiagonal
        let mut x: Vec<Complex64> = ((k + 1)..n).map(|i| h[(i, k)]).collect();
        let xnorm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let alpha = if x[0].norm() > 0.0 {
            -(x[0] / x[0].norm()) * xnorm
        } else {
            Complex64::new(-xnorm, 0.0)
        };
        x[0] -= alpha;
        let vnorm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm < 1e-300 {
            continue;
        }
        for z in x.iter_mut() {
            *z /= vnorm;
        }
        // H := (I - 2 v v*) H
        for j in 0..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for (i, vi) in x.iter().enumerate() {
                dot += vi.conj() * h[(k + 1 + i, j)];
            }
            let dot = dot * 2.0;
            for (i, vi) in x.iter().enumerate() {
                let s = vi * dot;
                h[(k + 1 + i, j)] -= s;
            }
        }
        // H := H (I - 2 v v*)
        for i in 0..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for (j, vj) in x.iter().enumerate() {
                dot += h[(i, k + 1 + j)] * vj;
            }
            let dot = dot * 2.0;
            for (j, vj) in x.iter().enumerate() {
                let s = dot * vj.conj();
                h[(i, k + 1 + j)] -= s;
            }
        }
    }
}

/// Eigenvalues of a complex square matrix by Hessenberg reduction followed by
/// explicitly shifted QR with Wilkinson shifts. Iteration-capped: on
/// non-convergence the remaining diagonal entries are returned as candidates
/// (callers validate candidates against residuals).
pub fn qr_eigenvalues(m: &CMat) -> Vec<Complex64> {
    let n = m.nrows();
    if n == 0 {
        return vec![];
    }
    if n == 1 {
        return vec![m[(0, 0)]];
    }
    let mut h = m.clone();
    hessenberg_in_place(&mut h);
    let mut vals = Vec::with_capacity(n);
    let mut hi = n - 1;
    let eps = 1e-14;
    let mut iters_since_deflation = 0usize;
    let mut total_iters = 0usize;
    let max_total = 200 * n;
    loop {
        // deflate trailing 1x1 blocks
        while hi > 0 {
            let off = h[(hi, hi - 1)].norm();
            let diag = h[(hi - 1, hi - 1)].norm() + h[(hi, hi)].norm();
            if off <= eps * diag.max(1e-300) {
                vals.push(h[(hi, hi)]);
                hi -= 1;
                iters_since_deflation = 0;
            } else {
                break;
            }
        }
        if hi == 0 {
            vals.push(h[(0, 0)]);
            break;
        }
        if total_iters >= max_total {
            // give up: emit remaining diagonal as candidates
            for i in 0..=hi {
                vals.push(h[(i, i)]);
            }
            break;
        }
        // active block lo..=hi
        let mut lo = hi;
        while lo > 0 {
            let off = h[(lo, lo - 1)].norm();
            let diag = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            if off <= eps * diag.max(1e-300) {
                break;
            }
            lo -= 1;
        }
        // Wilkinson shift from the trailing 2x2 of the block
        let a = h[(hi - 1, hi - 1)];
        let b = h[(hi - 1, hi)];
        let c = h[(hi, hi - 1)];
        let d = h[(hi, hi)];
        let tr = a + d;
        let det = a * d - b * c;
        let disc = (tr * tr - det * 4.0).sqrt();
        let l1 = (tr + disc) * 0.5;
        let l2 = (tr - disc) * 0.5;
        let mut sigma = if (l1 - d).norm() < (l2 - d).norm() { l1 } else { l2 };
        if iters_since_deflation > 0 && iters_since_deflation % 12 == 0 {
            // exceptional shift to break symmetry-induced stalls
            sigma += Complex64::new(
                0.751 * h[(hi, hi - 1)].norm(),
                0.3571 * h[(hi, hi - 1)].norm(),
            );
        }
        // explicit shifted QR step on the active block
        for i in lo..=hi {
            h[(i, i)] -= sigma;
        }
        let mut rots: Vec<(f64, Complex64)> = Vec::with_capacity(hi - lo);
        for k in lo..hi {
            let a = h[(k, k)];
            let b = h[(k + 1, k)];
            let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
            let (cg, sg) = if r < 1e-300 {
                (1.0, Complex64::new(0.0, 0.0))
            } else {
                let alpha = if a.norm() > 0.0 { a / a.norm() } else { Complex64::new(1.0, 0.0) };
                (a.norm() / r, alpha * b.conj() / r)
            };
            // rows k, k+1
            for j in k..=hi {
                let x = h[(k, j)];
                let y = h[(k + 1, j)];
                h[(k, j)] = x * cg + y * sg;
                h[(k + 1, j)] = -x * sg.conj() + y * cg;
            }
            rots.push((cg, sg));
        }
        for (k, (cg, sg)) in rots.iter().enumerate() {
            let k = lo + k;
            // columns k, k+1
            let top = (k + 2).min(hi + 1);
            for i in lo..top {
                let x = h[(i, k)];
                let y = h[(i, k + 1)];
                h[(i, k)] = x * *cg + y * sg.conj();
                h[(i, k + 1)] = -x * *sg + y * *cg;
            }
        }
        for i in lo..=hi {
            h[(i, i)] += sigma;
        }
        iters_since_deflation += 1;
        total_iters += 1;
    }
    vals
}

/// All eigenvalue candidates of a complex square matrix, sorted by
/// (re, im). The list may contain inaccurate entries when the QR iteration
/// stalls; callers validate each candidate against a residual.
pub fn complex_eigenvalue_candidates(m: &CMat) -> Vec<Complex64> {
    let mut vals = qr_eigenvalues(m);
    vals.sort_by(|a, b| {
        (a.re, a.im)
            .partial_cmp(&(b.re, b.im))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    vals
}

/// Eigenvalue candidates of a real matrix.
pub fn real_eigenvalue_candidates(m: &DMatrix<f64>) -> Vec<Complex64> {
    complex_eigenvalue_candidates(&real_to_complex(m))
}

/// Approximate null vector of a complex matrix, by full-pivot elimination with
/// the weakest pivot column left free. Returns a unit vector; callers must
/// check the residual themselves.
pub fn complex_nullvector(m: &CMat) -> Option<CVec> {
    let n = m.ncols();
    let rows = m.nrows();
    if n == 0 {
        return None;
    }
    let mut a = m.clone();
    let mut col_perm: Vec<usize> = (0..n).collect();
    let mut rank = 0;
    let limit = rows.min(n);
    let scale = a.iter().fold(0.0f64, |acc, z| acc.max(z.norm())).max(1.0);
    let thresh = 1e-13 * scale;
    // full pivoting; if the matrix turns out to have full rank, the weakest
    // (last) pivot column is released as the free variable
    while rank < limit {
        let mut best = (rank, rank, 0.0f64);
        for i in rank..rows {
            for j in rank..n {
                let v = a[(i, j)].norm();
                if v > best.2 {
                    best = (i, j, v);
                }
            }
        }
        if best.2 <= thresh {
            break;
        }
        a.swap_rows(rank, best.0);
        a.swap_columns(rank, best.1);
        col_perm.swap(rank, best.1);
        let piv = a[(rank, rank)];
        for i in (rank + 1)..rows {
            let f = a[(i, rank)] / piv;
            for j in rank..n {
                let s = a[(rank, j)] * f;
                a[(i, j)] -= s;
            }
        }
        rank += 1;
        if rank == n {
            // no free column detected: release the weakest pivot
            rank = n - 1;
            break;
        }
    }
    // free variable: column `rank` (in permuted order) set to 1, back-substitute
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    x[rank] = Complex64::new(1.0, 0.0);
    for i in (0..rank).rev() {
        let mut s = a[(i, rank)];
        for j in (i + 1)..rank {
            s += a[(i, j)] * x[j];
        }
        let piv = a[(i, i)];
        x[i] = if piv.norm() > 0.0 { -s / piv } else { Complex64::new(0.0, 0.0) };
    }
    let mut out = CVec::zeros(n);
    for (permuted, &orig) in col_perm.iter().enumerate() {
        out[orig] = x[permuted];
    }
    let norm = out.norm();
    if norm == 0.0 {
        return None;
    }
    Some(out / Complex64::new(norm, 0.0))
}

/// Orthonormal basis of the (approximate) null space of a complex matrix,
/// with relative rank tolerance.
pub fn complex_nullspace(m: &CMat, rel_tol: f64) -> Vec<CVec> {
    let n = m.ncols();
    let rows = m.nrows();
    if n == 0 {
        return vec![];
    }
    let mut a = m.clone();
    let mut col_perm: Vec<usize> = (0..n).collect();
    let scale = a.iter().fold(0.0f64, |acc, z| acc.max(z.norm())).max(1.0);
    let thresh = rel_tol * scale;
    let mut rank = 0;
    let limit = rows.min(n);
    while rank < limit {
        let mut best = (rank, rank, 0.0f64);
        for i in rank..rows {
            for j in rank..n {
                let v = a[(i, j)].norm();
                if v > best.2 {
                    best = (i, j, v);
                }
            }
        }
        if best.2 <= thresh {
            break;
        }
        a.swap_rows(rank, best.0);
        a.swap_columns(rank, best.1);
        col_perm.swap(rank, best.1);
        let piv = a[(rank, rank)];
        for i in (rank + 1)..rows {
            let f = a[(i, rank)] / piv;
            for j in rank..n {
                let s = a[(rank, j)] * f;
                a[(i, j)] -= s;
            }
        }
        rank += 1;
    }
    let mut basis = Vec::new();
    for free in rank..n {
        let mut x = vec![Complex64::new(0.0, 0.0); n];
        x[free] = Complex64::new(1.0, 0.0);
        for i in (0..rank).rev() {
            let mut s = a[(i, free)];
            for j in (i + 1)..rank {
                s += a[(i, j)] * x[j];
            }
            x[i] = -s / a[(i, i)];
        }
        let mut v = CVec::zeros(n);
        for (permuted, &orig) in col_perm.iter().enumerate() {
            v[orig] = x[permuted];
        }
        if let Some(u) = orthonormalize_against(&basis, &v, 1e-12) {
            basis.push(u);
        }
    }
    basis
}

/// Eigenpair candidates (value, unit vector) of a complex matrix, residual-checked.
pub fn complex_eigenpairs(m: &CMat, tol: f64) -> Vec<(Complex64, CVec)> {
    let n = m.nrows();
    let scale = m.iter().fold(0.0f64, |acc, z| acc.max(z.norm())).max(1.0);
    let mut out: Vec<(Complex64, CVec)> = Vec::new();
    for lambda in complex_eigenvalue_candidates(m) {
        let shifted = m - CMat::identity(n, n) * lambda;
        if let Some(v) = complex_nullvector(&shifted) {
            let resid = (m * &v - &v * lambda).norm();
            if resid <= tol * scale {
                out.push((lambda, v));
            }
        }
    }
    out
}

pub fn real_to_complex(m: &DMatrix<f64>) -> CMat {
    m.map(|x| Complex64::new(x, 0.0))
}

/// Orthonormal basis of the orthogonal complement of the span of `cols`
/// (columns assumed orthonormal), inside C^n.
pub fn orthonormal_complement(n: usize, cols: &[CVec]) -> Vec<CVec> {
    let mut comp: Vec<CVec> = Vec::new();
    for i in 0..n {
        let mut v = CVec::zeros(n);
        v[i] = Complex64::new(1.0, 0.0);
        for b in cols.iter().chain(comp.iter()) {
            let dot = b.dotc(&v);
            v -= b * dot;
        }
        let norm = v.norm();
        if norm > 1e-8 {
            comp.push(v / Complex64::new(norm, 0.0));
        }
        if comp.len() == n - cols.len() {
            break;
        }
    }
    comp
}

/// Gram-Schmidt a new vector against an orthonormal family; returns the unit
/// residual if independent.
pub fn orthonormalize_against(basis: &[CVec], v: &CVec, tol: f64) -> Option<CVec> {
    let mut w = v.clone();
    for b in basis {
        let dot = b.dotc(&w);
        w -= b * dot;
    }
    let norm = w.norm();
    if norm > tol * v.norm().max(1.0) {
        Some(w / Complex64::new(norm, 0.0))
    } else {
        None
    }
}

/// Eigendecomposition of a Hermitian matrix; eigenvalues ascending with
/// matching orthonormal eigenvectors as columns.
///
/// `symmetric_eigen` alone can stall well above machine precision on complex
/// Hermitian input, so its output is used as a starting basis and polished
/// with cyclic Jacobi rotations until the off-diagonal mass is negligible.
pub fn hermitian_eigen(m: &CMat) -> (Vec<f64>, CMat) {
    let n = m.nrows();
    // symmetrize to guard against rounding in the caller's assembly
    let h = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let se = h.clone().symmetric_eigen();
    let mut v = se.eigenvectors;
    let mut a = v.adjoint() * &h * &v;
    let scale = a.iter().fold(0.0f64, |acc, z| acc.max(z.norm())).max(1.0);
    let stop = 1e-15 * scale;
    for _ in 0..30 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a[(p, q)].norm());
            }
        }
        if off <= stop {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq.norm() <= stop {
                    continue;
                }
                // factor out the phase of a_pq, then a real Jacobi rotation:
                // U = [[c, -s*phase], [s*conj(phase), c]] zeroes a_pq when
                // c s (aqq - app) + |a_pq| (c^2 - s^2) = 0
                let phase = apq / Complex64::new(apq.norm(), 0.0);
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (2.0 * apq.norm());
                let t = -tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let cc = Complex64::new(c, 0.0);
                let sp = phase * s;
                // A <- A U and V <- V U (columns), then A <- U^H A (rows)
                for i in 0..n {
                    let aip = a[(i, p)];
                    let aiq = a[(i, q)];
                    a[(i, p)] = aip * cc + aiq * sp.conj();
                    a[(i, q)] = -aip * sp + aiq * cc;
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip * cc + viq * sp.conj();
                    v[(i, q)] = -vip * sp + viq * cc;
                }
                for j in 0..n {
                    let apj = a[(p, j)];
                    let aqj = a[(q, j)];
                    a[(p, j)] = apj * cc + aqj * sp;
                    a[(q, j)] = -apj * sp.conj() + aqj * cc;
                }
            }
        }
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&x, &y| {
        a[(x, x)]
            .re
            .partial_cmp(&a[(y, y)].re)
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let vals: Vec<f64> = idx.iter().map(|&i| a[(i, i)].re).collect();
    let mut vecs = CMat::zeros(n, n);
    for (col, &i) in idx.iter().enumerate() {
        vecs.set_column(col, &v.column(i));
    }
    (vals, vecs)
}

/// Inverse square root of a Hermitian positive definite matrix.
pub fn hermitian_inv_sqrt(m: &CMat, tol: f64) -> Option<CMat> {
    let (vals, vecs) = hermitian_eigen(m);
    let top = vals.iter().cloned().fold(0.0f64, f64::max);
    if vals.iter().any(|&v| v <= tol * top.max(1.0)) {
        return None;
    }
    let n = m.nrows();
    let d = CMat::from_diagonal(&CVec::from_iterator(
        n,
        vals.iter().map(|&v| Complex64::new(1.0 / v.sqrt(), 0.0)),
    ));
    Some(&vecs * d * vecs.adjoint())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn rref_rank_basic() {
        let rows = vec![
            vec![rat_int(1), rat_int(2), rat_int(3)],
            vec![rat_int(2), rat_int(4), rat_int(6)],
            vec![rat_int(0), rat_int(1), rat_int(1)],
        ];
        assert_eq!(rat_rank(&rows), 2);
    }

    #[test]
    fn solve_exact() {
        let a = vec![
            vec![rat_int(2), rat_int(1)],
            vec![rat_int(1), rat_int(3)],
        ];
        let b = vec![rat_int(5), rat_int(10)];
        let x = rat_solve(&a, &b).unwrap();
        assert_eq!(x[0], rat_int(1));
        assert_eq!(x[1], rat_int(3));
    }

    #[test]
    fn solve_inconsistent() {
        let a = vec![vec![rat_int(1), rat_int(1)], vec![rat_int(2), rat_int(2)]];
        let b = vec![rat_int(1), rat_int(3)];
        assert!(rat_solve(&a, &b).is_none());
    }

    #[test]
    fn complex_eigen_rotation() {
        // [[0,-1],[1,0]] has eigenvalues +-i
        let m = CMat::from_row_slice(
            2,
            2,
            &[
                Complex64::new(0.0, 0.0),
                Complex64::new(-1.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 0.0),
            ],
        );
        let pairs = complex_eigenpairs(&m, 1e-9);
        assert!(pairs.iter().any(|(l, _)| (l - Complex64::new(0.0, 1.0)).norm() < 1e-9));
        assert!(pairs.iter().any(|(l, _)| (l - Complex64::new(0.0, -1.0)).norm() < 1e-9));
    }

    #[test]
    fn hermitian_inv_sqrt_roundtrip() {
        let m = CMat::from_row_slice(
            2,
            2,
            &[
                Complex64::new(1.25, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(1.25, 0.0),
            ],
        );
        let s = hermitian_inv_sqrt(&m, 1e-12).unwrap();
        let back = &s * &m * &s;
        for i in 0..2 {
            for j in 0..2 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(back[(i, j)].re, expect, epsilon = 1e-10);
                assert_abs_diff_eq!(back[(i, j)].im, 0.0, epsilon = 1e-10);
            }
        }
    }
}
