//! Explicit matrix Lie algebras: so(p,q) with its corner-generator pairs,
//! sl(2,R), strictly upper triangular algebras, the shearlet dilation
//! algebra, and the bridge from matrix spans to structure constants.
//!
//! All constructors work in exact rational arithmetic; the bracket identities
//! they claim are identities, not approximations.

use crate::lie::{LieAlgebra, LieError};
use crate::linalg::{self, Rat};
use num::traits::Zero;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MatrixGroupError {
    #[error("matrix size {got} does not match form size {expected}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("span is not closed under the commutator")]
    NotClosed,
    #[error("spanning matrices are linearly dependent")]
    DependentSpan,
    #[error("unknown builtin algebra name: {0}")]
    UnknownName(String),
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// The diagonal form J(p,q) = diag(1,..,1,-1,..,-1) with trace p - q.
#[derive(Debug, Clone)]
pub struct IndefiniteForm {
    pub p: usize,
    pub q: usize,
}

impl IndefiniteForm {
    pub fn new(p: usize, q: usize) -> Self {
        Self { p, q }
    }

    pub fn size(&self) -> usize {
        self.p + self.q
    }

    /// Diagonal of J as +-1 entries.
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.size()).map(|i| if i < self.p { 1 } else { -1 }).collect()
    }
}

/// Square matrix with exact rational entries.
#[derive(Debug, Clone, PartialEq)]
pub struct RatMatrix {
    pub n: usize,
    pub entries: Vec<Rat>, // row major
}

impl RatMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, entries: vec![Rat::zero(); n * n] }
    }

    pub fn from_integer_entries(n: usize, nonzero: &[(usize, usize, i64)]) -> Self {
        let mut m = Self::zeros(n);
        for &(i, j, v) in nonzero {
            m.entries[i * n + j] = linalg::rat_int(v);
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.entries[i * self.n + j] = v;
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        let n = self.n;
        let mut out = RatMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        let _n = self.n;
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&other.entries) {
            *a -= b;
        }
        out
    }

    pub fn commutator(&self, other: &RatMatrix) -> RatMatrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rat::is_zero)
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| linalg::rat_to_f64(self.get(i, j))).collect())
            .collect()
    }
}

/// Membership test for so(p,q): both `X^T J + J X = 0` and the block
/// characterization (antisymmetric diagonal blocks, mirrored off-diagonal
/// blocks) must agree.
pub fn so_pq_membership(x: &RatMatrix, form: &IndefiniteForm) -> Result<bool, MatrixGroupError> {
    let n = form.size();
    if x.n != n {
        return Err(MatrixGroupError::SizeMismatch { expected: n, got: x.n });
    }
    let d = form.diagonal();
    // X^T J + J X = 0 entrywise: d[j] x[j][i] + d[i] x[i][j] = 0
    let infinitesimal = (0..n).all(|i| {
        (0..n).all(|j| {
            (x.get(j, i) * linalg::rat_int(d[j]) + x.get(i, j) * linalg::rat_int(d[i])).is_zero()
        })
    });
    // block form [[Z, S], [S^T, Y]] with Z in so(p), Y in so(q)
    let p = form.p;
    let block = (0..n).all(|i| {
        (0..n).all(|j| {
            let same_block = (i < p) == (j < p);
            if same_block {
                (x.get(i, j) + x.get(j, i)).is_zero()
            } else {
                (x.get(i, j) - x.get(j, i)).is_zero()
            }
        })
    });
    debug_assert_eq!(infinitesimal, block);
    Ok(infinitesimal && block)
}

/// The corner pair (A, X) in so(p, 1) with [A, X] = X.
///
/// A has ones at positions (1, p+1) and (p+1, 1); X has entries
/// (1,p) = 1, (p,1) = -1, (p,p+1) = 1, (p+1,p) = 1 (all 1-based).
pub fn so_p1_pair(p: usize) -> Result<(RatMatrix, RatMatrix), MatrixGroupError> {
    if p < 2 {
        return Err(MatrixGroupError::BadParams("so(p,1) pair needs p >= 2".into()));
    }
    let n = p + 1;
    let a = RatMatrix::from_integer_entries(n, &[(0, p, 1), (p, 0, 1)]);
    let x = RatMatrix::from_integer_entries(
        n,
        &[(0, p - 1, 1), (p - 1, 0, -1), (p - 1, p, 1), (p, p - 1, 1)],
    );
    Ok((a, x))
}

/// The corner pair (B, Y) in so(p, q) with [B, Y] = Y, defined by the index
/// sets I = {(1,p+1),(p+1,1)} and J = {(1,p),(p,p+1),(p+1,p)} with the extra
/// entry Y_{p,1} = -1 (1-based).
pub fn so_pq_pair(p: usize, q: usize) -> Result<(RatMatrix, RatMatrix), MatrixGroupError> {
    if p < 2 || q < 1 || p + q <= 2 {
        return Err(MatrixGroupError::BadParams(
            "so(p,q) pair needs p >= 2, q >= 1, p+q > 2".into(),
        ));
    }
    let n = p + q;
    let b = RatMatrix::from_integer_entries(n, &[(0, p, 1), (p, 0, 1)]);
    let y = RatMatrix::from_integer_entries(
        n,
        &[(0, p - 1, 1), (p - 1, p, 1), (p, p - 1, 1), (p - 1, 0, -1)],
    );
    Ok((b, y))
}

/// Structure constants of the span of the given matrices, expanding each
/// commutator back in the spanning set (exact rational arithmetic).
pub fn span_to_lie_algebra(
    elements: &[RatMatrix],
    names: Option<Vec<String>>,
) -> Result<LieAlgebra, MatrixGroupError> {
    let k = elements.len();
    if k == 0 {
        return Err(MatrixGroupError::BadParams("empty span".into()));
    }
    let n = elements[0].n;
    if elements.iter().any(|m| m.n != n) {
        return Err(MatrixGroupError::SizeMismatch { expected: n, got: 0 });
    }
    let flat: Vec<Vec<Rat>> = elements.iter().map(|m| m.entries.clone()).collect();
    if linalg::rat_rank(&flat) < k {
        return Err(MatrixGroupError::DependentSpan);
    }
    // solve [e_i, e_j] = sum_k c_ijk e_k; system columns indexed by the span
    let cols: Vec<Vec<Rat>> = (0..n * n)
        .map(|idx| flat.iter().map(|row| row[idx].clone()).collect())
        .collect();
    let mut brackets: Vec<(usize, usize, Vec<(usize, Rat)>)> = Vec::new();
    for i in 0..k {
        for j in (i + 1)..k {
            let comm = elements[i].commutator(&elements[j]);
            let coeffs = linalg::rat_solve(&cols, &comm.entries).ok_or(MatrixGroupError::NotClosed)?;
            let nz: Vec<(usize, Rat)> =
                coeffs.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
            if !nz.is_empty() {
                brackets.push((i, j, nz));
            }
        }
    }
    let names = names.unwrap_or_else(|| (0..k).map(|i| format!("M{}", i + 1)).collect());
    Ok(LieAlgebra::from_exact_brackets(names, &brackets)?)
}

/// Elementary matrix basis E_{ij} (i < j) of the strictly upper triangular
/// algebra of size n.
pub fn strictly_upper_basis(n: usize) -> Vec<(String, RatMatrix)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            out.push((
                format!("E{}{}", i + 1, j + 1),
                RatMatrix::from_integer_entries(n, &[(i, j, 1)]),
            ));
        }
    }
    out
}

/// Named builtin algebras exposed on the CLI.
pub fn builtin_algebra(name: &str, params: &BuiltinParams) -> Result<LieAlgebra, MatrixGroupError> {
    use crate::lie::samples;
    match name {
        "ax_b" => Ok(samples::ax_b()),
        "heisenberg" => Ok(samples::heisenberg()),
        "sl2" => Ok(samples::sl2()),
        "rotation" => Ok(samples::rotation()),
        "grelaud" => {
            let beta = params
                .beta
                .ok_or_else(|| MatrixGroupError::BadParams("grelaud needs beta".into()))?;
            if beta == 0.0 {
                return Err(MatrixGroupError::BadParams("grelaud needs beta != 0".into()));
            }
            Ok(samples::grelaud(beta))
        }
        "abelian" => {
            let n = params.n.unwrap_or(1);
            Ok(samples::abelian(n))
        }
        "so_pq" => {
            let p = params.p.ok_or_else(|| MatrixGroupError::BadParams("so_pq needs p".into()))?;
            let q = params.q.ok_or_else(|| MatrixGroupError::BadParams("so_pq needs q".into()))?;
            if p + q > 8 {
                return Err(MatrixGroupError::BadParams("so_pq builtin capped at p+q <= 8".into()));
            }
            so_pq_algebra(p, q)
        }
        "T_n" => {
            let n = params.n.ok_or_else(|| MatrixGroupError::BadParams("T_n needs n".into()))?;
            if !(3..=8).contains(&n) {
                return Err(MatrixGroupError::BadParams("T_n needs 3 <= n <= 8".into()));
            }
            let (names, mats): (Vec<String>, Vec<RatMatrix>) =
                strictly_upper_basis(n).into_iter().unzip();
            span_to_lie_algebra(&mats, Some(names))
        }
        "shearlet_H" => {
            // dilation generator D = diag(1, 1/2) and shear generator E12:
            // [D, E12] = (1/2) E12; rescaling to 2D exhibits the ax+b relation
            let mut d = RatMatrix::zeros(2);
            d.set(0, 0, linalg::rat_int(1));
            d.set(1, 1, linalg::rat(1, 2));
            let e12 = RatMatrix::from_integer_entries(2, &[(0, 1, 1)]);
            span_to_lie_algebra(&[d, e12], Some(vec!["D".into(), "E12".into()]))
        }
        other => Err(MatrixGroupError::UnknownName(other.into())),
    }
}

#[derive(Debug, Clone, Default)]
pub struct BuiltinParams {
    pub beta: Option<f64>,
    pub p: Option<usize>,
    pub q: Option<usize>,
    pub n: Option<usize>,
}

/// Full basis of so(p,q): antisymmetric generators within each diagonal
/// block, symmetric-mirrored generators across the blocks.
pub fn so_pq_basis(p: usize, q: usize) -> Result<(Vec<RatMatrix>, Vec<String>), MatrixGroupError> {
    if p + q < 2 {
        return Err(MatrixGroupError::BadParams("so_pq basis needs p+q >= 2".into()));
    }
    let n = p + q;
    let mut basis = Vec::new();
    let mut names = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let same_block = (i < p) == (j < p);
            let m = if same_block {
                RatMatrix::from_integer_entries(n, &[(i, j, 1), (j, i, -1)])
            } else {
                RatMatrix::from_integer_entries(n, &[(i, j, 1), (j, i, 1)])
            };
            basis.push(m);
            names.push(format!("G{}{}", i + 1, j + 1));
        }
    }
    Ok((basis, names))
}

/// so(p,q) with the same basis and ordering as `so_pq_basis`, but with the
/// structure constants read off directly instead of solved for: the basis
/// matrices have disjoint supports on the strict upper triangle with leading
/// entry 1, so the coefficient of `G_ij` in a commutator is its (i,j) entry.
/// This avoids the rational linear solves and scales to the full CLI range.
pub fn so_pq_algebra(p: usize, q: usize) -> Result<LieAlgebra, MatrixGroupError> {
    if p + q < 2 {
        return Err(MatrixGroupError::BadParams("so_pq basis needs p+q >= 2".into()));
    }
    let n = p + q;
    let mut pairs = Vec::new();
    let mut names = Vec::new();
    let mut index = vec![0usize; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            index[i * n + j] = pairs.len();
            pairs.push((i, j));
            names.push(format!("G{}{}", i + 1, j + 1));
        }
    }
    // entries of G_ij: (i,j) -> 1 and (j,i) -> -1 within a block, +1 across
    let entries = |(i, j): (usize, usize)| {
        let s: i64 = if (i < p) == (j < p) { -1 } else { 1 };
        [(i, j, 1i64), (j, i, s)]
    };
    let k = pairs.len();
    let mut brackets: Vec<(usize, usize, Vec<(usize, Rat)>)> = Vec::new();
    let mut comm = std::collections::HashMap::new();
    for a in 0..k {
        for b in (a + 1)..k {
            comm.clear();
            for &(r1, c1, v1) in &entries(pairs[a]) {
                for &(r2, c2, v2) in &entries(pairs[b]) {
                    if c1 == r2 {
                        *comm.entry((r1, c2)).or_insert(0i64) += v1 * v2;
                    }
                    if c2 == r1 {
                        *comm.entry((r2, c1)).or_insert(0i64) -= v1 * v2;
                    }
                }
            }
            let mut nz: Vec<(usize, Rat)> = comm
                .iter()
                .filter(|(&(r, c), &v)| r < c && v != 0)
                .map(|(&(r, c), &v)| (index[r * n + c], linalg::rat_int(v)))
                .collect();
            nz.sort_by_key(|(i, _)| *i);
            if !nz.is_empty() {
                brackets.push((a, b, nz));
            }
        }
    }
    Ok(LieAlgebra::from_exact_brackets(names, &brackets)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn so_21_pair_bracket_exact() {
        let (a, x) = so_p1_pair(2).unwrap();
        assert_eq!(a.commutator(&x), x);
        let form = IndefiniteForm::new(2, 1);
        assert!(so_pq_membership(&a, &form).unwrap());
        assert!(so_pq_membership(&x, &form).unwrap());
    }

    #[test]
    fn so_22_pair_bracket_exact() {
        let (b, y) = so_pq_pair(2, 2).unwrap();
        assert_eq!(b.commutator(&y), y);
        let form = IndefiniteForm::new(2, 2);
        assert!(so_pq_membership(&b, &form).unwrap());
        assert!(so_pq_membership(&y, &form).unwrap());
    }

    #[test]
    fn membership_rejects_symmetric() {
        let form = IndefiniteForm::new(1, 1);
        let m = RatMatrix::from_integer_entries(2, &[(0, 0, 1), (1, 1, 1)]);
        assert!(!so_pq_membership(&m, &form).unwrap());
        assert!(so_pq_membership(&RatMatrix::zeros(2), &form).unwrap());
    }

    #[test]
    fn span_of_corner_pair_is_ax_b() {
        let (a, x) = so_p1_pair(3).unwrap();
        let g = span_to_lie_algebra(&[a, x], Some(vec!["A".into(), "X".into()])).unwrap();
        assert_eq!(g.dim(), 2);
        // [A, X] = X
        let br = g
            .bracket(&crate::lie::LieVector::basis(2, 0), &crate::lie::LieVector::basis(2, 1))
            .unwrap();
        assert_eq!(br.coords, vec![0.0, 1.0]);
        assert!(g.is_solvable(), "ax+b span must be solvable");
        assert!(!g.is_nilpotent());
    }

    #[test]
    fn sl2_from_matrices() {
        let h = RatMatrix::from_integer_entries(2, &[(0, 0, 1), (1, 1, -1)]);
        let e = RatMatrix::from_integer_entries(2, &[(0, 1, 1)]);
        let f = RatMatrix::from_integer_entries(2, &[(1, 0, 1)]);
        let g = span_to_lie_algebra(&[h, e, f], Some(vec!["H".into(), "E".into(), "F".into()]))
            .unwrap();
        assert_eq!(g.structure_constant(0, 1, 1), 2.0); // [H,E] = 2E
        assert_eq!(g.structure_constant(0, 2, 2), -2.0); // [H,F] = -2F
        assert_eq!(g.structure_constant(1, 2, 0), 1.0); // [E,F] = H
    }

    #[test]
    fn strictly_upper_3_is_heisenberg() {
        let (names, mats): (Vec<String>, Vec<RatMatrix>) = strictly_upper_basis(3).into_iter().unzip();
        let g = span_to_lie_algebra(&mats, Some(names)).unwrap();
        assert_eq!(g.dim(), 3);
        assert!(g.is_nilpotent());
        // basis order E12, E13, E23: [E12, E23] = E13
        assert_eq!(g.structure_constant(0, 2, 1), 1.0);
    }

    #[test]
    fn dependent_span_rejected() {
        let e = RatMatrix::from_integer_entries(2, &[(0, 1, 1)]);
        let e2 = RatMatrix::from_integer_entries(2, &[(0, 1, 2)]);
        assert!(matches!(
            span_to_lie_algebra(&[e, e2], None),
            Err(MatrixGroupError::DependentSpan)
        ));
    }

    #[test]
    fn not_closed_rejected() {
        // span{E12, E21} in gl2: commutator is diagonal, escapes the span
        let e = RatMatrix::from_integer_entries(2, &[(0, 1, 1)]);
        let f = RatMatrix::from_integer_entries(2, &[(1, 0, 1)]);
        assert!(matches!(
            span_to_lie_algebra(&[e, f], None),
            Err(MatrixGroupError::NotClosed)
        ));
    }

    #[test]
    fn shearlet_builtin() {
        let g = builtin_algebra("shearlet_H", &BuiltinParams::default()).unwrap();
        assert_eq!(g.dim(), 2);
        // [D, E12] = (1/2) E12
        assert_eq!(g.structure_constant(0, 1, 1), 0.5);
        assert!(g.is_solvable());
        assert!(!g.is_nilpotent());
    }

    #[test]
    fn corner_pair_sweep_exact() {
        for p in 2..=8usize {
            for q in 1..=8usize {
                if p + q <= 2 || p + q > 16 {
                    continue;
                }
                let (b, y) = so_pq_pair(p, q).unwrap();
                assert_eq!(b.commutator(&y), y, "[B,Y]=Y fails at p={p}, q={q}");
                let form = IndefiniteForm::new(p, q);
                assert!(so_pq_membership(&b, &form).unwrap());
                assert!(so_pq_membership(&y, &form).unwrap());
                if q == 1 {
                    let (a, x) = so_p1_pair(p).unwrap();
                    assert_eq!(a.commutator(&x), x, "[A,X]=X fails at p={p}");
                }
            }
        }
    }

    #[test]
    fn so_pq_direct_matches_solved_construction() {
        for (p, q) in [(2usize, 1usize), (3, 1), (2, 2), (3, 2)] {
            let direct = so_pq_algebra(p, q).unwrap();
            let (basis, names) = so_pq_basis(p, q).unwrap();
            let solved = span_to_lie_algebra(&basis, Some(names)).unwrap();
            assert_eq!(direct.basis_names(), solved.basis_names());
            let d = direct.dim();
            for i in 0..d {
                for j in 0..d {
                    for k in 0..d {
                        assert_eq!(
                            direct.structure_constant(i, j, k),
                            solved.structure_constant(i, j, k),
                            "constant ({i},{j},{k}) differs at p={p}, q={q}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn so_pq_builtin_small() {
        let g = builtin_algebra(
            "so_pq",
            &BuiltinParams { p: Some(2), q: Some(1), ..Default::default() },
        )
        .unwrap();
        assert_eq!(g.dim(), 3);
        assert!(!g.is_solvable()); // so(2,1) ~ sl(2,R)
    }
}
