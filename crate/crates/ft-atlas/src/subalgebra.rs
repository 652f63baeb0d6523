//! Constructive extraction of ax+b or Grelaud subalgebras from the spectrum
//! of ad-operators, and verification of claimed subalgebra embeddings against
//! the ax+b / Grelaud / Heisenberg templates.

use crate::lie::{random_rational_vector, LieAlgebra, LieVector};
use crate::linalg::{self, Rat};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum WitnessKind {
    AxB,
    Grelaud { beta: f64 },
    Heisenberg,
}

/// A verified 2- or 3-dimensional subalgebra exhibiting one of the template
/// bracket patterns.
#[derive(Debug, Clone, Serialize)]
pub struct SubalgebraWitness {
    pub kind: WitnessKind,
    pub generators: Vec<Vec<f64>>,
    pub residual: f64,
    pub seed: u64,
    pub trial: usize,
}

#[derive(Debug, Error)]
pub enum SubalgebraError {
    #[error("no ax+b or Grelaud witness found within {trials} trials (consistent with a type R or nilpotent algebra)")]
    NoWitnessFound { trials: usize },
    #[error("complex eigenvalue found but the real/imaginary eigenvector parts do not commute (residual {residual})")]
    NoncommutingPair { residual: f64 },
    #[error("generator span is not closed under the bracket (residual {residual})")]
    NotClosed { residual: f64 },
    #[error("template relations violated (residual {residual})")]
    TemplateMismatch { residual: f64 },
    #[error("generators are linearly dependent")]
    DependentSpan,
    #[error("wrong generator count: template needs {expected}, got {got}")]
    WrongGeneratorCount { expected: usize, got: usize },
    #[error(transparent)]
    Lie(#[from] crate::lie::LieError),
}

/// Search for an element X whose ad-operator has an eigenvalue with nonzero
/// real part, and build the corresponding ax+b or Grelaud subalgebra.
///
/// A real nonzero eigenvalue wins over a properly complex one whenever both
/// occur for the same candidate X. Candidates are the basis elements first,
/// then seeded random rational combinations; the first success (lowest trial
/// index) is returned.
pub fn find_ax_b_or_grelaud(
    g: &LieAlgebra,
    seed: u64,
    trials: usize,
) -> Result<SubalgebraWitness, SubalgebraError> {
    let n = g.dim();
    let tol = g.tol();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut candidates: Vec<LieVector> = (0..n).map(|i| LieVector::basis(n, i)).collect();
    while candidates.len() < trials {
        candidates.push(random_rational_vector(n, &mut rng));
    }
    candidates.truncate(trials);

    let mut noncommuting: Option<f64> = None;
    for (trial, x) in candidates.iter().enumerate() {
        let ad = g.ad_matrix(x)?;
        let scale = ad.amax().max(1.0);
        let pairs = linalg::complex_eigenpairs(&linalg::real_to_complex(&ad), 1e-7);
        // Case 1: real nonzero eigenvalue
        let real_pair = pairs.iter().find(|(l, _)| {
            l.im.abs() <= tol * l.re.abs().max(1.0) && l.re.abs() > tol * scale
        });
        if let Some((lambda, v)) = real_pair {
            // real eigenvector: take the dominant real/imaginary part
            let re: Vec<f64> = v.iter().map(|z| z.re).collect();
            let im: Vec<f64> = v.iter().map(|z| z.im).collect();
            let re_n: f64 = re.iter().map(|a| a * a).sum::<f64>().sqrt();
            let im_n: f64 = im.iter().map(|a| a * a).sum::<f64>().sqrt();
            let y = LieVector::new(if re_n >= im_n { re } else { im });
            let x_scaled = LieVector::new(x.coords.iter().map(|c| c / lambda.re).collect());
            let gens = vec![x_scaled.coords.clone(), y.coords.clone()];
            if let Ok(residual) = verify_subalgebra_template(g, &gens, &WitnessKind::AxB) {
                return Ok(SubalgebraWitness {
                    kind: WitnessKind::AxB,
                    generators: gens,
                    residual,
                    seed,
                    trial,
                });
            }
        }
        // Case 2: eigenvalue alpha + i beta with alpha != 0, beta != 0
        let complex_pair = pairs.iter().find(|(l, _)| {
            l.im.abs() > tol * l.re.abs().max(1.0) && l.re.abs() > tol * scale
        });
        if let Some((lambda, v)) = complex_pair {
            let (alpha, beta) = (lambda.re, lambda.im);
            // ad(X)(Y1 - i Y2) = (alpha + i beta)(Y1 - i Y2) gives
            // [X,Y1] = alpha Y1 + beta Y2, [X,Y2] = -beta Y1 + alpha Y2
            let y1 = LieVector::new(v.iter().map(|z| z.re).collect());
            let y2 = LieVector::new(v.iter().map(|z| -z.im).collect());
            let comm = g.bracket(&y1, &y2)?;
            let comm_resid = comm.norm() / (y1.norm() * y2.norm()).max(1e-300);
            if comm_resid > tol * scale {
                noncommuting = Some(noncommuting.unwrap_or(0.0).max(comm_resid));
                continue;
            }
            let x_scaled = LieVector::new(x.coords.iter().map(|c| c / alpha).collect());
            let beta_eff = beta / alpha;
            let gens = vec![x_scaled.coords.clone(), y1.coords.clone(), y2.coords.clone()];
            let kind = WitnessKind::Grelaud { beta: beta_eff };
            if let Ok(residual) = verify_subalgebra_template(g, &gens, &kind) {
                return Ok(SubalgebraWitness { kind, generators: gens, residual, seed, trial });
            }
        }
    }
    match noncommuting {
        Some(residual) => Err(SubalgebraError::NoncommutingPair { residual }),
        None => Err(SubalgebraError::NoWitnessFound { trials }),
    }
}

/// Check that `generators` span a bracket-closed subspace satisfying the
/// bracket relations of `kind`; returns the maximal residual.
pub fn verify_subalgebra_template(
    g: &LieAlgebra,
    generators: &[Vec<f64>],
    kind: &WitnessKind,
) -> Result<f64, SubalgebraError> {
    let expected = match kind {
        WitnessKind::AxB => 2,
        _ => 3,
    };
    if generators.len() != expected {
        return Err(SubalgebraError::WrongGeneratorCount { expected, got: generators.len() });
    }
    // when the structure constants are exact rationals the template relations
    // can often be certified exactly; a success short-circuits the float path
    if let Some(resid) = verify_exact(g, generators, kind) {
        return Ok(resid);
    }
    let tol = g.tol();
    let gen_scale = generators
        .iter()
        .flat_map(|v| v.iter())
        .fold(0.0f64, |a, &b| a.max(b.abs()))
        .max(1.0);
    if linalg::f64_rank(generators, tol) < generators.len() {
        return Err(SubalgebraError::DependentSpan);
    }
    let vecs: Vec<LieVector> = generators.iter().map(|v| LieVector::new(v.clone())).collect();

    // closure: every pairwise bracket must stay in the span
    let span = linalg::f64_rowspace(generators, tol);
    let mut closure_resid = 0.0f64;
    for i in 0..vecs.len() {
        for j in (i + 1)..vecs.len() {
            let br = g.bracket(&vecs[i], &vecs[j]).map_err(SubalgebraError::Lie)?;
            let mut v = br.coords.clone();
            for b in &span {
                let dot: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= dot * y;
                }
            }
            let out: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            closure_resid = closure_resid.max(out / gen_scale.max(br.norm()).max(1.0));
        }
    }
    if closure_resid > tol * 100.0 {
        return Err(SubalgebraError::NotClosed { residual: closure_resid });
    }

    let diff_norm = |a: &LieVector, b: &LieVector| -> f64 {
        a.coords
            .iter()
            .zip(&b.coords)
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt()
    };
    let scaled = |v: &LieVector, c: f64| LieVector::new(v.coords.iter().map(|x| x * c).collect());
    let add = |a: &LieVector, b: &LieVector| {
        LieVector::new(a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect())
    };

    let mut resid = closure_resid;
    match kind {
        WitnessKind::AxB => {
            let br = g.bracket(&vecs[0], &vecs[1]).map_err(SubalgebraError::Lie)?;
            resid = resid.max(diff_norm(&br, &vecs[1]) / vecs[1].norm().max(1.0));
        }
        WitnessKind::Grelaud { beta } => {
            let scale = vecs[1].norm().max(vecs[2].norm()).max(1.0);
            let b1 = g.bracket(&vecs[0], &vecs[1]).map_err(SubalgebraError::Lie)?;
            let want1 = add(&vecs[1], &scaled(&vecs[2], *beta));
            let b2 = g.bracket(&vecs[0], &vecs[2]).map_err(SubalgebraError::Lie)?;
            let want2 = add(&scaled(&vecs[1], -*beta), &vecs[2]);
            let b3 = g.bracket(&vecs[1], &vecs[2]).map_err(SubalgebraError::Lie)?;
            resid = resid
                .max(diff_norm(&b1, &want1) / scale)
                .max(diff_norm(&b2, &want2) / scale)
                .max(b3.norm() / scale);
        }
        WitnessKind::Heisenberg => {
            let scale = vecs.iter().map(LieVector::norm).fold(1.0f64, f64::max);
            let b12 = g.bracket(&vecs[0], &vecs[1]).map_err(SubalgebraError::Lie)?;
            let b13 = g.bracket(&vecs[0], &vecs[2]).map_err(SubalgebraError::Lie)?;
            let b23 = g.bracket(&vecs[1], &vecs[2]).map_err(SubalgebraError::Lie)?;
            resid = resid
                .max(diff_norm(&b12, &vecs[2]) / scale)
                .max(b13.norm() / scale)
                .max(b23.norm() / scale);
        }
    }
    if resid > tol * 100.0 {
        return Err(SubalgebraError::TemplateMismatch { residual: resid });
    }
    Ok(resid)
}

/// Exact-arithmetic certification of the template relations. Returns
/// `Some(0.0)` when every relation holds as a rational identity (the
/// relations of each template cover all pairwise brackets, so bracket
/// closure follows); `None` means "undecided, use the float path".
fn verify_exact(g: &LieAlgebra, generators: &[Vec<f64>], kind: &WitnessKind) -> Option<f64> {
    let gens: Vec<Vec<Rat>> = generators
        .iter()
        .map(|v| v.iter().map(|&x| linalg::rat_from_f64(x)).collect::<Option<Vec<Rat>>>())
        .collect::<Option<Vec<_>>>()?;
    if linalg::rat_rank(&gens) < gens.len() {
        return None;
    }
    let eq = |a: &[Rat], b: &[Rat]| a.iter().zip(b).all(|(x, y)| x == y);
    let zero = |a: &[Rat]| a.iter().all(num::traits::Zero::is_zero);
    let ok = match kind {
        WitnessKind::AxB => {
            let br = g.bracket_exact(&gens[0], &gens[1])?;
            eq(&br, &gens[1])
        }
        WitnessKind::Grelaud { beta } => {
            let beta = linalg::rat_from_f64(*beta)?;
            let b1 = g.bracket_exact(&gens[0], &gens[1])?;
            let b2 = g.bracket_exact(&gens[0], &gens[2])?;
            let b3 = g.bracket_exact(&gens[1], &gens[2])?;
            let want1: Vec<Rat> =
                gens[1].iter().zip(&gens[2]).map(|(y1, y2)| y1 + y2 * &beta).collect();
            let want2: Vec<Rat> =
                gens[1].iter().zip(&gens[2]).map(|(y1, y2)| y2 - y1 * &beta).collect();
            eq(&b1, &want1) && eq(&b2, &want2) && zero(&b3)
        }
        WitnessKind::Heisenberg => {
            let b12 = g.bracket_exact(&gens[0], &gens[1])?;
            let b13 = g.bracket_exact(&gens[0], &gens[2])?;
            let b23 = g.bracket_exact(&gens[1], &gens[2])?;
            eq(&b12, &gens[2]) && zero(&b13) && zero(&b23)
        }
    };
    ok.then_some(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::samples;

    #[test]
    fn ax_b_finds_itself() {
        let g = samples::ax_b();
        let w = find_ax_b_or_grelaud(&g, 0, 64).unwrap();
        assert_eq!(w.kind, WitnessKind::AxB);
        assert!(w.residual <= 1e-9);
    }

    #[test]
    fn grelaud_finds_itself() {
        let g = samples::grelaud(2.0);
        let w = find_ax_b_or_grelaud(&g, 0, 64).unwrap();
        match w.kind {
            WitnessKind::Grelaud { beta } => assert!((beta.abs() - 2.0).abs() < 1e-8),
            other => panic!("expected Grelaud witness, got {other:?}"),
        }
        assert!(w.residual <= 1e-8);
    }

    #[test]
    fn heisenberg_has_no_witness() {
        let g = samples::heisenberg();
        assert!(matches!(
            find_ax_b_or_grelaud(&g, 0, 64),
            Err(SubalgebraError::NoWitnessFound { .. })
        ));
    }

    #[test]
    fn sl2_half_h_e_is_ax_b() {
        let g = samples::sl2();
        // (H/2, E)
        let gens = vec![vec![0.5, 0.0, 0.0], vec![0.0, 1.0, 0.0]];
        let r = verify_subalgebra_template(&g, &gens, &WitnessKind::AxB).unwrap();
        assert!(r <= 1e-12);
    }

    #[test]
    fn heisenberg_pair_not_closed() {
        let g = samples::heisenberg();
        let gens = vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]];
        assert!(matches!(
            verify_subalgebra_template(&g, &gens, &WitnessKind::AxB),
            Err(SubalgebraError::NotClosed { .. })
        ));
    }

    #[test]
    fn heisenberg_template_on_itself() {
        let g = samples::heisenberg();
        let gens = vec![
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
        ];
        let r = verify_subalgebra_template(&g, &gens, &WitnessKind::Heisenberg).unwrap();
        assert!(r <= 1e-12);
    }

    #[test]
    fn rotation_algebra_no_witness() {
        // purely imaginary spectrum: neither case applies
        let g = samples::rotation();
        assert!(matches!(
            find_ax_b_or_grelaud(&g, 5, 64),
            Err(SubalgebraError::NoWitnessFound { .. })
        ));
    }

    #[test]
    fn seed_sweep_on_solvable_nonnilpotent() {
        for seed in 0..20 {
            let w = find_ax_b_or_grelaud(&samples::ax_b(), seed, 64).unwrap();
            assert_eq!(w.kind, WitnessKind::AxB);
            let w = find_ax_b_or_grelaud(&samples::grelaud(1.0), seed, 64).unwrap();
            assert!(matches!(w.kind, WitnessKind::Grelaud { .. }));
        }
    }
}
