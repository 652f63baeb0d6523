//! Frames-of-translates classification: routes a group description through a
//! fixed cascade of decision rules and reports the outcome together with the
//! chain of principles used and, where available, a constructive witness.

use crate::lie::LieAlgebra;
use crate::matrix_groups::{self, BuiltinParams, MatrixGroupError};
use crate::subalgebra::{
    find_ax_b_or_grelaud, verify_subalgebra_template, SubalgebraWitness, WitnessKind,
};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FTStatus {
    #[serde(rename = "FT")]
    Ft,
    #[serde(rename = "NOT_FT")]
    NotFt,
    #[serde(rename = "OPEN")]
    Open,
    #[serde(rename = "UNKNOWN")]
    Unknown,
}

/// Topological / group-theoretic flags describing the group under study.
#[derive(Debug, Clone, Default)]
pub struct GroupFlags {
    pub discrete: bool,
    pub compact: bool,
    pub finite: bool,
    pub abelian: bool,
    pub simply_connected: bool,
    pub connected: bool,
    /// Whether the group is an [IN]-group (has a compact-neighborhood-
    /// invariant identity neighborhood); not computable from the algebra,
    /// so it is an input flag.
    pub in_group: Option<bool>,
}

#[derive(Debug, Clone)]
pub struct GroupDescriptor {
    pub name: String,
    pub algebra: Option<LieAlgebra>,
    pub flags: GroupFlags,
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainLink {
    pub rule: &'static str,
    pub citation: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct FTVerdict {
    pub status: FTStatus,
    pub chain: Vec<ChainLink>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<SubalgebraWitness>,
    pub assumptions: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Error)]
pub enum ClassifierError {
    #[error("inconsistent flags: {0}")]
    InconsistentFlags(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error(transparent)]
    MatrixGroup(#[from] MatrixGroupError),
    #[error(transparent)]
    Lie(#[from] crate::lie::LieError),
    #[error("supplied witness failed template verification: {0}")]
    WitnessRejected(#[from] crate::subalgebra::SubalgebraError),
}

const CITE_DISCRETE: &str =
    "a discrete group acts on itself by translations, giving an orthonormal basis of translates";
const CITE_COMPACT: &str =
    "a compact group admits a frame of translates if and only if it is finite";
const CITE_IN_GROUP: &str =
    "nondiscrete [IN]-groups (compact invariant identity neighborhood, Iwasawa's criterion) are never FT";
const CITE_ABELIAN: &str =
    "nondiscrete locally compact abelian groups, in particular R^d, are not FT";
const CITE_EXTRACTION: &str =
    "a solvable non-nilpotent exponential algebra contains an ax+b or Grelaud subalgebra with non-purely-imaginary roots";
const CITE_CLOSED_SUBGROUP: &str =
    "in the exponential solvable case the subgroup integrating the witness subalgebra is simply connected and closed";
const CITE_NONUNIMODULAR: &str =
    "a closed type I nonunimodular group has a frame of translates built from an admissible vector";
const CITE_TRANSFER: &str =
    "if a closed subgroup H is FT and the restricted regular representation has infinite multiplicity, then G is FT";
const CITE_MAIN: &str =
    "exponential solvable Lie groups which are not nilpotent are FT";
const CITE_NILPOTENT_OPEN: &str =
    "for nonabelian simply connected, connected nilpotent Lie groups the FT question is open";
const CITE_UNKNOWN: &str =
    "no decision rule applies; the classifier does not extrapolate beyond the established theorems";

const DISCRETE_CONJECTURE_NOTE: &str =
    "conjecture (not used as a rule): a group has a Riesz basis of translates if and only if it is discrete";

fn check_flags(d: &GroupDescriptor) -> Result<(), ClassifierError> {
    let f = &d.flags;
    if f.finite && !(f.compact && f.discrete) {
        return Err(ClassifierError::InconsistentFlags(
            "finite groups are compact and discrete".into(),
        ));
    }
    if f.algebra_expected() != d.algebra.is_some() {
        return Err(ClassifierError::InconsistentFlags(
            "an algebra must be present exactly when the group is a connected Lie group".into(),
        ));
    }
    Ok(())
}

impl GroupFlags {
    fn algebra_expected(&self) -> bool {
        self.connected && !self.discrete
    }
}

/// Fixed-order rule cascade; the first matching rule decides the status.
pub fn classify(d: &GroupDescriptor, seed: u64) -> Result<FTVerdict, ClassifierError> {
    classify_with_witness(d, seed, None)
}

/// As `classify`, but a precomputed subalgebra witness can be supplied for
/// the non-solvable rule; it is re-verified before use.
pub fn classify_with_witness(
    d: &GroupDescriptor,
    seed: u64,
    supplied: Option<SubalgebraWitness>,
) -> Result<FTVerdict, ClassifierError> {
    check_flags(d)?;
    let f = &d.flags;
    let mut notes = Vec::new();

    // rule 1: discrete groups
    if f.discrete {
        notes.push(DISCRETE_CONJECTURE_NOTE.to_string());
        return Ok(verdict(FTStatus::Ft, vec![link("discrete", CITE_DISCRETE)], None, vec![], notes));
    }
    // rule 2: compact nondiscrete
    if f.compact {
        return Ok(verdict(FTStatus::NotFt, vec![link("compact", CITE_COMPACT)], None, vec![], notes));
    }
    // rule 3: nondiscrete [IN]-groups
    if f.in_group == Some(true) {
        return Ok(verdict(FTStatus::NotFt, vec![link("in_group", CITE_IN_GROUP)], None, vec![], notes));
    }
    // rule 4: abelian nondiscrete
    if f.abelian || d.algebra.as_ref().is_some_and(|g| g.is_abelian()) {
        return Ok(verdict(FTStatus::NotFt, vec![link("abelian", CITE_ABELIAN)], None, vec![], notes));
    }

    let Some(g) = d.algebra.as_ref() else {
        return Ok(verdict(FTStatus::Unknown, vec![link("fallback", CITE_UNKNOWN)], None, vec![], notes));
    };

    // rule 5: exponential solvable, not nilpotent
    if g.is_solvable() && !g.is_nilpotent() {
        let (expo, _) = g.is_exponential(seed)?;
        if expo {
            let witness = obtain_witness(g, seed, supplied)?;
            let chain = vec![
                link("extraction", CITE_EXTRACTION),
                link("closed_subgroup", CITE_CLOSED_SUBGROUP),
                link("nonunimodular", CITE_NONUNIMODULAR),
                link("transfer", CITE_TRANSFER),
                link("exp_solvable", CITE_MAIN),
            ];
            return Ok(verdict(FTStatus::Ft, chain, Some(witness), vec![], notes));
        }
    }

    // rule 6: nilpotent nonabelian simply connected connected
    if g.is_nilpotent() && !g.is_abelian() && f.simply_connected && f.connected {
        return Ok(verdict(
            FTStatus::Open,
            vec![link("nilpotent_open", CITE_NILPOTENT_OPEN)],
            None,
            vec![],
            notes,
        ));
    }

    // rule 7: non-solvable algebra with an extractable witness subalgebra
    if !g.is_solvable() {
        if let Ok(witness) = obtain_witness(g, seed, supplied) {
            let chain = vec![
                link("extraction", CITE_EXTRACTION),
                link("nonunimodular", CITE_NONUNIMODULAR),
                link("transfer", CITE_TRANSFER),
            ];
            let assumptions = vec!["witness subgroup closed in G".to_string()];
            return Ok(verdict(FTStatus::Ft, chain, Some(witness), assumptions, notes));
        }
    }

    // rule 8: nothing applies
    Ok(verdict(FTStatus::Unknown, vec![link("fallback", CITE_UNKNOWN)], None, vec![], notes))
}

fn obtain_witness(
    g: &LieAlgebra,
    seed: u64,
    supplied: Option<SubalgebraWitness>,
) -> Result<SubalgebraWitness, ClassifierError> {
    match supplied {
        Some(mut w) => {
            w.residual = verify_subalgebra_template(g, &w.generators, &w.kind)?;
            Ok(w)
        }
        None => Ok(find_ax_b_or_grelaud(g, seed, 64)?),
    }
}

fn link(rule: &'static str, citation: &'static str) -> ChainLink {
    ChainLink { rule, citation }
}

fn verdict(
    status: FTStatus,
    chain: Vec<ChainLink>,
    witness: Option<SubalgebraWitness>,
    assumptions: Vec<String>,
    notes: Vec<String>,
) -> FTVerdict {
    FTVerdict { status, chain, witness, assumptions, notes }
}

fn lie_group_descriptor(name: &str, g: LieAlgebra) -> GroupDescriptor {
    GroupDescriptor {
        name: name.to_string(),
        algebra: Some(g),
        flags: GroupFlags { simply_connected: true, connected: true, ..Default::default() },
    }
}

/// Classify one of the named matrix examples, supplying the exact corner-pair
/// witness where the construction gives one in closed form.
pub fn classify_matrix_example(
    name: &str,
    params: &BuiltinParams,
    seed: u64,
) -> Result<FTVerdict, ClassifierError> {
    match name {
        "sl2" => {
            let g = matrix_groups::builtin_algebra("sl2", params)?;
            // (H/2, E) satisfies [H/2, E] = E
            let witness = SubalgebraWitness {
                kind: WitnessKind::AxB,
                generators: vec![vec![0.5, 0.0, 0.0], vec![0.0, 1.0, 0.0]],
                residual: 0.0,
                seed,
                trial: 0,
            };
            classify_with_witness(&lie_group_descriptor("SL(2,R)", g), seed, Some(witness))
        }
        "so_p1" | "so_pq" => {
            let p = params.p.ok_or_else(|| ClassifierError::BadParams("need p".into()))?;
            let q = if name == "so_p1" {
                1
            } else {
                params.q.ok_or_else(|| ClassifierError::BadParams("need q".into()))?
            };
            if p < 2 || p + q <= 2 {
                return Err(ClassifierError::BadParams("so(p,q) needs p >= 2, p+q > 2".into()));
            }
            let g = matrix_groups::so_pq_algebra(p, q)?;
            let names = g.basis_names().to_vec();
            let witness = so_pq_corner_witness(p, q, &names, seed);
            classify_with_witness(
                &lie_group_descriptor(&format!("SO({p},{q})"), g),
                seed,
                Some(witness),
            )
        }
        "shearlet_H" => {
            let g = matrix_groups::builtin_algebra("shearlet_H", params)?;
            classify(&lie_group_descriptor("shearlet dilation group", g), seed)
        }
        "T_n" => {
            let g = matrix_groups::builtin_algebra("T_n", params)?;
            let n = params.n.unwrap_or(0);
            classify(&lie_group_descriptor(&format!("T({n},R)"), g), seed)
        }
        other => Err(ClassifierError::BadParams(format!("unknown matrix example: {other}"))),
    }
}

/// Express the exact pair B = G_{1,p+1}, Y = G_{1,p} + G_{p,p+1} in the
/// standard so(p,q) basis coordinates.
fn so_pq_corner_witness(p: usize, q: usize, names: &[String], seed: u64) -> SubalgebraWitness {
    let dim = names.len();
    let idx = |i: usize, j: usize| {
        let label = format!("G{}{}", i, j);
        names.iter().position(|n| *n == label).expect("basis label present")
    };
    let mut b = vec![0.0; dim];
    b[idx(1, p + 1)] = 1.0;
    let mut y = vec![0.0; dim];
    y[idx(1, p)] = 1.0;
    y[idx(p, p + 1)] = 1.0;
    let _ = q;
    SubalgebraWitness { kind: WitnessKind::AxB, generators: vec![b, y], residual: 0.0, seed, trial: 0 }
}
