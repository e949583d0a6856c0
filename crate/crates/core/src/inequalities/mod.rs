//! Registry of bounds, equalities, pointwise lemmas and identities for
//! A-quantities, and the engine that checks them on concrete instances.
//!
//! Every side of every statement is evaluated as an [`Interval`] built from
//! radius enclosures, so a bound is reported violated only when the certified
//! left side exceeds the certified right side by more than the tolerance.

mod catalog;
mod context;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instancegen::{sharpness_case, sharpness_witness, GenConfig, Witness};
use crate::interval::Interval;
use crate::linalg::TolerancePolicy;
use crate::semihilbert::{AOperator, SemiHilbertSpace};

pub use catalog::{registry, scalar_sup_grid, POINTWISE_DRAWS};
pub use context::Ctx;

/// Tolerance on the sharpness slack of a constructed equality case.
pub const SHARPNESS_TOL: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Arity {
    #[serde(rename = "T")]
    T,
    #[serde(rename = "TS")]
    TS,
    #[serde(rename = "vectors")]
    Vectors,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Bound,
    Equality,
    Pointwise,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Valid,
    /// The statement as printed fails on a stored counterexample.
    SuspectPrinted,
    /// A repaired form of a printed statement.
    DerivedCorrection,
}

impl Status {
    /// Statuses whose violations count as failures.
    pub fn is_trusted(self) -> bool {
        matches!(self, Status::Valid | Status::DerivedCorrection)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Group {
    Background,
    Main,
    Lemmas,
    Identities,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum EntrySet {
    Background,
    Main,
    Lemmas,
    Identities,
    All,
}

impl EntrySet {
    pub fn contains(self, group: Group) -> bool {
        match self {
            EntrySet::All => true,
            EntrySet::Background => group == Group::Background,
            EntrySet::Main => group == Group::Main,
            EntrySet::Lemmas => group == Group::Lemmas,
            EntrySet::Identities => group == Group::Identities,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Violated,
    Inapplicable,
}

/// Structural hypotheses beyond compatibility.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Requirement {
    None,
    SelfAdjointT,
    SelfAdjointTS,
    NormalT,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Le,
    Eq,
}

/// An instance on which a suspect statement fails.
#[derive(Debug, Clone)]
pub struct Counterexample {
    pub witness: Witness,
    pub expected_slack: f64,
}

/// One comparison inside an entry, e.g. the lower half of a two-sided bound.
#[derive(Debug, Clone, PartialEq)]
pub struct Part {
    pub label: String,
    pub relation: Relation,
    pub lhs: Interval,
    pub rhs: Interval,
    /// Overrides the default tolerance of the relation.
    pub tol: Option<f64>,
}

impl Part {
    pub fn le(label: impl Into<String>, lhs: Interval, rhs: Interval) -> Self {
        Self {
            label: label.into(),
            relation: Relation::Le,
            lhs,
            rhs,
            tol: None,
        }
    }

    pub fn eq(label: impl Into<String>, lhs: Interval, rhs: Interval) -> Self {
        Self {
            relation: Relation::Eq,
            ..Self::le(label, lhs, rhs)
        }
    }

    pub fn with_tol(self, tol: f64) -> Self {
        Self {
            tol: Some(tol),
            ..self
        }
    }
}

pub type Evaluator = fn(&mut Ctx<'_>) -> Result<Vec<Part>>;

pub struct InequalityEntry {
    pub id: &'static str,
    pub arity: Arity,
    pub kind: Kind,
    pub status: Status,
    pub group: Group,
    pub requires: Requirement,
    pub statement: &'static str,
    /// Short name of the result the entry encodes.
    pub title: &'static str,
    /// Name of the equality case; constructors in
    /// [`crate::instancegen::SHARPNESS_CASES`] list the entry among their targets.
    pub sharpness: Option<&'static str>,
    pub counterexample: Option<fn() -> Counterexample>,
    pub eval: Evaluator,
}

impl std::fmt::Debug for InequalityEntry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("InequalityEntry")
            .field("id", &self.id)
            .field("arity", &self.arity)
            .field("kind", &self.kind)
            .field("status", &self.status)
            .field("statement", &self.statement)
            .finish_non_exhaustive()
    }
}

pub fn lookup(id: &str) -> Option<&'static InequalityEntry> {
    registry().iter().find(|e| e.id == id)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartOutcome {
    pub label: String,
    pub relation: Relation,
    pub lhs: Interval,
    pub rhs: Interval,
    pub tol: f64,
    pub slack: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub entry_id: String,
    pub status: Status,
    #[serde(with = "crate::report::nullable_f64")]
    pub lhs: f64,
    #[serde(with = "crate::report::nullable_f64")]
    pub rhs: f64,
    /// At the decisive part: `rhs.hi − lhs.lo` for bounds, so a bound is
    /// violated iff its slack is below `−tol`; `|lhs − rhs|` (midpoints) for equalities.
    #[serde(with = "crate::report::nullable_f64")]
    pub slack: f64,
    pub verdict: Verdict,
    pub parts: Vec<PartOutcome>,
    pub enclosure_note: String,
}

impl CheckOutcome {
    fn inapplicable(entry: &InequalityEntry, why: &str) -> Self {
        Self {
            entry_id: entry.id.to_string(),
            status: entry.status,
            lhs: f64::NAN,
            rhs: f64::NAN,
            slack: f64::NAN,
            verdict: Verdict::Inapplicable,
            parts: Vec::new(),
            enclosure_note: why.to_string(),
        }
    }

    pub fn part(&self, label: &str) -> Option<&PartOutcome> {
        self.parts.iter().find(|p| p.label == label)
    }
}

/// Tolerance for an equality between two optimized radii.
pub fn radius_eq_tol(tol: &TolerancePolicy, value: f64) -> f64 {
    2.0 * tol.sweep_tol + 1e-9 * value.abs().max(1.0)
}

fn judge(part: Part, tol: &TolerancePolicy) -> PartOutcome {
    let (lhs, rhs) = (part.lhs, part.rhs);
    match part.relation {
        Relation::Le => {
            let t = part.tol.unwrap_or(tol.check_atol);
            let violated = !(lhs.is_finite() && rhs.is_finite()) || lhs.lo > rhs.hi + t;
            PartOutcome {
                label: part.label,
                relation: part.relation,
                lhs,
                rhs,
                tol: t,
                slack: rhs.hi - lhs.lo,
                verdict: if violated {
                    Verdict::Violated
                } else {
                    Verdict::Holds
                },
            }
        }
        Relation::Eq => {
            let t = part
                .tol
                .unwrap_or_else(|| radius_eq_tol(tol, lhs.mid().abs().max(rhs.mid().abs())));
            let gap = (lhs.lo - rhs.hi).max(rhs.lo - lhs.hi).max(0.0);
            let violated = !(lhs.is_finite() && rhs.is_finite()) || gap > t;
            PartOutcome {
                label: part.label,
                relation: part.relation,
                lhs,
                rhs,
                tol: t,
                slack: (lhs.mid() - rhs.mid()).abs(),
                verdict: if violated {
                    Verdict::Violated
                } else {
                    Verdict::Holds
                },
            }
        }
    }
}

/// How close a part is to failing; smaller is worse.
fn margin(p: &PartOutcome) -> f64 {
    match p.relation {
        Relation::Le => p.slack,
        Relation::Eq => -p.slack,
    }
}

const ENCLOSURE_NOTE: &str =
    "bound violated iff lhs.lo > rhs.hi + tol; equality holds iff the enclosures are within tol";

fn applicable(entry: &InequalityEntry, ctx: &Ctx<'_>) -> std::result::Result<(), &'static str> {
    if entry.arity == Arity::TS && ctx.s().is_none() {
        return Err("requires a second operator S");
    }
    let sa = |op: &AOperator<'_>| op.predicates().is_a_selfadjoint;
    match entry.requires {
        Requirement::None => Ok(()),
        Requirement::SelfAdjointT if sa(ctx.t()) => Ok(()),
        Requirement::SelfAdjointT => Err("requires T to be A-selfadjoint"),
        Requirement::SelfAdjointTS if sa(ctx.t()) && ctx.s().is_some_and(sa) => Ok(()),
        Requirement::SelfAdjointTS => Err("requires T and S to be A-selfadjoint"),
        Requirement::NormalT if ctx.t().predicates().is_a_normal => Ok(()),
        Requirement::NormalT => Err("requires T to be A-normal"),
    }
}

/// Evaluates one entry against the operators held by `ctx`.
pub fn check_entry(entry: &InequalityEntry, ctx: &mut Ctx<'_>) -> Result<CheckOutcome> {
    if let Err(why) = applicable(entry, ctx) {
        return Ok(CheckOutcome::inapplicable(entry, why));
    }
    let wrap = |e: Error| Error::EvaluationFailure {
        entry: entry.id.to_string(),
        source: Box::new(e),
    };
    let parts = (entry.eval)(ctx).map_err(wrap)?;
    if parts.is_empty() {
        return Ok(CheckOutcome::inapplicable(entry, "nothing to evaluate"));
    }
    let tol = *ctx.tol();
    let parts: Vec<PartOutcome> = parts.into_iter().map(|p| judge(p, &tol)).collect();
    let decisive = parts
        .iter()
        .find(|p| p.verdict == Verdict::Violated)
        .or_else(|| parts.iter().min_by(|a, b| margin(a).total_cmp(&margin(b))))
        .expect("parts is nonempty");
    Ok(CheckOutcome {
        entry_id: entry.id.to_string(),
        status: entry.status,
        lhs: decisive.lhs.mid(),
        rhs: decisive.rhs.mid(),
        slack: decisive.slack,
        verdict: decisive.verdict,
        enclosure_note: ENCLOSURE_NOTE.to_string(),
        parts,
    })
}

/// Runs every entry of `set` in catalog order. Failures are reported per entry.
pub fn check_suite(ctx: &mut Ctx<'_>, set: EntrySet) -> Vec<Result<CheckOutcome>> {
    registry()
        .iter()
        .filter(|e| set.contains(e.group))
        .map(|e| check_entry(e, ctx))
        .collect()
}

/// Checks that the bound `ω ≤ (√2/2)√(‖T‖² + ω(T²))` never exceeds `‖T‖` and
/// that the lower bound `¼‖T♯T + TT♯‖ ≤ ω²` dominates `(1/16)‖T♯T + TT♯‖ ≤ ω²`.
pub fn refinement_check(ctx: &mut Ctx<'_>) -> Result<CheckOutcome> {
    let wrap = |e: Error| Error::EvaluationFailure {
        entry: "refinement".to_string(),
        source: Box::new(e),
    };
    let norm = ctx.norm("T").map_err(wrap)?;
    let omega_sq = ctx.omega("T^2").map_err(wrap)?;
    let refined = (norm.sqr() + omega_sq)
        .sqrt()
        .scale(std::f64::consts::FRAC_1_SQRT_2);
    let sum = ctx.norm("T#T+TT#").map_err(wrap)?;
    let tol = *ctx.tol();
    let parts = vec![
        judge(Part::le("sqrt2_bound_below_norm", refined, norm), &tol),
        judge(
            Part::le(
                "quarter_lower_above_sixteenth",
                sum.scale(1.0 / 16.0),
                sum.scale(0.25),
            ),
            &tol,
        ),
    ];
    let decisive = parts
        .iter()
        .min_by(|a, b| margin(a).total_cmp(&margin(b)))
        .expect("two parts");
    Ok(CheckOutcome {
        entry_id: "refinement".to_string(),
        status: Status::Valid,
        lhs: decisive.lhs.mid(),
        rhs: decisive.rhs.mid(),
        slack: decisive.slack,
        verdict: if parts.iter().any(|p| p.verdict == Verdict::Violated) {
            Verdict::Violated
        } else {
            Verdict::Holds
        },
        enclosure_note: ENCLOSURE_NOTE.to_string(),
        parts,
    })
}

/// Result of evaluating one sharpness case on its constructed instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SharpnessOutcome {
    pub case_id: String,
    pub entry_id: String,
    pub part: Option<String>,
    #[serde(with = "crate::report::nullable_f64")]
    pub slack: f64,
    pub attained: bool,
    pub outcome: CheckOutcome,
}

/// Builds the witness for `case_id` and reports the slack on each target.
pub fn check_sharpness(case_id: &str, cfg: &GenConfig) -> Result<Vec<SharpnessOutcome>> {
    let case = sharpness_case(case_id)?;
    let w = sharpness_witness(case_id, cfg)?;
    let sp = SemiHilbertSpace::new(w.a.clone(), TolerancePolicy::default())?;
    let t = sp.operator(w.t.clone())?;
    let s = w.s.clone().map(|m| sp.operator(m)).transpose()?;
    let mut ctx = Ctx::new(t, s)?;
    let mut out = Vec::new();
    for target in case.targets {
        let entry = lookup(target.entry).ok_or_else(|| Error::UnknownCase(target.entry.into()))?;
        let outcome = check_entry(entry, &mut ctx)?;
        let slacks: Vec<f64> = outcome
            .parts
            .iter()
            .filter(|p| target.part.is_none_or(|l| l == p.label))
            .map(|p| p.slack)
            .collect();
        let slack = slacks
            .iter()
            .copied()
            .max_by(|a, b| a.abs().total_cmp(&b.abs()))
            .unwrap_or(f64::NAN);
        out.push(SharpnessOutcome {
            case_id: case_id.to_string(),
            entry_id: entry.id.to_string(),
            part: target.part.map(str::to_string),
            slack,
            attained: outcome.verdict == Verdict::Holds && slack.abs() <= SHARPNESS_TOL,
            outcome,
        });
    }
    Ok(out)
}
