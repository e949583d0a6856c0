//! Randomized soundness sweeps of the registry over generated instances.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inequalities::{
    check_suite, refinement_check, registry, Ctx, EntrySet, Status, Verdict,
};
use crate::instance::InstanceFile;
use crate::instancegen::{
    gen_a_normal, gen_a_selfadjoint, gen_a_selfadjoint_second, gen_compatible,
    gen_compatible_second, gen_space, GenConfig,
};
use crate::linalg::TolerancePolicy;

/// Violations of suspect entries kept per entry; trusted violations are all kept.
pub const SUSPECT_RECORDS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum RankMode {
    Full,
    Deficient,
}

/// Operator family of a trial; rotated so structural hypotheses get exercised.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    General,
    SelfAdjoint,
    Normal,
}

const FAMILIES: [Family; 3] = [Family::General, Family::SelfAdjoint, Family::Normal];

#[derive(Debug, Clone, PartialEq)]
pub struct FuzzConfig {
    pub dims: Vec<usize>,
    pub ranks: Vec<RankMode>,
    /// Trials per dimension.
    pub trials: usize,
    pub seed: u64,
    pub set: EntrySet,
    pub tol: TolerancePolicy,
}

impl FuzzConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be at least 1".into()));
        }
        if self.dims.is_empty() || self.ranks.is_empty() {
            return Err(Error::InvalidConfig(
                "dims and ranks must be nonempty".into(),
            ));
        }
        if let Some(d) = self.dims.iter().find(|d| !(2..=8).contains(*d)) {
            return Err(Error::InvalidConfig(format!("dim {d} is outside 2..=8")));
        }
        self.tol.validate()
    }
}

/// Where a trial's instance came from, enough to regenerate it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialInfo {
    pub dim: usize,
    pub rank: usize,
    pub trial: usize,
    pub family: Family,
    pub stream: u64,
}

impl FuzzConfig {
    fn trial(&self, dim: usize, trial: usize) -> TrialInfo {
        let mode = self.ranks[trial % self.ranks.len()];
        let rank = match mode {
            RankMode::Full => dim,
            RankMode::Deficient => 1 + (trial / self.ranks.len()) % (dim - 1),
        };
        TrialInfo {
            dim,
            rank,
            trial,
            family: FAMILIES[(trial / self.ranks.len()) % FAMILIES.len()],
            stream: (dim as u64) << 32 | trial as u64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ViolationRecord {
    pub entry_id: String,
    pub status: Status,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub trial: TrialInfo,
    pub instance: InstanceFile,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntryAggregate {
    pub status: Status,
    pub holds: usize,
    pub violated: usize,
    pub inapplicable: usize,
    pub errors: usize,
    pub min_slack: Option<f64>,
    pub max_slack: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzSummary {
    pub instances: usize,
    pub entries: BTreeMap<String, EntryAggregate>,
    pub refinement: EntryAggregate,
    pub violations: Vec<ViolationRecord>,
    pub errors: Vec<String>,
}

impl FuzzSummary {
    /// Trusted (valid or corrected) entries that were violated somewhere.
    pub fn trusted_violations(&self) -> usize {
        self.entries
            .values()
            .filter(|a| a.status.is_trusted())
            .map(|a| a.violated)
            .sum::<usize>()
            + self.refinement.violated
    }

    pub fn suspect_violations(&self) -> usize {
        self.entries
            .values()
            .filter(|a| !a.status.is_trusted())
            .map(|a| a.violated)
            .sum()
    }
}

fn aggregate(status: Status) -> EntryAggregate {
    EntryAggregate {
        status,
        holds: 0,
        violated: 0,
        inapplicable: 0,
        errors: 0,
        min_slack: None,
        max_slack: None,
    }
}

fn record(agg: &mut EntryAggregate, verdict: Verdict, slack: f64) {
    match verdict {
        Verdict::Holds => agg.holds += 1,
        Verdict::Violated => agg.violated += 1,
        Verdict::Inapplicable => {
            agg.inapplicable += 1;
            return;
        }
    }
    agg.min_slack = Some(agg.min_slack.map_or(slack, |m| m.min(slack)));
    agg.max_slack = Some(agg.max_slack.map_or(slack, |m| m.max(slack)));
}

/// Generates the instance of one trial as plain matrices.
pub fn trial_instance(cfg: &FuzzConfig, info: &TrialInfo) -> Result<InstanceFile> {
    let gen = GenConfig::new(info.dim, info.rank, cfg.seed).with_stream(info.stream);
    let sp = gen_space(&gen, cfg.tol)?;
    let (t, s) = match info.family {
        Family::General => (
            gen_compatible(&sp, &gen)?,
            gen_compatible_second(&sp, &gen)?,
        ),
        Family::SelfAdjoint => (
            gen_a_selfadjoint(&sp, &gen)?,
            gen_a_selfadjoint_second(&sp, &gen)?,
        ),
        Family::Normal => (gen_a_normal(&sp, &gen)?, gen_compatible_second(&sp, &gen)?),
    };
    Ok(InstanceFile::from_matrices(
        sp.a(),
        t.matrix(),
        Some(s.matrix()),
    ))
}

/// Runs the configured sweep; `on_trial` is called after each instance.
pub fn run_fuzz(cfg: &FuzzConfig, mut on_trial: impl FnMut(&TrialInfo)) -> Result<FuzzSummary> {
    cfg.validate()?;
    let mut summary = FuzzSummary {
        instances: 0,
        entries: registry()
            .iter()
            .filter(|e| cfg.set.contains(e.group))
            .map(|e| (e.id.to_string(), aggregate(e.status)))
            .collect(),
        refinement: aggregate(Status::Valid),
        violations: Vec::new(),
        errors: Vec::new(),
    };
    for &dim in &cfg.dims {
        for trial in 0..cfg.trials {
            let info = cfg.trial(dim, trial);
            let file = trial_instance(cfg, &info)?;
            let inst = file.validate(cfg.tol)?;
            let sp = inst.space()?;
            let t = sp.operator(inst.t.clone())?;
            let s = inst.s.clone().map(|m| sp.operator(m)).transpose()?;
            // seed 0 so that `check` on a recorded instance replays the same draws
            let mut ctx = Ctx::new(t, s)?;
            summary.instances += 1;
            for res in check_suite(&mut ctx, cfg.set) {
                let out = match res {
                    Ok(out) => out,
                    Err(e) => {
                        if let Error::EvaluationFailure { entry, .. } = &e {
                            if let Some(agg) = summary.entries.get_mut(entry) {
                                agg.errors += 1;
                            }
                        }
                        summary.errors.push(format!("dim {dim} trial {trial}: {e}"));
                        continue;
                    }
                };
                let agg = summary
                    .entries
                    .get_mut(&out.entry_id)
                    .expect("entry in set");
                record(agg, out.verdict, out.slack);
                let keep = out.status.is_trusted() || agg.violated <= SUSPECT_RECORDS;
                if out.verdict == Verdict::Violated && keep {
                    summary.violations.push(ViolationRecord {
                        entry_id: out.entry_id.clone(),
                        status: out.status,
                        lhs: out.lhs,
                        rhs: out.rhs,
                        slack: out.slack,
                        trial: info,
                        instance: file.clone(),
                    });
                }
            }
            match refinement_check(&mut ctx) {
                Ok(out) => record(&mut summary.refinement, out.verdict, out.slack),
                Err(e) => {
                    summary.refinement.errors += 1;
                    summary.errors.push(format!("dim {dim} trial {trial}: {e}"));
                }
            }
            on_trial(&info);
        }
    }
    Ok(summary)
}
