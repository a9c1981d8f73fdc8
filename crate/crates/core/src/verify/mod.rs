//! Brute-force oracles and the property-suite runner.
//!
//! Every suite compares library output against a computation that works
//! from definitions: all-tuple difference scans, term-by-term binomial sums,
//! ideal-power scans, exhaustive enumeration. Reports are deterministic for
//! a fixed [`Budget`].

pub mod corpus;
pub mod oracle;
mod suites;

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

pub use corpus::{corpus, groups_up_to, p_groups_up_to, CorpusMap, MapKind};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("invalid budget: {0}")]
    InvalidBudget(String),
    #[error("time budget of {0} ms exhausted")]
    TimeBudget(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SuiteId {
    #[serde(rename = "lemma_0_0")]
    Lemma00,
    DegreeDrop,
    Subadditivity,
    Functoriality,
    Restriction,
    Products,
    Sums,
    Diagonalization,
    PrimarySplit,
    DeltaVsNu,
    Weisman,
    Wilson,
    MainFormula,
    SumTheorem,
    DeltaProp,
}

impl SuiteId {
    pub const ALL: [SuiteId; 15] = [
        SuiteId::Lemma00,
        SuiteId::DegreeDrop,
        SuiteId::Subadditivity,
        SuiteId::Functoriality,
        SuiteId::Restriction,
        SuiteId::Products,
        SuiteId::Sums,
        SuiteId::Diagonalization,
        SuiteId::PrimarySplit,
        SuiteId::DeltaVsNu,
        SuiteId::Weisman,
        SuiteId::Wilson,
        SuiteId::MainFormula,
        SuiteId::SumTheorem,
        SuiteId::DeltaProp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteId::Lemma00 => "lemma_0_0",
            SuiteId::DegreeDrop => "degree_drop",
            SuiteId::Subadditivity => "subadditivity",
            SuiteId::Functoriality => "functoriality",
            SuiteId::Restriction => "restriction",
            SuiteId::Products => "products",
            SuiteId::Sums => "sums",
            SuiteId::Diagonalization => "diagonalization",
            SuiteId::PrimarySplit => "primary_split",
            SuiteId::DeltaVsNu => "delta_vs_nu",
            SuiteId::Weisman => "weisman",
            SuiteId::Wilson => "wilson",
            SuiteId::MainFormula => "main_formula",
            SuiteId::SumTheorem => "sum_theorem",
            SuiteId::DeltaProp => "delta_prop",
        }
    }

    /// The claim a failure of this suite contradicts.
    pub fn citation(self) -> &'static str {
        match self {
            SuiteId::Lemma00 => "binomial formula for iterated differences",
            SuiteId::DegreeDrop => "fdeg(Δ_a f) = n-1 for some a when fdeg(f) = n > 0",
            SuiteId::Subadditivity => "fdeg(f+g) ≤ max(fdeg(f), fdeg(g))",
            SuiteId::Functoriality => "composition with homomorphisms, with equality if ε is surjective or μ injective",
            SuiteId::Restriction => "domain restriction never raises the degree",
            SuiteId::Products => "mappings into products: fdeg is the max over components",
            SuiteId::Sums => "mappings out of sums: generator differences suffice",
            SuiteId::Diagonalization => "diagonalization theorem",
            SuiteId::PrimarySplit => "torsion groups split into primary components",
            SuiteId::DeltaVsNu => "δ(A,B) = ν(Z_{e(B)}[A]) - 1",
            SuiteId::Weisman => "M_{p^α}(j,n) ≡ 0 (mod p^β) from the threshold on",
            SuiteId::Wilson => "(t-1)^{T-1} = (-p)^{β-1} Σ t^i in Z_{p^β}[Z_{p^α}]",
            SuiteId::MainFormula => "δ(A,B) = Σ (p^{α_j}-1) + (β-1)(p-1)p^{α_1-1}",
            SuiteId::SumTheorem => "the maximum extends over all compositions of β-1",
            SuiteId::DeltaProp => "δ(A,B) = fdeg(δ_{a,b}) for b of maximal order",
        }
    }

    /// Library operations each suite exercises.
    pub fn coverage(self) -> &'static [&'static str] {
        match self {
            SuiteId::Lemma00 => &["iterated_difference_binomial", "difference", "delta_elem", "gr_pow", "act"],
            SuiteId::DegreeDrop => &["fdeg", "difference", "act"],
            SuiteId::Subadditivity => &["fdeg", "pointwise_add"],
            SuiteId::Functoriality => &["fdeg", "compose_pre", "compose_post", "make_hom"],
            SuiteId::Restriction => &["fdeg", "compose_pre", "make_hom"],
            SuiteId::Products => &["fdeg", "generator_scan"],
            SuiteId::Sums => &["generator_scan", "fdeg_bruteforce", "fdeg"],
            SuiteId::Diagonalization => &["diagonal_join", "fdeg", "hom_is_trivial"],
            SuiteId::PrimarySplit => &[
                "fdeg",
                "generator_scan",
                "degree_set",
                "delta_circ",
                "delta_sup",
                "primary_component",
                "structure_stats",
            ],
            SuiteId::DeltaVsNu => &["nilpotency_index", "delta_sup", "predicted_nu", "hom_is_trivial"],
            SuiteId::Weisman => &[
                "weisman_M",
                "weisman_M_mod",
                "weisman_threshold",
                "make_delta",
                "iterated_difference_binomial",
            ],
            SuiteId::Wilson => &["wilson_check", "gr_add", "gr_mul", "gr_pow", "delta_elem", "augmentation"],
            SuiteId::MainFormula => &["nilpotency_index", "ideal_power_is_zero", "delta_sup", "delta_cyclic"],
            SuiteId::SumTheorem => &["sum_theorem_max", "delta_cyclic", "delta_sup"],
            SuiteId::DeltaProp => &["make_delta", "generator_scan", "fdeg", "delta_sup", "degree_set"],
        }
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuiteId {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SuiteId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| VerifyError::UnknownSuite(s.to_string()))
    }
}

/// Scale of a suite run. `max_group_order` bounds the groups a suite builds;
/// `max_beta` bounds codomain exponents `p^β`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_group_order: u64,
    pub max_beta: u32,
    pub corpus_size: usize,
    pub seed: u64,
    #[serde(default)]
    pub time_limit_ms: Option<u64>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_group_order: 12,
            max_beta: 3,
            corpus_size: 200,
            seed: 0,
            time_limit_ms: None,
        }
    }
}

impl Budget {
    /// Defaults at the scale of the acceptance criteria.
    pub fn for_suite(id: SuiteId) -> Budget {
        let max_group_order = match id {
            SuiteId::MainFormula | SuiteId::DeltaVsNu | SuiteId::SumTheorem => 16,
            SuiteId::Weisman | SuiteId::DeltaProp => 9,
            SuiteId::Wilson => 27,
            _ => 12,
        };
        Budget {
            max_group_order,
            ..Budget::default()
        }
    }

    fn validate(&self) -> Result<(), VerifyError> {
        if self.max_group_order < 2 || self.max_beta == 0 || self.corpus_size == 0 {
            return Err(VerifyError::InvalidBudget(format!(
                "max_group_order {} , max_beta {}, corpus_size {}",
                self.max_group_order, self.max_beta, self.corpus_size
            )));
        }
        if self.max_group_order > 1 << 12 {
            return Err(VerifyError::InvalidBudget(format!(
                "max_group_order {} is above 4096",
                self.max_group_order
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub inputs: String,
    pub expected: String,
    pub actual: String,
    pub citation: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: SuiteId,
    pub cases_run: u64,
    pub failures: Vec<Failure>,
    pub wall_time_ms: u64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports always serialize")
    }
}

pub fn run_suite(id: SuiteId, budget: &Budget) -> Result<SuiteReport, VerifyError> {
    budget.validate()?;
    let start = Instant::now();
    let ctx = Ctx {
        id,
        budget: budget.clone(),
        deadline: budget.time_limit_ms.map(|ms| start + Duration::from_millis(ms)),
    };
    let (cases_run, failures) = suites::run(&ctx)?;
    Ok(SuiteReport {
        suite: id,
        cases_run,
        failures,
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}

/// Runs every suite, each at its own [`Budget::for_suite`] scale with the
/// given seed, corpus size and time limit.
pub fn run_all(seed: u64, corpus_size: usize, time_limit_ms: Option<u64>) -> Result<Vec<SuiteReport>, VerifyError> {
    SuiteId::ALL
        .into_iter()
        .map(|id| {
            let budget = Budget {
                seed,
                corpus_size,
                time_limit_ms,
                ..Budget::for_suite(id)
            };
            run_suite(id, &budget)
        })
        .collect()
}

pub(crate) struct Ctx {
    id: SuiteId,
    budget: Budget,
    deadline: Option<Instant>,
}

impl Ctx {
    fn failure(&self, inputs: String, expected: impl ToString, actual: impl ToString) -> Failure {
        Failure {
            inputs,
            expected: expected.to_string(),
            actual: actual.to_string(),
            citation: self.id.citation().to_string(),
        }
    }

    /// Checks every case on a pool of scoped threads; failures come back in
    /// case order.
    fn run_cases<T, F>(&self, cases: &[T], check: F) -> Result<(u64, Vec<Failure>), VerifyError>
    where
        T: Sync,
        F: Fn(usize, &T) -> Vec<Failure> + Sync,
    {
        let workers = std::thread::available_parallelism()
            .map_or(1, |n| n.get())
            .min(cases.len())
            .max(1);
        let next = AtomicUsize::new(0);
        let timed_out = AtomicBool::new(false);
        let mut results: Vec<(usize, Vec<Failure>)> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|_| {
                    scope.spawn(|| {
                        let mut out = Vec::new();
                        loop {
                            let i = next.fetch_add(1, Ordering::Relaxed);
                            if i >= cases.len() || timed_out.load(Ordering::Relaxed) {
                                break;
                            }
                            if self.deadline.is_some_and(|d| Instant::now() > d) {
                                timed_out.store(true, Ordering::Relaxed);
                                break;
                            }
                            out.push((i, check(i, &cases[i])));
                        }
                        out
                    })
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("suite worker panicked"))
                .collect()
        });
        if timed_out.load(Ordering::Relaxed) {
            return Err(VerifyError::TimeBudget(self.budget.time_limit_ms.unwrap_or(0)));
        }
        results.sort_by_key(|(i, _)| *i);
        Ok((cases.len() as u64, results.into_iter().flat_map(|(_, f)| f).collect()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for id in SuiteId::ALL {
            assert_eq!(id.name().parse::<SuiteId>().unwrap(), id);
            assert_eq!(serde_json::to_string(&id).unwrap(), format!("\"{}\"", id.name()));
        }
        assert!(matches!("nope".parse::<SuiteId>(), Err(VerifyError::UnknownSuite(_))));
    }

    #[test]
    fn budgets_are_validated() {
        let bad = Budget {
            corpus_size: 0,
            ..Budget::default()
        };
        assert!(matches!(run_suite(SuiteId::Lemma00, &bad), Err(VerifyError::InvalidBudget(_))));
    }

    #[test]
    fn report_json_round_trip() {
        let r = SuiteReport {
            suite: SuiteId::Weisman,
            cases_run: 3,
            failures: vec![Failure {
                inputs: "p=2".into(),
                expected: "0".into(),
                actual: "2".into(),
                citation: SuiteId::Weisman.citation().into(),
            }],
            wall_time_ms: 5,
        };
        let back: SuiteReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(!back.passed());
    }
}
