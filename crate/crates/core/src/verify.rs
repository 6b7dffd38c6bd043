//! Cross-checking suite: dense oracle, counting methods and the zero-row
//! identity, each reported as a named check.

use std::time::Instant;

use num_bigint::BigUint;
use num_traits::One;

use crate::degeneracy::{
    count_enumerate_with_workers, count_modular_with_workers, count_recurrence, identity_check,
    recurrence_sequence,
};
use crate::dense::{
    build_dense, build_dense_from_local, check_structure, kernel_vs_image, Matrix,
    DENSE_MAX_SITES,
};
use crate::error::{Error, Result};
use crate::model::{energy_of_index, LatticeSpec};

pub const CROSS_MAX_SITES: u32 = 24;
pub const IDENTITY_MAX_SITES: u32 = 60;
const KSTEP_MAX_ORDER: u32 = 8;
const KSTEP_MAX_SITES: usize = 40;

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub dense_max_sites: u32,
    pub cross_max_sites: u32,
    pub identity_max_sites: u32,
    pub workers: usize,
    /// Replaces the all-ones projector in the dense checks whose window
    /// matches its size (negative control).
    pub local_override: Option<Matrix>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            dense_max_sites: 10,
            cross_max_sites: 20,
            identity_max_sites: IDENTITY_MAX_SITES,
            workers: crate::degeneracy::default_workers(),
            local_override: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    /// The property the check certifies.
    pub claim: &'static str,
    pub passed: bool,
    pub cases: usize,
    /// First few violations, empty when the check passed.
    pub failures: Vec<String>,
    pub timing_ms: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

const MAX_REPORTED_FAILURES: usize = 8;

struct Tally {
    cases: usize,
    failures: Vec<String>,
    failed: usize,
}

impl Tally {
    fn new() -> Self {
        Self {
            cases: 0,
            failures: Vec::new(),
            failed: 0,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_REPORTED_FAILURES {
                self.failures.push(describe());
            }
        }
    }

    fn finish(self, name: &'static str, claim: &'static str, timing_ms: f64) -> CheckOutcome {
        CheckOutcome {
            name,
            claim,
            passed: self.failed == 0,
            cases: self.cases,
            failures: self.failures,
            timing_ms,
        }
    }
}

fn run_check(
    name: &'static str,
    claim: &'static str,
    body: impl FnOnce(&mut Tally) -> Result<()>,
) -> Result<CheckOutcome> {
    let start = Instant::now();
    let mut tally = Tally::new();
    body(&mut tally)?;
    Ok(tally.finish(name, claim, start.elapsed().as_secs_f64() * 1e3))
}

pub fn run(config: &VerifyConfig) -> Result<VerifyReport> {
    if config.dense_max_sites > DENSE_MAX_SITES {
        return Err(Error::Capacity {
            method: "verify dense",
            cap: format!("n <= {DENSE_MAX_SITES}"),
            requested: format!("n = {}", config.dense_max_sites),
            hint: "lower --dense",
        });
    }
    if config.cross_max_sites > CROSS_MAX_SITES {
        return Err(Error::Capacity {
            method: "verify cross",
            cap: format!("n <= {CROSS_MAX_SITES}"),
            requested: format!("n = {}", config.cross_max_sites),
            hint: "lower --cross",
        });
    }

    let dense_specs: Vec<LatticeSpec> = (0..=config.dense_max_sites)
        .flat_map(|n| (2..=n.max(2)).map(move |k| LatticeSpec::new(n, k)))
        .collect::<Result<_>>()?;
    let build = |spec: &LatticeSpec| match &config.local_override {
        Some(local) if local.rows() == 1 << spec.window() => {
            build_dense_from_local(spec.sites(), local)
        }
        _ => build_dense(spec),
    };

    // One pass builds each dense matrix once and feeds all three checks.
    let mut structure = Tally::new();
    let mut energy = Tally::new();
    let mut kernel = Tally::new();
    let mut elapsed = [0.0_f64; 3];
    for spec in &dense_specs {
        let (n, k) = (spec.sites(), spec.window());

        let start = Instant::now();
        let h = build(spec)?;
        let report = check_structure(&h);
        structure.record(report.all(), || format!("n={n} k={k}: {report:?}"));
        elapsed[0] += start.elapsed().as_secs_f64() * 1e3;

        let start = Instant::now();
        let mismatch = h
            .diagonal()
            .into_iter()
            .enumerate()
            .find(|&(s, d)| i64::from(d) != i64::from(energy_of_index(s as u64, k)));
        energy.record(mismatch.is_none(), || {
            let (s, d) = mismatch.expect("mismatch recorded");
            format!(
                "n={n} k={k}: H[{s}][{s}] = {d}, window count {}",
                energy_of_index(s as u64, k)
            )
        });
        elapsed[1] += start.elapsed().as_secs_f64() * 1e3;

        let start = Instant::now();
        let report = kernel_vs_image(&h);
        let counted = count_enumerate_with_workers(spec, config.workers)?.count;
        let ok = BigUint::from(report.dim_ker) == counted && report.orthogonal && report.complete;
        kernel.record(ok, || {
            format!(
                "n={n} k={k}: dim ker {} vs count {counted}, orthogonal {}, complete {}",
                report.dim_ker, report.orthogonal, report.complete
            )
        });
        elapsed[2] += start.elapsed().as_secs_f64() * 1e3;
    }

    let mut checks = vec![
        structure.finish(
            "dense-structure",
            "the Hamiltonian is diagonal, symmetric, Hermitian and non-negative",
            elapsed[0],
        ),
        energy.finish(
            "dense-energy",
            "each diagonal entry equals the number of all-ones windows of its basis state",
            elapsed[1],
        ),
        kernel.finish(
            "dense-kernel",
            "dim ker H equals the ground-state count, and ker H is the orthogonal complement of im H",
            elapsed[2],
        ),
    ];

    checks.push(run_check(
        "cross-method",
        "enumeration, modular rows and the Fibonacci recurrence give the same degeneracy",
        |t| {
            for n in 2..=config.cross_max_sites {
                let spec = LatticeSpec::new(n, 2)?;
                let enumerated = count_enumerate_with_workers(&spec, config.workers)?.count;
                let modular = count_modular_with_workers(n, 2, config.workers)?.count;
                let recurrence = count_recurrence(n, 2)?.count;
                t.record(enumerated == modular && modular == recurrence, || {
                    format!("n={n}: enumerate {enumerated}, modular {modular}, recurrence {recurrence}")
                });
            }
            for k in 3..=KSTEP_MAX_ORDER {
                for n in 0..=config.cross_max_sites.min(20) {
                    let spec = LatticeSpec::new(n, k)?;
                    let enumerated = count_enumerate_with_workers(&spec, config.workers)?.count;
                    let recurrence = count_recurrence(n, k)?.count;
                    t.record(enumerated == recurrence, || {
                        format!("n={n} k={k}: enumerate {enumerated}, recurrence {recurrence}")
                    });
                }
            }
            Ok(())
        },
    )?);

    checks.push(run_check(
        "k-step-recurrence",
        "a k-site window chain has 2^k - 1 ground states at n = k and obeys the k-step recurrence",
        |t| {
            for k in 2..=KSTEP_MAX_ORDER {
                let seq = recurrence_sequence(k, KSTEP_MAX_SITES)?;
                let checkpoint = (BigUint::one() << k) - 1u32;
                t.record(seq[k as usize] == checkpoint, || {
                    format!("k={k}: S_k = {}, expected {checkpoint}", seq[k as usize])
                });
                for n in k as usize..=KSTEP_MAX_SITES {
                    let sum: BigUint = seq[n - k as usize..n].iter().sum();
                    t.record(seq[n] == sum, || format!("k={k} n={n}: {} != {sum}", seq[n]));
                }
            }
            Ok(())
        },
    )?);

    checks.push(run_check(
        "zero-row-identity",
        "F_{n+1} = 2^n - sum_j 2^{n-2-j} F_j for the pair chain",
        |t| {
            for n in 2..=config.identity_max_sites {
                let report = identity_check(n)?;
                t.record(report.holds, || {
                    format!("n={n}: lhs {} rhs {}", report.lhs, report.rhs)
                });
            }
            Ok(())
        },
    )?);

    Ok(VerifyReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_suite_passes() {
        let report = run(&VerifyConfig {
            dense_max_sites: 6,
            cross_max_sites: 12,
            ..VerifyConfig::default()
        })
        .unwrap();
        for check in &report.checks {
            assert!(check.passed, "{}: {:?}", check.name, check.failures);
            assert!(check.cases > 0);
        }
        assert!(report.passed());
    }

    #[test]
    fn injected_fault_is_caught() {
        let report = run(&VerifyConfig {
            dense_max_sites: 5,
            cross_max_sites: 6,
            local_override: Some(Matrix::from_diagonal(&[0, 0, 1, 0])),
            ..VerifyConfig::default()
        })
        .unwrap();
        assert!(!report.passed());
        let failed: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name)
            .collect();
        assert_eq!(failed, ["dense-energy", "dense-kernel"]);
    }

    #[test]
    fn caps_are_enforced() {
        let too_dense = VerifyConfig {
            dense_max_sites: 13,
            ..VerifyConfig::default()
        };
        assert!(matches!(run(&too_dense), Err(Error::Capacity { .. })));
        let too_cross = VerifyConfig {
            cross_max_sites: 25,
            ..VerifyConfig::default()
        };
        assert!(matches!(run(&too_cross), Err(Error::Capacity { .. })));
    }
}
