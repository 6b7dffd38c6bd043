use std::fmt::Write as _;
use std::time::Instant;

use kchain_core::degeneracy::{count_enumerate_with_workers, count_modular_with_workers};
use kchain_core::dense::Matrix;
use kchain_core::spectral::sample_schedule;
use kchain_core::verify::{self, VerifyConfig};
use kchain_core::{
    build_dense, count_recurrence, dominant_root, identity_check, kernel_basis,
    per_site_sequence, pisot_check, Error, LatticeSpec, Method,
};
use serde_json::{json, Value};

use crate::record::{sig15, OutputRecord};

pub const DEFAULT_TOLERANCE: f64 = 1e-12;

/// A finished command: its record, a human-readable rendering and whether
/// every check it performed passed.
pub struct Outcome {
    pub record: OutputRecord,
    pub text: String,
    pub csv: Option<String>,
    pub passed: bool,
}

impl Outcome {
    fn new(record: OutputRecord, text: String, passed: bool) -> Self {
        Self {
            record,
            text,
            csv: None,
            passed,
        }
    }
}

pub enum MethodChoice {
    One(Method),
    All,
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_secs_f64() * 1e3)
}

fn applicable(method: Method, spec: &LatticeSpec) -> bool {
    match method {
        Method::Enumerate => spec.sites() <= kchain_core::model::MAX_INDEXED_SITES,
        Method::Recurrence => true,
        Method::Modular => {
            spec.window() == 2
                && (2..=kchain_core::degeneracy::MODULAR_MAX_SITES).contains(&spec.sites())
        }
    }
}

fn run_method(method: Method, spec: &LatticeSpec, workers: usize) -> Result<String, Error> {
    let result = match method {
        Method::Enumerate => count_enumerate_with_workers(spec, workers)?,
        Method::Recurrence => count_recurrence(spec.sites(), spec.window())?,
        Method::Modular => count_modular_with_workers(spec.sites(), spec.window(), workers)?,
    };
    Ok(result.count.to_string())
}

pub fn degeneracy(n: u32, k: u32, choice: MethodChoice, workers: usize) -> Result<Outcome, Error> {
    let spec = LatticeSpec::new(n, k)?;
    let methods: Vec<Method> = match choice {
        MethodChoice::One(m) => vec![m],
        MethodChoice::All => Method::ALL
            .into_iter()
            .filter(|m| applicable(*m, &spec))
            .collect(),
    };
    let method_name = match choice {
        MethodChoice::One(m) => m.as_str(),
        MethodChoice::All => "all",
    };

    let mut record = OutputRecord::new("degeneracy")
        .param("sites", n)
        .param("window", k)
        .param("method", method_name);
    let mut counts = Vec::new();
    let mut per_method = serde_json::Map::new();
    let mut total_ms = 0.0;
    for method in &methods {
        let (count, ms) = timed(|| run_method(*method, &spec, workers));
        let count = count?;
        total_ms += ms;
        per_method.insert(
            method.as_str().into(),
            json!({ "count": count, "timing_ms": ms }),
        );
        record
            .exact_values
            .insert(format!("count_{}", method.as_str()), count.clone());
        counts.push((*method, count));
    }
    let agreement = counts.windows(2).all(|w| w[0].1 == w[1].1);
    let count = counts[0].1.clone();
    record.exact_values.insert("count".into(), count.clone());
    record.results = json!({
        "count": count,
        "digits": count.len(),
        "methods": Value::Object(per_method),
        "agreement": agreement,
    });
    record.timing_ms = total_ms;

    let mut text = format!("sites {n}, window {k}\n");
    for (method, c) in &counts {
        writeln!(text, "  {:<11} {c}", method.as_str()).unwrap();
    }
    writeln!(text, "count     {count}").unwrap();
    writeln!(text, "agreement {agreement}").unwrap();
    Ok(Outcome::new(record, text, agreement))
}

pub fn kernel_basis_cmd(n: u32, k: u32, limit: usize) -> Result<Outcome, Error> {
    let spec = LatticeSpec::new(n, k)?;
    let (states, ms) = timed(|| -> Result<Vec<String>, Error> {
        Ok(kernel_basis(&spec, limit)?.map(|s| s.to_string()).collect())
    });
    let states = states?;
    let total = count_recurrence(n, k)?.count;
    let truncated = num_bigint::BigUint::from(states.len()) < total;

    let mut record = OutputRecord::new("kernel-basis")
        .param("sites", n)
        .param("window", k)
        .param("limit", limit);
    record.results = json!({
        "states": states,
        "returned": states.len(),
        "total": total.to_string(),
        "truncated": truncated,
    });
    record.exact_values.insert("total".into(), total.to_string());
    record.timing_ms = ms;

    let mut text = states.join(",");
    text.push('\n');
    if truncated {
        writeln!(text, "truncated: showing {} of {total} states", states.len()).unwrap();
    }
    Ok(Outcome::new(record, text, true))
}

pub fn pisot(k_min: u32, k_max: u32, tol: f64) -> Result<Outcome, Error> {
    if k_min > k_max {
        return Err(Error::Domain(format!("k-min {k_min} exceeds k-max {k_max}")));
    }
    let (reports, ms) = timed(|| (k_min..=k_max).map(|k| pisot_check(k, tol)).collect::<Result<Vec<_>, _>>());
    let reports = reports?;
    let all_pisot = reports.iter().all(|r| r.is_pisot);
    let increasing = reports
        .windows(2)
        .all(|w| w[0].dominant_root < w[1].dominant_root);

    let rows: Vec<Value> = reports
        .iter()
        .map(|r| {
            json!({
                "k": r.k,
                "dominant_root": r.dominant_root,
                "max_conjugate_modulus": r.max_conjugate_modulus,
                "root_error_bound": r.root_error_bound,
                "roots_outside_unit_disk": r.roots_outside_unit_disk,
                "is_pisot": r.is_pisot,
                "conjugates": r.conjugates.iter().map(|z| json!([z.re, z.im])).collect::<Vec<_>>(),
            })
        })
        .collect();
    let mut record = OutputRecord::new("pisot")
        .param("k_min", k_min)
        .param("k_max", k_max)
        .param("tolerance", tol);
    record.results = json!({
        "rows": rows,
        "all_pisot": all_pisot,
        "dominant_increasing": increasing,
    });
    record.timing_ms = ms;

    let mut text = format!(
        "{:>3}  {:<18} {:<18} {:<10} {}\n",
        "k", "dominant", "max |conjugate|", "bound", "pisot"
    );
    for r in &reports {
        writeln!(
            text,
            "{:>3}  {:<18} {:<18} {:<10.2e} {}",
            r.k,
            sig15(r.dominant_root),
            sig15(r.max_conjugate_modulus),
            r.root_error_bound,
            r.is_pisot
        )
        .unwrap();
    }
    writeln!(text, "all pisot: {all_pisot}, dominant increasing: {increasing}").unwrap();
    Ok(Outcome::new(record, text, all_pisot && increasing))
}

pub fn converge(k: u32, n_max: u32, samples: usize) -> Result<Outcome, Error> {
    let ns = sample_schedule(n_max, samples)?;
    let (computed, ms) = timed(|| -> Result<_, Error> {
        Ok((per_site_sequence(k, &ns)?, dominant_root(k, 1e-13)?))
    });
    let (points, reference) = computed?;
    let counts = kchain_core::recurrence_sequence(k, n_max as usize)?;

    let mut record = OutputRecord::new("converge")
        .param("window", k)
        .param("n_max", n_max)
        .param("samples", samples);
    let rows: Vec<Value> = points
        .iter()
        .map(|p| {
            json!({
                "n": p.n,
                "count": counts[p.n as usize].to_string(),
                "per_site": p.per_site,
                "gap": p.gap,
            })
        })
        .collect();
    for p in &points {
        record
            .exact_values
            .insert(format!("count_{}", p.n), counts[p.n as usize].to_string());
    }
    let final_gap = points.last().map(|p| p.gap).unwrap_or(f64::NAN);
    record.results = json!({
        "dominant_root": reference,
        "points": rows,
        "final_gap": final_gap,
    });
    record.timing_ms = ms;

    let mut text = format!("dominant root {}\n", sig15(reference));
    writeln!(text, "{:>6}  {:<18} {}", "n", "per-site", "gap").unwrap();
    for p in &points {
        writeln!(text, "{:>6}  {:<18} {}", p.n, sig15(p.per_site), sig15(p.gap)).unwrap();
    }

    let mut writer = csv::Writer::from_writer(Vec::new());
    let csv = (|| -> csv::Result<String> {
        writer.write_record(["n", "count", "per_site", "gap", "dominant_root"])?;
        for p in &points {
            writer.write_record([
                p.n.to_string(),
                counts[p.n as usize].to_string(),
                sig15(p.per_site),
                sig15(p.gap),
                sig15(reference),
            ])?;
        }
        let bytes = writer.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv is utf-8"))
    })()
    .map_err(|e| Error::Contract(format!("csv encoding failed: {e}")))?;

    let mut outcome = Outcome::new(record, text, true);
    outcome.csv = Some(csv);
    Ok(outcome)
}

pub fn identity(n_min: u32, n_max: u32) -> Result<Outcome, Error> {
    if n_min > n_max {
        return Err(Error::Domain(format!("sites {n_min} exceeds sites-max {n_max}")));
    }
    let (reports, ms) = timed(|| (n_min..=n_max).map(identity_check).collect::<Result<Vec<_>, _>>());
    let reports = reports?;
    let holds = reports.iter().all(|r| r.holds);

    let mut record = OutputRecord::new("identity")
        .param("sites", n_min)
        .param("sites_max", n_max);
    let rows: Vec<Value> = reports
        .iter()
        .map(|r| json!({ "n": r.n, "lhs": r.lhs.to_string(), "rhs": r.rhs.to_string(), "holds": r.holds }))
        .collect();
    for r in &reports {
        record.exact_values.insert(format!("lhs_{}", r.n), r.lhs.to_string());
        record.exact_values.insert(format!("rhs_{}", r.n), r.rhs.to_string());
    }
    record.results = json!({ "rows": rows, "holds": holds });
    record.timing_ms = ms;

    let mut text = String::new();
    for r in &reports {
        writeln!(text, "n={:<4} {} = {}  {}", r.n, r.lhs, r.rhs, if r.holds { "ok" } else { "FAIL" })
            .unwrap();
    }
    Ok(Outcome::new(record, text, holds))
}

pub fn verify_cmd(
    dense: u32,
    cross: u32,
    workers: usize,
    fault: Option<Vec<i32>>,
) -> Result<Outcome, Error> {
    let config = VerifyConfig {
        dense_max_sites: dense,
        cross_max_sites: cross,
        workers,
        local_override: fault.as_deref().map(Matrix::from_diagonal),
        ..VerifyConfig::default()
    };
    let (report, ms) = timed(|| verify::run(&config));
    let report = report?;
    let passed = report.passed();

    let mut record = OutputRecord::new("verify")
        .param("dense", dense)
        .param("cross", cross)
        .param("identity", config.identity_max_sites);
    if let Some(fault) = &fault {
        record = record.param("fault_local_diagonal", json!(fault));
    }
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| {
            json!({
                "name": c.name,
                "claim": c.claim,
                "passed": c.passed,
                "cases": c.cases,
                "failures": c.failures,
                "timing_ms": c.timing_ms,
            })
        })
        .collect();
    record.results = json!({ "checks": checks, "passed": passed });
    record.timing_ms = ms;

    let mut text = String::new();
    for c in &report.checks {
        writeln!(
            text,
            "{:<5} {:<18} {:>6} cases {:>10.1} ms  {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.cases,
            c.timing_ms,
            c.claim
        )
        .unwrap();
        for f in &c.failures {
            writeln!(text, "        violated: {f}").unwrap();
        }
    }
    writeln!(text, "{}", if passed { "all checks passed" } else { "verification FAILED" }).unwrap();
    Ok(Outcome::new(record, text, passed))
}

pub fn dense_dump(n: u32, k: u32) -> Result<Outcome, Error> {
    let spec = LatticeSpec::new(n, k)?;
    let (h, ms) = timed(|| build_dense(&spec));
    let h = h?;
    let diagonal = h.dump_diagonal();
    let mut record = OutputRecord::new("dense-dump")
        .param("sites", n)
        .param("window", k);
    record.results = json!({ "dimension": h.dimension(), "diagonal": diagonal });
    record.timing_ms = ms;
    Ok(Outcome::new(record, format!("{diagonal}\n"), true))
}
