//! Acceptance criteria, one PASS/FAIL line each. Every check compares the
//! library against oracles computed here with nalgebra.

mod common;

use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use walkmatch::quantum::{li_set, CMatrix};
use walkmatch::verifier::{run_matched_observed, MatchTolerances};
use walkmatch::{
    generate_instance, BuildConfig, Graph, Instance, ProbabilityVector, ScheduleMode,
    StochasticSchedule, TransitionMatrix,
};

const HORIZON: usize = 25;
const ENSEMBLE: u64 = 240;
const DENSE_LIMIT: usize = 512;

/// Worst residuals of one or more audited runs.
#[derive(Debug, Default)]
struct Audit {
    instances: usize,
    deviation: f64,
    unitarity: f64,
    shift_involution: bool,
    closed_form: f64,
    oracle: f64,
    oracle_instances: usize,
    identity_blocks: usize,
    reports_passed: usize,
    elapsed: Duration,
}

impl Audit {
    fn new() -> Self {
        Self {
            shift_involution: true,
            ..Self::default()
        }
    }

    fn merge(&mut self, o: Audit) {
        self.instances += o.instances;
        self.deviation = self.deviation.max(o.deviation);
        self.unitarity = self.unitarity.max(o.unitarity);
        self.shift_involution &= o.shift_involution;
        self.closed_form = self.closed_form.max(o.closed_form);
        self.oracle = self.oracle.max(o.oracle);
        self.oracle_instances += o.oracle_instances;
        self.identity_blocks += o.identity_blocks;
        self.reports_passed += o.reports_passed;
        self.elapsed += o.elapsed;
    }
}

fn is_identity(b: &CMatrix) -> bool {
    (0..b.rows()).all(|i| (0..b.cols()).all(|j| b[(i, j)] == Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0)))
}

/// Runs one instance for `horizon` steps and checks every step independently.
fn audit(inst: &Instance, horizon: usize) -> Audit {
    let g = &inst.graph;
    let m = g.dimension();
    let use_dense = m <= DENSE_LIMIT;
    let shift = if use_dense { Some(shift_oracle(g)) } else { None };
    let mut a = Audit::new();
    a.instances = 1;
    if use_dense {
        a.oracle_instances = 1;
    }
    let mut pi = inst.initial.as_slice().to_vec();
    let start = Instant::now();
    a.deviation = max_abs_diff(&mu(g, walkmatch::quantum::initial_state(g, &inst.initial).amplitudes()), &pi);

    let report = run_matched_observed(
        g,
        &inst.schedule,
        &inst.initial,
        horizon,
        &BuildConfig::default(),
        MatchTolerances::default(),
        |walk, rec| {
            let after = walk.state().amplitudes();

            let closed = closed_form_oracle(g, &rec.matrix, &pi);
            a.closed_form = a.closed_form.max(
                after.iter().zip(&closed).map(|(z, c)| (z - Complex64::new(*c, 0.0)).norm()).fold(0.0, f64::max),
            );

            pi = classical_oracle(&rec.matrix, &pi);
            a.deviation = a.deviation.max(max_abs_diff(&mu(g, after), &pi));

            for (v, b) in rec.coin.blocks().iter().enumerate() {
                a.unitarity = a.unitarity.max(unitarity_residual(&to_nalgebra(b)));
                if rec.pi_before[v] == 0.0 && is_identity(b) {
                    a.identity_blocks += 1;
                }
            }
            let s = walk.shift();
            a.shift_involution &= s.is_permutation() && (0..s.len()).all(|i| s.image(s.image(i)) == i);

            if let Some(dense_s) = &shift {
                let w = coin_oracle(g, rec.coin.blocks());
                let psi = DVector::from_column_slice(rec.psi_before.amplitudes());
                let expected = dense_s * (w * psi);
                a.oracle = a.oracle.max(
                    expected.iter().zip(after).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max),
                );
            }
        },
    )
    .expect("instance is valid");
    a.elapsed = start.elapsed();
    if report.passed {
        a.reports_passed = 1;
    }
    a
}

fn ensemble() -> Audit {
    let mut total = Audit::new();
    for seed in 0..ENSEMBLE {
        let n = 2 + (seed % 19) as usize;
        let mode = if seed % 2 == 0 { ScheduleMode::Homogeneous } else { ScheduleMode::Nonhomogeneous };
        total.merge(audit(&generate_instance(seed, n, mode).unwrap(), HORIZON));
    }
    total
}

fn degenerate_ensemble() -> Audit {
    let mut total = Audit::new();
    for seed in 0..60u64 {
        let n = 2 + (seed % 19) as usize;
        let mode = if seed % 2 == 0 { ScheduleMode::Homogeneous } else { ScheduleMode::Nonhomogeneous };
        let mut inst = generate_instance(1000 + seed, n, mode).unwrap();
        inst.initial = ProbabilityVector::point_mass(n, seed as usize % n);
        total.merge(audit(&inst, HORIZON));
    }
    // deterministic rotation: p_{u+1,u} = 1 keeps the mass a point forever
    for n in 3..=12 {
        let edges: Vec<_> = (0..n).map(|u| (u, (u + 1) % n)).collect();
        let g = Graph::from_edges(&edges).unwrap();
        let p = TransitionMatrix::from_weights(&g, |from, to| if to == (from + 1) % n { 1.0 } else { 0.0 });
        let inst = Instance::new(g, StochasticSchedule::Homogeneous(p), ProbabilityVector::point_mass(n, 0));
        total.merge(audit(&inst, HORIZON));
    }
    total
}

struct Line {
    name: &'static str,
    passed: bool,
    detail: String,
}

fn criterion_matching(e: &Audit) -> Line {
    Line {
        name: "matching over seeded ensemble",
        passed: e.instances >= 200
            && e.deviation <= 1e-9
            && e.reports_passed == e.instances
            && e.elapsed < Duration::from_secs(60),
        detail: format!(
            "{} instances, max |mu - pi| = {:.3e} (tol 1e-9), {} reports passed, {:.2?}",
            e.instances, e.deviation, e.reports_passed, e.elapsed
        ),
    }
}

fn criterion_unitarity(e: &Audit) -> Line {
    Line {
        name: "coin unitarity and shift involution",
        passed: e.unitarity <= 1e-12 && e.shift_involution,
        detail: format!("max |W^H W - I|, |W W^H - I| = {:.3e} (tol 1e-12), S^2 = I: {}", e.unitarity, e.shift_involution),
    }
}

fn criterion_closed_form(e: &Audit) -> Line {
    Line {
        name: "closed-form state after every step",
        passed: e.closed_form <= 1e-10,
        detail: format!("max entry error {:.3e} (tol 1e-10)", e.closed_form),
    }
}

fn criterion_oracle(e: &Audit) -> Line {
    Line {
        name: "dense S W psi oracle",
        passed: e.oracle <= 1e-12 && e.oracle_instances == e.instances,
        detail: format!(
            "max entry error {:.3e} (tol 1e-12) over {} instances with dimension <= {DENSE_LIMIT}",
            e.oracle, e.oracle_instances
        ),
    }
}

fn criterion_convergence() -> Line {
    let start = Instant::now();
    let g = Graph::from_edges(&[(0, 1), (1, 2), (0, 2)]).unwrap();
    let inst = Instance::new(
        g.clone(),
        StochasticSchedule::Homogeneous(TransitionMatrix::uniform(&g)),
        ProbabilityVector::point_mass(3, 0),
    );
    let a = audit(&inst, 40);
    let elapsed = start.elapsed();
    let traj = walkmatch::evolve(&g, &inst.schedule, &inst.initial, 40).unwrap();
    let l1 = traj[40].l1_distance(&[1.0 / 3.0; 3]);
    Line {
        name: "complete-graph convergence fixture",
        passed: l1 <= 1e-6 && a.deviation <= 1e-9 && a.reports_passed == 1 && elapsed < Duration::from_secs(1),
        detail: format!(
            "L1 to uniform at t=40 = {l1:.3e} (tol 1e-6), max |mu - pi| = {:.3e} (tol 1e-9), {elapsed:.2?}",
            a.deviation
        ),
    }
}

fn criterion_rank() -> Line {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst = f64::INFINITY;
    let mut failures = 0;
    for i in 0..1000 {
        let d = 1 + i % 8;
        let mut a: Vec<Complex64> = (0..d)
            .map(|_| {
                if rng.gen_bool(0.25) {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
                }
            })
            .collect();
        if a.iter().all(|z| z.norm() == 0.0) {
            a[rng.gen_range(0..d)] = Complex64::new(1.0, 0.0);
        }
        let n = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        a.iter_mut().for_each(|z| *z /= n);
        let Ok(set) = li_set(&a, 1e-12) else {
            failures += 1;
            continue;
        };
        if set.len() != d {
            failures += 1;
            continue;
        }
        let m = DMatrix::from_fn(d, d, |r, c| {
            let n = set[c].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            set[c][r] / n
        });
        worst = worst.min(m.singular_values().iter().copied().fold(f64::INFINITY, f64::min));
    }
    Line {
        name: "li_set full rank on 1000 unit vectors",
        passed: failures == 0 && worst > 1e-8,
        detail: format!("smallest singular value {worst:.3e} (must exceed 1e-8), {failures} malformed sets"),
    }
}

fn criterion_degenerate(d: &Audit) -> Line {
    Line {
        name: "point-mass and deterministic instances",
        passed: d.deviation <= 1e-9
            && d.reports_passed == d.instances
            && d.unitarity <= 1e-12
            && d.shift_involution
            && d.closed_form <= 1e-10
            && d.oracle <= 1e-12
            && d.identity_blocks > 0,
        detail: format!(
            "{} instances, deviation {:.3e}, unitarity {:.3e}, closed form {:.3e}, oracle {:.3e}, {} identity coins on empty vertices",
            d.instances, d.deviation, d.unitarity, d.closed_form, d.oracle, d.identity_blocks
        ),
    }
}

fn read_tree(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(p) = stack.pop() {
        for entry in fs::read_dir(&p).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                let rel = path.strip_prefix(dir).unwrap().display().to_string();
                files.push((rel, fs::read(&path).unwrap()));
            }
        }
    }
    files.sort();
    files
}

fn criterion_cli() -> Line {
    let tmp = tempfile::TempDir::new().unwrap();
    let run = |name: &str| {
        let out = tmp.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_walkmatch"))
            .args(["--demo", "cycle4", "--steps", "10", "--out"])
            .arg(&out)
            .output()
            .unwrap()
            .status;
        (status.code(), read_tree(&out))
    };
    let (code_a, files_a) = run("a");
    let (code_b, files_b) = run("b");
    Line {
        name: "CLI determinism",
        passed: code_a == Some(0) && code_b == Some(0) && !files_a.is_empty() && files_a == files_b,
        detail: format!(
            "exit codes {code_a:?}/{code_b:?}, {} files, identical: {}",
            files_a.len(),
            files_a == files_b
        ),
    }
}

fn main() {
    let e = ensemble();
    let d = degenerate_ensemble();
    let lines = [
        criterion_matching(&e),
        criterion_unitarity(&e),
        criterion_closed_form(&e),
        criterion_oracle(&e),
        criterion_convergence(),
        criterion_rank(),
        criterion_degenerate(&d),
        criterion_cli(),
    ];
    println!();
    for (i, l) in lines.iter().enumerate() {
        println!("[{}] criterion {}: {} ({})", if l.passed { "PASS" } else { "FAIL" }, i + 1, l.name, l.detail);
    }
    let failed = lines.iter().filter(|l| !l.passed).count();
    println!("\nacceptance: {} passed, {failed} failed", lines.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
