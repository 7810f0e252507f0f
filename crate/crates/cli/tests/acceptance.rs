//! Acceptance suite. Each criterion prints one PASS/FAIL line, followed by
//! indented detail lines; the process exits non-zero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::process::Command;
use std::time::{Duration, Instant};

use num_complex::Complex64 as C64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use walk_core::analysis::{
    detect_drops, first_drop_scan, line_saturation, log_growth_fit, monotonicity_report, strict_growth_violations,
    transparency_grid, DROP_TOL,
};
use walk_core::models::lattice::{brute_force_lattice, lattice_trajectory, run_lattice};
use walk_core::models::line::{
    line_trajectory, reduced_density_matrix_line, run_line, CellLabel, Direction, SpinWindow,
};
use walk_core::models::tree::{path_amplitude, run_tree, tree_density_matrix, PathIndex, TreeParams, DEFAULT_DIMENSION_CAP};
use walk_core::numerics::{entropy_term, hermitian_eigenvalues, validate_density_matrix, von_neumann_entropy_of, CMatrix};

struct Report {
    id: &'static str,
    title: &'static str,
    pass: bool,
    details: Vec<String>,
}

impl Report {
    fn new(id: &'static str, title: &'static str) -> Self {
        Self { id, title, pass: true, details: Vec::new() }
    }

    fn check(&mut self, ok: bool, detail: impl Into<String>) {
        let detail = detail.into();
        self.pass &= ok;
        self.details.push(format!("{} {detail}", if ok { "ok  " } else { "FAIL" }));
    }

    fn timed(&mut self, elapsed: Duration, limit: Duration, what: &str) {
        self.check(elapsed < limit, format!("{what} took {elapsed:.2?} (limit {limit:?})"));
    }
}

const LINE_DROPS: [usize; 4] = [2, 7, 41, 55];

fn criterion_1() -> Report {
    let mut r = Report::new("1", "line walk T=0.4, all spins, 60 steps: drops include 2, 7, 41, 55");
    let start = Instant::now();
    let series = run_line(0.4, SpinWindow::All, 60).unwrap();
    let drops = detect_drops(&series.values, DROP_TOL).unwrap();
    r.timed(start.elapsed(), Duration::from_secs(1), "run + drop detection");
    r.check(LINE_DROPS.iter().all(|d| drops.contains(d)), format!("library drops {drops:?}"));

    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_walk"))
        .args(["line", "--T", "0.4", "--spins", "all", "--steps", "60"])
        .output()
        .unwrap();
    let elapsed = start.elapsed();
    let text = String::from_utf8_lossy(&out.stdout);
    let listed: BTreeSet<usize> = text
        .rsplit_once("drops ")
        .map(|(_, d)| d.trim().split(',').filter_map(|x| x.parse().ok()).collect())
        .unwrap_or_default();
    r.check(out.status.success() && LINE_DROPS.iter().all(|d| listed.contains(d)), format!("walk cli: {}", text.trim()));
    r.timed(elapsed, Duration::from_secs(1), "walk cli process");
    r
}

fn criterion_2() -> Report {
    let mut r = Report::new("2", "first drop vs T: 2 on [0.37,0.48], 3 on [0.60,0.69], 4 on [0.74,0.78]");
    let bands = [(0.37, 0.48, 2usize), (0.60, 0.69, 3), (0.74, 0.78, 4)];
    let grid = transparency_grid(0.30, 0.85, 0.01).unwrap();
    let start = Instant::now();
    let scan = first_drop_scan(&grid, 60).unwrap();
    r.timed(start.elapsed(), Duration::from_secs(10), "scan over 56 transparencies");
    for (lo, hi, want) in bands {
        // Endpoints included, which is stricter than the open interval.
        let inside: Vec<_> = scan.iter().filter(|p| p.transparency >= lo - 1e-9 && p.transparency <= hi + 1e-9).collect();
        let wrong: Vec<_> = inside.iter().filter(|p| p.first_drop != Some(want)).map(|p| (p.transparency, p.first_drop)).collect();
        r.check(!inside.is_empty() && wrong.is_empty(), format!("[{lo}, {hi}] -> {want}: {} points, mismatches {wrong:?}", inside.len()));
    }
    r
}

fn criterion_3() -> Report {
    let mut r = Report::new("3", "logarithmic growth of the criterion-1 series on tau in [10, 60]: r^2 > 0.9");
    let series = run_line(0.4, SpinWindow::All, 60).unwrap();
    let fit = log_growth_fit(&series.values, 10, 60).unwrap();
    r.check(fit.r_squared > 0.9, format!("S ~ {:.4} ln(tau) + {:.4}, r^2 = {:.5}", fit.slope, fit.intercept, fit.r_squared));
    r
}

fn criterion_4() -> Report {
    let mut r = Report::new("4", "line walk without spins stays pure: max |S| < 1e-12 over 50 steps");
    for t in [0.1, 0.4, 0.5, 0.9] {
        let s = run_line(t, SpinWindow::None, 50).unwrap();
        r.check(s.max_abs() < 1e-12, format!("T={t}: max |S| = {:e}", s.max_abs()));
    }
    r
}

fn criterion_5() -> Report {
    let mut r = Report::new("5", "finite windows 1/3/5/7 saturate at -(P_L ln P_L + P_R ln P_R) within 0.01; early segments equal all-spins");
    let all = run_line(0.4, SpinWindow::All, 200).unwrap();
    let start = Instant::now();
    for n in [1, 3, 5, 7] {
        let window = SpinWindow::Finite(n);
        let (series, est) = line_saturation(0.4, window, 200, 0.2).unwrap();
        r.check(
            est.discrepancy() < 0.01,
            format!(
                "n={n}: observed {:.5}, predicted {:.5} (P_L {:.5}, P_R {:.5}), |diff| {:.5}",
                est.observed,
                est.predicted,
                est.p_left,
                est.p_right,
                est.discrepancy()
            ),
        );
        r.check((est.p_left + est.p_right - 1.0).abs() < 1e-9, format!("n={n}: P_L + P_R - 1 = {:e}", est.p_left + est.p_right - 1.0));
        let until = window.last_resolving_step().unwrap();
        let worst = (0..=until).map(|tau| (series.values[tau] - all.values[tau]).abs()).fold(0.0, f64::max);
        r.check(worst < 1e-9, format!("n={n}: tau <= {until} matches all-spins, max |diff| {worst:e}"));
    }
    r.timed(start.elapsed(), Duration::from_secs(120), "four 200-step runs");
    r
}

fn criterion_6() -> Report {
    let mut r = Report::new("6", "tree entropy is monotone over the (Z, T, beta) grid for tau <= 10");
    let mut worst_drop = 0.0f64;
    let mut failures = Vec::new();
    for z in [2usize, 3] {
        for t in [0.2, 0.5, 0.8] {
            for beta in [0.0, 0.25, 0.5, 0.75, 0.9, 1.0] {
                let s = run_tree(&TreeParams::splitter(z, t, beta).unwrap(), 10).unwrap();
                let rep = monotonicity_report(&s.values, 1e-9).unwrap();
                worst_drop = s.values.windows(2).map(|w| w[0] - w[1]).fold(worst_drop, f64::max);
                if !rep.monotone {
                    failures.push((z, t, beta, rep.violations));
                }
                if beta == 1.0 {
                    r.check(s.max_abs() < 1e-10, format!("Z={z} T={t} beta=1: max |S| {:e}", s.max_abs()));
                }
            }
        }
    }
    r.check(failures.is_empty(), format!("36 series, drops {failures:?}, largest decrease {worst_drop:e}"));
    let s = run_tree(&TreeParams::binary(0.5, 0.0).unwrap(), 10).unwrap();
    let err = s.values.iter().enumerate().map(|(tau, v)| (v - tau as f64 * std::f64::consts::LN_2).abs()).fold(0.0, f64::max);
    r.check(err < 1e-9, format!("beta=0, T=0.5: max |S - tau ln 2| {err:e}"));
    r
}

fn criterion_7() -> Report {
    let mut r = Report::new("7", "lattice entropy strictly grows for tau >= 1 over 40 steps");
    let mut cases: Vec<(f64, f64)> = [0.1, 0.3, 0.5, 0.7, 0.9].iter().map(|&b| (0.5, b)).collect();
    cases.extend([0.2, 0.4, 0.6, 0.8].iter().map(|&t| (t, 0.9)));
    let start = Instant::now();
    for (t, beta) in cases {
        let s = run_lattice(t, beta, 40).unwrap();
        let bad = strict_growth_violations(&s.values, 1, 1e-12).unwrap();
        let min_inc = s.values[1..].windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
        r.check(bad.is_empty(), format!("T={t} beta={beta}: smallest increment {min_inc:.3e}, violations {bad:?}"));
    }
    r.timed(start.elapsed(), Duration::from_secs(10), "nine 40-step runs");
    r
}

/// Line-walk amplitudes by explicit enumeration of transmit/reflect sequences.
fn line_paths(t_prob: f64, tau: usize) -> BTreeMap<(i64, bool), C64> {
    let (t, rr) = (C64::new(t_prob.sqrt(), 0.0), C64::new(0.0, (1.0 - t_prob).sqrt()));
    let mut out = BTreeMap::new();
    for seq in 0u64..(1 << tau) {
        let (mut cell, mut right, mut amp) = (0i64, true, C64::new(1.0, 0.0));
        for k in 0..tau {
            if seq >> k & 1 == 0 {
                cell += if right { 1 } else { -1 };
                amp *= t;
            } else {
                right = !right;
                amp *= rr;
            }
        }
        *out.entry((cell, right)).or_insert(C64::new(0.0, 0.0)) += amp;
    }
    out
}

/// Tree density matrix from explicit per-edge spin states with a complex overlap.
fn tree_materialized(p: &TreeParams, tau: usize, alpha: C64) -> Vec<Vec<C64>> {
    let paths: Vec<PathIndex> = PathIndex::enumerate(p.outputs(), tau).collect();
    let edges: Vec<BTreeSet<Vec<u8>>> =
        paths.iter().map(|x| (1..=tau).map(|k| x.digits()[..k].to_vec()).collect()).collect();
    let amps: Vec<C64> = paths.iter().map(|x| path_amplitude(p, x).unwrap()).collect();
    let init = [C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
    let flipped = [alpha, C64::new((1.0 - alpha.norm_sqr()).sqrt(), 0.0)];
    let mut rho = vec![vec![C64::new(0.0, 0.0); paths.len()]; paths.len()];
    for a in 0..paths.len() {
        for b in 0..paths.len() {
            let mut overlap = C64::new(1.0, 0.0);
            for e in edges[a].union(&edges[b]) {
                let sa = if edges[a].contains(e) { flipped } else { init };
                let sb = if edges[b].contains(e) { flipped } else { init };
                overlap *= sb[0].conj() * sa[0] + sb[1].conj() * sa[1];
            }
            rho[a][b] = amps[a] * amps[b].conj() * overlap;
        }
    }
    rho
}

fn criterion_8() -> Report {
    let mut r = Report::new("8", "propagators agree with brute-force oracles (lattice 1e-10, line 1e-12, tree 1e-10)");
    let mut worst = 0.0f64;
    for t in [0.2, 0.5, 0.8] {
        for beta in [0.0, 0.3, 0.7, 1.0] {
            for s in lattice_trajectory(t, beta, 8).unwrap() {
                let bf = brute_force_lattice(t, beta, s.tau()).unwrap();
                let index: BTreeMap<CellLabel, usize> = s.rho().labels().iter().enumerate().map(|(i, l)| (*l, i)).collect();
                for (a, la) in bf.labels().iter().enumerate() {
                    for (b, lb) in bf.labels().iter().enumerate() {
                        let got = match (index.get(la), index.get(lb)) {
                            (Some(&i), Some(&j)) => s.rho().matrix()[(i, j)],
                            _ => C64::new(0.0, 0.0),
                        };
                        worst = worst.max((got - bf.matrix()[(a, b)]).norm());
                    }
                }
            }
        }
    }
    r.check(worst < 1e-10, format!("lattice, 12 (T, beta) points, tau <= 8: max |d rho| {worst:e}"));

    let mut worst = 0.0f64;
    for t in [0.2, 0.4, 0.5, 0.8] {
        for s in line_trajectory(t, SpinWindow::All, 10).unwrap() {
            let oracle = line_paths(t, s.tau());
            for (&(cell, right), &a) in &oracle {
                let l = CellLabel::new(cell, if right { Direction::Right } else { Direction::Left });
                worst = worst.max((s.amplitude(l, 0) - a).norm());
            }
        }
    }
    r.check(worst < 1e-12, format!("line amplitudes, tau <= 10: max |d a| {worst:e}"));

    let mut worst = 0.0f64;
    for (z, tau_max) in [(2usize, 6usize), (3, 4)] {
        for t in [0.2, 0.5, 0.8] {
            for beta in [0.0f64, 0.4, 0.9, 1.0] {
                let p = TreeParams::splitter(z, t, beta).unwrap();
                for tau in 0..=tau_max {
                    let rho = tree_density_matrix(&p, tau, DEFAULT_DIMENSION_CAP).unwrap();
                    let oracle = tree_materialized(&p, tau, C64::from_polar(beta.sqrt(), 0.7));
                    for (a, row) in oracle.iter().enumerate() {
                        for (b, v) in row.iter().enumerate() {
                            worst = worst.max((rho.matrix()[(a, b)] - v).norm());
                        }
                    }
                }
            }
        }
    }
    r.check(worst < 1e-10, format!("tree density matrix vs spin-record materialization, tau <= 6: max |d rho| {worst:e}"));
    r
}

fn criterion_9() -> Report {
    let mut r = Report::new("9", "invariants: valid density matrices, norm, parity, full phase breaking = persistent walk");
    let mut invalid = 0usize;
    let mut checked = 0usize;
    let (mut norm_err, mut parity_bad) = (0.0f64, 0usize);
    for window in [SpinWindow::None, SpinWindow::All, SpinWindow::Finite(1), SpinWindow::Finite(3), SpinWindow::Finite(7)] {
        for t in [0.2, 0.4, 0.8] {
            for s in line_trajectory(t, window, 60).unwrap() {
                checked += 1;
                invalid += usize::from(!validate_density_matrix(&reduced_density_matrix_line(&s)).is_empty());
                norm_err = norm_err.max((s.norm_sqr() - 1.0).abs());
                parity_bad += s.invariant_violations().len();
            }
        }
    }
    for t in [0.2, 0.5, 0.8] {
        for beta in [0.0, 0.3, 0.7, 1.0] {
            for s in lattice_trajectory(t, beta, 40).unwrap() {
                checked += 1;
                invalid += usize::from(!validate_density_matrix(s.rho()).is_empty());
                parity_bad += s.invariant_violations().len();
            }
        }
    }
    for z in [2usize, 3] {
        for beta in [0.0, 0.5, 1.0] {
            let p = TreeParams::splitter(z, 0.4, beta).unwrap();
            for tau in 0..=(if z == 2 { 8 } else { 5 }) {
                checked += 1;
                invalid += usize::from(!validate_density_matrix(&tree_density_matrix(&p, tau, DEFAULT_DIMENSION_CAP).unwrap()).is_empty());
            }
        }
    }
    r.check(invalid == 0, format!("{checked} density matrices validated, {invalid} with violations"));
    r.check(norm_err < 1e-12, format!("line norm drift {norm_err:e}"));
    r.check(parity_bad == 0, format!("parity / light-cone violations: {parity_bad}"));

    let mut worst = 0.0f64;
    for t in [0.2, 0.5, 0.8] {
        let mut p: BTreeMap<(i64, bool), f64> = BTreeMap::from([((0, true), 1.0)]);
        for s in lattice_trajectory(t, 0.0, 40).unwrap() {
            for (&(cell, right), &w) in &p {
                let l = CellLabel::new(cell, if right { Direction::Right } else { Direction::Left });
                worst = worst.max((s.population(l) - w).abs());
            }
            let mut next = BTreeMap::new();
            for (&(cell, right), &w) in &p {
                let moved = if right { (cell + 1, true) } else { (cell - 1, false) };
                *next.entry(moved).or_insert(0.0) += t * w;
                *next.entry((cell, !right)).or_insert(0.0) += (1.0 - t) * w;
            }
            p = next;
        }
    }
    r.check(worst < 1e-12, format!("beta=0 lattice diagonal vs persistent random walk: max diff {worst:e}"));
    r
}

fn random_hermitian(n: usize, rng: &mut StdRng) -> CMatrix {
    let mut m = CMatrix::zeros(n);
    for i in 0..n {
        m[(i, i)] = C64::new(rng.gen_range(-1.0..1.0), 0.0);
        for j in 0..i {
            let z = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

fn criterion_10() -> Report {
    let mut r = Report::new("10", "numerics: eigen residuals to dim 1024, unitary invariance, splitting inequality");
    let mut rng = StdRng::seed_from_u64(2024);
    let start = Instant::now();
    for n in [16, 128, 512, 1024] {
        let m = random_hermitian(n, &mut rng);
        let s = hermitian_eigenvalues(&m).unwrap();
        let fro2 = m.frobenius_norm().powi(2);
        let tr_res = (s.sum() - m.trace().re).abs() / fro2.sqrt();
        let norm_res = (s.sum_of_squares() - fro2).abs() / fro2;
        r.check(tr_res < 1e-8 && norm_res < 1e-8, format!("dim {n}: trace residual {tr_res:.1e}, norm residual {norm_res:.1e}"));
    }
    r.timed(start.elapsed(), Duration::from_secs(300), "eigen residual checks");

    let mut worst = 0.0f64;
    for _ in 0..50 {
        let n = rng.gen_range(2..10);
        let a = CMatrix::from_fn(n, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let g = a.matmul(&a.adjoint());
        let tr = g.trace().re;
        let rho = CMatrix::from_fn(n, |i, j| g[(i, j)] / tr);
        // U = product of random complex Givens rotations.
        let mut u = CMatrix::identity(n);
        for p in 0..n {
            for q in p + 1..n {
                let (th, ph): (f64, f64) = (rng.gen_range(0.0..3.2), rng.gen_range(0.0..6.3));
                let mut gv = CMatrix::identity(n);
                gv[(p, p)] = C64::new(th.cos(), 0.0);
                gv[(q, q)] = C64::new(th.cos(), 0.0);
                gv[(q, p)] = C64::from_polar(th.sin(), ph);
                gv[(p, q)] = -C64::from_polar(th.sin(), ph).conj();
                u = gv.matmul(&u);
            }
        }
        let d = (von_neumann_entropy_of(&rho).unwrap() - von_neumann_entropy_of(&rho.conjugate_by(&u)).unwrap()).abs();
        worst = worst.max(d);
    }
    r.check(worst < 1e-8, format!("unitary invariance over 50 random states: max |dS| {worst:e}"));

    let mut violations = 0;
    for _ in 0..10_000 {
        let p: f64 = rng.gen();
        let p1 = p * rng.gen::<f64>();
        let p2 = p - p1;
        if entropy_term(p1) + entropy_term(p2) < entropy_term(p) - 1e-15 {
            violations += 1;
        }
    }
    r.check(violations == 0, format!("splitting inequality over 10^4 draws: {violations} violations"));
    r
}

fn main() {
    let criteria: [fn() -> Report; 10] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
    ];
    let mut failed = Vec::new();
    for c in criteria {
        let rep = c();
        println!("{} criterion {}: {}", if rep.pass { "PASS" } else { "FAIL" }, rep.id, rep.title);
        for d in &rep.details {
            println!("    {d}");
        }
        if !rep.pass {
            failed.push(rep.id);
        }
    }
    println!("\n{}/{} criteria passed", criteria.len() - failed.len(), criteria.len());
    if !failed.is_empty() {
        println!("failed: {}", failed.join(", "));
        std::process::exit(1);
    }
}
