//! The built-in acceptance checks.
//!
//! Each check has a fixed seed, runs at a fixed size and reports a
//! pass/fail verdict with the measured numbers. [`run_all`] runs the twelve
//! checks in order.

use std::sync::OnceLock;
use std::time::Instant;

use rand_distr::{Distribution, StandardNormal};

use crate::cumulants::{cumulants_from_moments, lattice_moments, moments_from_cumulants, CumulantKind, CumulantSequence, MomentSequence};
use crate::experiment::{par_trials, projection_experiment};
use crate::hermitian::{sample_p, SampleOptions};
use crate::levy::{self, cumulants_from_triple, levy_exponent, FiniteMeasure, LevyTriple};
use crate::linalg;
use crate::nonhermitian::{sample_l_gaussian, symmetrized_singular_law};
use crate::partitions::{enumerate_noncrossing, enumerate_partitions, is_acceptable, is_admissible, is_noncrossing, SetPartition, SplitGround};
use crate::spectra::{cauchy_sup_distance, empirical_moments, esd, psi_image_moments, EmpiricalDistribution, GridSpec, ReferenceLaw};
use crate::sphere::{pd_fourier_with_draws, sample_sphere_vector, simplex_fourier, sphere_moment};
use crate::stats::{ks_two_sample, loglog_slope, mean_stderr, sample_variance};
use crate::{c64, Result, RngStream};

/// Verdict of one check.
#[derive(Clone, Debug, PartialEq)]
pub struct CriterionOutcome {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    /// Set when the check fails only because of a documented defect in the
    /// statement being checked.
    pub known_issue: Option<&'static str>,
}

impl CriterionOutcome {
    /// Failed for a reason other than a documented known issue.
    pub fn is_unexpected_failure(&self) -> bool {
        !self.passed && self.known_issue.is_none()
    }
}

struct Verdict {
    passed: bool,
    detail: String,
    known_issue: Option<&'static str>,
}

impl Verdict {
    fn new(passed: bool, detail: String) -> Self {
        Self {
            passed,
            detail,
            known_issue: None,
        }
    }
}

impl std::fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}] {:>2} {}: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail
        )?;
        if let Some(k) = self.known_issue {
            write!(f, " [known issue: {k}]")?;
        }
        Ok(())
    }
}

pub const NAMES: [&str; 12] = [
    "semicircle moments",
    "Marchenko-Pastur via projections",
    "Poisson model moments",
    "Cauchy fixed point",
    "Ginibre singular values",
    "bias decay",
    "variance decay",
    "convolution homomorphism",
    "partition oracles",
    "transform exactness",
    "one-dimensional reduction",
    "sphere formulas",
];

fn seed(id: u32) -> u64 {
    0xB0CA_5EED_0000_0000 | id as u64
}

fn outcome(id: u32, f: impl FnOnce() -> Result<Verdict>) -> CriterionOutcome {
    let start = Instant::now();
    let v = f().unwrap_or_else(|e| Verdict::new(false, format!("error: {e}")));
    CriterionOutcome {
        id,
        name: NAMES[id as usize - 1],
        passed: v.passed,
        detail: format!("{} ({:.1}s)", v.detail, start.elapsed().as_secs_f64()),
        known_issue: if v.passed { None } else { v.known_issue },
    }
}

/// Runs check `id` (1 to 12).
pub fn criterion(id: u32) -> Option<CriterionOutcome> {
    let f: fn() -> Result<Verdict> = match id {
        1 => c1_semicircle,
        2 => c2_projections,
        3 => c3_poisson,
        4 => c4_cauchy,
        5 => c5_ginibre,
        6 => c6_bias,
        7 => c7_variance,
        8 => c8_homomorphism,
        9 => c9_partitions,
        10 => c10_transforms,
        11 => c11_reduction,
        12 => c12_sphere,
        _ => return None,
    };
    Some(outcome(id, f))
}

/// Runs every check, handing each verdict to `each` as soon as it is known.
pub fn run_all_with(mut each: impl FnMut(&CriterionOutcome)) -> Vec<CriterionOutcome> {
    (1..=12)
        .map(|id| {
            let o = criterion(id).expect("valid id");
            each(&o);
            o
        })
        .collect()
}

pub fn run_all() -> Vec<CriterionOutcome> {
    run_all_with(|_| {})
}

fn fmt_list(xs: &[f64]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| format!("{x:.4}")).collect();
    format!("({})", parts.join(", "))
}

/// Per-trial spectral laws of the Hermitian model.
fn hermitian_laws(t: &LevyTriple, d: usize, trials: usize, seed: u64, opts: SampleOptions) -> Result<Vec<EmpiricalDistribution>> {
    par_trials(trials, |i| {
        let mut rng = RngStream::new(seed, i as u64);
        esd(&sample_p(t, d, &mut rng, &opts)?)
    })
}

fn mean_moments(laws: &[EmpiricalDistribution], kmax: usize) -> Result<Vec<(f64, f64)>> {
    let per: Vec<MomentSequence> = laws.iter().map(|l| empirical_moments(l, kmax)).collect::<Result<_>>()?;
    Ok((1..=kmax)
        .map(|k| {
            let xs: Vec<f64> = per.iter().map(|m| m.get(k)).collect();
            mean_stderr(&xs)
        })
        .collect())
}

fn c1_semicircle() -> Result<Verdict> {
    let laws = hermitian_laws(&levy::gaussian(0.0, 1.0)?, 500, 20, seed(1), SampleOptions::default())?;
    let m = mean_moments(&laws, 6)?;
    let got = [m[1].0, m[3].0, m[5].0];
    let ok = (got[0] - 1.0).abs() <= 0.03 && (got[1] - 2.0).abs() <= 0.10 && (got[2] - 5.0).abs() <= 0.40;
    Ok(Verdict::new(ok, format!("(m2, m4, m6) = {} vs (1, 2, 5)", fmt_list(&got))))
}

fn within_rel(got: &[f64], want: &[f64], rel: f64) -> bool {
    got.iter().zip(want).all(|(g, w)| (g - w).abs() <= rel * w.abs())
}

fn c2_projections() -> Result<Verdict> {
    let mut ok = true;
    let mut detail = Vec::new();
    for (d, dp, want) in [(500, 500, [1.0, 2.0, 5.0, 14.0]), (400, 200, [0.5, 0.75, 1.375, 2.8125])] {
        let r = projection_experiment(d, dp, 10, seed(2), 4)?;
        let got: Vec<f64> = (1..=4).map(|k| r.get(d, &format!("m{k}")).expect("row").mean).collect();
        ok &= within_rel(&got, &want, 0.03);
        detail.push(format!("d={d}, d'={dp}: {}", fmt_list(&got)));
    }
    Ok(Verdict::new(ok, detail.join("; ")))
}

fn c3_poisson() -> Result<Verdict> {
    let t = levy::poisson(0.5)?;
    let want = psi_image_moments(&t, 4)?;
    let m = mean_moments(&hermitian_laws(&t, 400, 20, seed(3), SampleOptions::default())?, 4)?;
    let got: Vec<f64> = m.iter().map(|p| p.0).collect();
    let ok = within_rel(&got, want.values(), 0.05);
    Ok(Verdict::new(ok, format!("moments {} vs {}", fmt_list(&got), fmt_list(want.values()))))
}

fn c4_cauchy() -> Result<Verdict> {
    let t = levy::cauchy(1.0, levy::DEFAULT_CAUCHY_NODES)?;
    let laws = hermitian_laws(&t, 500, 10, seed(4), SampleOptions { inner_cut: Some(0.05) })?;
    let pooled = EmpiricalDistribution::pool(&laws)?;
    let dist = cauchy_sup_distance(&pooled, &ReferenceLaw::cauchy(1.0)?, &GridSpec::default())?;
    Ok(Verdict::new(dist <= 0.05, format!("grid distance {dist:.4} (limit 0.05)")))
}

fn c5_ginibre() -> Result<Verdict> {
    let per = par_trials(20, |i| {
        let mut rng = RngStream::new(seed(5), i as u64);
        let law = symmetrized_singular_law(&sample_l_gaussian(500, 1.0, &mut rng)?)?;
        Ok(empirical_moments(&law, 5)?.values().to_vec())
    })?;
    let odd_zero = per.iter().all(|m| m[0] == 0.0 && m[2] == 0.0 && m[4] == 0.0);
    let (m2, _) = mean_stderr(&per.iter().map(|m| m[1]).collect::<Vec<_>>());
    let (m4, _) = mean_stderr(&per.iter().map(|m| m[3]).collect::<Vec<_>>());
    let ok = odd_zero && (m2 - 1.0).abs() <= 0.03 && (m4 - 2.0).abs() <= 0.10;
    Ok(Verdict::new(ok, format!("(m2, m4) = ({m2:.4}, {m4:.4}) vs (1, 2); odd moments all exactly zero: {odd_zero}")))
}

const DECAY_DIMS: [usize; 4] = [50, 100, 200, 400];
const DECAY_TRIALS: usize = 500;

/// Per-trial `(1/d) Tr M⁴` for the Gaussian model, shared by checks 6 and 7.
fn decay_samples() -> Result<&'static Vec<Vec<f64>>> {
    static CELL: OnceLock<Vec<Vec<f64>>> = OnceLock::new();
    if let Some(v) = CELL.get() {
        return Ok(v);
    }
    let t = levy::gaussian(0.0, 1.0)?;
    let opts = SampleOptions::default();
    let mut out = Vec::new();
    for &d in &DECAY_DIMS {
        let s = crate::rng::mix_seed(seed(6), d as u64);
        out.push(par_trials(DECAY_TRIALS, |i| {
            let mut rng = RngStream::new(s, i as u64);
            let m = sample_p(&t, d, &mut rng, &opts)?;
            let sq = linalg::mul(m.entries().as_ref(), m.entries().as_ref());
            let mut fro = 0.0;
            for j in 0..d {
                for i in 0..d {
                    fro += sq[(i, j)].norm_sqr();
                }
            }
            Ok(fro / d as f64)
        })?);
    }
    Ok(CELL.get_or_init(|| out))
}

fn c6_bias() -> Result<Verdict> {
    let samples = decay_samples()?;
    let bias: Vec<f64> = samples.iter().map(|xs| (mean_stderr(xs).0 - 2.0).abs()).collect();
    let dims: Vec<f64> = DECAY_DIMS.iter().map(|&d| d as f64).collect();
    let decreasing = bias.windows(2).all(|w| w[1] < w[0]);
    let slope = loglog_slope(&dims, &bias);
    Ok(Verdict::new(
        decreasing && slope <= -0.7,
        format!("|E m4 - 2| = {}, decreasing: {decreasing}, slope {slope:.3} (limit -0.7)", fmt_list(&bias)),
    ))
}

fn c7_variance() -> Result<Verdict> {
    let samples = decay_samples()?;
    let var: Vec<f64> = samples.iter().map(|xs| sample_variance(xs)).collect();
    let dims: Vec<f64> = DECAY_DIMS.iter().map(|&d| d as f64).collect();
    let slope = loglog_slope(&dims, &var);
    let shown: Vec<String> = var.iter().map(|v| format!("{v:.3e}")).collect();
    Ok(Verdict::new(slope <= -1.6, format!("Var m4 = ({}), slope {slope:.3} (limit -1.6)", shown.join(", "))))
}

fn c8_homomorphism() -> Result<Verdict> {
    let (d, trials) = (300, 20);
    let g = levy::gaussian(0.0, 1.0)?;
    let p = levy::poisson(1.0)?;
    let conv = levy::convolve(&g, &p);
    let opts = SampleOptions::default();
    let per = par_trials(trials, |i| {
        let base = 3 * i as u64;
        let a = sample_p(&g, d, &mut RngStream::new(seed(8), base), &opts)?;
        let b = sample_p(&p, d, &mut RngStream::new(seed(8), base + 1), &opts)?;
        let c = sample_p(&conv, d, &mut RngStream::new(seed(8), base + 2), &opts)?;
        let sum = esd(&a.add(&b)?)?;
        Ok((empirical_moments(&sum, 4)?.values().to_vec(), empirical_moments(&esd(&c)?, 4)?.values().to_vec()))
    })?;
    let want = psi_image_moments(&conv, 4)?;
    let mut ok = true;
    let mut sums = Vec::new();
    let mut zs = Vec::new();
    for k in 0..4 {
        let (ms, ss) = mean_stderr(&per.iter().map(|x| x.0[k]).collect::<Vec<_>>());
        let (mc, sc) = mean_stderr(&per.iter().map(|x| x.1[k]).collect::<Vec<_>>());
        let z = (ms - mc).abs() / (ss * ss + sc * sc).sqrt();
        ok &= (ms - want.values()[k]).abs() <= 0.03 * want.values()[k].abs() && z <= 4.0;
        sums.push(ms);
        zs.push(z);
    }
    // exponent-level check on shared simplex draws
    let mut rng = RngStream::new(seed(8), 1 << 40);
    let mut worst: f64 = 0.0;
    for dim in [2usize, 5, 9] {
        let eigs: Vec<f64> = (0..dim).map(|_| 3.0 * rng.normal()).collect();
        let draws = (0..200).map(|_| sample_sphere_vector(dim, &mut rng).map(|u| u.z())).collect::<Result<Vec<_>>>()?;
        let lc = pd_fourier_with_draws(&conv, &eigs, &draws)?.log_mean;
        let lg = pd_fourier_with_draws(&g, &eigs, &draws)?.log_mean;
        let lp = pd_fourier_with_draws(&p, &eigs, &draws)?.log_mean;
        worst = worst.max((lc - lg - lp).norm() / lc.norm().max(1.0));
    }
    ok &= worst <= 1e-12;
    let z_shown: Vec<String> = zs.iter().map(|z| format!("{z:.2}")).collect();
    Ok(Verdict::new(
        ok,
        format!(
            "sum moments {} vs {}; z vs direct model ({}); exponent defect {worst:.1e}",
            fmt_list(&sums),
            fmt_list(want.values()),
            z_shown.join(", ")
        ),
    ))
}

fn catalan(k: u64) -> u64 {
    // C_k = C(2k, k)/(k+1)
    let mut c: u64 = 1;
    for i in 0..k {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}

/// The linked-halves bound `|π| + |τ| <= 2k` fails already for `k = 1`,
/// `π = {{1,2}}`, `τ = {{1},{2}}`: every `τ` is admissible there. On grounds of
/// size at most 6 the excess is never more than one.
pub const LINKED_BOUND_ISSUE: &str =
    "the linked-halves bound |pi|+|tau| <= 2k has counterexamples (k = 1: pi = {{1,2}}, tau = {{1},{2}}); |pi|+|tau| <= 2k+1 holds";

fn c9_partitions() -> Result<Verdict> {
    let mut pairs_44 = 0u64;
    let mut bad_44 = 0u64;
    for k in 1..=6 {
        let all = enumerate_partitions(k)?;
        for pi in all.iter().filter(|p| !is_noncrossing(p)) {
            for tau in &all {
                if is_acceptable(pi, tau)? {
                    pairs_44 += 1;
                    if pi.num_blocks() + tau.num_blocks() > k {
                        bad_44 += 1;
                    }
                }
            }
        }
    }
    let mut pairs_52 = 0u64;
    let mut bad_52 = 0u64;
    let mut excess_52 = 0usize;
    for k in 1..=3 {
        let ground = SplitGround::new(k)?;
        let all = enumerate_partitions(2 * k)?;
        for pi in all.iter().filter(|p| p.links_halves(ground)) {
            for tau in &all {
                if is_admissible(ground, pi, tau)? {
                    pairs_52 += 1;
                    let total = pi.num_blocks() + tau.num_blocks();
                    if total > 2 * k {
                        bad_52 += 1;
                        excess_52 = excess_52.max(total - 2 * k);
                    }
                }
            }
        }
    }
    let pi = SetPartition::from_blocks(4, &[vec![1, 3], vec![2, 4]])?;
    let mut accepted = Vec::new();
    for tau in enumerate_partitions(4)? {
        if is_acceptable(&pi, &tau)? {
            accepted.push(tau);
        }
    }
    let expected = [
        SetPartition::one_block(4)?,
        SetPartition::from_blocks(4, &[vec![1, 2], vec![3, 4]])?,
        SetPartition::from_blocks(4, &[vec![1, 4], vec![2, 3]])?,
    ];
    let set_ok = accepted.len() == 3 && expected.iter().all(|e| accepted.contains(e));
    let mut catalan_ok = true;
    for k in 1..=8 {
        catalan_ok &= enumerate_noncrossing(k)?.len() as u64 == catalan(k as u64);
    }
    let shown: Vec<String> = accepted.iter().map(|p| p.to_string()).collect();
    let rest_ok = bad_44 == 0 && set_ok && catalan_ok;
    let mut v = Verdict::new(
        rest_ok && bad_52 == 0,
        format!(
            "crossing/acceptable pairs {pairs_44} with {bad_44} violations; linking/admissible pairs {pairs_52} with {bad_52} violations (largest excess {excess_52}); acceptable set [{}]; NC counts match Catalan: {catalan_ok}",
            shown.join(" ")
        ),
    );
    if rest_ok && excess_52 == 1 {
        v.known_issue = Some(LINKED_BOUND_ISSUE);
    }
    Ok(v)
}

fn rel_err(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs() / y.abs().max(1.0)).fold(0.0, f64::max)
}

/// `k`-th derivative at 0 by central differences with three Richardson steps.
fn derivative_at_zero(f: &dyn Fn(f64) -> c64, k: usize, h0: f64) -> c64 {
    let stencil = |h: f64| -> c64 {
        match k {
            1 => (f(h) - f(-h)) / (2.0 * h),
            2 => (f(h) - f(0.0) * 2.0 + f(-h)) / (h * h),
            3 => (f(2.0 * h) - f(h) * 2.0 + f(-h) * 2.0 - f(-2.0 * h)) / (2.0 * h * h * h),
            4 => (f(2.0 * h) - f(h) * 4.0 + f(0.0) * 6.0 - f(-h) * 4.0 + f(-2.0 * h)) / (h * h * h * h),
            _ => unreachable!(),
        }
    };
    let levels = 4;
    let mut table: Vec<Vec<c64>> = Vec::new();
    for i in 0..levels {
        let mut row = vec![stencil(h0 / (1 << i) as f64)];
        for j in 1..=i {
            let p = 4f64.powi(j as i32);
            let v = row[j - 1] + (row[j - 1] - table[i - 1][j - 1]) / (p - 1.0);
            row.push(v);
        }
        table.push(row);
    }
    table[levels - 1][levels - 1]
}

fn c10_transforms() -> Result<Verdict> {
    let mut rng = RngStream::new(seed(10), 0);
    let mut round_trip: f64 = 0.0;
    let mut lattice_real: f64 = 0.0;
    let mut lattice_int_exact = true;
    for kind in [CumulantKind::Classical, CumulantKind::Free] {
        for _ in 0..50 {
            let c: Vec<f64> = (0..8).map(|_| 2.0 * rng.uniform() - 1.0).collect();
            let cs = CumulantSequence::new(kind, c.clone())?;
            let m = moments_from_cumulants(&cs);
            round_trip = round_trip.max(rel_err(cumulants_from_moments(&m, kind).values(), &c));
            let back = moments_from_cumulants(&cumulants_from_moments(&m, kind));
            round_trip = round_trip.max(rel_err(back.values(), m.values()));
            lattice_real = lattice_real.max(rel_err(m.values(), lattice_moments(&cs)?.values()));

            let ci: Vec<f64> = (0..8).map(|_| (7.0 * rng.uniform()).floor() - 3.0).collect();
            let cs = CumulantSequence::new(kind, ci)?;
            lattice_int_exact &= moments_from_cumulants(&cs) == lattice_moments(&cs)?;
        }
    }
    let mut fd: f64 = 0.0;
    for _ in 0..20 {
        let n = 1 + (4.0 * rng.uniform()) as usize;
        let atoms: Vec<(f64, f64)> = (0..n).map(|_| (3.0 * rng.uniform() - 1.5, 0.1 + 0.9 * rng.uniform())).collect();
        let t = LevyTriple::new(2.0 * rng.uniform() - 1.0, FiniteMeasure::new(atoms)?)?;
        let c = cumulants_from_triple(&t, 4)?;
        let psi = |x: f64| levy_exponent(&t, x);
        for k in 1..=4 {
            let dk = derivative_at_zero(&psi, k, 0.4);
            // c_k = i^{-k} ψ^{(k)}(0)
            let est = match k {
                1 => dk.im,
                2 => -dk.re,
                3 => -dk.im,
                _ => dk.re,
            };
            let want = c.get(k);
            fd = fd.max((est - want).abs() / want.abs().max(1.0));
        }
    }
    let ok = round_trip <= 1e-10 && lattice_int_exact && lattice_real <= 1e-10 && fd <= 1e-6;
    Ok(Verdict::new(
        ok,
        format!(
            "round trip {round_trip:.1e}; lattice exact on integers: {lattice_int_exact}, real inputs {lattice_real:.1e}; finite differences {fd:.1e}"
        ),
    ))
}

/// Direct draws from the classical law of each preset combination.
enum Scalar {
    Gaussian(f64, f64),
    Poisson(f64),
    Cauchy(f64),
    Sum(Vec<Scalar>),
}

impl Scalar {
    fn draw(&self, rng: &mut RngStream) -> f64 {
        match self {
            Scalar::Gaussian(m, v) => {
                let z: f64 = StandardNormal.sample(rng);
                m + v.sqrt() * z
            }
            Scalar::Poisson(lambda) => {
                // multiplication method
                let limit = (-lambda).exp();
                let mut n = 0.0;
                let mut prod = rng.uniform();
                while prod > limit {
                    n += 1.0;
                    prod *= rng.uniform();
                }
                n
            }
            Scalar::Cauchy(a) => a * (std::f64::consts::PI * (rng.uniform() - 0.5)).tan(),
            Scalar::Sum(parts) => parts.iter().map(|p| p.draw(rng)).sum(),
        }
    }
}

fn c11_reduction() -> Result<Verdict> {
    let n = 100_000;
    let cauchy = levy::cauchy(1.0, levy::DEFAULT_CAUCHY_NODES)?;
    let cases: Vec<(&str, LevyTriple, Scalar, Option<f64>)> = vec![
        ("gaussian", levy::gaussian(0.0, 1.0)?, Scalar::Gaussian(0.0, 1.0), None),
        ("poisson", levy::poisson(1.0)?, Scalar::Poisson(1.0), None),
        ("cauchy", cauchy.clone(), Scalar::Cauchy(1.0), Some(0.01)),
        (
            "gaussian*poisson",
            levy::convolve(&levy::gaussian(0.5, 2.0)?, &levy::poisson(2.0)?),
            Scalar::Sum(vec![Scalar::Gaussian(0.5, 2.0), Scalar::Poisson(2.0)]),
            None,
        ),
        (
            "cauchy*poisson",
            levy::convolve(&cauchy, &levy::poisson(1.0)?),
            Scalar::Sum(vec![Scalar::Cauchy(1.0), Scalar::Poisson(1.0)]),
            Some(0.01),
        ),
    ];
    let results = par_trials(cases.len(), |j| {
        let (_, t, direct, cut) = &cases[j];
        let opts = SampleOptions { inner_cut: *cut };
        let mut rm = RngStream::new(seed(11), 2 * j as u64);
        let mut rd = RngStream::new(seed(11), 2 * j as u64 + 1);
        let a = (0..n).map(|_| sample_p(t, 1, &mut rm, &opts).map(|m| m.entries()[(0, 0)].re)).collect::<Result<Vec<_>>>()?;
        let b: Vec<f64> = (0..n).map(|_| direct.draw(&mut rd)).collect();
        // atoms of lattice laws come out of the matrix model within a few ulps
        // of the integers; snapping keeps them tied with the direct draws
        let snap = |x: &f64| (x * 1e9).round() / 1e9;
        let a: Vec<f64> = a.iter().map(snap).collect();
        let b: Vec<f64> = b.iter().map(snap).collect();
        Ok(ks_two_sample(&a, &b))
    })?;
    let ok = results.iter().all(|&k| k < 0.01);
    let shown: Vec<String> = cases.iter().zip(&results).map(|(c, k)| format!("{} {k:.4}", c.0)).collect();
    Ok(Verdict::new(ok, format!("KS: {} (limit 0.01)", shown.join(", "))))
}

/// Nonincreasing multi-indices of length `d` with entries summing to `s`.
fn sorted_indices(d: usize, s: u32) -> Vec<Vec<u32>> {
    fn rec(left: u32, max: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for a in (0..=left.min(max)).rev() {
            cur.push(a);
            rec(left - a, a, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(s, s, d, &mut Vec::new(), &mut out);
    out
}

/// Gauss-Legendre nodes and weights on `[0, 1]`.
fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((0.5 * (1.0 - x), 1.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// Composite rule on `[a, b]` with `panels` panels.
fn composite(a: f64, b: f64, panels: usize, rule: &[(f64, f64)], f: &mut dyn FnMut(f64) -> c64) -> c64 {
    let h = (b - a) / panels as f64;
    let mut acc = c64::new(0.0, 0.0);
    for p in 0..panels {
        let lo = a + p as f64 * h;
        for &(x, w) in rule {
            acc += f(lo + h * x) * (w * h);
        }
    }
    acc
}

/// `E exp(i⟨a, Z⟩)` for `Z` uniform on the simplex, by quadrature.
fn simplex_quadrature(a: &[f64]) -> c64 {
    let rule = gauss_legendre(20);
    let e = |x: f64| c64::from_polar(1.0, x);
    match a.len() {
        2 => composite(0.0, 1.0, 8, &rule, &mut |z| e(a[0] * z + a[1] * (1.0 - z))),
        3 => {
            composite(0.0, 1.0, 8, &rule, &mut |x| {
                composite(0.0, 1.0 - x, 8, &rule, &mut |y| e(a[0] * x + a[1] * y + a[2] * (1.0 - x - y)) * 2.0)
            })
        }
        _ => unreachable!(),
    }
}

fn c12_sphere() -> Result<Verdict> {
    let draws = 1_000_000;
    let per_dim = par_trials(6, |j| {
        let d = j + 1;
        let alphas: Vec<Vec<u32>> = (1..=4).flat_map(|s| sorted_indices(d, s)).collect();
        let mut rng = RngStream::new(seed(12), d as u64);
        let mut sum = vec![0.0; alphas.len()];
        let mut sum_sq = vec![0.0; alphas.len()];
        for _ in 0..draws {
            let z = sample_sphere_vector(d, &mut rng)?.z();
            for (k, alpha) in alphas.iter().enumerate() {
                let v: f64 = z.iter().zip(alpha).map(|(zi, &a)| zi.powi(a as i32)).product();
                sum[k] += v;
                sum_sq[k] += v * v;
            }
        }
        let mut worst: f64 = 0.0;
        let mut fails = 0;
        for (k, alpha) in alphas.iter().enumerate() {
            let n = draws as f64;
            let mean = sum[k] / n;
            let var = ((sum_sq[k] - n * mean * mean) / (n - 1.0)).max(0.0);
            let se = (var / n).sqrt();
            let exact = sphere_moment(d, alpha)?;
            let dev = (mean - exact).abs();
            if dev > 3.0 * se {
                fails += 1;
            }
            if se > 0.0 {
                worst = worst.max(dev / se);
            }
        }
        Ok((alphas.len(), fails, worst))
    })?;
    let compared: usize = per_dim.iter().map(|r| r.0).sum();
    let fails: usize = per_dim.iter().map(|r| r.1).sum();
    let worst = per_dim.iter().map(|r| r.2).fold(0.0, f64::max);

    let points: [&[f64]; 7] = [
        &[0.5, 0.0],
        &[1.0, 0.0],
        &[3.0, 0.0],
        &[1.5, -2.0],
        &[1.0, 2.0, 5.0],
        &[-1.0, 0.5, 3.0],
        &[0.1, 0.2, 0.4],
    ];
    let mut quad: f64 = 0.0;
    for a in points {
        quad = quad.max((simplex_fourier(a)? - simplex_quadrature(a)).norm());
    }
    Ok(Verdict::new(
        fails == 0 && quad <= 1e-6,
        format!(
            "{compared} mixed moments, {fails} beyond 3 SE (largest {worst:.2} SE); simplex transform vs quadrature {quad:.1e}"
        ),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn helpers() {
        assert_eq!((1..=8).map(catalan).collect::<Vec<_>>(), vec![1, 2, 5, 14, 42, 132, 429, 1430]);
        assert_eq!(sorted_indices(2, 3), vec![vec![3, 0], vec![2, 1]]);
        assert_eq!(sorted_indices(1, 4), vec![vec![4]]);
        let rule = gauss_legendre(20);
        let w: f64 = rule.iter().map(|p| p.1).sum();
        assert!((w - 1.0).abs() < 1e-14);
        let cube: f64 = rule.iter().map(|&(x, w)| w * x.powi(7)).sum();
        assert!((cube - 0.125).abs() < 1e-14);
        let exp = composite(0.0, 1.0, 4, &rule, &mut |x| c64::new(x.exp(), 0.0));
        assert!((exp.re - (1f64.exp() - 1.0)).abs() < 1e-14);
    }

    #[test]
    fn richardson_on_polynomial_exponent() {
        // gaussian: ψ(x) = i m x − v x²/2
        let t = levy::gaussian(0.3, 2.0).unwrap();
        let psi = |x: f64| levy_exponent(&t, x);
        assert!((derivative_at_zero(&psi, 1, 0.4).im - 0.3).abs() < 1e-9);
        assert!((derivative_at_zero(&psi, 2, 0.4).re + 2.0).abs() < 1e-9);
    }

    #[test]
    fn cheap_checks_pass() {
        let o = criterion(10).unwrap();
        assert!(o.passed, "{o}");
        let o = criterion(9).unwrap();
        assert!(!o.is_unexpected_failure(), "{o}");
        assert!(criterion(13).is_none());
    }
}
