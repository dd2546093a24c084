//! Random words and the Markov chains they induce on patterns and shapes.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::RngCore;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::ExactScalar;
use crate::kernels::{kernel_k, kernel_l, ParamContext};
use crate::partition::{enumerate_lambda_n, one_box_neighbors, Partition};
use crate::pattern::GtPattern;
use crate::qinsert::{insert_unchecked, phi_word};
use crate::report::IdentityReport;
use crate::symfunc::{p_function, q_counts, sp_schur};
use crate::tableau::{alphabet, Letter, OscillatingTableau};

/// `ρ(l) = a_l / Σ_i (a_i + 1/a_i)`.
#[derive(Clone, Debug)]
pub struct LetterDistribution {
    probs: Vec<(Letter, ExactScalar)>,
    thresholds: Vec<u128>,
}

impl LetterDistribution {
    pub fn new(pc: &ParamContext) -> Self {
        let s = pc.total_weight();
        let probs: Vec<(Letter, ExactScalar)> = alphabet(pc.n()).into_iter().map(|l| (l, pc.a_letter(l) / &s)).collect();
        let thresholds = cumulative_thresholds(probs.iter().map(|(_, p)| p));
        LetterDistribution { probs, thresholds }
    }

    pub fn probs(&self) -> &[(Letter, ExactScalar)] {
        &self.probs
    }

    pub fn prob(&self, l: Letter) -> ExactScalar {
        self.probs.iter().find(|(k, _)| *k == l).map(|(_, p)| p.clone()).unwrap_or_default()
    }

    pub fn sample(&self, rng: &mut ChaCha8Rng) -> Letter {
        self.probs[pick(&self.thresholds, rng.next_u64())].0
    }
}

/// For cumulative sums `c_j`, the integers `ceil(c_j · 2^64)`, so a uniform
/// 64-bit draw `x` satisfies `x / 2^64 < c_j` iff `x < threshold_j`.
fn cumulative_thresholds<'a>(probs: impl Iterator<Item = &'a ExactScalar>) -> Vec<u128> {
    let scale = BigInt::from(1u128 << 64);
    let mut cum = ExactScalar::zero();
    probs
        .map(|p| {
            cum += p;
            let num = cum.numerator() * &scale;
            let t = num.div_ceil(cum.denominator());
            t.to_u128().expect("cumulative probability is at most 1").min(1u128 << 64)
        })
        .collect()
}

fn pick(thresholds: &[u128], x: u64) -> usize {
    thresholds
        .iter()
        .position(|&t| (x as u128) < t)
        .expect("the last threshold is 2^64")
}

/// A 64-bit seed; run `r` draws from stream `r` of the seeded generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RngSeed(pub u64);

impl RngSeed {
    pub fn rng(self, run: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.0);
        rng.set_stream(run);
        rng
    }
}

fn in_lambda(pc: &ParamContext, p: &Partition) -> Result<()> {
    if !p.in_lambda(pc.n()) {
        return Err(Error::NotInLambda { partition: p.parts().to_vec(), n: pc.n() });
    }
    Ok(())
}

fn adjacent(pc: &ParamContext, mu: &Partition, lam: &Partition) -> Result<bool> {
    Ok(one_box_neighbors(mu, pc.n())?.contains(lam))
}

/// `Sp_λ / (Σ(a_i + 1/a_i) Sp_μ)` when `λ = μ ± e_i`, else 0.
pub fn shape_kernel_classic(pc: &ParamContext, mu: &Partition, lam: &Partition) -> Result<ExactScalar> {
    in_lambda(pc, mu)?;
    if !adjacent(pc, mu, lam)? {
        return Ok(ExactScalar::zero());
    }
    Ok(sp_schur(pc, lam)? / (pc.total_weight() * sp_schur(pc, mu)?))
}

/// `P_λ L_n(μ, λ) / (Σ(a_i + 1/a_i) P_μ)`.
pub fn shape_kernel_q(pc: &ParamContext, mu: &Partition, lam: &Partition) -> Result<ExactScalar> {
    in_lambda(pc, mu)?;
    if !adjacent(pc, mu, lam)? {
        return Ok(ExactScalar::zero());
    }
    Ok(p_function(pc, lam)? * kernel_l(pc, mu, lam) / (pc.total_weight() * p_function(pc, mu)?))
}

/// Rows of both shape kernels sum to 1 for `μ_1 <= bound`; at `q = 0` the
/// two kernels coincide.
pub fn check_shape_kernel_rows(pc: &ParamContext, bound: u32) -> Result<IdentityReport> {
    let mut report = IdentityReport::new(format!("shape kernel rows (n={}, μ_1<={bound})", pc.n()));
    for mu in enumerate_lambda_n(pc.n(), bound) {
        let (mut classic, mut deformed) = (ExactScalar::zero(), ExactScalar::zero());
        for lam in one_box_neighbors(&mu, pc.n())? {
            let c = shape_kernel_classic(pc, &mu, &lam)?;
            let d = shape_kernel_q(pc, &mu, &lam)?;
            if pc.ctx().is_classic() {
                report.check(|| format!("q=0 μ={mu} λ={lam}"), d.clone(), c.clone());
            }
            classic += c;
            deformed += d;
        }
        report.check(|| format!("classic μ={mu}"), classic, ExactScalar::one());
        report.check(|| format!("q μ={mu}"), deformed, ExactScalar::one());
    }
    Ok(report)
}

/// The walk with steps `±e_l` of probability `ρ(l)`, `ρ(l̄)`, killed on
/// leaving `Λ_n`.
pub fn killed_walk(pc: &ParamContext, mu: &Partition, lam: &Partition) -> ExactScalar {
    let rho = LetterDistribution::new(pc);
    for l in 1..=pc.n() {
        if mu.add_box(l).as_ref() == Some(lam) && lam.in_lambda(pc.n()) {
            return rho.prob(Letter::unbarred(l as u32));
        }
        if mu.remove_box(l).as_ref() == Some(lam) {
            return rho.prob(Letter::barred(l as u32));
        }
    }
    ExactScalar::zero()
}

/// `h_n(x) = Π_l a_l^{-x_l} Sp_x`.
pub fn h_n(pc: &ParamContext, x: &Partition) -> Result<ExactScalar> {
    let mut out = sp_schur(pc, x)?;
    for (l, a) in pc.a().iter().enumerate() {
        out *= &a.powi(-(x.part(l + 1) as i64))?;
    }
    Ok(out)
}

/// Harmonicity of `h_n` for the killed walk and `Π = ρ̂ h_n(λ)/h_n(μ)`.
pub fn doob_decomposition_check(pc: &ParamContext, bound: u32) -> Result<IdentityReport> {
    if !pc.ctx().is_classic() {
        return Err(Error::RequiresClassicLimit(pc.ctx().q().to_string()));
    }
    let mut report = IdentityReport::new(format!("doob transform (n={}, μ_1<={bound})", pc.n()));
    for mu in enumerate_lambda_n(pc.n(), bound) {
        let hm = h_n(pc, &mu)?;
        let mut harmonic = ExactScalar::zero();
        for lam in one_box_neighbors(&mu, pc.n())? {
            let step = killed_walk(pc, &mu, &lam);
            let hl = h_n(pc, &lam)?;
            harmonic += &step * &hl;
            let doob = step * hl / &hm;
            report.check(|| format!("Π μ={mu} λ={lam}"), shape_kernel_classic(pc, &mu, &lam)?, doob);
        }
        report.check(|| format!("harmonic μ={mu}"), harmonic, hm);
    }
    Ok(report)
}

/// One sampled run: the letters drawn, the patterns after each insertion and
/// their bottom levels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Trajectory {
    pub letters: Vec<Letter>,
    pub patterns: Vec<GtPattern>,
    pub shapes: Vec<Partition>,
}

#[derive(Serialize)]
struct Step<'a> {
    step: usize,
    letter: Option<String>,
    shape: &'a Partition,
    pattern: &'a GtPattern,
}

impl Trajectory {
    /// One JSON object per step; step 0 is the empty configuration.
    pub fn to_json_lines(&self, ascii: bool) -> String {
        let mut out = String::new();
        for (i, (pattern, shape)) in self.patterns.iter().zip(&self.shapes).enumerate() {
            let step = Step {
                step: i,
                letter: i.checked_sub(1).map(|j| self.letters[j].render(ascii)),
                shape,
                pattern,
            };
            out.push_str(&serde_json::to_string(&step).expect("steps serialize"));
            out.push('\n');
        }
        out
    }

    pub fn shape_path(&self) -> OscillatingTableau {
        OscillatingTableau::new(self.shapes.clone()).expect("insertions move one box")
    }
}

/// Sampler for the pattern chain `M(Z, ·) = Σ_l ρ(l) I_l(Z, ·)`, caching the
/// insertion kernels it has seen.
pub struct Simulator {
    pc: ParamContext,
    letters: LetterDistribution,
    cache: HashMap<(GtPattern, Letter), (Vec<GtPattern>, Vec<u128>)>,
}

impl Simulator {
    pub fn new(pc: &ParamContext) -> Self {
        Simulator {
            pc: pc.clone(),
            letters: LetterDistribution::new(pc),
            cache: HashMap::new(),
        }
    }

    fn step(&mut self, z: &GtPattern, l: Letter, rng: &mut ChaCha8Rng) -> GtPattern {
        let ctx = self.pc.ctx();
        let (targets, thresholds) = self.cache.entry((z.clone(), l)).or_insert_with(|| {
            let dist = insert_unchecked(ctx, z, l);
            let targets = dist.outcomes().keys().cloned().collect();
            (targets, cumulative_thresholds(dist.outcomes().values()))
        });
        if targets.len() == 1 {
            return targets[0].clone();
        }
        targets[pick(thresholds, rng.next_u64())].clone()
    }

    /// Inserts the given letters; randomness is only used by the insertions.
    pub fn run_word(&mut self, word: &[Letter], rng: &mut ChaCha8Rng) -> Result<Trajectory> {
        for l in word {
            l.check_alphabet(self.pc.n())?;
        }
        let mut z = GtPattern::zero(self.pc.n());
        let mut traj = Trajectory {
            letters: word.to_vec(),
            patterns: vec![z.clone()],
            shapes: vec![Partition::empty()],
        };
        for &l in word {
            z = self.step(&z, l, rng);
            traj.shapes.push(z.shape());
            traj.patterns.push(z.clone());
        }
        Ok(traj)
    }

    /// Draws `m` letters from `ρ` and inserts them one by one.
    pub fn run(&mut self, m: usize, rng: &mut ChaCha8Rng) -> Trajectory {
        let mut z = GtPattern::zero(self.pc.n());
        let mut traj = Trajectory {
            letters: Vec::with_capacity(m),
            patterns: vec![z.clone()],
            shapes: vec![Partition::empty()],
        };
        for _ in 0..m {
            let l = self.letters.sample(rng);
            z = self.step(&z, l, rng);
            traj.letters.push(l);
            traj.shapes.push(z.shape());
            traj.patterns.push(z.clone());
        }
        traj
    }
}

/// A single run drawn from stream `run` of `seed`.
pub fn simulate(pc: &ParamContext, m: usize, seed: RngSeed, run: u64) -> Trajectory {
    Simulator::new(pc).run(m, &mut seed.rng(run))
}

/// `ν(λ) = P_λ Q_m^λ(n;q) / (Σ(a_i + 1/a_i))^m`.
pub fn exact_shape_law(pc: &ParamContext, m: usize) -> Result<BTreeMap<Partition, ExactScalar>> {
    let norm = pc.total_weight().pow(m as u32);
    q_counts(pc, m)
        .into_iter()
        .map(|(lam, q)| Ok((lam.clone(), p_function(pc, &lam)? * q / &norm)))
        .collect()
}

/// `K_n(λ, Z) / P_λ`.
pub fn conditional_pattern_law(pc: &ParamContext, lam: &Partition) -> Result<BTreeMap<GtPattern, ExactScalar>> {
    let p = p_function(pc, lam)?;
    crate::pattern::enumerate_patterns(lam, pc.n())?
        .into_iter()
        .map(|z| {
            let k = kernel_k(pc, lam, &z);
            Ok((z, k / &p))
        })
        .filter(|r| r.as_ref().map_or(true, |(_, w)| !w.is_zero()))
        .collect()
}

fn tv<K: Ord>(exact: &BTreeMap<K, f64>, empirical: &BTreeMap<K, f64>) -> f64 {
    let keys: std::collections::BTreeSet<&K> = exact.keys().chain(empirical.keys()).collect();
    0.5 * keys
        .into_iter()
        .map(|k| (exact.get(k).copied().unwrap_or(0.0) - empirical.get(k).copied().unwrap_or(0.0)).abs())
        .sum::<f64>()
}

#[derive(Clone, Debug, Serialize)]
pub struct ShapeFrequency {
    pub shape: Partition,
    pub exact: ExactScalar,
    pub empirical: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConditionalReport {
    pub shape: Partition,
    pub samples: usize,
    pub tv: String,
    pub tv_bound: String,
}

/// Monte-Carlo frequencies against the exact laws, with total-variation
/// distances and the sample-size bounds `3 sqrt(k / runs)`.
#[derive(Clone, Debug, Serialize)]
pub struct EmpiricalReport {
    pub n: usize,
    pub m: usize,
    pub runs: usize,
    pub seed: u64,
    pub shapes: Vec<ShapeFrequency>,
    pub shape_tv: f64,
    pub shape_tv_bound: f64,
    pub conditional: Vec<ConditionalReport>,
    pub conditional_tv: f64,
}

fn tv_bound(support: usize, samples: usize) -> f64 {
    3.0 * (support as f64 / samples.max(1) as f64).sqrt()
}

pub fn empirical_vs_exact(pc: &ParamContext, m: usize, runs: usize, seed: RngSeed) -> Result<EmpiricalReport> {
    if runs == 0 {
        return Err(Error::Invalid("runs must be at least 1".into()));
    }
    let nu = exact_shape_law(pc, m)?;
    let mut sim = Simulator::new(pc);
    let mut shape_counts: BTreeMap<Partition, usize> = BTreeMap::new();
    let mut pattern_counts: BTreeMap<Partition, BTreeMap<GtPattern, usize>> = BTreeMap::new();
    for run in 0..runs {
        let traj = sim.run(m, &mut seed.rng(run as u64));
        let z = traj.patterns.last().expect("trajectories start at the zero pattern").clone();
        let lam = z.shape();
        *shape_counts.entry(lam.clone()).or_default() += 1;
        *pattern_counts.entry(lam).or_default().entry(z).or_default() += 1;
    }
    let freq = |c: usize, total: usize| c as f64 / total as f64;
    let exact_f: BTreeMap<Partition, f64> = nu.iter().map(|(k, v)| (k.clone(), v.to_f64())).collect();
    let emp_f: BTreeMap<Partition, f64> = shape_counts.iter().map(|(k, &c)| (k.clone(), freq(c, runs))).collect();
    let mut shape_keys: Vec<&Partition> = nu.keys().chain(shape_counts.keys()).collect();
    shape_keys.sort();
    shape_keys.dedup();
    let shapes = shape_keys
        .into_iter()
        .map(|lam| ShapeFrequency {
            shape: lam.clone(),
            exact: nu.get(lam).cloned().unwrap_or_default(),
            empirical: format!("{:.6}", emp_f.get(lam).copied().unwrap_or(0.0)),
        })
        .collect();

    let mut conditional = Vec::new();
    let mut conditional_tv = 0.0f64;
    for (lam, counts) in &pattern_counts {
        let samples: usize = counts.values().sum();
        let exact: BTreeMap<GtPattern, f64> =
            conditional_pattern_law(pc, lam)?.into_iter().map(|(z, w)| (z, w.to_f64())).collect();
        let emp: BTreeMap<GtPattern, f64> = counts.iter().map(|(z, &c)| (z.clone(), freq(c, samples))).collect();
        let d = tv(&exact, &emp);
        conditional_tv = conditional_tv.max(d);
        conditional.push(ConditionalReport {
            shape: lam.clone(),
            samples,
            tv: format!("{d:.6}"),
            tv_bound: format!("{:.6}", tv_bound(exact.len(), samples)),
        });
    }

    Ok(EmpiricalReport {
        n: pc.n(),
        m,
        runs,
        seed: seed.0,
        shapes,
        shape_tv: tv(&exact_f, &emp_f),
        shape_tv_bound: tv_bound(nu.len(), runs),
        conditional,
        conditional_tv,
    })
}

/// The exact joint law of `(Z(m), f)` under i.i.d. letters from `ρ`, by
/// summing `ρ^w φ_w` over all `(2n)^m` words.
pub fn exact_joint_law(pc: &ParamContext, m: usize) -> Result<BTreeMap<(GtPattern, OscillatingTableau), ExactScalar>> {
    let rho = LetterDistribution::new(pc);
    let letters = alphabet(pc.n());
    let mut law: BTreeMap<(GtPattern, OscillatingTableau), ExactScalar> = BTreeMap::new();
    for code in 0..letters.len().pow(m as u32) {
        let mut c = code;
        let word: Vec<Letter> = (0..m)
            .map(|_| {
                let l = letters[c % letters.len()];
                c /= letters.len();
                l
            })
            .collect();
        let pw: ExactScalar = word.iter().map(|&l| rho.prob(l)).product();
        for (key, w) in phi_word(pc.ctx(), &word, pc.n())?.iter() {
            *law.entry(key.clone()).or_default() += &pw * w;
        }
    }
    Ok(law)
}

/// The shape path is Markov with kernel `shape_kernel_q` started from `∅`,
/// and given the path, `Z(m)` has law `K_n(f^m, ·) / P_{f^m}`.
pub fn check_markov_laws(pc: &ParamContext, m: usize) -> Result<IdentityReport> {
    let mut report = IdentityReport::new(format!("markov laws (n={}, m={m})", pc.n()));
    let joint = exact_joint_law(pc, m)?;
    let mut paths: BTreeMap<OscillatingTableau, ExactScalar> = BTreeMap::new();
    for ((_, f), w) in &joint {
        *paths.entry(f.clone()).or_default() += w;
    }
    let mut kernel_cache: HashMap<(Partition, Partition), ExactScalar> = HashMap::new();
    for f in crate::tableau::enumerate_oscillating(pc.n(), m, None) {
        let mut product = ExactScalar::one();
        for s in f.shapes().windows(2) {
            let key = (s[0].clone(), s[1].clone());
            if !kernel_cache.contains_key(&key) {
                let v = shape_kernel_q(pc, &s[0], &s[1])?;
                kernel_cache.insert(key.clone(), v);
            }
            product *= &kernel_cache[&key];
        }
        let pf = paths.get(&f).cloned().unwrap_or_default();
        report.check(|| format!("path f={f:?}"), pf.clone(), product);
        if pf.is_zero() {
            continue;
        }
        for (z, want) in conditional_pattern_law(pc, f.shape())? {
            let got = joint.get(&(z.clone(), f.clone())).cloned().unwrap_or_default() / &pf;
            report.check(|| format!("Z={z} | f={f:?}"), got, want);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::QContext;
    use crate::tableau::berele_word;

    fn s(v: &str) -> ExactScalar {
        v.parse().unwrap()
    }

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn pc(a: &[&str], q: &str) -> ParamContext {
        ParamContext::new(a.iter().map(|v| s(v)).collect(), QContext::new(s(q)).unwrap()).unwrap()
    }

    #[test]
    fn letter_law_is_normalized() {
        let rho = LetterDistribution::new(&pc(&["2", "3"], "0"));
        let total: ExactScalar = rho.probs().iter().map(|(_, p)| p.clone()).sum();
        assert_eq!(total, 1);
        assert_eq!(rho.prob(Letter::unbarred(1)), s("12/35"));
        assert_eq!(*rho.thresholds.last().unwrap(), 1u128 << 64);
    }

    #[test]
    fn exact_threshold_sampling() {
        let half = [s("1/2"), s("1/2")];
        let t = cumulative_thresholds(half.iter());
        assert_eq!(t, vec![1u128 << 63, 1u128 << 64]);
        assert_eq!(pick(&t, (1u64 << 63) - 1), 0);
        assert_eq!(pick(&t, 1u64 << 63), 1);
        assert_eq!(pick(&t, u64::MAX), 1);
    }

    #[test]
    fn classic_kernel_examples() {
        let c = pc(&["2"], "0");
        assert_eq!(shape_kernel_classic(&c, &Partition::empty(), &p(&[1])).unwrap(), 1);
        assert_eq!(shape_kernel_classic(&c, &p(&[1]), &p(&[2])).unwrap(), s("21/25"));
        assert_eq!(shape_kernel_classic(&c, &p(&[1]), &Partition::empty()).unwrap(), s("4/25"));
        assert_eq!(shape_kernel_classic(&c, &p(&[1]), &p(&[3])).unwrap(), 0);
        assert_eq!(shape_kernel_q(&pc(&["2"], "1/2"), &Partition::empty(), &p(&[1])).unwrap(), 1);
    }

    #[test]
    fn kernel_rows() {
        for q in ["0", "1/2"] {
            let r = check_shape_kernel_rows(&pc(&["2", "3"], q), 3).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn doob() {
        assert!(doob_decomposition_check(&pc(&["2"], "0"), 3).unwrap().passed());
        assert!(doob_decomposition_check(&pc(&["2", "3"], "0"), 3).unwrap().passed());
        assert!(doob_decomposition_check(&pc(&["2"], "1/2"), 3).is_err());
    }

    #[test]
    fn simulation_basics() {
        let c = pc(&["2", "3"], "1/2");
        let t = simulate(&c, 0, RngSeed(1), 0);
        assert_eq!(t.patterns, vec![GtPattern::zero(2)]);
        assert_eq!(t.shapes, vec![Partition::empty()]);
        let a = simulate(&c, 8, RngSeed(42), 3);
        let b = simulate(&c, 8, RngSeed(42), 3);
        assert_eq!(a, b);
        assert_eq!(a.to_json_lines(true), b.to_json_lines(true));
        assert_eq!(a.to_json_lines(false).lines().count(), 9);
        assert_eq!(a.shape_path().len(), 8);
    }

    #[test]
    fn classic_simulation_follows_berele() {
        let c = pc(&["2", "3"], "0");
        let mut sim = Simulator::new(&c);
        for run in 0..200 {
            let t = sim.run(6, &mut RngSeed(9).rng(run));
            let (_, f) = berele_word(&t.letters, 2).unwrap();
            assert_eq!(t.shapes, f.shapes());
        }
    }

    #[test]
    fn markov_laws_small() {
        for q in ["0", "1/2"] {
            let r = check_markov_laws(&pc(&["2", "3"], q), 3).unwrap();
            assert!(r.passed(), "{r} {:?}", r.failures.first());
        }
    }

    #[test]
    fn single_step_law_is_trivial() {
        let c = pc(&["2"], "1/2");
        let nu = exact_shape_law(&c, 1).unwrap();
        assert_eq!(nu.len(), 1);
        assert_eq!(nu[&p(&[1])], 1);
        let report = empirical_vs_exact(&c, 1, 100, RngSeed(3)).unwrap();
        assert_eq!(report.shape_tv, 0.0);
    }

    #[test]
    fn empirical_report_is_close() {
        let c = pc(&["2"], "1/2");
        let report = empirical_vs_exact(&c, 3, 20_000, RngSeed(11)).unwrap();
        assert!(report.shape_tv < report.shape_tv_bound);
        assert!(empirical_vs_exact(&c, 3, 0, RngSeed(11)).is_err());
    }
}
