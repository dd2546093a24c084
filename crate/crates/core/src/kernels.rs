//! The shape kernel `L_n`, the pattern kernels `K_n`, `M_n`, their bottom
//! three-level reductions `K̂_n`, `M̂_n`, and exact intertwining sweeps.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{q_binomial, ExactScalar, QContext};
use crate::partition::{enumerate_lambda_n, interlaces_positional, one_box_neighbors, Partition};
use crate::pattern::{enumerate_patterns, GtPattern};
use crate::qinsert::{insert_unchecked, l_raw, phi_word, r_raw};
use crate::report::IdentityReport;
use crate::tableau::{alphabet, enumerate_oscillating, Letter};

/// Rank `n`, positive parameters `a_1..a_n` and the deformation `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamContext {
    n: usize,
    a: Vec<ExactScalar>,
    ctx: QContext,
}

impl ParamContext {
    pub fn new(a: Vec<ExactScalar>, ctx: QContext) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        if let Some((index, value)) = a.iter().enumerate().find(|(_, v)| !v.is_positive()) {
            return Err(Error::NonPositiveParameter {
                index: index + 1,
                value: value.to_string(),
            });
        }
        Ok(ParamContext { n: a.len(), a, ctx })
    }

    /// Like [`ParamContext::new`] but also checks the length against `n`.
    pub fn with_rank(n: usize, a: Vec<ExactScalar>, ctx: QContext) -> Result<Self> {
        if a.len() != n {
            return Err(Error::ParameterCount { expected: n, got: a.len() });
        }
        ParamContext::new(a, ctx)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &[ExactScalar] {
        &self.a
    }

    pub fn ctx(&self) -> &QContext {
        &self.ctx
    }

    /// `a_l`, with `a_{l̄} = 1/a_l`.
    pub fn a_letter(&self, l: Letter) -> ExactScalar {
        let a = &self.a[l.value() as usize - 1];
        if l.is_barred() {
            a.recip().expect("parameters are positive")
        } else {
            a.clone()
        }
    }

    /// `Σ_i (a_i + 1/a_i)`.
    pub fn total_weight(&self) -> ExactScalar {
        self.a
            .iter()
            .map(|a| a + &a.recip().expect("parameters are positive"))
            .sum()
    }

    /// The same parameters with `q` replaced.
    pub fn with_q(&self, ctx: QContext) -> Self {
        ParamContext { ctx, ..self.clone() }
    }
}

/// `u^+_{i}(λ)`: 1 for `i = 1`, else `1 - q^{λ_{i-1} - λ_i}`.
pub fn u_plus(ctx: &QContext, lam: &Partition, i: usize) -> ExactScalar {
    if i == 1 {
        return ExactScalar::one();
    }
    ctx.one_minus_pow(lam.part(i - 1) - lam.part(i))
}

/// `u^-_{i}(λ) = 1 - q^{λ_i - λ_{i+1}}`, so `1 - q^{λ_n}` for the last row.
pub fn u_minus(ctx: &QContext, lam: &Partition, i: usize) -> ExactScalar {
    ctx.one_minus_pow(lam.part(i) - lam.part(i + 1))
}

/// `L_n(λ, μ)`: `u^±_{n,i}(λ)` when `μ = λ ± e_i` lies in `Λ_n`, else 0.
pub fn kernel_l(pc: &ParamContext, lam: &Partition, mu: &Partition) -> ExactScalar {
    shape_kernel(pc.n, &pc.ctx, lam, mu)
}

pub(crate) fn shape_kernel(n: usize, ctx: &QContext, lam: &Partition, mu: &Partition) -> ExactScalar {
    if !lam.in_lambda(n) || !mu.in_lambda(n) {
        return ExactScalar::zero();
    }
    for i in 1..=n {
        if lam.add_box(i).as_ref() == Some(mu) {
            return u_plus(ctx, lam, i);
        }
        if lam.remove_box(i).as_ref() == Some(mu) {
            return u_minus(ctx, lam, i);
        }
    }
    ExactScalar::zero()
}

fn qb(ctx: &QContext, n: u32, k: u32) -> ExactScalar {
    q_binomial(ctx, n as i64, k as i64)
}

/// `κ_n(Z)`, a product of q-binomials over consecutive levels.
pub fn kappa(pc: &ParamContext, z: &GtPattern) -> ExactScalar {
    kappa_q(&pc.ctx, z)
}

pub(crate) fn kappa_q(ctx: &QContext, z: &GtPattern) -> ExactScalar {
    let mut out = ExactScalar::one();
    for k in 1..=z.n() {
        let odd = z.level(2 * k - 1);
        let even = z.level(2 * k);
        let above: &[u32] = if k > 1 { z.level(2 * k - 2) } else { &[] };
        for i in 0..k - 1 {
            out *= &qb(ctx, odd[i] - odd[i + 1], odd[i] - above[i]);
            out *= &qb(ctx, even[i] - even[i + 1], even[i] - odd[i]);
        }
        out *= &qb(ctx, even[k - 1], even[k - 1] - odd[k - 1]);
    }
    out
}

/// `a^Z = Π_i a_i^{2|z^{2i-1}| - |z^{2i}| - |z^{2i-2}|}`.
pub fn pattern_monomial(pc: &ParamContext, z: &GtPattern) -> ExactScalar {
    (1..=z.n())
        .map(|i| {
            let e = 2 * z.level_weight(2 * i - 1) - z.level_weight(2 * i) - z.level_weight(2 * i - 2);
            pc.a[i - 1].powi(e).expect("parameters are positive")
        })
        .product()
}

/// `K_n(λ, Z) = a^Z κ_n(Z) 1[z^{2n} = λ]`.
pub fn kernel_k(pc: &ParamContext, lam: &Partition, z: &GtPattern) -> ExactScalar {
    if z.shape() != *lam {
        return ExactScalar::zero();
    }
    pattern_monomial(pc, z) * kappa(pc, z)
}

/// The row `M_n(Z, ·) = Σ_l a_l I_l(Z, ·)`.
pub fn kernel_m_row(pc: &ParamContext, z: &GtPattern) -> BTreeMap<GtPattern, ExactScalar> {
    let mut row: BTreeMap<GtPattern, ExactScalar> = BTreeMap::new();
    for l in alphabet(pc.n) {
        let a = pc.a_letter(l);
        for (zt, p) in insert_unchecked(&pc.ctx, z, l).iter() {
            *row.entry(zt.clone()).or_default() += &a * p;
        }
    }
    row
}

pub fn kernel_m(pc: &ParamContext, z: &GtPattern, z2: &GtPattern) -> ExactScalar {
    kernel_m_row(pc, z).remove(z2).unwrap_or_default()
}

/// A triple `x ⪯ y ⪯ z` of bottom levels, with `x ∈ Λ_{n-1}` and
/// `y, z ∈ Λ_n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BottomTriple {
    pub x: Partition,
    pub y: Partition,
    pub z: Partition,
}

impl BottomTriple {
    pub fn new(n: usize, x: Partition, y: Partition, z: Partition) -> Result<Self> {
        let t = BottomTriple { x, y, z };
        if !t.is_valid(n) {
            return Err(Error::Invalid(format!("({}, {}, {}) is not an interlaced triple for n={n}", t.x, t.y, t.z)));
        }
        Ok(t)
    }

    pub fn is_valid(&self, n: usize) -> bool {
        n >= 1
            && self.x.in_lambda(n - 1)
            && self.y.in_lambda(n)
            && self.z.in_lambda(n)
            && interlaces_positional(&self.x.padded(n - 1), &self.y.padded(n))
            && interlaces_positional(&self.y.padded(n), &self.z.padded(n))
    }

    /// The bottom three levels of a pattern.
    pub fn of_pattern(z: &GtPattern) -> Self {
        let n = z.n();
        let x = if n > 1 { z.level_partition(2 * n - 2) } else { Partition::empty() };
        BottomTriple {
            x,
            y: z.level_partition(2 * n - 1),
            z: z.level_partition(2 * n),
        }
    }
}

impl fmt::Display for BottomTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// Every triple in `T_n` with bottom level `z`.
pub fn triples_over(n: usize, z: &Partition) -> Vec<BottomTriple> {
    let zp = z.padded(n);
    let mut out = Vec::new();
    let mut ys = Vec::new();
    choose_interlaced(&zp, n, &mut Vec::new(), &mut ys);
    for y in ys {
        let mut xs = Vec::new();
        choose_interlaced(&y, n - 1, &mut Vec::new(), &mut xs);
        for x in xs {
            out.push(BottomTriple {
                x: Partition::new(x).expect("interlaced levels decrease"),
                y: Partition::new(y.clone()).expect("interlaced levels decrease"),
                z: z.clone(),
            });
        }
    }
    out.sort();
    out
}

fn choose_interlaced(below: &[u32], len: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    let i = cur.len();
    if i == len {
        out.push(cur.clone());
        return;
    }
    let lo = below.get(i + 1).copied().unwrap_or(0);
    for v in lo..=below[i] {
        cur.push(v);
        choose_interlaced(below, len, cur, out);
        cur.pop();
    }
}

fn hat_kappa(ctx: &QContext, n: usize, t: &BottomTriple) -> ExactScalar {
    let (x, y, z) = (&t.x, &t.y, &t.z);
    let mut out = ExactScalar::one();
    for i in 1..n {
        out *= &qb(ctx, z.part(i) - z.part(i + 1), z.part(i) - y.part(i));
        out *= &qb(ctx, y.part(i) - y.part(i + 1), y.part(i) - x.part(i));
    }
    out * qb(ctx, z.part(n), z.part(n) - y.part(n))
}

/// `K̂_n(z̃, (x,y,z)) = a_n^{2|y|-|x|-|z|} κ̂_n(x,y,z) 1[z = z̃]`.
pub fn hat_k(pc: &ParamContext, lam: &Partition, t: &BottomTriple) -> ExactScalar {
    if t.z != *lam || !t.is_valid(pc.n) {
        return ExactScalar::zero();
    }
    let e = 2 * t.y.weight() as i64 - t.x.weight() as i64 - t.z.weight() as i64;
    let an = pc.a[pc.n - 1].powi(e).expect("parameters are positive");
    an * hat_kappa(&pc.ctx, pc.n, t)
}

fn shift(p: &Partition, i: usize, up: bool) -> Option<Partition> {
    if up {
        p.add_box(i)
    } else {
        p.remove_box(i)
    }
}

/// The row `M̂_n((x,y,z), ·)`, following the thirteen tabulated transitions
/// (or the three base-case transitions when `n = 1`). Targets outside `T_n`
/// are dropped.
pub fn hat_m_row(pc: &ParamContext, t: &BottomTriple) -> BTreeMap<BottomTriple, ExactScalar> {
    let n = pc.n;
    let ctx = &pc.ctx;
    let an = pc.a[n - 1].clone();
    let an_inv = an.recip().expect("parameters are positive");
    let one = ExactScalar::one();
    let xp = t.x.padded(n - 1);
    let yp = t.y.padded(n);
    let zp = t.z.padded(n);
    let r_yx = |i: usize| r_raw(ctx, &xp, &yp, i);
    let r_zy = |i: usize| r_raw(ctx, &yp, &zp, i);
    let l_yx = |i: usize| l_raw(ctx, &xp, &yp, i);
    let l_zy = |i: usize| l_raw(ctx, &yp, &zp, i);

    // (x shift, y shift, z shift, weight); a shift is (index, up).
    type Move = Option<(usize, bool)>;
    let mut rows: Vec<(Move, Move, Move, ExactScalar)> = Vec::new();
    if n == 1 {
        let r = r_zy(1);
        rows.push((None, Some((1, true)), Some((1, true)), &an * &r));
        rows.push((None, None, Some((1, false)), &an * &(&one - &r)));
        rows.push((None, None, Some((1, true)), an_inv));
    } else {
        for i in 1..n {
            let up = u_plus(ctx, &t.x, i);
            let (ryx, rzy_i, rzy_n) = (r_yx(i), r_zy(i), r_zy(i + 1));
            rows.push((Some((i, true)), Some((i, true)), Some((i, true)), &ryx * &rzy_i * &up));
            rows.push((Some((i, true)), Some((i, true)), Some((i + 1, true)), &ryx * &(&one - &rzy_i) * &up));
            rows.push((Some((i, true)), Some((i + 1, true)), Some((i + 1, true)), (&one - &ryx) * &rzy_n * &up));
            if i + 2 <= n {
                rows.push((Some((i, true)), Some((i + 1, true)), Some((i + 2, true)), (&one - &ryx) * (&one - &rzy_n) * &up));
            }
        }
        let up = u_plus(ctx, &t.x, n - 1);
        rows.push((Some((n - 1, true)), None, Some((n, false)), (&one - &r_yx(n - 1)) * (&one - &r_zy(n)) * up));
        let r1 = r_zy(1);
        rows.push((None, Some((1, true)), Some((1, true)), &an * &r1));
        rows.push((None, Some((1, true)), Some((2, true)), &an * &(&one - &r1)));
        rows.push((None, None, Some((1, true)), an_inv));
        for i in 1..n {
            let um = u_minus(ctx, &t.x, i);
            let (lyx, lzy_i) = (l_yx(i), l_zy(i));
            rows.push((Some((i, false)), Some((i, false)), Some((i, false)), (&one - &lyx) * (&one - &lzy_i) * &um));
            rows.push((Some((i, false)), Some((i, false)), Some((i + 1, false)), (&one - &lyx) * &lzy_i * &um));
            if i + 2 <= n {
                let lzy_n = l_zy(i + 1);
                rows.push((Some((i, false)), Some((i + 1, false)), Some((i + 1, false)), &lyx * &(&one - &lzy_n) * &um));
                rows.push((Some((i, false)), Some((i + 1, false)), Some((i + 2, false)), &lyx * &lzy_n * &um));
            }
        }
        let um = u_minus(ctx, &t.x, n - 1);
        rows.push((Some((n - 1, false)), Some((n, false)), Some((n, false)), l_yx(n - 1) * um));
    }

    let apply = |p: &Partition, m: Move| match m {
        None => Some(p.clone()),
        Some((i, up)) => shift(p, i, up),
    };
    let mut out: BTreeMap<BottomTriple, ExactScalar> = BTreeMap::new();
    for (mx, my, mz, w) in rows {
        if w.is_zero() {
            continue;
        }
        let target = match (apply(&t.x, mx), apply(&t.y, my), apply(&t.z, mz)) {
            (Some(x), Some(y), Some(z)) => BottomTriple { x, y, z },
            _ => continue,
        };
        if target.is_valid(n) {
            *out.entry(target).or_default() += w;
        }
    }
    out
}

pub fn hat_m(pc: &ParamContext, t: &BottomTriple, t2: &BottomTriple) -> ExactScalar {
    hat_m_row(pc, t).remove(t2).unwrap_or_default()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntertwiningFailure {
    pub lambda: Partition,
    pub ztilde: serde_json::Value,
    pub lhs: ExactScalar,
    pub rhs: ExactScalar,
}

/// Result of an exact intertwining sweep.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IntertwiningReport {
    pub checked: usize,
    pub failures: Vec<IntertwiningFailure>,
}

impl IntertwiningReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn merge(&mut self, other: IntertwiningReport) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }

    fn compare<K: Ord + Serialize>(&mut self, lambda: &Partition, lhs: BTreeMap<K, ExactScalar>, rhs: BTreeMap<K, ExactScalar>) {
        let keys: BTreeSet<&K> = lhs.keys().chain(rhs.keys()).collect();
        for key in keys {
            self.checked += 1;
            let l = lhs.get(key).cloned().unwrap_or_default();
            let r = rhs.get(key).cloned().unwrap_or_default();
            if l != r {
                self.failures.push(IntertwiningFailure {
                    lambda: lambda.clone(),
                    ztilde: serde_json::to_value(key).expect("keys serialize"),
                    lhs: l,
                    rhs: r,
                });
            }
        }
    }
}

impl fmt::Display for IntertwiningReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} intertwining: {} instances, {} failures", self.checked, self.failures.len())
    }
}

/// `(K_n M_n)(λ, Z̃) = (L_n K_n)(λ, Z̃)` for every `λ` with `λ_1 <= bound`,
/// over every `Z̃` reachable from either side.
pub fn verify_pattern_intertwining(pc: &ParamContext, bound: u32) -> Result<IntertwiningReport> {
    let mut report = IntertwiningReport::default();
    for lam in enumerate_lambda_n(pc.n, bound) {
        let mut lhs: BTreeMap<GtPattern, ExactScalar> = BTreeMap::new();
        for z in enumerate_patterns(&lam, pc.n)? {
            let k = kernel_k(pc, &lam, &z);
            for (zt, m) in kernel_m_row(pc, &z) {
                *lhs.entry(zt).or_default() += &k * &m;
            }
        }
        let mut rhs: BTreeMap<GtPattern, ExactScalar> = BTreeMap::new();
        for mu in one_box_neighbors(&lam, pc.n)? {
            let l = kernel_l(pc, &lam, &mu);
            for zt in enumerate_patterns(&mu, pc.n)? {
                let k = kernel_k(pc, &mu, &zt);
                rhs.insert(zt, &l * &k);
            }
        }
        report.compare(&lam, lhs, rhs);
    }
    Ok(report)
}

/// `(K̂_n M̂_n)(z, t̃) = (L_n K̂_n)(z, t̃)` for every `z` with `z_1 <= bound`.
pub fn verify_hat_intertwining(pc: &ParamContext, bound: u32) -> Result<IntertwiningReport> {
    let n = pc.n;
    let mut report = IntertwiningReport::default();
    for lam in enumerate_lambda_n(n, bound) {
        let mut lhs: BTreeMap<BottomTriple, ExactScalar> = BTreeMap::new();
        for t in triples_over(n, &lam) {
            let k = hat_k(pc, &lam, &t);
            for (tt, m) in hat_m_row(pc, &t) {
                *lhs.entry(tt).or_default() += &k * &m;
            }
        }
        let mut rhs: BTreeMap<BottomTriple, ExactScalar> = BTreeMap::new();
        for mu in one_box_neighbors(&lam, n)? {
            let l = kernel_l(pc, &lam, &mu);
            for tt in triples_over(n, &mu) {
                let k = hat_k(pc, &mu, &tt);
                rhs.insert(tt, &l * &k);
            }
        }
        report.compare(&lam, lhs, rhs);
    }
    Ok(report)
}

/// Both intertwining relations, merged.
pub fn verify_intertwining(pc: &ParamContext, bound: u32) -> Result<IntertwiningReport> {
    let mut report = verify_pattern_intertwining(pc, bound)?;
    report.merge(verify_hat_intertwining(pc, bound)?);
    Ok(report)
}

/// `Σ_w a^w φ_w(Z, f) = a^Z κ_n(Z) Π_i L_n(f^{i-1}, f^i)` over all words of
/// length `m`, for every `(Z, f)` with `z^{2n} = f^m`.
pub fn check_weight_identity(pc: &ParamContext, m: usize) -> Result<IdentityReport> {
    let n = pc.n;
    let mut report = IdentityReport::new(format!("weight identity (n={n}, m={m})"));
    let letters = alphabet(n);
    let mut lhs: BTreeMap<(GtPattern, crate::tableau::OscillatingTableau), ExactScalar> = BTreeMap::new();
    let total = letters.len().pow(m as u32);
    for code in 0..total {
        let mut c = code;
        let word: Vec<Letter> = (0..m)
            .map(|_| {
                let l = letters[c % letters.len()];
                c /= letters.len();
                l
            })
            .collect();
        let aw: ExactScalar = word.iter().map(|&l| pc.a_letter(l)).product();
        for (key, w) in phi_word(&pc.ctx, &word, n)?.iter() {
            *lhs.entry(key.clone()).or_default() += &aw * w;
        }
    }
    for f in enumerate_oscillating(n, m, None) {
        let path: ExactScalar = f.shapes().windows(2).map(|s| kernel_l(pc, &s[0], &s[1])).product();
        for z in enumerate_patterns(f.shape(), n)? {
            let rhs = pattern_monomial(pc, &z) * kappa(pc, &z) * &path;
            let key = (z, f.clone());
            let got = lhs.remove(&key).unwrap_or_default();
            report.check(|| format!("Z={} f={:?}", key.0, key.1), got, rhs);
        }
    }
    for ((z, f), w) in lhs {
        report.check(|| format!("Z={z} f={f:?} (off-support)"), w, ExactScalar::zero());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::pattern_to_tableau;
    use crate::qinsert::patterns_up_to;
    use crate::tableau::tableau_weight;

    fn s(v: &str) -> ExactScalar {
        v.parse().unwrap()
    }

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn pc(a: &[&str], q: &str) -> ParamContext {
        ParamContext::new(a.iter().map(|v| s(v)).collect(), QContext::new(s(q)).unwrap()).unwrap()
    }

    fn gt(n: usize, levels: &[&[u32]]) -> GtPattern {
        GtPattern::new(n, levels.iter().map(|l| l.to_vec()).collect()).unwrap()
    }

    #[test]
    fn parameter_errors() {
        let ctx = QContext::classic();
        assert!(ParamContext::new(vec![s("0")], ctx.clone()).is_err());
        assert!(ParamContext::new(vec![s("-1")], ctx.clone()).is_err());
        assert!(ParamContext::with_rank(2, vec![s("1")], ctx).is_err());
    }

    #[test]
    fn l_examples() {
        let c = pc(&["2", "3"], "1/2");
        assert_eq!(kernel_l(&c, &p(&[2, 1]), &p(&[3, 1])), 1);
        assert_eq!(kernel_l(&c, &p(&[2, 1]), &p(&[2, 2])), s("1/2"));
        assert_eq!(kernel_l(&c, &p(&[2, 1]), &p(&[2])), s("1/2"));
        assert_eq!(kernel_l(&c, &p(&[2, 1]), &p(&[1, 1])), s("1/2"));
        assert_eq!(kernel_l(&c, &p(&[2, 1]), &p(&[3, 2])), 0);
        assert_eq!(kernel_l(&c, &p(&[2, 1]), &p(&[2, 1, 1])), 0);
    }

    #[test]
    fn kappa_and_monomial_examples() {
        let c = pc(&["2"], "1/2");
        assert_eq!(kappa(&c, &GtPattern::zero(1)), 1);
        let z = gt(1, &[&[1], &[2]]);
        assert_eq!(kappa(&c, &z), s("3/2"));
        assert_eq!(pattern_monomial(&c, &z), 1);
        assert_eq!(pattern_monomial(&c, &GtPattern::zero(1)), 1);
        assert_eq!(kernel_k(&c, &p(&[2]), &z), s("3/2"));
        assert_eq!(kernel_k(&c, &p(&[1]), &z), 0);
        assert_eq!(kernel_k(&c, &Partition::empty(), &GtPattern::zero(1)), 1);
        let classic = c.with_q(QContext::classic());
        for z in patterns_up_to(2, 3) {
            assert_eq!(kappa(&classic, &z), 1);
        }
    }

    #[test]
    fn monomial_is_tableau_weight() {
        let c = pc(&["2", "3"], "1/2");
        for n in 1..=2 {
            let c = ParamContext::new(c.a()[..n].to_vec(), c.ctx().clone()).unwrap();
            for z in patterns_up_to(n, 4) {
                if z.shape().weight() > 4 {
                    continue;
                }
                let t = pattern_to_tableau(&z).unwrap();
                assert_eq!(pattern_monomial(&c, &z), tableau_weight(&t, c.a()).unwrap());
            }
        }
    }

    #[test]
    fn m_examples() {
        let c = pc(&["2"], "1/2");
        let z = gt(1, &[&[0], &[1]]);
        assert_eq!(kernel_m(&c, &z, &gt(1, &[&[0], &[2]])), s("1/2"));
        assert_eq!(kernel_m(&c, &z, &gt(1, &[&[1], &[2]])), 1);
        assert_eq!(kernel_m(&c, &z, &gt(1, &[&[1], &[3]])), 0);
    }

    #[test]
    fn m_row_sums() {
        for q in ["0", "1/2"] {
            let c = pc(&["2", "3"], q);
            for z in patterns_up_to(2, 3) {
                let sum: ExactScalar = kernel_m_row(&c, &z).values().sum();
                assert_eq!(sum, c.total_weight());
            }
        }
    }

    #[test]
    fn hat_examples() {
        let c = pc(&["2", "3"], "1/2");
        let t = BottomTriple::new(2, p(&[1]), p(&[2, 1]), p(&[3, 1])).unwrap();
        let target = BottomTriple::new(2, p(&[1]), p(&[3, 1]), p(&[4, 1])).unwrap();
        let r1 = r_raw(c.ctx(), &[2, 1], &[3, 1], 1);
        assert_eq!(hat_m(&c, &t, &target), s("3") * r1);
        let far = BottomTriple::new(2, p(&[1]), p(&[2, 1]), p(&[3, 2])).unwrap();
        assert_eq!(hat_m(&c, &t, &far), 0);
        assert_eq!(hat_k(&c, &p(&[3]), &t), 0);
        assert!(hat_k(&c, &p(&[3, 1]), &t).is_positive());
        assert!(BottomTriple::new(2, p(&[3]), p(&[2, 1]), p(&[3, 1])).is_err());
    }

    #[test]
    fn hat_m_matches_bottom_letters_of_m() {
        // The letters n and n̄ only touch the bottom two levels.
        let c = pc(&["2", "3"], "1/2");
        for z in patterns_up_to(2, 3) {
            let t = BottomTriple::of_pattern(&z);
            let row = hat_m_row(&c, &t);
            for l in [Letter::unbarred(2), Letter::barred(2)] {
                for (zt, prob) in insert_unchecked(c.ctx(), &z, l).iter() {
                    assert_eq!(zt.truncated(), z.truncated());
                    let tt = BottomTriple::of_pattern(zt);
                    let want = c.a_letter(l) * prob;
                    let got = row.get(&tt).cloned().unwrap_or_default();
                    assert!(got >= 0);
                    assert_eq!(got, want, "{z} -> {zt}");
                }
            }
        }
    }

    #[test]
    fn kernel_k_factorizes() {
        let c = pc(&["2", "3"], "1/3");
        let upper = ParamContext::new(vec![s("2")], c.ctx().clone()).unwrap();
        for z in patterns_up_to(2, 3) {
            let t = BottomTriple::of_pattern(&z);
            let top = z.truncated().unwrap();
            let want = kernel_k(&upper, &t.x, &top) * hat_k(&c, &t.z, &t);
            assert_eq!(kernel_k(&c, &z.shape(), &z), want);
        }
    }

    #[test]
    fn intertwining_n1() {
        let report = verify_intertwining(&pc(&["2"], "1/2"), 3).unwrap();
        assert!(report.passed(), "{:?}", report.failures.first());
    }

    #[test]
    fn intertwining_n2() {
        for q in ["0", "1/2"] {
            let report = verify_intertwining(&pc(&["2", "3"], q), 3).unwrap();
            assert!(report.passed(), "q={q}: {:?}", report.failures.first());
        }
    }

    #[test]
    fn weight_identity_small() {
        let report = check_weight_identity(&pc(&["2", "3"], "1/2"), 3).unwrap();
        assert!(report.passed(), "{:?}", report.failures.first());
    }

    #[test]
    fn report_json() {
        let report = verify_intertwining(&pc(&["2"], "1/2"), 1).unwrap();
        let json = serde_json::to_value(&report).unwrap();
        assert!(json["checked"].as_u64().unwrap() > 0);
        assert!(json["failures"].as_array().unwrap().is_empty());
    }
}
