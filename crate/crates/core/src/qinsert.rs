//! The q-deformed insertion: jump probabilities, the one-letter kernel as an
//! exact distribution over patterns, and the word weights `φ_w`.

use std::collections::BTreeMap;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{ExactScalar, QContext};
use crate::partition::{enumerate_lambda_n, interlaces_positional, Partition};
use crate::pattern::{classic_insert_pattern, enumerate_patterns, is_diagonal, GtPattern, Motion};
use crate::report::IdentityReport;
use crate::tableau::{Letter, OscillatingTableau};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairMode {
    /// Both levels carry `k` particles.
    SameLength,
    /// The upper level carries `k - 1` particles, the lower one `k`.
    Grow,
}

/// Two consecutive pattern levels `x ⪯ y`, stored positionally.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct InterlacedPair {
    x: Vec<u32>,
    y: Vec<u32>,
    mode: PairMode,
}

impl InterlacedPair {
    /// The mode is read off the lengths.
    pub fn new(x: Vec<u32>, y: Vec<u32>) -> Result<Self> {
        let mode = if x.len() == y.len() {
            PairMode::SameLength
        } else if x.len() + 1 == y.len() {
            PairMode::Grow
        } else {
            return Err(Error::NotInterlaced { x, y });
        };
        if !interlaces_positional(&x, &y) || !is_decreasing(&x) || !is_decreasing(&y) {
            return Err(Error::NotInterlaced { x, y });
        }
        Ok(InterlacedPair { x, y, mode })
    }

    /// Pads both partitions to the lengths dictated by `mode` and `k`, the
    /// number of particles on the lower level.
    pub fn from_partitions(x: &Partition, y: &Partition, k: usize, mode: PairMode) -> Result<Self> {
        let upper = match mode {
            PairMode::SameLength => k,
            PairMode::Grow => k.checked_sub(1).ok_or(Error::IndexOutOfRange { index: 0, max: 0 })?,
        };
        if !x.in_lambda(upper) {
            return Err(Error::NotInLambda { partition: x.parts().to_vec(), n: upper });
        }
        if !y.in_lambda(k) {
            return Err(Error::NotInLambda { partition: y.parts().to_vec(), n: k });
        }
        InterlacedPair::new(x.padded(upper), y.padded(k))
    }

    pub fn x(&self) -> &[u32] {
        &self.x
    }

    pub fn y(&self) -> &[u32] {
        &self.y
    }

    pub fn mode(&self) -> PairMode {
        self.mode
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.x.len() {
            return Err(Error::IndexOutOfRange { index: i, max: self.x.len() });
        }
        Ok(())
    }
}

fn is_decreasing(v: &[u32]) -> bool {
    v.windows(2).all(|w| w[0] >= w[1])
}

/// `r_i(y;x) = q^{y_i-x_i} (1-q^{x_{i-1}-y_i}) / (1-q^{x_{i-1}-x_i})` with
/// `x_0 = ∞`.
pub fn r_prob(ctx: &QContext, pair: &InterlacedPair, i: usize) -> Result<ExactScalar> {
    pair.check_index(i)?;
    Ok(r_raw(ctx, &pair.x, &pair.y, i))
}

/// `l_i(y;x) = q^{x_i-y_{i+1}} (1-q^{y_{i+1}-x_{i+1}}) / (1-q^{x_i-x_{i+1}})`
/// with absent entries read as 0.
pub fn l_prob(ctx: &QContext, pair: &InterlacedPair, i: usize) -> Result<ExactScalar> {
    pair.check_index(i)?;
    Ok(l_raw(ctx, &pair.x, &pair.y, i))
}

/// Unchecked `r_i`; `x` and `y` must interlace.
pub(crate) fn r_raw(ctx: &QContext, x: &[u32], y: &[u32], i: usize) -> ExactScalar {
    let xi = x[i - 1];
    let yi = y[i - 1];
    let lead = ctx.pow(yi - xi);
    if i == 1 {
        return lead;
    }
    let prev = x[i - 2];
    if prev == xi {
        return ExactScalar::one();
    }
    lead * ctx.one_minus_pow(prev - yi) / ctx.one_minus_pow(prev - xi)
}

/// Unchecked `l_i`; `x` and `y` must interlace.
pub(crate) fn l_raw(ctx: &QContext, x: &[u32], y: &[u32], i: usize) -> ExactScalar {
    let at = |v: &[u32], j: usize| v.get(j - 1).copied().unwrap_or(0);
    let xi = at(x, i);
    let next = at(x, i + 1);
    if xi == next {
        return ExactScalar::one();
    }
    let yn = at(y, i + 1);
    ctx.pow(xi - yn) * ctx.one_minus_pow(yn - next) / ctx.one_minus_pow(xi - next)
}

/// A finite probability distribution on patterns.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PatternDistribution {
    outcomes: BTreeMap<GtPattern, ExactScalar>,
}

impl PatternDistribution {
    pub fn point(z: GtPattern) -> Self {
        let mut outcomes = BTreeMap::new();
        outcomes.insert(z, ExactScalar::one());
        PatternDistribution { outcomes }
    }

    pub fn outcomes(&self) -> &BTreeMap<GtPattern, ExactScalar> {
        &self.outcomes
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GtPattern, &ExactScalar)> {
        self.outcomes.iter()
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    pub fn prob(&self, z: &GtPattern) -> ExactScalar {
        self.outcomes.get(z).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> ExactScalar {
        self.outcomes.values().sum()
    }

    fn add(&mut self, z: GtPattern, p: ExactScalar) {
        *self.outcomes.entry(z).or_default() += p;
    }
}

impl Serialize for PatternDistribution {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            pattern: &'a GtPattern,
            prob: &'a ExactScalar,
        }
        let mut seq = serializer.serialize_seq(Some(self.outcomes.len()))?;
        for (pattern, prob) in &self.outcomes {
            seq.serialize_element(&Entry { pattern, prob })?;
        }
        seq.end()
    }
}

/// The kernel `I_l(z, ·)`: every branch of the random cascade started by an
/// attempted right jump of `z^{order(l)}_1`.
pub fn insert_letter(ctx: &QContext, z: &GtPattern, l: Letter) -> Result<PatternDistribution> {
    z.check()?;
    l.check_alphabet(z.n())?;
    Ok(insert_unchecked(ctx, z, l))
}

pub(crate) fn insert_unchecked(ctx: &QContext, z: &GtPattern, l: Letter) -> PatternDistribution {
    let bottom = 2 * z.n();
    let mut out = PatternDistribution::default();
    let mut stack = vec![(z.clone(), l.order(), 1usize, Motion::Right, ExactScalar::one())];
    while let Some((mut cur, k, i, motion, p)) = stack.pop() {
        let mut branch = |cur: GtPattern, w: ExactScalar, next: (usize, Motion)| {
            if !w.is_zero() {
                stack.push((cur, k + 1, next.0, next.1, &p * &w));
            }
        };
        match motion {
            Motion::Right if k == bottom => {
                cur.level_mut(k)[i - 1] += 1;
                out.add(cur, p);
            }
            Motion::Right => {
                let r = r_raw(ctx, cur.level(k), cur.level(k + 1), i);
                let rest = ExactScalar::one() - &r;
                if is_diagonal(k, i) {
                    let stay = cur.clone();
                    cur.level_mut(k)[i - 1] += 1;
                    branch(cur, r, (i, Motion::Right));
                    branch(stay, rest, (i, Motion::Left));
                } else {
                    cur.level_mut(k)[i - 1] += 1;
                    branch(cur.clone(), r, (i, Motion::Right));
                    branch(cur, rest, (i + 1, Motion::Right));
                }
            }
            Motion::Left => {
                let lp = if k == bottom {
                    ExactScalar::zero()
                } else {
                    l_raw(ctx, cur.level(k), cur.level(k + 1), i)
                };
                cur.level_mut(k)[i - 1] -= 1;
                if k == bottom {
                    out.add(cur, p);
                    continue;
                }
                let rest = ExactScalar::one() - &lp;
                branch(cur.clone(), lp, (i + 1, Motion::Left));
                branch(cur, rest, (i, Motion::Left));
            }
        }
    }
    debug_assert!(out.outcomes.keys().all(|z| z.check().is_ok()));
    out
}

/// Weights `φ_w(Z, f)` indexed by pattern and recorded shape sequence.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightTable {
    entries: BTreeMap<(GtPattern, OscillatingTableau), ExactScalar>,
}

impl WeightTable {
    pub fn entries(&self) -> &BTreeMap<(GtPattern, OscillatingTableau), ExactScalar> {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(GtPattern, OscillatingTableau), &ExactScalar)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn weight(&self, z: &GtPattern, f: &OscillatingTableau) -> ExactScalar {
        self.entries.get(&(z.clone(), f.clone())).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> ExactScalar {
        self.entries.values().sum()
    }

    /// Marginal law of the recorded shape sequence.
    pub fn shape_marginal(&self) -> BTreeMap<OscillatingTableau, ExactScalar> {
        let mut out: BTreeMap<OscillatingTableau, ExactScalar> = BTreeMap::new();
        for ((_, f), w) in &self.entries {
            *out.entry(f.clone()).or_default() += w;
        }
        out
    }

    /// Marginal law of the final pattern.
    pub fn pattern_marginal(&self) -> BTreeMap<GtPattern, ExactScalar> {
        let mut out: BTreeMap<GtPattern, ExactScalar> = BTreeMap::new();
        for ((z, _), w) in &self.entries {
            *out.entry(z.clone()).or_default() += w;
        }
        out
    }
}

impl Serialize for WeightTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            pattern: &'a GtPattern,
            f: &'a OscillatingTableau,
            weight: &'a ExactScalar,
        }
        let mut seq = serializer.serialize_seq(Some(self.entries.len()))?;
        for ((pattern, f), weight) in &self.entries {
            seq.serialize_element(&Entry { pattern, f, weight })?;
        }
        seq.end()
    }
}

/// `φ_{wl}(Z̃, f̃) = Σ_Z φ_w(Z, f) I_l(Z, Z̃)`, where `f̃` extends `f` by the
/// bottom level of `Z̃`.
pub fn phi_word(ctx: &QContext, w: &[Letter], n: usize) -> Result<WeightTable> {
    if n == 0 {
        return Err(Error::EmptyAlphabet);
    }
    for l in w {
        l.check_alphabet(n)?;
    }
    let mut table = WeightTable::default();
    table
        .entries
        .insert((GtPattern::zero(n), OscillatingTableau::trivial()), ExactScalar::one());
    for &l in w {
        let mut next = WeightTable::default();
        for ((z, f), weight) in &table.entries {
            for (zt, p) in insert_unchecked(ctx, z, l).iter() {
                let key = (zt.clone(), f.extended(zt.shape()));
                *next.entries.entry(key).or_default() += weight * p;
            }
        }
        table = next;
    }
    Ok(table)
}

/// Every pattern with `n` blocks and entries at most `max_entry`.
pub fn patterns_up_to(n: usize, max_entry: u32) -> Vec<GtPattern> {
    enumerate_lambda_n(n, max_entry)
        .iter()
        .flat_map(|shape| enumerate_patterns(shape, n).expect("shape lies in Λ_n"))
        .collect()
}

/// At `q = 0` the kernel is a point mass at the deterministic cascade.
pub fn check_q_zero_equivalence(n: usize, max_entry: u32) -> Result<IdentityReport> {
    let ctx = QContext::classic();
    let mut report = IdentityReport::new(format!("q=0 degeneration (n={n}, entries<={max_entry})"));
    for z in patterns_up_to(n, max_entry) {
        for l in crate::tableau::alphabet(n) {
            let dist = insert_letter(&ctx, &z, l)?;
            let classic = classic_insert_pattern(&z, l)?;
            report.check_bool(|| format!("{z} <- {l:?}"), dist == PatternDistribution::point(classic));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableau::alphabet;
    use proptest::prelude::*;

    fn s(v: &str) -> ExactScalar {
        v.parse().unwrap()
    }

    fn ctx(q: &str) -> QContext {
        QContext::new(s(q)).unwrap()
    }

    fn pair(x: &[u32], y: &[u32]) -> InterlacedPair {
        InterlacedPair::new(x.to_vec(), y.to_vec()).unwrap()
    }

    fn gt(n: usize, levels: &[&[u32]]) -> GtPattern {
        GtPattern::new(n, levels.iter().map(|l| l.to_vec()).collect()).unwrap()
    }

    #[test]
    fn r_examples() {
        let c = ctx("1/2");
        assert_eq!(r_prob(&c, &pair(&[2, 1], &[2, 1]), 1).unwrap(), 1);
        assert_eq!(r_prob(&c, &pair(&[2, 1], &[2, 1]), 2).unwrap(), 1);
        assert_eq!(r_prob(&c, &pair(&[1], &[2]), 1).unwrap(), s("1/2"));
        assert_eq!(r_prob(&c, &pair(&[3, 1], &[3, 2]), 2).unwrap(), s("1/3"));
    }

    #[test]
    fn l_examples() {
        let c = ctx("1/2");
        assert_eq!(l_prob(&c, &pair(&[3, 1], &[3, 3]), 1).unwrap(), 1);
        assert_eq!(l_prob(&c, &pair(&[2], &[2, 0]), 1).unwrap(), 0);
        assert_eq!(l_prob(&c, &pair(&[3, 1], &[3, 2]), 1).unwrap(), s("1/3"));
    }

    #[test]
    fn pair_errors() {
        assert!(InterlacedPair::new(vec![3], vec![2]).is_err());
        assert!(InterlacedPair::new(vec![1], vec![2, 1, 0]).is_err());
        assert!(r_prob(&ctx("1/2"), &pair(&[1], &[2]), 2).is_err());
        let p = InterlacedPair::from_partitions(&Partition::new(vec![2]).unwrap(), &Partition::new(vec![2]).unwrap(), 2, PairMode::Grow)
            .unwrap();
        assert_eq!(p.y(), &[2, 0]);
        assert_eq!(p.mode(), PairMode::Grow);
    }

    #[test]
    fn insert_examples_n1() {
        let c = ctx("1/2");
        let d = insert_letter(&c, &gt(1, &[&[0], &[1]]), Letter::unbarred(1)).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.prob(&gt(1, &[&[1], &[2]])), s("1/2"));
        assert_eq!(d.prob(&gt(1, &[&[0], &[0]])), s("1/2"));
        for (x, y) in [(0, 0), (0, 3), (2, 2), (1, 4)] {
            let d = insert_letter(&c, &gt(1, &[&[x], &[y]]), Letter::barred(1)).unwrap();
            assert_eq!(d, PatternDistribution::point(gt(1, &[&[x], &[y + 1]])));
        }
    }

    #[test]
    fn insert_errors() {
        let z = GtPattern::zero(1);
        assert!(insert_letter(&ctx("1/2"), &z, Letter::unbarred(2)).is_err());
    }

    #[test]
    fn distributions_are_normalized_and_valid() {
        for q in ["1/3", "1/2", "2/3"] {
            let c = ctx(q);
            for n in 1..=2 {
                for z in patterns_up_to(n, 3) {
                    for l in alphabet(n) {
                        let d = insert_letter(&c, &z, l).unwrap();
                        assert_eq!(d.total(), 1, "{z} <- {l:?}");
                        for (zt, p) in d.iter() {
                            assert!(p.is_positive());
                            assert!(zt.check().is_ok());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn q_zero_is_the_classic_cascade() {
        for n in 1..=2 {
            let report = check_q_zero_equivalence(n, 3).unwrap();
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn phi_base_cases() {
        let c = ctx("1/2");
        let empty = phi_word(&c, &[], 2).unwrap();
        assert_eq!(empty.len(), 1);
        assert_eq!(empty.weight(&GtPattern::zero(2), &OscillatingTableau::trivial()), 1);
        for l in alphabet(2) {
            let t = phi_word(&c, &[l], 2).unwrap();
            let f = OscillatingTableau::new(vec![Partition::empty(), Partition::new(vec![1]).unwrap()]).unwrap();
            assert_eq!(t.len(), 1);
            assert_eq!(t.weight(&GtPattern::single_letter(2, l), &f), 1);
        }
    }

    #[test]
    fn phi_two_letters_by_hand() {
        let c = ctx("1/2");
        let w = [Letter::unbarred(1), Letter::unbarred(1)];
        let t = phi_word(&c, &w, 1).unwrap();
        let first = insert_letter(&c, &GtPattern::zero(1), w[0]).unwrap();
        let mut expected = PatternDistribution::default();
        for (z, p) in first.iter() {
            for (zt, pt) in insert_letter(&c, z, w[1]).unwrap().iter() {
                expected.add(zt.clone(), p * pt);
            }
        }
        let marg = t.pattern_marginal();
        assert_eq!(marg.len(), expected.len());
        for (z, p) in expected.iter() {
            assert_eq!(&marg[z], p);
        }
        assert_eq!(t.total(), 1);
    }

    #[test]
    fn phi_records_bottom_level() {
        let c = ctx("2/3");
        let w = crate::tableau::parse_word("1 2' 1' 2 1", 2).unwrap();
        let t = phi_word(&c, &w, 2).unwrap();
        assert_eq!(t.total(), 1);
        for ((z, f), wt) in t.iter() {
            assert!(wt.is_positive());
            assert_eq!(&z.shape(), f.shape());
            assert_eq!(f.len(), w.len());
        }
    }

    #[test]
    fn json_shape() {
        let d = insert_letter(&ctx("1/2"), &gt(1, &[&[0], &[1]]), Letter::unbarred(1)).unwrap();
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(
            json,
            r#"[{"pattern":{"n":1,"levels":[[0],[0]]},"prob":"1/2"},{"pattern":{"n":1,"levels":[[1],[2]]},"prob":"1/2"}]"#
        );
    }

    fn arb_pair() -> impl Strategy<Value = (Vec<u32>, Vec<u32>)> {
        (1usize..=3, any::<bool>(), proptest::collection::vec(0u32..=5, 7)).prop_map(|(k, grow, raw)| {
            let mut y: Vec<u32> = raw[..k].to_vec();
            y.sort_unstable_by(|a, b| b.cmp(a));
            let xlen = if grow { k - 1 } else { k };
            let x = (0..xlen)
                .map(|i| {
                    let hi = y[i];
                    let lo = y.get(i + 1).copied().unwrap_or(0);
                    lo + raw[3 + i] % (hi - lo + 1)
                })
                .collect();
            (x, y)
        })
    }

    proptest! {
        #[test]
        fn probabilities_lie_in_unit_interval((x, y) in arb_pair(), qi in 0usize..3) {
            let c = ctx(["1/3", "1/2", "2/3"][qi]);
            let p = InterlacedPair::new(x.clone(), y).unwrap();
            for i in 1..=x.len() {
                for v in [r_prob(&c, &p, i).unwrap(), l_prob(&c, &p, i).unwrap()] {
                    prop_assert!(v >= 0 && v <= 1);
                }
            }
        }
    }
}
