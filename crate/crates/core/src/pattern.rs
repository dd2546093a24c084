//! Symplectic Gelfand-Tsetlin patterns with `2n` levels.
//!
//! Level `k` (1-based) holds `⌈k/2⌉` particles stored positionally, zeros
//! included, and consecutive levels interlace. A symplectic tableau maps to
//! the pattern whose level `order(k)` is the shape of the sub-tableau of
//! entries `<= k`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{interlaces_positional, Partition};
use crate::tableau::{Letter, SymplecticTableau};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPattern")]
pub struct GtPattern {
    n: usize,
    levels: Vec<Vec<u32>>,
}

#[derive(Deserialize)]
struct RawPattern {
    n: usize,
    levels: Vec<Vec<u32>>,
}

impl TryFrom<RawPattern> for GtPattern {
    type Error = Error;
    fn try_from(raw: RawPattern) -> Result<Self> {
        GtPattern::new(raw.n, raw.levels)
    }
}

/// Number of particles on level `k`.
pub fn level_len(k: usize) -> usize {
    k.div_ceil(2)
}

impl GtPattern {
    /// Validates level lengths, nonnegativity within each level as a
    /// partition, and interlacing of consecutive levels.
    pub fn new(n: usize, levels: Vec<Vec<u32>>) -> Result<Self> {
        let z = GtPattern { n, levels };
        z.check()?;
        Ok(z)
    }

    pub(crate) fn from_levels_unchecked(n: usize, levels: Vec<Vec<u32>>) -> Self {
        GtPattern { n, levels }
    }

    /// The all-zero pattern.
    pub fn zero(n: usize) -> Self {
        GtPattern {
            n,
            levels: (1..=2 * n).map(|k| vec![0; level_len(k)]).collect(),
        }
    }

    /// The pattern reached by inserting `l` into the empty tableau:
    /// `z^k_i = 1` iff `i = 1` and `k >= order(l)`.
    pub fn single_letter(n: usize, l: Letter) -> Self {
        let mut z = GtPattern::zero(n);
        for k in l.order()..=2 * n {
            z.levels[k - 1][0] = 1;
        }
        z
    }

    pub fn check(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::EmptyAlphabet);
        }
        if self.levels.len() != 2 * self.n {
            return Err(Error::InvalidPattern(format!(
                "expected {} levels, got {}",
                2 * self.n,
                self.levels.len()
            )));
        }
        for (idx, level) in self.levels.iter().enumerate() {
            let k = idx + 1;
            if level.len() != level_len(k) {
                return Err(Error::InvalidPattern(format!(
                    "level {k} has {} entries, expected {}",
                    level.len(),
                    level_len(k)
                )));
            }
            if level.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::InvalidPattern(format!("level {k} is not weakly decreasing")));
            }
            if idx > 0 && !interlaces_positional(&self.levels[idx - 1], level) {
                return Err(Error::NotInterlaced {
                    x: self.levels[idx - 1].clone(),
                    y: level.clone(),
                });
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn levels(&self) -> &[Vec<u32>] {
        &self.levels
    }

    /// Level `k`, for `1 <= k <= 2n`.
    pub fn level(&self, k: usize) -> &[u32] {
        &self.levels[k - 1]
    }

    pub(crate) fn level_mut(&mut self, k: usize) -> &mut Vec<u32> {
        &mut self.levels[k - 1]
    }

    /// `z^k_i` with 1-based indices.
    pub fn get(&self, k: usize, i: usize) -> u32 {
        self.levels[k - 1][i - 1]
    }

    /// `|z^k|`; level 0 has weight 0.
    pub fn level_weight(&self, k: usize) -> i64 {
        if k == 0 {
            return 0;
        }
        self.levels[k - 1].iter().map(|&v| v as i64).sum()
    }

    /// Level `k` as a canonical partition.
    pub fn level_partition(&self, k: usize) -> Partition {
        Partition::new(self.levels[k - 1].clone()).expect("levels are weakly decreasing")
    }

    /// The bottom level `z^{2n}`, i.e. the shape of the encoded tableau.
    pub fn shape(&self) -> Partition {
        self.level_partition(2 * self.n)
    }

    /// The pattern made of the top `2(n-1)` levels.
    pub fn truncated(&self) -> Option<GtPattern> {
        (self.n > 1).then(|| GtPattern {
            n: self.n - 1,
            levels: self.levels[..2 * (self.n - 1)].to_vec(),
        })
    }

    pub fn render(&self) -> String {
        let width = self
            .levels
            .iter()
            .flatten()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1);
        self.levels
            .iter()
            .enumerate()
            .map(|(idx, level)| {
                let cells: Vec<String> = level.iter().map(|v| format!("{v:>width$}")).collect();
                format!("z{:<2} {}", idx + 1, cells.join(" "))
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl fmt::Debug for GtPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let levels: Vec<String> = self
            .levels
            .iter()
            .map(|l| l.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "<{}>", levels.join(" | "))
    }
}

impl fmt::Display for GtPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Level `order(k)` counts, row by row, the entries `<= k`.
pub fn tableau_to_pattern(t: &SymplecticTableau) -> Result<GtPattern> {
    t.check()?;
    let n = t.n();
    let mut levels: Vec<Vec<u32>> = (1..=2 * n).map(|k| vec![0; level_len(k)]).collect();
    for (r, row) in t.rows().iter().enumerate() {
        for l in row {
            for k in l.order()..=2 * n {
                levels[k - 1][r] += 1;
            }
        }
    }
    Ok(GtPattern { n, levels })
}

/// Row `i` receives `z^k_i - z^{k-1}_i` copies of the letter of order `k`.
pub fn pattern_to_tableau(z: &GtPattern) -> Result<SymplecticTableau> {
    z.check()?;
    let n = z.n;
    let mut rows: Vec<Vec<Letter>> = vec![Vec::new(); n];
    for k in 1..=2 * n {
        let letter = Letter::from_order(k);
        for i in 1..=level_len(k) {
            let prev = if k > 1 && i <= level_len(k - 1) { z.get(k - 1, i) } else { 0 };
            let count = z.get(k, i) - prev;
            rows[i - 1].extend(std::iter::repeat(letter).take(count as usize));
        }
    }
    SymplecticTableau::from_rows(n, rows)
}

/// Patterns with bottom level `shape`, ordered lexicographically by levels.
pub fn enumerate_patterns(shape: &Partition, n: usize) -> Result<Vec<GtPattern>> {
    if n == 0 {
        return Err(Error::EmptyAlphabet);
    }
    if !shape.in_lambda(n) {
        return Err(Error::NotInLambda {
            partition: shape.parts().to_vec(),
            n,
        });
    }
    let mut out = Vec::new();
    let mut levels: Vec<Vec<u32>> = vec![Vec::new(); 2 * n];
    levels[2 * n - 1] = shape.padded(n);
    fill_levels(2 * n - 1, &mut levels, &mut |levels| {
        out.push(GtPattern::from_levels_unchecked(n, levels.to_vec()))
    });
    out.sort();
    Ok(out)
}

/// Fills level `k` (1-based) and everything above it, given level `k + 1`.
pub(crate) fn fill_levels(k: usize, levels: &mut Vec<Vec<u32>>, emit: &mut dyn FnMut(&[Vec<u32>])) {
    if k == 0 {
        emit(levels);
        return;
    }
    let below = levels[k].clone();
    let len = level_len(k);
    let mut current = vec![0u32; len];
    fn rec(
        i: usize,
        k: usize,
        below: &[u32],
        current: &mut Vec<u32>,
        levels: &mut Vec<Vec<u32>>,
        emit: &mut dyn FnMut(&[Vec<u32>]),
    ) {
        if i == current.len() {
            levels[k - 1] = current.clone();
            fill_levels(k - 1, levels, emit);
            return;
        }
        let hi = below[i];
        let lo = below.get(i + 1).copied().unwrap_or(0);
        for v in lo..=hi {
            current[i] = v;
            rec(i + 1, k, below, current, levels, emit);
        }
    }
    rec(0, k, &below, &mut current, levels, emit);
}

/// A particle move travelling down the pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Motion {
    /// A rightward jump that may still be suppressed on an odd-level
    /// diagonal.
    Right,
    Left,
}

/// True when particle `i` of level `k` is the last particle of an odd level.
pub(crate) fn is_diagonal(k: usize, i: usize) -> bool {
    k % 2 == 1 && i == k.div_ceil(2)
}

/// Deterministic particle dynamics for the insertion of `l`.
///
/// Starting from an attempted right jump of `z^{order(l)}_1`, each level
/// responds to the move above it:
/// * a right jump of `z^k_i` pushes `z^{k+1}_i` if they coincide;
/// * otherwise, on the last particle of an odd level the jump is suppressed
///   and `z^{k+1}_i` moves left, and elsewhere `z^{k+1}_{i+1}` is pulled right;
/// * a left jump of `z^k_i` moves `z^{k+1}_{i+1}` left if it sat at the old
///   position of `z^k_i`, and `z^{k+1}_i` otherwise.
pub fn classic_insert_pattern(z: &GtPattern, l: Letter) -> Result<GtPattern> {
    z.check()?;
    l.check_alphabet(z.n)?;
    let mut out = z.clone();
    let bottom = 2 * z.n;
    let (mut k, mut i, mut motion) = (l.order(), 1usize, Motion::Right);
    loop {
        match motion {
            Motion::Right => {
                let x = out.get(k, i);
                if k == bottom {
                    out.level_mut(k)[i - 1] += 1;
                    break;
                }
                let y = out.get(k + 1, i);
                if x == y {
                    out.level_mut(k)[i - 1] += 1;
                } else if is_diagonal(k, i) {
                    motion = Motion::Left;
                } else {
                    out.level_mut(k)[i - 1] += 1;
                    i += 1;
                }
            }
            Motion::Left => {
                let old = out.get(k, i);
                out.level_mut(k)[i - 1] -= 1;
                if k == bottom {
                    break;
                }
                let next = out.level(k + 1);
                if i < next.len() && next[i] == old {
                    i += 1;
                }
            }
        }
        k += 1;
    }
    debug_assert!(out.check().is_ok(), "classic cascade produced {out:?}");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::enumerate_lambda_n;
    use crate::tableau::{alphabet, berele_insert, enumerate_tableaux};

    fn letters(s: &str) -> Vec<Letter> {
        s.split_whitespace().map(|t| t.parse().unwrap()).collect()
    }

    fn tab(n: usize, rows: &[&str]) -> SymplecticTableau {
        SymplecticTableau::from_rows(n, rows.iter().map(|r| letters(r)).collect()).unwrap()
    }

    #[test]
    fn tableau_to_pattern_example() {
        let t = tab(2, &["1 1' 2 2 2'", "2' 2'"]);
        let z = tableau_to_pattern(&t).unwrap();
        assert_eq!(z.levels(), &[vec![1], vec![2], vec![4, 0], vec![5, 2]]);
    }

    #[test]
    fn empty_and_single_box() {
        assert_eq!(tableau_to_pattern(&SymplecticTableau::empty(2)).unwrap(), GtPattern::zero(2));
        let z = tableau_to_pattern(&tab(1, &["1'"])).unwrap();
        assert_eq!(z.levels(), &[vec![0], vec![1]]);
        assert_eq!(pattern_to_tableau(&GtPattern::zero(3)).unwrap(), SymplecticTableau::empty(3));
        let z = GtPattern::new(1, vec![vec![1], vec![2]]).unwrap();
        assert_eq!(pattern_to_tableau(&z).unwrap(), tab(1, &["1 1'"]));
    }

    #[test]
    fn invalid_patterns_are_rejected() {
        assert!(GtPattern::new(1, vec![vec![2], vec![1]]).is_err());
        assert!(GtPattern::new(2, vec![vec![0], vec![0], vec![0]]).is_err());
        assert!(GtPattern::new(2, vec![vec![1], vec![1], vec![1, 0], vec![0, 0]]).is_err());
        let json = r#"{"n":1,"levels":[[3],[1]]}"#;
        assert!(serde_json::from_str::<GtPattern>(json).is_err());
    }

    #[test]
    fn round_trip_on_small_shapes() {
        for n in 1..=2 {
            for shape in enumerate_lambda_n(n, 5) {
                if shape.weight() > 5 {
                    continue;
                }
                for t in enumerate_tableaux(&shape, n).unwrap() {
                    let z = tableau_to_pattern(&t).unwrap();
                    assert_eq!(z.shape(), shape);
                    assert_eq!(pattern_to_tableau(&z).unwrap(), t);
                }
                for z in enumerate_patterns(&shape, n).unwrap() {
                    assert_eq!(tableau_to_pattern(&pattern_to_tableau(&z).unwrap()).unwrap(), z);
                }
            }
        }
    }

    #[test]
    fn enumerated_patterns_are_valid_and_sorted() {
        let shape = Partition::new(vec![3, 1]).unwrap();
        let all = enumerate_patterns(&shape, 2).unwrap();
        assert!(all.iter().all(|z| z.check().is_ok() && z.shape() == shape));
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn classic_dynamics_worked_example() {
        let z = GtPattern::new(2, vec![vec![1], vec![2], vec![3, 1], vec![4, 2]]).unwrap();
        let out = classic_insert_pattern(&z, Letter::barred(1)).unwrap();
        assert_eq!(out.levels(), &[vec![1], vec![3], vec![3, 1], vec![4, 1]]);
    }

    #[test]
    fn first_insertion_from_zero() {
        for n in 1..=3 {
            for l in alphabet(n) {
                let out = classic_insert_pattern(&GtPattern::zero(n), l).unwrap();
                assert_eq!(out, GtPattern::single_letter(n, l));
            }
        }
    }

    #[test]
    fn classic_dynamics_commute_with_tableau_insertion() {
        for n in 1..=2 {
            for shape in enumerate_lambda_n(n, 4) {
                if shape.weight() > 4 {
                    continue;
                }
                for t in enumerate_tableaux(&shape, n).unwrap() {
                    let z = tableau_to_pattern(&t).unwrap();
                    for l in alphabet(n) {
                        let (after, _) = berele_insert(&t, l).unwrap();
                        assert_eq!(
                            classic_insert_pattern(&z, l).unwrap(),
                            tableau_to_pattern(&after).unwrap(),
                            "{t:?} <- {l:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn json_lists_ceil_half_entries_per_level() {
        let z = GtPattern::new(2, vec![vec![1], vec![2], vec![3, 1], vec![4, 2]]).unwrap();
        let json = serde_json::to_string(&z).unwrap();
        assert_eq!(json, r#"{"n":2,"levels":[[1],[2],[3,1],[4,2]]}"#);
        assert_eq!(serde_json::from_str::<GtPattern>(&json).unwrap(), z);
    }
}
