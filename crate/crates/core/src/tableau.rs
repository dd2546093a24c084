//! Symplectic Young tableaux over `1 < 1̄ < 2 < 2̄ < ... < n < n̄`, jeu de
//! taquin, and Berele row insertion with its oscillating recording tableau.
//!
//! Row insertion bumps the leftmost entry strictly larger than the incoming
//! letter. When an unbarred `k` arrives in row `k` and the entry it would bump
//! is `k̄`, both letters are erased; the cell that held `k̄` becomes a hole
//! which jeu de taquin slides out of the tableau.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::ExactScalar;
use crate::partition::{one_box_neighbors, Partition};
use crate::pattern::{enumerate_patterns, pattern_to_tableau};
use crate::report::IdentityReport;

/// A letter of the alphabet `[n, n̄]`. The derived order is the alphabet
/// order: `1 < 1̄ < 2 < 2̄ < ...`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter {
    #[serde(rename = "v")]
    value: u32,
    #[serde(rename = "bar")]
    barred: bool,
}

impl Letter {
    pub fn new(value: u32, barred: bool) -> Self {
        assert!(value >= 1, "letter values start at 1");
        Letter { value, barred }
    }

    pub fn unbarred(value: u32) -> Self {
        Letter::new(value, false)
    }

    pub fn barred(value: u32) -> Self {
        Letter::new(value, true)
    }

    /// Inverse of [`Letter::order`].
    pub fn from_order(order: usize) -> Self {
        assert!(order >= 1);
        Letter::new(order.div_ceil(2) as u32, order % 2 == 0)
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn is_barred(&self) -> bool {
        self.barred
    }

    /// Position in the alphabet: `2v - 1` for `v`, `2v` for `v̄`.
    pub fn order(&self) -> usize {
        2 * self.value as usize - usize::from(!self.barred)
    }

    /// The letter with the same value and opposite bar.
    pub fn conjugate(&self) -> Letter {
        Letter::new(self.value, !self.barred)
    }

    pub fn check_alphabet(&self, n: usize) -> Result<()> {
        if self.value as usize > n {
            return Err(Error::LetterOutOfRange { value: self.value, n });
        }
        Ok(())
    }

    pub fn render(&self, ascii: bool) -> String {
        match (self.barred, ascii) {
            (false, _) => self.value.to_string(),
            (true, true) => format!("{}'", self.value),
            (true, false) => format!("{}\u{0304}", self.value),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(true))
    }
}

impl FromStr for Letter {
    type Err = Error;

    /// Parses `k`, `k'` or `k̄` (digits followed by U+0304).
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let (digits, barred) = if let Some(d) = t.strip_suffix('\'') {
            (d, true)
        } else if let Some(d) = t.strip_suffix('\u{0304}') {
            (d, true)
        } else {
            (t, false)
        };
        match digits.parse::<u32>() {
            Ok(v) if v >= 1 && digits.chars().all(|c| c.is_ascii_digit()) => Ok(Letter::new(v, barred)),
            _ => Err(Error::ParseLetter(s.to_string())),
        }
    }
}

/// All `2n` letters in alphabet order.
pub fn alphabet(n: usize) -> Vec<Letter> {
    (1..=2 * n).map(Letter::from_order).collect()
}

/// Splits a whitespace-separated word such as `3' 2 1' 3' 1 2 1`.
pub fn parse_word(word: &str, n: usize) -> Result<Vec<Letter>> {
    word.split_whitespace()
        .map(|tok| {
            let l: Letter = tok.parse()?;
            l.check_alphabet(n)?;
            Ok(l)
        })
        .collect()
}

/// A filling of a Young diagram by letters of `[n, n̄]`. Use
/// [`SymplecticTableau::validate`] to check the symplectic conditions.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SymplecticTableau {
    n: usize,
    rows: Vec<Vec<Letter>>,
}

impl SymplecticTableau {
    pub fn empty(n: usize) -> Self {
        SymplecticTableau { n, rows: Vec::new() }
    }

    /// Builds and validates a tableau.
    pub fn from_rows(n: usize, rows: Vec<Vec<Letter>>) -> Result<Self> {
        let t = SymplecticTableau::from_rows_unchecked(n, rows);
        t.check()?;
        Ok(t)
    }

    /// Builds a filling without checking (S1)-(S3); empty rows are dropped.
    pub fn from_rows_unchecked(n: usize, mut rows: Vec<Vec<Letter>>) -> Self {
        rows.retain(|r| !r.is_empty());
        SymplecticTableau { n, rows }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<Letter>] {
        &self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn cell_count(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn shape(&self) -> Partition {
        Partition::new(self.rows.iter().map(|r| r.len() as u32).collect())
            .unwrap_or_else(|_| Partition::empty())
    }

    pub fn letters(&self) -> impl Iterator<Item = &Letter> {
        self.rows.iter().flatten()
    }

    /// Checks the alphabet, the Young-diagram shape, and (S1)-(S3).
    pub fn check(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::EmptyAlphabet);
        }
        let bad = |msg: String| Err(Error::InvalidTableau(msg));
        for (i, row) in self.rows.iter().enumerate() {
            if row.is_empty() {
                return bad(format!("row {} is empty", i + 1));
            }
            if i > 0 && row.len() > self.rows[i - 1].len() {
                return bad(format!("row {} is longer than the row above", i + 1));
            }
            for l in row {
                l.check_alphabet(self.n)?;
                // (S3): no entry smaller than the unbarred letter i in row i.
                if l.order() < 2 * (i + 1) - 1 {
                    return bad(format!("entry {l:?} is smaller than {} in row {}", i + 1, i + 1));
                }
            }
            if row.windows(2).any(|w| w[0] > w[1]) {
                return bad(format!("row {} is not weakly increasing", i + 1));
            }
            if i > 0 {
                let above = &self.rows[i - 1];
                if row.iter().zip(above).any(|(b, a)| a >= b) {
                    return bad(format!("a column is not strictly increasing at row {}", i + 1));
                }
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> bool {
        self.check().is_ok()
    }

    /// Rows of space-separated tokens, one row per line.
    pub fn render(&self, ascii: bool) -> String {
        self.rows
            .iter()
            .map(|r| r.iter().map(|l| l.render(ascii)).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl fmt::Display for SymplecticTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl fmt::Debug for SymplecticTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|l| l.render(true)).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "[{}]", rows.join(" / "))
    }
}

/// A sequence of shapes starting at `∅` in which consecutive shapes differ by
/// exactly one box.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<Partition>", into = "Vec<Partition>")]
pub struct OscillatingTableau {
    shapes: Vec<Partition>,
}

impl OscillatingTableau {
    pub fn trivial() -> Self {
        OscillatingTableau {
            shapes: vec![Partition::empty()],
        }
    }

    pub fn new(shapes: Vec<Partition>) -> Result<Self> {
        if shapes.first() != Some(&Partition::empty()) {
            return Err(Error::Invalid("oscillating tableau must start at the empty shape".into()));
        }
        for w in shapes.windows(2) {
            if !differ_by_one_box(&w[0], &w[1]) {
                return Err(Error::Invalid(format!("{} and {} differ by more than one box", w[0], w[1])));
            }
        }
        Ok(OscillatingTableau { shapes })
    }

    pub fn shapes(&self) -> &[Partition] {
        &self.shapes
    }

    /// Number of steps `m`.
    pub fn len(&self) -> usize {
        self.shapes.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The final shape `f^m`.
    pub fn shape(&self) -> &Partition {
        self.shapes.last().expect("nonempty by construction")
    }

    /// True iff every shape has at most `n` parts.
    pub fn in_lambda(&self, n: usize) -> bool {
        self.shapes.iter().all(|s| s.in_lambda(n))
    }

    /// Appends a shape, checking the one-box condition.
    pub fn push(&mut self, shape: Partition) -> Result<()> {
        if !differ_by_one_box(self.shape(), &shape) {
            return Err(Error::Invalid(format!("{} and {} differ by more than one box", self.shape(), shape)));
        }
        self.shapes.push(shape);
        Ok(())
    }

    pub(crate) fn extended(&self, shape: Partition) -> Self {
        let mut shapes = self.shapes.clone();
        shapes.push(shape);
        OscillatingTableau { shapes }
    }
}

impl TryFrom<Vec<Partition>> for OscillatingTableau {
    type Error = Error;
    fn try_from(v: Vec<Partition>) -> Result<Self> {
        OscillatingTableau::new(v)
    }
}

impl From<OscillatingTableau> for Vec<Partition> {
    fn from(f: OscillatingTableau) -> Self {
        f.shapes
    }
}

fn differ_by_one_box(a: &Partition, b: &Partition) -> bool {
    let len = a.length().max(b.length());
    let diff: u64 = (1..=len)
        .map(|i| (a.part(i) as i64 - b.part(i) as i64).unsigned_abs())
        .sum();
    diff == 1
}

/// A filling with exactly one empty cell.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PuncturedTableau {
    n: usize,
    rows: Vec<Vec<Option<Letter>>>,
    hole: (usize, usize),
}

impl PuncturedTableau {
    /// `hole` is `(row, column)`, 0-based. The cell at `hole` must be `None`
    /// and every other cell filled; rows must weakly increase and columns
    /// strictly increase when the hole is skipped.
    pub fn new(n: usize, rows: Vec<Vec<Option<Letter>>>, hole: (usize, usize)) -> Result<Self> {
        let bad = |msg: &str| Err(Error::InvalidPunctured(msg.to_string()));
        if rows.iter().any(Vec::is_empty) {
            return bad("empty row");
        }
        if rows.windows(2).any(|w| w[0].len() < w[1].len()) {
            return bad("row lengths are not weakly decreasing");
        }
        let holes: Vec<(usize, usize)> = rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().filter(|(_, c)| c.is_none()).map(move |(j, _)| (i, j)))
            .collect();
        if holes != [hole] {
            return bad("exactly one empty cell, at the designated position, is required");
        }
        for row in &rows {
            let filled: Vec<Letter> = row.iter().flatten().copied().collect();
            for l in &filled {
                l.check_alphabet(n)?;
            }
            if filled.windows(2).any(|w| w[0] > w[1]) {
                return bad("a row is not weakly increasing");
            }
        }
        let width = rows.first().map_or(0, Vec::len);
        for j in 0..width {
            let column: Vec<Letter> = rows.iter().filter_map(|r| r.get(j)).flatten().copied().collect();
            if column.windows(2).any(|w| w[0] >= w[1]) {
                return bad("a column is not strictly increasing");
            }
        }
        Ok(PuncturedTableau { n, rows, hole })
    }

    /// Punctures a tableau at `(row, column)`.
    pub fn from_tableau(t: &SymplecticTableau, hole: (usize, usize)) -> Result<Self> {
        let mut rows: Vec<Vec<Option<Letter>>> = t.rows.iter().map(|r| r.iter().copied().map(Some).collect()).collect();
        match rows.get_mut(hole.0).and_then(|r| r.get_mut(hole.1)) {
            Some(cell) => *cell = None,
            None => return Err(Error::InvalidPunctured("hole outside the diagram".into())),
        }
        PuncturedTableau::new(t.n, rows, hole)
    }

    pub fn hole(&self) -> (usize, usize) {
        self.hole
    }
}

/// Slides the hole right or down until it has no right or lower neighbour,
/// then deletes it. The hole moves right iff the right neighbour is strictly
/// smaller than the lower one.
pub fn jeu_de_taquin(t: PuncturedTableau) -> SymplecticTableau {
    let PuncturedTableau { n, mut rows, hole } = t;
    let (mut i, mut j) = hole;
    let max_slides = rows.iter().map(Vec::len).sum::<usize>();
    for _ in 0..=max_slides {
        let right = rows[i].get(j + 1).copied().flatten();
        let below = rows.get(i + 1).and_then(|r| r.get(j)).copied().flatten();
        let go_right = match (right, below) {
            (Some(r), Some(b)) => r < b,
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (None, None) => {
                // The hole ends at the end of its row.
                debug_assert_eq!(j + 1, rows[i].len());
                rows[i].pop();
                if rows[i].is_empty() {
                    rows.remove(i);
                }
                let rows = rows.into_iter().map(|r| r.into_iter().flatten().collect()).collect();
                return SymplecticTableau::from_rows_unchecked(n, rows);
            }
        };
        if go_right {
            rows[i].swap(j, j + 1);
            j += 1;
        } else {
            rows[i][j] = rows[i + 1][j].take();
            i += 1;
        }
    }
    unreachable!("jeu de taquin moves the hole at most once per cell")
}

/// Berele insertion of `l` into `t`. Returns the new tableau and its shape,
/// which differs from the old shape by exactly one box.
pub fn berele_insert(t: &SymplecticTableau, l: Letter) -> Result<(SymplecticTableau, Partition)> {
    t.check()?;
    l.check_alphabet(t.n)?;
    let out = insert_unchecked(t, l);
    let shape = out.shape();
    Ok((out, shape))
}

pub(crate) fn insert_unchecked(t: &SymplecticTableau, l: Letter) -> SymplecticTableau {
    let mut rows = t.rows.clone();
    let mut carry = l;
    let mut r = 0usize;
    loop {
        if r == rows.len() {
            rows.push(vec![carry]);
            return SymplecticTableau::from_rows_unchecked(t.n, rows);
        }
        match rows[r].iter().position(|&x| x > carry) {
            None => {
                rows[r].push(carry);
                return SymplecticTableau::from_rows_unchecked(t.n, rows);
            }
            Some(j) => {
                let bumped = rows[r][j];
                let row_number = r as u32 + 1;
                if !carry.barred && carry.value == row_number && bumped == carry.conjugate() {
                    // Cancellation: erase k and k̄, then slide the hole out.
                    let punctured: Vec<Vec<Option<Letter>>> = rows
                        .iter()
                        .enumerate()
                        .map(|(ri, row)| {
                            row.iter()
                                .enumerate()
                                .map(|(ci, &x)| if (ri, ci) == (r, j) { None } else { Some(x) })
                                .collect()
                        })
                        .collect();
                    let p = PuncturedTableau {
                        n: t.n,
                        rows: punctured,
                        hole: (r, j),
                    };
                    return jeu_de_taquin(p);
                }
                rows[r][j] = carry;
                carry = bumped;
                r += 1;
            }
        }
    }
}

/// Inserts a word letter by letter from the empty tableau, recording the
/// shape after each step.
pub fn berele_word(w: &[Letter], n: usize) -> Result<(SymplecticTableau, OscillatingTableau)> {
    if n == 0 {
        return Err(Error::EmptyAlphabet);
    }
    let mut t = SymplecticTableau::empty(n);
    let mut f = OscillatingTableau::trivial();
    for &l in w {
        let (next, shape) = berele_insert(&t, l)?;
        f.push(shape)?;
        t = next;
    }
    Ok((t, f))
}

/// `a^P = prod_l a_l^{#l - #l̄}`.
pub fn tableau_weight(t: &SymplecticTableau, a: &[ExactScalar]) -> Result<ExactScalar> {
    if a.len() != t.n {
        return Err(Error::ParameterCount { expected: t.n, got: a.len() });
    }
    if let Some((i, v)) = a.iter().enumerate().find(|(_, v)| !v.is_positive()) {
        return Err(Error::NonPositiveParameter { index: i + 1, value: v.to_string() });
    }
    let mut exponents = vec![0i64; t.n];
    for l in t.letters() {
        l.check_alphabet(t.n)?;
        exponents[l.value as usize - 1] += if l.barred { -1 } else { 1 };
    }
    exponents
        .iter()
        .zip(a)
        .map(|(&e, ai)| ai.powi(e))
        .product::<Result<ExactScalar>>()
}

/// All symplectic tableaux of the given shape, sorted.
pub fn enumerate_tableaux(shape: &Partition, n: usize) -> Result<Vec<SymplecticTableau>> {
    let mut out = enumerate_patterns(shape, n)?
        .iter()
        .map(pattern_to_tableau)
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

/// All oscillating tableaux of length `m` inside `Λ_n`, optionally restricted
/// to a final shape. Brute-force depth-first census.
pub fn enumerate_oscillating(n: usize, m: usize, shape: Option<&Partition>) -> Vec<OscillatingTableau> {
    fn rec(n: usize, m: usize, path: &mut Vec<Partition>, out: &mut Vec<OscillatingTableau>) {
        if path.len() == m + 1 {
            out.push(OscillatingTableau { shapes: path.clone() });
            return;
        }
        let last = path.last().expect("path starts at the empty shape").clone();
        for next in one_box_neighbors(&last, n).expect("shapes stay in Λ_n") {
            path.push(next);
            rec(n, m, path, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, m, &mut vec![Partition::empty()], &mut out);
    if let Some(s) = shape {
        out.retain(|f| f.shape() == s);
    }
    out.sort();
    out
}

/// Exhaustive check that `w ↦ (P, f)` is a bijection from `[n, n̄]^m` onto
/// pairs with `sh P = f^m`: injectivity over all words, the shape condition,
/// and `Σ_λ #tableaux(λ) · #oscillating(λ) = (2n)^m`.
pub fn check_bijectivity(n: usize, m: usize) -> Result<IdentityReport> {
    let mut report = IdentityReport::new(format!("berele-bijectivity n={n} m={m}"));
    let letters = alphabet(n);
    let total = (2 * n).pow(m as u32);
    let mut seen: HashSet<(SymplecticTableau, OscillatingTableau)> = HashSet::with_capacity(total);
    let mut word = vec![letters[0]; m];
    for code in 0..total {
        let mut c = code;
        for slot in word.iter_mut() {
            *slot = letters[c % (2 * n)];
            c /= 2 * n;
        }
        let (p, f) = berele_word(&word, n)?;
        let ok = p.validate() && &p.shape() == f.shape() && f.in_lambda(n);
        report.check_bool(|| format!("word {word:?}: output is not a valid pair"), ok);
        let fresh = seen.insert((p, f));
        report.check_bool(|| format!("word {word:?}: output already produced by another word"), fresh);
    }
    let mut osc_by_shape: BTreeMap<Partition, usize> = BTreeMap::new();
    for f in enumerate_oscillating(n, m, None) {
        *osc_by_shape.entry(f.shape().clone()).or_default() += 1;
    }
    let mut pairs = 0usize;
    for (shape, count) in &osc_by_shape {
        pairs += enumerate_tableaux(shape, n)?.len() * count;
    }
    report.check(
        || format!("pair count for n={n} m={m}"),
        ExactScalar::from(pairs as u64),
        ExactScalar::from(total as u64),
    );
    report.check(
        || "distinct outputs".to_string(),
        ExactScalar::from(seen.len() as u64),
        ExactScalar::from(total as u64),
    );
    Ok(report)
}
