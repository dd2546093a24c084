//! Symplectic Schur functions, their q-deformation `P_λ`, oscillating
//! tableau counts and the identities relating them.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact::{q_binomial, ExactScalar, QContext};
use crate::kernels::{kappa, kernel_l, pattern_monomial, ParamContext};
use crate::partition::{enumerate_lambda_n, one_box_neighbors, Partition};
use crate::pattern::enumerate_patterns;
use crate::tableau::{enumerate_oscillating, enumerate_tableaux, tableau_weight};

pub use crate::report::{IdentityFailure, IdentityReport};

fn check_shape(pc: &ParamContext, lam: &Partition) -> Result<()> {
    if !lam.in_lambda(pc.n()) {
        return Err(Error::NotInLambda { partition: lam.parts().to_vec(), n: pc.n() });
    }
    Ok(())
}

/// `Sp_λ(a)`: the sum of `a^P` over symplectic tableaux of shape `λ`.
pub fn sp_schur(pc: &ParamContext, lam: &Partition) -> Result<ExactScalar> {
    check_shape(pc, lam)?;
    enumerate_tableaux(lam, pc.n())?
        .iter()
        .map(|t| tableau_weight(t, pc.a()))
        .sum::<Result<ExactScalar>>()
}

/// `P_λ(a;q) = Σ_{z^{2n} = λ} a^Z κ_n(Z)`.
pub fn p_function(pc: &ParamContext, lam: &Partition) -> Result<ExactScalar> {
    check_shape(pc, lam)?;
    Ok(enumerate_patterns(lam, pc.n())?
        .iter()
        .map(|z| pattern_monomial(pc, z) * kappa(pc, z))
        .sum())
}

/// `H_ℓ = Σ_m binom(ℓ, m)_q a^{2m-ℓ}` for `a > 0`.
pub fn q_hermite(ctx: &QContext, ell: u32, a: &ExactScalar) -> Result<ExactScalar> {
    if !a.is_positive() {
        return Err(Error::NonPositiveParameter { index: 1, value: a.to_string() });
    }
    (0..=ell as i64)
        .map(|m| Ok(q_binomial(ctx, ell as i64, m) * a.powi(2 * m - ell as i64)?))
        .sum()
}

/// `Q_m^λ(n;q)` for every reachable `λ`: path weights `Π L_n(f^{i-1}, f^i)`
/// summed over oscillating tableaux of length `m`.
pub fn q_counts(pc: &ParamContext, m: usize) -> BTreeMap<Partition, ExactScalar> {
    let mut layer: BTreeMap<Partition, ExactScalar> = BTreeMap::new();
    layer.insert(Partition::empty(), ExactScalar::one());
    for _ in 0..m {
        let mut next: BTreeMap<Partition, ExactScalar> = BTreeMap::new();
        for (lam, w) in &layer {
            for mu in one_box_neighbors(lam, pc.n()).expect("layers stay in Λ_n") {
                let l = kernel_l(pc, lam, &mu);
                if !l.is_zero() {
                    *next.entry(mu).or_default() += w * &l;
                }
            }
        }
        layer = next;
    }
    layer
}

/// `Q_m^λ(n;q)`; an integer count at `q = 0`.
pub fn q_count(pc: &ParamContext, m: usize, lam: &Partition) -> ExactScalar {
    q_counts(pc, m).remove(lam).unwrap_or_default()
}

/// `Sp_λ · Σ(a_i + 1/a_i) = Σ_{μ = λ ± e_l} Sp_μ`.
pub fn check_pieri(pc: &ParamContext, lam_bound: u32) -> Result<IdentityReport> {
    let mut report = IdentityReport::new(format!("pieri (n={}, λ_1<={lam_bound})", pc.n()));
    let s = pc.total_weight();
    for lam in enumerate_lambda_n(pc.n(), lam_bound) {
        let lhs = sp_schur(pc, &lam)? * &s;
        let rhs = one_box_neighbors(&lam, pc.n())?
            .iter()
            .map(|mu| sp_schur(pc, mu))
            .sum::<Result<ExactScalar>>()?;
        report.check(|| format!("λ={lam}"), lhs, rhs);
    }
    Ok(report)
}

/// `Σ_μ L_n(λ, μ) P_μ = Σ(a_i + 1/a_i) · P_λ`.
pub fn check_eigenrelation(pc: &ParamContext, lam_bound: u32) -> Result<IdentityReport> {
    let mut report = IdentityReport::new(format!("eigenrelation (n={}, λ_1<={lam_bound})", pc.n()));
    let s = pc.total_weight();
    for lam in enumerate_lambda_n(pc.n(), lam_bound) {
        let mut lhs = ExactScalar::zero();
        for mu in one_box_neighbors(&lam, pc.n())? {
            lhs += kernel_l(pc, &lam, &mu) * p_function(pc, &mu)?;
        }
        let rhs = p_function(pc, &lam)? * &s;
        report.check(|| format!("λ={lam}"), lhs, rhs);
    }
    Ok(report)
}

/// `(Σ a_i + 1/a_i)^m = Σ_λ Q_m^λ(n;q) P_λ`.
pub fn check_littlewood(pc: &ParamContext, m: usize) -> Result<IdentityReport> {
    let mut report = IdentityReport::new(format!("q-littlewood (n={}, m={m})", pc.n()));
    let lhs = pc.total_weight().pow(m as u32);
    let mut rhs = ExactScalar::zero();
    for (lam, q) in q_counts(pc, m) {
        rhs += q * p_function(pc, &lam)?;
    }
    report.check(|| format!("m={m} q={}", pc.ctx().q()), lhs, rhs);
    Ok(report)
}

/// The undeformed decomposition `(Σ a_i + 1/a_i)^m = Σ_λ Q_m^λ(n) Sp_λ`, with
/// `Q_m^λ(n)` taken from a direct census of oscillating tableaux.
pub fn check_classic_littlewood(pc: &ParamContext, m: usize) -> Result<IdentityReport> {
    let mut report = IdentityReport::new(format!("littlewood (n={}, m={m})", pc.n()));
    let mut counts: BTreeMap<Partition, i64> = BTreeMap::new();
    for f in enumerate_oscillating(pc.n(), m, None) {
        *counts.entry(f.shape().clone()).or_default() += 1;
    }
    let lhs = pc.total_weight().pow(m as u32);
    let mut rhs = ExactScalar::zero();
    for (lam, c) in &counts {
        rhs += sp_schur(pc, lam)? * ExactScalar::from_integer(*c);
    }
    report.check(|| format!("m={m}"), lhs, rhs);
    Ok(report)
}

/// `P_λ(a;0) = Sp_λ(a)` for `λ_1 <= lam_bound`.
pub fn check_classic_limit(pc: &ParamContext, lam_bound: u32) -> Result<IdentityReport> {
    let classic = pc.with_q(QContext::classic());
    let mut report = IdentityReport::new(format!("P = Sp at q=0 (n={}, λ_1<={lam_bound})", pc.n()));
    for lam in enumerate_lambda_n(pc.n(), lam_bound) {
        report.check(|| format!("λ={lam}"), p_function(&classic, &lam)?, sp_schur(&classic, &lam)?);
    }
    Ok(report)
}

/// `H_ℓ(a) = P_{(ℓ)}` in rank one, for `ℓ <= ell_max`.
pub fn check_hermite(ctx: &QContext, ell_max: u32, a: &ExactScalar) -> Result<IdentityReport> {
    let pc = ParamContext::new(vec![a.clone()], ctx.clone())?;
    let mut report = IdentityReport::new(format!("q-hermite (a={a}, q={})", ctx.q()));
    for ell in 0..=ell_max {
        let lam = Partition::new(vec![ell])?;
        report.check(|| format!("ℓ={ell}"), q_hermite(ctx, ell, a)?, p_function(&pc, &lam)?);
    }
    Ok(report)
}
