//! Symplectic Schur functions, their q-deformation, and Littlewood sums.

use bereleq::partition::enumerate_lambda_n;
use bereleq::symfunc::{check_littlewood, p_function, q_counts, q_hermite, sp_schur};
use bereleq::{ExactScalar, ParamContext, QContext};

fn main() -> bereleq::Result<()> {
    let q: ExactScalar = "1/2".parse()?;
    let pc = ParamContext::new(vec![2.into(), 3.into()], QContext::new(q.clone())?)?;
    let classic = pc.with_q(QContext::classic());
    println!("{:<8} {:>14} {:>18}", "λ", "Sp_λ", "P_λ(q=1/2)");
    for lam in enumerate_lambda_n(2, 2) {
        println!("{:<8} {:>14} {:>18}", lam.to_string(), sp_schur(&classic, &lam)?.to_string(), p_function(&pc, &lam)?.to_string());
    }

    let m = 4;
    println!("\nQ_{m}^λ(2; 1/2):");
    for (lam, c) in q_counts(&pc, m) {
        println!("  {lam:<8} {c}");
    }
    println!("{}", check_littlewood(&pc, m)?);

    let ctx = QContext::new(q)?;
    for ell in 0..=4 {
        println!("H_{ell}(2 | 1/2) = {}", q_hermite(&ctx, ell, &2.into())?);
    }
    Ok(())
}
