//! Sampling the shape chain and comparing with its exact law.

use bereleq::chain::{doob_decomposition_check, empirical_vs_exact, exact_shape_law, simulate, RngSeed};
use bereleq::{ParamContext, QContext};

fn main() -> bereleq::Result<()> {
    let pc = ParamContext::new(vec![2.into()], QContext::new("1/2".parse()?)?)?;
    let traj = simulate(&pc, 5, RngSeed(7), 0);
    print!("{}", traj.to_json_lines(false));

    for (lam, p) in exact_shape_law(&pc, 3)? {
        println!("ν({lam}) = {p}");
    }
    let report = empirical_vs_exact(&pc, 3, 50_000, RngSeed(7))?;
    println!("shape TV {:.4} (bound {:.4}), conditional TV {:.4}", report.shape_tv, report.shape_tv_bound, report.conditional_tv);

    let classic = ParamContext::new(vec![2.into(), 3.into()], QContext::classic())?;
    println!("{}", doob_decomposition_check(&classic, 3)?);
    Ok(())
}
