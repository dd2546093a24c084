//! Exact check of K M = L K on patterns and on bottom triples.

use bereleq::kernels::{verify_hat_intertwining, verify_pattern_intertwining};
use bereleq::{ParamContext, QContext};

fn main() -> bereleq::Result<()> {
    for q in ["0", "1/2"] {
        let pc = ParamContext::new(vec![2.into(), 3.into()], QContext::new(q.parse()?)?)?;
        println!("q={q}  patterns: {}", verify_pattern_intertwining(&pc, 3)?);
        println!("q={q}  triples:  {}", verify_hat_intertwining(&pc, 3)?);
    }
    let pc = ParamContext::new(vec![2.into(), 3.into(), 5.into()], QContext::new("1/2".parse()?)?)?;
    println!("n=3 triples:  {}", verify_hat_intertwining(&pc, 2)?);
    Ok(())
}
