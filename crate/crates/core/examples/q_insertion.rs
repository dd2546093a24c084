//! The q-deformed insertion as an exact distribution over patterns.

use bereleq::qinsert::{insert_letter, phi_word};
use bereleq::tableau::parse_word;
use bereleq::{ExactScalar, GtPattern, Letter, QContext};

fn main() -> bereleq::Result<()> {
    let ctx = QContext::new("1/2".parse::<ExactScalar>()?)?;
    let z = GtPattern::new(2, vec![vec![1], vec![2], vec![3, 1], vec![4, 2]])?;
    for (zt, p) in insert_letter(&ctx, &z, Letter::barred(1))?.iter() {
        println!("{p:>6}  {zt}");
    }

    let w = parse_word("1 2' 1 1'", 2)?;
    let table = phi_word(&ctx, &w, 2)?;
    println!("\nφ_w has {} entries, total weight {}", table.len(), table.total());
    for (f, p) in table.shape_marginal() {
        let shapes: Vec<String> = f.shapes().iter().map(|s| s.to_string()).collect();
        println!("{p:>8}  {}", shapes.join(" "));
    }
    Ok(())
}
