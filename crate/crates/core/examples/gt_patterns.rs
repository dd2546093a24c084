//! Tableaux as Gelfand-Tsetlin patterns, and insertion as particle moves.

use bereleq::pattern::{classic_insert_pattern, enumerate_patterns, pattern_to_tableau, tableau_to_pattern};
use bereleq::tableau::parse_word;
use bereleq::{Letter, Partition, SymplecticTableau};

fn main() -> bereleq::Result<()> {
    let t = SymplecticTableau::from_rows(2, vec![parse_word("1 1' 2 2 2'", 2)?, parse_word("2' 2'", 2)?])?;
    let z = tableau_to_pattern(&t)?;
    println!("{}\n\n{}\n", t.render(false), z.render());

    let z = bereleq::GtPattern::new(2, vec![vec![1], vec![2], vec![3, 1], vec![4, 2]])?;
    let after = classic_insert_pattern(&z, Letter::barred(1))?;
    println!("insert 1̄:\n{}\n", after.render());
    println!("{}\n", pattern_to_tableau(&after)?.render(false));

    let shape = Partition::new(vec![2, 1])?;
    println!("{} patterns of shape {shape} for n=2", enumerate_patterns(&shape, 2)?.len());
    Ok(())
}
