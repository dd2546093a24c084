//! Berele insertion of a word, letter by letter.

use bereleq::tableau::{berele_insert, parse_word};
use bereleq::SymplecticTableau;

fn main() -> bereleq::Result<()> {
    let n = 3;
    let word = parse_word("3' 2 1' 3' 1 2 1", n)?;
    let mut p = SymplecticTableau::empty(n);
    for l in word {
        let (next, shape) = berele_insert(&p, l)?;
        println!("insert {:<2} -> shape {shape}", l.render(false));
        p = next;
    }
    println!("\n{}", p.render(false));
    Ok(())
}
