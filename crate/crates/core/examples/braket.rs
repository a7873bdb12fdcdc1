//! Vacuum expectations of annihilator and creator words.

use quon::quon::{braket, braket_pair, QuonWord};

fn main() -> quon::Result<()> {
    // ⟨0| a_1 a_1 a†_1 a†_1 |0⟩
    println!("<0|a1 a1 a1+ a1+|0> = {}", braket_pair(&[1, 1], &[1, 1])?);
    // ⟨0| a_3 a_2 a_1 a†_1 a†_3 a†_2 |0⟩, annihilators listed innermost first
    println!("<0|a3 a2 a1 a1+ a3+ a2+|0> = {}", braket_pair(&[1, 2, 3], &[1, 3, 2])?);
    // different multisets are orthogonal
    println!("<0|a2 a1 a2+ a2+|0> = {}", braket_pair(&[1, 2], &[2, 2])?);
    // words of different lengths
    let w = QuonWord::new(vec![1], vec![1, 2])?;
    println!("<0|a1 a1+ a2+|0> = {}", braket(&w));
    Ok(())
}
