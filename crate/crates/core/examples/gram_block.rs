//! Gram blocks for a set and for a multiset, and their tilde symmetry.

use quon::gram::{gram_block, gram_block_via_restriction};

fn main() -> quon::Result<()> {
    for m in [vec![1, 2, 3], vec![1, 1, 2]] {
        let b = gram_block(&m)?;
        println!("{b}");
        println!("tilde symmetric: {}", b.is_tilde_symmetric());
        println!("equals the restricted chamber block: {}\n", gram_block_via_restriction(&m)? == b);
    }
    Ok(())
}
