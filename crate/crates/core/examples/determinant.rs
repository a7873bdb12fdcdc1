//! Determinants of Gram blocks: symbolic for [3], sampled for [4] and a multiset.

use quon::gram::{block_determinant, DetMode};

fn main() -> quon::Result<()> {
    let r = block_determinant(&[1, 2, 3], DetMode::Symbolic, 10, 0)?;
    println!("closed form of det M_[3]: {}", r.closed_form.as_ref().expect("set"));
    println!("symbolic match: {}", r.verdict);

    let r = block_determinant(&[1, 2, 3, 4], DetMode::Evaluated, 20, 7)?;
    let ok = r.samples.iter().filter(|s| s.ok).count();
    println!("det M_[4] vs closed form at 20 points (seed 7): {ok}/20");

    let r = block_determinant(&[1, 1, 2, 2], DetMode::Evaluated, 10, 7)?;
    println!("det M_{{1,1,2,2}} nonzero inside the unit polydisc: {}", r.verdict);
    Ok(())
}
