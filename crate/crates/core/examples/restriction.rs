//! A multiset block read off the chamber block by relabelling variables.

use quon::braid::{coset_sum_form, dot_substitution, preimages};
use quon::gram::{gram_block, gram_block_via_restriction};
use quon::quon::braket_pair;

fn main() -> quon::Result<()> {
    let m = [1, 2, 2];
    println!("relabelling for {m:?}:");
    for (from, to) in dot_substitution(&m) {
        println!("  {from} -> {to}");
    }
    let (s, t) = ([2, 1, 2], [2, 2, 1]);
    println!("preimages of {s:?}: {:?}", preimages(&s));
    println!("bra-ket      {}", braket_pair(&s, &t)?);
    println!("coset sum    {}", coset_sum_form(&s, &preimages(&t)[0])?);
    println!("blocks agree: {}", gram_block(&m)? == gram_block_via_restriction(&m)?);
    Ok(())
}
