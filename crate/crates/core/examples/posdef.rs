//! Sylvester's criterion for Gram blocks at Hermitian points of the unit polydisc.

use quon::gram::{posdef_check, HermitianPoint};
use quon::sample;

fn main() -> quon::Result<()> {
    let mut rng = sample::rng(7);
    for m in [vec![1, 2, 3], vec![1, 1, 2], vec![1, 2, 2, 3]] {
        let p = HermitianPoint::sample(&m, &mut rng);
        let r = posdef_check(&m, &p)?;
        let minors: Vec<String> = r.minors.iter().map(|x| x.to_string()).collect();
        println!("{m:?}: positive = {}", r.verdict);
        println!("  minors {}", minors.join(", "));
    }
    Ok(())
}
