//! Denominators of the inverse of M_[n] at q[i][j] = q.

use quon::gram::zagier_check;

fn main() -> quon::Result<()> {
    let n = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    println!("{}", zagier_check(n)?);
    Ok(())
}
