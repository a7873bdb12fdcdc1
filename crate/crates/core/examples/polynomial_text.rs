//! Parsing, arithmetic, conjugation and evaluation of polynomials in q[i][j].

use quon::{GaussianRational, MPoly, Point, VarId};

fn main() -> quon::Result<()> {
    let a: MPoly = "1 - q[1][2]*q[2][1]".parse()?;
    let b: MPoly = "1/2 + 1/3*i*q[1][2]".parse()?;
    println!("a       = {a}");
    println!("b       = {b}");
    println!("a * b   = {}", &a * &b);
    println!("conj(b) = {}", b.conj());

    let mut p = Point::new();
    p.insert(VarId::new(1, 2), GaussianRational::from_fractions(1, 2, 1, 3));
    p.insert(VarId::new(2, 1), GaussianRational::from_fractions(1, 2, -1, 3));
    println!("a at q[1][2] = 1/2 + i/3, q[2][1] = conj = {}", a.eval(&p)?);
    println!("a at q[i][j] = q: {}", a.specialize_uniform()?);
    Ok(())
}
