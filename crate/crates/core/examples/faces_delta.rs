//! Faces below a chamber, their weights, and the two interval products.

use quon::braid::{
    corollary_delta_closed_form, delta_interval, face_product, face_weight, faces_below_chamber,
    flats_and_multiplicities, OrderedSetPartition, Permutation,
};

fn main() -> quon::Result<()> {
    let sigma = Permutation::new(vec![2, 4, 1, 3])?;
    for f in faces_below_chamber(&sigma)? {
        println!("{:<20} {}", f.to_string(), face_weight(&f));
    }
    let f = OrderedSetPartition::new(vec![vec![1, 2], vec![3]])?;
    let g = OrderedSetPartition::new(vec![vec![2], vec![1], vec![3]])?;
    println!("{f} . {g} = {}", face_product(&f, &g)?);

    for n in 2..=4 {
        let literal = delta_interval(&Permutation::identity(n))?.specialize_uniform()?;
        println!("n={n}  literal {literal}");
        println!("      closed  {}", corollary_delta_closed_form(n));
    }
    for flat in flats_and_multiplicities(3)? {
        println!("flat {:?}: beta {}", flat.subset.items(), flat.beta);
    }
    Ok(())
}
