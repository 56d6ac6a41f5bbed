// Smith normal form over the integers and a symplectic basis of a
// sublattice.

use aci::prym::lattice::{form, matmul, smith, standard_form, symplectic_reduce};

pub fn run_example() -> aci::Result<()> {
    let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
    let s = smith(&a);
    println!("invariant factors {:?}", s.invariants);
    let d = matmul(&matmul(&s.u, &a), &s.v);
    for row in &d {
        println!("  {row:?}");
    }
    let j = standard_form(3);
    // a1 - a2, b1 - b2 pair to 2; a3, b3 pair to 1
    let swapped = vec![vec![1, -1, 0, 0, 0, 0], vec![0, 0, 0, 1, -1, 0]];
    let third = vec![vec![0, 0, 1, 0, 0, 0], vec![0, 0, 0, 0, 0, 1]];
    for gens in [third, swapped] {
        println!("pairing {}", form(&j, &gens[0], &gens[1]));
        match symplectic_reduce(&gens, &j) {
            Ok((es, fs)) => println!("  symplectic basis e = {es:?}, f = {fs:?}"),
            Err(e) => println!("  {e}"),
        }
    }
    Ok(())
}

fn main() -> aci::Result<()> {
    run_example()
}
