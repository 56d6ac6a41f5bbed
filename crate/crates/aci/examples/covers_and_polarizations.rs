// Genus bookkeeping for double covers and the polarization type carried by
// a divisor of each genus.

use aci::prym::{lattice_intersection_count, normal_form_matrix, polarization_from_divisor, InvolutionData};
use aci::riemann::{hurwitz_genus, CoverData};

pub fn run_example() -> aci::Result<()> {
    for (g0, n) in [(1, 2), (1, 8), (0, 4), (2, 1)] {
        let c = CoverData::new(g0, n)?;
        println!("g0 = {g0}, n = {n}: g = {}, {} branch points, Prym dimension {}", hurwitz_genus(g0, n)?, c.branch_points(), c.prym_dim());
    }
    for genus in [3, 9] {
        let (d1, d2) = polarization_from_divisor(genus, None)?;
        println!("divisor of genus {genus}: polarization ({d1}, {d2})");
    }
    let inv = InvolutionData::from_matrix(normal_form_matrix(1, 2), vec![])?;
    println!("intersection count of the (1, 2) normal form: {}", lattice_intersection_count(&inv)?);
    Ok(())
}

fn main() -> aci::Result<()> {
    run_example()
}
