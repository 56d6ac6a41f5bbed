// Exact sparse polynomials over Q(i): parsing, ring operations and
// substitution.

use std::collections::BTreeMap;

use aci::algebra::{names, parse_poly, Field, MultiPoly, Qi};

pub fn run_example() -> aci::Result<()> {
    let v = names(&["x", "y"]);
    let mut consts = BTreeMap::new();
    consts.insert("c".to_string(), "1/3 + 2i".parse::<Qi>()?);
    let p = parse_poly("(x + c y)^3 - x^2 y/7", &v, &consts)?;
    let q = parse_poly("x - i y", &v, &consts)?;
    println!("p = {p}");
    println!("p q = {}", &p * &q);
    println!("dp/dy = {}", p.derivative(1));
    let at = p.substitute_value(0, &Qi::from_i64(2));
    println!("p(2, y) = {at}");
    let y = MultiPoly::var(&v, 1);
    let composed = p.compose(&[y.clone(), y], &v)?;
    println!("p(y, y) = {composed}");
    println!("p(1, i) = {}", p.eval(&[Qi::one(), Qi::i()])?);
    Ok(())
}

fn main() -> aci::Result<()> {
    run_example()
}
