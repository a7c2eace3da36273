// The triple Massey product <[a],[b],[a]> on the Heisenberg model.
//
// Run with `cargo run --example heisenberg_massey`.

use std::error::Error;

use cdga::cohomology::Cohomology;
use cdga::massey;
use cdga::model_io::{parse_element, render};
use cdga::scenarios::heisenberg_model;

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let n = heisenberg_model();
    let h = Cohomology::new(&n)?;
    let e = |s: &str| parse_element(&n, s);
    let (a, b) = (e("a")?, e("b")?);

    let res = massey::triple_massey(&h, &a, &b, &a)?;
    let expected = h.class_of(&e("2*a*c")?)?;
    assert_eq!(res.class, expected);
    assert_eq!(res.indeterminacy.dim(), 0);
    assert!(!res.vanishes);

    Ok(format!(
        "x = {}, y = {}\n<[a],[b],[a]> = [{}], indeterminacy dim {}, {}",
        render(&res.x),
        render(&res.y),
        render(&res.representative),
        res.indeterminacy.dim(),
        if res.vanishes { "vanishes" } else { "nonzero" },
    ))
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    println!("{}", run_example()?);
    Ok(())
}
