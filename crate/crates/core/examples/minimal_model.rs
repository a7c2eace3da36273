// Minimality checks and degree-by-degree minimal models.
//
// Run with `cargo run --example minimal_model`.

use std::error::Error;

use cdga::cohomology::Cohomology;
use cdga::minimal::{check_quasi_iso, is_minimal, minimal_model};
use cdga::model_io::{parse_model, render_model};
use cdga::scenarios::{heisenberg_model, paper_x};

const SPHERE_WITH_ACYCLIC_PAIR: &str = "\
gen x 2
gen y 3
gen g 3
gen h 4
d x = 0
d y = x^2
d g = h
d h = 0
";

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let mut out = String::new();
    for dga in [heisenberg_model(), paper_x(7)?.dga] {
        assert!(is_minimal(&dga));
        let res = minimal_model(&dga, 3)?;
        assert!(res.already_minimal && check_quasi_iso(&res));
    }
    out.push_str("CE models are minimal; identity morphism is a quasi-isomorphism\n");

    let dga = parse_model(SPHERE_WITH_ACYCLIC_PAIR)?;
    assert!(!is_minimal(&dga));
    let res = minimal_model(&dga, 6)?;
    assert!(check_quasi_iso(&res));
    let lhs = Cohomology::up_to(&res.model, 6).betti()?;
    let rhs = Cohomology::up_to(&dga, 6).betti()?;
    assert_eq!(lhs, rhs);
    out.push_str(&render_model(&res.model));
    out.push_str(&format!("betti through 6: {lhs:?}\n"));
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
