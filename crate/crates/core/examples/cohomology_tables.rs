// Betti numbers, cohomology bases, cup products and Poincaré duality.
//
// Run with `cargo run --example cohomology_tables`.

use std::error::Error;

use cdga::cohomology::{tensor, Cohomology};
use cdga::model_io::{parse_element, render};
use cdga::scenarios::{from_salamon, heisenberg_model, torus_model};

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let mut out = String::new();
    let models = [
        ("N", heisenberg_model()),
        ("T^3", torus_model(3)?),
        ("N x T^2", tensor(&heisenberg_model(), &torus_model(2)?)),
        ("(0,0,0,12,13,23)", from_salamon("(0,0,0,12,13,23)")?),
    ];
    for (label, dga) in &models {
        let h = Cohomology::new(dga)?;
        let betti = h.betti()?;
        let top = betti.len() - 1;
        let dual_ok = (0..=top).all(|k| {
            h.duality_matrix(k)
                .map(|m| m.nondegenerate)
                .unwrap_or(false)
        });
        out.push_str(&format!("{label}: betti {betti:?}, duality {dual_ok}\n"));
        for k in 0..=top {
            let reps: Vec<String> = h.basis(k)?.representatives().iter().map(render).collect();
            out.push_str(&format!("  H^{k}: {}\n", reps.join(", ")));
        }
    }

    let n = heisenberg_model();
    let h = Cohomology::new(&n)?;
    let e = |s: &str| parse_element(&n, s);
    assert!(h.cup(&e("a")?, &e("b")?)?.is_zero());
    let top = h.cup(&e("a")?, &e("b*c")?)?;
    out.push_str(&format!(
        "[a] u [b] = 0, [a] u [b*c] = {:?} in H^3, <a, b*c> = {}\n",
        top.coords.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
        h.pairing(&e("a")?, &e("b*c")?)?,
    ));
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
