// Exhaustive scans for nonvanishing triple Massey products.
//
// Run with `cargo run --release --example massey_scan`.

use std::error::Error;

use cdga::cohomology::Cohomology;
use cdga::massey::{scan_triple_massey, ScanLimits};
use cdga::model_io::render;
use cdga::scenarios::{heisenberg_model, paper_x, torus_model};

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let mut out = String::new();
    for n in 1..=5 {
        let h = Cohomology::new(&torus_model(n)?)?;
        let found = scan_triple_massey(&h, (1, 1, 1), ScanLimits::default())?;
        assert!(found.is_empty());
        out.push_str(&format!("T^{n} (1,1,1): no witnesses\n"));
    }

    let h = Cohomology::new(&heisenberg_model())?;
    for res in scan_triple_massey(&h, (1, 1, 1), ScanLimits::default())? {
        out.push_str(&format!(
            "N: <[{}],[{}],[{}]> = [{}]\n",
            render(&res.a),
            render(&res.b),
            render(&res.c),
            render(&res.representative)
        ));
    }

    let x = paper_x(8)?;
    let h = Cohomology::new(&x.dga)?;
    let found = scan_triple_massey(&h, (2, 2, 2), ScanLimits::default())?;
    let hit = found
        .iter()
        .any(|r| r.a == x.a1 && r.b == x.b2 && r.c == x.a3);
    assert!(hit);
    out.push_str(&format!(
        "N x T^5 (2,2,2): {} witnesses, including <[a*t1],[b*t2],[a*t3]>\n",
        found.len()
    ));
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
