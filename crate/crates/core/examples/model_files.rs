// Reading and writing the text model format.
//
// Run with `cargo run --example model_files`.

use std::error::Error;

use cdga::model_io::{parse_element, parse_model, render, render_model, ModelError};

const HEISENBERG: &str = "\
# Heisenberg nilmanifold
gen a 1
gen b 1
gen c 1
d a = 0
d b = 0
d c = -a*b
";

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let dga = parse_model(HEISENBERG)?;
    let text = render_model(&dga);
    assert_eq!(parse_model(&text)?, dga);

    let u = parse_element(&dga, "2*c*a + 1/2*b*a - a*b")?;
    let mut out = format!("{text}u = {}\n", render(&u));

    let bad = parse_model("gen a 1\nd a = a^2\n").unwrap_err();
    assert!(matches!(bad, ModelError::OddPower { .. }));
    out.push_str(&format!("error: {bad}\n"));
    let bad = parse_model("gen a 1\ngen b 1\nd b = a\n").unwrap_err();
    out.push_str(&format!("error: {bad}\n"));
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
