// Non-formality certificate on N x T^5 and N x T^4.
//
// Run with `cargo run --release --example paper_certificate`.

use std::error::Error;

use cdga::cohomology::Cohomology;
use cdga::massey;
use cdga::model_io::render;
use cdga::scenarios::{paper_x, verify_paper};

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let mut out = String::new();
    for dim in [8, 7] {
        let x = paper_x(dim)?;
        let h = Cohomology::new(&x.dga)?;
        let res = massey::triple_massey(&h, &x.a1, &x.b2, &x.a3)?;
        let cert = massey::certify_nonvanishing(&h, &res, &x.dual)?;
        assert!(cert.certified);
        out.push_str(&format!(
            "dim {dim}: <[{}],[{}],[{}]> = [{}]; pairing with [{}] = {}; indeterminacy dim {}, pairings {:?}\n",
            render(&x.a1),
            render(&x.b2),
            render(&x.a3),
            render(&res.representative),
            render(&x.dual),
            cert.pairing,
            res.indeterminacy.dim(),
            cert.indeterminacy_pairings.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
        ));
    }
    let report = verify_paper(8)?;
    assert!(report.pass);
    out.push_str(&report.render_text());
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
