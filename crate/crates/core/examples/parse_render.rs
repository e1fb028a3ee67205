//! Problem files and polynomial expressions round-trip through the parser.

use pfdkit::parse::{parse_polynomial, parse_problem, render_polynomial};
use pfdkit::poly::vars_from;

fn main() -> pfdkit::Result<()> {
    let vars = vars_from(&["x", "y", "z"]);
    let f = parse_polynomial("(x - 2*y)^3 - 1/2*z*(x + y)", &vars)?;
    println!("{}", render_polynomial(&f));

    let p = parse_problem("mode: affine\nvars: s t\nnumerator: s*t - 1\ndenominators:\n  s - 1\n  t + 2*s\n")?;
    print!("{}", p.render());
    assert_eq!(parse_problem(&p.render())?.render(), p.render());
    Ok(())
}
