//! Builds the first admissible fibring of P1 with CPLand and decides a
//! mixed tautology question — the README's library example, compiled.

use matfib::{catalog, fibre, parse};

fn main() -> matfib::Result<()> {
    let p1 = catalog::builtin("P1").unwrap();
    let cpl = catalog::builtin("CPLand").unwrap();
    let pair = matfib::enumerate_admissible_pairs(&p1, &cpl).remove(0);
    let fibred = fibre(&p1, &cpl, &pair)?;

    let f = parse::parse_formula("impP1@1(p, and@2(q, q))", fibred.matrix().signature())?;
    println!("{:?}", fibred.matrix().entails(&[], &f)?);
    Ok(())
}
