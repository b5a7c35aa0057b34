//! Built-in matrices and the translation pairs used by the worked examples.
//!
//! Every builtin can be exported to the text format (see [`crate::render`])
//! and reloaded, so the catalog doubles as a set of format examples. Names
//! are resolved by [`builtin`]; the two parametric families are spelled
//! `P^k` and `I^n` (for example `P^2`), or reached through
//! [`builtin_family`].

use crate::fibring::FibringPair;
use crate::matrix::Matrix;
use crate::signature::Signature;
use crate::{Error, Result};

/// Name and one-line summary of a catalog entry.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    /// Name accepted by [`builtin`] (for families, the pattern).
    pub name: String,
    /// Short description.
    pub summary: String,
}

fn build(name: &str, values: &[&str], designated: &[&str], ops: &[(&str, u8, &[&str])]) -> Matrix {
    let signature =
        Signature::new(ops.iter().map(|&(n, a, _)| (n, a))).expect("builtin signature is valid");
    Matrix::new(
        name,
        values.iter().map(|s| s.to_string()).collect(),
        designated.iter().map(|s| s.to_string()).collect(),
        signature,
        ops.iter()
            .map(|&(_, _, t)| t.iter().map(|s| s.to_string()).collect())
            .collect(),
    )
    .expect("builtin tables are total")
}

fn cpl() -> Matrix {
    build(
        "CPL",
        &["0", "1"],
        &["1"],
        &[
            ("neg", 1, &["1", "0"]),
            ("and", 2, &["0", "0", "0", "1"]),
            ("or", 2, &["0", "1", "1", "1"]),
        ],
    )
}

fn cpl_and() -> Matrix {
    build(
        "CPLand",
        &["0", "1"],
        &["1"],
        &[("neg", 1, &["1", "0"]), ("and", 2, &["0", "0", "0", "1"])],
    )
}

fn cpl_or() -> Matrix {
    build(
        "CPLor",
        &["0", "1"],
        &["1"],
        &[("neg", 1, &["1", "0"]), ("or", 2, &["0", "1", "1", "1"])],
    )
}

fn cl_or() -> Matrix {
    build(
        "CLor",
        &["0", "1"],
        &["1"],
        &[("or", 2, &["0", "1", "1", "1"])],
    )
}

fn p1() -> Matrix {
    build(
        "P1",
        &["T", "T1", "F"],
        &["T", "T1"],
        &[
            ("negP1", 1, &["F", "T", "T"]),
            (
                "impP1",
                2,
                &["T", "T", "F", "T", "T", "F", "T", "T", "T"],
            ),
        ],
    )
}

fn fde() -> Matrix {
    build(
        "FDE",
        &["t", "b", "n", "f"],
        &["t", "b"],
        &[
            ("neg", 1, &["f", "b", "n", "t"]),
            (
                "and",
                2,
                &[
                    "t", "b", "n", "f", //
                    "b", "b", "f", "f", //
                    "n", "f", "n", "f", //
                    "f", "f", "f", "f",
                ],
            ),
            (
                "or",
                2,
                &[
                    "t", "t", "t", "t", //
                    "t", "b", "t", "b", //
                    "t", "t", "n", "n", //
                    "t", "b", "n", "f",
                ],
            ),
        ],
    )
}

fn j3() -> Matrix {
    build(
        "J3",
        &["1", "half", "0"],
        &["1", "half"],
        &[
            ("neg", 1, &["0", "half", "1"]),
            (
                "vee",
                2,
                &[
                    "1", "1", "1", //
                    "1", "half", "half", //
                    "1", "half", "0",
                ],
            ),
            ("nabla", 1, &["1", "1", "0"]),
        ],
    )
}

const L3_CONJ: (&str, u8, &[&str]) = (
    "conj",
    2,
    &[
        "0", "0", "0", //
        "0", "0", "half", //
        "0", "half", "1",
    ],
);

const G3_CONJ: (&str, u8, &[&str]) = (
    "conj",
    2,
    &[
        "0", "0", "0", //
        "0", "half", "half", //
        "0", "half", "1",
    ],
);

const L3_IMP: (&str, u8, &[&str]) = (
    "imp",
    2,
    &[
        "1", "1", "1", //
        "half", "1", "1", //
        "0", "half", "1",
    ],
);

const G3_IMP: (&str, u8, &[&str]) = (
    "imp",
    2,
    &[
        "1", "1", "1", //
        "0", "1", "1", //
        "0", "half", "1",
    ],
);

fn three_valued(name: &str, ops: &[(&str, u8, &[&str])]) -> Matrix {
    build(name, &["0", "half", "1"], &["1"], ops)
}

/// Loads a builtin by name. Family instances are written `P^k` / `I^n`.
pub fn builtin(name: &str) -> Option<Matrix> {
    if let Some(param) = name.strip_prefix("P^") {
        return builtin_family("P", param.parse().ok()?).ok();
    }
    if let Some(param) = name.strip_prefix("I^") {
        return builtin_family("I", param.parse().ok()?).ok();
    }
    match name {
        "CPL" => Some(cpl()),
        "CPLand" => Some(cpl_and()),
        "CPLor" => Some(cpl_or()),
        "CLor" => Some(cl_or()),
        "P1" => Some(p1()),
        "FDE" => Some(fde()),
        "J3" => Some(j3()),
        "L3conj" => Some(three_valued("L3conj", &[L3_CONJ])),
        "G3conj" => Some(three_valued("G3conj", &[G3_CONJ])),
        "L3imp" => Some(three_valued("L3imp", &[L3_IMP])),
        "G3imp" => Some(three_valued("G3imp", &[G3_IMP])),
        "L3conjimp" => Some(three_valued("L3conjimp", &[L3_CONJ, L3_IMP])),
        "G3conjimp" => Some(three_valued("G3conjimp", &[G3_CONJ, G3_IMP])),
        _ => None,
    }
}

/// Largest accepted family parameter; carriers grow linearly in it and
/// nothing in the suite needs more.
pub const MAX_FAMILY_PARAM: usize = 40;

/// Instantiates a parametric family.
///
/// `P` with parameter k is the (k+2)-valued matrix over `{T0..Tk, f}` with
/// `T0..Tk` designated: negation cycles `T0 ↦ f`, `Th ↦ T(h-1)`, `f ↦ T0`,
/// and implication outputs `f` exactly when the antecedent is designated and
/// the consequent is `f`, otherwise `T0`. Every designated value except `T0`
/// has a designated negation, so `P^k` for k ≥ 1 tolerates contradictions.
///
/// `I` with parameter n is the dual (n+2)-valued matrix over `{t, F0..Fn}`
/// with only `t` designated: negation maps `t ↦ F0`, `F0 ↦ t`,
/// `Fl ↦ F(l-1)`, and implication outputs `F0` exactly when the antecedent
/// is `t` and the consequent is not, otherwise `t`. For n ≥ 1 some values
/// are undesignated together with their negations, so `I^n` has truth-value
/// gaps.
pub fn builtin_family(family: &str, param: usize) -> Result<Matrix> {
    if param > MAX_FAMILY_PARAM {
        return Err(Error::unsupported(format!(
            "family parameter {param} exceeds the maximum of {MAX_FAMILY_PARAM}"
        )));
    }
    match family {
        "P" => {
            let k = param;
            let mut values: Vec<String> = (0..=k).map(|h| format!("T{h}")).collect();
            values.push("f".to_string());
            let designated: Vec<String> = values[..=k].to_vec();
            let f = k + 1;
            let mut neg = Vec::with_capacity(values.len());
            for h in 0..=k {
                neg.push(if h == 0 { values[f].clone() } else { values[h - 1].clone() });
            }
            neg.push(values[0].clone());
            let mut imp = Vec::with_capacity(values.len() * values.len());
            for x in 0..values.len() {
                for y in 0..values.len() {
                    let designated_x = x <= k;
                    imp.push(if designated_x && y == f {
                        values[f].clone()
                    } else {
                        values[0].clone()
                    });
                }
            }
            let signature = Signature::new([("neg", 1u8), ("imp", 2u8)])?;
            Matrix::new(format!("P^{k}"), values, designated, signature, vec![neg, imp])
        }
        "I" => {
            let n = param;
            let mut values: Vec<String> = vec!["t".to_string()];
            values.extend((0..=n).map(|l| format!("F{l}")));
            let designated = vec!["t".to_string()];
            let mut neg = Vec::with_capacity(values.len());
            neg.push(values[1].clone());
            for l in 0..=n {
                neg.push(if l == 0 { values[0].clone() } else { values[l].clone() });
            }
            let mut imp = Vec::with_capacity(values.len() * values.len());
            for x in 0..values.len() {
                for y in 0..values.len() {
                    imp.push(if x == 0 && y != 0 {
                        values[1].clone()
                    } else {
                        values[0].clone()
                    });
                }
            }
            let signature = Signature::new([("neg", 1u8), ("imp", 2u8)])?;
            Matrix::new(format!("I^{n}"), values, designated, signature, vec![neg, imp])
        }
        other => Err(Error::unsupported(format!("unknown family {other}"))),
    }
}

/// All catalog entries, families listed as patterns.
pub fn list() -> Vec<CatalogEntry> {
    let fixed: &[(&str, &str)] = &[
        ("CPL", "classical two-valued logic with negation, conjunction, and disjunction"),
        ("CPLand", "classical logic presented by negation and conjunction"),
        ("CPLor", "classical logic presented by negation and disjunction"),
        ("CLor", "the disjunction-only fragment of classical logic"),
        ("P1", "Sette's three-valued paraconsistent logic P1"),
        ("FDE", "Belnap-Dunn four-valued logic of first-degree entailment"),
        ("J3", "D'Ottaviano-da Costa three-valued logic J3"),
        ("L3conj", "strong-conjunction fragment of three-valued Lukasiewicz logic"),
        ("G3conj", "conjunction fragment of three-valued Goedel logic"),
        ("L3imp", "implication fragment of three-valued Lukasiewicz logic"),
        ("G3imp", "implication fragment of three-valued Goedel logic"),
        ("L3conjimp", "conjunction-implication fragment of three-valued Lukasiewicz logic"),
        ("G3conjimp", "conjunction-implication fragment of three-valued Goedel logic"),
        ("P^k", "paraconsistent family: k+1 designated values, one falsum (e.g. P^2)"),
        ("I^n", "paracomplete family: one truth, n+1 undesignated values (e.g. I^1)"),
    ];
    fixed
        .iter()
        .map(|&(name, summary)| CatalogEntry {
            name: name.to_string(),
            summary: summary.to_string(),
        })
        .collect()
}

/// Translation pairs used by the worked examples and the verification suite.
pub mod pairs {
    use super::*;

    /// The demonstration pair between `P1` and `CPLand`: λ collapses the two
    /// designated values onto 1, and μ lifts 1 to T and 0 to F.
    pub fn p1_cpl() -> FibringPair {
        let m1 = builtin("P1").expect("P1 is built in");
        let m2 = builtin("CPLand").expect("CPLand is built in");
        FibringPair::from_names(
            &m1,
            &m2,
            &[("T", "1"), ("T1", "1"), ("F", "0")],
            &[("1", "T"), ("0", "F")],
        )
        .expect("the demonstration pair is total")
    }

    /// The demonstration pair between `FDE` and `J3`: λ sends t ↦ 1,
    /// b ↦ half, and both gap values to 0; μ sends both designated values
    /// to t and 0 to n.
    pub fn fde_j3() -> FibringPair {
        let m1 = builtin("FDE").expect("FDE is built in");
        let m2 = builtin("J3").expect("J3 is built in");
        FibringPair::from_names(
            &m1,
            &m2,
            &[("t", "1"), ("b", "half"), ("n", "0"), ("f", "0")],
            &[("1", "t"), ("half", "t"), ("0", "n")],
        )
        .expect("the demonstration pair is total")
    }

    /// The admissible pairs between the three-valued Lukasiewicz and Goedel
    /// fragments. Both carriers are `{0, half, 1}` with only 1 designated,
    /// so each direction either keeps the undesignated values in place
    /// (variant 1) or swaps them (variant 2).
    pub fn l3_g3(lambda_variant: u8, mu_variant: u8) -> Result<FibringPair> {
        let m1 = builtin("L3conj").expect("L3conj is built in");
        let m2 = builtin("G3conj").expect("G3conj is built in");
        let map = |variant: u8| -> Result<Vec<(&'static str, &'static str)>> {
            match variant {
                1 => Ok(vec![("0", "0"), ("half", "half"), ("1", "1")]),
                2 => Ok(vec![("0", "half"), ("half", "0"), ("1", "1")]),
                v => Err(Error::pair(format!("variant {v} is not 1 or 2"))),
            }
        };
        let lambda = map(lambda_variant)?;
        let mu = map(mu_variant)?;
        FibringPair::from_names(&m1, &m2, &lambda, &mu)
    }

    /// The admissible pair (λ_j, μ_i) between `I^n` (first component) and
    /// `P^k` (second component): λ_j sends t to T_j and every gap value to
    /// f, and μ_i sends every designated value to t and f to F_i.
    pub fn i_p(i_matrix: &Matrix, p_matrix: &Matrix, j: usize, i: usize) -> Result<FibringPair> {
        let n = i_matrix.value_count() - 2;
        let k = p_matrix.value_count() - 2;
        if j > k {
            return Err(Error::pair(format!("lambda index {j} exceeds k={k}")));
        }
        if i > n {
            return Err(Error::pair(format!("mu index {i} exceeds n={n}")));
        }
        // I^n carrier: t at 0, F_l at 1+l. P^k carrier: T_h at h, f at k+1.
        let mut lambda = vec![j];
        lambda.extend(std::iter::repeat_n(k + 1, n + 1));
        let mut mu = vec![0usize; k + 1];
        mu.push(1 + i);
        FibringPair::from_indices(i_matrix, p_matrix, lambda, mu)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibring::{enumerate_admissible_pairs, is_admissible};

    #[test]
    fn every_fixed_entry_loads() {
        for entry in list() {
            if entry.name.contains('^') {
                continue;
            }
            let m = builtin(&entry.name).unwrap_or_else(|| panic!("{} missing", entry.name));
            assert_eq!(m.name(), entry.name);
        }
    }

    #[test]
    fn p1_tables_match_their_definition() {
        let m = builtin("P1").unwrap();
        assert_eq!(m.apply("negP1", &["T"]).unwrap(), "F");
        assert_eq!(m.apply("negP1", &["T1"]).unwrap(), "T");
        assert_eq!(m.apply("negP1", &["F"]).unwrap(), "T");
        assert_eq!(m.apply("impP1", &["T1", "F"]).unwrap(), "F");
        assert_eq!(m.apply("impP1", &["F", "F"]).unwrap(), "T");
        assert_eq!(m.designated_values(), ["T", "T1"]);
    }

    #[test]
    fn fde_tables_match_their_definition() {
        let m = builtin("FDE").unwrap();
        assert_eq!(m.apply("neg", &["b"]).unwrap(), "b");
        assert_eq!(m.apply("neg", &["n"]).unwrap(), "n");
        assert_eq!(m.apply("and", &["b", "n"]).unwrap(), "f");
        assert_eq!(m.apply("or", &["b", "n"]).unwrap(), "t");
        assert_eq!(m.apply("or", &["b", "f"]).unwrap(), "b");
        assert_eq!(m.designated_values(), ["t", "b"]);
    }

    #[test]
    fn j3_tables_match_their_definition() {
        let m = builtin("J3").unwrap();
        assert_eq!(m.apply("nabla", &["half"]).unwrap(), "1");
        assert_eq!(m.apply("vee", &["half", "0"]).unwrap(), "half");
        assert_eq!(m.apply("neg", &["half"]).unwrap(), "half");
        assert_eq!(m.apply("neg", &["0"]).unwrap(), "1");
        assert_eq!(m.designated_values(), ["1", "half"]);
    }

    #[test]
    fn lukasiewicz_and_goedel_conjunctions_differ_only_at_half_half() {
        let l3 = builtin("L3conj").unwrap();
        let g3 = builtin("G3conj").unwrap();
        for x in ["0", "half", "1"] {
            for y in ["0", "half", "1"] {
                let strong = l3.apply("conj", &[x, y]).unwrap();
                let min = g3.apply("conj", &[x, y]).unwrap();
                if x == "half" && y == "half" {
                    assert_eq!(strong, "0");
                    assert_eq!(min, "half");
                } else {
                    assert_eq!(strong, min, "conj({x},{y})");
                }
            }
        }
    }

    #[test]
    fn goedel_implication_pins() {
        let m = builtin("G3imp").unwrap();
        assert_eq!(m.apply("imp", &["half", "0"]).unwrap(), "0");
        let l3 = builtin("L3imp").unwrap();
        assert_eq!(l3.apply("imp", &["half", "0"]).unwrap(), "half");
    }

    #[test]
    fn family_p0_is_classical() {
        let m = builtin_family("P", 0).unwrap();
        assert_eq!(m.values(), ["T0", "f"]);
        assert_eq!(m.designated_values(), ["T0"]);
        assert_eq!(m.apply("neg", &["T0"]).unwrap(), "f");
        assert_eq!(m.apply("neg", &["f"]).unwrap(), "T0");
        assert_eq!(m.apply("imp", &["T0", "f"]).unwrap(), "f");
        assert_eq!(m.apply("imp", &["f", "f"]).unwrap(), "T0");
    }

    #[test]
    fn family_tables_follow_the_parametric_pattern() {
        let p2 = builtin("P^2").unwrap();
        assert_eq!(p2.apply("neg", &["T2"]).unwrap(), "T1");
        assert_eq!(p2.apply("neg", &["T0"]).unwrap(), "f");
        assert_eq!(p2.apply("neg", &["f"]).unwrap(), "T0");
        assert_eq!(p2.apply("imp", &["T2", "f"]).unwrap(), "f");
        assert_eq!(p2.apply("imp", &["f", "f"]).unwrap(), "T0");

        let i2 = builtin("I^2").unwrap();
        assert_eq!(i2.apply("neg", &["F2"]).unwrap(), "F1");
        assert_eq!(i2.apply("neg", &["F0"]).unwrap(), "t");
        assert_eq!(i2.apply("neg", &["t"]).unwrap(), "F0");
        assert_eq!(i2.apply("imp", &["t", "F2"]).unwrap(), "F0");
        assert_eq!(i2.apply("imp", &["F1", "F2"]).unwrap(), "t");
    }

    #[test]
    fn family_limits_and_unknown_names_error() {
        assert!(builtin_family("P", MAX_FAMILY_PARAM + 1).is_err());
        assert!(builtin_family("Q", 1).is_err());
        assert!(builtin("nosuch").is_none());
        assert!(builtin("P^x").is_none());
    }

    #[test]
    fn demonstration_pairs_are_admissible() {
        let p1 = builtin("P1").unwrap();
        let cpland = builtin("CPLand").unwrap();
        assert!(is_admissible(&p1, &cpland, &pairs::p1_cpl()));

        let fde = builtin("FDE").unwrap();
        let j3 = builtin("J3").unwrap();
        assert!(is_admissible(&fde, &j3, &pairs::fde_j3()));

        let l3 = builtin("L3conj").unwrap();
        let g3 = builtin("G3conj").unwrap();
        // Each direction fixes 1 on 1 and maps {0, half} anywhere in
        // {0, half}: four choices per direction, sixteen admissible pairs.
        let all = enumerate_admissible_pairs(&l3, &g3);
        assert_eq!(all.len(), 16);
        for lv in [1, 2] {
            for mv in [1, 2] {
                let pair = pairs::l3_g3(lv, mv).unwrap();
                assert!(is_admissible(&l3, &g3, &pair), "variant ({lv},{mv})");
                assert!(all.contains(&pair));
            }
        }
    }

    #[test]
    fn family_pairs_translate_as_specified() {
        let i1 = builtin("I^1").unwrap();
        let p1 = builtin("P^1").unwrap();
        let pair = pairs::i_p(&i1, &p1, 1, 0).unwrap();
        assert!(is_admissible(&i1, &p1, &pair));
        assert_eq!(pair.lambda_name(&i1, &p1, "t").unwrap(), "T1");
        assert_eq!(pair.lambda_name(&i1, &p1, "F1").unwrap(), "f");
        assert_eq!(pair.mu_name(&i1, &p1, "T0").unwrap(), "t");
        assert_eq!(pair.mu_name(&i1, &p1, "f").unwrap(), "F0");
        assert!(pairs::i_p(&i1, &p1, 2, 0).is_err());
    }
}
