//! Human-readable tables, machine-readable lines, and re-parseable exports.
//!
//! Three audiences, three formats. [`render_matrix`] prints truth tables in
//! the usual grid layout with designated values starred. [`machine_matrix`]
//! prints one fact per line for scripts. [`export_matrix`] and
//! [`export_pair`] emit the text format accepted by [`crate::parse`], and
//! round-trip exactly.

use std::fmt::Write as _;

use crate::fibring::{FibredMatrix, FibringPair};
use crate::matrix::Matrix;
use crate::{Error, Result};

/// A value name with the designation star appended (`1*` when designated).
fn marked(m: &Matrix, index: usize) -> String {
    if m.is_designated_index(index) {
        format!("{}*", m.value_name(index))
    } else {
        m.value_name(index).to_string()
    }
}

fn pad(s: &str, width: usize) -> String {
    format!("{s:<width$}")
}

fn push_line(out: &mut String, line: &str) {
    out.push_str(line.trim_end());
    out.push('\n');
}

/// Renders the truth table of the connective at `position` in the signature.
///
/// Nullary connectives print as a single equation, unary ones as a
/// two-column table, binary ones as a grid (rows are the first argument),
/// and higher arities as one equation per argument tuple. Rows and columns
/// follow carrier order and designated values carry a `*`.
pub fn render_table(m: &Matrix, position: usize) -> String {
    let (conn, arity) = m.signature().entry(position);
    let n = m.value_count();
    let names: Vec<String> = (0..n).map(|i| marked(m, i)).collect();
    let mut out = String::new();
    match arity {
        0 => {
            let v = m.apply_index(position, &[]);
            let _ = writeln!(out, "{conn} = {}", names[v]);
        }
        1 => {
            let w = names
                .iter()
                .map(String::len)
                .max()
                .unwrap_or(1)
                .max(conn.len())
                .max(1);
            push_line(&mut out, &format!("{} | {}", pad("x", w), conn));
            push_line(
                &mut out,
                &format!("{}-+-{}", "-".repeat(w), "-".repeat(conn.len().max(1))),
            );
            for x in 0..n {
                let v = m.apply_index(position, &[x]);
                push_line(&mut out, &format!("{} | {}", pad(&names[x], w), names[v]));
            }
        }
        2 => {
            let w = names
                .iter()
                .map(String::len)
                .max()
                .unwrap_or(1)
                .max(conn.len())
                .max(1);
            let header: Vec<String> = names.iter().map(|s| pad(s, w)).collect();
            push_line(
                &mut out,
                &format!("{} | {}", pad(conn, w), header.join("  ")),
            );
            push_line(
                &mut out,
                &format!("{}-+-{}", "-".repeat(w), "-".repeat(w * n + 2 * (n - 1))),
            );
            for x in 0..n {
                let row: Vec<String> = (0..n)
                    .map(|y| pad(&names[m.apply_index(position, &[x, y])], w))
                    .collect();
                push_line(
                    &mut out,
                    &format!("{} | {}", pad(&names[x], w), row.join("  ")),
                );
            }
        }
        _ => {
            let mut args = vec![0usize; arity as usize];
            loop {
                let tuple: Vec<&str> = args.iter().map(|&i| names[i].as_str()).collect();
                let v = m.apply_index(position, &args);
                let _ = writeln!(out, "{conn}({}) = {}", tuple.join(","), names[v]);
                let mut pos = arity as usize;
                loop {
                    if pos == 0 {
                        return out;
                    }
                    pos -= 1;
                    args[pos] += 1;
                    if args[pos] < n {
                        break;
                    }
                    args[pos] = 0;
                }
            }
        }
    }
    out
}

/// Renders the whole matrix: a header naming the carrier (designated values
/// starred), then one table per connective in signature order.
pub fn render_matrix(m: &Matrix) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "matrix {}", m.name());
    let values: Vec<String> = (0..m.value_count()).map(|i| marked(m, i)).collect();
    let _ = writeln!(out, "values: {}", values.join(" "));
    for position in 0..m.signature().len() {
        let _ = writeln!(out);
        out.push_str(&render_table(m, position));
    }
    out
}

/// Renders a translation pair as two mapping lines.
pub fn render_pair(m1: &Matrix, m2: &Matrix, pair: &FibringPair) -> String {
    let lambda: Vec<String> = (0..m1.value_count())
        .map(|i| {
            format!(
                "{} -> {}",
                m1.value_name(i),
                m2.value_name(pair.lambda_index(i))
            )
        })
        .collect();
    let mu: Vec<String> = (0..m2.value_count())
        .map(|i| {
            format!(
                "{} -> {}",
                m2.value_name(i),
                m1.value_name(pair.mu_index(i))
            )
        })
        .collect();
    format!("lambda: {}\nmu: {}\n", lambda.join(", "), mu.join(", "))
}

/// One fact per line, stable order: `matrix`, `value`, `op`, then every
/// `cell`. Suitable for diffing and for scripts.
pub fn machine_matrix(m: &Matrix) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "matrix {}", m.name());
    for i in 0..m.value_count() {
        let _ = writeln!(
            out,
            "value {} {}",
            m.value_name(i),
            if m.is_designated_index(i) {
                "designated"
            } else {
                "undesignated"
            }
        );
    }
    for position in 0..m.signature().len() {
        let (conn, arity) = m.signature().entry(position);
        let _ = writeln!(out, "op {conn} {arity}");
        let mut args = vec![0usize; arity as usize];
        loop {
            let tuple: Vec<&str> = args.iter().map(|&i| m.value_name(i)).collect();
            let v = m.apply_index(position, &args);
            if tuple.is_empty() {
                let _ = writeln!(out, "cell {conn} -> {}", m.value_name(v));
            } else {
                let _ = writeln!(out, "cell {conn} {} -> {}", tuple.join(" "), m.value_name(v));
            }
            let mut pos = arity as usize;
            let mut done = true;
            while pos > 0 {
                pos -= 1;
                args[pos] += 1;
                if args[pos] < m.value_count() {
                    done = false;
                    break;
                }
                args[pos] = 0;
            }
            if done {
                break;
            }
        }
    }
    out
}

/// Emits the matrix in the text format accepted by the parser. Unary and
/// nullary connectives use explicit rows; larger arities use the compact
/// `table` form, one line per leading argument.
pub fn export_matrix(m: &Matrix) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "matrix {} {{", m.name());
    let _ = writeln!(out, "  values {} ;", m.values().join(" "));
    let _ = writeln!(out, "  designated {} ;", m.designated_values().join(" "));
    for position in 0..m.signature().len() {
        let (conn, arity) = m.signature().entry(position);
        let _ = writeln!(out, "  op {conn}/{arity} {{");
        let n = m.value_count();
        if arity <= 1 {
            if arity == 0 {
                let v = m.apply_index(position, &[]);
                let _ = writeln!(out, "    -> {} ;", m.value_name(v));
            } else {
                for x in 0..n {
                    let v = m.apply_index(position, &[x]);
                    let _ = writeln!(out, "    {} -> {} ;", m.value_name(x), m.value_name(v));
                }
            }
        } else {
            let _ = writeln!(out, "    table");
            let cells = n.pow(arity as u32);
            for start in (0..cells).step_by(n) {
                let row: Vec<&str> = (start..start + n)
                    .map(|i| {
                        let args = crate::matrix::index_tuple(i, n, arity as usize);
                        m.value_name(m.apply_index(position, &args))
                    })
                    .collect();
                let terminator = if start + n == cells { " ;" } else { "" };
                let _ = writeln!(out, "      {}{}", row.join(" "), terminator);
            }
        }
        let _ = writeln!(out, "  }}");
    }
    let _ = writeln!(out, "}}");
    out
}

/// Emits a pair block in the text format accepted by the parser.
pub fn export_pair(name: &str, m1: &Matrix, m2: &Matrix, pair: &FibringPair) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "pair {name} {{");
    let _ = writeln!(out, "  lambda {{");
    for i in 0..m1.value_count() {
        let _ = writeln!(
            out,
            "    {} -> {} ;",
            m1.value_name(i),
            m2.value_name(pair.lambda_index(i))
        );
    }
    let _ = writeln!(out, "  }}");
    let _ = writeln!(out, "  mu {{");
    for i in 0..m2.value_count() {
        let _ = writeln!(
            out,
            "    {} -> {} ;",
            m2.value_name(i),
            m1.value_name(pair.mu_index(i))
        );
    }
    let _ = writeln!(out, "  }}");
    let _ = writeln!(out, "}}");
    out
}

/// Emits a two-matrix-plus-pair spec file that reloads to the given fibred
/// matrix's ingredients.
pub fn export_fibred_spec(f: &FibredMatrix) -> String {
    let m1 = f.component(crate::fibring::Side::One);
    let m2 = f.component(crate::fibring::Side::Two);
    if m1.name() == m2.name() {
        // Self-fibring: disambiguate so the file names two distinct blocks.
        let renamed = m2.renamed(format!("{}.copy", m2.name()));
        return format!(
            "{}\n{}\n{}",
            export_matrix(m1),
            export_matrix(&renamed),
            export_pair("pair0", m1, &renamed, f.pair())
        );
    }
    format!(
        "{}\n{}\n{}",
        export_matrix(m1),
        export_matrix(m2),
        export_pair("pair0", m1, m2, f.pair())
    )
}

/// Loads a builtin or a spec file: `name` is first tried as a path, then as
/// a catalog name. Errors mention both failures.
pub fn load_matrix_or_builtin(name: &str) -> Result<Matrix> {
    if std::path::Path::new(name).exists() {
        let text = std::fs::read_to_string(name)
            .map_err(|e| Error::parse(format!("cannot read {name}: {e}")))?;
        return crate::parse::parse_matrix(&text);
    }
    crate::catalog::builtin(name).ok_or_else(|| {
        Error::parse(format!(
            "{name} is neither a readable file nor a builtin; see list-builtins"
        ))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::parse;

    #[test]
    fn every_builtin_export_reloads_identically() {
        for entry in catalog::list() {
            let name = if entry.name.contains('^') {
                entry.name.replace('k', "2").replace('n', "1")
            } else {
                entry.name.clone()
            };
            let m = catalog::builtin(&name).unwrap();
            let text = export_matrix(&m);
            let back = parse::parse_matrix(&text).unwrap();
            assert_eq!(m, back, "{name} does not round-trip");
        }
    }

    #[test]
    fn fibred_matrix_export_reloads_identically() {
        let m1 = catalog::builtin("P1").unwrap();
        let m2 = catalog::builtin("CPLand").unwrap();
        let fibred = crate::fibring::fibre(&m1, &m2, &catalog::pairs::p1_cpl()).unwrap();
        let text = export_matrix(fibred.matrix());
        let back = parse::parse_matrix(&text).unwrap();
        assert_eq!(*fibred.matrix(), back);
    }

    #[test]
    fn pair_export_reloads_identically() {
        let m1 = catalog::builtin("P1").unwrap();
        let m2 = catalog::builtin("CPLand").unwrap();
        let pair = catalog::pairs::p1_cpl();
        let spec = format!(
            "{}\n{}\n{}",
            export_matrix(&m1),
            export_matrix(&m2),
            export_pair("demo", &m1, &m2, &pair)
        );
        match parse::parse_spec(&spec).unwrap() {
            parse::SpecFile::Fibred { m1: a, m2: b, pair: p } => {
                assert_eq!(a, m1);
                assert_eq!(b, m2);
                assert_eq!(p, pair);
            }
            parse::SpecFile::Single(_) => panic!("expected a fibred spec"),
        }
    }

    #[test]
    fn self_fibring_export_renames_the_second_copy() {
        let m = catalog::builtin("CPLand").unwrap();
        let pair = crate::fibring::FibringPair::identity(&m);
        let fibred = crate::fibring::fibre(&m, &m, &pair).unwrap();
        let spec = export_fibred_spec(&fibred);
        match parse::parse_spec(&spec).unwrap() {
            parse::SpecFile::Fibred { m1, m2, pair: p } => {
                assert_eq!(m1.name(), "CPLand");
                assert_eq!(m2.name(), "CPLand.copy");
                assert_eq!(p, pair);
            }
            parse::SpecFile::Single(_) => panic!("expected a fibred spec"),
        }
    }

    #[test]
    fn binary_grid_marks_designated_values() {
        let m = catalog::builtin("CPLand").unwrap();
        let grid = render_table(&m, m.signature().position("and").unwrap());
        assert!(grid.contains("and | 0    1*"), "grid was:\n{grid}");
        assert!(grid.contains("1*  | 0    1*"), "grid was:\n{grid}");
        let negation = render_table(&m, m.signature().position("neg").unwrap());
        assert!(negation.contains("x   | neg"), "table was:\n{negation}");
        assert!(negation.contains("1*  | 0"), "table was:\n{negation}");
    }

    #[test]
    fn machine_lines_cover_every_cell_in_stable_order() {
        let m = catalog::builtin("CPLand").unwrap();
        let text = machine_matrix(&m);
        let lines: Vec<&str> = text.lines().map(str::trim).collect();
        assert_eq!(lines[0], "matrix CPLand");
        assert_eq!(lines[1], "value 0 undesignated");
        assert_eq!(lines[2], "value 1 designated");
        assert!(lines.contains(&"cell neg 0 -> 1"));
        assert!(lines.contains(&"cell and 1 1 -> 1"));
        assert_eq!(lines.len(), 3 + (1 + 2) + (1 + 4));
    }

    #[test]
    fn nullary_and_ternary_render_as_equations() {
        let sig = crate::signature::Signature::new([("bot", 0u8), ("pick", 3u8)]).unwrap();
        let m = crate::matrix::Matrix::new(
            "tern",
            vec!["0".into(), "1".into()],
            vec!["1".into()],
            sig,
            vec![
                vec!["0".into()],
                vec![
                    "0".into(), "1".into(), "0".into(), "1".into(),
                    "0".into(), "0".into(), "1".into(), "1".into(),
                ],
            ],
        )
        .unwrap();
        assert_eq!(render_table(&m, 0), "bot = 0\n");
        let pick = render_table(&m, 1);
        assert!(pick.starts_with("pick(0,0,0) = 0\n"));
        assert!(pick.contains("pick(0,1*,0) = 0"));
        assert_eq!(pick.lines().count(), 8);

        let text = export_matrix(&m);
        let back = parse::parse_matrix(&text).unwrap();
        assert_eq!(m, back);
    }
}
