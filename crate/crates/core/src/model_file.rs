//! The line-oriented model description format.
//!
//! ```text
//! # the 4-sphere
//! model S4
//! generator x 4
//! generator y 7
//! d y = x^2
//! ```
//!
//! `d` lines may mention generators declared later in the file. Generators
//! without a `d` line are closed.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::format::parse_expression_at;
use crate::gca::{Derivation, FreeGca, Generator};
use crate::models::SullivanModel;

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

/// Splits off the first whitespace-delimited word, returning it, its
/// 1-based column, and the remainder with its starting column.
fn word(text: &str, column: usize) -> Option<(&str, usize, &str, usize)> {
    let start = text.len() - text.trim_start().len();
    let rest = &text[start..];
    if rest.is_empty() {
        return None;
    }
    let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
    let col = column + text[..start].chars().count();
    let after_col = col + rest[..end].chars().count();
    Some((&rest[..end], col, &rest[end..], after_col))
}

struct DLine<'a> {
    line: usize,
    name: String,
    name_column: usize,
    expr: &'a str,
    expr_column: usize,
}

/// Parses a model file and checks that the result is a Sullivan model
/// (`d` homogeneous of degree +1, `d² = 0`, no cyclic dependencies).
pub fn parse_model(text: &str) -> Result<SullivanModel> {
    let mut name = None;
    let mut generators = Vec::new();
    let mut d_lines: Vec<DLine> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let Some((keyword, kcol, rest, rest_col)) = word(content, 1) else {
            continue;
        };
        match keyword {
            "model" => {
                let label = rest.trim();
                if label.is_empty() {
                    return Err(parse_error(line, rest_col, "expected a model name"));
                }
                name = Some(label.to_string());
            }
            "generator" => {
                let (gname, gcol, rest, rcol) =
                    word(rest, rest_col).ok_or_else(|| parse_error(line, rest_col, "expected a generator name"))?;
                if !is_identifier(gname) {
                    return Err(parse_error(line, gcol, format!("invalid generator name `{gname}`")));
                }
                let (deg, dcol, rest, tcol) =
                    word(rest, rcol).ok_or_else(|| parse_error(line, rcol, "expected a degree"))?;
                let degree: i64 = deg
                    .parse()
                    .map_err(|_| parse_error(line, dcol, format!("invalid degree `{deg}`")))?;
                if let Some((_, col, _, _)) = word(rest, tcol) {
                    return Err(parse_error(line, col, "trailing input"));
                }
                if degree < 1 {
                    return Err(parse_error(
                        line,
                        dcol,
                        format!("degree of `{gname}` must be at least 1"),
                    ));
                }
                generators.push((Generator::new(gname, degree), line, gcol));
            }
            "d" => {
                let (gname, gcol, rest, rcol) =
                    word(rest, rest_col).ok_or_else(|| parse_error(line, rest_col, "expected a generator name"))?;
                let trimmed = rest.trim_start();
                let eq_col = rcol + (rest.len() - trimmed.len());
                let Some(expr) = trimmed.strip_prefix('=') else {
                    return Err(parse_error(line, eq_col, "expected `=`"));
                };
                d_lines.push(DLine {
                    line,
                    name: gname.to_string(),
                    name_column: gcol,
                    expr,
                    expr_column: eq_col + 1,
                });
            }
            other => return Err(parse_error(line, kcol, format!("unknown directive `{other}`"))),
        }
    }

    let mut seen = HashMap::new();
    for (g, line, col) in &generators {
        if seen.insert(g.name.clone(), *line).is_some() {
            return Err(parse_error(*line, *col, format!("duplicate generator `{}`", g.name)));
        }
    }
    let algebra = FreeGca::new(generators.into_iter().map(|(g, _, _)| g).collect())?;
    let mut images = HashMap::new();
    for dl in &d_lines {
        let Some(index) = algebra.index_of(&dl.name) else {
            return Err(parse_error(
                dl.line,
                dl.name_column,
                format!("unknown generator `{}`", dl.name),
            ));
        };
        if images.contains_key(&dl.name) {
            return Err(parse_error(
                dl.line,
                dl.name_column,
                format!("second `d` line for `{}`", dl.name),
            ));
        }
        let value = parse_expression_at(dl.expr, &algebra, dl.line, dl.expr_column)?;
        value.check_degree(algebra.generator(index).degree + 1, &format!("d {}", dl.name))?;
        images.insert(dl.name.clone(), value);
    }
    let d = Derivation::from_named(&algebra, 1, &images, true)?;
    let model = SullivanModel::new(name.unwrap_or_else(|| "model".to_string()), d)?;
    model.dependency_order()?;
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_generator() {
        let m = parse_model("generator x 4").unwrap();
        assert_eq!(m.algebra().len(), 1);
        assert!(m.d_of("x").unwrap().is_zero());
        assert_eq!(m.name(), "model");
    }

    #[test]
    fn sphere_with_comments_and_forward_reference() {
        let text = "# four-sphere\nmodel S4\nd y = x^2   # quadratic\ngenerator x 4\n\ngenerator y 7\n";
        let m = parse_model(text).unwrap();
        assert_eq!(m.name(), "S4");
        assert_eq!(m.d_of("y").unwrap().to_string(), "1 x^2");
        assert!(m.is_pure());
    }

    #[test]
    fn rejects_wrong_degree() {
        let err = parse_model("generator x 4\nd x = x").unwrap_err();
        assert!(matches!(
            err,
            Error::DegreeMismatch {
                expected: 5,
                found: 4,
                ..
            }
        ));
    }

    #[test]
    fn rejects_nonzero_square() {
        let text = "generator x 4\ngenerator y 7\ngenerator z 6\nd y = x^2\nd z = y";
        assert_eq!(parse_model(text).unwrap_err(), Error::NotSquareZero("z".into()));
    }

    #[test]
    fn reports_positions() {
        assert_eq!(
            parse_model("generator x 4\nd x = 0\nd y = x").unwrap_err(),
            Error::Parse {
                line: 3,
                column: 3,
                message: "unknown generator `y`".into()
            }
        );
        let err = parse_model("generator x 4\ngenerator y 9\nd y = x^2 + zz").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 3,
                column: 13,
                message: "unknown generator `zz`".into()
            }
        );
        assert!(matches!(
            parse_model("gen x 4"),
            Err(Error::Parse { line: 1, column: 1, .. })
        ));
        assert!(matches!(
            parse_model("generator x four"),
            Err(Error::Parse { column: 13, .. })
        ));
        assert!(matches!(
            parse_model("generator x 4\ngenerator x 6"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn rejects_cyclic_differential() {
        let err = parse_model("generator e 1\ngenerator a 2\nd a = e a").unwrap_err();
        assert_eq!(err, Error::NotSullivan("a".into()));
    }
}
