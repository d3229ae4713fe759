//! Polynomial text such as `3/2*x1*x3^2 - x2`.
//!
//! Factors are multiplied left to right, so `x2*x1` over odd generators reads as
//! `-x1*x2`. Numeric factors may appear anywhere in a term.

use crate::algebra::{GradedVector, Presentation};
use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

fn parse_error(column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line: 1,
        column,
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(String),
    Name(String),
    Plus,
    Minus,
    Star,
    Caret,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push((col, Token::Plus));
                i += 1;
            }
            '-' => {
                out.push((col, Token::Minus));
                i += 1;
            }
            '*' => {
                out.push((col, Token::Star));
                i += 1;
            }
            '^' => {
                out.push((col, Token::Caret));
                i += 1;
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
                    i += 1;
                }
                out.push((col, Token::Number(chars[start..i].iter().collect())));
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((col, Token::Name(chars[start..i].iter().collect())));
            }
            other => return Err(parse_error(col, format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

/// Parses a homogeneous polynomial of the given degree. `None` accepts any
/// degree, inferred from the first nonzero term (zero polynomials get degree 0).
pub fn parse_polynomial(
    p: &Presentation,
    text: &str,
    degree: Option<u32>,
) -> Result<GradedVector> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(parse_error(1, "empty polynomial"));
    }
    let field = p.field();
    let mut pos = 0;
    let mut terms: Vec<(usize, GradedVector)> = Vec::new();
    let mut first = true;
    while pos < tokens.len() {
        let mut sign = field.one();
        match tokens[pos].1 {
            Token::Plus if !first => pos += 1,
            Token::Minus => {
                sign = -&sign;
                pos += 1;
            }
            _ if first => {}
            _ => return Err(parse_error(tokens[pos].0, "expected '+' or '-'")),
        }
        first = false;
        let col = tokens.get(pos).map_or(text.len() + 1, |t| t.0);
        let (term, next) = parse_term(p, &tokens, pos, text.len() + 1)?;
        pos = next;
        terms.push((col, term.scale(&sign)));
    }
    let target = match degree {
        Some(d) => d,
        None => terms
            .iter()
            .find(|(_, t)| !t.is_zero())
            .map_or(0, |(_, t)| t.degree()),
    };
    let mut acc = p.zero(target);
    for (col, t) in terms {
        if t.is_zero() {
            continue;
        }
        if t.degree() != target {
            return Err(parse_error(
                col,
                format!("term has degree {}, expected {}", t.degree(), target),
            ));
        }
        acc = acc.add(&t)?;
    }
    Ok(acc)
}

fn parse_term(
    p: &Presentation,
    tokens: &[(usize, Token)],
    mut pos: usize,
    end_col: usize,
) -> Result<(GradedVector, usize)> {
    let field = p.field();
    let mut coeff = field.one();
    let mut acc = p.one();
    loop {
        let Some((col, tok)) = tokens.get(pos) else {
            return Err(parse_error(end_col, "expected a factor"));
        };
        match tok {
            Token::Number(n) => {
                coeff = &coeff * &parse_number(field, n, *col)?;
                pos += 1;
            }
            Token::Name(name) => {
                let idx = p
                    .generator_index(name)
                    .ok_or_else(|| parse_error(*col, format!("unknown generator {name:?}")))?;
                pos += 1;
                let mut exp = 1u32;
                if let Some((_, Token::Caret)) = tokens.get(pos) {
                    pos += 1;
                    match tokens.get(pos) {
                        Some((c, Token::Number(n))) => {
                            exp = n
                                .parse()
                                .map_err(|_| parse_error(*c, format!("invalid exponent {n:?}")))?;
                            pos += 1;
                        }
                        Some((c, _)) => return Err(parse_error(*c, "expected an exponent")),
                        None => return Err(parse_error(end_col, "expected an exponent")),
                    }
                }
                let g = p.generator_vector(idx);
                for _ in 0..exp {
                    acc = p.multiply(&acc, &g)?;
                }
            }
            _ => return Err(parse_error(*col, "expected a number or generator")),
        }
        match tokens.get(pos) {
            Some((_, Token::Star)) => pos += 1,
            _ => break,
        }
    }
    Ok((acc.scale(&coeff), pos))
}

fn parse_number(field: Field, text: &str, col: usize) -> Result<Scalar> {
    field.parse_scalar(text).map_err(|e| match e {
        Error::Parse { message, .. } => parse_error(col, message),
        other => other,
    })
}

/// Renders a vector in the syntax accepted by [`parse_polynomial`].
pub fn render_vector(p: &Presentation, v: &GradedVector) -> String {
    if v.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in v.terms().enumerate() {
        let (negative, magnitude) = if c.is_negative_rational() {
            (true, -c)
        } else {
            (false, c.clone())
        };
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mono = p.render_monomial(m);
        if m.is_unit() {
            out.push_str(&coefficient_text(&magnitude));
        } else if magnitude.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{}*{}", coefficient_text(&magnitude), mono));
        }
    }
    out
}

/// Inside polynomials a residue is written as its representative in `[0, p)`.
fn coefficient_text(c: &Scalar) -> String {
    match c.residue() {
        Some(r) => r.to_string(),
        None => c.to_string(),
    }
}
