//! Input formats: a text line `c_1 … c_d ; u_0 … u_{d−1}` (integers or `a/b`),
//! or a JSON object `{"coefficients": [...], "initial": [...]}` whose entries
//! are strings or integers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// A recurrence as supplied by the user, possibly with rational entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputSpec {
    pub coefficients: Vec<BigRational>,
    pub initial: Vec<BigRational>,
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

/// Parse `a`, `-a`, `+a` or `a/b`.
pub fn parse_rational(tok: &str) -> Option<BigRational> {
    let tok = tok.strip_prefix('+').unwrap_or(tok);
    match tok.split_once('/') {
        None => tok.parse::<BigInt>().ok().map(BigRational::from_integer),
        Some((n, d)) => {
            let n: BigInt = n.parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            (!d.is_zero()).then(|| BigRational::new(n, d))
        }
    }
}

pub fn format_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl InputSpec {
    pub fn from_i64(coefficients: &[i64], initial: &[i64]) -> Self {
        let f = |v: &[i64]| v.iter().map(|&x| BigRational::from_integer(x.into())).collect();
        InputSpec { coefficients: f(coefficients), initial: f(initial) }
    }

    /// Auto-detects JSON (leading `{`) or the text format.
    pub fn parse(src: &str) -> Result<Self> {
        if src.trim_start().starts_with('{') {
            Self::parse_json(src)
        } else {
            Self::parse_text(src)
        }
    }

    pub fn parse_text(src: &str) -> Result<Self> {
        for (li, line) in src.lines().enumerate() {
            let lineno = li + 1;
            let content = line.split('#').next().unwrap_or("");
            if content.trim().is_empty() {
                continue;
            }
            let Some(semi) = content.find(';') else {
                return Err(parse_err(lineno, content.len() + 1, "expected ';' separating coefficients and initial values"));
            };
            let coefficients = tokens(&content[..semi], lineno, 1)?;
            let rest = &content[semi + 1..];
            if let Some(extra) = rest.find(';') {
                return Err(parse_err(lineno, semi + 2 + extra, "unexpected second ';'"));
            }
            let initial = tokens(rest, lineno, semi + 2)?;
            let spec = InputSpec { coefficients, initial };
            spec.check(lineno)?;
            return Ok(spec);
        }
        Err(parse_err(1, 1, "empty input"))
    }

    pub fn parse_json(src: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(src)
            .map_err(|e| parse_err(e.line(), e.column(), e.to_string()))?;
        Self::from_json(&v)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let field = |name: &str| -> Result<Vec<BigRational>> {
            let arr = v
                .get(name)
                .and_then(Value::as_array)
                .ok_or_else(|| parse_err(1, 1, format!("missing array field \"{name}\"")))?;
            arr.iter()
                .enumerate()
                .map(|(i, x)| {
                    let s = match x {
                        Value::String(s) => s.clone(),
                        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
                        _ => String::new(),
                    };
                    parse_rational(s.trim()).ok_or_else(|| {
                        parse_err(1, 1, format!("{name}[{i}]: expected an integer or fraction string"))
                    })
                })
                .collect()
        };
        let spec = InputSpec { coefficients: field("coefficients")?, initial: field("initial")? };
        spec.check(1)?;
        Ok(spec)
    }

    fn check(&self, line: usize) -> Result<()> {
        if self.coefficients.is_empty() {
            return Err(parse_err(line, 1, "no coefficients"));
        }
        if self.coefficients.len() != self.initial.len() {
            return Err(parse_err(
                line,
                1,
                format!(
                    "{} coefficients but {} initial values",
                    self.coefficients.len(),
                    self.initial.len()
                ),
            ));
        }
        if self.coefficients.last().unwrap().is_zero() {
            return Err(parse_err(line, 1, "last coefficient must be nonzero"));
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let j = |v: &[BigRational]| v.iter().map(format_rational).collect::<Vec<_>>().join(" ");
        format!("{} ; {}", j(&self.coefficients), j(&self.initial))
    }

    pub fn to_json(&self) -> Value {
        let j = |v: &[BigRational]| v.iter().map(|x| Value::String(format_rational(x))).collect::<Vec<_>>();
        json!({ "coefficients": j(&self.coefficients), "initial": j(&self.initial) })
    }
}

fn tokens(s: &str, line: usize, col0: usize) -> Result<Vec<BigRational>> {
    let mut out = Vec::new();
    let mut start = None;
    let bytes: Vec<char> = s.chars().collect();
    for i in 0..=bytes.len() {
        let sep = i == bytes.len() || bytes[i].is_whitespace() || bytes[i] == ',';
        match (sep, start) {
            (false, None) => start = Some(i),
            (true, Some(st)) => {
                let tok: String = bytes[st..i].iter().collect();
                let v = parse_rational(&tok).ok_or_else(|| {
                    parse_err(line, col0 + st, format!("invalid number '{tok}'"))
                })?;
                out.push(v);
                start = None;
            }
            _ => {}
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let s = InputSpec::parse("9 -10 522 -4745 4225 ; -30 -27 0 469 1762").unwrap();
        assert_eq!(s, InputSpec::from_i64(&[9, -10, 522, -4745, 4225], &[-30, -27, 0, 469, 1762]));
        assert_eq!(InputSpec::parse(&s.to_text()).unwrap(), s);
        let r = InputSpec::parse("# comment\n3/2 1/4; 1 1\n").unwrap();
        assert_eq!(r.coefficients[0], BigRational::new(3.into(), 2.into()));
    }

    #[test]
    fn json_round_trip() {
        let s = InputSpec::parse(r#"{"coefficients": ["1", 1], "initial": ["0", "123456789012345678901234567890"]}"#).unwrap();
        assert_eq!(s.initial[1].numer().to_string(), "123456789012345678901234567890");
        assert_eq!(InputSpec::from_json(&s.to_json()).unwrap(), s);
    }

    #[test]
    fn errors_carry_positions() {
        match InputSpec::parse("1 x2 ; 0 1") {
            Err(Error::Parse { line: 1, column: 3, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match InputSpec::parse("\n1 1 0 1") {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(InputSpec::parse("1 0 ; 1 1").is_err());
        assert!(InputSpec::parse("1 1 ; 1").is_err());
        assert!(InputSpec::parse("1/0 ; 1").is_err());
    }
}
