//! Text formats: polynomial expressions and map files.
//!
//! A map file looks like
//!
//! ```text
//! # comments run to the end of the line
//! name: cusp        (optional)
//! vars: x1 x2 x3
//! targets: a1 a2 a3 (optional, defaults to y1..yn)
//! map:
//! x1^3 - x1*x2*x3
//! x2*x3
//! x3*x1
//! ```
//!
//! Expressions use `+ - * / ^` and parentheses. Multiplication is always
//! explicit; `/` only divides by a nonzero constant, so `1/2*x` is fine.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{MonomialOrder, PolyMap, Polynomial, Rational, Ring, VariableContext};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    end_col: usize,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn lex(src: &str, line: usize, col0: usize) -> Result<Lexer> {
    let chars: Vec<char> = src.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            toks.push((Tok::Num(s.parse().expect("digits")), col));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if "+-*/^()".contains(c) {
            toks.push((Tok::Op(c), col));
            i += 1;
        } else if c == '\u{2212}' {
            // typographic minus
            toks.push((Tok::Op('-'), col));
            i += 1;
        } else {
            return Err(err(line, col, format!("unexpected character `{c}`")));
        }
    }
    Ok(Lexer {
        toks,
        end_col: col0 + chars.len(),
    })
}

struct Parser<'a> {
    lx: Lexer,
    pos: usize,
    line: usize,
    ring: &'a Ring,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.lx.toks.get(self.pos).map(|t| &t.0)
    }

    fn col(&self) -> usize {
        self.lx
            .toks
            .get(self.pos)
            .map_or(self.lx.end_col, |t| t.1)
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while let Some(Tok::Op(c @ ('*' | '/'))) = self.peek().cloned() {
            let col = self.col();
            self.pos += 1;
            let rhs = self.unary()?;
            if c == '*' {
                acc = &acc * &rhs;
            } else {
                if !rhs.is_constant() || rhs.is_zero() {
                    return Err(err(self.line, col, "division by a non-constant or zero"));
                }
                let d = rhs.terms()[0].1.clone();
                acc = acc.scale(&(Rational::from_integer(1.into()) / d));
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let col = self.col();
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| err(self.line, col, "exponent too large"))?;
                    Ok(base.pow(e))
                }
                _ => Err(err(self.line, col, "expected a non-negative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let col = self.col();
        let tok = self.peek().cloned();
        self.pos += 1;
        let out = match tok {
            Some(Tok::Num(n)) => Polynomial::constant(self.ring, Rational::from_integer(n)),
            Some(Tok::Ident(name)) => match self.ring.index_of(&name) {
                Some(i) => Polynomial::var(self.ring, i),
                None => return Err(err(self.line, col, format!("unknown variable `{name}`"))),
            },
            Some(Tok::Op('(')) => {
                let inner = self.expr()?;
                let close = self.col();
                if self.peek() != Some(&Tok::Op(')')) {
                    return Err(err(self.line, close, "expected `)`"));
                }
                self.pos += 1;
                inner
            }
            Some(t) => return Err(err(self.line, col, format!("unexpected token {t:?}"))),
            None => return Err(err(self.line, col, "unexpected end of expression")),
        };
        // implicit multiplication such as `2x` or `x(y)` is rejected
        if let Some(Tok::Num(_) | Tok::Ident(_) | Tok::Op('(')) = self.peek() {
            return Err(err(
                self.line,
                self.col(),
                "expected an operator (implicit multiplication is not allowed)",
            ));
        }
        Ok(out)
    }
}

fn parse_at(src: &str, ring: &Ring, line: usize, col0: usize) -> Result<Polynomial> {
    let lx = lex(src, line, col0)?;
    if lx.toks.is_empty() {
        return Err(err(line, col0, "empty expression"));
    }
    let mut p = Parser {
        lx,
        pos: 0,
        line,
        ring,
    };
    let out = p.expr()?;
    if p.pos < p.lx.toks.len() {
        return Err(err(line, p.col(), "trailing input"));
    }
    Ok(out)
}

/// Parses a single polynomial expression over `ring`.
pub fn parse_polynomial(src: &str, ring: &Ring) -> Result<Polynomial> {
    parse_at(src, ring, 1, 1)
}

pub fn is_identifier(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic())
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Debug, Clone)]
pub struct MapFileOptions {
    /// Allow a component count different from the variable count.
    pub rectangular: bool,
    pub order: MonomialOrder,
}

impl Default for MapFileOptions {
    fn default() -> Self {
        MapFileOptions {
            rectangular: false,
            order: MonomialOrder::GrevLex,
        }
    }
}

/// Parses a square map file with the default grevlex order.
pub fn parse_map(text: &str) -> Result<PolyMap> {
    parse_map_with(text, &MapFileOptions::default())
}

pub fn parse_map_with(text: &str, opts: &MapFileOptions) -> Result<PolyMap> {
    let mut name = None;
    let mut vars: Option<(Vec<String>, usize)> = None;
    let mut targets: Option<(Vec<String>, usize)> = None;
    let mut ring: Option<Ring> = None;
    let mut in_map = false;
    let mut comps = Vec::new();
    let mut last_line = 0;

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        if in_map {
            let r = ring.as_ref().expect("ring set before map section");
            comps.push(parse_at(content, r, line, 1)?);
            continue;
        }
        let Some((key, rest)) = content.split_once(':') else {
            return Err(err(line, 1, "expected `vars:`, `targets:`, `name:` or `map:`"));
        };
        let col = key.len() + 2;
        let idents = |rest: &str| -> Result<Vec<String>> {
            let v: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            if let Some(bad) = v.iter().find(|s| !is_identifier(s)) {
                return Err(err(line, col, format!("invalid identifier `{bad}`")));
            }
            if v.is_empty() {
                return Err(err(line, col, "empty variable list"));
            }
            Ok(v)
        };
        match key.trim() {
            "name" => name = Some(rest.trim().to_string()),
            "vars" => {
                let v = idents(rest)?;
                ring = Some(
                    VariableContext::new(&v, opts.order.clone())
                        .map_err(|e| err(line, col, e.to_string()))?,
                );
                vars = Some((v, line));
            }
            "targets" => targets = Some((idents(rest)?, line)),
            "map" => {
                if ring.is_none() {
                    return Err(err(line, 1, "`map:` before `vars:`"));
                }
                in_map = true;
                if !rest.trim().is_empty() {
                    let r = ring.as_ref().unwrap();
                    comps.push(parse_at(rest, r, line, col)?);
                }
            }
            other => return Err(err(line, 1, format!("unknown section `{other}`"))),
        }
    }

    let Some((vars, vars_line)) = vars else {
        return Err(err(last_line.max(1), 1, "missing `vars:` line"));
    };
    if !in_map {
        return Err(err(last_line.max(1), 1, "missing `map:` section"));
    }
    if comps.is_empty() {
        return Err(err(last_line.max(1), 1, "map has no components"));
    }
    if !opts.rectangular && comps.len() != vars.len() {
        return Err(err(
            vars_line,
            1,
            format!(
                "arity mismatch: {} components for {} variables",
                comps.len(),
                vars.len()
            ),
        ));
    }
    let ring = ring.expect("set with vars");
    let map = match targets {
        Some((t, tl)) => {
            if t.len() != comps.len() {
                return Err(err(tl, 1, "target count differs from component count"));
            }
            PolyMap::new(ring, t, comps).map_err(|e| err(tl, 1, e.to_string()))?
        }
        None => PolyMap::with_default_targets(ring, comps)?,
    };
    Ok(match name {
        Some(n) if !n.is_empty() => map.named(n),
        _ => map,
    })
}

/// Renders a map in the map-file format; `parse_map` reads it back exactly.
pub fn render_map(map: &PolyMap) -> String {
    let mut out = String::new();
    if let Some(n) = map.name() {
        out.push_str(&format!("name: {n}\n"));
    }
    out.push_str(&format!("vars: {}\n", map.source().names().join(" ")));
    out.push_str(&format!("targets: {}\n", map.targets().join(" ")));
    out.push_str("map:\n");
    for c in map.components() {
        out.push_str(&format!("{c}\n"));
    }
    out
}

/// Parses a rational literal such as `-3`, `5/2`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ratio;

    const PASFERME: &str = "# cusp example\nvars: x1 x2 x3\nmap:\nx1^3 - x1*x2*x3\nx2*x3\nx3*x1\n";

    #[test]
    fn parses_the_reference_map() {
        let m = parse_map(PASFERME).unwrap();
        assert_eq!(m.arity(), 3);
        let comps: Vec<String> = m.components().iter().map(|c| c.to_string()).collect();
        assert_eq!(comps, ["x1^3 - x1*x2*x3", "x2*x3", "x1*x3"]);
        assert_eq!(m.targets(), ["y1", "y2", "y3"]);
    }

    #[test]
    fn identity_on_the_line() {
        let m = parse_map("vars: x\nmap:\nx\n").unwrap();
        assert_eq!(m.components()[0], Polynomial::var(m.source(), 0));
    }

    #[test]
    fn rational_literals() {
        let r = VariableContext::grevlex(&["x1", "x2"]).unwrap();
        let p = parse_polynomial("x1^2 - 1/2*x2", &r).unwrap();
        assert_eq!(p.terms()[1].1, ratio(-1, 2));
    }

    #[test]
    fn errors_carry_positions() {
        let r = VariableContext::grevlex(&["x"]).unwrap();
        match parse_polynomial("2x", &r) {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 2),
            other => panic!("{other:?}"),
        }
        match parse_map("vars: x y\nmap:\nx + z\ny\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (3, 5)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_map("vars: x y\nmap:\nx\n"),
            Err(Error::Parse { .. })
        ));
        assert!(parse_map_with(
            "vars: x y\nmap:\nx\n",
            &MapFileOptions {
                rectangular: true,
                ..Default::default()
            }
        )
        .is_ok());
        assert!(parse_polynomial("x/(x+1)", &r).is_err());
        assert!(parse_polynomial("(x + 1", &r).is_err());
    }

    #[test]
    fn render_round_trip() {
        let m = parse_map(PASFERME).unwrap().named("pasferme");
        let again = parse_map(&render_map(&m)).unwrap();
        assert_eq!(again, m);
    }
}
