//! Kernel expression DSL.
//!
//! ```text
//! atom := szego | szego_poly(m) | da(m) | diag([r,...]; tail=r) | detball2 | const(r)
//! expr := atom | expr '*' expr | expr '^' realliteral | contract '(' expr ')'
//! ```
//!
//! `^` binds tighter than `*`; parentheses group.

use crate::error::{Error, Result};
use crate::kernel::KernelSpec;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Number(f64),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Equals,
    Star,
    Caret,
}

impl std::fmt::Display for Tok {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Number(x) => write!(f, "number {x}"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::LBracket => write!(f, "`[`"),
            Tok::RBracket => write!(f, "`]`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Semi => write!(f, "`;`"),
            Tok::Equals => write!(f, "`=`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Caret => write!(f, "`^`"),
        }
    }
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokenize(src: &'a str) -> Result<Vec<(usize, Tok)>> {
        let mut lx = Lexer { src, pos: 0 };
        let mut out = Vec::new();
        while let Some(t) = lx.next_token()? {
            out.push(t);
        }
        Ok(out)
    }

    fn next_token(&mut self) -> Result<Option<(usize, Tok)>> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if self.pos >= bytes.len() {
            return Ok(None);
        }
        let start = self.pos;
        let c = bytes[self.pos];
        let simple = match c {
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b'[' => Some(Tok::LBracket),
            b']' => Some(Tok::RBracket),
            b',' => Some(Tok::Comma),
            b';' => Some(Tok::Semi),
            b'=' => Some(Tok::Equals),
            b'*' => Some(Tok::Star),
            b'^' => Some(Tok::Caret),
            _ => None,
        };
        if let Some(t) = simple {
            self.pos += 1;
            return Ok(Some((start, t)));
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while self.pos < bytes.len()
                && (bytes[self.pos].is_ascii_alphanumeric() || bytes[self.pos] == b'_')
            {
                self.pos += 1;
            }
            let word = &self.src[start..self.pos];
            return Ok(Some((start, Tok::Ident(word.to_string()))));
        }
        if c.is_ascii_digit() || c == b'-' || c == b'+' || c == b'.' {
            self.pos += 1;
            while self.pos < bytes.len()
                && (bytes[self.pos].is_ascii_digit()
                    || bytes[self.pos] == b'.'
                    || bytes[self.pos] == b'e'
                    || bytes[self.pos] == b'E'
                    || ((bytes[self.pos] == b'-' || bytes[self.pos] == b'+')
                        && matches!(bytes[self.pos - 1], b'e' | b'E')))
            {
                self.pos += 1;
            }
            let lit = &self.src[start..self.pos];
            let x: f64 = lit.parse().map_err(|_| Error::Parse {
                pos: start,
                msg: format!("malformed number literal `{lit}`"),
            })?;
            return Ok(Some((start, Tok::Number(x))));
        }
        Err(Error::Parse {
            pos: start,
            msg: format!("unexpected character `{}`", &self.src[start..start + 1]),
        })
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    idx: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.idx).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.idx).map(|(_, t)| t.clone());
        self.idx += 1;
        t
    }

    fn err(&self, expected: &str) -> Error {
        let found = match self.peek() {
            Some(t) => format!("found {t}"),
            None => "found end of input".to_string(),
        };
        Error::Parse {
            pos: self.pos(),
            msg: format!("expected {expected}, {found}"),
        }
    }

    fn expect(&mut self, want: Tok, expected: &str) -> Result<()> {
        if self.peek() == Some(&want) {
            self.bump();
            Ok(())
        } else {
            Err(self.err(expected))
        }
    }

    fn number(&mut self, expected: &str) -> Result<f64> {
        match self.peek() {
            Some(Tok::Number(x)) => {
                let x = *x;
                self.bump();
                Ok(x)
            }
            _ => Err(self.err(expected)),
        }
    }

    fn usize_arg(&mut self, what: &str) -> Result<usize> {
        let p = self.pos();
        let x = self.number(&format!("a positive integer {what}"))?;
        if x.fract() != 0.0 || x < 1.0 {
            return Err(Error::Parse {
                pos: p,
                msg: format!("{what} must be a positive integer, got {x}"),
            });
        }
        Ok(x as usize)
    }

    // expr := term ('*' term)*
    fn expr(&mut self) -> Result<KernelSpec> {
        let mut lhs = self.term()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            let rhs = self.term()?;
            lhs = KernelSpec::product(lhs, rhs);
        }
        Ok(lhs)
    }

    // term := factor ('^' realliteral)*
    fn term(&mut self) -> Result<KernelSpec> {
        let mut base = self.factor()?;
        while self.peek() == Some(&Tok::Caret) {
            self.bump();
            let t = self.number("a real exponent after `^`")?;
            base = base.pow(t);
        }
        Ok(base)
    }

    // factor := atom | 'contract' '(' expr ')' | '(' expr ')'
    fn factor(&mut self) -> Result<KernelSpec> {
        match self.peek() {
            Some(Tok::LParen) => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)` closing the group")?;
                Ok(e)
            }
            Some(Tok::Ident(_)) => {
                let Some(Tok::Ident(name)) = self.bump() else {
                    unreachable!()
                };
                self.atom(&name)
            }
            _ => Err(self.err(
                "a kernel atom (szego, szego_poly, da, diag, detball2, const), `contract`, or `(`",
            )),
        }
    }

    fn atom(&mut self, name: &str) -> Result<KernelSpec> {
        match name {
            "szego" => Ok(KernelSpec::SzegoDisc),
            "detball2" => Ok(KernelSpec::DetBall2),
            "szego_poly" => {
                self.expect(Tok::LParen, "`(` after `szego_poly`")?;
                let m = self.usize_arg("variable count")?;
                self.expect(Tok::RParen, "`)` after the variable count")?;
                Ok(KernelSpec::SzegoPolydisc(m))
            }
            "da" => {
                self.expect(Tok::LParen, "`(` after `da`")?;
                let m = self.usize_arg("variable count")?;
                self.expect(Tok::RParen, "`)` after the variable count")?;
                Ok(KernelSpec::DruryArveson(m))
            }
            "const" => {
                self.expect(Tok::LParen, "`(` after `const`")?;
                let x = self.number("a real constant")?;
                self.expect(Tok::RParen, "`)` after the constant")?;
                Ok(KernelSpec::Constant(x))
            }
            "contract" => {
                self.expect(Tok::LParen, "`(` after `contract`")?;
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)` closing `contract(`")?;
                Ok(e.contract())
            }
            "diag" => {
                self.expect(Tok::LParen, "`(` after `diag`")?;
                self.expect(Tok::LBracket, "`[` opening the coefficient list")?;
                let mut coeffs = vec![self.number("a coefficient")?];
                while self.peek() == Some(&Tok::Comma) {
                    self.bump();
                    coeffs.push(self.number("a coefficient after `,`")?);
                }
                self.expect(Tok::RBracket, "`]` or `,` in the coefficient list")?;
                self.expect(Tok::Semi, "`;` before the tail")?;
                match self.bump() {
                    Some(Tok::Ident(w)) if w == "tail" => {}
                    _ => {
                        self.idx -= 1;
                        return Err(self.err("`tail`"));
                    }
                }
                self.expect(Tok::Equals, "`=` after `tail`")?;
                let tail = self.number("a real tail value")?;
                self.expect(Tok::RParen, "`)` closing `diag(`")?;
                Ok(KernelSpec::diagonal(coeffs, tail))
            }
            other => Err(Error::Parse {
                pos: self.pos(),
                msg: format!(
                    "unknown atom `{other}`; expected szego, szego_poly, da, diag, detball2, const, or contract"
                ),
            }),
        }
    }
}

/// Parse a kernel expression. The returned spec is validated for domain
/// consistency (products must share a domain).
pub fn parse_kernel_dsl(text: &str) -> Result<KernelSpec> {
    let toks = Lexer::tokenize(text)?;
    let mut p = Parser {
        toks,
        idx: 0,
        end: text.len(),
    };
    let e = p.expr()?;
    if p.idx < p.toks.len() {
        return Err(p.err("`*`, `^`, or end of input"));
    }
    e.domain()?; // surfaces domain mismatches at parse time
    Ok(e)
}

fn fmt_real(x: f64) -> String {
    // Shortest representation that round-trips.
    let s = format!("{x}");
    debug_assert_eq!(s.parse::<f64>().unwrap(), x);
    s
}

/// Render a spec back into the DSL. Fails on specs with no DSL form
/// (series atoms).
pub fn pretty_print(spec: &KernelSpec) -> Result<String> {
    // Parenthesize children whose operator binds looser than the parent's.
    fn go(spec: &KernelSpec, out: &mut String) -> Result<()> {
        match spec {
            KernelSpec::SzegoDisc => out.push_str("szego"),
            KernelSpec::SzegoPolydisc(m) => out.push_str(&format!("szego_poly({m})")),
            KernelSpec::DruryArveson(m) => out.push_str(&format!("da({m})")),
            KernelSpec::DetBall2 => out.push_str("detball2"),
            KernelSpec::Constant(x) => out.push_str(&format!("const({})", fmt_real(*x))),
            KernelSpec::Diagonal { coeffs, tail } => {
                let list: Vec<String> = coeffs.iter().map(|&c| fmt_real(c)).collect();
                out.push_str(&format!(
                    "diag([{}]; tail={})",
                    list.join(","),
                    fmt_real(*tail)
                ));
            }
            KernelSpec::Product(a, b) => {
                go(a, out)?;
                out.push_str(" * ");
                go(b, out)?;
            }
            KernelSpec::RealPower(base, t) => {
                let needs_parens = matches!(**base, KernelSpec::Product(..) | KernelSpec::RealPower(..));
                if needs_parens {
                    out.push('(');
                }
                go(base, out)?;
                if needs_parens {
                    out.push(')');
                }
                out.push('^');
                out.push_str(&fmt_real(*t));
            }
            KernelSpec::ContractFactor(inner) => {
                out.push_str("contract(");
                go(inner, out)?;
                out.push(')');
            }
            KernelSpec::Series(..) => {
                return Err(Error::Config(
                    "series atoms have no DSL representation".into(),
                ));
            }
        }
        Ok(())
    }
    let mut s = String::new();
    go(spec, &mut s)?;
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atoms() {
        assert_eq!(parse_kernel_dsl("szego").unwrap(), KernelSpec::SzegoDisc);
        assert_eq!(
            parse_kernel_dsl("szego_poly(3)").unwrap(),
            KernelSpec::SzegoPolydisc(3)
        );
        assert_eq!(parse_kernel_dsl("da(2)").unwrap(), KernelSpec::DruryArveson(2));
        assert_eq!(parse_kernel_dsl("detball2").unwrap(), KernelSpec::DetBall2);
        assert_eq!(
            parse_kernel_dsl("const(2.5)").unwrap(),
            KernelSpec::Constant(2.5)
        );
        assert_eq!(
            parse_kernel_dsl("diag([8,16]; tail=15)").unwrap(),
            KernelSpec::diagonal(vec![8.0, 16.0], 15.0)
        );
    }

    #[test]
    fn operators_and_precedence() {
        // ^ binds tighter than *.
        let e = parse_kernel_dsl("szego * szego^2").unwrap();
        assert_eq!(
            e,
            KernelSpec::product(KernelSpec::SzegoDisc, KernelSpec::SzegoDisc.pow(2.0))
        );
        let e = parse_kernel_dsl("contract(diag([8,16]; tail=15))").unwrap();
        assert_eq!(
            e,
            KernelSpec::diagonal(vec![8.0, 16.0], 15.0).contract()
        );
        let e = parse_kernel_dsl("(szego * szego)^0.5").unwrap();
        assert_eq!(
            e,
            KernelSpec::product(KernelSpec::SzegoDisc, KernelSpec::SzegoDisc).pow(0.5)
        );
    }

    #[test]
    fn negative_and_scientific_literals() {
        assert_eq!(
            parse_kernel_dsl("diag([1,-0.25]; tail=1e-2)").unwrap(),
            KernelSpec::diagonal(vec![1.0, -0.25], 0.01)
        );
        assert_eq!(
            parse_kernel_dsl("szego^-1").unwrap(),
            KernelSpec::SzegoDisc.pow(-1.0)
        );
    }

    #[test]
    fn error_positions() {
        // Malformed tail: error points at the offending token.
        let err = parse_kernel_dsl("contract(diag([1,2]; tail_expr))").unwrap_err();
        match err {
            Error::Parse { pos, msg } => {
                assert_eq!(pos, 21, "{msg}");
                assert!(msg.contains("tail"), "{msg}");
            }
            other => panic!("wrong error: {other}"),
        }

        let err = parse_kernel_dsl("szego * * szego").unwrap_err();
        match err {
            Error::Parse { pos, .. } => assert_eq!(pos, 8),
            other => panic!("wrong error: {other}"),
        }

        let err = parse_kernel_dsl("szego szego").unwrap_err();
        match err {
            Error::Parse { pos, msg } => {
                assert_eq!(pos, 6);
                assert!(msg.contains("end of input") || msg.contains("`*`"), "{msg}");
            }
            other => panic!("wrong error: {other}"),
        }

        let err = parse_kernel_dsl("frobnicate").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }

    #[test]
    fn domain_mismatch_surfaces() {
        let err = parse_kernel_dsl("szego_poly(2) * da(3)").unwrap_err();
        assert!(matches!(err, Error::DomainMismatch(_)), "{err}");
    }

    #[test]
    fn round_trip() {
        for src in [
            "szego",
            "szego_poly(2)",
            "da(3)",
            "detball2",
            "const(4)",
            "diag([8,16]; tail=15)",
            "szego^0.5",
            "szego * szego^2",
            "contract(diag([1,2,2.25]; tail=3.25))",
            "(szego^2)^0.5",
            "contract(szego * diag([1,0.25]; tail=0))",
        ] {
            let spec = parse_kernel_dsl(src).unwrap();
            let printed = pretty_print(&spec).unwrap();
            let reparsed = parse_kernel_dsl(&printed).unwrap();
            assert_eq!(spec, reparsed, "{src} -> {printed}");
        }
    }
}
