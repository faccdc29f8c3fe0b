//! Surface syntax for pp-formulas.
//!
//! ```text
//! formula := [("E" | "exists") ident+ ["."]] conj
//! conj    := atom ("&" atom)*
//! atom    := "(" conj ")" | int "|" term | term "=" term
//! term    := ["-"] mono (("+" | "-") mono)*
//! mono    := int ["*"] var | int | var
//! ```
//!
//! Free variables are `v1, v2, ...`; `x` abbreviates `v1`. Bound variable
//! names are whatever the prefix declares. `n | t` introduces a fresh bound
//! variable `w` with `t - n*w = 0`.

use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::PpFormula;
use crate::error::{Error, Result};
use crate::matrix::Int;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(Int),
    Ident(String),
    Sym(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            out.push((pos, Tok::Int(s.parse().expect("digits"))));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            out.push((
                pos,
                Tok::Ident(chars[start..i].iter().map(|&(_, c)| c).collect()),
            ));
        } else if "()*+-=&|.".contains(c) {
            out.push((pos, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::syntax(
                pos,
                alloc::format!("unexpected character `{c}`"),
            ));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    bound_names: Vec<String>,
    /// Rows over (free vars, declared bound vars, desugared bound vars);
    /// columns are assigned lazily.
    rows: Vec<Vec<(Var, Int)>>,
    fresh: usize,
    max_free: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Var {
    Free(usize),
    Bound(usize),
    Fresh(usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::syntax(self.offset(), msg))
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.error(alloc::format!("expected `{c}`"))
        }
    }

    fn formula(&mut self) -> Result<()> {
        if let Some(Tok::Ident(k)) = self.peek() {
            if k == "E" || k == "exists" {
                self.pos += 1;
                while let Some(Tok::Ident(name)) = self.peek() {
                    let name = name.clone();
                    if self.bound_names.contains(&name) {
                        return self
                            .error(alloc::format!("bound variable `{name}` declared twice"));
                    }
                    self.bound_names.push(name);
                    self.pos += 1;
                }
                if self.bound_names.is_empty() {
                    return self.error("expected bound variable names after the quantifier");
                }
                self.eat('.');
            }
        }
        self.conj()?;
        if self.pos < self.toks.len() {
            return self.error("unexpected trailing input");
        }
        Ok(())
    }

    fn conj(&mut self) -> Result<()> {
        self.atom()?;
        while self.eat('&') {
            self.atom()?;
        }
        Ok(())
    }

    fn atom(&mut self) -> Result<()> {
        if self.eat('(') {
            self.conj()?;
            return self.expect(')');
        }
        if let (Some(Tok::Int(n)), Some((_, Tok::Sym('|')))) =
            (self.peek().cloned(), self.toks.get(self.pos + 1))
        {
            self.pos += 2;
            if !n.is_positive() {
                return self.error("divisor must be positive");
            }
            let start = self.offset();
            let (mut row, constant) = self.term()?;
            if !constant.is_zero() {
                return Err(Error::syntax(
                    start,
                    "constant terms other than 0 are not allowed",
                ));
            }
            row.push((Var::Fresh(self.fresh), -n));
            self.fresh += 1;
            self.rows.push(row);
            return Ok(());
        }
        let start = self.offset();
        let (mut lhs, c1) = self.term()?;
        self.expect('=')?;
        let (rhs, c2) = self.term()?;
        if c1 != c2 {
            return Err(Error::syntax(
                start,
                "constant terms other than 0 are not allowed",
            ));
        }
        lhs.extend(rhs.into_iter().map(|(v, c)| (v, -c)));
        self.rows.push(lhs);
        Ok(())
    }

    fn term(&mut self) -> Result<(Vec<(Var, Int)>, Int)> {
        let mut out = Vec::new();
        let mut constant = Int::zero();
        let mut sign = if self.eat('-') {
            -1
        } else {
            self.eat('+');
            1
        };
        loop {
            let (var, coeff) = self.mono()?;
            let coeff = coeff * sign;
            match var {
                Some(v) => out.push((v, coeff)),
                None => constant += coeff,
            }
            if self.eat('+') {
                sign = 1;
            } else if self.eat('-') {
                sign = -1;
            } else {
                break;
            }
        }
        Ok((out, constant))
    }

    fn mono(&mut self) -> Result<(Option<Var>, Int)> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let star = self.eat('*');
                match self.peek().cloned() {
                    Some(Tok::Ident(name)) => {
                        self.pos += 1;
                        Ok((Some(self.var(&name)?), n))
                    }
                    _ if star => self.error("expected a variable after `*`"),
                    _ => Ok((None, n)),
                }
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok((Some(self.var(&name)?), Int::from(1)))
            }
            _ => self.error("expected a term"),
        }
    }

    fn var(&mut self, name: &str) -> Result<Var> {
        if let Some(k) = self.bound_names.iter().position(|b| b == name) {
            return Ok(Var::Bound(k));
        }
        if name == "x" {
            self.max_free = self.max_free.max(1);
            return Ok(Var::Free(0));
        }
        if let Some(idx) = name.strip_prefix('v').and_then(|d| d.parse::<usize>().ok()) {
            if idx >= 1 {
                self.max_free = self.max_free.max(idx);
                return Ok(Var::Free(idx - 1));
            }
        }
        Err(Error::Arity(alloc::format!("unknown variable `{name}`")))
    }
}

fn run(text: &str) -> Result<Parser> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        end: text.len(),
        bound_names: Vec::new(),
        rows: Vec::new(),
        fresh: 0,
        max_free: 0,
    };
    if p.toks.is_empty() {
        return p.error("empty formula");
    }
    p.formula()?;
    Ok(p)
}

fn assemble(p: Parser, free: usize) -> Result<PpFormula> {
    if p.max_free > free {
        return Err(Error::Arity(alloc::format!(
            "variable v{} exceeds arity {free}",
            p.max_free
        )));
    }
    let declared = p.bound_names.len();
    let width = free + declared + p.fresh;
    let rows = p
        .rows
        .into_iter()
        .map(|entries| {
            let mut row = alloc::vec![Int::zero(); width];
            for (v, c) in entries {
                let col = match v {
                    Var::Free(i) => i,
                    Var::Bound(k) => free + k,
                    Var::Fresh(k) => free + declared + k,
                };
                row[col] += c;
            }
            row
        })
        .collect();
    PpFormula::new(free, declared + p.fresh, rows)
}

/// Parses a formula; the number of free variables is the largest `v` index
/// used (at least one).
pub fn parse_pp(text: &str) -> Result<PpFormula> {
    let p = run(text)?;
    let free = p.max_free.max(1);
    assemble(p, free)
}

/// Parses a formula with a fixed number of free variables.
pub fn parse_pp_with_arity(text: &str, free: usize) -> Result<PpFormula> {
    assemble(run(text)?, free)
}

/// Largest free-variable index mentioned in `text` (at least one).
pub(crate) fn inferred_arity(text: &str) -> Result<usize> {
    Ok(run(text)?.max_free.max(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn i(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn existential_prefix() {
        let f = parse_pp("E w (v1 - 2*w = 0)").unwrap();
        assert_eq!((f.free_vars(), f.bound_vars()), (1, 1));
        assert_eq!(f.rows(), &[i(&[1, -2])]);
    }

    #[test]
    fn plain_equation() {
        let f = parse_pp("3*v1 = 0").unwrap();
        assert_eq!((f.free_vars(), f.bound_vars()), (1, 0));
        assert_eq!(f.rows(), &[i(&[3])]);
        assert_eq!(parse_pp("3x = 0").unwrap(), f);
    }

    #[test]
    fn divisibility_sugar_and_conjunction() {
        let f = parse_pp("2 | v1 & 2*v1 = 0").unwrap();
        assert_eq!((f.free_vars(), f.bound_vars()), (1, 1));
        assert_eq!(f.rows(), &[i(&[1, -2]), i(&[2, 0])]);
    }

    #[test]
    fn x_equals_x_is_truth() {
        assert!(parse_pp("x = x").unwrap().is_truth());
        assert!(parse_pp("0 = 0").unwrap().is_truth());
    }

    #[test]
    fn renamed_bound_variables() {
        let a = parse_pp("E a b . v1 - 2*a = 0 & v2 - 3*b = 0").unwrap();
        let b = parse_pp("exists p q (v2 - 3*q = 0 & v1 - 2*p = 0)").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_pp("v1 = "), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_pp("v1 + # = 0"),
            Err(Error::Syntax { position: 5, .. })
        ));
        assert!(matches!(parse_pp("y = 0"), Err(Error::Arity(_))));
        assert!(matches!(parse_pp("v1 = 1"), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_pp_with_arity("v3 = 0", 2),
            Err(Error::Arity(_))
        ));
    }

    #[test]
    fn printer_fixpoint() {
        for s in [
            "E w (v1 - 2*w = 0)",
            "2 | v1 & 2*v1 = 0",
            "v1 = v2 & 4 | v1 - v2",
            "0 = 0",
            "-v1 + 6*v2 = 0",
        ] {
            let f = parse_pp(s).unwrap();
            let printed = f.to_string();
            let g = parse_pp_with_arity(&printed, f.free_vars()).unwrap();
            assert_eq!(g, f, "{s} -> {printed}");
            assert_eq!(g.to_string(), printed);
        }
    }
}
