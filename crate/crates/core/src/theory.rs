//! Theories given as conjunctions of clauses, each clause a disjunction of
//! invariant conditions `Inv(-, phi, psi) >= k` or `Inv(-, phi, psi) < k`.
//!
//! Text format, one item per line:
//!
//! ```text
//! # comment
//! builtin: torsion-free
//! clause: Inv(x = x ; 3x = 0) < 6 | Inv(2 | x ; 4 | x) >= 2
//! ```
//!
//! `Inv(-, phi, psi)` is accepted as an alternative spelling, as are the
//! relations `>` and `<=`, which are rewritten to `>=` and `<`.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::eval::pp_entails;
use crate::matrix::Int;
use crate::pp::{inferred_arity, parse_pp_with_arity, PpFormula};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    Geq,
    Lt,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InvariantLiteral {
    pub phi: PpFormula,
    pub psi: PpFormula,
    pub relation: Relation,
    pub k: Int,
    /// Whether `psi -> phi` holds in every abelian group. When false the
    /// index is only meaningful in groups where containment happens to hold,
    /// and evaluation checks it per group.
    pub entailed: bool,
}

impl InvariantLiteral {
    pub fn new(phi: PpFormula, psi: PpFormula, relation: Relation, k: Int) -> Result<Self> {
        if phi.free_vars() != psi.free_vars() {
            return Err(Error::Arity(alloc::format!(
                "invariant pair has {} and {} free variables",
                phi.free_vars(),
                psi.free_vars()
            )));
        }
        if !k.is_positive() {
            return Err(Error::syntax(0, "invariant bound must be positive"));
        }
        let entailed = pp_entails(&psi, &phi);
        Ok(InvariantLiteral {
            phi,
            psi,
            relation,
            k,
            entailed,
        })
    }
}

impl fmt::Display for InvariantLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = match self.relation {
            Relation::Geq => ">=",
            Relation::Lt => "<",
        };
        write!(f, "Inv({} ; {}) {rel} {}", self.phi, self.psi, self.k)
    }
}

/// Axiom schemas that are not expressible by finitely many clauses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Builtin {
    TorsionFree,
}

impl Builtin {
    pub fn name(self) -> &'static str {
        match self {
            Builtin::TorsionFree => "torsion-free",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Theory {
    pub clauses: Vec<Vec<InvariantLiteral>>,
    pub builtins: BTreeSet<Builtin>,
}

impl Theory {
    /// The theory of all abelian groups.
    pub fn empty() -> Self {
        Theory::default()
    }

    /// Hex SHA-256 of the canonical text.
    pub fn digest(&self) -> String {
        let text = alloc::format!("{self}");
        Sha256::digest(text.as_bytes())
            .iter()
            .map(|b| alloc::format!("{b:02x}"))
            .collect()
    }
}

impl fmt::Display for Theory {
    /// Canonical text: builtins first, then clauses in input order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.builtins {
            writeln!(f, "builtin: {}", b.name())?;
        }
        for clause in &self.clauses {
            f.write_str("clause: ")?;
            for (i, lit) in clause.iter().enumerate() {
                if i > 0 {
                    f.write_str(" | ")?;
                }
                write!(f, "{lit}")?;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}

/// Splits at `sep` occurring outside parentheses, keeping byte offsets.
fn split_top(s: &str, sep: char) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ if c == sep && depth == 0 => {
                out.push((start, &s[start..i]));
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push((start, &s[start..]));
    out
}

/// Re-bases the position of a syntax error by `offset`.
fn shift(e: Error, offset: usize) -> Error {
    match e {
        Error::Syntax { position, message } => Error::Syntax {
            position: position + offset,
            message,
        },
        other => other,
    }
}

fn parse_literal(text: &str, base: usize) -> Result<InvariantLiteral> {
    let lead = text.len() - text.trim_start().len();
    let t = text.trim();
    let at = base + lead;
    let rest = t
        .strip_prefix("Inv")
        .ok_or_else(|| Error::syntax(at, "expected `Inv(`"))?;
    let rest_trim = rest.trim_start();
    let open = at + 3 + (rest.len() - rest_trim.len());
    if !rest_trim.starts_with('(') {
        return Err(Error::syntax(open, "expected `(` after Inv"));
    }
    // matching close parenthesis
    let mut depth = 0;
    let mut close = None;
    for (i, c) in rest_trim.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    close = Some(i);
                    break;
                }
            }
            _ => {}
        }
    }
    let close = close.ok_or_else(|| Error::syntax(open, "unbalanced parentheses"))?;
    let inner = &rest_trim[1..close];
    let inner_base = open + 1;
    let parts = if inner.contains(';') {
        split_top(inner, ';')
    } else {
        split_top(inner, ',')
    };
    let (phi_part, psi_part) = match parts.as_slice() {
        [a, b] => (*a, *b),
        [dash, a, b] if dash.1.trim() == "-" => (*a, *b),
        _ => {
            return Err(Error::syntax(
                inner_base,
                "expected `phi ; psi` or `-, phi, psi` inside Inv(...)",
            ))
        }
    };
    let free = inferred_arity(phi_part.1)
        .map_err(|e| shift(e, inner_base + phi_part.0))?
        .max(inferred_arity(psi_part.1).map_err(|e| shift(e, inner_base + psi_part.0))?);
    let phi =
        parse_pp_with_arity(phi_part.1, free).map_err(|e| shift(e, inner_base + phi_part.0))?;
    let psi =
        parse_pp_with_arity(psi_part.1, free).map_err(|e| shift(e, inner_base + psi_part.0))?;

    let tail = &rest_trim[close + 1..];
    let tail_base = open + close + 1;
    let tail_trim = tail.trim_start();
    let rel_at = tail_base + (tail.len() - tail_trim.len());
    let (relation, bump, number) = if let Some(r) = tail_trim.strip_prefix(">=") {
        (Relation::Geq, false, r)
    } else if let Some(r) = tail_trim.strip_prefix("<=") {
        (Relation::Lt, true, r)
    } else if let Some(r) = tail_trim.strip_prefix('>') {
        (Relation::Geq, true, r)
    } else if let Some(r) = tail_trim.strip_prefix('<') {
        (Relation::Lt, false, r)
    } else {
        return Err(Error::syntax(rel_at, "expected one of >=, >, <, <="));
    };
    let mut k: Int = number.trim().parse().map_err(|_| {
        Error::syntax(
            rel_at,
            alloc::format!(
                "expected a non-negative integer bound, found `{}`",
                number.trim()
            ),
        )
    })?;
    if bump {
        k += Int::one();
    }
    if !k.is_positive() {
        return Err(Error::syntax(rel_at, "invariant bound must be positive"));
    }
    InvariantLiteral::new(phi, psi, relation, k)
}

/// Parses a theory document.
pub fn parse_theory(doc: &str) -> Result<Theory> {
    let mut theory = Theory::empty();
    let mut offset = 0;
    for (lineno, raw) in doc.split('\n').enumerate() {
        let base = offset;
        offset += raw.len() + 1;
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        if line.trim().is_empty() {
            continue;
        }
        let lead = line.len() - line.trim_start().len();
        let body = line.trim_start();
        if let Some(rest) = body.strip_prefix("builtin:") {
            match rest.trim() {
                "torsion-free" => {
                    theory.builtins.insert(Builtin::TorsionFree);
                }
                other => {
                    return Err(Error::syntax(
                        base + lead,
                        alloc::format!("unknown builtin `{other}`"),
                    ));
                }
            }
        } else if let Some(rest) = body.strip_prefix("clause:") {
            let rest_base = base + lead + "clause:".len();
            if rest.trim().is_empty() {
                return Err(Error::EmptyClause { line: lineno + 1 });
            }
            let clause = split_top(rest, '|')
                .into_iter()
                .map(|(at, lit)| parse_literal(lit, rest_base + at))
                .collect::<Result<Vec<_>>>()?;
            theory.clauses.push(clause);
        } else {
            return Err(Error::syntax(
                base + lead,
                "expected `clause:` or `builtin:`",
            ));
        }
    }
    Ok(theory)
}
