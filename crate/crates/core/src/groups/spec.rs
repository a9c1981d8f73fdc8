//! Parser for group spec strings.
//!
//! ```text
//! spec := "1" | term ( "x" term )*
//! term := "Z" | "Z" INT mult? | "U" PRIME
//! mult := "*" ( INT | "inf" )
//! ```
//!
//! `INT ≥ 2`; whitespace is ignored everywhere.

use super::arith::{checked_pow, is_prime};
use super::descriptor::{GroupDescriptor, Multiplicity};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("group spec error at position {position}: {message}")]
pub struct SpecError {
    /// Byte offset into the original text.
    pub position: usize,
    pub message: String,
}

struct Cursor<'a> {
    toks: Vec<(usize, char)>,
    at: usize,
    text: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            toks: text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(),
            at: 0,
            text,
        }
    }

    fn peek(&self) -> Option<char> {
        self.toks.get(self.at).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|&(i, _)| i).unwrap_or(self.text.len())
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, SpecError> {
        Err(SpecError {
            position: self.pos(),
            message: message.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<Option<u64>, SpecError> {
        let start = self.pos();
        let mut digits = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            digits.push(c);
            self.at += 1;
        }
        if digits.is_empty() {
            return Ok(None);
        }
        digits.parse::<u64>().map(Some).map_err(|_| SpecError {
            position: start,
            message: format!("integer {digits} out of range"),
        })
    }

    fn int_at_least_2(&mut self, what: &str) -> Result<Option<u64>, SpecError> {
        let start = self.pos();
        match self.int()? {
            Some(n) if n < 2 => Err(SpecError {
                position: start,
                message: format!("{what} must be at least 2, got {n}"),
            }),
            other => Ok(other),
        }
    }
}

/// Parses a group spec into a normalized descriptor (composite orders
/// CRT-split into prime powers, factors sorted).
pub fn parse_group_spec(text: &str) -> Result<GroupDescriptor, SpecError> {
    let mut cur = Cursor::new(text);
    let mut d = GroupDescriptor::trivial();

    if cur.peek().is_none() {
        return cur.err("empty spec (use \"1\" for the trivial group)");
    }
    if cur.peek() == Some('1') && cur.toks.len() == 1 {
        return Ok(d);
    }

    loop {
        match cur.peek() {
            Some('Z') => {
                cur.at += 1;
                match cur.int_at_least_2("cyclic order")? {
                    None => {
                        if cur.peek() == Some('*') {
                            return cur.err("multiplicity is not allowed on Z");
                        }
                        d.free_rank += 1;
                    }
                    Some(n) => {
                        let mult = if cur.eat('*') {
                            if cur.peek() == Some('i') {
                                for c in "inf".chars() {
                                    if !cur.eat(c) {
                                        return cur.err("expected \"inf\"");
                                    }
                                }
                                Multiplicity::Infinite
                            } else {
                                match cur.int_at_least_2("multiplicity")? {
                                    Some(m) => Multiplicity::Finite(m),
                                    None => return cur.err("expected multiplicity"),
                                }
                            }
                        } else {
                            Multiplicity::Finite(1)
                        };
                        d.push_cyclic(n, mult);
                    }
                }
            }
            Some('U') => {
                cur.at += 1;
                let start = cur.pos();
                match cur.int()? {
                    Some(p) if is_prime(p) => d.push_unbounded(p),
                    Some(p) => {
                        return Err(SpecError {
                            position: start,
                            message: format!("U expects a prime, got {p}"),
                        })
                    }
                    None => return cur.err("U expects a prime"),
                }
            }
            Some(c) => return cur.err(format!("unexpected {c:?}, expected Z or U")),
            None => return cur.err("expected a term"),
        }
        if cur.peek().is_none() {
            break;
        }
        if !cur.eat('x') {
            return cur.err(format!("unexpected {:?}, expected x", cur.peek().unwrap()));
        }
    }

    d.normalize();
    check_exponent_fits(&d).map_err(|message| SpecError {
        position: 0,
        message,
    })?;
    Ok(d)
}

fn check_exponent_fits(d: &GroupDescriptor) -> Result<(), String> {
    let mut e: u64 = 1;
    for (&p, part) in &d.primary_parts {
        for &(a, _) in &part.factors {
            let q = checked_pow(p, a).ok_or("prime power exceeds 64 bits")?;
            if Some(a) == part.max_exponent() {
                e = e.checked_mul(q).ok_or("group exponent exceeds 64 bits")?;
            }
        }
    }
    Ok(())
}
