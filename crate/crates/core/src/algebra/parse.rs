//! Element expressions.
//!
//! ```text
//! expr := ['+'|'-'] term (('+'|'-') term)*
//! term := [REAL '*'?] atom | REAL
//! atom := '(' expr ',' expr ')' | 'e' UINT | 'i' UINT
//!       | '1' | 'i' | 'j' | 'k' | 't' | 'it' | 'jt' | 'kt'
//! ```
//!
//! A pair `(x, y)` at level `n` parses both halves at level `n - 1`. The
//! octonion names resolve to standard basis indices (`i = e1`, `j = e2`,
//! `k = e3`, `t = e4`, `it = e5`, `jt = e6`, `kt = e7`) and `i<m>` is
//! `i_m = e_{2^(m-1)}`. In a REAL, a lowercase `e` directly followed by a
//! digit starts a basis atom, so `2e3` means `2·e3`; write exponents as
//! `2E3` or `2e+3`.

use crate::algebra::CdElement;
use crate::error::{ParseError, Result};
use crate::scalar::Scalar;

/// Parses `text` as an element of `A_level`.
pub fn parse_element<T: Scalar>(text: &str, level: u32) -> Result<CdElement<T>> {
    let mut parser = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    let x = parser.expr(level)?;
    parser.skip_ws();
    if let Some(c) = parser.peek() {
        return Err(parser.error(format!("unexpected character '{c}'")).into());
    }
    Ok(x)
}

/// Renders `x` in the expression grammar, one `c*e<k>` term per non-zero
/// coefficient. Coefficients use the shortest round-trip decimal, so
/// `parse_element(&to_expression(x), x.level())` reproduces `x` exactly.
pub fn to_expression<T: Scalar>(x: &CdElement<T>) -> String {
    let mut out = String::new();
    for (k, c) in x.coeffs().iter().enumerate() {
        let c = c.as_f64();
        if c == 0.0 {
            continue;
        }
        let sign = if c < 0.0 { '-' } else { '+' };
        if out.is_empty() {
            if sign == '-' {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        out.push_str(&format!("{:E}*e{k}", c.abs()));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

type PResult<X> = std::result::Result<X, ParseError>;

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, offset: usize) -> Option<char> {
        self.chars.get(self.pos + offset).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.pos, message)
    }

    fn expect(&mut self, want: char) -> PResult<()> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected '{want}', found '{c}'"))),
            None => Err(self.error(format!("expected '{want}', found end of input"))),
        }
    }

    fn expr<T: Scalar>(&mut self, level: u32) -> PResult<CdElement<T>> {
        self.skip_ws();
        let mut sign = T::one();
        match self.peek() {
            Some('-') => {
                sign = -sign;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        let mut acc = self.term::<T>(level)?.scale(sign);
        loop {
            self.skip_ws();
            let sign = match self.peek() {
                Some('+') => T::one(),
                Some('-') => -T::one(),
                _ => break,
            };
            self.pos += 1;
            acc += &self.term::<T>(level)?.scale(sign);
        }
        Ok(acc)
    }

    fn term<T: Scalar>(&mut self, level: u32) -> PResult<CdElement<T>> {
        self.skip_ws();
        let starts_number = self
            .peek()
            .is_some_and(|c| c.is_ascii_digit() || c == '.');
        if !starts_number {
            return self.atom(level);
        }
        let coeff: T = self.real()?;
        self.skip_ws();
        let starred = if self.peek() == Some('*') {
            self.pos += 1;
            self.skip_ws();
            true
        } else {
            false
        };
        let atom_follows = self
            .peek()
            .is_some_and(|c| c == '(' || c.is_ascii_alphabetic() || (starred && c == '1'));
        if atom_follows {
            Ok(self.atom::<T>(level)?.scale(coeff))
        } else if starred {
            Err(self.error("expected an atom after '*'"))
        } else {
            Ok(CdElement::real(level, coeff))
        }
    }

    fn digits(&mut self) -> usize {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.pos - start
    }

    fn real<T: Scalar>(&mut self) -> PResult<T> {
        let start = self.pos;
        let mut n = self.digits();
        if self.peek() == Some('.') {
            self.pos += 1;
            n += self.digits();
        }
        if n == 0 {
            return Err(ParseError::new(start, "malformed number"));
        }
        let exponent = match (self.peek(), self.peek_at(1)) {
            (Some('E'), _) => true,
            (Some('e'), Some('+' | '-')) => true,
            _ => false,
        };
        if exponent {
            self.pos += 1;
            if matches!(self.peek(), Some('+' | '-')) {
                self.pos += 1;
            }
            if self.digits() == 0 {
                return Err(self.error("missing exponent digits"));
            }
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        let value: f64 = text
            .parse()
            .map_err(|_| ParseError::new(start, format!("malformed number '{text}'")))?;
        Ok(T::c(value))
    }

    fn atom<T: Scalar>(&mut self, level: u32) -> PResult<CdElement<T>> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some('(') => {
                if level == 0 {
                    return Err(self.error("pair syntax needs level at least 1"));
                }
                self.pos += 1;
                let lo = self.expr::<T>(level - 1)?;
                self.expect(',')?;
                let hi = self.expr::<T>(level - 1)?;
                self.expect(')')?;
                Ok(CdElement::join(&lo, &hi).expect("halves parsed at equal level"))
            }
            Some('1') => {
                self.pos += 1;
                Ok(CdElement::one(level))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                while self.peek().is_some_and(|c| c.is_ascii_alphanumeric()) {
                    self.pos += 1;
                }
                let ident: String = self.chars[start..self.pos].iter().collect();
                let (index, min_level) = resolve_name(&ident)
                    .ok_or_else(|| ParseError::new(start, format!("unknown name '{ident}'")))?;
                if min_level > level {
                    return Err(ParseError::new(
                        start,
                        format!("'{ident}' requires level at least {min_level}, parsing at level {level}"),
                    ));
                }
                Ok(CdElement::basis(level, index).expect("index checked against level"))
            }
            Some(c) => Err(self.error(format!("unexpected character '{c}'"))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// Maps a name to `(basis index, minimum level)`.
fn resolve_name(ident: &str) -> Option<(usize, u32)> {
    let fixed = match ident {
        "i" => Some((1, 1)),
        "j" => Some((2, 2)),
        "k" => Some((3, 2)),
        "t" => Some((4, 3)),
        "it" => Some((5, 3)),
        "jt" => Some((6, 3)),
        "kt" => Some((7, 3)),
        _ => None,
    };
    if fixed.is_some() {
        return fixed;
    }
    let (head, digits) = ident.split_at(1);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let value: usize = digits.parse().ok()?;
    match head {
        "e" => {
            let min_level = if value == 0 {
                0
            } else {
                usize::BITS - value.leading_zeros()
            };
            Some((value, min_level))
        }
        "i" if (1..usize::BITS as usize).contains(&value) => {
            Some((1usize << (value - 1), value as u32))
        }
        _ => None,
    }
}
