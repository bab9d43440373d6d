//! Textual element syntax.
//!
//! Elements print as sums of `coefficient` + `basis symbol` terms, lowest
//! basis element first: `1 + 2x^2`, `x1*x2`, `e0 + e2`, `E11 + E22`,
//! `1/2x^-3 - x`. The parser accepts the printed form plus general
//! polynomial expressions in the ring's symbols: integer or rational
//! coefficients, `*`, `^` with (possibly negative) exponents, `+`, `-` and
//! parentheses.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::laurent::{self, LaurentPoly};
use super::{Payload, Ring, RingKind};
use crate::error::{AlgebraError, Result};

pub(crate) fn format_poly(coeffs: &[u64]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0)
        .map(|(i, &c)| term(c, &power_name("x", i as i64)))
        .collect();
    join(terms)
}

fn power_name(sym: &str, e: i64) -> String {
    match e {
        0 => String::new(),
        1 => sym.to_string(),
        _ => format!("{sym}^{e}"),
    }
}

fn term(c: u64, basis: &str) -> String {
    match (c, basis.is_empty()) {
        (_, true) => c.to_string(),
        (1, false) => basis.to_string(),
        _ => format!("{c}{basis}"),
    }
}

fn join(terms: Vec<String>) -> String {
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

fn basis_name(ring: &Ring, i: usize) -> String {
    let kind = match &ring.kind {
        RingKind::IdealQuotient { parent, .. } => &parent.kind,
        k => k,
    };
    match kind {
        RingKind::Modular { .. } => String::new(),
        RingKind::PolyQuotient { .. } | RingKind::FiniteField { .. } => power_name("x", i as i64),
        RingKind::Truncated { .. } => ring.monomials[i]
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(v, &e)| power_name(&format!("x{}", v + 1), e as i64))
            .collect::<Vec<_>>()
            .join("*"),
        RingKind::Functions { .. } => format!("e{i}"),
        RingKind::Matrix { n, .. } => format!("E{}{}", i / n + 1, i % n + 1),
        RingKind::LaurentRational | RingKind::IdealQuotient { .. } => unreachable!(),
    }
}

pub(crate) fn format(ring: &Ring, a: &Payload) -> String {
    match a {
        Payload::Coeffs(c) => join(
            c.iter()
                .enumerate()
                .filter(|(_, c)| **c != 0)
                .map(|(i, &c)| term(c, &basis_name(ring, i)))
                .collect(),
        ),
        Payload::Laurent(p) => format_laurent(p),
    }
}

fn format_laurent(p: &LaurentPoly) -> String {
    if p.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (e, c)) in p.iter().enumerate() {
        let neg = c.is_negative();
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mag = laurent::format_rational_abs(c);
        let sym = power_name("x", *e);
        if sym.is_empty() {
            out.push_str(&mag);
        } else {
            if mag != "1" {
                out.push_str(&mag);
            }
            out.push_str(&sym);
        }
    }
    out
}

struct Parser<'a> {
    ring: &'a Arc<Ring>,
    input: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

pub(crate) fn parse(ring: &Arc<Ring>, input: &str) -> Result<Payload> {
    let mut p = Parser { ring, input, bytes: input.as_bytes(), pos: 0 };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(v)
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> AlgebraError {
        AlgebraError::parse(self.input, self.pos, msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Payload> {
        let r = self.ring;
        let mut acc = r.zero_p();
        let mut first = true;
        loop {
            let negate = match self.peek() {
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                Some(b'+') if !first => {
                    self.pos += 1;
                    false
                }
                _ if first => false,
                _ => break,
            };
            let t = self.term()?;
            acc = if negate { r.sub_p(&acc, &t) } else { r.add_p(&acc, &t) };
            first = false;
            if !matches!(self.peek(), Some(b'+') | Some(b'-')) {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Payload> {
        let r = self.ring;
        let mut acc = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let coeff = self.coefficient()?;
                // an implicit product follows a coefficient directly: `2x`
                match self.peek() {
                    Some(c) if c.is_ascii_alphabetic() || c == b'(' => {
                        let f = self.factor()?;
                        r.mul_p(&coeff, &f)
                    }
                    _ => coeff,
                }
            }
            _ => self.factor()?,
        };
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = match self.peek() {
                Some(c) if c.is_ascii_digit() => self.coefficient()?,
                _ => self.factor()?,
            };
            acc = r.mul_p(&acc, &f);
        }
        Ok(acc)
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        self.input[start..self.pos].parse::<BigInt>().map_err(|_| self.error("bad integer"))
    }

    fn coefficient(&mut self) -> Result<Payload> {
        let num = self.digits()?;
        if self.bytes.get(self.pos) == Some(&b'/') {
            self.pos += 1;
            let den = self.digits()?;
            if den.is_zero() {
                return Err(self.error("division by zero"));
            }
            return match self.ring.kind {
                RingKind::LaurentRational => {
                    Ok(Payload::Laurent(laurent::constant(BigRational::new(num, den))))
                }
                _ if den.is_one() => Ok(self.ring.from_bigint_p(&num)),
                _ => Err(self.error("rational coefficients need a characteristic-zero ring")),
            };
        }
        Ok(self.ring.from_bigint_p(&num))
    }

    fn exponent(&mut self) -> Result<i64> {
        self.skip_ws();
        let close = match self.bytes.get(self.pos) {
            Some(b'{') => Some(b'}'),
            Some(b'(') => Some(b')'),
            _ => None,
        };
        if close.is_some() {
            self.pos += 1;
        }
        self.skip_ws();
        let neg = if self.bytes.get(self.pos) == Some(&b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let d = self.digits()?;
        let d = if neg { -d } else { d };
        if let Some(c) = close {
            if self.peek() != Some(c) {
                return Err(self.error("unclosed exponent"));
            }
            self.pos += 1;
        }
        d.to_i64().ok_or_else(|| self.error("exponent out of range"))
    }

    fn factor(&mut self) -> Result<Payload> {
        let base = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                BaseFactor::Value(inner)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.bytes.len()
                    && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                BaseFactor::Symbol(start, self.input[start..self.pos].to_string())
            }
            _ => return Err(self.error("expected a coefficient, symbol or `(`")),
        };
        let exp = if self.peek() == Some(b'^') {
            self.pos += 1;
            self.exponent()?
        } else {
            1
        };
        match base {
            BaseFactor::Symbol(start, name) => {
                symbol_power(self.ring, &name, exp).map_err(|m| AlgebraError::parse(self.input, start, m))
            }
            BaseFactor::Value(v) => {
                if exp >= 0 {
                    Ok(self.ring.pow_p(&v, exp as u64))
                } else if let Payload::Laurent(p) = &v {
                    let inv = laurent::inverse(p).ok_or_else(|| self.error("negative power of a non-unit"))?;
                    Ok(self.ring.pow_p(&Payload::Laurent(inv), exp.unsigned_abs()))
                } else {
                    Err(self.error("negative powers are only supported in the Laurent ring"))
                }
            }
        }
    }
}

enum BaseFactor {
    Symbol(usize, String),
    Value(Payload),
}

fn symbol_power(ring: &Arc<Ring>, name: &str, exp: i64) -> std::result::Result<Payload, String> {
    let kind = match &ring.kind {
        RingKind::IdealQuotient { parent, .. } => &parent.kind,
        k => k,
    };
    let unit_vec = |i: usize| {
        let mut v = vec![0u64; ring.dim];
        v[i] = 1;
        Payload::Coeffs(ring.canon(v))
    };
    let nonneg = |e: i64| {
        if e < 0 {
            Err(format!("negative exponent on `{name}` outside the Laurent ring"))
        } else {
            Ok(e as u64)
        }
    };
    match kind {
        RingKind::LaurentRational if name == "x" => Ok(Payload::Laurent(laurent::monomial(BigRational::one(), exp))),
        RingKind::PolyQuotient { .. } | RingKind::FiniteField { .. } if name == "x" => {
            let e = nonneg(exp)?;
            let x = if ring.dim == 1 {
                // x is congruent to a constant modulo a linear modulus
                let mut v = vec![0u64; 1];
                let m = match kind {
                    RingKind::PolyQuotient { modulus, .. } | RingKind::FiniteField { modulus, .. } => modulus,
                    _ => unreachable!(),
                };
                v[0] = (ring.q - m[0]) % ring.q;
                Payload::Coeffs(ring.canon(v))
            } else {
                unit_vec(1)
            };
            Ok(ring.pow_p(&x, e))
        }
        RingKind::Truncated { vars, .. } => {
            let v = name
                .strip_prefix('x')
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|v| (1..=*vars).contains(v))
                .ok_or_else(|| format!("unknown symbol `{name}`; expected x1..x{vars}"))?;
            let e = nonneg(exp)?;
            let mut mono = vec![0u32; *vars];
            mono[v - 1] = 1;
            let idx = ring.monomials.iter().position(|m| *m == mono);
            let base = match idx {
                Some(i) => unit_vec(i),
                None => ring.zero_p(),
            };
            Ok(ring.pow_p(&base, e))
        }
        RingKind::Functions { points, .. } => {
            let i = name
                .strip_prefix('e')
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|i| i < points)
                .ok_or_else(|| format!("unknown symbol `{name}`; expected e0..e{}", points - 1))?;
            Ok(ring.pow_p(&unit_vec(i), nonneg(exp)?))
        }
        RingKind::Matrix { n, .. } => {
            let digits = name.strip_prefix('E').filter(|s| s.len() == 2 && s.bytes().all(|b| b.is_ascii_digit()));
            let (i, j) = match digits {
                Some(s) => ((s.as_bytes()[0] - b'0') as usize, (s.as_bytes()[1] - b'0') as usize),
                None => return Err(format!("unknown symbol `{name}`; expected Eij")),
            };
            if i == 0 || j == 0 || i > *n || j > *n {
                return Err(format!("matrix unit `{name}` out of range"));
            }
            Ok(ring.pow_p(&unit_vec((i - 1) * n + (j - 1)), nonneg(exp)?))
        }
        _ => Err(format!("unknown symbol `{name}` in {}", ring.describe())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn printing_forms() {
        let a = Ring::truncated_polynomial(3, 3).unwrap();
        assert_eq!(a.parse("2*x^2 + 1").unwrap().to_string(), "1 + 2x^2");
        assert_eq!(a.parse("x^5").unwrap().to_string(), "0");
        assert_eq!(a.parse("-x").unwrap().to_string(), "2x");
        assert_eq!(a.parse("(1 + x)^2").unwrap().to_string(), "1 + 2x + x^2");
        let l = Ring::laurent_rational();
        assert_eq!(l.parse("x^{-2} - 1/2*x + 3").unwrap().to_string(), "x^-2 + 3 - 1/2x");
        assert_eq!(l.parse("-x").unwrap().to_string(), "-x");
        assert_eq!(l.parse("(2x)^-1").unwrap().to_string(), "1/2x^-1");
        let f = Ring::functions(2, 3).unwrap();
        assert_eq!(f.one().to_string(), "e0 + e1 + e2");
        let z = Ring::modular(6).unwrap();
        assert_eq!(z.parse("-1").unwrap().to_string(), "5");
    }

    #[test]
    fn parse_errors_carry_position() {
        let a = Ring::truncated_polynomial(3, 3).unwrap();
        match a.parse("1 + y") {
            Err(AlgebraError::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(a.parse("x^-1").is_err());
        assert!(a.parse("1/2").is_err());
        assert!(a.parse("1 +").is_err());
        assert!(a.parse("x)").is_err());
    }

    proptest! {
        #[test]
        fn laurent_text_round_trips(terms in proptest::collection::btree_map(-6i64..6, (-9i64..9, 1i64..5), 0..5)) {
            let l = Ring::laurent_rational();
            let mut acc = l.zero();
            for (e, (n, d)) in terms {
                acc = acc.add(&l.laurent_monomial(BigRational::new(n.into(), d.into()), e).unwrap()).unwrap();
            }
            prop_assert_eq!(l.parse(&acc.to_string()).unwrap(), acc);
        }

        #[test]
        fn finite_text_round_trips(idx in 0usize..27) {
            for ring in [Ring::truncated_polynomial(3, 3).unwrap(), Ring::truncated_multivariate(3, 2, 2).unwrap()] {
                let e = ring.elements().unwrap()[idx].clone();
                prop_assert_eq!(ring.parse(&e.to_string()).unwrap(), e);
            }
        }
    }
}
