//! Elements of `A ⋊σα G` as finite formal sums `Σ a_g ḡ`.
//!
//! Text syntax: terms `coeff*[g]` joined by `+` or `-`. A coefficient with
//! more than one term is parenthesised, e.g. `(1 + x)*[1] - x^2*[0]`; a bare
//! `[g]` means `1*[g]` and `0` is the zero element.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::group::{GPayload, GroupElem};
use crate::limits;
use crate::ring::{Payload, RingElem};
use crate::system::CrossedSystem;

#[derive(Clone)]
pub struct CrossedElem {
    sys: Arc<CrossedSystem>,
    terms: BTreeMap<GPayload, Payload>,
}

impl CrossedElem {
    pub(crate) fn from_raw(sys: &Arc<CrossedSystem>, terms: BTreeMap<GPayload, Payload>) -> Self {
        let ring = sys.ring();
        let terms = terms.into_iter().filter(|(_, a)| !ring.is_zero_p(a)).collect();
        CrossedElem { sys: sys.clone(), terms }
    }

    pub fn zero(sys: &Arc<CrossedSystem>) -> Self {
        CrossedElem { sys: sys.clone(), terms: BTreeMap::new() }
    }

    /// `1ē`.
    pub fn one(sys: &Arc<CrossedSystem>) -> Self {
        Self::embed(&sys.ring().one(), sys).expect("own ring")
    }

    /// `ι(a) = aē`.
    pub fn embed(a: &RingElem, sys: &Arc<CrossedSystem>) -> Result<Self> {
        Self::monomial(sys, a, &sys.group().identity())
    }

    /// `a ḡ`.
    pub fn monomial(sys: &Arc<CrossedSystem>, a: &RingElem, g: &GroupElem) -> Result<Self> {
        sys.ring().owns(a)?;
        sys.group().owns(g)?;
        Ok(Self::from_raw(sys, BTreeMap::from([(g.payload().clone(), a.payload().clone())])))
    }

    /// `Σ a_i g_i`; repeated degrees are summed.
    pub fn from_terms(sys: &Arc<CrossedSystem>, terms: &[(RingElem, GroupElem)]) -> Result<Self> {
        let mut acc = Self::zero(sys);
        for (a, g) in terms {
            acc = acc.add(&Self::monomial(sys, a, g)?)?;
        }
        Ok(acc)
    }

    pub fn system(&self) -> &Arc<CrossedSystem> {
        &self.sys
    }

    pub(crate) fn raw_terms(&self) -> &BTreeMap<GPayload, Payload> {
        &self.terms
    }

    /// Nonzero terms in canonical degree order.
    pub fn terms(&self) -> Vec<(GroupElem, RingElem)> {
        let (r, g) = (self.sys.ring(), self.sys.group());
        self.terms.iter().map(|(s, a)| (g.elem(s.clone()), r.elem(a.clone()))).collect()
    }

    pub fn support(&self) -> Vec<GroupElem> {
        self.terms.keys().map(|s| self.sys.group().elem(s.clone())).collect()
    }

    pub fn coefficient(&self, g: &GroupElem) -> RingElem {
        let ring = self.sys.ring();
        match self.terms.get(g.payload()) {
            Some(a) => ring.elem(a.clone()),
            None => ring.zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Support contained in `{e}`.
    pub fn is_in_base(&self) -> bool {
        let e = self.sys.group().identity_p();
        self.terms.keys().all(|s| *s == e)
    }

    fn check(&self, other: &CrossedElem) -> Result<()> {
        if Arc::ptr_eq(&self.sys, &other.sys) {
            Ok(())
        } else {
            Err(AlgebraError::DomainMismatch("crossed-product elements of different systems".into()))
        }
    }

    pub fn add(&self, other: &CrossedElem) -> Result<CrossedElem> {
        self.check(other)?;
        Ok(self.add_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &CrossedElem) -> CrossedElem {
        let ring = self.sys.ring();
        let mut terms = self.terms.clone();
        for (g, b) in &other.terms {
            match terms.get_mut(g) {
                Some(a) => {
                    let s = ring.add_p(a, b);
                    if ring.is_zero_p(&s) {
                        terms.remove(g);
                    } else {
                        *a = s;
                    }
                }
                None => {
                    terms.insert(g.clone(), b.clone());
                }
            }
        }
        CrossedElem { sys: self.sys.clone(), terms }
    }

    pub fn neg(&self) -> CrossedElem {
        let ring = self.sys.ring();
        CrossedElem { sys: self.sys.clone(), terms: self.terms.iter().map(|(g, a)| (g.clone(), ring.neg_p(a))).collect() }
    }

    pub fn sub(&self, other: &CrossedElem) -> Result<CrossedElem> {
        self.check(other)?;
        Ok(self.add_unchecked(&other.neg()))
    }

    /// `k · u` for an integer `k`.
    pub fn scale(&self, k: u64) -> CrossedElem {
        let ring = self.sys.ring();
        Self::from_raw(&self.sys, self.terms.iter().map(|(g, a)| (g.clone(), ring.scale_p(k, a))).collect())
    }

    /// `(Σ a_s s̄)(Σ b_t t̄) = Σ a_s σ_s(b_t) α(s,t) \overline{st}`.
    pub fn mul(&self, other: &CrossedElem) -> Result<CrossedElem> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &CrossedElem) -> CrossedElem {
        let (ring, group) = (self.sys.ring(), self.sys.group());
        let mut out: BTreeMap<GPayload, Payload> = BTreeMap::new();
        for (s, a) in &self.terms {
            let sigma = self.sys.sigma_p(s);
            for (t, b) in &other.terms {
                let c = ring.mul_p(&ring.mul_p(a, &sigma.apply_p(b)), &self.sys.alpha_p(s, t));
                if ring.is_zero_p(&c) {
                    continue;
                }
                let st = group.mul_p(s, t);
                match out.get_mut(&st) {
                    Some(acc) => *acc = ring.add_p(acc, &c),
                    None => {
                        out.insert(st, c);
                    }
                }
            }
        }
        Self::from_raw(&self.sys, out)
    }

    /// `uv = vu`, by comparing the two products.
    pub fn commutes(&self, other: &CrossedElem) -> Result<bool> {
        self.check(other)?;
        Ok(self.mul_unchecked(other) == other.mul_unchecked(self))
    }

    /// `uv = vu`, degree by degree:
    /// `Σ_{st=g} a_s σ_s(b_t) α(s,t) = Σ_{st=g} b_s σ_s(a_t) α(s,t)` for every `g`.
    pub fn commutes_per_degree(&self, other: &CrossedElem) -> Result<bool> {
        self.check(other)?;
        let (ring, group) = (self.sys.ring(), self.sys.group());
        let mut degrees = std::collections::BTreeSet::new();
        for s in self.terms.keys().chain(other.terms.keys()) {
            for t in self.terms.keys().chain(other.terms.keys()) {
                degrees.insert(group.mul_p(s, t));
            }
        }
        let side = |u: &CrossedElem, v: &CrossedElem, g: &GPayload| -> Payload {
            let mut acc = ring.zero_p();
            for (s, a) in &u.terms {
                let t = group.mul_p(&group.inv_p(s), g);
                if let Some(b) = v.terms.get(&t) {
                    let term = ring.mul_p(&ring.mul_p(a, &self.sys.apply_sigma_p(s, b)), &self.sys.alpha_p(s, &t));
                    acc = ring.add_p(&acc, &term);
                }
            }
            acc
        };
        Ok(degrees.iter().all(|g| side(self, other, g) == side(other, self, g)))
    }

    /// `T_g(u) = u · 1ḡ = Σ a_s α(s,g) \overline{sg}`.
    pub fn translate_deform(&self, g: &GroupElem) -> Result<CrossedElem> {
        self.sys.group().owns(g)?;
        let (ring, group) = (self.sys.ring(), self.sys.group());
        let terms = self
            .terms
            .iter()
            .map(|(s, a)| (group.mul_p(s, g.payload()), ring.mul_p(a, &self.sys.alpha_p(s, g.payload()))))
            .collect();
        Ok(Self::from_raw(&self.sys, terms))
    }

    /// `D_a(u) = (aē)u - u(aē) = Σ_{s≠e} a_s (a - σ_s(a)) s̄`; needs a commutative ring.
    pub fn kill(&self, a: &RingElem) -> Result<CrossedElem> {
        let ring = self.sys.ring();
        ring.owns(a)?;
        if !ring.is_commutative() {
            return Err(AlgebraError::Unsupported(format!(
                "the kill operator needs a commutative ring, {} is not",
                ring.describe()
            )));
        }
        let terms = self
            .terms
            .iter()
            .map(|(s, c)| (s.clone(), ring.mul_p(c, &ring.sub_p(a.payload(), &self.sys.apply_sigma_p(s, a.payload())))))
            .collect();
        Ok(Self::from_raw(&self.sys, terms))
    }

    pub fn parse(sys: &Arc<CrossedSystem>, input: &str) -> Result<CrossedElem> {
        let mut acc = Self::zero(sys);
        let trimmed = input.trim();
        if trimmed == "0" {
            return Ok(acc);
        }
        for (offset, negate, piece) in split_terms(input) {
            let piece_t = piece.trim();
            let lead = piece.len() - piece.trim_start().len();
            let err = |m: &str| AlgebraError::parse(input, offset + lead, m);
            let open = piece_t.rfind('[').ok_or_else(|| err("expected a term `coeff*[g]`"))?;
            if !piece_t.ends_with(']') {
                return Err(err("expected `]` closing the group element"));
            }
            let g = sys
                .group()
                .parse(&piece_t[open + 1..piece_t.len() - 1])
                .map_err(|e| err(&format!("bad group element: {e}")))?;
            let mut coeff = piece_t[..open].trim_end();
            let a = if coeff.is_empty() {
                sys.ring().one()
            } else {
                coeff = coeff.strip_suffix('*').ok_or_else(|| err("expected `*` before `[`"))?.trim();
                sys.ring().parse(coeff).map_err(|e| err(&format!("bad coefficient: {e}")))?
            };
            let term = Self::monomial(sys, &a, &g)?;
            acc = if negate { acc.sub(&term)? } else { acc.add(&term)? };
        }
        Ok(acc)
    }

    /// Every element of the crossed product, guarded by `|A|^|G|`.
    pub fn enumerate(sys: &Arc<CrossedSystem>) -> Result<Vec<CrossedElem>> {
        let ring = sys.ring();
        let group = sys.group();
        let r = ring.element_payloads()?;
        let g = group.element_payloads()?;
        let total = limits::guard_product("crossed product", r.len() as u64, g.len() as u64)? as usize;
        let mut out = Vec::with_capacity(total);
        let mut digits = vec![0usize; g.len()];
        for _ in 0..total {
            let terms = g.iter().zip(&digits).map(|(s, &i)| (s.clone(), r[i].clone())).collect();
            out.push(Self::from_raw(sys, terms));
            for d in digits.iter_mut().rev() {
                *d += 1;
                if *d < r.len() {
                    break;
                }
                *d = 0;
            }
        }
        Ok(out)
    }

    /// Every `a s̄` with `a` ranging over `ring_part` and `s` over `G`.
    pub(crate) fn single_terms(sys: &Arc<CrossedSystem>, ring_part: &[RingElem]) -> Result<Vec<CrossedElem>> {
        let mut out = Vec::new();
        for s in sys.group().elements()? {
            for a in ring_part {
                let m = Self::monomial(sys, a, &s)?;
                if !m.is_zero() {
                    out.push(m);
                }
            }
        }
        Ok(out)
    }
}

/// Splits at top-level `+`/`-` into `(byte offset, negated, text)`.
fn split_terms(s: &str) -> Vec<(usize, bool, &str)> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut negate = false;
    let mut last_sig: Option<u8> = None;
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' | b'[' => depth += 1,
            b')' | b']' => depth -= 1,
            b'+' | b'-' if depth == 0 && last_sig != Some(b'^') => {
                if s[start..i].trim().is_empty() {
                    if b == b'-' {
                        negate = !negate;
                    }
                } else {
                    out.push((start, negate, &s[start..i]));
                    negate = b == b'-';
                }
                start = i + 1;
                last_sig = Some(b);
                continue;
            }
            _ => {}
        }
        if !b.is_ascii_whitespace() {
            last_sig = Some(b);
        }
    }
    out.push((start, negate, &s[start..]));
    out
}

impl PartialEq for CrossedElem {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && Arc::ptr_eq(&self.sys, &other.sys)
    }
}

impl Eq for CrossedElem {}

impl Hash for CrossedElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl PartialOrd for CrossedElem {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CrossedElem {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.terms.cmp(&other.terms)
    }
}

impl fmt::Display for CrossedElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let (ring, group) = (self.sys.ring(), self.sys.group());
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(g, a)| {
                let c = ring.format(a);
                let c = if c.contains(' ') || c.starts_with('-') { format!("({c})") } else { c };
                format!("{c}*[{}]", group.format(g))
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for CrossedElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CrossedElem({self})")
    }
}
