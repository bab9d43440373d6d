use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::laurent;
use super::{Payload, Ring, RingElem, RingKind};
use crate::error::{AlgebraError, Result};
use crate::limits::Limits;

/// Upper bound on the order search for automorphisms of finite rings.
const MAX_ORDER_SEARCH: u64 = 1 << 20;

/// A unital ring automorphism, stored by the images of the ring's algebra
/// generators. Construction checks that the generator images extend to a
/// bijective unital ring homomorphism.
#[derive(Clone)]
pub struct RingAutomorphism {
    ring: Arc<Ring>,
    images: Vec<RingElem>,
    table: Arc<OnceLock<Option<Vec<u32>>>>,
}

impl Ring {
    /// Algebra generators whose images determine an automorphism.
    ///
    /// `Z/n` has none; the polynomial kinds use their variables; function
    /// and matrix rings use their idempotent / matrix-unit basis.
    pub fn algebra_generators(self: &Arc<Self>) -> Vec<RingElem> {
        let kind = match &self.kind {
            RingKind::IdealQuotient { parent, .. } => &parent.kind,
            k => k,
        };
        let names: Vec<String> = match kind {
            RingKind::Modular { .. } => vec![],
            RingKind::PolyQuotient { .. } | RingKind::FiniteField { .. } | RingKind::LaurentRational => vec!["x".into()],
            RingKind::Truncated { vars, .. } => (1..=*vars).map(|v| format!("x{v}")).collect(),
            RingKind::Functions { points, .. } => (0..*points).map(|i| format!("e{i}")).collect(),
            RingKind::Matrix { n, .. } => (0..n * n).map(|i| format!("E{}{}", i / n + 1, i % n + 1)).collect(),
            RingKind::IdealQuotient { .. } => unreachable!(),
        };
        names.iter().map(|n| self.parse(n).expect("generator symbol")).collect()
    }

    /// Image of `a` under the homomorphism sending generator `i` to `images[i]`.
    pub(crate) fn evaluate(self: &Arc<Self>, a: &Payload, images: &[Payload]) -> Payload {
        if let Payload::Laurent(p) = a {
            let img = images[0].laurent();
            let inv = laurent::inverse(img).expect("Laurent images are units");
            let mut acc = laurent::LaurentPoly::new();
            for (e, c) in p {
                let base = if *e < 0 { &inv } else { img };
                let mut pw = laurent::constant(c.clone());
                for _ in 0..e.unsigned_abs() {
                    pw = laurent::mul(&pw, base);
                }
                acc = laurent::add(&acc, &pw);
            }
            return Payload::Laurent(acc);
        }
        let c = a.coeffs();
        let kind = match &self.kind {
            RingKind::IdealQuotient { parent, .. } => &parent.kind,
            k => k,
        };
        let mut acc = self.zero_p();
        match kind {
            RingKind::Modular { .. } => return self.scale_p(c[0], &self.one_p()),
            RingKind::PolyQuotient { .. } | RingKind::FiniteField { .. } => {
                // Horner
                for &ci in c.iter().rev() {
                    acc = self.mul_p(&acc, &images[0]);
                    acc = self.add_p(&acc, &self.scale_p(ci, &self.one_p()));
                }
            }
            RingKind::Truncated { .. } => {
                for (i, &ci) in c.iter().enumerate().filter(|(_, v)| **v != 0) {
                    let mut term = self.scale_p(ci, &self.one_p());
                    for (v, &e) in self.monomials[i].iter().enumerate() {
                        term = self.mul_p(&term, &self.pow_p(&images[v], e as u64));
                    }
                    acc = self.add_p(&acc, &term);
                }
            }
            RingKind::Functions { .. } | RingKind::Matrix { .. } => {
                for (i, &ci) in c.iter().enumerate().filter(|(_, v)| **v != 0) {
                    acc = self.add_p(&acc, &self.scale_p(ci, &images[i]));
                }
            }
            RingKind::LaurentRational | RingKind::IdealQuotient { .. } => unreachable!(),
        }
        acc
    }
}

impl RingAutomorphism {
    pub fn identity(ring: &Arc<Ring>) -> Self {
        let images = ring.algebra_generators();
        Self::unchecked(ring.clone(), images)
    }

    fn unchecked(ring: Arc<Ring>, images: Vec<RingElem>) -> Self {
        RingAutomorphism { ring, images, table: Arc::new(OnceLock::new()) }
    }

    /// Builds and verifies an automorphism from generator images.
    pub fn new(ring: &Arc<Ring>, images: Vec<RingElem>) -> Result<Self> {
        let gens = ring.algebra_generators();
        if images.len() != gens.len() {
            return Err(AlgebraError::InvalidAutomorphism(format!(
                "{} needs {} generator images, got {}",
                ring.describe(),
                gens.len(),
                images.len()
            )));
        }
        for img in &images {
            ring.owns(img)?;
        }
        let phi = Self::unchecked(ring.clone(), images);
        phi.validate()?;
        Ok(phi)
    }

    /// Parses generator images, e.g. `["2x"]`.
    pub fn parse(ring: &Arc<Ring>, images: &[&str]) -> Result<Self> {
        let images = images.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>()?;
        Self::new(ring, images)
    }

    /// `x -> x^p` on a finite field.
    pub fn frobenius(ring: &Arc<Ring>) -> Result<Self> {
        match ring.kind() {
            RingKind::FiniteField { p, .. } => {
                let x = ring.parse("x")?;
                Self::new(ring, vec![x.pow(*p)])
            }
            _ => Err(AlgebraError::InvalidAutomorphism(format!("{} is not a finite field", ring.describe()))),
        }
    }

    fn validate(&self) -> Result<()> {
        let ring = &self.ring;
        let bad = |msg: String| Err(AlgebraError::InvalidAutomorphism(msg));
        if !ring.is_finite() {
            return match laurent::as_monomial(self.images[0].laurent_terms().expect("Laurent")) {
                Some((_, e)) if e == 1 || e == -1 => Ok(()),
                _ => bad(format!("x -> {} is not an automorphism of Q[x,x^-1]; images must be c*x^(+-1)", self.images[0])),
            };
        }
        let one = ring.one_p();
        if self.apply_raw(&one) != one {
            return bad(format!("{self} does not fix 1"));
        }
        if let RingKind::IdealQuotient { parent, ideal } = ring.kind() {
            // the map must kill the ideal to be well defined on cosets
            for v in ideal {
                let img = ring.evaluate(&Payload::Coeffs(v.clone()), &self.image_payloads());
                if !ring.is_zero_p(&img) {
                    return bad(format!("{self} does not preserve the ideal: {} maps to {}", parent.format(&Payload::Coeffs(v.clone())), ring.format(&img)));
                }
            }
        }
        let basis = ring.additive_generators()?;
        for a in &basis {
            for b in &basis {
                let lhs = self.apply_raw(&ring.mul_p(&a.payload, &b.payload));
                let rhs = ring.mul_p(&self.apply_raw(&a.payload), &self.apply_raw(&b.payload));
                if lhs != rhs {
                    return bad(format!("{self} is not multiplicative on ({a}, {b})"));
                }
            }
        }
        // bijectivity: an injective additive map on a finite ring has trivial kernel
        let elems = ring.element_payloads()?;
        if let Some(k) = elems.iter().find(|e| !ring.is_zero_p(e) && ring.is_zero_p(&self.apply_raw(e))) {
            return bad(format!("{self} is not injective: {} maps to 0", ring.format(k)));
        }
        Ok(())
    }

    fn image_payloads(&self) -> Vec<Payload> {
        self.images.iter().map(|i| i.payload.clone()).collect()
    }

    fn apply_raw(&self, a: &Payload) -> Payload {
        self.ring.evaluate(a, &self.image_payloads())
    }

    fn table(&self) -> Option<&Vec<u32>> {
        self.table
            .get_or_init(|| {
                let size = self.ring.size()?;
                if size > Limits::current().max_ring {
                    return None;
                }
                let elems = self.ring.element_payloads().ok()?;
                Some(elems.iter().map(|e| self.ring.index_of_p(&self.apply_raw(e)) as u32).collect())
            })
            .as_ref()
    }

    pub(crate) fn apply_p(&self, a: &Payload) -> Payload {
        if self.ring.is_finite() {
            if let Some(t) = self.table() {
                let idx = t[self.ring.index_of_p(a)] as usize;
                return self.ring.element_payloads().expect("tabulated")[idx].clone();
            }
        }
        self.apply_raw(a)
    }

    pub fn apply(&self, a: &RingElem) -> Result<RingElem> {
        self.ring.owns(a)?;
        Ok(self.ring.elem(self.apply_p(&a.payload)))
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn images(&self) -> &[RingElem] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images == self.ring.algebra_generators()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &RingAutomorphism) -> Result<RingAutomorphism> {
        if !self.ring.same(&other.ring) {
            return Err(AlgebraError::DomainMismatch("automorphisms of different rings".into()));
        }
        let images = other.images.iter().map(|g| self.ring.elem(self.apply_p(&g.payload))).collect();
        Ok(Self::unchecked(self.ring.clone(), images))
    }

    /// Order in `Aut(A)`, or `None` when infinite.
    pub fn order(&self) -> Option<u64> {
        if !self.ring.is_finite() {
            let (c, e) = laurent::as_monomial(self.images[0].laurent_terms()?)?;
            return if e == -1 { Some(2) } else { laurent::rational_order(c) };
        }
        let mut cur = self.clone();
        for k in 1..=MAX_ORDER_SEARCH {
            if cur.is_identity() {
                return Some(k);
            }
            cur = self.compose(&cur).ok()?;
        }
        None
    }

    pub fn inverse(&self) -> Result<RingAutomorphism> {
        if !self.ring.is_finite() {
            let (c, e) = laurent::as_monomial(self.images[0].laurent_terms().expect("Laurent")).expect("validated");
            let img = if e == 1 { laurent::monomial(c.recip(), 1) } else { laurent::monomial(c.clone(), -1) };
            return Ok(Self::unchecked(self.ring.clone(), vec![self.ring.elem(Payload::Laurent(img))]));
        }
        let order = self
            .order()
            .ok_or_else(|| AlgebraError::Unsupported("automorphism order exceeds the search bound".into()))?;
        self.pow_u64(order - 1)
    }

    fn pow_u64(&self, mut k: u64) -> Result<RingAutomorphism> {
        let mut acc = Self::identity(&self.ring);
        let mut sq = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(&sq)?;
            }
            sq = sq.compose(&sq)?;
            k >>= 1;
        }
        Ok(acc)
    }

    /// `self^n` for any integer `n`.
    pub fn power(&self, n: &BigInt) -> Result<RingAutomorphism> {
        if n.is_zero() {
            return Ok(Self::identity(&self.ring));
        }
        if let Some(order) = self.order() {
            let r = n % BigInt::from(order);
            let r = if r < BigInt::zero() { r + BigInt::from(order) } else { r };
            return self.pow_u64(r.to_u64().expect("reduced"));
        }
        let k = n
            .magnitude()
            .to_u64()
            .ok_or_else(|| AlgebraError::Unsupported(format!("automorphism power {n} out of range")))?;
        let base = if n.sign() == num_bigint::Sign::Minus { self.inverse()? } else { self.clone() };
        if !self.ring.is_finite() {
            // closed form avoids k-fold composition: x -> c x  gives  x -> c^k x
            let (c, e) = laurent::as_monomial(base.images[0].laurent_terms().expect("Laurent")).expect("validated");
            if e == 1 {
                let ck = laurent::rational_pow(c, k as i64);
                let img = laurent::monomial(ck, 1);
                return Ok(Self::unchecked(self.ring.clone(), vec![self.ring.elem(Payload::Laurent(img))]));
            }
        }
        base.pow_u64(k)
    }

    /// The automorphism `a + I -> φ(a) + I` of a quotient `A/I`, when `I` is invariant.
    pub fn induced_on(&self, quotient: &Arc<Ring>) -> Result<RingAutomorphism> {
        let images = self.images.iter().map(|g| quotient.project(g)).collect::<Result<Vec<_>>>()?;
        RingAutomorphism::new(quotient, images)
    }
}

impl PartialEq for RingAutomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same(&other.ring) && self.images == other.images
    }
}

impl Eq for RingAutomorphism {}

impl fmt::Display for RingAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens = self.ring.algebra_generators();
        if gens.is_empty() {
            return f.write_str("id");
        }
        let parts: Vec<String> = gens.iter().zip(&self.images).map(|(g, i)| format!("{g} -> {i}")).collect();
        write!(f, "{}", parts.join(", "))
    }
}

impl fmt::Debug for RingAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingAutomorphism({self})")
    }
}

impl RingAutomorphism {
    /// `x -> q x` on a one-variable polynomial or Laurent ring.
    pub fn scaling(ring: &Arc<Ring>, q: &RingElem) -> Result<Self> {
        let x = ring.parse("x")?;
        Self::new(ring, vec![q.mul(&x)?])
    }
}

#[allow(dead_code)]
fn _assert_send_sync() {
    fn check<T: Send + Sync>() {}
    check::<RingAutomorphism>();
    check::<RingElem>();
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn scaling_on_truncated_ring() {
        // (2x)^2 = 4x^2 = x^2 over F_3
        let a = Ring::truncated_polynomial(3, 3).unwrap();
        let phi = RingAutomorphism::parse(&a, &["2x"]).unwrap();
        let v = a.parse("1 + x^2").unwrap();
        assert_eq!(phi.apply(&v).unwrap(), v);
        assert_eq!(phi.apply(&a.parse("x").unwrap()).unwrap(), a.parse("2x").unwrap());
        assert_eq!(phi.order(), Some(2));
        assert!(phi.compose(&phi).unwrap().is_identity());
    }

    #[test]
    fn identity_fixes_everything() {
        let a = Ring::truncated_multivariate(3, 2, 2).unwrap();
        let id = RingAutomorphism::identity(&a);
        for e in a.elements().unwrap() {
            assert_eq!(id.apply(&e).unwrap(), e);
        }
        assert!(id.is_identity());
    }

    #[test]
    fn frobenius_on_f4() {
        let f4 = Ring::finite_field(2, 2).unwrap();
        let fr = RingAutomorphism::frobenius(&f4).unwrap();
        let w = f4.parse("x").unwrap();
        assert_eq!(fr.apply(&w).unwrap(), w.pow(2));
        assert_eq!(fr.apply(&w).unwrap(), f4.parse("x + 1").unwrap());
        assert_eq!(fr.order(), Some(2));
    }

    #[test]
    fn rejects_non_homomorphisms() {
        let a = Ring::truncated_polynomial(3, 3).unwrap();
        // x -> 1 + x sends x^3 = 0 to (1 + x)^3 = 1 + x^3 = 1
        assert!(RingAutomorphism::parse(&a, &["1 + x"]).is_err());
        // x -> x^2 is not injective
        assert!(RingAutomorphism::parse(&a, &["x^2"]).is_err());
        let l = Ring::laurent_rational();
        assert!(RingAutomorphism::parse(&l, &["x^2"]).is_err());
        assert!(RingAutomorphism::parse(&l, &["0"]).is_err());
        let m = Ring::matrix(2, 2).unwrap();
        // transpose is an anti-automorphism, not an automorphism
        assert!(RingAutomorphism::parse(&m, &["E11", "E21", "E12", "E22"]).is_err());
        // conjugation by [[0,1],[1,0]] swaps the indices
        assert!(RingAutomorphism::parse(&m, &["E22", "E21", "E12", "E11"]).is_ok());
    }

    #[test]
    fn laurent_scaling_powers() {
        let l = Ring::laurent_rational();
        let two = l.from_int(2);
        let s = RingAutomorphism::scaling(&l, &two).unwrap();
        assert_eq!(s.order(), None);
        let s3 = s.power(&BigInt::from(-3)).unwrap();
        let expect = l.laurent_monomial(BigRational::new(1.into(), 8.into()), 1).unwrap();
        assert_eq!(s3.images()[0], expect);
        let minus = RingAutomorphism::scaling(&l, &l.from_int(-1)).unwrap();
        assert_eq!(minus.order(), Some(2));
        assert!(minus.power(&BigInt::from(4)).unwrap().is_identity());
        assert_eq!(s.inverse().unwrap().compose(&s).unwrap(), RingAutomorphism::identity(&l));
    }

    #[test]
    fn homomorphism_laws_exhaustive() {
        let a = Ring::truncated_multivariate(3, 2, 2).unwrap();
        let swap = RingAutomorphism::parse(&a, &["x2", "x1"]).unwrap();
        let elems = a.elements().unwrap();
        assert_eq!(swap.apply(&a.zero()).unwrap(), a.zero());
        assert_eq!(swap.apply(&a.one()).unwrap(), a.one());
        for x in &elems {
            for y in &elems {
                assert_eq!(swap.apply(&x.add(y).unwrap()).unwrap(), swap.apply(x).unwrap().add(&swap.apply(y).unwrap()).unwrap());
                assert_eq!(swap.apply(&x.mul(y).unwrap()).unwrap(), swap.apply(x).unwrap().mul(&swap.apply(y).unwrap()).unwrap());
            }
        }
    }
}
