//! Exact coefficient rings.
//!
//! A [`Ring`] is a descriptor shared behind an `Arc`; a [`RingElem`] pairs a
//! canonical payload with its owning ring. Finite rings store elements as
//! coefficient vectors over `Z/q` in a fixed basis, so the canonical order is
//! the lexicographic order of those vectors.

mod automorphism;
pub(crate) mod laurent;
mod text;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

pub use automorphism::RingAutomorphism;
pub use laurent::LaurentPoly;

use crate::error::{AlgebraError, Result};
use crate::limits;

/// Which ring a descriptor denotes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingKind {
    /// `Z/n`.
    Modular { n: u64 },
    /// `F_p[x]/(f)` for a monic `f`, coefficients listed from the constant term up.
    PolyQuotient { p: u64, modulus: Vec<u64> },
    /// `F_{p^degree}` presented as `F_p[x]/(f)` with `f` irreducible.
    FiniteField { p: u64, degree: usize, modulus: Vec<u64> },
    /// `Q[x, x^{-1}]`.
    LaurentRational,
    /// `F_p[x_1..x_vars]` modulo every monomial of total degree `>= degree`.
    Truncated { p: u64, vars: usize, degree: u32 },
    /// All functions from a `points`-element set to `F_p`, pointwise operations.
    Functions { p: u64, points: usize },
    /// `n x n` matrices over `Z/modulus`.
    Matrix { n: usize, modulus: u64 },
    /// `parent / ideal` with cosets represented by their least element.
    IdealQuotient { parent: Arc<Ring>, ideal: Vec<Vec<u64>> },
}

/// Canonical element payload.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Payload {
    Coeffs(Vec<u64>),
    Laurent(LaurentPoly),
}

impl Payload {
    pub(crate) fn coeffs(&self) -> &[u64] {
        match self {
            Payload::Coeffs(c) => c,
            Payload::Laurent(_) => panic!("finite-ring payload expected"),
        }
    }

    fn laurent(&self) -> &LaurentPoly {
        match self {
            Payload::Laurent(p) => p,
            Payload::Coeffs(_) => panic!("Laurent payload expected"),
        }
    }
}

#[derive(Debug)]
struct QuotientData {
    canon: HashMap<Vec<u64>, Vec<u64>>,
    reps: Vec<Vec<u64>>,
}

/// A coefficient ring descriptor.
pub struct Ring {
    kind: RingKind,
    /// Coefficient modulus of the vector representation (0 for Laurent).
    q: u64,
    /// Length of the coefficient vector.
    dim: usize,
    /// Truncated kind: exponent vectors of the basis monomials.
    monomials: Vec<Vec<u32>>,
    /// Truncated kind: `basis[i] * basis[j]` as a basis index, row-major.
    mono_table: Vec<Option<usize>>,
    quotient: Option<QuotientData>,
    elements: OnceLock<Vec<Payload>>,
    domain: OnceLock<bool>,
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({})", self.describe())
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Ring {}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn bigint_mod(i: &BigInt, m: u64) -> u64 {
    let r = i % BigInt::from(m);
    let r = if r.is_negative() { r + BigInt::from(m) } else { r };
    r.to_u64().expect("residue fits")
}

impl Ring {
    fn build(kind: RingKind, q: u64, dim: usize) -> Ring {
        Ring {
            kind,
            q,
            dim,
            monomials: Vec::new(),
            mono_table: Vec::new(),
            quotient: None,
            elements: OnceLock::new(),
            domain: OnceLock::new(),
        }
    }

    /// `Z/n`, `n >= 2`.
    pub fn modular(n: u64) -> Result<Arc<Ring>> {
        if n < 2 {
            return Err(AlgebraError::InvalidParameter(format!("Z/{n} needs n >= 2")));
        }
        Ok(Arc::new(Ring::build(RingKind::Modular { n }, n, 1)))
    }

    /// `F_p[x]/(modulus)`; `modulus` is monic of degree at least 1, lowest coefficient first.
    pub fn poly_quotient(p: u64, modulus: Vec<u64>) -> Result<Arc<Ring>> {
        let modulus = check_modulus(p, modulus)?;
        let dim = modulus.len() - 1;
        Ok(Arc::new(Ring::build(RingKind::PolyQuotient { p, modulus }, p, dim)))
    }

    /// `F_p[x]/(x^m)`.
    pub fn truncated_polynomial(p: u64, m: usize) -> Result<Arc<Ring>> {
        if m == 0 {
            return Err(AlgebraError::InvalidParameter("x^0 does not define a ring".into()));
        }
        let mut modulus = vec![0; m + 1];
        modulus[m] = 1;
        Ring::poly_quotient(p, modulus)
    }

    /// `F_{p^degree}` using the least monic irreducible modulus in canonical order.
    pub fn finite_field(p: u64, degree: usize) -> Result<Arc<Ring>> {
        if !is_prime(p) || degree == 0 {
            return Err(AlgebraError::InvalidParameter(format!("F_{{{p}^{degree}}} is not a finite field")));
        }
        let modulus = least_irreducible(p, degree)
            .ok_or_else(|| AlgebraError::InvalidParameter(format!("no irreducible of degree {degree} over F_{p} within the search limit")))?;
        Ring::finite_field_with(p, modulus)
    }

    /// `F_p[x]/(modulus)` with an explicit irreducible modulus.
    pub fn finite_field_with(p: u64, modulus: Vec<u64>) -> Result<Arc<Ring>> {
        let modulus = check_modulus(p, modulus)?;
        if !is_irreducible(p, &modulus) {
            return Err(AlgebraError::InvalidParameter(format!("modulus {modulus:?} is reducible over F_{p}")));
        }
        let degree = modulus.len() - 1;
        Ok(Arc::new(Ring::build(RingKind::FiniteField { p, degree, modulus }, p, degree)))
    }

    pub fn laurent_rational() -> Arc<Ring> {
        Arc::new(Ring::build(RingKind::LaurentRational, 0, 0))
    }

    /// `F_p[x_1..x_vars] / (all monomials of total degree >= degree)`.
    pub fn truncated_multivariate(p: u64, vars: usize, degree: u32) -> Result<Arc<Ring>> {
        if !is_prime(p) || vars == 0 || degree == 0 {
            return Err(AlgebraError::InvalidParameter(format!(
                "truncated ring needs prime p, vars >= 1, degree >= 1 (got p={p}, vars={vars}, degree={degree})"
            )));
        }
        let mut monomials = Vec::new();
        for total in 0..degree {
            let mut level = Vec::new();
            exponent_vectors(vars, total, &mut Vec::new(), &mut level);
            // x_1 before x_2 within a degree
            level.sort_by(|a, b| b.cmp(a));
            monomials.extend(level);
        }
        let dim = monomials.len();
        let index: HashMap<Vec<u32>, usize> = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut table = Vec::with_capacity(dim * dim);
        for a in &monomials {
            for b in &monomials {
                let prod: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                table.push(index.get(&prod).copied());
            }
        }
        let mut ring = Ring::build(RingKind::Truncated { p, vars, degree }, p, dim);
        ring.monomials = monomials;
        ring.mono_table = table;
        Ok(Arc::new(ring))
    }

    /// Functions from `{0..points-1}` to `F_p`.
    pub fn functions(p: u64, points: usize) -> Result<Arc<Ring>> {
        if !is_prime(p) || points == 0 {
            return Err(AlgebraError::InvalidParameter(format!("functions ring needs prime p and points >= 1 (got {p}, {points})")));
        }
        Ok(Arc::new(Ring::build(RingKind::Functions { p, points }, p, points)))
    }

    /// `M_n(Z/modulus)`.
    pub fn matrix(n: usize, modulus: u64) -> Result<Arc<Ring>> {
        if n == 0 || n > 9 || modulus < 2 {
            return Err(AlgebraError::InvalidParameter(format!("matrix ring needs 1 <= n <= 9 and modulus >= 2 (got {n}, {modulus})")));
        }
        Ok(Arc::new(Ring::build(RingKind::Matrix { n, modulus }, modulus, n * n)))
    }

    /// `parent / ideal` for a proper two-sided ideal given by its full element set.
    pub fn ideal_quotient(parent: &Arc<Ring>, ideal: &BTreeSet<RingElem>) -> Result<Arc<Ring>> {
        if !parent.is_finite() {
            return Err(AlgebraError::UnsupportedEnumeration("quotients are built for finite rings only".into()));
        }
        if let Some(bad) = ideal.iter().find(|e| !Arc::ptr_eq(&e.ring, parent) && *e.ring != **parent) {
            return Err(AlgebraError::DomainMismatch(format!("ideal element {bad} not in {}", parent.describe())));
        }
        if !parent.is_two_sided_ideal(ideal)? {
            return Err(AlgebraError::InvalidParameter("quotient requires a two-sided ideal".into()));
        }
        if ideal.contains(&parent.one()) {
            return Err(AlgebraError::InvalidParameter("quotient by the whole ring is the zero ring".into()));
        }
        let members: Vec<Vec<u64>> = ideal.iter().map(|e| e.payload.coeffs().to_vec()).collect();
        let mut canon = HashMap::new();
        let mut reps = BTreeSet::new();
        for x in parent.elements()? {
            let xc = x.payload.coeffs();
            let rep = members
                .iter()
                .map(|i| parent.add_vec(xc, i))
                .min()
                .expect("ideal contains zero");
            reps.insert(rep.clone());
            canon.insert(xc.to_vec(), rep);
        }
        let mut ring = Ring::build(
            RingKind::IdealQuotient { parent: parent.clone(), ideal: members },
            parent.q,
            parent.dim,
        );
        ring.monomials = parent.monomials.clone();
        ring.mono_table = parent.mono_table.clone();
        ring.quotient = Some(QuotientData { canon, reps: reps.into_iter().collect() });
        Ok(Arc::new(ring))
    }

    pub fn kind(&self) -> &RingKind {
        &self.kind
    }

    /// Short human-readable name, e.g. `F_3[x]/(x^3)`.
    pub fn describe(&self) -> String {
        match &self.kind {
            RingKind::Modular { n } => format!("Z/{n}"),
            RingKind::PolyQuotient { p, modulus } => format!("F_{p}[x]/({})", text::format_poly(modulus)),
            RingKind::FiniteField { p, degree, modulus } => {
                format!("F_{}=F_{p}[x]/({})", p.pow(*degree as u32), text::format_poly(modulus))
            }
            RingKind::LaurentRational => "Q[x,x^-1]".to_string(),
            RingKind::Truncated { p, vars, degree } => format!("F_{p}[x1..x{vars}]/(deg>={degree})"),
            RingKind::Functions { p, points } => format!("F_{p}^{points}"),
            RingKind::Matrix { n, modulus } => format!("M_{n}(Z/{modulus})"),
            RingKind::IdealQuotient { parent, ideal } => format!("({})/I[{}]", parent.describe(), ideal.len()),
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self.kind, RingKind::LaurentRational)
    }

    /// Number of elements, when finite and representable.
    pub fn size(&self) -> Option<u64> {
        if let Some(qd) = &self.quotient {
            return Some(qd.reps.len() as u64);
        }
        if !self.is_finite() {
            return None;
        }
        self.q.checked_pow(self.dim as u32)
    }

    /// Characteristic-compatible coefficient modulus of the vector payload.
    pub fn coefficient_modulus(&self) -> u64 {
        self.q
    }

    fn expect_finite(&self, what: &str) -> Result<()> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(AlgebraError::UnsupportedEnumeration(format!("{what} needs a finite ring, got {}", self.describe())))
        }
    }

    // ---- payload arithmetic -------------------------------------------------

    fn add_vec(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.q).collect()
    }

    fn canon(&self, v: Vec<u64>) -> Vec<u64> {
        match &self.quotient {
            Some(qd) => qd.canon.get(&v).cloned().expect("vector of the parent ring"),
            None => v,
        }
    }

    pub(crate) fn zero_p(&self) -> Payload {
        match self.kind {
            RingKind::LaurentRational => Payload::Laurent(LaurentPoly::new()),
            _ => Payload::Coeffs(vec![0; self.dim]),
        }
    }

    pub(crate) fn one_p(&self) -> Payload {
        match &self.kind {
            RingKind::LaurentRational => Payload::Laurent(laurent::constant(BigRational::one())),
            RingKind::Functions { points, .. } => Payload::Coeffs(vec![1; *points]),
            RingKind::Matrix { n, .. } => {
                let mut v = vec![0; n * n];
                for i in 0..*n {
                    v[i * n + i] = 1;
                }
                Payload::Coeffs(v)
            }
            RingKind::IdealQuotient { parent, .. } => {
                Payload::Coeffs(self.canon(parent.one_p().coeffs().to_vec()))
            }
            _ => {
                let mut v = vec![0; self.dim];
                v[0] = 1 % self.q;
                Payload::Coeffs(v)
            }
        }
    }

    pub(crate) fn is_zero_p(&self, a: &Payload) -> bool {
        match a {
            Payload::Coeffs(c) => c.iter().all(|&x| x == 0),
            Payload::Laurent(p) => p.is_empty(),
        }
    }

    pub(crate) fn add_p(&self, a: &Payload, b: &Payload) -> Payload {
        match (a, b) {
            (Payload::Laurent(x), Payload::Laurent(y)) => Payload::Laurent(laurent::add(x, y)),
            (Payload::Coeffs(x), Payload::Coeffs(y)) => Payload::Coeffs(self.canon(self.add_vec(x, y))),
            _ => unreachable!("mixed payloads"),
        }
    }

    pub(crate) fn neg_p(&self, a: &Payload) -> Payload {
        match a {
            Payload::Laurent(x) => Payload::Laurent(laurent::neg(x)),
            Payload::Coeffs(x) => {
                Payload::Coeffs(self.canon(x.iter().map(|&c| (self.q - c) % self.q).collect()))
            }
        }
    }

    pub(crate) fn sub_p(&self, a: &Payload, b: &Payload) -> Payload {
        self.add_p(a, &self.neg_p(b))
    }

    pub(crate) fn scale_p(&self, c: u64, a: &Payload) -> Payload {
        match a {
            Payload::Coeffs(x) => Payload::Coeffs(self.canon(x.iter().map(|&v| mulmod(v, c, self.q)).collect())),
            Payload::Laurent(_) => self.mul_p(&self.from_u64_p(c), a),
        }
    }

    pub(crate) fn mul_p(&self, a: &Payload, b: &Payload) -> Payload {
        if let (Payload::Laurent(x), Payload::Laurent(y)) = (a, b) {
            return Payload::Laurent(laurent::mul(x, y));
        }
        let (x, y) = (a.coeffs(), b.coeffs());
        let kind = match &self.kind {
            RingKind::IdealQuotient { parent, .. } => &parent.kind,
            k => k,
        };
        let q = self.q;
        let raw = match kind {
            RingKind::Modular { .. } => vec![mulmod(x[0], y[0], q)],
            RingKind::PolyQuotient { modulus, .. } | RingKind::FiniteField { modulus, .. } => {
                poly_mul_mod(x, y, modulus, q)
            }
            RingKind::Truncated { .. } => {
                let d = self.dim;
                let mut out = vec![0u64; d];
                for (i, &xi) in x.iter().enumerate().filter(|(_, v)| **v != 0) {
                    for (j, &yj) in y.iter().enumerate().filter(|(_, v)| **v != 0) {
                        if let Some(k) = self.mono_table[i * d + j] {
                            out[k] = (out[k] + mulmod(xi, yj, q)) % q;
                        }
                    }
                }
                out
            }
            RingKind::Functions { .. } => x.iter().zip(y).map(|(u, v)| mulmod(*u, *v, q)).collect(),
            RingKind::Matrix { n, .. } => {
                let n = *n;
                let mut out = vec![0u64; n * n];
                for i in 0..n {
                    for k in 0..n {
                        let xik = x[i * n + k];
                        if xik == 0 {
                            continue;
                        }
                        for j in 0..n {
                            out[i * n + j] = (out[i * n + j] + mulmod(xik, y[k * n + j], q)) % q;
                        }
                    }
                }
                out
            }
            RingKind::LaurentRational | RingKind::IdealQuotient { .. } => unreachable!(),
        };
        Payload::Coeffs(self.canon(raw))
    }

    pub(crate) fn from_u64_p(&self, c: u64) -> Payload {
        match self.kind {
            RingKind::LaurentRational => Payload::Laurent(laurent::constant(BigRational::from_integer(c.into()))),
            _ => self.scale_p(c % self.q, &self.one_p()),
        }
    }

    pub(crate) fn from_bigint_p(&self, c: &BigInt) -> Payload {
        match self.kind {
            RingKind::LaurentRational => Payload::Laurent(laurent::constant(BigRational::from_integer(c.clone()))),
            _ => self.scale_p(bigint_mod(c, self.q), &self.one_p()),
        }
    }

    pub(crate) fn pow_p(&self, a: &Payload, mut k: u64) -> Payload {
        let mut acc = self.one_p();
        let mut sq = a.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_p(&acc, &sq);
            }
            sq = self.mul_p(&sq, &sq);
            k >>= 1;
        }
        acc
    }

    pub(crate) fn elem(self: &Arc<Self>, payload: Payload) -> RingElem {
        RingElem { ring: self.clone(), payload }
    }

    pub(crate) fn same(self: &Arc<Self>, other: &Arc<Ring>) -> bool {
        Arc::ptr_eq(self, other) || **self == **other
    }

    // ---- public element constructors ---------------------------------------

    pub fn zero(self: &Arc<Self>) -> RingElem {
        self.elem(self.zero_p())
    }

    pub fn one(self: &Arc<Self>) -> RingElem {
        self.elem(self.one_p())
    }

    pub fn from_int(self: &Arc<Self>, c: i64) -> RingElem {
        self.elem(self.from_bigint_p(&BigInt::from(c)))
    }

    /// A Laurent monomial `c x^exp`.
    pub fn laurent_monomial(self: &Arc<Self>, c: BigRational, exp: i64) -> Result<RingElem> {
        match self.kind {
            RingKind::LaurentRational => Ok(self.elem(Payload::Laurent(laurent::monomial(c, exp)))),
            _ => Err(AlgebraError::DomainMismatch(format!("{} is not a Laurent ring", self.describe()))),
        }
    }

    /// Element from a raw coefficient vector, reduced into canonical form.
    pub fn from_coeffs(self: &Arc<Self>, coeffs: &[u64]) -> Result<RingElem> {
        self.expect_finite("coefficient vectors")?;
        if coeffs.len() != self.dim {
            return Err(AlgebraError::DomainMismatch(format!(
                "{} expects {} coefficients, got {}",
                self.describe(),
                self.dim,
                coeffs.len()
            )));
        }
        let v: Vec<u64> = coeffs.iter().map(|c| c % self.q).collect();
        Ok(self.elem(Payload::Coeffs(self.canon(v))))
    }

    /// Basis elements spanning `(A, +)`; enough to test any additive condition.
    pub fn additive_generators(self: &Arc<Self>) -> Result<Vec<RingElem>> {
        self.expect_finite("additive generators")?;
        let mut out = BTreeSet::new();
        for i in 0..self.dim {
            let mut v = vec![0; self.dim];
            v[i] = 1;
            let e = self.elem(Payload::Coeffs(self.canon(v)));
            if !e.is_zero() {
                out.insert(e);
            }
        }
        Ok(out.into_iter().collect())
    }

    /// All elements in canonical order.
    pub fn elements(self: &Arc<Self>) -> Result<Vec<RingElem>> {
        Ok(self.element_payloads()?.iter().map(|p| self.elem(p.clone())).collect())
    }

    pub(crate) fn element_payloads(&self) -> Result<&[Payload]> {
        self.expect_finite("enumeration")?;
        limits::guard_ring(&format!("ring {}", self.describe()), self.size())?;
        Ok(self.elements.get_or_init(|| match &self.quotient {
            Some(qd) => qd.reps.iter().cloned().map(Payload::Coeffs).collect(),
            None => {
                let size = self.size().expect("guarded") as usize;
                (0..size).map(|i| Payload::Coeffs(self.decode_index(i))).collect()
            }
        }))
    }

    fn decode_index(&self, mut idx: usize) -> Vec<u64> {
        let mut v = vec![0u64; self.dim];
        for slot in v.iter_mut().rev() {
            *slot = (idx as u64) % self.q;
            idx /= self.q as usize;
        }
        v
    }

    /// Position of an element in the canonical enumeration.
    pub(crate) fn index_of_p(&self, a: &Payload) -> usize {
        let c = a.coeffs();
        match &self.quotient {
            Some(qd) => qd.reps.binary_search_by(|r| r.as_slice().cmp(c)).expect("canonical representative"),
            None => c.iter().fold(0usize, |acc, &x| acc * self.q as usize + x as usize),
        }
    }

    // ---- structural queries -------------------------------------------------

    pub fn is_commutative(self: &Arc<Self>) -> bool {
        if !self.is_finite() {
            return true;
        }
        let gens = self.additive_generators().expect("finite");
        gens.iter().all(|a| gens.iter().all(|b| self.mul_p(&a.payload, &b.payload) == self.mul_p(&b.payload, &a.payload)))
    }

    /// Commutative, `0 != 1`, and free of nonzero zero-divisors.
    pub fn is_integral_domain(self: &Arc<Self>) -> Result<bool> {
        if let Some(d) = self.domain.get() {
            return Ok(*d);
        }
        let d = match &self.kind {
            RingKind::LaurentRational | RingKind::FiniteField { .. } => true,
            RingKind::Modular { n } => is_prime(*n),
            _ => self.is_commutative() && self.zero_divisor_set()?.len() == 1,
        };
        let _ = self.domain.set(d);
        Ok(d)
    }

    pub fn is_unit(self: &Arc<Self>, a: &RingElem) -> Result<bool> {
        Ok(self.inverse(a)?.is_some())
    }

    /// Two-sided inverse, when it exists.
    pub fn inverse(self: &Arc<Self>, a: &RingElem) -> Result<Option<RingElem>> {
        self.owns(a)?;
        if let Payload::Laurent(p) = &a.payload {
            return Ok(laurent::inverse(p).map(|i| self.elem(Payload::Laurent(i))));
        }
        let one = self.one_p();
        for b in self.element_payloads()? {
            if self.mul_p(&a.payload, b) == one && self.mul_p(b, &a.payload) == one {
                return Ok(Some(self.elem(b.clone())));
            }
        }
        Ok(None)
    }

    /// Right annihilator `{c : a c = 0}` by exhaustive enumeration.
    pub fn annihilator(self: &Arc<Self>, a: &RingElem) -> Result<BTreeSet<RingElem>> {
        self.owns(a)?;
        self.expect_finite("annihilator")?;
        Ok(self
            .element_payloads()?
            .iter()
            .filter(|c| self.is_zero_p(&self.mul_p(&a.payload, c)))
            .map(|c| self.elem(c.clone()))
            .collect())
    }

    /// `{a : a b = 0 or b a = 0 for some b != 0}`, always containing 0.
    pub fn zero_divisor_set(self: &Arc<Self>) -> Result<BTreeSet<RingElem>> {
        self.expect_finite("zero-divisor set")?;
        let elems = self.element_payloads()?;
        let nonzero: Vec<&Payload> = elems.iter().filter(|b| !self.is_zero_p(b)).collect();
        Ok(elems
            .iter()
            .filter(|a| {
                nonzero
                    .iter()
                    .any(|b| self.is_zero_p(&self.mul_p(a, b)) || self.is_zero_p(&self.mul_p(b, a)))
            })
            .map(|a| self.elem(a.clone()))
            .collect())
    }

    /// Whether `set` is an additive subgroup closed under left and right multiplication.
    pub fn is_two_sided_ideal(self: &Arc<Self>, set: &BTreeSet<RingElem>) -> Result<bool> {
        Ok(self.is_right_ideal(set)? && self.closed_under(set, |r, x| self.mul_p(r, x)))
    }

    /// Whether `set` is an additive subgroup closed under right multiplication.
    pub fn is_right_ideal(self: &Arc<Self>, set: &BTreeSet<RingElem>) -> Result<bool> {
        self.expect_finite("ideal checks")?;
        if !set.contains(&self.zero()) {
            return Ok(false);
        }
        let additive = set.iter().all(|a| set.iter().all(|b| set.contains(&a.add_unchecked(b))))
            && set.iter().all(|a| set.contains(&self.elem(self.neg_p(&a.payload))));
        Ok(additive && self.closed_under(set, |r, x| self.mul_p(x, r)))
    }

    fn closed_under(self: &Arc<Self>, set: &BTreeSet<RingElem>, op: impl Fn(&Payload, &Payload) -> Payload) -> bool {
        let gens = self.additive_generators().expect("finite");
        set.iter().all(|x| gens.iter().all(|r| set.contains(&self.elem(op(&r.payload, &x.payload)))))
    }

    /// Projection `A -> A/I` when `self` is an ideal quotient of `source`.
    pub fn project(self: &Arc<Self>, a: &RingElem) -> Result<RingElem> {
        match &self.kind {
            RingKind::IdealQuotient { parent, .. } if parent.same(&a.ring) => {
                Ok(self.elem(Payload::Coeffs(self.canon(a.payload.coeffs().to_vec()))))
            }
            _ => Err(AlgebraError::DomainMismatch(format!("{} is not a quotient of {}", self.describe(), a.ring.describe()))),
        }
    }

    pub(crate) fn owns(self: &Arc<Self>, a: &RingElem) -> Result<()> {
        if self.same(&a.ring) {
            Ok(())
        } else {
            Err(AlgebraError::DomainMismatch(format!("{a} belongs to {}, not {}", a.ring.describe(), self.describe())))
        }
    }

    pub fn parse(self: &Arc<Self>, input: &str) -> Result<RingElem> {
        text::parse(self, input).map(|p| self.elem(p))
    }

    pub fn format(&self, a: &Payload) -> String {
        text::format(self, a)
    }
}

fn exponent_vectors(vars: usize, total: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if prefix.len() + 1 == vars {
        let mut v = prefix.clone();
        v.push(total);
        out.push(v);
        return;
    }
    for e in 0..=total {
        prefix.push(e);
        exponent_vectors(vars, total - e, prefix, out);
        prefix.pop();
    }
}

fn check_modulus(p: u64, mut modulus: Vec<u64>) -> Result<Vec<u64>> {
    if !is_prime(p) {
        return Err(AlgebraError::InvalidParameter(format!("{p} is not prime")));
    }
    for c in modulus.iter_mut() {
        *c %= p;
    }
    while modulus.len() > 1 && modulus.last() == Some(&0) {
        modulus.pop();
    }
    if modulus.len() < 2 || modulus.last() != Some(&1) {
        return Err(AlgebraError::InvalidParameter(format!("modulus {modulus:?} must be monic of degree >= 1")));
    }
    Ok(modulus)
}

/// `a * b mod (modulus, q)` for coefficient vectors of length `deg(modulus)`.
fn poly_mul_mod(a: &[u64], b: &[u64], modulus: &[u64], q: u64) -> Vec<u64> {
    let d = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * d.max(1) - 1];
    for (i, &x) in a.iter().enumerate().filter(|(_, v)| **v != 0) {
        for (j, &y) in b.iter().enumerate().filter(|(_, v)| **v != 0) {
            prod[i + j] = (prod[i + j] + mulmod(x, y, q)) % q;
        }
    }
    reduce_poly(&mut prod, modulus, q);
    prod.truncate(d);
    prod.resize(d, 0);
    prod
}

fn reduce_poly(prod: &mut [u64], modulus: &[u64], q: u64) {
    let d = modulus.len() - 1;
    for top in (d..prod.len()).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        for (j, &m) in modulus.iter().enumerate().take(d) {
            let k = top - d + j;
            prod[k] = (prod[k] + q - mulmod(c, m, q)) % q;
        }
        prod[top] = 0;
    }
}

/// Remainder of `a` modulo the monic `m` over `F_p`.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    if r.len() >= m.len() {
        reduce_poly(&mut r, m, p);
    }
    r.truncate(m.len() - 1);
    r
}

fn is_irreducible(p: u64, modulus: &[u64]) -> bool {
    let d = modulus.len() - 1;
    for fd in 1..=d / 2 {
        // every monic polynomial of degree fd
        let count = p.pow(fd as u32);
        for idx in 0..count {
            let mut f = vec![0u64; fd + 1];
            let mut k = idx;
            for slot in f.iter_mut().take(fd) {
                *slot = k % p;
                k /= p;
            }
            f[fd] = 1;
            if poly_rem(modulus, &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn least_irreducible(p: u64, degree: usize) -> Option<Vec<u64>> {
    let count = p.checked_pow(degree as u32)?;
    if count > 1_000_000 {
        return None;
    }
    // canonical order: constant term is most significant
    let mut candidates: Vec<Vec<u64>> = (0..count)
        .map(|mut k| {
            let mut f = vec![0u64; degree + 1];
            for slot in f.iter_mut().take(degree) {
                *slot = k % p;
                k /= p;
            }
            f[degree] = 1;
            f
        })
        .collect();
    candidates.sort();
    candidates.into_iter().find(|f| is_irreducible(p, f))
}

/// An element of a [`Ring`], in canonical form.
#[derive(Clone)]
pub struct RingElem {
    ring: Arc<Ring>,
    payload: Payload,
}

impl RingElem {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn payload(&self) -> &Payload {
        &self.payload
    }

    /// Coefficient vector of a finite-ring element.
    pub fn coeffs(&self) -> Option<&[u64]> {
        match &self.payload {
            Payload::Coeffs(c) => Some(c),
            Payload::Laurent(_) => None,
        }
    }

    /// Terms of a Laurent element.
    pub fn laurent_terms(&self) -> Option<&LaurentPoly> {
        match &self.payload {
            Payload::Laurent(p) => Some(p),
            Payload::Coeffs(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.ring.is_zero_p(&self.payload)
    }

    pub fn is_one(&self) -> bool {
        self.payload == self.ring.one_p()
    }

    fn check(&self, other: &RingElem) -> Result<()> {
        if self.ring.same(&other.ring) {
            Ok(())
        } else {
            Err(AlgebraError::DomainMismatch(format!(
                "{} and {} live in different rings",
                self.ring.describe(),
                other.ring.describe()
            )))
        }
    }

    pub fn add(&self, other: &RingElem) -> Result<RingElem> {
        self.check(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn sub(&self, other: &RingElem) -> Result<RingElem> {
        self.check(other)?;
        Ok(self.ring.elem(self.ring.sub_p(&self.payload, &other.payload)))
    }

    pub fn mul(&self, other: &RingElem) -> Result<RingElem> {
        self.check(other)?;
        Ok(self.ring.elem(self.ring.mul_p(&self.payload, &other.payload)))
    }

    pub fn neg(&self) -> RingElem {
        self.ring.elem(self.ring.neg_p(&self.payload))
    }

    pub fn pow(&self, k: u64) -> RingElem {
        self.ring.elem(self.ring.pow_p(&self.payload, k))
    }

    pub(crate) fn add_unchecked(&self, other: &RingElem) -> RingElem {
        self.ring.elem(self.ring.add_p(&self.payload, &other.payload))
    }
}

impl PartialEq for RingElem {
    fn eq(&self, other: &Self) -> bool {
        self.payload == other.payload && self.ring.same(&other.ring)
    }
}

impl Eq for RingElem {}

impl Hash for RingElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.payload.hash(state);
    }
}

impl PartialOrd for RingElem {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RingElem {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.payload.cmp(&other.payload)
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ring.format(&self.payload))
    }
}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.ring.describe())
    }
}
