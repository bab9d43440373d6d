//! Crossed systems `{A, G, σ, α}`: assembly, validation, fixed ring and the
//! kernel of `σ`.

use std::borrow::Cow;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::group::{GPayload, Group, GroupElem};
use crate::limits::Limits;
use crate::ring::{Payload, Ring, RingAutomorphism, RingElem};

/// Witnesses kept per violated condition.
pub const MAX_WITNESSES: usize = 10;

/// How `σ` is supplied.
#[derive(Clone, Debug)]
pub enum SigmaSpec {
    /// `σ ≡ id`.
    Identity,
    /// Explicit values; group elements left out map to the identity.
    Table(Vec<(GroupElem, RingAutomorphism)>),
    /// `σ_n = σ_1^n`; for cyclic groups and the integers.
    Generator(RingAutomorphism),
}

/// How `α` is supplied.
#[derive(Clone, Debug)]
pub enum AlphaSpec {
    Trivial,
    /// Explicit values; pairs left out map to 1.
    Table(Vec<((GroupElem, GroupElem), RingElem)>),
}

/// The standard shapes of crossed system.
#[derive(Clone, Debug)]
pub enum StandardKind {
    GroupRing,
    TwistedGroupRing(AlphaSpec),
    ActionOnly(SigmaSpec),
    Full(SigmaSpec, AlphaSpec),
}

#[derive(Clone)]
enum SigmaData {
    /// Indexed by the canonical group element index.
    Table(Vec<RingAutomorphism>),
    /// Integers group: `σ_n = σ_1^n`.
    Generator(RingAutomorphism),
}

#[derive(Clone)]
enum AlphaData {
    Trivial,
    /// Row-major `|G| x |G|`.
    Table(Vec<Payload>),
}

/// The condition a validation witness violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    /// `α` takes values in `U(A)`.
    AlphaUnit,
    /// `σ_e = id`.
    SigmaIdentity,
    /// `σ_x(σ_y(a)) = α(x,y) σ_xy(a) α(x,y)^-1`.
    ConditionI,
    /// `α(x,y) α(xy,z) = σ_x(α(y,z)) α(x,yz)`.
    ConditionII,
    /// `α(x,e) = α(e,x) = 1`.
    ConditionIII,
}

impl Condition {
    pub fn label(self) -> &'static str {
        match self {
            Condition::AlphaUnit => "alpha-unit",
            Condition::SigmaIdentity => "sigma-identity",
            Condition::ConditionI => "condition-i",
            Condition::ConditionII => "condition-ii",
            Condition::ConditionIII => "condition-iii",
        }
    }
}

/// Violated conditions with up to [`MAX_WITNESSES`] witnesses each.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: BTreeMap<Condition, Vec<String>>,
    pub counts: BTreeMap<Condition, usize>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn record(&mut self, c: Condition, witness: impl FnOnce() -> String) {
        let n = self.counts.entry(c).or_insert(0);
        *n += 1;
        let list = self.violations.entry(c).or_default();
        if list.len() < MAX_WITNESSES {
            list.push(witness());
        }
    }

    pub fn violated(&self) -> Vec<Condition> {
        self.violations.keys().copied().collect()
    }

    pub fn witnesses(&self, c: Condition) -> &[String] {
        self.violations.get(&c).map(Vec::as_slice).unwrap_or(&[])
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return f.write_str("valid");
        }
        let parts: Vec<String> = self
            .violations
            .iter()
            .map(|(c, w)| format!("{} ({} violations, e.g. {})", c.label(), self.counts[c], w[0]))
            .collect();
        f.write_str(&parts.join("; "))
    }
}

/// Kernel of `σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SigmaKernel {
    Finite(BTreeSet<GroupElem>),
    /// `mZ` inside the integers; `m = 0` for the trivial kernel.
    Multiples(u64),
}

impl SigmaKernel {
    pub fn is_trivial(&self) -> bool {
        match self {
            SigmaKernel::Finite(s) => s.len() == 1,
            SigmaKernel::Multiples(m) => *m == 0,
        }
    }

    pub fn contains(&self, g: &GroupElem) -> bool {
        match self {
            SigmaKernel::Finite(s) => s.contains(g),
            SigmaKernel::Multiples(m) => match g.as_integer() {
                Some(n) if *m == 0 => n == BigInt::from(0),
                Some(n) => n % BigInt::from(*m) == BigInt::from(0),
                None => false,
            },
        }
    }
}

/// A crossed system `{A, G, σ, α}`.
#[derive(Clone)]
pub struct CrossedSystem {
    ring: Arc<Ring>,
    group: Arc<Group>,
    sigma: SigmaData,
    alpha: AlphaData,
}

impl fmt::Debug for CrossedSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CrossedSystem({})", self.describe())
    }
}

impl CrossedSystem {
    /// Assembles and validates; fails with the report when a condition is violated.
    pub fn new(ring: Arc<Ring>, group: Arc<Group>, sigma: SigmaSpec, alpha: AlphaSpec) -> Result<Arc<Self>> {
        let sys = Self::assemble(ring, group, sigma, alpha)?;
        let report = sys.verify()?;
        if !report.is_valid() {
            return Err(AlgebraError::Validation(report));
        }
        Ok(sys)
    }

    /// Assembles without checking conditions (i)-(iii). Shapes and owners are still checked.
    pub fn assemble(ring: Arc<Ring>, group: Arc<Group>, sigma: SigmaSpec, alpha: AlphaSpec) -> Result<Arc<Self>> {
        let sigma = if group.is_finite() {
            let els = group.elements()?;
            let mut table = vec![RingAutomorphism::identity(&ring); els.len()];
            match sigma {
                SigmaSpec::Identity => {}
                SigmaSpec::Table(entries) => {
                    for (g, phi) in entries {
                        group.owns(&g)?;
                        check_ring(&ring, phi.ring())?;
                        table[group.index_of_p(g.payload())] = phi;
                    }
                }
                SigmaSpec::Generator(phi) => {
                    check_ring(&ring, phi.ring())?;
                    if !matches!(group.kind(), crate::group::GroupKind::Cyclic { .. }) {
                        return Err(AlgebraError::InvalidParameter(format!(
                            "a single generating automorphism needs a cyclic group, got {}",
                            group.describe()
                        )));
                    }
                    for (i, g) in els.iter().enumerate() {
                        let n = g.as_integer().expect("cyclic residue");
                        table[i] = phi.power(&n)?;
                    }
                }
            }
            SigmaData::Table(table)
        } else {
            match sigma {
                SigmaSpec::Identity => SigmaData::Generator(RingAutomorphism::identity(&ring)),
                SigmaSpec::Generator(phi) => {
                    check_ring(&ring, phi.ring())?;
                    SigmaData::Generator(phi)
                }
                SigmaSpec::Table(_) => {
                    return Err(AlgebraError::Unsupported("the integers group takes σ as a single generator σ_1".into()))
                }
            }
        };
        let alpha = match alpha {
            AlphaSpec::Trivial => AlphaData::Trivial,
            AlphaSpec::Table(_) if !group.is_finite() => {
                return Err(AlgebraError::Unsupported("the integers group supports only the trivial cocycle".into()))
            }
            AlphaSpec::Table(entries) => {
                let n = group.order().expect("finite") as usize;
                let mut table = vec![ring.one_p(); n * n];
                for ((s, t), v) in entries {
                    group.owns(&s)?;
                    group.owns(&t)?;
                    ring.owns(&v)?;
                    table[group.index_of_p(s.payload()) * n + group.index_of_p(t.payload())] = v.payload().clone();
                }
                if table.iter().all(|v| *v == ring.one_p()) {
                    AlphaData::Trivial
                } else {
                    AlphaData::Table(table)
                }
            }
        };
        Ok(Arc::new(CrossedSystem { ring, group, sigma, alpha }))
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn describe(&self) -> String {
        let mut s = format!("{} x| {}", self.ring.describe(), self.group.describe());
        match &self.sigma {
            SigmaData::Generator(phi) if !phi.is_identity() => s.push_str(&format!(", sigma_1: {phi}")),
            SigmaData::Table(t) if t.iter().any(|p| !p.is_identity()) => s.push_str(", nontrivial sigma"),
            _ => {}
        }
        if !self.alpha_is_trivial() {
            s.push_str(", twisted");
        }
        s
    }

    pub fn is_finite(&self) -> bool {
        self.ring.is_finite() && self.group.is_finite()
    }

    // ---- σ and α ------------------------------------------------------------

    pub(crate) fn sigma_p(&self, g: &GPayload) -> Cow<'_, RingAutomorphism> {
        match &self.sigma {
            SigmaData::Table(t) => Cow::Borrowed(&t[self.group.index_of_p(g)]),
            SigmaData::Generator(phi) => match g {
                GPayload::Int(n) => Cow::Owned(phi.power(n).expect("power of a valid automorphism")),
                _ => unreachable!("integer payload expected"),
            },
        }
    }

    pub fn sigma(&self, g: &GroupElem) -> Result<RingAutomorphism> {
        self.group.owns(g)?;
        Ok(self.sigma_p(g.payload()).into_owned())
    }

    /// `σ_1` for the integers group.
    pub fn sigma_generator(&self) -> Option<&RingAutomorphism> {
        match &self.sigma {
            SigmaData::Generator(phi) => Some(phi),
            SigmaData::Table(_) => None,
        }
    }

    pub(crate) fn apply_sigma_p(&self, g: &GPayload, a: &Payload) -> Payload {
        self.sigma_p(g).apply_p(a)
    }

    pub(crate) fn alpha_p(&self, s: &GPayload, t: &GPayload) -> Payload {
        match &self.alpha {
            AlphaData::Trivial => self.ring.one_p(),
            AlphaData::Table(table) => {
                let n = self.group.order().expect("finite") as usize;
                table[self.group.index_of_p(s) * n + self.group.index_of_p(t)].clone()
            }
        }
    }

    pub fn alpha(&self, s: &GroupElem, t: &GroupElem) -> Result<RingElem> {
        self.group.owns(s)?;
        self.group.owns(t)?;
        Ok(self.ring.elem(self.alpha_p(s.payload(), t.payload())))
    }

    pub fn alpha_is_trivial(&self) -> bool {
        matches!(self.alpha, AlphaData::Trivial)
    }

    /// `α(s,t) = α(t,s)` for all pairs.
    pub fn alpha_is_symmetric(&self) -> Result<bool> {
        if self.alpha_is_trivial() {
            return Ok(true);
        }
        let els = self.group.element_payloads()?;
        Ok(els.iter().all(|s| els.iter().all(|t| self.alpha_p(s, t) == self.alpha_p(t, s))))
    }

    /// The first `s` with `σ_s != id`, or `None` when `σ ≡ id`.
    pub fn nontrivial_sigma(&self) -> Result<Option<GroupElem>> {
        match &self.sigma {
            SigmaData::Generator(phi) => {
                Ok(if phi.is_identity() { None } else { Some(self.group.elem(GPayload::Int(BigInt::from(1)))) })
            }
            SigmaData::Table(t) => {
                let els = self.group.element_payloads()?;
                Ok(t.iter().position(|p| !p.is_identity()).map(|i| self.group.elem(els[i].clone())))
            }
        }
    }

    /// Whether `σ_x ∘ σ_y = σ_xy` for all pairs.
    pub fn sigma_is_homomorphism(&self) -> Result<bool> {
        let SigmaData::Table(t) = &self.sigma else {
            return Ok(true);
        };
        let els = self.group.element_payloads()?;
        for (i, x) in els.iter().enumerate() {
            for (j, y) in els.iter().enumerate() {
                let xy = self.group.index_of_p(&self.group.mul_p(x, y));
                if t[i].compose(&t[j])? != t[xy] {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    // ---- validation ---------------------------------------------------------

    /// Exhaustive check of conditions (i)-(iii), unit values of `α` and `σ_e = id`.
    pub fn verify(&self) -> Result<ValidationReport> {
        let mut report = ValidationReport::default();
        if !self.group.is_finite() {
            // σ_n = σ_1^n and α ≡ 1 satisfy every condition by construction
            return Ok(report);
        }
        let ring = &self.ring;
        let group = &self.group;
        let els = group.element_payloads()?;
        let e = group.identity_p();
        let fmt_g = |g: &GPayload| group.format(g);
        let fmt_r = |a: &Payload| ring.format(a);

        if !self.sigma_p(&e).is_identity() {
            report.record(Condition::SigmaIdentity, || format!("σ_e = {} is not the identity", self.sigma_p(&e)));
        }
        for s in els {
            for t in els {
                let a = self.alpha_p(s, t);
                if !ring.is_unit(&ring.elem(a.clone()))? {
                    report.record(Condition::AlphaUnit, || {
                        format!("α({},{}) = {} is not a unit", fmt_g(s), fmt_g(t), fmt_r(&a))
                    });
                }
            }
        }
        let one = ring.one_p();
        for x in els {
            for (which, a) in [("α(x,e)", self.alpha_p(x, &e)), ("α(e,x)", self.alpha_p(&e, x))] {
                if a != one {
                    report.record(Condition::ConditionIII, || {
                        format!("{} = {} != 1 at x = {}", which.replace('x', &fmt_g(x)), fmt_r(&a), fmt_g(x))
                    });
                }
            }
        }

        // (i) in the inverse-free form σ_x(σ_y(a)) α(x,y) = α(x,y) σ_xy(a); both sides
        // are additive in a, so a basis suffices once exhaustion is too large.
        let probes: Vec<Payload> = if !ring.is_finite() {
            ring.algebra_generators().iter().map(|g| g.payload().clone()).collect()
        } else {
            let n = els.len() as u64;
            let size = ring.size().unwrap_or(u64::MAX);
            if n.saturating_mul(n).saturating_mul(size) <= Limits::current().max_product {
                ring.element_payloads()?.to_vec()
            } else {
                ring.additive_generators()?.iter().map(|g| g.payload().clone()).collect()
            }
        };
        for x in els {
            let sx = self.sigma_p(x);
            for y in els {
                let sy = self.sigma_p(y);
                let xy = group.mul_p(x, y);
                let sxy = self.sigma_p(&xy);
                let al = self.alpha_p(x, y);
                for a in &probes {
                    let lhs = ring.mul_p(&sx.apply_p(&sy.apply_p(a)), &al);
                    let rhs = ring.mul_p(&al, &sxy.apply_p(a));
                    if lhs != rhs {
                        report.record(Condition::ConditionI, || {
                            format!(
                                "x = {}, y = {}, a = {}: σ_x(σ_y(a)) α(x,y) = {} but α(x,y) σ_xy(a) = {}",
                                fmt_g(x),
                                fmt_g(y),
                                fmt_r(a),
                                fmt_r(&lhs),
                                fmt_r(&rhs)
                            )
                        });
                    }
                }
            }
        }

        if !self.alpha_is_trivial() {
            for x in els {
                let sx = self.sigma_p(x);
                for y in els {
                    let xy = group.mul_p(x, y);
                    for z in els {
                        let yz = group.mul_p(y, z);
                        let lhs = ring.mul_p(&self.alpha_p(x, y), &self.alpha_p(&xy, z));
                        let rhs = ring.mul_p(&sx.apply_p(&self.alpha_p(y, z)), &self.alpha_p(x, &yz));
                        if lhs != rhs {
                            report.record(Condition::ConditionII, || {
                                format!(
                                    "x = {}, y = {}, z = {}: α(x,y) α(xy,z) = {} but σ_x(α(y,z)) α(x,yz) = {}",
                                    fmt_g(x),
                                    fmt_g(y),
                                    fmt_g(z),
                                    fmt_r(&lhs),
                                    fmt_r(&rhs)
                                )
                            });
                        }
                    }
                }
            }
        }
        Ok(report)
    }

    // ---- derived data -------------------------------------------------------

    /// `A^G`, by enumeration of the ring.
    pub fn fixed_ring(&self) -> Result<BTreeSet<RingElem>> {
        let autos: Vec<RingAutomorphism> = match &self.sigma {
            SigmaData::Generator(phi) => vec![phi.clone()],
            SigmaData::Table(t) => t.clone(),
        };
        Ok(self
            .ring
            .element_payloads()?
            .iter()
            .filter(|a| autos.iter().all(|phi| phi.apply_p(a) == **a))
            .map(|a| self.ring.elem(a.clone()))
            .collect())
    }

    /// Whether `a` is fixed by every `σ_s`.
    pub fn is_fixed(&self, a: &RingElem) -> Result<bool> {
        self.ring.owns(a)?;
        Ok(match &self.sigma {
            SigmaData::Generator(phi) => phi.apply_p(a.payload()) == *a.payload(),
            SigmaData::Table(t) => t.iter().all(|phi| phi.apply_p(a.payload()) == *a.payload()),
        })
    }

    /// `σ^{-1}(id)`: an explicit set, or `mZ` for the integers.
    pub fn sigma_kernel(&self) -> Result<SigmaKernel> {
        match &self.sigma {
            SigmaData::Generator(phi) => Ok(SigmaKernel::Multiples(phi.order().unwrap_or(0))),
            SigmaData::Table(t) => {
                let els = self.group.element_payloads()?;
                Ok(SigmaKernel::Finite(
                    els.iter()
                        .zip(t)
                        .filter(|(_, phi)| phi.is_identity())
                        .map(|(g, _)| self.group.elem(g.clone()))
                        .collect(),
                ))
            }
        }
    }
}

fn check_ring(ring: &Arc<Ring>, other: &Arc<Ring>) -> Result<()> {
    if **ring == **other {
        Ok(())
    } else {
        Err(AlgebraError::DomainMismatch(format!("automorphism of {} used over {}", other.describe(), ring.describe())))
    }
}

/// Builds one of the standard shapes and validates it.
pub fn build_standard(kind: StandardKind, ring: Arc<Ring>, group: Arc<Group>) -> Result<Arc<CrossedSystem>> {
    let (sigma, alpha) = match kind {
        StandardKind::GroupRing => (SigmaSpec::Identity, AlphaSpec::Trivial),
        StandardKind::TwistedGroupRing(a) => (SigmaSpec::Identity, a),
        StandardKind::ActionOnly(s) => (s, AlphaSpec::Trivial),
        StandardKind::Full(s, a) => (s, a),
    };
    CrossedSystem::new(ring, group, sigma, alpha)
}
