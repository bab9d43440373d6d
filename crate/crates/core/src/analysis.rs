//! Centers, commutants, commutativity and maximal commutativity.
//!
//! Each query has a characterization path working degree by degree and a
//! brute-force path working from the definitions; the `*_bruteforce`
//! functions exist so the two can be compared.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{AlgebraError, Result};
use crate::group::{GPayload, GroupElem};
use crate::limits;
use crate::product::CrossedElem;
use crate::ring::{Payload, RingElem};
use crate::system::{CrossedSystem, SigmaKernel};

/// The per-degree coefficient sets `R_s = {r : r σ_s(a) = a r for all a}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CommutantConstraints {
    /// Finite group over a finite ring: every `R_s` explicitly.
    Finite(BTreeMap<GroupElem, BTreeSet<RingElem>>),
    /// Integers over a finite ring: `R_s` depends on `s mod period` only.
    Periodic { period: u64, classes: BTreeMap<u64, BTreeSet<RingElem>> },
    /// Integral domain: `R_s = A` on the kernel of `σ`, `{0}` elsewhere.
    KernelDichotomy(SigmaKernel),
}

/// Membership of `r` in a degree's constraint set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DegreeSet {
    Explicit(BTreeSet<RingElem>),
    Whole,
    Zero,
}

impl CommutantConstraints {
    pub fn degree(&self, s: &GroupElem) -> DegreeSet {
        match self {
            CommutantConstraints::Finite(m) => DegreeSet::Explicit(m[s].clone()),
            CommutantConstraints::Periodic { period, classes } => {
                let n = s.as_integer().expect("integer degree");
                let r = ((n % BigInt::from(*period)) + BigInt::from(*period)) % BigInt::from(*period);
                DegreeSet::Explicit(classes[&r.to_u64().expect("residue")].clone())
            }
            CommutantConstraints::KernelDichotomy(k) => {
                if k.contains(s) {
                    DegreeSet::Whole
                } else {
                    DegreeSet::Zero
                }
            }
        }
    }
}

fn satisfies_commutant(sys: &CrossedSystem, s: &GPayload, r: &Payload, probes: &[Payload]) -> bool {
    let ring = sys.ring();
    let sigma = sys.sigma_p(s);
    probes.iter().all(|a| ring.mul_p(r, &sigma.apply_p(a)) == ring.mul_p(a, r))
}

fn finite_probes(sys: &CrossedSystem) -> Result<Vec<Payload>> {
    Ok(sys.ring().additive_generators()?.iter().map(|g| g.payload().clone()).collect())
}

fn r_set(sys: &CrossedSystem, s: &GPayload) -> Result<BTreeSet<RingElem>> {
    let ring = sys.ring();
    let probes = finite_probes(sys)?;
    Ok(ring
        .element_payloads()?
        .iter()
        .filter(|r| satisfies_commutant(sys, s, r, &probes))
        .map(|r| ring.elem(r.clone()))
        .collect())
}

/// `R_s` for every degree.
pub fn commutant_constraints(sys: &Arc<CrossedSystem>) -> Result<CommutantConstraints> {
    let ring = sys.ring();
    if !ring.is_finite() {
        if !ring.is_integral_domain()? {
            return Err(AlgebraError::Unsupported(format!("no finite description of R_s over {}", ring.describe())));
        }
        return Ok(CommutantConstraints::KernelDichotomy(sys.sigma_kernel()?));
    }
    if sys.group().is_finite() {
        let mut out = BTreeMap::new();
        for s in sys.group().elements()? {
            out.insert(s.clone(), r_set(sys, s.payload())?);
        }
        return Ok(CommutantConstraints::Finite(out));
    }
    // σ_1 has finite order on a finite ring, so R_s is periodic in s
    let period = match sys.sigma_kernel()? {
        SigmaKernel::Multiples(m) if m > 0 => m,
        _ => {
            return Err(AlgebraError::Unsupported(
                "integers group with a non-domain ring and σ_1 of infinite order".into(),
            ))
        }
    };
    let mut classes = BTreeMap::new();
    for c in 0..period {
        classes.insert(c, r_set(sys, &GPayload::Int(BigInt::from(c)))?);
    }
    Ok(CommutantConstraints::Periodic { period, classes })
}

/// `R_s` from the kernel dichotomy, valid for integral domains.
pub fn commutant_constraints_domain(sys: &Arc<CrossedSystem>) -> Result<CommutantConstraints> {
    if !sys.ring().is_integral_domain()? {
        return Err(AlgebraError::hypothesis("A is an integral domain", sys.ring().describe()));
    }
    Ok(CommutantConstraints::KernelDichotomy(sys.sigma_kernel()?))
}

/// Whether `u` commutes with every `aē`, coefficient by coefficient.
pub fn commutant_member(u: &CrossedElem) -> Result<bool> {
    let sys = u.system();
    let ring = sys.ring();
    if !ring.is_finite() {
        let kernel = sys.sigma_kernel()?;
        if ring.is_integral_domain()? {
            return Ok(u.support().iter().all(|s| kernel.contains(s)));
        }
        return Err(AlgebraError::Unsupported("commutant membership over an infinite non-domain".into()));
    }
    let probes = finite_probes(sys)?;
    Ok(u.raw_terms().iter().all(|(s, r)| satisfies_commutant(sys, s, r, &probes)))
}

/// `u a = a u` for every `a ∈ Ã`, enumerating `A`.
pub fn commutant_member_bruteforce(u: &CrossedElem) -> Result<bool> {
    let sys = u.system();
    for a in sys.ring().elements()? {
        if !u.commutes(&CrossedElem::embed(&a, sys)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn product_of_sets(sys: &Arc<CrossedSystem>, per_degree: &[(GPayload, Vec<Payload>)]) -> Result<Vec<CrossedElem>> {
    let total = per_degree.iter().try_fold(1u64, |acc, (_, v)| acc.checked_mul(v.len() as u64));
    let limit = limits::Limits::current().max_product;
    match total {
        Some(n) if n <= limit => {}
        _ => {
            return Err(AlgebraError::SizeGuard {
                what: "candidate set".into(),
                size: total.map(|n| n.to_string()).unwrap_or_else(|| "overflow".into()),
                limit,
            })
        }
    }
    let mut out = vec![BTreeMap::new()];
    for (s, vals) in per_degree {
        let mut next = Vec::with_capacity(out.len() * vals.len());
        for partial in &out {
            for v in vals {
                let mut m: BTreeMap<GPayload, Payload> = partial.clone();
                m.insert(s.clone(), v.clone());
                next.push(m);
            }
        }
        out = next;
    }
    Ok(out.into_iter().map(|m| CrossedElem::from_raw(sys, m)).collect())
}

/// `Comm(Ã) = ⊕ R_s s̄`, enumerated.
pub fn commutant_elements(sys: &Arc<CrossedSystem>) -> Result<Vec<CrossedElem>> {
    let CommutantConstraints::Finite(m) = commutant_constraints(sys)? else {
        return Err(AlgebraError::UnsupportedEnumeration("the commutant is infinite".into()));
    };
    let per: Vec<(GPayload, Vec<Payload>)> =
        m.iter().map(|(s, set)| (s.payload().clone(), set.iter().map(|r| r.payload().clone()).collect())).collect();
    let mut v = product_of_sets(sys, &per)?;
    v.sort();
    Ok(v)
}

/// `Comm(Ã)` from the definition, over every element of the crossed product.
pub fn commutant_bruteforce(sys: &Arc<CrossedSystem>) -> Result<Vec<CrossedElem>> {
    let base: Vec<CrossedElem> =
        sys.ring().elements()?.iter().map(|a| CrossedElem::embed(a, sys)).collect::<Result<_>>()?;
    let mut v: Vec<CrossedElem> = CrossedElem::enumerate(sys)?
        .into_iter()
        .filter(|u| base.iter().all(|a| u.commutes(a).expect("same system")))
        .collect();
    v.sort();
    Ok(v)
}

// ---- center ----------------------------------------------------------------

/// The degree-mixing center condition against `1s̄`:
/// `r_{ts^-1} α(ts^-1, s) = σ_s(r_{s^-1 t}) α(s, s^-1 t)` for all `t`.
fn mixing_condition(u: &CrossedElem, s: &GPayload) -> bool {
    let sys = u.system();
    let (ring, group) = (sys.ring(), sys.group());
    let terms = u.raw_terms();
    let zero = ring.zero_p();
    let coeff = |g: &GPayload| terms.get(g).unwrap_or(&zero).clone();
    let s_inv = group.inv_p(s);
    let mut degrees: BTreeSet<GPayload> = BTreeSet::new();
    for g in terms.keys() {
        degrees.insert(group.mul_p(g, s));
        degrees.insert(group.mul_p(s, g));
    }
    degrees.iter().all(|t| {
        let left_deg = group.mul_p(t, &s_inv);
        let right_deg = group.mul_p(&s_inv, t);
        let lhs = ring.mul_p(&coeff(&left_deg), &sys.alpha_p(&left_deg, s));
        let rhs = ring.mul_p(&sys.apply_sigma_p(s, &coeff(&right_deg)), &sys.alpha_p(s, &right_deg));
        lhs == rhs
    })
}

/// Center membership from the per-degree description.
///
/// Over the integers (abelian, trivial cocycle) the mixing condition reads
/// `r_g = σ_s(r_g)` for every `s`, i.e. every coefficient lies in `A^G`.
pub fn center_member(u: &CrossedElem) -> Result<bool> {
    let sys = u.system();
    if !commutant_member(u)? {
        return Ok(false);
    }
    if !sys.group().is_finite() {
        let phi = sys.sigma_generator().expect("integers carry a generator");
        return Ok(u.raw_terms().values().all(|r| phi.apply_p(r) == *r));
    }
    Ok(sys.group().element_payloads()?.iter().all(|s| mixing_condition(u, s)))
}

/// Center membership by commuting with every single-term element `a s̄`.
pub fn center_member_bruteforce(u: &CrossedElem) -> Result<bool> {
    let sys = u.system();
    for m in CrossedElem::single_terms(sys, &sys.ring().elements()?)? {
        if !u.commutes(&m)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Z(A ⋊ G)` from the characterization: candidates from `⊕ R_s s̄`, filtered
/// by the mixing condition.
pub fn center_compute(sys: &Arc<CrossedSystem>) -> Result<Vec<CrossedElem>> {
    let els = sys.group().element_payloads()?.to_vec();
    let mut v: Vec<CrossedElem> = commutant_elements(sys)?
        .into_iter()
        .filter(|u| els.iter().all(|s| mixing_condition(u, s)))
        .collect();
    v.sort();
    Ok(v)
}

/// `Z(A ⋊ G)` by enumerating every element and testing it against all single terms.
pub fn center_bruteforce(sys: &Arc<CrossedSystem>) -> Result<Vec<CrossedElem>> {
    let singles = CrossedElem::single_terms(sys, &sys.ring().elements()?)?;
    let mut v: Vec<CrossedElem> = CrossedElem::enumerate(sys)?
        .into_iter()
        .filter(|u| singles.iter().all(|m| u.commutes(m).expect("same system")))
        .collect();
    v.sort();
    Ok(v)
}

// ---- commutativity -----------------------------------------------------------

/// Which of the four commutativity conditions fails first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutativityVerdict {
    pub commutative: bool,
    /// `(condition number 1..=4, witness)`.
    pub failure: Option<(u8, String)>,
}

/// Commutative iff `A` is commutative, `σ ≡ id`, `G` is abelian and `α` is symmetric.
pub fn is_commutative(sys: &Arc<CrossedSystem>) -> Result<CommutativityVerdict> {
    let ring = sys.ring();
    let fail = |n: u8, w: String| Ok(CommutativityVerdict { commutative: false, failure: Some((n, w)) });
    if ring.is_finite() {
        let gens = ring.additive_generators()?;
        for a in &gens {
            for b in &gens {
                if a.mul(b)? != b.mul(a)? {
                    return fail(1, format!("A is not commutative: {a} * {b} != {b} * {a}"));
                }
            }
        }
    }
    if let Some(s) = sys.nontrivial_sigma()? {
        return fail(2, format!("σ_{s} = {} is not the identity", sys.sigma(&s)?));
    }
    let group = sys.group();
    if group.is_finite() {
        let els = group.elements()?;
        for x in &els {
            for y in &els {
                if x.mul(y)? != y.mul(x)? {
                    return fail(3, format!("G is not abelian: {x} * {y} != {y} * {x}"));
                }
            }
        }
        for x in &els {
            for y in &els {
                if sys.alpha(x, y)? != sys.alpha(y, x)? {
                    return fail(4, format!("α is not symmetric: α({x},{y}) = {} but α({y},{x}) = {}", sys.alpha(x, y)?, sys.alpha(y, x)?));
                }
            }
        }
    }
    Ok(CommutativityVerdict { commutative: true, failure: None })
}

/// Commutativity by testing every pair of single-term elements.
pub fn is_commutative_bruteforce(sys: &Arc<CrossedSystem>) -> Result<bool> {
    let singles = CrossedElem::single_terms(sys, &sys.ring().elements()?)?;
    for u in &singles {
        for v in &singles {
            if !u.commutes(v)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

// ---- maximal commutativity ---------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MaximalMethod {
    /// Integral domain: maximal iff `σ` has trivial kernel.
    Kernel,
    /// `R_s = {0}` for every `s != e`, by enumeration.
    Enumeration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalVerdict {
    pub maximal: bool,
    /// The least degree `s != e` with a nonzero `r_s ∈ R_s`, and the least such `r_s`.
    pub witness: Option<(GroupElem, RingElem)>,
    pub method: MaximalMethod,
}

/// Whether `Ã` is maximal commutative, with the fast path for integral domains.
pub fn is_maximal_commutative(sys: &Arc<CrossedSystem>) -> Result<MaximalVerdict> {
    let ring = sys.ring();
    if !ring.is_commutative() {
        return Err(AlgebraError::Unsupported(format!(
            "maximal commutativity is decided over commutative rings only; {} is not",
            ring.describe()
        )));
    }
    if ring.is_integral_domain()? {
        return maximal_by_kernel(sys);
    }
    if !sys.group().is_finite() {
        let CommutantConstraints::Periodic { period, classes } = commutant_constraints(sys)? else {
            unreachable!("finite non-domain ring over the integers");
        };
        // class 0 is R_period = A, so a witness always exists by s = period
        for s in 1..=period {
            if let Some(r) = classes[&(s % period)].iter().find(|r| !r.is_zero()) {
                let g = sys.group().elem(GPayload::Int(BigInt::from(s)));
                return Ok(MaximalVerdict { maximal: false, witness: Some((g, r.clone())), method: MaximalMethod::Enumeration });
            }
        }
        unreachable!("R_period = A is nonzero");
    }
    maximal_by_enumeration(sys)
}

/// Integral-domain criterion: maximal iff `σ_g != id` for every `g != e`.
pub fn maximal_by_kernel(sys: &Arc<CrossedSystem>) -> Result<MaximalVerdict> {
    let ring = sys.ring();
    if !ring.is_integral_domain()? {
        return Err(AlgebraError::hypothesis("A is an integral domain", ring.describe()));
    }
    let witness = match sys.sigma_kernel()? {
        SigmaKernel::Multiples(0) => None,
        SigmaKernel::Multiples(m) => Some(sys.group().elem(GPayload::Int(BigInt::from(m)))),
        SigmaKernel::Finite(set) => set.into_iter().find(|g| !g.is_identity()),
    };
    Ok(MaximalVerdict {
        maximal: witness.is_none(),
        witness: witness.map(|g| (g, ring.one())),
        method: MaximalMethod::Kernel,
    })
}

/// General criterion: maximal iff `R_s = {0}` for every `s != e`.
pub fn maximal_by_enumeration(sys: &Arc<CrossedSystem>) -> Result<MaximalVerdict> {
    if !sys.ring().is_commutative() {
        return Err(AlgebraError::Unsupported("maximal commutativity needs a commutative ring".into()));
    }
    let group = sys.group();
    for s in group.elements()? {
        if s.is_identity() {
            continue;
        }
        if let Some(r) = r_set(sys, s.payload())?.into_iter().find(|r| !r.is_zero()) {
            return Ok(MaximalVerdict { maximal: false, witness: Some((s, r)), method: MaximalMethod::Enumeration });
        }
    }
    Ok(MaximalVerdict { maximal: true, witness: None, method: MaximalMethod::Enumeration })
}

// ---- commutativity of the commutant -------------------------------------------

#[derive(Clone, Debug)]
pub struct CommutantCommutativity {
    pub commutative: bool,
    /// `A` commutative, `G` abelian and `α` symmetric.
    pub hypotheses_hold: bool,
    pub witness: Option<(CrossedElem, CrossedElem)>,
}

/// Whether `Comm(Ã)` is commutative, checked on its spanning single terms `r s̄`, `r ∈ R_s`.
pub fn commutant_is_commutative(sys: &Arc<CrossedSystem>) -> Result<CommutantCommutativity> {
    let hypotheses_hold =
        sys.ring().is_commutative() && sys.group().is_abelian()? && sys.alpha_is_symmetric()?;
    let CommutantConstraints::Finite(m) = commutant_constraints(sys)? else {
        return Err(AlgebraError::UnsupportedEnumeration("the commutant is infinite".into()));
    };
    let mut singles = Vec::new();
    for (s, set) in &m {
        for r in set.iter().filter(|r| !r.is_zero()) {
            singles.push(CrossedElem::monomial(sys, r, s)?);
        }
    }
    for u in &singles {
        for v in &singles {
            if !u.commutes(v)? {
                return Ok(CommutantCommutativity {
                    commutative: false,
                    hypotheses_hold,
                    witness: Some((u.clone(), v.clone())),
                });
            }
        }
    }
    Ok(CommutantCommutativity { commutative: true, hypotheses_hold, witness: None })
}

/// Degrees whose constraint set is nonzero, as text.
pub fn nonzero_degrees(c: &CommutantConstraints) -> Vec<String> {
    match c {
        CommutantConstraints::Finite(m) => {
            m.iter().filter(|(_, s)| s.len() > 1).map(|(g, _)| g.to_string()).collect()
        }
        CommutantConstraints::Periodic { period, classes } => classes
            .iter()
            .filter(|(_, s)| s.len() > 1)
            .map(|(c, _)| format!("{c} mod {period}"))
            .collect(),
        CommutantConstraints::KernelDichotomy(SigmaKernel::Multiples(m)) => {
            vec![if *m == 0 { "0".to_string() } else { format!("{m}Z") }]
        }
        CommutantConstraints::KernelDichotomy(SigmaKernel::Finite(s)) => s.iter().map(|g| g.to_string()).collect(),
    }
}
