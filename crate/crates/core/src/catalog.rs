//! Parameterized example systems with expected-property annotations.
//!
//! Complex-coefficient examples are modeled over `F_p` (finite) or over the
//! rational Laurent ring (symbolic); every entry records its model in `model`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{AlgebraError, Result};
use crate::group::{GPayload, Group, GroupElem};
use crate::ring::{is_prime, Ring, RingAutomorphism, RingElem};
use crate::system::{build_standard, AlphaSpec, Condition, CrossedSystem, SigmaSpec, StandardKind};

/// Annotations re-derived by the test suite.
#[derive(Clone, Debug, Default)]
pub struct Expected {
    pub maximal_commutative: Option<bool>,
    /// `(s, r)` with `s != e` and `0 != r ∈ R_s`, least in canonical order.
    pub maximal_witness: Option<(GroupElem, RingElem)>,
    pub commutative: Option<bool>,
    /// `Comm(Ã)` is the whole crossed product.
    pub commutant_is_whole: Option<bool>,
    /// `(c, d, g)` for the zero-divisor obstruction, when its hypotheses hold.
    pub obstruction: Option<(RingElem, RingElem, GroupElem)>,
    /// Ideals `<x> ⊃ <x^2> ⊃ ...` of `A`, to be lifted.
    pub ideal_chain: Vec<BTreeSet<RingElem>>,
    /// `(n, Sep^n(X))` for `n = 1..ord(π)-1`.
    pub separation_sets: Vec<(u64, BTreeSet<usize>)>,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub system: Arc<CrossedSystem>,
    pub expected: Expected,
    pub model: String,
}

impl CatalogEntry {
    fn new(name: &str, params: &[(&str, String)], system: Arc<CrossedSystem>, model: impl Into<String>) -> Self {
        CatalogEntry {
            name: name.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            system,
            expected: Expected::default(),
            model: model.into(),
        }
    }

    /// `name(k=v, ...)`.
    pub fn label(&self) -> String {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{}({})", self.name, params.join(", "))
    }
}

fn bad(msg: impl Into<String>) -> AlgebraError {
    AlgebraError::InvalidParameter(msg.into())
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn power_ideal(ring: &Arc<Ring>, j: usize) -> Result<BTreeSet<RingElem>> {
    let xj = ring.parse("x")?.pow(j as u64);
    let mut out = BTreeSet::new();
    for a in ring.elements()? {
        out.insert(a.mul(&xj)?);
    }
    Ok(out)
}

// ---- quantum tori ---------------------------------------------------------------

/// `F_p[x]/(x^m) ⋊ C_k` with `σ_n(P(x)) = P(q^n x)` and `α ≡ 1`.
pub fn truncated_quantum_torus(p: u64, q: u64, m: usize, k: u64) -> Result<CatalogEntry> {
    if !is_prime(p) {
        return Err(bad(format!("p = {p} is not prime")));
    }
    if q % p == 0 {
        return Err(bad(format!("q = {q} is not a unit of F_{p}")));
    }
    if m < 2 {
        return Err(bad(format!("m = {m} must be at least 2")));
    }
    if k < 2 {
        return Err(bad("the group must be nontrivial (k >= 2)"));
    }
    if mod_pow(q, k, p) != 1 {
        return Err(bad(format!("q^k = {q}^{k} != 1 in F_{p}")));
    }
    let ring = Ring::truncated_polynomial(p, m)?;
    let group = Group::cyclic(k)?;
    let sigma = RingAutomorphism::scaling(&ring, &ring.from_int(q as i64))?;
    let sys = build_standard(StandardKind::ActionOnly(SigmaSpec::Generator(sigma)), ring.clone(), group.clone())?;
    let params = [("p", p.to_string()), ("q", q.to_string()), ("m", m.to_string()), ("k", k.to_string())];
    let mut entry = CatalogEntry::new("truncated_quantum_torus", &params, sys, format!("F_{p} in place of C, C_{k} in place of Z"));
    let order = (1..=k).find(|&n| mod_pow(q, n, p) == 1).expect("q^k = 1");
    let top = ring.parse("x")?.pow(m as u64 - 1);
    let one = group.parse("1")?;
    entry.expected.maximal_commutative = Some(false);
    entry.expected.maximal_witness = Some((one.clone(), top));
    entry.expected.commutative = Some(q % p == 1);
    entry.expected.commutant_is_whole = Some(q % p == 1);
    if (order as usize) < m {
        let x = ring.parse("x")?;
        entry.expected.obstruction = Some((x.pow(order), x.pow(m as u64 - order), one));
    }
    for j in 1..m {
        entry.expected.ideal_chain.push(power_ideal(&ring, j)?);
    }
    Ok(entry)
}

/// The same ring acted on by `Z`; for membership-level checks only.
pub fn truncated_quantum_torus_z(p: u64, q: u64, m: usize) -> Result<CatalogEntry> {
    if !is_prime(p) || q % p == 0 || m < 2 {
        return Err(bad(format!("need prime p, unit q and m >= 2 (got p={p}, q={q}, m={m})")));
    }
    let ring = Ring::truncated_polynomial(p, m)?;
    let sigma = RingAutomorphism::scaling(&ring, &ring.from_int(q as i64))?;
    let sys = build_standard(StandardKind::ActionOnly(SigmaSpec::Generator(sigma)), ring.clone(), Group::integers())?;
    let params = [("p", p.to_string()), ("q", q.to_string()), ("m", m.to_string())];
    let mut entry = CatalogEntry::new("truncated_quantum_torus_z", &params, sys, format!("F_{p} in place of C"));
    entry.expected.maximal_commutative = Some(false);
    entry.expected.commutative = Some(q % p == 1);
    Ok(entry)
}

/// `Q[x, x^-1] ⋊ Z` with `σ_n(P(x)) = P(q^n x)`.
pub fn rational_quantum_torus(q: &BigRational) -> Result<CatalogEntry> {
    if q.is_zero() || q.is_one() {
        return Err(bad(format!("q = {q} must differ from 0 and 1")));
    }
    let ring = Ring::laurent_rational();
    let sigma = RingAutomorphism::scaling(&ring, &ring.laurent_monomial(q.clone(), 0)?)?;
    let sys = build_standard(StandardKind::ActionOnly(SigmaSpec::Generator(sigma)), ring.clone(), Group::integers())?;
    let mut entry = CatalogEntry::new("rational_quantum_torus", &[("q", q.to_string())], sys, "Q in place of C");
    let root_of_unity = *q == -BigRational::one();
    entry.expected.maximal_commutative = Some(!root_of_unity);
    if root_of_unity {
        let two = entry.system.group().parse("2")?;
        entry.expected.maximal_witness = Some((two, ring.one()));
    }
    entry.expected.commutative = Some(false);
    Ok(entry)
}

// ---- symmetric action -----------------------------------------------------------

/// `F_p[x_1..x_n]/(monomials of degree >= degree) ⋊ S_n`, permuting variables.
pub fn symmetric_action(p: u64, n: usize, degree: u32) -> Result<CatalogEntry> {
    if !(2..=3).contains(&n) {
        return Err(bad(format!("n = {n} must be 2 or 3")));
    }
    if degree < 2 {
        return Err(bad("degree >= 2 keeps the variables, so the action stays faithful"));
    }
    let ring = Ring::truncated_multivariate(p, n, degree)?;
    let group = Group::symmetric(n)?;
    let vars: Vec<RingElem> = (1..=n).map(|i| ring.parse(&format!("x{i}"))).collect::<Result<_>>()?;
    let mut table = Vec::new();
    for g in group.elements()? {
        let GPayload::Perm(image) = g.payload() else { unreachable!("symmetric group") };
        let images = image.iter().map(|&j| vars[j as usize].clone()).collect();
        table.push((g.clone(), RingAutomorphism::new(&ring, images)?));
    }
    let sys = build_standard(StandardKind::ActionOnly(SigmaSpec::Table(table)), ring, group)?;
    if !sys.sigma_kernel()?.is_trivial() {
        return Err(bad("the truncation makes the permutation action unfaithful"));
    }
    let params = [("p", p.to_string()), ("n", n.to_string()), ("degree", degree.to_string())];
    let mut entry = CatalogEntry::new("symmetric_action", &params, sys, format!("F_{p} in place of C, truncated at total degree {degree}"));
    entry.expected.commutative = Some(false);
    Ok(entry)
}

// ---- function dynamics --------------------------------------------------------------

/// Functions `X -> F_p` on `X = {0..|perm|-1}` with `σ_n(f) = f ∘ π^-n`.
/// The group is `C_ord(π)`, or `C_2` acting trivially when `π = id`.
pub fn function_dynamics(p: u64, perm: &[usize]) -> Result<CatalogEntry> {
    let size = perm.len();
    if size == 0 || size > 8 {
        return Err(bad(format!("|X| = {size} must be between 1 and 8")));
    }
    let mut hit = vec![false; size];
    for &j in perm {
        if j >= size || std::mem::replace(&mut hit[j], true) {
            return Err(bad(format!("{perm:?} is not a bijection of {{0..{}}}", size - 1)));
        }
    }
    let power = |n: u64, x: usize| (0..n).fold(x, |y, _| perm[y]);
    let order = (0..size)
        .map(|x| (1..).find(|&n| power(n, x) == x).expect("finite cycle"))
        .fold(1u64, |acc, len| acc.lcm(&len));
    let ring = Ring::functions(p, size)?;
    // f ∘ π^-1 sends the indicator of i to the indicator of π(i)
    let images = (0..size).map(|i| ring.parse(&format!("e{}", perm[i]))).collect::<Result<Vec<_>>>()?;
    let sigma = RingAutomorphism::new(&ring, images)?;
    let k = if order == 1 { 2 } else { order };
    let sys = build_standard(StandardKind::ActionOnly(SigmaSpec::Generator(sigma)), ring, Group::cyclic(k)?)?;
    let perm_text: Vec<String> = perm.iter().map(|j| j.to_string()).collect();
    let params = [("p", p.to_string()), ("perm", perm_text.join(","))];
    let mut entry = CatalogEntry::new("function_dynamics", &params, sys, format!("functions on a {size}-point set with values in F_{p}"));
    let mut all_separated = true;
    for n in 1..k {
        let sep: BTreeSet<usize> = (0..size).filter(|&x| power(n, x) != x).collect();
        all_separated &= sep.len() == size;
        entry.expected.separation_sets.push((n, sep));
    }
    entry.expected.maximal_commutative = Some(all_separated);
    entry.expected.commutative = Some(order == 1);
    Ok(entry)
}

// ---- group rings ------------------------------------------------------------------

/// `C3`, `S3`, `C2xC2`, ...
pub fn parse_group(text: &str) -> Result<Arc<Group>> {
    let parts: Vec<&str> = text.split(['x', '×']).map(str::trim).collect();
    let mut factors = Vec::new();
    for part in &parts {
        let (head, tail) = part.split_at(part.chars().next().map_or(0, |c| c.len_utf8()));
        let n: u64 = tail.parse().map_err(|_| AlgebraError::parse(text, 0, format!("bad group factor {part:?}")))?;
        factors.push(match head {
            "C" => Group::cyclic(n)?,
            "S" => Group::symmetric(n as usize)?,
            _ => return Err(AlgebraError::parse(text, 0, format!("bad group factor {part:?}"))),
        });
    }
    if factors.len() == 1 {
        Ok(factors.pop().expect("one factor"))
    } else {
        Group::direct_product(factors)
    }
}

/// `Z/n[G]`.
pub fn group_ring(n: u64, group: &str) -> Result<CatalogEntry> {
    let ring = Ring::modular(n)?;
    let g = parse_group(group)?;
    if g.order() == Some(1) {
        return Err(bad("the group must be nontrivial"));
    }
    let abelian = g.is_abelian()?;
    let sys = build_standard(StandardKind::GroupRing, ring, g)?;
    let params = [("n", n.to_string()), ("group", group.to_string())];
    let mut entry = CatalogEntry::new("group_ring", &params, sys, "exact");
    entry.expected.maximal_commutative = Some(false);
    entry.expected.commutative = Some(abelian);
    entry.expected.commutant_is_whole = Some(true);
    Ok(entry)
}

/// `Z/n ⋊_α C_2` with `σ ≡ id` and `α(1,1) = a`.
pub fn twisted_group_ring(n: u64, a: i64) -> Result<CatalogEntry> {
    let ring = Ring::modular(n)?;
    let group = Group::cyclic(2)?;
    let one = group.parse("1")?;
    let alpha = AlphaSpec::Table(vec![((one.clone(), one), ring.from_int(a))]);
    let sys = build_standard(StandardKind::TwistedGroupRing(alpha), ring, group)?;
    let params = [("n", n.to_string()), ("a", a.to_string())];
    let mut entry = CatalogEntry::new("twisted_group_ring", &params, sys, "exact");
    entry.expected.maximal_commutative = Some(false);
    entry.expected.commutative = Some(true);
    entry.expected.commutant_is_whole = Some(true);
    Ok(entry)
}

/// `F_{p^d} ⋊ C_d` with the Frobenius generator.
pub fn frobenius_field(p: u64, degree: usize) -> Result<CatalogEntry> {
    if degree < 2 {
        return Err(bad("degree >= 2 keeps the group nontrivial"));
    }
    let ring = Ring::finite_field(p, degree)?;
    let sigma = RingAutomorphism::frobenius(&ring)?;
    let sys = build_standard(StandardKind::ActionOnly(SigmaSpec::Generator(sigma)), ring, Group::cyclic(degree as u64)?)?;
    let params = [("p", p.to_string()), ("degree", degree.to_string())];
    let mut entry = CatalogEntry::new("frobenius_field", &params, sys, "exact");
    entry.expected.maximal_commutative = Some(true);
    entry.expected.commutative = Some(false);
    entry.expected.commutant_is_whole = Some(false);
    Ok(entry)
}

/// `M_2(F_2) ⋊ C_2` with `σ_1 = conj(v)`, `α(1,1) = v^2`, `v = [[0,1],[1,1]]`.
pub fn matrix_twisted() -> Result<CatalogEntry> {
    let sys = matrix_system(true)?;
    let mut entry = CatalogEntry::new("matrix_twisted", &[], sys, "exact");
    entry.expected.commutative = Some(false);
    Ok(entry)
}

fn matrix_system(twisted: bool) -> Result<Arc<CrossedSystem>> {
    let ring = Ring::matrix(2, 2)?;
    let group = Group::cyclic(2)?;
    let v = ring.parse("E12 + E21 + E22")?;
    let v_inv = ring.inverse(&v)?.ok_or_else(|| AlgebraError::Inconsistent("v is not invertible".into()))?;
    let images = ring
        .algebra_generators()
        .iter()
        .map(|e| v.mul(e)?.mul(&v_inv))
        .collect::<Result<Vec<_>>>()?;
    let sigma = RingAutomorphism::new(&ring, images)?;
    let one = group.parse("1")?;
    let a11 = if twisted { v.mul(&v)? } else { ring.one() };
    let sigma = SigmaSpec::Table(vec![(one.clone(), sigma)]);
    let alpha = AlphaSpec::Table(vec![((one.clone(), one), a11)]);
    if twisted {
        build_standard(StandardKind::Full(sigma, alpha), ring, group)
    } else {
        CrossedSystem::assemble(ring, group, sigma, alpha)
    }
}

// ---- registry -------------------------------------------------------------------

/// Name, parameter keys and a one-line description for each constructor.
pub const CONSTRUCTORS: &[(&str, &[&str], &str)] = &[
    ("truncated_quantum_torus", &["p", "q", "m", "k"], "F_p[x]/(x^m) ⋊ C_k, x -> q x"),
    ("truncated_quantum_torus_z", &["p", "q", "m"], "F_p[x]/(x^m) ⋊ Z, x -> q x"),
    ("rational_quantum_torus", &["q"], "Q[x, x^-1] ⋊ Z, x -> q x"),
    ("symmetric_action", &["p", "n", "degree"], "truncated F_p[x_1..x_n] ⋊ S_n"),
    ("function_dynamics", &["p", "perm"], "F_p^X ⋊ C_ord(π), f -> f ∘ π^-1"),
    ("group_ring", &["n", "group"], "Z/n[G]"),
    ("twisted_group_ring", &["n", "a"], "Z/n ⋊_α C_2 with α(1,1) = a"),
    ("frobenius_field", &["p", "degree"], "F_{p^d} ⋊ C_d via Frobenius"),
    ("matrix_twisted", &[], "M_2(F_2) ⋊ C_2 via conj(v), α(1,1) = v^2"),
];

fn param<T: std::str::FromStr>(params: &BTreeMap<String, String>, key: &str) -> Result<T> {
    let raw = params.get(key).ok_or_else(|| bad(format!("missing parameter {key:?}")))?;
    raw.parse().map_err(|_| bad(format!("parameter {key} = {raw:?} is malformed")))
}

fn rational(text: &str) -> Result<BigRational> {
    let parse_int = |s: &str| s.trim().parse::<BigInt>().map_err(|_| bad(format!("{text:?} is not a rational number")));
    match text.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(bad("zero denominator"));
            }
            Ok(BigRational::new(parse_int(n)?, d))
        }
        None => Ok(BigRational::from_integer(parse_int(text)?)),
    }
}

/// Builds a catalog entry by constructor name.
pub fn build(name: &str, params: &BTreeMap<String, String>) -> Result<CatalogEntry> {
    let (_, keys, _) = CONSTRUCTORS
        .iter()
        .find(|(n, _, _)| *n == name)
        .ok_or_else(|| bad(format!("unknown catalog name {name:?}")))?;
    if let Some(extra) = params.keys().find(|k| !keys.contains(&k.as_str())) {
        return Err(bad(format!("{name} takes no parameter {extra:?}")));
    }
    match name {
        "truncated_quantum_torus" => truncated_quantum_torus(param(params, "p")?, param(params, "q")?, param(params, "m")?, param(params, "k")?),
        "truncated_quantum_torus_z" => truncated_quantum_torus_z(param(params, "p")?, param(params, "q")?, param(params, "m")?),
        "rational_quantum_torus" => rational_quantum_torus(&rational(&param::<String>(params, "q")?)?),
        "symmetric_action" => symmetric_action(param(params, "p")?, param(params, "n")?, param(params, "degree")?),
        "function_dynamics" => {
            let text: String = param(params, "perm")?;
            let perm = text
                .split(',')
                .map(|s| s.trim().parse::<usize>().map_err(|_| bad(format!("perm {text:?} is malformed"))))
                .collect::<Result<Vec<_>>>()?;
            function_dynamics(param(params, "p")?, &perm)
        }
        "group_ring" => group_ring(param(params, "n")?, &param::<String>(params, "group")?),
        "twisted_group_ring" => twisted_group_ring(param(params, "n")?, param(params, "a")?),
        "frobenius_field" => frobenius_field(param(params, "p")?, param(params, "degree")?),
        "matrix_twisted" => matrix_twisted(),
        _ => unreachable!("checked above"),
    }
}

/// The fixed list of entries exercised by the test suite.
pub fn standard_entries() -> Result<Vec<CatalogEntry>> {
    let two = BigRational::from_integer(2.into());
    Ok(vec![
        truncated_quantum_torus(3, 2, 3, 2)?,
        truncated_quantum_torus(3, 2, 3, 4)?,
        truncated_quantum_torus(5, 2, 3, 4)?,
        truncated_quantum_torus_z(3, 2, 3)?,
        rational_quantum_torus(&two)?,
        rational_quantum_torus(&-BigRational::one())?,
        symmetric_action(3, 2, 2)?,
        function_dynamics(2, &[1, 2, 0])?,
        function_dynamics(2, &[0, 1])?,
        function_dynamics(2, &[1, 0, 2])?,
        group_ring(3, "S3")?,
        group_ring(4, "C2")?,
        group_ring(2, "C2")?,
        twisted_group_ring(5, 2)?,
        frobenius_field(2, 2)?,
        matrix_twisted()?,
    ])
}

// ---- corrupted corpus ------------------------------------------------------------

/// A system that must fail validation, with the condition it breaks and a
/// substring of the expected witness.
#[derive(Clone, Debug)]
pub struct CorruptedEntry {
    pub name: &'static str,
    pub system: Arc<CrossedSystem>,
    pub condition: Condition,
    pub witness: &'static str,
}

pub fn corrupted_entries() -> Result<Vec<CorruptedEntry>> {
    let c2 = Group::cyclic(2)?;
    let g = c2.parse("1")?;
    let e = c2.identity();
    let z4 = Ring::modular(4)?;
    let z5 = Ring::modular(5)?;
    let mut out = Vec::new();

    let sys = CrossedSystem::assemble(z4.clone(), c2.clone(), SigmaSpec::Identity, AlphaSpec::Table(vec![((g.clone(), g.clone()), z4.from_int(2))]))?;
    out.push(CorruptedEntry { name: "non-unit cocycle", system: sys, condition: Condition::AlphaUnit, witness: "α(1,1) = 2 is not a unit" });

    let f4 = Ring::finite_field(2, 2)?;
    let frob = RingAutomorphism::frobenius(&f4)?;
    let sys = CrossedSystem::assemble(f4, c2.clone(), SigmaSpec::Table(vec![(e.clone(), frob)]), AlphaSpec::Trivial)?;
    out.push(CorruptedEntry { name: "non-identity σ_e", system: sys, condition: Condition::SigmaIdentity, witness: "σ_e = " });

    let t3 = Ring::truncated_polynomial(3, 3)?;
    let c3 = Group::cyclic(3)?;
    let scale = RingAutomorphism::scaling(&t3, &t3.from_int(2))?;
    let sys = CrossedSystem::assemble(t3, c3.clone(), SigmaSpec::Generator(scale), AlphaSpec::Trivial)?;
    out.push(CorruptedEntry { name: "σ not an action up to α", system: sys, condition: Condition::ConditionI, witness: "x = 1, y = 2, a = x:" });

    let c1 = c3.parse("1")?;
    let sys = CrossedSystem::assemble(z5.clone(), c3.clone(), SigmaSpec::Identity, AlphaSpec::Table(vec![((c1.clone(), c1), z5.from_int(2))]))?;
    out.push(CorruptedEntry { name: "broken cocycle identity", system: sys, condition: Condition::ConditionII, witness: "x = 1, y = 1, z = 2:" });

    let sys = CrossedSystem::assemble(z5.clone(), c2.clone(), SigmaSpec::Identity, AlphaSpec::Table(vec![((e.clone(), g.clone()), z5.from_int(2))]))?;
    out.push(CorruptedEntry { name: "unnormalized cocycle", system: sys, condition: Condition::ConditionIII, witness: "α(e,1) = 2 != 1" });

    let sys = matrix_system(false)?;
    out.push(CorruptedEntry { name: "conjugation without its cocycle", system: sys, condition: Condition::ConditionI, witness: "x = 1, y = 1," });
    Ok(out)
}
