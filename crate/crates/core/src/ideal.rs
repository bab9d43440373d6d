//! Two-sided ideals of finite crossed products: closure, intersections with
//! `Ã` and `Comm(Ã)`, lifted ideals, descent homomorphisms and the
//! zero-divisor obstruction.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng as _, SeedableRng};

use crate::analysis;
use crate::error::{AlgebraError, Result};
use crate::group::{GPayload, Group, GroupElem};
use crate::limits;
use crate::product::CrossedElem;
use crate::ring::{Payload, Ring, RingAutomorphism, RingElem};
use crate::system::{AlphaSpec, CrossedSystem, SigmaKernel, SigmaSpec};

/// Rounds allowed for the translate/kill replay before it is declared stuck.
pub const MAX_REPLAY_ROUNDS: usize = 10;

/// Generators tried when a statement quantifies over every nonzero ideal.
pub const MAX_SUITE_GENERATORS: usize = 10_000;

/// Random pairs checked on top of the homogeneous pairs when exhaustion is too large.
pub const RANDOM_PAIRS: usize = 1000;

/// Largest `|A⋊G|^2` for which `Γ` is checked on every pair of elements.
pub const ALL_PAIRS_LIMIT: u64 = 1 << 16;

const RNG_SEED: u64 = 0x5eed_2007;

// ---- dense engine --------------------------------------------------------------

/// Index-based arithmetic for a finite crossed product. An element is a
/// vector of ring-element indices, one per group element, and is encoded as a
/// mixed-radix integer with the first group element most significant.
pub struct IdealEngine {
    sys: Arc<CrossedSystem>,
    ring_elems: Vec<Payload>,
    group_elems: Vec<GPayload>,
    nr: usize,
    ng: usize,
    add: Vec<u32>,
    neg: Vec<u32>,
    /// Per multiplier `b t̄`: `(s, a) -> (ts, b σ_t(a) α(t,s))`, indexed `s * nr + a`.
    left: Vec<Vec<(u32, u32)>>,
    /// Per multiplier `b t̄`: `(s, a) -> (st, a σ_s(b) α(s,t))`.
    right: Vec<Vec<(u32, u32)>>,
    total: u64,
}

type Dense = Vec<u32>;

impl IdealEngine {
    pub fn new(sys: &Arc<CrossedSystem>) -> Result<Self> {
        if !sys.is_finite() {
            return Err(AlgebraError::UnsupportedEnumeration("ideal closure needs a finite ring and group".into()));
        }
        let ring = sys.ring();
        let group = sys.group();
        let ring_elems = ring.element_payloads()?.to_vec();
        let group_elems = group.element_payloads()?.to_vec();
        let (nr, ng) = (ring_elems.len(), group_elems.len());
        let total = limits::guard_product("crossed product", nr as u64, ng as u64)?;
        let idx = |p: &Payload| ring.index_of_p(p) as u32;
        let mut add = vec![0u32; nr * nr];
        for (i, a) in ring_elems.iter().enumerate() {
            for (j, b) in ring_elems.iter().enumerate() {
                add[i * nr + j] = idx(&ring.add_p(a, b));
            }
        }
        let neg = ring_elems.iter().map(|a| idx(&ring.neg_p(a))).collect();
        let gidx = |g: &GPayload| group.index_of_p(g) as u32;
        let mut left = Vec::new();
        let mut right = Vec::new();
        let gens = ring.additive_generators()?;
        for t in &group_elems {
            let sigma_t = sys.sigma_p(t);
            for b in &gens {
                let b = b.payload();
                let mut l = Vec::with_capacity(ng * nr);
                let mut r = Vec::with_capacity(ng * nr);
                for s in &group_elems {
                    let sigma_s = sys.sigma_p(s);
                    let (ts, st) = (gidx(&group.mul_p(t, s)), gidx(&group.mul_p(s, t)));
                    let (al_ts, al_st) = (sys.alpha_p(t, s), sys.alpha_p(s, t));
                    let sb = sigma_s.apply_p(b);
                    for a in &ring_elems {
                        l.push((ts, idx(&ring.mul_p(&ring.mul_p(b, &sigma_t.apply_p(a)), &al_ts))));
                        r.push((st, idx(&ring.mul_p(&ring.mul_p(a, &sb), &al_st))));
                    }
                }
                left.push(l);
                right.push(r);
            }
        }
        Ok(IdealEngine { sys: sys.clone(), ring_elems, group_elems, nr, ng, add, neg, left, right, total })
    }

    pub fn system(&self) -> &Arc<CrossedSystem> {
        &self.sys
    }

    /// `|A|^|G|`.
    pub fn total(&self) -> u64 {
        self.total
    }

    fn encode(&self, v: &[u32]) -> u64 {
        v.iter().fold(0u64, |acc, &x| acc * self.nr as u64 + x as u64)
    }

    fn decode(&self, mut code: u64) -> Dense {
        let mut v = vec![0u32; self.ng];
        for slot in v.iter_mut().rev() {
            *slot = (code % self.nr as u64) as u32;
            code /= self.nr as u64;
        }
        v
    }

    fn dense(&self, u: &CrossedElem) -> Dense {
        let ring = self.sys.ring();
        let mut v = vec![0u32; self.ng];
        for (s, a) in u.raw_terms() {
            v[self.sys.group().index_of_p(s)] = ring.index_of_p(a) as u32;
        }
        v
    }

    fn sparse(&self, v: &[u32]) -> CrossedElem {
        let terms = v
            .iter()
            .enumerate()
            .filter(|(_, &a)| a != 0)
            .map(|(s, &a)| (self.group_elems[s].clone(), self.ring_elems[a as usize].clone()))
            .collect();
        CrossedElem::from_raw(&self.sys, terms)
    }

    pub fn code_of(&self, u: &CrossedElem) -> u64 {
        self.encode(&self.dense(u))
    }

    pub fn element(&self, code: u64) -> CrossedElem {
        self.sparse(&self.decode(code))
    }

    fn add_dense(&self, x: &[u32], y: &[u32]) -> Dense {
        x.iter().zip(y).map(|(&a, &b)| self.add[a as usize * self.nr + b as usize]).collect()
    }

    fn apply_table(&self, table: &[(u32, u32)], v: &[u32]) -> Dense {
        let mut out = vec![0u32; self.ng];
        for (s, &a) in v.iter().enumerate() {
            if a != 0 {
                let (deg, val) = table[s * self.nr + a as usize];
                let slot = &mut out[deg as usize];
                *slot = self.add[*slot as usize * self.nr + val as usize];
            }
        }
        out
    }

    /// The least two-sided ideal containing `generators`, by worklist fixpoint.
    pub fn closure(&self, generators: &[CrossedElem]) -> Result<IdealSet> {
        for g in generators {
            if !Arc::ptr_eq(g.system(), &self.sys) {
                return Err(AlgebraError::DomainMismatch("generator from another system".into()));
            }
        }
        let mut seen = vec![0u64; (self.total as usize).div_ceil(64)];
        let mut members: Vec<Dense> = vec![vec![0; self.ng]];
        seen[0] |= 1;
        let mut queue: Vec<Dense> = Vec::new();
        let absorb = |w: Dense, members: &mut Vec<Dense>, seen: &mut Vec<u64>, queue: &mut Vec<Dense>| {
            // members + <w> = union of the cosets members + k w
            let mut cur = w.clone();
            let mut is_new = false;
            let base_len = members.len();
            loop {
                let c = self.encode(&cur);
                if seen[(c / 64) as usize] >> (c % 64) & 1 == 1 {
                    break;
                }
                is_new = true;
                for i in 0..base_len {
                    let s = self.add_dense(&members[i], &cur);
                    let code = self.encode(&s);
                    let (word, bit) = ((code / 64) as usize, code % 64);
                    if seen[word] >> bit & 1 == 0 {
                        seen[word] |= 1 << bit;
                        members.push(s);
                    }
                }
                cur = self.add_dense(&cur, &w);
            }
            if is_new {
                queue.push(w);
            }
        };
        for g in generators {
            absorb(self.dense(g), &mut members, &mut seen, &mut queue);
        }
        while let Some(w) = queue.pop() {
            for table in self.left.iter().chain(&self.right) {
                let p = self.apply_table(table, &w);
                absorb(p, &mut members, &mut seen, &mut queue);
            }
        }
        let mut codes: Vec<u64> = members.iter().map(|m| self.encode(m)).collect();
        codes.sort_unstable();
        Ok(IdealSet { sys: self.sys.clone(), codes, generators: generators.to_vec(), ring_size: self.nr, group_order: self.ng })
    }

    /// Checks every ideal axiom on `ideal`: zero, negation, addition and
    /// two-sided multiplication by single terms over additive generators.
    pub fn check_closure(&self, ideal: &IdealSet) -> Result<()> {
        let fail = |m: String| Err(AlgebraError::Inconsistent(m));
        if !Arc::ptr_eq(&ideal.sys, &self.sys) {
            return Err(AlgebraError::DomainMismatch("ideal of another system".into()));
        }
        if ideal.codes.binary_search(&0).is_err() {
            return fail("ideal misses 0".into());
        }
        let dense: Vec<Dense> = ideal.codes.iter().map(|&c| self.decode(c)).collect();
        let has = |v: &Dense| ideal.codes.binary_search(&self.encode(v)).is_ok();
        for x in &dense {
            let n: Dense = x.iter().map(|&a| self.neg[a as usize]).collect();
            if !has(&n) {
                return fail(format!("ideal not closed under negation at {}", self.sparse(x)));
            }
            for table in self.left.iter().chain(&self.right) {
                if !has(&self.apply_table(table, x)) {
                    return fail(format!("ideal not closed under multiplication at {}", self.sparse(x)));
                }
            }
        }
        let pairs = (dense.len() as u64).saturating_mul(dense.len() as u64);
        if pairs <= limits::Limits::current().max_product {
            for x in &dense {
                for y in &dense {
                    if !has(&self.add_dense(x, y)) {
                        return fail(format!("ideal not closed under addition at {} + {}", self.sparse(x), self.sparse(y)));
                    }
                }
            }
        } else {
            let mut rng = StdRng::seed_from_u64(RNG_SEED);
            for _ in 0..RANDOM_PAIRS * 10 {
                let x = &dense[rng.gen_range(0..dense.len())];
                let y = &dense[rng.gen_range(0..dense.len())];
                if !has(&self.add_dense(x, y)) {
                    return fail(format!("ideal not closed under addition at {} + {}", self.sparse(x), self.sparse(y)));
                }
            }
        }
        Ok(())
    }
}

// ---- ideal sets ---------------------------------------------------------------

/// An explicitly enumerated two-sided ideal.
#[derive(Clone)]
pub struct IdealSet {
    sys: Arc<CrossedSystem>,
    codes: Vec<u64>,
    generators: Vec<CrossedElem>,
    ring_size: usize,
    group_order: usize,
}

impl std::fmt::Debug for IdealSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "IdealSet(size {}, generators {:?})", self.codes.len(), self.generators)
    }
}

impl IdealSet {
    pub fn system(&self) -> &Arc<CrossedSystem> {
        &self.sys
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    /// `I = {0}`.
    pub fn is_zero(&self) -> bool {
        self.codes.len() == 1
    }

    pub fn generators(&self) -> &[CrossedElem] {
        &self.generators
    }

    fn code_of(&self, u: &CrossedElem) -> u64 {
        let ring = self.sys.ring();
        let group = self.sys.group();
        let mut v = vec![0u64; self.group_order];
        for (s, a) in u.raw_terms() {
            v[group.index_of_p(s)] = ring.index_of_p(a) as u64;
        }
        v.iter().fold(0u64, |acc, &x| acc * self.ring_size as u64 + x)
    }

    pub fn contains(&self, u: &CrossedElem) -> bool {
        Arc::ptr_eq(u.system(), &self.sys) && self.codes.binary_search(&self.code_of(u)).is_ok()
    }

    fn decode(&self, mut code: u64) -> CrossedElem {
        let ring = self.sys.ring().element_payloads().expect("finite");
        let group = self.sys.group().element_payloads().expect("finite");
        let mut terms = std::collections::BTreeMap::new();
        for s in (0..self.group_order).rev() {
            let a = (code % self.ring_size as u64) as usize;
            code /= self.ring_size as u64;
            terms.insert(group[s].clone(), ring[a].clone());
        }
        CrossedElem::from_raw(&self.sys, terms)
    }

    /// Elements in canonical order.
    pub fn elements(&self) -> Vec<CrossedElem> {
        self.codes.iter().map(|&c| self.decode(c)).collect()
    }

    /// Least nonzero element in canonical order.
    pub fn least_nonzero(&self) -> Option<CrossedElem> {
        self.codes.get(1).map(|&c| self.decode(c))
    }

    /// `{a : aē ∈ I}`.
    pub fn intersect_base(&self) -> BTreeSet<RingElem> {
        let e = self.sys.group().identity();
        self.elements().into_iter().filter(|u| u.is_in_base()).map(|u| u.coefficient(&e)).collect()
    }

    /// `I ∩ Comm(Ã)`.
    pub fn intersect_commutant(&self) -> Result<Vec<CrossedElem>> {
        require_commutative(&self.sys)?;
        let mut out = Vec::new();
        for u in self.elements() {
            if analysis::commutant_member(&u)? {
                out.push(u);
            }
        }
        Ok(out)
    }
}

/// The least two-sided ideal containing `generators`.
pub fn ideal_closure(sys: &Arc<CrossedSystem>, generators: &[CrossedElem]) -> Result<IdealSet> {
    IdealEngine::new(sys)?.closure(generators)
}

fn require_commutative(sys: &Arc<CrossedSystem>) -> Result<()> {
    if sys.ring().is_commutative() {
        Ok(())
    } else {
        Err(AlgebraError::Unsupported(format!("{} is not commutative", sys.ring().describe())))
    }
}

// ---- translate/kill replay ------------------------------------------------------

/// A nonzero element of `I ∩ Comm(Ã)` reached from a starting element.
#[derive(Clone, Debug)]
pub struct ReplayOutcome {
    pub witness: CrossedElem,
    /// Number of kill steps taken.
    pub rounds: usize,
    /// Every intermediate element, starting element first.
    pub trail: Vec<CrossedElem>,
}

/// From a nonzero `start ∈ I`, alternate `T_{p^-1}` (to make the `ē`
/// coefficient nonzero) and `D_a` (to shrink the support) until the element
/// commutes with `Ã`. Every intermediate element is checked to stay in `ideal`.
pub fn replay_to_commutant(ideal: &IdealSet, start: &CrossedElem) -> Result<ReplayOutcome> {
    let sys = ideal.system();
    require_commutative(sys)?;
    if start.is_zero() || !ideal.contains(start) {
        return Err(AlgebraError::InvalidParameter(format!("{start} is not a nonzero element of the ideal")));
    }
    let probes = sys.ring().additive_generators()?;
    let e = sys.group().identity();
    let mut cur = start.clone();
    let mut trail = vec![cur.clone()];
    let mut rounds = 0;
    let stay = |u: &CrossedElem| -> Result<()> {
        if ideal.contains(u) && !u.is_zero() {
            Ok(())
        } else {
            Err(AlgebraError::Inconsistent(format!("replay left the ideal or vanished at {u}")))
        }
    };
    loop {
        if analysis::commutant_member(&cur)? {
            return Ok(ReplayOutcome { witness: cur, rounds, trail });
        }
        if rounds == MAX_REPLAY_ROUNDS {
            return Err(AlgebraError::Inconsistent(format!("replay did not reach the commutant in {MAX_REPLAY_ROUNDS} rounds")));
        }
        if cur.coefficient(&e).is_zero() {
            let p = cur.support()[0].clone();
            cur = cur.translate_deform(&p.inv())?;
            stay(&cur)?;
            trail.push(cur.clone());
            if analysis::commutant_member(&cur)? {
                return Ok(ReplayOutcome { witness: cur, rounds, trail });
            }
        }
        let before = cur.support().len();
        let a = probes
            .iter()
            .find(|a| !cur.kill(a).map(|d| d.is_zero()).unwrap_or(true))
            .ok_or_else(|| AlgebraError::Inconsistent(format!("{cur} is killed by every D_a yet lies outside the commutant")))?;
        cur = cur.kill(a)?;
        stay(&cur)?;
        if cur.support().len() >= before {
            return Err(AlgebraError::Inconsistent("kill step did not shrink the support".into()));
        }
        trail.push(cur.clone());
        rounds += 1;
    }
}

// ---- lifted ideals --------------------------------------------------------------

/// `J = {Σ a_s s̄ : a_s ∈ I}` for a right ideal `I` of `A`.
#[derive(Clone, Debug)]
pub struct LiftedIdeal {
    pub elements: Vec<CrossedElem>,
    pub right_ideal: bool,
    pub two_sided: bool,
    /// `I ⊆ A^G`.
    pub fixed: bool,
}

pub fn lift_ideal(sys: &Arc<CrossedSystem>, ideal: &BTreeSet<RingElem>) -> Result<LiftedIdeal> {
    let ring = sys.ring();
    let engine = IdealEngine::new(sys)?;
    if !ring.is_right_ideal(ideal)? {
        return Err(AlgebraError::hypothesis("I is a right ideal of A", format!("{} elements given", ideal.len())));
    }
    let fixed_ring = sys.fixed_ring()?;
    let fixed = ideal.is_subset(&fixed_ring);
    let idx: Vec<u32> = ideal.iter().map(|a| ring.index_of_p(a.payload()) as u32).collect();
    let mut codes = vec![0u64];
    for _ in 0..engine.ng {
        codes = codes.iter().flat_map(|&c| idx.iter().map(move |&i| c * engine.nr as u64 + i as u64)).collect();
    }
    codes.sort_unstable();
    let has = |v: &Dense| codes.binary_search(&engine.encode(v)).is_ok();
    let mut right_ideal = true;
    let mut left_ideal = true;
    for &c in &codes {
        let x = engine.decode(c);
        right_ideal &= engine.right.iter().all(|t| has(&engine.apply_table(t, &x)));
        left_ideal &= engine.left.iter().all(|t| has(&engine.apply_table(t, &x)));
    }
    if !right_ideal {
        return Err(AlgebraError::Inconsistent("lift of a right ideal is not a right ideal".into()));
    }
    if fixed && ring.is_two_sided_ideal(ideal)? && !left_ideal {
        return Err(AlgebraError::Inconsistent("lift of a fixed two-sided ideal is not two-sided".into()));
    }
    Ok(LiftedIdeal {
        elements: codes.iter().map(|&c| engine.element(c)).collect(),
        right_ideal,
        two_sided: left_ideal,
        fixed,
    })
}

// ---- descent homomorphisms -----------------------------------------------------

/// `Γ : A ⋊ G -> target`, reducing coefficients through `θ` and degrees through `φ`.
#[derive(Clone, Debug)]
pub struct Descent {
    source: Arc<CrossedSystem>,
    target: Arc<CrossedSystem>,
    /// `Some(A/J)` when `θ` is the projection onto a quotient ring.
    ring_quotient: Option<Arc<Ring>>,
    /// `Some(G/N)` when `φ` is the projection onto a quotient group.
    group_quotient: Option<Arc<Group>>,
}

/// Outcome of the homomorphism check on `Γ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomomorphismCheck {
    pub pairs_checked: usize,
    /// All pairs of elements, rather than all homogeneous pairs plus random ones.
    pub all_pairs: bool,
}

impl Descent {
    pub fn source(&self) -> &Arc<CrossedSystem> {
        &self.source
    }

    pub fn target(&self) -> &Arc<CrossedSystem> {
        &self.target
    }

    pub fn apply(&self, u: &CrossedElem) -> Result<CrossedElem> {
        if !Arc::ptr_eq(u.system(), &self.source) {
            return Err(AlgebraError::DomainMismatch("element of another system".into()));
        }
        let mut out = CrossedElem::zero(&self.target);
        for (s, a) in u.terms() {
            let s2 = match &self.group_quotient {
                Some(q) => q.project(&s)?,
                None => s,
            };
            let a2 = match &self.ring_quotient {
                Some(q) => q.project(&a)?,
                None => a,
            };
            out = out.add(&CrossedElem::monomial(&self.target, &a2, &s2)?)?;
        }
        Ok(out)
    }

    fn check_pair(&self, u: &CrossedElem, v: &CrossedElem) -> Result<()> {
        let (gu, gv) = (self.apply(u)?, self.apply(v)?);
        if self.apply(&u.add(v)?)? != gu.add(&gv)? {
            return Err(AlgebraError::Inconsistent(format!("Γ is not additive on ({u}, {v})")));
        }
        if self.apply(&u.mul(v)?)? != gu.mul(&gv)? {
            return Err(AlgebraError::Inconsistent(format!("Γ is not multiplicative on ({u}, {v})")));
        }
        Ok(())
    }

    /// Additivity and multiplicativity: on all pairs when `|A⋊G|^2` is at most
    /// [`ALL_PAIRS_LIMIT`]; otherwise on every pair of homogeneous elements `a s̄`
    /// (which span, so bi-additivity covers the rest) plus [`RANDOM_PAIRS`]
    /// seeded random pairs.
    pub fn verify_homomorphism(&self) -> Result<HomomorphismCheck> {
        let sys = &self.source;
        let engine = IdealEngine::new(sys)?;
        if engine.total.saturating_mul(engine.total) <= ALL_PAIRS_LIMIT {
            let all = CrossedElem::enumerate(sys)?;
            for u in &all {
                for v in &all {
                    self.check_pair(u, v)?;
                }
            }
            if self.apply(&CrossedElem::one(sys))? != CrossedElem::one(&self.target) {
                return Err(AlgebraError::Inconsistent("Γ(1) != 1".into()));
            }
            return Ok(HomomorphismCheck { pairs_checked: all.len() * all.len(), all_pairs: true });
        }
        let singles = CrossedElem::single_terms(sys, &sys.ring().elements()?)?;
        let mut n = 0;
        for u in &singles {
            for v in &singles {
                self.check_pair(u, v)?;
                n += 1;
            }
        }
        let mut rng = StdRng::seed_from_u64(RNG_SEED);
        for _ in 0..RANDOM_PAIRS {
            let u = engine.element(rng.gen_range(0..engine.total));
            let v = engine.element(rng.gen_range(0..engine.total));
            self.check_pair(&u, &v)?;
            n += 1;
        }
        Ok(HomomorphismCheck { pairs_checked: n, all_pairs: false })
    }

    /// `Γ(aē) = 0` only for `a = 0`.
    pub fn injective_on_base(&self) -> Result<bool> {
        for a in self.source.ring().elements()? {
            if !a.is_zero() && self.apply(&CrossedElem::embed(&a, &self.source)?)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether `Γ` vanishes on every element of `ideal`.
    pub fn kills(&self, ideal: &IdealSet) -> Result<bool> {
        for u in ideal.elements() {
            if !self.apply(&u)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `Γ : A ⋊σα G -> A ⋊ρβ G/N` for a normal subgroup `N` inside the kernel of `σ`.
pub fn quotient_descend(sys: &Arc<CrossedSystem>, normal: &BTreeSet<GroupElem>) -> Result<Descent> {
    let group = sys.group();
    let ring = sys.ring();
    if !sys.sigma_is_homomorphism()? {
        return Err(AlgebraError::hypothesis("σ is a group homomorphism", "σ_x σ_y != σ_xy for some pair"));
    }
    if !group.is_normal(normal)? {
        return Err(AlgebraError::hypothesis("N is a normal subgroup", format!("{} elements given", normal.len())));
    }
    if let SigmaKernel::Finite(kernel) = sys.sigma_kernel()? {
        if let Some(n) = normal.iter().find(|n| !kernel.contains(n)) {
            return Err(AlgebraError::hypothesis("N ⊆ σ^-1(id)", format!("σ_{n} = {}", sys.sigma(n)?)));
        }
    }
    let els = group.elements()?;
    for n in normal {
        for s in &els {
            for (x, y) in [(n, s), (s, n)] {
                let a = sys.alpha(x, y)?;
                if !a.is_one() {
                    return Err(AlgebraError::hypothesis("α = 1 on N", format!("α({x},{y}) = {a}")));
                }
            }
        }
    }
    let quotient = Group::quotient(group, normal)?;
    let mut beta: std::collections::BTreeMap<(GroupElem, GroupElem), RingElem> = std::collections::BTreeMap::new();
    for s in &els {
        for t in &els {
            let key = (quotient.project(s)?, quotient.project(t)?);
            let a = sys.alpha(s, t)?;
            match beta.get(&key) {
                Some(prev) if *prev != a => {
                    return Err(AlgebraError::hypothesis(
                        "α is constant on coset pairs",
                        format!("α({s},{t}) = {a} but the pair ({},{}) already has {prev}", key.0, key.1),
                    ))
                }
                _ => {
                    beta.insert(key, a);
                }
            }
        }
    }
    let mut rho: Vec<(GroupElem, RingAutomorphism)> = Vec::new();
    for s in &els {
        let q = quotient.project(s)?;
        if !rho.iter().any(|(g, _)| *g == q) {
            rho.push((q, sys.sigma(s)?));
        }
    }
    let target = CrossedSystem::new(
        ring.clone(),
        quotient.clone(),
        SigmaSpec::Table(rho),
        AlphaSpec::Table(beta.into_iter().collect()),
    )?;
    Ok(Descent { source: sys.clone(), target, ring_quotient: None, group_quotient: Some(quotient) })
}

/// `1ē - 1n̄` for the least `n ∈ N ∖ {e}`, whose coefficients sum to zero.
pub fn descent_generator(sys: &Arc<CrossedSystem>, normal: &BTreeSet<GroupElem>) -> Result<Option<CrossedElem>> {
    let one = sys.ring().one();
    match normal.iter().find(|n| !n.is_identity()) {
        Some(n) => Ok(Some(CrossedElem::one(sys).sub(&CrossedElem::monomial(sys, &one, n)?)?)),
        None => Ok(None),
    }
}

// ---- zero-divisor obstruction ------------------------------------------------------

#[derive(Clone, Debug)]
pub struct Obstruction {
    pub descent: Descent,
    pub annihilator: BTreeSet<RingElem>,
    pub ideal: IdealSet,
    /// `{a : aē ∈ I}`.
    pub base_intersection: BTreeSet<RingElem>,
    /// An `a ∉ D` with `aē ∈ I`, if one exists.
    pub non_zero_divisor: Option<RingElem>,
}

impl Obstruction {
    /// `I ∩ (Ã ∖ D̃) = ∅`.
    pub fn holds(&self) -> bool {
        self.non_zero_divisor.is_none()
    }
}

/// For `c ∈ D ∩ A^G ∖ {0}`, `d != 0` with `cd = 0` and `g != e`: builds
/// `Γ : A ⋊ G -> A/ann(c) ⋊ G` and the ideal `I = <dḡ>`, and scans `I ∩ Ã`
/// for elements outside the zero-divisors.
pub fn zero_divisor_obstruction(sys: &Arc<CrossedSystem>, c: &RingElem, d: &RingElem, g: &GroupElem) -> Result<Obstruction> {
    let ring = sys.ring();
    require_commutative(sys)?;
    ring.owns(c)?;
    ring.owns(d)?;
    sys.group().owns(g)?;
    let zd = ring.zero_divisor_set()?;
    if c.is_zero() || !zd.contains(c) {
        return Err(AlgebraError::hypothesis("c is a nonzero zero-divisor", format!("c = {c}")));
    }
    if !sys.is_fixed(c)? {
        let s = sys.group().elements()?.into_iter().find(|s| sys.sigma(s).and_then(|p| p.apply(c)).ok() != Some(c.clone()));
        let s = s.expect("some σ_s moves c");
        return Err(AlgebraError::hypothesis("c ∈ A^G", format!("σ_{s}({c}) = {}", sys.sigma(&s)?.apply(c)?)));
    }
    if d.is_zero() || !c.mul(d)?.is_zero() {
        return Err(AlgebraError::hypothesis("d != 0 and c d = 0", format!("d = {d}, c d = {}", c.mul(d)?)));
    }
    if g.is_identity() {
        return Err(AlgebraError::hypothesis("g != e", g.to_string()));
    }
    let ann = ring.annihilator(c)?;
    let els = sys.group().elements()?;
    for s in &els {
        let phi = sys.sigma(s)?;
        for a in &ann {
            if !ann.contains(&phi.apply(a)?) {
                return Err(AlgebraError::Inconsistent(format!("ann({c}) is not σ_{s}-invariant at {a}")));
            }
        }
    }
    let quotient = Ring::ideal_quotient(ring, &ann)?;
    let mut rho = Vec::new();
    for s in &els {
        rho.push((s.clone(), sys.sigma(s)?.induced_on(&quotient)?));
    }
    let mut beta = Vec::new();
    for s in &els {
        for t in &els {
            beta.push(((s.clone(), t.clone()), quotient.project(&sys.alpha(s, t)?)?));
        }
    }
    let target = CrossedSystem::new(quotient.clone(), sys.group().clone(), SigmaSpec::Table(rho), AlphaSpec::Table(beta))?;
    let descent = Descent { source: sys.clone(), target, ring_quotient: Some(quotient), group_quotient: None };
    let ideal = ideal_closure(sys, &[CrossedElem::monomial(sys, d, g)?])?;
    if ideal.is_zero() {
        return Err(AlgebraError::Inconsistent("the ideal generated by d ḡ is zero".into()));
    }
    let base_intersection = ideal.intersect_base();
    let non_zero_divisor = base_intersection.iter().find(|a| !zd.contains(a)).cloned();
    Ok(Obstruction { descent, annihilator: ann, ideal, base_intersection, non_zero_divisor })
}

// ---- torsion identity ---------------------------------------------------------

/// `1ē - 1\overline{g^n} = (1ē - 1ḡ)(Σ_{k<n} 1\overline{g^k})` for `n = ord(g)` and
/// every smaller `n >= 1`; requires `α ≡ 1`.
pub fn torsion_identity_holds(sys: &Arc<CrossedSystem>, g: &GroupElem) -> Result<bool> {
    if !sys.alpha_is_trivial() {
        return Err(AlgebraError::hypothesis("α ≡ 1", sys.describe()));
    }
    let one = sys.ring().one();
    let order = g.order().ok_or_else(|| AlgebraError::Unsupported(format!("{g} has infinite order")))?;
    let e = CrossedElem::one(sys);
    let left = e.sub(&CrossedElem::monomial(sys, &one, g)?)?;
    let mut sum = CrossedElem::zero(sys);
    let mut power = sys.group().identity();
    for _ in 0..order {
        sum = sum.add(&CrossedElem::monomial(sys, &one, &power)?)?;
        power = power.mul(g)?;
        let lhs = e.sub(&CrossedElem::monomial(sys, &one, &power)?)?;
        if lhs != left.mul(&sum)? {
            return Ok(false);
        }
    }
    // at n = ord(g) the left side vanishes, so 1ē - 1ḡ is a zero-divisor
    Ok(order == 1 || left.mul(&sum)?.is_zero())
}

// ---- theorem suite --------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct SuiteEntry {
    pub name: &'static str,
    pub statement: &'static str,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Default, serde::Serialize)]
pub struct SuiteReport {
    pub entries: Vec<SuiteEntry>,
    pub generators_tested: usize,
    /// Fewer generators than nonzero elements were tried.
    pub capped: bool,
}

impl SuiteReport {
    pub fn entry(&self, name: &str) -> Option<&SuiteEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn any_failed(&self) -> bool {
        self.entries.iter().any(|e| e.status == Status::Fail)
    }
}

pub const COMMUTANT_INTERSECTION: &str = "commutant-intersection";
pub const MAXIMAL_BASE_INTERSECTION: &str = "maximal-base-intersection";
pub const CENTRAL_KERNEL_IDEAL: &str = "central-kernel-ideal";
pub const FAITHFUL_ACTION: &str = "faithful-action";
pub const DOMAIN_MAXIMALITY: &str = "domain-maximality";
pub const ZERO_DIVISOR_OBSTRUCTION: &str = "zero-divisor-obstruction";

/// Facts about one single-generator ideal.
struct GeneratorFacts {
    generator: CrossedElem,
    meets_base: bool,
    meets_base_outside_d: bool,
    replay: Option<std::result::Result<usize, String>>,
}

/// Tests each statement whose hypotheses hold on `sys`, quantifying over
/// single-generator ideals for the "every nonzero ideal" statements.
pub fn run_theorem_suite(sys: &Arc<CrossedSystem>) -> Result<SuiteReport> {
    let engine = IdealEngine::new(sys)?;
    let ring = sys.ring();
    let group = sys.group();
    let commutative = ring.is_commutative();
    let zd = ring.zero_divisor_set()?;
    let total = engine.total as usize;
    let tested = (total - 1).min(MAX_SUITE_GENERATORS);
    let mut facts = Vec::with_capacity(tested);
    for code in 1..=tested as u64 {
        let u = engine.element(code);
        let ideal = engine.closure(std::slice::from_ref(&u))?;
        let base = ideal.intersect_base();
        let replay = commutative.then(|| match replay_to_commutant(&ideal, &u) {
            Ok(o) => Ok(o.rounds),
            Err(e) => Err(e.to_string()),
        });
        facts.push(GeneratorFacts {
            generator: u,
            meets_base: base.len() > 1,
            meets_base_outside_d: base.iter().any(|a| !zd.contains(a)),
            replay,
        });
    }
    let mut report = SuiteReport { entries: Vec::new(), generators_tested: tested, capped: tested < total - 1 };
    let mut push = |name, statement, status, detail: String| report.entries.push(SuiteEntry { name, statement, status, detail });

    // every nonzero ideal meets the commutant
    let st = "A commutative => I ∩ Comm(Ã) != {0} for every nonzero ideal I";
    if !commutative {
        push(COMMUTANT_INTERSECTION, st, Status::Skipped, "A is not commutative".into());
    } else {
        let bad = facts.iter().find(|f| !matches!(f.replay, Some(Ok(_))));
        match bad {
            Some(f) => push(COMMUTANT_INTERSECTION, st, Status::Fail, format!(
                "replay from {} failed: {}",
                f.generator,
                f.replay.as_ref().and_then(|r| r.as_ref().err()).cloned().unwrap_or_default()
            )),
            None => {
                let max = facts.iter().filter_map(|f| f.replay.as_ref()?.as_ref().ok().copied()).max().unwrap_or(0);
                push(COMMUTANT_INTERSECTION, st, Status::Pass, format!("{tested} ideals, at most {max} replay rounds"))
            }
        }
    }

    // maximal commutativity forces nonzero base intersections
    let st = "Ã maximal commutative => I ∩ Ã != {0} for every nonzero ideal I";
    let maximal = if commutative { Some(analysis::is_maximal_commutative(sys)?.maximal) } else { None };
    match maximal {
        None => push(MAXIMAL_BASE_INTERSECTION, st, Status::Skipped, "A is not commutative".into()),
        Some(false) => push(MAXIMAL_BASE_INTERSECTION, st, Status::Skipped, "Ã is not maximal commutative".into()),
        Some(true) => match facts.iter().find(|f| !f.meets_base) {
            Some(f) => push(MAXIMAL_BASE_INTERSECTION, st, Status::Fail, format!("<{}> ∩ Ã = {{0}}", f.generator)),
            None => push(MAXIMAL_BASE_INTERSECTION, st, Status::Pass, format!("{tested} ideals meet Ã")),
        },
    }

    // central kernel elements give ideals missing Ã
    let st = "α ≡ 1, g ∈ Z(G) ∩ σ^-1(id) ∖ {e} => <1ē - 1ḡ> ∩ Ã = {0}";
    let kernel = match sys.sigma_kernel()? {
        SigmaKernel::Finite(k) => k,
        SigmaKernel::Multiples(_) => unreachable!("finite group"),
    };
    let center = group.center()?;
    let central: Vec<GroupElem> = kernel.iter().filter(|g| !g.is_identity() && center.contains(g)).cloned().collect();
    if !sys.alpha_is_trivial() {
        push(CENTRAL_KERNEL_IDEAL, st, Status::Skipped, "α is not trivial".into());
    } else if central.is_empty() {
        push(CENTRAL_KERNEL_IDEAL, st, Status::Skipped, "Z(G) ∩ σ^-1(id) = {e}".into());
    } else {
        let mut failure = None;
        for g in &central {
            let gen = CrossedElem::one(sys).sub(&CrossedElem::monomial(sys, &ring.one(), g)?)?;
            let ideal = engine.closure(&[gen])?;
            if ideal.intersect_base().len() > 1 {
                failure = Some(g.clone());
                break;
            }
        }
        let names: Vec<String> = central.iter().map(|g| g.to_string()).collect();
        match failure {
            Some(g) => push(CENTRAL_KERNEL_IDEAL, st, Status::Fail, format!("<1ē - 1·{g}> meets Ã")),
            None => push(CENTRAL_KERNEL_IDEAL, st, Status::Pass, format!("g ∈ {{{}}}", names.join(", "))),
        }
    }

    // all ideals meeting Ã forces a faithful action
    let all_meet = facts.iter().all(|f| f.meets_base);
    let faithful = kernel.len() == 1;
    let st = "α ≡ 1, G abelian: every nonzero ideal meets Ã => σ_g != id for g != e";
    if !sys.alpha_is_trivial() || !group.is_abelian()? {
        push(FAITHFUL_ACTION, st, Status::Skipped, "needs α ≡ 1 and G abelian".into());
    } else if !all_meet {
        let f = facts.iter().find(|f| !f.meets_base).expect("some ideal misses Ã");
        push(FAITHFUL_ACTION, st, Status::Pass, format!("premise fails: <{}> ∩ Ã = {{0}}", f.generator));
    } else if faithful {
        push(FAITHFUL_ACTION, st, Status::Pass, "every ideal meets Ã and σ is injective".into());
    } else {
        push(FAITHFUL_ACTION, st, Status::Fail, "every ideal meets Ã but σ has a nontrivial kernel".into());
    }

    // integral domains: ideals meeting Ã forces maximality
    let st = "A domain, G abelian, α ≡ 1: every nonzero ideal meets Ã => Ã maximal commutative";
    if !ring.is_integral_domain()? || !group.is_abelian()? || !sys.alpha_is_trivial() {
        push(DOMAIN_MAXIMALITY, st, Status::Skipped, "needs A an integral domain, G abelian and α ≡ 1".into());
    } else if !all_meet {
        push(DOMAIN_MAXIMALITY, st, Status::Pass, "premise fails: some nonzero ideal misses Ã".into());
    } else if maximal == Some(true) {
        push(DOMAIN_MAXIMALITY, st, Status::Pass, "every ideal meets Ã and Ã is maximal commutative".into());
    } else {
        push(DOMAIN_MAXIMALITY, st, Status::Fail, "every ideal meets Ã but Ã is not maximal commutative".into());
    }

    // fixed zero-divisors obstruct
    let st = "A commutative: every nonzero ideal meets Ã ∖ D̃ => D ∩ A^G = {0}";
    if !commutative {
        push(ZERO_DIVISOR_OBSTRUCTION, st, Status::Skipped, "A is not commutative".into());
    } else {
        let fixed = sys.fixed_ring()?;
        let c = fixed.iter().find(|c| !c.is_zero() && zd.contains(c)).cloned();
        match c {
            None => {
                let meets = facts.iter().filter(|f| f.meets_base_outside_d).count();
                push(ZERO_DIVISOR_OBSTRUCTION, st, Status::Pass, format!(
                    "D ∩ A^G = {{0}}: conclusion holds ({meets} of {tested} ideals meet Ã ∖ D̃)"
                ))
            }
            Some(c) => {
                let d = ring.annihilator(&c)?.into_iter().find(|d| !d.is_zero()).expect("c is a zero-divisor");
                let g = group.elements()?.into_iter().find(|g| !g.is_identity()).expect("G != {e}");
                let ob = zero_divisor_obstruction(sys, &c, &d, &g)?;
                let hom = ob.descent.verify_homomorphism();
                let kills = ob.descent.kills(&ob.ideal)?;
                match (ob.holds(), hom, kills) {
                    (true, Ok(_), true) => push(ZERO_DIVISOR_OBSTRUCTION, st, Status::Pass, format!(
                        "c = {c}, d = {d}, g = {g}: <{d}*[{g}]> has {} elements and misses Ã ∖ D̃",
                        ob.ideal.len()
                    )),
                    (_, Err(e), _) => push(ZERO_DIVISOR_OBSTRUCTION, st, Status::Fail, format!("Γ check failed: {e}")),
                    (_, _, false) => push(ZERO_DIVISOR_OBSTRUCTION, st, Status::Fail, "Γ does not vanish on I".into()),
                    (false, _, _) => push(ZERO_DIVISOR_OBSTRUCTION, st, Status::Fail, format!(
                        "{}ē ∈ I is not a zero-divisor",
                        ob.non_zero_divisor.expect("offender")
                    )),
                }
            }
        }
    }
    Ok(report)
}

/// The right ideal of `A` generated by `generators`: additive span of `g a`.
pub fn right_ideal_generated(ring: &Arc<Ring>, generators: &[RingElem]) -> Result<BTreeSet<RingElem>> {
    let elements = ring.elements()?;
    let mut span: BTreeSet<RingElem> = BTreeSet::from([ring.zero()]);
    for g in generators {
        ring.owns(g)?;
        for a in &elements {
            let p = g.mul(a)?;
            if span.contains(&p) {
                continue;
            }
            // span + <p>
            let base: Vec<RingElem> = span.iter().cloned().collect();
            let mut cur = p.clone();
            while !span.contains(&cur) {
                for s in &base {
                    span.insert(s.add(&cur)?);
                }
                cur = cur.add(&p)?;
            }
        }
    }
    Ok(span)
}
