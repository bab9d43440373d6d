//! Finite groups (cyclic, symmetric, direct products, quotients) and the
//! integers, with canonical element payloads and textual forms.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{AlgebraError, Result};
use crate::limits;

/// Largest `n` for which `S_n` is constructible; permutations print as digits.
pub const MAX_SYMMETRIC_DEGREE: usize = 9;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupKind {
    /// `Z/k` written additively.
    Cyclic { k: u64 },
    /// `S_n`, permutations composed right to left.
    Symmetric { n: usize },
    DirectProduct(Vec<Arc<Group>>),
    /// `parent / subgroup`, cosets represented by their least element.
    Quotient { parent: Arc<Group>, subgroup: Vec<GPayload> },
    /// `(Z, +)`; arithmetic only, no enumeration.
    Integers,
}

/// Canonical group element payload. The derived order is the canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GPayload {
    Res(u64),
    /// One-line notation, 0-based images.
    Perm(Vec<u8>),
    Tuple(Vec<GPayload>),
    Int(BigInt),
}

pub struct Group {
    kind: GroupKind,
    canon: Option<HashMap<GPayload, GPayload>>,
    elements: OnceLock<Vec<GPayload>>,
    index: OnceLock<HashMap<GPayload, usize>>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({})", self.describe())
    }
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Group {}

fn factorial(n: usize) -> Option<u64> {
    (1..=n as u64).try_fold(1u64, |acc, k| acc.checked_mul(k))
}

fn permutations(n: usize) -> Vec<Vec<u8>> {
    fn rec(n: usize, cur: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Vec<u8>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i as u8);
                rec(n, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

impl Group {
    fn build(kind: GroupKind) -> Group {
        Group { kind, canon: None, elements: OnceLock::new(), index: OnceLock::new() }
    }

    pub fn cyclic(k: u64) -> Result<Arc<Group>> {
        if k == 0 {
            return Err(AlgebraError::InvalidParameter("cyclic group order must be positive".into()));
        }
        Ok(Arc::new(Group::build(GroupKind::Cyclic { k })))
    }

    pub fn symmetric(n: usize) -> Result<Arc<Group>> {
        if n == 0 || n > MAX_SYMMETRIC_DEGREE {
            return Err(AlgebraError::InvalidParameter(format!("S_n needs 1 <= n <= {MAX_SYMMETRIC_DEGREE}")));
        }
        Ok(Arc::new(Group::build(GroupKind::Symmetric { n })))
    }

    pub fn direct_product(factors: Vec<Arc<Group>>) -> Result<Arc<Group>> {
        if factors.is_empty() {
            return Err(AlgebraError::InvalidParameter("direct product needs at least one factor".into()));
        }
        Ok(Arc::new(Group::build(GroupKind::DirectProduct(factors))))
    }

    pub fn integers() -> Arc<Group> {
        Arc::new(Group::build(GroupKind::Integers))
    }

    /// `parent / subgroup`; fails unless `subgroup` is a normal subgroup.
    pub fn quotient(parent: &Arc<Group>, subgroup: &BTreeSet<GroupElem>) -> Result<Arc<Group>> {
        if let Some(bad) = subgroup.iter().find(|g| !parent.same(&g.group)) {
            return Err(AlgebraError::DomainMismatch(format!("{bad} is not in {}", parent.describe())));
        }
        if !parent.is_subgroup(subgroup)? {
            return Err(AlgebraError::NotNormal(format!("{} is not a subgroup of {}", show_set(subgroup), parent.describe())));
        }
        if let Some((g, n)) = parent.normality_witness(subgroup)? {
            return Err(AlgebraError::NotNormal(format!(
                "{} is not normal in {}: {g} * {n} * {g}^-1 leaves it",
                show_set(subgroup),
                parent.describe()
            )));
        }
        let members: Vec<GPayload> = subgroup.iter().map(|g| g.payload.clone()).collect();
        let mut canon = HashMap::new();
        for x in parent.element_payloads()? {
            let rep = members.iter().map(|n| parent.mul_p(x, n)).min().expect("subgroup contains e");
            canon.insert(x.clone(), rep);
        }
        let mut g = Group::build(GroupKind::Quotient { parent: parent.clone(), subgroup: members });
        g.canon = Some(canon);
        Ok(Arc::new(g))
    }

    /// `Z / mZ`, presented as the cyclic group of order `m`.
    pub fn integers_mod(m: u64) -> Result<Arc<Group>> {
        Group::cyclic(m)
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn describe(&self) -> String {
        match &self.kind {
            GroupKind::Cyclic { k } => format!("C{k}"),
            GroupKind::Symmetric { n } => format!("S{n}"),
            GroupKind::DirectProduct(fs) => fs.iter().map(|f| f.describe()).collect::<Vec<_>>().join(" x "),
            GroupKind::Quotient { parent, subgroup } => {
                let n: Vec<String> = subgroup.iter().map(|p| parent.format(p)).collect();
                format!("({})/{{{}}}", parent.describe(), n.join(","))
            }
            GroupKind::Integers => "Z".to_string(),
        }
    }

    pub fn is_finite(&self) -> bool {
        match &self.kind {
            GroupKind::Integers => false,
            GroupKind::DirectProduct(fs) => fs.iter().all(|f| f.is_finite()),
            _ => true,
        }
    }

    pub fn order(&self) -> Option<u64> {
        match &self.kind {
            GroupKind::Cyclic { k } => Some(*k),
            GroupKind::Symmetric { n } => factorial(*n),
            GroupKind::DirectProduct(fs) => fs.iter().try_fold(1u64, |acc, f| acc.checked_mul(f.order()?)),
            GroupKind::Quotient { parent, subgroup } => Some(parent.order()? / subgroup.len() as u64),
            GroupKind::Integers => None,
        }
    }

    pub(crate) fn same(self: &Arc<Self>, other: &Arc<Group>) -> bool {
        Arc::ptr_eq(self, other) || **self == **other
    }

    pub(crate) fn elem(self: &Arc<Self>, payload: GPayload) -> GroupElem {
        GroupElem { group: self.clone(), payload }
    }

    // ---- payload arithmetic -------------------------------------------------

    pub(crate) fn identity_p(&self) -> GPayload {
        match &self.kind {
            GroupKind::Cyclic { .. } => GPayload::Res(0),
            GroupKind::Symmetric { n } => GPayload::Perm((0..*n as u8).collect()),
            GroupKind::DirectProduct(fs) => GPayload::Tuple(fs.iter().map(|f| f.identity_p()).collect()),
            GroupKind::Quotient { parent, .. } => self.canon_p(parent.identity_p()),
            GroupKind::Integers => GPayload::Int(BigInt::zero()),
        }
    }

    fn canon_p(&self, p: GPayload) -> GPayload {
        match &self.canon {
            Some(c) => c.get(&p).cloned().expect("element of the parent group"),
            None => p,
        }
    }

    pub(crate) fn mul_p(&self, a: &GPayload, b: &GPayload) -> GPayload {
        match (&self.kind, a, b) {
            (GroupKind::Cyclic { k }, GPayload::Res(x), GPayload::Res(y)) => GPayload::Res((x + y) % k),
            (GroupKind::Symmetric { .. }, GPayload::Perm(x), GPayload::Perm(y)) => {
                GPayload::Perm(y.iter().map(|&i| x[i as usize]).collect())
            }
            (GroupKind::DirectProduct(fs), GPayload::Tuple(x), GPayload::Tuple(y)) => {
                GPayload::Tuple(fs.iter().zip(x.iter().zip(y)).map(|(f, (u, v))| f.mul_p(u, v)).collect())
            }
            (GroupKind::Quotient { parent, .. }, _, _) => self.canon_p(parent.mul_p(a, b)),
            (GroupKind::Integers, GPayload::Int(x), GPayload::Int(y)) => GPayload::Int(x + y),
            _ => unreachable!("payload does not belong to {}", self.describe()),
        }
    }

    pub(crate) fn inv_p(&self, a: &GPayload) -> GPayload {
        match (&self.kind, a) {
            (GroupKind::Cyclic { k }, GPayload::Res(x)) => GPayload::Res((k - x) % k),
            (GroupKind::Symmetric { .. }, GPayload::Perm(x)) => {
                let mut inv = vec![0u8; x.len()];
                for (i, &xi) in x.iter().enumerate() {
                    inv[xi as usize] = i as u8;
                }
                GPayload::Perm(inv)
            }
            (GroupKind::DirectProduct(fs), GPayload::Tuple(x)) => {
                GPayload::Tuple(fs.iter().zip(x).map(|(f, u)| f.inv_p(u)).collect())
            }
            (GroupKind::Quotient { parent, .. }, _) => self.canon_p(parent.inv_p(a)),
            (GroupKind::Integers, GPayload::Int(x)) => GPayload::Int(-x),
            _ => unreachable!("payload does not belong to {}", self.describe()),
        }
    }

    pub(crate) fn pow_p(&self, a: &GPayload, n: &BigInt) -> GPayload {
        if let (GroupKind::Integers, GPayload::Int(x)) = (&self.kind, a) {
            return GPayload::Int(x * n);
        }
        let base = if n.is_negative() { self.inv_p(a) } else { a.clone() };
        let mut k = n.abs();
        if let Some(ord) = self.element_order_p(&base) {
            k %= BigInt::from(ord);
        }
        let mut k = k.to_u64().expect("reduced exponent");
        let mut acc = self.identity_p();
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_p(&acc, &sq);
            }
            sq = self.mul_p(&sq, &sq);
            k >>= 1;
        }
        acc
    }

    fn element_order_p(&self, a: &GPayload) -> Option<u64> {
        if matches!(self.kind, GroupKind::Integers) || !self.is_finite() {
            return match a {
                GPayload::Int(x) if x.is_zero() => Some(1),
                _ => None,
            };
        }
        let e = self.identity_p();
        let mut cur = a.clone();
        let mut k = 1;
        while cur != e {
            cur = self.mul_p(&cur, a);
            k += 1;
        }
        Some(k)
    }

    // ---- enumeration --------------------------------------------------------

    pub(crate) fn element_payloads(&self) -> Result<&[GPayload]> {
        if !self.is_finite() {
            return Err(AlgebraError::UnsupportedEnumeration(format!("{} is infinite", self.describe())));
        }
        limits::guard_group(&format!("group {}", self.describe()), self.order())?;
        Ok(self.elements.get_or_init(|| {
            let mut v: Vec<GPayload> = match &self.kind {
                GroupKind::Cyclic { k } => (0..*k).map(GPayload::Res).collect(),
                GroupKind::Symmetric { n } => permutations(*n).into_iter().map(GPayload::Perm).collect(),
                GroupKind::DirectProduct(fs) => {
                    let mut acc: Vec<Vec<GPayload>> = vec![vec![]];
                    for f in fs {
                        let els = f.element_payloads().expect("factor within guard");
                        acc = acc
                            .into_iter()
                            .flat_map(|pre| {
                                els.iter().map(move |x| {
                                    let mut t = pre.clone();
                                    t.push(x.clone());
                                    t
                                })
                            })
                            .collect();
                    }
                    acc.into_iter().map(GPayload::Tuple).collect()
                }
                GroupKind::Quotient { .. } => {
                    let reps: BTreeSet<GPayload> = self.canon.as_ref().expect("quotient").values().cloned().collect();
                    reps.into_iter().collect()
                }
                GroupKind::Integers => unreachable!(),
            };
            v.sort();
            v
        }))
    }

    /// All elements in canonical order.
    pub fn elements(self: &Arc<Self>) -> Result<Vec<GroupElem>> {
        Ok(self.element_payloads()?.iter().map(|p| self.elem(p.clone())).collect())
    }

    /// Position of a payload in the canonical enumeration.
    pub(crate) fn index_of_p(&self, a: &GPayload) -> usize {
        let idx = self.index.get_or_init(|| {
            self.element_payloads()
                .expect("finite group within guard")
                .iter()
                .enumerate()
                .map(|(i, p)| (p.clone(), i))
                .collect()
        });
        idx[a]
    }

    pub fn identity(self: &Arc<Self>) -> GroupElem {
        self.elem(self.identity_p())
    }

    pub fn is_abelian(self: &Arc<Self>) -> Result<bool> {
        if matches!(self.kind, GroupKind::Integers) {
            return Ok(true);
        }
        let els = self.element_payloads()?;
        Ok(els.iter().all(|a| els.iter().all(|b| self.mul_p(a, b) == self.mul_p(b, a))))
    }

    /// `Z(G)` by brute force.
    pub fn center(self: &Arc<Self>) -> Result<BTreeSet<GroupElem>> {
        let els = self.element_payloads()?;
        Ok(els
            .iter()
            .filter(|a| els.iter().all(|b| self.mul_p(a, b) == self.mul_p(b, a)))
            .map(|a| self.elem(a.clone()))
            .collect())
    }

    /// `<g>`; for the integers only `<0>` is finite.
    pub fn cyclic_subgroup(self: &Arc<Self>, g: &GroupElem) -> Result<BTreeSet<GroupElem>> {
        self.owns(g)?;
        if !self.is_finite() && !g.is_identity() {
            return Err(AlgebraError::UnsupportedEnumeration(format!("<{g}> is infinite in {}", self.describe())));
        }
        let e = self.identity_p();
        let mut out = BTreeSet::new();
        let mut cur = e.clone();
        loop {
            out.insert(self.elem(cur.clone()));
            cur = self.mul_p(&cur, &g.payload);
            if cur == e {
                return Ok(out);
            }
        }
    }

    pub fn is_subgroup(self: &Arc<Self>, subset: &BTreeSet<GroupElem>) -> Result<bool> {
        if !self.is_finite() {
            return Err(AlgebraError::UnsupportedEnumeration("subgroup checks need a finite group".into()));
        }
        if !subset.contains(&self.identity()) {
            return Ok(false);
        }
        Ok(subset.iter().all(|a| {
            subset.iter().all(|b| {
                let ab_inv = self.mul_p(&a.payload, &self.inv_p(&b.payload));
                subset.contains(&self.elem(ab_inv))
            })
        }))
    }

    fn normality_witness(self: &Arc<Self>, subset: &BTreeSet<GroupElem>) -> Result<Option<(GroupElem, GroupElem)>> {
        for g in self.element_payloads()? {
            let gi = self.inv_p(g);
            for n in subset {
                let c = self.mul_p(&self.mul_p(g, &n.payload), &gi);
                if !subset.contains(&self.elem(c)) {
                    return Ok(Some((self.elem(g.clone()), n.clone())));
                }
            }
        }
        Ok(None)
    }

    /// Whether `subset` is a subgroup stable under conjugation.
    pub fn is_normal(self: &Arc<Self>, subset: &BTreeSet<GroupElem>) -> Result<bool> {
        if subset.iter().any(|g| !self.same(&g.group)) {
            return Ok(false);
        }
        Ok(self.is_subgroup(subset)? && self.normality_witness(subset)?.is_none())
    }

    /// The coset projection `G -> G/N` when `self` is a quotient of `g`'s group.
    pub fn project(self: &Arc<Self>, g: &GroupElem) -> Result<GroupElem> {
        match &self.kind {
            GroupKind::Quotient { parent, .. } if parent.same(&g.group) => Ok(self.elem(self.canon_p(g.payload.clone()))),
            _ => Err(AlgebraError::DomainMismatch(format!("{} is not a quotient of {}", self.describe(), g.group.describe()))),
        }
    }

    pub(crate) fn owns(self: &Arc<Self>, g: &GroupElem) -> Result<()> {
        if self.same(&g.group) {
            Ok(())
        } else {
            Err(AlgebraError::DomainMismatch(format!("{g} belongs to {}, not {}", g.group.describe(), self.describe())))
        }
    }

    // ---- text ---------------------------------------------------------------

    /// Cyclic and integer elements print as numbers, permutations in cycle
    /// notation such as `(12)(34)` with `()` for the identity, tuples as `(a,b)`.
    pub fn format(&self, a: &GPayload) -> String {
        match a {
            GPayload::Res(x) => x.to_string(),
            GPayload::Int(x) => x.to_string(),
            GPayload::Perm(p) => format_cycles(p),
            GPayload::Tuple(t) => {
                let fs = match &self.kind {
                    GroupKind::DirectProduct(fs) => fs.clone(),
                    GroupKind::Quotient { parent, .. } => match &parent.kind {
                        GroupKind::DirectProduct(fs) => fs.clone(),
                        _ => unreachable!(),
                    },
                    _ => unreachable!(),
                };
                let parts: Vec<String> = fs.iter().zip(t).map(|(f, x)| f.format(x)).collect();
                format!("({})", parts.join(","))
            }
        }
    }

    pub fn parse(self: &Arc<Self>, input: &str) -> Result<GroupElem> {
        let s = input.trim();
        let p = self.parse_p(s).map_err(|m| AlgebraError::parse(input, 0, m))?;
        Ok(self.elem(p))
    }

    fn parse_p(&self, s: &str) -> std::result::Result<GPayload, String> {
        let s = s.trim();
        match &self.kind {
            GroupKind::Cyclic { k } => {
                let v: BigInt = s.parse().map_err(|_| format!("expected an integer, got `{s}`"))?;
                let r = ((v % BigInt::from(*k)) + BigInt::from(*k)) % BigInt::from(*k);
                Ok(GPayload::Res(r.to_u64().expect("residue")))
            }
            GroupKind::Integers => s.parse().map(GPayload::Int).map_err(|_| format!("expected an integer, got `{s}`")),
            GroupKind::Symmetric { n } => parse_permutation(s, *n).map(GPayload::Perm),
            GroupKind::DirectProduct(fs) => {
                let inner = s
                    .strip_prefix('(')
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| format!("expected a tuple `(a,b,...)`, got `{s}`"))?;
                let parts = split_top_level(inner);
                if parts.len() != fs.len() {
                    return Err(format!("expected {} components, got {}", fs.len(), parts.len()));
                }
                fs.iter().zip(parts).map(|(f, p)| f.parse_p(p)).collect::<std::result::Result<_, _>>().map(GPayload::Tuple)
            }
            GroupKind::Quotient { parent, .. } => Ok(self.canon_p(parent.parse_p(s)?)),
        }
    }
}

fn show_set(s: &BTreeSet<GroupElem>) -> String {
    let v: Vec<String> = s.iter().map(|g| g.to_string()).collect();
    format!("{{{}}}", v.join(", "))
}

fn format_cycles(p: &[u8]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] as usize == start {
            continue;
        }
        out.push('(');
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            out.push_str(&(i + 1).to_string());
            i = p[i] as usize;
        }
        out.push(')');
    }
    if out.is_empty() {
        "()".to_string()
    } else {
        out
    }
}

/// Cycle notation `(12)(34)`, `()`/`e` for the identity, or a one-line
/// word in brackets such as `[213]`.
fn parse_permutation(s: &str, n: usize) -> std::result::Result<Vec<u8>, String> {
    let mut perm: Vec<u8> = (0..n as u8).collect();
    if s == "e" || s == "()" || s.is_empty() {
        return Ok(perm);
    }
    let digit = |c: char| -> std::result::Result<usize, String> {
        match c.to_digit(10) {
            Some(d) if d >= 1 && (d as usize) <= n => Ok(d as usize - 1),
            _ => Err(format!("`{c}` is not a point of {{1..{n}}}")),
        }
    };
    if let Some(word) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        let imgs: Vec<usize> = word.chars().filter(|c| !c.is_whitespace()).map(digit).collect::<std::result::Result<_, _>>()?;
        let mut seen = vec![false; n];
        if imgs.len() != n || imgs.iter().any(|&i| std::mem::replace(&mut seen[i], true)) {
            return Err(format!("`{s}` is not a permutation of {{1..{n}}}"));
        }
        return Ok(imgs.into_iter().map(|i| i as u8).collect());
    }
    // product of cycles, rightmost applied first
    let mut rest = s;
    let mut cycles = Vec::new();
    while !rest.is_empty() {
        let body_end = rest.find(')').ok_or_else(|| format!("unbalanced cycle in `{s}`"))?;
        let body = rest.strip_prefix('(').ok_or_else(|| format!("expected `(` in `{s}`"))?;
        let pts: Vec<usize> = body[..body_end - 1]
            .chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(digit)
            .collect::<std::result::Result<_, _>>()?;
        let distinct: BTreeSet<_> = pts.iter().collect();
        if distinct.len() != pts.len() {
            return Err(format!("repeated point in cycle of `{s}`"));
        }
        cycles.push(pts);
        rest = rest[body_end + 1..].trim_start();
    }
    for cyc in cycles.iter().rev() {
        let mut c: Vec<u8> = (0..n as u8).collect();
        for (i, &a) in cyc.iter().enumerate() {
            c[a] = cyc[(i + 1) % cyc.len()] as u8;
        }
        perm = perm.iter().map(|&i| c[i as usize]).collect();
    }
    Ok(perm)
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

/// An element of a [`Group`].
#[derive(Clone)]
pub struct GroupElem {
    group: Arc<Group>,
    payload: GPayload,
}

impl GroupElem {
    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn payload(&self) -> &GPayload {
        &self.payload
    }

    pub fn is_identity(&self) -> bool {
        self.payload == self.group.identity_p()
    }

    pub fn mul(&self, other: &GroupElem) -> Result<GroupElem> {
        self.group.owns(other)?;
        Ok(self.group.elem(self.group.mul_p(&self.payload, &other.payload)))
    }

    pub fn inv(&self) -> GroupElem {
        self.group.elem(self.group.inv_p(&self.payload))
    }

    pub fn pow(&self, n: i64) -> GroupElem {
        self.group.elem(self.group.pow_p(&self.payload, &BigInt::from(n)))
    }

    /// Element order, `None` for infinite order.
    pub fn order(&self) -> Option<u64> {
        self.group.element_order_p(&self.payload)
    }

    /// The integer value of an element of `Z` or `Z/k`.
    pub fn as_integer(&self) -> Option<BigInt> {
        match &self.payload {
            GPayload::Res(x) => Some(BigInt::from(*x)),
            GPayload::Int(x) => Some(x.clone()),
            _ => None,
        }
    }
}

impl PartialEq for GroupElem {
    fn eq(&self, other: &Self) -> bool {
        self.payload == other.payload && self.group.same(&other.group)
    }
}

impl Eq for GroupElem {}

impl Hash for GroupElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.payload.hash(state);
    }
}

impl PartialOrd for GroupElem {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroupElem {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.payload.cmp(&other.payload)
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.group.format(&self.payload))
    }
}

impl fmt::Debug for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{self}", self.group.describe())
    }
}
