//! Finite partial applicative structures and the PR-structures they induce.
//!
//! Every element `r` of a partial applicative structure acts as a partial
//! map `[r] : x -> r.x`. The induced PR-structure has all subsets of the
//! carrier as propositions, the carrier itself as realizers, and the arrow
//! set `A => B` (elements sending every member of `A` into `B`) as table.

use std::fmt;

use serde::Serialize;

use crate::error::{check_budget, Error, Result};
use crate::order;
use crate::structure::{check_names, PropId, PrStructure};

/// Carrier elements are indexed; subsets are stored as 64-bit masks.
pub const MAX_CARRIER: usize = 64;

/// Default carrier cap for [`Pas::induce_sigma`]: `2^12` propositions.
pub const DEFAULT_SIGMA_CAP: usize = 12;

/// Default cap on the super-carrier for nested and relative structures.
pub const DEFAULT_SUB_CAP: usize = 8;

/// A subset of a carrier of at most [`MAX_CARRIER`] elements.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(pub u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(n: usize) -> Subset {
        if n >= 64 {
            Subset(!0)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn singleton(x: usize) -> Subset {
        Subset(1 << x)
    }

    pub fn from_elems<I: IntoIterator<Item = usize>>(elems: I) -> Subset {
        Subset(elems.into_iter().fold(0, |m, x| m | (1 << x)))
    }

    pub fn contains(self, x: usize) -> bool {
        x < 64 && self.0 & (1 << x) != 0
    }

    pub fn insert(&mut self, x: usize) {
        self.0 |= 1 << x;
    }

    pub fn is_subset(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let x = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(x)
            }
        })
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A finite carrier with a partial binary application.
#[derive(Clone, PartialEq, Eq)]
pub struct Pas {
    carrier: Vec<String>,
    table: Vec<Option<usize>>,
}

impl fmt::Debug for Pas {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pas {:?} [", self.carrier)?;
        for x in 0..self.size() {
            for y in 0..self.size() {
                match self.app(x, y) {
                    Some(v) => write!(f, " {x}.{y}={v}")?,
                    None => write!(f, " {x}.{y}=_")?,
                }
            }
        }
        write!(f, " ]")
    }
}

/// Identity and composition realizers for a preorderal induced structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PasPreorderWitness {
    pub identity: usize,
    /// `compose[s][r]` acts as `s` after `r`.
    pub compose: Vec<Vec<usize>>,
}

impl PasPreorderWitness {
    pub fn compose(&self, s: usize, r: usize) -> usize {
        self.compose[s][r]
    }
}

/// Findings of the orbit-theorem harness for one structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub preorderal: bool,
    pub posetal: bool,
    /// `(r, s)` pairs violating the orbit condition.
    pub orbit_failures: Vec<(usize, usize)>,
    /// Total `[r]` that differ from the identity map.
    pub non_identity_total_maps: Vec<usize>,
    /// `(r, s)` with no `t` such that `[t]` extends `[s] o [r]`.
    pub uncomposable: Vec<(usize, usize)>,
}

impl OrbitReport {
    /// Whether every consequence of posetality (resp. preorderality) that the
    /// harness checks was observed.
    pub fn holds(&self) -> bool {
        let posetal_ok = !self.posetal
            || (self.orbit_failures.is_empty() && self.non_identity_total_maps.is_empty());
        let preorderal_ok = !self.preorderal || self.uncomposable.is_empty();
        posetal_ok && preorderal_ok
    }
}

impl Pas {
    pub fn new(carrier: Vec<String>, table: Vec<Option<usize>>) -> Result<Pas> {
        check_names("carrier", &carrier)?;
        let n = carrier.len();
        if n > MAX_CARRIER {
            return Err(Error::Budget {
                bound: "carrier size",
                limit: MAX_CARRIER as u128,
                required: n as u128,
            });
        }
        if table.len() != n * n {
            return Err(Error::Malformed(format!(
                "application table has {} entries, expected {}",
                table.len(),
                n * n
            )));
        }
        if let Some(&Some(v)) = table.iter().find(|v| matches!(v, Some(v) if *v >= n)) {
            return Err(Error::InvalidElement { id: v, len: n });
        }
        Ok(Pas { carrier, table })
    }

    pub fn from_fn<F>(carrier: Vec<String>, mut app: F) -> Result<Pas>
    where
        F: FnMut(usize, usize) -> Option<usize>,
    {
        let n = carrier.len();
        let table = (0..n * n).map(|i| app(i / n, i % n)).collect();
        Pas::new(carrier, table)
    }

    /// Carrier named `0..n`.
    pub fn numbered<F>(n: usize, app: F) -> Result<Pas>
    where
        F: FnMut(usize, usize) -> Option<usize>,
    {
        Pas::from_fn((0..n).map(|i| i.to_string()).collect(), app)
    }

    pub fn size(&self) -> usize {
        self.carrier.len()
    }

    pub fn names(&self) -> &[String] {
        &self.carrier
    }

    pub fn name(&self, x: usize) -> &str {
        &self.carrier[x]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.carrier.iter().position(|n| n == name)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size()
    }

    fn check(&self, x: usize) -> Result<()> {
        if x < self.size() {
            Ok(())
        } else {
            Err(Error::InvalidElement {
                id: x,
                len: self.size(),
            })
        }
    }

    #[inline]
    pub(crate) fn app(&self, x: usize, y: usize) -> Option<usize> {
        self.table[x * self.size() + y]
    }

    /// `x . y`, or `None` when undefined.
    pub fn apply(&self, x: usize, y: usize) -> Result<Option<usize>> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.app(x, y))
    }

    pub fn table(&self) -> &[Option<usize>] {
        &self.table
    }

    pub fn is_total(&self) -> bool {
        self.table.iter().all(Option::is_some)
    }

    pub fn full_set(&self) -> Subset {
        Subset::full(self.size())
    }

    pub fn domain(&self, r: usize) -> Subset {
        Subset::from_elems(self.elements().filter(|&x| self.app(r, x).is_some()))
    }

    pub fn image(&self, r: usize) -> Subset {
        Subset::from_elems(self.elements().filter_map(|x| self.app(r, x)))
    }

    /// Elements `r` with `r.a` defined and in `b` for every `a` in `a_set`.
    pub fn arrow_set(&self, a_set: Subset, b_set: Subset) -> Subset {
        Subset::from_elems(self.elements().filter(|&r| {
            a_set
                .iter()
                .all(|a| matches!(self.app(r, a), Some(v) if b_set.contains(v)))
        }))
    }

    pub fn subset_name(&self, set: Subset) -> String {
        let names: Vec<&str> = set.iter().map(|x| self.carrier[x].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }

    /// The induced PR-structure over the powerset of the carrier. Proposition
    /// `k` is the subset with bitmask `k`.
    pub fn induce_sigma(&self, cap: usize) -> Result<PrStructure> {
        let n = self.size();
        check_budget("max carrier", cap as u128, n as u128)?;
        let props: Vec<String> = (0..1u64 << n).map(|m| self.subset_name(Subset(m))).collect();
        let p = props.len();
        // image[r][A] and domain masks, built incrementally over A
        let mut images = vec![0u64; n * p];
        let domains: Vec<u64> = self.elements().map(|r| self.domain(r).0).collect();
        for r in 0..n {
            for a in 1..p {
                let low = a.trailing_zeros() as usize;
                let rest = a & (a - 1);
                let bit = self.app(r, low).map_or(0, |v| 1u64 << v);
                images[r * p + a] = images[r * p + rest] | bit;
            }
        }
        let mut s = PrStructure::new(props, self.carrier.clone())?;
        for a in 0..p {
            for r in 0..n {
                if a as u64 & !domains[r] != 0 {
                    continue;
                }
                let img = images[r * p + a];
                for b in 0..p {
                    if img & !(b as u64) == 0 {
                        s.insert_unchecked(PropId(a), PropId(b), crate::structure::RealId(r));
                    }
                }
            }
        }
        Ok(s)
    }

    /// An identity `i` with `i.a = a` everywhere, and for every `(r, s)` an
    /// element acting as `s . (r . a)` wherever that is defined. Least
    /// elements are chosen.
    pub fn preorder_witness(&self) -> Option<PasPreorderWitness> {
        let n = self.size();
        let identity = self
            .elements()
            .find(|&i| self.elements().all(|a| self.app(i, a) == Some(a)))?;
        let mut compose = vec![vec![0; n]; n];
        for s in self.elements() {
            for r in self.elements() {
                let t = self.elements().find(|&t| {
                    self.elements().all(|a| {
                        match self.app(r, a).and_then(|ra| self.app(s, ra)) {
                            Some(v) => self.app(t, a) == Some(v),
                            None => true,
                        }
                    })
                })?;
                compose[s][r] = t;
            }
        }
        Some(PasPreorderWitness { identity, compose })
    }

    /// `r . s = s`, or the orbit `s, [r](s), [r]^2(s), ...` runs into an
    /// undefined application before repeating a value.
    pub fn orbit_condition(&self, r: usize, s: usize) -> Result<bool> {
        self.check(r)?;
        self.check(s)?;
        if self.app(r, s) == Some(s) {
            return Ok(true);
        }
        let mut seen = Subset::singleton(s);
        let mut x = s;
        // a repetition-free orbit has at most |carrier| values
        for _ in 0..=self.size() {
            match self.app(r, x) {
                None => return Ok(true),
                Some(next) if seen.contains(next) => return Ok(false),
                Some(next) => {
                    seen.insert(next);
                    x = next;
                }
            }
        }
        unreachable!("orbit longer than the carrier without repetition")
    }

    /// Runs the consequences of posetality for the induced structure: the
    /// orbit condition for all `(r, s)`, total maps being the identity, and
    /// (when preorderal) closure of represented maps under composition up to
    /// extension.
    pub fn orbit_report(&self, cap: usize) -> Result<OrbitReport> {
        let sigma = self.induce_sigma(cap)?;
        let preorderal = order::is_preorderal(&sigma);
        let posetal = preorderal && order::has_antisymmetric_entailment(&sigma);
        let mut report = OrbitReport {
            preorderal,
            posetal,
            orbit_failures: Vec::new(),
            non_identity_total_maps: Vec::new(),
            uncomposable: Vec::new(),
        };
        if posetal {
            for r in self.elements() {
                for s in self.elements() {
                    if !self.orbit_condition(r, s)? {
                        report.orbit_failures.push((r, s));
                    }
                }
                let total = self.domain(r) == self.full_set();
                if total && self.elements().any(|x| self.app(r, x) != Some(x)) {
                    report.non_identity_total_maps.push(r);
                }
            }
        }
        if preorderal {
            for r in self.elements() {
                for s in self.elements() {
                    let extends = |t: usize| {
                        self.elements().all(|a| {
                            match self.app(r, a).and_then(|ra| self.app(s, ra)) {
                                Some(v) => self.app(t, a) == Some(v),
                                None => true,
                            }
                        })
                    };
                    if !self.elements().any(extends) {
                        report.uncomposable.push((r, s));
                    }
                }
            }
        }
        Ok(report)
    }

    /// Whether posetality of the induced structure entailed every checked
    /// consequence. A `false` result means the implementation is wrong.
    pub fn check_orbit_theorem(&self, cap: usize) -> Result<bool> {
        Ok(self.orbit_report(cap)?.holds())
    }

    /// For all `x, y` some `r` has `r . x = y`.
    pub fn is_totally_matching(&self) -> bool {
        self.elements().all(|x| {
            self.elements()
                .all(|y| self.elements().any(|r| self.app(r, x) == Some(y)))
        })
    }

    /// For a total application: the induced structure is posetal exactly
    /// when `x . y = y` everywhere. Returns that right-hand side after
    /// checking it against the decided left-hand side.
    pub fn magma_posetal_check(&self, cap: usize) -> Result<bool> {
        if !self.is_total() {
            return Err(Error::Precondition("application is not total".into()));
        }
        let rhs = self
            .elements()
            .all(|x| self.elements().all(|y| self.app(x, y) == Some(y)));
        let lhs = order::is_posetal(&self.induce_sigma(cap)?);
        if lhs != rhs {
            return Err(Error::Inconsistent(format!(
                "magma posetal={lhs} but right-projection law={rhs}"
            )));
        }
        Ok(rhs)
    }

    /// A pairing combinator with projections: `(p . a0) . a1` always defined
    /// and `p_i . ((p . a0) . a1) = a_i`. Least triple first.
    pub fn find_pairing(&self) -> Option<(usize, usize, usize)> {
        let n = self.size();
        for p in self.elements() {
            let mut pairs = Vec::with_capacity(n * n);
            let ok = self.elements().all(|a0| {
                self.elements().all(|a1| {
                    match self.app(p, a0).and_then(|pa| self.app(pa, a1)) {
                        Some(v) => {
                            pairs.push((a0, a1, v));
                            true
                        }
                        None => false,
                    }
                })
            });
            if !ok {
                continue;
            }
            let proj = |i: usize| {
                self.elements().find(|&q| {
                    pairs.iter().all(|&(a0, a1, v)| {
                        self.app(q, v) == Some(if i == 0 { a0 } else { a1 })
                    })
                })
            };
            if let (Some(p0), Some(p1)) = (proj(0), proj(1)) {
                return Some((p, p0, p1));
            }
        }
        None
    }

    /// Pairing combinators only exist on trivial structures when the induced
    /// structure is posetal. Returns whether a pairing was found.
    pub fn pairing_corollary_check(&self, cap: usize) -> Result<bool> {
        let found = self.find_pairing();
        if found.is_some() && self.size() > 1 && order::is_posetal(&self.induce_sigma(cap)?) {
            return Err(Error::Inconsistent(format!(
                "pairing {found:?} on a posetal structure of size {}",
                self.size()
            )));
        }
        Ok(found.is_some())
    }

    /// A `k` combinator: `(k . x) . y = x` for all `x, y`.
    pub fn find_k_combinator(&self) -> Option<usize> {
        self.elements().find(|&k| {
            self.elements().all(|x| {
                self.elements()
                    .all(|y| self.app(k, x).and_then(|kx| self.app(kx, y)) == Some(x))
            })
        })
    }

    /// Structures with a `k` combinator only induce posetal structures when
    /// trivial. Returns whether a `k` was found.
    pub fn combinator_corollary_check(&self, cap: usize) -> Result<bool> {
        let k = self.find_k_combinator();
        if k.is_some() && self.size() > 1 && order::is_posetal(&self.induce_sigma(cap)?) {
            return Err(Error::Inconsistent(format!(
                "k combinator {k:?} on a posetal structure of size {}",
                self.size()
            )));
        }
        Ok(k.is_some())
    }
}

/// A structure embedded into a larger one, compatibly with application.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubPasPair {
    sub: Pas,
    sup: Pas,
    embedding: Vec<usize>,
}

impl SubPasPair {
    /// `embedding[x]` is the image of sub-element `x`. The embedding must be
    /// injective, and defined sub-applications must be defined in the
    /// super-structure with the embedded value.
    pub fn new(sub: Pas, sup: Pas, embedding: Vec<usize>) -> Result<SubPasPair> {
        if embedding.len() != sub.size() {
            return Err(Error::NotSubstructure(format!(
                "embedding has {} entries for {} sub-elements",
                embedding.len(),
                sub.size()
            )));
        }
        let mut seen = Subset::EMPTY;
        for &e in &embedding {
            sup.check(e)?;
            if seen.contains(e) {
                return Err(Error::NotSubstructure(format!("element {e} hit twice")));
            }
            seen.insert(e);
        }
        for x in sub.elements() {
            for y in sub.elements() {
                if let Some(v) = sub.app(x, y) {
                    if sup.app(embedding[x], embedding[y]) != Some(embedding[v]) {
                        return Err(Error::NotSubstructure(format!(
                            "{}.{} = {} is not preserved",
                            sub.name(x),
                            sub.name(y),
                            sub.name(v)
                        )));
                    }
                }
            }
        }
        Ok(SubPasPair {
            sub,
            sup,
            embedding,
        })
    }

    /// The structure sitting inside itself.
    pub fn diagonal(pas: Pas) -> SubPasPair {
        let embedding = pas.elements().collect();
        SubPasPair {
            sub: pas.clone(),
            sup: pas,
            embedding,
        }
    }

    pub fn sub(&self) -> &Pas {
        &self.sub
    }

    pub fn sup(&self) -> &Pas {
        &self.sup
    }

    pub fn embedding(&self) -> &[usize] {
        &self.embedding
    }

    fn embed(&self, set: Subset) -> Subset {
        Subset::from_elems(set.iter().map(|x| self.embedding[x]))
    }

    /// Sub-elements whose embedding lies in the super-structure's arrow set.
    fn relative_arrow(&self, a: Subset, b: Subset) -> Subset {
        let arrow = self.sup.arrow_set(a, b);
        Subset::from_elems(self.sub.elements().filter(|&x| arrow.contains(self.embedding[x])))
    }

    /// Propositions are subsets of the super-carrier, realizers are the
    /// sub-elements, and `rho(I, I')` is the part of the super-structure's
    /// arrow set lying in the sub-carrier.
    pub fn induce_relative(&self, cap: usize) -> Result<PrStructure> {
        let m = self.sup.size();
        check_budget("max carrier", cap as u128, m as u128)?;
        let p = 1usize << m;
        let props = (0..p as u64).map(|k| self.sup.subset_name(Subset(k))).collect();
        let mut s = PrStructure::new(props, self.sub.names().to_vec())?;
        for a in 0..p {
            for b in 0..p {
                for x in self.relative_arrow(Subset(a as u64), Subset(b as u64)).iter() {
                    s.insert_unchecked(PropId(a), PropId(b), crate::structure::RealId(x));
                }
            }
        }
        Ok(s)
    }

    /// Propositions are pairs `(I, J)` with `I` a set of sub-elements whose
    /// embedding lies inside the super-set `J`. A sub-element realizes
    /// `(I, J) -> (I', J')` when it maps `J` into `J'` in the super-structure
    /// and `I` into `I'` in the sub-structure.
    pub fn induce_nested(&self, cap: usize) -> Result<PrStructure> {
        let m = self.sup.size();
        check_budget("max carrier", cap as u128, m as u128)?;
        let mut pairs = Vec::new();
        for j in 0..1u64 << m {
            for i in 0..1u64 << self.sub.size() {
                if self.embed(Subset(i)).is_subset(Subset(j)) {
                    pairs.push((Subset(i), Subset(j)));
                }
            }
        }
        let props = pairs
            .iter()
            .map(|&(i, j)| format!("({}|{})", self.sub.subset_name(i), self.sup.subset_name(j)))
            .collect();
        let mut s = PrStructure::new(props, self.sub.names().to_vec())?;
        for (a, &(i, j)) in pairs.iter().enumerate() {
            for (b, &(i2, j2)) in pairs.iter().enumerate() {
                let outer = self.relative_arrow(j, j2);
                let inner = self.sub.arrow_set(i, i2);
                for x in Subset(outer.0 & inner.0).iter() {
                    s.insert_unchecked(PropId(a), PropId(b), crate::structure::RealId(x));
                }
            }
        }
        Ok(s)
    }
}
