//! Suprema in explicit relations and fibers, brute-force completeness, and
//! incompleteness certificates for totally matching applicative structures.
//!
//! A set-indexed family over a finite carrier has the same suprema as its
//! image set, so families are handled as subsets throughout.

use serde::Serialize;

use crate::appstruct::{Pas, Subset};
use crate::error::{check_budget, Error, Result};
use crate::fiber::Fiber;
use crate::structure::{BinRel, PrStructure};

pub const DEFAULT_MAX_FAMILIES: u128 = 1 << 20;

/// Cap on the number of block-constant functions searched.
pub const DEFAULT_MAX_BLOCK_FUNCTIONS: u128 = 1 << 24;

/// Why one candidate fails to be a supremum or adjoint-supremum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateFailure {
    pub candidate: usize,
    /// A member `a` without `R(a, candidate)`.
    pub not_upper_bound: Option<usize>,
    /// An upper bound `c` without `R(candidate, c)`.
    pub not_least: Option<usize>,
    /// A `c` where "upper bound" and `R(candidate, c)` disagree.
    pub adjoint_mismatch: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupremumResult {
    pub family: Vec<usize>,
    pub suprema: Vec<usize>,
    pub adjoint_suprema: Vec<usize>,
    /// One entry per carrier element that is not both.
    pub failures: Vec<CandidateFailure>,
}

impl SupremumResult {
    pub fn supremum(&self) -> Option<usize> {
        self.suprema.first().copied()
    }

    pub fn adjoint_supremum(&self) -> Option<usize> {
        self.adjoint_suprema.first().copied()
    }
}

fn check_family(rel: &BinRel, family: &[usize]) -> Result<()> {
    match family.iter().find(|&&a| a >= rel.size()) {
        Some(&a) => Err(Error::InvalidElement {
            id: a,
            len: rel.size(),
        }),
        None => Ok(()),
    }
}

fn is_upper_bound(rel: &BinRel, family: &[usize], c: usize) -> bool {
    family.iter().all(|&a| rel.contains(a, c))
}

/// Tests every carrier element against both definitions.
pub fn find_supremum(rel: &BinRel, family: &[usize]) -> Result<SupremumResult> {
    check_family(rel, family)?;
    let n = rel.size();
    let upper: Vec<bool> = (0..n).map(|c| is_upper_bound(rel, family, c)).collect();
    let mut result = SupremumResult {
        family: family.to_vec(),
        suprema: Vec::new(),
        adjoint_suprema: Vec::new(),
        failures: Vec::new(),
    };
    for b in 0..n {
        let not_upper_bound = family.iter().copied().find(|&a| !rel.contains(a, b));
        let not_least = (0..n).find(|&c| upper[c] && !rel.contains(b, c));
        let adjoint_mismatch = (0..n).find(|&c| upper[c] != rel.contains(b, c));
        let sup = not_upper_bound.is_none() && not_least.is_none();
        if sup {
            result.suprema.push(b);
        }
        if adjoint_mismatch.is_none() {
            result.adjoint_suprema.push(b);
        }
        if !sup || adjoint_mismatch.is_some() {
            result.failures.push(CandidateFailure {
                candidate: b,
                not_upper_bound,
                not_least,
                adjoint_mismatch,
            });
        }
    }
    Ok(result)
}

/// The relationships between the two notions on one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RemarkReport {
    pub reflexive: bool,
    pub transitive: bool,
    pub suprema: Vec<usize>,
    pub adjoint_suprema: Vec<usize>,
    /// Suprema that are not adjoint-suprema.
    pub sup_not_adjoint: Vec<usize>,
    /// Adjoint-suprema that are not suprema.
    pub adjoint_not_sup: Vec<usize>,
    /// Pairs of suprema not related both ways.
    pub inequivalent_suprema: Vec<(usize, usize)>,
}

impl RemarkReport {
    /// Transitive: suprema are adjoint. Reflexive: adjoint-suprema are
    /// suprema. Preorder: suprema are unique up to mutual relation.
    pub fn consistent(&self) -> bool {
        (!self.transitive || self.sup_not_adjoint.is_empty())
            && (!self.reflexive || self.adjoint_not_sup.is_empty())
            && (!(self.reflexive && self.transitive) || self.inequivalent_suprema.is_empty())
    }
}

pub fn remark_check(rel: &BinRel, family: &[usize]) -> Result<RemarkReport> {
    let r = find_supremum(rel, family)?;
    let sup_not_adjoint = r
        .suprema
        .iter()
        .copied()
        .filter(|b| !r.adjoint_suprema.contains(b))
        .collect();
    let adjoint_not_sup = r
        .adjoint_suprema
        .iter()
        .copied()
        .filter(|b| !r.suprema.contains(b))
        .collect();
    let mut inequivalent_suprema = Vec::new();
    for (i, &b) in r.suprema.iter().enumerate() {
        for &c in &r.suprema[i + 1..] {
            if !(rel.contains(b, c) && rel.contains(c, b)) {
                inequivalent_suprema.push((b, c));
            }
        }
    }
    Ok(RemarkReport {
        reflexive: rel.is_reflexive(),
        transitive: rel.is_transitive(),
        suprema: r.suprema,
        adjoint_suprema: r.adjoint_suprema,
        sup_not_adjoint,
        adjoint_not_sup,
        inequivalent_suprema,
    })
}

/// A fiber of at most 64 elements with its up-sets as bit masks. Families
/// are masks over fiber elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberOrder {
    size: usize,
    up: Vec<u64>,
}

impl FiberOrder {
    pub const MAX_SIZE: usize = 64;

    pub fn from_fiber(f: &Fiber<'_>) -> Result<FiberOrder> {
        check_budget("fiber order size", Self::MAX_SIZE as u128, f.size() as u128)?;
        let up = (0..f.size())
            .map(|x| (0..f.size()).filter(|&y| f.leq(x, y)).fold(0u64, |m, y| m | 1 << y))
            .collect();
        Ok(FiberOrder { size: f.size(), up })
    }

    pub fn from_rel(rel: &BinRel) -> Result<FiberOrder> {
        check_budget("fiber order size", Self::MAX_SIZE as u128, rel.size() as u128)?;
        let up = (0..rel.size())
            .map(|x| (0..rel.size()).filter(|&y| rel.contains(x, y)).fold(0u64, |m, y| m | 1 << y))
            .collect();
        Ok(FiberOrder { size: rel.size(), up })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    fn all(&self) -> u64 {
        Subset::full(self.size).0
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x] & (1 << y) != 0
    }

    pub fn upper_bounds(&self, family: u64) -> u64 {
        Subset(family).iter().fold(self.all(), |m, x| m & self.up[x])
    }

    /// First supremum of the family, by element index.
    pub fn supremum(&self, family: u64) -> Option<usize> {
        let ub = self.upper_bounds(family);
        Subset(ub).iter().find(|&b| ub & !self.up[b] == 0)
    }

    pub fn has_supremum(&self, family: u64) -> bool {
        self.supremum(family).is_some()
    }

    pub fn adjoint_supremum(&self, family: u64) -> Option<usize> {
        let ub = self.upper_bounds(family);
        (0..self.size).find(|&b| self.up[b] == ub)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompletenessReport {
    pub index_size: usize,
    pub fiber_size: usize,
    pub families_checked: u128,
    pub complete: bool,
    /// First family in mask order lacking a supremum, as element indices.
    pub counterexample: Option<Vec<usize>>,
    pub counterexample_names: Option<Vec<Vec<String>>>,
}

/// Checks every subset of the fiber over `index_size` for a supremum.
pub fn is_fiber_complete(s: &PrStructure, index_size: usize, max_families: u128) -> Result<CompletenessReport> {
    let fiber = Fiber::new(s, index_size, FiberOrder::MAX_SIZE)?;
    let order = FiberOrder::from_fiber(&fiber)?;
    let f = order.size();
    let total: u128 = 1u128 << f;
    check_budget("max families", max_families, total)?;
    let mut checked = 0u128;
    let mut counterexample = None;
    for mask in 0..total {
        checked += 1;
        if !order.has_supremum(mask as u64) {
            counterexample = Some(mask as u64);
            break;
        }
    }
    let members = counterexample.map(|m| Subset(m).iter().collect::<Vec<_>>());
    Ok(CompletenessReport {
        index_size,
        fiber_size: f,
        families_checked: checked,
        complete: counterexample.is_none(),
        counterexample_names: members
            .as_ref()
            .map(|v| v.iter().map(|&x| fiber.names(x)).collect()),
        counterexample: members,
    })
}

fn check_blocks(pas: &Pas, blocks: &[Subset]) -> Result<()> {
    let full = pas.full_set();
    let mut seen = Subset::EMPTY;
    for (i, &b) in blocks.iter().enumerate() {
        if b.is_empty() {
            return Err(Error::Blocks(format!("block {i} is empty")));
        }
        if !b.is_subset(full) {
            return Err(Error::Blocks(format!("block {i} leaves the carrier")));
        }
        if seen.0 & b.0 != 0 {
            return Err(Error::Blocks(format!("block {i} meets an earlier block")));
        }
        seen = seen.union(b);
    }
    Ok(())
}

/// A function constant on each block: `values[i]` on block `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockFunction {
    pub blocks: Vec<Vec<usize>>,
    pub values: Vec<usize>,
}

impl BlockFunction {
    /// Value at `x`, if `x` lies in some block.
    pub fn eval(&self, x: usize) -> Option<usize> {
        self.blocks
            .iter()
            .position(|b| b.contains(&x))
            .map(|i| self.values[i])
    }
}

/// Elements `r` with `r.x = values[i]` on every block `i`.
pub fn representers(pas: &Pas, blocks: &[Subset], values: &[usize]) -> Vec<usize> {
    pas.elements()
        .filter(|&r| {
            blocks
                .iter()
                .zip(values)
                .all(|(b, &v)| b.iter().all(|x| pas.app(r, x) == Some(v)))
        })
        .collect()
}

/// Every value tuple, in lexicographic order with block 0 most significant.
pub fn block_value_tuples(pas: &Pas, blocks: &[Subset], limit: u128) -> Result<Vec<Vec<usize>>> {
    check_blocks(pas, blocks)?;
    let n = pas.size();
    let total = crate::fiber::fiber_size(n, blocks.len());
    check_budget("max block functions", limit, total)?;
    Ok((0..total as usize)
        .map(|mut c| {
            let mut values = vec![0; blocks.len()];
            for v in values.iter_mut().rev() {
                *v = c % n;
                c /= n;
            }
            values
        })
        .collect())
}

/// First block-constant function no element represents on the union of the
/// blocks. Exists whenever `|R|^blocks > |R|`.
pub fn nonrepresentable_function(pas: &Pas, blocks: &[Subset]) -> Result<Option<BlockFunction>> {
    let tuples = block_value_tuples(pas, blocks, DEFAULT_MAX_BLOCK_FUNCTIONS)?;
    Ok(tuples
        .into_iter()
        .find(|values| representers(pas, blocks, values).is_empty())
        .map(|values| BlockFunction {
            blocks: blocks.iter().map(|b| b.iter().collect()).collect(),
            values,
        }))
}

/// An element of `P(R)^R`: one subset per carrier element.
pub type FiberElement = Vec<Subset>;

/// `phi |- psi` in the fiber of the induced structure over the carrier.
pub fn pas_entails(pas: &Pas, phi: &[Subset], psi: &[Subset]) -> bool {
    pas_entailing(pas, phi, psi).is_some()
}

/// First realizer of `phi |- psi`.
pub fn pas_entailing(pas: &Pas, phi: &[Subset], psi: &[Subset]) -> Option<usize> {
    let mut common = pas.full_set();
    for (&a, &b) in phi.iter().zip(psi) {
        common = Subset(common.0 & pas.arrow_set(a, b).0);
        if common.is_empty() {
            return None;
        }
    }
    common.iter().next()
}

/// How one candidate is shown not to be a supremum of the family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Refutation {
    /// The family member indexed by this element does not entail it.
    NotUpperBound { member: usize },
    /// It does not entail the upper bound `sgl_r`.
    NotBelowSgl,
    /// It does not entail the upper bound `tilde`, built from a function
    /// constant on the blocks `psi'(b)` that no element represents.
    Refuted {
        function: BlockFunction,
        tilde: Vec<Vec<usize>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateRefutation {
    pub candidate: Vec<Vec<usize>>,
    pub refutation: Refutation,
}

/// A family in `P(R)^R` together with a refutation of every candidate
/// supremum, enumerated in fiber order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IncompletenessCertificate {
    pub carrier: Vec<String>,
    pub realizer: usize,
    pub domain: Vec<usize>,
    pub image: Vec<usize>,
    /// `phi_a` for `a` in the domain of the realizer: `{a}` at `a`, empty
    /// elsewhere.
    pub family: Vec<Vec<Vec<usize>>>,
    /// `{r.x}` on the domain, empty elsewhere.
    pub sgl: Vec<Vec<usize>>,
    pub refutations: Vec<CandidateRefutation>,
}

fn to_lists(e: &[Subset]) -> Vec<Vec<usize>> {
    e.iter().map(|s| s.iter().collect()).collect()
}

fn from_lists(e: &[Vec<usize>]) -> FiberElement {
    e.iter().map(|s| Subset::from_elems(s.iter().copied())).collect()
}

fn decode_element(n: usize, mut code: u128) -> FiberElement {
    let mut out = vec![Subset::EMPTY; n];
    let base = 1u128 << n;
    for slot in out.iter_mut().rev() {
        *slot = Subset((code % base) as u64);
        code /= base;
    }
    out
}

fn phi_family(pas: &Pas, r: usize) -> Vec<FiberElement> {
    let n = pas.size();
    pas.domain(r)
        .iter()
        .map(|a| {
            let mut e = vec![Subset::EMPTY; n];
            e[a] = Subset::singleton(a);
            e
        })
        .collect()
}

fn sgl(pas: &Pas, r: usize) -> FiberElement {
    pas.elements()
        .map(|x| pas.app(r, x).map_or(Subset::EMPTY, Subset::singleton))
        .collect()
}

/// Refutes one candidate, checking every claim it makes.
fn refute(pas: &Pas, r: usize, family: &[FiberElement], sgl_r: &[Subset], psi: &[Subset]) -> Result<Refutation> {
    let domain = pas.domain(r);
    if let Some((i, _)) = family.iter().enumerate().find(|(_, phi)| !pas_entails(pas, phi, psi)) {
        return Ok(Refutation::NotUpperBound {
            member: domain.iter().nth(i).expect("one member per domain element"),
        });
    }
    if !pas_entails(pas, psi, sgl_r) {
        return Ok(Refutation::NotBelowSgl);
    }
    let blocks: Vec<Subset> = pas
        .image(r)
        .iter()
        .map(|b| {
            domain
                .iter()
                .filter(|&a| pas.app(r, a) == Some(b))
                .fold(Subset::EMPTY, |m, a| m.union(psi[a]))
        })
        .collect();
    let function = nonrepresentable_function(pas, &blocks)
        .map_err(|e| Error::Inconsistent(format!("blocks psi'(b) invalid: {e}")))?
        .ok_or_else(|| Error::Inconsistent("every block-constant function is representable".into()))?;
    let tilde: FiberElement = pas
        .elements()
        .map(|a| {
            if domain.contains(a) {
                psi[a]
                    .iter()
                    .map(|x| function.eval(x).expect("psi(a) lies in a block"))
                    .fold(Subset::EMPTY, |m, v| m.union(Subset::singleton(v)))
            } else {
                Subset::EMPTY
            }
        })
        .collect();
    if !family.iter().all(|phi| pas_entails(pas, phi, &tilde)) {
        return Err(Error::Inconsistent("tilde is not an upper bound".into()));
    }
    if pas_entails(pas, psi, &tilde) {
        return Err(Error::Inconsistent("candidate entails tilde".into()));
    }
    Ok(Refutation::Refuted {
        function,
        tilde: to_lists(&tilde),
    })
}

/// Builds the family `(phi_a)` for the realizer `r` and refutes every
/// element of `P(R)^R` as its supremum. Requires a totally matching
/// structure with `|R|^|Im r| > |R|`, and the `(2^|R|)^|R|` candidates
/// within `max_candidates`.
pub fn incompleteness_witness(pas: &Pas, r: usize, max_candidates: u128) -> Result<IncompletenessCertificate> {
    let n = pas.size();
    if r >= n {
        return Err(Error::InvalidElement { id: r, len: n });
    }
    if !pas.is_totally_matching() {
        return Err(Error::Precondition("structure is not totally matching".into()));
    }
    let image = pas.image(r);
    if crate::fiber::fiber_size(n, image.len()) <= n as u128 {
        return Err(Error::Precondition(format!(
            "|R|^|Im r| = {}^{} does not exceed |R|",
            n,
            image.len()
        )));
    }
    check_budget("max carrier", 8, n as u128)?;
    let candidates = crate::fiber::fiber_size(1 << n, n);
    check_budget("max candidates", max_candidates, candidates)?;

    let family = phi_family(pas, r);
    let sgl_r = sgl(pas, r);
    if !family.iter().all(|phi| pas_entails(pas, phi, &sgl_r)) {
        return Err(Error::Inconsistent("sgl_r is not an upper bound".into()));
    }
    let mut refutations = Vec::with_capacity(candidates as usize);
    for code in 0..candidates {
        let psi = decode_element(n, code);
        let refutation = refute(pas, r, &family, &sgl_r, &psi)?;
        refutations.push(CandidateRefutation {
            candidate: to_lists(&psi),
            refutation,
        });
    }
    Ok(IncompletenessCertificate {
        carrier: pas.names().to_vec(),
        realizer: r,
        domain: pas.domain(r).iter().collect(),
        image: image.iter().collect(),
        family: family.iter().map(|e| to_lists(e)).collect(),
        sgl: to_lists(&sgl_r),
        refutations,
    })
}

/// Re-checks a certificate against the structure: the family and `sgl` are
/// as defined, the candidates are the whole fiber in order, and each
/// refutation's claims hold.
pub fn verify_certificate(pas: &Pas, cert: &IncompletenessCertificate) -> bool {
    let n = pas.size();
    let r = cert.realizer;
    if r >= n || cert.carrier != pas.names() || n > 8 {
        return false;
    }
    let family: Vec<FiberElement> = cert.family.iter().map(|e| from_lists(e)).collect();
    if family != phi_family(pas, r) || from_lists(&cert.sgl) != sgl(pas, r) {
        return false;
    }
    let sgl_r = from_lists(&cert.sgl);
    if !family.iter().all(|phi| pas_entails(pas, phi, &sgl_r)) {
        return false;
    }
    let candidates = crate::fiber::fiber_size(1 << n, n);
    if cert.refutations.len() as u128 != candidates {
        return false;
    }
    cert.refutations.iter().enumerate().all(|(code, c)| {
        let psi = from_lists(&c.candidate);
        if psi != decode_element(n, code as u128) {
            return false;
        }
        match &c.refutation {
            Refutation::NotUpperBound { member } => {
                let phi = family
                    .iter()
                    .find(|e| e[*member] == Subset::singleton(*member));
                phi.is_some_and(|phi| !pas_entails(pas, phi, &psi))
            }
            Refutation::NotBelowSgl => !pas_entails(pas, &psi, &sgl_r),
            Refutation::Refuted { tilde, .. } => {
                let tilde = from_lists(tilde);
                tilde.len() == n
                    && family.iter().all(|phi| pas_entails(pas, phi, &tilde))
                    && !pas_entails(pas, &psi, &tilde)
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cyclic_group, right_projection, sigma_n};

    fn chain3() -> BinRel {
        let names = vec!["1".into(), "2".into(), "3".into()];
        BinRel::from_pairs(names, &[(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]).unwrap()
    }

    #[test]
    fn chain_supremum() {
        let r = find_supremum(&chain3(), &[0, 1]).unwrap();
        assert_eq!(r.suprema, vec![1]);
        assert_eq!(r.adjoint_suprema, vec![1]);
        let r = find_supremum(&chain3(), &[]).unwrap();
        assert_eq!(r.supremum(), Some(0));
    }

    #[test]
    fn singleton_family_in_preorder() {
        let r = find_supremum(&chain3(), &[2]).unwrap();
        assert_eq!(r.suprema, vec![2]);
        assert_eq!(r.adjoint_suprema, vec![2]);
    }

    #[test]
    fn empty_relation() {
        let rel = BinRel::new(vec!["x".into(), "y".into()]).unwrap();
        let r = find_supremum(&rel, &[0]).unwrap();
        assert!(r.suprema.is_empty());
        assert_eq!(r.failures[0].not_upper_bound, Some(0));
        // upper bounds of {x} are none, and nothing is related to anything
        assert_eq!(r.adjoint_suprema, vec![0, 1]);
        let rep = remark_check(&rel, &[0]).unwrap();
        assert!(rep.transitive && !rep.reflexive);
        assert!(rep.consistent());
    }

    #[test]
    fn reflexive_non_transitive() {
        let names = vec!["a".into(), "b".into(), "c".into()];
        let rel = BinRel::from_pairs(names, &[(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)]).unwrap();
        let rep = remark_check(&rel, &[0]).unwrap();
        assert!(rep.reflexive && !rep.transitive);
        assert!(rep.consistent());
        assert_eq!(rep.suprema, vec![0]);
        assert_eq!(rep.adjoint_suprema, vec![0]);
        // with b and a mutually related, b is a supremum of {a} but also
        // relates to the non-bound c
        let names = vec!["a".into(), "b".into(), "c".into()];
        let rel = BinRel::from_pairs(names, &[(0, 0), (1, 1), (2, 2), (0, 1), (1, 0), (1, 2)]).unwrap();
        let rep = remark_check(&rel, &[0]).unwrap();
        assert_eq!(rep.suprema, vec![0, 1]);
        assert_eq!(rep.adjoint_suprema, vec![0]);
        assert_eq!(rep.sup_not_adjoint, vec![1]);
        assert!(rep.consistent());
    }

    #[test]
    fn out_of_range_member() {
        assert!(matches!(find_supremum(&chain3(), &[3]), Err(Error::InvalidElement { .. })));
    }

    #[test]
    fn chain_fiber_complete() {
        let s = sigma_n(3).unwrap();
        let r = is_fiber_complete(&s, 1, DEFAULT_MAX_FAMILIES).unwrap();
        assert!(r.complete);
        assert_eq!(r.families_checked, 8);
        let one = sigma_n(1).unwrap();
        assert!(is_fiber_complete(&one, 3, DEFAULT_MAX_FAMILIES).unwrap().complete);
    }

    #[test]
    fn z2_blocks() {
        let z2 = cyclic_group(2).unwrap();
        let blocks = [Subset::singleton(0), Subset::singleton(1)];
        let tuples = block_value_tuples(&z2, &blocks, 100).unwrap();
        assert_eq!(tuples.len(), 4);
        let representable = tuples
            .iter()
            .filter(|v| !representers(&z2, &blocks, v).is_empty())
            .count();
        assert_eq!(representable, 2);
        let f = nonrepresentable_function(&z2, &blocks).unwrap().unwrap();
        assert_eq!(f.values, vec![0, 0]);
    }

    #[test]
    fn right_projection_constants() {
        let p = right_projection(2).unwrap();
        let blocks = [Subset::singleton(0), Subset::singleton(1)];
        let f = nonrepresentable_function(&p, &blocks).unwrap().unwrap();
        assert_eq!(f.values, vec![0, 0]);
    }

    #[test]
    fn trivial_blocks() {
        let one = cyclic_group(1).unwrap();
        assert_eq!(nonrepresentable_function(&one, &[Subset::singleton(0)]).unwrap(), None);
    }

    #[test]
    fn bad_blocks() {
        let z2 = cyclic_group(2).unwrap();
        let overlap = [Subset(0b11), Subset(0b01)];
        assert!(matches!(nonrepresentable_function(&z2, &overlap), Err(Error::Blocks(_))));
        assert!(matches!(nonrepresentable_function(&z2, &[Subset::EMPTY]), Err(Error::Blocks(_))));
    }

    #[test]
    fn z2_certificate() {
        let z2 = cyclic_group(2).unwrap();
        let cert = incompleteness_witness(&z2, 0, 1 << 20).unwrap();
        assert_eq!(cert.family, vec![vec![vec![0], vec![]], vec![vec![], vec![1]]]);
        assert_eq!(cert.sgl, vec![vec![0], vec![1]]);
        assert_eq!(cert.refutations.len(), 16);
        assert!(verify_certificate(&z2, &cert));
    }

    #[test]
    fn tampered_certificate_fails() {
        let z2 = cyclic_group(2).unwrap();
        let mut cert = incompleteness_witness(&z2, 0, 1 << 20).unwrap();
        cert.refutations.pop();
        assert!(!verify_certificate(&z2, &cert));
    }

    #[test]
    fn witness_preconditions() {
        let p = right_projection(2).unwrap();
        assert!(matches!(incompleteness_witness(&p, 0, 1 << 20), Err(Error::Precondition(_))));
        let one = cyclic_group(1).unwrap();
        assert!(matches!(incompleteness_witness(&one, 0, 1 << 20), Err(Error::Precondition(_))));
    }
}
