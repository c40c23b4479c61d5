//! PR-structures and their indexed entailment relations.
//!
//! A PR-structure pairs a finite set of propositions with a finite set of
//! realizers and a table assigning to every ordered pair of propositions the
//! set of realizers that witness the entailment. A family of pairs
//! `(phi(i), psi(i))` entails uniformly when a single realizer lies in every
//! cell named by the family.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::bits::{words_for, BitSet};
use crate::error::{Error, Result};

/// Index of a proposition inside a [`PrStructure`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PropId(pub usize);

/// Index of a realizer inside a [`PrStructure`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RealId(pub usize);

impl fmt::Display for PropId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p{}", self.0)
    }
}

impl fmt::Display for RealId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r{}", self.0)
    }
}

pub(crate) fn check_names(kind: &str, names: &[String]) -> Result<()> {
    if names.is_empty() {
        return Err(Error::Malformed(format!("{kind} set must be nonempty")));
    }
    let mut seen = HashSet::new();
    for n in names {
        if !seen.insert(n.as_str()) {
            return Err(Error::Malformed(format!("duplicate {kind} name `{n}`")));
        }
    }
    Ok(())
}

/// A set of ordered proposition pairs, i.e. a subset of `P x P`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairSet {
    props: usize,
    bits: BitSet,
}

impl PairSet {
    pub fn new(props: usize) -> PairSet {
        PairSet {
            props,
            bits: BitSet::new(props * props),
        }
    }

    pub fn full(props: usize) -> PairSet {
        PairSet {
            props,
            bits: BitSet::full(props * props),
        }
    }

    pub fn from_pairs<I: IntoIterator<Item = (PropId, PropId)>>(props: usize, pairs: I) -> PairSet {
        let mut set = PairSet::new(props);
        for (a, b) in pairs {
            set.insert(a, b);
        }
        set
    }

    pub fn props(&self) -> usize {
        self.props
    }

    pub fn bits(&self) -> &BitSet {
        &self.bits
    }

    pub fn insert(&mut self, a: PropId, b: PropId) {
        self.bits.insert(a.0 * self.props + b.0);
    }

    pub fn contains(&self, a: PropId, b: PropId) -> bool {
        a.0 < self.props && b.0 < self.props && self.bits.contains(a.0 * self.props + b.0)
    }

    pub fn len(&self) -> usize {
        self.bits.count()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn is_subset(&self, other: &PairSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    /// Pairs in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (PropId, PropId)> + '_ {
        let n = self.props;
        self.bits.iter().map(move |i| (PropId(i / n), PropId(i % n)))
    }

    pub fn to_vec(&self) -> Vec<(PropId, PropId)> {
        self.iter().collect()
    }
}

impl fmt::Debug for PairSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(self.iter().map(|(a, b)| (a.0, b.0)))
            .finish()
    }
}

/// A finite PR-structure with named propositions and realizers.
///
/// The table is stored row-major: cell `(a, b)` occupies `stride` words
/// starting at `(a * |P| + b) * stride`.
#[derive(Clone, PartialEq, Eq)]
pub struct PrStructure {
    props: Vec<String>,
    reals: Vec<String>,
    stride: usize,
    cells: Vec<u64>,
}

impl PrStructure {
    /// A structure with every cell empty.
    pub fn new(props: Vec<String>, reals: Vec<String>) -> Result<PrStructure> {
        check_names("proposition", &props)?;
        check_names("realizer", &reals)?;
        let stride = words_for(reals.len());
        let n = props.len();
        Ok(PrStructure {
            stride,
            cells: vec![0; n * n * stride],
            props,
            reals,
        })
    }

    /// Builds a structure whose cell `(a, b)` contains `r` exactly when
    /// `realizes(a, b, r)` holds.
    pub fn from_fn<F>(props: Vec<String>, reals: Vec<String>, mut realizes: F) -> Result<PrStructure>
    where
        F: FnMut(PropId, PropId, RealId) -> bool,
    {
        let mut s = PrStructure::new(props, reals)?;
        for a in s.prop_ids() {
            for b in s.prop_ids() {
                for r in s.real_ids() {
                    if realizes(a, b, r) {
                        s.insert_unchecked(a, b, r);
                    }
                }
            }
        }
        Ok(s)
    }

    pub fn n_props(&self) -> usize {
        self.props.len()
    }

    pub fn n_reals(&self) -> usize {
        self.reals.len()
    }

    pub fn prop_names(&self) -> &[String] {
        &self.props
    }

    pub fn real_names(&self) -> &[String] {
        &self.reals
    }

    pub fn prop_name(&self, a: PropId) -> &str {
        &self.props[a.0]
    }

    pub fn real_name(&self, r: RealId) -> &str {
        &self.reals[r.0]
    }

    pub fn prop_id(&self, name: &str) -> Option<PropId> {
        self.props.iter().position(|n| n == name).map(PropId)
    }

    pub fn real_id(&self, name: &str) -> Option<RealId> {
        self.reals.iter().position(|n| n == name).map(RealId)
    }

    pub fn prop_ids(&self) -> impl Iterator<Item = PropId> {
        (0..self.props.len()).map(PropId)
    }

    pub fn real_ids(&self) -> impl Iterator<Item = RealId> {
        (0..self.reals.len()).map(RealId)
    }

    pub fn check_prop(&self, a: PropId) -> Result<()> {
        if a.0 < self.props.len() {
            Ok(())
        } else {
            Err(Error::InvalidProp {
                id: a.0,
                len: self.props.len(),
            })
        }
    }

    pub fn check_real(&self, r: RealId) -> Result<()> {
        if r.0 < self.reals.len() {
            Ok(())
        } else {
            Err(Error::InvalidReal {
                id: r.0,
                len: self.reals.len(),
            })
        }
    }

    #[inline]
    fn offset(&self, a: PropId, b: PropId) -> usize {
        (a.0 * self.props.len() + b.0) * self.stride
    }

    #[inline]
    pub(crate) fn cell_words(&self, a: PropId, b: PropId) -> &[u64] {
        let o = self.offset(a, b);
        &self.cells[o..o + self.stride]
    }

    pub(crate) fn insert_unchecked(&mut self, a: PropId, b: PropId, r: RealId) {
        let o = self.offset(a, b);
        self.cells[o + r.0 / 64] |= 1 << (r.0 % 64);
    }

    /// Adds `r` to the cell `(a, b)`.
    pub fn insert(&mut self, a: PropId, b: PropId, r: RealId) -> Result<()> {
        self.check_prop(a)?;
        self.check_prop(b)?;
        self.check_real(r)?;
        self.insert_unchecked(a, b, r);
        Ok(())
    }

    /// The realizer set `rho(a, b)`.
    pub fn cell(&self, a: PropId, b: PropId) -> BitSet {
        BitSet::from_words(self.reals.len(), self.cell_words(a, b))
    }

    #[inline]
    pub fn realizes(&self, r: RealId, a: PropId, b: PropId) -> bool {
        self.cell_words(a, b)[r.0 / 64] & (1 << (r.0 % 64)) != 0
    }

    #[inline]
    pub(crate) fn cell_nonempty(&self, a: PropId, b: PropId) -> bool {
        self.cell_words(a, b).iter().any(|&w| w != 0)
    }

    /// The realizers common to every listed cell; the full realizer set when
    /// the list is empty.
    pub fn common_realizers<I>(&self, pairs: I) -> BitSet
    where
        I: IntoIterator<Item = (PropId, PropId)>,
    {
        let mut acc = BitSet::full(self.reals.len());
        for (a, b) in pairs {
            acc.intersect_words(self.cell_words(a, b));
            if acc.is_empty() {
                break;
            }
        }
        acc
    }

    /// `a |- b`: the cell `(a, b)` is inhabited.
    pub fn entails(&self, a: PropId, b: PropId) -> Result<bool> {
        self.check_prop(a)?;
        self.check_prop(b)?;
        Ok(self.cell_nonempty(a, b))
    }

    /// Uniform entailment over an index set: one realizer lies in every
    /// cell `(phi(i), psi(i))`. Empty families entail.
    pub fn entails_indexed(&self, f: &FamilyPair) -> Result<bool> {
        f.validate(self)?;
        Ok(self.entails_tuple(&f.phi, &f.psi))
    }

    /// Realizers witnessing uniform entailment of a family.
    pub fn indexed_witnesses(&self, f: &FamilyPair) -> Result<BitSet> {
        f.validate(self)?;
        Ok(self.common_realizers(f.phi.iter().copied().zip(f.psi.iter().copied())))
    }

    #[inline]
    pub(crate) fn entails_tuple(&self, phi: &[PropId], psi: &[PropId]) -> bool {
        !self
            .common_realizers(phi.iter().copied().zip(psi.iter().copied()))
            .is_empty()
    }

    /// Uniform entailment for a set of pairs. Indexed entailment only depends
    /// on the set of distinct pairs a family hits, so this covers every index
    /// set at once.
    pub fn entails_pairset(&self, t: &PairSet) -> Result<bool> {
        if t.props() != self.n_props() {
            return Err(Error::Malformed(format!(
                "pair set over {} propositions used with a structure of {}",
                t.props(),
                self.n_props()
            )));
        }
        Ok(!self.common_realizers(t.iter()).is_empty())
    }

    /// Pairs of propositions realized by `r`.
    pub fn rho_inverse(&self, r: RealId) -> Result<PairSet> {
        self.check_real(r)?;
        Ok(self.rho_inverse_unchecked(r))
    }

    pub(crate) fn rho_inverse_unchecked(&self, r: RealId) -> PairSet {
        let n = self.n_props();
        let mut set = PairSet::new(n);
        for a in self.prop_ids() {
            for b in self.prop_ids() {
                if self.realizes(r, a, b) {
                    set.insert(a, b);
                }
            }
        }
        set
    }

    /// Every cell holds at most one realizer.
    pub fn is_partitioned(&self) -> bool {
        self.prop_ids().all(|a| {
            self.prop_ids().all(|b| {
                self.cell_words(a, b)
                    .iter()
                    .map(|w| w.count_ones())
                    .sum::<u32>()
                    <= 1
            })
        })
    }

    /// The entailment relation `|-` on propositions as a set of pairs.
    pub fn entailment_graph(&self) -> PairSet {
        let mut set = PairSet::new(self.n_props());
        for a in self.prop_ids() {
            for b in self.prop_ids() {
                if self.cell_nonempty(a, b) {
                    set.insert(a, b);
                }
            }
        }
        set
    }

    /// The same table with realizers reordered: realizer `r` of the result is
    /// realizer `perm[r]` of `self`.
    pub fn permute_realizers(&self, perm: &[usize]) -> Result<PrStructure> {
        let n = self.n_reals();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::Malformed("realizer permutation is not a bijection".into()));
        }
        let reals = perm.iter().map(|&p| self.reals[p].clone()).collect();
        PrStructure::from_fn(self.props.clone(), reals, |a, b, r| {
            self.realizes(RealId(perm[r.0]), a, b)
        })
    }

    /// The same table with propositions reordered: proposition `a` of the
    /// result is proposition `perm[a]` of `self`.
    pub fn permute_props(&self, perm: &[usize]) -> Result<PrStructure> {
        let n = self.n_props();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::Malformed("proposition permutation is not a bijection".into()));
        }
        let props = perm.iter().map(|&p| self.props[p].clone()).collect();
        PrStructure::from_fn(props, self.reals.clone(), |a, b, r| {
            self.realizes(r, PropId(perm[a.0]), PropId(perm[b.0]))
        })
    }

    /// Restriction to a subset of realizers, keeping their names.
    pub fn restrict_realizers(&self, keep: &[RealId]) -> Result<PrStructure> {
        for &r in keep {
            self.check_real(r)?;
        }
        let reals = keep.iter().map(|&r| self.reals[r.0].clone()).collect();
        PrStructure::from_fn(self.props.clone(), reals, |a, b, r| {
            self.realizes(keep[r.0], a, b)
        })
    }
}

impl fmt::Debug for PrStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PrStructure {{ props: {:?}, reals: {:?}", self.props, self.reals)?;
        for a in self.prop_ids() {
            for b in self.prop_ids() {
                let cell = self.cell(a, b);
                if !cell.is_empty() {
                    let names: Vec<&str> = cell.iter().map(|r| self.reals[r].as_str()).collect();
                    writeln!(f, "  rho({}, {}) = {:?}", self.props[a.0], self.props[b.0], names)?;
                }
            }
        }
        write!(f, "}}")
    }
}

/// Two families `phi, psi : I -> P` over the same finite index set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyPair {
    phi: Vec<PropId>,
    psi: Vec<PropId>,
}

impl FamilyPair {
    pub fn new(phi: Vec<PropId>, psi: Vec<PropId>) -> Result<FamilyPair> {
        if phi.len() != psi.len() {
            return Err(Error::Malformed(format!(
                "family lengths differ: {} vs {}",
                phi.len(),
                psi.len()
            )));
        }
        Ok(FamilyPair { phi, psi })
    }

    pub fn index_size(&self) -> usize {
        self.phi.len()
    }

    pub fn phi(&self) -> &[PropId] {
        &self.phi
    }

    pub fn psi(&self) -> &[PropId] {
        &self.psi
    }

    pub fn validate(&self, s: &PrStructure) -> Result<()> {
        for &a in self.phi.iter().chain(&self.psi) {
            s.check_prop(a)?;
        }
        Ok(())
    }

    /// The set of distinct pairs `(phi(i), psi(i))`.
    pub fn image_pairs(&self, props: usize) -> PairSet {
        PairSet::from_pairs(props, self.phi.iter().copied().zip(self.psi.iter().copied()))
    }

    /// Precomposition with `m : I -> J`, where `self` is indexed by `J` and
    /// `m[i]` is the image of `i`.
    pub fn reindex(&self, m: &[usize]) -> Result<FamilyPair> {
        let j = self.index_size();
        if let Some(&bad) = m.iter().find(|&&x| x >= j) {
            return Err(Error::Malformed(format!(
                "reindexing map value {bad} outside index set of size {j}"
            )));
        }
        Ok(FamilyPair {
            phi: m.iter().map(|&x| self.phi[x]).collect(),
            psi: m.iter().map(|&x| self.psi[x]).collect(),
        })
    }
}

/// A finite set with a binary relation on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinRel {
    carrier: Vec<String>,
    related: Vec<bool>,
}

impl BinRel {
    pub fn new(carrier: Vec<String>) -> Result<BinRel> {
        check_names("carrier", &carrier)?;
        let n = carrier.len();
        Ok(BinRel {
            carrier,
            related: vec![false; n * n],
        })
    }

    pub fn from_pairs(carrier: Vec<String>, pairs: &[(usize, usize)]) -> Result<BinRel> {
        let mut rel = BinRel::new(carrier)?;
        for &(a, b) in pairs {
            rel.relate(a, b)?;
        }
        Ok(rel)
    }

    /// The full relation `A x A`.
    pub fn full(carrier: Vec<String>) -> Result<BinRel> {
        let mut rel = BinRel::new(carrier)?;
        rel.related.iter_mut().for_each(|x| *x = true);
        Ok(rel)
    }

    pub fn size(&self) -> usize {
        self.carrier.len()
    }

    pub fn carrier(&self) -> &[String] {
        &self.carrier
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.carrier.iter().position(|n| n == name)
    }

    pub fn relate(&mut self, a: usize, b: usize) -> Result<()> {
        let n = self.size();
        for x in [a, b] {
            if x >= n {
                return Err(Error::InvalidElement { id: x, len: n });
            }
        }
        self.related[a * n + b] = true;
        Ok(())
    }

    #[inline]
    pub fn contains(&self, a: usize, b: usize) -> bool {
        let n = self.size();
        a < n && b < n && self.related[a * n + b]
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.size();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.contains(a, b))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.related.iter().filter(|&&x| x).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.size()).all(|a| self.contains(a, a))
    }

    pub fn is_transitive(&self) -> bool {
        let n = self.size();
        (0..n).all(|a| {
            (0..n).all(|b| {
                !self.contains(a, b) || (0..n).all(|c| !self.contains(b, c) || self.contains(a, c))
            })
        })
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|a| (0..n).all(|b| a == b || !(self.contains(a, b) && self.contains(b, a))))
    }

    pub fn is_preorder(&self) -> bool {
        self.is_reflexive() && self.is_transitive()
    }

    pub fn is_partial_order(&self) -> bool {
        self.is_preorder() && self.is_antisymmetric()
    }
}
