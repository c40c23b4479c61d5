//! Canonical antichain representation of PR-structures.
//!
//! A realizer only matters through the set of pairs it realizes. Removing a
//! realizer whose pair set is contained in another's leaves every indexed
//! entailment unchanged, so each structure is equivalent to the one whose
//! realizers are exactly the maximal pair sets. Two structures over the same
//! propositions are equivalent iff these antichains coincide, and the
//! antichain size is the least number of realizers of any equivalent
//! structure.

use crate::error::{check_budget, Error, Result};
use crate::structure::{BinRel, PairSet, PrStructure, PropId, RealId};

/// Propositions plus the antichain of maximal realized pair sets, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    props: Vec<String>,
    antichain: Vec<PairSet>,
}

impl CanonicalForm {
    pub fn props(&self) -> &[String] {
        &self.props
    }

    pub fn antichain(&self) -> &[PairSet] {
        &self.antichain
    }

    pub fn degree(&self) -> usize {
        self.antichain.len()
    }

    /// The structure whose realizers are the antichain members, each
    /// realizing exactly its own pairs. Realizers are named `c0, c1, ...`.
    pub fn to_structure(&self) -> PrStructure {
        let reals = (0..self.antichain.len()).map(|k| format!("c{k}")).collect();
        PrStructure::from_fn(self.props.clone(), reals, |a, b, r| {
            self.antichain[r.0].contains(a, b)
        })
        .expect("canonical form has nonempty, distinct names")
    }

    pub(crate) fn from_parts(props: Vec<String>, mut antichain: Vec<PairSet>) -> Result<CanonicalForm> {
        crate::structure::check_names("proposition", &props)?;
        if antichain.is_empty() {
            return Err(Error::Malformed("antichain must be nonempty".into()));
        }
        if antichain.iter().any(|x| x.props() != props.len()) {
            return Err(Error::Malformed("pair set over the wrong propositions".into()));
        }
        antichain.sort();
        for (i, x) in antichain.iter().enumerate() {
            for (j, y) in antichain.iter().enumerate() {
                if i != j && x.is_subset(y) {
                    return Err(Error::Malformed(format!(
                        "antichain members {i} and {j} are comparable"
                    )));
                }
            }
        }
        Ok(CanonicalForm { props, antichain })
    }
}

fn surviving_realizers(s: &PrStructure) -> Vec<(RealId, PairSet)> {
    let inverse: Vec<PairSet> = s.real_ids().map(|r| s.rho_inverse_unchecked(r)).collect();
    inverse
        .iter()
        .enumerate()
        .filter(|&(r, x)| {
            inverse.iter().enumerate().all(|(q, y)| {
                // dominated strictly, or an equal set appears earlier
                !(x.is_subset(y) && (x != y || q < r))
            })
        })
        .map(|(r, x)| (RealId(r), x.clone()))
        .collect()
}

/// Drops every realizer whose realized pairs are strictly contained in
/// another's, and all but the first of realizers with equal pair sets.
/// The result is equivalent to `s` and keeps the surviving names.
pub fn reduce_dominated(s: &PrStructure) -> PrStructure {
    let keep: Vec<RealId> = surviving_realizers(s).into_iter().map(|(r, _)| r).collect();
    s.restrict_realizers(&keep)
        .expect("survivors are valid realizers")
}

pub fn canonicalize(s: &PrStructure) -> CanonicalForm {
    let mut antichain: Vec<PairSet> = surviving_realizers(s).into_iter().map(|(_, x)| x).collect();
    antichain.sort();
    CanonicalForm {
        props: s.prop_names().to_vec(),
        antichain,
    }
}

/// Outcome of comparing two structures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Equivalence {
    Equivalent,
    /// The proposition sets differ, so the structures are not comparable.
    PropositionsDiffer,
    /// Same propositions, different canonical antichains.
    AntichainsDiffer,
}

impl Equivalence {
    pub fn holds(self) -> bool {
        self == Equivalence::Equivalent
    }
}

/// Compares two structures. Propositions are matched by name, so the
/// order in which they are listed does not matter.
pub fn equivalent(s1: &PrStructure, s2: &PrStructure) -> Equivalence {
    if s1.n_props() != s2.n_props() {
        return Equivalence::PropositionsDiffer;
    }
    let mut perm = Vec::with_capacity(s1.n_props());
    for name in s1.prop_names() {
        match s2.prop_id(name) {
            Some(PropId(i)) => perm.push(i),
            None => return Equivalence::PropositionsDiffer,
        }
    }
    let aligned = s2.permute_props(&perm).expect("names are a bijection");
    if canonicalize(s1).antichain == canonicalize(&aligned).antichain {
        Equivalence::Equivalent
    } else {
        Equivalence::AntichainsDiffer
    }
}

pub fn degree(s: &PrStructure) -> usize {
    canonicalize(s).degree()
}

pub fn is_p_structure(s: &PrStructure) -> bool {
    degree(s) == 1
}

/// Realizers `J` of a pumping structure, named by their pairs.
fn realizer_name(rel: &BinRel, pairs: &[(usize, usize)]) -> String {
    let parts: Vec<String> = pairs
        .iter()
        .map(|&(a, b)| format!("({},{})", rel.carrier()[a], rel.carrier()[b]))
        .collect();
    format!("{{{}}}", parts.join(";"))
}

fn membership_structure(rel: &BinRel, sets: &[Vec<(usize, usize)>]) -> Result<PrStructure> {
    let reals = sets.iter().map(|j| realizer_name(rel, j)).collect();
    PrStructure::from_fn(rel.carrier().to_vec(), reals, |a, b, r| sets[r.0].contains(&(a.0, b.0)))
}

/// The two structures that agree with pointwise entailment only below a
/// size threshold: realizers are the subsets of `psi` with fewer than `n`
/// pairs, respectively the complements in `psi` of single pairs.
pub fn pumping_structures(psi: &BinRel, n: usize) -> Result<(PrStructure, PrStructure)> {
    if n == 0 {
        return Err(Error::Precondition("threshold 0 leaves no realizers".into()));
    }
    let pairs = psi.pairs();
    if pairs.is_empty() {
        return Err(Error::Precondition("relation must be nonempty".into()));
    }
    check_budget("relation size", 24, pairs.len() as u128)?;
    let small: Vec<Vec<(usize, usize)>> = (0u32..1 << pairs.len())
        .filter(|m| (m.count_ones() as usize) < n)
        .map(|m| {
            (0..pairs.len())
                .filter(|&i| m & (1 << i) != 0)
                .map(|i| pairs[i])
                .collect()
        })
        .collect();
    let co_singletons: Vec<Vec<(usize, usize)>> = (0..pairs.len())
        .map(|skip| {
            pairs
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &p)| p)
                .collect()
        })
        .collect();
    Ok((
        membership_structure(psi, &small)?,
        membership_structure(psi, &co_singletons)?,
    ))
}

/// Smallest size of a pair set on which uniform entailment differs from
/// entailment of every member, or `None` if the structure is pointwise on
/// all pair sets. Only pair sets inside the entailment graph can differ,
/// so `2^|graph|` sets are examined.
pub fn pointwise_cutoff(s: &PrStructure, max_pairsets: u128) -> Result<Option<usize>> {
    let graph = s.entailment_graph().to_vec();
    let m = graph.len();
    check_budget("max pair sets", max_pairsets, 1u128 << m.min(127))?;
    let mut best: Option<usize> = None;
    for mask in 0u64..1 << m {
        let size = mask.count_ones() as usize;
        if best.is_some_and(|b| size >= b) {
            continue;
        }
        let pairs = (0..m).filter(|&i| mask & (1 << i) != 0).map(|i| graph[i]);
        if s.common_realizers(pairs).is_empty() {
            best = Some(size);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{sigma_from_bin, sigma_n, two_element_lattical};

    fn names(n: &[&str]) -> Vec<String> {
        n.iter().map(|s| s.to_string()).collect()
    }

    fn pairs(n: usize, ps: &[(usize, usize)]) -> PairSet {
        PairSet::from_pairs(n, ps.iter().map(|&(a, b)| (PropId(a), PropId(b))))
    }

    #[test]
    fn duplicates_collapse() {
        let s = PrStructure::from_fn(names(&["a"]), names(&["r", "s"]), |_, _, _| true).unwrap();
        let reduced = reduce_dominated(&s);
        assert_eq!(reduced.real_names(), ["r"]);
        assert!(equivalent(&s, &reduced).holds());
    }

    #[test]
    fn sigma3_is_already_reduced() {
        let s = sigma_n(3).unwrap();
        assert_eq!(reduce_dominated(&s), s);
        let c = canonicalize(&s);
        assert_eq!(
            c.antichain(),
            [
                pairs(3, &[(0, 0), (0, 1), (0, 2)]),
                pairs(3, &[(0, 0), (1, 1), (1, 2)]),
                pairs(3, &[(0, 0), (1, 1), (2, 2)]),
            ]
        );
    }

    #[test]
    fn single_realizer_unchanged() {
        let s = PrStructure::from_fn(names(&["a", "b"]), names(&["r"]), |a, b, _| a <= b).unwrap();
        assert_eq!(reduce_dominated(&s), s);
    }

    #[test]
    fn lattical_antichain() {
        let c = canonicalize(&two_element_lattical());
        // props: bot = 0, top = 1
        assert_eq!(
            c.antichain(),
            [
                pairs(2, &[(0, 0), (0, 1)]),
                pairs(2, &[(0, 0), (1, 1)]),
                pairs(2, &[(0, 1), (1, 1)]),
            ]
        );
        assert_eq!(c.degree(), 3);
        assert!(!is_p_structure(&two_element_lattical()));
    }

    #[test]
    fn from_binrel_is_p_structure() {
        let rel = BinRel::from_pairs(names(&["x", "y"]), &[(0, 1), (1, 1)]).unwrap();
        let s = sigma_from_bin(&rel).unwrap();
        let c = canonicalize(&s);
        assert_eq!(c.antichain(), [pairs(2, &[(0, 1), (1, 1)])]);
        assert!(is_p_structure(&s));
    }

    #[test]
    fn empty_realizers_leave_one_survivor() {
        let s = PrStructure::new(names(&["a", "b"]), names(&["r", "s", "t"])).unwrap();
        let c = canonicalize(&s);
        assert_eq!(c.antichain(), [PairSet::new(2)]);
        assert_eq!(degree(&s), 1);
        assert_eq!(reduce_dominated(&s).real_names(), ["r"]);
    }

    #[test]
    fn equivalence_outcomes() {
        let s3 = sigma_n(3).unwrap();
        let renamed = PrStructure::from_fn(s3.prop_names().to_vec(), names(&["x", "y", "z"]), |a, b, r| {
            s3.realizes(r, a, b)
        })
        .unwrap();
        assert!(equivalent(&s3, &renamed).holds());
        // sigma_2 padded with a third, isolated proposition
        let s2 = sigma_n(2).unwrap();
        let padded = PrStructure::from_fn(s3.prop_names().to_vec(), s2.real_names().to_vec(), |a, b, r| {
            a.0 < 2 && b.0 < 2 && s2.realizes(r, a, b)
        })
        .unwrap();
        assert_eq!(equivalent(&s3, &padded), Equivalence::AntichainsDiffer);
        assert_eq!(equivalent(&s3, &s2), Equivalence::PropositionsDiffer);
        let shuffled = s3.permute_props(&[2, 0, 1]).unwrap();
        assert!(equivalent(&s3, &shuffled).holds());
    }

    #[test]
    fn canonical_roundtrip() {
        let c = canonicalize(&two_element_lattical());
        assert_eq!(canonicalize(&c.to_structure()), c);
        let rebuilt = CanonicalForm::from_parts(c.props().to_vec(), c.antichain().to_vec()).unwrap();
        assert_eq!(rebuilt, c);
        let bad = vec![pairs(2, &[(0, 0)]), pairs(2, &[(0, 0), (1, 1)])];
        assert!(CanonicalForm::from_parts(c.props().to_vec(), bad).is_err());
    }

    #[test]
    fn pumping_cutoffs() {
        let full = BinRel::full(names(&["a", "b"])).unwrap();
        let (first, second) = pumping_structures(&full, 2).unwrap();
        assert_eq!(first.n_reals(), 5);
        assert_eq!(pointwise_cutoff(&first, 1 << 20).unwrap(), Some(2));
        assert_eq!(second.n_reals(), 4);
        assert_eq!(pointwise_cutoff(&second, 1 << 20).unwrap(), Some(4));

        let three = BinRel::from_pairs(names(&["a", "b"]), &[(0, 0), (0, 1), (1, 1)]).unwrap();
        let (_, second) = pumping_structures(&three, 2).unwrap();
        assert_eq!(pointwise_cutoff(&second, 1 << 20).unwrap(), Some(3));

        // only the empty realizer survives, so nothing entails and nothing differs
        let (first, _) = pumping_structures(&full, 1).unwrap();
        assert_eq!(first.n_reals(), 1);
        assert_eq!(pointwise_cutoff(&first, 16).unwrap(), None);
        assert!(pumping_structures(&full, 0).is_err());
        assert_eq!(pointwise_cutoff(&sigma_n(1).unwrap(), 16).unwrap(), None);
    }
}
