//! Named example structures and reproducible generators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::appstruct::Pas;
use crate::error::{check_budget, Error, Result};
use crate::structure::{BinRel, PrStructure};

fn numbered(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// One realizer `*`, realizing exactly the related pairs.
pub fn sigma_from_bin(rel: &BinRel) -> Result<PrStructure> {
    PrStructure::from_fn(rel.carrier().to_vec(), vec!["*".into()], |a, b, _| {
        rel.contains(a.0, b.0)
    })
}

/// Propositions and realizers `1..=n`; realizer `x` lies in cell `(i, j)`
/// iff `i = j <= x` or `i = x < j`. Posetal of degree `n`.
pub fn sigma_n(n: usize) -> Result<PrStructure> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    PrStructure::from_fn(names.clone(), names, |a, b, r| {
        let (i, j, x) = (a.0 + 1, b.0 + 1, r.0 + 1);
        (i == j && j <= x) || (i == x && x < j)
    })
}

/// Two propositions `bot`, `top` and realizers `b`, `i`, `t`:
///
/// ```text
/// rho(bot, bot) = {b, i}    rho(bot, top) = {b, t}
/// rho(top, top) = {i, t}    rho(top, bot) = {}
/// ```
///
/// Every fiber is a bounded lattice, yet the structure has degree 3.
pub fn two_element_lattical() -> PrStructure {
    let props = vec!["bot".to_string(), "top".to_string()];
    let reals = vec!["b".to_string(), "i".to_string(), "t".to_string()];
    PrStructure::from_fn(props, reals, |a, b, r| {
        matches!((a.0, b.0, r.0), (0, 0, 0 | 1) | (0, 1, 0 | 2) | (1, 1, 1 | 2))
    })
    .expect("fixed names")
}

/// The additive group of integers modulo `n`.
pub fn cyclic_group(n: usize) -> Result<Pas> {
    Pas::numbered(n, |x, y| Some((x + y) % n))
}

/// The Klein four-group, as bit-wise xor on `0..4`.
pub fn klein_four() -> Pas {
    Pas::numbered(4, |x, y| Some(x ^ y)).expect("fixed names")
}

/// `x . y = y`.
pub fn right_projection(n: usize) -> Result<Pas> {
    Pas::numbered(n, |_, y| Some(y))
}

/// `x . y = x`.
pub fn left_projection(n: usize) -> Result<Pas> {
    Pas::numbered(n, |x, _| Some(x))
}

/// `x . y = c`.
pub fn constant_magma(n: usize, c: usize) -> Result<Pas> {
    if c >= n {
        return Err(Error::InvalidElement { id: c, len: n });
    }
    Pas::numbered(n, |_, _| Some(c))
}

/// What a generator produces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    /// PR tables with exactly (exhaustive) or at most (random) the given
    /// numbers of propositions and realizers.
    Pr { props: usize, reals: usize },
    /// Application tables on a carrier of the given size; `partial` allows
    /// undefined entries.
    Pas { carrier: usize, partial: bool },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Every labeled table, in lexicographic order.
    Exhaustive,
    /// `count` samples from a seeded generator.
    Random { seed: u64, count: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub target: Target,
    pub mode: Mode,
    /// Refuse exhaustive runs larger than this.
    pub limit: u128,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generated {
    Pr(PrStructure),
    Pas(Pas),
}

impl GeneratorSpec {
    pub fn exhaustive(target: Target) -> GeneratorSpec {
        GeneratorSpec {
            target,
            mode: Mode::Exhaustive,
            limit: 1 << 24,
        }
    }

    pub fn random(target: Target, seed: u64, count: usize) -> GeneratorSpec {
        GeneratorSpec {
            target,
            mode: Mode::Random { seed, count },
            limit: 1 << 24,
        }
    }

    fn validate(&self) -> Result<()> {
        let positive = match self.target {
            Target::Pr { props, reals } => props > 0 && reals > 0,
            Target::Pas { carrier, .. } => carrier > 0,
        };
        if !positive {
            return Err(Error::Precondition("generator bounds must be positive".into()));
        }
        Ok(())
    }

    /// Number of items an exhaustive run yields, saturating.
    pub fn exhaustive_count(&self) -> u128 {
        match self.target {
            Target::Pr { props, reals } => pow_sat(2, props * props * reals),
            Target::Pas { carrier, partial } => {
                pow_sat(carrier as u128 + partial as u128, carrier * carrier)
            }
        }
    }
}

fn pow_sat(base: u128, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
    }
    acc
}

/// Exhaustive PR tables over `props` propositions `p0..` and `reals`
/// realizers `r0..`. Table number `k` puts realizer `r` in cell `(a, b)`
/// iff bit `(a * props + b) * reals + r` of `k` is set.
pub fn enumerate_pr(props: usize, reals: usize, limit: u128) -> Result<impl Iterator<Item = PrStructure>> {
    let spec = GeneratorSpec {
        target: Target::Pr { props, reals },
        mode: Mode::Exhaustive,
        limit,
    };
    spec.validate()?;
    let bits = props * props * reals;
    // table numbers are u64
    check_budget("max enumeration", limit.min(u64::MAX as u128), spec.exhaustive_count())?;
    let pn = numbered("p", props);
    let rn = numbered("r", reals);
    Ok((0u64..1 << bits).map(move |k| {
        PrStructure::from_fn(pn.clone(), rn.clone(), |a, b, r| {
            k >> ((a.0 * props + b.0) * reals + r.0) & 1 == 1
        })
        .expect("generated names are valid")
    }))
}

/// Exhaustive application tables on `0..carrier`. Entries are digits in base
/// `carrier + 1` (digit `carrier` meaning undefined) when `partial`, base
/// `carrier` otherwise, with entry `(x, y)` the least significant digit
/// for `(0, 0)`.
pub fn enumerate_pas(carrier: usize, partial: bool, limit: u128) -> Result<impl Iterator<Item = Pas>> {
    let spec = GeneratorSpec {
        target: Target::Pas { carrier, partial },
        mode: Mode::Exhaustive,
        limit,
    };
    spec.validate()?;
    let total = spec.exhaustive_count();
    check_budget("max enumeration", limit.min(u64::MAX as u128), total)?;
    let base = carrier as u64 + partial as u64;
    Ok((0..total as u64).map(move |mut k| {
        let table = (0..carrier * carrier)
            .map(|_| {
                let d = (k % base) as usize;
                k /= base;
                (d < carrier).then_some(d)
            })
            .collect();
        Pas::new((0..carrier).map(|i| i.to_string()).collect(), table).expect("generated tables are valid")
    }))
}

/// Random PR tables: sizes uniform in `1..=props` and `1..=reals`, every
/// cell membership a fair coin.
pub fn random_pr(props: usize, reals: usize, seed: u64) -> impl Iterator<Item = PrStructure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    std::iter::repeat_with(move || {
        let p = rng.gen_range(1..=props.max(1));
        let r = rng.gen_range(1..=reals.max(1));
        PrStructure::from_fn(numbered("p", p), numbered("r", r), |_, _, _| rng.gen_bool(0.5))
            .expect("generated names are valid")
    })
}

/// Random application tables on exactly `carrier` elements, each entry
/// uniform over the carrier (plus undefined when `partial`).
pub fn random_pas(carrier: usize, partial: bool, seed: u64) -> impl Iterator<Item = Pas> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let choices = carrier + partial as usize;
    std::iter::repeat_with(move || {
        Pas::numbered(carrier, |_, _| {
            let d = rng.gen_range(0..choices);
            (d < carrier).then_some(d)
        })
        .expect("generated tables are valid")
    })
}

/// A uniformly random permutation of `0..n`.
pub fn random_permutation(n: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

/// Streams what `spec` describes.
pub fn generate(spec: &GeneratorSpec) -> Result<Box<dyn Iterator<Item = Generated>>> {
    spec.validate()?;
    Ok(match (spec.target, spec.mode) {
        (Target::Pr { props, reals }, Mode::Exhaustive) => {
            Box::new(enumerate_pr(props, reals, spec.limit)?.map(Generated::Pr))
        }
        (Target::Pas { carrier, partial }, Mode::Exhaustive) => {
            Box::new(enumerate_pas(carrier, partial, spec.limit)?.map(Generated::Pas))
        }
        (Target::Pr { props, reals }, Mode::Random { seed, count }) => {
            Box::new(random_pr(props, reals, seed).take(count).map(Generated::Pr))
        }
        (Target::Pas { carrier, partial }, Mode::Random { seed, count }) => {
            check_budget("max carrier", crate::appstruct::MAX_CARRIER as u128, carrier as u128)?;
            Box::new(random_pas(carrier, partial, seed).take(count).map(Generated::Pas))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{PropId, RealId};
    use std::collections::HashSet;

    #[test]
    fn sigma3_table() {
        let s = sigma_n(3).unwrap();
        let cell = |i: usize, j: usize| s.cell(PropId(i - 1), PropId(j - 1)).iter().map(|r| r + 1).collect::<Vec<_>>();
        assert_eq!(cell(1, 1), vec![1, 2, 3]);
        assert_eq!(cell(1, 2), vec![1]);
        assert_eq!(cell(1, 3), vec![1]);
        assert_eq!(cell(2, 2), vec![2, 3]);
        assert_eq!(cell(2, 3), vec![2]);
        assert_eq!(cell(3, 3), vec![3]);
        for (i, j) in [(2, 1), (3, 1), (3, 2)] {
            assert!(cell(i, j).is_empty());
        }
    }

    #[test]
    fn sigma1_is_trivial() {
        let s = sigma_n(1).unwrap();
        assert!(s.realizes(RealId(0), PropId(0), PropId(0)));
        assert!(sigma_n(0).is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_pr(1, 1, 1 << 20).unwrap().count(), 2);
        assert_eq!(enumerate_pr(2, 1, 1 << 20).unwrap().count(), 16);
        assert_eq!(enumerate_pas(2, true, 1 << 20).unwrap().count(), 81);
        assert_eq!(enumerate_pas(2, false, 1 << 20).unwrap().count(), 16);
        assert!(enumerate_pr(3, 3, 1000).is_err());
        assert!(enumerate_pr(0, 1, 1000).is_err());
    }

    #[test]
    fn enumeration_has_no_duplicates_and_is_stable() {
        let a: Vec<_> = enumerate_pr(2, 2, 1 << 20).unwrap().collect();
        let b: Vec<_> = enumerate_pr(2, 2, 1 << 20).unwrap().collect();
        assert_eq!(a, b);
        let distinct: HashSet<_> = a.iter().map(|s| format!("{s:?}")).collect();
        assert_eq!(distinct.len(), a.len());
        let pas: Vec<_> = enumerate_pas(2, true, 1 << 20).unwrap().collect();
        let distinct: HashSet<_> = pas.iter().map(|p| p.table().to_vec()).collect();
        assert_eq!(distinct.len(), 81);
    }

    #[test]
    fn random_is_reproducible() {
        let a: Vec<_> = random_pr(3, 6, 7).take(20).collect();
        let b: Vec<_> = random_pr(3, 6, 7).take(20).collect();
        assert_eq!(a, b);
        assert!(a.iter().all(|s| s.n_props() <= 3 && s.n_reals() <= 6));
        let c: Vec<_> = random_pas(3, true, 1).take(5).collect();
        assert_eq!(c, random_pas(3, true, 1).take(5).collect::<Vec<_>>());
    }

    #[test]
    fn generate_dispatches() {
        let spec = GeneratorSpec::exhaustive(Target::Pas { carrier: 2, partial: true });
        assert_eq!(generate(&spec).unwrap().count(), 81);
        let spec = GeneratorSpec::random(Target::Pr { props: 2, reals: 2 }, 3, 10);
        assert_eq!(generate(&spec).unwrap().count(), 10);
    }
}
