//! Brute-force oracles shared by the integration and acceptance tests. They
//! only read cells of a structure and never call the deciders they check.
#![allow(dead_code)]

use std::collections::HashMap;

use prkit::{PrStructure, PropId, RealId};

pub fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// Some realizer lies in every cell named by `pairs`.
pub fn uniform(s: &PrStructure, pairs: &[(usize, usize)]) -> bool {
    s.real_ids()
        .any(|r| pairs.iter().all(|&(a, b)| s.realizes(r, PropId(a), PropId(b))))
}

/// Every subset of `items`, in mask order.
pub fn subsets<T: Copy>(items: &[T]) -> Vec<Vec<T>> {
    (0u64..1 << items.len())
        .map(|m| {
            (0..items.len())
                .filter(|&i| m & (1 << i) != 0)
                .map(|i| items[i])
                .collect()
        })
        .collect()
}

pub fn all_pairs(p: usize) -> Vec<(usize, usize)> {
    (0..p).flat_map(|a| (0..p).map(move |b| (a, b))).collect()
}

/// Uniform entailment of every pair set, in mask order over row-major pairs.
pub fn signature(s: &PrStructure) -> Vec<bool> {
    subsets(&all_pairs(s.n_props()))
        .iter()
        .map(|t| uniform(s, t))
        .collect()
}

/// Reflexivity of every fiber: the full diagonal is uniformly realized.
pub fn reflexive_all(s: &PrStructure) -> bool {
    let diag: Vec<(usize, usize)> = (0..s.n_props()).map(|a| (a, a)).collect();
    uniform(s, &diag)
}

/// Transitivity of every fiber. A triple of families is determined up to
/// entailment by its set of value triples.
pub fn transitive_all(s: &PrStructure) -> bool {
    let p = s.n_props();
    let triples: Vec<(usize, usize, usize)> = (0..p)
        .flat_map(|a| (0..p).flat_map(move |b| (0..p).map(move |c| (a, b, c))))
        .collect();
    subsets(&triples).iter().all(|t| {
        let ab: Vec<_> = t.iter().map(|&(a, b, _)| (a, b)).collect();
        let bc: Vec<_> = t.iter().map(|&(_, b, c)| (b, c)).collect();
        let ac: Vec<_> = t.iter().map(|&(a, _, c)| (a, c)).collect();
        !(uniform(s, &ab) && uniform(s, &bc)) || uniform(s, &ac)
    })
}

/// Antisymmetry of every fiber: mutually entailing families are equal.
pub fn antisymmetric_all(s: &PrStructure) -> bool {
    subsets(&all_pairs(s.n_props())).iter().all(|t| {
        let op: Vec<_> = t.iter().map(|&(a, b)| (b, a)).collect();
        !(uniform(s, t) && uniform(s, &op)) || t.iter().all(|&(a, b)| a == b)
    })
}

pub fn preorderal_oracle(s: &PrStructure) -> bool {
    reflexive_all(s) && transitive_all(s)
}

pub fn posetal_oracle(s: &PrStructure) -> bool {
    preorderal_oracle(s) && antisymmetric_all(s)
}

/// The fiber over `k` indices, tuples numbered with index 0 most
/// significant.
pub struct OracleFiber {
    pub p: usize,
    pub k: usize,
    pub size: usize,
    pub leq: Vec<bool>,
}

impl OracleFiber {
    pub fn new(s: &PrStructure, k: usize) -> OracleFiber {
        let p = s.n_props();
        let size = p.pow(k as u32);
        let tuples: Vec<Vec<usize>> = (0..size).map(|x| decode(p, k, x)).collect();
        let mut leq = vec![false; size * size];
        for x in 0..size {
            for y in 0..size {
                let pairs: Vec<_> = tuples[x].iter().copied().zip(tuples[y].iter().copied()).collect();
                leq[x * size + y] = uniform(s, &pairs);
            }
        }
        OracleFiber { p, k, size, leq }
    }

    pub fn le(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.size + y]
    }

    pub fn minimum(&self) -> Option<usize> {
        (0..self.size).find(|&x| (0..self.size).all(|y| self.le(x, y)))
    }

    pub fn maximum(&self) -> Option<usize> {
        (0..self.size).find(|&x| (0..self.size).all(|y| self.le(y, x)))
    }

    pub fn join(&self, x: usize, y: usize) -> Option<usize> {
        let ub: Vec<usize> = (0..self.size).filter(|&z| self.le(x, z) && self.le(y, z)).collect();
        ub.iter().copied().find(|&j| ub.iter().all(|&z| self.le(j, z)))
    }

    pub fn meet(&self, x: usize, y: usize) -> Option<usize> {
        let lb: Vec<usize> = (0..self.size).filter(|&z| self.le(z, x) && self.le(z, y)).collect();
        lb.iter().copied().find(|&m| lb.iter().all(|&z| self.le(z, m)))
    }
}

pub fn decode(p: usize, k: usize, mut x: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for slot in out.iter_mut().rev() {
        *slot = x % p;
        x /= p;
    }
    out
}

pub fn encode(p: usize, t: &[usize]) -> usize {
    t.iter().fold(0, |acc, &a| acc * p + a)
}

/// All maps `[j] -> [k]`.
pub fn maps(j: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if j == 0 { vec![vec![]] } else { vec![] };
    }
    (0..k.pow(j as u32)).map(|x| decode(k, j, x)).collect()
}

/// Precomposition of fiber element `x` over `k` indices with `m`.
pub fn precompose(p: usize, k: usize, x: usize, m: &[usize]) -> usize {
    let t = decode(p, k, x);
    encode(p, &m.iter().map(|&i| t[i]).collect::<Vec<_>>())
}

/// Every fiber over `1..=depth` indices has a minimum and a maximum, and
/// precomposition with every map among those sizes sends them to the
/// minimum and maximum of the target fiber.
pub fn bounds_preserved(s: &PrStructure, depth: usize) -> bool {
    let fibers: Vec<OracleFiber> = (0..=depth).map(|k| OracleFiber::new(s, k)).collect();
    for k in 1..=depth {
        let (Some(lo), Some(hi)) = (fibers[k].minimum(), fibers[k].maximum()) else {
            return false;
        };
        for (j, tf) in fibers.iter().enumerate().skip(1) {
            let (Some(tlo), Some(thi)) = (tf.minimum(), tf.maximum()) else {
                return false;
            };
            for m in maps(j, k) {
                let (mlo, mhi) = (precompose(s.n_props(), k, lo, &m), precompose(s.n_props(), k, hi, &m));
                if !(tf.le(mlo, tlo) && tf.le(tlo, mlo) && tf.le(mhi, thi) && tf.le(thi, mhi)) {
                    return false;
                }
            }
        }
    }
    true
}

/// Entailment is pointwise on every pair set.
pub fn pointwise_oracle(s: &PrStructure) -> bool {
    subsets(&all_pairs(s.n_props()))
        .iter()
        .all(|t| uniform(s, t) == t.iter().all(|&pair| uniform(s, &[pair])))
}

/// Least number of realizers of any structure over `p` propositions with
/// each signature reachable by at most `max_reals` realizers.
pub fn min_realizers_by_signature(p: usize, max_reals: usize) -> HashMap<Vec<bool>, usize> {
    let cells = p * p;
    let pair_sets: Vec<u64> = (0..1u64 << cells).collect();
    let ts: Vec<u64> = (0..1u64 << cells).collect();
    let mut best: HashMap<Vec<bool>, usize> = HashMap::new();
    // multisets of realized pair sets, as non-decreasing index tuples
    fn walk(
        start: usize,
        left: usize,
        chosen: &mut Vec<u64>,
        pair_sets: &[u64],
        ts: &[u64],
        best: &mut HashMap<Vec<bool>, usize>,
    ) {
        if !chosen.is_empty() {
            let sig: Vec<bool> = ts
                .iter()
                .map(|&t| chosen.iter().any(|&x| t & !x == 0))
                .collect();
            let n = chosen.len();
            best.entry(sig).and_modify(|m| *m = (*m).min(n)).or_insert(n);
        }
        if left == 0 {
            return;
        }
        for i in start..pair_sets.len() {
            chosen.push(pair_sets[i]);
            walk(i, left - 1, chosen, pair_sets, ts, best);
            chosen.pop();
        }
    }
    walk(0, max_reals, &mut Vec::new(), &pair_sets, &ts, &mut best);
    best
}

/// Realizers named by index, for building structures from pair sets.
pub fn from_pair_sets(p: usize, sets: &[Vec<(usize, usize)>]) -> PrStructure {
    PrStructure::from_fn(names("p", p), names("r", sets.len()), |a, b, r: RealId| {
        sets[r.0].contains(&(a.0, b.0))
    })
    .unwrap()
}
