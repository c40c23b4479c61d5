//! Explicit fibers `(P^I, |-_I)` for small index sets.
//!
//! A fiber element is a tuple of propositions, one per index, numbered in
//! lexicographic order with index 0 most significant.

use serde::Serialize;

use crate::error::{check_budget, Result};
use crate::structure::{PrStructure, PropId};

pub const DEFAULT_MAX_FIBER: usize = 1024;
pub const DEFAULT_REINDEX_MAX: usize = 3;

/// `|P|^k`, saturating.
pub fn fiber_size(props: usize, k: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..k {
        acc = acc.saturating_mul(props as u128);
    }
    acc
}

/// The fiber over an index set of size `k`, with its relation tabulated.
pub struct Fiber<'a> {
    s: &'a PrStructure,
    k: usize,
    size: usize,
    rel: Vec<bool>,
}

impl<'a> Fiber<'a> {
    pub fn new(s: &'a PrStructure, k: usize, max_size: usize) -> Result<Fiber<'a>> {
        let size = fiber_size(s.n_props(), k);
        check_budget("max fiber size", max_size as u128, size)?;
        let size = size as usize;
        let mut fiber = Fiber {
            s,
            k,
            size,
            rel: vec![false; size * size],
        };
        let elems: Vec<Vec<PropId>> = (0..size).map(|x| fiber.decode(x)).collect();
        for x in 0..size {
            for y in 0..size {
                fiber.rel[x * size + y] = s.entails_tuple(&elems[x], &elems[y]);
            }
        }
        Ok(fiber)
    }

    pub fn structure(&self) -> &PrStructure {
        self.s
    }

    pub fn index_size(&self) -> usize {
        self.k
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn decode(&self, mut x: usize) -> Vec<PropId> {
        let n = self.s.n_props();
        let mut out = vec![PropId(0); self.k];
        for slot in out.iter_mut().rev() {
            *slot = PropId(x % n);
            x /= n;
        }
        out
    }

    pub fn encode(&self, tuple: &[PropId]) -> usize {
        let n = self.s.n_props();
        tuple.iter().fold(0, |acc, a| acc * n + a.0)
    }

    pub fn names(&self, x: usize) -> Vec<String> {
        self.decode(x)
            .into_iter()
            .map(|a| self.s.prop_name(a).to_string())
            .collect()
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.rel[x * self.size + y]
    }

    fn equiv(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) && self.leq(y, x)
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.size).all(|x| self.leq(x, x))
    }

    pub fn is_transitive(&self) -> bool {
        let n = self.size;
        (0..n).all(|x| {
            (0..n).all(|y| !self.leq(x, y) || (0..n).all(|z| !self.leq(y, z) || self.leq(x, z)))
        })
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.size).all(|x| (0..self.size).all(|y| x == y || !self.equiv(x, y)))
    }

    /// First element below every element.
    pub fn bottom(&self) -> Option<usize> {
        (0..self.size).find(|&x| (0..self.size).all(|y| self.leq(x, y)))
    }

    /// First element above every element.
    pub fn top(&self) -> Option<usize> {
        (0..self.size).find(|&x| (0..self.size).all(|y| self.leq(y, x)))
    }

    /// First greatest lower bound of `x` and `y`.
    pub fn meet(&self, x: usize, y: usize) -> Option<usize> {
        let lower: Vec<usize> = (0..self.size)
            .filter(|&z| self.leq(z, x) && self.leq(z, y))
            .collect();
        lower
            .iter()
            .copied()
            .find(|&m| lower.iter().all(|&z| self.leq(z, m)))
    }

    /// First least upper bound of `x` and `y`.
    pub fn join(&self, x: usize, y: usize) -> Option<usize> {
        let upper: Vec<usize> = (0..self.size)
            .filter(|&z| self.leq(x, z) && self.leq(y, z))
            .collect();
        upper
            .iter()
            .copied()
            .find(|&j| upper.iter().all(|&z| self.leq(j, z)))
    }

    /// Precomposition with `m : [j] -> [k]`.
    pub fn reindex(&self, x: usize, m: &[usize], target: &Fiber<'_>) -> usize {
        let tuple = self.decode(x);
        let moved: Vec<PropId> = m.iter().map(|&i| tuple[i]).collect();
        target.encode(&moved)
    }
}

/// Budgets for [`check_fiber`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FiberOptions {
    pub max_fiber_size: usize,
    /// Reindexing maps `[j] -> [k]` are checked for all `j` up to this.
    pub reindex_max: usize,
}

impl Default for FiberOptions {
    fn default() -> Self {
        FiberOptions {
            max_fiber_size: DEFAULT_MAX_FIBER,
            reindex_max: DEFAULT_REINDEX_MAX,
        }
    }
}

/// Order-theoretic findings on one fiber, all computed from its table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberReport {
    pub index_size: usize,
    pub fiber_size: usize,
    pub reflexive: bool,
    pub transitive: bool,
    pub antisymmetric: bool,
    pub bottom: Option<Vec<String>>,
    pub top: Option<Vec<String>>,
    pub missing_meets: Vec<(Vec<String>, Vec<String>)>,
    pub missing_joins: Vec<(Vec<String>, Vec<String>)>,
    /// Partial order with bottom, top, and all binary meets and joins.
    pub bounded_lattice: bool,
    /// Only decided for bounded lattices with at most 128 elements.
    pub distributive: Option<bool>,
    /// Violations of `(x meet y)(i) |- x(i) meet y(i)` and the dual for
    /// joins, checked when this fiber and the base fiber are lattices.
    pub pointwise_failures: Vec<String>,
    pub reindexing_maps_checked: usize,
    pub reindexing_failures: Vec<String>,
}

impl FiberReport {
    /// Bounded lattice whose structure every checked reindexing preserves.
    pub fn is_preserved_bounded_lattice(&self) -> bool {
        self.bounded_lattice && self.reindexing_failures.is_empty() && self.pointwise_failures.is_empty()
    }
}

struct Ops {
    bottom: Option<usize>,
    top: Option<usize>,
    meets: Vec<Option<usize>>,
    joins: Vec<Option<usize>>,
}

fn ops(f: &Fiber<'_>) -> Ops {
    let n = f.size();
    let mut meets = vec![None; n * n];
    let mut joins = vec![None; n * n];
    for x in 0..n {
        for y in 0..n {
            meets[x * n + y] = f.meet(x, y);
            joins[x * n + y] = f.join(x, y);
        }
    }
    Ops {
        bottom: f.bottom(),
        top: f.top(),
        meets,
        joins,
    }
}

/// All maps `[j] -> [k]`, as value lists.
fn all_maps(j: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if j == 0 { vec![vec![]] } else { vec![] };
    }
    let count = fiber_size(k, j) as usize;
    (0..count)
        .map(|mut c| {
            let mut m = vec![0; j];
            for slot in m.iter_mut().rev() {
                *slot = c % k;
                c /= k;
            }
            m
        })
        .collect()
}

pub fn check_fiber(s: &PrStructure, index_size: usize, opts: &FiberOptions) -> Result<FiberReport> {
    let fiber = Fiber::new(s, index_size, opts.max_fiber_size)?;
    let n = fiber.size();
    let o = ops(&fiber);
    let reflexive = fiber.is_reflexive();
    let transitive = fiber.is_transitive();
    let antisymmetric = fiber.is_antisymmetric();
    let mut missing_meets = Vec::new();
    let mut missing_joins = Vec::new();
    for x in 0..n {
        for y in x..n {
            if o.meets[x * n + y].is_none() {
                missing_meets.push((fiber.names(x), fiber.names(y)));
            }
            if o.joins[x * n + y].is_none() {
                missing_joins.push((fiber.names(x), fiber.names(y)));
            }
        }
    }
    let bounded_lattice = reflexive
        && transitive
        && antisymmetric
        && o.bottom.is_some()
        && o.top.is_some()
        && missing_meets.is_empty()
        && missing_joins.is_empty();

    let distributive = (bounded_lattice && n <= 128).then(|| {
        (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| {
                    let lhs = o.meets[x * n + o.joins[y * n + z].unwrap()].unwrap();
                    let xy = o.meets[x * n + y].unwrap();
                    let xz = o.meets[x * n + z].unwrap();
                    lhs == o.joins[xy * n + xz].unwrap()
                })
            })
        })
    });

    let mut pointwise_failures = Vec::new();
    if bounded_lattice && index_size > 0 {
        let base = Fiber::new(s, 1, opts.max_fiber_size)?;
        let bo = ops(&base);
        let p = base.size();
        if bo.meets.iter().chain(&bo.joins).all(Option::is_some) {
            for x in 0..n {
                for y in 0..n {
                    let (tx, ty) = (fiber.decode(x), fiber.decode(y));
                    let tm = fiber.decode(o.meets[x * n + y].unwrap());
                    let tj = fiber.decode(o.joins[x * n + y].unwrap());
                    for i in 0..index_size {
                        let pm = bo.meets[tx[i].0 * p + ty[i].0].unwrap();
                        let pj = bo.joins[tx[i].0 * p + ty[i].0].unwrap();
                        if !base.leq(tm[i].0, pm) {
                            pointwise_failures.push(format!(
                                "meet of {:?} and {:?} at index {i}",
                                fiber.names(x),
                                fiber.names(y)
                            ));
                        }
                        if !base.leq(pj, tj[i].0) {
                            pointwise_failures.push(format!(
                                "join of {:?} and {:?} at index {i}",
                                fiber.names(x),
                                fiber.names(y)
                            ));
                        }
                    }
                }
            }
        }
    }

    let mut reindexing_maps_checked = 0;
    let mut reindexing_failures = Vec::new();
    for j in 0..=opts.reindex_max {
        let maps = all_maps(j, index_size);
        if maps.is_empty() {
            continue;
        }
        let target = Fiber::new(s, j, opts.max_fiber_size)?;
        let to = ops(&target);
        let tn = target.size();
        for m in &maps {
            reindexing_maps_checked += 1;
            let image: Vec<usize> = (0..n).map(|x| fiber.reindex(x, m, &target)).collect();
            let mut fail = |what: String| reindexing_failures.push(format!("map {m:?}: {what}"));
            for x in 0..n {
                for y in 0..n {
                    if fiber.leq(x, y) && !target.leq(image[x], image[y]) {
                        fail(format!("monotonicity at {:?} |- {:?}", fiber.names(x), fiber.names(y)));
                    }
                }
            }
            for (label, src, dst) in [("bottom", o.bottom, to.bottom), ("top", o.top, to.top)] {
                if let Some(b) = src {
                    if !dst.is_some_and(|d| target.equiv(image[b], d)) {
                        fail(format!("{label} not preserved"));
                    }
                }
            }
            for x in 0..n {
                for y in 0..n {
                    let pairs = [("meet", &o.meets, &to.meets), ("join", &o.joins, &to.joins)];
                    for (label, src, dst) in pairs {
                        if let Some(v) = src[x * n + y] {
                            let want = dst[image[x] * tn + image[y]];
                            if !want.is_some_and(|w| target.equiv(image[v], w)) {
                                fail(format!(
                                    "{label} of {:?} and {:?} not preserved",
                                    fiber.names(x),
                                    fiber.names(y)
                                ));
                            }
                        }
                    }
                }
            }
        }
    }

    Ok(FiberReport {
        index_size,
        fiber_size: n,
        reflexive,
        transitive,
        antisymmetric,
        bottom: o.bottom.map(|b| fiber.names(b)),
        top: o.top.map(|t| fiber.names(t)),
        missing_meets,
        missing_joins,
        bounded_lattice,
        distributive,
        pointwise_failures,
        reindexing_maps_checked,
        reindexing_failures,
    })
}
