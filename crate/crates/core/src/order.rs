//! Deciders for preorderal, posetal and bounded-posetal structures.
//!
//! All three are decided from finite witnesses on the table: an identity
//! realizer present on the diagonal and a composition realizer for every
//! pair of realizers (preorderal); antisymmetry of `|-` (posetal); bottom and
//! top propositions with uniform realizers (bounded-posetal).

use serde::Serialize;

use crate::bits::BitSet;
use crate::canonical::is_p_structure;
use crate::error::{check_budget, Error, Result};
use crate::structure::{PrStructure, PropId, RealId};

/// Identity and composition realizers of a preorderal structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PreorderWitness {
    pub identity: RealId,
    /// `compose[s][r]` realizes `a -> c` whenever `r` realizes `a -> b` and
    /// `s` realizes `b -> c`.
    pub compose: Vec<Vec<RealId>>,
}

impl PreorderWitness {
    pub fn compose(&self, s: RealId, r: RealId) -> RealId {
        self.compose[s.0][r.0]
    }
}

/// Bottom and top propositions with uniform realizers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsWitness {
    pub bottom: PropId,
    pub top: PropId,
    pub b_real: RealId,
    pub t_real: RealId,
}

/// A monoid on the realizers occurring in some cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Monoid {
    pub carrier: Vec<RealId>,
    /// `op[x][y]` is the carrier index of `x` composed after `y`.
    pub op: Vec<Vec<usize>>,
    pub unit: usize,
}

impl Monoid {
    pub fn is_associative(&self) -> bool {
        let n = self.carrier.len();
        (0..n).all(|x| {
            (0..n).all(|y| (0..n).all(|z| self.op[self.op[x][y]][z] == self.op[x][self.op[y][z]]))
        })
    }

    pub fn has_unit(&self) -> bool {
        let u = self.unit;
        (0..self.carrier.len()).all(|x| self.op[u][x] == x && self.op[x][u] == x)
    }
}

/// The least realizer on every diagonal cell.
pub fn find_identity(s: &PrStructure) -> Option<RealId> {
    s.common_realizers(s.prop_ids().map(|a| (a, a)))
        .first()
        .map(RealId)
}

/// Realizers admissible as `s` after `r`, or `None` when no chain
/// `r : a -> b`, `s : b -> c` exists and anything is admissible.
fn composition_candidates(
    st: &PrStructure,
    by_real: &[Vec<(PropId, PropId)>],
    s: RealId,
    r: RealId,
) -> Option<BitSet> {
    let mut acc: Option<BitSet> = None;
    for &(a, b) in &by_real[r.0] {
        for c in st.prop_ids() {
            if st.realizes(s, b, c) {
                let cell = st.cell_words(a, c);
                acc.get_or_insert_with(|| BitSet::full(st.n_reals()))
                    .intersect_words(cell);
            }
        }
    }
    acc
}

fn pairs_by_realizer(s: &PrStructure) -> Vec<Vec<(PropId, PropId)>> {
    s.real_ids()
        .map(|r| s.rho_inverse_unchecked(r).to_vec())
        .collect()
}

/// Searches for an identity and a composition table, taking the least
/// admissible realizer each time. Unconstrained compositions default to the
/// identity.
pub fn find_preorder_witness(s: &PrStructure) -> Option<PreorderWitness> {
    let identity = find_identity(s)?;
    let by_real = pairs_by_realizer(s);
    let mut compose = vec![vec![identity; s.n_reals()]; s.n_reals()];
    for sr in s.real_ids() {
        for r in s.real_ids() {
            if let Some(c) = composition_candidates(s, &by_real, sr, r) {
                compose[sr.0][r.0] = RealId(c.first()?);
            }
        }
    }
    Some(PreorderWitness { identity, compose })
}

pub fn is_preorderal(s: &PrStructure) -> bool {
    find_preorder_witness(s).is_some()
}

/// `a |- b` and `b |- a` only for `a = b`.
pub fn has_antisymmetric_entailment(s: &PrStructure) -> bool {
    s.prop_ids().all(|a| {
        s.prop_ids()
            .all(|b| a == b || !(s.cell_nonempty(a, b) && s.cell_nonempty(b, a)))
    })
}

pub fn is_posetal(s: &PrStructure) -> bool {
    has_antisymmetric_entailment(s) && is_preorderal(s)
}

/// Least `(bottom, b)` with `b` realizing `bottom -> a` for every `a`.
pub fn find_bottom_witness(s: &PrStructure) -> Option<(PropId, RealId)> {
    s.prop_ids().find_map(|bot| {
        s.common_realizers(s.prop_ids().map(|a| (bot, a)))
            .first()
            .map(|r| (bot, RealId(r)))
    })
}

/// Least `(top, t)` with `t` realizing `a -> top` for every `a`.
pub fn find_top_witness(s: &PrStructure) -> Option<(PropId, RealId)> {
    s.prop_ids().find_map(|top| {
        s.common_realizers(s.prop_ids().map(|a| (a, top)))
            .first()
            .map(|r| (top, RealId(r)))
    })
}

pub fn find_bounds_witness(s: &PrStructure) -> Option<BoundsWitness> {
    let (bottom, b_real) = find_bottom_witness(s)?;
    let (top, t_real) = find_top_witness(s)?;
    Some(BoundsWitness {
        bottom,
        top,
        b_real,
        t_real,
    })
}

pub fn is_bounded_posetal(s: &PrStructure) -> bool {
    is_posetal(s) && find_bounds_witness(s).is_some()
}

fn singleton_of(s: &PrStructure, a: PropId, b: PropId) -> Option<RealId> {
    let cell = s.cell(a, b);
    (cell.count() == 1).then(|| RealId(cell.first().unwrap()))
}

/// Some proposition `top` has `rho(a, top) = {t}` for all `a`, on a
/// bounded-posetal structure.
pub fn p_structure_sufficient_top(s: &PrStructure) -> bool {
    is_bounded_posetal(s)
        && s.prop_ids().any(|top| {
            let t = singleton_of(s, top, top);
            t.is_some() && s.prop_ids().all(|a| singleton_of(s, a, top) == t)
        })
}

/// Some proposition `bot` has `rho(bot, a) = {b}` for all `a`, on a
/// bounded-posetal structure.
pub fn p_structure_sufficient_bottom(s: &PrStructure) -> bool {
    is_bounded_posetal(s)
        && s.prop_ids().any(|bot| {
            let b = singleton_of(s, bot, bot);
            b.is_some() && s.prop_ids().all(|a| singleton_of(s, bot, a) == b)
        })
}

/// Checks that partitioned posetal structures with fiber minima (or maxima)
/// are P-structures. Returns whether the hypotheses held.
pub fn partitioned_posetal_p_check(s: &PrStructure) -> Result<bool> {
    let hypotheses = s.is_partitioned()
        && is_posetal(s)
        && (find_bottom_witness(s).is_some() || find_top_witness(s).is_some());
    if hypotheses && !is_p_structure(s) {
        return Err(Error::Inconsistent(
            "partitioned posetal structure with bounds is not a P-structure".into(),
        ));
    }
    Ok(hypotheses)
}

/// Search budget for completing unconstrained compositions.
pub const DEFAULT_MONOID_SEARCH: u64 = 1 << 20;

/// Extracts the monoid on the realizers used in some cell. Compositions
/// fixed by a cell are taken from it; the rest are filled by backtracking
/// until the table is associative.
pub fn extract_monoid(s: &PrStructure) -> Result<Monoid> {
    extract_monoid_with(s, DEFAULT_MONOID_SEARCH)
}

pub fn extract_monoid_with(s: &PrStructure, max_nodes: u64) -> Result<Monoid> {
    if !s.is_partitioned() {
        return Err(Error::Precondition("structure is not partitioned".into()));
    }
    let w = find_preorder_witness(s)
        .ok_or_else(|| Error::Precondition("structure is not preorderal".into()))?;
    let used: Vec<RealId> = s
        .real_ids()
        .filter(|&r| !s.rho_inverse_unchecked(r).is_empty())
        .collect();
    let index_of = |r: RealId| used.iter().position(|&u| u == r);
    let unit = index_of(w.identity)
        .ok_or_else(|| Error::Inconsistent("identity realizes nothing".into()))?;
    let n = used.len();
    let by_real = pairs_by_realizer(s);
    let mut op: Vec<Vec<Option<usize>>> = vec![vec![None; n]; n];
    let mut free = Vec::new();
    for (x, &sx) in used.iter().enumerate() {
        for (y, &ry) in used.iter().enumerate() {
            match composition_candidates(s, &by_real, sx, ry) {
                Some(c) => {
                    let r = RealId(c.first().expect("preorderal"));
                    op[x][y] = Some(index_of(r).ok_or_else(|| {
                        Error::Inconsistent(format!("composite of {sx} after {ry} realizes nothing"))
                    })?);
                }
                None if x == unit => op[x][y] = Some(y),
                None if y == unit => op[x][y] = Some(x),
                None => free.push((x, y)),
            }
        }
    }
    let mut nodes = 0u64;
    if !complete_associative(&mut op, &free, 0, &mut nodes, max_nodes)? {
        return Err(Error::Inconsistent(
            "no associative composition extends the forced one".into(),
        ));
    }
    let monoid = Monoid {
        carrier: used,
        op: op.into_iter().map(|row| row.into_iter().map(|v| v.unwrap()).collect()).collect(),
        unit,
    };
    if !monoid.has_unit() {
        return Err(Error::Inconsistent("extracted unit law fails".into()));
    }
    Ok(monoid)
}

/// No fully assigned triple violates associativity.
fn partial_associative(op: &[Vec<Option<usize>>]) -> bool {
    let n = op.len();
    for x in 0..n {
        for y in 0..n {
            let Some(xy) = op[x][y] else { continue };
            for z in 0..n {
                let (Some(l), Some(yz)) = (op[xy][z], op[y][z]) else { continue };
                if let Some(r) = op[x][yz] {
                    if l != r {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn complete_associative(
    op: &mut [Vec<Option<usize>>],
    free: &[(usize, usize)],
    at: usize,
    nodes: &mut u64,
    max_nodes: u64,
) -> Result<bool> {
    *nodes += 1;
    check_budget("max monoid search", max_nodes as u128, *nodes as u128)?;
    if !partial_associative(op) {
        return Ok(false);
    }
    let Some(&(x, y)) = free.get(at) else {
        return Ok(true);
    };
    for v in 0..op.len() {
        op[x][y] = Some(v);
        if complete_associative(op, free, at + 1, nodes, max_nodes)? {
            return Ok(true);
        }
    }
    op[x][y] = None;
    Ok(false)
}
