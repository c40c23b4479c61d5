//! Named structure properties, for classification and implication search.

use std::fmt;
use std::str::FromStr;

use crate::canonical::is_p_structure;
use crate::error::{Error, Result};
use crate::fiber::{check_fiber, FiberOptions};
use crate::order::{is_bounded_posetal, is_posetal, is_preorderal};
use crate::structure::PrStructure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    Partitioned,
    Preorderal,
    Posetal,
    BoundedPosetal,
    PStructure,
    /// Every fiber up to the checked depth is a bounded lattice preserved by
    /// reindexing.
    Lattical,
    /// Lattical, with every checked fiber distributive.
    Distributive,
}

impl Property {
    pub const ALL: [Property; 7] = [
        Property::Partitioned,
        Property::Preorderal,
        Property::Posetal,
        Property::BoundedPosetal,
        Property::PStructure,
        Property::Lattical,
        Property::Distributive,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Partitioned => "partitioned",
            Property::Preorderal => "preorderal",
            Property::Posetal => "posetal",
            Property::BoundedPosetal => "bounded-posetal",
            Property::PStructure => "p-structure",
            Property::Lattical => "lattical",
            Property::Distributive => "distributive",
        }
    }

    /// Whether the verdict rests on bounded fiber evidence rather than a
    /// decision procedure.
    pub fn is_bounded_evidence(self) -> bool {
        matches!(self, Property::Lattical | Property::Distributive)
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Property> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s.trim())
            .ok_or_else(|| Error::UnknownName(format!("property {s:?}")))
    }
}

/// Depth and size caps for the fiber-based properties.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalOptions {
    /// Fibers over index sets of size `1..=fiber_depth` are checked, with
    /// reindexing among sizes up to the same bound.
    pub fiber_depth: usize,
    pub max_fiber_size: usize,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            fiber_depth: 3,
            max_fiber_size: crate::fiber::DEFAULT_MAX_FIBER,
        }
    }
}

fn lattice_fibers(s: &PrStructure, opts: &EvalOptions, distributive: bool) -> Result<bool> {
    let fopts = FiberOptions {
        max_fiber_size: opts.max_fiber_size,
        reindex_max: opts.fiber_depth,
    };
    for k in 1..=opts.fiber_depth {
        let r = check_fiber(s, k, &fopts)?;
        if !r.is_preserved_bounded_lattice() {
            return Ok(false);
        }
        if distributive && r.distributive != Some(true) {
            if r.distributive.is_none() {
                return Err(Error::Budget {
                    bound: "distributivity fiber size",
                    limit: 128,
                    required: r.fiber_size as u128,
                });
            }
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn evaluate(s: &PrStructure, p: Property, opts: &EvalOptions) -> Result<bool> {
    Ok(match p {
        Property::Partitioned => s.is_partitioned(),
        Property::Preorderal => is_preorderal(s),
        Property::Posetal => is_posetal(s),
        Property::BoundedPosetal => is_bounded_posetal(s),
        Property::PStructure => is_p_structure(s),
        Property::Lattical => lattice_fibers(s, opts, false)?,
        Property::Distributive => lattice_fibers(s, opts, true)?,
    })
}

/// `A & B & ... => C & ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Implication {
    pub premises: Vec<Property>,
    pub conclusions: Vec<Property>,
}

fn conjunction(text: &str) -> Result<Vec<Property>> {
    let props = text
        .split('&')
        .filter(|t| !t.trim().is_empty())
        .map(str::parse)
        .collect::<Result<Vec<Property>>>()?;
    if props.is_empty() {
        return Err(Error::Malformed(format!("empty conjunction in {text:?}")));
    }
    Ok(props)
}

impl FromStr for Implication {
    type Err = Error;

    fn from_str(s: &str) -> Result<Implication> {
        let (lhs, rhs) = s
            .split_once("=>")
            .ok_or_else(|| Error::Malformed(format!("implication {s:?} lacks \"=>\"")))?;
        Ok(Implication {
            premises: conjunction(lhs)?,
            conclusions: conjunction(rhs)?,
        })
    }
}

impl fmt::Display for Implication {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |ps: &[Property]| ps.iter().map(|p| p.name()).collect::<Vec<_>>().join("&");
        write!(f, "{}=>{}", join(&self.premises), join(&self.conclusions))
    }
}

/// Outcome of testing one structure against an implication.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Instance {
    PremisesFail,
    Holds,
    Counterexample,
}

impl Implication {
    pub fn test(&self, s: &PrStructure, opts: &EvalOptions) -> Result<Instance> {
        for &p in &self.premises {
            if !evaluate(s, p, opts)? {
                return Ok(Instance::PremisesFail);
            }
        }
        for &p in &self.conclusions {
            if !evaluate(s, p, opts)? {
                return Ok(Instance::Counterexample);
            }
        }
        Ok(Instance::Holds)
    }
}
