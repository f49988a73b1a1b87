//! Semiflow predicates and generating-set classification over the naturals,
//! the non-negative rationals, and the rationals.
//!
//! Generating sets are decided against the net's own minimal generators:
//!
//! * over the naturals, a set generates iff it produces every minimal
//!   semiflow, and it is minimal iff it *is* the set of minimal semiflows;
//! * over the non-negative rationals, it generates iff its cone contains the
//!   fundamental set, and it is minimal iff it has one member per minimal
//!   support;
//! * over the rationals, it generates iff its span contains the fundamental
//!   set (whose span is the span of all semiflows), and it is minimal iff it
//!   is linearly independent.
//!
//! Inclusion-minimal and cardinality-minimal generating sets coincide in all
//! three cases, so reports carry the same verdict for both.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigUint;

use crate::error::{check_dim, Error, Result};
use crate::farkas::{fundamental_set_with, FarkasOptions, FundamentalSet};
use crate::hilbert::{minimal_semiflows_with, HilbertBasis, HilbertOptions};
use crate::natdec::{nat_decomposable_with_cap, DEFAULT_NODE_CAP};
use crate::net::PetriNet;
use crate::rational::{in_cone, q_basis_indices, rank, solve_q};
use crate::vector::{satisfies_flow_equations, Semiflow};

/// Scalar domain of a generating set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Domain {
    Nat,
    QPlus,
    Q,
}

impl Domain {
    pub const ALL: [Domain; 3] = [Domain::Nat, Domain::QPlus, Domain::Q];

    pub fn as_str(self) -> &'static str {
        match self {
            Domain::Nat => "nat",
            Domain::QPlus => "qplus",
            Domain::Q => "q",
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Domain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nat" => Ok(Domain::Nat),
            "qplus" => Ok(Domain::QPlus),
            "q" => Ok(Domain::Q),
            other => Err(Error::InvalidArgument(format!(
                "unknown domain '{other}' (expected nat, qplus or q)"
            ))),
        }
    }
}

/// Why a set failed to be generating or minimal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A semiflow of the net that the set does not generate.
    NotGenerated(Semiflow),
    /// Index of a member whose removal leaves a generating set.
    Removable(usize),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::NotGenerated(v) => write!(f, "semiflow {v} is not generated"),
            Witness::Removable(i) => write!(f, "member #{i} can be removed"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingSetReport {
    pub domain: Domain,
    pub is_generating: bool,
    pub is_minimal_gs: bool,
    pub is_least_gs: bool,
    pub witness: Option<Witness>,
}

/// Net-level artifacts shared by the classification queries.
///
/// The fundamental set is computed eagerly; the minimal semiflows are
/// computed on first use since that search can be costly.
#[derive(Debug)]
pub struct Analysis<'a> {
    net: &'a PetriNet,
    fundamental: FundamentalSet,
    hilbert_options: HilbertOptions,
    hilbert: OnceLock<HilbertBasis>,
    node_cap: u64,
}

impl<'a> Analysis<'a> {
    pub fn new(net: &'a PetriNet) -> Self {
        Self::with_options(
            net,
            FarkasOptions::default(),
            HilbertOptions::default(),
            DEFAULT_NODE_CAP,
        )
    }

    pub fn with_options(
        net: &'a PetriNet,
        farkas: FarkasOptions,
        hilbert: HilbertOptions,
        node_cap: u64,
    ) -> Self {
        Analysis {
            net,
            fundamental: fundamental_set_with(net, farkas),
            hilbert_options: hilbert,
            hilbert: OnceLock::new(),
            node_cap,
        }
    }

    pub fn net(&self) -> &'a PetriNet {
        self.net
    }

    pub fn fundamental(&self) -> &FundamentalSet {
        &self.fundamental
    }

    pub fn hilbert(&self) -> Result<&HilbertBasis> {
        if let Some(h) = self.hilbert.get() {
            return Ok(h);
        }
        let h = minimal_semiflows_with(self.net, self.hilbert_options)?;
        Ok(self.hilbert.get_or_init(|| h))
    }

    /// Dimension of the span of all semiflows.
    pub fn q_rank(&self) -> usize {
        rank(self.fundamental.members())
    }

    /// Fails unless `v` is a semiflow of the net.
    pub fn check_semiflow(&self, v: &Semiflow) -> Result<()> {
        if satisfies_flow_equations(self.net, v)? {
            Ok(())
        } else {
            Err(Error::NotSemiflow(v.to_string()))
        }
    }

    fn check_nonzero_semiflow(&self, v: &Semiflow) -> Result<()> {
        self.check_semiflow(v)?;
        if v.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(())
    }

    pub fn is_minimal(&self, v: &Semiflow) -> Result<bool> {
        self.check_nonzero_semiflow(v)?;
        Ok(self.hilbert()?.contains(v))
    }

    pub fn has_minimal_support(&self, v: &Semiflow) -> Result<bool> {
        self.check_nonzero_semiflow(v)?;
        Ok(self.fundamental.is_minimal_support(&v.support()))
    }

    pub fn classify_generating_set(
        &self,
        set: &[Semiflow],
        domain: Domain,
    ) -> Result<GeneratingSetReport> {
        self.classify_generating_set_with(set, domain, false)
    }

    /// With `paranoid`, minimality is also decided by removing each member in
    /// turn, and any disagreement with the cardinality verdict is an error.
    pub fn classify_generating_set_with(
        &self,
        set: &[Semiflow],
        domain: Domain,
        paranoid: bool,
    ) -> Result<GeneratingSetReport> {
        for g in set {
            check_dim(self.net.place_count(), g.len())?;
            self.check_semiflow(g)?;
        }
        if let Some(missing) = self.first_not_generated(set, domain)? {
            return Ok(GeneratingSetReport {
                domain,
                is_generating: false,
                is_minimal_gs: false,
                is_least_gs: false,
                witness: Some(Witness::NotGenerated(missing)),
            });
        }
        let removable = self.removable_member(set, domain)?;
        if paranoid {
            let direct = self.removable_by_deletion(set, domain)?;
            if direct.is_some() != removable.is_some() {
                return Err(Error::Internal(format!(
                    "{domain}: cardinality test says removable={:?}, deletion test says {:?}",
                    removable, direct
                )));
            }
        }
        let minimal = removable.is_none();
        Ok(GeneratingSetReport {
            domain,
            is_generating: true,
            is_minimal_gs: minimal,
            is_least_gs: minimal,
            witness: removable.map(Witness::Removable),
        })
    }

    fn first_not_generated(&self, set: &[Semiflow], domain: Domain) -> Result<Option<Semiflow>> {
        match domain {
            Domain::Nat => {
                for h in self.hilbert()?.members() {
                    if nat_decomposable_with_cap(h, set, self.node_cap)?.is_none() {
                        return Ok(Some(h.clone()));
                    }
                }
            }
            Domain::QPlus => {
                for g in self.fundamental.members() {
                    if in_cone(g, set)?.is_none() {
                        return Ok(Some(g.clone()));
                    }
                }
            }
            Domain::Q => {
                for g in self.fundamental.members() {
                    if solve_q(g, set)?.is_none() {
                        return Ok(Some(g.clone()));
                    }
                }
                if rank(set) != self.q_rank() {
                    return Err(Error::Internal(
                        "set spans the fundamental set but has a different rank".into(),
                    ));
                }
            }
        }
        Ok(None)
    }

    /// For a generating set, a member that can be dropped, decided by the
    /// cardinality of minimal generating sets in each domain.
    fn removable_member(&self, set: &[Semiflow], domain: Domain) -> Result<Option<usize>> {
        match domain {
            Domain::Nat => {
                let hilbert = self.hilbert()?;
                let mut seen = BTreeSet::new();
                Ok(set
                    .iter()
                    .position(|g| !hilbert.contains(g) || !seen.insert(g)))
            }
            Domain::QPlus => {
                // One member per minimal support already generates.
                let mut covered = BTreeSet::new();
                Ok(set.iter().position(|g| {
                    let s = g.support();
                    !(self.fundamental.is_minimal_support(&s) && covered.insert(s))
                }))
            }
            Domain::Q => {
                let basis = q_basis_indices(set);
                Ok((0..set.len()).find(|i| basis.binary_search(i).is_err()))
            }
        }
    }

    fn removable_by_deletion(&self, set: &[Semiflow], domain: Domain) -> Result<Option<usize>> {
        for i in 0..set.len() {
            let rest: Vec<Semiflow> = set
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, g)| g.clone())
                .collect();
            if self.first_not_generated(&rest, domain)?.is_none() {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// Up to `count` distinct canonical semiflows sharing the support of `f`.
    ///
    /// A minimal support carries a single canonical semiflow. Otherwise some
    /// fundamental member `e` has a strictly smaller support, and the
    /// canonical forms of `f + k e` for `k = 0, 1, 2, ...` are pairwise
    /// distinct with the same support as `f`.
    pub fn canonical_witnesses(&self, f: &Semiflow, count: usize) -> Result<Vec<Semiflow>> {
        self.check_nonzero_semiflow(f)?;
        if count == 0 {
            return Ok(Vec::new());
        }
        let support = f.support();
        if let Some(g) = self.fundamental.member_with_support(&support) {
            return Ok(vec![g.clone()]);
        }
        let e = self
            .fundamental
            .members()
            .iter()
            .zip(self.fundamental.supports())
            .find(|(_, s)| s.is_strict_subset(&support))
            .map(|(g, _)| g)
            .ok_or_else(|| {
                Error::Internal(format!("no minimal support inside the support of {f}"))
            })?;
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(count);
        for k in 0..count {
            let candidate = f.add(&e.scale(&BigUint::from(k)))?.canonicalize()?.0;
            if !seen.insert(candidate.clone()) {
                return Err(Error::Internal(format!(
                    "canonical witness {candidate} repeated"
                )));
            }
            out.push(candidate);
        }
        Ok(out)
    }
}

pub fn is_canonical(v: &Semiflow) -> Result<bool> {
    v.is_canonical()
}

pub fn is_minimal(net: &PetriNet, v: &Semiflow) -> Result<bool> {
    Analysis::new(net).is_minimal(v)
}

pub fn has_minimal_support(net: &PetriNet, v: &Semiflow) -> Result<bool> {
    Analysis::new(net).has_minimal_support(v)
}

pub fn classify_generating_set(
    net: &PetriNet,
    set: &[Semiflow],
    domain: Domain,
) -> Result<GeneratingSetReport> {
    Analysis::new(net).classify_generating_set(set, domain)
}

pub fn canonical_witnesses(net: &PetriNet, f: &Semiflow, count: usize) -> Result<Vec<Semiflow>> {
    Analysis::new(net).canonical_witnesses(f, count)
}
