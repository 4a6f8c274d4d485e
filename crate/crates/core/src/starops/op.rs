use std::fmt;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use super::certified::CertifiedValue;
use crate::domain::{Domain, ModuleError, PrimeIdeal};
use crate::lattice::FractionalIdeal;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OpError {
    #[error("closure of the zero ideal requested")]
    ZeroIdeal,
    #[error("{0}")]
    Module(#[from] ModuleError),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("operations live over different domains")]
    DomainMismatch,
    #[error("unknown operation name '{0}'")]
    UnknownName(String),
    #[error("{0}")]
    Invalid(String),
}

/// A D[X]-operation that can be contracted back to D.
pub trait PolyExtension: Send + Sync + fmt::Debug {
    fn name(&self) -> String;
    /// `(E[X])^★ ∩ K`.
    fn contract(&self, e: &FractionalIdeal) -> Result<CertifiedValue, OpError>;
}

#[derive(Debug, Clone)]
pub enum OpKind {
    Identity,
    /// All of K.
    Trivial,
    /// `(D:(D:E))`; the finite-type flag distinguishes t from v.
    Divisorial,
    /// `E ↦ E·T` for a ring lattice D ⊆ T ⊆ O.
    Overring(FractionalIdeal),
    /// `E ↦ ∩_{P∈Δ} E·D_P`.
    Spectral(Vec<PrimeIdeal>),
    Wedge(Vec<SemistarOp>),
    /// Stable finite-type closure computed over a prime pool.
    Stable(Box<SemistarOp>),
    /// eab closure with an explicit pool of integral ideals H.
    Eab(Box<SemistarOp>, Vec<FractionalIdeal>),
    /// `E ↦ E·O`.
    B,
    Contraction(Arc<dyn PolyExtension>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Flags {
    pub finite_type: bool,
    pub stable: bool,
    pub eab: bool,
    pub is_star: bool,
}

/// The set of quasi-maximal primes of an operation when it is known in
/// closed form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KnownQMax {
    /// Every nonzero prime.
    All,
    Finite(Vec<PrimeIdeal>),
    Unknown,
}

#[derive(Debug, Clone)]
pub struct SemistarOp {
    name: String,
    domain: Domain,
    kind: OpKind,
    flags: Flags,
    /// Norm bound of the prime pool used by pool-dependent evaluators.
    pool_norm: u64,
    qmax_cache: Arc<OnceLock<Vec<PrimeIdeal>>>,
}

pub const DEFAULT_POOL_NORM: u64 = 30;

impl SemistarOp {
    fn make(domain: &Domain, name: impl Into<String>, kind: OpKind, flags: Flags) -> Self {
        SemistarOp {
            name: name.into(),
            domain: domain.clone(),
            kind,
            flags,
            pool_norm: DEFAULT_POOL_NORM,
            qmax_cache: Arc::new(OnceLock::new()),
        }
    }

    pub fn identity(d: &Domain) -> Self {
        Self::make(d, "d", OpKind::Identity, Flags { finite_type: true, stable: true, eab: true, is_star: true })
    }

    pub fn trivial(d: &Domain) -> Self {
        Self::make(d, "e", OpKind::Trivial, Flags { finite_type: true, stable: true, eab: true, is_star: false })
    }

    pub fn divisorial(d: &Domain) -> Self {
        Self::make(d, "v", OpKind::Divisorial, Flags { finite_type: false, stable: false, eab: false, is_star: true })
    }

    /// Same evaluator as v on finitely generated ideals, flagged finite type.
    pub fn t_op(d: &Domain) -> Self {
        Self::divisorial(d).finite_type_closure().renamed("t")
    }

    pub fn w_op(d: &Domain) -> Self {
        Self::stable_closure(&Self::divisorial(d)).renamed("w")
    }

    pub fn b_op(d: &Domain) -> Self {
        Self::make(d, "b", OpKind::B, Flags { finite_type: true, stable: false, eab: true, is_star: d.is_maximal() })
    }

    pub fn overring(d: &Domain, name: impl Into<String>, t: FractionalIdeal) -> Result<Self, OpError> {
        if !d.ring().is_subset(&t) || !t.is_subset(d.maximal_order()) || t.mul(&t).ok().as_ref() != Some(&t) {
            return Err(OpError::Invalid(format!("{t} is not a ring between D and its integral closure")));
        }
        let is_star = &t == d.ring();
        Ok(Self::make(d, name, OpKind::Overring(t), Flags { finite_type: true, stable: is_star, eab: false, is_star }))
    }

    pub fn spectral(d: &Domain, mut delta: Vec<PrimeIdeal>) -> Self {
        delta.sort();
        delta.dedup();
        let name = format!("spectral[{}]", delta.iter().map(|p| p.norm().to_string()).collect::<Vec<_>>().join(","));
        Self::make(d, name, OpKind::Spectral(delta), Flags { finite_type: true, stable: true, eab: false, is_star: false })
    }

    pub fn wedge(d: &Domain, ops: Vec<SemistarOp>) -> Result<Self, OpError> {
        if ops.is_empty() {
            return Err(OpError::Invalid("empty wedge".into()));
        }
        if ops.iter().any(|o| !Arc::ptr_eq(&o.domain, d)) {
            return Err(OpError::DomainMismatch);
        }
        let flags = Flags {
            finite_type: ops.iter().all(|o| o.flags.finite_type),
            stable: ops.iter().all(|o| o.flags.stable),
            eab: false,
            is_star: ops.iter().any(|o| o.flags.is_star),
        };
        let name = format!("wedge({})", ops.iter().map(|o| o.name.clone()).collect::<Vec<_>>().join(","));
        Ok(Self::make(d, name, OpKind::Wedge(ops), flags))
    }

    pub fn stable_closure(inner: &SemistarOp) -> Self {
        let flags = Flags { finite_type: true, stable: true, eab: false, is_star: inner.flags.is_star };
        let name = format!("stable({})", inner.name);
        let mut op = Self::make(&inner.domain, name, OpKind::Stable(Box::new(inner.clone())), flags);
        op.pool_norm = inner.pool_norm;
        op
    }

    pub fn eab_closure(inner: &SemistarOp, pool: Vec<FractionalIdeal>) -> Result<Self, OpError> {
        if !pool.iter().any(|h| h == inner.domain.ring()) {
            return Err(OpError::Invalid("eab pool must contain D".into()));
        }
        let flags = Flags { finite_type: true, stable: false, eab: true, is_star: false };
        let name = format!("eab({})", inner.name);
        Ok(Self::make(&inner.domain, name, OpKind::Eab(Box::new(inner.clone()), pool), flags))
    }

    pub fn contraction(d: &Domain, ext: Arc<dyn PolyExtension>) -> Self {
        let name = format!("contract({})", ext.name());
        Self::make(d, name, OpKind::Contraction(ext), Flags::default())
    }

    /// The finite-type closure: a flag change on finitely generated inputs.
    pub fn finite_type_closure(&self) -> Self {
        let mut op = self.clone();
        op.flags.finite_type = true;
        op.name = format!("{}_f", self.name);
        op.qmax_cache = Arc::new(OnceLock::new());
        op
    }

    pub fn builtin(d: &Domain, name: &str) -> Result<Self, OpError> {
        match name {
            "d" => Ok(Self::identity(d)),
            "e" => Ok(Self::trivial(d)),
            "v" => Ok(Self::divisorial(d)),
            "t" => Ok(Self::t_op(d)),
            "w" => Ok(Self::w_op(d)),
            "b" => Ok(Self::b_op(d)),
            _ => Err(OpError::UnknownName(name.into())),
        }
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_pool_norm(mut self, n: u64) -> Self {
        self.pool_norm = n;
        self.qmax_cache = Arc::new(OnceLock::new());
        if let OpKind::Stable(inner) = &mut self.kind {
            **inner = inner.as_ref().clone().with_pool_norm(n);
        }
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn kind(&self) -> &OpKind {
        &self.kind
    }

    pub fn flags(&self) -> Flags {
        self.flags
    }

    pub fn pool_norm(&self) -> u64 {
        self.pool_norm
    }

    pub(crate) fn qmax_cache(&self) -> &OnceLock<Vec<PrimeIdeal>> {
        &self.qmax_cache
    }

    /// Quasi-maximal primes when known in closed form. In a one-dimensional
    /// Noetherian domain every maximal ideal is divisorial, and `P·T ∩ D = P`
    /// for every ring D ⊆ T ⊆ O, so each such operation has all primes
    /// quasi-maximal.
    pub fn known_qmax(&self) -> KnownQMax {
        match &self.kind {
            OpKind::Identity | OpKind::Divisorial | OpKind::Overring(_) | OpKind::B => KnownQMax::All,
            OpKind::Trivial => KnownQMax::Finite(Vec::new()),
            OpKind::Spectral(delta) => KnownQMax::Finite(delta.clone()),
            OpKind::Stable(inner) => inner.known_qmax(),
            OpKind::Wedge(ops) => {
                if ops.iter().any(|o| o.known_qmax() == KnownQMax::All) {
                    KnownQMax::All
                } else {
                    KnownQMax::Unknown
                }
            }
            // d_a = b
            OpKind::Eab(inner, _) if matches!(inner.kind, OpKind::Identity) => KnownQMax::All,
            OpKind::Eab(..) => KnownQMax::Unknown,
            OpKind::Contraction(_) => KnownQMax::Unknown,
        }
    }
}

impl fmt::Display for SemistarOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}
