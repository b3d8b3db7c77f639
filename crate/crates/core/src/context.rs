use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Result, SoftError};

/// Largest supported universe; fibers are `u64` bitmasks.
pub const MAX_UNIVERSE: usize = 64;

/// The finite universe `X` and parameter set `A` every soft set lives over.
///
/// Labels are kept in the order given; point `i` of the universe corresponds
/// to bit `i` of a fiber mask.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Context {
    universe: Vec<String>,
    parameters: Vec<String>,
}

impl Context {
    pub fn new<U, P>(universe: U, parameters: P) -> Result<Arc<Self>>
    where
        U: IntoIterator,
        U::Item: Into<String>,
        P: IntoIterator,
        P::Item: Into<String>,
    {
        let universe: Vec<String> = universe.into_iter().map(Into::into).collect();
        let parameters: Vec<String> = parameters.into_iter().map(Into::into).collect();
        if universe.is_empty() {
            return Err(SoftError::EmptyUniverse);
        }
        if parameters.is_empty() {
            return Err(SoftError::EmptyParameters);
        }
        if universe.len() > MAX_UNIVERSE {
            return Err(SoftError::UniverseTooLarge(universe.len()));
        }
        check_distinct(&universe)?;
        check_distinct(&parameters)?;
        Ok(Arc::new(Self {
            universe,
            parameters,
        }))
    }

    /// Context with generated labels, used by enumeration.
    pub fn standard(n: usize, m: usize) -> Result<Arc<Self>> {
        Self::new(standard_points(n), standard_parameters(m))
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn parameters(&self) -> &[String] {
        &self.parameters
    }

    pub fn universe_size(&self) -> usize {
        self.universe.len()
    }

    pub fn parameter_count(&self) -> usize {
        self.parameters.len()
    }

    /// Mask with every point of the universe set.
    pub fn full_mask(&self) -> u64 {
        if self.universe.len() == MAX_UNIVERSE {
            u64::MAX
        } else {
            (1u64 << self.universe.len()) - 1
        }
    }

    pub fn point_index(&self, label: &str) -> Result<usize> {
        self.universe
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| SoftError::UnknownLabel(label.to_string()))
    }

    pub fn parameter_index(&self, label: &str) -> Result<usize> {
        self.parameters
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| SoftError::UnknownParameter(label.to_string()))
    }

    pub fn mask_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<u64> {
        labels
            .iter()
            .try_fold(0u64, |acc, l| Ok(acc | 1u64 << self.point_index(l.as_ref())?))
    }

    /// Labels of the points in `mask`, in universe order.
    pub fn labels_of(&self, mask: u64) -> Vec<&str> {
        self.universe
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, l)| l.as_str())
            .collect()
    }

    /// Number of soft elements of the absolute soft set, `n^m`.
    pub fn soft_element_count(&self) -> u128 {
        (self.universe.len() as u128).saturating_pow(self.parameters.len() as u32)
    }

    /// Number of members of S(X): `(2^n - 1)^m + 1`.
    pub fn admissible_count(&self) -> u128 {
        let proper_fibers = (1u128 << self.universe.len().min(127)) - 1;
        proper_fibers
            .saturating_pow(self.parameters.len() as u32)
            .saturating_add(1)
    }
}

fn check_distinct(labels: &[String]) -> Result<()> {
    let mut seen = HashSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(SoftError::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

/// Point labels `x, y, z, t, ...` matching the usual small examples.
pub fn standard_points(n: usize) -> Vec<String> {
    const NAMES: [&str; 8] = ["x", "y", "z", "t", "u", "v", "w", "s"];
    (0..n)
        .map(|i| NAMES.get(i).map_or_else(|| format!("p{i}"), |s| s.to_string()))
        .collect()
}

pub fn standard_parameters(m: usize) -> Vec<String> {
    const NAMES: [&str; 4] = ["alpha", "beta", "gamma", "delta"];
    (0..m)
        .map(|i| NAMES.get(i).map_or_else(|| format!("a{i}"), |s| s.to_string()))
        .collect()
}

/// True when both handles denote the same context.
pub(crate) fn same(a: &Arc<Context>, b: &Arc<Context>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub(crate) fn ensure_same(a: &Arc<Context>, b: &Arc<Context>) -> Result<()> {
    if same(a, b) {
        Ok(())
    } else {
        Err(SoftError::ContextMismatch)
    }
}
