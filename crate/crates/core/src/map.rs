//! Soft functions between two contexts over the same parameter set.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::base;
use crate::context::{self, Context};
use crate::element::SoftElement;
use crate::error::{Result, SoftError};
use crate::soft_set::SoftSet;
use crate::topology::SoftTopology;

/// A family of point maps `f_a: X -> Y`, one per parameter.
#[derive(Clone, PartialEq, Eq)]
pub struct SoftFunction {
    source: Arc<Context>,
    target: Arc<Context>,
    /// `tables[a][i]` is the target index of source point `i` under `f_a`.
    tables: Vec<Vec<u8>>,
}

impl SoftFunction {
    pub fn new(source: &Arc<Context>, target: &Arc<Context>, tables: Vec<Vec<usize>>) -> Result<Self> {
        if source.parameters() != target.parameters() {
            return Err(SoftError::ParameterMismatch);
        }
        if tables.len() != source.parameter_count() {
            return Err(SoftError::FiberCount {
                expected: source.parameter_count(),
                actual: tables.len(),
            });
        }
        let mut out = Vec::with_capacity(tables.len());
        for (a, row) in tables.into_iter().enumerate() {
            if row.len() != source.universe_size() || row.iter().any(|&j| j >= target.universe_size()) {
                return Err(SoftError::NonTotalFunction {
                    parameter: source.parameters()[a].clone(),
                });
            }
            out.push(row.into_iter().map(|j| j as u8).collect());
        }
        Ok(Self {
            source: Arc::clone(source),
            target: Arc::clone(target),
            tables: out,
        })
    }

    /// Builds the function from `(parameter, point) -> point` label lookups.
    pub fn from_fn<F>(source: &Arc<Context>, target: &Arc<Context>, mut f: F) -> Result<Self>
    where
        F: FnMut(&str, &str) -> Option<String>,
    {
        let mut tables = Vec::new();
        for p in source.parameters() {
            let mut row = Vec::new();
            for x in source.universe() {
                let y = f(p, x).ok_or_else(|| SoftError::NonTotalFunction { parameter: p.clone() })?;
                row.push(target.point_index(&y)?);
            }
            tables.push(row);
        }
        Self::new(source, target, tables)
    }

    pub fn identity(ctx: &Arc<Context>) -> Self {
        let row: Vec<u8> = (0..ctx.universe_size() as u8).collect();
        Self {
            source: Arc::clone(ctx),
            target: Arc::clone(ctx),
            tables: vec![row; ctx.parameter_count()],
        }
    }

    pub fn constant(source: &Arc<Context>, target: &Arc<Context>, label: &str) -> Result<Self> {
        let j = target.point_index(label)?;
        let tables = vec![vec![j; source.universe_size()]; source.parameter_count()];
        Self::new(source, target, tables)
    }

    pub fn source(&self) -> &Arc<Context> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Context> {
        &self.target
    }

    /// Target index of source point `point` under the map for `parameter`.
    pub fn at(&self, parameter: usize, point: usize) -> usize {
        self.tables[parameter][point] as usize
    }

    pub fn tables(&self) -> impl Iterator<Item = &[u8]> {
        self.tables.iter().map(Vec::as_slice)
    }

    pub fn apply(&self, x: &SoftElement) -> Result<SoftElement> {
        context::ensure_same(&self.source, x.context())?;
        Ok(self.apply_unchecked(x))
    }

    fn apply_unchecked(&self, x: &SoftElement) -> SoftElement {
        let choices = x
            .choices()
            .iter()
            .zip(&self.tables)
            .map(|(&c, row)| row[c as usize])
            .collect();
        SoftElement::raw(&self.target, choices)
    }

    fn forward_mask(&self, parameter: usize, mask: u64) -> u64 {
        let row = &self.tables[parameter];
        (0..row.len())
            .filter(|i| mask >> i & 1 == 1)
            .fold(0, |acc, i| acc | 1 << row[i])
    }

    fn backward_mask(&self, parameter: usize, mask: u64) -> u64 {
        let row = &self.tables[parameter];
        (0..row.len())
            .filter(|&i| mask >> row[i] & 1 == 1)
            .fold(0, |acc, i| acc | 1 << i)
    }

    /// Fiberwise forward image of an admissible soft set.
    pub fn image(&self, s: &SoftSet) -> Result<SoftSet> {
        context::ensure_same(&self.source, s.context())?;
        s.require_admissible()?;
        Ok(self.image_unchecked(s))
    }

    pub(crate) fn image_unchecked(&self, s: &SoftSet) -> SoftSet {
        let fibers = (0..self.tables.len()).map(|a| self.forward_mask(a, s.fiber(a))).collect();
        SoftSet::raw(&self.target, fibers)
    }

    /// Soft set generated by the soft elements mapped into `s`.
    ///
    /// When some fiber preimage is empty no soft element maps into `s`, and
    /// the result is the null soft set rather than the fiberwise preimage.
    pub fn preimage(&self, s: &SoftSet) -> Result<SoftSet> {
        context::ensure_same(&self.target, s.context())?;
        s.require_admissible()?;
        Ok(self.preimage_unchecked(s))
    }

    pub(crate) fn preimage_unchecked(&self, s: &SoftSet) -> SoftSet {
        let fibers: Vec<u64> = (0..self.tables.len())
            .map(|a| self.backward_mask(a, s.fiber(a)))
            .collect();
        if fibers.contains(&0) {
            SoftSet::null(&self.source)
        } else {
            SoftSet::raw(&self.source, fibers)
        }
    }

    /// Injectivity and surjectivity, decided on soft elements.
    pub fn classify(&self) -> MapClass {
        let per_injective = self.tables.iter().all(|row| {
            let mut seen = 0u64;
            row.iter().all(|&j| {
                let fresh = seen >> j & 1 == 0;
                seen |= 1 << j;
                fresh
            })
        });
        let per_surjective = self
            .tables
            .iter()
            .all(|row| row.iter().fold(0u64, |acc, &j| acc | 1 << j) == self.target.full_mask());

        let mut non_injective = None;
        let mut seen = HashMap::new();
        for x in SoftElement::all(&self.source) {
            let y = self.apply_unchecked(&x);
            if let Some(prev) = seen.insert(y, x.clone()) {
                non_injective = Some((prev, x));
                break;
            }
        }
        let injective = non_injective.is_none();
        let surjective = self.image_unchecked(&SoftSet::absolute(&self.source)).is_absolute();
        MapClass {
            injective,
            surjective,
            per_parameter_injective: per_injective,
            per_parameter_surjective: per_surjective,
            non_injective_witness: non_injective,
        }
    }

    /// The family of inverse point maps, present only when every map is a bijection.
    pub fn inverse(&self) -> Option<SoftFunction> {
        if self.source.universe_size() != self.target.universe_size() {
            return None;
        }
        let mut tables = Vec::with_capacity(self.tables.len());
        for row in &self.tables {
            let mut inv = vec![u8::MAX; row.len()];
            for (i, &j) in row.iter().enumerate() {
                if inv[j as usize] != u8::MAX {
                    return None;
                }
                inv[j as usize] = i as u8;
            }
            tables.push(inv);
        }
        Some(SoftFunction {
            source: Arc::clone(&self.target),
            target: Arc::clone(&self.source),
            tables,
        })
    }

    fn check_spaces(&self, t_src: &SoftTopology, t_tgt: &SoftTopology) -> Result<()> {
        context::ensure_same(&self.source, t_src.context())?;
        context::ensure_same(&self.target, t_tgt.context())?;
        t_src.require_cs()?;
        t_tgt.require_cs()
    }

    /// Every open neighbourhood of `f(x0)` contains the image of some open set around `x0`.
    pub fn continuous_at(&self, t_src: &SoftTopology, t_tgt: &SoftTopology, x0: &SoftElement) -> Result<bool> {
        self.check_spaces(t_src, t_tgt)?;
        context::ensure_same(&self.source, x0.context())?;
        Ok(self.continuous_at_unchecked(&self.open_images(t_src), t_tgt, x0))
    }

    fn open_images(&self, t_src: &SoftTopology) -> Vec<(SoftSet, SoftSet)> {
        t_src.opens().iter().map(|u| (u.clone(), self.image_unchecked(u))).collect()
    }

    fn continuous_at_unchecked(&self, images: &[(SoftSet, SoftSet)], t_tgt: &SoftTopology, x0: &SoftElement) -> bool {
        let y0 = self.apply_unchecked(x0);
        t_tgt.opens().iter().filter(|v| y0.in_unchecked(v)).all(|v| {
            images
                .iter()
                .any(|(u, img)| x0.in_unchecked(u) && img.subset_unchecked(v))
        })
    }

    pub fn is_continuous(
        &self,
        t_src: &SoftTopology,
        t_tgt: &SoftTopology,
        criterion: &Continuity,
    ) -> Result<bool> {
        self.check_spaces(t_src, t_tgt)?;
        let preimages_open =
            |family: &[SoftSet]| family.iter().all(|v| t_src.is_open(&self.preimage_unchecked(v)));
        Ok(match criterion {
            Continuity::Pointwise => {
                let images = self.open_images(t_src);
                SoftElement::all(&self.source).all(|x| self.continuous_at_unchecked(&images, t_tgt, &x))
            }
            Continuity::PreimageOpen => preimages_open(t_tgt.opens()),
            Continuity::Subbase(s) => {
                if !base::is_subbase(t_tgt, s)?.is_base {
                    return Err(SoftError::InvalidSubbase);
                }
                preimages_open(s)
            }
            Continuity::ClosedPreimage => t_tgt
                .closed_family()?
                .iter()
                .all(|k| t_src.closed_unchecked(&self.preimage_unchecked(k))),
        })
    }

    /// Images of open sets are open.
    pub fn is_open_map(&self, t_src: &SoftTopology, t_tgt: &SoftTopology) -> Result<bool> {
        self.check_spaces(t_src, t_tgt)?;
        Ok(t_src.opens().iter().all(|u| t_tgt.is_open(&self.image_unchecked(u))))
    }

    /// Images of closed sets are closed.
    pub fn is_closed_map(&self, t_src: &SoftTopology, t_tgt: &SoftTopology) -> Result<bool> {
        self.check_spaces(t_src, t_tgt)?;
        Ok(t_src
            .closed_family()?
            .iter()
            .all(|k| t_tgt.closed_unchecked(&self.image_unchecked(k))))
    }

    pub fn is_homeomorphism(&self, t_src: &SoftTopology, t_tgt: &SoftTopology) -> Result<Homeomorphism> {
        self.check_spaces(t_src, t_tgt)?;
        let class = self.classify();
        let verdict = |reason| Ok(Homeomorphism { reason });
        if !class.bijective() {
            return verdict(Some(HomeoFailure::NotBijective));
        }
        if !self.is_continuous(t_src, t_tgt, &Continuity::Pointwise)? {
            return verdict(Some(HomeoFailure::NotContinuous));
        }
        let inv = self.inverse().expect("bijective on soft elements implies invertible maps");
        if !inv.is_continuous(t_tgt, t_src, &Continuity::Pointwise)? {
            return verdict(Some(HomeoFailure::InverseNotContinuous));
        }
        verdict(None)
    }
}

impl fmt::Debug for SoftFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (p, row) in self.source.parameters().iter().zip(&self.tables) {
            let pairs: Vec<String> = row
                .iter()
                .enumerate()
                .map(|(i, &j)| format!("{}->{}", self.source.universe()[i], self.target.universe()[j as usize]))
                .collect();
            m.entry(p, &pairs.join(","));
        }
        m.finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapClass {
    pub injective: bool,
    pub surjective: bool,
    pub per_parameter_injective: bool,
    pub per_parameter_surjective: bool,
    /// Two distinct soft elements with the same image.
    pub non_injective_witness: Option<(SoftElement, SoftElement)>,
}

impl MapClass {
    pub fn bijective(&self) -> bool {
        self.injective && self.surjective
    }
}

/// The formulation of continuity to test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Continuity {
    /// Continuous at every soft element.
    Pointwise,
    /// Preimages of open sets are open.
    PreimageOpen,
    /// Preimages of the members of this sub-base of the target are open.
    Subbase(Vec<SoftSet>),
    /// Preimages of closed sets are closed.
    ClosedPreimage,
}

impl Continuity {
    pub fn name(&self) -> &'static str {
        match self {
            Continuity::Pointwise => "POINTWISE",
            Continuity::PreimageOpen => "PREIMAGE_OPEN",
            Continuity::Subbase(_) => "SUBBASE",
            Continuity::ClosedPreimage => "CLOSED_PREIMAGE",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomeoFailure {
    NotBijective,
    NotContinuous,
    InverseNotContinuous,
}

impl HomeoFailure {
    pub fn name(self) -> &'static str {
        match self {
            HomeoFailure::NotBijective => "NOT_BIJECTIVE",
            HomeoFailure::NotContinuous => "NOT_CONTINUOUS",
            HomeoFailure::InverseNotContinuous => "INVERSE_NOT_CONTINUOUS",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Homeomorphism {
    pub reason: Option<HomeoFailure>,
}

impl Homeomorphism {
    pub fn holds(self) -> bool {
        self.reason.is_none()
    }
}

/// Every soft function from `source` to `target`, in lexicographic order of tables.
pub fn all_functions<'a>(
    source: &'a Arc<Context>,
    target: &'a Arc<Context>,
) -> Result<impl Iterator<Item = SoftFunction> + 'a> {
    if source.parameters() != target.parameters() {
        return Err(SoftError::ParameterMismatch);
    }
    let n = source.universe_size();
    let k = target.universe_size();
    let slots = n * source.parameter_count();
    let total = (k as u128).checked_pow(slots as u32).unwrap_or(u128::MAX);
    let mut digits = vec![0usize; slots];
    let mut remaining = total;
    Ok(std::iter::from_fn(move || {
        if remaining == 0 {
            return None;
        }
        remaining -= 1;
        let tables = digits.chunks(n).map(|c| c.iter().map(|&j| j as u8).collect()).collect();
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < k {
                break;
            }
            *d = 0;
        }
        Some(SoftFunction {
            source: Arc::clone(source),
            target: Arc::clone(target),
            tables,
        })
    }))
}
