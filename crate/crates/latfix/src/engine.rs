//! Brute-force verification of the fixed-point backbone on small finite
//! lattices.
//!
//! Everything here is exact and exhaustive: maps are image tables, order
//! checks scan all pairs, extremal fixed points are computed both by the
//! Tarski formulas (`inf{x : f(x) ⪯ x}`, `sup{x : x ⪯ f(x)}`) and by
//! Kleene iteration from bottom/top, and the two results are required to
//! agree. The point is to certify on finite examples the laws the box
//! solver relies on at scale — including the classical subtlety that the
//! fixed-point set of a monotone map is always a complete lattice *in the
//! induced order* but need not be a sublattice of the ambient lattice
//! (see [`catalog::stemmed_diamond_top`] for the smallest witness).

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::finite::FiniteLattice;

/// Refuse exhaustive enumerations beyond this many candidate image tuples.
pub const ENUMERATION_BUDGET: u128 = 10_000_000;

/// Iteration laws are checked for powers 1..=MAX_LAW_POWER.
pub const MAX_LAW_POWER: usize = 4;

#[derive(Debug, Clone, PartialEq)]
pub enum EngineError {
    ImageCount { expected: usize, got: usize },
    BadImage { element: usize, image: usize },
    UnknownLabel { label: String },
    MissingImage { element: usize },
    DuplicateImage { element: usize },
    LatticeMismatch,
    NotMonotone { witness: (usize, usize) },
    TooLarge { candidates: u128, budget: u128 },
}

impl fmt::Display for EngineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EngineError::ImageCount { expected, got } => {
                write!(f, "expected {expected} images, got {got}")
            }
            EngineError::BadImage { element, image } => {
                write!(f, "element {element} maps to unknown element {image}")
            }
            EngineError::UnknownLabel { label } => {
                write!(f, "label `{label}` is not an element of the lattice")
            }
            EngineError::MissingImage { element } => {
                write!(f, "no image given for element {element}")
            }
            EngineError::DuplicateImage { element } => {
                write!(f, "element {element} is mapped twice")
            }
            EngineError::LatticeMismatch => write!(f, "maps live on different lattices"),
            EngineError::NotMonotone { witness } => write!(
                f,
                "map is not order-preserving: {} ⪯ {} but the images are not ordered",
                witness.0, witness.1
            ),
            EngineError::TooLarge { candidates, budget } => write!(
                f,
                "{candidates} candidate maps exceed the enumeration budget of {budget}"
            ),
        }
    }
}

impl core::error::Error for EngineError {}

// ---------------------------------------------------------------------------
// Maps
// ---------------------------------------------------------------------------

/// A total self-map of a finite lattice, stored as an image table.
///
/// Monotonicity is checked exhaustively at construction and kept as a
/// flag with a witness: order-reversing maps are legal values (the
/// no-fixed-point counterexamples need them) but the theorem operations
/// refuse them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMonotoneMap {
    lattice: FiniteLattice,
    images: Vec<usize>,
    monotone_witness: Option<(usize, usize)>,
}

fn monotone_witness_of(lattice: &FiniteLattice, images: &[usize]) -> Option<(usize, usize)> {
    for x in 0..images.len() {
        for y in 0..images.len() {
            if x != y && lattice.leq(x, y) && !lattice.leq(images[x], images[y]) {
                return Some((x, y));
            }
        }
    }
    None
}

impl FiniteMonotoneMap {
    pub fn new(lattice: FiniteLattice, images: Vec<usize>) -> Result<Self, EngineError> {
        let n = lattice.len();
        if images.len() != n {
            return Err(EngineError::ImageCount { expected: n, got: images.len() });
        }
        for (element, &image) in images.iter().enumerate() {
            if image >= n {
                return Err(EngineError::BadImage { element, image });
            }
        }
        let monotone_witness = monotone_witness_of(&lattice, &images);
        Ok(FiniteMonotoneMap { lattice, images, monotone_witness })
    }

    /// Build from `element -> image` label pairs; every element must be
    /// assigned exactly once.
    pub fn from_label_pairs(
        lattice: FiniteLattice,
        pairs: &[(&str, &str)],
    ) -> Result<Self, EngineError> {
        let n = lattice.len();
        let mut images = alloc::vec![usize::MAX; n];
        for &(from, to) in pairs {
            let x = lattice
                .index_of(from)
                .map_err(|_| EngineError::UnknownLabel { label: String::from(from) })?;
            let y = lattice
                .index_of(to)
                .map_err(|_| EngineError::UnknownLabel { label: String::from(to) })?;
            if images[x] != usize::MAX {
                return Err(EngineError::DuplicateImage { element: x });
            }
            images[x] = y;
        }
        if let Some(element) = images.iter().position(|&i| i == usize::MAX) {
            return Err(EngineError::MissingImage { element });
        }
        FiniteMonotoneMap::new(lattice, images)
    }

    pub fn identity(lattice: FiniteLattice) -> Self {
        let images = (0..lattice.len()).collect();
        FiniteMonotoneMap { lattice, images, monotone_witness: None }
    }

    pub fn constant(lattice: FiniteLattice, target: usize) -> Result<Self, EngineError> {
        let n = lattice.len();
        if target >= n {
            return Err(EngineError::BadImage { element: 0, image: target });
        }
        Ok(FiniteMonotoneMap { lattice, images: alloc::vec![target; n], monotone_witness: None })
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn image(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_monotone(&self) -> bool {
        self.monotone_witness.is_none()
    }

    /// A pair `(x, y)` with `x ⪯ y` whose images are not ordered, if any.
    pub fn monotone_witness(&self) -> Option<(usize, usize)> {
        self.monotone_witness
    }

    fn require_monotone(&self) -> Result<(), EngineError> {
        match self.monotone_witness {
            Some(witness) => Err(EngineError::NotMonotone { witness }),
            None => Ok(()),
        }
    }

    fn require_same_lattice(&self, other: &FiniteMonotoneMap) -> Result<(), EngineError> {
        if self.lattice != other.lattice {
            return Err(EngineError::LatticeMismatch);
        }
        Ok(())
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &FiniteMonotoneMap) -> Result<FiniteMonotoneMap, EngineError> {
        self.require_same_lattice(inner)?;
        let images = inner.images.iter().map(|&i| self.images[i]).collect();
        FiniteMonotoneMap::new(self.lattice.clone(), images)
    }

    /// k-th iterate; the 0-th is the identity.
    pub fn iterate(&self, k: usize) -> FiniteMonotoneMap {
        let mut out = FiniteMonotoneMap::identity(self.lattice.clone());
        for _ in 0..k {
            out = self.compose(&out).expect("same lattice");
        }
        out
    }

    /// Pointwise order: `self(x) ⪯ other(x)` for every element.
    pub fn leq(&self, other: &FiniteMonotoneMap) -> Result<bool, EngineError> {
        self.require_same_lattice(other)?;
        Ok(self
            .images
            .iter()
            .zip(other.images.iter())
            .all(|(&a, &b)| self.lattice.leq(a, b)))
    }

    /// Does `self ∘ other ⊴ other ∘ self` hold pointwise?
    pub fn subcommutes(&self, other: &FiniteMonotoneMap) -> Result<bool, EngineError> {
        self.compose(other)?.leq(&other.compose(self)?)
    }

    /// Pointwise join (the lattice operations of the map space).
    pub fn join(&self, other: &FiniteMonotoneMap) -> Result<FiniteMonotoneMap, EngineError> {
        self.require_same_lattice(other)?;
        let images = self
            .images
            .iter()
            .zip(other.images.iter())
            .map(|(&a, &b)| self.lattice.join(a, b))
            .collect();
        FiniteMonotoneMap::new(self.lattice.clone(), images)
    }

    /// Pointwise meet.
    pub fn meet(&self, other: &FiniteMonotoneMap) -> Result<FiniteMonotoneMap, EngineError> {
        self.require_same_lattice(other)?;
        let images = self
            .images
            .iter()
            .zip(other.images.iter())
            .map(|(&a, &b)| self.lattice.meet(a, b))
            .collect();
        FiniteMonotoneMap::new(self.lattice.clone(), images)
    }
}

// ---------------------------------------------------------------------------
// Fixed points
// ---------------------------------------------------------------------------

/// `{x : f(x) = x}` by exhaustive scan, ascending. Works for any map;
/// monotonicity only matters for the guarantees of the theorems.
pub fn fixed_points(f: &FiniteMonotoneMap) -> Vec<usize> {
    (0..f.images.len()).filter(|&x| f.images[x] == x).collect()
}

/// The extremal fixed points by the closed formulas
/// `x_* = inf{x : f(x) ⪯ x}` and `x^* = sup{x : x ⪯ f(x)}`.
///
/// Both are checked to be fixed points and to bound every fixed point,
/// so a successful return certifies the formulas on this instance.
pub fn tarski_extremes(f: &FiniteMonotoneMap) -> Result<(usize, usize), EngineError> {
    f.require_monotone()?;
    let lat = &f.lattice;
    let prefixed: Vec<usize> = (0..f.images.len()).filter(|&x| lat.leq(f.images[x], x)).collect();
    let postfixed: Vec<usize> = (0..f.images.len()).filter(|&x| lat.leq(x, f.images[x])).collect();
    let least = lat.inf(&prefixed);
    let greatest = lat.sup(&postfixed);
    assert_eq!(f.images[least], least, "inf of the prefixed set must be fixed");
    assert_eq!(f.images[greatest], greatest, "sup of the postfixed set must be fixed");
    for x in fixed_points(f) {
        assert!(lat.leq(least, x) && lat.leq(x, greatest), "extremes must bound every fixed point");
    }
    Ok((least, greatest))
}

/// The ascent `bottom, f(bottom), f²(bottom), …` until stationary; the
/// last entry is the least fixed point. Stabilizes within |L| steps
/// because the sequence is an ascending chain.
pub fn kleene_ascent(f: &FiniteMonotoneMap) -> Result<Vec<usize>, EngineError> {
    f.require_monotone()?;
    kleene_trace(f, f.lattice.bottom())
}

/// The descent from the top, dually.
pub fn kleene_descent(f: &FiniteMonotoneMap) -> Result<Vec<usize>, EngineError> {
    f.require_monotone()?;
    kleene_trace(f, f.lattice.top())
}

fn kleene_trace(f: &FiniteMonotoneMap, start: usize) -> Result<Vec<usize>, EngineError> {
    let mut trace = alloc::vec![start];
    loop {
        let cur = *trace.last().expect("trace is never empty");
        let next = f.images[cur];
        if next == cur {
            return Ok(trace);
        }
        trace.push(next);
        assert!(
            trace.len() <= f.images.len(),
            "an iteration chain from an extreme cannot exceed the lattice size"
        );
    }
}

/// Least fixed point by iteration from the bottom; checked against the
/// Tarski formula.
pub fn kleene_least(f: &FiniteMonotoneMap) -> Result<usize, EngineError> {
    let by_iteration = *kleene_ascent(f)?.last().expect("trace is never empty");
    let (by_formula, _) = tarski_extremes(f)?;
    assert_eq!(by_iteration, by_formula, "iteration and formula must agree on x_*");
    Ok(by_iteration)
}

/// Greatest fixed point by iteration from the top; checked against the
/// Tarski formula.
pub fn kleene_greatest(f: &FiniteMonotoneMap) -> Result<usize, EngineError> {
    let by_iteration = *kleene_descent(f)?.last().expect("trace is never empty");
    let (_, by_formula) = tarski_extremes(f)?;
    assert_eq!(by_iteration, by_formula, "iteration and formula must agree on x^*");
    Ok(by_iteration)
}

/// How the fixed-point set failed to be closed or complete, when it did.
#[derive(Debug, Clone, PartialEq)]
pub enum StructureWitness {
    /// A subset of the fixed points with no least upper bound (or no
    /// greatest lower bound) inside the fixed-point set.
    SubsetWithoutBound { subset: Vec<usize> },
    /// Two fixed points whose ambient join is not fixed.
    JoinEscapes { a: usize, b: usize, join: usize },
    /// Two fixed points whose ambient meet is not fixed.
    MeetEscapes { a: usize, b: usize, meet: usize },
}

/// Verdict on the fixed-point set of one monotone map.
///
/// `induced_complete` is the classical theorem (every subset of Fix has a
/// sup and an inf *within* Fix, in the induced order) and is expected to
/// hold always. `sublattice_of_x` is the stronger reading — ambient joins
/// and meets of fixed points stay fixed — which genuinely fails on some
/// lattices; the witness records the first failure found.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureReport {
    pub fixed: Vec<usize>,
    pub induced_complete: bool,
    pub sublattice_of_x: bool,
    pub witness: Option<StructureWitness>,
}

/// Checks both completeness readings of the fixed-point set, exhaustively
/// over all `2^|Fix|` subsets.
pub fn fixed_point_structure(f: &FiniteMonotoneMap) -> Result<StructureReport, EngineError> {
    f.require_monotone()?;
    let lat = &f.lattice;
    let fixed = fixed_points(f);
    if fixed.len() > 25 {
        return Err(EngineError::TooLarge {
            candidates: 1u128 << fixed.len(),
            budget: ENUMERATION_BUDGET,
        });
    }

    let mut induced_complete = true;
    let mut witness = None;
    'subsets: for mask in 0u32..(1u32 << fixed.len()) {
        let subset: Vec<usize> = fixed
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &x)| x)
            .collect();
        for upper in [true, false] {
            // Bounds of the subset *within* Fix, in the induced order.
            let bounds: Vec<usize> = fixed
                .iter()
                .copied()
                .filter(|&c| {
                    subset.iter().all(|&s| if upper { lat.leq(s, c) } else { lat.leq(c, s) })
                })
                .collect();
            let extreme_exists = bounds.iter().any(|&m| {
                bounds.iter().all(|&b| if upper { lat.leq(m, b) } else { lat.leq(b, m) })
            });
            if !extreme_exists {
                induced_complete = false;
                witness = Some(StructureWitness::SubsetWithoutBound { subset });
                break 'subsets;
            }
        }
    }

    let mut sublattice_of_x = true;
    'pairs: for &a in &fixed {
        for &b in &fixed {
            let j = lat.join(a, b);
            if f.images[j] != j {
                sublattice_of_x = false;
                witness.get_or_insert(StructureWitness::JoinEscapes { a, b, join: j });
                break 'pairs;
            }
            let m = lat.meet(a, b);
            if f.images[m] != m {
                sublattice_of_x = false;
                witness.get_or_insert(StructureWitness::MeetEscapes { a, b, meet: m });
                break 'pairs;
            }
        }
    }

    Ok(StructureReport { fixed, induced_complete, sublattice_of_x, witness })
}

// ---------------------------------------------------------------------------
// Enumeration and sampling
// ---------------------------------------------------------------------------

/// All order-preserving self-maps, in ascending lexicographic order of
/// their image tuples (the deterministic order regression values pin).
pub struct MonotoneMaps {
    lattice: FiniteLattice,
    comparable: Vec<(usize, usize)>,
    candidate: Option<Vec<usize>>,
}

impl Iterator for MonotoneMaps {
    type Item = FiniteMonotoneMap;

    fn next(&mut self) -> Option<FiniteMonotoneMap> {
        loop {
            let images = self.candidate.as_ref()?.clone();
            self.advance();
            if self
                .comparable
                .iter()
                .all(|&(x, y)| self.lattice.leq(images[x], images[y]))
            {
                return Some(FiniteMonotoneMap {
                    lattice: self.lattice.clone(),
                    images,
                    monotone_witness: None,
                });
            }
        }
    }
}

impl MonotoneMaps {
    fn advance(&mut self) {
        let n = self.lattice.len();
        let Some(candidate) = self.candidate.as_mut() else {
            return;
        };
        for slot in candidate.iter_mut().rev() {
            *slot += 1;
            if *slot < n {
                return;
            }
            *slot = 0;
        }
        self.candidate = None;
    }
}

/// Iterator over exactly the order-preserving self-maps of `lattice`.
/// Refuses lattices with more than [`ENUMERATION_BUDGET`] candidate image
/// tuples (|L|^|L|); sample instead at that size.
pub fn enumerate_monotone_maps(lattice: &FiniteLattice) -> Result<MonotoneMaps, EngineError> {
    let n = lattice.len();
    let candidates = (n as u128).pow(n as u32);
    if candidates > ENUMERATION_BUDGET {
        return Err(EngineError::TooLarge { candidates, budget: ENUMERATION_BUDGET });
    }
    let mut comparable = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if x != y && lattice.leq(x, y) {
                comparable.push((x, y));
            }
        }
    }
    Ok(MonotoneMaps {
        lattice: lattice.clone(),
        comparable,
        candidate: Some(alloc::vec![0; n]),
    })
}

/// Weyl-sequence generator (splitmix64): tiny, seedable, good enough for
/// sampling image tables.
struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}

/// `count` random order-preserving self-maps, reproducible from `seed`.
///
/// A uniformly random image table is repaired into a monotone one by a
/// running join along a linear extension: each element's image absorbs
/// the images of everything below it. The distribution is *not* uniform
/// over monotone maps; it is merely deterministic and varied, which is
/// what the law checks beyond the enumeration budget need.
pub fn sample_monotone_maps(
    lattice: &FiniteLattice,
    count: usize,
    seed: u64,
) -> Vec<FiniteMonotoneMap> {
    let n = lattice.len();
    // Sorting by how many elements lie below gives a linear extension:
    // x ≺ y implies everything below x is below y, and x itself is too.
    let mut extension: Vec<usize> = (0..n).collect();
    extension.sort_by_key(|&x| (0..n).filter(|&b| lattice.leq(b, x)).count());
    let mut rng = SplitMix64::new(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut images: Vec<usize> = (0..n).map(|_| rng.below(n)).collect();
        for &y in &extension {
            let mut acc = images[y];
            for (x, &image) in images.iter().enumerate() {
                if x != y && lattice.leq(x, y) {
                    acc = lattice.join(acc, image);
                }
            }
            images[y] = acc;
        }
        debug_assert!(monotone_witness_of(lattice, &images).is_none());
        out.push(FiniteMonotoneMap {
            lattice: lattice.clone(),
            images,
            monotone_witness: None,
        });
    }
    out
}

// ---------------------------------------------------------------------------
// Iteration laws
// ---------------------------------------------------------------------------

/// The four iteration laws, checked for k = 1..=[`MAX_LAW_POWER`]:
/// iterates of monotone maps stay monotone; `f ⊴ g` propagates to
/// `fᵏ ⊴ gᵏ`; subcommutation of `f` with `g` propagates to `gᵏ`; and a
/// subcommuting pair with `f(x) ⪯ g(x)` keeps `fᵏ(x) ⪯ gᵏ(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IterationLaw {
    IteratesMonotone,
    OrderedIterates,
    SubcommutingIterates,
    PointwiseIterates,
}

impl fmt::Display for IterationLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IterationLaw::IteratesMonotone => write!(f, "iterates stay order-preserving"),
            IterationLaw::OrderedIterates => write!(f, "f ⊴ g propagates to iterates"),
            IterationLaw::SubcommutingIterates => write!(f, "subcommutation propagates to iterates"),
            IterationLaw::PointwiseIterates => write!(f, "pointwise order propagates to iterates"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LawViolation {
    pub law: IterationLaw,
    pub f: Vec<usize>,
    pub g: Option<Vec<usize>>,
    pub k: usize,
    pub x: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LawReport {
    pub lattice_size: usize,
    pub map_count: usize,
    pub pair_count: usize,
    /// Pairs with f ⊴ g (the ordered-iterates law applied).
    pub ordered_pairs: usize,
    /// Pairs where f subcommutes with g.
    pub subcommuting_pairs: usize,
    /// Individual points x with f(x) ⪯ g(x) inside subcommuting pairs.
    pub pointwise_checks: usize,
    pub max_power: usize,
    pub violations: Vec<LawViolation>,
}

impl LawReport {
    pub fn all_hold(&self) -> bool {
        self.violations.is_empty()
    }
}

/// How to pick the map pairs for [`check_iteration_laws`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LawCheckMode {
    /// Every ordered pair of monotone self-maps (including f = g).
    Exhaustive,
    /// `pairs` sampled pairs, reproducible from `seed`.
    Sample { pairs: usize, seed: u64 },
}

pub fn check_iteration_laws(
    lattice: &FiniteLattice,
    mode: LawCheckMode,
) -> Result<LawReport, EngineError> {
    let maps: Vec<FiniteMonotoneMap> = match mode {
        LawCheckMode::Exhaustive => enumerate_monotone_maps(lattice)?.collect(),
        LawCheckMode::Sample { pairs, seed } => sample_monotone_maps(lattice, 2 * pairs, seed),
    };
    let mut report = LawReport {
        lattice_size: lattice.len(),
        map_count: maps.len(),
        pair_count: 0,
        ordered_pairs: 0,
        subcommuting_pairs: 0,
        pointwise_checks: 0,
        max_power: MAX_LAW_POWER,
        violations: Vec::new(),
    };

    let powers: Vec<Vec<FiniteMonotoneMap>> = maps
        .iter()
        .map(|f| (1..=MAX_LAW_POWER).map(|k| f.iterate(k)).collect())
        .collect();

    for (f, f_powers) in maps.iter().zip(powers.iter()) {
        for (k, fk) in f_powers.iter().enumerate() {
            if !fk.is_monotone() {
                report.violations.push(LawViolation {
                    law: IterationLaw::IteratesMonotone,
                    f: f.images.clone(),
                    g: None,
                    k: k + 1,
                    x: None,
                });
            }
        }
    }

    let pair_indices: Vec<(usize, usize)> = match mode {
        LawCheckMode::Exhaustive => {
            let mut v = Vec::with_capacity(maps.len() * maps.len());
            for i in 0..maps.len() {
                for j in 0..maps.len() {
                    v.push((i, j));
                }
            }
            v
        }
        LawCheckMode::Sample { pairs, .. } => (0..pairs).map(|p| (2 * p, 2 * p + 1)).collect(),
    };

    for (i, j) in pair_indices {
        let (f, g) = (&maps[i], &maps[j]);
        report.pair_count += 1;

        if f.leq(g)? {
            report.ordered_pairs += 1;
            for k in 1..=MAX_LAW_POWER {
                if !powers[i][k - 1].leq(&powers[j][k - 1])? {
                    report.violations.push(LawViolation {
                        law: IterationLaw::OrderedIterates,
                        f: f.images.clone(),
                        g: Some(g.images.clone()),
                        k,
                        x: None,
                    });
                }
            }
        }

        if f.subcommutes(g)? {
            report.subcommuting_pairs += 1;
            for k in 1..=MAX_LAW_POWER {
                if !f.subcommutes(&powers[j][k - 1])? {
                    report.violations.push(LawViolation {
                        law: IterationLaw::SubcommutingIterates,
                        f: f.images.clone(),
                        g: Some(g.images.clone()),
                        k,
                        x: None,
                    });
                }
            }
            for x in 0..lattice.len() {
                if lattice.leq(f.images[x], g.images[x]) {
                    report.pointwise_checks += 1;
                    for k in 1..=MAX_LAW_POWER {
                        if !lattice.leq(powers[i][k - 1].images[x], powers[j][k - 1].images[x]) {
                            report.violations.push(LawViolation {
                                law: IterationLaw::PointwiseIterates,
                                f: f.images.clone(),
                                g: Some(g.images.clone()),
                                k,
                                x: Some(x),
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

/// Every lattice with at most five elements, up to isomorphism, plus
/// constructors for each shape. Small enough for exhaustive sweeps,
/// rich enough to separate the completeness readings of the fixed-point
/// set.
pub mod catalog {
    use super::*;

    /// A chain `0 ⪯ 1 ⪯ … ⪯ n−1`.
    pub fn chain(n: usize) -> FiniteLattice {
        assert!(n >= 1, "a chain needs at least one element");
        let labels: Vec<String> = (0..n).map(|i| format!("{i}")).collect();
        let label_refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
        let covers: Vec<(&str, &str)> = (0..n - 1)
            .map(|i| (label_refs[i], label_refs[i + 1]))
            .collect();
        FiniteLattice::from_covers(&label_refs, &covers).expect("a chain is a lattice")
    }

    /// The four-element diamond: a ⪯ b ⪯ d, a ⪯ c ⪯ d, b ∥ c.
    pub fn diamond() -> FiniteLattice {
        FiniteLattice::from_covers(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")],
        )
        .expect("the diamond is a lattice")
    }

    /// The pentagon N₅: bot ⪯ a ⪯ b ⪯ top and bot ⪯ c ⪯ top.
    pub fn pentagon() -> FiniteLattice {
        FiniteLattice::from_covers(
            &["bot", "a", "b", "c", "top"],
            &[("bot", "a"), ("a", "b"), ("b", "top"), ("bot", "c"), ("c", "top")],
        )
        .expect("the pentagon is a lattice")
    }

    /// The diamond M₃: three incomparable atoms between bot and top.
    pub fn m3() -> FiniteLattice {
        FiniteLattice::from_covers(
            &["bot", "a", "b", "c", "top"],
            &[
                ("bot", "a"),
                ("bot", "b"),
                ("bot", "c"),
                ("a", "top"),
                ("b", "top"),
                ("c", "top"),
            ],
        )
        .expect("M3 is a lattice")
    }

    /// A diamond with an extra top: bot ⪯ {a, b} ⪯ j ⪯ top.
    ///
    /// The smallest stage for the fixed-point subtlety: the map fixing
    /// bot, a, b, top and sending j to top is order-preserving, yet the
    /// ambient join of the fixed points a and b is j — not fixed. The
    /// fixed-point set is still a complete lattice in its induced order
    /// (there, a ∨ b = top).
    pub fn stemmed_diamond_top() -> FiniteLattice {
        FiniteLattice::from_covers(
            &["bot", "a", "b", "j", "top"],
            &[("bot", "a"), ("bot", "b"), ("a", "j"), ("b", "j"), ("j", "top")],
        )
        .expect("the stemmed diamond is a lattice")
    }

    /// A diamond with an extra bottom, dually.
    pub fn stemmed_diamond_bottom() -> FiniteLattice {
        FiniteLattice::from_covers(
            &["bot", "m", "a", "b", "top"],
            &[("bot", "m"), ("m", "a"), ("m", "b"), ("a", "top"), ("b", "top")],
        )
        .expect("the stemmed diamond is a lattice")
    }

    /// All lattices with at most five elements, up to isomorphism.
    pub fn small_catalog() -> Vec<(&'static str, FiniteLattice)> {
        alloc::vec![
            ("chain-1", chain(1)),
            ("chain-2", chain(2)),
            ("chain-3", chain(3)),
            ("chain-4", chain(4)),
            ("diamond", diamond()),
            ("chain-5", chain(5)),
            ("pentagon", pentagon()),
            ("m3", m3()),
            ("stemmed-diamond-top", stemmed_diamond_top()),
            ("stemmed-diamond-bottom", stemmed_diamond_bottom()),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use catalog::*;

    fn map(lattice: &FiniteLattice, images: &[usize]) -> FiniteMonotoneMap {
        FiniteMonotoneMap::new(lattice.clone(), images.to_vec()).unwrap()
    }

    #[test]
    fn swap_on_diamond_has_no_fixed_points_and_is_not_monotone() {
        let d = diamond();
        // a↦d, b↦c, c↦b, d↦a: the order-reversing counterexample.
        let f = map(&d, &[3, 2, 1, 0]);
        assert_eq!(fixed_points(&f), Vec::<usize>::new());
        assert!(!f.is_monotone());
        assert!(matches!(
            tarski_extremes(&f),
            Err(EngineError::NotMonotone { .. })
        ));
    }

    #[test]
    fn identity_fixes_everything() {
        let d = diamond();
        let id = FiniteMonotoneMap::identity(d.clone());
        assert_eq!(fixed_points(&id), alloc::vec![0, 1, 2, 3]);
        assert_eq!(tarski_extremes(&id).unwrap(), (d.bottom(), d.top()));
        let s = fixed_point_structure(&id).unwrap();
        assert!(s.induced_complete && s.sublattice_of_x && s.witness.is_none());
    }

    #[test]
    fn constant_map_on_diamond() {
        let d = diamond();
        let b = d.index_of("b").unwrap();
        let f = FiniteMonotoneMap::constant(d, b).unwrap();
        assert_eq!(fixed_points(&f), alloc::vec![b]);
        assert_eq!(tarski_extremes(&f).unwrap(), (b, b));
        assert_eq!(kleene_greatest(&f).unwrap(), b);
        let s = fixed_point_structure(&f).unwrap();
        assert!(s.induced_complete && s.sublattice_of_x);
    }

    #[test]
    fn shift_down_on_chain() {
        let c4 = chain(4);
        // f(x) = max(x−1, 0).
        let f = map(&c4, &[0, 0, 1, 2]);
        assert_eq!(tarski_extremes(&f).unwrap(), (0, 0));
        assert_eq!(kleene_least(&f).unwrap(), 0);
        assert_eq!(kleene_greatest(&f).unwrap(), 0);
        assert_eq!(kleene_descent(&f).unwrap(), alloc::vec![3, 2, 1, 0]);
    }

    #[test]
    fn shift_up_on_chain() {
        let c4 = chain(4);
        // f(x) = min(x+1, 3).
        let f = map(&c4, &[1, 2, 3, 3]);
        assert_eq!(kleene_ascent(&f).unwrap(), alloc::vec![0, 1, 2, 3]);
        assert_eq!(tarski_extremes(&f).unwrap(), (3, 3));
    }

    #[test]
    fn identity_on_chain_extremes() {
        let c4 = chain(4);
        let id = FiniteMonotoneMap::identity(c4);
        assert_eq!(tarski_extremes(&id).unwrap(), (0, 3));
    }

    #[test]
    fn enumeration_counts_on_chains() {
        assert_eq!(enumerate_monotone_maps(&chain(2)).unwrap().count(), 3);
        assert_eq!(enumerate_monotone_maps(&chain(3)).unwrap().count(), 10);
    }

    #[test]
    fn enumeration_matches_definition_on_diamond() {
        let d = diamond();
        // Independent brute force straight from the definition.
        let mut expected = Vec::new();
        for i0 in 0..4usize {
            for i1 in 0..4usize {
                for i2 in 0..4usize {
                    for i3 in 0..4usize {
                        let images = [i0, i1, i2, i3];
                        if monotone_witness_of(&d, &images).is_none() {
                            expected.push(images.to_vec());
                        }
                    }
                }
            }
        }
        let got: Vec<Vec<usize>> = enumerate_monotone_maps(&d)
            .unwrap()
            .map(|f| f.images().to_vec())
            .collect();
        assert_eq!(got, expected);
        // Pinned: the diamond has 36 order-preserving self-maps.
        assert_eq!(got.len(), 36);
    }

    #[test]
    fn enumeration_is_lexicographic_and_closed_under_join_meet() {
        let d = diamond();
        let maps: Vec<FiniteMonotoneMap> = enumerate_monotone_maps(&d).unwrap().collect();
        let tuples: Vec<Vec<usize>> = maps.iter().map(|f| f.images().to_vec()).collect();
        let mut sorted = tuples.clone();
        sorted.sort();
        assert_eq!(tuples, sorted);
        for f in &maps {
            for g in &maps {
                let j = f.join(g).unwrap();
                let m = f.meet(g).unwrap();
                assert!(j.is_monotone() && m.is_monotone());
                assert!(tuples.binary_search(&j.images().to_vec()).is_ok());
                assert!(tuples.binary_search(&m.images().to_vec()).is_ok());
            }
        }
    }

    #[test]
    fn enumeration_budget_guard() {
        let c8 = chain(8);
        assert!(matches!(
            enumerate_monotone_maps(&c8),
            Err(EngineError::TooLarge { candidates: 16_777_216, .. })
        ));
    }

    #[test]
    fn sampling_is_monotone_and_reproducible() {
        let l = m3();
        let a = sample_monotone_maps(&l, 50, 42);
        let b = sample_monotone_maps(&l, 50, 42);
        assert_eq!(a, b);
        assert!(a.iter().all(|f| f.is_monotone()));
        let c = sample_monotone_maps(&l, 50, 43);
        assert_ne!(a, c);
    }

    #[test]
    fn iteration_laws_hold_on_chain_3() {
        let report = check_iteration_laws(&chain(3), LawCheckMode::Exhaustive).unwrap();
        assert_eq!(report.map_count, 10);
        assert_eq!(report.pair_count, 100);
        assert!(report.ordered_pairs > 0 && report.subcommuting_pairs > 0);
        assert!(report.all_hold(), "violations: {:?}", report.violations);
    }

    #[test]
    fn iteration_laws_hold_on_diamond() {
        let report = check_iteration_laws(&diamond(), LawCheckMode::Exhaustive).unwrap();
        assert_eq!(report.map_count, 36);
        assert_eq!(report.pair_count, 36 * 36);
        assert!(report.all_hold(), "violations: {:?}", report.violations);
    }

    #[test]
    fn iteration_laws_by_sampling() {
        let report = check_iteration_laws(
            &pentagon(),
            LawCheckMode::Sample { pairs: 200, seed: 7 },
        )
        .unwrap();
        assert_eq!(report.pair_count, 200);
        assert!(report.all_hold(), "violations: {:?}", report.violations);
    }

    #[test]
    fn fixed_points_escape_the_ambient_lattice_on_the_stemmed_diamond() {
        let l = stemmed_diamond_top();
        let (a, b, j, top) = (
            l.index_of("a").unwrap(),
            l.index_of("b").unwrap(),
            l.index_of("j").unwrap(),
            l.index_of("top").unwrap(),
        );
        let bot = l.bottom();
        let mut images = alloc::vec![0; 5];
        images[bot] = bot;
        images[a] = a;
        images[b] = b;
        images[j] = top;
        images[top] = top;
        let f = map(&l, &images);
        assert!(f.is_monotone());
        let s = fixed_point_structure(&f).unwrap();
        assert!(s.induced_complete, "induced completeness is the theorem and must hold");
        assert!(!s.sublattice_of_x, "ambient join of a and b is j, which is not fixed");
        assert_eq!(s.witness, Some(StructureWitness::JoinEscapes { a, b, join: j }));
    }

    #[test]
    fn from_label_pairs_round_trip_and_errors() {
        let d = diamond();
        let f = FiniteMonotoneMap::from_label_pairs(
            d.clone(),
            &[("a", "a"), ("b", "c"), ("c", "b"), ("d", "d")],
        )
        .unwrap();
        assert_eq!(f.images(), &[0, 2, 1, 3]);
        assert!(f.is_monotone()); // b∥c, so swapping them preserves order
        assert!(matches!(
            FiniteMonotoneMap::from_label_pairs(d.clone(), &[("a", "a")]),
            Err(EngineError::MissingImage { .. })
        ));
        assert!(matches!(
            FiniteMonotoneMap::from_label_pairs(
                d,
                &[("a", "a"), ("a", "b"), ("b", "b"), ("c", "c"), ("d", "d")]
            ),
            Err(EngineError::DuplicateImage { element: 0 })
        ));
    }

    #[test]
    fn compose_and_iterate_are_exact() {
        let c4 = chain(4);
        let down = map(&c4, &[0, 0, 1, 2]);
        assert_eq!(down.iterate(2).images(), &[0, 0, 0, 1]);
        assert_eq!(down.iterate(3).images(), &[0, 0, 0, 0]);
        assert_eq!(down.iterate(0).images(), &[0, 1, 2, 3]);
        let up = map(&c4, &[1, 2, 3, 3]);
        assert_eq!(up.compose(&down).unwrap().images(), &[1, 1, 2, 3]);
    }

    #[test]
    fn subcommutation_examples() {
        let c3 = chain(3);
        let down = map(&c3, &[0, 0, 1]);
        let id = FiniteMonotoneMap::identity(c3.clone());
        // down ∘ id = down ⊴ down = id ∘ down.
        assert!(down.subcommutes(&id).unwrap());
        assert!(id.subcommutes(&down).unwrap());
        let top = FiniteMonotoneMap::constant(c3, 2).unwrap();
        // down∘top = const 1 ⊴ const 2 = top∘down.
        assert!(down.subcommutes(&top).unwrap());
        assert!(!top.subcommutes(&down).unwrap());
    }

    #[test]
    fn catalog_is_exactly_the_small_lattices() {
        let cat = small_catalog();
        assert_eq!(cat.len(), 10);
        let mut sizes: Vec<usize> = cat.iter().map(|(_, l)| l.len()).collect();
        sizes.sort();
        assert_eq!(sizes, alloc::vec![1, 2, 3, 4, 4, 5, 5, 5, 5, 5]);
    }

    #[test]
    fn every_monotone_map_on_the_catalog_obeys_the_fixed_point_theorems() {
        for (name, lattice) in small_catalog() {
            for f in enumerate_monotone_maps(&lattice).unwrap() {
                let fixed = fixed_points(&f);
                assert!(!fixed.is_empty(), "empty fixed-point set on {name}");
                let (least, greatest) = tarski_extremes(&f).unwrap();
                assert_eq!(kleene_least(&f).unwrap(), least, "{name}");
                assert_eq!(kleene_greatest(&f).unwrap(), greatest, "{name}");
                let s = fixed_point_structure(&f).unwrap();
                assert!(s.induced_complete, "induced completeness failed on {name}");
            }
        }
    }
}
