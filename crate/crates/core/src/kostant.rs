//! Torus weights of `GSp_2g`, irreducible characters, Kostant's description
//! of `H^•(Lie N, R)` and the weight truncation functors.
//!
//! A weight is `(a_1, …, a_g; b)`, the character `diag(t_1, …, t_2g) ↦
//! t_1^{a_1} ⋯ t_g^{a_g} ν^b` of the diagonal torus, with `ν` the similitude.
//! It pairs with a coweight `(λ; c)` as `Σ a_i λ_i + b c`. The `i`-th
//! diagonal coordinate gives `(e_i; 0)` for `i ≤ g` and `(-e_{2g+1-i}; 1)`
//! otherwise. Invariant products only involve the `a`-part.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::affine_weyl::{FiniteWeylElement, PositiveRoot, SimilitudeCoweight};
use crate::boundary::{siegel_dimension, IsotropicFlag, LeviBlock, ParabolicData};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Weight {
    entries: Vec<i64>,
    similitude: i64,
}

impl Weight {
    pub fn new(entries: Vec<i64>, similitude: i64) -> Self {
        Self {
            entries,
            similitude,
        }
    }

    pub fn zero(g: usize) -> Self {
        Self::new(vec![0; g], 0)
    }

    /// Highest weight `(1, 0, …, 0; 0)` of the standard representation.
    pub fn standard(g: usize) -> Self {
        let mut entries = vec![0; g];
        if g > 0 {
            entries[0] = 1;
        }
        Self::new(entries, 0)
    }

    /// The character of the `p`-th diagonal coordinate (zero-based).
    pub fn coordinate(g: usize, p: usize) -> Self {
        assert!(p < 2 * g, "coordinate {p} out of range");
        let mut entries = vec![0; g];
        if p < g {
            entries[p] = 1;
            Self::new(entries, 0)
        } else {
            entries[2 * g - 1 - p] = -1;
            Self::new(entries, 1)
        }
    }

    /// A positive root as a character.
    pub fn root(g: usize, r: &PositiveRoot) -> Self {
        Self::coordinate(g, r.i).sub(&Self::coordinate(g, r.j))
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn similitude(&self) -> i64 {
        self.similitude
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            self.entries.iter().zip(&other.entries).map(|(x, y)| x + y).collect(),
            self.similitude + other.similitude,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::new(self.entries.iter().map(|x| k * x).collect(), k * self.similitude)
    }

    /// Invariant product of the `a`-parts.
    pub fn dot(&self, other: &Self) -> i64 {
        self.entries.iter().zip(&other.entries).map(|(x, y)| x * y).sum()
    }

    pub fn pair(&self, lambda: &SimilitudeCoweight) -> i64 {
        assert_eq!(lambda.rank(), self.rank(), "rank mismatch");
        self.entries
            .iter()
            .zip(lambda.entries())
            .map(|(a, l)| a * l)
            .sum::<i64>()
            + self.similitude * lambda.similitude()
    }

    /// Pairing with the central cocharacter `z ↦ z·1`.
    pub fn central(&self) -> i64 {
        self.entries.iter().sum::<i64>() + 2 * self.similitude
    }

    /// Pairing with the cocharacter of `S_δ`, `(0^δ, 1^{2g-2δ}, 2^δ; 2)`.
    pub fn s_delta(&self, delta: usize) -> i64 {
        self.entries.iter().skip(delta).sum::<i64>() + 2 * self.similitude
    }

    pub fn is_dominant(&self) -> bool {
        self.entries.windows(2).all(|w| w[0] >= w[1]) && self.entries.last().is_none_or(|&x| x >= 0)
    }

    /// `σ · χ`.
    pub fn transform(&self, sigma: &FiniteWeylElement) -> Self {
        let g = self.rank();
        assert_eq!(sigma.rank(), g, "rank mismatch");
        let mut entries = vec![0; g];
        let mut similitude = self.similitude;
        for (i, &a) in self.entries.iter().enumerate() {
            let p = sigma.image(i);
            if p < g {
                entries[p] += a;
            } else {
                entries[2 * g - 1 - p] -= a;
                similitude += a;
            }
        }
        Self::new(entries, similitude)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|x| x.to_string()).collect();
        write!(f, "({};{})", parts.join(","), self.similitude)
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// `a1,…,ag;b`, brackets optional.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (head, tail) = s
            .split_once(';')
            .ok_or_else(|| Error::InvalidConfig(format!("weight `{s}` lacks `;`")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::InvalidConfig(format!("bad integer `{t}` in weight")))
        };
        let entries = if head.trim().is_empty() {
            Vec::new()
        } else {
            head.split(',').map(parse).collect::<Result<Vec<_>>>()?
        };
        Ok(Self::new(entries, parse(tail)?))
    }
}

/// Weights with multiplicities.
pub type WeightMultiset = BTreeMap<Weight, u64>;

fn multiset_size(m: &WeightMultiset) -> u64 {
    m.values().sum()
}

/// The root system of a reductive subgroup containing the diagonal torus.
#[derive(Clone, Debug)]
pub struct LeviRoots {
    g: usize,
    positive: Vec<Weight>,
    simple: Vec<Weight>,
}

impl LeviRoots {
    pub fn of(parabolic: &ParabolicData) -> Self {
        let g = parabolic.g;
        Self {
            g,
            positive: parabolic.levi_roots().iter().map(|r| Weight::root(g, r)).collect(),
            simple: parabolic
                .levi_simple_roots()
                .iter()
                .map(|r| Weight::root(g, r))
                .collect(),
        }
    }

    pub fn full(g: usize) -> Self {
        Self::of(&ParabolicData::whole_group(g))
    }

    fn two_rho(&self) -> Weight {
        self.positive
            .iter()
            .fold(Weight::zero(self.g), |acc, r| acc.add(r))
    }

    pub fn is_dominant(&self, lambda: &Weight) -> bool {
        self.simple.iter().all(|a| lambda.dot(a) >= 0)
    }

    /// Weight multiset of the irreducible with highest weight `lambda`,
    /// by Freudenthal's recursion.
    pub fn irreducible(&self, lambda: &Weight) -> Result<WeightMultiset> {
        if !self.is_dominant(lambda) {
            return Err(Error::NotDominant(lambda.to_string()));
        }
        let two_rho = self.two_rho();
        let depth = |mu: &Weight| lambda.sub(mu).dot(&two_rho);
        let mut mult: WeightMultiset = BTreeMap::new();
        let mut queue: BTreeSet<(i64, Weight)> = BTreeSet::new();
        queue.insert((0, lambda.clone()));
        while let Some((d, mu)) = queue.pop_first() {
            let m = if &mu == lambda {
                1
            } else {
                let coefficient = lambda.sub(&mu).dot(&lambda.add(&mu).add(&two_rho));
                let mut rhs = 0i64;
                for alpha in &self.positive {
                    let step = alpha.dot(&two_rho);
                    let mut k = 1;
                    while k * step <= d {
                        let nu = mu.add(&alpha.scale(k));
                        if let Some(&c) = mult.get(&nu) {
                            rhs += 2 * c as i64 * nu.dot(alpha);
                        }
                        k += 1;
                    }
                }
                if coefficient == 0 {
                    assert_eq!(rhs, 0, "Freudenthal recursion inconsistent at {mu}");
                    0
                } else {
                    assert_eq!(rhs % coefficient, 0, "non-integral multiplicity at {mu}");
                    let m = rhs / coefficient;
                    assert!(m >= 0, "negative multiplicity at {mu}");
                    m as u64
                }
            };
            if m == 0 {
                continue;
            }
            mult.insert(mu.clone(), m);
            for alpha in &self.simple {
                let nu = mu.sub(alpha);
                queue.insert((depth(&nu), nu));
            }
        }
        Ok(mult)
    }
}

/// Weights of the irreducible representation of `GSp_2g` with highest
/// weight `highest`.
pub fn irreducible_weights(g: usize, highest: &Weight) -> Result<WeightMultiset> {
    if highest.rank() != g {
        return Err(Error::DimensionMismatch {
            expected: g,
            found: highest.rank(),
        });
    }
    if !highest.is_dominant() {
        return Err(Error::NotDominant(highest.to_string()));
    }
    LeviRoots::full(g).irreducible(highest)
}

/// Elements `w ∈ W^P` (with `w⁻¹` positive on the Levi roots), their
/// length, and `w·λ = w(λ + ρ) - ρ`.
pub fn kostant_representatives(parabolic: &ParabolicData, lambda: &Weight) -> Vec<(FiniteWeylElement, usize, Weight)> {
    let g = parabolic.g;
    let levi = parabolic.levi_roots();
    let all_roots: Vec<PositiveRoot> = crate::affine_weyl::positive_roots(g).collect();
    let mut out = Vec::new();
    for w in FiniteWeylElement::all(g) {
        let inv = w.inverse();
        let positive_after = |r: &PositiveRoot| inv.image(r.i) < inv.image(r.j);
        if !levi.iter().all(positive_after) {
            continue;
        }
        let inverted: Vec<&PositiveRoot> = all_roots.iter().filter(|r| !positive_after(r)).collect();
        let shifted = inverted
            .iter()
            .fold(lambda.transform(&w), |acc, r| acc.sub(&Weight::root(g, r)));
        out.push((w, inverted.len(), shifted));
    }
    out.sort_by(|a, b| (a.1, &a.2).cmp(&(b.1, &b.2)));
    out
}

/// A cohomologically graded torus module, possibly carrying unevaluated
/// arithmetic-group invariant functors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightModule {
    pub g: usize,
    pub graded: BTreeMap<i64, WeightMultiset>,
    pub levi_blocks: Vec<LeviBlock>,
    pub symbolic_factors: Vec<String>,
}

impl WeightModule {
    pub fn empty(g: usize) -> Self {
        Self {
            g,
            graded: BTreeMap::new(),
            levi_blocks: vec![LeviBlock::Symplectic { rank: g }],
            symbolic_factors: Vec::new(),
        }
    }

    /// A single multiset placed in degree 0.
    pub fn concentrated(g: usize, weights: WeightMultiset) -> Self {
        let mut m = Self::empty(g);
        m.insert_all(0, &weights);
        m
    }

    pub fn insert(&mut self, degree: i64, weight: Weight, multiplicity: u64) {
        if multiplicity == 0 {
            return;
        }
        *self
            .graded
            .entry(degree)
            .or_default()
            .entry(weight)
            .or_insert(0) += multiplicity;
    }

    pub fn insert_all(&mut self, degree: i64, weights: &WeightMultiset) {
        for (w, &m) in weights {
            self.insert(degree, w.clone(), m);
        }
    }

    pub fn dimension(&self, degree: i64) -> u64 {
        self.graded.get(&degree).map_or(0, multiset_size)
    }

    pub fn total_dimension(&self) -> u64 {
        self.graded.values().map(multiset_size).sum()
    }

    /// `Σ (-1)^n dim H^n`.
    pub fn euler_characteristic(&self) -> i64 {
        self.graded
            .iter()
            .map(|(&n, m)| if n % 2 == 0 { 1 } else { -1 } * multiset_size(m) as i64)
            .sum()
    }

    pub fn is_explicit(&self) -> bool {
        self.symbolic_factors.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.graded.values().all(|m| m.is_empty())
    }

    /// Keep the weights satisfying `keep(degree, weight)`.
    pub fn filter<F: Fn(i64, &Weight) -> bool>(&self, keep: F) -> Self {
        let graded = self
            .graded
            .iter()
            .map(|(&n, m)| {
                let kept: WeightMultiset = m
                    .iter()
                    .filter(|(w, _)| keep(n, w))
                    .map(|(w, &c)| (w.clone(), c))
                    .collect();
                (n, kept)
            })
            .filter(|(_, m)| !m.is_empty())
            .collect();
        Self {
            graded,
            ..self.clone()
        }
    }

    /// Degree-wise union of multisets.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&n, m) in &other.graded {
            out.insert_all(n, m);
        }
        out
    }

    pub fn degree(&self, n: i64) -> Option<&WeightMultiset> {
        self.graded.get(&n)
    }
}

/// `RInv(Lie N_P, R_λ)` by Kostant's theorem.
pub fn lie_n_cohomology(parabolic: &ParabolicData, highest: &Weight) -> Result<WeightModule> {
    let g = parabolic.g;
    if !highest.is_dominant() || highest.rank() != g {
        return Err(Error::NotDominant(highest.to_string()));
    }
    let levi = LeviRoots::of(parabolic);
    let mut module = WeightModule::empty(g);
    module.levi_blocks = parabolic.levi_blocks.clone();
    for (_, len, shifted) in kostant_representatives(parabolic, highest) {
        let weights = levi.irreducible(&shifted)?;
        module.insert_all(len as i64, &weights);
    }
    Ok(module)
}

/// The number of Levi constituents of `RInv(Lie N_P, R)`, i.e. `|W^P|`.
pub fn kostant_constituent_count(parabolic: &ParabolicData) -> usize {
    kostant_representatives(parabolic, &Weight::zero(parabolic.g)).len()
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum CentralMode {
    /// `w_{≤a}`.
    AtMost,
    /// `w_{>a}`.
    Above,
}

/// Offset-free truncation by central weight: keeps weights with central
/// pairing `≤ a` (resp. `> a`) in every degree.
pub fn central_truncate(module: &WeightModule, a: i64, mode: CentralMode) -> WeightModule {
    module.filter(|_, w| match mode {
        CentralMode::AtMost => w.central() <= a,
        CentralMode::Above => w.central() > a,
    })
}

/// Degree-offset variant: in degree `n` the threshold is `a + n`.
pub fn central_truncate_with_offset(module: &WeightModule, a: i64, mode: CentralMode) -> WeightModule {
    module.filter(|n, w| match mode {
        CentralMode::AtMost => w.central() <= a + n,
        CentralMode::Above => w.central() > a + n,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum SDeltaMode {
    /// `w^δ_{<a}`.
    Below,
    /// `w^δ_{≥a}`.
    AtLeast,
    /// `w^δ_{>a}`.
    Above,
}

/// Truncation by the `S_δ`-weight.
pub fn s_delta_truncate(module: &WeightModule, delta: usize, a: i64, mode: SDeltaMode) -> Result<WeightModule> {
    if delta == 0 || delta > module.g {
        return Err(Error::OutOfRange {
            what: "delta",
            value: delta as i64,
            lo: 1,
            hi: module.g as i64,
        });
    }
    Ok(module.filter(|_, w| {
        let p = w.s_delta(delta);
        match mode {
            SDeltaMode::Below => p < a,
            SDeltaMode::AtLeast => p >= a,
            SDeltaMode::Above => p > a,
        }
    }))
}

/// `R_{a,V•} = w^{δ_0}_{≥ d_V - d_{V^0} - a} ∘ w^{δ_1}_{< d_V - d_{V^1} - a} ∘ ⋯ ∘ w^{δ_r}_{< d_V - d_{V^r} - a}`.
pub fn r_a_flag(module: &WeightModule, flag: &IsotropicFlag, a: i64, g: usize) -> Result<WeightModule> {
    let dv = siegel_dimension(g) as i64;
    let threshold = |delta: usize| dv - siegel_dimension(g - delta) as i64 - a;
    let mut out = module.clone();
    for k in (1..=flag.sharp()).rev() {
        let delta = flag.delta(k);
        out = s_delta_truncate(&out, delta, threshold(delta), SDeltaMode::Below)?;
    }
    let top = flag.delta(0);
    s_delta_truncate(&out, top, threshold(top), SDeltaMode::AtLeast)
}
