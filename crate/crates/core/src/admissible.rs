//! μ-admissible sets and their images in parahoric double quotients.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::affine_weyl::{simple_reflection, AffineWeylElement, FiniteWeylElement, SimilitudeCoweight};
use crate::error::{Error, Result};

/// A parahoric level `D = {d_1 < … < d_s} ⊂ {1, …, g}`.
///
/// `D = {1, …, g}` is Iwahori level. The empty set (hyperspecial level, no
/// structure at `p`) only arises as an induced type at the boundary and can
/// only be built through [`ParahoricType::hyperspecial`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ParahoricType {
    g: usize,
    indices: Vec<usize>,
}

impl ParahoricType {
    pub fn new(g: usize, mut indices: Vec<usize>) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::InvalidParahoric("empty index set".into()));
        }
        indices.sort_unstable();
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidParahoric(format!("repeated index in {indices:?}")));
        }
        if let Some(&bad) = indices.iter().find(|&&d| d == 0 || d > g) {
            return Err(Error::InvalidParahoric(format!("index {bad} outside 1..={g}")));
        }
        Ok(Self { g, indices })
    }

    pub fn iwahori(g: usize) -> Self {
        Self {
            g,
            indices: (1..=g).collect(),
        }
    }

    pub fn hyperspecial(g: usize) -> Self {
        Self {
            g,
            indices: Vec::new(),
        }
    }

    /// Used for boundary strata; the index list may be empty.
    pub(crate) fn from_raw(g: usize, indices: Vec<usize>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(indices.iter().all(|&d| (1..=g).contains(&d)));
        Self { g, indices }
    }

    pub fn rank(&self) -> usize {
        self.g
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn is_iwahori(&self) -> bool {
        self.indices.len() == self.g
    }

    /// Simple reflections generating `W^vec_D`: the `s_j`, `j ∉ D`.
    pub fn generators(&self) -> Vec<usize> {
        (1..=self.g).filter(|j| !self.indices.contains(j)).collect()
    }

    /// All elements of the finite group `W^vec_D`.
    pub fn vector_weyl_group(&self) -> Vec<AffineWeylElement> {
        let gens: Vec<AffineWeylElement> = self
            .generators()
            .into_iter()
            .map(|j| simple_reflection(self.g, j))
            .collect();
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::from([AffineWeylElement::identity(self.g)]);
        seen.insert(AffineWeylElement::identity(self.g));
        while let Some(x) = queue.pop_front() {
            for s in &gens {
                let y = s * &x;
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        seen.into_iter().collect()
    }
}

impl fmt::Display for ParahoricType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices.iter().map(|d| d.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// A double coset `W^vec_D · x · W^vec_D`, stored by its unique
/// minimal-length representative.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct DoubleCoset {
    min_rep: AffineWeylElement,
    parahoric: ParahoricType,
}

impl DoubleCoset {
    pub fn min_rep(&self) -> &AffineWeylElement {
        &self.min_rep
    }

    pub fn parahoric(&self) -> &ParahoricType {
        &self.parahoric
    }

    pub fn rank(&self) -> usize {
        self.parahoric.g
    }

    /// Induced length: the length of the minimal representative.
    pub fn length(&self) -> usize {
        self.min_rep.length()
    }

    /// The longest element of the double coset.
    pub fn max_rep(&self) -> AffineWeylElement {
        maximal_by_ascents(&self.min_rep, &self.parahoric.generators())
    }

    /// Dimension of the stratum: `l(max_rep) - l(w_{0,K})`. Agrees with
    /// [`DoubleCoset::length`] at Iwahori level.
    pub fn dimension(&self) -> usize {
        let longest = maximal_by_ascents(&AffineWeylElement::identity(self.rank()), &self.parahoric.generators());
        self.max_rep().length() - longest.length()
    }

    /// Induced order: Bruhat comparison of minimal representatives.
    pub fn leq(&self, other: &Self) -> bool {
        self.parahoric == other.parahoric && self.min_rep.bruhat_leq(&other.min_rep)
    }

    /// Every element of the double coset.
    pub fn elements(&self) -> BTreeSet<AffineWeylElement> {
        let group = self.parahoric.vector_weyl_group();
        let mut out = BTreeSet::new();
        for u in &group {
            let ux = u * &self.min_rep;
            for w in &group {
                out.insert(&ux * w);
            }
        }
        out
    }
}

impl fmt::Display for DoubleCoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parahoric.is_iwahori() {
            write!(f, "{}", self.min_rep)
        } else {
            write!(f, "W{}·{}·W{}", self.parahoric, self.min_rep, self.parahoric)
        }
    }
}

/// Orbit of a dominant coweight under the finite Weyl group.
pub fn weyl_orbit(mu: &SimilitudeCoweight) -> Result<BTreeSet<SimilitudeCoweight>> {
    if !mu.is_dominant() {
        return Err(Error::NotDominant(mu.to_string()));
    }
    Ok(FiniteWeylElement::all(mu.rank())
        .iter()
        .map(|w| w.act(mu))
        .collect())
}

/// Elements covered by `w` in the Bruhat order: single-letter deletions of a
/// reduced word that drop the length by exactly one.
pub fn bruhat_covers(w: &AffineWeylElement) -> BTreeSet<AffineWeylElement> {
    let word = w.reduced_word();
    let g = w.rank();
    let target = w.length().saturating_sub(1);
    let mut out = BTreeSet::new();
    for skip in 0..word.letters.len() {
        let y = word
            .letters
            .iter()
            .enumerate()
            .rev()
            .filter(|&(k, _)| k != skip)
            .fold(word.omega.clone(), |acc, (_, &i)| &simple_reflection(g, i) * &acc);
        if y.length() == target {
            out.insert(y);
        }
    }
    out
}

/// The lower Bruhat interval `{x : x ≤ w}`.
pub fn lower_interval(w: &AffineWeylElement) -> BTreeSet<AffineWeylElement> {
    downward_closure(std::iter::once(w.clone()))
}

fn downward_closure<I: IntoIterator<Item = AffineWeylElement>>(
    tops: I,
) -> BTreeSet<AffineWeylElement> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    for t in tops {
        if seen.insert(t.clone()) {
            queue.push_back(t);
        }
    }
    while let Some(x) = queue.pop_front() {
        for y in bruhat_covers(&x) {
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// `Adm(μ) = {x : x ≤ t_λ for some λ ∈ W_0 μ}`.
pub fn admissible_set_for(mu: &SimilitudeCoweight) -> Result<BTreeSet<AffineWeylElement>> {
    let orbit = weyl_orbit(mu)?;
    Ok(downward_closure(
        orbit.into_iter().map(AffineWeylElement::translation),
    ))
}

/// `Adm(μ_V)` for the minuscule coweight `(1^g, 0^g)`.
pub fn admissible_set(g: usize) -> BTreeSet<AffineWeylElement> {
    admissible_set_for(&SimilitudeCoweight::minuscule(g)).expect("μ_V is dominant")
}

/// Cover relations `(lower, upper)` inside a downward-closed set.
pub fn cover_relations(
    set: &BTreeSet<AffineWeylElement>,
) -> Vec<(AffineWeylElement, AffineWeylElement)> {
    let mut out = Vec::new();
    for w in set {
        for y in bruhat_covers(w) {
            if set.contains(&y) {
                out.push((y, w.clone()));
            }
        }
    }
    out
}

fn minimal_by_descents(x: &AffineWeylElement, gens: &[usize]) -> AffineWeylElement {
    let mut x = x.clone();
    let mut len = x.length();
    loop {
        let mut changed = false;
        for &j in gens {
            let y = x.left_mul_simple(j);
            let ly = y.length();
            if ly < len {
                x = y;
                len = ly;
                changed = true;
            }
            let y = x.right_mul_simple(j);
            let ly = y.length();
            if ly < len {
                x = y;
                len = ly;
                changed = true;
            }
        }
        if !changed {
            return x;
        }
    }
}

fn maximal_by_ascents(x: &AffineWeylElement, gens: &[usize]) -> AffineWeylElement {
    let mut x = x.clone();
    let mut len = x.length();
    loop {
        let mut changed = false;
        for &j in gens {
            for y in [x.left_mul_simple(j), x.right_mul_simple(j)] {
                let ly = y.length();
                if ly > len {
                    x = y;
                    len = ly;
                    changed = true;
                }
            }
        }
        if !changed {
            return x;
        }
    }
}

/// Largest `|W^vec_D|` for which the double coset is searched exhaustively
/// to confirm the descent-minimised representative.
const UNIQUENESS_CHECK_LIMIT: usize = 64;

/// The double coset of `x` with its minimal representative, found by
/// iterated left/right descent minimisation.
pub fn project_double_coset(x: &AffineWeylElement, parahoric: &ParahoricType) -> DoubleCoset {
    assert_eq!(x.rank(), parahoric.rank(), "rank mismatch in double coset projection");
    let gens = parahoric.generators();
    let min_rep = minimal_by_descents(x, &gens);
    let coset = DoubleCoset {
        min_rep,
        parahoric: parahoric.clone(),
    };
    let group_size_bound = 1usize << gens.len().min(20);
    if !gens.is_empty() && group_size_bound <= UNIQUENESS_CHECK_LIMIT {
        let len = coset.min_rep.length();
        let elements = coset.elements();
        assert!(elements.contains(x), "{x} not in its own double coset");
        let minimal: Vec<_> = elements.iter().filter(|y| y.length() <= len).collect();
        assert!(
            minimal.len() == 1 && minimal[0] == &coset.min_rep,
            "double coset of {x} has no unique minimal representative"
        );
    }
    coset
}

/// `W_D`: the image of `Adm(μ_V)` in the double quotient, sorted by induced
/// length and then by representative.
pub fn admissible_image(parahoric: &ParahoricType) -> Vec<DoubleCoset> {
    admissible_image_of(&admissible_set(parahoric.rank()), parahoric)
}

pub fn admissible_image_of(
    set: &BTreeSet<AffineWeylElement>,
    parahoric: &ParahoricType,
) -> Vec<DoubleCoset> {
    let image: BTreeSet<DoubleCoset> = set
        .iter()
        .map(|x| project_double_coset(x, parahoric))
        .collect();
    sort_by_length(image)
}

pub(crate) fn sort_by_length<I: IntoIterator<Item = DoubleCoset>>(cosets: I) -> Vec<DoubleCoset> {
    let mut keyed: Vec<(usize, DoubleCoset)> = cosets.into_iter().map(|c| (c.length(), c)).collect();
    keyed.sort();
    keyed.into_iter().map(|(_, c)| c).collect()
}

/// Cover relations of the induced order on a set of double cosets.
pub fn coset_cover_relations(cosets: &[DoubleCoset]) -> Vec<(usize, usize)> {
    let mut below: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (a, x) in cosets.iter().enumerate() {
        for (b, y) in cosets.iter().enumerate() {
            if a != b && x.leq(y) {
                below.entry(b).or_default().push(a);
            }
        }
    }
    let mut out = Vec::new();
    for (&b, lows) in &below {
        for &a in lows {
            let intermediate = lows
                .iter()
                .any(|&c| c != a && cosets[a].leq(&cosets[c]));
            if !intermediate {
                out.push((a, b));
            }
        }
    }
    out.sort();
    out
}
