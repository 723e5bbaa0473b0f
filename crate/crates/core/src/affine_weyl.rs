//! The extended affine Weyl group of `GSp_2g`.
//!
//! Coweights are stored in full lattice-chain coordinates: a vector
//! `(λ_1, …, λ_2g)` together with the similitude `c`, subject to
//! `λ_i + λ_{2g+1-i} = c`. The finite Weyl group is realised as the
//! permutations of `{1, …, 2g}` commuting with `i ↦ 2g+1-i`, acting on
//! coweights by `(σλ)_i = λ_{σ⁻¹(i)}`. An element `(λ, σ)` acts on the
//! apartment by `x ↦ λ + σx`.
//!
//! The base alcove is `{x : 0 < α(x) < 1 for every positive root α}` for the
//! upper-triangular Borel. The simple affine reflections are `s_1, …, s_{g-1}`
//! (short), `s_g` (long) and `s_0`, the reflection in the wall `θ = 1` for
//! the highest root `θ = e_1 - e_2g`. The length-zero subgroup `Ω ≅ Z` is
//! generated by `τ = t_μ · ρ`, where `μ = (1^g, 0^g)` and `ρ` swaps `i` and
//! `i + g`; the `Ω`-component of any element is `τ^c`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A cocharacter of the diagonal torus of `GSp_2g`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SimilitudeCoweight {
    entries: Vec<i64>,
    similitude: i64,
}

impl SimilitudeCoweight {
    pub fn new(entries: Vec<i64>, similitude: i64) -> Result<Self> {
        if !entries.len().is_multiple_of(2) {
            return Err(Error::MalformedCoweight(format!(
                "odd number of entries ({})",
                entries.len()
            )));
        }
        let n = entries.len();
        for i in 0..n / 2 {
            if entries[i] + entries[n - 1 - i] != similitude {
                return Err(Error::MalformedCoweight(format!(
                    "entries {} and {} do not sum to the similitude {}",
                    i + 1,
                    n - i,
                    similitude
                )));
            }
        }
        Ok(Self {
            entries,
            similitude,
        })
    }

    /// Build from the first `g` entries; the rest follow from the similitude.
    pub fn from_half(half: &[i64], similitude: i64) -> Self {
        let mut entries = half.to_vec();
        entries.extend(half.iter().rev().map(|x| similitude - x));
        Self {
            entries,
            similitude,
        }
    }

    pub fn zero(g: usize) -> Self {
        Self {
            entries: vec![0; 2 * g],
            similitude: 0,
        }
    }

    /// The minuscule coweight `(1, …, 1, 0, …, 0)` with similitude 1.
    pub fn minuscule(g: usize) -> Self {
        let mut entries = vec![1; g];
        entries.extend(std::iter::repeat_n(0, g));
        Self {
            entries,
            similitude: 1,
        }
    }

    /// The strictly dominant coweight `(2g-1, 2g-2, …, 0)`.
    pub fn regular_dominant(g: usize) -> Self {
        let n = 2 * g as i64;
        Self {
            entries: (0..n).rev().collect(),
            similitude: (n - 1).max(0),
        }
    }

    pub fn rank(&self) -> usize {
        self.entries.len() / 2
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn similitude(&self) -> i64 {
        self.similitude
    }

    pub fn is_dominant(&self) -> bool {
        self.entries.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.rank(), other.rank(), "coweight rank mismatch");
        Self {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
            similitude: self.similitude + other.similitude,
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            entries: self.entries.iter().map(|a| -a).collect(),
            similitude: -self.similitude,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i64) -> Self {
        Self {
            entries: self.entries.iter().map(|a| a * k).collect(),
            similitude: self.similitude * k,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.similitude == 0 && self.entries.iter().all(|&a| a == 0)
    }
}

impl fmt::Display for SimilitudeCoweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|x| x.to_string()).collect();
        write!(f, "[{};{}]", parts.join(","), self.similitude)
    }
}

/// An element of the finite Weyl group `W_0` of type `C_g`, stored as the
/// zero-based image vector of a permutation of `{0, …, 2g-1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FiniteWeylElement {
    perm: Vec<usize>,
}

impl FiniteWeylElement {
    /// From one-line notation `σ(1), …, σ(2g)` (1-based).
    pub fn from_one_line(one_line: &[usize]) -> Result<Self> {
        let n = one_line.len();
        if !n.is_multiple_of(2) {
            return Err(Error::MalformedPermutation(format!("odd degree {n}")));
        }
        let mut seen = vec![false; n];
        for &x in one_line {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::MalformedPermutation(format!(
                    "{one_line:?} is not a permutation of 1..={n}"
                )));
            }
            seen[x - 1] = true;
        }
        let perm: Vec<usize> = one_line.iter().map(|x| x - 1).collect();
        for i in 0..n {
            if perm[n - 1 - i] != n - 1 - perm[i] {
                return Err(Error::MalformedPermutation(format!(
                    "{one_line:?} does not preserve the symplectic pairing"
                )));
            }
        }
        Ok(Self { perm })
    }

    pub fn identity(g: usize) -> Self {
        Self {
            perm: (0..2 * g).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.perm.len() / 2
    }

    /// Zero-based image of `i`.
    pub fn image(&self, i: usize) -> usize {
        self.perm[i]
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.perm.iter().map(|x| x + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// The finite simple reflection `s_i`, `1 <= i <= g`.
    pub fn simple_reflection(g: usize, i: usize) -> Self {
        assert!((1..=g).contains(&i), "finite simple reflection index {i} out of range");
        let n = 2 * g;
        let mut perm: Vec<usize> = (0..n).collect();
        if i == g {
            perm.swap(g - 1, g);
        } else {
            perm.swap(i - 1, i);
            perm.swap(n - i, n - 1 - i);
        }
        Self { perm }
    }

    /// Swap of `i` and `i + g`: the finite part of the generator of `Ω`.
    pub fn half_rotation(g: usize) -> Self {
        let n = 2 * g;
        Self {
            perm: (0..n).map(|i| (i + g) % n).collect(),
        }
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.rank(), other.rank(), "finite Weyl rank mismatch");
        Self {
            perm: other.perm.iter().map(|&i| self.perm[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut perm = vec![0; self.perm.len()];
        for (i, &x) in self.perm.iter().enumerate() {
            perm[x] = i;
        }
        Self { perm }
    }

    /// `(σλ)_{σ(i)} = λ_i`.
    pub fn act(&self, lambda: &SimilitudeCoweight) -> SimilitudeCoweight {
        assert_eq!(self.rank(), lambda.rank(), "finite Weyl rank mismatch");
        let mut entries = vec![0; lambda.entries.len()];
        for (i, &x) in lambda.entries.iter().enumerate() {
            entries[self.perm[i]] = x;
        }
        SimilitudeCoweight {
            entries,
            similitude: lambda.similitude,
        }
    }

    /// Coxeter length in `W_0`: the number of positive roots sent negative.
    pub fn length(&self) -> usize {
        let inv = self.inverse();
        positive_roots(self.rank())
            .filter(|r| inv.perm[r.i] > inv.perm[r.j])
            .count()
    }

    /// All `2^g · g!` elements, in a fixed order.
    pub fn all(g: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let n = 2 * g;
        let mut images = vec![0usize; g];
        let mut used = vec![false; g];
        fn rec(
            pos: usize,
            g: usize,
            n: usize,
            images: &mut Vec<usize>,
            used: &mut Vec<bool>,
            out: &mut Vec<FiniteWeylElement>,
        ) {
            if pos == g {
                let mut perm = vec![0; n];
                for i in 0..g {
                    perm[i] = images[i];
                    perm[n - 1 - i] = n - 1 - images[i];
                }
                out.push(FiniteWeylElement { perm });
                return;
            }
            for base in 0..g {
                if used[base] {
                    continue;
                }
                used[base] = true;
                for flip in [false, true] {
                    images[pos] = if flip { n - 1 - base } else { base };
                    rec(pos + 1, g, n, images, used, out);
                }
                used[base] = false;
            }
        }
        rec(0, g, n, &mut images, &mut used, &mut out);
        out
    }
}

impl fmt::Display for FiniteWeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_line().iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// A positive root `e_i - e_j` (zero-based, `i < j`) of `GSp_2g`, as an
/// integer functional on coweights. Each root has two such presentations,
/// `(i, j)` and `(2g-1-j, 2g-1-i)`; only the lexicographically smaller one
/// is produced.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PositiveRoot {
    pub i: usize,
    pub j: usize,
}

impl PositiveRoot {
    pub fn eval(&self, lambda: &SimilitudeCoweight) -> i64 {
        lambda.entries[self.i] - lambda.entries[self.j]
    }

    pub fn is_long(&self, g: usize) -> bool {
        self.i + self.j == 2 * g - 1
    }
}

/// The `g²` positive roots of type `C_g`.
pub fn positive_roots(g: usize) -> impl Iterator<Item = PositiveRoot> {
    let n = 2 * g;
    (0..n).flat_map(move |i| {
        ((i + 1)..n).filter_map(move |j| {
            let mirror = (n - 1 - j, n - 1 - i);
            ((i, j) <= mirror).then_some(PositiveRoot { i, j })
        })
    })
}

/// An element `t_λ · σ` of the extended affine Weyl group.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AffineWeylElement {
    translation: SimilitudeCoweight,
    finite: FiniteWeylElement,
}

impl PartialOrd for AffineWeylElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AffineWeylElement {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.rank(), &self.translation, &self.finite).cmp(&(
            other.rank(),
            &other.translation,
            &other.finite,
        ))
    }
}

impl AffineWeylElement {
    pub fn new(translation: SimilitudeCoweight, finite: FiniteWeylElement) -> Result<Self> {
        if translation.rank() != finite.rank() {
            return Err(Error::DimensionMismatch {
                expected: translation.rank(),
                found: finite.rank(),
            });
        }
        Ok(Self {
            translation,
            finite,
        })
    }

    pub fn identity(g: usize) -> Self {
        Self {
            translation: SimilitudeCoweight::zero(g),
            finite: FiniteWeylElement::identity(g),
        }
    }

    /// `t_λ`.
    pub fn translation(lambda: SimilitudeCoweight) -> Self {
        let g = lambda.rank();
        Self {
            translation: lambda,
            finite: FiniteWeylElement::identity(g),
        }
    }

    /// `t_λ` from raw entries, validating the symplectic invariant.
    pub fn try_translation(entries: Vec<i64>, similitude: i64) -> Result<Self> {
        Ok(Self::translation(SimilitudeCoweight::new(entries, similitude)?))
    }

    pub fn from_finite(finite: FiniteWeylElement) -> Self {
        Self {
            translation: SimilitudeCoweight::zero(finite.rank()),
            finite,
        }
    }

    pub fn rank(&self) -> usize {
        self.finite.rank()
    }

    pub fn translation_part(&self) -> &SimilitudeCoweight {
        &self.translation
    }

    pub fn finite_part(&self) -> &FiniteWeylElement {
        &self.finite
    }

    pub fn is_identity(&self) -> bool {
        self.translation.is_zero() && self.finite.is_identity()
    }

    /// The semidirect-product law `(λ₁,w₁)(λ₂,w₂) = (λ₁ + w₁λ₂, w₁w₂)`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.rank() != other.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: other.rank(),
            });
        }
        Ok(Self {
            translation: self.translation.add(&self.finite.act(&other.translation)),
            finite: self.finite.compose(&other.finite),
        })
    }

    pub fn inverse(&self) -> Self {
        let inv = self.finite.inverse();
        Self {
            translation: inv.act(&self.translation).neg(),
            finite: inv,
        }
    }

    /// Length via the positive-root count
    /// `Σ_{α>0} |α(λ) - [σ⁻¹α < 0]|`.
    pub fn length(&self) -> usize {
        let inv = self.finite.inverse();
        positive_roots(self.rank())
            .map(|r| {
                let flipped = (inv.perm[r.i] > inv.perm[r.j]) as i64;
                (r.eval(&self.translation) - flipped).unsigned_abs() as usize
            })
            .sum()
    }

    /// The `Ω`-component `τ^c`.
    pub fn omega_component(&self) -> Self {
        omega_power(self.rank(), self.translation.similitude)
    }

    pub fn omega_exponent(&self) -> i64 {
        self.translation.similitude
    }

    /// Indices `i` with `l(s_i x) < l(x)`.
    pub fn left_descents(&self) -> Vec<usize> {
        if self.rank() == 0 {
            return Vec::new();
        }
        let len = self.length();
        (0..=self.rank())
            .filter(|&i| simple_reflection(self.rank(), i).compose(self).unwrap().length() < len)
            .collect()
    }

    /// Indices `i` with `l(x s_i) < l(x)`.
    pub fn right_descents(&self) -> Vec<usize> {
        if self.rank() == 0 {
            return Vec::new();
        }
        let len = self.length();
        (0..=self.rank())
            .filter(|&i| self.compose(&simple_reflection(self.rank(), i)).unwrap().length() < len)
            .collect()
    }

    pub fn left_mul_simple(&self, i: usize) -> Self {
        simple_reflection(self.rank(), i).compose(self).unwrap()
    }

    pub fn right_mul_simple(&self, i: usize) -> Self {
        self.compose(&simple_reflection(self.rank(), i)).unwrap()
    }

    /// A reduced expression `x = s_{i_1} ⋯ s_{i_l} · ω`.
    pub fn reduced_word(&self) -> ReducedWord {
        let g = self.rank();
        let mut letters = Vec::with_capacity(self.length());
        let mut x = self.clone();
        let mut len = x.length();
        while len > 0 {
            let (i, y, ly) = (0..=g)
                .find_map(|i| {
                    let y = x.left_mul_simple(i);
                    let ly = y.length();
                    (ly < len).then_some((i, y, ly))
                })
                .expect("element of positive length has a left descent");
            letters.push(i);
            x = y;
            len = ly;
        }
        ReducedWord { letters, omega: x }
    }

    /// Bruhat order, by recursion on a left descent of `w`
    /// (`x ≤ w ⟺ min(x, sx) ≤ sw` whenever `sw < w`). Elements with
    /// different `Ω`-components are incomparable.
    pub fn bruhat_leq(&self, w: &Self) -> bool {
        if self.rank() != w.rank() || self.omega_exponent() != w.omega_exponent() {
            return false;
        }
        let mut x = self.clone();
        let mut w = w.clone();
        let mut lx = x.length();
        let mut lw = w.length();
        loop {
            if lx > lw {
                return false;
            }
            if lw == 0 || lx == lw {
                return x == w;
            }
            let g = w.rank();
            let (s, sw) = (0..=g)
                .find_map(|i| {
                    let sw = w.left_mul_simple(i);
                    (sw.length() < lw).then_some((i, sw))
                })
                .expect("element of positive length has a left descent");
            let sx = x.left_mul_simple(s);
            let lsx = sx.length();
            if lsx < lx {
                x = sx;
                lx = lsx;
            }
            w = sw;
            lw -= 1;
        }
    }

    /// Conjugation `y · self · y⁻¹`.
    pub fn conjugate_by(&self, y: &Self) -> Self {
        y.compose(self).unwrap().compose(&y.inverse()).unwrap()
    }

    /// Parse the canonical text form `t[λ_1,…,λ_2g;c]·[σ(1),…,σ(2g)]`.
    pub fn parse(text: &str) -> Result<Self> {
        text.parse()
    }
}

impl Mul for &AffineWeylElement {
    type Output = AffineWeylElement;
    fn mul(self, rhs: &AffineWeylElement) -> AffineWeylElement {
        self.compose(rhs).expect("rank mismatch in affine Weyl product")
    }
}

impl fmt::Display for AffineWeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}·{}", self.translation, self.finite)
    }
}

impl FromStr for AffineWeylElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::MalformedCoweight(format!("cannot parse element {s:?}"));
        let rest = s.trim().strip_prefix("t[").ok_or_else(bad)?;
        let (coweight, perm) = rest.split_once("]·[").ok_or_else(bad)?;
        let perm = perm.strip_suffix(']').ok_or_else(bad)?;
        let (entries, c) = coweight.split_once(';').ok_or_else(bad)?;
        let parse_list = |text: &str| -> Result<Vec<i64>> {
            if text.trim().is_empty() {
                return Ok(Vec::new());
            }
            text.split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|_| bad()))
                .collect()
        };
        let entries = parse_list(entries)?;
        let c: i64 = c.trim().parse().map_err(|_| bad())?;
        let perm: Vec<usize> = parse_list(perm)?
            .into_iter()
            .map(|x| usize::try_from(x).map_err(|_| bad()))
            .collect::<Result<_>>()?;
        AffineWeylElement::new(
            SimilitudeCoweight::new(entries, c)?,
            FiniteWeylElement::from_one_line(&perm)?,
        )
    }
}

/// A reduced word together with the trailing length-zero factor.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReducedWord {
    pub letters: Vec<usize>,
    pub omega: AffineWeylElement,
}

impl ReducedWord {
    /// Multiply the word back out.
    pub fn evaluate(&self) -> AffineWeylElement {
        let g = self.omega.rank();
        self.letters
            .iter()
            .rev()
            .fold(self.omega.clone(), |acc, &i| {
                simple_reflection(g, i).compose(&acc).unwrap()
            })
    }
}

/// The simple affine reflection `s_i`, `0 <= i <= g`.
pub fn simple_reflection(g: usize, i: usize) -> AffineWeylElement {
    assert!(g >= 1 && i <= g, "simple reflection s_{i} does not exist for g = {g}");
    if i > 0 {
        return AffineWeylElement::from_finite(FiniteWeylElement::simple_reflection(g, i));
    }
    let n = 2 * g;
    let mut coroot = vec![0; n];
    coroot[0] = 1;
    coroot[n - 1] = -1;
    let mut perm: Vec<usize> = (0..n).collect();
    perm.swap(0, n - 1);
    AffineWeylElement {
        translation: SimilitudeCoweight {
            entries: coroot,
            similitude: 0,
        },
        finite: FiniteWeylElement { perm },
    }
}

/// The fixed generator `τ` of `Ω`.
pub fn omega_generator(g: usize) -> AffineWeylElement {
    AffineWeylElement {
        translation: SimilitudeCoweight::minuscule(g),
        finite: FiniteWeylElement::half_rotation(g),
    }
}

/// `τ^n`.
pub fn omega_power(g: usize, n: i64) -> AffineWeylElement {
    let base = if n >= 0 {
        omega_generator(g)
    } else {
        omega_generator(g).inverse()
    };
    (0..n.unsigned_abs()).fold(AffineWeylElement::identity(g), |acc, _| &acc * &base)
}

/// Coordinates of type `C_g` with similitude.
#[derive(Clone, Debug)]
pub struct RootDatum {
    pub g: usize,
    pub positive_roots: Vec<PositiveRoot>,
    pub simple_affine_reflections: Vec<AffineWeylElement>,
}

impl RootDatum {
    pub fn new(g: usize) -> Self {
        Self {
            g,
            positive_roots: positive_roots(g).collect(),
            simple_affine_reflections: if g == 0 {
                Vec::new()
            } else {
                (0..=g).map(|i| simple_reflection(g, i)).collect()
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(half: &[i64], c: i64) -> AffineWeylElement {
        AffineWeylElement::translation(SimilitudeCoweight::from_half(half, c))
    }

    #[test]
    fn coweight_invariant_is_checked() {
        assert!(SimilitudeCoweight::new(vec![1, 0], 1).is_ok());
        assert!(matches!(
            SimilitudeCoweight::new(vec![1, 1], 1),
            Err(Error::MalformedCoweight(_))
        ));
        assert!(AffineWeylElement::try_translation(vec![2, 0, 0], 2).is_err());
    }

    #[test]
    fn finite_group_orders() {
        assert_eq!(FiniteWeylElement::all(1).len(), 2);
        assert_eq!(FiniteWeylElement::all(2).len(), 8);
        assert_eq!(FiniteWeylElement::all(3).len(), 48);
        for w in FiniteWeylElement::all(3) {
            assert!(FiniteWeylElement::from_one_line(&w.one_line()).is_ok());
        }
    }

    #[test]
    fn non_symplectic_permutation_rejected() {
        assert!(FiniteWeylElement::from_one_line(&[2, 1, 3, 4]).is_err());
        assert!(FiniteWeylElement::from_one_line(&[2, 1, 4, 3]).is_ok());
    }

    #[test]
    fn root_count_is_g_squared() {
        for g in 0..5 {
            assert_eq!(positive_roots(g).count(), g * g);
        }
    }

    #[test]
    fn compose_examples() {
        let id = AffineWeylElement::identity(2);
        let x = t(&[1, 0], 1).compose(&simple_reflection(2, 0)).unwrap();
        assert_eq!(&id * &x, x);
        assert_eq!(&t(&[1, 0], 1) * &t(&[2, 5], 3), t(&[3, 5], 4));
        // g = 1: s_1 t_(1,0) s_1 = t_(0,1)
        let s1 = simple_reflection(1, 1);
        assert_eq!(&(&s1 * &t(&[1], 1)) * &s1, t(&[0], 1));
        assert!(matches!(
            id.compose(&AffineWeylElement::identity(1)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn lengths_of_small_elements() {
        assert_eq!(AffineWeylElement::identity(3).length(), 0);
        assert_eq!(t(&[1], 1).length(), 1);
        assert_eq!(t(&[1, 1], 1).length(), 3);
        for g in 1..4 {
            for i in 0..=g {
                assert_eq!(simple_reflection(g, i).length(), 1, "s_{i}, g = {g}");
            }
            assert_eq!(omega_generator(g).length(), 0);
        }
    }

    #[test]
    fn translation_inverse() {
        let lam = SimilitudeCoweight::from_half(&[3, -1], 2);
        let x = AffineWeylElement::translation(lam.clone());
        let y = AffineWeylElement::translation(lam.neg());
        assert!((&x * &y).is_identity());
        assert!(AffineWeylElement::translation(SimilitudeCoweight::zero(2)).is_identity());
    }

    #[test]
    fn reduced_words() {
        let id = AffineWeylElement::identity(2);
        let w = id.reduced_word();
        assert!(w.letters.is_empty());
        assert!(w.omega.is_identity());
        for i in 0..=2 {
            assert_eq!(simple_reflection(2, i).reduced_word().letters, vec![i]);
        }
        let tmu = t(&[1, 1], 1);
        let w = tmu.reduced_word();
        assert_eq!(w.letters.len(), 3);
        assert_eq!(w.evaluate(), tmu);
        assert_eq!(w.omega, omega_generator(2));
    }

    #[test]
    fn bruhat_examples() {
        let a = t(&[1], 1);
        let b = t(&[0], 1);
        assert!(a.bruhat_leq(&a));
        assert!(!a.bruhat_leq(&b));
        assert!(!b.bruhat_leq(&a));
        let w = &simple_reflection(2, 0) * &simple_reflection(2, 2);
        assert!(AffineWeylElement::identity(2).bruhat_leq(&w));
        assert!(simple_reflection(2, 2).bruhat_leq(&w));
        assert!(!simple_reflection(2, 1).bruhat_leq(&w));
        // different Ω-components
        assert!(!AffineWeylElement::identity(1).bruhat_leq(&a));
    }

    #[test]
    fn omega_rotates_the_affine_diagram() {
        for g in 1..=3 {
            let tau = omega_generator(g);
            for i in 0..=g {
                let c = simple_reflection(g, i).conjugate_by(&tau);
                assert_eq!(c, simple_reflection(g, g - i), "g = {g}, i = {i}");
            }
        }
    }

    #[test]
    fn text_form_round_trips() {
        let x = &t(&[1, 0], 1) * &simple_reflection(2, 2);
        let text = x.to_string();
        assert_eq!(text, "t[1,0,1,0;1]·[1,3,2,4]");
        assert_eq!(AffineWeylElement::parse(&text).unwrap(), x);
        assert!(AffineWeylElement::parse("t[1,1;1]·[1,2]").is_err());
        let rank0 = omega_generator(0);
        assert_eq!(rank0.to_string(), "t[;1]·[]");
        assert_eq!(AffineWeylElement::parse("t[;1]·[]").unwrap(), rank0);
    }
}
