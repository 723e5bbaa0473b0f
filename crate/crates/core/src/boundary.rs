//! Boundary strata of the minimal compactification, indexed by standard
//! isotropic subspaces, and the embedding `φ` of boundary admissible sets.

use std::collections::BTreeSet;
use std::fmt;

use crate::admissible::{admissible_image, project_double_coset, DoubleCoset, ParahoricType};
use crate::affine_weyl::{positive_roots, AffineWeylElement, FiniteWeylElement, PositiveRoot, SimilitudeCoweight};
use crate::error::{Error, Result};

/// `d_V = g(g+1)/2`, the relative dimension of the Siegel variety of genus `g`.
pub fn siegel_dimension(g: usize) -> usize {
    g * (g + 1) / 2
}

/// The standard totally isotropic subspace spanned by `x_1, …, x_k`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct IsotropicLabel {
    g: usize,
    k: usize,
}

impl IsotropicLabel {
    pub fn new(g: usize, k: usize) -> Result<Self> {
        if k > g {
            return Err(Error::OutOfRange {
                what: "isotropic dimension",
                value: k as i64,
                lo: 0,
                hi: g as i64,
            });
        }
        Ok(Self { g, k })
    }

    pub fn open(g: usize) -> Self {
        Self { g, k: 0 }
    }

    pub fn rank(&self) -> usize {
        self.g
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    /// Rank `g - k` of the symplectic quotient `V'^⊥ / V'`.
    pub fn boundary_rank(&self) -> usize {
        self.g - self.k
    }

    /// `d_V - d_{V'}`.
    pub fn dimension_drop(&self) -> usize {
        siegel_dimension(self.g) - siegel_dimension(self.boundary_rank())
    }

    pub fn all(g: usize) -> impl Iterator<Item = Self> {
        (0..=g).map(move |k| Self { g, k })
    }
}

impl fmt::Display for IsotropicLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V{}", self.k)
    }
}

/// A flag `0 ⊊ V^r ⊊ ⋯ ⊊ V^0` of standard isotropic subspaces, stored by
/// its dimensions `δ_r < ⋯ < δ_0`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct IsotropicFlag {
    g: usize,
    dims: Vec<usize>,
}

impl IsotropicFlag {
    /// `dims` in increasing order `δ_r, …, δ_0`.
    pub fn new(g: usize, dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidConfig("a flag has at least one step".into()));
        }
        if dims[0] == 0 || dims.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidConfig(format!(
                "flag dimensions {dims:?} are not strictly increasing and positive"
            )));
        }
        if *dims.last().unwrap() > g {
            return Err(Error::OutOfRange {
                what: "flag dimension",
                value: *dims.last().unwrap() as i64,
                lo: 1,
                hi: g as i64,
            });
        }
        Ok(Self { g, dims })
    }

    pub fn rank(&self) -> usize {
        self.g
    }

    /// Increasing dimensions `δ_r, …, δ_0`.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `δ_i`, counted from the top: `delta(0) = δ_0 = dim V^0`.
    pub fn delta(&self, i: usize) -> usize {
        self.dims[self.dims.len() - 1 - i]
    }

    /// `♯V• = r`.
    pub fn sharp(&self) -> usize {
        self.dims.len() - 1
    }

    /// `(-1)^{♯V•}`.
    pub fn sign(&self) -> i64 {
        if self.sharp().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn top(&self) -> IsotropicLabel {
        IsotropicLabel {
            g: self.g,
            k: self.delta(0),
        }
    }
}

impl fmt::Display for IsotropicFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All standard flags with `V^0 = V'`, ordered by `♯V•` and then
/// lexicographically.
pub fn enumerate_flags(label: &IsotropicLabel) -> Vec<IsotropicFlag> {
    let k = label.k;
    if k == 0 {
        return Vec::new();
    }
    let mut out: Vec<IsotropicFlag> = (0u64..1 << (k - 1))
        .map(|mask| {
            let mut dims: Vec<usize> = (1..k).filter(|d| mask >> (d - 1) & 1 == 1).collect();
            dims.push(k);
            IsotropicFlag { g: label.g, dims }
        })
        .collect();
    out.sort_by(|a, b| (a.sharp(), &a.dims).cmp(&(b.sharp(), &b.dims)));
    out
}

/// A factor of the Levi quotient of the parabolic stabilising a flag.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum LeviBlock {
    /// `GL` acting on the coordinates `start .. start + size`.
    GeneralLinear { start: usize, size: usize },
    /// `GSp` acting on the middle `2·rank` coordinates.
    Symplectic { rank: usize },
}

/// The parabolic `P_{V•}`: its Levi blocks and nilradical roots.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParabolicData {
    pub flag: Option<IsotropicFlag>,
    pub g: usize,
    pub levi_blocks: Vec<LeviBlock>,
    pub nilpotent_roots: Vec<PositiveRoot>,
    block_of: Vec<usize>,
}

impl ParabolicData {
    pub fn new(flag: &IsotropicFlag) -> Self {
        Self::build(flag.g, Some(flag.clone()))
    }

    /// The whole group: no flag, trivial nilradical.
    pub fn whole_group(g: usize) -> Self {
        Self::build(g, None)
    }

    fn build(g: usize, flag: Option<IsotropicFlag>) -> Self {
        let n = 2 * g;
        let dims: Vec<usize> = flag.as_ref().map(|f| f.dims.clone()).unwrap_or_default();
        let top = dims.last().copied().unwrap_or(0);
        let mut levi_blocks = Vec::new();
        let mut block_of = vec![0; n];
        let mut start = 0;
        for (b, &d) in dims.iter().enumerate() {
            levi_blocks.push(LeviBlock::GeneralLinear {
                start,
                size: d - start,
            });
            for p in start..d {
                block_of[p] = b;
                // The dual coordinates get their own label.
                block_of[n - 1 - p] = dims.len() + 1 + b;
            }
            start = d;
        }
        levi_blocks.push(LeviBlock::Symplectic { rank: g - top });
        for p in top..n - top {
            block_of[p] = dims.len();
        }
        let nilpotent_roots = positive_roots(g)
            .filter(|r| block_of[r.i] != block_of[r.j])
            .collect();
        Self {
            flag,
            g,
            levi_blocks,
            nilpotent_roots,
            block_of,
        }
    }

    pub fn in_levi(&self, root: &PositiveRoot) -> bool {
        self.block_of[root.i] == self.block_of[root.j]
    }

    /// Positive roots of the Levi.
    pub fn levi_roots(&self) -> Vec<PositiveRoot> {
        positive_roots(self.g).filter(|r| self.in_levi(r)).collect()
    }

    /// Simple roots of the Levi (with respect to the induced Borel).
    pub fn levi_simple_roots(&self) -> Vec<PositiveRoot> {
        let g = self.g;
        let mut simple: Vec<PositiveRoot> = (0..g.saturating_sub(1))
            .map(|i| PositiveRoot { i, j: i + 1 })
            .collect();
        if g > 0 {
            simple.push(PositiveRoot { i: g - 1, j: g });
        }
        simple.into_iter().filter(|r| self.in_levi(r)).collect()
    }

    pub fn gl_block_sizes(&self) -> Vec<usize> {
        self.levi_blocks
            .iter()
            .filter_map(|b| match b {
                LeviBlock::GeneralLinear { size, .. } => Some(*size),
                LeviBlock::Symplectic { .. } => None,
            })
            .collect()
    }

    /// Whether `Γ^l_{V•}` is trivial at level `n ≥ 3`: every `GL` block has size one.
    pub fn arithmetic_part_trivial(&self) -> bool {
        self.gl_block_sizes().iter().all(|&s| s == 1)
    }
}

/// `𝒟'`: the image of the lattice chain in `V'^⊥ / V'`.
pub fn induced_parahoric(label: &IsotropicLabel, parahoric: &ParahoricType) -> ParahoricType {
    assert_eq!(label.g, parahoric.rank(), "rank mismatch");
    let k = label.k;
    if k == 0 {
        return parahoric.clone();
    }
    let indices = parahoric
        .indices()
        .iter()
        .filter(|&&d| d > k)
        .map(|&d| d - k)
        .collect();
    ParahoricType::from_raw(label.boundary_rank(), indices)
}

/// The group embedding `ι : W̃(GSp_{2g'}) → W̃(GSp_{2g})`, `g = g' + k`:
/// translations go to `(c', …, c', λ', 0, …, 0)` and finite parts act on
/// the middle block.
pub fn embed(label: &IsotropicLabel, x: &AffineWeylElement) -> AffineWeylElement {
    assert_eq!(x.rank(), label.boundary_rank(), "rank mismatch");
    let k = label.k;
    let lambda = x.translation_part();
    let c = lambda.similitude();
    let mut entries = vec![c; k];
    entries.extend_from_slice(lambda.entries());
    entries.extend(std::iter::repeat_n(0, k));
    let n = 2 * label.g;
    let sigma = x.finite_part();
    let one_line: Vec<usize> = (0..n)
        .map(|p| {
            if p < k || p >= n - k {
                p + 1
            } else {
                k + sigma.image(p - k) + 1
            }
        })
        .collect();
    AffineWeylElement::new(
        SimilitudeCoweight::new(entries, c).expect("embedded coweight is symplectic"),
        FiniteWeylElement::from_one_line(&one_line).expect("embedded permutation is symplectic"),
    )
    .expect("ranks agree")
}

/// `φ_{V'} : W_{𝒟'} → W_𝒟`.
pub fn phi(
    label: &IsotropicLabel,
    parahoric: &ParahoricType,
    w_prime: &DoubleCoset,
) -> Result<DoubleCoset> {
    let induced = induced_parahoric(label, parahoric);
    if w_prime.parahoric() != &induced {
        return Err(Error::InvalidParahoric(format!(
            "boundary coset has type {}, expected {}",
            w_prime.parahoric(),
            induced
        )));
    }
    if !admissible_image(&induced).contains(w_prime) {
        return Err(Error::NotAdmissible(w_prime.to_string()));
    }
    Ok(phi_unchecked(label, parahoric, w_prime))
}

fn phi_unchecked(
    label: &IsotropicLabel,
    parahoric: &ParahoricType,
    w_prime: &DoubleCoset,
) -> DoubleCoset {
    project_double_coset(&embed(label, w_prime.min_rep()), parahoric)
}

/// `W_{𝒟'}` for the boundary stratum `V'`.
pub fn boundary_image(label: &IsotropicLabel, parahoric: &ParahoricType) -> Vec<DoubleCoset> {
    admissible_image(&induced_parahoric(label, parahoric))
}

/// The `w'` with `φ_{V'}(w') = w`, if any.
pub fn incidence(w: &DoubleCoset, label: &IsotropicLabel) -> Option<DoubleCoset> {
    if label.k == 0 {
        return Some(w.clone());
    }
    let parahoric = w.parahoric();
    boundary_image(label, parahoric)
        .into_iter()
        .find(|wp| &phi_unchecked(label, parahoric, wp) == w)
}

/// `φ_{V'}(W_{𝒟'})` as a set.
pub fn phi_image(label: &IsotropicLabel, parahoric: &ParahoricType) -> BTreeSet<DoubleCoset> {
    boundary_image(label, parahoric)
        .iter()
        .map(|wp| phi_unchecked(label, parahoric, wp))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::admissible::admissible_set;
    use crate::affine_weyl::{omega_generator, simple_reflection};

    fn t(half: &[i64], c: i64) -> AffineWeylElement {
        AffineWeylElement::translation(SimilitudeCoweight::from_half(half, c))
    }

    #[test]
    fn flags() {
        let f = |g, k| enumerate_flags(&IsotropicLabel::new(g, k).unwrap());
        assert!(f(3, 0).is_empty());
        assert_eq!(f(3, 1).iter().map(|x| x.dims().to_vec()).collect::<Vec<_>>(), vec![vec![1]]);
        assert_eq!(
            f(3, 2).iter().map(|x| x.dims().to_vec()).collect::<Vec<_>>(),
            vec![vec![2], vec![1, 2]]
        );
        assert_eq!(f(3, 3).len(), 4);
        assert_eq!(f(5, 5).len(), 16);
        for k in 0..=5 {
            let total: i64 = f(5, k).iter().map(|x| x.sign()).sum();
            let expected = if k == 1 { 1 } else { 0 };
            // k = 0 contributes through the open stratum, not through flags.
            assert_eq!(total, expected, "k = {k}");
        }
        assert!(IsotropicFlag::new(2, vec![2, 1]).is_err());
        assert!(IsotropicFlag::new(2, vec![3]).is_err());
    }

    #[test]
    fn parabolic_blocks() {
        let siegel = ParabolicData::new(&IsotropicFlag::new(2, vec![2]).unwrap());
        assert_eq!(siegel.nilpotent_roots.len(), 3);
        assert_eq!(siegel.gl_block_sizes(), vec![2]);
        assert!(!siegel.arithmetic_part_trivial());
        let klingen = ParabolicData::new(&IsotropicFlag::new(2, vec![1]).unwrap());
        assert_eq!(klingen.nilpotent_roots.len(), 3);
        assert!(klingen.arithmetic_part_trivial());
        assert_eq!(klingen.levi_simple_roots(), vec![PositiveRoot { i: 1, j: 2 }]);
        let borel = ParabolicData::new(&IsotropicFlag::new(2, vec![1, 2]).unwrap());
        assert_eq!(borel.nilpotent_roots.len(), 4);
        assert!(borel.levi_roots().is_empty());
        assert!(ParabolicData::whole_group(3).nilpotent_roots.is_empty());
        for g in 1..=3 {
            for k in 1..=g {
                for flag in enumerate_flags(&IsotropicLabel::new(g, k).unwrap()) {
                    let p = ParabolicData::new(&flag);
                    let gl: usize = p.gl_block_sizes().iter().sum();
                    let sp = match p.levi_blocks.last() {
                        Some(LeviBlock::Symplectic { rank }) => *rank,
                        _ => unreachable!(),
                    };
                    assert_eq!(2 * gl + 2 * sp, 2 * g);
                }
            }
        }
    }

    #[test]
    fn induced_types() {
        let iw = ParahoricType::iwahori(2);
        assert_eq!(induced_parahoric(&IsotropicLabel::open(2), &iw), iw);
        assert_eq!(
            induced_parahoric(&IsotropicLabel::new(2, 1).unwrap(), &iw),
            ParahoricType::iwahori(1)
        );
        let point = induced_parahoric(&IsotropicLabel::new(2, 2).unwrap(), &iw);
        assert_eq!(point.rank(), 0);
        let siegel = ParahoricType::new(3, vec![3]).unwrap();
        assert_eq!(
            induced_parahoric(&IsotropicLabel::new(3, 1).unwrap(), &siegel),
            ParahoricType::new(2, vec![2]).unwrap()
        );
        let klingen = ParahoricType::new(2, vec![1]).unwrap();
        assert_eq!(
            induced_parahoric(&IsotropicLabel::new(2, 1).unwrap(), &klingen),
            ParahoricType::hyperspecial(1)
        );
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let label = IsotropicLabel::new(3, 1).unwrap();
        let gens: Vec<_> = (0..=2)
            .map(|i| simple_reflection(2, i))
            .chain([omega_generator(2)])
            .collect();
        for x in &gens {
            for y in &gens {
                assert_eq!(embed(&label, &(x * y)), &embed(&label, x) * &embed(&label, y));
            }
        }
        assert_eq!(
            embed(&label, &AffineWeylElement::translation(SimilitudeCoweight::minuscule(2))),
            AffineWeylElement::translation(SimilitudeCoweight::minuscule(3))
        );
    }

    #[test]
    fn phi_rank_two() {
        let iw = ParahoricType::iwahori(2);
        let label = IsotropicLabel::new(2, 1).unwrap();
        let boundary = boundary_image(&label, &iw);
        assert_eq!(boundary.len(), 3);
        let images: Vec<_> = boundary.iter().map(|w| phi(&label, &iw, w).unwrap()).collect();
        let distinct: BTreeSet<_> = images.iter().collect();
        assert_eq!(distinct.len(), 3);
        let adm = admissible_set(2);
        for (wp, w) in boundary.iter().zip(&images) {
            assert_eq!(w.length(), wp.length() + 2);
            assert!(adm.contains(w.min_rep()));
            assert_eq!(incidence(w, &label).as_ref(), Some(wp));
        }
        // φ(τ') = t_{(1,1)} s_2, the minimal element of the image.
        let tau = project_double_coset(&omega_generator(1), &ParahoricType::iwahori(1));
        let expected = &t(&[1, 1], 1) * &simple_reflection(2, 2);
        assert_eq!(phi(&label, &iw, &tau).unwrap().min_rep(), &expected);
        // The top translation does have a preimage.
        let top = project_double_coset(&t(&[1, 1], 1), &iw);
        let pre = incidence(&top, &label).unwrap();
        assert_eq!(pre.min_rep(), &t(&[1], 1));
        assert_eq!(incidence(&top, &IsotropicLabel::open(2)), Some(top.clone()));
    }

    #[test]
    fn phi_rejects_non_admissible() {
        let iw = ParahoricType::iwahori(2);
        let label = IsotropicLabel::new(2, 1).unwrap();
        let bad = project_double_coset(&t(&[2], 2), &ParahoricType::iwahori(1));
        assert!(matches!(phi(&label, &iw, &bad), Err(Error::NotAdmissible(_))));
    }

    #[test]
    fn point_stratum() {
        let iw = ParahoricType::iwahori(2);
        let label = IsotropicLabel::new(2, 2).unwrap();
        let boundary = boundary_image(&label, &iw);
        assert_eq!(boundary.len(), 1);
        let w = phi(&label, &iw, &boundary[0]).unwrap();
        assert_eq!(w.min_rep(), &t(&[1, 1], 1));
        assert_eq!(w.length(), 3);
    }
}
