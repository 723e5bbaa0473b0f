//! The Iwahori–Hecke algebra of the extended affine Weyl group, with
//! Bernstein elements, the central element `z_μ`, Kazhdan–Lusztig
//! polynomials and the multiplicity polynomials `m_w`.
//!
//! Conventions: `(T_s - q)(T_s + 1) = 0` with `q = v²` and `T_ω T_w = T_{ωw}`
//! for `ω ∈ Ω`. For dominant `λ`, `Θ_λ = v^{-l(t_λ)} T_{t_λ}`.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::admissible::{admissible_set_for, project_double_coset, weyl_orbit, DoubleCoset, ParahoricType};
use crate::affine_weyl::{simple_reflection, AffineWeylElement, SimilitudeCoweight};
use crate::boundary::{boundary_image, phi, IsotropicLabel};
use crate::error::{Error, Result};
use crate::laurent::LaurentPolynomial;

fn q() -> LaurentPolynomial {
    LaurentPolynomial::q_pow(1)
}

fn q_minus_one() -> LaurentPolynomial {
    LaurentPolynomial::from_terms([(2, 1), (0, -1)])
}

/// A finite `ℤ[v, v⁻¹]`-combination of the basis elements `T_w`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HeckeElement {
    g: usize,
    terms: BTreeMap<AffineWeylElement, LaurentPolynomial>,
}

impl HeckeElement {
    pub fn zero(g: usize) -> Self {
        Self {
            g,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(g: usize) -> Self {
        Self::basis(&AffineWeylElement::identity(g))
    }

    /// `T_w`.
    pub fn basis(w: &AffineWeylElement) -> Self {
        let mut h = Self::zero(w.rank());
        h.add_term(w.clone(), LaurentPolynomial::one());
        h
    }

    pub fn rank(&self) -> usize {
        self.g
    }

    pub fn add_term(&mut self, w: AffineWeylElement, c: LaurentPolynomial) {
        assert_eq!(w.rank(), self.g, "Hecke rank mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn coeff(&self, w: &AffineWeylElement) -> LaurentPolynomial {
        self.terms.get(w).cloned().unwrap_or_else(LaurentPolynomial::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&AffineWeylElement, &LaurentPolynomial)> {
        self.terms.iter()
    }

    pub fn support(&self) -> BTreeSet<AffineWeylElement> {
        self.terms.keys().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &LaurentPolynomial) -> Self {
        let mut out = Self::zero(self.g);
        for (w, a) in &self.terms {
            out.add_term(w.clone(), a * c);
        }
        out
    }

    /// `T_{s_i} · self`.
    pub fn left_mul_simple(&self, i: usize) -> Self {
        let s = simple_reflection(self.g, i);
        let mut out = Self::zero(self.g);
        for (w, c) in &self.terms {
            let sw = &s * w;
            if sw.length() > w.length() {
                out.add_term(sw, c.clone());
            } else {
                out.add_term(w.clone(), c * &q_minus_one());
                out.add_term(sw, c * &q());
            }
        }
        out
    }

    /// `self · T_{s_i}`.
    pub fn right_mul_simple(&self, i: usize) -> Self {
        let s = simple_reflection(self.g, i);
        let mut out = Self::zero(self.g);
        for (w, c) in &self.terms {
            let ws = w * &s;
            if ws.length() > w.length() {
                out.add_term(ws, c.clone());
            } else {
                out.add_term(w.clone(), c * &q_minus_one());
                out.add_term(ws, c * &q());
            }
        }
        out
    }

    fn left_mul_length_zero(&self, omega: &AffineWeylElement) -> Self {
        debug_assert_eq!(omega.length(), 0);
        Self {
            g: self.g,
            terms: self.terms.iter().map(|(w, c)| (omega * w, c.clone())).collect(),
        }
    }

    fn right_mul_length_zero(&self, omega: &AffineWeylElement) -> Self {
        debug_assert_eq!(omega.length(), 0);
        Self {
            g: self.g,
            terms: self.terms.iter().map(|(w, c)| (w * omega, c.clone())).collect(),
        }
    }

    /// `self · T_x`.
    pub fn right_mul_basis(&self, x: &AffineWeylElement) -> Self {
        let word = x.reduced_word();
        let mut h = self.clone();
        for &i in &word.letters {
            h = h.right_mul_simple(i);
        }
        h.right_mul_length_zero(&word.omega)
    }

    /// `self · other`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.g, other.g, "Hecke rank mismatch");
        let mut out = Self::zero(self.g);
        for (x, c) in &self.terms {
            let prod = t_mul(x, other).scale(c);
            out = &out + &prod;
        }
        out
    }

    /// `self · T_{s_i}^{-1}`.
    fn right_mul_simple_inverse(&self, i: usize) -> Self {
        let q_inv = LaurentPolynomial::q_pow(-1);
        let shift = LaurentPolynomial::from_terms([(-2, 1), (0, -1)]);
        &self.right_mul_simple(i).scale(&q_inv) + &self.scale(&shift)
    }

    /// The bar involution `Σ a_w T_w ↦ Σ ā_w T_{w⁻¹}⁻¹`.
    pub fn bar(&self) -> Self {
        let mut out = Self::zero(self.g);
        for (w, c) in &self.terms {
            out = &out + &t_inv(&w.inverse()).scale(&c.bar());
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &self.mul(other) - &other.mul(self)
    }
}

impl Add for &HeckeElement {
    type Output = HeckeElement;
    fn add(self, rhs: &HeckeElement) -> HeckeElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &HeckeElement {
    type Output = HeckeElement;
    fn sub(self, rhs: &HeckeElement) -> HeckeElement {
        self + &(-rhs)
    }
}

impl Neg for &HeckeElement {
    type Output = HeckeElement;
    fn neg(self) -> HeckeElement {
        HeckeElement {
            g: self.g,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| format!("({c})·T{{{w}}}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `T_x · h`.
pub fn t_mul(x: &AffineWeylElement, h: &HeckeElement) -> HeckeElement {
    let word = x.reduced_word();
    let mut out = h.left_mul_length_zero(&word.omega);
    for &i in word.letters.iter().rev() {
        out = out.left_mul_simple(i);
    }
    out
}

/// `T_w⁻¹`, from `T_s⁻¹ = q⁻¹ T_s + (q⁻¹ - 1)` along a reduced word.
pub fn t_inv(w: &AffineWeylElement) -> HeckeElement {
    let word = w.reduced_word();
    let mut h = HeckeElement::basis(&word.omega.inverse());
    for &i in word.letters.iter().rev() {
        h = h.right_mul_simple_inverse(i);
    }
    h
}

fn normalized_translation(lambda: &SimilitudeCoweight) -> HeckeElement {
    let t = AffineWeylElement::translation(lambda.clone());
    let len = t.length() as i32;
    HeckeElement::basis(&t).scale(&LaurentPolynomial::v_pow(-len))
}

/// `Θ_{λ₁} Θ_{λ₂}⁻¹` for dominant `λ₁, λ₂`.
pub fn theta_from_decomposition(
    lambda1: &SimilitudeCoweight,
    lambda2: &SimilitudeCoweight,
) -> Result<HeckeElement> {
    for l in [lambda1, lambda2] {
        if !l.is_dominant() {
            return Err(Error::NotDominant(l.to_string()));
        }
    }
    let t2 = AffineWeylElement::translation(lambda2.clone());
    let inv = t_inv(&t2).scale(&LaurentPolynomial::v_pow(t2.length() as i32));
    Ok(normalized_translation(lambda1).mul(&inv))
}

/// The smallest dominant `λ₂` making `λ + λ₂` dominant.
fn dominant_complement(lambda: &SimilitudeCoweight) -> SimilitudeCoweight {
    let e = lambda.entries();
    let n = e.len();
    let mut entries = vec![0i64; n];
    for i in (0..n.saturating_sub(1)).rev() {
        entries[i] = entries[i + 1] + (e[i + 1] - e[i]).max(0);
    }
    let c = entries.first().copied().unwrap_or(0);
    SimilitudeCoweight::new(entries, c).expect("gap-sum coweight is symplectic")
}

/// The Bernstein element `Θ_λ`.
pub fn theta(lambda: &SimilitudeCoweight) -> HeckeElement {
    if lambda.is_dominant() {
        return normalized_translation(lambda);
    }
    let lambda2 = dominant_complement(lambda);
    theta_from_decomposition(&lambda.add(&lambda2), &lambda2).expect("both parts dominant")
}

/// `z_μ = Σ_{λ ∈ W_0 μ} Θ_λ`.
pub fn z_mu_for(mu: &SimilitudeCoweight) -> Result<HeckeElement> {
    let mut z = HeckeElement::zero(mu.rank());
    for lambda in weyl_orbit(mu)? {
        z = &z + &theta(&lambda);
    }
    Ok(z)
}

/// `z_μ` for the minuscule coweight `μ_V`.
pub fn z_mu(g: usize) -> HeckeElement {
    z_mu_for(&SimilitudeCoweight::minuscule(g)).expect("μ_V is dominant")
}

/// Kazhdan–Lusztig polynomials `P_{x,w}` (as polynomials in `v`, even
/// powers only) for every `w` of a downward-closed set.
#[derive(Clone, Debug)]
#[derive(Default)]
pub struct KlTable {
    polys: BTreeMap<AffineWeylElement, BTreeMap<AffineWeylElement, LaurentPolynomial>>,
}

impl KlTable {
    /// `set` must be closed downward in the Bruhat order.
    pub fn for_set(set: &BTreeSet<AffineWeylElement>) -> Self {
        let mut by_length: Vec<&AffineWeylElement> = set.iter().collect();
        by_length.sort_by_key(|w| w.length());
        let mut table = Self {
            polys: BTreeMap::new(),
        };
        for w in by_length {
            table.insert(w);
        }
        table
    }

    /// The table over the lower interval of `w`.
    pub fn for_element(w: &AffineWeylElement) -> Self {
        Self::for_set(&crate::admissible::lower_interval(w))
    }

    fn insert(&mut self, w: &AffineWeylElement) {
        if self.polys.contains_key(w) {
            return;
        }
        let lw = w.length();
        if lw == 0 {
            self.polys
                .insert(w.clone(), BTreeMap::from([(w.clone(), LaurentPolynomial::one())]));
            return;
        }
        let i = w.left_descents()[0];
        let s = simple_reflection(w.rank(), i);
        let v = &s * w;
        let below_v = self
            .polys
            .get(&v)
            .unwrap_or_else(|| panic!("KL table is missing {v}: set not downward closed"))
            .clone();
        let lv = v.length();
        // Terms z < v with sz < z and μ(z, v) ≠ 0.
        let corrections: Vec<(AffineWeylElement, i64, usize)> = below_v
            .iter()
            .filter(|(z, _)| *z != &v)
            .filter_map(|(z, p)| {
                let lz = z.length();
                if (lv - lz).is_multiple_of(2) {
                    return None;
                }
                let mu = p.coeff((lv - lz - 1) as i32);
                (mu != 0 && (&s * z).length() < lz).then(|| (z.clone(), mu, lz))
            })
            .collect();
        let mut lower: BTreeSet<AffineWeylElement> = below_v.keys().cloned().collect();
        lower.extend(below_v.keys().map(|x| &s * x));
        let mut column = BTreeMap::new();
        for x in &lower {
            let sx = &s * x;
            let lx = x.length();
            let c = (sx.length() < lx) as i32;
            let get = |y: &AffineWeylElement| below_v.get(y).cloned().unwrap_or_default();
            let mut p = get(&sx).shift(2 * (1 - c)) + get(x).shift(2 * c);
            for (z, mu, lz) in &corrections {
                let pxz = self.polys[z].get(x).cloned().unwrap_or_default();
                if !pxz.is_zero() {
                    p -= &pxz.scale(*mu).shift((lw - lz) as i32);
                }
            }
            if !p.is_zero() {
                if x != w {
                    let top = p.max_exponent().unwrap();
                    assert!(
                        (top as usize) < lw - lx,
                        "KL degree bound violated for P({x}, {w}) = {p}"
                    );
                }
                column.insert(x.clone(), p);
            }
        }
        assert!(column.get(w).is_some_and(|p| p.is_one()), "P(w, w) != 1 for {w}");
        self.polys.insert(w.clone(), column);
    }

    pub fn contains(&self, w: &AffineWeylElement) -> bool {
        self.polys.contains_key(w)
    }

    /// `P_{x,w}`; zero unless `x ≤ w`.
    pub fn get(&self, x: &AffineWeylElement, w: &AffineWeylElement) -> LaurentPolynomial {
        self.polys
            .get(w)
            .unwrap_or_else(|| panic!("{w} is not in the KL table"))
            .get(x)
            .cloned()
            .unwrap_or_default()
    }

    pub fn column(&self, w: &AffineWeylElement) -> &BTreeMap<AffineWeylElement, LaurentPolynomial> {
        &self.polys[w]
    }

    pub fn elements(&self) -> impl Iterator<Item = &AffineWeylElement> {
        self.polys.keys()
    }

    /// `C'_w = v^{-l(w)} Σ_{x ≤ w} P_{x,w} T_x`.
    pub fn c_prime(&self, w: &AffineWeylElement) -> HeckeElement {
        let shift = -(w.length() as i32);
        let mut h = HeckeElement::zero(w.rank());
        for (x, p) in &self.polys[w] {
            h.add_term(x.clone(), p.shift(shift));
        }
        h
    }

    /// Coefficients of `h` in the basis `C'_w`. Every support element of
    /// `h` must be in the table.
    pub fn expand(&self, h: &HeckeElement) -> BTreeMap<AffineWeylElement, LaurentPolynomial> {
        let mut rest = h.clone();
        let mut out = BTreeMap::new();
        while let Some(top) = rest.support().into_iter().max_by_key(|w| (w.length(), w.clone())) {
            let c = rest.coeff(&top).shift(top.length() as i32);
            rest = &rest - &self.c_prime(&top).scale(&c);
            out.insert(top, c);
        }
        out
    }
}


/// `P_{x,w}`, computed over the lower interval of `w`.
pub fn kl_polynomial(x: &AffineWeylElement, w: &AffineWeylElement) -> LaurentPolynomial {
    if !x.bruhat_leq(w) {
        return LaurentPolynomial::zero();
    }
    KlTable::for_element(w).get(x, w)
}

/// `m_w = (-v)^{d - l(w)} c_w` from the expansion `z_μ = Σ c_w C'_w`, where
/// `d = l(t_μ)`.
pub fn multiplicities_for(
    mu: &SimilitudeCoweight,
    parahoric: &ParahoricType,
) -> Result<BTreeMap<DoubleCoset, LaurentPolynomial>> {
    if !parahoric.is_iwahori() {
        return Err(Error::NotIwahori);
    }
    if parahoric.rank() != mu.rank() {
        return Err(Error::DimensionMismatch {
            expected: mu.rank(),
            found: parahoric.rank(),
        });
    }
    let d = AffineWeylElement::translation(mu.clone()).length() as i32;
    let adm = admissible_set_for(mu)?;
    let table = KlTable::for_set(&adm);
    let z = z_mu_for(mu)?;
    Ok(table
        .expand(&z)
        .into_iter()
        .map(|(w, c)| {
            let e = d - w.length() as i32;
            let sign = if e % 2 == 0 { 1 } else { -1 };
            (project_double_coset(&w, parahoric), c.shift(e).scale(sign))
        })
        .collect())
}

/// `m_w` for `μ_V` at Iwahori level.
pub fn multiplicities(parahoric: &ParahoricType) -> Result<BTreeMap<DoubleCoset, LaurentPolynomial>> {
    multiplicities_for(&SimilitudeCoweight::minuscule(parahoric.rank()), parahoric)
}

/// A failure of multiplicity conservation along `φ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConservationMismatch {
    pub boundary: DoubleCoset,
    pub expected: LaurentPolynomial,
    pub found: LaurentPolynomial,
}

/// Compare `m_{φ(w')}` with `m_{w'}` over the Iwahori boundary set of
/// `label`. The `v`-power relating them is read off at the first boundary
/// coset and then required at all others; returns that exponent.
pub fn multiplicity_conservation(
    label: &IsotropicLabel,
) -> Result<std::result::Result<i32, ConservationMismatch>> {
    let g = label.rank();
    let iw = ParahoricType::iwahori(g);
    let ambient = multiplicities(&iw)?;
    let boundary_type = ParahoricType::iwahori(label.boundary_rank());
    let inner = multiplicities(&boundary_type)?;
    let mut shift = None;
    for wp in boundary_image(label, &iw) {
        let w = phi(label, &iw, &wp)?;
        let m_inner = inner.get(&wp).cloned().unwrap_or_default();
        let m_outer = ambient.get(&w).cloned().unwrap_or_default();
        let s = *shift.get_or_insert_with(|| {
            match (m_outer.min_exponent(), m_inner.min_exponent()) {
                (Some(a), Some(b)) => a - b,
                _ => 0,
            }
        });
        if m_inner.shift(s) != m_outer {
            return Ok(Err(ConservationMismatch {
                boundary: wp,
                expected: m_inner.shift(s),
                found: m_outer,
            }));
        }
    }
    Ok(Ok(shift.unwrap_or(0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::admissible::admissible_set;
    use crate::affine_weyl::omega_generator;

    fn t(half: &[i64], c: i64) -> AffineWeylElement {
        AffineWeylElement::translation(SimilitudeCoweight::from_half(half, c))
    }

    fn lp(terms: &[(i32, i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(terms.iter().copied())
    }

    #[test]
    fn quadratic_relation() {
        for g in 1..=2 {
            for i in 0..=g {
                let s = simple_reflection(g, i);
                let ts = HeckeElement::basis(&s);
                let sq = t_mul(&s, &ts);
                let mut expected = HeckeElement::basis(&s).scale(&q_minus_one());
                expected.add_term(AffineWeylElement::identity(g), q());
                assert_eq!(sq, expected);
                assert_eq!(t_mul(&s, &t_inv(&s)), HeckeElement::one(g));
            }
        }
    }

    #[test]
    fn omega_acts_by_translation() {
        let tau = omega_generator(2);
        let s = simple_reflection(2, 1);
        assert_eq!(
            t_mul(&tau, &HeckeElement::basis(&s)),
            HeckeElement::basis(&(&tau * &s))
        );
    }

    #[test]
    fn inverse_of_translation() {
        let x = t(&[1], 1);
        let inv = t_inv(&x);
        assert_eq!(t_mul(&x, &inv), HeckeElement::one(1));
        assert_eq!(inv.mul(&HeckeElement::basis(&x)), HeckeElement::one(1));
        // t_{(1,0)} = s_0 τ up to length zero, so the inverse has two terms.
        assert_eq!(inv.support().len(), 2);
        assert_eq!(t_inv(&AffineWeylElement::identity(2)), HeckeElement::one(2));
    }

    #[test]
    fn theta_is_independent_of_decomposition() {
        let lambda = SimilitudeCoweight::from_half(&[0], 1);
        let eta = SimilitudeCoweight::regular_dominant(1);
        let a = theta(&lambda);
        let b = theta_from_decomposition(&lambda.add(&eta), &eta).unwrap();
        assert_eq!(a, b);
        assert_eq!(theta(&SimilitudeCoweight::zero(2)), HeckeElement::one(2));
        assert!(theta_from_decomposition(&lambda, &eta).is_err());
    }

    #[test]
    fn z_mu_rank_one() {
        let z = z_mu(1);
        assert_eq!(z.support(), admissible_set(1));
        let tau = omega_generator(1);
        assert_eq!(z.coeff(&tau), lp(&[(-1, 1), (1, -1)]));
        for w in admissible_set(1) {
            if w.length() == 1 {
                assert_eq!(z.coeff(&w), lp(&[(-1, 1)]));
            }
        }
        assert_eq!(z.bar(), z);
        assert_eq!(
            z_mu_for(&SimilitudeCoweight::zero(2)).unwrap(),
            HeckeElement::one(2)
        );
    }

    #[test]
    fn kl_rank_one() {
        let adm = admissible_set(1);
        let table = KlTable::for_set(&adm);
        let tau = omega_generator(1);
        for w in &adm {
            assert!(table.get(w, w).is_one());
            if w != &tau {
                assert!(table.get(&tau, w).is_one());
            }
        }
        let m = multiplicities(&ParahoricType::iwahori(1)).unwrap();
        assert_eq!(m.len(), 3);
        for (w, p) in &m {
            if w.length() == 1 {
                assert!(p.is_one());
            } else {
                assert_eq!(p, &lp(&[(0, 1), (2, 1)]));
            }
        }
    }

    #[test]
    fn c_prime_is_bar_invariant() {
        let adm = admissible_set(2);
        let table = KlTable::for_set(&adm);
        for w in &adm {
            let c = table.c_prime(w);
            assert_eq!(c.bar(), c, "C'_{w}");
        }
    }

    #[test]
    fn multiplicities_require_iwahori() {
        assert_eq!(
            multiplicities(&ParahoricType::new(2, vec![1]).unwrap()),
            Err(Error::NotIwahori)
        );
        let m0 = multiplicities_for(&SimilitudeCoweight::zero(2), &ParahoricType::iwahori(2)).unwrap();
        assert_eq!(m0.len(), 1);
        let (w, p) = m0.iter().next().unwrap();
        assert!(w.min_rep().is_identity() && p.is_one());
    }
}
