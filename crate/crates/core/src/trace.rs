//! The semi-simple trace table on the minimal compactification, with one
//! cell per pair (boundary stratum, KR stratum of the boundary).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::admissible::{admissible_image, DoubleCoset, ParahoricType};
use crate::boundary::{
    enumerate_flags, induced_parahoric, phi, siegel_dimension, IsotropicFlag, IsotropicLabel,
    ParabolicData,
};
use crate::error::{Error, Result};
use crate::hecke::{z_mu, HeckeElement};
use crate::kostant::{irreducible_weights, lie_n_cohomology, r_a_flag, Weight, WeightModule};
use crate::laurent::{rational_pow, LaurentPolynomial, SurdValue};

/// A stratum `𝒜^{w'}_{V'}` of the minimal compactification.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct StratumLabel {
    pub boundary: IsotropicLabel,
    pub kr: DoubleCoset,
}

impl fmt::Display for StratumLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.boundary, self.kr)
    }
}

/// Number of `Γ_V`-orbits of flags per dimension sequence; one by default.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FlagMultiplicities {
    overrides: BTreeMap<Vec<usize>, i64>,
}

impl FlagMultiplicities {
    pub fn set(&mut self, dims: Vec<usize>, multiplicity: i64) {
        self.overrides.insert(dims, multiplicity);
    }

    pub fn get(&self, flag: &IsotropicFlag) -> i64 {
        self.overrides.get(flag.dims()).copied().unwrap_or(1)
    }
}

/// One signed summand `(-1)^{♯V•} · R_{a,V•}(RInv(Lie N_{V•}, R))`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FlagTerm {
    pub sign: i64,
    pub multiplicity: i64,
    /// `None` for the open stratum, where the term is `R` itself.
    pub flag: Option<IsotropicFlag>,
    pub module: WeightModule,
}

impl FlagTerm {
    pub fn is_explicit(&self) -> bool {
        self.module.is_explicit()
    }
}

/// The signed formal sum over flags attached to a boundary stratum.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoundaryFactor {
    pub label: IsotropicLabel,
    pub terms: Vec<FlagTerm>,
}

impl BoundaryFactor {
    pub fn is_explicit(&self) -> bool {
        self.terms.iter().all(FlagTerm::is_explicit)
    }

    pub fn signed_term_count(&self) -> i64 {
        self.terms.iter().map(|t| t.sign).sum()
    }
}

fn check_purity(highest: &Weight, a: i64) -> Result<()> {
    let found = highest.central();
    if found != a {
        return Err(Error::NotPure { expected: a, found });
    }
    Ok(())
}

fn symbolic_node(parabolic: &ParabolicData) -> String {
    let blocks: Vec<String> = parabolic
        .gl_block_sizes()
        .iter()
        .map(|s| format!("GL{s}"))
        .collect();
    format!("RInv(Γ^l[{}], -)", blocks.join("×"))
}

/// `Σ_{V•} (-1)^{♯V•} R_{a,V•}(RInv(Lie N_{V•}, R))` over flags ending at `V'`.
pub fn boundary_factor(label: &IsotropicLabel, highest: &Weight, a: i64) -> Result<BoundaryFactor> {
    boundary_factor_with(label, highest, a, &FlagMultiplicities::default())
}

pub fn boundary_factor_with(
    label: &IsotropicLabel,
    highest: &Weight,
    a: i64,
    multiplicities: &FlagMultiplicities,
) -> Result<BoundaryFactor> {
    check_purity(highest, a)?;
    let g = label.rank();
    if label.dim() == 0 {
        let module = WeightModule::concentrated(g, irreducible_weights(g, highest)?);
        return Ok(BoundaryFactor {
            label: *label,
            terms: vec![FlagTerm {
                sign: 1,
                multiplicity: 1,
                flag: None,
                module,
            }],
        });
    }
    let mut terms = Vec::new();
    for flag in enumerate_flags(label) {
        let parabolic = ParabolicData::new(&flag);
        let mut module = r_a_flag(&lie_n_cohomology(&parabolic, highest)?, &flag, a, g)?;
        if !parabolic.arithmetic_part_trivial() {
            module.symbolic_factors.push(symbolic_node(&parabolic));
        }
        terms.push(FlagTerm {
            sign: flag.sign(),
            multiplicity: multiplicities.get(&flag),
            flag: Some(flag),
            module,
        });
    }
    Ok(BoundaryFactor {
        label: *label,
        terms,
    })
}

/// A cell of the table. The three factors are kept apart; the value is
/// only ever formed by [`TraceCell::evaluate_at`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TraceCell {
    pub stratum: StratumLabel,
    /// Twice the exponent of `p` in `√(p^{r·d_V})`, i.e. `r·d_V`.
    pub prefactor_twice_exponent: u64,
    pub r: u64,
    /// Ambient `d_V`.
    pub d_v: u64,
    pub bernstein_value: LaurentPolynomial,
    pub boundary_factor: BoundaryFactor,
}

impl TraceCell {
    /// The exponent `r·d_V/2` as a rational.
    pub fn prefactor_exponent(&self) -> BigRational {
        BigRational::new(BigInt::from(self.prefactor_twice_exponent), BigInt::from(2))
    }

    /// Evaluate at `p = q_value`, with `γ₀` given on the ambient torus as
    /// `(t_1, …, t_2g; ν)`. Boundary cells see `γ₀` through the middle
    /// block, the `GL` coordinates being set to one.
    pub fn evaluate_at(&self, q_value: &BigRational, gamma0: &Gamma0) -> Result<TraceValue> {
        let g = self.stratum.boundary.rank();
        if gamma0.rank() != g {
            return Err(Error::InvalidGamma0(format!(
                "expected {} diagonal entries, got {}",
                2 * g,
                gamma0.entries.len()
            )));
        }
        let k = self.stratum.boundary.dim();
        let gamma = gamma0.restrict_to_middle(k);
        let big_q = rational_pow(q_value, self.r as i32);
        let scalar = self.bernstein_value.shift(self.d_v as i32).evaluate_sqrt(&big_q);
        let mut explicit = BigRational::zero();
        let mut symbolic = Vec::new();
        for term in &self.boundary_factor.terms {
            let weight = BigRational::from_integer(BigInt::from(term.sign * term.multiplicity));
            let tr = module_trace(&term.module, &gamma) * &weight;
            if term.is_explicit() {
                explicit += tr;
            } else {
                symbolic.push(SymbolicTerm {
                    coefficient: weight,
                    node: term.module.symbolic_factors.join("∘"),
                    flag: term.flag.clone(),
                });
            }
        }
        if symbolic.is_empty() {
            Ok(TraceValue::Exact(scalar.scale(&explicit)))
        } else {
            Ok(TraceValue::Symbolic {
                scalar,
                explicit,
                symbolic,
            })
        }
    }
}

/// `Σ_n (-1)^n Σ_χ χ(γ)` over a weight module.
fn module_trace(module: &WeightModule, gamma: &Gamma0) -> BigRational {
    let mut total = BigRational::zero();
    for (&n, weights) in &module.graded {
        let sign = if n % 2 == 0 { 1 } else { -1 };
        for (w, &m) in weights {
            total += gamma.character(w) * BigRational::from_integer(BigInt::from(sign * m as i64));
        }
    }
    total
}

/// A diagonal symplectic similitude `diag(t_1, …, t_2g)` with multiplier `ν`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Gamma0 {
    entries: Vec<BigRational>,
    similitude: BigRational,
}

impl Gamma0 {
    pub fn new(entries: Vec<BigRational>, similitude: BigRational) -> Result<Self> {
        let n = entries.len();
        if !n.is_multiple_of(2) {
            return Err(Error::InvalidGamma0(format!("odd number of entries ({n})")));
        }
        if entries.iter().any(Zero::is_zero) || similitude.is_zero() {
            return Err(Error::InvalidGamma0("zero entry".into()));
        }
        for i in 0..n / 2 {
            if &entries[i] * &entries[n - 1 - i] != similitude {
                return Err(Error::InvalidGamma0(format!(
                    "t_{} · t_{} ≠ ν",
                    i + 1,
                    n - i
                )));
            }
        }
        Ok(Self {
            entries,
            similitude,
        })
    }

    pub fn identity(g: usize) -> Self {
        Self {
            entries: vec![BigRational::one(); 2 * g],
            similitude: BigRational::one(),
        }
    }

    pub fn rank(&self) -> usize {
        self.entries.len() / 2
    }

    fn restrict_to_middle(&self, k: usize) -> Self {
        let n = self.entries.len();
        let mut entries = self.entries.clone();
        for i in 0..k {
            entries[i] = BigRational::one();
            entries[n - 1 - i] = self.similitude.clone();
        }
        Self {
            entries,
            similitude: self.similitude.clone(),
        }
    }

    /// `χ(γ) = t_1^{a_1} ⋯ t_g^{a_g} ν^b`.
    pub fn character(&self, w: &Weight) -> BigRational {
        w.entries()
            .iter()
            .zip(&self.entries)
            .fold(rational_pow(&self.similitude, w.similitude() as i32), |acc, (&a, t)| {
                acc * rational_pow(t, a as i32)
            })
    }
}

/// An unevaluated summand `coefficient · Tr(γ₀, node(M))`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymbolicTerm {
    pub coefficient: BigRational,
    pub node: String,
    pub flag: Option<IsotropicFlag>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TraceValue {
    Exact(SurdValue),
    /// `scalar · (explicit + Σ symbolic)`.
    Symbolic {
        scalar: SurdValue,
        explicit: BigRational,
        symbolic: Vec<SymbolicTerm>,
    },
}

impl TraceValue {
    pub fn is_exact(&self) -> bool {
        matches!(self, TraceValue::Exact(_))
    }
}

impl fmt::Display for TraceValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceValue::Exact(v) => write!(f, "{v}"),
            TraceValue::Symbolic {
                scalar,
                explicit,
                symbolic,
            } => {
                write!(f, "({scalar})·({explicit}")?;
                for t in symbolic {
                    let flag = t.flag.as_ref().map(|x| x.to_string()).unwrap_or_default();
                    write!(f, " + {}·Tr[{}{}]", t.coefficient, t.node, flag)?;
                }
                write!(f, ")")
            }
        }
    }
}

/// `z_{μ'} · Σ_{y ∈ W_K} T_y`, whose coefficients are constant on double cosets.
fn parahoric_bernstein(g: usize, parahoric: &ParahoricType) -> HeckeElement {
    let z = z_mu(g);
    if parahoric.is_iwahori() {
        return z;
    }
    let mut idempotent = HeckeElement::zero(g);
    for y in parahoric.vector_weyl_group() {
        idempotent.add_term(y, LaurentPolynomial::one());
    }
    z.mul(&idempotent)
}

/// The full table, ordered by boundary dimension and then induced length.
pub fn trace_table(
    g: usize,
    parahoric: &ParahoricType,
    highest: &Weight,
    a: i64,
    r: u64,
) -> Result<Vec<TraceCell>> {
    trace_table_with(g, parahoric, highest, a, r, &FlagMultiplicities::default())
}

pub fn trace_table_with(
    g: usize,
    parahoric: &ParahoricType,
    highest: &Weight,
    a: i64,
    r: u64,
    multiplicities: &FlagMultiplicities,
) -> Result<Vec<TraceCell>> {
    if parahoric.rank() != g || highest.rank() != g {
        return Err(Error::DimensionMismatch {
            expected: g,
            found: if parahoric.rank() != g {
                parahoric.rank()
            } else {
                highest.rank()
            },
        });
    }
    if r == 0 {
        return Err(Error::OutOfRange {
            what: "r",
            value: 0,
            lo: 1,
            hi: i64::MAX,
        });
    }
    check_purity(highest, a)?;
    let d_v = siegel_dimension(g) as u64;
    let mut cells = Vec::new();
    for label in IsotropicLabel::all(g) {
        let factor = boundary_factor_with(&label, highest, a, multiplicities)?;
        let induced = induced_parahoric(&label, parahoric);
        let z = parahoric_bernstein(label.boundary_rank(), &induced);
        for kr in admissible_image(&induced) {
            cells.push(TraceCell {
                bernstein_value: z.coeff(kr.min_rep()),
                stratum: StratumLabel {
                    boundary: label,
                    kr,
                },
                prefactor_twice_exponent: r * d_v,
                r,
                d_v,
                boundary_factor: factor.clone(),
            });
        }
    }
    Ok(cells)
}

/// Strata of the minimal compactification together with the incidence
/// `𝒜*^w = ∐_{V'} 𝒜^{φ⁻¹(w)}_{V'}`.
#[derive(Clone, Debug)]
pub struct Atlas {
    pub strata: Vec<StratumLabel>,
    /// `(boundary stratum, interior stratum)` index pairs with `φ(w') = w`.
    pub edges: Vec<(usize, usize)>,
}

pub fn stratification_atlas(parahoric: &ParahoricType) -> Result<Atlas> {
    let g = parahoric.rank();
    let mut strata = Vec::new();
    for label in IsotropicLabel::all(g) {
        for kr in admissible_image(&induced_parahoric(&label, parahoric)) {
            strata.push(StratumLabel {
                boundary: label,
                kr,
            });
        }
    }
    let interior: BTreeMap<&DoubleCoset, usize> = strata
        .iter()
        .enumerate()
        .filter(|(_, s)| s.boundary.dim() == 0)
        .map(|(i, s)| (&s.kr, i))
        .collect();
    let mut edges = Vec::new();
    for (i, s) in strata.iter().enumerate() {
        if s.boundary.dim() == 0 {
            continue;
        }
        let w = phi(&s.boundary, parahoric, &s.kr)?;
        let j = *interior
            .get(&w)
            .ok_or_else(|| Error::NotAdmissible(w.to_string()))?;
        edges.push((i, j));
    }
    Ok(Atlas { strata, edges })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn interior_rank_one_traces() {
        let cells = trace_table(1, &ParahoricType::iwahori(1), &Weight::zero(1), 0, 1).unwrap();
        assert_eq!(cells.len(), 4);
        let gamma = Gamma0::identity(1);
        let values: Vec<String> = cells
            .iter()
            .map(|c| c.evaluate_at(&rat(5), &gamma).unwrap().to_string())
            .collect();
        // Supersingular points, the two ordinary components, then the cusp.
        // At the cusp only H^1 of the Borel nilradical survives the
        // threshold 1, with S_1-weight 2.
        assert_eq!(values, vec!["-4", "1", "1", "-1*sqrt(5)"]);
        assert_eq!(cells[3].stratum.boundary.dim(), 1);
        assert!(cells[3].bernstein_value.is_one());
    }

    #[test]
    fn boundary_signs() {
        let f2 = boundary_factor(&IsotropicLabel::new(2, 2).unwrap(), &Weight::zero(2), 0).unwrap();
        let signs: Vec<i64> = f2.terms.iter().map(|t| t.sign).collect();
        assert_eq!(signs, vec![1, -1]);
        assert!(!f2.terms[0].is_explicit());
        assert!(f2.terms[1].is_explicit());
        let f1 = boundary_factor(&IsotropicLabel::new(2, 1).unwrap(), &Weight::zero(2), 0).unwrap();
        assert_eq!(f1.terms.len(), 1);
        assert!(f1.is_explicit());
        let f0 = boundary_factor(&IsotropicLabel::open(2), &Weight::standard(2), 1).unwrap();
        assert_eq!(f0.terms[0].module.total_dimension(), 4);
    }

    #[test]
    fn purity_gate() {
        assert_eq!(
            trace_table(2, &ParahoricType::iwahori(2), &Weight::standard(2), 0, 1).unwrap_err(),
            Error::NotPure {
                expected: 0,
                found: 1
            }
        );
    }

    #[test]
    fn gamma0_validation() {
        assert!(Gamma0::new(vec![rat(2), rat(3)], rat(5)).is_err());
        assert!(Gamma0::new(vec![rat(2), rat(3)], rat(6)).is_ok());
        assert!(Gamma0::new(vec![rat(0), rat(3)], rat(0)).is_err());
    }

    #[test]
    fn symbolic_cells_stay_symbolic() {
        let cells = trace_table(2, &ParahoricType::iwahori(2), &Weight::zero(2), 0, 1).unwrap();
        assert_eq!(cells.len(), 13 + 3 + 1);
        let point = cells.last().unwrap();
        let v = point.evaluate_at(&rat(3), &Gamma0::identity(2)).unwrap();
        assert!(!v.is_exact());
        assert!(v.to_string().contains("Γ^l[GL2]"));
    }

    #[test]
    fn atlas_rank_two() {
        let atlas = stratification_atlas(&ParahoricType::iwahori(2)).unwrap();
        assert_eq!(atlas.strata.len(), 17);
        assert_eq!(atlas.edges.len(), 4);
    }
}
