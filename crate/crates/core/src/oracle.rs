//! Independent brute-force computations used to cross-check the main
//! algorithms: word lengths by breadth-first search, the subword criterion
//! for the Bruhat order, exhaustive double cosets, KL polynomials through
//! R-polynomials, Chevalley–Eilenberg cohomology and Weyl's dimension
//! formula.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::admissible::{lower_interval, weyl_orbit, ParahoricType};
use crate::affine_weyl::{omega_power, simple_reflection, AffineWeylElement, SimilitudeCoweight};
use crate::boundary::{siegel_dimension, ParabolicData};
use crate::hecke::t_inv;
use crate::kostant::{Weight, WeightModule};
use crate::laurent::LaurentPolynomial;

/// All elements `x` with `Ω`-component `τ^c` and word length at most
/// `max_len`, with their word length, by breadth-first search over left
/// multiplication by simple reflections.
pub fn word_length_ball(g: usize, max_len: usize, c: i64) -> BTreeMap<AffineWeylElement, usize> {
    let start = omega_power(g, c);
    let gens: Vec<AffineWeylElement> = (0..=g).map(|i| simple_reflection(g, i)).collect();
    let mut dist = BTreeMap::from([(start.clone(), 0)]);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        let d = dist[&x];
        if d == max_len {
            continue;
        }
        for s in &gens {
            let y = s * &x;
            if !dist.contains_key(&y) {
                dist.insert(y.clone(), d + 1);
                queue.push_back(y);
            }
        }
    }
    dist
}

/// Every product of a subword of a reduced word of `w` (keeping the
/// length-zero factor).
pub fn subword_products(w: &AffineWeylElement) -> BTreeSet<AffineWeylElement> {
    let word = w.reduced_word();
    let g = w.rank();
    let mut current = BTreeSet::from([word.omega.clone()]);
    for &i in word.letters.iter().rev() {
        let s = simple_reflection(g, i);
        let next: Vec<_> = current.iter().map(|x| &s * x).collect();
        current.extend(next);
    }
    current
}

/// `x ≤ w` iff `x` is the product of a subword of a reduced word of `w`.
pub fn subword_leq(x: &AffineWeylElement, w: &AffineWeylElement) -> bool {
    subword_products(w).contains(x)
}

/// `Adm(μ_V)` as the subset of the length-`≤ d_V` ball lying below some
/// `t_λ` by the subword criterion.
pub fn admissible_by_subword_filter(g: usize) -> BTreeSet<AffineWeylElement> {
    let below: BTreeSet<AffineWeylElement> = weyl_orbit(&SimilitudeCoweight::minuscule(g))
        .expect("μ_V is dominant")
        .into_iter()
        .flat_map(|l| subword_products(&AffineWeylElement::translation(l)))
        .collect();
    word_length_ball(g, siegel_dimension(g), 1)
        .into_keys()
        .filter(|x| below.contains(x))
        .collect()
}

/// The double coset `W_K x W_K` by forming all products, and its unique
/// element of minimal length. Returns `None` if the minimum is not unique.
pub fn double_coset_by_products(
    x: &AffineWeylElement,
    parahoric: &ParahoricType,
) -> (BTreeSet<AffineWeylElement>, Option<AffineWeylElement>) {
    let group = parahoric.vector_weyl_group();
    let mut coset = BTreeSet::new();
    for u in &group {
        let ux = u * x;
        for v in &group {
            coset.insert(&ux * v);
        }
    }
    let min_len = coset.iter().map(|y| y.length()).min().unwrap_or(0);
    let minimal: Vec<_> = coset.iter().filter(|y| y.length() == min_len).cloned().collect();
    let unique = (minimal.len() == 1).then(|| minimal[0].clone());
    (coset, unique)
}

/// `R_{x,y} = ε_x ε_y q^{l(y)} [T_x] T_{y⁻¹}⁻¹`.
pub fn r_polynomial(x: &AffineWeylElement, y: &AffineWeylElement) -> LaurentPolynomial {
    let ly = y.length();
    let sign = if (x.length() + ly).is_multiple_of(2) { 1 } else { -1 };
    t_inv(&y.inverse()).coeff(x).shift(2 * ly as i32).scale(sign)
}

/// `P_{x,w}` for all `x ≤ w` from the identity
/// `q^{l(w)-l(x)} P̄_{x,w} - P_{x,w} = Σ_{x<y≤w} R_{x,y} P_{y,w}`.
pub fn kl_by_r_polynomials(w: &AffineWeylElement) -> BTreeMap<AffineWeylElement, LaurentPolynomial> {
    let interval = lower_interval(w);
    let mut by_length: Vec<&AffineWeylElement> = interval.iter().collect();
    by_length.sort_by_key(|x| std::cmp::Reverse(x.length()));
    let lw = w.length();
    let mut p: BTreeMap<AffineWeylElement, LaurentPolynomial> = BTreeMap::new();
    for x in by_length {
        if x == w {
            p.insert(x.clone(), LaurentPolynomial::one());
            continue;
        }
        let mut rhs = LaurentPolynomial::zero();
        for (y, pyw) in &p {
            if y != x && x.bruhat_leq(y) {
                rhs += &(&r_polynomial(x, y) * pyw);
            }
        }
        let l = (lw - x.length()) as i32;
        let pxw = -rhs.truncate(i32::MIN, l - 1);
        let check = pxw.bar().shift(2 * l) - pxw.clone();
        assert_eq!(check, rhs, "R-polynomial identity fails for ({x}, {w})");
        p.insert(x.clone(), pxw);
    }
    p
}

fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `dim V_λ = Π_{α>0} (λ+ρ, α)/(ρ, α)`.
pub fn weyl_dimension(g: usize, highest: &Weight) -> BigRational {
    let rho = Weight::new((1..=g as i64).rev().collect(), 0);
    let shifted = highest.add(&rho);
    crate::affine_weyl::positive_roots(g)
        .map(|r| Weight::root(g, &r))
        .fold(BigRational::one(), |acc, a| {
            acc * rational(shifted.dot(&a)) / rational(rho.dot(&a))
        })
}

/// Coefficient module for the Chevalley–Eilenberg oracle.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CeCoefficients {
    Trivial,
    Standard,
}

type Matrix = Vec<Vec<i64>>;

fn zero_matrix(n: usize) -> Matrix {
    vec![vec![0; n]; n]
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut c = zero_matrix(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k] != 0 {
                for j in 0..n {
                    c[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    c
}

fn transpose(a: &Matrix) -> Matrix {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i]).collect()).collect()
}

fn symplectic_form(g: usize) -> Matrix {
    let n = 2 * g;
    let mut j = zero_matrix(n);
    for p in 0..n {
        j[p][n - 1 - p] = if p < g { 1 } else { -1 };
    }
    j
}

fn in_sp(x: &Matrix, j: &Matrix) -> bool {
    let a = mat_mul(&transpose(x), j);
    let b = mat_mul(j, x);
    a.iter().zip(&b).all(|(r, s)| r.iter().zip(s).all(|(u, v)| u + v == 0))
}

/// Root vector of `sp_2g` for the root `χ_i - χ_j`.
fn root_matrix(g: usize, i: usize, j: usize) -> Matrix {
    let n = 2 * g;
    let jf = symplectic_form(g);
    let (mi, mj) = (n - 1 - j, n - 1 - i);
    for sign in [1, -1] {
        let mut x = zero_matrix(n);
        x[i][j] += 1;
        if (mi, mj) != (i, j) {
            x[mi][mj] += sign;
        }
        if in_sp(&x, &jf) {
            return x;
        }
    }
    unreachable!("no symplectic root vector for ({i}, {j})")
}

/// Rank of an integer matrix, by exact elimination.
fn rank(rows: Vec<Vec<BigRational>>) -> usize {
    let mut rows = rows;
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let inv = rows[r][c].recip();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] * &inv;
                for k in c..cols {
                    let d = &f * &rows[r][k];
                    rows[i][k] -= d;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

fn sorted_with_sign(mut v: Vec<usize>) -> Option<(Vec<usize>, i64)> {
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] == v[j + 1] {
                return None;
            }
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `H^•(Lie N_P, R)` as a graded torus module, computed from the
/// Chevalley–Eilenberg complex `Λ^• n^* ⊗ R`.
pub fn chevalley_eilenberg(parabolic: &ParabolicData, coefficients: CeCoefficients) -> WeightModule {
    let g = parabolic.g;
    let n = 2 * g;
    let roots = &parabolic.nilpotent_roots;
    let mats: Vec<Matrix> = roots.iter().map(|r| root_matrix(g, r.i, r.j)).collect();
    let root_weights: Vec<Weight> = roots.iter().map(|r| Weight::root(g, r)).collect();
    // Structure constants [x_a, x_b] = c · x_γ.
    let mut bracket: BTreeMap<(usize, usize), (usize, i64)> = BTreeMap::new();
    for a in 0..mats.len() {
        for b in 0..mats.len() {
            let ab = mat_mul(&mats[a], &mats[b]);
            let ba = mat_mul(&mats[b], &mats[a]);
            let comm: Matrix = ab
                .iter()
                .zip(&ba)
                .map(|(r, s)| r.iter().zip(s).map(|(u, v)| u - v).collect())
                .collect();
            if comm.iter().all(|r| r.iter().all(|&x| x == 0)) {
                continue;
            }
            let target = root_weights[a].add(&root_weights[b]);
            let gamma = root_weights
                .iter()
                .position(|w| w == &target)
                .expect("bracket of nilradical roots lands in the nilradical");
            let (pi, pj) = (roots[gamma].i, roots[gamma].j);
            let c = comm[pi][pj] / mats[gamma][pi][pj];
            let scaled_ok = (0..n).all(|i| (0..n).all(|j| comm[i][j] == c * mats[gamma][i][j]));
            assert!(scaled_ok, "bracket is not a multiple of a root vector");
            bracket.insert((a, b), (gamma, c));
        }
    }
    let (rep_weights, rep_dim): (Vec<Weight>, usize) = match coefficients {
        CeCoefficients::Trivial => (vec![Weight::zero(g)], 1),
        CeCoefficients::Standard => ((0..n).map(|p| Weight::coordinate(g, p)).collect(), n),
    };
    let act = |a: usize, p: usize| -> Vec<(usize, i64)> {
        match coefficients {
            CeCoefficients::Trivial => Vec::new(),
            CeCoefficients::Standard => (0..n)
                .filter(|&q| mats[a][q][p] != 0)
                .map(|q| (q, mats[a][q][p]))
                .collect(),
        }
    };
    let dim_n = roots.len();
    let basis: Vec<Vec<(Vec<usize>, usize)>> = (0..=dim_n + 1)
        .map(|k| {
            if k > dim_n {
                return Vec::new();
            }
            subsets(dim_n, k)
                .into_iter()
                .flat_map(|s| (0..rep_dim).map(move |p| (s.clone(), p)))
                .collect()
        })
        .collect();
    let weight_of = |s: &[usize], p: usize| {
        s.iter()
            .fold(rep_weights[p].clone(), |acc, &a| acc.sub(&root_weights[a]))
    };
    // Matrix of d: C^k → C^{k+1}, as (row = target, col = source) entries.
    let differential = |k: usize| -> BTreeMap<(usize, usize), i64> {
        let index: BTreeMap<(Vec<usize>, usize), usize> = basis[k + 1]
            .iter()
            .enumerate()
            .map(|(i, b)| (b.clone(), i))
            .collect();
        let mut d = BTreeMap::new();
        for (col, (s, p)) in basis[k].iter().enumerate() {
            for t in subsets(dim_n, k + 1) {
                // Action term.
                for (i, &ti) in t.iter().enumerate() {
                    let rest: Vec<usize> = t.iter().copied().filter(|&x| x != ti).collect();
                    if &rest == s {
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        for (q, c) in act(ti, *p) {
                            *d.entry((index[&(t.clone(), q)], col)).or_insert(0) += sign * c;
                        }
                    }
                }
                // Bracket term.
                for i in 0..t.len() {
                    for j in i + 1..t.len() {
                        let Some(&(gamma, c)) = bracket.get(&(t[i], t[j])) else {
                            continue;
                        };
                        let mut args = vec![gamma];
                        args.extend(t.iter().copied().filter(|&x| x != t[i] && x != t[j]));
                        let Some((sorted, perm_sign)) = sorted_with_sign(args) else {
                            continue;
                        };
                        if &sorted == s {
                            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                            *d.entry((index[&(t.clone(), *p)], col)).or_insert(0) += sign * perm_sign * c;
                        }
                    }
                }
            }
        }
        d.retain(|_, v| *v != 0);
        d
    };
    let diffs: Vec<BTreeMap<(usize, usize), i64>> = (0..=dim_n).map(differential).collect();
    // d² = 0.
    for k in 0..dim_n {
        let mut sq: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for (&(r1, c1), &v1) in &diffs[k] {
            for (&(r2, c2), &v2) in &diffs[k + 1] {
                if c2 == r1 {
                    *sq.entry((r2, c1)).or_insert(0) += v1 * v2;
                }
            }
        }
        assert!(sq.values().all(|&v| v == 0), "Chevalley–Eilenberg differential does not square to zero");
    }
    let block_rank = |k: usize, mu: &Weight| -> usize {
        let cols: Vec<usize> = (0..basis[k].len())
            .filter(|&c| &weight_of(&basis[k][c].0, basis[k][c].1) == mu)
            .collect();
        let rows: Vec<usize> = (0..basis[k + 1].len())
            .filter(|&r| &weight_of(&basis[k + 1][r].0, basis[k + 1][r].1) == mu)
            .collect();
        if cols.is_empty() || rows.is_empty() {
            return 0;
        }
        let m: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|&r| {
                cols.iter()
                    .map(|&c| rational(*diffs[k].get(&(r, c)).unwrap_or(&0)))
                    .collect()
            })
            .collect();
        rank(m)
    };
    let mut module = WeightModule::empty(g);
    module.levi_blocks = parabolic.levi_blocks.clone();
    for k in 0..=dim_n {
        let weights: BTreeSet<Weight> = basis[k].iter().map(|(s, p)| weight_of(s, *p)).collect();
        for mu in weights {
            let dim = basis[k].iter().filter(|(s, p)| weight_of(s, *p) == mu).count();
            let out_rank = block_rank(k, &mu);
            let in_rank = if k == 0 { 0 } else { block_rank(k - 1, &mu) };
            let h = dim - out_rank - in_rank;
            module.insert(k as i64, mu, h as u64);
        }
    }
    module
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::admissible::{admissible_image, admissible_set, project_double_coset};
    use crate::boundary::{enumerate_flags, IsotropicLabel};
    use crate::hecke::KlTable;
    use crate::kostant::{irreducible_weights, lie_n_cohomology};

    #[test]
    fn ball_lengths_match_formula() {
        for g in 1..=2 {
            for c in [0, 1] {
                for (x, d) in word_length_ball(g, 5, c) {
                    assert_eq!(x.length(), d, "{x}");
                }
            }
        }
    }

    #[test]
    fn subword_matches_recursion_rank_one() {
        let ball: Vec<_> = word_length_ball(1, 4, 0).into_keys().collect();
        for w in &ball {
            let below = subword_products(w);
            for x in &ball {
                assert_eq!(below.contains(x), x.bruhat_leq(w), "{x} <= {w}");
            }
        }
    }

    #[test]
    fn admissible_oracle() {
        for g in 1..=2 {
            assert_eq!(admissible_by_subword_filter(g), admissible_set(g));
        }
    }

    #[test]
    fn siegel_double_cosets() {
        let siegel = ParahoricType::new(2, vec![2]).unwrap();
        let mut by_products = BTreeSet::new();
        for x in admissible_set(2) {
            let (coset, min) = double_coset_by_products(&x, &siegel);
            let min = min.expect("unique minimal representative");
            assert_eq!(coset, project_double_coset(&x, &siegel).elements());
            assert_eq!(&min, project_double_coset(&x, &siegel).min_rep());
            by_products.insert(min);
        }
        assert_eq!(by_products.len(), admissible_image(&siegel).len());
        assert_eq!(by_products.len(), 6);
    }

    #[test]
    fn kl_oracle_agrees() {
        let adm = admissible_set(2);
        let table = KlTable::for_set(&adm);
        for w in &adm {
            for (x, p) in kl_by_r_polynomials(w) {
                assert_eq!(table.get(&x, w), p, "P({x}, {w})");
            }
        }
    }

    #[test]
    fn weyl_dimensions() {
        assert_eq!(weyl_dimension(2, &Weight::standard(2)), rational(4));
        assert_eq!(weyl_dimension(2, &Weight::zero(2)), rational(1));
        for a in [vec![1, 1], vec![2, 0], vec![2, 1], vec![3, 1]] {
            let w = Weight::new(a, 0);
            let size: u64 = irreducible_weights(2, &w).unwrap().values().sum();
            assert_eq!(rational(size as i64), weyl_dimension(2, &w), "{w}");
        }
        let w = Weight::new(vec![1, 1, 0], 0);
        let size: u64 = irreducible_weights(3, &w).unwrap().values().sum();
        assert_eq!(rational(size as i64), weyl_dimension(3, &w));
    }

    #[test]
    fn chevalley_eilenberg_matches_kostant() {
        for g in 1..=2 {
            for k in 1..=g {
                for flag in enumerate_flags(&IsotropicLabel::new(g, k).unwrap()) {
                    let p = ParabolicData::new(&flag);
                    for (coeff, highest) in [
                        (CeCoefficients::Trivial, Weight::zero(g)),
                        (CeCoefficients::Standard, Weight::standard(g)),
                    ] {
                        let ce = chevalley_eilenberg(&p, coeff);
                        let ko = lie_n_cohomology(&p, &highest).unwrap();
                        assert_eq!(ce.graded, ko.graded, "flag {flag}, {coeff:?}");
                    }
                }
            }
        }
    }
}
