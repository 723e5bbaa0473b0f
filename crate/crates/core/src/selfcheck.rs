//! The cross-checks behind the acceptance suite and `siegel-kr selftest`.
//! Each check compares a main algorithm against an independent oracle or
//! a structural identity and reports a single verdict.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::admissible::{admissible_image, admissible_set, ParahoricType};
use crate::affine_weyl::{omega_generator, simple_reflection};
use crate::boundary::{
    boundary_image, enumerate_flags, phi, IsotropicFlag, IsotropicLabel, ParabolicData,
};
use crate::hecke::{multiplicity_conservation, z_mu, HeckeElement};
use crate::kostant::{
    central_truncate, central_truncate_with_offset, lie_n_cohomology, r_a_flag, s_delta_truncate,
    CentralMode, SDeltaMode, Weight, WeightModule,
};
use crate::oracle::{
    admissible_by_subword_filter, chevalley_eilenberg, subword_products, word_length_ball,
    CeCoefficients,
};
use crate::trace::{stratification_atlas, trace_table};

/// Seed of the randomized truncation check.
pub const TRUNCATION_SEED: u64 = 0x5eed_2024;

#[derive(Clone, Debug)]
pub struct Check {
    pub id: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {}: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail
        )
    }
}

fn run<F: FnOnce() -> std::result::Result<String, String>>(
    id: &'static str,
    name: &'static str,
    body: F,
) -> Check {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Check {
        id,
        name,
        passed,
        detail,
        elapsed,
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// `Adm(μ_V)` by Bruhat closure against the subword filter on the word-length ball.
pub fn admissible_sets(gs: &[usize]) -> Check {
    run("adm-oracle", "admissible set vs subword filter", || {
        let mut sizes = Vec::new();
        for &g in gs {
            let main = admissible_set(g);
            let oracle = admissible_by_subword_filter(g);
            ensure(main == oracle, || {
                format!("g={g}: {} elements vs {} from the oracle", main.len(), oracle.len())
            })?;
            sizes.push(format!("g={g}:{}", main.len()));
        }
        Ok(sizes.join(" "))
    })
}

/// `l(φ(w')) - l(w') = d_V - d_{V'}` over the boundary sets. Iwahori cosets
/// use the length, other types the stratum dimension.
pub fn boundary_lengths(cases: &[(usize, usize)], all_types: bool) -> Check {
    run("phi-length", "phi shifts length by the dimension drop", || {
        let mut n = 0;
        for &(g, k) in cases {
            let label = IsotropicLabel::new(g, k).map_err(|e| e.to_string())?;
            let types = if all_types {
                parahoric_types(g)
            } else {
                vec![ParahoricType::iwahori(g)]
            };
            for parahoric in types {
                let drop = label.dimension_drop() as i64;
                for wp in boundary_image(&label, &parahoric) {
                    let w = phi(&label, &parahoric, &wp).map_err(|e| e.to_string())?;
                    let diff = if parahoric.is_iwahori() {
                        w.length() as i64 - wp.length() as i64
                    } else {
                        w.dimension() as i64 - wp.dimension() as i64
                    };
                    ensure(diff == drop, || {
                        format!("g={g} k={k} type {parahoric}: {wp} -> {w} shifts by {diff}, expected {drop}")
                    })?;
                    n += 1;
                }
            }
        }
        Ok(format!("{n} boundary cosets"))
    })
}

fn parahoric_types(g: usize) -> Vec<ParahoricType> {
    (1u32..1 << g)
        .map(|mask| {
            let indices = (1..=g).filter(|i| mask & (1 << (i - 1)) != 0).collect();
            ParahoricType::new(g, indices).expect("nonempty subset")
        })
        .collect()
}

/// `z_μ` commutes with every `T_{s_i}` and with `T_τ`, and is supported
/// exactly on `Adm(μ_V)`.
pub fn centrality(gs: &[usize]) -> Check {
    run("z-central", "z_mu central with support Adm", || {
        for &g in gs {
            let z = z_mu(g);
            let mut generators: Vec<_> = (0..=g).map(|i| simple_reflection(g, i)).collect();
            generators.push(omega_generator(g));
            for s in &generators {
                let c = z.commutator(&HeckeElement::basis(s));
                ensure(c.is_zero(), || format!("g={g}: [z, T_{s}] = {c}"))?;
            }
            ensure(z.support() == admissible_set(g), || {
                format!("g={g}: support has {} elements", z.support().len())
            })?;
        }
        Ok(format!("g in {gs:?}"))
    })
}

/// `m_{φ(w')} = m_{w'}` up to a single `v`-power per stratum.
pub fn conservation(cases: &[(usize, usize)]) -> Check {
    run("m-conservation", "multiplicities conserved along phi", || {
        let mut shifts = Vec::new();
        for &(g, k) in cases {
            let label = IsotropicLabel::new(g, k).map_err(|e| e.to_string())?;
            match multiplicity_conservation(&label).map_err(|e| e.to_string())? {
                Ok(s) => shifts.push(format!("g={g},k={k}:v^{s}")),
                Err(m) => {
                    return Err(format!(
                        "g={g} k={k} at {}: expected {}, found {}",
                        m.boundary, m.expected, m.found
                    ))
                }
            }
        }
        Ok(shifts.join(" "))
    })
}

/// Kostant's theorem against Chevalley–Eilenberg cohomology of `Lie N_P`
/// for all flags, with trivial and standard coefficients.
pub fn kostant_oracle(gs: &[usize]) -> Check {
    run("kostant-ce", "Kostant vs Chevalley-Eilenberg", || {
        let mut n = 0;
        for &g in gs {
            for k in 1..=g {
                let label = IsotropicLabel::new(g, k).map_err(|e| e.to_string())?;
                for flag in enumerate_flags(&label) {
                    let p = ParabolicData::new(&flag);
                    for (coeff, highest) in [
                        (CeCoefficients::Trivial, Weight::zero(g)),
                        (CeCoefficients::Standard, Weight::standard(g)),
                    ] {
                        let ce = chevalley_eilenberg(&p, coeff);
                        let ko = lie_n_cohomology(&p, &highest).map_err(|e| e.to_string())?;
                        ensure(ce.graded == ko.graded, || {
                            format!("g={g} flag {flag} {coeff:?} differs")
                        })?;
                        n += 1;
                    }
                }
            }
        }
        Ok(format!("{n} (flag, coefficient) pairs"))
    })
}

/// Length formula against breadth-first word length, and the Bruhat
/// recursion against the subword criterion, on the ball of radius `radius`.
pub fn length_and_bruhat(g: usize, radius: usize) -> Check {
    run("ball-oracle", "length and Bruhat order on the word ball", || {
        let mut pairs = 0usize;
        let mut size = 0usize;
        for c in 0..=1 {
            let ball = word_length_ball(g, radius, c);
            size += ball.len();
            for (x, &d) in &ball {
                ensure(x.length() == d, || format!("{x}: length {} vs word length {d}", x.length()))?;
            }
            for w in ball.keys() {
                let below = subword_products(w);
                for x in ball.keys() {
                    ensure(x.bruhat_leq(w) == below.contains(x), || {
                        format!("Bruhat order disagrees on ({x}, {w})")
                    })?;
                    pairs += 1;
                }
            }
        }
        Ok(format!("g={g} radius {radius}: {size} elements, {pairs} pairs"))
    })
}

/// The strata partition the minimal compactification and `φ` is injective
/// per label, so each boundary stratum meets exactly one interior stratum.
pub fn atlas_partition(g: usize) -> Check {
    run("atlas", "stratification partition and incidence", || {
        let parahoric = ParahoricType::iwahori(g);
        let atlas = stratification_atlas(&parahoric).map_err(|e| e.to_string())?;
        let distinct: BTreeSet<_> = atlas.strata.iter().collect();
        ensure(distinct.len() == atlas.strata.len(), || "repeated stratum".into())?;
        let mut expected = 0;
        for label in IsotropicLabel::all(g) {
            let image = boundary_image(&label, &parahoric);
            expected += image.len();
            let targets: BTreeSet<_> = image
                .iter()
                .map(|wp| phi(&label, &parahoric, wp))
                .collect::<crate::Result<_>>()
                .map_err(|e| e.to_string())?;
            ensure(targets.len() == image.len(), || format!("phi not injective at {label}"))?;
        }
        ensure(expected == atlas.strata.len(), || "strata count mismatch".into())?;
        let boundary = atlas.strata.iter().filter(|s| s.boundary.dim() > 0).count();
        let sources: BTreeSet<_> = atlas.edges.iter().map(|&(i, _)| i).collect();
        ensure(sources.len() == boundary && atlas.edges.len() == boundary, || {
            "a boundary stratum does not meet exactly one interior stratum".into()
        })?;
        Ok(format!("g={g}: {} strata, {} edges", atlas.strata.len(), atlas.edges.len()))
    })
}

/// Interior cells of the trace table carry the coefficients of `z_μ`.
pub fn interior_cells(gs: &[usize]) -> Check {
    run("interior-cells", "interior cells equal z_mu coefficients", || {
        let mut n = 0;
        for &g in gs {
            let parahoric = ParahoricType::iwahori(g);
            let cells = trace_table(g, &parahoric, &Weight::zero(g), 0, 1).map_err(|e| e.to_string())?;
            let z = z_mu(g);
            let interior: Vec<_> = cells.iter().filter(|c| c.stratum.boundary.dim() == 0).collect();
            ensure(interior.len() == admissible_image(&parahoric).len(), || {
                format!("g={g}: {} interior cells", interior.len())
            })?;
            for cell in interior {
                let w = cell.stratum.kr.min_rep();
                ensure(cell.bernstein_value == z.coeff(w), || format!("g={g}: cell {w} differs"))?;
                n += 1;
            }
        }
        Ok(format!("{n} interior cells"))
    })
}

/// A random graded weight module of rank `g`.
pub fn random_module<R: Rng>(rng: &mut R, g: usize) -> WeightModule {
    let mut m = WeightModule::empty(g);
    for degree in 0..rng.gen_range(1..=4) {
        for _ in 0..rng.gen_range(0..=6) {
            let entries = (0..g).map(|_| rng.gen_range(-3..=3)).collect();
            let w = Weight::new(entries, rng.gen_range(-2..=2));
            m.insert(degree, w, rng.gen_range(1..=3));
        }
    }
    m
}

fn truncation_case(m: &WeightModule, a: i64, d1: usize, d2: usize, b: i64) -> std::result::Result<(), String> {
    let err = |e: crate::Error| e.to_string();
    for trunc in [central_truncate, central_truncate_with_offset] {
        let lo = trunc(m, a, CentralMode::AtMost);
        let hi = trunc(m, a, CentralMode::Above);
        ensure(lo.direct_sum(&hi) == *m, || "central truncations are not complementary".into())?;
        ensure(trunc(&lo, a, CentralMode::AtMost) == lo, || "w_{<=a} not idempotent".into())?;
        ensure(trunc(&hi, a, CentralMode::AtMost).is_empty(), || "w_{<=a} w_{>a} nonzero".into())?;
    }
    let below = s_delta_truncate(m, d1, a, SDeltaMode::Below).map_err(err)?;
    let at_least = s_delta_truncate(m, d1, a, SDeltaMode::AtLeast).map_err(err)?;
    ensure(below.direct_sum(&at_least) == *m, || "S_delta truncations are not complementary".into())?;
    ensure(
        s_delta_truncate(&below, d1, a, SDeltaMode::Below).map_err(err)? == below,
        || "w^delta_{<a} not idempotent".into(),
    )?;
    ensure(
        s_delta_truncate(m, d1, a, SDeltaMode::Above).map_err(err)?
            == s_delta_truncate(m, d1, a + 1, SDeltaMode::AtLeast).map_err(err)?,
        || "w^delta_{>a} differs from w^delta_{>=a+1}".into(),
    )?;
    let one_then_two = s_delta_truncate(&below, d2, b, SDeltaMode::AtLeast).map_err(err)?;
    let two_then_one = s_delta_truncate(
        &s_delta_truncate(m, d2, b, SDeltaMode::AtLeast).map_err(err)?,
        d1,
        a,
        SDeltaMode::Below,
    )
    .map_err(err)?;
    ensure(one_then_two == two_then_one, || "S_delta truncations do not commute".into())?;
    let central_then_s = central_truncate(&below, b, CentralMode::AtMost);
    let s_then_central = s_delta_truncate(&central_truncate(m, b, CentralMode::AtMost), d1, a, SDeltaMode::Below)
        .map_err(err)?;
    ensure(central_then_s == s_then_central, || "central and S_delta truncations do not commute".into())?;
    Ok(())
}

/// The weight truncations split modules and commute with each other, on
/// `cases` seeded random modules.
pub fn truncation_algebra(cases: usize, seed: u64) -> Check {
    run("truncations", "truncation algebra on random modules", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for case in 0..cases {
            let g = rng.gen_range(1..=3);
            let m = random_module(&mut rng, g);
            let a = rng.gen_range(-4..=4);
            let b = rng.gen_range(-4..=4);
            let d1 = rng.gen_range(1..=g);
            let d2 = rng.gen_range(1..=g);
            truncation_case(&m, a, d1, d2, b).map_err(|e| format!("case {case}: {e}"))?;
            let k = rng.gen_range(1..=g);
            let flags = enumerate_flags(&IsotropicLabel::new(g, k).map_err(|e| e.to_string())?);
            let flag: &IsotropicFlag = &flags[rng.gen_range(0..flags.len())];
            let once = r_a_flag(&m, flag, a, g).map_err(|e| e.to_string())?;
            let twice = r_a_flag(&once, flag, a, g).map_err(|e| e.to_string())?;
            ensure(once == twice, || format!("case {case}: R_a not idempotent for {flag}"))?;
        }
        Ok(format!("{cases} cases, seed {seed:#x}"))
    })
}

/// The fixed acceptance checks, in order.
pub fn acceptance_checks() -> Vec<Check> {
    vec![
        admissible_sets(&[1, 2]),
        boundary_lengths(&[(2, 1), (3, 1), (3, 2)], false),
        centrality(&[1, 2]),
        conservation(&[(2, 1)]),
        kostant_oracle(&[1, 2]),
        length_and_bruhat(2, 6),
        atlas_partition(2),
        interior_cells(&[1, 2]),
        truncation_algebra(1000, TRUNCATION_SEED),
    ]
}

/// The checks scaled to rank `g`, for the command-line self-test.
pub fn checks_up_to(g: usize) -> Vec<Check> {
    let gs: Vec<usize> = (1..=g).collect();
    let small: Vec<usize> = (1..=g.min(2)).collect();
    let cases: Vec<(usize, usize)> = gs.iter().flat_map(|&h| (1..=h).map(move |k| (h, k))).collect();
    let conservation_cases: Vec<(usize, usize)> = cases.iter().copied().filter(|&(h, _)| h >= 2).collect();
    let mut checks = vec![
        admissible_sets(&gs),
        boundary_lengths(&cases, true),
        centrality(&small),
    ];
    if !conservation_cases.is_empty() {
        checks.push(conservation(&conservation_cases));
    }
    checks.extend([
        kostant_oracle(&small),
        length_and_bruhat(g.min(2), if g == 1 { 8 } else { 6 }),
        atlas_partition(g),
        interior_cells(&small),
        truncation_algebra(1000, TRUNCATION_SEED),
    ]);
    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_modules_are_deterministic() {
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        assert_eq!(random_module(&mut a, 2), random_module(&mut b, 2));
    }

    #[test]
    fn small_self_test_passes() {
        for check in checks_up_to(1) {
            assert!(check.passed, "{check}");
        }
    }
}
