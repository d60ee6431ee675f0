//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! Run with `cargo test --test acceptance -- --nocapture` (use --release for
//! comfortable margins on the larger sample counts).

use stablecx::checks;
use stablecx::complex::cohomology::ab_sequences_check;
use stablecx::complex::split::{decomposition_matches_cohomology, split_decompose, split_report};
use stablecx::complex::{ChainMap, Complex};
use stablecx::contraction::{build_resolution, contract, ResolutionMode};
use stablecx::counit::{counit, delta, delta_localize_check};
use stablecx::experiment::rng::SplitMix64;
use stablecx::experiment::sampler::{
    random_chain_map, random_complex, random_local_algebra, random_module, SamplerConfig,
};
use stablecx::module::{functors, PresentedModule};
use stablecx::ring::solve::kernel_gens;
use stablecx::ring::{standard, BaseField, Matrix, Ring};
use stablecx::stable::{self, star_certificate};
use std::sync::Arc;
use std::time::Instant;

const SEED: u64 = 0x5eed_0001;

fn report(criterion: &str, pass: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} - {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} failed: {detail}");
}

fn small_cfg(periodic: bool) -> SamplerConfig {
    SamplerConfig {
        width: (2, 3),
        rank: (1, 2),
        periodic,
    }
}

fn roster_gorenstein() -> Vec<Arc<Ring>> {
    vec![
        Ring::integers(),
        Ring::univariate(BaseField::Prime(5), "t").unwrap(),
        standard::truncated_poly(2, 2),
        standard::truncated_poly(3, 3),
    ]
}

// -- criterion 1: the four-term sequence through the transpose ------------------

#[test]
fn criterion_1_auslander_bridger_sequences() {
    let start = Instant::now();
    let z = Ring::integers();
    let fat = standard::fat_point(2);
    let x_el = stablecx::ring::parse::parse_elem(&fat, "x").unwrap();
    let y_el = stablecx::ring::parse::parse_elem(&fat, "y").unwrap();

    let mut modules: Vec<(String, PresentedModule)> = vec![
        (
            "Z/2".into(),
            PresentedModule::cokernel(&Matrix::from_i64(z.clone(), 1, 1, &[2])),
        ),
        (
            "Z/6".into(),
            PresentedModule::cokernel(&Matrix::from_i64(z.clone(), 1, 1, &[6])),
        ),
        (
            "Z + Z/4".into(),
            PresentedModule::cokernel(&Matrix::from_i64(z.clone(), 2, 1, &[4, 0])),
        ),
    ];
    // over the fat point: k, R/(x), and the maximal ideal
    modules.push((
        "k".into(),
        PresentedModule::cokernel(&Matrix::new(
            fat.clone(),
            1,
            2,
            vec![x_el.clone(), y_el.clone()],
        )),
    ));
    modules.push((
        "R/(x)".into(),
        PresentedModule::cokernel(&Matrix::new(fat.clone(), 1, 1, vec![x_el.clone()])),
    ));
    let m_gens = Matrix::new(fat.clone(), 1, 2, vec![x_el.clone(), y_el.clone()]);
    let m_ideal = PresentedModule {
        ring: fat.clone(),
        gens: 2,
        rels: kernel_gens(&m_gens),
    };
    modules.push(("m".into(), m_ideal));

    let mut ok = true;
    let mut detail = String::new();
    for (name, m) in &modules {
        let t0 = Instant::now();
        let ring = m.ring.clone();
        let r_mod = PresentedModule::free(ring.clone(), 1);
        // direct assembly: 0 -> Ext^1(Tr M, R) -> M -> M** -> Ext^2(Tr M, R)
        let ev = functors::biduality_map(m);
        let (ker, _) = ev.kernel().unwrap();
        let tr = functors::transpose(m).unwrap();
        let e1 = functors::ext(&tr, &r_mod, 1).unwrap();
        let e2 = functors::ext(&tr, &r_mod, 2).unwrap();
        let kernel_matches = ker.invariant() == e1.invariant();
        let coker = ev.cokernel();
        let coker_fits = match (coker.k_dimension(), e2.k_dimension()) {
            (Some(a), Some(b)) => a <= b,
            _ => coker.is_zero_module() || !e2.is_zero_module(),
        };
        // the rho machinery on the transpose presentation complex certifies
        // the exactness of the assembled sequence
        let res = stablecx::module::free_resolution(m, 1).unwrap();
        let u1 = res.map(1).clone();
        let x = Complex::bounded(
            ring.clone(),
            0,
            vec![u1.rows, u1.cols],
            vec![u1.transpose()],
        )
        .unwrap();
        let ab = ab_sequences_check(&x, &r_mod, 0).unwrap();
        let this_ok = kernel_matches && coker_fits && ab.all_pass();
        if !this_ok {
            ok = false;
        }
        let within_budget = t0.elapsed().as_secs_f64() < 1.0;
        if !within_budget {
            ok = false;
        }
        detail.push_str(&format!(
            "{name}: {} ({:.2}s); ",
            if this_ok { "exact" } else { "NOT EXACT" },
            t0.elapsed().as_secs_f64()
        ));
    }
    detail.push_str(&format!("total {:.2}s", start.elapsed().as_secs_f64()));
    report("1 (Auslander-Bridger sequences)", ok, &detail);
}

// -- criterion 2: split criteria agreement ---------------------------------------

#[test]
fn criterion_2_split_criteria_agreement() {
    let start = Instant::now();
    let rings: Vec<Arc<Ring>> = vec![
        Ring::integers(),
        Ring::rationals(),
        Ring::prime_field(5).unwrap(),
        Ring::univariate(BaseField::Prime(5), "t").unwrap(),
        standard::truncated_poly(2, 2),
        standard::fat_point(2),
        Ring::poly_ring(
            5,
            vec!["x".into(), "y".into()],
            stablecx::ring::MonomialOrder::DegRevLex,
        )
        .unwrap(),
    ];
    let cfg = small_cfg(false);
    let mut ok = true;
    let mut disagreements = 0usize;
    for ring in &rings {
        for trial in 0..200u64 {
            let mut rng = SplitMix64::derive(SEED ^ 2, trial);
            let x = random_complex(ring, &cfg, &mut rng);
            let rep = split_report(&x);
            if !rep.agree() {
                disagreements += 1;
                ok = false;
                continue;
            }
            if rep.is_split() {
                match split_decompose(&x) {
                    Ok(dec) => {
                        if !decomposition_matches_cohomology(&x, &dec) {
                            ok = false;
                        }
                    }
                    // basis extraction over polynomial rings is out of the
                    // constructive scope; the existence route already agreed
                    Err(stablecx::error::Error::Unsupported(_)) => {}
                    Err(_) => ok = false,
                }
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    if elapsed >= 30.0 {
        ok = false;
    }
    report(
        "2 (split criteria agreement)",
        ok,
        &format!(
            "{} rings x 200 samples, {disagreements} disagreements, {elapsed:.1}s",
            rings.len()
        ),
    );
}

// -- criterion 3: torsion-free criterion equivalence ----------------------------

#[test]
fn criterion_3_torsion_free_equivalence() {
    let rings = vec![Ring::integers(), standard::truncated_poly(2, 2)];
    let cfg = small_cfg(false);
    let mut disagreements = 0usize;
    for ring in &rings {
        for trial in 0..200u64 {
            let mut rng = SplitMix64::derive(SEED ^ 3, trial);
            let x = random_complex(ring, &cfg, &mut rng);
            let cert = star_certificate(&x).unwrap();
            if !cert.routes_agree() {
                disagreements += 1;
            }
        }
    }
    report(
        "3 (torsion-free criterion equivalence)",
        disagreements == 0,
        &format!("400 samples, {disagreements} disagreements"),
    );
}

// -- criterion 4: Gorenstein dimension zero reflexivity --------------------------

#[test]
fn criterion_4_gorenstein_dim_zero_reflexivity() {
    let rings = vec![standard::truncated_poly(2, 2), standard::truncated_poly(3, 3)];
    let mut failures = 0usize;
    for ring in &rings {
        for trial in 0..100u64 {
            let periodic = trial % 5 == 4;
            let cfg = small_cfg(periodic);
            let mut rng = SplitMix64::derive(SEED ^ 4, trial);
            let x = random_complex(ring, &cfg, &mut rng);
            let cert = star_certificate(&x).unwrap();
            if !cert.reflexive() {
                failures += 1;
            }
        }
    }
    report(
        "4 (Gorenstein dim-0 reflexivity)",
        failures == 0,
        &format!("2 rings x 100 samples (bounded and periodic), {failures} failures"),
    );
}

// -- criterion 5: adjunction round trips and the counit splitting ---------------

#[test]
fn criterion_5_adjunction_round_trip() {
    let rings = vec![Ring::integers(), standard::truncated_poly(2, 2)];
    let cfg = small_cfg(false);
    let mut failures = 0usize;
    let mut tf_mismatches = 0usize;
    for ring in &rings {
        for trial in 0..50u64 {
            let mut rng = SplitMix64::derive(SEED ^ 5, trial);
            let x = random_complex(ring, &cfg, &mut rng);
            let y = random_complex(ring, &cfg, &mut rng);
            let ctx = stable::adjunction::AdjunctionCtx::new(&x, &y);
            let b = random_chain_map(&x, ctx.omega_y(), &mut rng).unwrap();
            let a = stable::adjunction::transport_to_sigma(&ctx, &b).unwrap();
            let b2 = stable::adjunction::transport_to_omega(&ctx, &a).unwrap();
            if !stable::stable_equal(&b, &b2) {
                failures += 1;
            }
            // counit at (1, 0): stable iso exactly for *torsion-free complexes
            if trial % 5 == 0 {
                let cert = star_certificate(&x).unwrap();
                let data = counit(&x, 1, 0).unwrap();
                let verified = match stablecx::complex::cone::solve_homotopy_section(&data.pi) {
                    Ok(section) => stable::stable_iso_verify(&data.pi, &section),
                    Err(_) => false,
                };
                if verified != cert.torsion_free() {
                    tf_mismatches += 1;
                }
            }
        }
    }
    report(
        "5 (adjunction round trip)",
        failures == 0 && tf_mismatches == 0,
        &format!(
            "100 transports, {failures} failures; counit splitting vs torsion-free: {tf_mismatches} mismatches"
        ),
    );
}

// -- criterion 6: contraction structure ------------------------------------------

#[test]
fn criterion_6_contraction_structure() {
    let rings = vec![Ring::integers(), standard::truncated_poly(2, 2)];
    let cfg = small_cfg(false);
    let mut ok = true;
    let mut count = 0usize;
    for (ri, ring) in rings.iter().enumerate() {
        for trial in 0..15u64 {
            let n = 1 + (trial as usize % 4);
            let mut rng = SplitMix64::derive(SEED ^ 6 ^ (ri as u64) << 8, trial);
            let x = random_complex(ring, &cfg, &mut rng);
            let res = build_resolution(&x, n, ResolutionMode::OmegaTower).unwrap();
            // contract() re-verifies the bit-exact block conditions internally
            let c = match contract(&res) {
                Ok(c) => c,
                Err(e) => {
                    ok = false;
                    println!("  contraction failed (n={n}): {e}");
                    continue;
                }
            };
            if !stablecx::contraction::cohomology_sequence_exact(&c) {
                ok = false;
            }
            if n <= 2 {
                let (t, to_f, from_f) =
                    stablecx::contraction::certify_contracted_triangle(&c).unwrap();
                if t.verify(2).is_err() {
                    ok = false;
                }
                let idf = ChainMap::identity(&c.f_tilde);
                if !stablecx::complex::homotopy::homotopic(&to_f.compose(&from_f), &idf) {
                    ok = false;
                }
            }
            count += 1;
        }
    }
    // the two-term tower over the dual numbers at n = 3 has the nonzero corner
    let r = standard::truncated_poly(2, 2);
    let xel = stablecx::ring::parse::parse_elem(&r, "x").unwrap();
    let y = Complex::bounded(
        r.clone(),
        0,
        vec![1, 1],
        vec![Matrix::new(r.clone(), 1, 1, vec![xel])],
    )
    .unwrap();
    let res = build_resolution(&y, 3, ResolutionMode::OmegaTower).unwrap();
    let c = contract(&res).unwrap();
    let mut corner_nonzero = false;
    for d in c.f_tilde.certification_degrees() {
        let blk = c
            .projection_matrix(0, d + 1)
            .mul(&c.f_tilde.diff(d))
            .mul(&c.injection_matrix(2, d));
        if !blk.is_zero() {
            corner_nonzero = true;
        }
    }
    if !corner_nonzero {
        ok = false;
    }
    report(
        "6 (contraction structure)",
        ok,
        &format!("{count} tower contractions verified; corner block reproduced: {corner_nonzero}"),
    );
}

// -- criterion 7: delta resolutions ----------------------------------------------

#[test]
fn criterion_7_delta_resolutions() {
    let rings = vec![Ring::integers(), standard::truncated_poly(2, 2)];
    let pairs: [(usize, usize); 5] = [(1, 0), (2, 0), (2, 1), (3, 1), (3, 2)];
    let cfg = small_cfg(false);
    let mut ok = true;
    let mut count = 0usize;
    for (ri, ring) in rings.iter().enumerate() {
        for trial in 0..15u64 {
            let (n, i) = pairs[trial as usize % pairs.len()];
            let mut rng = SplitMix64::derive(SEED ^ 7 ^ ((ri as u64) << 8), trial);
            let x = random_complex(ring, &cfg, &mut rng);
            let d = match delta(&x, n, i) {
                Ok(d) => d,
                Err(e) => {
                    ok = false;
                    println!("  delta failed (n={n}, i={i}): {e}");
                    continue;
                }
            };
            if d.resolution_length() != n - i - 1 {
                ok = false;
            }
            if d.verify_l_sequence(2).is_err() {
                ok = false;
            }
            match d.verify_contraction_equivalence() {
                Ok((to, from)) => {
                    let idd = ChainMap::identity(&d.delta);
                    if !stablecx::complex::homotopy::homotopic(&to.compose(&from), &idd) {
                        ok = false;
                    }
                }
                Err(e) => {
                    ok = false;
                    println!("  contraction equivalence failed (n={n}, i={i}): {e}");
                }
            }
            if ring.flags.is_gorenstein_dim_zero {
                // every delta lies in Add(R)
                if !stablecx::complex::split::is_split(&d.delta) {
                    ok = false;
                }
            } else {
                // over Z: localized L-sequence splits over Q
                let rep = delta_localize_check(&x, n, i).unwrap();
                if !rep.localized_l_sequence_split || !rep.localized_deltas_split {
                    ok = false;
                }
            }
            count += 1;
        }
    }
    report(
        "7 (delta resolutions)",
        ok,
        &format!("{count} delta constructions certified"),
    );
}

// -- criterion 8: main duality ----------------------------------------------------

#[test]
fn criterion_8_main_duality() {
    let start = Instant::now();
    let mut failures = 0usize;
    for (ri, ring) in roster_gorenstein().iter().enumerate() {
        for trial in 0..500u64 {
            let mut rng = SplitMix64::derive(SEED ^ 8 ^ ((ri as u64) << 16), trial);
            let x = random_complex(ring, &small_cfg(false), &mut rng);
            if !checks::duality_check(&x).consistent() {
                failures += 1;
            }
            if trial % 5 == 0 {
                let y = random_complex(ring, &small_cfg(false), &mut rng);
                let f = random_chain_map(&x, &y, &mut rng).unwrap();
                if !checks::quasi_iso_duality(&f).consistent() {
                    failures += 1;
                }
            }
        }
        for trial in 0..100u64 {
            let mut rng = SplitMix64::derive(SEED ^ 8 ^ 0xAAAA ^ ((ri as u64) << 16), trial);
            let x = random_complex(ring, &small_cfg(true), &mut rng);
            if !checks::duality_check(&x).consistent() {
                failures += 1;
            }
        }
    }
    // observation mode over the fat point: completes without crashes
    let fat = standard::fat_point(2);
    let mut findings = 0usize;
    for trial in 0..50u64 {
        let mut rng = SplitMix64::derive(SEED ^ 8 ^ 0xBBBB, trial);
        let x = random_complex(&fat, &small_cfg(trial % 4 == 3), &mut rng);
        let v = checks::duality_check(&x);
        if !v.consistent() {
            findings += 1;
        }
    }
    report(
        "8 (main duality)",
        failures == 0,
        &format!(
            "4 rings x (500 bounded + 100 periodic), {failures} failures; observation mode logged {findings} findings in {:.1}s total",
            start.elapsed().as_secs_f64()
        ),
    );
}

// -- criterion 9: G-dimension ------------------------------------------------------

#[test]
fn criterion_9_g_dimension() {
    let z = Ring::integers();
    let z2 = PresentedModule::cokernel(&Matrix::from_i64(z.clone(), 1, 1, &[2]));
    let g_z2 = checks::g_dimension(&z2, 2).unwrap();
    let dual_numbers = standard::truncated_poly(2, 2);
    let xel = stablecx::ring::parse::parse_elem(&dual_numbers, "x").unwrap();
    let k = PresentedModule::cokernel(&Matrix::new(dual_numbers.clone(), 1, 1, vec![xel]));
    let g_k = checks::g_dimension(&k, 4).unwrap();
    let mut ok = g_z2 == checks::GDimension::Value(1) && g_k == checks::GDimension::Value(0);

    let mut mismatches = 0usize;
    let rings: Vec<Arc<Ring>> = vec![
        Ring::integers(),
        Ring::rationals(),
        Ring::prime_field(5).unwrap(),
        Ring::univariate(BaseField::Prime(5), "t").unwrap(),
        standard::truncated_poly(2, 2),
        standard::truncated_poly(3, 3),
    ];
    for (ri, ring) in rings.iter().enumerate() {
        let horizon = checks::default_horizon(ring);
        for trial in 0..50u64 {
            let mut rng = SplitMix64::derive(SEED ^ 9 ^ ((ri as u64) << 16), trial);
            let m = random_module(ring, &mut rng);
            let via_ext = checks::is_totally_reflexive(&m, horizon).unwrap().verdict;
            let via_def = checks::totally_reflexive_three_conditions(&m, horizon).unwrap();
            if via_ext != via_def {
                mismatches += 1;
            }
        }
    }
    if mismatches > 0 {
        ok = false;
    }
    report(
        "9 (G-dimension)",
        ok,
        &format!(
            "pinned values hold; totally-reflexive equivalence on 300 sampled modules, {mismatches} mismatches"
        ),
    );
}

// -- criterion 10: Tachikawa consistency -------------------------------------------

#[test]
fn criterion_10_tachikawa() {
    let mut rng = SplitMix64::new(SEED ^ 10);
    let mut gorenstein_inconsistencies = 0usize;
    let mut logged = 0usize;
    let mut count = 0usize;
    while count < 20 {
        let p = if count % 2 == 0 { 2 } else { 3 };
        let ring = random_local_algebra(p, 6, &mut rng).unwrap();
        let rep = checks::tachikawa_check(&ring, 12).unwrap();
        if ring.flags.is_generically_gorenstein {
            if !rep.consistent {
                gorenstein_inconsistencies += 1;
            }
        } else if !rep.consistent {
            logged += 1;
        }
        count += 1;
    }
    report(
        "10 (Tachikawa consistency)",
        gorenstein_inconsistencies == 0,
        &format!(
            "20 random algebras at horizon 12; {gorenstein_inconsistencies} inconsistencies on Gorenstein algebras; {logged} discrepancies logged on the rest"
        ),
    );
}

// -- criterion 11: determinism -------------------------------------------------------

#[test]
fn criterion_11_determinism() {
    use stablecx::experiment::{run_experiment, ExperimentConfig};
    use stablecx::io::RingSpec;
    let config = ExperimentConfig {
        ring: RingSpec::Integers,
        sampler: small_cfg(false),
        trials: 12,
        seed: SEED,
        checks: vec![
            "duality".into(),
            "split-criteria".into(),
            "torsion-free-criterion".into(),
        ],
    };
    let r1 = serde_json::to_vec(&run_experiment(&config).unwrap()).unwrap();
    let r2 = serde_json::to_vec(&run_experiment(&config).unwrap()).unwrap();
    let mut ok = r1 == r2;
    // sampled fixtures are byte-identical under the same trial seed
    let z = Ring::integers();
    for trial in 0..8u64 {
        let mut a = SplitMix64::derive(SEED, trial);
        let mut b = SplitMix64::derive(SEED, trial);
        let ca = random_complex(&z, &small_cfg(trial % 2 == 0), &mut a);
        let cb = random_complex(&z, &small_cfg(trial % 2 == 0), &mut b);
        let ja = serde_json::to_vec(&stablecx::io::describe_complex(&ca)).unwrap();
        let jb = serde_json::to_vec(&stablecx::io::describe_complex(&cb)).unwrap();
        if ja != jb {
            ok = false;
        }
    }
    report(
        "11 (determinism)",
        ok,
        "identical seeds produce byte-identical reports and fixtures",
    );
}
