use stablecx::experiment::rng::SplitMix64;
use stablecx::experiment::sampler::{random_complex, SamplerConfig};
use stablecx::complex::split::*;
use stablecx::ring::{Ring, MonomialOrder};

#[test]
fn dbg_poly_split() {
    let ring = Ring::poly_ring(5, vec!["x".into(), "y".into()], MonomialOrder::DegRevLex).unwrap();
    let cfg = SamplerConfig { width: (2, 3), rank: (1, 2), periodic: false };
    for trial in 0..200u64 {
        let mut rng = SplitMix64::derive(0x5eed_0001 ^ 2, trial);
        let x = random_complex(&ring, &cfg, &mut rng);
        let rep = split_report(&x);
        if !rep.agree() {
            println!("trial {trial}: contraction={} coker_proj={} boundaries={} decomp={}",
                rep.contraction, rep.cokernels_projective, rep.boundaries_split, rep.decomposition);
            for d in x.certification_degrees() {
                let m = x.diff(d);
                let rows: Vec<String> = (0..m.rows).map(|i| (0..m.cols).map(|j| ring.format(m.at(i,j))).collect::<Vec<_>>().join(",")).collect();
                println!("  d^{d} = [{}]", rows.join(" ; "));
            }
            if let Err(e) = split_decompose(&x) { println!("  decompose error: {e}"); }
            break;
        }
    }
}
