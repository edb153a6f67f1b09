#![allow(clippy::excessive_precision)]

//! Checks against values that do not come from this crate's own formulas.
//!
//! Frozen reference values were produced by `tests/oracle/generate.py`, which
//! writes every kernel from its definition and integrates numerically at 30
//! digits over exact Farey fractions. The remaining tests use brute-force
//! enumeration and the adaptive quadrature in this crate.

use std::collections::BTreeSet;

use farey_mmd::{
    farey_sequence, integrate, integrate2d, integrate_with_breaks, mmd_squared_fast, mmd_squared_naive, Kernel, KernelSpec,
    QuadratureConfig,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Reference {
    id: &'static str,
    double_integral: f64,
    /// `(y, ∫₀¹ K(x, y) dx)`
    embeddings: [(f64, f64); 4],
    /// `(n, MMD²(F_n))`
    mmd2: [(u32, f64); 2],
}

const REFERENCES: &[Reference] = &[
    Reference {
        id: "brownian",
        double_integral: 1.333333333333333333333333,
        embeddings: [(0.0, 1.0), (0.3, 1.255), (0.75, 1.46875), (1.0, 1.5)],
        mmd2: [(3, 0.007777777777777777777777778), (6, 0.001298487836949375410913872)],
    },
    Reference {
        id: "matern12",
        double_integral: 0.7357588823428846431910475,
        embeddings: [
            (0.0, 0.6321205588285576784044762),
            (0.3, 0.7625964755268726192283261),
            (0.75, 0.7488326641875804246167832),
            (1.0, 0.6321205588285576784044762),
        ],
        mmd2: [(3, 0.01527229714840939094167803), (6, 0.002591344788682707419543862)],
    },
    Reference {
        id: "matern32",
        double_integral: 0.9430355293715385727641902,
        embeddings: [
            (0.0, 0.8963616764856730352134287),
            (0.3, 0.9553377721952432183432301),
            (0.75, 0.9486902180515486018187389),
            (1.0, 0.8963616764856730352134287),
        ],
        mmd2: [(3, 0.0004617166392177708330482672), (6, 0.00001094731365005457176697744)],
    },
    Reference {
        id: "matern52",
        double_integral: 0.9741514312954489311313645,
        embeddings: [
            (0.0, 0.9498959411999358325542224),
            (0.3, 0.9804984904011085277027091),
            (0.75, 0.9771348423412661942765512),
            (1.0, 0.9498959411999358325542224),
        ],
        mmd2: [(3, 0.00008454980253602599674241556), (6, 0.0000002670004846914574425681111)],
    },
    Reference {
        id: "ibm1",
        double_integral: 1.3,
        embeddings: [(0.0, 1.0), (0.3, 1.1683375), (0.75, 1.45849609375), (1.0, 1.625)],
        mmd2: [(3, 0.0002134773662551440329218107), (6, 0.000003023945625441351937078433)],
    },
    Reference {
        id: "ibm2",
        double_integral: 1.281746031746031746031746,
        embeddings: [(0.0, 1.0), (0.3, 1.1581004875), (0.75, 1.4287322998046875), (1.0, 1.597222222222222222222222)],
        mmd2: [(3, 0.0002585512743048751279203954), (6, 0.0000007428650433668338859855172)],
    },
    Reference {
        id: "ibm3",
        double_integral: 1.279706790123456790123457,
        embeddings: [
            (0.0, 1.0),
            (0.3, 1.157698651984375),
            (0.75, 1.425124008314950125558036),
            (1.0, 1.591145833333333333333333),
        ],
        mmd2: [(3, 0.0002505723093377503671285107), (6, 0.0000007297360578509392348846861)],
    },
    Reference {
        id: "expxy",
        double_integral: 1.317902151454403894860009,
        embeddings: [
            (0.0, 1.0),
            (0.3, 1.166196025253343679945814),
            (0.75, 1.48933335548356622472716),
            (1.0, 1.718281828459045235360287),
        ],
        mmd2: [(3, 0.0008462167379324752019335011), (6, 0.000002610589298249304344837804)],
    },
];

fn kernel(id: &str) -> Kernel {
    Kernel::new(id.parse().unwrap()).unwrap()
}

fn assert_close(got: f64, want: f64, rel: f64, what: &str) {
    assert_near(got, want, rel, 1e-16, what);
}

fn assert_near(got: f64, want: f64, rel: f64, abs: f64, what: &str) {
    let err = (got - want).abs();
    assert!(err <= rel * want.abs() + abs, "{what}: got {got:e}, want {want:e}, error {err:e}");
}

#[test]
fn frozen_integrals() {
    for r in REFERENCES {
        let k = kernel(r.id);
        assert_close(k.double_integral(), r.double_integral, 4.0 * f64::EPSILON, r.id);
        for &(y, want) in &r.embeddings {
            assert_close(k.mean_embedding(y).unwrap(), want, 4.0 * f64::EPSILON, &format!("{} at {y}", r.id));
        }
    }
}

#[test]
fn frozen_farey_mmd() {
    for r in REFERENCES {
        let k = kernel(r.id);
        for &(n, want) in &r.mmd2 {
            let points = farey_sequence(n).unwrap().to_f64();
            let naive = mmd_squared_naive(&k, &points).unwrap().mmd_squared;
            // the squared MMD is a difference of O(1) terms, so a few ulps of 1
            // is the floor on its absolute accuracy
            assert_near(naive, want, 1e-9, 4e-15, &format!("naive {} on F_{n}", r.id));
            if let Ok(fast) = mmd_squared_fast(&k, &points) {
                assert_near(fast.mmd_squared, want, 1e-9, 4e-15, &format!("fast {} on F_{n}", r.id));
            }
        }
    }
}

/// Every reduced `p/q` with `q ≤ n`, sorted by value.
fn brute_force_farey(n: u64) -> Vec<(u64, u64)> {
    let mut set = BTreeSet::new();
    for q in 1..=n {
        for p in 0..=q {
            let g = gcd(p, q);
            set.insert((p / g, q / g));
        }
    }
    let mut v: Vec<_> = set.into_iter().collect();
    v.sort_by(|a, b| (u128::from(a.0) * u128::from(b.1)).cmp(&(u128::from(b.0) * u128::from(a.1))));
    v
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[test]
fn farey_matches_enumeration() {
    for n in 1..=60u32 {
        let got: Vec<_> = farey_sequence(n).unwrap().points().iter().map(|r| (r.num(), r.den())).collect();
        assert_eq!(got, brute_force_farey(u64::from(n)), "F_{n}");
    }
}

fn all_families() -> Vec<KernelSpec> {
    ["brownian", "matern12", "matern32:0.3", "matern52:2.5", "ibm1", "ibm2", "ibm4", "expxy"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect()
}

#[test]
fn closed_forms_match_quadrature() {
    let cfg = QuadratureConfig::default();
    for spec in all_families() {
        let k = Kernel::new(spec).unwrap();
        for i in 0..=20 {
            let y = f64::from(i) / 20.0;
            let quad = integrate_with_breaks(|x| k.eval(x, y).unwrap(), 0.0, 1.0, &[y], &cfg).unwrap();
            assert_close(k.mean_embedding(y).unwrap(), quad, 1e-12, &format!("{spec} at {y}"));
        }
        let quad = integrate2d(|x, y| k.eval(x, y).unwrap(), &cfg).unwrap();
        assert_close(k.double_integral(), quad, 1e-12, &format!("{spec} double integral"));
    }
}

/// The integrated Brownian kernels against their integral representation
/// `Σ_k (xy)^k/(k!)² + ∫₀¹ (x-u)₊^m (y-u)₊^m du / (m!)²`.
#[test]
fn integrated_bm_matches_definition() {
    let cfg = QuadratureConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for m in 0..=5u32 {
        let k = Kernel::new(KernelSpec::IntegratedBm { m }).unwrap();
        let fact = (1..=m).map(f64::from).product::<f64>();
        for _ in 0..20 {
            let (x, y): (f64, f64) = (rng.gen(), rng.gen());
            let mut poly = 0.0;
            let mut kf = 1.0;
            for j in 0..=m {
                if j > 0 {
                    kf *= f64::from(j);
                }
                poly += (x * y).powi(j as i32) / (kf * kf);
            }
            let tail = integrate(|u| (x - u).powi(m as i32) * (y - u).powi(m as i32), 0.0, x.min(y), &cfg).unwrap()
                / (fact * fact);
            assert_close(k.eval(x, y).unwrap(), poly + tail, 1e-13, &format!("ibm{m} at ({x}, {y})"));
        }
    }
}

/// The three-term closed form against a direct Gram computation on random
/// point sets: `MMD² = ∫∫K - (2/N)Σ∫K(·,x_i) + (1/N²)ΣΣK` with the two
/// integral terms taken by quadrature.
#[test]
fn mmd_matches_quadrature_on_random_sets() {
    let cfg = QuadratureConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for spec in all_families() {
        let k = Kernel::new(spec).unwrap();
        let dint = integrate2d(|x, y| k.eval(x, y).unwrap(), &cfg).unwrap();
        for _ in 0..5 {
            let len = rng.gen_range(1..=8);
            let mut points: Vec<f64> = (0..len).map(|_| rng.gen()).collect();
            points.sort_by(f64::total_cmp);
            let n = len as f64;
            let emb: f64 = points
                .iter()
                .map(|&y| integrate_with_breaks(|x| k.eval(x, y).unwrap(), 0.0, 1.0, &[y], &cfg).unwrap())
                .sum();
            let gram: f64 = points.iter().flat_map(|&a| points.iter().map(move |&b| (a, b))).map(|(a, b)| k.eval(a, b).unwrap()).sum();
            let want = dint - 2.0 * emb / n + gram / (n * n);
            let naive = mmd_squared_naive(&k, &points).unwrap().mmd_squared;
            assert!((naive - want).abs() < 1e-8, "{spec}: naive {naive:e} vs {want:e}");
            if let Ok(fast) = mmd_squared_fast(&k, &points) {
                assert!((fast.mmd_squared - want).abs() < 1e-8, "{spec}: fast {:e} vs {want:e}", fast.mmd_squared);
            }
        }
    }
}
