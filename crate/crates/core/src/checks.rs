//! Self-checks of the core Chern-number identities, as run by
//! `chernforge verify-paper`.

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::Signed;

use crate::constructions::{
    corollary_family, cp3_almost_complex, k3_pullback_family, max_admissible_n_tilde,
    proj_canonical_threefold, realize_targets, standard_surface, twistor_threefold, AsdPolicy,
};
use crate::invariants::{blow_up, connect_sum_cp2bar, todd_genus, CharNumbers, ThreeFold};
use crate::kahler::{non_kahler_threshold, todd_of_family, CupFormFamily};
use crate::ring::{chern_numbers_via_ring, RingBuilder};

type Int = BigInt;

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub id: u32,
    pub name: &'static str,
    pub outcome: Result<String, String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.outcome.is_ok()
    }
}

fn b(v: i64) -> Int {
    Int::from(v)
}

fn nums(x: &ThreeFold<Int>) -> (Int, Int, Int) {
    (x.numbers.c1_cubed.clone(), x.numbers.c1c2.clone(), x.numbers.c3.clone())
}

fn triple(a: i64, c: i64, e: i64) -> (Int, Int, Int) {
    (b(a), b(c), b(e))
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Deterministic sample of integrable 3-folds from every construction.
pub fn sample_threefolds(count: usize) -> Vec<ThreeFold<Int>> {
    // 64-bit LCG; the sample only needs to be varied and reproducible
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
    let mut next = move |modulus: u64| {
        state = state.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1_442_695_040_888_963_407);
        (state >> 33) % modulus
    };
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let m = next(11) as i64 - 5;
        let k = next(21) as i64;
        let x = match next(4) {
            0 => k3_pullback_family(&b(1 + (m + 5))).ok(),
            1 => corollary_family(&b(1 + next(20) as i64), &b(k)).ok(),
            2 => standard_surface(&b(m), AsdPolicy::Assume)
                .and_then(|(s, _)| connect_sum_cp2bar(&s, &b(k)))
                .and_then(|s| proj_canonical_threefold(&s))
                .ok(),
            _ => standard_surface(&b(m), AsdPolicy::Assume)
                .and_then(|(s, _)| connect_sum_cp2bar(&s, &b(k)))
                .and_then(|s| twistor_threefold(&s, AsdPolicy::Assume))
                .ok(),
        };
        out.extend(x);
    }
    out
}

fn k3_family_values() -> Result<String, String> {
    for m in 1..=100 {
        let x = k3_pullback_family(&b(m)).map_err(err)?;
        ensure!(nums(&x) == triple(0, 48 * m, 48), "m = {m}: got {}", x.numbers);
        let todd = todd_genus(&x.numbers).map_err(err)?;
        ensure!(todd == b(2 * m), "m = {m}: todd {todd}");
    }
    Ok("m = 1..100: (0, 48m, 48), todd 2m".into())
}

fn blow_up_deltas() -> Result<String, String> {
    let sample = sample_threefolds(50);
    for x in &sample {
        for l in 0..=20 {
            let y = blow_up(x, &b(l)).map_err(err)?;
            let d = (
                &y.numbers.c1_cubed - &x.numbers.c1_cubed,
                &y.numbers.c1c2 - &x.numbers.c1c2,
                &y.numbers.c3 - &x.numbers.c3,
            );
            ensure!(d == triple(8 * l, 0, 2 * l), "{} blown up {l}: delta {:?}", x.numbers, d);
            ensure!(y.spin == x.spin, "spin changed");
        }
    }
    Ok(format!("{} 3-folds x l = 0..20: (+8l, 0, +2l)", sample.len()))
}

fn doubling() -> Result<String, String> {
    for m in -5..=5 {
        let (n, _) = standard_surface(&b(m), AsdPolicy::Assume).map_err(err)?;
        for k in 0..=20 {
            let s = connect_sum_cp2bar(&n, &b(k)).map_err(err)?;
            let j1 = proj_canonical_threefold(&s).map_err(err)?.numbers;
            let j2 = twistor_threefold(&s, AsdPolicy::Assume).map_err(err)?.numbers;
            ensure!(
                j2.c1_cubed == &j1.c1_cubed * 2 && j2.c1c2 == &j1.c1c2 * 2 && j2.c3 == j1.c3,
                "N({m}) # {k}: J1 {j1}, J2 {j2}"
            );
        }
    }
    Ok("N(m), m = -5..5, k = 0..20".into())
}

fn twistor_k3() -> Result<String, String> {
    let (k3, _) = standard_surface(&b(2), AsdPolicy::KnownTable).map_err(err)?;
    let z = twistor_threefold(&k3, AsdPolicy::KnownTable).map_err(err)?;
    let f = k3_pullback_family(&b(2)).map_err(err)?;
    ensure!(nums(&z) == triple(0, 96, 48), "twistor(K3) = {}", z.numbers);
    ensure!(z.numbers == f.numbers, "k3_family(2) = {}", f.numbers);
    Ok("(0, 96, 48)".into())
}

fn policy_for(m: i64) -> AsdPolicy {
    // k0(3) is not tabulated
    if m <= 2 {
        AsdPolicy::KnownTable
    } else {
        AsdPolicy::Assume
    }
}

fn solver() -> Result<String, String> {
    let mut plans = 0;
    for m in -3..=3i64 {
        let policy = policy_for(m);
        for n in -3..=3i64 {
            let bound = max_admissible_n_tilde(&b(m), &b(n), policy).map_err(err)?;
            for offset in 0..10 {
                let nt = &bound - offset;
                let p = realize_targets(&b(m), &b(n), &nt, policy).map_err(err)?;
                ensure!(
                    p.x_j.numbers.c1_cubed == b(8 * n) && p.x_j.numbers.c1c2 == b(24 * m),
                    "({m},{n},{nt}): x_J {}",
                    p.x_j.numbers
                );
                ensure!(
                    p.x_jtilde.numbers.c1_cubed == &nt * 8 && p.x_jtilde.numbers.c1c2 == b(48 * m),
                    "({m},{n},{nt}): x_Jtilde {}",
                    p.x_jtilde.numbers
                );
                ensure!(p.x_j.numbers.c3 == p.x_jtilde.numbers.c3, "c3 differs");
                ensure!(p.k >= p.k0 && !p.l.is_negative(), "k = {}, l = {}", p.k, p.l);
                plans += 1;
            }
        }
    }
    let p = realize_targets(&b(1), &b(0), &b(-6), AsdPolicy::KnownTable).map_err(err)?;
    ensure!(p.k == b(14) && p.l == b(6), "worked instance: k = {}, l = {}", p.k, p.l);
    Ok(format!("{plans} plans; (1, 0, -6) gives k = 14, l = 6"))
}

fn constraint() -> Result<String, String> {
    match realize_targets(&b(1), &b(0), &b(-5), AsdPolicy::KnownTable) {
        Err(crate::Error::TargetInfeasible { max_admissible, .. }) if max_admissible == b(-6) => {
            Ok("rejected, max admissible n_tilde = -6".into())
        }
        other => Err(format!("unexpected {other:?}")),
    }
}

fn ring_oracle() -> Result<String, String> {
    for m in -5..=5 {
        let (n, _) = standard_surface(&b(m), AsdPolicy::Assume).map_err(err)?;
        for k in 0..=10 {
            let s = connect_sum_cp2bar(&n, &b(k)).map_err(err)?;
            let ring = chern_numbers_via_ring(&RingBuilder::ProjCanonical(s.clone())).map_err(err)?;
            let closed = proj_canonical_threefold(&s).map_err(err)?.numbers;
            ensure!(
                ring.c1_cubed == closed.c1_cubed && ring.c1c2 == closed.c1c2,
                "N({m}) # {k}: ring {ring}, closed {closed}"
            );
        }
    }
    let k3 = chern_numbers_via_ring::<Int>(&RingBuilder::ProductK3Sphere).map_err(err)?;
    ensure!((k3.c1_cubed.clone(), k3.c1c2.clone()) == (b(0), b(48)), "K3 x S2: {k3}");
    let cp3 = chern_numbers_via_ring(&RingBuilder::Cp3(b(2))).map_err(err)?;
    ensure!((cp3.c1_cubed.clone(), cp3.c1c2.clone()) == (b(64), b(24)), "CP3: {cp3}");
    Ok("catalogue k <= 10, K3 x S2 (0, 48), CP3 (64, 24)".into())
}

fn todd_pencil() -> Result<String, String> {
    let f = CupFormFamily::<Int>::cp3();
    for n in -50..=50i64 {
        let j = n + 2;
        let expected = Ratio::from_integer(b(j * (j * j - 1) / 6));
        let got = todd_of_family(&f, &b(n));
        ensure!(got == expected, "n = {n}: {got} vs {expected}");
    }
    let big_n = non_kahler_threshold(&f).map_err(err)?;
    ensure!(big_n == b(5), "threshold {big_n}");
    let betti = Ratio::from_integer(f.betti_sum.clone());
    for n in -60..=60i64 {
        if b(n).abs() > big_n {
            ensure!(todd_of_family(&f, &b(n)).abs() > betti, "dominance fails at n = {n}");
        }
    }
    Ok("todd = j(j^2-1)/6 on [-50, 50], N = 5".into())
}

fn integrality() -> Result<String, String> {
    let mut folds: Vec<ThreeFold<Int>> = sample_threefolds(200);
    for m in 1..=100 {
        folds.push(k3_pullback_family(&b(m)).map_err(err)?);
    }
    for m in -3..=3i64 {
        for n in -3..=3i64 {
            let bound = max_admissible_n_tilde(&b(m), &b(n), policy_for(m)).map_err(err)?;
            let p = realize_targets(&b(m), &b(n), &bound, policy_for(m)).map_err(err)?;
            folds.push(p.x_j);
            folds.push(p.x_jtilde);
        }
    }
    let almost: Vec<_> = (-10..=10).map(|j| cp3_almost_complex(&b(j))).collect();
    for x in folds.iter().chain(&almost) {
        if !x.almost_complex_only {
            ensure!(todd_genus(&x.numbers).is_ok(), "24 does not divide c1c2 of {}", x.numbers);
        }
        if x.spin {
            ensure!(&x.numbers.c1_cubed % 8 == b(0), "spin but 8 does not divide c1^3 of {}", x.numbers);
        }
    }
    for m in -20..=20 {
        let (s, _) = standard_surface(&b(m), AsdPolicy::Assume).map_err(err)?;
        ensure!((&s.chi + &s.tau) % 4 == b(0), "N({m}): chi + tau = {}", &s.chi + &s.tau);
        ensure!(s.todd() == b(m), "N({m}): todd {}", s.todd());
    }
    Ok(format!("{} 3-folds, catalogue m = -20..20", folds.len() + almost.len()))
}

/// Runs every check in order.
pub fn run_all() -> Vec<CheckResult> {
    let checks: [(u32, &'static str, fn() -> Result<String, String>); 9] = [
        (1, "K3 family c1c2 = 48m", k3_family_values),
        (2, "blow-up deltas", blow_up_deltas),
        (3, "twistor doubling", doubling),
        (4, "twistor(K3) = k3_family(2)", twistor_k3),
        (5, "realization solver", solver),
        (6, "constraint enforcement", constraint),
        (7, "ring oracle equivalence", ring_oracle),
        (8, "Todd pencil and threshold", todd_pencil),
        (9, "integrality sweeps", integrality),
    ];
    checks
        .into_iter()
        .map(|(id, name, f)| CheckResult { id, name, outcome: f() })
        .collect()
}

/// The three-line recipe realizing the twistor side of `(1, 0, −6)`.
pub const REALIZATION_RECIPE: &str = "\
let M = connsum_cp2bar(catalog(1), 14)
let Z = twistor(M)
emit blowup(Z, 6)
";

/// Expected numbers for [`REALIZATION_RECIPE`].
pub fn realization_recipe_expected() -> CharNumbers<Int> {
    CharNumbers::new(b(-48), b(48), b(48))
}
