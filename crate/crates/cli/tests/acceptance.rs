//! Acceptance suite: one line per criterion, every criterion exact.
//!
//! Run with `cargo test -p chernforge --test acceptance -- --nocapture` to see
//! the pass/fail lines.

use std::process::Command;

use chernforge_core::constructions::{
    corollary_family, cp3_almost_complex, k3_pullback_family, max_admissible_n_tilde,
    proj_canonical_threefold, realize_targets, standard_surface, twistor_threefold, AsdPolicy,
};
use chernforge_core::ring::{chern_numbers_via_ring, RingBuilder};
use chernforge_core::{
    blow_up, connect_sum_cp2bar, non_kahler_threshold, todd_genus, todd_of_family, BigInt,
    CharNumbers, CupFormFamily, Error, Ratio, ThreeFold,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn b(v: i64) -> BigInt {
    BigInt::from(v)
}

fn cn(a: i64, c: i64, e: i64) -> CharNumbers<BigInt> {
    CharNumbers::new(b(a), b(c), b(e))
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn e2s(e: Error) -> String {
    e.to_string()
}

fn criterion_1() -> Outcome {
    for m in 1..=100 {
        let x = k3_pullback_family(&b(m)).map_err(e2s)?;
        ensure!(x.numbers == cn(0, 48 * m, 48), "m = {m}: {}", x.numbers);
        ensure!(todd_genus(&x.numbers).map_err(e2s)? == b(2 * m), "m = {m}: todd");
    }
    Ok("k3_pullback_family(m) = (0, 48m, 48), todd 2m, m in [1, 100]".into())
}

fn random_threefold(rng: &mut StdRng) -> ThreeFold<BigInt> {
    loop {
        let m = rng.gen_range(-5i64..=5);
        let k = rng.gen_range(0i64..=20);
        let x = match rng.gen_range(0..4) {
            0 => k3_pullback_family(&b(rng.gen_range(1..=60))),
            1 => corollary_family(&b(rng.gen_range(1..=60)), &b(rng.gen_range(0..=30))),
            2 => standard_surface(&b(m), AsdPolicy::Assume)
                .and_then(|(s, _)| connect_sum_cp2bar(&s, &b(k)))
                .and_then(|s| proj_canonical_threefold(&s)),
            _ => standard_surface(&b(m), AsdPolicy::Assume)
                .and_then(|(s, _)| connect_sum_cp2bar(&s, &b(k)))
                .and_then(|s| twistor_threefold(&s, AsdPolicy::Assume)),
        };
        if let Ok(x) = x {
            return x;
        }
    }
}

fn criterion_2() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_c0de);
    for _ in 0..50 {
        let x = random_threefold(&mut rng);
        for l in 0..=20i64 {
            let y = blow_up(&x, &b(l)).map_err(e2s)?;
            ensure!(y.numbers.c1_cubed == &x.numbers.c1_cubed + 8 * l, "c1^3 delta, l = {l}");
            ensure!(y.numbers.c1c2 == x.numbers.c1c2, "c1c2 delta, l = {l}");
            ensure!(y.numbers.c3 == &x.numbers.c3 + 2 * l, "c3 delta, l = {l}");
            ensure!(y.spin == x.spin, "spin flag changed");
        }
    }
    Ok("50 random 3-folds, l in [0, 20]: deltas (+8l, 0, +2l), spin preserved".into())
}

fn criterion_3() -> Outcome {
    for m in -5..=5 {
        let (n, _) = standard_surface(&b(m), AsdPolicy::Assume).map_err(e2s)?;
        for k in 0..=20 {
            let s = connect_sum_cp2bar(&n, &b(k)).map_err(e2s)?;
            let j1 = proj_canonical_threefold(&s).map_err(e2s)?.numbers;
            let j2 = twistor_threefold(&s, AsdPolicy::Assume).map_err(e2s)?.numbers;
            ensure!(j2.c1_cubed == &j1.c1_cubed * 2, "N({m}) # {k}: c1^3");
            ensure!(j2.c1c2 == &j1.c1c2 * 2, "N({m}) # {k}: c1c2");
            ensure!(j2.c3 == j1.c3, "N({m}) # {k}: c3");
        }
    }
    Ok("twistor = 2 x P(O + K^-1) on N(m) # k, m in [-5, 5], k in [0, 20]".into())
}

fn criterion_4() -> Outcome {
    let (k3, _) = standard_surface(&b(2), AsdPolicy::KnownTable).map_err(e2s)?;
    let z = twistor_threefold(&k3, AsdPolicy::KnownTable).map_err(e2s)?;
    let f = k3_pullback_family(&b(2)).map_err(e2s)?;
    ensure!(z.numbers == cn(0, 96, 48) && f.numbers == cn(0, 96, 48), "{} / {}", z.numbers, f.numbers);
    Ok("twistor(K3) = k3_pullback_family(2) = (0, 96, 48)".into())
}

fn criterion_5() -> Outcome {
    let mut count = 0;
    for m in -3..=3i64 {
        // no threshold is tabulated for m = 3
        let policy = if m <= 2 { AsdPolicy::KnownTable } else { AsdPolicy::Assume };
        let (base, k0) = standard_surface(&b(m), policy).map_err(e2s)?;
        let k0 = k0.ok_or("k0 missing")?;
        for n in -3..=3i64 {
            let bound = (b(n) - &k0 + base.c1_squared()).min(b(2 * n));
            ensure!(bound == max_admissible_n_tilde(&b(m), &b(n), policy).map_err(e2s)?, "bound");
            for w in 0..10 {
                let nt = &bound - w;
                let p = realize_targets(&b(m), &b(n), &nt, policy).map_err(e2s)?;
                ensure!(p.x_j.numbers.c1_cubed == b(8 * n), "({m},{n},{nt}) x_J c1^3");
                ensure!(p.x_j.numbers.c1c2 == b(24 * m), "({m},{n},{nt}) x_J c1c2");
                ensure!(p.x_jtilde.numbers.c1_cubed == &nt * 8, "({m},{n},{nt}) x_Jtilde c1^3");
                ensure!(p.x_jtilde.numbers.c1c2 == b(48 * m), "({m},{n},{nt}) x_Jtilde c1c2");
                ensure!(p.x_j.numbers.c3 == p.x_jtilde.numbers.c3, "({m},{n},{nt}) c3");
                ensure!(p.k >= k0 && p.l >= b(0), "({m},{n},{nt}) k, l");
                count += 1;
            }
        }
    }
    let p = realize_targets(&b(1), &b(0), &b(-6), AsdPolicy::KnownTable).map_err(e2s)?;
    ensure!(p.k == b(14) && p.l == b(6), "worked instance k = {}, l = {}", p.k, p.l);
    Ok(format!("{count} plans over (m, n) in [-3, 3]^2; (1, 0, -6): k = 14, l = 6"))
}

fn criterion_6() -> Outcome {
    match realize_targets(&b(1), &b(0), &b(-5), AsdPolicy::KnownTable) {
        Err(Error::TargetInfeasible { max_admissible, .. }) if max_admissible == b(-6) => {
            Ok("realize_targets(1, 0, -5) rejected, max admissible ntilde = -6".into())
        }
        other => Err(format!("{other:?}")),
    }
}

fn criterion_7() -> Outcome {
    for m in -5..=5 {
        let (n, _) = standard_surface(&b(m), AsdPolicy::Assume).map_err(e2s)?;
        for k in 0..=10 {
            let s = connect_sum_cp2bar(&n, &b(k)).map_err(e2s)?;
            let ring = chern_numbers_via_ring(&RingBuilder::ProjCanonical(s.clone())).map_err(e2s)?;
            let closed = proj_canonical_threefold(&s).map_err(e2s)?.numbers;
            ensure!(ring.c1_cubed == closed.c1_cubed && ring.c1c2 == closed.c1c2, "N({m}) # {k}");
        }
    }
    let k3 = chern_numbers_via_ring::<BigInt>(&RingBuilder::ProductK3Sphere).map_err(e2s)?;
    ensure!(k3.c1_cubed == b(0) && k3.c1c2 == b(48), "K3 x S2: {k3}");
    let cp3 = chern_numbers_via_ring(&RingBuilder::Cp3(b(2))).map_err(e2s)?;
    ensure!(cp3.c1_cubed == b(64) && cp3.c1c2 == b(24), "CP3: {cp3}");
    Ok("ring = closed form on N(m) # k (k <= 10); K3 x S2 (0, 48); CP3 (64, 24)".into())
}

fn criterion_8() -> Outcome {
    let f = CupFormFamily::<BigInt>::cp3();
    for n in -50..=50i64 {
        let j = n + 2;
        let oracle = Ratio::from_integer(b(j * (j * j - 1) / 6));
        ensure!(todd_of_family(&f, &b(n)) == oracle, "n = {n}");
    }
    let big_n = non_kahler_threshold(&f).map_err(e2s)?;
    ensure!(big_n == b(5), "threshold = {big_n}");
    let betti = Ratio::from_integer(b(4));
    for n in -60..=60i64 {
        let t = todd_of_family(&f, &b(n));
        let abs = if t < Ratio::from_integer(b(0)) { -t } else { t };
        if n.abs() > 5 {
            ensure!(abs > betti, "dominance fails at n = {n}");
        }
    }
    Ok("CP3 pencil matches (n+2)((n+2)^2-1)/6 on [-50, 50]; N = 5; dominance on [-60, 60]".into())
}

fn criterion_9() -> Outcome {
    let mut rng = StdRng::seed_from_u64(9);
    let mut folds: Vec<ThreeFold<BigInt>> = (0..300).map(|_| random_threefold(&mut rng)).collect();
    for m in -3..=3i64 {
        let policy = if m <= 2 { AsdPolicy::KnownTable } else { AsdPolicy::Assume };
        for n in -3..=3i64 {
            let nt = max_admissible_n_tilde(&b(m), &b(n), policy).map_err(e2s)?;
            let p = realize_targets(&b(m), &b(n), &nt, policy).map_err(e2s)?;
            folds.extend([p.x_j, p.x_jtilde]);
        }
    }
    for j in -10..=10 {
        folds.push(cp3_almost_complex(&b(j)));
    }
    for x in &folds {
        if !x.almost_complex_only {
            ensure!(&x.numbers.c1c2 % 24 == b(0), "24 does not divide c1c2 of {}", x.numbers);
        }
        if x.spin {
            ensure!(&x.numbers.c1_cubed % 8 == b(0), "8 does not divide c1^3 of {}", x.numbers);
        }
    }
    for m in -20..=20 {
        let (s, _) = standard_surface(&b(m), AsdPolicy::Assume).map_err(e2s)?;
        ensure!((&s.chi + &s.tau) % 4 == b(0), "N({m}): 4 does not divide chi + tau");
        ensure!(s.todd() == b(m), "N({m}): todd = {}", s.todd());
    }
    Ok(format!("{} 3-folds; catalogue m in [-20, 20]", folds.len()))
}

fn criterion_10() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_chernforge");
    let out = Command::new(bin).arg("verify-paper").output().map_err(|e| e.to_string())?;
    let stdout = String::from_utf8_lossy(&out.stdout);
    ensure!(out.status.success(), "verify-paper exited {:?}:\n{stdout}", out.status.code());
    for id in 1..=9 {
        ensure!(
            stdout.lines().any(|l| l.starts_with("PASS") && l[4..].trim_start().starts_with(&format!("{id} "))),
            "verify-paper has no PASS line for item {id}"
        );
    }
    let recipe = concat!(env!("CARGO_MANIFEST_DIR"), "/recipes/realize_1_0_-6.recipe");
    let out = Command::new(bin)
        .args(["eval", "--json", recipe])
        .env_remove("CHERNFORGE_POLICY")
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(out.status.success(), "eval exited {:?}", out.status.code());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let got = (v["c1_cubed"].to_string(), v["c1c2"].to_string(), v["c3"].to_string());
    ensure!(got == ("-48".into(), "48".into(), "48".into()), "eval gave {got:?}");
    Ok("verify-paper exits 0; eval of the 3-line recipe gives (-48, 48, 48)".into())
}

#[test]
fn acceptance() {
    let criteria: [(u32, fn() -> Outcome); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let mut failed = Vec::new();
    for (id, f) in criteria {
        match f() {
            Ok(detail) => println!("[PASS] criterion {id:>2}: {detail}"),
            Err(why) => {
                println!("[FAIL] criterion {id:>2}: {why}");
                failed.push(id);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
